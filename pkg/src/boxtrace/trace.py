"""Heat trace ``Z(t) = sum_n exp(-t E_n)`` by the spectral routes.

Routes
------
direct        truncated spectral sum per axis, multiplied over axes
exact_half    geometric series at s = 1/2
theta_s1      theta-function form at s = 1
asymptotic    ``prod_j (lambda a_j - s/2)`` with
              ``lambda = Gamma(1 + 1/2s) / (pi t^(1/2s))``

The images route lives in :mod:`boxtrace.images`.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate, special

from .convex_geom import HyperBox, intrinsic_volumes, quermassintegrals
from .errors import DomainError, ResourceError, ValidityWarning
from .special_fn import bernoulli_poly, bernoulli_table, gamma, sphere_area, theta_minus_one
from .spectrum import SpectralModel, phase_shift

__all__ = [
    "TruncationSpec",
    "AsymptoticExpansion",
    "ExpansionTerm",
    "TraceCurve",
    "EMResult",
    "EMConstantReport",
    "ROUTES",
    "weyl_scale",
    "em_sum",
    "trace_1d_direct",
    "trace_direct",
    "trace_exact_half",
    "trace_theta_s1",
    "expansion_coefficients",
    "trace_asymptotic",
    "trace_asymptotic_product",
    "verify_em_constant",
    "trace_curve",
]

ROUTES = ("direct", "exact_half", "theta_s1", "asymptotic", "images")
_CHUNK = 1 << 20


@dataclass(frozen=True)
class TruncationSpec:
    tail_epsilon: float = 1e-14
    max_terms_per_axis: int = 10**7

    def __post_init__(self):
        if not 0.0 < self.tail_epsilon < 1.0:
            raise DomainError(f"tail_epsilon must lie in (0, 1), got {self.tail_epsilon!r}")
        if self.max_terms_per_axis < 1:
            raise DomainError("max_terms_per_axis must be >= 1")


def _check_t(t: float) -> float:
    t = float(t)
    if not math.isfinite(t) or t <= 0.0:
        raise DomainError(f"time must be positive and finite, got {t!r}")
    return t


def _check_s(s: float) -> float:
    s = float(s)
    if not 0.0 < s <= 1.0:
        raise DomainError(f"stability index s must lie in (0, 1], got {s!r}")
    return s


def weyl_scale(s: float, t: float, unit_constant: float = 1.0) -> float:
    """``lambda = Gamma(1 + 1/2s) / (pi t'^(1/2s))`` with ``t' = t / D``."""
    tt = t / unit_constant
    return gamma(1.0 + 1.0 / (2.0 * s)) / (math.pi * tt ** (1.0 / (2.0 * s)))


# ---------------------------------------------------------------------------
# Euler-Maclaurin


@dataclass(frozen=True)
class EMResult:
    value: float
    integral: float
    corrections: tuple[float, ...]
    remainder_bound: float


def _bernoulli_sup(p: int) -> float:
    if p % 2 == 0:
        return abs(bernoulli_table(p)[p])
    u = np.linspace(0.0, 1.0, 4001)[:-1]
    vals = [abs(bernoulli_poly(p, float(x))) for x in u]
    return max(vals) * (1.0 + 1e-6)


def em_sum(
    f: Callable[[float], float],
    n: int,
    m: int | float,
    p: int,
    derivatives: Sequence[Callable[[float], float]] = (),
    *,
    integral: float | None = None,
    abs_deriv_integral: float | None = None,
) -> EMResult:
    """Euler-Maclaurin approximation of ``sum_{k=n+1}^{m} f(k)``.

    ``derivatives[k-1]`` must be the k-th derivative of ``f``, for k = 1..p.
    ``m`` may be ``math.inf``; ``f`` and its derivatives are then taken to
    vanish at infinity.  The boundary corrections are

        sum_{l=1}^{p} (-1)^l B_l / l! (f^(l-1)(m) - f^(l-1)(n)),   B_1 = -1/2,

    and the remainder is bounded by ``sup|B_p| / p! * int_n^m |f^(p)|``.
    ``integral`` and ``abs_deriv_integral`` override the quadratures for
    ``int f`` and ``int |f^(p)|`` when the caller has them in closed form.
    """
    if p < 1:
        raise DomainError("em_sum needs p >= 1")
    if len(derivatives) < p:
        raise DomainError(f"order p={p} needs {p} derivatives, only {len(derivatives)} supplied")
    if p > 30:
        raise DomainError("em_sum supports p <= 30")
    funcs = [f, *derivatives]
    infinite = math.isinf(m)

    if integral is None:
        integral, _ = integrate.quad(f, n, m, limit=500, epsabs=1e-15, epsrel=1e-13)

    bern = bernoulli_table(p)
    corrections = []
    for l in range(1, p + 1):
        bl = bern[l]
        if bl == 0.0:
            corrections.append(0.0)
            continue
        g = funcs[l - 1]
        upper = 0.0 if infinite else g(m)
        corrections.append((-1) ** l * bl / math.factorial(l) * (upper - g(n)))

    if abs_deriv_integral is None:
        fp = funcs[p]
        abs_deriv_integral, _ = integrate.quad(lambda u: abs(fp(u)), n, m, limit=500)
    bound = _bernoulli_sup(p) / math.factorial(p) * abs_deriv_integral
    value = math.fsum([integral, *corrections])
    return EMResult(value=value, integral=integral, corrections=tuple(corrections), remainder_bound=bound)


# ---------------------------------------------------------------------------
# direct spectral sums


def _tail_integral(a: float, s: float, tt: float, c: float, u0: float) -> float:
    # int_{u0}^inf exp(-tt (pi (u - c)/a)^(2s)) du, u0 > c
    nu = 1.0 / (2.0 * s)
    w = math.pi * (u0 - c) / a
    return a / math.pi * tt ** (-nu) * nu * gamma(nu) * float(special.gammaincc(nu, tt * w ** (2.0 * s)))


def _axis_terms(a: float, s: float, tt: float, c: float, start: int, stop: int) -> np.ndarray:
    n = np.arange(start, stop, dtype=float)
    return np.exp(-tt * (math.pi * (n - c) / a) ** (2.0 * s))


def trace_1d_direct(
    a: float,
    s: float,
    t: float,
    trunc: TruncationSpec | None = None,
    unit_constant: float = 1.0,
) -> float:
    """One axis factor ``sum_{n>=1} exp(-t (pi (n - c)/a)^(2s) / D)``.

    The number of terms N is chosen so that the integral bound on the
    discarded tail is below ``tail_epsilon`` times a lower bound on the sum.
    Terms are accumulated in ascending n with ``math.fsum``.
    """
    trunc = trunc or TruncationSpec()
    s = _check_s(s)
    t = _check_t(t)
    if not a > 0.0:
        raise DomainError(f"edge length must be positive, got {a!r}")
    tt = t / unit_constant
    c = phase_shift(s)
    eps = trunc.tail_epsilon

    f1 = math.exp(-tt * (math.pi * (1.0 - c) / a) ** (2.0 * s))
    z_low = max(f1, _tail_integral(a, s, tt, c, 1.0))
    n_terms = math.ceil(a / math.pi * (math.log(1.0 / eps) / tt) ** (1.0 / (2.0 * s)) + c) + 2
    while _tail_integral(a, s, tt, c, float(n_terms)) > eps * z_low:
        n_terms = math.ceil(1.25 * n_terms) + 1
    if n_terms > trunc.max_terms_per_axis:
        raise ResourceError(
            f"direct sum needs {n_terms} terms per axis, budget is {trunc.max_terms_per_axis}",
            needed_terms=n_terms,
        )

    partials = []
    for start in range(1, n_terms + 1, _CHUNK):
        stop = min(start + _CHUNK, n_terms + 1)
        partials.append(math.fsum(_axis_terms(a, s, tt, c, start, stop)))
    return math.fsum(partials)


def trace_direct(model: SpectralModel, t: float, trunc: TruncationSpec | None = None) -> float:
    """``prod_j Z_j(t)`` from per-axis direct sums."""
    z = 1.0
    for a in model.box.edges:
        z *= trace_1d_direct(a, model.s, t, trunc, model.unit_constant)
    return z


def trace_exact_half(a: float, t: float) -> float:
    """Exact s = 1/2 factor ``exp(-3x/4) / (1 - exp(-x))``, ``x = pi t / a``."""
    t = _check_t(t)
    x = math.pi * t / a
    return math.exp(-0.75 * x) / -math.expm1(-x)


def trace_theta_s1(box: HyperBox, t: float) -> float:
    """Classical (s = 1) trace ``prod_j (Theta(pi t / a_j^2) - 1) / 2``."""
    t = _check_t(t)
    if not isinstance(box, HyperBox):
        box = HyperBox(box)
    z = 1.0
    for a in box.edges:
        z *= 0.5 * theta_minus_one(math.pi * t / (a * a))
    return z


# ---------------------------------------------------------------------------
# small-t expansion


@dataclass(frozen=True)
class ExpansionTerm:
    """Provenance of the coefficient of ``lambda^m``."""

    m: int
    intrinsic_volume: float
    sign_factor: float
    quermass_form: float


@dataclass(frozen=True)
class AsymptoticExpansion:
    s: float
    coefficients: tuple[float, ...]
    provenance: tuple[ExpansionTerm, ...]
    unit_constant: float = 1.0
    validity: str = "stated"

    @property
    def d(self) -> int:
        return len(self.coefficients) - 1

    def max_quermass_mismatch(self) -> float:
        return max(
            abs(term.quermass_form - term.intrinsic_volume) / abs(term.intrinsic_volume)
            for term in self.provenance
        )

    def evaluate(self, t: float) -> float:
        lam = weyl_scale(self.s, t, self.unit_constant)
        return math.fsum(c * lam**m for m, c in enumerate(self.coefficients))


def expansion_coefficients(model: SpectralModel) -> AsymptoticExpansion:
    """Coefficients ``c_m = (-s/2)^(d-m) V_m`` of ``Z ~ sum_m c_m lambda^m``.

    Each term also records ``V_m`` rebuilt from the quermassintegral
    ``W_{d-m}`` as ``(d-m)/O_{d-m-1} C(d, d-m) W_{d-m}``.
    """
    d, s = model.d, model.s
    v = intrinsic_volumes(model.box)
    w = quermassintegrals(model.box)
    coefs, terms = [], []
    for m in range(d + 1):
        factor = (-s / 2.0) ** (d - m)
        if m == d:
            qform = w[0]
        else:
            k = d - m
            qform = k / sphere_area(k) * math.comb(d, k) * w[k]
        coefs.append(factor * v[m])
        terms.append(ExpansionTerm(m=m, intrinsic_volume=v[m], sign_factor=factor, quermass_form=qform))
    validity = "stated" if s >= 0.5 else "extrapolated beyond stated validity"
    return AsymptoticExpansion(
        s=s,
        coefficients=tuple(coefs),
        provenance=tuple(terms),
        unit_constant=model.unit_constant,
        validity=validity,
    )


def _warn_validity(s: float) -> None:
    if s < 0.5:
        warnings.warn(
            f"small-t expansion is derived for s in [1/2, 1]; s={s} is extrapolated",
            ValidityWarning,
            stacklevel=3,
        )


def trace_asymptotic(model: SpectralModel, t: float) -> float:
    """Two-term-per-axis small-t trace ``sum_m c_m lambda(t)^m``."""
    t = _check_t(t)
    _warn_validity(model.s)
    return expansion_coefficients(model).evaluate(t)


def trace_asymptotic_product(model: SpectralModel, t: float) -> float:
    """The same expansion as the literal product ``prod_j (lambda a_j - s/2)``."""
    t = _check_t(t)
    lam = weyl_scale(model.s, t, model.unit_constant)
    return math.prod(lam * a - model.s / 2.0 for a in model.box.edges)


# ---------------------------------------------------------------------------
# constant-term study


@dataclass(frozen=True)
class EMConstantReport:
    a: float
    s: float
    t: tuple[float, ...]
    direct_constant: tuple[float, ...]
    em_constant: tuple[float, ...]
    em_remainder_bound: tuple[float, ...]
    limit_estimate: float
    target: float
    warning: str | None = None

    @property
    def limit_error(self) -> float:
        return abs(self.limit_estimate - self.target)


def _em_axis_constant(a: float, s: float, t: float) -> EMResult:
    # sum_{k>=2} f(k) by Euler-Maclaurin with p = 2, f(u) = exp(-t w^(2s)), w = pi (u - c)/a
    c = phase_shift(s)
    q = math.pi / a
    two_s = 2.0 * s

    def w(u):
        return q * (u - c)

    def f(u):
        return math.exp(-t * w(u) ** two_s)

    def g1(u):
        return two_s * t * q * w(u) ** (two_s - 1.0)

    def g2(u):
        return two_s * (two_s - 1.0) * t * q * q * w(u) ** (two_s - 2.0)

    def f1(u):
        return -g1(u) * f(u)

    def f2(u):
        return (g1(u) ** 2 - g2(u)) * f(u)

    # total variation of f' on [1, inf): f' dips to a minimum at the inflection point
    variation = -f1(1.0)
    if s > 0.5:
        w_star = ((two_s - 1.0) / (two_s * t)) ** (1.0 / two_s)
        u_star = c + w_star / q
        if u_star > 1.0:
            variation = f1(1.0) - 2.0 * f1(u_star)
    res = em_sum(
        f, 1, math.inf, 2, (f1, f2),
        integral=_tail_integral(a, s, t, c, 1.0),
        abs_deriv_integral=variation,
    )
    return EMResult(
        value=res.value + f(1.0),
        integral=res.integral,
        corrections=res.corrections,
        remainder_bound=res.remainder_bound,
    )


def verify_em_constant(
    a: float,
    s: float,
    t_sequence: Sequence[float],
    trunc: TruncationSpec | None = None,
) -> EMConstantReport:
    """Measure the t-independent term of one axis factor as t -> 0.

    For each t the report holds ``Z_1(t) - lambda a`` from the direct sum and
    from an order-2 Euler-Maclaurin evaluation.  The limit is estimated by
    linear Richardson extrapolation (error O(t)) over the two smallest t.
    """
    s = _check_s(s)
    ts = [_check_t(t) for t in t_sequence]
    if len(ts) < 2:
        raise DomainError("need at least two times to extrapolate")
    msg = None
    if s < 0.5:
        msg = "s < 1/2: the summand is only continuous in u; constant not guaranteed"
        warnings.warn(msg, ValidityWarning, stacklevel=2)
    direct, em, bounds = [], [], []
    for t in ts:
        lam_a = weyl_scale(s, t) * a
        direct.append(trace_1d_direct(a, s, t, trunc) - lam_a)
        res = _em_axis_constant(a, s, t)
        em.append(res.value - lam_a)
        bounds.append(res.remainder_bound)
    order = sorted(range(len(ts)), key=lambda i: ts[i])
    i1, i2 = order[0], order[1]
    t1, t2 = ts[i1], ts[i2]
    limit = (t2 * direct[i1] - t1 * direct[i2]) / (t2 - t1)
    return EMConstantReport(
        a=a,
        s=s,
        t=tuple(ts),
        direct_constant=tuple(direct),
        em_constant=tuple(em),
        em_remainder_bound=tuple(bounds),
        limit_estimate=limit,
        target=-s / 2.0,
        warning=msg,
    )


# ---------------------------------------------------------------------------
# curves


@dataclass(frozen=True)
class TraceCurve:
    samples: tuple[tuple[float, float], ...]
    route_label: str
    meta: dict = field(default_factory=dict, compare=False)

    def __post_init__(self):
        if self.route_label not in ROUTES:
            raise DomainError(f"unknown route {self.route_label!r}")
        ts = [t for t, _ in self.samples]
        if any(t <= 0.0 for t in ts):
            raise DomainError("trace curve times must be positive")
        if any(t2 <= t1 for t1, t2 in zip(ts, ts[1:])):
            raise DomainError("trace curve times must be strictly increasing")
        if self.route_label != "asymptotic" and any(z <= 0.0 for _, z in self.samples):
            raise DomainError("trace values must be positive")

    @property
    def t(self) -> np.ndarray:
        return np.array([t for t, _ in self.samples])

    @property
    def z(self) -> np.ndarray:
        return np.array([z for _, z in self.samples])


def trace_curve(
    model: SpectralModel,
    t_values: Sequence[float],
    route: str = "direct",
    trunc: TruncationSpec | None = None,
    quad=None,
    images=None,
) -> TraceCurve:
    """Sample one trace route on a grid of times."""
    ts = sorted(float(t) for t in t_values)
    if route == "direct":
        zs = [trace_direct(model, t, trunc) for t in ts]
    elif route == "exact_half":
        if model.s != 0.5:
            raise DomainError("the exact_half route needs s = 1/2")
        zs = [math.prod(trace_exact_half(a, t) for a in model.box.edges) for t in ts]
    elif route == "theta_s1":
        if model.s != 1.0:
            raise DomainError("the theta_s1 route needs s = 1")
        zs = [trace_theta_s1(model.box, t) for t in ts]
    elif route == "asymptotic":
        _warn_validity(model.s)
        exp = expansion_coefficients(model)
        zs = [exp.evaluate(t) for t in ts]
    elif route == "images":
        from .images import image_trace

        zs = [
            math.prod(image_trace(a, model.s, t, images, quad).value for a in model.box.edges)
            for t in ts
        ]
    else:
        raise DomainError(f"unknown route {route!r}")
    return TraceCurve(samples=tuple(zip(ts, zs)), route_label=route)
