"""Special functions and combinatorial kernels.

Everything here is a plain function of floats/ints.  The gamma function is
a self-contained Lanczos approximation so that the geometric and spectral
layers do not depend on a particular math backend for their constants.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .errors import DomainError

__all__ = [
    "BernoulliTable",
    "gamma",
    "bernoulli_table",
    "bernoulli_poly",
    "elementary_symmetric",
    "elementary_symmetric_all",
    "ball_volume",
    "sphere_area",
    "theta",
    "theta_minus_one",
]

# Lanczos coefficients for g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS_COEF = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)
_BERNOULLI_MAX = 30


def _lanczos_series(z: float) -> float:
    acc = _LANCZOS_COEF[0]
    for i in range(1, len(_LANCZOS_COEF)):
        acc += _LANCZOS_COEF[i] / (z + i)
    return acc


def gamma(x: float) -> float:
    """Gamma function for real ``x > 0``.

    Lanczos approximation (g=7, 9 terms), relative error around 1e-15.
    Arguments below 1/2 are shifted up with ``Gamma(x) = Gamma(x+1)/x``.
    Raises ``OverflowError`` past ``x ~ 171.6``.
    """
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"gamma requires a finite positive argument, got {x!r}")
    if x.is_integer() and x <= 171.0:
        return float(math.factorial(int(x) - 1))
    if (2.0 * x).is_integer() and x <= 85.5:
        # Gamma(n + 1/2) = (2n)! sqrt(pi) / (4^n n!)
        n = int(x - 0.5)
        return math.factorial(2 * n) / (4**n * math.factorial(n)) * math.sqrt(math.pi)
    if x < 0.5:
        return gamma(x + 1.0) / x
    z = x - 1.0
    tt = z + _LANCZOS_G + 0.5
    series = _lanczos_series(z)
    if x <= 140.0:
        return _SQRT_2PI * tt ** (z + 0.5) * math.exp(-tt) * series
    log_g = 0.5 * math.log(2.0 * math.pi) + (z + 0.5) * math.log(tt) - tt + math.log(series)
    return math.exp(log_g)


@dataclass(frozen=True)
class BernoulliTable:
    """Bernoulli numbers B_0..B_p (first convention, B_1 = -1/2).

    ``exact`` keeps the rational values; ``numbers`` are their float images.
    """

    exact: tuple[Fraction, ...]
    max_order: int

    @property
    def numbers(self) -> tuple[float, ...]:
        return tuple(float(b) for b in self.exact)

    def __getitem__(self, l: int) -> float:
        return float(self.exact[l])

    def __len__(self) -> int:
        return len(self.exact)


def _bernoulli_exact(p: int) -> tuple[Fraction, ...]:
    # sum_{k=0}^{l} C(l+1, k) B_k = 0 for l >= 1
    b = [Fraction(1)]
    for l in range(1, p + 1):
        acc = Fraction(0)
        for k in range(l):
            acc += math.comb(l + 1, k) * b[k]
        b.append(-acc / (l + 1))
    return tuple(b)


def bernoulli_table(p: int) -> BernoulliTable:
    """Return B_0..B_p computed by the exact rational recurrence."""
    if not isinstance(p, int) or p < 0 or p > _BERNOULLI_MAX:
        raise DomainError(f"bernoulli order must be an integer in [0, {_BERNOULLI_MAX}], got {p!r}")
    return BernoulliTable(exact=_bernoulli_exact(p), max_order=p)


def bernoulli_poly(l: int, u: float) -> float:
    """Bernoulli polynomial B_l(u) on the unit interval ``0 <= u < 1``."""
    if not isinstance(l, int) or l < 0 or l > _BERNOULLI_MAX:
        raise DomainError(f"bernoulli order must be an integer in [0, {_BERNOULLI_MAX}], got {l!r}")
    if not 0.0 <= u < 1.0:
        raise DomainError(f"bernoulli_poly expects u in [0, 1), got {u!r}")
    b = _bernoulli_exact(l)
    # Horner in u with coefficients C(l, k) B_{l-k}
    acc = 0.0
    for k in range(l + 1):
        acc = acc * u + math.comb(l, k) * float(b[k])
    return acc


def elementary_symmetric_all(values: Sequence[float]) -> list[float]:
    """Elementary symmetric polynomials e_0..e_d of ``values``."""
    e = [1.0] + [0.0] * len(values)
    for j, v in enumerate(values, start=1):
        for m in range(j, 0, -1):
            e[m] += v * e[m - 1]
    return e


def elementary_symmetric(values: Sequence[float], m: int) -> float:
    """Sum over all m-subsets of ``values`` of the product of the subset."""
    d = len(values)
    if m < 0 or m > d:
        raise DomainError(f"elementary_symmetric order must lie in [0, {d}], got {m}")
    return elementary_symmetric_all(values)[m]


def ball_volume(d: int) -> float:
    """Volume of the unit ball in R^d, ``pi^(d/2) / Gamma(1 + d/2)``."""
    if d < 0:
        raise DomainError(f"dimension must be non-negative, got {d}")
    return math.pi ** (d / 2.0) / gamma(1.0 + d / 2.0)


def sphere_area(d: int) -> float:
    """Surface measure of the unit sphere S^(d-1) in R^d."""
    if d < 1:
        raise DomainError(f"sphere_area needs d >= 1, got {d}")
    return 2.0 * math.pi ** (d / 2.0) / gamma(d / 2.0)


def _theta_tail(x: float) -> float:
    # 2 * sum_{n>=1} exp(-pi n^2 x), only called with x >= 1
    n_max = math.ceil(math.sqrt(36.0 / (math.pi * x)))
    acc = 0.0
    for n in range(n_max, 0, -1):
        acc += math.exp(-math.pi * n * n * x)
    return 2.0 * acc


def _check_theta_arg(x: float) -> float:
    x = float(x)
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"theta requires x > 0, got {x!r}")
    return x


def theta(x: float) -> float:
    """Theta function ``sum_{n in Z} exp(-pi n^2 x)`` for ``x > 0``.

    Arguments below one are mapped through ``Theta(x) = Theta(1/x)/sqrt(x)``
    so that at most a handful of terms are ever summed.
    """
    x = _check_theta_arg(x)
    if x < 1.0:
        return (1.0 + _theta_tail(1.0 / x)) / math.sqrt(x)
    return 1.0 + _theta_tail(x)


def theta_minus_one(x: float) -> float:
    """``theta(x) - 1`` without cancellation for large ``x``."""
    x = _check_theta_arg(x)
    if x < 1.0:
        return (1.0 + _theta_tail(1.0 / x)) / math.sqrt(x) - 1.0
    return _theta_tail(x)
