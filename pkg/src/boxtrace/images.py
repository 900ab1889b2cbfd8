"""Method-of-images route to the one-dimensional heat trace.

The free symmetric 2s-stable density is evaluated from its Fourier integral

    p(x, t) = (1/pi) int_0^inf exp(-t k^(2s)) cos(k x) dk,

and the Dirichlet density on (0, a) is the alternating image series

    p_a(x, y) = sum_n p(x - y - 2na) - sum_n p(x + y - 2na).

Integrating its diagonal over the interval gives three pieces: the bulk
``a p(0, t)``, the image pairs ``2a sum_{n>=1} p(2na)`` and the reflected
mass, which tends to 1/2.  The wavenumber shift ``pi g(s)/a`` carried by the
stable eigenvalue law is not folded into the kernel; its contribution to
the bulk piece, ``(a/pi) int_0^{pi g/a} exp(-t u^(2s)) du``, is added
separately.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np
from scipy import integrate, special

from .convex_geom import HyperBox
from .errors import ConvergenceError, DomainError
from .special_fn import gamma
from .spectrum import phase_shift

__all__ = [
    "QuadratureSpec",
    "ImageSeriesSpec",
    "ImageTraceReport",
    "free_density",
    "free_cdf",
    "spatial_cutoff",
    "image_density",
    "return_density",
    "image_trace",
    "image_density_2d_gaussian",
    "images_2d_gaussian_trace",
]


@dataclass(frozen=True)
class QuadratureSpec:
    rel_tol: float = 1e-10
    abs_tol: float = 1e-14
    max_subdivisions: int = 10**4
    cutoff_epsilon: float = 1e-16

    def __post_init__(self):
        for name in ("rel_tol", "abs_tol", "cutoff_epsilon"):
            v = getattr(self, name)
            if not 0.0 < v < 1.0:
                raise DomainError(f"{name} must lie in (0, 1), got {v!r}")
        if self.max_subdivisions < 10:
            raise DomainError("max_subdivisions must be >= 10")


@dataclass(frozen=True)
class ImageSeriesSpec:
    max_images: int = 64
    series_tail_tol: float = 1e-13

    def __post_init__(self):
        if self.max_images < 1:
            raise DomainError("max_images must be >= 1")
        if not self.series_tail_tol >= 0.0:
            raise DomainError("series_tail_tol must be non-negative")


_DEFAULT_QUAD = QuadratureSpec()
_DEFAULT_IMAGES = ImageSeriesSpec()

# Gauss-Legendre rule for the zero-to-zero panels
_GL_X, _GL_W = np.polynomial.legendre.leggauss(24)
_DIRECT_PANELS = 20000
_EULER_HEAD = 48
_EULER_LEVELS = 40


def _check(s: float, t: float) -> None:
    if not 0.0 < s <= 1.0:
        raise DomainError(f"stability index s must lie in (0, 1], got {s!r}")
    if not (math.isfinite(t) and t > 0.0):
        raise DomainError(f"time must be positive, got {t!r}")


def _k_max(s: float, t: float, quad: QuadratureSpec) -> float:
    return (math.log(1.0 / quad.cutoff_epsilon) / t) ** (1.0 / (2.0 * s))


def _quad(fn, lo, hi, quad: QuadratureSpec):
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always", integrate.IntegrationWarning)
        val, err = integrate.quad(
            fn, lo, hi, epsabs=quad.abs_tol, epsrel=max(1e-2 * quad.rel_tol, 1e-14),
            limit=quad.max_subdivisions,
        )
    if caught and err > max(quad.abs_tol, quad.rel_tol * abs(val)):
        raise ConvergenceError(f"quadrature did not converge: {caught[0].message}", achieved_error=err)
    return val, err


def _panel_integrals(amp, weight, edges: np.ndarray) -> np.ndarray:
    lo, hi = edges[:-1], edges[1:]
    half = 0.5 * (hi - lo)
    k = (0.5 * (hi + lo))[:, None] + half[:, None] * _GL_X[None, :]
    return half * ((amp(k) * weight(k)) @ _GL_W)


def _oscillatory(amp, x: float, k_max: float, kind: str, quad: QuadratureSpec) -> float:
    """``int_0^inf amp(k) w(k) dk`` with w = cos(kx) or sin(kx)/k, for x > 0.

    The half-line is cut at the zeros of the oscillating factor.  The first
    panel (which holds any non-smoothness of ``amp`` at k = 0) goes to the
    adaptive rule; later panels use a fixed Gauss-Legendre rule.  When the
    amplitude needs too many panels to decay, the alternating panel series
    is summed with repeated averaging of partial sums (Euler transform).
    """
    if kind == "cos":
        first = 0.5 * math.pi / x

        def head(k):
            return amp(k) * math.cos(k * x)

        def weight(k):
            return np.cos(k * x)
    else:
        first = math.pi / x

        def head(k):
            return amp(k) * x * np.sinc(k * x / math.pi)

        def weight(k):
            return np.sin(k * x) / k

    v0, e0 = _quad(head, 0.0, first, quad)
    step = math.pi / x
    n_panels = max(0, math.ceil((k_max - first) / step))
    if n_panels <= _DIRECT_PANELS:
        edges = first + step * np.arange(n_panels + 1)
        parts = _panel_integrals(amp, weight, edges)
        return math.fsum([v0, *parts])

    n = _EULER_HEAD + _EULER_LEVELS
    edges = first + step * np.arange(n + 1)
    parts = _panel_integrals(amp, weight, edges)
    head_sum = math.fsum([v0, *parts[:_EULER_HEAD]])
    partial = head_sum + np.concatenate([[0.0], np.cumsum(parts[_EULER_HEAD:])])

    def euler(seq):
        seq = np.array(seq, dtype=float)
        while len(seq) > 1:
            seq = 0.5 * (seq[:-1] + seq[1:])
        return float(seq[0])

    value = euler(partial)
    err = abs(value - euler(partial[:-2]))
    if err > max(quad.abs_tol, quad.rel_tol * abs(value)):
        raise ConvergenceError("Euler-accelerated panel sum did not settle", achieved_error=err)
    return value


def free_density(s: float, t: float, x: float, quad: QuadratureSpec | None = None) -> float:
    """Free symmetric 2s-stable transition density on the line.

    Uses adaptive quadrature on [0, k_max] when ``|x| t^(-1/2s) <= 2``, with
    ``t k_max^(2s) = ln(1/cutoff_epsilon)``, and the zero-to-zero panel
    scheme otherwise.
    """
    quad = quad or _DEFAULT_QUAD
    _check(s, t)
    y = abs(float(x))
    k_max = _k_max(s, t, quad)
    two_s = 2.0 * s

    def amp(k):
        return np.exp(-t * k**two_s)

    if y * t ** (-1.0 / two_s) <= 2.0:
        val, _ = _quad(lambda k: math.exp(-t * k**two_s) * math.cos(k * y), 0.0, k_max, quad)
    else:
        val = _oscillatory(amp, y, k_max, "cos", quad)
    return max(val, 0.0) / math.pi


def free_cdf(s: float, t: float, x: float, quad: QuadratureSpec | None = None) -> float:
    """``int_0^x p(u, t) du`` from the sine transform; odd in ``x``."""
    quad = quad or _DEFAULT_QUAD
    _check(s, t)
    y = abs(float(x))
    if y == 0.0:
        return 0.0
    k_max = _k_max(s, t, quad)
    two_s = 2.0 * s

    def amp(k):
        return np.exp(-t * k**two_s)

    if y * t ** (-1.0 / two_s) <= 2.0:
        val, _ = _quad(lambda k: math.exp(-t * k**two_s) * y * np.sinc(k * y / math.pi), 0.0, k_max, quad)
    else:
        val = _oscillatory(amp, y, k_max, "sin", quad)
    return math.copysign(val / math.pi, x)


def spatial_cutoff(s: float, t: float, eps: float) -> float:
    """Half-width X with ``P(|X_t| > X)`` about ``eps``.

    Uses the Gaussian tail at s = 1 and the leading power-law tail
    ``2 t Gamma(2s) sin(pi s) / (pi X^(2s))`` otherwise, never narrower than
    the Gaussian width.
    """
    _check(s, t)
    scale = t ** (1.0 / (2.0 * s))
    width = 2.0 * float(special.erfcinv(eps))
    if s < 1.0:
        c_tail = 2.0 * gamma(2.0 * s) * math.sin(math.pi * s) / math.pi
        width = max(width, (c_tail / eps) ** (1.0 / (2.0 * s)))
    return scale * width


def _check_interval(a: float, *pts: float) -> None:
    if not a > 0.0:
        raise DomainError(f"interval length must be positive, got {a!r}")
    for p in pts:
        if not 0.0 <= p <= a:
            raise DomainError(f"point {p!r} lies outside [0, {a}]")


def image_density(
    a: float,
    s: float,
    t: float,
    x: float,
    y: float,
    spec: ImageSeriesSpec | None = None,
    quad: QuadratureSpec | None = None,
) -> float:
    """Dirichlet density on (0, a) from the image series.

    Images are summed in rings ``n = +-1, +-2, ...``; each ring is a group of
    four kernels whose two signed halves coincide exactly when x = 0.  Points
    in the upper half are reflected to the lower half first, so x = a
    cancels exactly as well.  For s < 1 the rings decay only like
    ``n^-(3+2s)``, so the ``max_images`` cap, not ``series_tail_tol``, usually
    sets the accuracy (about 1e-9 at the default of 64).
    """
    spec = spec or _DEFAULT_IMAGES
    _check(s, t)
    _check_interval(a, x, y)
    if x > 0.5 * a:
        x, y = a - x, a - y

    def p(u):
        return free_density(s, t, abs(u), quad)

    total = p(x - y) - p(x + y)
    for n in range(1, spec.max_images + 1):
        shift = 2.0 * n * a
        ring = (p(x - y - shift) + p(x - y + shift)) - (p(x + y - shift) + p(x + y + shift))
        total += ring
        if abs(ring) <= spec.series_tail_tol * abs(total):
            break
    return total


def return_density(
    a: float,
    s: float,
    t: float,
    y: float,
    spec: ImageSeriesSpec | None = None,
    quad: QuadratureSpec | None = None,
) -> float:
    """Diagonal ``p_a(y, y)``: ``p(0) + 2 sum_{n>=1} p(2na) - sum_n p(2(y - na))``."""
    spec = spec or _DEFAULT_IMAGES
    _check(s, t)
    _check_interval(a, y)
    if y > 0.5 * a:
        y = a - y

    def p(u):
        return free_density(s, t, abs(u), quad)

    total = p(0.0) - p(2.0 * y)
    for n in range(1, spec.max_images + 1):
        shift = 2.0 * n * a
        pn = p(shift)
        ring = (pn + pn) - (p(2.0 * y - shift) + p(2.0 * y + shift))
        total += ring
        if abs(ring) <= spec.series_tail_tol * abs(total):
            break
    return total


@dataclass(frozen=True)
class ImageTraceReport:
    """Image-route trace of one interval and its decomposition.

    ``value = bulk + image_pairs - reflected`` where ``bulk = free_bulk +
    shift``.  ``free_bulk`` equals ``lambda a``; ``shift`` tends to g(s);
    ``image_pairs`` vanishes as t -> 0 and ``reflected`` tends to 1/2.
    """

    value: float
    free_bulk: float
    shift: float
    image_pairs: float
    reflected: float
    n_images: int

    @property
    def bulk(self) -> float:
        return self.free_bulk + self.shift

    @property
    def constant(self) -> float:
        return self.value - self.free_bulk


def _shift_term(a: float, s: float, t: float, quad: QuadratureSpec) -> float:
    g = phase_shift(s)
    if g == 0.0:
        return 0.0
    val, _ = _quad(lambda u: math.exp(-t * u ** (2.0 * s)), 0.0, math.pi * g / a, quad)
    return a / math.pi * val


def image_trace(
    a: float,
    s: float,
    t: float,
    spec: ImageSeriesSpec | None = None,
    quad: QuadratureSpec | None = None,
    *,
    y_quadrature: bool = False,
) -> ImageTraceReport:
    """``int_0^a p_a(y, y) dy`` plus the shift contribution.

    By default the reflected piece ``int_0^a sum_{|n|<=N} p(2|y - na|) dy`` is
    integrated term by term; each term is a difference of free CDF values
    and the sum telescopes to ``(F(2aN) + F(2a(N+1)))/2``.  With
    ``y_quadrature=True`` the diagonal is instead integrated pointwise over y
    by adaptive quadrature (slow; used as a cross-check).
    """
    spec = spec or _DEFAULT_IMAGES
    quad = quad or _DEFAULT_QUAD
    _check(s, t)
    if not a > 0.0:
        raise DomainError(f"interval length must be positive, got {a!r}")

    free_bulk = a * free_density(s, t, 0.0, quad)
    shift = _shift_term(a, s, t, quad)

    terms = []
    n_images = spec.max_images
    for n in range(1, spec.max_images + 1):
        terms.append(free_density(s, t, 2.0 * n * a, quad))
        if 2.0 * a * terms[-1] <= spec.series_tail_tol * free_bulk:
            n_images = n
            break
    image_pairs = 2.0 * a * math.fsum(terms)

    if y_quadrature:
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", integrate.IntegrationWarning)
            diag, _ = integrate.quad(
                lambda y: return_density(a, s, t, y, spec, quad), 0.0, a,
                epsabs=1e-12, epsrel=1e-10, limit=200,
            )
        reflected = free_bulk + image_pairs - diag
    else:
        big = free_cdf(s, t, 2.0 * a * n_images, quad) + free_cdf(s, t, 2.0 * a * (n_images + 1), quad)
        reflected = 0.5 * big

    value = free_bulk + shift + image_pairs - reflected
    return ImageTraceReport(
        value=value,
        free_bulk=free_bulk,
        shift=shift,
        image_pairs=image_pairs,
        reflected=reflected,
        n_images=n_images,
    )


# ---------------------------------------------------------------------------
# two-dimensional Gaussian images



def _lattice_extent(a: float, t: float, spec: ImageSeriesSpec) -> int:
    n = math.ceil(1.0 + math.sqrt(40.0 * t) / a) + 1
    return min(n, spec.max_images)


def image_density_2d_gaussian(box, t: float, y1, y2, spec: ImageSeriesSpec | None = None):
    """Diagonal of the rectangle's image kernel at points (y1, y2), s = 1.

    Four sign classes of image sources ``(+-y1 + 2n a1, +-y2 + 2m a2)``:
    like signs enter positively, mixed signs negatively.  Broadcasts over
    array arguments.
    """
    spec = spec or _DEFAULT_IMAGES
    box = box if isinstance(box, HyperBox) else HyperBox(box)
    if box.d != 2:
        raise DomainError("the 2D image construction needs a rectangle")
    if not t > 0.0:
        raise DomainError(f"time must be positive, got {t!r}")
    a1, a2 = box.edges
    y1 = np.asarray(y1, dtype=float)
    y2 = np.asarray(y2, dtype=float)
    n1 = _lattice_extent(a1, t, spec)
    n2 = _lattice_extent(a2, t, spec)
    total = np.zeros(np.broadcast(y1, y2).shape)
    for n in range(-n1, n1 + 1):
        u_same = -2.0 * n * a1  # x1 - (y1 + 2n a1) at x = y
        u_flip = 2.0 * y1 - 2.0 * n * a1  # x1 - (-y1 + 2n a1)
        for m in range(-n2, n2 + 1):
            v_same = -2.0 * m * a2
            v_flip = 2.0 * y2 - 2.0 * m * a2
            # g(us,vs) + g(uf,vf) - g(us,vf) - g(uf,vs) for the Gaussian kernel,
            # grouped as a product of differences to avoid cancellation
            du = np.exp(-(u_same**2) / (4.0 * t)) - np.exp(-(u_flip**2) / (4.0 * t))
            dv = np.exp(-(v_same**2) / (4.0 * t)) - np.exp(-(v_flip**2) / (4.0 * t))
            total += du * dv
    return total / (4.0 * math.pi * t)


def _composite_gl(a: float, t: float, order: int = 16):
    n_panels = max(4, math.ceil(2.0 * a / math.sqrt(t)))
    x, w = np.polynomial.legendre.leggauss(order)
    h = a / n_panels
    lo = h * np.arange(n_panels)
    nodes = (lo[:, None] + 0.5 * h * (x[None, :] + 1.0)).ravel()
    weights = np.tile(0.5 * h * w, n_panels)
    return nodes, weights


def images_2d_gaussian_trace(box, t: float, spec: ImageSeriesSpec | None = None) -> float:
    """Trace over the rectangle of the s = 1 image kernel's diagonal.

    Tensor-product composite Gauss-Legendre quadrature with panels no wider
    than ``sqrt(t)/2``.
    """
    box = box if isinstance(box, HyperBox) else HyperBox(box)
    if box.d != 2:
        raise DomainError("the 2D image construction needs a rectangle")
    a1, a2 = box.edges
    x1, w1 = _composite_gl(a1, t)
    x2, w2 = _composite_gl(a2, t)
    vals = image_density_2d_gaussian(box, t, x1[:, None], x2[None, :], spec)
    return float(w1 @ vals @ w2)
