"""Acceptance criteria, one test per criterion.

Each test prints a single ``CRITERION n: PASS|FAIL  <detail>`` line (also
under pytest's output capture) and then asserts.  Run the file directly for
the ten lines alone::

    python3 tests/test_acceptance.py
"""

from __future__ import annotations

import itertools
import math
import sys

import mpmath
import numpy as np
import pytest

from boxtrace.convex_geom import (
    HyperBox,
    corner_correction,
    intrinsic_volumes,
    mean_breadth,
    quermassintegrals,
    regular_polygon_correction,
    steiner_volume,
)
from boxtrace.images import free_density, image_trace, images_2d_gaussian_trace
from boxtrace.special_fn import ball_volume, gamma, theta
from boxtrace.spectrum import SpectralModel, counting_function, weyl_prediction
from boxtrace.trace import (
    TruncationSpec,
    expansion_coefficients,
    trace_1d_direct,
    trace_asymptotic,
    trace_direct,
    trace_exact_half,
    trace_theta_s1,
    verify_em_constant,
    weyl_scale,
)

S_VALUES = (0.5, 0.6, 0.75, 0.9, 1.0)
BOXES = ((1.0,), (1.0, 2.0), (1.0, 2.0, 3.0))
T_DECADES = (1e-1, 1e-2, 1e-3, 1e-4)


def _report(n: int, ok: bool, detail: str, capsys=None) -> None:
    line = f"CRITERION {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    if capsys is None:
        print(line)
    else:
        with capsys.disabled():
            print("\n" + line)


# ---------------------------------------------------------------------------
# criterion bodies: each returns (ok, detail)


def criterion_1():
    ts = np.logspace(-3, 1, 13)
    worst = max(abs(trace_1d_direct(1.0, 0.5, t) - trace_exact_half(1.0, t)) / trace_exact_half(1.0, t) for t in ts)
    asym_ok = True
    worst_ratio = 0.0
    for t in ts[ts <= 1e-2 * (1 + 1e-12)]:
        z = trace_1d_direct(1.0, 0.5, t)
        dev = abs(z - 1 / (math.pi * t) + 0.25)
        worst_ratio = max(worst_ratio, dev / (10 * t))
        asym_ok &= dev <= 10 * t
    ok = worst <= 1e-12 and asym_ok
    return ok, f"max rel diff {worst:.2e} (<=1e-12); max |Z-1/(pi t)+1/4|/(10t) {worst_ratio:.3f} (<=1)"


def criterion_2():
    worst = 0.0
    for edges in ((1.0, 1.0), (1.0, 2.0)):
        model = SpectralModel(HyperBox(edges), 1.0)
        for t in np.logspace(-3, 1, 25):
            z = trace_direct(model, t)
            worst = max(worst, abs(z - trace_theta_s1(model.box, t)) / z)
    resid = max(abs(theta(x) - theta(1 / x) / math.sqrt(x)) for x in np.linspace(0.05, 20.0, 1000))
    ok = worst <= 1e-11 and resid <= 1e-13
    return ok, f"max rel diff {worst:.2e} (<=1e-11); modular residual {resid:.2e} (<=1e-13)"


def _s1_relative_error(edges, t, dps=30):
    """Exact relative error of the s = 1 expansion via Poisson summation.

    Per axis Z_j = A_j + r_j with A_j = lambda a_j - 1/2 and
    r_j = (a_j / sqrt(pi t)) sum_{n>=1} exp(-n^2 a_j^2 / t), so
    Z - prod A = sum over nonempty subsets S of prod_S r prod_{not S} A,
    which has no cancellation and is evaluated at modest precision.
    """
    with mpmath.workdps(dps):
        t = mpmath.mpf(t)
        lam = 1 / (2 * mpmath.sqrt(mpmath.pi * t))
        A = [lam * a - mpmath.mpf(1) / 2 for a in edges]
        r = [
            a / mpmath.sqrt(mpmath.pi * t) * mpmath.nsum(lambda n: mpmath.exp(-(n**2) * a**2 / t), [1, mpmath.inf])
            for a in edges
        ]
        num = mpmath.mpf(0)
        for mask in itertools.product((0, 1), repeat=len(edges)):
            if any(mask):
                num += mpmath.fprod(r[j] if m else A[j] for j, m in enumerate(mask))
        den = mpmath.fprod(A[j] + r[j] for j in range(len(edges)))
        return num / den, den


def _s1_direct_mp(edges, t, dps):
    # independent check of the Poisson oracle: plain summation at high precision
    with mpmath.workdps(dps):
        t = mpmath.mpf(t)
        z = mpmath.mpf(1)
        for a in edges:
            z *= mpmath.nsum(lambda n: mpmath.exp(-t * (mpmath.pi * n / a) ** 2), [1, mpmath.inf])
        lam = 1 / (2 * mpmath.sqrt(mpmath.pi * t))
        asym = mpmath.fprod(lam * a - mpmath.mpf(1) / 2 for a in edges)
        return abs(z - asym) / z


def criterion_3():
    failures = []
    worst_final = 0.0
    for s in S_VALUES:
        for edges in BOXES:
            model = SpectralModel(HyperBox(edges), s)
            if s == 1.0:
                # the true error ~ exp(-a^2/t) sits below double rounding for
                # t <= 1e-2; measure it exactly and confirm the library sums
                # agree with the exact trace to rounding
                errs = []
                for t in T_DECADES:
                    e, z_exact = _s1_relative_error(edges, t)
                    errs.append(e)
                    if abs(trace_direct(model, t) - z_exact) / z_exact > 1e-13:
                        failures.append(f"s=1 {edges} t={t}: direct sum off exact trace")
                    if abs(trace_asymptotic(model, t) - z_exact) / z_exact > 1e-13 + float(e):
                        failures.append(f"s=1 {edges} t={t}: expansion off exact trace")
                for t, e in zip(T_DECADES[:2], errs[:2]):
                    e_direct = _s1_direct_mp(edges, t, dps=80)
                    if abs(e_direct - e) > 1e-10 * e:
                        failures.append(f"s=1 {edges} t={t}: Poisson oracle disagrees with direct sum")
                # compare in log10: the later errors underflow a double
                log_errs = [float(mpmath.log10(e)) for e in errs]
                monotone = all(b < a for a, b in zip(log_errs, log_errs[1:]))
                final = float(errs[-1])
            else:
                errs = [abs(trace_direct(model, t) - trace_asymptotic(model, t)) / trace_direct(model, t) for t in T_DECADES]
                monotone = all(b < a for a, b in zip(errs, errs[1:]))
                final = errs[-1]
            worst_final = max(worst_final, final)
            if not monotone:
                failures.append(f"s={s} {edges}: not decreasing")
            if final > 1e-3:
                failures.append(f"s={s} {edges}: error {final:.2e} at t=1e-4")
    ok = not failures
    detail = f"15 (s,d) cases; worst error at t=1e-4 {worst_final:.2e} (<=1e-3)"
    if failures:
        detail += "; " + "; ".join(failures[:3])
    return ok, detail


def criterion_4():
    # 1.03e7 terms are needed at s=1/2, t=1e-6, above the default 1e7 budget
    trunc = TruncationSpec(max_terms_per_axis=2 * 10**7)
    ts = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
    em_err = {}
    img_err = {}
    for s in (0.5, 0.75, 1.0):
        rep = verify_em_constant(1.0, s, ts, trunc)
        em_err[s] = rep.limit_error
        img = image_trace(1.0, s, 1e-3)
        img_err[s] = abs(img.value - weyl_scale(s, 1e-3) - (-s / 2))
    ok = max(em_err.values()) <= 1e-4 and max(img_err.values()) <= 5e-3
    detail = (
        "direct limit err "
        + ", ".join(f"s={s}: {e:.1e}" for s, e in em_err.items())
        + " (<=1e-4); images err at t=1e-3 "
        + ", ".join(f"s={s}: {e:.1e}" for s, e in img_err.items())
        + " (<=5e-3)"
    )
    return ok, detail


def criterion_5():
    t = 1e-4
    model = SpectralModel(HyperBox((1.0, 1.0)), 1.0)
    kac = 1.0 / (4 * math.pi * t) - 4.0 / (8 * math.sqrt(math.pi * t)) + 0.25
    z = trace_direct(model, t)
    err = abs(z - kac) / z
    c0 = expansion_coefficients(model).coefficients[0]
    corner = corner_correction([math.pi / 2] * 4)
    ok = err <= 1e-6 and c0 == corner == 0.25
    return ok, f"rel err {err:.2e} (<=1e-6); constant term {c0!r} == corner correction {corner!r}"


def criterion_6():
    worst = max(
        abs(corner_correction([math.pi * (n - 2) / n] * n) - (n - 1) / (6.0 * (n - 2))) for n in range(3, 101)
    )
    worst = max(worst, max(abs(regular_polygon_correction(n) - (n - 1) / (6.0 * (n - 2))) for n in range(3, 101)))
    lim = abs(regular_polygon_correction(10**6) - 1 / 6)
    ok = worst <= 1e-13 and lim <= 1e-5
    return ok, f"n-gon identity max err {worst:.2e} (<=1e-13); |c(1e6)-1/6| {lim:.2e} (<=1e-5)"


def _parallel_body(edges, rho):
    if len(edges) == 2:
        a1, a2 = edges
        return a1 * a2 + 2 * (a1 + a2) * rho + math.pi * rho**2
    a1, a2, a3 = edges
    return (
        a1 * a2 * a3
        + 2 * (a1 * a2 + a1 * a3 + a2 * a3) * rho
        + math.pi * rho**2 * (a1 + a2 + a3)
        + 4 * math.pi * rho**3 / 3
    )


def criterion_7():
    rng = np.random.default_rng(7)
    steiner = binom = w_box = breadth = 0.0
    for _ in range(200):
        d = int(rng.integers(2, 4))
        edges = tuple(rng.uniform(0.1, 5.0, d))
        rho = float(rng.uniform(0.0, 2.0))
        ref = _parallel_body(edges, rho)
        steiner = max(steiner, abs(steiner_volume(HyperBox(edges), rho) - ref) / ref)
    for _ in range(200):
        d = int(rng.integers(1, 9))
        box = HyperBox(rng.uniform(0.1, 5.0, d))
        v, w = intrinsic_volumes(box), quermassintegrals(box)
        for m in range(d + 1):
            rhs = ball_volume(m) * v[d - m]
            binom = max(binom, abs(math.comb(d, m) * w[m] - rhs) / rhs)
        ref = ball_volume(d - 1) * math.fsum(box.edges) / d
        w_box = max(w_box, abs(w[d - 1] - ref) / ref)
    for _ in range(200):
        a = rng.uniform(0.01, 10.0, 3)
        breadth = max(breadth, abs(mean_breadth(HyperBox(a)) - a.sum() / 2) / (a.sum() / 2))
    ok = steiner <= 1e-12 and binom <= 1e-13 and w_box <= 1e-13 and breadth <= 1e-13
    return ok, (
        f"Steiner vs decomposition {steiner:.1e} (<=1e-12); C(d,m)W_m vs omega_m V_(d-m) {binom:.1e}; "
        f"W_(d-1) box form {w_box:.1e}; mean breadth {breadth:.1e} (<=1e-13)"
    )


def criterion_8():
    m = SpectralModel(HyperBox((1.0, 1.0)), 0.5)
    e = 50 * math.pi
    count = counting_function(m, e)
    ratio = count / weyl_prediction(m, e)
    failures = []
    for edges in BOXES:
        for s in (0.5, 0.75, 1.0):
            mod = SpectralModel(HyperBox(edges), s)
            # d = 1 counts are a sawtooth in E; a Weyl phase of 0.7 keeps the
            # E vs 4E comparison off the sawtooth's symmetric points
            n0 = 10000.7 if len(edges) == 1 else 2.0e4
            e0 = (n0 / weyl_prediction(mod, 1.0)) ** (2 * s / len(edges))
            r1 = counting_function(mod, e0) / weyl_prediction(mod, e0)
            r2 = counting_function(mod, 4 * e0) / weyl_prediction(mod, 4 * e0)
            if not abs(r2 - 1) < abs(r1 - 1):
                failures.append(f"d={len(edges)} s={s}")
    ok = count == 1225 and 0.95 <= ratio <= 1.0 and not failures
    detail = f"count {count} (==1225); ratio {ratio:.4f} in [0.95,1]; |ratio-1| shrinks E->4E in {9 - len(failures)}/9 cases"
    return ok, detail


def criterion_9():
    kern = 0.0
    for t in (0.1, 1.0, 10.0):
        for x in np.linspace(-10.0, 10.0, 201):
            c = t / (math.pi * (x * x + t * t))
            g = math.exp(-x * x / (4 * t)) / math.sqrt(4 * math.pi * t)
            kern = max(kern, abs(free_density(0.5, t, x) - c), abs(free_density(1.0, t, x) - g))
    origin = 0.0
    for s in S_VALUES:
        for t in (0.01, 0.1, 1.0, 10.0):
            ref = gamma(1 + 1 / (2 * s)) * t ** (-1 / (2 * s)) / math.pi
            origin = max(origin, abs(free_density(s, t, 0.0) - ref) / ref)
    ok = kern <= 1e-9 and origin <= 1e-10
    return ok, f"kernel abs err {kern:.2e} (<=1e-9); p(0,t) rel err {origin:.2e} (<=1e-10)"


def criterion_10():
    worst = 0.0
    for edges in ((1.0, 1.0), (1.0, 2.0)):
        box = HyperBox(edges)
        for t in (1e-2, 1e-1, 1.0):
            ref = trace_theta_s1(box, t)
            worst = max(worst, abs(images_2d_gaussian_trace(box, t) - ref) / ref)
    return worst <= 1e-9, f"max rel diff {worst:.2e} (<=1e-9)"


CRITERIA = {
    1: criterion_1,
    2: criterion_2,
    3: criterion_3,
    4: criterion_4,
    5: criterion_5,
    6: criterion_6,
    7: criterion_7,
    8: criterion_8,
    9: criterion_9,
    10: criterion_10,
}


@pytest.mark.parametrize("n", sorted(CRITERIA))
def test_criterion(n, capsys):
    ok, detail = CRITERIA[n]()
    _report(n, ok, detail, capsys)
    assert ok, detail


if __name__ == "__main__":
    all_ok = True
    for n in sorted(CRITERIA):
        ok, detail = CRITERIA[n]()
        _report(n, ok, detail)
        all_ok &= ok
    sys.exit(0 if all_ok else 1)
