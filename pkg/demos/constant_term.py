"""Where the constant -s/2 comes from.

One axis factor behaves like  lambda a - s/2  as t -> 0.  The leading term is
the integral of the summand; the constant collects the Euler-Maclaurin
boundary corrections at the first index plus the shift c = (1 - s)/2 of the
eigenvalue law.  Here the constant is measured three ways: from the direct
sum, from an order-2 Euler-Maclaurin evaluation (with a rigorous remainder
bound), and by Richardson extrapolation in t.
"""
from boxtrace import TruncationSpec, verify_em_constant

ts = [1e-2, 1e-3, 1e-4, 1e-5, 1e-6]
trunc = TruncationSpec(max_terms_per_axis=2 * 10**7)

for s in (0.5, 0.75, 1.0):
    rep = verify_em_constant(1.0, s, ts, trunc)
    print(f"s = {s}, target {rep.target}")
    print("  t        direct          Euler-Maclaurin   bound")
    for t, dc, ec, b in zip(rep.t, rep.direct_constant, rep.em_constant, rep.em_remainder_bound):
        print(f"  {t:<8.0e} {dc:<15.10f} {ec:<17.10f} {b:.1e}")
    print(f"  extrapolated {rep.limit_estimate:.12f}  (error {rep.limit_error:.1e})\n")
