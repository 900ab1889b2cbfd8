"""Four ways to the heat trace of the interval and the square.

The trace Z(t) = sum_n exp(-t E_n) of a box factorises over the axes.  Each
factor can be summed directly, and at s = 1/2 (a geometric series) and
s = 1 (a theta function) it has a closed form.  For small t all of them
approach the product of the two-term laws  lambda a_j - s/2,  with
lambda = Gamma(1 + 1/2s) / (pi t^(1/2s)).

The table shows the routes side by side; the last column is the relative
error of the small-t expansion.
"""
import math

import numpy as np

from boxtrace import (HyperBox, SpectralModel, corner_correction,
                      expansion_coefficients, trace_asymptotic, trace_direct,
                      trace_exact_half, trace_theta_s1)

ts = np.logspace(-4, 0, 5)

print("interval a = 1, s = 1/2")
model = SpectralModel(HyperBox((1.0,)), 0.5)
print("t        direct               geometric            expansion   rel.err")
for t in ts:
    z = trace_direct(model, t)
    za = trace_asymptotic(model, t)
    print(f"{t:<8.0e} {z:<20.15g} {trace_exact_half(1.0, t):<20.15g} "
          f"{za:<11.6g} {abs(z - za) / z:.1e}")

print("\nunit square, s = 1")
model = SpectralModel(HyperBox((1.0, 1.0)), 1.0)
print("t        direct               theta                expansion   rel.err")
for t in ts:
    z = trace_direct(model, t)
    za = trace_asymptotic(model, t)
    print(f"{t:<8.0e} {z:<20.15g} {trace_theta_s1(model.box, t):<20.15g} "
          f"{za:<11.6g} {abs(z - za) / z:.1e}")

print(f"constant term {expansion_coefficients(model).coefficients[0]}"
      f" = four right-angle corners {corner_correction([math.pi / 2] * 4)}")

print("\nintermediate s on the (1, 2, 3) box")
for s in (0.6, 0.75, 0.9):
    model = SpectralModel(HyperBox((1.0, 2.0, 3.0)), s)
    errs = [abs(trace_direct(model, t) - trace_asymptotic(model, t)) / trace_direct(model, t)
            for t in (1e-1, 1e-2, 1e-3, 1e-4)]
    print(f"s={s}: " + "  ".join(f"{e:.2e}" for e in errs))
