"""Counting eigenvalues against the Weyl law.

The number of eigenvalues below E grows like a power of E whose prefactor
is fixed by the leading heat-trace coefficient.  The ratio count/prediction
drifts to one; in two and three dimensions the lattice-point fluctuations
shrink steadily, in one dimension the count is a sawtooth around the law.
"""
import math

from boxtrace import (HyperBox, SpectralModel, counting_function,
                      enumerate_spectrum, weyl_prediction)

model = SpectralModel(HyperBox((1.0, 1.0)), 0.5)
print("lowest levels of the unit square at s = 1/2:")
for value, index in enumerate_spectrum(model, 3.2 * math.pi)[:6]:
    print(f"  {value:9.5f}  {index}")

e = 50 * math.pi
n = counting_function(model, e)
print(f"\nN(50 pi) = {n}, Weyl {weyl_prediction(model, e):.1f}")

for edges in ((1.0, 2.0), (1.0, 2.0, 3.0)):
    for s in (0.5, 0.75, 1.0):
        model = SpectralModel(HyperBox(edges), s)
        e0 = (1e4 / weyl_prediction(model, 1.0)) ** (2 * s / model.d)
        ratios = [counting_function(model, k * e0) / weyl_prediction(model, k * e0)
                  for k in (1, 4, 16)]
        print(f"d={model.d} s={s}: " + "  ".join(f"{r:.5f}" for r in ratios))
