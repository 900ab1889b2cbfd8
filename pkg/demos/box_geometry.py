"""Geometry of a box and its parallel bodies.

For a box with edges a_1..a_d the intrinsic volumes are the elementary
symmetric polynomials of the edges.  The volume of the set of points within
distance rho of the box is a polynomial in rho (Steiner's formula); its
coefficients can be written either with intrinsic volumes or with
quermassintegrals.  In three dimensions the polynomial can also be read off
by hand: the box, six face slabs, twelve quarter cylinders along the edges
and eight sphere octants at the corners.
"""
import math

from boxtrace import (HyperBox, geometry_report, steiner_volume,
                      steiner_volume_quermass)

box = HyperBox((1.0, 2.0, 3.0))
rep = geometry_report(box)

print("m   V_m        W_m")
for m, (v, w) in enumerate(zip(rep.intrinsic_volumes, rep.quermassintegrals)):
    print(f"{m}   {v:<9.6g}  {w:.12g}")
print(f"mean breadth {rep.mean_breadth:.15g}  (half the edge sum: {sum(box.edges) / 2})")

a1, a2, a3 = box.edges
print("\nrho   Steiner(V)         Steiner(W)         by hand")
for rho in (0.0, 0.25, 1.0, 2.0):
    by_hand = (a1 * a2 * a3
               + 2 * (a1 * a2 + a1 * a3 + a2 * a3) * rho
               + 4 * (math.pi * rho**2 / 4) * (a1 + a2 + a3)
               + 4 * math.pi * rho**3 / 3)
    print(f"{rho:<5} {steiner_volume(box, rho):<18.15g} "
          f"{steiner_volume_quermass(box, rho):<18.15g} {by_hand:.15g}")
