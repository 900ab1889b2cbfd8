"""The trace from the free stable kernel and its mirror images.

Placing alternating-sign copies of the free kernel at the reflections of the
source point gives a kernel that vanishes at both ends of the interval.
Integrating its diagonal splits the trace into a bulk term lambda a, a
shift term tending to g(s) = (1 - s)/2, image pairs that die out as t -> 0,
and a reflected piece tending to 1/2.  Together: lambda a - s/2.

In two dimensions with Gaussian kernels the same construction on the
rectangle reproduces the theta-function trace.
"""
from boxtrace import (HyperBox, image_trace, images_2d_gaussian_trace,
                      trace_theta_s1, weyl_scale)

for s in (0.5, 0.75, 1.0):
    print(f"s = {s}:  t       shift      image pairs  reflected  Z - lambda a")
    for t in (1e-1, 1e-2, 1e-3):
        rep = image_trace(1.0, s, t)
        print(f"        {t:<7.0e} {rep.shift:<10.6f} {rep.image_pairs:<12.3e} "
              f"{rep.reflected:<10.6f} {rep.value - weyl_scale(s, t):.6f}")
    print(f"        limit   {(1 - s) / 2:<10.6f} {0.0:<12.3e} {0.5:<10.6f} {-s / 2:.6f}\n")

box = HyperBox((1.0, 2.0))
print("rectangle (1, 2), s = 1")
for t in (1e-2, 1e-1, 1.0):
    z_img = images_2d_gaussian_trace(box, t)
    z_theta = trace_theta_s1(box, t)
    print(f"t = {t:<5}  images {z_img:.15g}  theta {z_theta:.15g}  "
          f"rel.diff {abs(z_img - z_theta) / z_theta:.1e}")
