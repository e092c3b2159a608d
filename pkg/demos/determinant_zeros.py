#!/usr/bin/env python3
"""Where the Dirichlet determinants vanish in the complex phase plane.

f_N(e(x + iy)) extends the window determinant to complex phases.  Its
zeros concentrate on two rings |z| = e^(+-2 pi y*) whose height tracks
log(lam/2)/(4 pi); inside the annulus between them the zero count per
unit disk stays bounded by twice the cosine degree.  The script counts
zeros three ways (winding, Jensen sandwich, probe disks) and prints
the observed ring height.
"""

import cmath
import math

import qplab.dynamics as dy
import qplab.potential as pt
import qplab.zeros as zr

LAM = 3.0
E = 0.5
N = 32
AMO = pt.almost_mathieu(LAM)


def main():
    ystar = math.log(LAM / 2.0) / (4.0 * math.pi)
    print(f"lam = {LAM}, E = {E}, N = {N}")
    print(f"predicted ring height y* = log(lam/2)/(4 pi) = {ystar:.5f}\n")

    f = zr.determinant_handle(AMO, dy.GOLDEN_MEAN, E, N)

    total = zr.annulus_zero_count(f, y_half=0.05)
    print(f"zeros with |y| < 0.05 (winding difference): {total}")
    print(f"ceiling 2 N deg(V) = {2 * N}\n")

    stats = zr.zero_separation(AMO, dy.GOLDEN_MEAN, E, N, annulus_y=0.1,
                               n_probes=12, radius=0.1, seed=2)
    hits = [c for c in stats.counts if c > 0]
    print(f"12 probe disks of radius 0.1: per-disk counts {stats.counts}")
    print(f"occupied disks {len(hits)}, per-disk ceiling {stats.per_disk_ceiling}")
    print(f"annulus count {stats.annulus_count} <= {stats.annulus_ceiling}")
    print(f"closest zero pair seen: {stats.min_pairwise_distance:.4f}\n")

    center = cmath.exp(complex(2 * math.pi * ystar, 2 * math.pi * 0.35))
    lower, est, upper = zr.nu_sandwich(f, center, 0.12, 0.04)
    print(f"sandwich on a ring disk at x = 0.35:")
    print(f"  {lower} <= {est:.3f} <= {upper}")

    located = zr.locate_zeros(f, zr.Disk(center, 0.12))
    for z in located.zeros:
        y = math.log(abs(z)) / (2 * math.pi)
        print(f"  zero at |z| = {abs(z):.6f}  ->  y = {y:+.5f}")


if __name__ == "__main__":
    main()
