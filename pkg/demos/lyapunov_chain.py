#!/usr/bin/env python3
"""Finite-scale Lyapunov exponents along a doubling chain.

For the almost Mathieu potential at coupling lam >= 2 and E = 0 the
exponent is log(lam/2) exactly, which makes it a good yardstick: we
watch the finite-scale averages L_n settle onto it as n doubles, and
check that the successive differences fall under the (log n)/n rate
the convergence gate expects.
"""

import math

import qplab.dynamics as dy
import qplab.lyapunov as ly
import qplab.potential as pt

SHIFT = dy.Shift((dy.GOLDEN_MEAN,))


def scan(lam: float, n_list, m_samples: int = 1000):
    exact = math.log(lam / 2.0)
    print(f"coupling {lam}, E = 0, exact exponent log(lam/2) = {exact:.6f}")
    print(f"{'n':>6} {'L_n':>10} {'stderr':>9} {'|L_2n-L_n|':>11} "
          f"{'log(n)/n':>9} {'flag':>5}")
    rows = ly.convergence_scan(pt.almost_mathieu(lam), SHIFT, 0.0, n_list,
                               m_samples=m_samples)
    for r in rows:
        print(f"{r.n:>6} {r.mean:>10.6f} {r.stderr:>9.1e} {r.diff_2n:>11.2e} "
              f"{r.rate:>9.2e} {'*' if r.flagged else '':>5}")
    print(f"final gap to exact: {abs(rows[-1].mean - exact):.2e}")


def main():
    scan(3.0, [125, 250, 500, 1000, 2000])
    print()
    scan(5.0, [125, 250, 500, 1000, 2000])
    print()

    # two-scale extrapolation 2*L_2n - L_n from the last pair
    rows = ly.convergence_scan(pt.almost_mathieu(3.0), SHIFT, 0.0,
                               [1000, 2000], m_samples=1000)
    extrap = ly.ap_extrapolate(rows[0].mean, rows[1].mean)
    print(f"two-scale extrapolation at lam = 3: {extrap:.6f} "
          f"(exact {math.log(1.5):.6f})")


if __name__ == "__main__":
    main()
