"""Independent long-orbit Lyapunov value for the strong-coupling plateau.

Computes (1/n) log ||M_n(x, 0)|| for the almost Mathieu potential at
lam = 5 with the golden rotation, by a plain transfer-matrix loop with
periodic renormalization.  Deliberately does not import qplab: the
result pins the plateau fixture from first principles.

Regenerate the fixture with

    python3 tests/oracles/plateau_oracle.py > tests/oracles/plateau_lambda5.json
"""

import json
import math

import numpy as np

LAM = 5.0
E = 0.0
OMEGA = (math.sqrt(5.0) - 1.0) / 2.0
N = 1_000_000
PHASES = (0.17, 0.41, 0.83)


def log_norm_rate(x0: float, n: int) -> float:
    ks = np.arange(1, n + 1, dtype=float)
    v = LAM * np.cos(2.0 * np.pi * ((x0 + ks * OMEGA) % 1.0))
    a, b, c, d = 1.0, 0.0, 0.0, 1.0      # running 2x2 product
    acc = 0.0
    for k in range(n):
        t = v[k] - E
        a, b, c, d = t * a - c, t * b - d, a, b
        if k % 64 == 63:
            s = abs(a) + abs(b) + abs(c) + abs(d)
            a, b, c, d = a / s, b / s, c / s, d / s
            acc += math.log(s)
    fro = math.sqrt(a * a + b * b + c * c + d * d)
    det = abs(a * d - b * c)
    gap = max(fro ** 4 - 4.0 * det * det, 0.0)
    op = math.sqrt(0.5 * (fro * fro + math.sqrt(gap)))
    return (acc + math.log(op)) / n


def main():
    rates = {str(x): log_norm_rate(x, N) for x in PHASES}
    mean = sum(rates.values()) / len(rates)
    print(json.dumps({
        "lam": LAM,
        "E": E,
        "omega": "golden",
        "n": N,
        "rates": rates,
        "mean_rate": mean,
        "log_half_coupling": math.log(LAM / 2.0),
    }, indent=2))


if __name__ == "__main__":
    main()
