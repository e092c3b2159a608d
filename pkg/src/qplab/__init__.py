"""qplab: a numerical laboratory for discrete 1D Schrodinger operators
with dynamically defined potentials.

The package computes transfer-matrix products, Lyapunov exponents,
integrated densities of states, large-deviation statistics, Green's
functions, and complex zero counts of Dirichlet determinants for
operators of the form

    (H_x psi)_n = -psi_{n-1} - psi_{n+1} + lambda * V(T^n x) psi_n

where T is an ergodic torus map (irrational shift, skew-shift, or
doubling) and V is a real trigonometric polynomial.
"""

__version__ = "0.1.0"

from . import cocycle, deviations, dynamics, lyapunov, potential, spectrum, zeros
from . import experiments, expcli
from .dynamics import Doubling, Shift, SkewShift
from .potential import ComplexPhase, Potential

__all__ = [
    "cocycle",
    "deviations",
    "dynamics",
    "expcli",
    "experiments",
    "lyapunov",
    "potential",
    "spectrum",
    "zeros",
    "Shift",
    "SkewShift",
    "Doubling",
    "Potential",
    "ComplexPhase",
    "__version__",
]
