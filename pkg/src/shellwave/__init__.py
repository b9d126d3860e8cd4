"""Dirac operators with delta-shell potentials on planar curves.

Boundary-integral resolvents for the shell operators, tubular-neighborhood
integral operators for their squeezed-potential approximants, and a rate
lab that measures the confinement-limit convergence envelopes.
"""

__version__ = "0.1.0"

from .algebra import (
    Coupling,
    DiracRep,
    ProfileQ,
    ScalingLaw,
    alpha_dot,
    confining_limit,
    eps_coupling,
    layer_matrix,
    make_dirac_rep,
    rescaled_coupling,
    tanc,
)
from .kernels import SpectralParam, bessel_k, green_2d, green_3d
from .geometry import PlanarCurve, TubeGrid, injectivity_bound, make_curve

__all__ = [
    "Coupling",
    "DiracRep",
    "PlanarCurve",
    "ProfileQ",
    "ScalingLaw",
    "SpectralParam",
    "TubeGrid",
    "alpha_dot",
    "bessel_k",
    "confining_limit",
    "eps_coupling",
    "green_2d",
    "green_3d",
    "injectivity_bound",
    "layer_matrix",
    "make_curve",
    "make_dirac_rep",
    "rescaled_coupling",
    "tanc",
    "__version__",
]
