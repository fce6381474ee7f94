"""Rank-1 quaternionic spiked Wishart laboratory.

Exact finite-size largest-eigenvalue distributions from skew-orthogonal
Laguerre kernels, the Tracy-Widom limit family via Fredholm determinants,
and Monte Carlo experiments tracing the soft-edge phase transition.
"""

from . import errors
from .special import (
    LogScaled,
    QuadratureGrid,
    airy_ai,
    airy_ai_prime,
    airy_s1,
    airy_tail,
    gauss_legendre,
    half_line_grid,
    laguerre,
    laguerre_deriv,
)

__all__ = [
    "errors",
    "LogScaled",
    "QuadratureGrid",
    "airy_ai",
    "airy_ai_prime",
    "airy_s1",
    "airy_tail",
    "gauss_legendre",
    "half_line_grid",
    "laguerre",
    "laguerre_deriv",
]
