"""Limiting largest-eigenvalue laws and their rescaling maps.

The soft-edge family (GUE, GUE1, GOE, GSE, GSE1) is evaluated through
Nystrom discretizations of Fredholm determinants built on the Airy kernel
K(xi, eta) = int_0^inf Ai(xi+t) Ai(eta+t) dt; the supercritical law is the
standard normal.  A Hastings-McLeod Painleve II solve provides an
independent cross-check of the resolvent identities behind the GOE law.

Every reported determinant passes an internal node-doubling test.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.special import ndtr

from .errors import ConvergenceError, DomainError, NegativeDeterminant, RegimeError
from .quaternion import SpikedParams
from .special import airy_ai, airy_ai_prime, airy_s1, airy_tail, half_line_grid

__all__ = [
    "LimitFamily",
    "RescaleMap",
    "FAMILIES",
    "airy_kernel",
    "fredholm_det_scalar",
    "fredholm_det_block",
    "limit_cdf",
    "rescale_map",
    "painleve_q",
    "painleve_tail_integral",
    "tw_identity_check",
]

FAMILIES = ("gue", "gue1", "goe", "gse", "gse1", "gaussian")

_T_GRID_NODES = 192      # inner grid for the t-integrals defining the kernel entries
_T_GRID_SCALE = 6.0
_DOUBLING_TOL = 1e-7


@lru_cache(maxsize=8)
def _t_grid(mt: int = _T_GRID_NODES):
    g = half_line_grid(0.0, mt, L=_T_GRID_SCALE)
    return g.nodes, g.weights


# ---------------------------------------------------------------------------
# Airy kernel entries
# ---------------------------------------------------------------------------

def _kernel_matrix(x, y):
    """K(x_i, y_j) = int_0^inf Ai(x_i+t) Ai(y_j+t) dt."""
    t, wt = _t_grid()
    ax = airy_ai(x[:, None] + t[None, :])
    ay = airy_ai(y[:, None] + t[None, :])
    return (ax * wt[None, :]) @ ay.T


def _kernel_deriv_matrix(x, y):
    """-d/d eta K(x_i, y_j) = -int_0^inf Ai(x_i+t) Ai'(y_j+t) dt."""
    t, wt = _t_grid()
    ax = airy_ai(x[:, None] + t[None, :])
    apy = airy_ai_prime(y[:, None] + t[None, :])
    return -(ax * wt[None, :]) @ apy.T


def _kernel_tail_matrix(x, y):
    """int_{x_i}^inf K(t, y_j) dt = int_0^inf B(x_i+t) Ai(y_j+t) dt."""
    t, wt = _t_grid()
    bx = airy_tail(np.minimum(x[:, None] + t[None, :], 60.0))
    ay = airy_ai(y[:, None] + t[None, :])
    return (bx * wt[None, :]) @ ay.T


def airy_kernel(xi: float, eta: float) -> float:
    """Soft-edge correlation kernel at a single point."""
    return float(_kernel_matrix(np.array([float(xi)]), np.array([float(eta)]))[0, 0])


# ---------------------------------------------------------------------------
# Fredholm determinants (Nystrom with symmetric weight folding)
# ---------------------------------------------------------------------------

def _nystrom_det(kernel_matrix, x, w):
    sw = np.sqrt(w)
    A = sw[:, None] * kernel_matrix * sw[None, :]
    sign, logabs = np.linalg.slogdet(np.eye(A.shape[0]) - A)
    return float(sign * np.exp(logabs))


def _det_scalar_once(kernel, T, m, L):
    g = half_line_grid(T, m, L)
    return _nystrom_det(kernel(g.nodes, g.nodes), g.nodes, g.weights)


def fredholm_det_scalar(kernel, T: float, m: int, L: float = 10.0) -> float:
    """det(I - K restricted to (T, inf)) for a vectorized scalar kernel.

    kernel(x, y) must accept node arrays and return the matrix K(x_i, y_j).
    The value is reported at 2m nodes after an m vs 2m stability check.
    """
    if m < 16:
        raise ConvergenceError("need at least 16 quadrature nodes")
    coarse = _det_scalar_once(kernel, T, m, L)
    fine = _det_scalar_once(kernel, T, 2 * m, L)
    if abs(fine - coarse) > _DOUBLING_TOL:
        raise ConvergenceError(
            f"scalar Fredholm determinant drifted {abs(fine - coarse):.3e} under node doubling at m={m}"
        )
    return fine


def _det_block_once(kernel4, T, m, L):
    g = half_line_grid(T, m, L)
    x, w = g.nodes, g.weights
    S, SD, IS, ST = kernel4(x, x)
    sw = np.sqrt(w)
    top = np.hstack([sw[:, None] * S * sw[None, :], sw[:, None] * SD * sw[None, :]])
    bot = np.hstack([sw[:, None] * IS * sw[None, :], sw[:, None] * ST * sw[None, :]])
    A = np.vstack([top, bot])
    sign, logabs = np.linalg.slogdet(np.eye(2 * m) - A)
    return float(sign * np.exp(logabs))


def fredholm_det_block(kernel4, T: float, m: int, L: float = 10.0) -> float:
    """det(I - P) for a 2x2 matrix kernel restricted to (T, inf).

    kernel4(x, y) returns the four blocks (S, SD, IS, ST) as matrices.
    """
    if m < 16:
        raise ConvergenceError("need at least 16 quadrature nodes")
    coarse = _det_block_once(kernel4, T, m, L)
    fine = _det_block_once(kernel4, T, 2 * m, L)
    if abs(fine - coarse) > _DOUBLING_TOL:
        raise ConvergenceError(
            f"block Fredholm determinant drifted {abs(fine - coarse):.3e} under node doubling at m={m}"
        )
    return fine


# ---------------------------------------------------------------------------
# limit families
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LimitFamily:
    """One of the limiting laws plus its evaluator settings."""

    tag: str
    m: int = 96

    def __post_init__(self):
        if self.tag not in FAMILIES:
            raise ValueError(f"unknown family {self.tag!r}; choose from {FAMILIES}")

    def cdf(self, T: float) -> float:
        return limit_cdf(self, T)


def _gue1_kernel(x, y):
    return _kernel_matrix(x, y) + airy_s1(x)[:, None] * airy_ai(y)[None, :]


def _gse_blocks(x, y):
    K = _kernel_matrix(x, y)
    KD = _kernel_deriv_matrix(x, y)
    IK = _kernel_tail_matrix(x, y)
    ai_x, ai_y = airy_ai(x), airy_ai(y)
    b_x, b_y = airy_tail(x), airy_tail(y)
    S = 0.5 * K - 0.25 * ai_x[:, None] * b_y[None, :]
    SD = 0.5 * KD - 0.25 * ai_x[:, None] * ai_y[None, :]
    IS = -0.5 * IK + 0.25 * b_x[:, None] * b_y[None, :]
    ST = 0.5 * K - 0.25 * b_x[:, None] * ai_y[None, :]
    return S, SD, IS, ST


def _gse1_blocks(x, y):
    S, SD, IS, ST = _gse_blocks(x, y)
    ai_x, ai_y = airy_ai(x), airy_ai(y)
    b_x, b_y = airy_tail(x), airy_tail(y)
    ones_x, ones_y = np.ones_like(x), np.ones_like(y)
    S = S + 0.5 * ai_x[:, None] * ones_y[None, :]
    IS = IS - 0.5 * b_x[:, None] * ones_y[None, :] + 0.5 * ones_x[:, None] * b_y[None, :]
    ST = ST + 0.5 * ones_x[:, None] * ai_y[None, :]
    return S, SD, IS, ST


def _sqrt_det(det: float) -> float:
    if det < -1e-8:
        raise NegativeDeterminant(f"block determinant {det:.3e} below the roundoff floor")
    return math.sqrt(max(det, 0.0))


@lru_cache(maxsize=100_000)
def _limit_cdf_cached(tag: str, T: float, m: int) -> float:
    if tag == "gaussian":
        return float(ndtr(T))
    if tag == "gue":
        return fredholm_det_scalar(_kernel_matrix, T, m)
    if tag == "gue1":
        return fredholm_det_scalar(_gue1_kernel, T, m)
    if tag == "goe":
        return _sqrt_det(fredholm_det_scalar(_gue1_kernel, T, m))
    if tag == "gse":
        return _sqrt_det(fredholm_det_block(_gse_blocks, T, m))
    if tag == "gse1":
        return _sqrt_det(fredholm_det_block(_gse1_blocks, T, m))
    raise ValueError(f"unknown family {tag!r}")


def limit_cdf(family: LimitFamily | str, T: float, m: int | None = None) -> float:
    """CDF of the requested limiting law at T."""
    if isinstance(family, str):
        family = LimitFamily(tag=family)
    return _limit_cdf_cached(family.tag, float(T), int(m or family.m))


# ---------------------------------------------------------------------------
# rescaling maps
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RescaleMap:
    """Affine map lambda_max -> (lambda_max - center) / scale plus regime metadata."""

    regime: str
    center: float
    scale: float
    ensemble: str

    def apply(self, values):
        return (np.asarray(values, dtype=float) - self.center) / self.scale

    def limit_family(self) -> str:
        quaternionic = self.ensemble.startswith("quaternionic")
        if self.regime == "supercritical":
            return "gaussian"
        if self.regime == "critical":
            return "gse1" if quaternionic else "gue1"
        return "gse" if quaternionic else "gue"


_CRITICAL_ATOL = 1e-12


def rescale_map(params: SpikedParams, ensemble: str, regime: str | None = None) -> RescaleMap:
    """Centering and scale of the largest eigenvalue for the given ensemble.

    Soft-edge regimes use the (1+1/gamma)^2 center with M^{2/3}-type scales
    (2M for the quaternionic ensemble, M for the complex one); the
    supercritical regime uses the detached-spike center with sqrt(M) scales.
    """
    if ensemble not in ("quaternionic", "complex"):
        raise ValueError(f"ensemble must be 'quaternionic' or 'complex', got {ensemble!r}")
    gamma, a = params.gamma, params.a
    threshold = 1.0 / gamma
    if abs(a - threshold) <= _CRITICAL_ATOL:
        auto = "critical"
    elif a < threshold:
        auto = "subcritical"
    else:
        auto = "supercritical"
    regime = regime or auto
    if regime not in ("subcritical", "critical", "supercritical"):
        raise ValueError(f"unknown regime {regime!r}")
    if regime == "supercritical" and a <= threshold:
        raise RegimeError(f"supercritical map needs a > 1/gamma, got a={a}, 1/gamma={threshold}")

    eff_m = 2.0 * params.M if ensemble == "quaternionic" else float(params.M)
    if regime == "supercritical":
        center = (a + 1.0) * (1.0 + 1.0 / (gamma * gamma * a))
        scale = (a + 1.0) * math.sqrt(1.0 - 1.0 / (gamma * a) ** 2) / math.sqrt(eff_m)
    else:
        center = (1.0 + 1.0 / gamma) ** 2
        scale = (1.0 + gamma) ** (4.0 / 3.0) / (gamma * eff_m ** (2.0 / 3.0))
    tag = ensemble + ("-white" if a == 0.0 else "")
    return RescaleMap(regime=regime, center=center, scale=scale, ensemble=tag)


# ---------------------------------------------------------------------------
# Painleve II cross-check
# ---------------------------------------------------------------------------

_HM_START = 8.0
_HM_END = -7.0


@lru_cache(maxsize=1)
def _hastings_mcleod():
    """Integrate [q, q', int_s^inf q] down from s=8 with Airy initial data."""

    def rhs(s, y):
        return (y[1], s * y[0] + 2.0 * y[0] ** 3, -y[0])

    y0 = (airy_ai(_HM_START), airy_ai_prime(_HM_START), airy_tail(_HM_START))
    sol = solve_ivp(
        rhs,
        (_HM_START, _HM_END),
        y0,
        method="DOP853",
        rtol=1e-10,
        atol=1e-13,
        dense_output=True,
    )
    if not sol.success:
        raise DomainError(f"Painleve II integration failed: {sol.message}")
    return sol


def painleve_q(s: float) -> float:
    """Hastings-McLeod Painleve II solution q(s) with q ~ Ai at +inf."""
    if not (_HM_END <= s <= _HM_START):
        raise DomainError(f"q(s) supported on [{_HM_END}, {_HM_START}], got {s}")
    return float(_hastings_mcleod().sol(s)[0])


def painleve_tail_integral(T: float) -> float:
    """int_T^inf q(s) ds along the Hastings-McLeod solution."""
    if not (_HM_END <= T <= _HM_START):
        raise DomainError(f"tail integral supported on [{_HM_END}, {_HM_START}], got {T}")
    return float(_hastings_mcleod().sol(T)[2])


def tw_identity_check(T: float, m: int = 96) -> tuple[float, float]:
    """Residuals of the two resolvent identities tying the Airy kernel to q.

    Returns (|r s1(T) - exp(-int q)|, |<r s1, Ai> - (1 - exp(-int q))|) where
    r s1 is the Airy-kernel resolvent applied to s1 on (T, inf).
    """
    if not (-6.0 <= T <= 8.0):
        raise DomainError(f"identity check supported on [-6, 8], got T={T}")
    g = half_line_grid(T, m, L=10.0)
    x, w = g.nodes, g.weights
    K = _kernel_matrix(x, x)
    f = np.linalg.solve(np.eye(m) - K * w[None, :], airy_s1(x))
    kT = _kernel_matrix(np.array([T]), x)[0]
    f_at_T = airy_s1(T) + float(np.sum(kT * w * f))
    inner = float(np.sum(w * f * airy_ai(x)))
    e = math.exp(-painleve_tail_integral(T))
    return abs(f_at_T - e), abs(inner - (1.0 - e))
