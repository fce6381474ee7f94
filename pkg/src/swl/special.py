"""Special functions and quadrature rules.

Laguerre polynomials are carried in log-scaled form so that products like
L_n^{(alpha)}(2Mx) * x^{M-N+1/2} * exp(-Mx) survive alpha up to ~80 and
arguments up to a few hundred without overflow.  The Airy function family is
backed by scipy's machine-accurate evaluator; the tail integral
B(xi) = int_xi^inf Ai(t) dt is built from exact panel quadrature.  Both
Gauss-Legendre grids and the rational map onto a half line [T, inf) live
here because every other module discretizes integrals with them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from numpy.polynomial.legendre import leggauss
from scipy.special import airy as _airy

from .errors import DomainError, SizeError

__all__ = [
    "LogScaled",
    "QuadratureGrid",
    "laguerre",
    "laguerre_deriv",
    "laguerre_table",
    "airy_ai",
    "airy_ai_prime",
    "airy_tail",
    "airy_s1",
    "gauss_legendre",
    "half_line_grid",
]


# ---------------------------------------------------------------------------
# log-scaled arithmetic
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class LogScaled:
    """A real number stored as sign * exp(logmag); sign == 0 iff the value is 0."""

    sign: int
    logmag: float

    @classmethod
    def from_float(cls, x: float) -> "LogScaled":
        if x == 0.0:
            return cls(0, -math.inf)
        return cls(1 if x > 0 else -1, math.log(abs(x)))

    @property
    def value(self) -> float:
        if self.sign == 0:
            return 0.0
        return self.sign * math.exp(self.logmag)


def signed_log(x):
    """Split an array into (sign, log|x|) with log 0 = -inf."""
    x = np.asarray(x, dtype=float)
    sign = np.sign(x)
    with np.errstate(divide="ignore"):
        logmag = np.where(sign != 0.0, np.log(np.abs(np.where(sign != 0.0, x, 1.0))), -np.inf)
    return sign, logmag


def signed_exp(sign, logmag):
    """Inverse of signed_log; underflows to 0, may overflow to +/-inf."""
    with np.errstate(over="ignore"):
        return np.asarray(sign) * np.exp(np.asarray(logmag))


def signed_sum_pair(s1, l1, s2, l2):
    """s1*exp(l1) + s2*exp(l2) kept in (sign, log) form."""
    s1 = np.asarray(s1, dtype=float)
    s2 = np.asarray(s2, dtype=float)
    l1 = np.asarray(l1, dtype=float)
    l2 = np.asarray(l2, dtype=float)
    m = np.maximum(l1, l2)
    m = np.where(np.isfinite(m), m, np.where(m == np.inf, np.inf, 0.0))
    v = s1 * np.exp(l1 - m) + s2 * np.exp(l2 - m)
    sign = np.sign(v)
    with np.errstate(divide="ignore"):
        logmag = np.where(sign != 0.0, m + np.log(np.abs(np.where(sign != 0.0, v, 1.0))), -np.inf)
    return sign, logmag


# ---------------------------------------------------------------------------
# Laguerre polynomials
# ---------------------------------------------------------------------------

def laguerre_table(nmax: int, alpha: float, x) -> tuple[np.ndarray, np.ndarray]:
    """Values of L_n^{(alpha)}(x) for n = 0..nmax in (sign, log) form.

    Three-term recurrence with per-step renormalization; returns two arrays of
    shape (nmax+1,) + x.shape.
    """
    x = np.atleast_1d(np.asarray(x, dtype=float))
    signs = np.zeros((nmax + 1,) + x.shape)
    logs = np.full((nmax + 1,) + x.shape, -np.inf)

    f_prev = np.ones_like(x)          # L_0 / exp(scale)
    scale = np.zeros_like(x)
    signs[0], logs[0] = signed_log(f_prev)
    if nmax == 0:
        return signs, logs

    f_cur = 1.0 + alpha - x           # L_1
    s, l = signed_log(f_cur)
    signs[1], logs[1] = s, l + scale
    for n in range(2, nmax + 1):
        f_next = ((2.0 * n - 1.0 + alpha - x) * f_cur - (n - 1.0 + alpha) * f_prev) / n
        s, l = signed_log(f_next)
        signs[n], logs[n] = s, l + scale
        # renormalize so the running pair stays O(1)
        mag = np.abs(f_next)
        r = np.where(mag > 0.0, mag, 1.0)
        f_prev = f_cur / r
        f_cur = f_next / r
        scale = scale + np.log(r)
    return signs, logs


def laguerre(n: int, alpha: int, x: float) -> LogScaled:
    """Generalized Laguerre polynomial L_n^{(alpha)}(x); zero for n < 0."""
    if n < 0:
        return LogScaled(0, -math.inf)
    signs, logs = laguerre_table(n, float(alpha), np.array([float(x)]))
    return LogScaled(int(signs[n, 0]), float(logs[n, 0]))


def laguerre_deriv(n: int, alpha: int, x: float) -> LogScaled:
    """d/dx L_n^{(alpha)}(x) via the differential identity
    x L_n' = n L_n - (n + alpha) L_{n-1}; at x = 0 the series limit
    -binom(n+alpha, n-1) is returned instead.
    """
    if n <= 0:
        return LogScaled(0, -math.inf)
    if x == 0.0:
        logmag = math.lgamma(n + alpha + 1) - math.lgamma(n) - math.lgamma(alpha + 2)
        return LogScaled(-1, logmag)
    signs, logs = laguerre_table(n, float(alpha), np.array([float(x)]))
    s, l = signed_sum_pair(
        n * signs[n, 0], logs[n, 0],
        -(n + alpha) * signs[n - 1, 0], logs[n - 1, 0],
    )
    sx, lx = signed_log(np.array([x]))
    return LogScaled(int(s * sx[0]), float(l - lx[0]))


# ---------------------------------------------------------------------------
# Airy family
# ---------------------------------------------------------------------------

def airy_ai(x):
    """Ai(x) for scalar or array argument."""
    out = _airy(x)[0]
    return float(out) if np.isscalar(x) else np.asarray(out)


def airy_ai_prime(x):
    """Ai'(x) for scalar or array argument."""
    out = _airy(x)[1]
    return float(out) if np.isscalar(x) else np.asarray(out)


# Tail integrals: unit panels with 32-point Gauss-Legendre are exact to
# machine precision for Ai, which oscillates slower than ~9 rad per unit on
# the supported domain.
_TAIL_LO = -80.0
_TAIL_HI = 38.0
_TAIL_RULE = 32
_tail_cache: dict[str, np.ndarray] = {}


def _tail_tables():
    if not _tail_cache:
        edges = np.arange(_TAIL_LO, _TAIL_HI + 0.5, 1.0)
        gl_x, gl_w = leggauss(_TAIL_RULE)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1:] - edges[:-1])
        pts = mid[:, None] + half[:, None] * gl_x[None, :]
        panel = half * np.sum(gl_w[None, :] * _airy(pts)[0], axis=1)
        cum = np.zeros(edges.size)
        cum[:-1] = np.cumsum(panel[::-1])[::-1]   # cum[k] = int_{edges[k]}^{inf} Ai
        _tail_cache["edges"] = edges
        _tail_cache["cum"] = cum
        _tail_cache["gl_x"] = gl_x
        _tail_cache["gl_w"] = gl_w
    return _tail_cache


def airy_tail(xi):
    """B(xi) = int_xi^inf Ai(t) dt, absolute error well below 1e-10."""
    scalar = np.isscalar(xi)
    xi = np.atleast_1d(np.asarray(xi, dtype=float))
    if np.any(xi < _TAIL_LO):
        raise DomainError(f"airy_tail supports arguments >= {_TAIL_LO}")
    tab = _tail_tables()
    edges, cum = tab["edges"], tab["cum"]
    out = np.zeros_like(xi)
    inside = xi < _TAIL_HI
    if np.any(inside):
        xin = xi[inside]
        idx = np.searchsorted(edges, xin, side="right")     # edges[idx-1] <= x < edges[idx]
        idx = np.clip(idx, 1, edges.size - 1)
        right = edges[idx]
        mid = 0.5 * (xin + right)
        half = 0.5 * (right - xin)
        pts = mid[:, None] + half[:, None] * tab["gl_x"][None, :]
        partial = half * np.sum(tab["gl_w"][None, :] * _airy(pts)[0], axis=1)
        out[inside] = partial + cum[idx]
    return float(out[0]) if scalar else out


def airy_s1(xi):
    """s1(xi) = 1 - int_xi^inf Ai(t) dt, the shifted-kernel profile function."""
    return 1.0 - airy_tail(xi)


# ---------------------------------------------------------------------------
# quadrature grids
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class QuadratureGrid:
    """Nodes and positive weights on either [-1, 1] or a mapped half line."""

    nodes: np.ndarray
    weights: np.ndarray
    domain: str

    def __post_init__(self):
        if np.any(self.weights <= 0.0):
            raise SizeError("quadrature weights must be positive")
        if np.any(np.diff(self.nodes) <= 0.0):
            raise SizeError("quadrature nodes must be strictly increasing")


def gauss_legendre(m: int) -> QuadratureGrid:
    """Gauss-Legendre rule with m nodes on [-1, 1]."""
    if not (2 <= m <= 512):
        raise SizeError(f"node count {m} outside supported range [2, 512]")
    x, w = leggauss(m)
    return QuadratureGrid(nodes=x, weights=w, domain="[-1, 1]")


def half_line_grid(T: float, m: int, L: float = 10.0) -> QuadratureGrid:
    """Rational-map rule on [T, inf): x = T + L*u/(1-u) with u Gauss-Legendre on (0, 1)."""
    if L <= 0.0:
        raise SizeError("map scale L must be positive")
    base = gauss_legendre(m)
    u = 0.5 * (base.nodes + 1.0)
    wu = 0.5 * base.weights
    x = T + L * u / (1.0 - u)
    w = wu * L / (1.0 - u) ** 2
    return QuadratureGrid(nodes=x, weights=w, domain=f"[{T}, inf) via L={L}")
