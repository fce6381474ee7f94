"""Quaternion arithmetic, embedded quaternionic matrices, and spiked Gaussian sampling.

Quaternion matrices are stored exclusively through the standard 2x2 complex
block embedding so that a single dense complex eigensolver serves all
spectral work.  Eigenvalues of an embedded quaternionic Hermitian matrix come
in Kramers pairs; one representative per pair is reported.

Sampling is counter-based: every Gaussian component is derived from
(seed, trial, row, column, component) through a Philox stream keyed by
(seed, trial) and a fixed counter layout, so results are bit-for-bit
reproducible under any parallel schedule.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.special import ndtri

from .errors import NotHermitian, PairMismatch

__all__ = [
    "Quaternion",
    "QuaternionMatrix",
    "SpikedParams",
    "RngStream",
    "quat_mul",
    "hermitian_eigenvalues",
    "sample_data_matrix",
    "sample_matrix",
]


# ---------------------------------------------------------------------------
# scalar quaternions
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Quaternion:
    """q = w + x i + y j + z k with real components."""

    w: float = 0.0
    x: float = 0.0
    y: float = 0.0
    z: float = 0.0

    def __mul__(self, other: "Quaternion") -> "Quaternion":
        return quat_mul(self, other)

    def conjugate(self) -> "Quaternion":
        return Quaternion(self.w, -self.x, -self.y, -self.z)

    def norm_sq(self) -> float:
        return self.w ** 2 + self.x ** 2 + self.y ** 2 + self.z ** 2

    def embed(self) -> np.ndarray:
        """2x2 complex embedding [[w+xi, y+zi], [-y+zi, w-xi]]."""
        return np.array(
            [
                [self.w + 1j * self.x, self.y + 1j * self.z],
                [-self.y + 1j * self.z, self.w - 1j * self.x],
            ]
        )


def quat_mul(p: Quaternion, q: Quaternion) -> Quaternion:
    """Hamilton product pq."""
    return Quaternion(
        p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
        p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
        p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
        p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
    )


# ---------------------------------------------------------------------------
# embedded quaternion matrices
# ---------------------------------------------------------------------------

def _embed_components(W, X, Y, Z) -> np.ndarray:
    n, m = W.shape
    E = np.empty((2 * n, 2 * m), dtype=np.complex128)
    E[0::2, 0::2] = W + 1j * X
    E[0::2, 1::2] = Y + 1j * Z
    E[1::2, 0::2] = -Y + 1j * Z
    E[1::2, 1::2] = W - 1j * X
    return E


@dataclass(frozen=True)
class QuaternionMatrix:
    """N x M quaternion matrix held as its 2N x 2M complex embedding."""

    data: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.data.ndim != 2 or self.data.shape[0] % 2 or self.data.shape[1] % 2:
            raise ValueError("embedding must be a 2N x 2M complex array")

    @property
    def rows(self) -> int:
        return self.data.shape[0] // 2

    @property
    def cols(self) -> int:
        return self.data.shape[1] // 2

    @classmethod
    def from_components(cls, W, X, Y, Z) -> "QuaternionMatrix":
        """Build from the four real component arrays, each N x M."""
        W, X, Y, Z = (np.asarray(a, dtype=float) for a in (W, X, Y, Z))
        return cls(_embed_components(W, X, Y, Z))

    @classmethod
    def from_real_diag(cls, values) -> "QuaternionMatrix":
        values = np.asarray(values, dtype=float)
        n = values.size
        W = np.zeros((n, n))
        np.fill_diagonal(W, values)
        Z = np.zeros_like(W)
        return cls.from_components(W, Z, Z, Z)

    def embedding_defect(self) -> float:
        """Max deviation of the 2x2 blocks from the quaternionic pattern."""
        a = self.data[0::2, 0::2]
        b = self.data[0::2, 1::2]
        c = self.data[1::2, 0::2]
        d = self.data[1::2, 1::2]
        return max(np.max(np.abs(d - a.conj())), np.max(np.abs(c + b.conj())))

    def conj_transpose(self) -> "QuaternionMatrix":
        return QuaternionMatrix(self.data.conj().T.copy())

    def __matmul__(self, other: "QuaternionMatrix") -> "QuaternionMatrix":
        return QuaternionMatrix(self.data @ other.data)

    def norm_sq_entries(self) -> np.ndarray:
        """|q_ij|^2 for every quaternion entry (N x M real array)."""
        a = self.data[0::2, 0::2]
        b = self.data[0::2, 1::2]
        return np.abs(a) ** 2 + np.abs(b) ** 2


# ---------------------------------------------------------------------------
# ensemble parameters
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class SpikedParams:
    """Sample count M, dimension N, and the single spike strength a.

    Population covariance is diag(1+a, 1, ..., 1); gamma = sqrt(M/N) >= 1.
    """

    M: int
    N: int
    a: float = 0.0

    def __post_init__(self):
        if not (self.M >= self.N >= 1):
            raise ValueError(f"need M >= N >= 1, got M={self.M}, N={self.N}")
        if not self.a > -1.0:
            raise ValueError(f"spike strength must exceed -1, got a={self.a}")

    @property
    def gamma(self) -> float:
        return math.sqrt(self.M / self.N)

    @classmethod
    def from_gamma(cls, N: int, gamma: float, a: float = 0.0) -> "SpikedParams":
        M = gamma * gamma * N
        M_int = round(M)
        if abs(M - M_int) > 1e-9 * max(1.0, M):
            raise ValueError(f"gamma^2 * N = {M} is not an integer sample count")
        return cls(M=M_int, N=N, a=a)

    def population_eigenvalues(self) -> np.ndarray:
        l = np.ones(self.N)
        l[0] = 1.0 + self.a
        return l


# ---------------------------------------------------------------------------
# counter-based sampling
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RngStream:
    """Reproducible Gaussian source keyed by (seed, trial)."""

    seed: int
    trial: int = 0

    def __post_init__(self):
        if not (0 <= self.seed < 2 ** 64 and 0 <= self.trial < 2 ** 64):
            raise ValueError("seed and trial must fit in 64 bits")

    def normals(self, count: int) -> np.ndarray:
        """count standard normals; entry k always consumes raw counter slot k."""
        bg = np.random.Philox(key=np.array([self.seed, self.trial], dtype=np.uint64))
        raw = bg.random_raw(count)
        u = (raw >> np.uint64(11)) * 2.0 ** -53 + 2.0 ** -54
        return ndtri(u)


def sample_data_matrix(params: SpikedParams, stream: RngStream) -> QuaternionMatrix:
    """Draw the N x M quaternionic data matrix X.

    Entry (i, m) has four independent N(0, l_i/4) components with l_1 = 1+a
    and l_i = 1 otherwise, so E|x_im|^2 = l_i.  Component layout per entry:
    counter slot ((i*M + m)*4 + c) for c in (w, x, y, z).
    """
    N, M = params.N, params.M
    g = stream.normals(N * M * 4).reshape(N, M, 4)
    g *= 0.5  # component variance 1/4
    g[0] *= math.sqrt(1.0 + params.a)
    return QuaternionMatrix.from_components(g[..., 0], g[..., 1], g[..., 2], g[..., 3])


def sample_matrix(params: SpikedParams, stream: RngStream) -> QuaternionMatrix:
    """Sample covariance S = (1/M) X X*; quaternionic Hermitian PSD."""
    X = sample_data_matrix(params, stream)
    S = X.data @ X.data.conj().T / params.M
    return QuaternionMatrix(S)


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def hermitian_eigenvalues(S: QuaternionMatrix, tol: float | None = None) -> np.ndarray:
    """Ascending eigenvalues of a quaternionic Hermitian matrix, one per Kramers pair.

    The 2N embedding eigenvalues must pair up within tol * max(1, spectral
    radius); deduplication takes indices 0, 2, 4, ... of the ascending list.
    """
    A = S.data
    if A.shape[0] != A.shape[1]:
        raise NotHermitian("matrix must be square")
    herm_defect = float(np.max(np.abs(A - A.conj().T))) if A.size else 0.0
    ev = np.linalg.eigvalsh(A)
    scale = max(1.0, float(np.max(np.abs(ev))) if ev.size else 0.0)
    eff_tol = (1e-8 if tol is None else tol) * scale
    if herm_defect > eff_tol:
        raise NotHermitian(f"embedding asymmetry {herm_defect:.3e} exceeds {eff_tol:.3e}")
    gaps = np.abs(ev[1::2] - ev[0::2])
    if np.any(gaps > eff_tol):
        raise PairMismatch(f"Kramers pairing violated: max gap {gaps.max():.3e}")
    return ev[0::2]
