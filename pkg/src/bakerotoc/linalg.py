"""
Dense complex linear algebra used by the propagators and their truncations.

Matrices are plain ``numpy.ndarray`` objects of dtype complex128.
"""

from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

__all__ = [
    "ConvergenceError",
    "ProjectorRange",
    "as_complex_matrix",
    "dft_shifted",
    "matmul",
    "matrix_power",
    "truncate",
    "singular_values_squared",
    "complex_eigenvalues",
    "frobenius_norm_sq",
    "unitarity_error",
    "parity_operator",
]


class ConvergenceError(np.linalg.LinAlgError):
    """Raised when an iterative eigenvalue computation fails to converge."""


@dataclass(frozen=True)
class ProjectorRange:
    """Contiguous index range [j_min, j_max] (inclusive) of a position projector."""

    j_min: int
    j_max: int

    def __post_init__(self):
        if self.j_min < 0 or self.j_max < self.j_min:
            raise ValueError(f"invalid projector range [{self.j_min}, {self.j_max}]")

    @property
    def J(self):
        return self.j_max - self.j_min + 1

    @classmethod
    def left_half(cls, n):
        """The L partition [0, N/2 - 1]."""
        return cls(0, n // 2 - 1)

    def check(self, n):
        if self.j_max > n - 1:
            raise ValueError(f"projector range [{self.j_min}, {self.j_max}] exceeds dimension {n}")

    def indices(self):
        return np.arange(self.j_min, self.j_max + 1)

    def complement(self, n):
        """Indices of the complementary range, [0, j_min-1] U [j_max+1, N-1]."""
        self.check(n)
        return np.r_[0 : self.j_min, self.j_max + 1 : n]

    def mask(self, n):
        self.check(n)
        m = np.zeros(n, dtype=bool)
        m[self.j_min : self.j_max + 1] = True
        return m


def _finite(m):
    if not np.all(np.isfinite(m)):
        raise FloatingPointError("matrix has non-finite entries")
    return m


def as_complex_matrix(a):
    m = np.asarray(a, dtype=np.complex128)
    if m.ndim != 2:
        raise ValueError(f"expected a 2-d matrix, got shape {m.shape}")
    return _finite(m)


@lru_cache(maxsize=32)
def _dft_cached(n):
    odd = 2 * np.arange(n) + 1
    # (2m+1)(2k+1) reduced mod 4n keeps the phase argument exact and small
    phase = np.mod(np.outer(odd, odd), 4 * n) / (4 * n)
    g = np.exp(-2j * np.pi * phase) / np.sqrt(n)
    g.flags.writeable = False
    return g


def dft_shifted(n):
    """Half-integer shifted DFT, G[m, k] = exp(-2 pi i (m+1/2)(k+1/2) / n) / sqrt(n).

    The 1/2 shifts make G commute with the parity flip |k> -> |n-1-k>.
    Returned arrays are cached and read-only.
    """
    n = int(n)
    if n < 2:
        raise ValueError(f"DFT dimension must be >= 2, got {n}")
    return _dft_cached(n)


def matmul(a, b):
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"dimension mismatch: {a.shape} @ {b.shape}")
    return _finite(a @ b)


def matrix_power(u, t):
    """u**t by repeated left multiplication (t multiplications)."""
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"matrix_power needs a square matrix, got shape {u.shape}")
    t = int(t)
    if t < 0:
        raise ValueError("negative powers are not supported")
    out = np.eye(u.shape[0], dtype=np.complex128)
    for _ in range(t):
        out = u @ out
    return _finite(out)


def truncate(u, rng):
    """The J x J block of ``u`` with rows and columns in the projector range."""
    if u.ndim != 2 or u.shape[0] != u.shape[1]:
        raise ValueError(f"truncate needs a square matrix, got shape {u.shape}")
    rng.check(u.shape[0])
    s = slice(rng.j_min, rng.j_max + 1)
    return u[s, s].copy()


def singular_values_squared(m):
    """Eigenvalues of m^dagger m, sorted descending.

    Round-off negatives are clipped to zero.
    """
    if m.ndim != 2 or m.size == 0:
        raise ValueError(f"expected a non-empty 2-d matrix, got shape {m.shape}")
    mu = scipy.linalg.eigvalsh(m.conj().T @ m)
    mu = np.clip(mu, 0.0, None)
    return mu[np.argsort(-mu, kind="stable")]


def complex_eigenvalues(m):
    """Eigenvalues of a general (non-normal) square matrix.

    LAPACK reduces to Hessenberg form and runs the shifted QR iteration;
    a failure to converge raises ``ConvergenceError``.
    """
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ValueError(f"eigenvalues need a square matrix, got shape {m.shape}")
    try:
        lam = scipy.linalg.eigvals(_finite(m), check_finite=False)
    except np.linalg.LinAlgError as exc:
        raise ConvergenceError(f"QR iteration failed for {m.shape[0]}x{m.shape[0]} matrix: {exc}") from exc
    if not np.all(np.isfinite(lam)):
        raise ConvergenceError("eigenvalue computation produced non-finite values")
    return lam


def frobenius_norm_sq(m):
    return float(np.vdot(m, m).real)


def unitarity_error(u):
    """max |(u^dagger u - I)_ij|"""
    n = u.shape[1]
    return float(np.max(np.abs(u.conj().T @ u - np.eye(n))))


def parity_operator(n):
    """Anti-diagonal flip R|k> = |n-1-k>."""
    return np.eye(n, dtype=np.complex128)[::-1].copy()
