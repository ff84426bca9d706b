"""
Quantum and semiquantum baker propagators in the position basis.

B   = G_N^dagger . diag(G_{N/2}, G_{N/2})
B_t = G_N^dagger . (I_t kron G_{N/2^t})

where I_t is the 2^t x 2^t permutation with ones at (nu, bit_reverse(nu)).
B_t quantizes the t-fold classical map directly and is only defined while
2^t divides N.
"""

from dataclasses import dataclass

import numpy as np

from .classical import bit_reverse, bit_reverse_all
from .linalg import _dft_cached, dft_shifted

MAX_SWAP_BITS = 20


def two_adic_valuation(n):
    n = int(n)
    if n <= 0:
        raise ValueError(f"expected a positive integer, got {n}")
    return (n & -n).bit_length() - 1


def ehrenfest_time(n):
    """Log-time log2 N beyond which the semiquantum picture breaks down."""
    return float(np.log2(n))


@dataclass(frozen=True)
class BakerConfig:
    """Hilbert-space dimension N = N0 * 2**T with N0 odd."""

    N: int
    N0: int
    T: int

    @classmethod
    def from_dimension(cls, n):
        n = int(n)
        if n < 2 or n % 2:
            raise ValueError(f"baker dimension must be an even integer >= 2, got {n}")
        T = two_adic_valuation(n)
        return cls(n, n >> T, T)

    @property
    def hbar(self):
        return 1.0 / self.N


def build_baker(n):
    cfg = BakerConfig.from_dimension(n)
    g_half = _dft_cached(cfg.N // 2)
    h = cfg.N // 2
    right = np.zeros((cfg.N, cfg.N), dtype=np.complex128)
    right[:h, :h] = g_half
    right[h:, h:] = g_half
    return dft_shifted(cfg.N).conj().T @ right


def build_swap_structure(t):
    """Index map nu -> nu_bar of the permutation I_t."""
    t = int(t)
    if not 1 <= t <= MAX_SWAP_BITS:
        raise ValueError(f"t must lie in [1, {MAX_SWAP_BITS}], got {t}")
    return bit_reverse_all(t)


def swap_matrix(t):
    perm = build_swap_structure(t)
    m = np.zeros((perm.size, perm.size))
    m[np.arange(perm.size), perm] = 1.0
    return m


def _check_semiquantum(n, t):
    cfg = BakerConfig.from_dimension(n)
    t = int(t)
    if t < 0:
        raise ValueError(f"time must be nonnegative, got {t}")
    if t > cfg.T:
        raise ValueError(
            f"semiquantum propagator B_{t} undefined for N={cfg.N}: 2^{t} does not divide N (T={cfg.T})"
        )
    return cfg, t


def semiquantum_mixed(n, t):
    """Momentum-position factor I_t kron G_{N/2^t}.

    Block row nu (momentum strip) holds G_{N/2^t} in block column nu_bar
    (position strip).
    """
    cfg, t = _check_semiquantum(n, t)
    if t == 0:
        return np.eye(cfg.N, dtype=np.complex128)
    block = cfg.N >> t
    # at t = T with N = 2^T the blocks are the 1x1 shifted DFT, exp(-i pi/2)
    g = _dft_cached(block)
    nu_bar = build_swap_structure(t)
    out = np.zeros((cfg.N, cfg.N), dtype=np.complex128)
    for nu, nb in enumerate(nu_bar.tolist()):
        out[nu * block : (nu + 1) * block, nb * block : (nb + 1) * block] = g
    return out


def build_semiquantum(n, t):
    """Semiquantum time-t propagator B_t (B_0 = identity, B_1 = B)."""
    cfg, t = _check_semiquantum(n, t)
    if t == 0:
        return np.eye(cfg.N, dtype=np.complex128)
    return dft_shifted(cfg.N).conj().T @ semiquantum_mixed(cfg.N, t)


def semiquantum_position_element(n, t, k, col):
    """Closed-form <k|B_t|n>, independent of the matrix-product construction.

    The column index picks its position strip nu_bar = n // (N/2^t), and nu is
    the bit reversal of nu_bar:

        (2^(t/2)/N) e^{i pi nu_bar} e^{2 pi i nu (k+1/2)/2^t}
            * sum_m exp[2 pi i (m+1/2)(k+1/2 - 2^t (n+1/2)) / N]
    """
    cfg, t = _check_semiquantum(n, t)
    if t < 1:
        raise ValueError("closed form needs t >= 1")
    N = cfg.N
    if not (0 <= k < N and 0 <= col < N):
        raise ValueError(f"indices ({k}, {col}) out of range for N={N}")
    block = N >> t
    nb = col // block
    nu = bit_reverse(nb, t)
    m = np.arange(block) + 0.5
    geo = np.sum(np.exp(2j * np.pi * m * (k + 0.5 - 2**t * (col + 0.5)) / N))
    pref = 2 ** (t / 2) / N * np.exp(1j * np.pi * nb) * np.exp(2j * np.pi * nu * (k + 0.5) / 2**t)
    return complex(pref * geo)


def semiquantum_position_matrix(n, t):
    """All entries of the closed form above, vectorized over (k, n)."""
    cfg, t = _check_semiquantum(n, t)
    if t < 1:
        raise ValueError("closed form needs t >= 1")
    N = cfg.N
    block = N >> t
    k = np.arange(N)[:, None]
    col = np.arange(N)[None, :]
    nb = col // block
    nu = build_swap_structure(t)[nb]
    x = k + 0.5 - 2**t * (col + 0.5)
    geo = np.zeros((N, N), dtype=np.complex128)
    for m in range(block):
        geo += np.exp(2j * np.pi * (m + 0.5) * x / N)
    pref = 2 ** (t / 2) / N * np.exp(1j * np.pi * nb) * np.exp(2j * np.pi * nu * (k + 0.5) / 2**t)
    return pref * geo


def semiquantum_deviation(n, t_max=None):
    """||B^t - B_t||_F / sqrt(N) for t = 1..t_max (default T)."""
    cfg = BakerConfig.from_dimension(n)
    t_max = cfg.T if t_max is None else int(t_max)
    b = build_baker(cfg.N)
    power = np.eye(cfg.N, dtype=np.complex128)
    out = []
    for t in range(1, t_max + 1):
        power = b @ power
        out.append(np.linalg.norm(power - build_semiquantum(cfg.N, t)) / np.sqrt(cfg.N))
    return np.array(out)
