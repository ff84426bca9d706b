"""
Commutator growth f(t) = f2(t) - f4(t) for position projectors.

With P the projector onto the range J and U~ = P U^t P the J x J truncation,

    f2 = ||U~||^2,  f4 = ||U~^dagger U~||^2,  f = sum_i mu_i (1 - mu_i)

where mu_i are the squared singular values of U~.  The direct trace and
cross-block formulas are kept as independent checks of the truncation route.
"""

from dataclasses import dataclass, field

import numpy as np

from .linalg import ProjectorRange, frobenius_norm_sq, singular_values_squared, truncate
from .quantum import BakerConfig, build_baker, build_semiquantum

__all__ = [
    "ProjectorRange",
    "OtocRecord",
    "OtocSeries",
    "f2_of_truncation",
    "f4_of_truncation",
    "f_commutator",
    "f_cross_block",
    "f2_direct_trace",
    "f4_direct_trace",
    "evolved_projector",
    "otoc_series",
    "f_general_observable",
]

MODES = ("quantum", "semiquantum")
MAX_QUANTUM_STEPS = 1000


def _check(u_t, rng):
    if u_t.ndim != 2 or u_t.shape[0] != u_t.shape[1]:
        raise ValueError(f"propagator must be square, got shape {u_t.shape}")
    rng.check(u_t.shape[0])


def f2_of_truncation(u_t, rng):
    _check(u_t, rng)
    return frobenius_norm_sq(truncate(u_t, rng))


def f4_of_truncation(u_t, rng):
    _check(u_t, rng)
    mu = singular_values_squared(truncate(u_t, rng))
    return float(np.sum(mu**2))


def f_commutator(u_t, rng):
    """f(t) from the squared singular values of the truncation."""
    _check(u_t, rng)
    mu = singular_values_squared(truncate(u_t, rng))
    return float(np.sum(mu * (1.0 - mu)))


def evolved_projector(u_t, rng):
    """P(t) = U^-t P(0) U^t as a dense N x N matrix."""
    _check(u_t, rng)
    rows = u_t[rng.j_min : rng.j_max + 1, :]
    return rows.conj().T @ rows


def f_cross_block(u_t, rng):
    """sum over j in J, j' outside J of |<j|P(t)|j'>|^2."""
    pt = evolved_projector(u_t, rng)
    inside = rng.indices()
    outside = rng.complement(u_t.shape[0])
    block = pt[np.ix_(inside, outside)]
    return frobenius_norm_sq(block)


def _projector(n, rng):
    return np.diag(rng.mask(n).astype(np.complex128))


def f2_direct_trace(u_t, rng):
    """Tr(P U^dagger P U P) with full N x N operators."""
    _check(u_t, rng)
    p = _projector(u_t.shape[0], rng)
    return float(np.trace(p @ u_t.conj().T @ p @ u_t @ p).real)


def f4_direct_trace(u_t, rng):
    """Tr(P(t) P P(t) P) with full N x N operators."""
    _check(u_t, rng)
    p = _projector(u_t.shape[0], rng)
    pt = u_t.conj().T @ p @ u_t
    return float(np.trace(pt @ p @ pt @ p).real)


@dataclass
class OtocRecord:
    t: int
    f2: float
    f4: float
    f: float
    mu: np.ndarray


@dataclass
class OtocSeries:
    N: int
    range: ProjectorRange
    mode: str
    records: list = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)

    @property
    def t(self):
        return np.array([r.t for r in self.records])

    @property
    def f(self):
        return np.array([r.f for r in self.records])

    @property
    def f2(self):
        return np.array([r.f2 for r in self.records])

    @property
    def f4(self):
        return np.array([r.f4 for r in self.records])


def _record(t, u_t, rng):
    mu = singular_values_squared(truncate(u_t, rng))
    f2 = float(np.sum(mu))
    f4 = float(np.sum(mu**2))
    f = float(np.sum(mu * (1.0 - mu)))
    if mu[0] > 1.0 + 1e-10:
        raise FloatingPointError(f"t={t}: squared singular value {mu[0]} exceeds 1")
    if abs(f - (f2 - f4)) > 1e-9 * max(f2, 1.0):
        raise FloatingPointError(f"t={t}: f={f} disagrees with f2 - f4 = {f2 - f4}")
    return OtocRecord(t, f2, f4, f, mu)


def otoc_series(n, t_max, rng, mode="quantum", propagator=None):
    """f2, f4, f for t = 0..t_max.

    Quantum mode accumulates U^(t+1) = U U^t, one multiplication per step.
    Semiquantum mode builds each B_t afresh and needs t_max <= T.
    ``propagator`` replaces the baker map in quantum mode.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}, got {mode!r}")
    t_max = int(t_max)
    if t_max < 0:
        raise ValueError("t_max must be nonnegative")
    n = int(n)
    rng.check(n)
    series = OtocSeries(n, rng, mode)
    if mode == "semiquantum":
        cfg = BakerConfig.from_dimension(n)
        if t_max > cfg.T:
            raise ValueError(f"semiquantum series needs t_max <= T={cfg.T} for N={n}")
        for t in range(t_max + 1):
            series.records.append(_record(t, build_semiquantum(n, t), rng))
        return series

    if t_max > MAX_QUANTUM_STEPS:
        raise ValueError(f"quantum series limited to t_max <= {MAX_QUANTUM_STEPS}")
    u = build_baker(n) if propagator is None else propagator
    if u.shape != (n, n):
        raise ValueError(f"propagator shape {u.shape} does not match N={n}")
    power = np.eye(n, dtype=np.complex128)
    series.records.append(_record(0, power, rng))
    for t in range(1, t_max + 1):
        power = u @ power
        series.records.append(_record(t, power, rng))
    return series


def f_general_observable(u, a, t_max):
    """-(1/2) Tr([A(t), A(0)]^2) for t = 0..t_max with A(t) = U^-t A U^t.

    The commutator C of two Hermitian operators is anti-Hermitian, so the
    value equals ||C||_F^2 / 2.
    """
    a = np.asarray(a, dtype=np.complex128)
    if a.shape != u.shape:
        raise ValueError(f"observable shape {a.shape} does not match propagator {u.shape}")
    if np.max(np.abs(a - a.conj().T)) > 1e-12:
        raise ValueError("observable is not Hermitian")
    out = np.zeros(int(t_max) + 1)
    power = np.eye(u.shape[0], dtype=np.complex128)
    for t in range(1, int(t_max) + 1):
        power = u @ power
        at = power.conj().T @ a @ power
        c = at @ a - a @ at
        out[t] = 0.5 * frobenius_norm_sq(c)
    return out
