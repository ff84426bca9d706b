"""
Classical baker's map on the unit torus and its periodic points.

The map stretches the left/right halves of the square by 2 along q and
compresses them by 1/2 along p.  In binary it is the two-sided Bernoulli
shift: q = 0.a0 a1 a2..., p = 0.a-1 a-2...  goes to q' = 0.a1 a2...,
p' = 0.a0 a-1 a-2...
"""

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

MAX_PERIOD = 30


@dataclass(frozen=True)
class PhasePoint:
    """A point (q, p) of the unit torus, both coordinates reduced into [0, 1)."""

    q: float
    p: float

    def __post_init__(self):
        object.__setattr__(self, "q", float(self.q) % 1.0)
        object.__setattr__(self, "p", float(self.p) % 1.0)


def baker_step(x):
    """One application of the baker's map, (q, p) -> (2q mod 1, (p + [2q]) / 2).

    The discontinuity at q = 1/2 belongs to the right half ([2q] = 1).
    """
    bit = np.floor(2.0 * x.q)
    return PhasePoint(2.0 * x.q - bit, (x.p + bit) / 2.0)


def baker_inverse_step(x):
    """Inverse map, (q, p) -> ((q + [2p]) / 2, 2p mod 1)."""
    bit = np.floor(2.0 * x.p)
    return PhasePoint((x.q + bit) / 2.0, 2.0 * x.p - bit)


def iterate(x, t):
    for _ in range(t):
        x = baker_step(x)
    return x


def bit_reverse(nu, t):
    """Reverse the t-bit binary string of ``nu``.

    With nu = sum a_k 2^k this returns sum a_k 2^(t-1-k).
    """
    nu = int(nu)
    t = int(t)
    if t < 1:
        raise ValueError(f"bit width must be >= 1, got {t}")
    if not 0 <= nu < 2**t:
        raise ValueError(f"nu={nu} out of range [0, {2**t - 1}] for {t} bits")
    out = 0
    for _ in range(t):
        out = (out << 1) | (nu & 1)
        nu >>= 1
    return out


def bit_reverse_all(t):
    """Bit reversal of every t-bit integer, as an array indexed by nu."""
    nu = np.arange(2**t, dtype=np.int64)
    out = np.zeros_like(nu)
    for _ in range(t):
        out = (out << 1) | (nu & 1)
        nu >>= 1
    return out


@dataclass(frozen=True, eq=False)
class PeriodicOrbitTable:
    """The 2^t period-t points (q, p) = (nu, nu_bar) / (2^t - 1).

    Both nu = 0 and nu = 2^t - 1 are kept even though they coincide on the
    torus; the semiquantum propagator needs one block per entry.
    """

    t: int
    nu: np.ndarray
    nu_bar: np.ndarray

    def __len__(self):
        return len(self.nu)

    def __iter__(self):
        """Yield (nu, nu_bar, q, p) with exact rational coordinates."""
        denom = 2**self.t - 1
        for a, b in zip(self.nu.tolist(), self.nu_bar.tolist()):
            yield a, b, Fraction(a, denom), Fraction(b, denom)

    @property
    def q(self):
        return self.nu / (2.0**self.t - 1.0)

    @property
    def p(self):
        return self.nu_bar / (2.0**self.t - 1.0)


def periodic_points(t):
    t = int(t)
    if not 1 <= t <= MAX_PERIOD:
        raise ValueError(f"period t must lie in [1, {MAX_PERIOD}], got {t}")
    nu = np.arange(2**t, dtype=np.int64)
    nu_bar = bit_reverse_all(t)
    nu.flags.writeable = False
    nu_bar.flags.writeable = False
    return PeriodicOrbitTable(t, nu, nu_bar)


def return_distance(x, t):
    """Torus distance between x and its t-th iterate."""
    y = iterate(x, t)
    dq = abs(y.q - x.q)
    dp = abs(y.p - x.p)
    return float(np.hypot(min(dq, 1.0 - dq), min(dp, 1.0 - dp)))
