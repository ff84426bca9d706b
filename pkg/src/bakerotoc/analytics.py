"""
Closed-form reference values for the baker OTOC and its random-matrix limit.

For the left-half projector the semiquantum commutator reduces to a single
sum over odd multiples l = (2k+1) 2^(t-1) of the index difference,

    f_SQ(t) = 2^t / (16 M^2) * sum_{k} (2k+1) / sin^2[pi (2k+1) / (4M)]
              + 2^(2t-3)/N * sin^2(pi N / 2^(t+1))

with M = N / 2^(t+1).  The second (l = N/2) term vanishes for t <= T-1 and
is all that is left at t = T when N is a power of two.
"""

from dataclasses import dataclass
import math

import numpy as np

from .linalg import ProjectorRange, singular_values_squared, truncate
from .quantum import BakerConfig

EULER_GAMMA = 0.57721566490153286061
LYAPUNOV_EXPONENT = math.log(2.0)
APPROX_MIN_M = 8

# B_2k / (2k) for the asymptotic digamma series, k = 1..7
_DIGAMMA_COEFFS = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
)


@dataclass(frozen=True)
class SemiquantumParams:
    """N = N0 2^T at time t, with M = N / 2^(t+1) (floored past t = T).

    M is a half-integer at t = T; past T the floored M must be >= 1.
    """

    N: int
    N0: int
    T: int
    t: int
    M: float

    @classmethod
    def from_dimension(cls, n, t):
        cfg = BakerConfig.from_dimension(n)
        t = int(t)
        if t < 1:
            raise ValueError(f"t must be >= 1, got {t}")
        if t <= cfg.T:
            m = cfg.N / 2 ** (t + 1)
        else:
            m = float(cfg.N // 2 ** (t + 1))
            if m < 1:
                raise ValueError(f"M = {m:g} < 1 for N={cfg.N}, t={t}: beyond the semiquantum window")
        return cls(cfg.N, cfg.N0, cfg.T, t, m)

    @property
    def exact(self):
        """True when B_t exists (t <= T) and no flooring was applied."""
        return self.t <= self.T


def _odd_sum(m, n_terms):
    """sum_{k < n_terms} (2k+1) / sin^2[pi (2k+1) / (4m)]"""
    odd = 2.0 * np.arange(n_terms) + 1.0
    return float(np.sum(odd / np.sin(np.pi * odd / (4.0 * m)) ** 2))


def f_sq_exact(n, t):
    """Exact semiquantum f(t) for the left-half projector J = [0, N/2 - 1].

    For t <= T this is exact.  Beyond T (generic N only) the sum is evaluated
    with M = floor(N / 2^(t+1)) and no boundary term.
    """
    p = SemiquantumParams.from_dimension(n, t)
    if not p.exact:
        m = int(p.M)
        return 2.0**p.t / (16.0 * m * m) * _odd_sum(m, m)
    # terms with 2k+1 < 2M; M is an integer or, at t = T, a half-integer
    n_terms = math.ceil(p.M - 0.5)
    value = 2.0**p.t / (16.0 * p.M**2) * _odd_sum(p.M, n_terms)
    residue = p.N % 2 ** (p.t + 1)
    if residue:
        value += 2.0 ** (2 * p.t - 3) / p.N * math.sin(math.pi * residue / 2 ** (p.t + 1)) ** 2
    return value


def f_sq_approx(n, t):
    """Large-M form f_SQ(t) ~ 2^t / (2 pi^2) * ln(4 e^(gamma+1) N / (pi 2^t))."""
    n, t = int(n), int(t)
    if t < 1:
        raise ValueError(f"t must be >= 1, got {t}")
    m = n / 2 ** (t + 1)
    if m < APPROX_MIN_M:
        raise ValueError(
            f"approximation needs M = N/2^(t+1) >= {APPROX_MIN_M}; got M = {m:g} (N={n}, t={t})"
        )
    return 2.0**t / (2 * math.pi**2) * math.log(4 * math.exp(EULER_GAMMA + 1) / math.pi * n / 2.0**t)


def f_sq_rate_approx(n, t):
    """Instantaneous ratio f_SQ(t+1) / f_SQ(t) ~ 2 [1 - ln 2 / ln(N0 2^(T-t-1))]."""
    cfg = BakerConfig.from_dimension(n)
    return 2.0 * (1.0 - math.log(2.0) / math.log(cfg.N0 * 2.0 ** (cfg.T - t - 1)))


def digamma(x):
    """psi_0(x) for x > 0: upward recurrence to x >= 10, then the asymptotic series."""
    x = float(x)
    if not x > 0:
        raise ValueError(f"digamma implemented for x > 0 only, got {x}")
    acc = 0.0
    while x < 10.0:
        acc -= 1.0 / x
        x += 1.0
    inv2 = 1.0 / (x * x)
    series = 0.0
    power = inv2
    for c in _DIGAMMA_COEFFS:
        series += c * power
        power *= inv2
    return acc + math.log(x) - 0.5 / x - series


def sum_asymptotic_check(m):
    """(1/M^2) sum (2k+1)/sin^2[pi(2k+1)/(4M)] next to (8/pi^2)[1 + ln(8/pi) + gamma + psi_0(M + 1/2)]."""
    m = int(m)
    if m < 1:
        raise ValueError(f"M must be >= 1, got {m}")
    exact = _odd_sum(m, m) / m**2
    closed = 8.0 / math.pi**2 * (1.0 + math.log(8.0 / math.pi) + EULER_GAMMA + digamma(m + 0.5))
    return exact, closed


def rmt_saturation(n, j):
    """CUE average of f for a rank-J projector: J^2 (N-J)^2 / (N (N^2 - 1))."""
    n, j = int(n), int(j)
    if not 1 <= j <= n - 1:
        raise ValueError(f"J must lie in [1, N-1], got J={j}, N={n}")
    return j * j * (n - j) ** 2 / (n * (n * n - 1))


def sample_cue(n, seed=None):
    """Haar-random unitary from the QR decomposition of a complex Ginibre matrix.

    ``seed`` is anything accepted by ``numpy.random.default_rng``.
    """
    n = int(n)
    if n < 1:
        raise ValueError(f"dimension must be >= 1, got {n}")
    rng = np.random.default_rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / np.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def cue_samples_f(n, j, n_samples, seed=0):
    """f for each of ``n_samples`` CUE draws; sample i uses SeedSequence(seed).spawn()[i]."""
    n, j, n_samples = int(n), int(j), int(n_samples)
    if n_samples < 1:
        raise ValueError("need at least one sample")
    rng = ProjectorRange(0, j - 1)
    rng.check(n)
    if j == n:
        # the full projector is the identity and commutes with everything
        return np.zeros(n_samples)
    seeds = np.random.SeedSequence(seed).spawn(n_samples)
    out = np.empty(n_samples)
    for i, s in enumerate(seeds):
        mu = singular_values_squared(truncate(sample_cue(n, s), rng))
        out[i] = np.sum(mu * (1.0 - mu))
    return out


def cue_empirical_f(n, j, n_samples, seed=0):
    """Mean of f over CUE draws and its standard error."""
    if int(n_samples) < 2:
        raise ValueError("standard error needs n_samples >= 2")
    vals = cue_samples_f(n, j, n_samples, seed)
    return float(np.mean(vals)), float(np.std(vals, ddof=1) / np.sqrt(len(vals)))


def slaved_family_rates(n0, t0, times):
    """(1/t) ln f_SQ(t) with N = N0 2^(t + t0) growing together with t."""
    return np.array([math.log(f_sq_exact(n0 * 2 ** (t + t0), t)) / t for t in times])


def fixed_time_ratios(t, n0_values, extra_bits=2):
    """f_SQ(t+1)/f_SQ(t) at fixed t for N = N0 2^(t + extra_bits), N0 growing."""
    out = []
    for n0 in n0_values:
        n = n0 * 2 ** (t + extra_bits)
        out.append(f_sq_exact(n, t + 1) / f_sq_exact(n, t))
    return np.array(out)


def fit_growth_constants(n, times):
    """Fit f_SQ(t) = C1 e^(lambda t) ln(C2 N / e^(lambda t)) over ``times``.

    Linear in x = ln(N / 2^t): f / 2^t = C1 x + C1 ln C2.  Returns (C1, C2);
    the large-M form predicts C1 = 1/(2 pi^2), C2 = 4 e^(gamma+1) / pi.
    """
    times = np.asarray(list(times))
    y = np.array([f_sq_exact(n, t) / 2.0**t for t in times])
    x = np.log(n / 2.0**times)
    slope, intercept = np.polyfit(x, y, 1)
    return float(slope), float(math.exp(intercept / slope))


__all__ = [
    "EULER_GAMMA",
    "LYAPUNOV_EXPONENT",
    "SemiquantumParams",
    "f_sq_exact",
    "f_sq_approx",
    "f_sq_rate_approx",
    "digamma",
    "sum_asymptotic_check",
    "rmt_saturation",
    "sample_cue",
    "cue_samples_f",
    "cue_empirical_f",
    "slaved_family_rates",
    "fixed_time_ratios",
    "fit_growth_constants",
]
