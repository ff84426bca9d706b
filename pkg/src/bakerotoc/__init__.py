"""Out-of-time-ordered correlators of the quantum baker's map.

Modules
-------
classical : classical map, bit reversal, period-t points
linalg : shifted DFT, truncations, singular values, eigenvalues
quantum : quantum propagator B and semiquantum propagators B_t
otoc : f2, f4 and the commutator norm f from truncated propagators
analytics : closed-form semiquantum values, digamma asymptotics, CUE saturation
experiments : CSV datasets and the verification suite behind ``baker-otoc``
"""

__version__ = "0.1.0"

from .classical import PhasePoint, baker_step, bit_reverse, periodic_points
from .linalg import ProjectorRange, dft_shifted, singular_values_squared, complex_eigenvalues, truncate
from .quantum import BakerConfig, build_baker, build_semiquantum
from .otoc import f2_of_truncation, f4_of_truncation, f_commutator, otoc_series, f_general_observable
from .analytics import f_sq_exact, f_sq_approx, rmt_saturation, sample_cue, cue_empirical_f
