"""
Saturation of f(t) after the log-time for several position partitions.

N = 2446 is 2 x 1223, so the semiquantum propagator exists only for t = 1.
The quantum series still saturates at the random-matrix value.  Takes about
two minutes.
"""

# %%
import numpy as np

from bakerotoc import ProjectorRange, otoc_series, rmt_saturation

N = 2446
s = otoc_series(N, 25, ProjectorRange(0, 1222))
target = rmt_saturation(N, 1223)
print("t   f(t)     f/rmt")
for t in range(0, 26):
    print(f"{t:2d} {s.f[t]:9.3f} {s.f[t] / target:6.3f}")
print("mean over t=15..25:", np.mean(s.f[15:]), " rmt:", target)

# %% Three partitions at N = 2048: left half, a band avoiding the origin, a narrow band.
N = 2048
parts = {
    "[0, N/2)": ProjectorRange(0, N // 2 - 1),
    "[N/10, 4N/10]": ProjectorRange(N // 10, 4 * N // 10),
    "[N/10, 3N/10]": ProjectorRange(N // 10, 3 * N // 10),
}
for name, rng in parts.items():
    f = otoc_series(N, 25, rng).f
    print(f"{name:15s} J={rng.J:4d} rmt={rmt_saturation(N, rng.J):8.2f}  f(12..25):", np.round(f[12:], 1))
