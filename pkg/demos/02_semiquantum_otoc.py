"""
Commutator growth for the quantum baker and its semiquantum stand-in.

The left-half projector P is evolved with B^t and with B_t (the quantized
t-fold map).  Up to the log-time both grow roughly like 2^t times a slowly
shrinking logarithm.
"""

# %%
import numpy as np

from bakerotoc import ProjectorRange, f_sq_approx, f_sq_exact, otoc_series, rmt_saturation
from bakerotoc.quantum import semiquantum_deviation

N = 1024
half = ProjectorRange.left_half(N)
quantum = otoc_series(N, 14, half)
semi = otoc_series(N, 10, half, mode="semiquantum")

print(" t   f_quantum   f_semiq   f_SQ exact  f_SQ approx")
for t in range(1, 15):
    fs = f"{semi.f[t]:10.4f}" if t <= 10 else " " * 10
    ex = f"{f_sq_exact(N, t):11.4f}" if t <= 10 else " " * 11
    try:
        ap = f"{f_sq_approx(N, t):11.4f}"
    except ValueError:
        ap = ""
    print(f"{t:2d} {quantum.f[t]:10.4f} {fs} {ex} {ap}")
print("CUE saturation:", rmt_saturation(N, N // 2))

# %% f2 of the semiquantum propagator is pinned at N/4 for every t.
print("f2(B_t)/N:", np.round(semi.f2[1:] / N, 12))

# %% Matrix-level distance between B^t and B_t grows slowly.
print("||B^t - B_t||_F / sqrt(N), N=256:", np.round(semiquantum_deviation(256), 4))

# %% Past the log-time the semiquantum closed form collapses onto the CUE value N/16.
print("f_SQ(T-1) =", f_sq_exact(N, 9), " N/16 =", N / 16)
