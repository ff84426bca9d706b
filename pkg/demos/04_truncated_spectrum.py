"""
Eigenvalues of the truncated propagator P B^t P.

At t = 1 most eigenvalues are tiny; by the log-time they sit inside the disk
of radius 1/sqrt(2), and B_T puts them exactly on that circle.  Truncated CUE
matrices fill the same disk.
"""

# %%
import numpy as np

from bakerotoc import ProjectorRange, build_baker, build_semiquantum, complex_eigenvalues, sample_cue, truncate

N = 1024
half = ProjectorRange.left_half(N)
b = build_baker(N)
power = np.eye(N, dtype=complex)
r = 1 / np.sqrt(2)
for t in range(1, 11):
    power = b @ power
    lam = np.abs(complex_eigenvalues(truncate(power, half)))
    print(f"t={t:2d}  median|lambda|={np.median(lam):.3f}  max={lam.max():.3f}  inside r+0.05: {np.mean(lam < r + 0.05):.3f}")

# %% The semiquantum propagator at t = T: every modulus equals 1/sqrt(2).
lam = np.abs(complex_eigenvalues(truncate(build_semiquantum(N, 10), half)))
print("B_T moduli: min", lam.min(), "max", lam.max(), "1/sqrt2", r)

# %% Pooled truncated CUE spectrum.
pooled = np.concatenate(
    [np.abs(complex_eigenvalues(truncate(sample_cue(128, s), ProjectorRange.left_half(128))))
     for s in np.random.SeedSequence(9).spawn(20)]
)
print("CUE N=128: fraction inside r+0.05:", np.mean(pooled < r + 0.05))
