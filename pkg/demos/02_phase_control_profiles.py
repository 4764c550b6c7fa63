# Phase-control profiles: population at square-pulse turn-off versus the
# interference phase Phi, for equal pathway magnitudes, weak (pi/5) and
# strong (2 pi) fields, with and without dephasing.
import math

import numpy as np

from phasecontrol import degree_of_control, phase_profile, sweep_fig2
from phasecontrol.domain import Relaxation

profiles = sweep_fig2(n_phi=16)
print(" |Omega_h|  gamma_p  t_off       C   argmax Phi on [0, pi]")
for p in profiles:
    mag, g, t_off = p.meta["params"]
    half = p.rho22[: len(p) // 2 + 1]
    print(f"{mag:9.4f} {g:8.4f} {t_off:6.2f}  {degree_of_control(p):.4f}   {p.cap_phis[np.argmax(half)]:.4f}")

# Weak field: the profile is close to c (1 + cos Phi).
weak = phase_profile(math.pi / 5, math.pi / 5, 0.0, Relaxation(), 0.25, 64)
basis = 1 + np.cos(weak.cap_phis)
c = basis @ weak.rho22 / (basis @ basis)
print(f"\nweak field, t_off = 0.25: c = {c:.6f}, relative misfit = "
      f"{np.linalg.norm(weak.rho22 - c * basis) / np.linalg.norm(weak.rho22):.4f}")

# Strong field with dephasing: C tends to 1/2 for long pulses, since every
# Phi except the dark point Phi = pi relaxes to 1/2.
for t_off in (0.5, 2.0, 5.0, 10.0):
    prof = phase_profile(2 * math.pi, 2 * math.pi, 0.0, Relaxation(gamma_p=math.pi), t_off, 64)
    print(f"t_off = {t_off:5.1f}: C = {degree_of_control(prof):.6f}")

# Negative mu * mu3 shifts the profile by pi in the laser phase.
plus = phase_profile(2 * math.pi, 2 * math.pi, 0.0, Relaxation(), 0.25, 8)
minus = phase_profile(2 * math.pi, 2 * math.pi, math.pi, Relaxation(), 0.25, 8)
print("\nlaser phase  rho22(mu mu3 > 0)  rho22(mu mu3 < 0)")
for phi, a, b in zip(plus.phis, plus.rho22, minus.rho22):
    print(f"{phi:10.4f}  {a:16.6f}  {b:16.6f}")
