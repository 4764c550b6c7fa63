# Cross-check: closed-form trajectories against RK4 in all three regimes,
# and the fourth-order convergence of the integrator.
import math

import numpy as np

from phasecontrol import EffectiveDrive, Relaxation, bloch_trajectory, classify_regime, time_series

for omega, gamma in [(2 * math.pi, math.pi), (1.0, 2.0), (1.0, 6.0)]:
    ts = time_series(EffectiveDrive(omega), Relaxation(gamma_p=gamma), 5.0, 501, "ode")
    dev = np.max(np.abs(ts.states - bloch_trajectory(omega, gamma, ts.times)))
    print(f"{classify_regime(omega, gamma).tag:>11}: max |ode - analytic| = {dev:.2e}")

prev = None
for h in (0.01, 0.005, 0.0025, 0.00125):
    ts = time_series(EffectiveDrive(2 * math.pi), Relaxation(gamma_p=math.pi), 2.0, 2, "ode", step=h)
    err = abs(ts.w[-1] - bloch_trajectory(2 * math.pi, math.pi, 2.0)[0, 2])
    print(f"h = {h:<7} error = {err:.3e}" + (f"  order = {math.log2(prev / err):.2f}" if prev else ""))
    prev = err
