# Detuning and population decay: no closed form here, so integrate the
# Bloch equations with fixed-step RK4 and compare with the steady state.
import math

from phasecontrol import BlochState, EffectiveDrive, OdeParams, Relaxation, integrate, steady_state_general
from phasecontrol.bloch_ode import default_step

drive = EffectiveDrive(2 * math.pi)
for delta in (0.0, 2.0, 6.0):
    relax = Relaxation(gamma_p=1.0, gamma_d=0.5, delta=delta)
    ts = integrate(BlochState.ground(), OdeParams(drive, relax, default_step(drive, relax), 30.0))
    ss = steady_state_general(drive, relax)
    print(f"delta = {delta}: rho22(30) = {ts.rho22[-1]:.8f}, steady state rho22 = {(1 + ss.w) / 2:.8f}, "
          f"(u, v, w) = ({ss.u:+.5f}, {ss.v:+.5f}, {ss.w:+.5f})")
