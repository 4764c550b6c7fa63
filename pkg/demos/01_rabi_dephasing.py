# Excited-state population versus time for a fixed effective Rabi frequency
# (2 pi) and a range of dephasing rates: undamped Rabi cycling, damped
# oscillation, the critical case and the overdamped monotone rise.
import math

import numpy as np

from phasecontrol import classify_regime, rho22_analytic
from phasecontrol.scan import FIG1_GAMMAS, sweep_fig1

omega_eff = 2 * math.pi
for g in FIG1_GAMMAS:
    print(f"gamma_p = {g:7.4f}: {classify_regime(omega_eff, g).tag}")

series = sweep_fig1(omega_eff, FIG1_GAMMAS, t_end=3.0, n_samples=13)
print("\n   t  " + "".join(f"  gp={s.meta['gamma_p']:6.3f}" for s in series))
for i, t in enumerate(series[0].times):
    print(f"{t:5.2f} " + "".join(f"  {s.rho22[i]:9.6f}" for s in series))

# A square pulse switched off at t = 1 leaves no excitation without
# dephasing, but some excitation with it.
print("\nrho22(t=1):", {round(g, 3): round(float(rho22_analytic(omega_eff, g, 1.0)), 6) for g in FIG1_GAMMAS})

# Early times follow omega_eff^2 t^2 / 4 whatever the dephasing.
t = np.array([1e-3, 1e-2])
print("short-time ratio (gamma_p = pi):", rho22_analytic(omega_eff, math.pi, t) / (omega_eff * t / 2) ** 2)

try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    fine = sweep_fig1(omega_eff, FIG1_GAMMAS, t_end=3.0, n_samples=601)
    fig, ax = plt.subplots()
    for s in fine:
        ax.plot(s.times, s.rho22, label=f"$\\gamma_p$ = {s.meta['gamma_p']:.2f}")
    ax.set_xlabel("t")
    ax.set_ylabel(r"$\rho_{22}$")
    ax.legend()
    fig.savefig("rabi_dephasing.png", dpi=120)
    print("\nsaved rabi_dephasing.png")
except ImportError:
    pass
