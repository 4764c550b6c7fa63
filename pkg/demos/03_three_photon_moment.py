# From matrix elements to an effective drive: sum the three-photon moment
# over intermediate levels, build both pathways, and see how the laser
# phase tunes the effective Rabi frequency.
import math

import numpy as np

from phasecontrol import (LaserField, LevelTriple, effective_drive, pathways_from_fields,
                          three_photon_moment)

omega_f = 1.0
levels = [LevelTriple(0.8, 1.1, 0.6, 1.6, -0.4),
          LevelTriple(0.5, -0.9, 0.7, 2.3, 0.2),
          LevelTriple(0.3, 0.4, -1.2, 3.1, -1.5)]
mu3 = three_photon_moment(levels, omega_f)
mu = 0.05
print(f"mu3 = {mu3:.6f}, mu = {mu}")

# Pick field amplitudes that equalize the two pathways.
amp_f = 1.2
amp_h = abs(mu3) * amp_f ** 3 / abs(mu)
for phase_h in np.linspace(0, 2 * math.pi, 9):
    p = pathways_from_fields(LaserField(amp_h, phase_h), LaserField(amp_f, 0.0), mu, mu3)
    d = effective_drive(p)
    print(f"phi = {p.phi:6.3f}  Phi = {d.cap_phi:6.3f}  Omega_eff = {d.omega_eff:.6f}  theta = {d.theta:+.4f}")
