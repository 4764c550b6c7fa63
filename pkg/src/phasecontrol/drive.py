"""
Effective single-mode drive built from two interfering excitation pathways.

The one-photon and multiphoton Rabi amplitudes add coherently,

    Omega_eff e^{i theta} = |Omega_a| e^{i(phi + theta_a)} + |Omega_b| e^{i theta_b},

so the two-level dynamics are those of a single field with Rabi frequency
Omega_eff, which depends on the laser phase only through
Phi = phi + theta_a - theta_b.
"""
from __future__ import annotations

import cmath
import math
from collections.abc import Iterable

import numpy as np

from .domain import (EffectiveDrive, LaserField, LevelTriple, PathwaySet,
                     PhaseControlError, SingularityError, as_complex)

#: Absolute guard on the energy denominators of the three-photon sum.
DENOMINATOR_TOL = 1e-12

#: Below this Omega_eff the effective phase is reported as 0.
ZERO_DRIVE_TOL = 1e-12


def three_photon_moment(triples: Iterable[LevelTriple], omega_f: float) -> complex:
    """Perturbative three-photon transition moment (hbar = 1).

    Sums ``mu_1n mu_nm mu_m2 / ((omega_n1 - omega_f)(omega_f - omega_2m))``
    over the supplied intermediate-level pairs and multiplies by 1/4.
    Triples are used as given, without deduplication.

    Raises
    ------
    SingularityError
        If an intermediate level is resonant, i.e. a denominator factor has
        magnitude <= ``DENOMINATOR_TOL``. The error's ``index`` attribute is
        the position of the offending triple.
    """
    total = 0j
    for i, tr in enumerate(triples):
        d1 = tr.omega_n1 - omega_f
        d2 = omega_f - tr.omega_2m
        if abs(d1) <= DENOMINATOR_TOL or abs(d2) <= DENOMINATOR_TOL:
            err = SingularityError(
                f"resonant intermediate level in triple {i}: "
                f"omega_n1 - omega_f = {d1!r}, omega_f - omega_2m = {d2!r}")
            err.index = i
            raise err
        total += tr.mu_1n * tr.mu_nm * tr.mu_m2 / (d1 * d2)
    return total / 4.0


def _pathway(mu: complex, field: LaserField, n_photons: int, label: str):
    if n_photons < 1 or int(n_photons) != n_photons:
        raise PhaseControlError(f"photon number must be a positive integer, got {n_photons}")
    if mu == 0:
        if field.amplitude != 0:
            raise PhaseControlError(
                f"pathway {label}: zero matrix element with nonzero field leaves the phase undefined")
        return 0.0, 0.0
    return abs(mu) * field.amplitude ** int(n_photons), cmath.phase(mu)


def pathways_from_fields(field_h: LaserField, field_f: LaserField,
                         mu: complex, mu3: complex,
                         n_photons_a: int = 1, n_photons_b: int = 3) -> PathwaySet:
    """Pathway magnitudes and phases for an N vs. M photon scheme.

    ``field_h`` drives the ``n_photons_a`` pathway through ``mu``, ``field_f``
    the ``n_photons_b`` pathway through ``mu3``. The defaults give the
    1 vs. 3 photon case, where the relative phase is phi_h - 3 phi_f.
    """
    mu = as_complex(mu)
    mu3 = as_complex(mu3)
    mag_a, theta_a = _pathway(mu, field_h, n_photons_a, "a")
    mag_b, theta_b = _pathway(mu3, field_f, n_photons_b, "b")
    phi = n_photons_a * field_h.phase - n_photons_b * field_f.phase
    return PathwaySet(mag_a, theta_a, mag_b, theta_b, phi)


def effective_omega(mag_a, mag_b, cap_phi):
    """Omega_eff from the interference law; works elementwise on arrays."""
    sq = mag_a * mag_a + mag_b * mag_b + 2.0 * mag_a * mag_b * np.cos(cap_phi)
    return np.sqrt(np.maximum(sq, 0.0))


def effective_drive(p: PathwaySet) -> EffectiveDrive:
    """Collapse a :class:`PathwaySet` into ``(omega_eff, theta, cap_phi)``.

    theta is the argument of the summed complex amplitude (two-argument
    arctangent), and 0 when the drive vanishes.
    """
    cap_phi = p.phi + p.theta_a - p.theta_b
    omega = float(effective_omega(p.mag_a, p.mag_b, cap_phi))
    if omega < ZERO_DRIVE_TOL:
        theta = 0.0
    else:
        z = p.mag_a * cmath.exp(1j * (p.phi + p.theta_a)) + p.mag_b * cmath.exp(1j * p.theta_b)
        theta = math.atan2(z.imag, z.real)
    return EffectiveDrive(omega, theta, cap_phi)
