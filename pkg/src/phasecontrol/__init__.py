"""Analytic and numerical N vs. M photon phase control of a dephasing two-level system."""
from .analytic import (Regime, bloch_analytic, bloch_trajectory, classify_regime,
                       rho22_analytic, rho22_short_time, rho22_weak_field)
from .bloch_ode import OdeParams, derivative, integrate, steady_state_general
from .domain import (BlochState, EffectiveDrive, LaserField, LevelTriple, PathwaySet,
                     PhaseControlError, Profile, Relaxation, SingularityError,
                     StabilityError, TimeSeries, UnphysicalStateError, rho22_of,
                     validate_relaxation)
from .drive import effective_drive, pathways_from_fields, three_photon_moment
from .scan import degree_of_control, phase_profile, sweep_fig1, sweep_fig2, time_series

__version__ = "0.1.0"

__all__ = [
    "BlochState", "EffectiveDrive", "LaserField", "LevelTriple", "OdeParams", "PathwaySet",
    "PhaseControlError", "Profile", "Regime", "Relaxation", "SingularityError",
    "StabilityError", "TimeSeries", "UnphysicalStateError",
    "bloch_analytic", "bloch_trajectory", "classify_regime", "degree_of_control",
    "derivative", "effective_drive", "integrate", "pathways_from_fields", "phase_profile",
    "rho22_analytic", "rho22_of", "rho22_short_time", "rho22_weak_field",
    "steady_state_general", "sweep_fig1", "sweep_fig2", "three_photon_moment",
    "time_series", "validate_relaxation",
]
