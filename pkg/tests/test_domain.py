import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from phasecontrol.domain import (BlochState, LaserField, LevelTriple, PathwaySet,
                                 PhaseControlError, Relaxation, TimeSeries,
                                 UnphysicalStateError, clamp_probability, rho11_of,
                                 rho22_of, validate_relaxation)


@pytest.mark.parametrize("w, expected", [(-1.0, 0.0), (0.0, 0.5), (1.0, 1.0)])
def test_rho22_of_basic(w, expected):
    assert rho22_of(BlochState(0.0, 0.0, w)) == expected


def test_rho22_of_clamps_roundoff():
    assert rho22_of(1.0 + 5e-10) == 1.0
    assert rho22_of(-1.0 - 5e-10) == 0.0


@pytest.mark.parametrize("w", [1.0 + 1e-6, -1.5, math.nan])
def test_rho22_of_rejects_unphysical(w):
    with pytest.raises(UnphysicalStateError):
        rho22_of(w)


@given(st.floats(-1.0, 1.0))
def test_populations_sum_to_one(w):
    assert rho22_of(w) + rho11_of(w) == 1.0


def test_validate_relaxation():
    r = Relaxation(gamma_p=math.pi, gamma_d=0.0, delta=0.0, sigma_1e=1.0, sigma_2e=0.0)
    assert validate_relaxation(r) is r
    assert r.t1 == math.inf
    assert r.t2 == pytest.approx(1 / math.pi)
    assert r.w_e == -1.0


@pytest.mark.parametrize("kwargs", [
    dict(gamma_p=-1.0),
    dict(gamma_d=-0.1),
    dict(sigma_1e=0.6, sigma_2e=0.6),
    dict(sigma_1e=1.2, sigma_2e=-0.2),
    dict(delta=math.nan),
    dict(gamma_p=math.inf),
])
def test_relaxation_rejects(kwargs):
    with pytest.raises(PhaseControlError):
        Relaxation(**kwargs)


def test_field_and_pathway_validation():
    LaserField(0.0, 1.0)
    with pytest.raises(PhaseControlError):
        LaserField(-1.0)
    with pytest.raises(PhaseControlError):
        PathwaySet(-1.0, 0.0, 1.0, 0.0, 0.0)
    with pytest.raises(PhaseControlError):
        LevelTriple(complex(math.nan, 0), 1, 1, 2.0, 0.0)


def test_clamp_probability():
    assert clamp_probability(-1e-12) == 0.0
    np.testing.assert_array_equal(clamp_probability([0.2, 1 + 1e-10]), [0.2, 1.0])
    with pytest.raises(UnphysicalStateError):
        clamp_probability(1.01)


def test_timeseries_shapes():
    ts = TimeSeries([0.0, 1.0], [[0, 0, -1], [0, 0, 1]])
    assert len(ts) == 2
    np.testing.assert_array_equal(ts.rho22, [0.0, 1.0])
    assert ts.state(1) == BlochState(0.0, 0.0, 1.0)
    with pytest.raises(PhaseControlError):
        TimeSeries([1.0, 0.0], [[0, 0, -1], [0, 0, -1]])
