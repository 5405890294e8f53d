import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import dense_expectation, dense_joint
from ghzlab.qsim import (
    NEG_Y,
    X,
    Y,
    EquatorialObservable,
    PureState,
    basis_state,
    bell_state,
    ghz_state,
    outcome_distribution,
    parity_bias,
    sample_outcomes,
)

angles = st.floats(min_value=0, max_value=2 * math.pi, allow_nan=False)
EVEN = [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
ODD = [(0, 0, 1), (0, 1, 0), (1, 0, 0), (1, 1, 1)]


def test_ghz_amplitudes():
    g = ghz_state()
    assert g.amplitude((0, 0, 0)) == pytest.approx(0.7071067811865476, abs=1e-12)
    assert g.amplitude((1, 1, 1)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert g.amplitude((0, 1, 0)) == 0
    assert g.norm() == pytest.approx(1, abs=1e-12)


def test_bell_amplitudes():
    b = bell_state()
    assert b.amplitude((0, 0)) == pytest.approx(1 / math.sqrt(2), abs=1e-12)
    assert b.amplitude((0, 1)) == 0
    assert b.norm() == pytest.approx(1, abs=1e-12)


def test_rejects_unnormalized():
    with pytest.raises(ValueError):
        PureState(1, np.array([1.0, 1.0]))
    with pytest.raises(ValueError):
        PureState(4, np.eye(16)[0])


def test_named_observables():
    assert X.theta == 0
    assert Y.theta == pytest.approx(math.pi / 2)
    assert NEG_Y.theta == pytest.approx(3 * math.pi / 2)
    assert Y.flipped().theta == pytest.approx(NEG_Y.theta)


def test_zero_state_unbiased_on_equator():
    dist = outcome_distribution(basis_state((0,)), [X])
    assert dist[(0,)] == pytest.approx(0.5, abs=1e-12)
    assert dist[(1,)] == pytest.approx(0.5, abs=1e-12)


def test_plus_one_eigenvector_reports_zero():
    plus = PureState(1, np.array([1, 1]) / math.sqrt(2))
    assert outcome_distribution(plus, [X])[(0,)] == pytest.approx(1, abs=1e-12)


@pytest.mark.parametrize("obs,support", [((X, X, X), EVEN), ((Y, Y, X), ODD)])
def test_ghz_distributions(obs, support):
    dist = outcome_distribution(ghz_state(), obs)
    oracle = dense_joint(ghz_state().amplitudes, [o.theta for o in obs])
    for outcome, p in dist.probabilities.items():
        assert p == pytest.approx(oracle[outcome], abs=1e-12)
        assert p == pytest.approx(0.25 if outcome in support else 0.0, abs=1e-12)


def test_count_mismatch():
    with pytest.raises(ValueError):
        outcome_distribution(ghz_state(), [X, X])
    with pytest.raises(ValueError):
        parity_bias(bell_state(), [X, X, X])


def test_parity_bias_examples():
    assert parity_bias(ghz_state(), [X, X, X]) == pytest.approx(1, abs=1e-12)
    assert parity_bias(ghz_state(), [X, Y, Y]) == pytest.approx(-1, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(angles, angles, angles)
def test_ghz_parity_bias_law(a, b, c):
    obs = [EquatorialObservable(t) for t in (a, b, c)]
    bias = parity_bias(ghz_state(), obs)
    assert bias == pytest.approx(math.cos(a + b + c), abs=1e-12)
    assert bias == pytest.approx(dense_expectation(ghz_state().amplitudes, [a, b, c]), abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(angles, angles)
def test_bell_parity_bias_law(a, b):
    bias = parity_bias(bell_state(), [EquatorialObservable(a), EquatorialObservable(b)])
    assert bias == pytest.approx(math.cos(a + b), abs=1e-12)


@settings(max_examples=50, deadline=None)
@given(angles, angles, angles, st.integers(0, 2))
def test_flip_negates_bias_and_distribution_normalized(a, b, c, which):
    obs = [EquatorialObservable(t) for t in (a, b, c)]
    flipped = list(obs)
    flipped[which] = obs[which].flipped()
    dist = outcome_distribution(ghz_state(), obs)
    assert sum(dist.probabilities.values()) == pytest.approx(1, abs=1e-12)
    assert min(dist.probabilities.values()) >= 0
    assert parity_bias(ghz_state(), flipped) == pytest.approx(-parity_bias(ghz_state(), obs), abs=1e-12)


def test_sampling():
    counts = sample_outcomes(ghz_state(), [X, X, X], 4096, seed=3)
    assert sum(counts.values()) == 4096
    assert all(counts[o] == 0 for o in ODD)
    assert counts == sample_outcomes(ghz_state(), [X, X, X], 4096, seed=3)
    one = sample_outcomes(basis_state((0,)), [X], 10000, seed=11)
    assert abs(one[(0,)] / 10000 - 0.5) <= 0.02


def test_sampling_needs_shots():
    with pytest.raises(ValueError):
        sample_outcomes(ghz_state(), [X, X, X], 0, seed=1)
