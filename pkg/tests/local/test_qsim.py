from math import pi, sqrt

import numpy as np
import pytest

from quaver.exceptions import QuaverConfigException
from quaver.qsim import *
from quaver.state_prep import Circuit, Gate, prepare_state
from quaver.types import GateKind

pytestmark = pytest.mark.local

X0 = Gate(GateKind.X, (0,))


def state_of(*gates: Gate, k: int = 2) -> np.ndarray:
    return run(Circuit(k, gates)).amplitudes


def test_state_vector__zero():
    state = StateVector.zero(3)
    assert state.k == 3
    assert list(state.probabilities) == [1, 0, 0, 0, 0, 0, 0, 0]


def test_run__x():
    assert state_of(X0, k=1) == pytest.approx([0, 1])


def test_run__qubit_order():
    actual = state_of(Gate(GateKind.X, (1,)), k=3)
    assert np.argmax(np.abs(actual)) == 2


def test_run__ry():
    actual = state_of(Gate(GateKind.RY, (0,), pi / 2), k=1)
    assert actual.real == pytest.approx([sqrt(0.5), sqrt(0.5)])


def test_run__ry_inverse():
    theta = 0.8
    actual = state_of(
        Gate(GateKind.RY, (1,), theta), Gate(GateKind.RY, (1,), -theta)
    )
    assert actual == pytest.approx([1, 0, 0, 0])


def test_run__x_twice():
    assert state_of(X0, X0) == pytest.approx([1, 0, 0, 0])


def test_run__cx_control_set():
    actual = state_of(X0, Gate(GateKind.CX, (0, 1)))
    assert actual == pytest.approx([0, 0, 0, 1])


def test_run__cx_control_clear():
    actual = state_of(Gate(GateKind.CX, (0, 1)))
    assert actual == pytest.approx([1, 0, 0, 0])


def test_run__cx_high_control():
    actual = state_of(
        Gate(GateKind.X, (2,)), Gate(GateKind.CX, (2, 0)), k=3
    )
    assert np.argmax(np.abs(actual)) == 5


def test_sample__frequencies():
    target = [sqrt(0.3), 0, 0, 0, 0, sqrt(0.7), 0, 0]
    state = run(prepare_state(target, 3))
    counts = sample(state, 100000, seed=1)
    assert set(counts.counts) == {0, 5}
    assert counts.shots == 100000
    assert counts.counts[5] / 100000 == pytest.approx(0.7, abs=0.01)


@pytest.mark.parametrize("k", (2, 4))
def test_sample__total_variation(k: int):
    rng = np.random.default_rng(k)
    target = rng.random(2 ** k)
    target /= np.linalg.norm(target)
    state = run(prepare_state(target, k))
    counts = sample(state, 1_000_000, seed=k)
    observed = np.zeros(2 ** k)
    for value, n in counts.counts.items():
        observed[value] = n / counts.shots
    assert 0.5 * np.abs(observed - target ** 2).sum() < 0.01


def test_sample__basis_state():
    state = run(Circuit(3, (X0,)))
    counts = sample(state, 500, seed=0)
    assert counts.counts == {1: 500}


def test_sample__deterministic():
    state = run(prepare_state([0.6, 0.8], 1))
    first = sample(state, 50, seed=7, noise=NoiseModel(0.1))
    second = sample(state, 50, seed=7, noise=NoiseModel(0.1))
    assert first == second


def test_sample__half_noise_is_uniform():
    state = StateVector.zero(2)
    counts = sample(state, 100000, seed=2, noise=NoiseModel(0.5))
    for value in range(4):
        assert counts.counts[value] / 100000 == pytest.approx(0.25, abs=0.01)


def test_sample__noise_flips_bits():
    state = StateVector.zero(3)
    counts = sample(state, 100000, seed=3, noise=NoiseModel(0.1))
    # probability that no bit flips is 0.9 ** 3
    assert counts.counts[0] / 100000 == pytest.approx(0.729, abs=0.01)
    assert counts.counts[7] / 100000 == pytest.approx(0.001, abs=0.001)


def test_sample__bad_shots():
    with pytest.raises(QuaverConfigException):
        sample(StateVector.zero(1), 0)


@pytest.mark.parametrize("p", (-0.1, 1.0, 1.5))
def test_noise_model__bad_probability(p: float):
    with pytest.raises(QuaverConfigException):
        NoiseModel(p)


def test_shot_counts__as_rows():
    counts = ShotCounts({5: 3, 0: 1}, 3)
    assert counts.as_rows() == [("000", 1), ("101", 3)]


def test_majority():
    assert majority(ShotCounts({1: 3, 2: 1}, 2)) == 1


def test_majority__tie():
    counts = ShotCounts({1: 2, 2: 2}, 2)
    winners = {majority(counts, seed) for seed in range(50)}
    assert winners == {1, 2}


def test_majority__empty():
    with pytest.raises(ValueError):
        majority(ShotCounts({}, 2))


def test_majority__many_shots_pick_the_likely_outcome():
    state = run(prepare_state([sqrt(0.2), sqrt(0.8)], 1))
    for trial in range(100):
        counts = sample(state, 1001, seed=trial)
        assert majority(counts, seed=trial) == 1
