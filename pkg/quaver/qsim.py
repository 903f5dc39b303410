"""
Dense state-vector simulation of X/RY/CX circuits with shot sampling and a
measurement bit-flip noise model.
"""

import dataclasses
from math import cos, sin
from typing import Dict, List, Tuple, Union

import numpy as np

from quaver.exceptions import QuaverConfigException
from quaver.state_prep import Circuit, Gate
from quaver.types import GateKind

__all__ = [
    "NoiseModel",
    "ShotCounts",
    "StateVector",
    "apply_gate",
    "majority",
    "run",
    "sample",
]

Seed = Union[None, int, np.random.SeedSequence, np.random.Generator]


@dataclasses.dataclass(frozen=True)
class NoiseModel:
    """Each measured bit flips independently with probability bit_flip_p."""

    bit_flip_p: float = 0.0

    def __post_init__(self):
        if not 0 <= self.bit_flip_p < 1:
            raise QuaverConfigException(
                "bit flip probability must lie in [0, 1), "
                f"not {self.bit_flip_p}"
            )


@dataclasses.dataclass(frozen=True)
class StateVector:
    amplitudes: np.ndarray

    def __post_init__(self):
        self.amplitudes.flags.writeable = False

    @property
    def k(self) -> int:
        return len(self.amplitudes).bit_length() - 1

    @property
    def probabilities(self) -> np.ndarray:
        return np.abs(self.amplitudes) ** 2

    @classmethod
    def zero(cls, k: int) -> "StateVector":
        amplitudes = np.zeros(2 ** k, dtype=complex)
        amplitudes[0] = 1
        return cls(amplitudes)


@dataclasses.dataclass(frozen=True)
class ShotCounts:
    counts: Dict[int, int]
    k: int

    @property
    def shots(self) -> int:
        return sum(self.counts.values())

    def as_rows(self) -> List[Tuple[str, int]]:
        return [
            (f"{value:0{self.k}b}", n)
            for value, n in sorted(self.counts.items())
        ]


def _axis(qubit: int, k: int) -> int:
    # C-ordered reshape puts the most significant qubit on axis 0
    return k - 1 - qubit


def apply_gate(amplitudes: np.ndarray, gate: Gate, k: int) -> np.ndarray:
    """Returns the amplitudes after applying one gate."""
    tensor = amplitudes.reshape([2] * k)
    if gate.kind is GateKind.X:
        tensor = np.flip(tensor, axis=_axis(gate.qubits[0], k))
    elif gate.kind is GateKind.RY:
        c, s = cos(gate.angle / 2), sin(gate.angle / 2)
        matrix = np.array([[c, -s], [s, c]])
        axis = _axis(gate.qubits[0], k)
        tensor = np.tensordot(matrix, tensor, axes=([1], [axis]))
        tensor = np.moveaxis(tensor, 0, axis)
    elif gate.kind is GateKind.CX:
        control, target = gate.qubits
        tensor = tensor.copy()
        index = [slice(None)] * k
        index[_axis(control, k)] = 1
        index = tuple(index)
        target_axis = _axis(target, k) - (_axis(target, k) > _axis(control, k))
        tensor[index] = np.flip(tensor[index], axis=target_axis).copy()
    else:
        raise ValueError(f"unsupported gate {gate}")
    return np.ascontiguousarray(tensor).reshape(-1)


def run(circuit: Circuit) -> StateVector:
    """Applies the circuit's gates in order to |0...0>."""
    amplitudes = np.array(StateVector.zero(circuit.k).amplitudes)
    for gate in circuit.gates:
        amplitudes = apply_gate(amplitudes, gate, circuit.k)
    assert abs(np.linalg.norm(amplitudes) - 1) < 1e-10, "state norm drifted"
    return StateVector(amplitudes)


def sample(
    state: StateVector,
    shots: int,
    seed: Seed = None,
    noise: NoiseModel = NoiseModel(),
) -> ShotCounts:
    """
    Measures the state shots times, flipping each measured bit with the noise
    model's probability.
    """
    if shots < 1:
        raise QuaverConfigException(f"shots must be positive, not {shots}")
    rng = np.random.default_rng(seed)
    probabilities = state.probabilities
    probabilities = probabilities / probabilities.sum()
    outcomes = rng.choice(len(probabilities), size=shots, p=probabilities)
    if noise.bit_flip_p:
        flips = rng.random((shots, state.k)) < noise.bit_flip_p
        outcomes = outcomes ^ (flips @ (1 << np.arange(state.k)))
    values, counts = np.unique(outcomes, return_counts=True)
    return ShotCounts(
        {int(v): int(n) for v, n in zip(values, counts)}, state.k
    )


def majority(counts: ShotCounts, seed: Seed = None) -> int:
    """Returns the most frequent outcome; ties are broken at random."""
    if not counts.counts:
        raise ValueError("cannot take the majority of zero shots")
    best = max(counts.counts.values())
    leaders = sorted(v for v, n in counts.counts.items() if n == best)
    if len(leaders) == 1:
        return leaders[0]
    rng = np.random.default_rng(seed)
    return int(rng.choice(leaders))
