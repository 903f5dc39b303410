"""
Synthesizes X/RY/CX circuits that prepare real, non-negative state vectors
from |0...0>.

Qubit q0 is the least significant bit of a basis index. Qubits are prepared
from the most significant down: each level applies one RY per prefix of the
already prepared qubits, splitting the prefix's probability mass between the
0 and 1 branches. A level's prefix-conditioned rotations form a multiplexor,
decomposed into uncontrolled RY gates interleaved with CX gates whose
controls follow a Gray code.
"""

import dataclasses
from typing import List, Optional, Sequence, Tuple

import numpy as np

from quaver.const import MAX_QUBITS
from quaver.exceptions import (
    QuaverCapacityException,
    QuaverNegativeAmplitudeException,
    QuaverNotNormalizedException,
)
from quaver.types import GateKind

__all__ = ["Circuit", "Gate", "gate_count", "prepare_state"]

ANGLE_EPSILON = 1e-12
NORM_TOLERANCE = 1e-9


@dataclasses.dataclass(frozen=True)
class Gate:
    """A gate; CX qubits are (control, target)."""

    kind: GateKind
    qubits: Tuple[int, ...]
    angle: Optional[float] = None

    def __str__(self) -> str:
        qubits = " ".join(f"q{qubit}" for qubit in self.qubits)
        if self.kind is GateKind.RY:
            return f"{self.kind.value} {qubits} {self.angle:.6f}"
        return f"{self.kind.value} {qubits}"


@dataclasses.dataclass(frozen=True)
class Circuit:
    k: int
    gates: Tuple[Gate, ...] = ()

    def __post_init__(self):
        if not 1 <= self.k <= MAX_QUBITS:
            raise QuaverCapacityException(
                f"circuits hold 1 to {MAX_QUBITS} qubits, not {self.k}"
            )
        for gate in self.gates:
            if any(not 0 <= qubit < self.k for qubit in gate.qubits):
                raise ValueError(f"{gate} addresses a qubit outside {self.k}")
            if gate.kind is GateKind.CX and gate.qubits[0] == gate.qubits[1]:
                raise ValueError(f"{gate} controls its own target")
            if gate.kind is GateKind.RY and not np.isfinite(gate.angle):
                raise ValueError(f"{gate} has a non-finite angle")

    def __len__(self) -> int:
        return len(self.gates)

    def dump(self) -> str:
        """One line per gate: kind, qubits, and the angle for rotations."""
        return "\n".join(str(gate) for gate in self.gates)


def gate_count(circuit: Circuit) -> Tuple[int, int, int]:
    """Returns the number of X, RY and CX gates."""
    kinds = [gate.kind for gate in circuit.gates]
    return (
        kinds.count(GateKind.X),
        kinds.count(GateKind.RY),
        kinds.count(GateKind.CX),
    )


def _gray(i: int) -> int:
    return i ^ (i >> 1)


def _walsh_gray_angles(alphas: np.ndarray) -> np.ndarray:
    """
    Converts per-prefix angles into the angles of the uncontrolled rotations.
    The rotation before the i-th CX sees its sign flipped by every control
    bit set in both the prefix and gray(i).
    """
    size = len(alphas)
    m = size.bit_length() - 1
    signs = np.array(
        [
            [(-1) ** bin(j & _gray(i)).count("1") for j in range(size)]
            for i in range(size)
        ]
    )
    return signs @ alphas / 2 ** m


def _flipped_bit(i: int, size: int) -> int:
    return (_gray(i) ^ _gray((i + 1) % size)).bit_length() - 1


def _append(gates: List[Gate], gate: Gate):
    # a CX directly repeated cancels out
    if gate.kind is GateKind.CX and gates and gates[-1] == gate:
        gates.pop()
    else:
        gates.append(gate)


def _multiplexed_ry(
    alphas: np.ndarray, controls: Sequence[int], target: int
) -> List[Gate]:
    gates: List[Gate] = []
    if np.allclose(alphas, alphas[0], rtol=0, atol=ANGLE_EPSILON):
        if abs(alphas[0]) > ANGLE_EPSILON:
            gates.append(Gate(GateKind.RY, (target,), float(alphas[0])))
        return gates
    thetas = _walsh_gray_angles(alphas)
    for i, theta in enumerate(thetas):
        if abs(theta) > ANGLE_EPSILON:
            _append(gates, Gate(GateKind.RY, (target,), float(theta)))
        control = controls[_flipped_bit(i, len(thetas))]
        _append(gates, Gate(GateKind.CX, (control, target)))
    return gates


def _validate(target: Sequence[float], k: int) -> np.ndarray:
    amplitudes = np.asarray(target, dtype=float)
    if amplitudes.shape != (2 ** k,):
        raise ValueError(f"expected {2 ** k} amplitudes for {k} qubits")
    if np.any(amplitudes < -ANGLE_EPSILON):
        index = int(np.argmin(amplitudes))
        raise QuaverNegativeAmplitudeException(
            f"amplitude {amplitudes[index]} at index {index} is negative"
        )
    norm = np.linalg.norm(amplitudes)
    if abs(norm - 1) > NORM_TOLERANCE:
        raise QuaverNotNormalizedException(f"target norm is {norm}, not 1")
    return np.clip(amplitudes, 0, None)


def prepare_state(target: Sequence[float], k: int) -> Circuit:
    """Builds a circuit taking |0...0> to the given non-negative amplitudes."""
    amplitudes = _validate(target, k)
    support = np.flatnonzero(amplitudes > ANGLE_EPSILON)
    if len(support) == 1:
        index = int(support[0])
        gates = [
            Gate(GateKind.X, (qubit,))
            for qubit in range(k)
            if index >> qubit & 1
        ]
        return Circuit(k, tuple(gates))
    gates = []
    for level in range(k):
        target_qubit = k - 1 - level
        # bit b of a prefix is qubit k - level + b
        controls = [k - level + bit for bit in range(level)]
        branches = amplitudes.reshape(2 ** level, 2, -1)
        zero_norms = np.linalg.norm(branches[:, 0, :], axis=1)
        one_norms = np.linalg.norm(branches[:, 1, :], axis=1)
        alphas = 2 * np.arctan2(one_norms, zero_norms)
        gates.extend(_multiplexed_ry(alphas, controls, target_qubit))
    return Circuit(k, tuple(gates))
