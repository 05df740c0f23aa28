"""Exact complex-amplitude simulation over the {U3, CNOT, H, X, MCX} set.

States are flat complex128 arrays of length 2**q in the big-endian basis
order fixed in `circuit` (qubit 0 = most significant bit). All operations
are pure: inputs are never mutated, gate kernels run on a scratch copy.
"""

import math

import numpy as np

from . import kernels
from .circuit import Circuit, GateSpec

MAX_QUBITS = 14  # doubled-register cap for the 7-qubit case
MAX_DENSE_QUBITS = 7  # dense unitaries up to 128x128

_SQRT1_2 = complex(1.0 / math.sqrt(2.0))


def _check_qubit_count(qubits: int) -> None:
    if not 1 <= qubits <= MAX_QUBITS:
        raise ValueError(f"qubit count must be in [1, {MAX_QUBITS}], got {qubits}")


def num_qubits(state: np.ndarray) -> int:
    """Qubit count of a statevector, validating its length is a power of two."""
    state = np.asarray(state)
    if state.ndim != 1 or state.size < 2:
        raise ValueError("statevector must be a flat array of length >= 2")
    n = int(state.size).bit_length() - 1
    if (1 << n) != state.size:
        raise ValueError(f"statevector length {state.size} is not a power of two")
    return n


def zero_state(qubits: int) -> np.ndarray:
    """|0...0> on the given register size."""
    _check_qubit_count(qubits)
    amps = np.zeros(1 << qubits, dtype=np.complex128)
    amps[0] = 1.0
    return amps


def basis_state(qubits: int, index: int) -> np.ndarray:
    """Computational basis state |index> (big-endian bit order)."""
    _check_qubit_count(qubits)
    if not 0 <= index < (1 << qubits):
        raise ValueError(
            f"basis index {index} out of range for {qubits} qubits"
        )
    amps = np.zeros(1 << qubits, dtype=np.complex128)
    amps[index] = 1.0
    return amps


def u3_matrix(theta: float, phi: float, lam: float) -> np.ndarray:
    """General single-qubit gate:

        [[cos(t/2),            -e^{i lam} sin(t/2)      ],
         [e^{i phi} sin(t/2),   e^{i (phi+lam)} cos(t/2)]]
    """
    if not (math.isfinite(theta) and math.isfinite(phi) and math.isfinite(lam)):
        raise ValueError(f"u3 angles must be finite, got {(theta, phi, lam)}")
    c = math.cos(theta / 2.0)
    s = math.sin(theta / 2.0)
    return np.array(
        [
            [c, -np.exp(1j * lam) * s],
            [np.exp(1j * phi) * s, np.exp(1j * (phi + lam)) * c],
        ],
        dtype=np.complex128,
    )


def _gate_angles(gate: GateSpec, angles) -> tuple | None:
    """Resolve the three U3 angles for one gate, or None for fixed gates."""
    if gate.kind != "u3":
        if angles is not None and len(angles) != 0:
            raise ValueError(f"{gate.kind} gate takes no angles")
        return None
    if gate.angles is not None:
        if angles is not None and len(angles) != 0:
            raise ValueError("fixed-angle u3 gate takes no extra angles")
        return gate.angles
    if angles is None or len(angles) != 3:
        raise ValueError(f"u3 gate needs 3 bound angles, got {angles}")
    return tuple(float(a) for a in angles)


def _apply_gate_inplace(batch: np.ndarray, n: int, gate: GateSpec, angles) -> None:
    """Apply one gate to every row of a (rows, 2**n) amplitude block."""
    for w in gate.wires:
        if w >= n:
            raise ValueError(f"wire {w} out of range for {n}-qubit state")
    if gate.kind == "u3":
        m = u3_matrix(*angles)
        stride = 1 << (n - 1 - gate.wires[0])
        kernels.apply_1q(batch, m[0, 0], m[0, 1], m[1, 0], m[1, 1], stride)
    elif gate.kind == "h":
        stride = 1 << (n - 1 - gate.wires[0])
        kernels.apply_1q(batch, _SQRT1_2, _SQRT1_2, _SQRT1_2, -_SQRT1_2, stride)
    elif gate.kind == "x":
        stride = 1 << (n - 1 - gate.wires[0])
        kernels.apply_ctrl_x(batch, 0, stride)
    else:  # cnot / mcx
        controls, target = gate.wires[:-1], gate.wires[-1]
        cmask = 0
        for c in controls:
            cmask |= 1 << (n - 1 - c)
        kernels.apply_ctrl_x(batch, cmask, 1 << (n - 1 - target))


def apply_gate(state: np.ndarray, gate: GateSpec, angles=()) -> np.ndarray:
    """Apply a single gate to a state, returning the new state.

    Trainable U3 gates take their three bound angles through `angles`.
    """
    n = num_qubits(state)
    out = np.array(state, dtype=np.complex128)
    _apply_gate_inplace(out.reshape(1, -1), n, gate, _gate_angles(gate, angles))
    return out


def _resolve(gate: GateSpec, params: np.ndarray):
    if gate.kind != "u3":
        return None
    if gate.angles is not None:
        return gate.angles
    s0, s1, s2 = gate.param_slots
    return (params[s0], params[s1], params[s2])


def run_circuit(state: np.ndarray, circuit: Circuit, params) -> np.ndarray:
    """Apply every gate of the circuit in list order."""
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (circuit.param_count,):
        raise ValueError(
            f"expected {circuit.param_count} parameters, got {params.shape}"
        )
    n = num_qubits(state)
    if n != circuit.qubits:
        raise ValueError(
            f"circuit has {circuit.qubits} qubits but state has {n}"
        )
    out = np.array(state, dtype=np.complex128)
    batch = out.reshape(1, -1)
    for gate in circuit.gates:
        _apply_gate_inplace(batch, n, gate, _resolve(gate, params))
    return out


def circuit_unitary(circuit: Circuit, params=()) -> np.ndarray:
    """Dense d x d matrix of the circuit; column j is the image of |j>."""
    if circuit.qubits > MAX_DENSE_QUBITS:
        raise ValueError(
            f"dense unitaries capped at {MAX_DENSE_QUBITS} qubits, "
            f"got {circuit.qubits}"
        )
    params = np.asarray(params, dtype=np.float64)
    if params.shape != (circuit.param_count,):
        raise ValueError(
            f"expected {circuit.param_count} parameters, got {params.shape}"
        )
    n = circuit.qubits
    batch = np.eye(1 << n, dtype=np.complex128)  # row j evolves from |j>
    for gate in circuit.gates:
        _apply_gate_inplace(batch, n, gate, _resolve(gate, params))
    return np.ascontiguousarray(batch.T)


def probabilities(state: np.ndarray) -> np.ndarray:
    """Measurement probabilities |amp|^2 per basis index."""
    num_qubits(state)
    state = np.asarray(state, dtype=np.complex128)
    return np.abs(state) ** 2
