"""The two trainable costs and the Toffoli truth table they are built on.

The Hilbert-Schmidt cost compares the full unitary of the trial circuit
against a target matrix. The observable cost checks only the truth-table
action |<out_k|V|in_k>|^2, so it accepts solutions that are correct up to
a phase per input; it is evaluated either directly from the circuit
unitary or as the expectation of the doubled-register projector observable
on the fanned-out evaluation state. The observable is never materialized:
each projector is rank one in the computational basis, so the expectation
is a sum of 2**n squared amplitudes.
"""

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit, evaluation_prefix
from .statevector import MAX_QUBITS, circuit_unitary, run_circuit, zero_state


@dataclass(frozen=True)
class TruthTable:
    """(input index, output index) pairs of a classical reversible gate."""

    qubits: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        object.__setattr__(
            self, "pairs", tuple((int(i), int(o)) for i, o in self.pairs)
        )
        d = 1 << self.qubits
        if sorted(i for i, _ in self.pairs) != list(range(d)):
            raise ValueError("truth table inputs must cover each basis index once")
        if sorted(o for _, o in self.pairs) != list(range(d)):
            raise ValueError("truth table outputs must be a permutation")


def toffoli_truth_table(qubits: int) -> TruthTable:
    """Identity on 0..2**n-3 plus the swap of the last two basis indices."""
    if qubits < 2:
        raise ValueError(f"Toffoli table needs at least 2 qubits, got {qubits}")
    d = 1 << qubits
    pairs = [(i, i) for i in range(d - 2)]
    pairs += [(d - 2, d - 1), (d - 1, d - 2)]
    return TruthTable(qubits, tuple(pairs))


def observable_indices(table: TruthTable) -> np.ndarray:
    """Doubled-register basis indices marked by the projector sum.

    Register 1 (ansatz output) occupies the high bits, register 2 (copied
    input) the low bits, so pair k sits at out_k * 2**n + in_k.
    """
    n = table.qubits
    return np.array([out * (1 << n) + inp for inp, out in table.pairs], dtype=np.intp)


def hst_cost(ansatz: Circuit, params, target: np.ndarray) -> float:
    """Hilbert-Schmidt cost 1 - |Tr(target^dag V)|^2 / d^2, in [0, 1]."""
    target = np.asarray(target, dtype=np.complex128)
    d = 1 << ansatz.qubits
    if target.shape != (d, d):
        raise ValueError(
            f"target shape {target.shape} does not match {ansatz.qubits}-qubit ansatz"
        )
    v = circuit_unitary(ansatz, params)
    overlap = np.trace(target.conj().T @ v)
    return float(1.0 - (abs(overlap) ** 2) / (d * d))


def evaluation_state(ansatz: Circuit, params) -> np.ndarray:
    """Fan out all inputs into a second register, then run the ansatz.

    Output is (1/sqrt(2**n)) * sum_j (V|j>) otimes |j> over 2n qubits,
    with the ansatz register in the high bits.
    """
    n = ansatz.qubits
    if 2 * n > MAX_QUBITS:
        raise ValueError(
            f"doubled register needs {2 * n} qubits, cap is {MAX_QUBITS}"
        )
    prefix = evaluation_prefix(n)
    combined = Circuit(2 * n, prefix.gates + ansatz.gates, ansatz.param_count)
    return run_circuit(zero_state(2 * n), combined, params)


def observable_expectation(state: np.ndarray, table: TruthTable) -> float:
    """Expectation of the pair-projector observable on a doubled-register state.

    Equals 1 - 2 * sum_k |amp at (out_k, in_k)|^2, so it is -1 exactly when
    all amplitude sits on correct truth-table pairs and +1 when none does.
    """
    state = np.asarray(state, dtype=np.complex128)
    n = table.qubits
    if state.shape != (1 << (2 * n),):
        raise ValueError(
            f"state has {state.size} amplitudes, expected {1 << (2 * n)} "
            f"for a doubled {n}-qubit register"
        )
    hit = np.abs(state[observable_indices(table)]) ** 2
    return float(1.0 - 2.0 * np.sum(hit))


def observable_cost_direct(ansatz: Circuit, params, table: TruthTable) -> float:
    """Observable cost from per-basis-input simulation, no doubled register.

    Returns 1 - (2/2**n) * sum_k |<out_k|V|in_k>|^2, which matches
    observable_expectation on the evaluation state.
    """
    if ansatz.qubits != table.qubits:
        raise ValueError(
            f"ansatz has {ansatz.qubits} qubits but table has {table.qubits}"
        )
    u = circuit_unitary(ansatz, params)
    ins = [inp for inp, _ in table.pairs]
    outs = [out for _, out in table.pairs]
    hit = np.abs(u[outs, ins]) ** 2
    return float(1.0 - 2.0 * np.sum(hit) / (1 << table.qubits))
