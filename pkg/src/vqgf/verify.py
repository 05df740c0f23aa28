"""Post-training checks: truth-table success per input and process fidelity.

Success is the probability mass on the exact expected basis state, so it is
blind to per-input phases; process fidelity is not. A circuit can score
min_success = 1 while its fidelity stays below 1.
"""

from dataclasses import dataclass

import numpy as np

from .circuit import Circuit
from .cost import TruthTable
from .statevector import basis_state, circuit_unitary, run_circuit


@dataclass(frozen=True)
class TruthTableReport:
    """Per-input success probabilities with their min and mean."""

    per_input: tuple[tuple[int, float], ...]
    min_success: float
    mean_success: float


def truth_table_report(ansatz: Circuit, params, table: TruthTable) -> TruthTableReport:
    """Simulate every basis input and score |<out_k|V|in_k>|^2."""
    if ansatz.qubits != table.qubits:
        raise ValueError(
            f"ansatz has {ansatz.qubits} qubits but table has {table.qubits}"
        )
    entries = []
    for inp, out in sorted(table.pairs):
        final = run_circuit(basis_state(ansatz.qubits, inp), ansatz, params)
        entries.append((inp, float(np.abs(final[out]) ** 2)))
    successes = [p for _, p in entries]
    return TruthTableReport(
        per_input=tuple(entries),
        min_success=min(successes),
        mean_success=float(np.mean(successes)),
    )


def process_fidelity(ansatz: Circuit, params, target: np.ndarray) -> float:
    """|Tr(target^dag V)|^2 / d^2, the complement of the Hilbert-Schmidt cost."""
    target = np.asarray(target, dtype=np.complex128)
    d = 1 << ansatz.qubits
    if target.shape != (d, d):
        raise ValueError(
            f"target shape {target.shape} does not match {ansatz.qubits}-qubit ansatz"
        )
    v = circuit_unitary(ansatz, params)
    overlap = np.trace(target.conj().T @ v)
    return float((abs(overlap) ** 2) / (d * d))
