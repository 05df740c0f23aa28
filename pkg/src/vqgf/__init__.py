"""Variational synthesis of multi-controlled Toffoli gates from U3 + CNOT circuits."""

from .circuit import (
    Circuit,
    GateSpec,
    basic_entangled_ansatz,
    depth,
    evaluation_prefix,
    mcx_circuit,
    nielsen_chuang_toffoli,
    strip_trailing_cnots,
    strongly_entangled_ansatz,
)
from .cost import (
    TruthTable,
    evaluation_state,
    hst_cost,
    observable_cost_direct,
    observable_expectation,
    observable_indices,
    toffoli_truth_table,
)
from .optimize import (
    NonFiniteCostError,
    OptimizationTrace,
    OptimizerConfig,
    StopMode,
    StopReason,
    finite_diff_gradient,
    gradient_descent,
    init_params,
    param_shift_gradient,
)
from .statevector import (
    MAX_DENSE_QUBITS,
    MAX_QUBITS,
    apply_gate,
    basis_state,
    circuit_unitary,
    num_qubits,
    probabilities,
    run_circuit,
    u3_matrix,
    zero_state,
)
from .verify import TruthTableReport, process_fidelity, truth_table_report

__version__ = "0.1.0"

__all__ = [
    "Circuit",
    "GateSpec",
    "MAX_DENSE_QUBITS",
    "MAX_QUBITS",
    "NonFiniteCostError",
    "OptimizationTrace",
    "OptimizerConfig",
    "StopMode",
    "StopReason",
    "TruthTable",
    "TruthTableReport",
    "apply_gate",
    "basic_entangled_ansatz",
    "basis_state",
    "circuit_unitary",
    "depth",
    "evaluation_prefix",
    "evaluation_state",
    "finite_diff_gradient",
    "gradient_descent",
    "hst_cost",
    "init_params",
    "mcx_circuit",
    "nielsen_chuang_toffoli",
    "num_qubits",
    "observable_cost_direct",
    "observable_expectation",
    "observable_indices",
    "param_shift_gradient",
    "probabilities",
    "process_fidelity",
    "run_circuit",
    "strip_trailing_cnots",
    "strongly_entangled_ansatz",
    "toffoli_truth_table",
    "truth_table_report",
    "u3_matrix",
    "zero_state",
]
