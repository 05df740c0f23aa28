"""Acceptance suite: one test per release criterion, each printing a
PASS/FAIL line (visible with pytest -s or on failure).

Convergence criteria are seed-tolerant: they pass if at least one of five
fixed seeds reaches the stated cost level. Everything else is exact up to
the stated tolerance.
"""

import time

import numpy as np
import pytest

from vqgf.circuit import (
    Circuit,
    GateSpec,
    basic_entangled_ansatz,
    mcx_circuit,
    nielsen_chuang_toffoli,
)
from vqgf.cost import (
    evaluation_state,
    hst_cost,
    observable_cost_direct,
    observable_expectation,
    toffoli_truth_table,
)
from vqgf.optimize import (
    OptimizerConfig,
    StopMode,
    StopReason,
    finite_diff_gradient,
    gradient_descent,
    init_params,
    param_shift_gradient,
)
from vqgf.statevector import circuit_unitary, run_circuit, zero_state
from vqgf.verify import truth_table_report

from oracles import circuit_unitary_oracle, classical_action, random_circuit

SEEDS = (1, 2, 3, 4, 5)


def _criterion(name, ok, detail=""):
    print(f"[{'PASS' if ok else 'FAIL'}] {name}: {detail}")
    assert ok, f"{name}: {detail}"


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # absorb one-time jit compilation so the timed criteria measure math
    run_circuit(zero_state(2), basic_entangled_ansatz(2, 1), np.zeros(6))
    circuit_unitary(mcx_circuit(2))


def test_criterion_1_observable_dichotomy():
    start = time.perf_counter()
    worst = 0.0
    for n in (2, 3, 5):
        table = toffoli_truth_table(n)
        direct = observable_cost_direct(mcx_circuit(n), [], table)
        doubled = observable_expectation(evaluation_state(mcx_circuit(n), []), table)
        worst = max(worst, abs(direct + 1.0), abs(doubled + 1.0))
    x_all = Circuit(3, tuple(GateSpec("x", (q,)) for q in range(3)))
    table3 = toffoli_truth_table(3)
    worst = max(worst, abs(observable_cost_direct(x_all, [], table3) - 1.0))
    worst = max(
        worst,
        abs(observable_expectation(evaluation_state(x_all, []), table3) - 1.0),
    )
    elapsed = time.perf_counter() - start
    _criterion(
        "criterion 1 (observable dichotomy, n=2/3/5)",
        worst <= 1e-10 and elapsed < 1.0,
        f"max deviation {worst:.2e}, {elapsed:.2f}s",
    )


def test_criterion_2_nielsen_chuang_oracle():
    start = time.perf_counter()
    nc = nielsen_chuang_toffoli()
    cost = hst_cost(nc, [], circuit_unitary(mcx_circuit(3)))
    report = truth_table_report(nc, [], toffoli_truth_table(3))
    elapsed = time.perf_counter() - start
    _criterion(
        "criterion 2 (15-gate Toffoli reference)",
        cost <= 1e-10 and abs(report.min_success - 1.0) <= 1e-10 and elapsed < 1.0,
        f"hst={cost:.2e}, min_success={report.min_success:.12f}, {elapsed:.2f}s",
    )


def test_criterion_3_derived_constants():
    table = toffoli_truth_table(3)
    # oracle: explicit permutation matrix and classical enumeration
    mcx_oracle = circuit_unitary_oracle(mcx_circuit(3))
    hst_expected = 1.0 - abs(np.trace(mcx_oracle)) ** 2 / 64.0
    hst_got = hst_cost(Circuit(3), [], circuit_unitary(mcx_circuit(3)))

    empty_hits = sum(1 for inp, out in table.pairs if inp == out)
    obs_empty_expected = 1.0 - 2.0 * empty_hits / 8.0
    obs_empty_got = observable_cost_direct(Circuit(3), [], table)

    x_target = Circuit(3, (GateSpec("x", (2,)),))
    x_hits = sum(1 for inp, out in table.pairs if classical_action(x_target, inp) == out)
    obs_x_expected = 1.0 - 2.0 * x_hits / 8.0
    obs_x_got = observable_cost_direct(x_target, [], table)

    ok = (
        abs(hst_expected - 0.4375) == 0.0
        and abs(hst_got - 0.4375) <= 1e-12
        and abs(obs_empty_expected + 0.5) == 0.0
        and abs(obs_empty_got + 0.5) <= 1e-12
        and abs(obs_x_expected - 0.5) == 0.0
        and abs(obs_x_got - 0.5) <= 1e-12
    )
    _criterion(
        "criterion 3 (derived cost constants)",
        ok,
        f"hst(empty)={hst_got}, obs(empty)={obs_empty_got}, obs(x-target)={obs_x_got}",
    )


def test_criterion_4_gradient_exactness():
    ansatz = basic_entangled_ansatz(3, 2)
    table = toffoli_truth_table(3)
    target = circuit_unitary(mcx_circuit(3))
    costs = {
        "hst": lambda p: hst_cost(ansatz, p, target),
        "observable": lambda p: observable_cost_direct(ansatz, p, table),
    }
    worst = 0.0
    for seed in range(10):
        params = init_params(ansatz.param_count, seed)
        for cost in costs.values():
            shift = param_shift_gradient(cost, params)
            diff = finite_diff_gradient(cost, params, h=1e-5)
            worst = max(worst, float(np.max(np.abs(shift - diff))))
    _criterion(
        "criterion 4 (parameter-shift exactness, 20 instances)",
        worst <= 1e-6,
        f"max |shift - central diff| = {worst:.2e}",
    )


def test_criterion_5_cost_route_equivalence():
    worst = 0.0
    for n in (2, 3):
        ansatz = basic_entangled_ansatz(n, 2)
        table = toffoli_truth_table(n)
        rng = np.random.default_rng(1000 + n)
        for _ in range(25):
            params = rng.uniform(0, 2 * np.pi, ansatz.param_count)
            direct = observable_cost_direct(ansatz, params, table)
            doubled = observable_expectation(evaluation_state(ansatz, params), table)
            worst = max(worst, abs(direct - doubled))
    _criterion(
        "criterion 5 (direct vs doubled-register, 50 vectors)",
        worst <= 1e-10,
        f"max |direct - doubled| = {worst:.2e}",
    )


def test_criterion_6_observable_training_run():
    start = time.perf_counter()
    ansatz = basic_entangled_ansatz(3, 8)
    table = toffoli_truth_table(3)
    cost = lambda p: observable_cost_direct(ansatz, p, table)
    # stop threshold -1 + 0.05 = -0.95, the criterion's cost level
    config = OptimizerConfig(learning_rate=0.1, max_steps=500, observable_stop_eps=0.05)
    winner = None
    for seed in SEEDS:
        trace = gradient_descent(cost, init_params(ansatz.param_count, seed), config, StopMode.OBSERVABLE_FLOOR)
        if trace.stop_reason is StopReason.CONVERGED:
            winner = (seed, trace)
            break
    elapsed = time.perf_counter() - start
    if winner is None:
        _criterion("criterion 6 (n=3 observable training)", False, "no seed reached -0.95")
    seed, trace = winner
    report = truth_table_report(ansatz, trace.final_params, table)
    # learned circuit must route |111> mostly onto |110>
    from vqgf.statevector import basis_state, probabilities

    probs = probabilities(run_circuit(basis_state(3, 7), ansatz, trace.final_params))
    _criterion(
        "criterion 6 (n=3 observable training)",
        trace.final_cost <= -0.95
        and report.min_success >= 0.90
        and int(np.argmax(probs)) == 6
        and elapsed < 300.0,
        f"seed {seed} cost={trace.final_cost:.4f} after {trace.steps_taken} steps, "
        f"min_success={report.min_success:.4f}, p(|110>||111>)={probs[6]:.3f}, {elapsed:.1f}s",
    )


def test_criterion_7_hst_training_run():
    start = time.perf_counter()
    ansatz = basic_entangled_ansatz(3, 8)
    target = circuit_unitary(mcx_circuit(3))
    cost = lambda p: hst_cost(ansatz, p, target)
    config = OptimizerConfig(learning_rate=0.1, max_steps=2000, hst_stop_eps=0.099)
    winner = None
    for seed in SEEDS:
        trace = gradient_descent(cost, init_params(ansatz.param_count, seed), config, StopMode.HST_EPS)
        bounded = np.all(trace.costs >= -1e-12) and np.all(trace.costs <= 1.0 + 1e-12)
        assert bounded, "hst trace left [0, 1]"
        if trace.stop_reason is StopReason.CONVERGED:
            winner = (seed, trace)
            break
    elapsed = time.perf_counter() - start
    if winner is None:
        _criterion("criterion 7 (n=3 hst training)", False, "no seed got below 0.1")
    seed, trace = winner
    # downward trend: strictly better than where it started
    trend_ok = trace.final_cost < trace.costs[0]
    _criterion(
        "criterion 7 (n=3 hst training)",
        trace.final_cost < 0.1 and trend_ok,
        f"seed {seed} cost={trace.final_cost:.4f} after {trace.steps_taken} steps, {elapsed:.1f}s",
    )


def test_criterion_8_invariant_fuzz():
    rng = np.random.default_rng(2024)
    violations = 0
    cases = 0

    # 400 norm-preservation cases
    for _ in range(400):
        circuit, params = random_circuit(rng, max_gates=40)
        out = run_circuit(zero_state(circuit.qubits), circuit, params)
        cases += 1
        if abs(np.linalg.norm(out) - 1.0) > 1e-9:
            violations += 1

    # 300 unitarity cases
    for _ in range(300):
        circuit, params = random_circuit(rng, max_gates=25)
        u = circuit_unitary(circuit, params)
        cases += 1
        if not np.allclose(u.conj().T @ u, np.eye(u.shape[0]), atol=1e-9):
            violations += 1

    # 140 + 140 cost-range cases
    for _ in range(140):
        circuit, params = random_circuit(rng, qubits=3, max_gates=25)
        value = hst_cost(circuit, params, circuit_unitary(mcx_circuit(3)))
        cases += 1
        if not -1e-12 <= value <= 1.0 + 1e-12:
            violations += 1
    table3 = toffoli_truth_table(3)
    for _ in range(140):
        circuit, params = random_circuit(rng, qubits=3, max_gates=25)
        value = observable_cost_direct(circuit, params, table3)
        cases += 1
        if not -1.0 - 1e-12 <= value <= 1.0 + 1e-12:
            violations += 1

    # 20 determinism cases: repeated seeded runs must be bit-identical
    ansatz = basic_entangled_ansatz(2, 1)
    table2 = toffoli_truth_table(2)
    cost = lambda p: observable_cost_direct(ansatz, p, table2)
    config = OptimizerConfig(learning_rate=0.1, max_steps=3)
    for seed in range(20):
        first = gradient_descent(cost, init_params(6, seed), config, StopMode.OBSERVABLE_FLOOR)
        second = gradient_descent(cost, init_params(6, seed), config, StopMode.OBSERVABLE_FLOOR)
        cases += 1
        if not (
            np.array_equal(first.costs, second.costs)
            and np.array_equal(first.final_params, second.final_params)
        ):
            violations += 1

    _criterion(
        "criterion 8 (invariant fuzz)",
        cases == 1000 and violations == 0,
        f"{cases} cases, {violations} violations",
    )


def test_criterion_9_five_qubit_feasibility():
    ansatz = basic_entangled_ansatz(5, 8)
    table = toffoli_truth_table(5)
    cost = lambda p: observable_cost_direct(ansatz, p, table)
    params = init_params(ansatz.param_count, 7)
    start = time.perf_counter()
    value = cost(params)
    grad = param_shift_gradient(cost, params)
    elapsed = time.perf_counter() - start
    _criterion(
        "criterion 9 (n=5 single step budget)",
        elapsed < 30.0 and np.isfinite(value) and np.all(np.isfinite(grad)),
        f"cost + {grad.size}-component gradient in {elapsed:.2f}s",
    )
