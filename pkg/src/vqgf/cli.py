"""Command-line front end: synthesize, verify, and export learned circuits.

File formats owned here:
  params_<seed>.json  {version, qubits, ansatz, layers, method, seed,
                       final_cost, params[, strip_trailing_cnots]}
  trace_<seed>.csv    header "step,cost", one row per recorded step
  QASM export         OPENQASM 2.0 subset with only u3 and cx statements

Exit codes: 0 success / any seed converged, 1 invalid config or malformed
file, 2 no seed converged (or verify below threshold), 3 params file does
not match its declared ansatz shape.

The VQGF_THREADS environment variable caps how many seeds run in parallel
(default 1, sequential).
"""

import argparse
import json
import os
import re
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .circuit import (
    Circuit,
    GateSpec,
    basic_entangled_ansatz,
    mcx_circuit,
    strip_trailing_cnots,
    strongly_entangled_ansatz,
)
from .cost import hst_cost, observable_cost_direct, toffoli_truth_table
from .optimize import (
    OptimizerConfig,
    StopMode,
    StopReason,
    gradient_descent,
    init_params,
)
from .statevector import MAX_DENSE_QUBITS, circuit_unitary
from .verify import process_fidelity, truth_table_report

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NO_CONVERGENCE = 2
EXIT_SHAPE_MISMATCH = 3

METHODS = ("hst", "observable")
ANSATZ_BUILDERS = {
    "basic": basic_entangled_ansatz,
    "strong": strongly_entangled_ansatz,
}


class ParamsFileError(ValueError):
    """Malformed or unreadable params file (exit 1)."""


class ShapeMismatchError(ValueError):
    """Params file does not match its declared ansatz shape (exit 3)."""


# ---------------------------------------------------------------------------
# file formats


def write_params_file(path, payload: dict) -> None:
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def read_params_file(path) -> dict:
    try:
        payload = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise ParamsFileError(f"cannot read params file {path}: {exc}") from exc
    if not isinstance(payload, dict):
        raise ParamsFileError(f"params file {path} is not a JSON object")
    required = {
        "version": int,
        "qubits": int,
        "ansatz": str,
        "layers": int,
        "method": str,
        "seed": int,
        "final_cost": (int, float),
        "params": list,
    }
    for key, kind in required.items():
        if key not in payload:
            raise ParamsFileError(f"params file {path} is missing key {key!r}")
        if not isinstance(payload[key], kind):
            raise ParamsFileError(f"params file {path}: key {key!r} has wrong type")
    if payload["version"] != 1:
        raise ParamsFileError(f"unsupported params file version {payload['version']}")
    if not all(isinstance(p, (int, float)) for p in payload["params"]):
        raise ParamsFileError(f"params file {path}: params must be numbers")
    return payload


def circuit_from_payload(payload: dict) -> tuple[Circuit, np.ndarray]:
    """Rebuild the declared ansatz and its trained parameter vector."""
    builder = ANSATZ_BUILDERS.get(payload["ansatz"])
    if builder is None:
        raise ShapeMismatchError(f"unknown ansatz {payload['ansatz']!r}")
    try:
        circuit = builder(payload["qubits"], payload["layers"])
    except ValueError as exc:
        raise ShapeMismatchError(str(exc)) from exc
    if payload.get("strip_trailing_cnots"):
        circuit = strip_trailing_cnots(circuit)
    params = np.asarray(payload["params"], dtype=np.float64)
    if params.shape != (circuit.param_count,):
        raise ShapeMismatchError(
            f"params file carries {params.size} angles but the declared "
            f"ansatz takes {circuit.param_count}"
        )
    return circuit, params


def write_trace_file(path, costs) -> None:
    lines = ["step,cost"]
    lines += [f"{step},{cost:.12e}" for step, cost in enumerate(costs)]
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def _fmt_angle(value: float) -> str:
    return format(float(value), ".12g")


def circuit_to_qasm(circuit: Circuit, params=()) -> str:
    """Emit the OPENQASM 2.0 subset: one q register, u3 and cx lines only.

    H and X gates are emitted as their exact u3 forms; mcx has no u3/cx
    expansion here and is rejected.
    """
    params = np.asarray(params, dtype=np.float64)
    lines = [
        "OPENQASM 2.0;",
        'include "qelib1.inc";',
        f"qreg q[{circuit.qubits}];",
    ]
    for gate in circuit.gates:
        if gate.kind == "u3":
            if gate.angles is not None:
                theta, phi, lam = gate.angles
            else:
                s0, s1, s2 = gate.param_slots
                theta, phi, lam = params[s0], params[s1], params[s2]
            lines.append(
                f"u3({_fmt_angle(theta)},{_fmt_angle(phi)},{_fmt_angle(lam)}) "
                f"q[{gate.wires[0]}];"
            )
        elif gate.kind == "cnot":
            lines.append(f"cx q[{gate.wires[0]}],q[{gate.wires[1]}];")
        elif gate.kind == "h":
            lines.append(f"u3({_fmt_angle(np.pi / 2)},0,{_fmt_angle(np.pi)}) q[{gate.wires[0]}];")
        elif gate.kind == "x":
            lines.append(f"u3({_fmt_angle(np.pi)},0,{_fmt_angle(np.pi)}) q[{gate.wires[0]}];")
        else:
            raise ValueError(f"{gate.kind} gate has no u3/cx form")
    return "\n".join(lines) + "\n"


_QREG_RE = re.compile(r"^qreg\s+q\[(\d+)\]\s*;$")
_U3_RE = re.compile(r"^u3\(([^)]*)\)\s+q\[(\d+)\]\s*;$")
_CX_RE = re.compile(r"^cx\s+q\[(\d+)\]\s*,\s*q\[(\d+)\]\s*;$")


def circuit_from_qasm(text: str) -> Circuit:
    """Parse the subset emitted by circuit_to_qasm back into a circuit."""
    qubits = None
    gates = []
    for raw in text.splitlines():
        line = raw.strip()
        if not line or line.startswith("//"):
            continue
        if line.startswith("OPENQASM") or line.startswith("include"):
            continue
        m = _QREG_RE.match(line)
        if m:
            qubits = int(m.group(1))
            continue
        m = _U3_RE.match(line)
        if m:
            angles = [float(a) for a in m.group(1).split(",")]
            if len(angles) != 3:
                raise ValueError(f"u3 takes 3 angles: {line!r}")
            gates.append(GateSpec("u3", (int(m.group(2)),), angles=tuple(angles)))
            continue
        m = _CX_RE.match(line)
        if m:
            gates.append(GateSpec("cnot", (int(m.group(1)), int(m.group(2)))))
            continue
        raise ValueError(f"unsupported QASM statement: {line!r}")
    if qubits is None:
        raise ValueError("QASM text declares no qreg")
    return Circuit(qubits, tuple(gates), 0)


def circuit_to_json(circuit: Circuit, params=()) -> str:
    """Fixed-angle JSON form of a circuit, free parameters bound in."""
    params = np.asarray(params, dtype=np.float64)
    gates = []
    for gate in circuit.gates:
        entry = {"kind": gate.kind, "wires": list(gate.wires)}
        if gate.kind == "u3":
            if gate.angles is not None:
                entry["angles"] = [float(a) for a in gate.angles]
            else:
                entry["angles"] = [float(params[s]) for s in gate.param_slots]
        gates.append(entry)
    return json.dumps(
        {"version": 1, "qubits": circuit.qubits, "gates": gates}, indent=2
    ) + "\n"


def circuit_from_json(text: str) -> Circuit:
    payload = json.loads(text)
    gates = []
    for entry in payload["gates"]:
        kind = entry["kind"]
        wires = tuple(entry["wires"])
        if kind == "u3":
            gates.append(GateSpec("u3", wires, angles=tuple(entry["angles"])))
        else:
            gates.append(GateSpec(kind, wires))
    return Circuit(payload["qubits"], tuple(gates), 0)


# ---------------------------------------------------------------------------
# synth


@dataclass(frozen=True)
class SynthConfig:
    qubits: int
    method: str
    ansatz: str
    layers: int
    learning_rate: float
    max_steps: int
    hst_stop_eps: float
    observable_stop_eps: float
    seeds: tuple[int, ...]
    strip_trailing_cnots: bool
    out_dir: Path
    init_from: Path | None

    def validate(self) -> None:
        if not 2 <= self.qubits <= MAX_DENSE_QUBITS:
            raise ValueError(
                f"--qubits must be in [2, {MAX_DENSE_QUBITS}], got {self.qubits}"
            )
        if self.method not in METHODS:
            raise ValueError(f"--method must be one of {METHODS}, got {self.method!r}")
        if self.ansatz not in ANSATZ_BUILDERS:
            raise ValueError(
                f"--ansatz must be one of {tuple(ANSATZ_BUILDERS)}, got {self.ansatz!r}"
            )
        if self.layers < 1:
            raise ValueError(f"--layers must be >= 1, got {self.layers}")
        if not self.seeds:
            raise ValueError("--seeds needs at least one seed")
        # delegate rate/step/eps checks
        OptimizerConfig(
            learning_rate=self.learning_rate,
            max_steps=self.max_steps,
            hst_stop_eps=self.hst_stop_eps,
            observable_stop_eps=self.observable_stop_eps,
        )


def _max_workers(n_jobs: int) -> int:
    cap = os.environ.get("VQGF_THREADS")
    if cap is None:
        return 1
    try:
        cap = int(cap)
    except ValueError:
        raise ValueError(f"VQGF_THREADS must be an integer, got {cap!r}")
    return max(1, min(n_jobs, cap))


def _run_one_seed(config: SynthConfig, ansatz: Circuit, cost, stop_mode, table, seed, start):
    opt = OptimizerConfig(
        learning_rate=config.learning_rate,
        max_steps=config.max_steps,
        hst_stop_eps=config.hst_stop_eps,
        observable_stop_eps=config.observable_stop_eps,
        seed=seed,
    )
    if start is not None:
        p0 = start.copy()
    else:
        p0 = init_params(ansatz.param_count, seed)
    trace = gradient_descent(cost, p0, opt, stop_mode)
    report = truth_table_report(ansatz, trace.final_params, table)
    payload = {
        "version": 1,
        "qubits": config.qubits,
        "ansatz": config.ansatz,
        "layers": config.layers,
        "method": config.method,
        "seed": seed,
        "final_cost": trace.final_cost,
        "params": [float(p) for p in trace.final_params],
    }
    if config.strip_trailing_cnots:
        payload["strip_trailing_cnots"] = True
    write_params_file(config.out_dir / f"params_{seed}.json", payload)
    write_trace_file(config.out_dir / f"trace_{seed}.csv", trace.costs)
    return trace, report


def cmd_synth(args) -> int:
    config = SynthConfig(
        qubits=args.qubits,
        method=args.method,
        ansatz=args.ansatz,
        layers=args.layers,
        learning_rate=args.learning_rate,
        max_steps=args.steps,
        hst_stop_eps=args.hst_stop_eps,
        observable_stop_eps=args.observable_stop_eps,
        seeds=tuple(args.seeds),
        strip_trailing_cnots=args.strip_trailing_cnots,
        out_dir=Path(args.out),
        init_from=Path(args.init_from) if args.init_from else None,
    )
    config.validate()
    config.out_dir.mkdir(parents=True, exist_ok=True)

    ansatz = ANSATZ_BUILDERS[config.ansatz](config.qubits, config.layers)
    if config.strip_trailing_cnots:
        ansatz = strip_trailing_cnots(ansatz)
    table = toffoli_truth_table(config.qubits)
    if config.method == "hst":
        target = circuit_unitary(mcx_circuit(config.qubits))
        cost = lambda p: hst_cost(ansatz, p, target)
        stop_mode = StopMode.HST_EPS
    else:
        cost = lambda p: observable_cost_direct(ansatz, p, table)
        stop_mode = StopMode.OBSERVABLE_FLOOR

    start = None
    if config.init_from is not None:
        payload = read_params_file(config.init_from)
        start = np.asarray(payload["params"], dtype=np.float64)
        if start.shape != (ansatz.param_count,):
            raise ShapeMismatchError(
                f"--init-from carries {start.size} angles but the ansatz "
                f"takes {ansatz.param_count}"
            )

    workers = _max_workers(len(config.seeds))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            futures = [
                pool.submit(_run_one_seed, config, ansatz, cost, stop_mode, table, s, start)
                for s in config.seeds
            ]
            results = [f.result() for f in futures]
    else:
        results = [
            _run_one_seed(config, ansatz, cost, stop_mode, table, s, start)
            for s in config.seeds
        ]

    any_converged = False
    for seed, (trace, report) in zip(config.seeds, results):
        converged = trace.stop_reason is StopReason.CONVERGED
        any_converged = any_converged or converged
        print(
            f"seed={seed} method={config.method} final_cost={trace.final_cost:.12e} "
            f"stop={trace.stop_reason.value} steps={trace.steps_taken} "
            f"min_success={report.min_success:.6f} mean_success={report.mean_success:.6f}"
        )
    return EXIT_OK if any_converged else EXIT_NO_CONVERGENCE


# ---------------------------------------------------------------------------
# verify


def cmd_verify(args) -> int:
    payload = read_params_file(args.params_file)
    circuit, params = circuit_from_payload(payload)
    if args.qubits is not None and args.qubits != payload["qubits"]:
        raise ShapeMismatchError(
            f"--qubits {args.qubits} does not match file qubits {payload['qubits']}"
        )
    n = payload["qubits"]
    table = toffoli_truth_table(n)
    report = truth_table_report(circuit, params, table)
    fidelity = process_fidelity(circuit, params, circuit_unitary(mcx_circuit(n)))
    passed = report.min_success >= args.threshold
    out = {
        "qubits": n,
        "ansatz": payload["ansatz"],
        "layers": payload["layers"],
        "method": payload["method"],
        "seed": payload["seed"],
        "min_success": report.min_success,
        "mean_success": report.mean_success,
        "process_fidelity": fidelity,
        "per_input": [
            {"input": inp, "success": suc} for inp, suc in report.per_input
        ],
        "threshold": args.threshold,
        "passed": passed,
    }
    print(json.dumps(out, indent=2))
    return EXIT_OK if passed else EXIT_NO_CONVERGENCE


# ---------------------------------------------------------------------------
# export


def cmd_export(args) -> int:
    payload = read_params_file(args.params_file)
    circuit, params = circuit_from_payload(payload)
    if args.format == "qasm":
        sys.stdout.write(circuit_to_qasm(circuit, params))
    elif args.format == "json":
        sys.stdout.write(circuit_to_json(circuit, params))
    else:
        raise ValueError(f"--format must be 'qasm' or 'json', got {args.format!r}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _parse_seeds(text: str) -> list[int]:
    try:
        seeds = [int(part) for part in text.split(",") if part.strip() != ""]
    except ValueError:
        raise argparse.ArgumentTypeError(f"seeds must be comma-separated ints: {text!r}")
    return seeds


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="vqgf",
        description="Learn U3+CNOT decompositions of multi-controlled Toffoli gates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    synth = sub.add_parser("synth", help="run the variational synthesis loop")
    synth.add_argument("--qubits", type=int, required=True)
    synth.add_argument("--method", required=True, help="hst or observable")
    synth.add_argument("--ansatz", default="basic", help="basic or strong")
    synth.add_argument("--layers", type=int, default=8)
    synth.add_argument("--steps", type=int, default=500)
    synth.add_argument("--learning-rate", type=float, default=0.01)
    synth.add_argument("--hst-stop-eps", type=float, default=1e-6)
    synth.add_argument("--observable-stop-eps", type=float, default=1e-3)
    synth.add_argument("--seeds", type=_parse_seeds, default=[0])
    synth.add_argument("--strip-trailing-cnots", action="store_true")
    synth.add_argument("--init-from", default=None, metavar="PARAMS_JSON")
    synth.add_argument("--out", default=".", metavar="DIR")
    synth.set_defaults(func=cmd_synth)

    verify = sub.add_parser("verify", help="score a saved params file")
    verify.add_argument("params_file")
    verify.add_argument("--threshold", type=float, default=0.97)
    verify.add_argument("--qubits", type=int, default=None)
    verify.set_defaults(func=cmd_verify)

    export = sub.add_parser("export", help="print a saved circuit as text")
    export.add_argument("params_file")
    export.add_argument("--format", default="qasm", help="qasm or json")
    export.set_defaults(func=cmd_export)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ShapeMismatchError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SHAPE_MISMATCH
    except (ParamsFileError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
