"""Circuit representation and builders.

Gates are specified over the {U3, CNOT, H, X, MCX} alphabet. A U3 gate
either references three slots of a global parameter vector (trainable) or
carries three fixed angles (constant). Circuits are immutable after
construction and validate their own wiring and parameter-slot layout.

Qubit 0 is the leftmost / most significant ket position throughout:
|q0 q1 ... q_{n-1}> has basis index sum(q_i * 2**(n-1-i)), so |110> is 6.
"""

from dataclasses import dataclass
from math import pi

GATE_KINDS = ("u3", "cnot", "h", "x", "mcx")

_ARITY = {"u3": 1, "h": 1, "x": 1}  # cnot fixed at 2, mcx >= 2


@dataclass(frozen=True)
class GateSpec:
    """One gate: kind, wires it acts on, and its U3 parameter binding.

    For U3 gates exactly one of `param_slots` (three indices into the
    circuit's parameter vector) or `angles` (three fixed radians) is set.
    Wire order for cnot is (control, target); for mcx it is
    (control, ..., control, target).
    """

    kind: str
    wires: tuple[int, ...]
    param_slots: tuple[int, ...] = ()
    angles: tuple[float, float, float] | None = None

    def __post_init__(self):
        object.__setattr__(self, "wires", tuple(int(w) for w in self.wires))
        object.__setattr__(
            self, "param_slots", tuple(int(s) for s in self.param_slots)
        )
        if self.angles is not None:
            object.__setattr__(
                self, "angles", tuple(float(a) for a in self.angles)
            )
        if self.kind not in GATE_KINDS:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        if any(w < 0 for w in self.wires):
            raise ValueError(f"negative wire index in {self.wires}")
        if len(set(self.wires)) != len(self.wires):
            raise ValueError(f"duplicate wires in {self.kind} gate: {self.wires}")
        if self.kind in _ARITY:
            if len(self.wires) != _ARITY[self.kind]:
                raise ValueError(f"{self.kind} gate takes 1 wire, got {self.wires}")
        elif self.kind == "cnot":
            if len(self.wires) != 2:
                raise ValueError(f"cnot takes (control, target), got {self.wires}")
        else:  # mcx
            if len(self.wires) < 2:
                raise ValueError("mcx needs at least one control and a target")
        if self.kind == "u3":
            has_slots = len(self.param_slots) > 0
            has_angles = self.angles is not None
            if has_slots == has_angles:
                raise ValueError("u3 gate needs param_slots or angles, not both")
            if has_slots and len(self.param_slots) != 3:
                raise ValueError(f"u3 takes 3 param slots, got {self.param_slots}")
            if has_angles and len(self.angles) != 3:
                raise ValueError(f"u3 takes 3 angles, got {self.angles}")
        elif self.param_slots or self.angles is not None:
            raise ValueError(f"{self.kind} gate carries no parameters")


@dataclass(frozen=True)
class Circuit:
    """Ordered gate list over a fixed qubit count.

    Trainable U3 gates must together use parameter slots 0..param_count-1
    exactly once each, so param_count is 3x their number.
    """

    qubits: int
    gates: tuple[GateSpec, ...] = ()
    param_count: int = 0

    def __post_init__(self):
        object.__setattr__(self, "gates", tuple(self.gates))
        if self.qubits < 1:
            raise ValueError(f"circuit needs at least 1 qubit, got {self.qubits}")
        slots = []
        for gate in self.gates:
            if any(w >= self.qubits for w in gate.wires):
                raise ValueError(
                    f"gate wires {gate.wires} exceed {self.qubits}-qubit register"
                )
            slots.extend(gate.param_slots)
        if len(slots) != self.param_count or sorted(slots) != list(
            range(self.param_count)
        ):
            raise ValueError(
                f"parameter slots {sorted(slots)} are not a bijection onto "
                f"0..{self.param_count - 1}"
            )


def _u3(wire, base_slot):
    return GateSpec("u3", (wire,), param_slots=(base_slot, base_slot + 1, base_slot + 2))


def _u3_fixed(wire, theta, phi, lam):
    return GateSpec("u3", (wire,), angles=(theta, phi, lam))


def _cnot(control, target):
    return GateSpec("cnot", (control, target))


def basic_entangled_ansatz(qubits: int, layers: int) -> Circuit:
    """U3 on every qubit, then the ring of neighbor CNOTs, repeated.

    The ring closes with a CNOT from the last qubit back to the first.
    """
    if qubits < 2:
        raise ValueError(f"ansatz needs at least 2 qubits, got {qubits}")
    if layers < 1:
        raise ValueError(f"ansatz needs at least 1 layer, got {layers}")
    gates = []
    slot = 0
    for _ in range(layers):
        for q in range(qubits):
            gates.append(_u3(q, slot))
            slot += 3
        for q in range(qubits):
            gates.append(_cnot(q, (q + 1) % qubits))
    return Circuit(qubits, tuple(gates), slot)


def strongly_entangled_ansatz(qubits: int, layers: int) -> Circuit:
    """Like the basic layout, but the CNOT control-to-target offset cycles.

    Layer l uses range r = (l mod (n-1)) + 1 with CNOTs (i -> (i+r) mod n),
    so any n-1 consecutive layers cover every offset 1..n-1 once.
    """
    if qubits < 2:
        raise ValueError(f"ansatz needs at least 2 qubits, got {qubits}")
    if layers < 1:
        raise ValueError(f"ansatz needs at least 1 layer, got {layers}")
    gates = []
    slot = 0
    for layer in range(layers):
        for q in range(qubits):
            gates.append(_u3(q, slot))
            slot += 3
        r = (layer % (qubits - 1)) + 1
        for q in range(qubits):
            gates.append(_cnot(q, (q + r) % qubits))
    return Circuit(qubits, tuple(gates), slot)


def mcx_circuit(qubits: int) -> Circuit:
    """Single multi-controlled X: controls 0..n-2, target n-1."""
    if qubits < 2:
        raise ValueError(f"mcx needs at least 2 qubits, got {qubits}")
    return Circuit(qubits, (GateSpec("mcx", tuple(range(qubits))),), 0)


def nielsen_chuang_toffoli() -> Circuit:
    """The standard 15-gate Toffoli decomposition over U3 and CNOT.

    Uses H = U3(pi/2, 0, pi), T = U3(0, 0, pi/4), Tdg = U3(0, 0, -pi/4).
    All angles are fixed, so the circuit has no free parameters.
    """
    h = lambda q: _u3_fixed(q, pi / 2, 0.0, pi)
    t = lambda q: _u3_fixed(q, 0.0, 0.0, pi / 4)
    tdg = lambda q: _u3_fixed(q, 0.0, 0.0, -pi / 4)
    gates = (
        h(2),
        _cnot(1, 2),
        tdg(2),
        _cnot(0, 2),
        t(2),
        _cnot(1, 2),
        tdg(2),
        _cnot(0, 2),
        t(1),
        t(2),
        h(2),
        _cnot(0, 1),
        t(0),
        tdg(1),
        _cnot(0, 1),
    )
    return Circuit(3, gates, 0)


def evaluation_prefix(qubits: int) -> Circuit:
    """Doubled-register input fan-out: H on wires 0..n-1, then CNOT(i, n+i).

    Applied to |0...0> this correlates the two registers perfectly, putting
    amplitude 1/sqrt(2**n) on every index whose halves agree.
    """
    if qubits < 1:
        raise ValueError(f"prefix needs at least 1 qubit, got {qubits}")
    gates = [GateSpec("h", (q,)) for q in range(qubits)]
    gates += [_cnot(q, qubits + q) for q in range(qubits)]
    return Circuit(2 * qubits, tuple(gates), 0)


def depth(circuit: Circuit) -> int:
    """Longest wire-dependency chain under greedy layering.

    A gate lands on layer 1 + max(finish layer over its wires).
    """
    finish = [0] * circuit.qubits
    for gate in circuit.gates:
        layer = 1 + max(finish[w] for w in gate.wires)
        for w in gate.wires:
            finish[w] = layer
    return max(finish)


def strip_trailing_cnots(circuit: Circuit) -> Circuit:
    """Drop the maximal trailing run of CNOT gates.

    CNOTs carry no parameters, so the slot layout is unchanged.
    """
    gates = list(circuit.gates)
    while gates and gates[-1].kind == "cnot":
        gates.pop()
    return Circuit(circuit.qubits, tuple(gates), circuit.param_count)
