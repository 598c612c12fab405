"""Minimal gate-level circuits and their application to decision diagrams.

Gates act level-locally on the diagram: a single-qubit gate rebuilds the
nodes at its target level by mixing the two successors through the 2x2
matrix, and a controlled gate descends to the control node and applies the
single-qubit part inside the control = 1 cofactor only. Results are
memoized per (operation, node), so shared structure is transformed once.

Controlled operations are kept in control-above-target form: cz/cp are
symmetric in their qubits and are reordered freely, while a cx whose
control sits below its target is rewritten exactly as H(target); cz; H(target).
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .dd import DDPackage, Edge, StateDD, TERMINAL
from .errors import CircuitParseError, DDError
from .rng import SplitMix64

ONE_QUBIT = frozenset({"h", "x", "y", "z", "s", "t", "p"})
TWO_QUBIT = frozenset({"cx", "cz", "cp", "swap"})
ANGLED = frozenset({"p", "cp"})


@dataclass(frozen=True)
class Gate:
    """One operation; `qubits` is (target,) or (control, target) / (a, b)."""

    kind: str
    qubits: tuple[int, ...]
    angle: float | None = None

    def __post_init__(self):
        if self.kind not in ONE_QUBIT and self.kind not in TWO_QUBIT:
            raise ValueError(f"unknown gate kind {self.kind!r}")
        arity = 1 if self.kind in ONE_QUBIT else 2
        if len(self.qubits) != arity:
            raise ValueError(f"{self.kind} takes {arity} qubit(s)")
        if len(set(self.qubits)) != len(self.qubits):
            raise ValueError(f"{self.kind} qubits must be distinct")
        if (self.angle is not None) != (self.kind in ANGLED):
            raise ValueError(f"{self.kind} angle mismatch")


@dataclass(frozen=True)
class Circuit:
    n: int
    gates: tuple[Gate, ...]

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("circuit needs at least one qubit")
        for g in self.gates:
            for q in g.qubits:
                if not 0 <= q < self.n:
                    raise ValueError(f"qubit {q} out of range for n={self.n}")


def parse(text: str) -> Circuit:
    """Parse the line-oriented circuit format.

    The first significant line must be ``qubits <n>``; afterwards one gate
    per line: ``h|x|y|z|s|t <q>``, ``p <theta> <q>``, ``cx|cz <c> <t>``,
    ``cp <theta> <c> <t>``, ``swap <a> <b>``. Angles are decimal radians,
    ``#`` starts a comment. Raises CircuitParseError with the line number.
    """
    n: int | None = None
    gates: list[Gate] = []
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.lower().split()
        if n is None:
            if tokens[0] != "qubits":
                raise CircuitParseError(line_no, "expected `qubits <n>` header")
            if len(tokens) != 2:
                raise CircuitParseError(line_no, "qubits takes exactly one count")
            n = _parse_int(tokens[1], line_no, "qubit count")
            if n < 1:
                raise CircuitParseError(line_no, "qubit count must be positive")
            continue
        kind = tokens[0]
        args = tokens[1:]
        angle: float | None = None
        if kind in ANGLED:
            if not args:
                raise CircuitParseError(line_no, f"{kind} needs an angle")
            angle = _parse_float(args[0], line_no, "angle")
            args = args[1:]
        if kind in ONE_QUBIT:
            want = 1
        elif kind in TWO_QUBIT:
            want = 2
        else:
            raise CircuitParseError(line_no, f"unknown gate {kind!r}")
        if len(args) != want:
            raise CircuitParseError(line_no, f"{kind} takes {want} qubit index(es)")
        qubits = tuple(_parse_int(a, line_no, "qubit index") for a in args)
        for q in qubits:
            if not 0 <= q < n:
                raise CircuitParseError(line_no, f"qubit index {q} out of range")
        if len(set(qubits)) != len(qubits):
            raise CircuitParseError(line_no, f"{kind} qubits must be distinct")
        gates.append(Gate(kind, qubits, angle))
    if n is None:
        raise CircuitParseError(max(line_no, 1), "missing `qubits <n>` header")
    return Circuit(n, tuple(gates))


def _parse_int(token: str, line_no: int, what: str) -> int:
    try:
        return int(token)
    except ValueError:
        raise CircuitParseError(line_no, f"malformed {what} {token!r}") from None


def _parse_float(token: str, line_no: int, what: str) -> float:
    try:
        value = float(token)
    except ValueError:
        raise CircuitParseError(line_no, f"malformed {what} {token!r}") from None
    if not math.isfinite(value):
        raise CircuitParseError(line_no, f"malformed {what} {token!r}")
    return value


_SQ2 = 1.0 / math.sqrt(2.0)
_MATRICES = {
    "h": ((_SQ2 + 0j, _SQ2 + 0j), (_SQ2 + 0j, -_SQ2 + 0j)),
    "x": ((0j, 1 + 0j), (1 + 0j, 0j)),
    "y": ((0j, -1j), (1j, 0j)),
    "z": ((1 + 0j, 0j), (0j, -1 + 0j)),
    "s": ((1 + 0j, 0j), (0j, 1j)),
    "t": ((1 + 0j, 0j), (0j, cmath.exp(0.25j * math.pi))),
}


def _matrix(kind: str, angle: float | None):
    if kind == "p":
        return ((1 + 0j, 0j), (0j, cmath.exp(1j * angle)))
    return _MATRICES[kind]


def _primitive_ops(gate: Gate) -> list[Gate]:
    """Rewrite `gate` into ops that are 1-qubit or controlled-from-above."""
    kind = gate.kind
    if kind in ONE_QUBIT:
        return [gate]
    if kind == "swap":
        a, b = gate.qubits
        ab = _primitive_ops(Gate("cx", (a, b)))
        ba = _primitive_ops(Gate("cx", (b, a)))
        return [*ab, *ba, *ab]
    c, t = gate.qubits
    if c < t:
        return [gate]
    if kind in ("cz", "cp"):  # diagonal, symmetric in its two qubits
        return [Gate(kind, (t, c), gate.angle)]
    h = Gate("h", (t,))
    return [h, Gate("cz", (t, c)), h]


def simulate(
    circuit: Circuit, package: DDPackage | None = None, observer=None
) -> StateDD:
    """Apply the circuit to |0...0>, one gate at a time.

    The norm is re-checked after every gate and must stay within 4x the
    value-table tolerance of 1. When given, ``observer(index, gate, state)``
    is called after each gate of the circuit.
    """
    pkg = package if package is not None else DDPackage()
    state = pkg.zero_state(circuit.n)
    bound = 4.0 * pkg.table.tol
    for idx, gate in enumerate(circuit.gates):
        root = state.root
        for op in _primitive_ops(gate):
            if op.kind in ONE_QUBIT:
                root = _apply_single(pkg, root, _matrix(op.kind, op.angle), op.qubits[0])
            else:
                base = {"cx": "x", "cz": "z", "cp": "p"}[op.kind]
                root = _apply_controlled(
                    pkg, root, _matrix(base, op.angle), op.qubits[0], op.qubits[1]
                )
        state = StateDD(circuit.n, root, pkg)
        drift = abs(state.norm() - 1.0)
        if drift > bound:
            raise DDError(f"norm drifted by {drift:g} after gate {idx} ({gate.kind})")
        if observer is not None:
            observer(idx, gate, state)
    return state


def _weighted(pkg: DDPackage, edge: Edge, w) -> Edge:
    t = pkg.table
    nw = t.mul(w, edge.weight)
    if nw is t.zero:
        return pkg.zero_stub
    return Edge(edge.target, nw)


def _scaled(pkg: DDPackage, edge: Edge, factor: complex) -> Edge:
    t = pkg.table
    if factor == 0 or edge.weight is t.zero:
        return pkg.zero_stub
    w = edge.weight
    nw = t.lookup(
        w.re * factor.real - w.im * factor.imag,
        w.re * factor.imag + w.im * factor.real,
    )
    if nw is t.zero:
        return pkg.zero_stub
    return Edge(edge.target, nw)


def _add(pkg: DDPackage, ea: Edge, eb: Edge, memo: dict) -> Edge:
    """Sum of the two sub-vectors; operands sit at the same level."""
    t = pkg.table
    if ea.weight is t.zero:
        return eb
    if eb.weight is t.zero:
        return ea
    if ea.target is TERMINAL:
        return pkg.terminal_edge(
            ea.weight.re + eb.weight.re, ea.weight.im + eb.weight.im
        )
    key = (ea, eb)
    res = memo.get(key)
    if res is None:
        na, nb = ea.target, eb.target
        wa, wb = ea.weight, eb.weight
        res = pkg.make_node(
            na.level,
            _add(pkg, _weighted(pkg, na.succ0, wa), _weighted(pkg, nb.succ0, wb), memo),
            _add(pkg, _weighted(pkg, na.succ1, wa), _weighted(pkg, nb.succ1, wb), memo),
        )
        memo[key] = res
    return res


def _apply_matrix(pkg, edge, mat, target_level, memo, add_memo) -> Edge:
    """Rebuild below `edge`, mixing successors by `mat` at `target_level`."""
    t = pkg.table
    if edge.weight is t.zero:
        return pkg.zero_stub
    node = edge.target
    res = memo.get(node)
    if res is None:
        if node.level == target_level:
            (u00, u01), (u10, u11) = mat
            e0 = _add(
                pkg, _scaled(pkg, node.succ0, u00), _scaled(pkg, node.succ1, u01), add_memo
            )
            e1 = _add(
                pkg, _scaled(pkg, node.succ0, u10), _scaled(pkg, node.succ1, u11), add_memo
            )
            res = pkg.make_node(node.level, e0, e1)
        else:
            res = pkg.make_node(
                node.level,
                _apply_matrix(pkg, node.succ0, mat, target_level, memo, add_memo),
                _apply_matrix(pkg, node.succ1, mat, target_level, memo, add_memo),
            )
        memo[node] = res
    if res.weight is t.zero:
        return pkg.zero_stub
    return Edge(res.target, t.mul(edge.weight, res.weight))


def _apply_single(pkg: DDPackage, root: Edge, mat, target: int) -> Edge:
    return _apply_matrix(pkg, root, mat, target, {}, {})


def _apply_controlled(pkg: DDPackage, root: Edge, mat, control: int, target: int) -> Edge:
    """Requires control < target: mix `mat` at `target` inside the 1-cofactor."""
    t = pkg.table
    memo: dict = {}
    inner_memo: dict = {}
    add_memo: dict = {}

    def go(edge: Edge) -> Edge:
        if edge.weight is t.zero:
            return pkg.zero_stub
        node = edge.target
        res = memo.get(node)
        if res is None:
            if node.level == control:
                res = pkg.make_node(
                    node.level,
                    node.succ0,
                    _apply_matrix(pkg, node.succ1, mat, target, inner_memo, add_memo),
                )
            else:
                res = pkg.make_node(node.level, go(node.succ0), go(node.succ1))
            memo[node] = res
        if res.weight is t.zero:
            return pkg.zero_stub
        return Edge(res.target, t.mul(edge.weight, res.weight))

    return go(root)


# -- circuit families ---------------------------------------------------


def ghz(n: int) -> Circuit:
    """H then a CX chain: (|0...0> + |1...1>) / sqrt(2)."""
    if n < 1:
        raise ValueError("n must be at least 1")
    gates = [Gate("h", (0,))]
    gates += [Gate("cx", (i, i + 1)) for i in range(n - 1)]
    return Circuit(n, tuple(gates))


def qft(n: int) -> Circuit:
    """Quantum Fourier transform: H + controlled-phase ladder + final swaps."""
    if n < 1:
        raise ValueError("n must be at least 1")
    gates: list[Gate] = []
    for j in range(n):
        gates.append(Gate("h", (j,)))
        for k in range(j + 1, n):
            gates.append(Gate("cp", (k, j), math.pi / (1 << (k - j))))
    for i in range(n // 2):
        gates.append(Gate("swap", (i, n - 1 - i)))
    return Circuit(n, tuple(gates))


def random_circuit(n: int, depth: int, seed: int) -> Circuit:
    """Seeded layered circuit; deterministic in (n, depth, seed).

    Even layers draw one gate per qubit from a splitmix64 stream (one 64-bit
    draw modulo 3: 0 -> h, 1 -> t, 2 -> p with the next uniform as angle over
    [0, 2pi)); odd layers place a single cz on a random pair (two draws,
    modulo n and n - 1).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    rng = SplitMix64(seed)
    gates: list[Gate] = []
    for layer in range(depth):
        if layer % 2 == 0 or n < 2:
            for q in range(n):
                pick = rng.next_u64() % 3
                if pick == 0:
                    gates.append(Gate("h", (q,)))
                elif pick == 1:
                    gates.append(Gate("t", (q,)))
                else:
                    gates.append(Gate("p", (q,), 2.0 * math.pi * rng.random()))
        else:
            a = rng.next_u64() % n
            b = rng.next_u64() % (n - 1)
            if b >= a:
                b += 1
            gates.append(Gate("cz", (a, b)))
    return Circuit(n, tuple(gates))
