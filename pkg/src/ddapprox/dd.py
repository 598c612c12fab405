"""Decision-diagram package for n-qubit pure states.

A vector of 2**n amplitudes is split in half per qubit, most significant
qubit (q0) first. Each split becomes a node with a 0-successor and a
1-successor; equal sub-structures are stored once, and common factors move
into edge weights so an amplitude is the product of the weights along its
path. An all-zero sub-vector is not a node at all but a shared "zero-stub"
edge of exact weight 0 to the terminal.

Node weights are normalized when the node is built:

* both successors nonzero: both weights are divided by the larger-magnitude
  one (ties take the 0-successor), which therefore becomes exactly 1;
* exactly one successor nonzero: the weight is divided by its own real
  magnitude, so a unit-magnitude phase stays on the surviving successor edge
  and the incoming edge carries magnitude only;
* both zero: no node is created, the edge collapses to the zero-stub.

The divisor is folded into the incoming edge, so inner weights always have
magnitude at most 1. A ``DDPackage`` owns one value table plus one unique
table; nodes are immutable and interned, and distinct packages are fully
independent. A package is a single-threaded unit, but read-only queries may
run concurrently on a frozen one.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, NamedTuple, Sequence

import numpy as np

from .complex_table import DEFAULT_TOL, ComplexTable, ComplexValue, sqr_mag
from .errors import DDError, NumericDomainError, SizeLimitError, ZeroStateError


class _Terminal:
    """The single shared leaf below the last qubit level."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "<terminal>"


TERMINAL = _Terminal()


class Node:
    """Inner node: a qubit level plus two successor edges. Interned, immutable."""

    __slots__ = ("level", "succ0", "succ1", "uid")

    def __init__(self, level: int, succ0: "Edge", succ1: "Edge", uid: int):
        self.level = level
        self.succ0 = succ0
        self.succ1 = succ1
        self.uid = uid  # creation order within the package; deterministic

    def __repr__(self) -> str:
        return f"<node q{self.level} #{self.uid}>"


class Edge(NamedTuple):
    """A (target, weight) handle; a whole state is one root edge."""

    target: "Node | _Terminal"
    weight: ComplexValue


#: Largest qubit count `to_vector` will expand by default (2**20 amplitudes).
DEFAULT_VECTOR_CAP = 20


class DDPackage:
    """Owner of the unique table, the value table, and all node identities."""

    def __init__(self, tol: float = DEFAULT_TOL, vector_cap: int = DEFAULT_VECTOR_CAP):
        self.table = ComplexTable(tol)
        self.vector_cap = vector_cap
        self._unique: dict[tuple, Node] = {}
        self._next_uid = 0
        self.zero_stub = Edge(TERMINAL, self.table.zero)

    # -- node construction ------------------------------------------------

    def terminal_edge(self, re: float, im: float = 0.0) -> Edge:
        """Edge to the terminal holding a single amplitude (stub when ~0)."""
        w = self.table.lookup(re, im)
        if w is self.table.zero:
            return self.zero_stub
        return Edge(TERMINAL, w)

    def make_node(self, level: int, succ0: Edge, succ1: Edge) -> Edge:
        """Normalized, deduplicated edge to a node with the given successors.

        Returns the zero-stub when both successors are zero. The
        normalization divisor is folded into the returned edge weight.
        """
        t = self.table
        if succ0.weight is t.zero:
            succ0 = self.zero_stub
        if succ1.weight is t.zero:
            succ1 = self.zero_stub
        for e in (succ0, succ1):
            if e.target is not TERMINAL and e.target.level <= level:
                raise DDError(
                    f"successor at level {e.target.level} not below level {level}"
                )

        w0, w1 = succ0.weight, succ1.weight
        div: ComplexValue | None = None
        if w0 is not t.zero and w1 is not t.zero:
            if sqr_mag(w0) >= sqr_mag(w1):
                r = t.div(w1, w0)
                if r is t.zero:
                    succ1 = self.zero_stub  # ratio below tolerance: treat as empty
                else:
                    div = w0
                    succ0 = Edge(succ0.target, t.one)
                    succ1 = Edge(succ1.target, r)
            else:
                r = t.div(w0, w1)
                if r is t.zero:
                    succ0 = self.zero_stub
                else:
                    div = w1
                    succ1 = Edge(succ1.target, t.one)
                    succ0 = Edge(succ0.target, r)
        if div is None:
            # zero or one live successor: phase stays below, magnitude goes up
            if succ0.weight is t.zero and succ1.weight is t.zero:
                return self.zero_stub
            if succ1.weight is t.zero:
                w = succ0.weight
                mag = math.hypot(w.re, w.im)
                succ0 = Edge(succ0.target, t.lookup(w.re / mag, w.im / mag))
            else:
                w = succ1.weight
                mag = math.hypot(w.re, w.im)
                succ1 = Edge(succ1.target, t.lookup(w.re / mag, w.im / mag))
            div = t.lookup(mag, 0.0)

        key = (level, succ0.target, succ0.weight, succ1.target, succ1.weight)
        node = self._unique.get(key)
        if node is None:
            node = Node(level, succ0, succ1, self._next_uid)
            self._next_uid += 1
            self._unique[key] = node
        return Edge(node, div)

    # -- state construction -------------------------------------------------

    def zero_state(self, n: int) -> "StateDD":
        """The basis state |0...0> on n qubits."""
        if n < 0:
            raise ValueError("qubit count must be nonnegative")
        e = Edge(TERMINAL, self.table.one)
        for level in range(n - 1, -1, -1):
            e = self.make_node(level, e, self.zero_stub)
        return StateDD(n, e, self)

    def from_vector(self, amps: Sequence[complex]) -> "StateDD":
        """Canonical diagram for a dense amplitude vector.

        The length must be a power of two and the norm within 1e-6 of 1;
        the residual norm is divided out exactly before building.
        """
        arr = np.asarray(amps, dtype=np.complex128).reshape(-1)
        size = arr.shape[0]
        if size == 0 or size & (size - 1):
            raise ValueError(f"vector length must be a power of two, got {size}")
        if not np.all(np.isfinite(arr)):
            raise NumericDomainError("vector contains non-finite amplitudes")
        nrm = float(np.linalg.norm(arr))
        if nrm == 0.0:
            raise ZeroStateError("cannot represent the all-zero vector")
        if abs(nrm - 1.0) > 1e-6:
            raise ValueError(f"vector norm {nrm!r} is too far from 1")
        arr = arr / nrm
        n = size.bit_length() - 1
        root = self._build(arr, 0)
        return StateDD(n, root, self)

    def _build(self, arr: np.ndarray, level: int) -> Edge:
        if arr.shape[0] == 1:
            a = arr[0]
            return self.terminal_edge(float(a.real), float(a.imag))
        half = arr.shape[0] // 2
        return self.make_node(
            level, self._build(arr[:half], level + 1), self._build(arr[half:], level + 1)
        )

    # -- maintenance ---------------------------------------------------------

    def unique_table_size(self) -> int:
        return len(self._unique)

    def collect_garbage(self, roots: Iterable[Edge]) -> int:
        """Drop unique-table entries unreachable from `roots`; returns the count.

        Never called implicitly: sizes observed between explicit collections
        are deterministic.
        """
        keep: set[Node] = set()
        stack = [e.target for e in roots]
        while stack:
            t = stack.pop()
            if t is TERMINAL or t in keep:
                continue
            keep.add(t)
            stack.append(t.succ0.target)
            stack.append(t.succ1.target)
        before = len(self._unique)
        self._unique = {k: v for k, v in self._unique.items() if v in keep}
        return before - len(self._unique)


def reachable_nodes(dd: "StateDD") -> list[Node]:
    """Reachable nonterminal nodes in depth-first preorder, 0-successor first."""
    out: list[Node] = []
    seen: set[Node] = set()
    stack = [dd.root.target]
    while stack:
        t = stack.pop()
        if t is TERMINAL or t in seen:
            continue
        seen.add(t)
        out.append(t)
        stack.append(t.succ1.target)
        stack.append(t.succ0.target)
    return out


def _path_mass(edge: Edge, memo: dict[Node, float]) -> float:
    """Sum over all paths below `edge` of the squared weight products."""
    w2 = sqr_mag(edge.weight)
    if w2 == 0.0:
        return 0.0
    t = edge.target
    if t is TERMINAL:
        return w2
    s = memo.get(t)
    if s is None:
        s = _path_mass(t.succ0, memo) + _path_mass(t.succ1, memo)
        memo[t] = s
    return w2 * s


@dataclass(frozen=True)
class StateDD:
    """A pure n-qubit state held as one root edge into a package.

    Invariant: the path-product amplitudes have unit norm (within 4x the
    table tolerance); the root targets level 0, or the terminal when n = 0.
    """

    n: int
    root: Edge
    package: DDPackage = field(repr=False, compare=False)

    def size(self) -> int:
        """Distinct nonterminal nodes reachable from the root."""
        return len(reachable_nodes(self))

    def norm(self) -> float:
        return math.sqrt(_path_mass(self.root, {}))

    def amplitude(self, basis: str) -> ComplexValue:
        """Product of edge weights along the path selected by `basis`.

        `basis` is a string of n characters '0'/'1'; position l picks the
        successor at level l (q0 first).
        """
        if len(basis) != self.n:
            raise ValueError(f"basis string must have length {self.n}")
        t = self.package.table
        w = self.root.weight
        node = self.root.target
        for ch in basis:
            if ch not in "01":
                raise ValueError(f"basis string must be over '0'/'1', got {basis!r}")
            if node is TERMINAL:  # a zero-stub cut the path early
                return t.zero
            e = node.succ1 if ch == "1" else node.succ0
            w = t.mul(w, e.weight)
            node = e.target
        return w

    def to_vector(self) -> np.ndarray:
        """Dense vector of all 2**n path products."""
        if self.n > self.package.vector_cap:
            raise SizeLimitError(
                f"{self.n} qubits exceed the dense-expansion cap "
                f"({self.package.vector_cap})"
            )
        memo: dict[Node, np.ndarray] = {}

        def vec(node: Node) -> np.ndarray:
            cached = memo.get(node)
            if cached is not None:
                return cached
            half = 1 << (self.n - node.level - 1)
            parts = []
            for e in (node.succ0, node.succ1):
                if e.weight.re == 0.0 and e.weight.im == 0.0:
                    parts.append(np.zeros(half, dtype=np.complex128))
                elif e.target is TERMINAL:
                    parts.append(np.array([e.weight.as_complex()]))
                else:
                    parts.append(e.weight.as_complex() * vec(e.target))
            out = np.concatenate(parts)
            memo[node] = out
            return out

        w = self.root.weight.as_complex()
        if self.root.target is TERMINAL:
            return np.array([w], dtype=np.complex128)
        return w * vec(self.root.target)

    def renormalize(self) -> "StateDD":
        """Same state with the root weight divided by the current norm."""
        nrm = self.norm()
        if nrm == 0.0:
            raise ZeroStateError("cannot normalize a zero state")
        w = self.package.table.div_real(self.root.weight, nrm)
        return StateDD(self.n, Edge(self.root.target, w), self.package)

    def to_dot(self) -> str:
        """Graphviz rendering: circles per node, '0' leaves for zero-stubs."""
        t = self.package.table
        lines = [
            "digraph statedd {",
            "  rankdir=TB;",
            "  edge [arrowhead=none];",
            "  root [shape=point];",
            '  terminal [shape=box, label="1"];',
        ]
        order = reachable_nodes(self)
        ids = {node: f"n{i}" for i, node in enumerate(order)}
        for node, name in ids.items():
            lines.append(f'  {name} [shape=circle, label="q{node.level}"];')
        stubs = 0

        def emit(src: str, e: Edge) -> None:
            nonlocal stubs
            label = "" if e.weight is t.one else f' [label="{_fmt_weight(e.weight)}"]'
            if e.weight is t.zero:
                zid = f"z{stubs}"
                stubs += 1
                lines.append(f'  {zid} [shape=none, label="0"];')
                lines.append(f"  {src} -> {zid};")
            elif e.target is TERMINAL:
                lines.append(f"  {src} -> terminal{label};")
            else:
                lines.append(f"  {src} -> {ids[e.target]}{label};")

        emit("root", self.root)
        for node in order:
            emit(ids[node], node.succ0)
            emit(ids[node], node.succ1)
        lines.append("}")
        return "\n".join(lines) + "\n"

    def validate(self) -> None:
        """Raise DDError when a structural or numeric invariant is broken."""
        t = self.package.table
        root_t = self.root.target
        if self.n == 0:
            if root_t is not TERMINAL:
                raise DDError("zero-qubit state must target the terminal")
        elif root_t is TERMINAL or root_t.level != 0:
            raise DDError("root must target a level-0 node")
        nrm = self.norm()
        if abs(nrm - 1.0) > 4.0 * t.tol:
            raise DDError(f"state norm {nrm!r} off unity")
        seen_keys: set[tuple] = set()
        for node in reachable_nodes(self):
            w0, w1 = node.succ0.weight, node.succ1.weight
            if w0 is t.zero and w1 is t.zero:
                raise DDError("node with two zero successors")
            for e in (node.succ0, node.succ1):
                if e.weight is t.zero and e.target is not TERMINAL:
                    raise DDError("zero weight into a nonterminal node")
                if e.target is not TERMINAL and e.target.level <= node.level:
                    raise DDError("successor levels must increase strictly")
                if sqr_mag(e.weight) > 1.0 + 1e-12:
                    raise DDError("successor weight magnitude above 1")
            if w0 is not t.zero and w1 is not t.zero:
                if not (w0 is t.one or w1 is t.one):
                    raise DDError("two-successor node lacks a unit weight")
            else:
                live = w0 if w1 is t.zero else w1
                if abs(math.hypot(live.re, live.im) - 1.0) > 1e-12:
                    raise DDError("single successor weight is not unit magnitude")
            key = (node.level, node.succ0, node.succ1)
            if key in seen_keys:
                raise DDError("two live nodes share a structural key")
            seen_keys.add(key)


def _fmt_weight(w: ComplexValue) -> str:
    if w.im == 0.0:
        return f"{w.re:.6g}"
    if w.re == 0.0:
        return f"{w.im:.6g}i"
    return f"{w.re:.6g}{w.im:+.6g}i"
