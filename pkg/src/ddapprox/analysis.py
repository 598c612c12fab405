"""Probability annotations and stochastic path sampling over a state DD.

Three per-node numbers drive the approximation schemes:

* upstream(v): summed probability of every path from v down to the terminal,
  excluding the weight on v's incoming edge(s); the terminal maps to 1.
* downstream(v): summed probability mass of every root path into v, incoming
  edge weights included.
* contribution(v) = downstream(v) * upstream(v): the probability mass that
  flows through v. On a unit-norm state the contributions of each level sum
  to 1, because every nonzero path crosses each level exactly once.
"""

from __future__ import annotations

from dataclasses import dataclass

from .complex_table import sqr_mag
from .dd import TERMINAL, Node, StateDD, reachable_nodes
from .rng import SplitMix64, derive_seed


def upstream(dd: StateDD) -> dict:
    """Memoized depth-first pass; includes the terminal (mapped to 1.0)."""
    up: dict = {TERMINAL: 1.0}

    def visit(t) -> float:
        val = up.get(t)
        if val is None:
            val = sqr_mag(t.succ0.weight) * visit(t.succ0.target) + sqr_mag(
                t.succ1.weight
            ) * visit(t.succ1.target)
            up[t] = val
        return val

    visit(dd.root.target)
    return up


def downstream(dd: StateDD) -> dict[Node, float]:
    """Level-ordered top-down accumulation over incoming edges."""
    down: dict[Node, float] = {}
    root_t = dd.root.target
    if root_t is TERMINAL:
        return down
    down[root_t] = sqr_mag(dd.root.weight)
    order = sorted(reachable_nodes(dd), key=lambda v: (v.level, v.uid))
    for node in order:
        d = down[node]
        for e in (node.succ0, node.succ1):
            if e.target is not TERMINAL:
                down[e.target] = down.get(e.target, 0.0) + d * sqr_mag(e.weight)
    return down


def contributions(dd: StateDD) -> dict[Node, float]:
    """downstream * upstream per node; each level sums to 1 on unit norm."""
    up = upstream(dd)
    return {v: d * up[v] for v, d in downstream(dd).items()}


def nodes_by_level(dd: StateDD) -> dict[int, list[Node]]:
    """Reachable nonterminal nodes grouped by level, each group in uid order."""
    groups: dict[int, list[Node]] = {}
    for node in sorted(reachable_nodes(dd), key=lambda v: (v.level, v.uid)):
        groups.setdefault(node.level, []).append(node)
    return groups


@dataclass(frozen=True, eq=False)
class VisitCounts:
    """Per-node visit counts over `traversals` root-to-terminal walks."""

    counts: dict[Node, int]
    traversals: int
    seed: int


def sample_paths(dd: StateDD, traversals: int, seed: int) -> VisitCounts:
    """Walk the diagram `traversals` times, branching by probability mass.

    At a node the 1-successor is taken when the walk's next uniform draw
    falls below |w1|^2 * up(succ1) / up(node); zero-stub branches have
    probability exactly 0 and are never taken. Walk i draws from its own
    substream derived from (seed, i), so adding walks never perturbs
    earlier ones and walks may be evaluated in any order.
    """
    if traversals < 1:
        raise ValueError("traversals must be at least 1")
    up = upstream(dd)
    counts: dict[Node, int] = {v: 0 for v in reachable_nodes(dd)}
    p1: dict[Node, float] = {}
    for v in counts:
        e = v.succ1
        p1[v] = sqr_mag(e.weight) * up[e.target] / up[v]
    root_t = dd.root.target
    for i in range(traversals):
        rng = SplitMix64(derive_seed(seed, i))
        node = root_t
        while node is not TERMINAL:
            counts[node] += 1
            node = (node.succ1 if rng.random() < p1[node] else node.succ0).target
    return VisitCounts(counts, traversals, seed)
