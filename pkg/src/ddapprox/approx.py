"""Approximation schemes: eliminate weak nodes, rescale, report the trade-off.

All four schemes pick a set of doomed nodes, replace every edge into them
with the zero-stub, re-reduce, and rescale back to unit norm. Because such
a step only zeroes amplitudes and rescales the rest, the fidelity against
the original state equals the kept probability mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Union

from .analysis import contributions, nodes_by_level, sample_paths
from .dd import TERMINAL, Edge, Node, StateDD
from .errors import ZeroStateError
from .fidelity import fidelity as state_fidelity


@dataclass(frozen=True)
class Sampling:
    """Keep exactly the nodes visited by `traversals` sampled walks."""

    traversals: int
    seed: int = 0
    name = "sampling"

    def __post_init__(self):
        if self.traversals < 1:
            raise ValueError("traversals must be at least 1")

    @property
    def param(self):
        return self.traversals


@dataclass(frozen=True)
class Threshold:
    """Drop nodes visited `tau` times or fewer across `traversals` walks."""

    traversals: int
    tau: int
    seed: int = 0
    name = "threshold"

    def __post_init__(self):
        if self.traversals < 1:
            raise ValueError("traversals must be at least 1")
        if not 0 <= self.tau < self.traversals:
            raise ValueError("tau must satisfy 0 <= tau < traversals")

    @property
    def param(self):
        return self.tau


@dataclass(frozen=True)
class TargetFidelity:
    """One-level elimination with a hard fidelity floor."""

    fidelity: float
    level: Union[int, str] = "best"
    name = "target-fidelity"

    def __post_init__(self):
        if not 0.0 < self.fidelity <= 1.0:
            raise ValueError("target fidelity must lie in (0, 1]")
        if self.level != "best" and (not isinstance(self.level, int) or self.level < 0):
            raise ValueError('level must be "best" or a nonnegative integer')

    @property
    def param(self):
        return self.fidelity


@dataclass(frozen=True)
class PerLevelFidelity:
    """The same budgeted elimination applied to every level at once."""

    fidelity: float
    name = "per-level"

    def __post_init__(self):
        if not 0.0 < self.fidelity <= 1.0:
            raise ValueError("target fidelity must lie in (0, 1]")

    @property
    def param(self):
        return self.fidelity


Scheme = Union[Sampling, Threshold, TargetFidelity, PerLevelFidelity]


@dataclass(frozen=True)
class ApproxReport:
    """Before/after accounting for one approximation."""

    scheme: Scheme
    orig_size: int
    approx_size: int
    compression: float  # approx_size / orig_size, smaller is better
    attained_fidelity: float  # against the pre-approximation state
    eliminated: int  # nodes deliberately doomed


def eliminate(dd: StateDD, doomed: Iterable[Node]) -> StateDD:
    """Copy of `dd` with every edge into a doomed node turned into a zero-stub.

    The rebuilt diagram is re-reduced (nodes whose successors collapsed are
    merged or dropped) and rescaled to unit norm; `dd` itself is untouched.
    Raises ZeroStateError when no probability mass remains.
    """
    pkg = dd.package
    t = pkg.table
    doomed = set(doomed)
    memo: dict[Node, Edge] = {}

    def rebuild(edge: Edge) -> Edge:
        target = edge.target
        if target is TERMINAL:
            return edge
        if target in doomed:
            return pkg.zero_stub
        res = memo.get(target)
        if res is None:
            res = pkg.make_node(
                target.level, rebuild(target.succ0), rebuild(target.succ1)
            )
            memo[target] = res
        if res.weight is t.zero:
            return pkg.zero_stub
        return Edge(res.target, t.mul(edge.weight, res.weight))

    root = rebuild(dd.root)
    if root.weight is t.zero:
        raise ZeroStateError("elimination removed all probability mass")
    return StateDD(dd.n, root, pkg).renormalize()


def _report(dd: StateDD, out: StateDD, scheme: Scheme, eliminated: int) -> ApproxReport:
    orig = dd.size()
    new = out.size()
    if out.root == dd.root:
        attained = 1.0  # identity transformation; skip the noisy self-overlap
    else:
        attained = state_fidelity(dd, out)
    return ApproxReport(
        scheme=scheme,
        orig_size=orig,
        approx_size=new,
        compression=new / orig if orig else 1.0,
        attained_fidelity=attained,
        eliminated=eliminated,
    )


def approx_sampling(dd: StateDD, traversals: int, seed: int = 0):
    """Drop every node never visited across `traversals` sampled walks.

    At least one path is always walked, so the state cannot vanish.
    Returns (approximated state, report).
    """
    scheme = Sampling(traversals, seed)
    counts = sample_paths(dd, traversals, seed)
    doomed = [v for v, c in counts.counts.items() if c == 0]
    out = eliminate(dd, doomed) if doomed else dd
    return out, _report(dd, out, scheme, len(doomed))


def approx_threshold(dd: StateDD, traversals: int, tau: int, seed: int = 0):
    """Drop nodes visited `tau` times or fewer; tau = 0 matches approx_sampling.

    The root is visited by every walk, so it always survives (tau < traversals).
    Returns (approximated state, report).
    """
    scheme = Threshold(traversals, tau, seed)
    counts = sample_paths(dd, traversals, seed)
    doomed = [v for v, c in counts.counts.items() if c <= tau]
    out = eliminate(dd, doomed) if doomed else dd
    return out, _report(dd, out, scheme, len(doomed))


#: Shaved off every elimination budget so accumulated floating-point rounding
#: can never push the kept mass below the promised fidelity floor.
_BUDGET_SLACK = 1e-10


def _budget_prefix(nodes, contrib, budget: float) -> list[Node]:
    """Longest ascending-contribution prefix whose running sum stays <= budget.

    The first node that would push the sum past the budget is kept, as is
    everything after it. Ties in contribution fall back to creation order.
    """
    doomed: list[Node] = []
    acc = 0.0
    limit = budget - _BUDGET_SLACK
    for v in sorted(nodes, key=lambda v: (contrib[v], v.uid)):
        acc += contrib[v]
        if acc > limit:
            break
        doomed.append(v)
    return doomed


def approx_target_fidelity(dd: StateDD, target: float, level: Union[int, str] = "best"):
    """One-level elimination guaranteed to keep fidelity >= target.

    Nodes of the chosen level are dropped in ascending contribution order
    while the dropped mass stays within 1 - target; since same-level nodes
    carve the state into disjoint path bundles, the kept mass (and hence the
    fidelity) stays at or above the target. `level` is a fixed index or
    "best", which tries every level and commits to the one whose elimination
    leaves the smallest diagram (ties to the smallest level). When no node
    fits the budget anywhere, the state is returned unchanged.

    Returns (approximated state, report).
    """
    scheme = TargetFidelity(target, level)
    if level != "best" and not 0 <= level < max(dd.n, 1):
        raise ValueError(f"level must lie in [0, {dd.n}) for this state")
    contrib = contributions(dd)
    groups = nodes_by_level(dd)
    budget = 1.0 - target
    candidates = range(dd.n) if level == "best" else [level]
    best_out: StateDD | None = None
    best_doomed: list[Node] = []
    for lvl in candidates:
        doomed = _budget_prefix(groups.get(lvl, ()), contrib, budget)
        if not doomed:
            continue
        out = eliminate(dd, doomed)
        if best_out is None or out.size() < best_out.size():
            best_out, best_doomed = out, doomed
    if best_out is None:
        return dd, _report(dd, dd, scheme, 0)
    return best_out, _report(dd, best_out, scheme, len(best_doomed))


def approx_per_level(dd: StateDD, target: float):
    """Budgeted elimination at every level in one pass.

    Each level's ascending prefix is chosen on the original state's
    contribution map, the union is eliminated once, and the attained
    fidelity is bounded below by target ** (n - 1): the root level can
    never shed its single full-mass node, and each remaining level keeps
    at least `target` of the mass it sees.

    Returns (approximated state, report).
    """
    scheme = PerLevelFidelity(target)
    contrib = contributions(dd)
    budget = 1.0 - target
    doomed: list[Node] = []
    for _, nodes in sorted(nodes_by_level(dd).items()):
        doomed.extend(_budget_prefix(nodes, contrib, budget))
    out = eliminate(dd, doomed) if doomed else dd
    return out, _report(dd, out, scheme, len(doomed))


def apply_scheme(dd: StateDD, scheme: Scheme):
    """Dispatch on the scheme descriptor; returns (approximated state, report)."""
    if isinstance(scheme, Sampling):
        return approx_sampling(dd, scheme.traversals, scheme.seed)
    if isinstance(scheme, Threshold):
        return approx_threshold(dd, scheme.traversals, scheme.tau, scheme.seed)
    if isinstance(scheme, TargetFidelity):
        return approx_target_fidelity(dd, scheme.fidelity, scheme.level)
    if isinstance(scheme, PerLevelFidelity):
        return approx_per_level(dd, scheme.fidelity)
    raise TypeError(f"unknown scheme {scheme!r}")
