"""Exact feasibility and page numbers by pruned backtracking.

The decision problems are NP-hard in general, so every search carries a node
budget and reports "unknown" (budget_hit) rather than a wrong verdict when it
runs out.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    OrderedGraph,
    PageAssignment,
    PageKind,
    PageSpec,
    conflict_masks,
    validate_assignment,
)
from .errors import BudgetExceededError
from .patterns import largest_rainbow

DEFAULT_BUDGET = 10**8


@dataclass(frozen=True)
class SolveResult:
    feasible: bool
    assignment: PageAssignment | None
    nodes: int
    budget_hit: bool

    @property
    def status(self) -> str:
        if self.feasible:
            return "feasible"
        return "unknown" if self.budget_hit else "infeasible"


def _solve_masks(
    cross: list[int],
    nest: list[int],
    active: list[int],
    spec: PageSpec,
    budget: int,
) -> tuple[dict[int, int] | None, int, bool]:
    """Backtracking core over precomputed conflict masks.

    Only the edges listed in `active` are placed; masks may mention inactive
    edges, which simply never enter any page set.  Returns (page_of or None,
    nodes, budget_hit).
    """
    if not active:
        return {}, 0, False
    conflict = {e: bin(cross[e] | nest[e]).count("1") for e in active}
    order = sorted(active, key=lambda e: (-conflict[e], e))
    kinds = spec.kinds
    page_members = [0] * len(kinds)
    page_of: dict[int, int] = {}
    nodes = 0
    hit = False

    def place(pos: int) -> bool:
        nonlocal nodes, hit
        nodes += 1
        if nodes > budget:
            hit = True
            return False
        if pos == len(order):
            return True
        e = order[pos]
        opened = {PageKind.STACK: False, PageKind.QUEUE: False}
        for p, kind in enumerate(kinds):
            if page_members[p] == 0:
                # Same-kind empty pages are interchangeable: only the first
                # may be opened.
                if opened[kind]:
                    continue
                opened[kind] = True
            bad = cross[e] if kind is PageKind.STACK else nest[e]
            if bad & page_members[p]:
                continue
            page_members[p] |= 1 << e
            page_of[e] = p
            if place(pos + 1):
                return True
            page_members[p] &= ~(1 << e)
            del page_of[e]
            if hit:
                return False
        return False

    ok = place(0)
    return (page_of if ok else None), nodes, hit


def feasible(
    g: OrderedGraph, spec: PageSpec, budget: int = DEFAULT_BUDGET
) -> SolveResult:
    """Exact decision: does g admit a layout on exactly the given pages?

    Edges are placed in order of descending conflict degree; among pages of
    the same kind a new (empty) page may only be opened in index order.
    """
    m = g.m
    if m == 0:
        return SolveResult(True, PageAssignment(spec, ()), 0, False)
    cross, nest = conflict_masks(g)
    page_of, nodes, hit = _solve_masks(cross, nest, list(range(m)), spec, budget)
    if page_of is not None:
        assignment = PageAssignment(spec, tuple(page_of[e] for e in range(m)))
        assert not validate_assignment(g, assignment)
        return SolveResult(True, assignment, nodes, False)
    return SolveResult(False, None, nodes, hit)


def splits(k: int) -> list[PageSpec]:
    """All stack/queue splits of k pages, in the order (k,0), (k-1,1), ..."""
    return [PageSpec.split(k - q, q) for q in range(k + 1)]


def mixed_page_number(
    g: OrderedGraph, budget: int = DEFAULT_BUDGET
) -> tuple[int, PageAssignment]:
    """Smallest k such that some split s+q=k is feasible, with a witness."""
    total_nodes = 0
    for k in range(g.m + 1):
        unknown = False
        for spec in splits(k):
            res = feasible(g, spec, budget)
            total_nodes += res.nodes
            if res.feasible:
                return k, res.assignment
            unknown = unknown or res.budget_hit
        if unknown:
            raise BudgetExceededError(
                f"mixed page number at k={k} undecided", nodes=total_nodes
            )
    raise AssertionError("a graph always fits on one page per edge")


def stack_number(
    g: OrderedGraph, budget: int = DEFAULT_BUDGET
) -> tuple[int, PageAssignment]:
    total_nodes = 0
    for s in range(g.m + 1):
        res = feasible(g, PageSpec.split(s, 0), budget)
        total_nodes += res.nodes
        if res.feasible:
            return s, res.assignment
        if res.budget_hit:
            raise BudgetExceededError(f"stack number at s={s} undecided", nodes=total_nodes)
    raise AssertionError("unreachable")


def queue_layout(g: OrderedGraph) -> PageAssignment:
    """Optimal pure-queue layout by nesting depth; exact in polynomial time.

    Edges at the same nesting depth never nest, and the number of depths
    equals the largest rainbow, which is also a lower bound.
    """
    order = sorted(range(g.m), key=lambda e: (g.edges[e][1] - g.edges[e][0], e))
    depth = [1] * g.m
    for pos, e in enumerate(order):
        u, v = g.edges[e]
        for f in order[:pos]:
            x, y = g.edges[f]
            if u < x and y < v:
                depth[e] = max(depth[e], depth[f] + 1)
    q = max(depth, default=0)
    return PageAssignment(
        PageSpec.split(0, q), tuple(d - 1 for d in depth)
    )


def queue_number(g: OrderedGraph) -> tuple[int, PageAssignment]:
    """Exact queue number; equals the largest rainbow (checked)."""
    a = queue_layout(g)
    q = len(a.spec)
    assert q == largest_rainbow(g).k
    assert not validate_assignment(g, a)
    return q, a


@dataclass(frozen=True)
class CriticalityVerdict:
    critical: bool
    reason: str
    nodes: int


def criticality(
    g: OrderedGraph, mode: tuple, budget: int = DEFAULT_BUDGET
) -> CriticalityVerdict:
    """Check (s,q)-criticality (mode ('sq', s, q)) or k-criticality (('k', k)).

    Critical means: infeasible as stated, while every single-edge deletion is
    feasible (at the same (s,q), or at some split of k).  Deletions reuse the
    conflict masks of the full graph.
    """
    total = 0
    cross, nest = conflict_masks(g)

    if mode[0] == "sq":
        _, s, q = mode
        specs = [PageSpec.split(s, q)]
    elif mode[0] == "k":
        specs = splits(mode[1])
    else:
        raise ValueError(f"bad criticality mode {mode!r}")

    def decide(active: list[int], spec: PageSpec) -> bool:
        nonlocal total
        page_of, nodes, hit = _solve_masks(cross, nest, active, spec, budget)
        total += nodes
        if hit:
            raise BudgetExceededError("criticality check undecided", nodes=total)
        return page_of is not None

    everything = list(range(g.m))
    for spec in specs:
        if decide(everything, spec):
            return CriticalityVerdict(False, f"feasible at {spec}", total)
    if g.m == 0:
        return CriticalityVerdict(False, "edgeless", total)
    for e in range(g.m):
        active = [f for f in everything if f != e]
        if not any(decide(active, spec) for spec in specs):
            return CriticalityVerdict(
                False, f"deleting edge {e} stays infeasible", total
            )
    return CriticalityVerdict(True, "critical", total)


def brute_force_mixed_page_number(g: OrderedGraph) -> int:
    """Independent oracle: enumerate every page assignment, smallest k first,
    and accept via the pairwise validity scan.

    Exponential; intended for cross-checking the backtracking solver on
    small instances only.
    """
    from itertools import product

    m = g.m
    if m == 0:
        return 0
    for k in range(1, m + 1):
        for spec in splits(k):
            for pages in product(range(k), repeat=m):
                a = PageAssignment(spec, pages)
                if not validate_assignment(g, a):
                    return k
    raise AssertionError("unreachable")
