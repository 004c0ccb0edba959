"""Detection and witness extraction for twists, rainbows, diamond patterns,
and thick patterns.

Exact twist and thick searches are NP-flavored; they take an explicit node
budget and raise SizeLimitError instead of silently degrading.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum

from .core import (
    GridMatching,
    OrderedGraph,
    Relation,
    classify_pair,
    conflict_masks,
    grid_to_graph,
)
from .errors import InsufficientInputError, SizeLimitError

DEFAULT_SEARCH_BUDGET = 10**7


class PatternKind(Enum):
    TWIST = "twist"
    RAINBOW = "rainbow"
    DIAMOND = "diamond"
    THICK_TWIST = "thick-twist"
    THICK_RAINBOW = "thick-rainbow"


@dataclass(frozen=True)
class PatternWitness:
    """Edge subset certifying a pattern; groups partition the edges.

    For twists and rainbows t = 1 and there is a single group.  For diamonds
    the groups are the k increasing rows.  For thick patterns the groups are
    the k sub-rainbows (thick twist) or sub-twists (thick rainbow).
    """

    kind: PatternKind
    k: int
    t: int
    edges: tuple[int, ...]
    groups: tuple[tuple[int, ...], ...]

    @property
    def size(self) -> tuple[int, int]:
        return (self.k, self.t)

    def to_json(self) -> str:
        return json.dumps(
            {
                "kind": self.kind.value,
                "k": self.k,
                "t": self.t,
                "groups": [list(g) for g in self.groups],
            }
        )

    @staticmethod
    def from_json(text: str) -> "PatternWitness":
        data = json.loads(text)
        groups = tuple(tuple(int(e) for e in g) for g in data["groups"])
        return PatternWitness(
            kind=PatternKind(data["kind"]),
            k=int(data["k"]),
            t=int(data["t"]),
            edges=tuple(e for g in groups for e in g),
            groups=groups,
        )


def _as_graph(host) -> OrderedGraph:
    return grid_to_graph(host) if isinstance(host, GridMatching) else host


def witness_violations(host, witness: PatternWitness) -> list[str]:
    """Re-check a witness against its defining relations; empty iff valid."""
    g = _as_graph(host)
    out = []
    flat = [e for grp in witness.groups for e in grp]
    if sorted(flat) != sorted(set(flat)):
        out.append("groups overlap")
    if set(flat) != set(witness.edges):
        out.append("edge list disagrees with groups")
    if any(not 0 <= e < g.m for e in flat):
        return out + ["edge id out of range"]

    def rel(e1, e2):
        return classify_pair(g, e1, e2).kind

    kind = witness.kind
    if kind in (PatternKind.TWIST, PatternKind.RAINBOW):
        want = Relation.CROSS if kind is PatternKind.TWIST else Relation.NEST
        for i, e1 in enumerate(witness.edges):
            for e2 in witness.edges[i + 1:]:
                if rel(e1, e2) is not want:
                    out.append(f"edges {e1},{e2} are not {want.value}ing")
    elif kind is PatternKind.DIAMOND:
        if not isinstance(host, GridMatching):
            out.append("diamond witness needs a grid matching host")
            return out
        k = witness.k
        if len(witness.groups) != k or any(len(gp) != k for gp in witness.groups):
            out.append("diamond groups are not k rows of k edges")
            return out
        pts = host.points()
        for i in range(k):
            for j in range(k):
                x, y = pts[witness.groups[i][j]]
                if j + 1 < k:
                    x2, y2 = pts[witness.groups[i][j + 1]]
                    if not (x < x2 and y < y2):
                        out.append(f"row {i} not increasing at column {j}")
                if i + 1 < k:
                    x2, y2 = pts[witness.groups[i + 1][j]]
                    if not (x < x2 and y > y2):
                        out.append(f"column {j} not decreasing at row {i}")
    else:
        inner = Relation.NEST if kind is PatternKind.THICK_TWIST else Relation.CROSS
        outer = Relation.CROSS if kind is PatternKind.THICK_TWIST else Relation.NEST
        for gi, grp in enumerate(witness.groups):
            for i, e1 in enumerate(grp):
                for e2 in grp[i + 1:]:
                    if rel(e1, e2) is not inner:
                        out.append(f"group {gi}: {e1},{e2} not {inner.value}ing")
        for gi, g1 in enumerate(witness.groups):
            for g2 in witness.groups[gi + 1:]:
                for e1 in g1:
                    for e2 in g2:
                        if rel(e1, e2) is not outer:
                            out.append(f"{e1},{e2} not {outer.value}ing across groups")
    return out


def _single_group(kind: PatternKind, edges: tuple[int, ...]) -> PatternWitness:
    return PatternWitness(kind, len(edges), 1, edges, (edges,))


def largest_rainbow(g) -> PatternWitness:
    """Maximum pairwise-nesting set: longest chain of the nesting order."""
    g = _as_graph(g)
    order = sorted(range(g.m), key=lambda e: (g.edges[e][1] - g.edges[e][0], e))
    best_len = [1] * g.m
    parent = [-1] * g.m
    for pos, e in enumerate(order):
        u, v = g.edges[e]
        for f in order[:pos]:
            x, y = g.edges[f]
            if u < x and y < v and best_len[f] + 1 > best_len[e]:
                best_len[e] = best_len[f] + 1
                parent[e] = f
    if g.m == 0:
        return _single_group(PatternKind.RAINBOW, ())
    e = max(range(g.m), key=lambda e: (best_len[e], -e))
    chain = []
    while e != -1:
        chain.append(e)
        e = parent[e]
    return _single_group(PatternKind.RAINBOW, tuple(chain))


def _max_clique(masks: list[int], budget: int) -> tuple[int, ...]:
    """Maximum clique via branch and bound with a greedy coloring bound."""
    m = len(masks)
    best: list[int] = []
    nodes = 0

    def color_bound(cands: list[int]) -> list[tuple[int, int]]:
        # (vertex, color) pairs, colors from 1; clique <= max color
        colors: list[int] = []
        classes: list[int] = []
        out = []
        for v in cands:
            for c, cls in enumerate(classes):
                if not (masks[v] & cls):
                    classes[c] |= 1 << v
                    out.append((v, c + 1))
                    break
            else:
                classes.append(1 << v)
                out.append((v, len(classes)))
        out.sort(key=lambda vc: vc[1])
        return out

    def expand(current: list[int], cands: list[int]):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            raise SizeLimitError(f"clique search exceeded {budget} nodes")
        colored = color_bound(cands)
        while colored:
            v, c = colored.pop()
            if len(current) + c <= len(best):
                return
            current.append(v)
            rest = [u for u, _ in colored if masks[v] >> u & 1]
            if not rest:
                if len(current) > len(best):
                    best = current[:]
            else:
                expand(current, rest)
            current.pop()

    order = sorted(range(m), key=lambda v: -bin(masks[v]).count("1"))
    if order:
        expand([], order)
    return tuple(sorted(best))


def _clique_of_size(masks: list[int], size: int, budget: int) -> tuple[int, ...] | None:
    """Some clique of exactly the given size, or None."""
    if size == 0:
        return ()
    m = len(masks)
    nodes = 0

    def expand(current: list[int], cands: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SizeLimitError(f"clique search exceeded {budget} nodes")
        if len(current) == size:
            return tuple(current)
        need = size - len(current)
        c = cands
        while c:
            v = (c & -c).bit_length() - 1
            c &= c - 1
            if bin(cands).count("1") < need:
                return None
            current.append(v)
            found = expand(current, c & masks[v])
            current.pop()
            if found:
                return found
            cands &= ~(1 << v)
            if bin(cands).count("1") < need:
                return None
        return None

    return expand([], (1 << m) - 1)


def largest_twist(g, budget: int = DEFAULT_SEARCH_BUDGET) -> PatternWitness:
    """Maximum pairwise-crossing set (exact maximum clique of the crossing
    relation); separated matchings use the longest-increasing fast path."""
    if isinstance(g, GridMatching):
        chain = _lis_indices([(i + 1, y) for i, y in enumerate(g.pi)])
        return _single_group(PatternKind.TWIST, tuple(chain))
    cross, _ = conflict_masks(g)
    return _single_group(PatternKind.TWIST, _max_clique(cross, budget))


def has_twist(g: OrderedGraph, size: int, budget: int = DEFAULT_SEARCH_BUDGET):
    """A twist of exactly `size` edges if one exists, else None."""
    cross, _ = conflict_masks(g)
    return _clique_of_size(cross, size, budget)


def _lis_indices(points: list[tuple[int, int]]) -> list[int]:
    """Indices of one longest strictly-increasing subsequence (points by x)."""
    import bisect

    tails: list[int] = []
    tail_idx: list[int] = []
    parent = [-1] * len(points)
    for i, (_, y) in enumerate(points):
        pos = bisect.bisect_left(tails, y)
        if pos == len(tails):
            tails.append(y)
            tail_idx.append(i)
        else:
            tails[pos] = y
            tail_idx[pos] = i
        parent[i] = tail_idx[pos - 1] if pos else -1
    if not tails:
        return []
    out = []
    i = tail_idx[len(tails) - 1]
    while i != -1:
        out.append(i)
        i = parent[i]
    return out[::-1]


def _lds_indices(points: list[tuple[int, int]]) -> list[int]:
    return _lis_indices([(x, -y) for x, y in points])


# Diamond patterns


def _exact_diamond_matrix(grid: GridMatching, k: int, budget: int):
    """Some k x k diamond matrix in the grid, or None; backtracking search."""
    pts = grid.points()
    ids = sorted(range(grid.m), key=lambda e: pts[e][0])
    matrix = [[-1] * k for _ in range(k)]
    used = [False] * grid.m
    nodes = 0

    def fill(cell: int) -> bool:
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SizeLimitError(f"diamond search exceeded {budget} nodes")
        if cell == k * k:
            return True
        i, j = divmod(cell, k)
        xmin, ylo, yhi = 0, 0, grid.m + 1
        if j > 0:
            x, y = pts[matrix[i][j - 1]]
            xmin, ylo = max(xmin, x), max(ylo, y)
        if i > 0:
            x, y = pts[matrix[i - 1][j]]
            xmin, yhi = max(xmin, x), min(yhi, y)
        for e in ids:
            x, y = pts[e]
            if x <= xmin or used[e] or not ylo < y < yhi:
                continue
            matrix[i][j] = e
            used[e] = True
            if fill(cell + 1):
                return True
            used[e] = False
        matrix[i][j] = -1
        return False

    return [row[:] for row in matrix] if fill(0) else None


def largest_diamond(
    grid: GridMatching, exact: bool = False, budget: int = DEFAULT_SEARCH_BUDGET
) -> PatternWitness:
    """Largest diamond pattern.

    With exact=False this is the Ferrers-square witness (a guaranteed diamond
    of side equal to the largest square, possibly not the global maximum);
    with exact=True the true maximum side is found by bounded search.
    """
    from . import greene

    if not exact:
        return greene.diamond_witness(grid)
    if grid.m == 0:
        return PatternWitness(PatternKind.DIAMOND, 0, 0, (), ())
    upper = min(
        greene.lis_length(grid.pi),
        greene.lds_length(grid.pi),
    )
    best = greene.diamond_matrix(grid)
    for k in range(len(best) + 1, upper + 1):
        found = _exact_diamond_matrix(grid, k, budget)
        if found is None:
            break
        best = found
    groups = tuple(tuple(row) for row in best)
    return PatternWitness(
        PatternKind.DIAMOND,
        len(best),
        len(best),
        tuple(e for row in groups for e in row),
        groups,
    )


# Thick patterns


def largest_thick_of_kind(
    g, t: int, kind: PatternKind, budget: int = DEFAULT_SEARCH_BUDGET
) -> PatternWitness:
    """Largest k with a t-thick k-twist (k-rainbow); exact within budget."""
    if t < 1:
        raise ValueError("thickness must be positive")
    g = _as_graph(g)
    cross, nest = conflict_masks(g)
    inner = nest if kind is PatternKind.THICK_TWIST else cross
    outer = cross if kind is PatternKind.THICK_TWIST else nest
    groups: list[tuple[tuple[int, ...], int, int]] = []
    nodes = 0

    def grow(members: list[int], cands: int, outer_common: int):
        nonlocal nodes
        nodes += 1
        if nodes > budget:
            raise SizeLimitError(f"thick group enumeration exceeded {budget} nodes")
        if len(members) == t:
            mask = 0
            for e in members:
                mask |= 1 << e
            groups.append((tuple(members), mask, outer_common))
            return
        c = cands
        while c:
            e = (c & -c).bit_length() - 1
            c &= c - 1
            members.append(e)
            grow(members, c & inner[e], outer_common & outer[e])
            members.pop()

    grow([], (1 << g.m) - 1, (1 << g.m) - 1)

    # Maximum clique over groups under full pairwise outer compatibility.
    best: list[int] = []

    def compatible(i: int, j: int) -> bool:
        return groups[j][1] & ~groups[i][2] == 0

    def extend(chosen: list[int], cands: list[int]):
        nonlocal nodes, best
        nodes += 1
        if nodes > budget:
            raise SizeLimitError(f"thick clique search exceeded {budget} nodes")
        if not cands:
            if len(chosen) > len(best):
                best = chosen[:]
            return
        if len(chosen) + len(cands) <= len(best):
            return
        head, *rest = cands
        chosen.append(head)
        extend(chosen, [j for j in rest if compatible(head, j)])
        chosen.pop()
        extend(chosen, rest)

    extend([], list(range(len(groups))))
    chosen_groups = tuple(groups[i][0] for i in best)
    return PatternWitness(
        kind,
        len(best),
        t,
        tuple(e for grp in chosen_groups for e in grp),
        chosen_groups,
    )


def largest_thick(g, t: int, budget: int = DEFAULT_SEARCH_BUDGET) -> PatternWitness:
    """Best of the two thick kinds; ties prefer the thick twist."""
    tw = largest_thick_of_kind(g, t, PatternKind.THICK_TWIST, budget)
    rb = largest_thick_of_kind(g, t, PatternKind.THICK_RAINBOW, budget)
    return tw if tw.k >= rb.k else rb


def largest_square_thick(g, budget: int = DEFAULT_SEARCH_BUDGET) -> PatternWitness:
    """Largest k such that a k-thick k-pattern (thickness equal to length)
    exists.  This is the quantity the thick-pattern page-number bounds are
    stated in; it is monotone in k since trimming groups of a larger square
    pattern yields a smaller one."""
    g = _as_graph(g)
    best = PatternWitness(PatternKind.THICK_TWIST, 0, 0, (), ())
    k = 1
    while k * k <= g.m:
        w = largest_thick(g, k, budget)
        if w.k < k:
            break
        trimmed = tuple(grp[:k] for grp in w.groups[:k])
        best = PatternWitness(
            w.kind,
            k,
            k,
            tuple(e for grp in trimmed for e in grp),
            trimmed,
        )
        k += 1
    return best


# Subdivision extraction of thick patterns from diamond patterns


def _quadrant_split(grid: GridMatching, matrix):
    """Split a diamond matrix into the preferred opposite-quadrant pair."""
    pts = grid.points()
    ids = [e for row in matrix for e in row]
    by_x = sorted(ids, key=lambda e: pts[e][0])
    by_y = sorted(ids, key=lambda e: pts[e][1])
    half = len(ids) // 2
    low_x = set(by_x[:half])
    low_y = set(by_y[:half])

    def quadrant(e):
        return (e in low_x, e in low_y)

    count = {q: 0 for q in ((True, True), (True, False), (False, True), (False, False))}
    for e in ids:
        count[quadrant(e)] += 1
    total = len(ids)
    diag_ok = 4 * min(count[(True, True)], count[(False, False)]) >= total
    anti_ok = 4 * min(count[(True, False)], count[(False, True)]) >= total
    if not diag_ok and not anti_ok:
        raise InsufficientInputError("no opposite quadrant pair holds a quarter of the points")

    def row_trim(member, take_suffix):
        scored = []
        for idx, row in enumerate(matrix):
            t_len = sum(1 for e in row if member(e))
            scored.append((idx, t_len))
        ranked = sorted(scored, key=lambda it: -it[1])
        side = 0
        while side < len(ranked) and ranked[side][1] >= side + 1:
            side += 1
        rows = sorted(idx for idx, t_len in scored if t_len >= side)[:side]
        if take_suffix:
            return [[matrix[i][c] for c in range(len(matrix) - side, len(matrix))] for i in rows]
        return [[matrix[i][c] for c in range(side)] for i in rows]

    def col_trim(member, take_suffix):
        q = len(matrix)
        scored = []
        for c in range(q):
            t_len = sum(1 for i in range(q) if member(matrix[i][c]))
            scored.append((c, t_len))
        ranked = sorted(scored, key=lambda it: -it[1])
        side = 0
        while side < len(ranked) and ranked[side][1] >= side + 1:
            side += 1
        cols = sorted(c for c, t_len in scored if t_len >= side)[:side]
        if take_suffix:
            return [[matrix[i][c] for c in cols] for i in range(q - side, q)]
        return [[matrix[i][c] for c in cols] for i in range(side)]

    if diag_ok:
        # Q11 holds row prefixes, Q22 row suffixes.
        first = row_trim(lambda e: quadrant(e) == (True, True), take_suffix=False)
        second = row_trim(lambda e: quadrant(e) == (False, False), take_suffix=True)
    else:
        # Q12 holds column prefixes, Q21 column suffixes.
        first = col_trim(lambda e: quadrant(e) == (True, False), take_suffix=False)
        second = col_trim(lambda e: quadrant(e) == (False, True), take_suffix=True)
    return first, second


def thick_from_diamond(grid: GridMatching, k: int) -> PatternWitness:
    """Extract a k-thick pattern from a large diamond by grid subdivision.

    Implements the recursive four-quadrant subdivision with h = 2*ceil(log2 k)
    rounds followed by an Erdos-Szekeres step on the permutation of the leaf
    squares.  Guaranteed to reach thickness k when the input holds a diamond
    of side k**7; otherwise the best achievable witness is returned.
    """
    from . import greene

    if k < 1:
        raise ValueError("k must be positive")
    matrix = greene.diamond_matrix(grid)
    if not matrix:
        raise InsufficientInputError("empty matching")
    rounds = 2 * math.ceil(math.log2(k)) if k > 1 else 0
    leaves = [matrix]
    for _ in range(rounds):
        nxt = []
        for leaf in leaves:
            first, second = _quadrant_split(grid, leaf)
            nxt.extend((first, second))
        leaves = nxt

    pts = grid.points()
    leaves.sort(key=lambda mat: min(pts[e][0] for row in mat for e in row))
    leaf_pts = [(i + 1, min(pts[e][1] for row in mat for e in row)) for i, mat in enumerate(leaves)]
    inc = _lis_indices(leaf_pts)
    dec = _lds_indices(leaf_pts)

    def assemble(seq, kind):
        if not seq:
            return PatternWitness(kind, 0, 0, (), ())
        take = min(k, len(seq))
        size = min(take, min(len(leaves[i]) for i in seq[:take]))
        chosen = seq[:size]
        groups = []
        for i in chosen:
            leaf = leaves[i]
            if kind is PatternKind.THICK_TWIST:
                groups.append(tuple(leaf[r][0] for r in range(size)))
            else:
                groups.append(tuple(leaf[0][c] for c in range(size)))
        return PatternWitness(
            kind,
            size,
            size,
            tuple(e for grp in groups for e in grp),
            tuple(groups),
        )

    tw = assemble(inc, PatternKind.THICK_TWIST)
    rb = assemble(dec, PatternKind.THICK_RAINBOW)
    return tw if tw.k >= rb.k else rb
