"""Ordered-graph data model: edge classification, layout validation, grids, I/O.

Vertices of an ordered graph are 0..n-1 and the index order *is* the layout
order, so no separate order array is carried around.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from enum import Enum

from .errors import (
    BadEdgeIdError,
    CoverageMismatchError,
    DuplicateEdgeError,
    NotMatchingError,
    NotSeparatedError,
    OutOfRangeError,
    ParseError,
)


class Relation(Enum):
    CROSS = "cross"
    NEST = "nest"
    SHARED = "shared"
    DISJOINT = "disjoint"


@dataclass(frozen=True)
class EdgeRelation:
    """Relation of an unordered edge pair; for NEST, outer/inner are edge ids."""

    kind: Relation
    outer: int | None = None
    inner: int | None = None


class PageKind(Enum):
    STACK = "S"
    QUEUE = "Q"


@dataclass(frozen=True)
class OrderedGraph:
    """Graph with a fixed linear vertex order given by the vertex indices."""

    n: int
    edges: tuple[tuple[int, int], ...]
    multi: bool = False

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return sum(1 for u, w in self.edges if u == v or w == v)

    def max_degree(self) -> int:
        deg = [0] * self.n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return max(deg, default=0)

    def is_matching(self) -> bool:
        seen = set()
        for u, v in self.edges:
            if u in seen or v in seen:
                return False
            seen.add(u)
            seen.add(v)
        return True

    def delete_edge(self, e: int) -> "OrderedGraph":
        """Graph with edge e removed; vertices are kept as they are."""
        if not 0 <= e < self.m:
            raise BadEdgeIdError(f"no edge {e}")
        return OrderedGraph(self.n, self.edges[:e] + self.edges[e + 1:], self.multi)


def build_graph(n: int, edges, multi: bool = False) -> OrderedGraph:
    """Normalize edges to u < v and sorted order; reject bad input."""
    norm = []
    for u, v in edges:
        if u == v:
            raise OutOfRangeError(f"loop at vertex {u}")
        if not (0 <= u < n and 0 <= v < n):
            raise OutOfRangeError(f"edge ({u},{v}) outside 0..{n - 1}")
        norm.append((u, v) if u < v else (v, u))
    norm.sort()
    if not multi:
        for a, b in zip(norm, norm[1:]):
            if a == b:
                raise DuplicateEdgeError(f"duplicate edge {a}")
    return OrderedGraph(n, tuple(norm), multi)


def classify_pair(g: OrderedGraph, e1: int, e2: int) -> EdgeRelation:
    """Classify an edge pair as crossing, nesting, sharing a vertex, or disjoint."""
    if not (0 <= e1 < g.m and 0 <= e2 < g.m) or e1 == e2:
        raise BadEdgeIdError(f"bad edge pair ({e1},{e2})")
    a, b = g.edges[e1], g.edges[e2]
    if a[0] in b or a[1] in b:
        return EdgeRelation(Relation.SHARED)
    (u, v), (x, y) = (a, b) if a[0] < b[0] else (b, a)
    outer, inner = (e1, e2) if a[0] < b[0] else (e2, e1)
    if x < v < y:
        return EdgeRelation(Relation.CROSS)
    if y < v:
        return EdgeRelation(Relation.NEST, outer=outer, inner=inner)
    return EdgeRelation(Relation.DISJOINT)


def crossing(g: OrderedGraph, e1: int, e2: int) -> bool:
    return classify_pair(g, e1, e2).kind is Relation.CROSS


def nesting(g: OrderedGraph, e1: int, e2: int) -> bool:
    return classify_pair(g, e1, e2).kind is Relation.NEST


def conflict_masks(g: OrderedGraph) -> tuple[list[int], list[int]]:
    """Per-edge bitmasks of crossing and nesting partners.

    Inlined comparisons instead of classify_pair; this sits on the hot path
    of the solver and of enumeration filters.
    """
    m = g.m
    edges = g.edges
    cross = [0] * m
    nest = [0] * m
    for i in range(m):
        u, v = edges[i]
        bit_i = 1 << i
        for j in range(i + 1, m):
            x, y = edges[j]
            if u == x or v == y or v == x:
                continue
            # Edges are sorted, so u < x here.
            if x < v:
                if y < v:
                    nest[i] |= 1 << j
                    nest[j] |= bit_i
                elif y > v:
                    cross[i] |= 1 << j
                    cross[j] |= bit_i
    return cross, nest


@dataclass(frozen=True)
class PageSpec:
    """Ordered list of page kinds; s stacks and q queues in some order."""

    kinds: tuple[PageKind, ...]

    @staticmethod
    def from_string(text: str) -> "PageSpec":
        return PageSpec(tuple(PageKind(c) for c in text.upper()))

    @staticmethod
    def split(s: int, q: int) -> "PageSpec":
        return PageSpec((PageKind.STACK,) * s + (PageKind.QUEUE,) * q)

    @property
    def s(self) -> int:
        return sum(1 for k in self.kinds if k is PageKind.STACK)

    @property
    def q(self) -> int:
        return sum(1 for k in self.kinds if k is PageKind.QUEUE)

    def __len__(self) -> int:
        return len(self.kinds)

    def __str__(self) -> str:
        return "".join(k.value for k in self.kinds)


@dataclass(frozen=True)
class PageAssignment:
    """Map from edge index to page index against a declared page spec."""

    spec: PageSpec
    page_of: tuple[int, ...]

    def pages(self) -> list[list[int]]:
        out: list[list[int]] = [[] for _ in self.spec.kinds]
        for e, p in enumerate(self.page_of):
            out[p].append(e)
        return out


@dataclass(frozen=True)
class Violation:
    page: int
    kind: PageKind
    e1: int
    e2: int


def validate_assignment(g: OrderedGraph, a: PageAssignment) -> list[Violation]:
    """Empty iff no stack page holds a crossing pair and no queue a nesting pair."""
    if len(a.page_of) != g.m:
        raise CoverageMismatchError(
            f"assignment covers {len(a.page_of)} edges, graph has {g.m}"
        )
    for e, p in enumerate(a.page_of):
        if not 0 <= p < len(a.spec):
            raise CoverageMismatchError(f"edge {e} mapped to missing page {p}")
    violations = []
    pages = a.pages()
    for p, members in enumerate(pages):
        kind = a.spec.kinds[p]
        bad = Relation.CROSS if kind is PageKind.STACK else Relation.NEST
        for i, e1 in enumerate(members):
            for e2 in members[i + 1:]:
                if classify_pair(g, e1, e2).kind is bad:
                    violations.append(Violation(p, kind, e1, e2))
    return violations


# Grid representation of separated matchings


@dataclass(frozen=True)
class GridMatching:
    """Permutation view of a separated matching: pi[col-1] = row, both 1-based."""

    pi: tuple[int, ...]

    @property
    def m(self) -> int:
        return len(self.pi)

    def points(self) -> list[tuple[int, int]]:
        return [(x + 1, y) for x, y in enumerate(self.pi)]

    def __post_init__(self):
        if sorted(self.pi) != list(range(1, len(self.pi) + 1)):
            raise NotMatchingError(f"pi {self.pi} is not a permutation of 1..m")


def separation_cut(g: OrderedGraph) -> int:
    """Cut position c with every edge satisfying u < c <= v; 0 for edgeless."""
    if not g.edges:
        return 0
    max_left = max(u for u, _ in g.edges)
    min_right = min(v for _, v in g.edges)
    if max_left >= min_right:
        raise NotSeparatedError(
            f"left endpoint {max_left} not before right endpoint {min_right}"
        )
    return max_left + 1


def to_grid(g: OrderedGraph) -> GridMatching:
    """Grid representation; columns ordered by left, rows by right endpoints."""
    if not g.is_matching():
        raise NotMatchingError("grid representation needs a matching")
    separation_cut(g)
    by_left = sorted(range(g.m), key=lambda e: g.edges[e][0])
    right_rank = {
        e: r + 1
        for r, e in enumerate(sorted(range(g.m), key=lambda e: g.edges[e][1]))
    }
    return GridMatching(tuple(right_rank[e] for e in by_left))


def grid_to_graph(grid: GridMatching) -> OrderedGraph:
    """Canonical separated matching on 2m vertices realizing the permutation."""
    m = grid.m
    return build_graph(2 * m, [(x - 1, m + y - 1) for x, y in grid.points()])


def grid_edge_order(g: OrderedGraph) -> list[int]:
    """Edge ids of g in grid column order (by left endpoint)."""
    return sorted(range(g.m), key=lambda e: g.edges[e][0])


def canonicalize_pattern(g: OrderedGraph) -> OrderedGraph:
    """Drop isolated vertices and reindex, preserving the order."""
    used = sorted({v for e in g.edges for v in e})
    index = {v: i for i, v in enumerate(used)}
    return OrderedGraph(
        len(used),
        tuple(sorted((index[u], index[v]) for u, v in g.edges)),
        g.multi,
    )


# Text formats: .olg graphs, `perm:` lines, assignment JSON


def parse_olg(text: str, multi: bool = False) -> OrderedGraph:
    """Parse the `.olg` format: `n m` header then one `u v` pair per line."""
    lines = text.splitlines()
    if not lines:
        raise ParseError("empty input", 1)
    head = lines[0].split()
    if len(head) != 2:
        raise ParseError(f"expected 'n m', got {lines[0]!r}", 1)
    try:
        n, m = int(head[0]), int(head[1])
    except ValueError:
        raise ParseError(f"bad header {lines[0]!r}", 1) from None
    edges = []
    lineno = 1
    for lineno, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        parts = line.split()
        if len(parts) != 2:
            raise ParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            edges.append((int(parts[0]), int(parts[1])))
        except ValueError:
            raise ParseError(f"bad edge {line!r}", lineno) from None
    if len(edges) != m:
        raise ParseError(f"header promised {m} edges, found {len(edges)}", lineno)
    return build_graph(n, edges, multi=multi)


def dump_olg(g: OrderedGraph) -> str:
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def parse_perm(text: str) -> GridMatching:
    """Parse `perm: p1 p2 ... pm` (values 1-based)."""
    line = text.strip()
    if not line.startswith("perm:"):
        raise ParseError("expected 'perm:' prefix", 1)
    try:
        values = tuple(int(t) for t in line[len("perm:"):].split())
    except ValueError:
        raise ParseError(f"bad permutation values in {line!r}", 1) from None
    try:
        return GridMatching(values)
    except NotMatchingError as exc:
        raise ParseError(str(exc), 1) from None


def dump_perm(grid: GridMatching) -> str:
    return "perm: " + " ".join(str(v) for v in grid.pi) + "\n"


def dump_assignment(a: PageAssignment) -> str:
    return json.dumps(
        {"spec": [k.value for k in a.spec.kinds], "pages": list(a.page_of)}
    )


def parse_assignment(text: str) -> PageAssignment:
    try:
        data = json.loads(text)
        spec = PageSpec(tuple(PageKind(c) for c in data["spec"]))
        pages = tuple(int(p) for p in data["pages"])
    except (json.JSONDecodeError, KeyError, ValueError, TypeError) as exc:
        raise ParseError(f"bad assignment JSON: {exc}", 1) from None
    return PageAssignment(spec, pages)
