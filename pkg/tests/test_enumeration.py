import json

import pytest

from mixedpages.core import build_graph, canonicalize_pattern, grid_to_graph, GridMatching
from mixedpages.errors import BudgetExceededError
from mixedpages.enumeration import (
    EnumFamily,
    conjecture_report,
    contains_pattern,
    enumerate_matchings,
    enumerate_separated,
    find_critical,
)
from mixedpages import solver


def double_factorial_odd(m):
    out = 1
    for i in range(1, 2 * m, 2):
        out *= i
    return out


class TestStreams:
    def test_matching_counts_match_closed_form(self):
        for m in range(1, 6):
            assert sum(1 for _ in enumerate_matchings(m)) == double_factorial_odd(m)

    def test_matchings_are_distinct_perfect_matchings(self):
        seen = set()
        for g in enumerate_matchings(3):
            assert g.is_matching() and g.n == 6 and g.m == 3
            assert g.edges not in seen
            seen.add(g.edges)

    def test_separated_two_by_two_patterns(self):
        # Direct listing of all 0-1 matrices up to 2x2 without empty rows or
        # columns: one single edge, the two degree-2 forks, the 2-twist, the
        # 2-rainbow, four 3-edge patterns, and the full grid.
        got = list(enumerate_separated(2, 2, 4))
        assert len(got) == 10
        assert len({g.edges for g in got}) == 10
        assert all(canonicalize_pattern(g) == g for g in got)

    def test_separated_ordered_by_edge_count(self):
        sizes = [g.m for g in enumerate_separated(3, 3, 4)]
        assert sizes == sorted(sizes)


class TestContainment:
    def test_twist_inside_bigger_twist(self):
        small = grid_to_graph(GridMatching((1, 2)))
        big = grid_to_graph(GridMatching((1, 2, 3)))
        assert contains_pattern(big, small)
        assert not contains_pattern(small, big)

    def test_order_matters(self):
        twist = grid_to_graph(GridMatching((1, 2)))
        rainbow = grid_to_graph(GridMatching((2, 1)))
        assert not contains_pattern(twist, rainbow)
        assert not contains_pattern(rainbow, twist)

    def test_containment_allows_extra_edges(self):
        host = build_graph(6, [(0, 3), (1, 4), (2, 5)])
        assert contains_pattern(host, build_graph(4, [(0, 2), (1, 3)]))


class TestFindCritical:
    def test_unique_01_and_10_critical(self):
        fam = EnumFamily("separated", 4, 3, 3)
        rainbow_only = find_critical(fam, ("sq", 0, 1))
        assert [p.edges for p in rainbow_only.patterns] == [((0, 3), (1, 2))]
        twist_only = find_critical(fam, ("sq", 1, 0))
        assert [p.edges for p in twist_only.patterns] == [((0, 2), (1, 3))]

    def test_nine_one_critical_already_in_small_grids(self):
        result = find_critical(EnumFamily("separated", 5, 3, 3), ("k", 1))
        assert len(result.patterns) == 9
        for p in result.patterns:
            assert solver.criticality(p, ("k", 1)).critical

    def test_critical_sets_are_containment_antichains(self):
        result = find_critical(EnumFamily("separated", 5, 3, 3), ("k", 1))
        ps = result.patterns
        for i, p in enumerate(ps):
            for q in ps[i + 1:]:
                assert not contains_pattern(p, q)
                assert not contains_pattern(q, p)

    def test_deterministic(self):
        fam = EnumFamily("separated", 5, 3, 3)
        a = find_critical(fam, ("k", 1))
        b = find_critical(fam, ("k", 1))
        assert [p.edges for p in a.patterns] == [p.edges for p in b.patterns]

    def test_manifest_records_bounds(self):
        result = find_critical(EnumFamily("separated", 4, 2, 2), ("k", 1))
        manifest = result.to_manifest()
        assert manifest["complete_up_to"] == {
            "max_edges": 4,
            "max_rows": 2,
            "max_cols": 2,
        }
        assert manifest["scanned"] == 10

    def test_node_budget(self):
        with pytest.raises(BudgetExceededError):
            find_critical(EnumFamily("separated", 5, 3, 3), ("k", 1), node_budget=5)

    def test_checkpoint_written(self, tmp_path):
        path = tmp_path / "check.json"
        find_critical(EnumFamily("separated", 4, 2, 2), ("k", 1), checkpoint=str(path))
        data = json.loads(path.read_text())
        assert data["manifest"]["count"] == len(data["patterns"])


class TestConjectureReport:
    def test_small_scan_internally_consistent(self):
        rep = conjecture_report(4)
        assert rep["k1"]["count"] == 8
        assert rep["k1"]["matches"] is True
        assert rep["k1"]["consistent"] is True
        assert rep["sq11"]["consistent"] is True

    def test_zero_one_critical_matchings(self):
        rainbow_only = find_critical(EnumFamily("matchings", 3), ("sq", 0, 1))
        assert len(rainbow_only.patterns) == 1
        assert rainbow_only.patterns[0].edges == ((0, 3), (1, 2))
