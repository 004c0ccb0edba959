import pytest

from conftest import rand_graph, rand_matching
from mixedpages.core import (
    GridMatching,
    PageSpec,
    build_graph,
    grid_to_graph,
    validate_assignment,
)
from mixedpages.errors import BudgetExceededError
from mixedpages.patterns import largest_rainbow
from mixedpages.constructions import gen_2critical, gen_diamond, gen_stack_critical, gen_thick_twist
from mixedpages.solver import (
    brute_force_mixed_page_number,
    criticality,
    feasible,
    mixed_page_number,
    queue_number,
    splits,
    stack_number,
)


def rainbow(k):
    return grid_to_graph(GridMatching(tuple(range(k, 0, -1))))


def twist(k):
    return grid_to_graph(GridMatching(tuple(range(1, k + 1))))


class TestFeasible:
    def test_rainbow_needs_a_stack(self):
        g = rainbow(3)
        assert not feasible(g, PageSpec.from_string("QQ")).feasible
        assert feasible(g, PageSpec.from_string("S")).feasible

    def test_diamond_two_pages(self):
        g = grid_to_graph(gen_diamond(2))
        for spec in ("S", "Q"):
            assert not feasible(g, PageSpec.from_string(spec)).feasible
        assert feasible(g, PageSpec.from_string("QQ")).feasible
        assert feasible(g, PageSpec.from_string("SS")).feasible

    def test_g2_infeasible_on_all_two_page_splits(self):
        g = gen_2critical(2)
        for spec in splits(2):
            assert not feasible(g, spec).feasible
        for e in range(g.m):
            assert any(feasible(g.delete_edge(e), spec).feasible for spec in splits(2))

    def test_returned_assignment_is_valid(self, rng):
        for _ in range(20):
            g = rand_graph(rng, 8, 7)
            k, a = mixed_page_number(g)
            assert validate_assignment(g, a) == []

    def test_budget_reports_unknown(self):
        g = gen_2critical(4)
        res = feasible(g, PageSpec.from_string("SS"), budget=5)
        assert res.budget_hit and res.status == "unknown"

    def test_empty_graph_fits_empty_spec(self):
        res = feasible(build_graph(3, []), PageSpec(()))
        assert res.feasible


class TestPageNumbers:
    def test_empty_graph(self):
        assert mixed_page_number(build_graph(4, []))[0] == 0

    def test_thick_twist_mixed_page_number(self):
        assert mixed_page_number(gen_thick_twist(3, 3))[0] == 3

    def test_pure_numbers_on_twist_and_rainbow(self):
        assert stack_number(twist(4))[0] == 4
        assert queue_number(twist(4))[0] == 1
        assert stack_number(rainbow(4))[0] == 1
        assert queue_number(rainbow(4))[0] == 4

    def test_odd_cycle_realization_needs_three_stacks(self):
        assert stack_number(gen_stack_critical(2, 5))[0] == 3

    def test_queue_number_is_largest_rainbow(self, rng):
        for _ in range(40):
            g = rand_graph(rng, 9, 9)
            q, a = queue_number(g)
            assert q == largest_rainbow(g).k
            assert validate_assignment(g, a) == []

    def test_matches_brute_force_oracle(self, rng):
        for _ in range(25):
            g = rand_graph(rng, 7, 5)
            assert mixed_page_number(g)[0] == brute_force_mixed_page_number(g)

    def test_monotone_under_deletion(self, rng):
        for _ in range(10):
            g = rand_matching(rng, 5)
            base, _ = mixed_page_number(g)
            for e in range(g.m):
                assert mixed_page_number(g.delete_edge(e))[0] <= base

    def test_minimality_reverified(self, rng):
        for _ in range(10):
            g = rand_graph(rng, 7, 5)
            k, _ = mixed_page_number(g)
            if k > 0:
                assert all(not feasible(g, spec).feasible for spec in splits(k - 1))


class TestCriticality:
    def test_two_rainbow_is_the_unique_01_critical(self):
        assert criticality(rainbow(2), ("sq", 0, 1)).critical
        assert criticality(twist(2), ("sq", 1, 0)).critical
        assert not criticality(rainbow(3), ("sq", 0, 1)).critical

    def test_g2_is_two_critical(self):
        assert criticality(gen_2critical(2), ("k", 2)).critical

    def test_diamond_is_not_one_critical(self):
        assert not criticality(grid_to_graph(gen_diamond(2)), ("k", 1)).critical

    def test_budget_surfaces_as_error(self):
        with pytest.raises(BudgetExceededError):
            criticality(gen_2critical(4), ("k", 2), budget=3)
