import json
import xml.etree.ElementTree as ET

import pytest

from mixedpages.cli import main, parse_grid_ascii, render_arcs, render_grid, render_grid_svg
from mixedpages.core import (
    GridMatching,
    PageAssignment,
    PageSpec,
    build_graph,
    dump_assignment,
    dump_olg,
    grid_to_graph,
)
from mixedpages.constructions import gen_diamond
from mixedpages.patterns import largest_diamond


@pytest.fixture
def twist_file(tmp_path):
    path = tmp_path / "twist.olg"
    path.write_text("4 2\n0 2\n1 3\n")
    return str(path)


@pytest.fixture
def diamond_file(tmp_path):
    path = tmp_path / "diamond.perm"
    path.write_text("perm: 3 4 1 2\n")
    return str(path)


class TestRenderers:
    def test_grid_round_trip(self):
        grid = GridMatching((2, 1))
        text = render_grid(grid)
        assert text == "#.\n.#\n"
        assert parse_grid_ascii(text).pi == grid.pi

    def test_grid_round_trip_bigger(self):
        grid = gen_diamond(3)
        assert parse_grid_ascii(render_grid(grid)).pi == grid.pi

    def test_grid_witness_highlight(self):
        grid = gen_diamond(2)
        w = largest_diamond(grid)
        assert render_grid(grid, w).count("*") == 4

    def test_grid_svg_well_formed(self):
        svg = render_grid_svg(gen_diamond(2))
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")

    def test_arcs_svg_well_formed(self):
        g = grid_to_graph(gen_diamond(2))
        _, a = __import__("mixedpages.solver", fromlist=["solver"]).mixed_page_number(g)
        svg = render_arcs(g, a)
        root = ET.fromstring(svg)
        assert root.tag.endswith("svg")
        assert svg.count("<path") == g.m

    def test_arcs_empty_graph(self):
        svg = render_arcs(build_graph(0, []))
        assert ET.fromstring(svg) is not None


class TestCommands:
    def test_solve_spec_feasible(self, capsys, twist_file):
        assert main(["solve", twist_file, "--spec", "Q"]) == 0
        out = capsys.readouterr().out
        assert json.loads(out)["spec"] == ["Q"]

    def test_solve_spec_infeasible_exit_code(self, capsys, twist_file):
        assert main(["solve", twist_file, "--spec", "S"]) == 1

    def test_solve_mn_json(self, capsys, diamond_file):
        assert main(["solve", diamond_file, "--mn", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["mn"] == 2

    def test_solve_budget_unknown_exit_code(self, capsys, tmp_path):
        from mixedpages.constructions import gen_2critical

        path = tmp_path / "g.olg"
        path.write_text(dump_olg(gen_2critical(4)))
        assert main(["solve", str(path), "--mn", "--budget", "3"]) == 2

    def test_detect_twist(self, capsys, twist_file):
        assert main(["detect", twist_file, "--kind", "twist", "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["k"] == 2

    def test_detect_diamond_exact(self, capsys, diamond_file):
        assert main(["detect", diamond_file, "--kind", "diamond", "--exact", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["k"] == 2

    def test_ferrers_json(self, capsys, diamond_file):
        assert main(["ferrers", diamond_file, "--json"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data == {"rows": [2, 2], "c": [2, 4], "a": [2, 4], "square": 2}

    def test_approx_valid_json(self, capsys, diamond_file):
        assert main(["approx", diamond_file]) == 0
        data = json.loads(capsys.readouterr().out)
        assert len(data["pages"]) == 4

    def test_gen_and_solve_pipeline(self, capsys, tmp_path):
        assert main(["gen", "tight2k", "--k", "1"]) == 0
        perm_text = capsys.readouterr().out
        path = tmp_path / "gen.perm"
        path.write_text(perm_text)
        assert main(["solve", str(path), "--mn", "--json"]) == 0
        assert json.loads(capsys.readouterr().out)["mn"] == 2

    def test_gen_critical_family(self, capsys):
        assert main(["gen", "stack", "--s", "2", "--n", "5"]) == 0
        out = capsys.readouterr().out
        assert out.startswith("10 5\n")

    def test_layout_via_quotient(self, capsys, tmp_path):
        from conftest import rand_matching
        import random

        g = rand_matching(random.Random(7), 12)
        path = tmp_path / "m.olg"
        path.write_text(dump_olg(g))
        assert main(["layout", str(path), "--via-quotient", "--k", "3"]) == 0
        out = capsys.readouterr().out
        assert "level" in out or json.loads(out.splitlines()[0])["pages"]

    def test_enumerate_critical_cli(self, capsys):
        assert main([
            "enumerate-critical", "--separated", "--k", "1",
            "--max-grid", "3", "--max-edges", "5",
        ]) == 0
        out = capsys.readouterr().out
        manifest = json.loads(out.splitlines()[0])
        assert manifest["count"] == 9

    def test_render_grid_cli(self, capsys, diamond_file):
        assert main(["render", diamond_file, "--grid"]) == 0
        assert parse_grid_ascii(capsys.readouterr().out).pi == (3, 4, 1, 2)

    def test_verify_assignment_ok_and_bad(self, capsys, tmp_path, twist_file):
        good = tmp_path / "good.json"
        good.write_text(dump_assignment(PageAssignment(PageSpec.from_string("Q"), (0, 0))))
        assert main(["verify", twist_file, "--assignment", str(good)]) == 0
        bad = tmp_path / "bad.json"
        bad.write_text(dump_assignment(PageAssignment(PageSpec.from_string("S"), (0, 0))))
        assert main(["verify", twist_file, "--assignment", str(bad)]) == 1

    def test_verify_witness(self, capsys, tmp_path, diamond_file):
        w = largest_diamond(gen_diamond(2))
        wfile = tmp_path / "w.json"
        wfile.write_text(w.to_json())
        assert main(["verify", diamond_file, "--witness", str(wfile)]) == 0

    def test_error_reported_cleanly(self, capsys, tmp_path):
        path = tmp_path / "broken.olg"
        path.write_text("not a graph\n")
        assert main(["solve", str(path), "--mn"]) == 1
        assert "error" in capsys.readouterr().err

    def test_critical_verb(self, capsys, tmp_path):
        from mixedpages.constructions import gen_2critical

        g = gen_2critical(2)
        path = tmp_path / "crit.olg"
        path.write_text(dump_olg(g))
        assert main(["critical", str(path), "--k", "2"]) == 0
        assert "critical" in capsys.readouterr().out
        path.write_text(dump_olg(g.delete_edge(0)))
        assert main(["critical", str(path), "--k", "2"]) == 1

    def test_enumerate_critical_jobs(self, capsys):
        assert main([
            "enumerate-critical", "--separated", "--k", "1",
            "--max-grid", "3", "--max-edges", "4", "--jobs", "2",
        ]) == 0
        manifest = json.loads(capsys.readouterr().out.splitlines()[0])
        assert manifest["count"] == 9

    def test_conjecture_flag(self, capsys):
        assert main(["enumerate-critical", "--matchings", "--conjecture", "--max-m", "3"]) == 0
        data = json.loads(capsys.readouterr().out)
        assert data["k1"]["consistent"] is True

    def test_arc_colors_match_page_count(self, tmp_path):
        from mixedpages.constructions import gen_2critical
        from mixedpages import solver as slv

        g = gen_2critical(2)
        _, a = slv.mixed_page_number(g)
        svg = render_arcs(g, a)
        used = {part.split('"')[0] for part in svg.split('stroke="')[1:]}
        assert len([c for c in used if c.startswith("#")]) == 3
