"""Command-line frontend: solving, detection, generation, layout transfer,
enumeration, rendering, and verification.

Exit codes: 0 ok/feasible, 1 infeasible/violation, 2 unknown/budget.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import enumeration, greene, quotient, solver
from .constructions import FAMILIES
from .core import (
    GridMatching,
    OrderedGraph,
    PageAssignment,
    PageKind,
    dump_assignment,
    dump_olg,
    dump_perm,
    grid_to_graph,
    parse_assignment,
    parse_olg,
    parse_perm,
    to_grid,
    validate_assignment,
)
from .errors import BudgetExceededError, MixedPagesError
from .patterns import (
    PatternWitness,
    largest_diamond,
    largest_rainbow,
    largest_square_thick,
    largest_thick,
    largest_twist,
    witness_violations,
)

OK, INFEASIBLE, UNKNOWN = 0, 1, 2

PALETTE = [
    "#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
    "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22", "#17becf",
]


def read_input(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def load_graph(path: str) -> OrderedGraph:
    text = read_input(path)
    if text.lstrip().startswith("perm:"):
        return grid_to_graph(parse_perm(text))
    return parse_olg(text)


def load_grid(path: str) -> GridMatching:
    text = read_input(path)
    if text.lstrip().startswith("perm:"):
        return parse_perm(text)
    return to_grid(parse_olg(text))


# Rendering


def render_grid(grid: GridMatching, witness: PatternWitness | None = None) -> str:
    """ASCII grid, highest row on top; witness points drawn as '*'."""
    m = grid.m
    marked = set(witness.edges) if witness else set()
    lines = []
    for y in range(m, 0, -1):
        row = []
        for x in range(1, m + 1):
            if grid.pi[x - 1] == y:
                row.append("*" if x - 1 in marked else "#")
            else:
                row.append(".")
        lines.append("".join(row))
    return "\n".join(lines) + "\n"


def parse_grid_ascii(text: str) -> GridMatching:
    rows = [line for line in text.splitlines() if line.strip()]
    m = len(rows)
    pi = [0] * m
    for i, line in enumerate(rows):
        y = m - i
        for x, ch in enumerate(line):
            if ch in "#*":
                pi[x] = y
    return GridMatching(tuple(pi))


def render_grid_svg(grid: GridMatching, witness: PatternWitness | None = None) -> str:
    m = grid.m
    cell = 24
    size = cell * (m + 1)
    marked = set(witness.edges) if witness else set()
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">'
    ]
    for i in range(1, m + 1):
        c = i * cell
        parts.append(
            f'<line x1="{c}" y1="{cell}" x2="{c}" y2="{m * cell}" stroke="#ddd"/>'
        )
        parts.append(
            f'<line x1="{cell}" y1="{c}" x2="{m * cell}" y2="{c}" stroke="#ddd"/>'
        )
    for x, y in grid.points():
        cx, cy = x * cell, (m + 1 - y) * cell
        color = "#d62728" if x - 1 in marked else "#1f77b4"
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="6" fill="{color}"/>')
    parts.append("</svg>")
    return "".join(parts) + "\n"


def render_arcs(g: OrderedGraph, assignment: PageAssignment | None = None) -> str:
    """Arc diagram as SVG: vertices on a line, semicircular arcs, one color
    per page, stacks solid and queues dashed."""
    step = 30
    margin = 20
    width = margin * 2 + step * max(g.n - 1, 0)
    height = margin + step * max((v - u for u, v in g.edges), default=1) // 2 + 40
    base = height - 20
    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for e, (u, v) in enumerate(g.edges):
        x1 = margin + u * step
        x2 = margin + v * step
        r = (x2 - x1) / 2
        if assignment is not None:
            page = assignment.page_of[e]
            color = PALETTE[page % len(PALETTE)]
            dash = "" if assignment.spec.kinds[page] is PageKind.STACK else ' stroke-dasharray="6 4"'
        else:
            color, dash = "#333333", ""
        parts.append(
            f'<path d="M {x1} {base} A {r} {r} 0 0 1 {x2} {base}" '
            f'fill="none" stroke="{color}" stroke-width="2"{dash}/>'
        )
    for v in range(g.n):
        x = margin + v * step
        parts.append(f'<circle cx="{x}" cy="{base}" r="3" fill="#000"/>')
        parts.append(
            f'<text x="{x}" y="{base + 14}" font-size="10" text-anchor="middle">{v}</text>'
        )
    parts.append("</svg>")
    return "".join(parts) + "\n"


# Subcommands


def cmd_solve(args) -> int:
    g = load_graph(args.input)
    try:
        if args.mn:
            k, assignment = solver.mixed_page_number(g, args.budget)
            label = {"mn": k}
        elif args.sn:
            k, assignment = solver.stack_number(g, args.budget)
            label = {"sn": k}
        elif args.qn:
            k, assignment = solver.queue_number(g)
            label = {"qn": k}
        else:
            from .core import PageSpec

            if not args.spec:
                raise MixedPagesError("solve needs --spec, --mn, --sn, or --qn")
            try:
                spec = PageSpec.from_string(args.spec)
            except ValueError:
                raise MixedPagesError(f"bad page spec {args.spec!r}") from None
            res = solver.feasible(g, spec, args.budget)
            if res.status == "unknown":
                print("unknown (budget exceeded)")
                return UNKNOWN
            if not res.feasible:
                print("infeasible")
                return INFEASIBLE
            print(dump_assignment(res.assignment))
            return OK
    except BudgetExceededError:
        print("unknown (budget exceeded)")
        return UNKNOWN
    if args.json:
        print(json.dumps({**label, "assignment": json.loads(dump_assignment(assignment))}))
    else:
        print(", ".join(f"{k} = {v}" for k, v in label.items()))
        print(dump_assignment(assignment))
    return OK


def cmd_detect(args) -> int:
    if args.kind in ("diamond",):
        host = load_grid(args.input)
        w = largest_diamond(host, exact=args.exact, budget=args.budget)
    else:
        host = load_graph(args.input)
        if args.kind == "twist":
            w = largest_twist(host, args.budget)
        elif args.kind == "rainbow":
            w = largest_rainbow(host)
        elif args.kind == "thick":
            if args.t:
                w = largest_thick(host, args.t, args.budget)
            else:
                w = largest_square_thick(host, args.budget)
        else:
            raise MixedPagesError(f"unknown kind {args.kind}")
    if args.json:
        print(w.to_json())
    else:
        print(f"{w.kind.value}: k = {w.k}, t = {w.t}, edges = {list(w.edges)}")
    return OK


def cmd_ferrers(args) -> int:
    grid = load_grid(args.input)
    diagram = greene.ferrers(grid)
    if args.json:
        print(
            json.dumps(
                {
                    "rows": list(diagram.rows),
                    "c": list(diagram.c),
                    "a": list(diagram.a),
                    "square": diagram.square,
                }
            )
        )
    else:
        print(diagram.ascii())
    return OK


def cmd_approx(args) -> int:
    grid = load_grid(args.input)
    assignment = greene.approx_mixed_layout(grid)
    print(dump_assignment(assignment))
    return OK


def cmd_gen(args) -> int:
    params = {
        key: getattr(args, key)
        for key in ("k", "t", "s", "q", "n", "r")
        if getattr(args, key) is not None
    }
    family = FAMILIES[args.family]
    obj = family(**params)
    if isinstance(obj, GridMatching):
        sys.stdout.write(dump_perm(obj) if not args.olg else dump_olg(grid_to_graph(obj)))
    else:
        sys.stdout.write(dump_olg(obj))
    return OK


def cmd_layout(args) -> int:
    g = load_graph(args.input)
    try:
        assignment, reports = quotient.iterated_quotient_layout_detailed(
            g, args.k, budget=args.budget
        )
    except BudgetExceededError:
        print("unknown (budget exceeded)")
        return UNKNOWN
    print(dump_assignment(assignment))
    for i, rep in enumerate(reports):
        print(
            f"level {len(reports) - i}: pages={rep.pages_used} ell={rep.ell} "
            f"m_intra={rep.m_intra} bound={rep.bound:.1f} "
            f"branches={sorted(rep.branches)}"
        )
    return OK


def cmd_critical(args) -> int:
    g = load_graph(args.input)
    mode = ("k", args.k) if args.k is not None else ("sq", args.s, args.q)
    try:
        verdict = solver.criticality(g, mode, args.budget)
    except BudgetExceededError:
        print("unknown (budget exceeded)")
        return UNKNOWN
    print(("critical" if verdict.critical else "not critical") + f": {verdict.reason}")
    return OK if verdict.critical else INFEASIBLE


def cmd_enumerate_critical(args) -> int:
    if args.conjecture:
        report = enumeration.conjecture_report(args.max_m, args.budget)
        summary = {
            key: {
                "count": report[key]["count"],
                "conjectured": report[key]["conjectured"],
                "matches": report[key]["matches"],
                "consistent": report[key]["consistent"],
            }
            for key in ("k1", "sq11")
        }
        print(json.dumps({"max_m": report["max_m"], **summary}))
        return OK
    if args.matchings:
        family = enumeration.EnumFamily("matchings", args.max_m)
    else:
        family = enumeration.EnumFamily(
            "separated", args.max_edges, args.max_grid, args.max_grid
        )
    mode = ("k", args.k) if args.k is not None else ("sq", args.s, args.q)
    try:
        result = enumeration.find_critical(
            family,
            mode,
            budget=args.budget,
            checkpoint=args.checkpoint,
            progress=args.progress,
            jobs=args.jobs,
        )
    except BudgetExceededError:
        print("unknown (budget exceeded)")
        return UNKNOWN
    print(json.dumps(result.to_manifest()))
    if args.out:
        with open(args.out, "w") as fh:
            for p in result.patterns:
                fh.write(dump_olg(p))
    else:
        for p in result.patterns:
            sys.stdout.write(dump_olg(p))
    return OK


def cmd_render(args) -> int:
    witness = None
    if args.witness:
        witness = PatternWitness.from_json(read_input(args.witness))
    if args.arcs:
        g = load_graph(args.input)
        assignment = parse_assignment(read_input(args.assignment)) if args.assignment else None
        sys.stdout.write(render_arcs(g, assignment))
    else:
        grid = load_grid(args.input)
        if args.svg:
            sys.stdout.write(render_grid_svg(grid, witness))
        else:
            sys.stdout.write(render_grid(grid, witness))
    return OK


def cmd_verify(args) -> int:
    g = load_graph(args.input)
    failures = []
    if args.assignment:
        assignment = parse_assignment(read_input(args.assignment))
        failures.extend(
            f"page violation: {v}" for v in validate_assignment(g, assignment)
        )
    if args.witness:
        witness = PatternWitness.from_json(read_input(args.witness))
        host = to_grid(g) if witness.kind.value == "diamond" else g
        failures.extend(witness_violations(host, witness))
    for f in failures:
        print(f)
    print("ok" if not failures else f"{len(failures)} violations")
    return OK if not failures else INFEASIBLE


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="mixedpages",
        description="Stack/queue/mixed page numbers of ordered graphs",
    )
    parser.add_argument("--seed", type=int, default=0, help="seed for randomized commands")
    sub = parser.add_subparsers(dest="verb", required=True)

    p = sub.add_parser("solve", help="exact feasibility and page numbers")
    p.add_argument("input")
    p.add_argument("--spec", help="page spec such as SSQ")
    p.add_argument("--mn", action="store_true")
    p.add_argument("--sn", action="store_true")
    p.add_argument("--qn", action="store_true")
    p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("detect", help="largest twist/rainbow/diamond/thick pattern")
    p.add_argument("input")
    p.add_argument("--kind", choices=["twist", "rainbow", "diamond", "thick"], required=True)
    p.add_argument("--t", type=int)
    p.add_argument("--exact", action="store_true")
    p.add_argument("--budget", type=int, default=10**7)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("ferrers", help="Greene/Ferrers diagram of a separated matching")
    p.add_argument("input")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_ferrers)

    p = sub.add_parser("approx", help="2-approximate mixed layout from the Ferrers square")
    p.add_argument("input")
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("gen", help="generate a named construction")
    p.add_argument("family", choices=sorted(FAMILIES))
    p.add_argument("--k", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--r", type=int)
    p.add_argument("--olg", action="store_true", help="emit .olg even for grid families")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("layout", help="lay out a matching via iterated quotients")
    p.add_argument("input")
    p.add_argument("--via-quotient", action="store_true")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_layout)

    p = sub.add_parser("critical", help="check criticality of an input graph")
    p.add_argument("input")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
    p.set_defaults(func=cmd_critical)

    p = sub.add_parser("enumerate-critical", help="mine critical patterns")
    p.add_argument("--separated", action="store_true")
    p.add_argument("--matchings", action="store_true")
    p.add_argument("--k", type=int)
    p.add_argument("--s", type=int)
    p.add_argument("--q", type=int)
    p.add_argument("--max-grid", type=int, default=5)
    p.add_argument("--max-edges", type=int, default=8)
    p.add_argument("--max-m", type=int, default=5)
    p.add_argument("--budget", type=int, default=solver.DEFAULT_BUDGET)
    p.add_argument("--checkpoint")
    p.add_argument("--out")
    p.add_argument("--progress", action="store_true")
    p.add_argument("--conjecture", action="store_true",
                   help="report matching critical counts against 8 and 12")
    p.add_argument("--jobs", type=int, default=1, help="worker processes (enumeration)")
    p.set_defaults(func=cmd_enumerate_critical)

    p = sub.add_parser("render", help="render a grid or arc diagram")
    p.add_argument("input")
    p.add_argument("--grid", action="store_true")
    p.add_argument("--arcs", action="store_true")
    p.add_argument("--svg", action="store_true")
    p.add_argument("--witness")
    p.add_argument("--assignment")
    p.set_defaults(func=cmd_render)

    p = sub.add_parser("verify", help="re-check an assignment or witness file")
    p.add_argument("input")
    p.add_argument("--assignment")
    p.add_argument("--witness")
    p.set_defaults(func=cmd_verify)

    args = parser.parse_args(argv)
    random.seed(args.seed)
    try:
        return args.func(args)
    except MixedPagesError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return INFEASIBLE


if __name__ == "__main__":
    sys.exit(main())
