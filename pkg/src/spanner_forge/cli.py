"""Command-line entry point: ``spanner-forge <command> ...``.

Exit codes: 0 when a verdict was computed (whatever it is), 2 on usage
errors, 3 when a budget ran out before a verdict.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
import time
from pathlib import Path
from typing import Callable, Sequence

from . import gadgets, lowerbound, snowflake
from .graph import Graph, GraphError, TreeSystem, bfs_tree
from .recognizers import chordal_ordering, is_weakly_chordal, simple_elimination_ordering
from .serialize import dumps, gadget_from_dict, gadget_to_dict, graph_from_dict, graph_to_dict, to_dot, trees_from_dict
from .verify import BUDGET_EXCEEDED, SCHEMA, Certificate, is_additive_spanner, verify_collective_spanner

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_BUDGET = 3


class UsageError(Exception):
    pass


GADGETS: dict[str, Callable[[argparse.Namespace], gadgets.Gadget]] = {
    "house": lambda a: gadgets.house(),
    "ell-house": lambda a: gadgets.ell_house(a.ell),
    "unit-interval-gadget": lambda a: gadgets.unit_interval_gadget(a.k),
    "chordal-gadget": lambda a: gadgets.chordal_gadget(a.k),
    "sun-gadget": lambda a: gadgets.sun_chordal_gadget(a.k),
    "star-graph": lambda a: gadgets.star_graph(a.k),
    "edge": lambda a: gadgets.single_edge_gadget(),
}

FAMILIES = sorted(GADGETS) + ["gadget-tree", "unit-interval-chain", "triangle-recursion", "snowflake"]


def _family(a: argparse.Namespace) -> tuple[Graph, gadgets.Gadget | None]:
    if a.family in GADGETS:
        gd = GADGETS[a.family](a)
        return gd.graph, gd
    if a.family == "gadget-tree":
        if a.gadget not in GADGETS:
            raise UsageError(f"--gadget must be one of {sorted(GADGETS)}")
        return gadgets.gadget_tree(GADGETS[a.gadget](a), a.depth).graph, None
    if a.family == "unit-interval-chain":
        return gadgets.unit_interval_chain(a.k, a.m).graph, None
    if a.family == "triangle-recursion":
        return snowflake.triangle_recursion_graph(a.c), None
    if a.family == "snowflake":
        return snowflake.build_snowflake(a.k, a.h).graph, None
    raise UsageError(f"unknown family {a.family!r}")


def _source(a: argparse.Namespace) -> tuple[Graph, gadgets.Gadget | None]:
    if getattr(a, "input", None):
        data = json.loads(Path(a.input).read_text())
        g = graph_from_dict(data)
        if "gadget" in data:
            return g, gadget_from_dict(data)
        return g, None
    if not getattr(a, "family", None):
        raise UsageError("give a graph family or --input FILE")
    return _family(a)


def _emit(a: argparse.Namespace, text: str) -> None:
    if a.out:
        Path(a.out).write_text(text)
    else:
        sys.stdout.write(text)


def _budget(a: argparse.Namespace) -> lowerbound.SearchBudget:
    return lowerbound.SearchBudget(a.budget_trees, a.budget_tuples, a.seed, a.mode)


def _finish(a: argparse.Namespace, cert: Certificate, started: float) -> int:
    if a.timing:
        cert.elapsed_ms = round((time.perf_counter() - started) * 1000, 3)
    if a.format == "text":
        _emit(a, render_table([cert], "text"))
    else:
        _emit(a, cert.to_json())
    return EXIT_BUDGET if cert.verdict == BUDGET_EXCEEDED else EXIT_OK


# commands


def cmd_generate(a: argparse.Namespace) -> int:
    g, gd = _family(a)
    if a.dot or a.format == "dot":
        _emit(a, to_dot(g, gd, name=a.family))
    else:
        _emit(a, dumps(gadget_to_dict(gd) if gd is not None else graph_to_dict(g)))
    return EXIT_OK


def cmd_recognize(a: argparse.Namespace) -> int:
    g, _ = _source(a)
    if a.cls == "chordal":
        rec = chordal_ordering(g)
    elif a.cls == "strongly-chordal":
        rec = simple_elimination_ordering(g)
    else:
        rec = is_weakly_chordal(g)
    out = {
        "schema": SCHEMA,
        "class": a.cls,
        "member": rec.ok,
        "ordering": rec.ordering.to_json() if rec.ordering else None,
        "witness": list(rec.witness) if rec.witness else None,
        "witness_in": rec.witness_in,
    }
    if a.format == "text":
        _emit(a, f"{a.cls}: {'yes' if rec.ok else 'no'}\n")
    else:
        _emit(a, dumps(out))
    return EXIT_OK


def cmd_verify(a: argparse.Namespace) -> int:
    started = time.perf_counter()
    g, _ = _source(a)
    if a.spanner:
        h = graph_from_dict(json.loads(Path(a.spanner).read_text()))
        cert = is_additive_spanner(g, h, a.c)
    else:
        if a.trees:
            ts = trees_from_dict(g, json.loads(Path(a.trees).read_text()))
        else:
            roots = [v for v in range(g.n) if v != a.skip_root] if a.bfs_roots is None else a.bfs_roots
            ts = TreeSystem(g, [bfs_tree(g, r) for r in roots])
        cert = verify_collective_spanner(g, ts, a.c)
    cert.instance = {"n": g.n, "m": g.m}
    return _finish(a, cert, started)


def _gadget_arg(a: argparse.Namespace) -> gadgets.Gadget:
    if a.input:
        _, gd = _source(a)
        if gd is None:
            raise UsageError("input JSON carries no gadget roles")
        return gd
    name = a.target or a.gadget
    if name not in GADGETS:
        raise UsageError(f"gadget must be one of {sorted(GADGETS)}")
    return GADGETS[name](a)


def cmd_certify(a: argparse.Namespace) -> int:
    started = time.perf_counter()
    budget = _budget(a)
    what = a.what
    if what == "depth-bound":
        if a.c < 2 or a.d < 1:
            raise UsageError("depth-bound needs --c >= 2 and --d >= 1")
        cert = Certificate(
            "computed",
            a.c,
            a.d,
            mode="exact",
            instance={"c": a.c, "d": a.d},
            detail={"C": [lowerbound.master_depth_bound(a.c, j) for j in range(1, a.d + 1)]},
        )
    elif what == "infinity-gadget":
        cert = lowerbound.certify_infinity_gadget(_gadget_arg(a), a.c, budget)
    elif what == "d-gadget":
        cert = lowerbound.certify_d_gadget(_gadget_arg(a), a.c, a.d, budget)
    elif what == "star-cover":
        cert = lowerbound.star_fc_cover_check(a.k, a.delta, budget)
    elif what == "sun-gadget":
        cert = lowerbound.sun_gadget_check(a.k, a.c, a.d, budget)
    else:
        H = gadgets.gadget_tree(_gadget_arg(a), a.depth)
        cert = lowerbound.gadget_tree_spanner_search(H, a.c, a.d, budget)
    return _finish(a, cert, started)


def _snowflake_arg(a: argparse.Namespace) -> snowflake.Snowflake:
    if a.k == 2:
        return snowflake.Snowflake(2, a.h, a.max_vertices)
    return snowflake.build_snowflake(a.k, a.h, a.max_vertices)


def cmd_snowflake(a: argparse.Namespace) -> int:
    s = _snowflake_arg(a)
    if a.action == "build":
        if s.n > a.max_vertices:
            sys.stderr.write(f"warning: S({s.k},{s.h}) has {s.n} vertices; emitting a summary only\n")
            _emit(a, dumps({"schema": SCHEMA, "k": s.k, "h": s.h, "n": s.n, "nodes": s.node_count}))
        elif a.dot or a.format == "dot":
            _emit(a, to_dot(s.graph, name=f"S({s.k},{s.h})"))
        else:
            _emit(a, dumps(graph_to_dict(s.graph)))
        return EXIT_OK
    if a.action == "fact2":
        pairs = [tuple(a.pair)] if a.pair else list(itertools.combinations(s.base, 2))
        rows = []
        ok = True
        for x, y in pairs:
            rep = snowflake.fact2_check(s, snowflake.chain_of_cliques(s, 0, x, y, a.alpha))
            ok &= rep.ok
            rows.append(
                {
                    "pair": [x, y],
                    "z": list(rep.chain.z),
                    "expected": [r.expected for r in rep.rows],
                    "measured": [r.measured for r in rep.rows],
                    "mismatches": rep.mismatches(),
                }
            )
        if a.format == "text":
            _emit(a, f"fact2 S({s.k},{s.h}) alpha={a.alpha}: {'all match' if ok else 'MISMATCH'}\n")
        else:
            _emit(a, dumps({"schema": SCHEMA, "k": s.k, "h": s.h, "alpha": a.alpha, "all_match": ok, "chains": rows}))
        return EXIT_OK
    if a.spanner == "full":
        spanner = s if s.n > a.max_vertices else s.graph
    else:
        spanner = snowflake.LazyTreeSpanner(s, a.spanner, a.seed)
    res = snowflake.find_deficient_edge(s, spanner, a.c)
    out = {"schema": SCHEMA, "k": s.k, "h": s.h, "spanner": a.spanner, "seed": a.seed, **res.to_dict()}
    if a.format == "text":
        _emit(a, f"{res.status} edge={res.edge} deficiency={res.deficiency}\n")
    else:
        _emit(a, dumps(out))
    return EXIT_OK


def render_table(certs: Sequence[Certificate], fmt: str = "markdown") -> str:
    """One row per certificate: instance, c, d/mu, verdict, mode, trees examined."""
    if not certs:
        raise UsageError("report needs at least one certificate")
    header = ["instance", "n", "c", "d/mu", "verdict", "mode", "trees"]
    rows = []
    for cert in certs:
        inst = cert.instance or {}
        name = inst.get("gadget") or inst.get("name") or "-"
        rows.append(
            [
                str(name),
                str(inst.get("n", "-")),
                str(cert.c),
                str(cert.mu if cert.mu is not None else "-"),
                cert.verdict,
                cert.mode,
                str(cert.trees_examined),
            ]
        )
    widths = [max(len(r[i]) for r in rows + [header]) for i in range(len(header))]
    if fmt == "markdown":
        line = lambda r: "| " + " | ".join(c.ljust(w) for c, w in zip(r, widths)) + " |"
        sep = "|" + "|".join("-" * (w + 2) for w in widths) + "|"
        return "\n".join([line(header), sep] + [line(r) for r in rows]) + "\n"
    line = lambda r: "  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip()
    return "\n".join([line(header)] + [line(r) for r in rows]) + "\n"


def cmd_report(a: argparse.Namespace) -> int:
    if not a.certificates:
        raise UsageError("report needs at least one certificate file")
    certs = [Certificate.from_dict(json.loads(Path(p).read_text())) for p in a.certificates]
    _emit(a, render_table(certs, "text" if a.format == "text" else "markdown"))
    return EXIT_OK


# parser


def _common(p: argparse.ArgumentParser) -> None:
    p.add_argument("--format", choices=["json", "dot", "text"], default="json")
    p.add_argument("--out", help="write the artifact here instead of stdout")
    p.add_argument("--timing", action="store_true", help="record elapsed_ms (breaks byte-identical output)")


def _params(p: argparse.ArgumentParser) -> None:
    p.add_argument("--k", type=int, default=2)
    p.add_argument("--ell", type=int, default=1)
    p.add_argument("--m", type=int, default=2, help="gadget count of a unit interval chain")
    p.add_argument("--depth", type=int, default=2)
    p.add_argument("--c", type=int, default=2)
    p.add_argument("--h", type=int, default=1)
    p.add_argument("--gadget", default="house", help=f"one of {', '.join(sorted(GADGETS))}")


def _budget_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--budget-trees", type=int, default=1_000_000)
    p.add_argument("--budget-tuples", type=int, default=50_000_000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--mode", choices=[lowerbound.EXHAUSTIVE, lowerbound.SAMPLED], default=lowerbound.EXHAUSTIVE)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="spanner-forge", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("generate", help="emit a generated graph as JSON or DOT")
    p.add_argument("family", choices=FAMILIES)
    _params(p)
    p.add_argument("--dot", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("recognize", help="chordal / strongly chordal / weakly chordal certificates")
    p.add_argument("cls", choices=["chordal", "strongly-chordal", "weakly-chordal"])
    p.add_argument("family", nargs="?", choices=FAMILIES)
    p.add_argument("--input")
    _params(p)
    _common(p)
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("verify", help="check a tree system or spanner against a graph")
    p.add_argument("family", nargs="?", choices=FAMILIES)
    p.add_argument("--input")
    _params(p)
    p.add_argument("--trees", help="JSON file with a tree system")
    p.add_argument("--spanner", help="JSON file with a spanning subgraph")
    p.add_argument("--bfs-roots", type=int, nargs="+", help="use BFS trees rooted here")
    p.add_argument("--skip-root", type=int, default=0, help="default system: BFS trees at all other vertices")
    _common(p)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("certify", help="lower-bound certifiers")
    p.add_argument(
        "what",
        choices=["infinity-gadget", "d-gadget", "star-cover", "sun-gadget", "tree-of-gadgets", "depth-bound"],
    )
    p.add_argument("target", nargs="?", metavar="GADGET", help="gadget name; overrides --gadget")
    p.add_argument("--input", help="gadget JSON (with roles) instead of --gadget")
    _params(p)
    p.add_argument("--d", type=int, default=1)
    p.add_argument("--delta", type=int, default=1)
    _budget_flags(p)
    _common(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("snowflake", help="snowflake k-trees: build, hunt, fact2")
    p.add_argument("action", choices=["build", "hunt", "fact2"])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--h", type=int, default=2)
    p.add_argument("--c", type=int, default=1)
    p.add_argument("--alpha", type=int, default=3)
    p.add_argument("--pair", type=int, nargs=2)
    p.add_argument("--spanner", choices=["random", "bfs", "full"], default="random")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-vertices", type=int, default=snowflake.DEFAULT_MAX_VERTICES)
    p.add_argument("--dot", action="store_true")
    _common(p)
    p.set_defaults(func=cmd_snowflake)

    p = sub.add_parser("report", help="summary table of certificate files")
    p.add_argument("certificates", nargs="*")
    _common(p)
    p.set_defaults(func=cmd_report)
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        a = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return a.func(a)
    except (UsageError, GraphError, ValueError, OSError, json.JSONDecodeError) as exc:
        sys.stderr.write(f"spanner-forge: error: {exc}\n")
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
