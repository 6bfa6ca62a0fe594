"""Command line interface.

Exit codes: 0 success, 1 validation inequality, 2 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from pathlib import Path

from . import invariants
from .fileformat import ParseError, parse, render
from .invariants import (classical_tutte, corpus, cross_validate, krushkal,
                         pst_delcon, pst_quasitree, pst_state_sum,
                         surface_tutte, underlying_multigraph)
from .packaged import PackagedRibbonGraph, PackagingError, packaged_dual
from .poly import HalfExpPoly, MultiPoly
from .ribbon import (RibbonGraphError, activities, enumerate_quasi_trees,
                     partial_dual, trace_boundaries)


def _load(path: str) -> PackagedRibbonGraph:
    try:
        text = Path(path).read_text()
    except OSError as ex:
        raise ParseError(f"cannot read {path}: {ex.strerror}", 1) from ex
    return parse(text)


def _poly_terms(p) -> list[dict]:
    rows = []
    for m, c in p._sorted_terms():
        if isinstance(p, MultiPoly):
            rows.append({"coeff": c, "x": m.ex, "y": m.ey,
                         "x_gamma": {str(g): e for g, e in m.exg},
                         "y_gamma": {str(g): e for g, e in m.eyg}})
        else:
            rows.append({"coeff": c, "alpha": m.ealpha, "beta": m.ebeta,
                         "a_doubled": m.ea2, "b_doubled": m.eb2})
    return rows


def render_poly(p, fmt: str = "text", method: str | None = None,
                counters: dict | None = None) -> str:
    if fmt == "text":
        return p.canonical_text()
    doc = {"method": method, "polynomial": p.canonical_text(),
           "terms": _poly_terms(p), "counters": counters or {}}
    return json.dumps(doc, indent=2, sort_keys=True)


def _edge_list(arg: str) -> list[str]:
    return [t for t in arg.split(",") if t]


def _cmd_compute(args) -> int:
    pg = _load(args.file)
    order = (_edge_list(args.order) if args.order
             else sorted(pg.graph.edges))
    counters: dict = {}
    if args.method == "statesum":
        p = pst_state_sum(pg)
    elif args.method == "delcon":
        counter = [0]
        p = pst_delcon(pg, _counter=counter)
        counters["delcon_nodes"] = counter[0]
    else:
        if set(order) != set(pg.graph.edges):
            print("error: --order must list every edge exactly once",
                  file=sys.stderr)
            return 2
        p = pst_quasitree(pg, order)
    print(render_poly(p, args.format, method=args.method, counters=counters))
    return 0


def _cmd_validate(args) -> int:
    pg = _load(args.file)
    rng = random.Random(args.seed)
    edges = list(pg.graph.edges)
    orders = []
    for _ in range(args.orders):
        o = edges[:]
        rng.shuffle(o)
        orders.append(tuple(o))
    rep = cross_validate(pg, orders)
    ok = rep.equal and rep.shape_checks_passed
    print(f"state-sum:      {rep.state_sum.canonical_text()}")
    print(f"del-con:        {rep.delcon.canonical_text()}")
    for order, p in rep.quasitree.items():
        print(f"quasi-tree {','.join(order)}: {p.canonical_text()}")
    print(f"equal: {rep.equal}  shape-checks: {rep.shape_checks_passed}")
    return 0 if ok else 1


def _cmd_quasitrees(args) -> int:
    pg = _load(args.file)
    for q in enumerate_quasi_trees(pg.graph):
        print(",".join(sorted(q)) if q else "-")
    return 0


def _cmd_activities(args) -> int:
    pg = _load(args.file)
    q = frozenset(_edge_list(args.quasitree))
    order = _edge_list(args.order) if args.order else sorted(pg.graph.edges)
    rep = activities(pg.graph, q, order)
    h = partial_dual(pg.graph, q)
    kind = {}
    for e in rep.internal_dead:
        kind[e] = "internal dead " + \
            ("non-orientable" if h.sign[e] == -1 else "orientable")
    for e in rep.external_dead:
        kind[e] = "external dead " + \
            ("non-orientable" if h.sign[e] == -1 else "orientable")
    for e in rep.internal_live_orientable:
        kind[e] = "internal live orientable"
    for e in rep.external_live_orientable:
        kind[e] = "external live orientable"
    for e in rep.internal_live_nonorientable:
        kind[e] = "internal live non-orientable"
    for e in rep.external_live_nonorientable:
        kind[e] = "external live non-orientable"
    for e in sorted(kind):
        print(f"{e}: {kind[e]}")
    return 0


def _cmd_specialize(args) -> int:
    pg = _load(args.file)
    if args.target == "krushkal":
        direct, via_subst = krushkal(pg.graph)
        if direct != via_subst:
            print("error: the two evaluation routes disagree", file=sys.stderr)
            return 1
        print(render_poly(direct, args.format, method="krushkal"))
    elif args.target == "surface-tutte":
        print(render_poly(surface_tutte(pg.graph), args.format,
                          method="surface-tutte"))
    else:
        p = classical_tutte(underlying_multigraph(pg.graph))
        print(render_poly(p, args.format, method="classical-tutte"))
    return 0


def _cmd_dual(args) -> int:
    pg = _load(args.file)
    sys.stdout.write(render(packaged_dual(pg)))
    return 0


def _cmd_pdual(args) -> int:
    pg = _load(args.file)
    edges = set(_edge_list(args.edges))
    g = partial_dual(pg.graph, edges)
    sys.stdout.write(render(PackagedRibbonGraph.discrete(g)))
    return 0


def _cmd_corpus(args) -> int:
    out = Path(args.out) if args.out else None
    if out:
        out.mkdir(parents=True, exist_ok=True)
    for i, (_, pg) in enumerate(corpus(args.max_edges, args.seed,
                                       random_packagings=args.random)):
        text = render(pg)
        if out:
            (out / f"instance-{i:05d}.rg").write_text(text)
        else:
            print(f"# instance {i}")
            sys.stdout.write(text)
            print()
    return 0


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="ribbonpoly",
        description="Polynomial invariants of (packaged) ribbon graphs.")
    sub = ap.add_subparsers(dest="command", required=True)

    def add_format(p):
        p.add_argument("--format", choices=["text", "structured"],
                       default="text")

    p = sub.add_parser("compute", help="evaluate the invariant polynomial")
    p.add_argument("file")
    p.add_argument("--method", choices=["statesum", "delcon", "quasitree"],
                   default="statesum")
    p.add_argument("--order", help="comma-separated total edge order")
    add_format(p)
    p.set_defaults(fn=_cmd_compute)

    p = sub.add_parser("validate",
                       help="cross-check the three evaluation methods")
    p.add_argument("file")
    p.add_argument("--orders", type=int, default=1)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(fn=_cmd_validate)

    p = sub.add_parser("quasitrees", help="list quasi-tree edge sets")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_quasitrees)

    p = sub.add_parser("activities",
                       help="edge activities for one quasi-tree")
    p.add_argument("file")
    p.add_argument("--quasitree", required=True,
                   help="comma-separated edges (empty string for the "
                        "empty quasi-tree)")
    p.add_argument("--order")
    p.set_defaults(fn=_cmd_activities)

    p = sub.add_parser("specialize", help="evaluate a specialization")
    p.add_argument("file")
    p.add_argument("--target", required=True,
                   choices=["krushkal", "surface-tutte", "classical-tutte"])
    add_format(p)
    p.set_defaults(fn=_cmd_specialize)

    p = sub.add_parser("dual", help="geometric dual with transported blocks")
    p.add_argument("file")
    p.set_defaults(fn=_cmd_dual)

    p = sub.add_parser("pdual", help="partial dual on an edge subset")
    p.add_argument("file")
    p.add_argument("--edges", required=True,
                   help="comma-separated edge subset")
    p.set_defaults(fn=_cmd_pdual)

    p = sub.add_parser("corpus", help="emit small-instance files")
    p.add_argument("--max-edges", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--random", type=int, default=1,
                   help="random packagings per graph")
    p.add_argument("--out", help="directory for instance files "
                                 "(default: stream to stdout)")
    p.set_defaults(fn=_cmd_corpus)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as ex:
        return 2 if ex.code not in (0, None) else 0
    try:
        return args.fn(args)
    except (ParseError, PackagingError, RibbonGraphError) as ex:
        print(f"error: {ex}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
