"""Command-line entry point: ``toric-split``.

Exit codes: 0 success (including EXPECTED-FAIL at p = 2), 1 a check
failed, 2 bad input, 3 capacity exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
import time

from . import catalog
from .cubical import build_quotient
from .decomposition import EXPECTED_FAIL, FAIL, PASS, bbcg_check, rhs_betti, verify_main
from .dga import invariant_betti
from .errors import CapacityError, InputError
from .graphs import SimpleGraph, a_numbers, build_tubing_complex, compare_graphs, tubes, verify_graph_corollary
from .lambdamap import LambdaMap, kernel_elements, random_lambda
from .linalg import Field, betti_numbers, nonzero_part
from .simplicial import SimplicialComplex, random_complex
from .subsets import members

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_CAPACITY = 0, 1, 2, 3


def _load(path):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"{path} is not valid JSON: {exc}") from exc


def _table(header, rows) -> str:
    """Aligned text table; ``rows`` are ``(label, values)``, values may be None."""
    cells = [[str(h) for h in header]]
    for label, values in rows:
        if values is None:
            cells.append([label] + ["-"] * (len(header) - 1))
        else:
            cells.append([label] + [str(v) for v in values] + [""] * (len(header) - 1 - len(values)))
    widths = [max(len(r[i]) for r in cells) for i in range(len(header))]
    return "\n".join("  ".join(c.rjust(w) if i else c.ljust(w) for i, (c, w) in enumerate(zip(r, widths))) for r in cells)


def _emit_json(args, obj):
    if getattr(args, "json", None):
        text = json.dumps(obj, indent=2)
        if args.json == "-":
            print(text)
        else:
            with open(args.json, "w") as fh:
                fh.write(text + "\n")


def _print_main(report, out=print):
    top = len(report.quotient)
    out(f"K: m={report.m} facets={report.complex['facets']}   lambda: {report.lam['rows']}")
    out(f"|ker lambda| = {report.kernel_order}   characteristic: {report.characteristic}   "
        f"free action: {report.free_action}   coefficients: {report.field}")
    out(_table(["degree"] + list(range(top)), [
        ("quotient", report.quotient),
        ("invariant", report.invariant),
        ("rhs", report.rhs),
    ]))
    for note in report.notes:
        out(f"note: {note}")
    out(f"verdict: {report.verdict}")


# -- commands ----------------------------------------------------------------


def cmd_complex_betti(args) -> int:
    k = SimplicialComplex.from_json(_load(args.input))
    field = Field.parse(args.field)
    b = k.reduced_betti(field)
    print(f"reduced Betti numbers over {field.name} (m={k.m}, f-vector {k.f_vector()})")
    print(_table(["degree"] + list(b), [("b~", list(b.values()))]))
    _emit_json(args, {"kind": "complex_betti", "field": field.name, "complex": k.to_json(),
                      "reduced_betti": {str(q): v for q, v in b.items()}})
    return EXIT_OK


def cmd_verify(args) -> int:
    k = SimplicialComplex.from_json(_load(args.k))
    lam = LambdaMap.from_json(_load(args.lam))
    report = verify_main(k, lam, args.p)
    _print_main(report)
    _emit_json(args, report.to_json())
    return EXIT_FAIL if report.verdict == FAIL else EXIT_OK


def cmd_bbcg(args) -> int:
    k = SimplicialComplex.from_json(_load(args.k))
    report = bbcg_check(k, args.field)
    top = len(report.lhs)
    print(f"RZ_K against the sum over all full subcomplexes, coefficients {report.field}")
    print(_table(["degree"] + list(range(top)), [("RZ_K", report.lhs), ("sum", report.rhs)]))
    print(f"verdict: {report.verdict}")
    _emit_json(args, report.to_json())
    return EXIT_FAIL if report.verdict == FAIL else EXIT_OK


def _graph(path) -> SimpleGraph:
    g = SimpleGraph.from_json(_load(path))
    g.require_connected()
    return g


def _print_graph_report(r):
    print(f"graph {r.graph['edges']} (distinguished node {r.graph['distinguished']}), coefficients {r.field}")
    print(f"tubes: {len(r.tubes)}   f-vector: {tuple(r.f_vector)}   lambda_G characteristic: {r.characteristic}   "
          f"cells: {r.cells['rzk']} -> {r.cells['quotient']} orbits (|ker| = {r.cells['kernel']})")
    top = len(r.betti)
    print(_table(["degree"] + list(range(top)), [("a_i", r.a_numbers), ("betti M(G)", r.betti), ("rhs", r.rhs)]))
    print(_table(["rows S", "phi(S)", "a", "degree", "b~(K_I)", "ok"], [
        (str(s.coords), [s.nodes, s.a, s.expected_degree, s.reduced_betti, s.ok]) for s in r.summands
    ]))
    print("spheres in the suspension: " + ", ".join(f"{n} x S^{d}" for d, n in r.sphere_multiset.items()))
    for f in r.failures:
        print(f"failure: {f}")
    print(f"verdict: {r.verdict}")


def cmd_graph(args) -> int:
    if args.graph_cmd == "tubes":
        g = _graph(args.input)
        ts = tubes(g)
        k = build_tubing_complex(g)
        print(f"{len(ts)} tubes, tubing complex f-vector {k.f_vector()}")
        for j, t in enumerate(ts, 1):
            print(f"  {j:3d}  {list(members(t))}")
        _emit_json(args, {"kind": "graph_tubes", "tubes": [list(members(t)) for t in ts],
                          "f_vector": list(k.f_vector()), "complex": k.to_json()})
        return EXIT_OK
    if args.graph_cmd == "a-numbers":
        g = _graph(args.input)
        a = a_numbers(g)
        print(_table(["i"] + list(range(len(a))), [("a_i", a)]))
        _emit_json(args, {"kind": "graph_a_numbers", "a_numbers": a})
        return EXIT_OK
    if args.graph_cmd == "verify":
        r = verify_graph_corollary(_graph(args.input), args.p)
        _print_graph_report(r)
        _emit_json(args, r.to_json())
        return EXIT_FAIL if r.verdict == FAIL else EXIT_OK
    if args.graph_cmd == "compare":
        c = compare_graphs(_graph(args.input), _graph(args.input2), args.p)
        for r in (c.first, c.second):
            _print_graph_report(r)
            print()
        print(c.verdict)
        _emit_json(args, c.to_json())
        return EXIT_OK if c.verdict == "EQUIVALENT" else EXIT_FAIL
    raise InputError(f"unknown graph command {args.graph_cmd}")


def cmd_demo(args) -> int:
    status = EXIT_OK
    if args.scenario == "rp2":
        k, lam = catalog.triangle_boundary(), catalog.rp2_lambda()
        print("K = boundary of a triangle, lambda = [[1,0,1],[0,1,1]]: M(K, lambda) is RP^2.")
        print("Every nonempty I in Row(lambda) is an edge of K, so the wedge is contractible.\n")
        for p in (3, 2):
            r = verify_main(k, lam, p)
            print(f"-- p = {p}")
            _print_main(r)
            print()
            if r.verdict == FAIL or (p == 2 and r.verdict != EXPECTED_FAIL):
                status = EXIT_FAIL
    elif args.scenario == "p4-vs-claw":
        print("P_4 (path on four nodes) against K_{1,3} (claw), p = 3.\n")
        c = compare_graphs(catalog.path4(), catalog.claw(), 3)
        for r in (c.first, c.second):
            _print_graph_report(r)
            print()
        print(f"a_i(P_4) = {c.first.a_numbers}, a_i(K_1,3) = {c.second.a_numbers}: {c.verdict}")
        if c.verdict != "EQUIVALENT":
            status = EXIT_FAIL
    elif args.scenario == "bbcg":
        k = catalog.triangle_boundary()
        print("lambda = identity on the triangle boundary: RZ_K is the boundary of the cube.\n")
        for f in ("f2", "q"):
            r = bbcg_check(k, f)
            print(_table(["degree"] + list(range(len(r.lhs))), [("RZ_K", r.lhs), ("sum", r.rhs)]))
            print(f"{r.field}: {r.verdict}\n")
            if r.verdict != PASS:
                status = EXIT_FAIL
        r = verify_main(k, LambdaMap.identity(3), 0)
        _print_main(r)
        if r.verdict != PASS:
            status = EXIT_FAIL
    return status


def cmd_check(args) -> int:
    """Randomised three-pipeline agreement run."""
    rng = random.Random(args.seed)
    fields = [Field.parse(p) for p in args.p]
    failures = 0
    start = time.perf_counter()
    for trial in range(args.samples):
        m = rng.randint(1, args.max_m)
        k = random_complex(m, rng)
        lam = random_lambda(m, rng)
        chains = build_quotient(k, kernel_elements(lam)).chain_complex()
        for field in fields:
            a = nonzero_part(betti_numbers(chains, field))
            b = nonzero_part(invariant_betti(k, lam, field))
            c = nonzero_part(rhs_betti(k, lam, field))
            if not a == b == c:
                failures += 1
                print(f"FAIL trial {trial}: {k!r} {lam!r} over {field.name}: quotient {a}, invariant {b}, rhs {c}")
    elapsed = time.perf_counter() - start
    print(f"{args.samples} samples x {len(fields)} fields, seed {args.seed}: "
          f"{failures} disagreements ({elapsed:.1f}s)")
    return EXIT_FAIL if failures else EXIT_OK


# -- parser ------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="toric-split", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def add_json(p):
        p.add_argument("--json", metavar="PATH", help="also write the JSON report (use - for stdout)")

    cx = sub.add_parser("complex", help="simplicial complex utilities")
    cxs = cx.add_subparsers(dest="complex_cmd", required=True)
    cb = cxs.add_parser("betti", help="reduced Betti numbers of a complex")
    cb.add_argument("--in", dest="input", required=True)
    cb.add_argument("--field", default="q", help="q, f2, f3, f5, ... (default q)")
    add_json(cb)
    cb.set_defaults(func=cmd_complex_betti)

    v = sub.add_parser("verify", help="compare the three Betti pipelines for M(K, lambda)")
    v.add_argument("--k", required=True, help="complex JSON")
    v.add_argument("--lambda", dest="lam", required=True, help="lambda JSON")
    v.add_argument("--p", type=int, default=0, help="0 for Q, or a prime (2 shows the failure case)")
    add_json(v)
    v.set_defaults(func=cmd_verify)

    bb = sub.add_parser("bbcg", help="RZ_K against the sum over all full subcomplexes")
    bb.add_argument("--k", required=True)
    bb.add_argument("--field", default="q")
    add_json(bb)
    bb.set_defaults(func=cmd_bbcg)

    gr = sub.add_parser("graph", help="graph associahedra")
    grs = gr.add_subparsers(dest="graph_cmd", required=True)
    for name in ("tubes", "a-numbers", "verify", "compare"):
        g = grs.add_parser(name)
        g.add_argument("--in", dest="input", required=True)
        if name == "compare":
            g.add_argument("--in2", dest="input2", required=True)
        if name in ("verify", "compare"):
            g.add_argument("--p", type=int, default=3)
        add_json(g)
    gr.set_defaults(func=cmd_graph)

    d = sub.add_parser("demo", help="bundled scenarios")
    d.add_argument("scenario", choices=["rp2", "p4-vs-claw", "bbcg"])
    d.set_defaults(func=cmd_demo)

    ck = sub.add_parser("check", help="randomised agreement of the three pipelines")
    ck.add_argument("--seed", type=int, default=0)
    ck.add_argument("--samples", type=int, default=50)
    ck.add_argument("--max-m", type=int, default=5)
    ck.add_argument("--p", type=int, nargs="+", default=[0, 3, 5])
    ck.set_defaults(func=cmd_check)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except CapacityError as exc:
        print(f"capacity error: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
