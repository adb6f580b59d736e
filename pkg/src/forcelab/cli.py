"""Command-line interface.

Every subcommand prints one deterministic JSON document on stdout (an
envelope with the command, its inputs, the outputs, and the engine version);
diagnostics and timing go to stderr.  Errors exit nonzero with a
machine-readable {"error": {code, message}} document on stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path
from typing import Any, Optional

from . import __version__
from .errors import ForcelabError, ParseError, PreconditionError
from .forcing import forcing_number, graph_forcing_stats, is_forcing_set
from .fractional import (
    bipartite_support_criterion,
    decompose_forcing_function,
    extension_unique,
    fractional_forcing_number,
    graph_ff_max,
    graph_ff_min,
    symmetrized_fpm,
)
from .fixtures import FIXTURES, run_all_fixtures, run_fixture
from .graph import (
    Graph,
    automorphism_from_vertex_perm,
    automorphism_group,
    cartesian_product,
    complete_graph,
    cycle_graph,
    hypercube,
    path_graph,
)
from .hypercube_bounds import (
    build_blue_set,
    ff_upper_bound,
    forcing_upper_bound,
    verify_blue_set,
)
from .matchings import EdgeAssignment, VertexWeights, enumerate_perfect_matchings
from .serialize import (
    assignment_from_json,
    assignment_to_json_dict,
    certificate_to_json_dict,
    ff_result_to_json_dict,
    fraction_str,
    graph_from_text,
    graph_to_text,
    parse_fraction,
    stats_to_json_dict,
)


def _read_graph(path: str) -> Graph:
    return graph_from_text(Path(path).read_text())


def _read_assignment(path: str) -> EdgeAssignment:
    return assignment_from_json(Path(path).read_text())


def _edge_list(raw: str) -> list[int]:
    if not raw.strip():
        return []
    try:
        return [int(tok) for tok in raw.replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad edge index list: {raw!r}") from None


def _emit(args, command: str, inputs: dict[str, Any], outputs: dict[str, Any], summary: str) -> None:
    if args.output == "summary":
        print(summary)
        return
    doc = {
        "command": command,
        "engine_version": __version__,
        "inputs": inputs,
        "outputs": outputs,
    }
    print(json.dumps(doc, indent=2, sort_keys=True))


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------

def cmd_gen(args) -> int:
    family = args.family
    if family == "hypercube":
        g = hypercube(args.n, max_n=args.max_n)
    elif family == "path":
        g = path_graph(args.n)
    elif family == "cycle":
        g = cycle_graph(args.n)
    elif family == "complete":
        g = complete_graph(args.n)
    elif family == "grid":
        g = cartesian_product(path_graph(args.rows), path_graph(args.cols))
    else:
        raise PreconditionError(f"unknown family {family!r}")
    text = graph_to_text(g)
    if args.out:
        Path(args.out).write_text(text)
        _emit(args, "gen", vars_of(args, "family", "n", "rows", "cols", "out"),
              {"n": g.vertex_count, "m": g.edge_count, "path": args.out},
              f"wrote {g.vertex_count} vertices, {g.edge_count} edges to {args.out}")
    else:
        sys.stdout.write(text)
    return 0


def cmd_pm(args) -> int:
    g = _read_graph(args.graph)
    matchings = enumerate_perfect_matchings(g, max_vertices=args.max_n, max_count=args.max_matchings)
    outputs = {"count": len(matchings), "matchings": [list(m) for m in matchings]}
    _emit(args, "pm", {"graph": args.graph}, outputs,
          f"{len(matchings)} perfect matchings")
    return 0


def cmd_forcing(args) -> int:
    g = _read_graph(args.graph)
    if args.matching is not None:
        m = _edge_list(args.matching)
        result = forcing_number(g, m)
        outputs = {"forcing_number": result.number, "optimal_set": list(result.forcing_set)}
        _emit(args, "forcing", {"graph": args.graph, "matching": m}, outputs,
              f"forcing number {result.number}, optimal set {list(result.forcing_set)}")
        return 0
    stats = graph_forcing_stats(g, max_vertices=args.max_n, max_matchings=args.max_matchings)
    outputs = stats_to_json_dict(stats)
    if not args.per_matching:
        outputs.pop("per_matching")
    _emit(args, "forcing", {"graph": args.graph}, outputs,
          f"f={stats.f} F={stats.F} spectrum={list(stats.spectrum)}")
    return 0


def cmd_ff(args) -> int:
    if args.assignment:
        w = _read_assignment(args.assignment)
        result = fractional_forcing_number(w.graph, w, max_support=args.max_n if args.max_n > 24 else 26)
        outputs = ff_result_to_json_dict(result)
        _emit(args, "ff", {"assignment": args.assignment}, outputs,
              f"fractional forcing number {fraction_str(result.value)}")
        return 0
    g = _read_graph(args.graph)
    if args.minimum:
        value = graph_ff_min(g)
        _emit(args, "ff", {"graph": args.graph, "minimum": True},
              {"ff_min": fraction_str(value)}, f"ff_min = {fraction_str(value)}")
        return 0
    if args.maximum:
        result = graph_ff_max(g, mode=args.mode)
        outputs = {"ff_max": fraction_str(result.value), "status": result.status}
        _emit(args, "ff", {"graph": args.graph, "maximum": True, "mode": args.mode}, outputs,
              f"ff_max = {fraction_str(result.value)} ({result.status})")
        return 0
    raise PreconditionError("ff needs --assignment, --min, or --max")


def cmd_check_forcing(args) -> int:
    if args.subset is not None:
        g = _read_graph(args.graph)
        m = _edge_list(args.matching)
        s = _edge_list(args.subset)
        check = is_forcing_set(g, m, s)
        outputs: dict[str, Any] = {"forcing": check.forcing}
        if check.counterexample is not None:
            outputs["counterexample"] = list(check.counterexample)
        _emit(args, "check-forcing", {"graph": args.graph, "matching": m, "subset": s},
              outputs, f"forcing set: {check.forcing}")
        return 0
    partial = _read_assignment(args.partial)
    target = _read_assignment(args.target)
    if partial.graph != target.graph:
        raise PreconditionError("partial and target live on different graphs")
    cert = extension_unique(partial.graph, VertexWeights.ones(partial.graph), partial, target)
    _emit(args, "check-forcing", {"partial": args.partial, "target": args.target},
          certificate_to_json_dict(cert), f"forcing function: {cert.unique}")
    return 0


def cmd_criterion(args) -> int:
    w = _read_assignment(args.assignment)
    s = _edge_list(args.subset)
    ok = bipartite_support_criterion(w.graph, w, s, max_edges=args.max_edges)
    _emit(args, "criterion", {"assignment": args.assignment, "subset": s},
          {"criterion": ok}, f"criterion: {ok}")
    return 0


def cmd_decompose(args) -> int:
    doc = json.loads(Path(args.input).read_text())
    try:
        target = assignment_from_json(json.dumps(doc["target"]))
        forcing = assignment_from_json(json.dumps(doc["forcing"]))
        raw_parts = doc["parts"]
    except KeyError as exc:
        raise ParseError(f"decompose input missing key: {exc}") from None
    parts = []
    for item in raw_parts:
        lam = parse_fraction(item["lambda"])
        factor = EdgeAssignment(target.graph, tuple(parse_fraction(v) for v in item["values"]))
        parts.append((factor, lam))
    decomposed = decompose_forcing_function(target.graph, forcing, target, parts)
    outputs = {
        "parts": [
            {
                "lambda": fraction_str(p.coefficient),
                "forcing": assignment_to_json_dict(p.forcing),
                "certificate": certificate_to_json_dict(p.certificate),
            }
            for p in decomposed
        ]
    }
    _emit(args, "decompose", {"input": args.input}, outputs,
          f"decomposed into {len(decomposed)} forcing parts")
    return 0


def cmd_symmetrize(args) -> int:
    w = _read_assignment(args.assignment)
    g = w.graph
    if args.perm:
        autos = []
        for raw in args.perm:
            perm = tuple(int(t) for t in raw.replace(",", " ").split())
            autos.append(automorphism_from_vertex_perm(g, perm))
    else:
        group = automorphism_group(g, max_vertices=args.max_n if args.max_n < 20 else 12)
        autos = list(group.automorphisms)
    averaged = symmetrized_fpm(g, w, autos)
    _emit(args, "symmetrize", {"assignment": args.assignment, "autos": len(autos)},
          {"assignment": assignment_to_json_dict(averaged)},
          f"averaged over {len(autos)} automorphisms")
    return 0


def cmd_hypercube_bound(args) -> int:
    n = args.n
    blue = build_blue_set(n, max_n=args.max_n if args.max_n > 4 else 12)
    if args.verify and n <= args.max_lp_n:
        verification = verify_blue_set(n, "lp", blue=blue, max_lp_n=args.max_lp_n)
        verified, method = verification.verified, "lp"
    else:
        verified, method = False, "none"
    outputs = {
        "n": n,
        "blue_size": len(blue.blue_edges),
        "red_size": len(blue.red_edges),
        "ff_upper": fraction_str(ff_upper_bound(n)),
        "forcing_upper": forcing_upper_bound(n),
        "verified": verified,
        "method": method,
    }
    _emit(args, "hypercube-bound", {"n": n}, outputs,
          f"n={n} ff_upper={outputs['ff_upper']} forcing_upper={outputs['forcing_upper']} "
          f"verified={verified}")
    return 0


def cmd_verify_blue(args) -> int:
    verification = verify_blue_set(args.n, args.method, max_lp_n=args.max_lp_n)
    outputs: dict[str, Any] = {
        "n": verification.n,
        "method": verification.method,
        "verified": verification.verified,
        "blue_size": verification.blue_size,
        "red_size": verification.red_size,
    }
    if verification.cycles_checked is not None:
        outputs["cycles_checked"] = verification.cycles_checked
    if verification.certificate is not None:
        outputs["certificate"] = certificate_to_json_dict(verification.certificate)
    if verification.failing_cycle is not None:
        outputs["failing_cycle"] = list(verification.failing_cycle)
    _emit(args, "verify-blue", {"n": args.n, "method": args.method}, outputs,
          f"n={args.n} method={args.method} verified={verification.verified}")
    return 0


def cmd_fixtures(args) -> int:
    if args.name:
        if args.name not in FIXTURES:
            raise PreconditionError(f"unknown fixture {args.name!r}; known: {sorted(FIXTURES)}")
        got, ok = run_fixture(args.name)
        _emit(args, "fixtures", {"name": args.name}, got,
              f"{args.name}: {'ok' if ok else 'MISMATCH'} {got}")
        return 0 if ok else 1
    reports, ok = run_all_fixtures()
    _emit(args, "fixtures", {}, reports,
          "all fixtures ok" if ok else "fixture MISMATCH")
    return 0 if ok else 1


def vars_of(args, *names) -> dict[str, Any]:
    return {k: getattr(args, k, None) for k in names if getattr(args, k, None) is not None}


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="forcelab",
        description="Exact forcing numbers of integral and fractional perfect matchings.",
    )
    parser.add_argument("--output", choices=["json", "summary"], default="json")
    parser.add_argument("--max-edges", type=int, default=64, dest="max_edges",
                        help="cap for combinatorial cycle enumeration")
    parser.add_argument("--max-matchings", type=int, default=1_000_000, dest="max_matchings")
    parser.add_argument("--max-n", type=int, default=24, dest="max_n",
                        help="vertex/dimension cap for enumerative operations")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("gen", help="graph generators")
    p.add_argument("--family", required=True,
                   choices=["hypercube", "path", "cycle", "complete", "grid"])
    p.add_argument("--n", type=int, default=0)
    p.add_argument("--rows", type=int, default=2)
    p.add_argument("--cols", type=int, default=2)
    p.add_argument("--out")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("pm", help="enumerate perfect matchings")
    p.add_argument("--graph", required=True)
    p.set_defaults(func=cmd_pm)

    p = sub.add_parser("forcing", help="forcing numbers: per matching or whole graph")
    p.add_argument("--graph", required=True)
    p.add_argument("--matching", help="edge indices, e.g. '0,3'")
    p.add_argument("--per-matching", action="store_true", dest="per_matching")
    p.set_defaults(func=cmd_forcing)

    p = sub.add_parser("ff", help="fractional forcing number of an assignment or graph min/max")
    p.add_argument("--assignment")
    p.add_argument("--graph")
    p.add_argument("--min", action="store_true", dest="minimum")
    p.add_argument("--max", action="store_true", dest="maximum")
    p.add_argument("--mode", choices=["exact_transitive", "vertex_lower_bound"],
                   default="exact_transitive")
    p.set_defaults(func=cmd_ff)

    p = sub.add_parser("check-forcing", help="check a forcing set or a forcing function")
    p.add_argument("--graph")
    p.add_argument("--matching")
    p.add_argument("--subset")
    p.add_argument("--partial", help="assignment JSON (function mode)")
    p.add_argument("--target", help="assignment JSON (function mode)")
    p.set_defaults(func=cmd_check_forcing)

    p = sub.add_parser("criterion", help="bipartite forcing-support criterion")
    p.add_argument("--assignment", required=True)
    p.add_argument("--subset", required=True)
    p.set_defaults(func=cmd_criterion)

    p = sub.add_parser("decompose", help="split a minimal forcing function along a convex combination")
    p.add_argument("--input", required=True,
                   help="JSON with target, forcing, and [{lambda, values}] parts")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("symmetrize", help="average an assignment over automorphisms")
    p.add_argument("--assignment", required=True)
    p.add_argument("--perm", action="append",
                   help="explicit vertex permutation '2,3,0,1' (repeatable); default: full group")
    p.set_defaults(func=cmd_symmetrize)

    p = sub.add_parser("hypercube-bound", help="blue-set sizes and the bound formulas")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--verify", action=argparse.BooleanOptionalAction, default=True)
    p.add_argument("--max-lp-n", type=int, default=6, dest="max_lp_n")
    p.set_defaults(func=cmd_hypercube_bound)

    p = sub.add_parser("verify-blue", help="certify the blue set as a forcing support")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--method", choices=["lp", "cycles"], default="lp")
    p.add_argument("--max-lp-n", type=int, default=6, dest="max_lp_n")
    p.set_defaults(func=cmd_verify_blue)

    p = sub.add_parser("fixtures", help="re-check bundled reference instances")
    p.add_argument("--name", choices=sorted(FIXTURES))
    p.set_defaults(func=cmd_fixtures)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.monotonic()
    try:
        code = args.func(args)
    except ForcelabError as exc:
        doc = {"error": {"code": exc.code, "message": str(exc)}}
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
        return 2
    except OSError as exc:
        doc = {"error": {"code": "io-error", "message": str(exc)}}
        print(json.dumps(doc, sort_keys=True), file=sys.stderr)
        return 2
    elapsed = time.monotonic() - started
    print(f"[forcelab] {args.subcommand} finished in {elapsed:.3f}s", file=sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
