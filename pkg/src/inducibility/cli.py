"""Command line interface.

One binary, one subcommand per pipeline: density evaluation, symmetrisation,
gradient/strictness reports, finite and continuous maximiser search, the four
certificate pipelines, brute-force oracle cross-checks and edit distances.

All machine output is a JSON report (schema inducibility.report/1, rationals
as "p/q" strings); the human-readable verdict goes to stdout. Exit codes:
0 success/pass, 1 check failed, 2 inconclusive (budget exhausted), 3 usage
error. Reports are deterministic for a fixed configuration and seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional, Sequence

from .graphs import Graph, parse_graph_text, write_graph_text
from .objectives import ObjectiveSpec, lambda_graph, brute_lambda_max
from .partite import PartiteVector, edit_distance_vectors, lambda_of_vector
from .perturbation import (AttachmentPattern, attach_value, flip_gradient,
                           lagrange_residual, pattern_e, vertex_gradient)
from .symmetrise import SymmetrisationError, symmetrise_full, symmetrise_vertex
from .strictness import strictness_certificate
from .optsearch import continuous_opt, finite_opt
from .certificates import certify_k2111, certify_k311, certify_krt, certify_kst
from .graphs import edit_distance_exact

SCHEMA_ID = "inducibility.report/1"

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INCONCLUSIVE = 2
EXIT_USAGE = 3


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# Input parsing
# ---------------------------------------------------------------------------

def parse_objective(text: str) -> ObjectiveSpec:
    """Mini-language: "KP a1,a2,..." | "SUM c1*KP ... + c2*KP ..." | @table.json"""
    text = text.strip()
    if text.startswith("@"):
        return _objective_from_table_file(Path(text[1:]))
    if text.upper().startswith("KP"):
        return ObjectiveSpec.partite_density(_parse_partition(text[2:]))
    if text.upper().startswith("SUM"):
        terms = []
        for chunk in text[3:].split("+"):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "*" not in chunk:
                raise UsageError(f"bad SUM term {chunk!r}: expected c*KP a,b,...")
            coeff_txt, kp = chunk.split("*", 1)
            kp = kp.strip()
            if not kp.upper().startswith("KP"):
                raise UsageError(f"bad SUM term {chunk!r}: expected c*KP a,b,...")
            terms.append((Fraction(coeff_txt.strip()), _parse_partition(kp[2:])))
        if not terms:
            raise UsageError("empty SUM objective")
        return ObjectiveSpec.combination(terms)
    raise UsageError(f"cannot parse objective {text!r}")


def _parse_partition(text: str) -> list[int]:
    try:
        parts = [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError as e:
        raise UsageError(f"bad partition {text!r}") from e
    if not parts or any(p <= 0 for p in parts):
        raise UsageError(f"bad partition {text!r}")
    return parts


def _objective_from_table_file(path: Path) -> ObjectiveSpec:
    obj = json.loads(path.read_text())
    k = int(obj["k"])
    table = {}
    for entry in obj["values"]:
        g = Graph.from_edges(int(entry.get("n", k)), [tuple(e) for e in entry["edges"]])
        table[g] = Fraction(entry["value"])
    return ObjectiveSpec.from_table(k, table, label=f"@{path.name}")


def parse_vector(text: str) -> PartiteVector:
    text = text.strip()
    if text.startswith("@"):
        text = Path(text[1:]).read_text()
    return PartiteVector.from_json(text)


def read_graph(path: str) -> Graph:
    if path == "-":
        return parse_graph_text(sys.stdin.read())
    return parse_graph_text(Path(path).read_text())


def _vector_json(x: PartiteVector) -> dict:
    return {"x0": str(x.x0), "parts": [str(p) for p in x.parts]}


# ---------------------------------------------------------------------------
# Report plumbing
# ---------------------------------------------------------------------------

def make_report(command: str, verdict: str, result: dict,
                objective: Optional[str] = None) -> dict:
    return {"schema": SCHEMA_ID, "command": command, "objective": objective,
            "verdict": verdict, "result": result}


def validate_report(report: dict) -> None:
    """Validate a report against the shipped schema (envelope subset)."""
    schema = json.loads(resources.files("inducibility.data")
                        .joinpath("report.schema.json").read_text())
    for key in schema["required"]:
        if key not in report:
            raise ValueError(f"report missing key {key!r}")
    if report["schema"] != SCHEMA_ID:
        raise ValueError("wrong schema id")
    if report["verdict"] not in schema["properties"]["verdict"]["enum"]:
        raise ValueError("bad verdict")
    if not isinstance(report["result"], dict):
        raise ValueError("result must be an object")
    _validate_rationals(report["result"])


def _validate_rationals(node) -> None:
    if isinstance(node, dict):
        for v in node.values():
            _validate_rationals(v)
    elif isinstance(node, list):
        for v in node:
            _validate_rationals(v)
    elif isinstance(node, str) and _looks_rational(node):
        Fraction(node)  # raises on malformed p/q


def _looks_rational(s: str) -> bool:
    body = s[1:] if s.startswith("-") else s
    if "/" in body:
        a, _, b = body.partition("/")
        return a.isdigit() and b.isdigit()
    return False


def emit(report: dict, args, verdict_line: str) -> None:
    validate_report(report)
    text = json.dumps(report, indent=1, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n")
    if args.quiet:
        print(verdict_line)
    else:
        print(verdict_line)
        if not args.out:
            print(text)


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def cmd_density(args) -> int:
    spec = parse_objective(args.objective)
    if args.vector:
        x = parse_vector(args.vector)
        lam = lambda_of_vector(spec, x)
        result = {"lambda": str(lam), "vector": _vector_json(x)}
    elif args.graph:
        g = read_graph(args.graph)
        lam = lambda_graph(spec, g)
        result = {"lambda": str(lam), "n": g.n}
    else:
        raise UsageError("density needs --vector or --graph")
    emit(make_report("density", "value", result, spec.label), args, str(lam))
    return EXIT_PASS


def cmd_symmetrise(args) -> int:
    spec = parse_objective(args.objective)
    g = read_graph(args.graph)
    try:
        if args.vertex is not None:
            trace = symmetrise_vertex(spec, g, args.vertex)
        else:
            trace = symmetrise_full(spec, g)
    except SymmetrisationError as e:
        emit(make_report("symmetrise", "fail", {"error": str(e)}, spec.label),
             args, f"fail: {e}")
        return EXIT_FAIL
    if args.trace_out:
        Path(args.trace_out).write_text(trace.to_json() + "\n")
    result = {
        "steps": len(trace.steps),
        "monotone": trace.monotone,
        "final_part_sizes": trace.final_shape.part_sizes if trace.final_shape else None,
        "lambda_initial": str(trace.steps[0].lam_before) if trace.steps
                          else str(lambda_graph(spec, g)),
        "lambda_final": str(trace.steps[-1].lam_after) if trace.steps
                        else str(lambda_graph(spec, g)),
        "final_graph": write_graph_text(trace.final_graph),
    }
    emit(make_report("symmetrise", "pass", result, spec.label), args,
         f"pass: {len(trace.steps)} steps, final parts {result['final_part_sizes']}")
    return EXIT_PASS


def cmd_gradients(args) -> int:
    spec = parse_objective(args.objective)
    x = parse_vector(args.vector)
    flips = {}
    for i1 in x.supp_star:
        for i2 in x.supp_star:
            if i2 >= i1:
                flips[f"{i1},{i2}"] = str(flip_gradient(spec, x, i1, i2))
    clones = {}
    for i in x.supp_star:
        clones[str(i)] = str(attach_value(spec, x, pattern_e(i, x)).value)
    res = lagrange_residual(spec, x)
    extras = {}
    for pat in args.pattern or []:
        obj = json.loads(pat)
        p = AttachmentPattern({int(k): v for k, v in obj["b"].items()},
                              Fraction(obj.get("alpha", "1")))
        vg = vertex_gradient(spec, x, p)
        extras[pat] = {"value": str(vg.value),
                       "alpha_poly": [str(c) for c in vg.poly.coeffs]}
    result = {"flip_gradients": flips, "clone_values": clones,
              "lagrange_residual": str(res), "vertex_gradients": extras,
              "vector": _vector_json(x)}
    emit(make_report("gradients", "value", result, spec.label), args,
         f"lagrange residual {res}")
    return EXIT_PASS


def cmd_strictness(args) -> int:
    spec = parse_objective(args.objective)
    candidates = [parse_vector(v) for v in args.vector]
    report = strictness_certificate(spec, candidates)
    result = json.loads(report.to_json())
    verdict = "pass" if report.passed else "fail"
    emit(make_report("strictness", verdict, result, spec.label), args,
         f"{verdict}: c = {report.c}")
    return EXIT_PASS if report.passed else EXIT_FAIL


def cmd_opt(args) -> int:
    spec = parse_objective(args.objective)
    if args.mode == "finite":
        if args.n is None:
            raise UsageError("finite mode needs --n")
        val, shapes = finite_opt(spec, args.n)
        result = {"n": args.n, "lambda_n": str(val),
                  "shapes": [s.part_sizes for s in shapes]}
        emit(make_report("opt", "value", result, spec.label), args,
             f"lambda({args.n}) = {val} at {[s.part_sizes for s in shapes]}")
        return EXIT_PASS
    extra = [parse_vector(v) for v in (args.seeds or [])]
    cs = continuous_opt(spec, args.max_support, starts=args.starts, seed=args.seed,
                        extra_seeds=extra)
    result = cs.to_jsonable()
    if args.seeds:
        result["provenance"]["extra_seeds"] = args.seeds
    best = cs.best_vector()
    line = (f"best {best.to_json()} lambda = {cs.candidates[0].lam_exact}"
            if best is not None else f"best (unsnapped) lambda ~ {cs.lam_best:.9f}")
    emit(make_report("opt", "value", result, spec.label), args, line)
    return EXIT_PASS


def cmd_certify(args) -> int:
    if args.kind == "kst":
        if args.s is None or args.t is None:
            raise UsageError("certify kst needs --s and --t")
        rep = certify_kst(args.s, args.t)
    elif args.kind == "krt":
        if args.r is None or args.t is None:
            raise UsageError("certify krt needs --r and --t")
        rep = certify_krt(args.r, args.t)
    elif args.kind == "k2111":
        rep = certify_k2111()
    elif args.kind == "k311":
        rep = certify_k311()
    else:
        raise UsageError(f"unknown certificate {args.kind!r}")
    result = rep.to_jsonable()
    result["lambda_max"] = result.get("lambda_max")
    if rep.passed:
        verdict, code = "pass", EXIT_PASS
    elif rep.inconclusive:
        verdict, code = "inconclusive", EXIT_INCONCLUSIVE
    else:
        verdict, code = "fail", EXIT_FAIL
    emit(make_report("certify", verdict, result), args,
         f"{verdict}: {rep.name} lambda_max = {rep.lambda_max}")
    return code


def cmd_oracle(args) -> int:
    spec = parse_objective(args.objective)
    val_all, witnesses = brute_lambda_max(spec, args.n)
    val_partite, shapes = finite_opt(spec, args.n)
    from .graphs import complete_partite_shape_of
    partite_witness = any(complete_partite_shape_of(g) is not None for g in witnesses)
    agree = val_all == val_partite
    ok = agree and (partite_witness or not spec.eligible)
    result = {
        "n": args.n,
        "lambda_all_graphs": str(val_all),
        "lambda_complete_partite": str(val_partite),
        "witness_classes": len(witnesses),
        "partite_witness_present": partite_witness,
        "extremal_shapes": [s.part_sizes for s in shapes],
    }
    verdict = "pass" if ok else "fail"
    emit(make_report("oracle", verdict, result, spec.label), args,
         f"{verdict}: lambda({args.n}) = {val_all} (partite scan {val_partite})")
    return EXIT_PASS if ok else EXIT_FAIL


def cmd_edit_distance(args) -> int:
    if args.vector and len(args.vector) == 2:
        x, y_ = parse_vector(args.vector[0]), parse_vector(args.vector[1])
        d = edit_distance_vectors(x, y_)
        result = {"distance": str(d), "x": _vector_json(x), "y": _vector_json(y_)}
    elif args.graph and len(args.graph) == 2:
        g, h = read_graph(args.graph[0]), read_graph(args.graph[1])
        d = edit_distance_exact(g, h)
        result = {"distance": str(d), "n": g.n}
    else:
        raise UsageError("edit-distance needs two --vector or two --graph")
    emit(make_report("edit-distance", "value", result), args, str(d))
    return EXIT_PASS


# ---------------------------------------------------------------------------
# Entry point
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="inducibility",
        description="exact computation, search and certification of maximisers "
                    "of symmetrisable graph parameters")
    ap.add_argument("--threads", type=int, default=1,
                    help="worker pool size (evaluation is sequential and "
                         "deterministic; accepted for compatibility)")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p):
        p.add_argument("--out", help="write the JSON report here")
        p.add_argument("--quiet", action="store_true",
                       help="print only the verdict line")

    p = sub.add_parser("density", help="lambda of a vector or a graph")
    p.add_argument("--objective", required=True)
    p.add_argument("--vector", help='JSON {"x0": "p/q", "parts": [...]} or @file')
    p.add_argument("--graph", help="graph text file ('-' for stdin)")
    common(p)
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("symmetrise", help="drive a graph complete partite")
    p.add_argument("--objective", required=True)
    p.add_argument("--graph", required=True)
    p.add_argument("--vertex", type=int, help="single-vertex mode at this vertex")
    p.add_argument("--trace-out", help="write the step trace here")
    common(p)
    p.set_defaults(fn=cmd_symmetrise)

    p = sub.add_parser("gradients", help="flip/vertex gradient tables")
    p.add_argument("--objective", required=True)
    p.add_argument("--vector", required=True)
    p.add_argument("--pattern", action="append",
                   help='extra attachment JSON {"b": {"1": 0}, "alpha": "1/2"}')
    common(p)
    p.set_defaults(fn=cmd_gradients)

    p = sub.add_parser("strictness", help="certify strictness of candidates")
    p.add_argument("--objective", required=True)
    p.add_argument("--vector", action="append", required=True)
    common(p)
    p.set_defaults(fn=cmd_strictness)

    p = sub.add_parser("opt", help="finite or continuous maximiser search")
    p.add_argument("--objective", required=True)
    p.add_argument("--mode", choices=["finite", "continuous"], default="continuous")
    p.add_argument("--n", type=int)
    p.add_argument("--starts", type=int, default=200)
    p.add_argument("--max-support", type=int, default=8)
    p.add_argument("--seeds", action="append", help="extra seed vectors (JSON)")
    p.add_argument("--seed", type=int, default=0)
    common(p)
    p.set_defaults(fn=cmd_opt)

    p = sub.add_parser("certify", help="run a certificate pipeline")
    p.add_argument("kind", choices=["kst", "krt", "k2111", "k311"])
    p.add_argument("--s", type=int)
    p.add_argument("--t", type=int)
    p.add_argument("--r", type=int)
    common(p)
    p.set_defaults(fn=cmd_certify)

    p = sub.add_parser("oracle", help="brute-force cross-check at small n")
    p.add_argument("--objective", required=True)
    p.add_argument("--n", type=int, required=True)
    common(p)
    p.set_defaults(fn=cmd_oracle)

    p = sub.add_parser("edit-distance", help="exact edit distance")
    p.add_argument("--vector", action="append")
    p.add_argument("--graph", action="append")
    common(p)
    p.set_defaults(fn=cmd_edit_distance)
    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else 0
    try:
        return args.fn(args)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError, json.JSONDecodeError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
