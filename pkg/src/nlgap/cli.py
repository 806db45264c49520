"""Command-line front end.

Usage::

    nlgap gen tree --d 3 --r 2 --out t32.graph
    nlgap mu1 --graph t32.graph --full
    nlgap path-bound --graph hamming:3 --paths bitfix --w uniform
    nlgap gap-exact --graph path:3 --metric line:0,1,3
    nlgap gap-search --graph hamming:3 --metric self --seed 1 --restarts 20
    nlgap quotient --graph hamming:2 --metric self --map 0,1,2,3
    nlgap formula tree-upper --params d=3,r=2
    nlgap report --family tree --params d=3,r=1 --target two:1

``--graph`` takes a graph file or a generator shorthand ``family:a,b,...``
(``hamming:n``, ``tree:d,r``, ``path:n``, ``cycle:n``, ``complete:n``,
``random-regular:n,d,seed``).

Exit codes: 0 success, 2 input error, 3 resource cap, 4 internal
inconsistency.  Errors print one JSON line on stderr.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import os
import sys

from . import __version__, errors
from .arith import exact_string, parse_number
from .formulas import FORMULAS, evaluate
from .gap import DEFAULT_CAP, DEFAULT_RESTARTS, gap_exact, gap_search, poincare_quotient
from .io import format_graph, parse_map, read_graph
from .paths import congestion_A, default_paths
from .report import (GENERATORS, ReportRequest, emit, generate, resolve_target,
                     resolve_w, run_report)
from .spectral import laplacian_spectrum


def _num(x):
    """JSON-friendly ``(decimal, exact-or-None)`` pair."""
    return float(x), exact_string(x)


def load_graph(spec: str):
    if os.path.exists(spec) or ":" not in spec:
        return read_graph(spec)
    family, _, rest = spec.partition(":")
    if family not in GENERATORS:
        raise errors.InputError(f"unknown graph family {family!r} in {spec!r}")
    names = GENERATORS[family][1]
    vals = [v for v in rest.split(",") if v.strip()]
    if len(vals) != len(names):
        raise errors.InputError(f"{family} takes {len(names)} parameter(s) {names}")
    try:
        return generate(family, dict(zip(names, (int(v) for v in vals))))
    except ValueError:
        raise errors.InputError(f"non-integer parameter in {spec!r}") from None


def parse_params(text: str | None) -> dict:
    out = {}
    for item in (text or "").split(","):
        if not item.strip():
            continue
        key, sep, val = item.partition("=")
        if not sep:
            raise errors.InputError(f"parameter {item!r} is not key=value")
        try:
            num = parse_number(val)
        except (ValueError, ZeroDivisionError):
            raise errors.InputError(f"bad value in {item!r}") from None
        if not isinstance(num, float) and num.denominator == 1:
            num = int(num)
        out[key.strip()] = num
    return out


def _write(args, payload: dict) -> None:
    if args.format == "csv":
        flat = {k: v for k, v in payload.items() if not isinstance(v, (dict, list))}
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(flat.keys())
        w.writerow(["" if v is None else v for v in flat.values()])
        text = buf.getvalue()
    else:
        text = json.dumps(payload, indent=2) + "\n"
    _emit_text(args, text)


def _emit_text(args, text: str) -> None:
    out = getattr(args, "out", None)
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# subcommands ----------------------------------------------------------------

def cmd_gen(args) -> None:
    params = parse_params(args.params)
    g = generate(args.family, params)
    _emit_text(args, format_graph(g))


def cmd_mu1(args) -> None:
    spec = laplacian_spectrum(load_graph(args.graph), solver=args.solver)
    payload = {"mu1": spec.mu1}
    if args.full:
        payload["eigenvalues"] = list(spec.eigenvalues)
    _write(args, payload)


def cmd_path_bound(args) -> None:
    g = load_graph(args.graph)
    pa = default_paths(g, args.paths)
    if args.reverse_pairs:
        pa = pa.reversed_pairs()
    w = resolve_w(args.w, g)
    c = congestion_A(g, w, pa)
    A, A_exact = _num(c.A)
    b, b_exact = _num(c.bound)
    payload = {"A": A, "A_exact": A_exact, "bound": b, "bound_exact": b_exact,
               "argmax_edge": list(c.argmax_edge), "paths": pa.strategy, "w": w.label}
    if args.profile:
        payload["profile"] = [{"edge": list(e), "A": float(v), "exact": exact_string(v)}
                              for e, v in c.profile.items()]
    _write(args, payload)


def _gap_payload(r) -> dict:
    value, value_exact = _num(r.value)
    return {
        "value": value,
        "exact": value_exact,
        "witness": list(r.witness),
        "method": r.method,
        "numerator": exact_string(r.numerator) or float(r.numerator),
        "denominator": exact_string(r.denominator) or float(r.denominator),
        "certificates": r.certificates,
    }


def cmd_gap_exact(args) -> None:
    g = load_graph(args.graph)
    X = resolve_target(args.metric, g)
    _write(args, _gap_payload(gap_exact(g, X, cap=args.cap, workers=args.workers)))


def cmd_gap_search(args) -> None:
    g = load_graph(args.graph)
    X = resolve_target(args.metric, g)
    r = gap_search(g, X, seed=args.seed, restarts=args.restarts, max_sweeps=args.max_sweeps)
    _write(args, _gap_payload(r))


def cmd_quotient(args) -> None:
    g = load_graph(args.graph)
    X = resolve_target(args.metric, g)
    f = parse_map(args.map, g.n)
    q = poincare_quotient(g, X, f)
    value, value_exact = _num(q.ratio)
    _write(args, {
        "value": value,
        "exact": value_exact,
        "witness": list(f),
        "method": "single-map",
        "numerator": exact_string(q.numerator) or float(q.numerator),
        "denominator": exact_string(q.denominator) or float(q.denominator),
    })


def cmd_formula(args) -> None:
    cf = evaluate(args.name, parse_params(args.params))
    value, value_exact = _num(cf.value)
    _write(args, {"formula": cf.formula_id, "parameters": cf.parameters,
                  "exact": value_exact, "value": value})


def cmd_report(args) -> None:
    if (args.graph is None) == (args.family is None):
        raise errors.InputError("report needs exactly one of --graph or --family")
    req = ReportRequest(
        family=args.family,
        params=parse_params(args.params),
        graph_path=args.graph,
        target=args.target,
        bounds=tuple(b.strip() for b in args.bounds.split(",") if b.strip()),
        paths=args.paths,
        w=args.w,
        reverse_pairs=args.reverse_pairs,
        seed=args.seed,
        restarts=args.restarts,
        cap=args.cap,
        timings=args.timings,
    )
    _emit_text(args, emit(run_report(req), args.format).decode())


# parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="nlgap", description="Linear and nonlinear spectral gaps of weighted graphs.")
    parser.add_argument("--version", action="version", version=f"nlgap {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, help=help_)
        p.set_defaults(func=fn)
        p.add_argument("--format", choices=("json", "csv"), default="json")
        p.add_argument("--out", help="write output here instead of stdout")
        return p

    p = add("gen", cmd_gen, "write a generated graph in the graph file format")
    p.add_argument("family", choices=sorted(GENERATORS))
    p.add_argument("--params", required=True, help="e.g. n=3 or d=3,r=2 or n=16,d=3,seed=1")

    p = add("mu1", cmd_mu1, "first positive Laplacian eigenvalue")
    p.add_argument("--graph", required=True)
    p.add_argument("--full", action="store_true", help="also print every eigenvalue")
    p.add_argument("--solver", choices=("eigh", "jacobi"), default="eigh")

    p = add("path-bound", cmd_path_bound, "congestion A(w) and the lower bound 1/A(w)")
    p.add_argument("--graph", required=True)
    p.add_argument("--paths", choices=("bfs", "tree", "bitfix"), default="bfs")
    p.add_argument("--w", default="uniform", help="uniform | tree-exp | file:<path>")
    p.add_argument("--reverse-pairs", action="store_true",
                   help="use the reversal of path(x,y) as path(y,x)")
    p.add_argument("--profile", action="store_true", help="include per-edge congestion")

    for name, fn, help_ in (("gap-exact", cmd_gap_exact, "exhaustive nonlinear gap"),
                            ("gap-search", cmd_gap_search, "local-search upper bound")):
        p = add(name, fn, help_)
        p.add_argument("--graph", required=True)
        p.add_argument("--metric", required=True, help="file | self | two:DELTA | line:v1,v2,...")
        if name == "gap-exact":
            p.add_argument("--cap", type=int, default=DEFAULT_CAP)
            p.add_argument("--workers", type=int, default=1)
        else:
            p.add_argument("--seed", type=int, default=0)
            p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
            p.add_argument("--max-sweeps", type=int, default=100)

    p = add("quotient", cmd_quotient, "Poincaré quotient of one map")
    p.add_argument("--graph", required=True)
    p.add_argument("--metric", required=True)
    p.add_argument("--map", required=True, help="comma-separated point index per vertex")

    p = add("formula", cmd_formula, "evaluate a closed form")
    p.add_argument("name", choices=sorted(FORMULAS))
    p.add_argument("--params", default="")

    p = add("report", cmd_report, "bound report for one graph/target pair")
    p.add_argument("--graph", help="graph file")
    p.add_argument("--family", choices=sorted(GENERATORS))
    p.add_argument("--params", default="", help="family parameters, e.g. d=3,r=1")
    p.add_argument("--target", "--metric", dest="target", default="self",
                   help="self | two:DELTA | line:v1,v2,... | metric file")
    p.add_argument("--bounds", default="all",
                   help="comma list of mu1,path-bound,gap-exact,gap-search,identity,closed-forms")
    p.add_argument("--paths", choices=("bfs", "tree", "bitfix"))
    p.add_argument("--w")
    p.add_argument("--reverse-pairs", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--restarts", type=int, default=DEFAULT_RESTARTS)
    p.add_argument("--cap", type=int, default=DEFAULT_CAP)
    p.add_argument("--timings", action="store_true",
                   help="record runtime_ms (makes output run-dependent)")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        args.func(args)
    except errors.GapError as exc:
        _fail(exc.code, str(exc), exc.exit_code)
        return exc.exit_code
    except OSError as exc:
        _fail("IOError", str(exc), 2)
        return 2
    return 0


def _fail(code: str, message: str, status: int) -> None:
    line = json.dumps({"error": code, "exit_code": status, "message": message})
    sys.stderr.write(line + "\n")


if __name__ == "__main__":
    raise SystemExit(main())
