"""Bound reports: run a set of bound computations on one graph/target pair.

Each entry is tagged ``lower``, ``upper``, ``exact`` or ``reference``.
Before a report is returned every lower entry must sit below every exact
and upper entry (within ``SANDWICH_TOL``); a violation is a bug and raises
:class:`InconsistentBounds`.
"""

from __future__ import annotations

import csv
import hashlib
import io as _io
import json
import time
from dataclasses import dataclass, field
from typing import Callable

from . import __version__, errors
from .arith import exact_string, parse_number
from .formulas import (bourgain_ratio_bound, hamming_identity_value, pn_mu1,
                       tree_cut_upper_bound, tree_lower_bound)
from .gap import (DEFAULT_CAP, DEFAULT_RESTARTS, center_edge_component, cut_quotient,
                  gap_exact, gap_search, identity_upper_bound)
from .graph import (WeightedGraph, gen_complete, gen_cycle, gen_hamming, gen_path,
                    gen_random_regular, gen_tree_ball, graph_metric_space)
from .metric import FiniteMetricSpace, real_points_space, two_point_space
from .paths import congestion_A, default_paths, tree_exponential_w, uniform_w
from .spectral import mu1

SCHEMA = 1
SANDWICH_TOL = 1e-9
KINDS = ("lower", "upper", "exact", "reference")
BOUND_NAMES = ("mu1", "path-bound", "gap-exact", "gap-search", "identity", "closed-forms")


@dataclass
class BoundEntry:
    name: str
    kind: str
    value: float
    exact: str | None
    method: str
    parameters: dict = field(default_factory=dict)
    runtime_ms: float | None = None

    def as_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "exact": self.exact,
            "method": self.method,
            "parameters": self.parameters,
            "runtime_ms": self.runtime_ms,
        }


@dataclass
class BoundReport:
    graph: dict
    target: str
    entries: list[BoundEntry] = field(default_factory=list)
    skipped: list[dict] = field(default_factory=list)
    seeds: dict = field(default_factory=dict)
    version: str = __version__

    def as_dict(self) -> dict:
        return {
            "schema": SCHEMA,
            "tool": "nlgap",
            "version": self.version,
            "graph": self.graph,
            "target": self.target,
            "seeds": self.seeds,
            "entries": [e.as_dict() for e in self.entries],
            "skipped": self.skipped,
        }

    def get(self, name: str) -> BoundEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def check_sandwich(self, tol: float = SANDWICH_TOL) -> None:
        lows = [e for e in self.entries if e.kind == "lower"]
        highs = [e for e in self.entries if e.kind in ("exact", "upper")]
        exacts = [e for e in self.entries if e.kind == "exact"]
        for lo in lows:
            for hi in highs:
                if not _leq(lo, hi, tol):
                    raise errors.InconsistentBounds(
                        f"lower bound {lo.name}={lo.value} exceeds {hi.kind} {hi.name}={hi.value}")
        for ex in exacts:
            for hi in highs:
                if hi.kind == "upper" and not _leq(ex, hi, tol):
                    raise errors.InconsistentBounds(
                        f"exact {ex.name}={ex.value} exceeds upper bound {hi.name}={hi.value}")


def _leq(a: BoundEntry, b: BoundEntry, tol: float) -> bool:
    if a.exact is not None and b.exact is not None:
        return parse_number(a.exact) <= parse_number(b.exact)
    return a.value <= b.value + tol * max(1.0, abs(b.value))


def report_from_dict(d: dict) -> BoundReport:
    if d.get("schema") != SCHEMA:
        raise errors.FileFormatError(f"unsupported report schema {d.get('schema')!r}")
    return BoundReport(
        graph=d["graph"], target=d["target"], seeds=d["seeds"], skipped=d["skipped"],
        entries=[BoundEntry(**e) for e in d["entries"]], version=d["version"],
    )


def emit(report: BoundReport, fmt: str = "json") -> bytes:
    """Serialise a report; identical reports give identical bytes."""
    if fmt == "json":
        return (json.dumps(report.as_dict(), indent=2) + "\n").encode()
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "kind", "value", "exact", "method", "parameters", "runtime_ms"])
        for e in report.entries:
            w.writerow([e.name, e.kind, repr(e.value), e.exact or "", e.method,
                        json.dumps(e.parameters, sort_keys=True),
                        "" if e.runtime_ms is None else e.runtime_ms])
        return buf.getvalue().encode()
    raise errors.InputError(f"unknown format {fmt!r}")


# request resolution ---------------------------------------------------------

GENERATORS: dict[str, tuple[Callable, tuple[str, ...]]] = {
    "hamming": (gen_hamming, ("n",)),
    "tree": (gen_tree_ball, ("d", "r")),
    "path": (gen_path, ("n",)),
    "cycle": (gen_cycle, ("n",)),
    "complete": (gen_complete, ("n",)),
    "random-regular": (gen_random_regular, ("n", "d", "seed")),
}


def generate(family: str, params: dict) -> WeightedGraph:
    try:
        fn, names = GENERATORS[family]
    except KeyError:
        raise errors.InputError(f"unknown family {family!r}; choose from {sorted(GENERATORS)}") from None
    missing = [p for p in names if p not in params]
    if missing:
        raise errors.InputError(f"family {family} needs parameters {names}, missing {missing}")
    return fn(*(int(params[p]) for p in names))


def resolve_target(spec: str, g: WeightedGraph) -> FiniteMetricSpace:
    """``self`` | ``two:DELTA`` | ``line:v1,v2,...`` | path to a metric file."""
    if spec == "self":
        return graph_metric_space(g)
    if spec.startswith("two:"):
        try:
            delta = parse_number(spec[4:])
        except (ValueError, ZeroDivisionError):
            raise errors.InputError(f"bad two-point distance in {spec!r}") from None
        return two_point_space(delta)
    if spec.startswith("line:"):
        try:
            vals = [parse_number(t) for t in spec[5:].split(",") if t.strip()]
        except (ValueError, ZeroDivisionError):
            raise errors.InputError(f"bad real point in {spec!r}") from None
        return real_points_space(vals)
    from .io import read_metric

    return read_metric(spec)


def target_kind(spec: str) -> str:
    if spec == "self":
        return "self"
    if spec.startswith("two:"):
        return "two-point"
    if spec.startswith("line:"):
        return "line"
    return "file"


def tree_levels_from_center(g: WeightedGraph) -> WeightedGraph:
    """Attach tree-ball metadata to a tree read from a file (vertex 0 = center)."""
    from .graph import bfs_distances, build_graph

    if g.levels is not None:
        return g
    dist = bfs_distances(g, 0)
    return build_graph(g.n, [(u, v, w) for (u, v), w in zip(g.edges, g.weights)],
                       levels=[dist[x] for x in range(g.n)], family=g.family or "tree",
                       params={**g.params, "d": g.degree(0)})


def resolve_w(spec: str, g: WeightedGraph):
    if spec == "uniform":
        return uniform_w(g)
    if spec == "tree-exp":
        return tree_exponential_w(tree_levels_from_center(g))
    if spec.startswith("file:"):
        from .io import read_w

        return read_w(spec[5:], g)
    raise errors.InputError(f"unknown w {spec!r}; use uniform, tree-exp or file:<path>")


def default_strategy(g: WeightedGraph) -> tuple[str, str]:
    if g.family == "tree":
        return "tree", "tree-exp"
    if g.family == "hamming":
        return "bitfix", "uniform"
    if g.family == "path":
        return "tree", "uniform"
    return "bfs", "uniform"


@dataclass
class ReportRequest:
    family: str | None = None
    params: dict = field(default_factory=dict)
    graph_path: str | None = None
    target: str = "self"
    bounds: tuple[str, ...] = ("all",)
    paths: str | None = None
    w: str | None = None
    reverse_pairs: bool = False
    seed: int = 0
    restarts: int = DEFAULT_RESTARTS
    cap: int = DEFAULT_CAP
    timings: bool = False


def _entry(name, kind, value, method, parameters=None) -> BoundEntry:
    return BoundEntry(name, kind, float(value), exact_string(value), method, parameters or {})


def run_report(req: ReportRequest) -> BoundReport:
    """Compute the requested bounds and check they are mutually consistent."""
    if req.graph_path is not None:
        from .io import read_text, parse_graph

        text = read_text(req.graph_path)
        g = parse_graph(text)
        descriptor = {"source": "file", "sha256": hashlib.sha256(text.encode()).hexdigest()}
    elif req.family is not None:
        g = generate(req.family, req.params)
        descriptor = {"source": "family", "family": req.family,
                      "params": {k: req.params[k] for k in sorted(req.params)}}
    else:
        raise errors.InputError("report needs a graph family or a graph file")
    descriptor.update({"n_vertices": g.n, "n_edges": g.num_edges})

    X = resolve_target(req.target, g)
    tkind = target_kind(req.target)
    wanted = set(BOUND_NAMES) if "all" in req.bounds else set(req.bounds)
    unknown = wanted - set(BOUND_NAMES)
    if unknown:
        raise errors.InputError(f"unknown bound(s) {sorted(unknown)}; choose from {BOUND_NAMES}")
    explicit = "all" not in req.bounds

    report = BoundReport(graph=descriptor, target=req.target)
    fam = g.family if req.graph_path is None else None
    p = g.params

    def run(name, fn):
        t0 = time.perf_counter()
        try:
            entries = fn()
        except errors.GapError as exc:
            if explicit or not isinstance(exc, (errors.ResourceCapError, errors.NotATree,
                                                errors.NotAHammingCube, errors.MissingLevelMetadata)):
                exc.args = (f"[{name}] {exc.args[0] if exc.args else ''}",)
                raise
            report.skipped.append({"name": name, "reason": exc.code})
            return
        ms = round((time.perf_counter() - t0) * 1000, 3) if req.timings else None
        for e in entries:
            e.runtime_ms = ms
            report.entries.append(e)

    def do_mu1():
        # the real line bounds every two-point or real target from below, and
        # path graphs from below for every target
        lower = tkind in ("two-point", "line") or fam == "path"
        return [_entry("mu1", "lower" if lower else "reference", mu1(g), "laplacian-eigh")]

    def do_path():
        strat, wname = default_strategy(g)
        strat = req.paths or strat
        wname = req.w or wname
        pa = default_paths(g, strat)
        if req.reverse_pairs:
            pa = pa.reversed_pairs()
        w = resolve_w(wname, g)
        c = congestion_A(g, w, pa)
        return [_entry("path_bound", "lower", c.bound, "congestion",
                       {"paths": pa.strategy, "w": w.label, "A": exact_string(c.A) or float(c.A),
                        "argmax_edge": list(c.argmax_edge)})]

    def do_exact():
        r = gap_exact(g, X, cap=req.cap)
        return [_entry("gap_exact", "exact", r.value, "exhaustive",
                       {"witness": list(r.witness), "maps": r.certificates["maps_examined"]})]

    def do_search():
        r = gap_search(g, X, seed=req.seed, restarts=req.restarts)
        report.seeds["gap_search"] = req.seed
        return [_entry("gap_search", "upper", r.value, "local_search",
                       {"witness": list(r.witness), "seed": req.seed, "restarts": req.restarts})]

    def do_identity():
        if tkind != "self":
            return []
        return [_entry("identity_upper", "upper", identity_upper_bound(g), "identity-map")]

    def do_closed():
        out = []
        if fam == "hamming":
            kind = "upper" if tkind == "self" else "reference"
            out.append(_entry("hamming_identity", kind, hamming_identity_value(p["n"]), "closed-form",
                              {"n": p["n"]}))
        if fam == "tree" and p["d"] >= 3:
            d, r = p["d"], p["r"]
            out.append(_entry("tree_lower", "lower", tree_lower_bound(d, r), "closed-form",
                              {"d": d, "r": r}))
            out.append(_entry("tree_upper", "upper", tree_cut_upper_bound(d, r), "closed-form",
                              {"d": d, "r": r}))
            out.append(_entry("cut_upper", "upper", cut_quotient(g, center_edge_component(g)),
                              "center-edge-cut"))
        if fam == "path" and p["n"] >= 2:
            out.append(_entry("path_mu1", "lower", pn_mu1(p["n"]), "closed-form", {"n": p["n"]}))
        out.append(_entry("bourgain_ratio", "reference", bourgain_ratio_bound(g.n),
                          "shape-only, universal constant omitted", {"n": g.n}))
        return out

    steps = [("mu1", do_mu1), ("path-bound", do_path), ("gap-exact", do_exact),
             ("gap-search", do_search), ("identity", do_identity), ("closed-forms", do_closed)]
    for name, fn in steps:
        if name in wanted:
            run(name, fn)
    report.check_sandwich()
    return report

