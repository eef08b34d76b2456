"""Command-line front end: build a graph, analyze it, print reports.

Subcommands:

* ``analyze``   graph summary, twin sets and the classification table
* ``classify``  verdicts for selected vertices (table, JSON certificates, CSV)
* ``series``    CSV time series of the diagonal magnitudes |U(t)_{u,u}|
* ``families``  closed-form verdict sweeps for named families
* ``twins``     twin sets with their loop/pair weights and eigenvalue
* ``spectrum``  eigenvalue support of selected vertices

All numbers are printed with 12 significant digits so identical commands
produce byte-identical output.  Times appear in radians and, when they are a
small rational multiple of pi, annotated like ``1.5707963268 (pi/2)``.
``SEDWALK_THREADS`` caps the worker count of family sweeps (default 1).

Exit status: 0 on success (an undetermined verdict is still a success), 2 for
unusable input (expression, file or flag values), and 3 when a Laplacian walk
is requested on a direct product with an irregular factor.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .dsl import parse_graph
from .families import (
    FamilyVerdict,
    ThresholdSpec,
    complete_product_verdict,
    multipartite_adjacency_verdict,
    multipartite_laplacian_verdict,
    threshold_vertex_verdict,
)
from .graphs import MatrixKind, WeightedGraph, from_edge_list_text
from .sedentary import Verdict, VertexClassification, classify_vertex
from .spectral import LaplacianProductUnsupported, decompose
from .twins import find_twin_sets
from .walk import WalkEvaluator

__all__ = ["main", "build_parser"]


# -- formatting ------------------------------------------------------------


def _num(x: float) -> str:
    return f"{float(x):.12g}"


def _pi_note(t: float) -> str | None:
    """Render t as 'p*pi/q' when t/pi is (very nearly) a small rational."""
    if t == 0.0 or not math.isfinite(t):
        return None
    r = Fraction(t / math.pi).limit_denominator(64)
    if r == 0 or abs(t - float(r) * math.pi) > 1e-9 * max(1.0, abs(t)):
        return None
    p, q = r.numerator, r.denominator
    head = "pi" if p == 1 else ("-pi" if p == -1 else f"{p}*pi")
    return head if q == 1 else f"{head}/{q}"


def _time_cell(t: float | None) -> str:
    if t is None:
        return "-"
    note = _pi_note(t)
    return f"{_num(t)} ({note})" if note else _num(t)


def _cell(x: object) -> str:
    """Table cell rendering: '-' for None, yes/no for booleans."""
    if x is None:
        return "-"
    if isinstance(x, bool):
        return "yes" if x else "no"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return _num(x)
    return str(x)


def _csv_val(x: object) -> str:
    if x is None:
        return ""
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, float):
        return _num(x)
    return str(x)


def _round_floats(obj: object) -> object:
    if isinstance(obj, float):
        return float(f"{obj:.12g}")
    if isinstance(obj, dict):
        return {k: _round_floats(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round_floats(v) for v in obj]
    return obj


def _dump_json(obj: object) -> str:
    return json.dumps(_round_floats(obj), indent=2) + "\n"


def _render_table(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    widths = [len(h) for h in headers]
    for row in rows:
        for i, c in enumerate(row):
            widths[i] = max(widths[i], len(c))
    lines = ["  ".join(h.ljust(w) for h, w in zip(headers, widths)).rstrip()]
    for row in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"


def _render_csv(headers: Sequence[str], rows: Sequence[Sequence[str]]) -> str:
    sio = io.StringIO()
    writer = csv.writer(sio, lineterminator="\n")
    writer.writerow(headers)
    writer.writerows(rows)
    return sio.getvalue()


# -- shared plumbing --------------------------------------------------------


def _load_graph(args: argparse.Namespace) -> tuple[WeightedGraph, str]:
    if args.graph is not None:
        return parse_graph(args.graph), args.graph
    with open(args.file, "r", encoding="utf-8") as fh:
        text = fh.read()
    return from_edge_list_text(text), args.file


def _decompose(g: WeightedGraph, kind: MatrixKind, args: argparse.Namespace):
    if getattr(args, "tol", None) is not None:
        return decompose(g, kind, grouping_tol=args.tol)
    return decompose(g, kind)


def _select_vertices(args: argparse.Namespace, n: int) -> list[int]:
    v = getattr(args, "vertex", None)
    if v is None:
        return list(range(n))
    if not 0 <= v < n:
        raise ValueError(f"vertex {v} out of range for a graph on {n} vertices")
    return [v]


def _thread_cap() -> int:
    raw = os.environ.get("SEDWALK_THREADS", "").strip()
    if not raw:
        return 1
    try:
        cap = int(raw)
    except ValueError as exc:
        raise ValueError(f"SEDWALK_THREADS must be an integer, got {raw!r}") from exc
    return max(1, cap)


def _run_jobs(work: Callable, jobs: list) -> list:
    cap = _thread_cap()
    if cap > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=min(cap, len(jobs))) as pool:
            return list(pool.map(work, jobs))
    return [work(j) for j in jobs]


# -- classification rendering ----------------------------------------------

_CLASSIFY_TABLE_HEADERS = (
    "vertex",
    "verdict",
    "constant",
    "tight",
    "sharp",
    "time",
    "partner",
    "certified",
    "trail",
)
_CLASSIFY_CSV_HEADERS = (
    "vertex",
    "matrix",
    "verdict",
    "constant",
    "tight",
    "sharp",
    "tightness_time",
    "partner",
    "pst_time",
    "certified",
    "trail",
)


def _classification_table_row(c: VertexClassification) -> list[str]:
    t = c.pst_time if c.verdict is Verdict.PST else c.tightness_time
    return [
        str(c.vertex),
        c.verdict.value,
        _cell(c.constant),
        _cell(c.tight),
        _cell(c.sharp),
        _time_cell(t),
        _cell(c.partner),
        _cell(c.certified),
        ",".join(c.certificate) if c.certificate else "-",
    ]


def _classification_csv_row(c: VertexClassification) -> list[str]:
    return [
        str(c.vertex),
        c.matrix_kind.short_name,
        c.verdict.value,
        _csv_val(c.constant),
        _csv_val(c.tight),
        _csv_val(c.sharp),
        _csv_val(c.tightness_time),
        _csv_val(c.partner),
        _csv_val(c.pst_time),
        _csv_val(c.certified),
        "|".join(c.certificate),
    ]


def _render_classifications(results: list[VertexClassification], fmt: str) -> str:
    if fmt == "json":
        return _dump_json([c.to_json_dict() for c in results])
    if fmt == "csv":
        return _render_csv(_CLASSIFY_CSV_HEADERS, [_classification_csv_row(c) for c in results])
    return _render_table(_CLASSIFY_TABLE_HEADERS, [_classification_table_row(c) for c in results])


# -- subcommands -------------------------------------------------------------


def cmd_classify(args: argparse.Namespace) -> str:
    g, _src = _load_graph(args)
    kind = MatrixKind.parse(args.matrix)
    dec = _decompose(g, kind, args)
    results = [
        classify_vertex(g, kind, u, dec=dec, grid_points=args.steps, horizon=args.tmax)
        for u in _select_vertices(args, g.n)
    ]
    return _render_classifications(results, args.format)


def cmd_analyze(args: argparse.Namespace) -> str:
    g, src = _load_graph(args)
    kind = MatrixKind.parse(args.matrix)
    dec = _decompose(g, kind, args)
    twin_sets = find_twin_sets(g)
    results = [
        classify_vertex(g, kind, u, dec=dec, grid_points=args.steps, horizon=args.tmax)
        for u in _select_vertices(args, g.n)
    ]
    row_sum = g.is_weighted_regular()
    if args.format == "json":
        return _dump_json(
            {
                "schema": 1,
                "graph": {
                    "source": src,
                    "vertices": g.n,
                    "edges": len(g.edges),
                    "matrix_kind": kind.short_name,
                    "regular_row_sum": None if row_sum is None else float(row_sum),
                },
                "twin_sets": [
                    {
                        "members": list(ts.members),
                        "omega": float(ts.omega),
                        "eta": float(ts.eta),
                        "theta": float(ts.theta(g, kind)),
                    }
                    for ts in twin_sets
                ],
                "classification": [c.to_json_dict() for c in results],
            }
        )
    if args.format == "csv":
        return _render_classifications(results, "csv")
    head = [
        f"graph: {src}",
        f"vertices: {g.n}  edges: {len(g.edges)}  matrix: {kind.short_name}",
        "regular row sum: " + ("-" if row_sum is None else _num(float(row_sum))),
    ]
    if twin_sets:
        for ts in twin_sets:
            members = ",".join(str(m) for m in ts.members)
            head.append(
                f"twin set {{{members}}}  omega={_num(float(ts.omega))}"
                f"  eta={_num(float(ts.eta))}  theta={_num(float(ts.theta(g, kind)))}"
            )
    else:
        head.append("twin sets: none")
    table = _render_classifications(results, "table")
    return "\n".join(head) + "\n\n" + table


def cmd_series(args: argparse.Namespace) -> str:
    g, _src = _load_graph(args)
    kind = MatrixKind.parse(args.matrix)
    dec = _decompose(g, kind, args)
    ev = WalkEvaluator(dec)
    t_max = args.tmax if args.tmax is not None else 2.0 * math.pi
    steps = args.steps if args.steps is not None else 1001
    if t_max <= 0:
        raise ValueError("tmax must be positive")
    if steps < 2:
        raise ValueError("steps must be at least 2")
    verts = _select_vertices(args, g.n)
    times = np.linspace(0.0, t_max, steps)
    columns = [np.abs(ev.diagonal_amplitudes(u, times)) for u in verts]
    headers = ["t"] + [f"u{u}" for u in verts]
    rows = []
    for i, t in enumerate(times):
        rows.append([_num(float(t))] + [_num(float(col[i])) for col in columns])
    return _render_csv(headers, rows)


def cmd_twins(args: argparse.Namespace) -> str:
    g, _src = _load_graph(args)
    kind = MatrixKind.parse(args.matrix)
    twin_sets = find_twin_sets(g)
    if args.format == "json":
        return _dump_json(
            [
                {
                    "members": list(ts.members),
                    "omega": float(ts.omega),
                    "eta": float(ts.eta),
                    "theta": float(ts.theta(g, kind)),
                }
                for ts in twin_sets
            ]
        )
    headers = ("members", "omega", "eta", "theta")
    sep = "|" if args.format == "csv" else ","
    rows = [
        [
            sep.join(str(m) for m in ts.members),
            _num(float(ts.omega)),
            _num(float(ts.eta)),
            _num(float(ts.theta(g, kind))),
        ]
        for ts in twin_sets
    ]
    if args.format == "csv":
        return _render_csv(headers, rows)
    return _render_table(headers, rows)


def cmd_spectrum(args: argparse.Namespace) -> str:
    g, _src = _load_graph(args)
    kind = MatrixKind.parse(args.matrix)
    dec = _decompose(g, kind, args)
    verts = _select_vertices(args, g.n)
    supports = [dec.support(u) for u in verts]
    if args.format == "json":
        return _dump_json(
            [
                {
                    "vertex": sup.vertex,
                    "values": [float(v) for v in sup.values],
                    "weights": [float(w) for w in sup.weights],
                }
                for sup in supports
            ]
        )
    headers = ("vertex", "eigenvalue", "weight")
    rows = []
    for sup in supports:
        for v, w in zip(sup.values, sup.weights):
            rows.append([str(sup.vertex), _num(float(v)), _num(float(w))])
    if args.format == "csv":
        return _render_csv(headers, rows)
    return _render_table(headers, rows)


# -- family sweeps ------------------------------------------------------------

_FAMILY_TABLE_HEADERS = (
    "graph",
    "vertex",
    "case",
    "verdict",
    "constant",
    "bound",
    "time",
    "tight",
    "sharp",
    "certified",
)


def _family_record(graph: str, vertex: int, fv: FamilyVerdict) -> dict:
    return {
        "graph": graph,
        "vertex": vertex,
        "case": fv.case,
        "verdict": fv.verdict.value,
        "constant": fv.constant,
        "bound": fv.bound,
        "time": fv.time,
        "tight": fv.tight,
        "sharp": fv.sharp,
        "certified": fv.certified,
    }


def _family_rows(args: argparse.Namespace, kind: MatrixKind) -> list[dict]:
    fam = args.family
    if fam == "threshold":
        if not args.cells:
            raise ValueError("--cells is required for the threshold family")
        if kind.label != "laplacian":
            raise ValueError("threshold verdicts are defined for the Laplacian walk (use --matrix L)")
        try:
            cells = tuple(int(tok) for tok in args.cells.split(","))
        except ValueError as exc:
            raise ValueError(f"bad --cells value {args.cells!r}") from exc
        starts_empty = args.first_cell != "K"
        spec = ThresholdSpec(cells, starts_empty)
        name = f"Gamma({','.join(str(c) for c in cells)}" + ("" if starts_empty else ";start=K") + ")"
        out = []
        start = 0
        for j, c in enumerate(cells, start=1):
            fv = threshold_vertex_verdict(spec, j)
            rec = _family_record(name, start, fv)
            rec["cell"] = j
            out.append(rec)
            start += c
        return out
    if args.start is None or args.stop is None:
        raise ValueError("--start and --stop are required for this family")
    if args.start > args.stop:
        raise ValueError("--start must not exceed --stop")
    if fam == "cp":
        if args.start < 1:
            raise ValueError("cp sweep starts at k=1")
        verdict_fn = multipartite_laplacian_verdict if kind.label == "laplacian" else multipartite_adjacency_verdict

        def work(k: int) -> list[dict]:
            fv = verdict_fn([2] * k, 0)
            return [_family_record(f"CP({2 * k})", 0, fv)]

        jobs = list(range(args.start, args.stop + 1))
    elif fam == "clique-minus-edge":
        if args.start < 3:
            raise ValueError("clique-minus-edge sweep starts at n=3")
        verdict_fn = multipartite_laplacian_verdict if kind.label == "laplacian" else multipartite_adjacency_verdict

        def work(n: int) -> list[dict]:
            parts = [2] + [1] * (n - 2)
            name = "KM(" + ",".join(str(p) for p in parts) + ")"
            out = [_family_record(name, 0, verdict_fn(parts, 0))]
            if n > 2:
                out.append(_family_record(name, 2, verdict_fn(parts, 1)))
            return out

        jobs = list(range(args.start, args.stop + 1))
    elif fam == "product":
        if args.start < 2:
            raise ValueError("product sweep starts at factor size 2")

        def work(pair: tuple[int, int]) -> list[dict]:
            m, n = pair
            fv = complete_product_verdict([m, n])
            return [_family_record(f"dprod(K({m}),K({n}))", 0, fv)]

        jobs = [
            (m, n)
            for m in range(args.start, args.stop + 1)
            for n in range(m, args.stop + 1)
        ]
    else:  # pragma: no cover - argparse restricts choices
        raise ValueError(f"unknown family {fam!r}")
    nested = _run_jobs(work, jobs)
    return [rec for sub in nested for rec in sub]


def cmd_families(args: argparse.Namespace) -> str:
    kind = MatrixKind.parse(args.matrix)
    if kind.label == "generalized":
        raise ValueError("family sweeps support matrix kinds A and L")
    records = _family_rows(args, kind)
    if args.format == "json":
        return _dump_json(records)
    as_csv = args.format == "csv"
    value = _csv_val if as_csv else _cell
    rows = []
    for rec in records:
        rows.append(
            [
                rec["graph"],
                str(rec["vertex"]),
                rec["case"],
                rec["verdict"],
                value(rec["constant"]),
                value(rec["bound"]),
                _csv_val(rec["time"]) if as_csv else _time_cell(rec["time"]),
                value(rec["tight"]),
                value(rec["sharp"]),
                value(rec["certified"]),
            ]
        )
    if as_csv:
        return _render_csv(_FAMILY_TABLE_HEADERS, rows)
    return _render_table(_FAMILY_TABLE_HEADERS, rows)


# -- argument parsing ---------------------------------------------------------


def _add_graph_source(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group(required=True)
    grp.add_argument("--graph", help="graph expression, e.g. 'join(O(2),K(6))'")
    grp.add_argument("--file", help="edge-list file: 'n <count>' header then 'u v w' lines")


def _add_matrix(sp: argparse.ArgumentParser) -> None:
    sp.add_argument(
        "--matrix",
        default="A",
        metavar="{A,L,Mq:<q>}",
        help="walk matrix: adjacency A, Laplacian L, or generalized Mq:<q> (default A)",
    )


def _add_vertex_selector(sp: argparse.ArgumentParser) -> None:
    grp = sp.add_mutually_exclusive_group()
    grp.add_argument("--vertex", type=int, help="single vertex to report on")
    grp.add_argument(
        "--all-vertices",
        action="store_true",
        help="report on every vertex (the default)",
    )


def _add_output(sp: argparse.ArgumentParser, formats: tuple[str, ...], default: str) -> None:
    sp.add_argument("--format", choices=formats, default=default, help=f"output format (default {default})")
    sp.add_argument("--out", help="write output to this file instead of stdout")


def _add_numeric_knobs(sp: argparse.ArgumentParser) -> None:
    sp.add_argument("--tmax", type=float, help="time horizon for scans/series")
    sp.add_argument("--steps", type=int, help="grid resolution for scans/series")
    sp.add_argument("--tol", type=float, help="eigenvalue grouping tolerance override")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sedwalk",
        description="Classify continuous-time quantum walk vertices: sedentary, PST, PGST.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sp = sub.add_parser("classify", help="verdicts for selected vertices")
    _add_graph_source(sp)
    _add_matrix(sp)
    _add_vertex_selector(sp)
    _add_numeric_knobs(sp)
    _add_output(sp, ("table", "json", "csv"), "table")
    sp.set_defaults(handler=cmd_classify)

    sp = sub.add_parser("analyze", help="summary, twins and classification in one report")
    _add_graph_source(sp)
    _add_matrix(sp)
    _add_vertex_selector(sp)
    _add_numeric_knobs(sp)
    _add_output(sp, ("table", "json", "csv"), "table")
    sp.set_defaults(handler=cmd_analyze)

    sp = sub.add_parser("series", help="CSV time series of |U(t)_{u,u}|")
    _add_graph_source(sp)
    _add_matrix(sp)
    _add_vertex_selector(sp)
    _add_numeric_knobs(sp)
    _add_output(sp, ("csv",), "csv")
    sp.set_defaults(handler=cmd_series)

    sp = sub.add_parser("twins", help="twin sets with loop weight, pair weight and eigenvalue")
    _add_graph_source(sp)
    _add_matrix(sp)
    _add_output(sp, ("table", "json", "csv"), "table")
    sp.set_defaults(handler=cmd_twins)

    sp = sub.add_parser("spectrum", help="eigenvalue support of selected vertices")
    _add_graph_source(sp)
    _add_matrix(sp)
    _add_vertex_selector(sp)
    sp.add_argument("--tol", type=float, help="eigenvalue grouping tolerance override")
    _add_output(sp, ("table", "json", "csv"), "table")
    sp.set_defaults(handler=cmd_spectrum)

    sp = sub.add_parser("families", help="closed-form verdict sweeps for named families")
    sp.add_argument(
        "--family",
        required=True,
        choices=("cp", "clique-minus-edge", "product", "threshold"),
        help="which family to sweep",
    )
    sp.add_argument("--start", type=int, help="first parameter value (cp: k, others: n)")
    sp.add_argument("--stop", type=int, help="last parameter value, inclusive")
    sp.add_argument("--cells", help="threshold family: comma-separated cell sizes, e.g. 2,6")
    sp.add_argument(
        "--first-cell",
        choices=("O", "K"),
        default="O",
        help="threshold family: whether the first cell is empty (O) or complete (K)",
    )
    _add_matrix(sp)
    _add_output(sp, ("table", "json", "csv"), "table")
    sp.set_defaults(handler=cmd_families)

    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        text = args.handler(args)
    except LaplacianProductUnsupported as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":  # pragma: no cover
    raise SystemExit(main())
