"""Command-line front end: tables for every route and their comparisons.

Exit codes: 0 success, 2 bad arguments, 3 domain error, 4 numerical failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
from dataclasses import dataclass, field

import numpy as np

from .convex_geom import HyperBox, corner_correction, geometry_report, regular_polygon_correction
from .errors import ConvergenceError, DomainError, ResourceError
from .images import ImageSeriesSpec, QuadratureSpec, image_trace
from .spectrum import SpectralModel, counting_function, weyl_prediction
from .trace import (
    TruncationSpec,
    expansion_coefficients,
    trace_curve,
)

EXIT_OK, EXIT_ARGS, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3, 4

_METHODS = {
    "direct": "direct",
    "exact-half": "exact_half",
    "theta": "theta_s1",
    "asymptotic": "asymptotic",
    "images": "images",
}


@dataclass
class RunConfig:
    command: str
    edges: tuple[float, ...] = ()
    s: float = 1.0
    t_grid: tuple[float, float, int, str] = (1e-3, 1.0, 7, "log")
    e_max: float | None = None
    method: str = "direct"
    angles: tuple[float, ...] = ()
    ngon: int | None = None
    rel_tol: float | None = None
    max_terms: int | None = None
    fmt: str = "csv"
    out: str | None = None

    def t_values(self) -> list[float]:
        lo, hi, count, spacing = self.t_grid
        if count == 1:
            return [lo]
        if spacing == "log":
            return [float(v) for v in np.logspace(math.log10(lo), math.log10(hi), count)]
        return [float(v) for v in np.linspace(lo, hi, count)]


@dataclass
class Table:
    columns: list[str]
    rows: list[list] = field(default_factory=list)
    meta: dict = field(default_factory=dict)


def _fmt(v) -> str:
    if isinstance(v, float):
        return format(v, ".17g")
    return str(v)


def render(table: Table, fmt: str) -> str:
    if fmt == "json":
        payload = {"columns": table.columns, "rows": table.rows, "meta": table.meta}
        return json.dumps(payload, indent=1) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(table.columns)
    for row in table.rows:
        writer.writerow([_fmt(v) for v in row])
    return buf.getvalue()


def _trunc(cfg: RunConfig) -> TruncationSpec:
    if cfg.max_terms is None:
        return TruncationSpec()
    return TruncationSpec(max_terms_per_axis=cfg.max_terms)


def _quad(cfg: RunConfig) -> QuadratureSpec:
    if cfg.rel_tol is None:
        return QuadratureSpec()
    return QuadratureSpec(rel_tol=cfg.rel_tol)


def _need_edges(cfg: RunConfig) -> HyperBox:
    if not cfg.edges:
        raise DomainError(f"command {cfg.command!r} needs --edges")
    return HyperBox(cfg.edges)


def _geometry(cfg: RunConfig) -> Table:
    rep = geometry_report(_need_edges(cfg))
    table = Table(["m", "V_m", "W_m", "mean_breadth", "volume"])
    for m, (v, w) in enumerate(zip(rep.intrinsic_volumes, rep.quermassintegrals)):
        table.rows.append([m, v, w, rep.mean_breadth, rep.volume])
    table.meta = {"mean_breadth": rep.mean_breadth, "volume": rep.volume}
    return table


def _trace(cfg: RunConfig) -> Table:
    model = SpectralModel(_need_edges(cfg), cfg.s)
    route = _METHODS[cfg.method]
    curve = trace_curve(model, cfg.t_values(), route, _trunc(cfg), _quad(cfg))
    return Table(["t", "z"], [[t, z] for t, z in curve.samples], {"route": route})


def _compare(cfg: RunConfig) -> Table:
    model = SpectralModel(_need_edges(cfg), cfg.s)
    ts = cfg.t_values()
    cols = {"z_direct": trace_curve(model, ts, "direct", _trunc(cfg)).z}
    if model.s == 0.5:
        cols["z_exact_half"] = trace_curve(model, ts, "exact_half").z
    if model.s == 1.0:
        cols["z_theta"] = trace_curve(model, ts, "theta_s1").z
    z_asym = trace_curve(model, ts, "asymptotic").z
    cols["z_asymptotic"] = z_asym
    rel = np.abs(cols["z_direct"] - z_asym) / cols["z_direct"]
    table = Table(["t", *cols, "rel_err_asym"])
    for i, t in enumerate(sorted(ts)):
        table.rows.append([t, *(float(c[i]) for c in cols.values()), float(rel[i])])
    exp = expansion_coefficients(model)
    table.meta = {"expansion_coefficients": list(exp.coefficients), "validity": exp.validity}
    return table


def _counting(cfg: RunConfig) -> Table:
    if cfg.e_max is None or not cfg.e_max > 0:
        raise DomainError("counting needs a positive --e-max")
    model = SpectralModel(_need_edges(cfg), cfg.s)
    n = counting_function(model, cfg.e_max)
    w = weyl_prediction(model, cfg.e_max)
    return Table(["e_max", "count", "weyl", "ratio"], [[cfg.e_max, n, w, n / w]])


def _images(cfg: RunConfig) -> Table:
    if len(cfg.edges) != 1:
        raise DomainError("images works on a single interval: pass --edge a")
    a = cfg.edges[0]
    table = Table(["t", "z_images", "free_bulk", "shift", "image_pairs", "reflected", "constant"])
    for t in sorted(cfg.t_values()):
        rep = image_trace(a, cfg.s, t, ImageSeriesSpec(), _quad(cfg))
        table.rows.append([t, rep.value, rep.free_bulk, rep.shift, rep.image_pairs, rep.reflected, rep.constant])
    table.meta = {"target_constant": -cfg.s / 2.0, "lambda_a_at_t": "free_bulk"}
    return table


def _corners(cfg: RunConfig) -> Table:
    if cfg.ngon is not None:
        return Table(["n", "correction"], [[cfg.ngon, regular_polygon_correction(cfg.ngon)]])
    if not cfg.angles:
        raise DomainError("corners needs --angles or --ngon")
    return Table(["corners", "correction"], [[len(cfg.angles), corner_correction(cfg.angles)]])


_DISPATCH = {
    "geometry": _geometry,
    "trace": _trace,
    "compare": _compare,
    "counting": _counting,
    "images": _images,
    "corners": _corners,
}


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    """Execute one command; returns the process exit status."""
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        table = _DISPATCH[cfg.command](cfg)
    except (ConvergenceError, ResourceError) as exc:
        extra = getattr(exc, "achieved_error", None)
        suffix = f" (achieved error {extra:.3g})" if isinstance(extra, float) else ""
        print(f"error: {exc}{suffix}", file=stderr)
        return EXIT_NUMERIC
    except DomainError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    text = render(table, cfg.fmt)
    if cfg.out:
        with open(cfg.out, "w", newline="") as fh:
            fh.write(text)
    else:
        stdout.write(text)
    return EXIT_OK


# ---------------------------------------------------------------------------
# argument parsing


def _floats(text: str) -> tuple[float, ...]:
    try:
        vals = tuple(float(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated numbers, got {text!r}")
    if not vals:
        raise argparse.ArgumentTypeError("empty list")
    return vals


def _t_grid(text: str) -> tuple[float, float, int, str]:
    parts = text.split(":")
    if len(parts) != 4:
        raise argparse.ArgumentTypeError("t-grid must be MIN:MAX:SPACING:COUNT")
    lo, hi, spacing, count = parts
    try:
        lo, hi, count = float(lo), float(hi), int(count)
    except ValueError:
        raise argparse.ArgumentTypeError(f"bad t-grid {text!r}")
    if spacing not in ("log", "linear"):
        raise argparse.ArgumentTypeError("spacing must be log or linear")
    if not (0 < lo < hi) or count < 1:
        raise argparse.ArgumentTypeError("need 0 < MIN < MAX and COUNT >= 1")
    return lo, hi, count, spacing


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    common.add_argument("--out", default=None, help="output path (default: stdout)")
    common.add_argument("--tol", dest="rel_tol", type=float, default=None, help="quadrature rel_tol")
    common.add_argument("--max-terms", type=int, default=None, help="terms per axis for direct sums")

    box = argparse.ArgumentParser(add_help=False)
    box.add_argument("--edges", type=_floats, required=True, help="a1,a2,...")

    stab = argparse.ArgumentParser(add_help=False)
    stab.add_argument("--s", type=float, default=1.0, help="stability index in (0, 1]")

    grid = argparse.ArgumentParser(add_help=False)
    grid.add_argument("--t-grid", type=_t_grid, default=(1e-3, 1.0, 7, "log"))

    parser = argparse.ArgumentParser(prog="boxtrace", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("geometry", parents=[common, box])
    p = sub.add_parser("trace", parents=[common, box, stab, grid])
    p.add_argument("--method", choices=sorted(_METHODS), default="direct")
    sub.add_parser("compare", parents=[common, box, stab, grid])
    p = sub.add_parser("counting", parents=[common, box, stab])
    p.add_argument("--e-max", type=float, required=True)
    p = sub.add_parser("images", parents=[common, stab, grid])
    p.add_argument("--edge", type=float, required=True)
    p = sub.add_parser("corners", parents=[common])
    g = p.add_mutually_exclusive_group(required=True)
    g.add_argument("--angles", type=_floats)
    g.add_argument("--ngon", type=int)
    return parser


def parse_config(argv) -> RunConfig:
    ns = build_parser().parse_args(argv)
    edges = getattr(ns, "edges", None) or ()
    if ns.command == "images":
        edges = (ns.edge,)
    return RunConfig(
        command=ns.command,
        edges=tuple(edges),
        s=getattr(ns, "s", 1.0),
        t_grid=getattr(ns, "t_grid", (1e-3, 1.0, 7, "log")),
        e_max=getattr(ns, "e_max", None),
        method=getattr(ns, "method", "direct"),
        angles=tuple(getattr(ns, "angles", None) or ()),
        ngon=getattr(ns, "ngon", None),
        rel_tol=ns.rel_tol,
        max_terms=ns.max_terms,
        fmt=ns.fmt,
        out=ns.out,
    )


def main(argv=None) -> int:
    cfg = parse_config(argv)
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
