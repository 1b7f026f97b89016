"""
Command-line front end.

    midsoliton evolve --input square.csv --steps 3 --svg iterates.svg
    midsoliton soliton-curve --B "0,1;0,0" --d 0,1 --v 0,0 --svg parabola.svg --polygon
    midsoliton classify --B "1,1;0,1" --v 1,1 --d 0,0

Matrices are row-major with ';' between rows. Values that start with '-'
must be attached with '=', e.g. --B=-1,0;0,1.
"""

from __future__ import annotations

import argparse
import logging
import math
import os
import sys
from pathlib import Path

import numpy as np

from . import io
from .affine import AffineMap
from .curvature import classify
from .curve import CurveSamples, SolitonSpec, curve_point, sample, verify_curve_soliton
from .errors import (AlphaOutOfRange, DimensionError, ParseError, SolitonError)
from .polygon import (PolygonWindow, embed_on_curve, midpoints_map, soliton_polygon,
                      t_map, verify_soliton)
from .svg import CURVE_SEGMENTS, Figure

log = logging.getLogger("midsoliton")

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_MATH = 0, 1, 2, 3


def _setup_logging():
    level = os.environ.get("SOLITON_LOG", "error").upper()
    if level not in ("ERROR", "INFO", "DEBUG"):
        level = "ERROR"
    logging.basicConfig(level=getattr(logging, level),
                        format="%(levelname)s %(name)s: %(message)s")


def _emit(text: str, path):
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)


def _float_list(text: str):
    return [float(x) for x in io.parse_vector(text)]


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} not in (0, 1)")


def _spec_from_args(args) -> SolitonSpec:
    if getattr(args, "spec", None):
        return io.loads_spec(Path(args.spec).read_text())
    if args.B is None:
        raise ParseError("need --B (or --spec)")
    B = io.parse_matrix(args.B)
    n = B.shape[0]
    d = io.parse_vector(args.d) if args.d else np.zeros(n)
    v = io.parse_vector(args.v) if args.v else np.zeros(n)
    if len(d) != n or len(v) != n:
        raise DimensionError("B, d and v dimensions disagree")
    return SolitonSpec(B, d, v)


def _map_from_args(args) -> AffineMap:
    if getattr(args, "map", None):
        return io.loads_affine(Path(args.map).read_text())
    if args.A is None:
        raise ParseError("need --A (or --map)")
    A = io.parse_matrix(args.A)
    b = io.parse_vector(args.b) if args.b else np.zeros(A.shape[0])
    if len(b) != A.shape[0]:
        raise DimensionError("A and b dimensions disagree")
    return AffineMap(A, b)


def _draw_polygon(fig: Figure, x: PolygonWindow, **kw):
    fig.polyline(x.vertices, closed=x.topology == "cyclic", **kw)


# --- commands -----------------------------------------------------------------


def cmd_evolve(args) -> int:
    x, header_alpha = io.read_polygon(args.input)
    alpha = args.alpha if args.alpha is not None else (header_alpha or 0.5)
    _check_alpha(alpha)
    iterates = [x]
    for _ in range(args.steps):
        x = t_map(x) if args.t_map else midpoints_map(x, alpha)
        iterates.append(x)
    if args.iterates_dir:
        out_dir = Path(args.iterates_dir)
        out_dir.mkdir(parents=True, exist_ok=True)
        for k, y in enumerate(iterates):
            io.write_polygon(out_dir / f"iterate_{k:03d}.csv", y, alpha)
    _emit(io.dumps_polygon(x, alpha), args.out)
    if args.svg:
        fig = Figure()
        for k, y in enumerate(iterates):
            _draw_polygon(fig, y, markers=k == 0)
        fig.save(args.svg, args.reproducible)
    return EXIT_OK


def cmd_soliton_polygon(args) -> int:
    g = _map_from_args(args)
    v = io.parse_vector(args.v) if args.v else np.zeros(g.dim)
    x = soliton_polygon(g, args.alpha, v, args.jmin, args.jmax)
    _emit(io.dumps_polygon(x, args.alpha), args.out)
    if args.svg:
        fig = Figure()
        _draw_polygon(fig, x, markers=True)
        for _ in range(args.midpoint_steps):
            x = midpoints_map(x, args.alpha)
            _draw_polygon(fig, x, markers=True)
        fig.save(args.svg, args.reproducible)
    return EXIT_OK


def cmd_soliton_curve(args) -> int:
    spec = _spec_from_args(args)
    _check_alpha(args.alpha)
    samples = sample(spec, args.t0, args.t1, args.count)
    _emit(io.dumps_samples(samples, with_derivs=args.derivs), args.out)
    if args.svg:
        if spec.dim < 2:
            raise DimensionError("SVG output needs at least two coordinates")
        ts = np.linspace(args.t0, args.t1, CURVE_SEGMENTS + 1)
        fig = Figure()
        fig.curve([curve_point(spec, t) for t in ts], color="#000000")
        if args.polygon:
            js = range(math.ceil(args.t0), math.floor(args.t1) + 1)
            x = PolygonWindow(js.start, [curve_point(spec, j) for j in js])
            _draw_polygon(fig, x, markers=True)
            for _ in range(args.midpoint_steps):
                if len(x) < 2:
                    break
                x = midpoints_map(x, args.alpha)
                _draw_polygon(fig, x, markers=True)
        for s in (_float_list(args.s_grid) if args.s_grid else []):
            pts = [(1 - args.alpha) * curve_point(spec, t) + args.alpha * curve_point(spec, t + s)
                   for t in ts]
            fig.curve(pts, width=1.0)
        fig.save(args.svg, args.reproducible)
    return EXIT_OK


def cmd_embed(args) -> int:
    g = _map_from_args(args)
    v = io.parse_vector(args.v) if args.v else np.zeros(g.dim)
    spec = embed_on_curve(g, args.alpha, v)
    _emit(io.dumps_spec(spec), args.out)
    return EXIT_OK


def cmd_classify(args) -> int:
    spec = _spec_from_args(args)
    report = classify(spec)
    text = io.dumps_report(report)
    if args.out:
        _emit(text, args.out)
        print(report.summary())
    else:
        sys.stdout.write(text)
        print(report.summary(), file=sys.stderr)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.input:
        x, header_alpha = io.read_polygon(args.input)
        alpha = args.alpha if args.alpha is not None else (header_alpha or 0.5)
        g = _map_from_args(args)
        res = verify_soliton(x, g, alpha)
        worst_j = max(res.per_index, key=lambda p: p[1])[0]
        residual = res.max_residual
        print(f"max_residual={io.fmt(residual)} at j={worst_j} scale={io.fmt(res.scale)}")
    else:
        spec = _spec_from_args(args)
        alpha = args.alpha if args.alpha is not None else 0.5
        s_grid = _float_list(args.s_grid) if args.s_grid else list(np.linspace(-2, 2, 9))
        t_grid = _float_list(args.t_grid) if args.t_grid else list(np.linspace(-2, 2, 9))
        residual = verify_curve_soliton(spec, alpha, s_grid, t_grid)
        print(f"max_residual={io.fmt(residual)}")
    if residual <= args.tol:
        return EXIT_OK
    print(f"residual exceeds tolerance {io.fmt(args.tol)}")
    return EXIT_FAIL


def cmd_render(args) -> int:
    fig = Figure()
    for path in args.inputs:
        text = Path(path).read_text()
        if text.startswith("# columns="):
            s: CurveSamples = io.loads_samples(text)
            fig.curve(s.points)
        else:
            x, _ = io.loads_polygon(text)
            _draw_polygon(fig, x, markers=True)
    _emit(fig.render(args.reproducible), args.out)
    return EXIT_OK


# --- parser -------------------------------------------------------------------


def _add_spec_args(p):
    p.add_argument("--B", help='generator matrix, e.g. "0,1;0,0"')
    p.add_argument("--d", help="inhomogeneous term, e.g. 0,1")
    p.add_argument("--v", help="initial point c(0)")
    p.add_argument("--spec", help="SolitonSpec JSON file instead of --B/--d/--v")


def _add_map_args(p):
    p.add_argument("--A", help="linear part of the affine map")
    p.add_argument("--b", help="translation part of the affine map")
    p.add_argument("--map", help="affine map JSON file instead of --A/--b")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="midsoliton", allow_abbrev=False,
        description="Polygons and curves invariant under midpoint maps.")
    parser.add_argument("--no-reproducible", dest="reproducible", action="store_false",
                        help="stamp SVG output with the generation time")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, **kw):
        return sub.add_parser(name, allow_abbrev=False, **kw)

    p = add("evolve", help="iterate M_alpha (or T) on a polygon CSV")
    p.add_argument("--input", required=True)
    p.add_argument("--alpha", type=float, default=None,
                   help="defaults to the CSV header value, then 0.5")
    p.add_argument("--steps", type=int, default=1)
    p.add_argument("--t-map", action="store_true", help="apply T instead of M_alpha")
    p.add_argument("--out")
    p.add_argument("--iterates-dir")
    p.add_argument("--svg")
    p.set_defaults(func=cmd_evolve)

    p = add("soliton-polygon", help="build the soliton polygon of an affine map")
    _add_map_args(p)
    p.add_argument("--v")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--jmin", type=int, default=-8)
    p.add_argument("--jmax", type=int, default=8)
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--midpoint-steps", type=int, default=0)
    p.set_defaults(func=cmd_soliton_polygon)

    p = add("soliton-curve", help="sample c(t) = v + F_B(t)(Bv + d)")
    _add_spec_args(p)
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--t0", type=float, default=-2.0)
    p.add_argument("--t1", type=float, default=2.0)
    p.add_argument("--count", type=int, default=101)
    p.add_argument("--derivs", action="store_true", help="append c' and c'' columns")
    p.add_argument("--out")
    p.add_argument("--svg")
    p.add_argument("--polygon", action="store_true", help="overlay the polygon c(j)")
    p.add_argument("--midpoint-steps", type=int, default=2)
    p.add_argument("--s-grid", help="overlay (1-alpha) c(t) + alpha c(t+s) for these s")
    p.set_defaults(func=cmd_soliton_curve)

    p = add("embed", help="find the orbit through a soliton polygon")
    _add_map_args(p)
    p.add_argument("--v")
    p.add_argument("--alpha", type=float, default=0.5)
    p.add_argument("--out")
    p.set_defaults(func=cmd_embed)

    p = add("classify", help="affine curvature report of a planar spec")
    _add_spec_args(p)
    p.add_argument("--out")
    p.set_defaults(func=cmd_classify)

    p = add("verify", help="residual of the soliton identity")
    p.add_argument("--input", help="polygon CSV; omit to verify a curve spec")
    _add_map_args(p)
    _add_spec_args(p)
    p.add_argument("--alpha", type=float, default=None)
    p.add_argument("--s-grid")
    p.add_argument("--t-grid")
    p.add_argument("--tol", type=float, default=1e-8)
    p.set_defaults(func=cmd_verify)

    p = add("render", help="draw polygon/sample CSV files as SVG")
    p.add_argument("inputs", nargs="+")
    p.add_argument("--out")
    p.set_defaults(func=cmd_render)
    return parser


_INPUT_ERRORS = (ParseError, DimensionError, AlphaOutOfRange)


def main(argv=None) -> int:
    _setup_logging()
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except _INPUT_ERRORS as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except SolitonError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MATH
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
