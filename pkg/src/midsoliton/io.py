"""
File formats.

Polygon CSV::

    # topology=open alpha=0.5
    j,x1,...,xn

Curve samples CSV (comment header names the columns)::

    # columns=t,x1,x2,dx1,dx2,ddx1,ddx2
    t,x1,...,xn[,dx1,...,dxn,ddx1,...,ddxn]

Specs and curvature reports are JSON. Floats are written with ``repr``,
the shortest decimal that round-trips exactly.
"""

from __future__ import annotations

import json
import math
from pathlib import Path

import numpy as np

from .affine import AffineMap
from .curvature import CurvatureReport
from .curve import CurveSamples, SolitonSpec
from .errors import ParseError
from .polygon import CYCLIC, OPEN, PolygonWindow


def fmt(x: float) -> str:
    x = float(x)
    if x == 0.0:
        return "0.0"  # drops the sign of -0.0
    return repr(x)


def _float(tok: str, line: int) -> float:
    try:
        val = float(tok)
    except ValueError:
        raise ParseError(f"not a number: {tok!r}", line) from None
    if not math.isfinite(val):
        raise ParseError(f"non-finite value {tok!r}", line)
    return val


# --- command-line values ------------------------------------------------------


def parse_vector(text: str) -> np.ndarray:
    toks = [t.strip() for t in text.split(",")]
    if not toks or any(t == "" for t in toks):
        raise ParseError(f"malformed vector {text!r}")
    return np.array([_float(t, None) for t in toks])


def parse_matrix(text: str) -> np.ndarray:
    """Row-major "a,b;c,d"."""
    rows = [parse_vector(r) for r in text.split(";")]
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise ParseError(f"matrix {text!r} is not square")
    return np.array(rows)


def format_matrix(M) -> str:
    return ";".join(",".join(fmt(x) for x in row) for row in np.asarray(M))


def format_vector(v) -> str:
    return ",".join(fmt(x) for x in np.asarray(v))


# --- polygon CSV --------------------------------------------------------------


def dumps_polygon(x: PolygonWindow, alpha: float | None = None) -> str:
    head = f"# topology={x.topology}"
    if alpha is not None:
        head += f" alpha={fmt(alpha)}"
    lines = [head]
    for j, p in zip(x.indices(), x.vertices):
        lines.append(",".join([str(j)] + [fmt(c) for c in p]))
    return "\n".join(lines) + "\n"


def _parse_header(line: str, lineno: int) -> dict:
    body = line.lstrip("#").split()
    out = {}
    for item in body:
        if "=" not in item:
            raise ParseError(f"malformed header item {item!r}", lineno)
        key, val = item.split("=", 1)
        out[key] = val
    return out


def loads_polygon(text: str):
    """Parse polygon CSV; returns (PolygonWindow, alpha or None)."""
    lines = text.splitlines()
    if not lines or not lines[0].startswith("#"):
        raise ParseError("missing '# topology=...' header", 1)
    meta = _parse_header(lines[0], 1)
    topology = meta.get("topology", OPEN)
    if topology not in (OPEN, CYCLIC):
        raise ParseError(f"unknown topology {topology!r}", 1)
    alpha = _float(meta["alpha"], 1) if "alpha" in meta else None
    idx, verts = [], []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split(",")
        if len(toks) < 2:
            raise ParseError("expected j,x1,...,xn", lineno)
        try:
            j = int(toks[0])
        except ValueError:
            raise ParseError(f"index {toks[0]!r} is not an integer", lineno) from None
        if idx and j != idx[-1] + 1:
            raise ParseError(f"index {j} does not follow {idx[-1]}", lineno)
        row = [_float(t, lineno) for t in toks[1:]]
        if verts and len(row) != len(verts[0]):
            raise ParseError("vertex dimension changes", lineno)
        idx.append(j)
        verts.append(row)
    if not verts:
        raise ParseError("no vertices", len(lines))
    return PolygonWindow(idx[0], np.array(verts), topology), alpha


def read_polygon(path):
    return loads_polygon(Path(path).read_text())


def write_polygon(path, x: PolygonWindow, alpha=None):
    Path(path).write_text(dumps_polygon(x, alpha))


# --- samples CSV --------------------------------------------------------------


def dumps_samples(samples: CurveSamples, with_derivs: bool = False) -> str:
    n = samples.dim
    cols = ["t"] + [f"x{i + 1}" for i in range(n)]
    blocks = [samples.ts[:, None], samples.points]
    if with_derivs:
        if samples.derivs is None:
            raise ValueError("samples carry no derivatives")
        cols += [f"dx{i + 1}" for i in range(n)] + [f"ddx{i + 1}" for i in range(n)]
        blocks += list(samples.derivs[:2])
    table = np.hstack(blocks)
    lines = ["# columns=" + ",".join(cols)]
    lines += [",".join(fmt(x) for x in row) for row in table]
    return "\n".join(lines) + "\n"


def loads_samples(text: str) -> CurveSamples:
    lines = text.splitlines()
    if not lines or not lines[0].startswith("# columns="):
        raise ParseError("missing '# columns=' header", 1)
    cols = lines[0].split("=", 1)[1].split(",")
    if cols[0] != "t":
        raise ParseError("first column must be t", 1)
    width = len(cols)
    n = sum(1 for c in cols if c.startswith("x"))
    if width not in (1 + n, 1 + 3 * n) or n == 0:
        raise ParseError(f"unexpected column layout {cols}", 1)
    rows = []
    for lineno, raw in enumerate(lines[1:], start=2):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        toks = line.split(",")
        if len(toks) != width:
            raise ParseError(f"expected {width} columns, got {len(toks)}", lineno)
        rows.append([_float(t, lineno) for t in toks])
    if not rows:
        raise ParseError("no samples", len(lines))
    T = np.array(rows)
    derivs = None
    if width == 1 + 3 * n:
        derivs = (T[:, 1 + n:1 + 2 * n], T[:, 1 + 2 * n:])
    try:
        return CurveSamples(T[:, 0], T[:, 1:1 + n], derivs)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


# --- JSON ---------------------------------------------------------------------


def _dumps(obj) -> str:
    return json.dumps(obj, indent=2, allow_nan=False) + "\n"


def spec_to_dict(spec: SolitonSpec) -> dict:
    return {"B": spec.B.tolist(), "d": spec.d.tolist(), "v": spec.v.tolist()}


def dumps_spec(spec: SolitonSpec) -> str:
    return _dumps(spec_to_dict(spec))


def loads_spec(text: str) -> SolitonSpec:
    try:
        obj = json.loads(text)
        return SolitonSpec(obj["B"], obj["d"], obj["v"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad spec JSON: {exc}") from None


def dumps_affine(g: AffineMap) -> str:
    return _dumps({"A": g.A.tolist(), "b": g.b.tolist()})


def loads_affine(text: str) -> AffineMap:
    try:
        obj = json.loads(text)
        return AffineMap(obj["A"], obj["b"])
    except (json.JSONDecodeError, KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad affine map JSON: {exc}") from None


def dumps_report(report: CurvatureReport) -> str:
    return _dumps(report.to_dict())


def loads_report(text: str) -> CurvatureReport:
    try:
        return CurvatureReport(**json.loads(text))
    except (json.JSONDecodeError, TypeError) as exc:
        raise ParseError(f"bad report JSON: {exc}") from None
