"""
Polygons under the midpoint maps.

A bi-infinite polygon is represented by a finite window of consecutive
indices jmin..jmax. Applying M_alpha to an open window drops the last index;
cyclic windows wrap around instead.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np

from .affine import AffineMap
from .curve import SolitonSpec
from .errors import AlphaOutOfRange, EigenvalueObstruction, EmptyResult, NotInvertible
from .kernel import f_b, is_singular, real_log, solve

log = logging.getLogger(__name__)

OPEN = "open"
CYCLIC = "cyclic"


@dataclass(frozen=True, eq=False)
class PolygonWindow:
    jmin: int
    vertices: np.ndarray
    topology: str = OPEN

    def __post_init__(self):
        V = np.array(self.vertices, dtype=float)
        if V.ndim == 1:
            V = V[:, None]
        if V.ndim != 2 or V.shape[0] == 0:
            raise EmptyResult("a polygon needs at least one vertex")
        if not np.all(np.isfinite(V)):
            raise ValueError("polygon has non-finite vertices")
        if self.topology not in (OPEN, CYCLIC):
            raise ValueError(f"unknown topology {self.topology!r}")
        V.setflags(write=False)
        object.__setattr__(self, "vertices", V)
        object.__setattr__(self, "jmin", int(self.jmin))

    @property
    def jmax(self) -> int:
        return self.jmin + len(self.vertices) - 1

    @property
    def dim(self) -> int:
        return self.vertices.shape[1]

    def __len__(self):
        return len(self.vertices)

    def indices(self) -> range:
        return range(self.jmin, self.jmax + 1)

    def vertex(self, j: int) -> np.ndarray:
        k = j - self.jmin
        if self.topology == CYCLIC:
            k %= len(self)
        elif not 0 <= k < len(self):
            raise IndexError(f"index {j} outside [{self.jmin}, {self.jmax}]")
        return self.vertices[k]

    def scale(self) -> float:
        return 1.0 + float(np.linalg.norm(self.vertices, axis=1).max())

    def mapped(self, g: AffineMap) -> PolygonWindow:
        return PolygonWindow(self.jmin, g(self.vertices), self.topology)

    def __eq__(self, other):
        if not isinstance(other, PolygonWindow):
            return NotImplemented
        return (self.jmin == other.jmin and self.topology == other.topology
                and np.array_equal(self.vertices, other.vertices))

    def __repr__(self):
        return (f"PolygonWindow(jmin={self.jmin}, jmax={self.jmax}, "
                f"topology={self.topology!r}, vertices={self.vertices.tolist()})")


@dataclass(frozen=True)
class SolitonResidual:
    max_residual: float
    per_index: list
    alpha: float
    scale: float = 1.0

    @property
    def relative(self) -> float:
        return self.max_residual / self.scale


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} not in (0, 1)")


def _next(x: PolygonWindow) -> np.ndarray:
    """x_{j+1} aligned with x_j (wrapped for cyclic windows)."""
    if x.topology == CYCLIC:
        return np.roll(x.vertices, -1, axis=0)
    return x.vertices[1:]


def midpoints_map(x: PolygonWindow, alpha: float = 0.5) -> PolygonWindow:
    """(M_alpha x)_j = (1 - alpha) x_j + alpha x_{j+1}."""
    _check_alpha(alpha)
    V = x.vertices
    if x.topology == CYCLIC:
        return PolygonWindow(x.jmin, (1 - alpha) * V + alpha * _next(x), CYCLIC)
    if len(x) < 2:
        raise EmptyResult("an open window of one vertex has no midpoints")
    return PolygonWindow(x.jmin, (1 - alpha) * V[:-1] + alpha * V[1:], OPEN)


def t_map(x: PolygonWindow) -> PolygonWindow:
    """(T x)_j = (x_{j-1} + 2 x_j + x_{j+1}) / 4."""
    V = x.vertices
    if x.topology == CYCLIC:
        W = (np.roll(V, 1, axis=0) + 2 * V + np.roll(V, -1, axis=0)) / 4
        return PolygonWindow(x.jmin, W, CYCLIC)
    if len(x) < 3:
        raise EmptyResult("T needs at least three vertices")
    return PolygonWindow(x.jmin + 1, (V[:-2] + 2 * V[1:-1] + V[2:]) / 4, OPEN)


def normalized_linear_part(g: AffineMap, alpha: float):
    """A_alpha = (A + (alpha - 1) I) / alpha and b_alpha = b / alpha."""
    _check_alpha(alpha)
    # written as I + (A - I) / alpha, which is exact for A = I
    A_alpha = np.eye(g.dim) + (g.A - np.eye(g.dim)) / alpha
    if is_singular(A_alpha):
        raise EigenvalueObstruction(f"1 - alpha = {1 - alpha} is an eigenvalue of A")
    return A_alpha, g.b / alpha


def soliton_polygon(g: AffineMap, alpha: float, v, jmin: int, jmax: int) -> PolygonWindow:
    """
    The unique polygon with x_0 = v and M_alpha(x)_j = A x_j + b.

    Built from x_{j+1} = A_alpha x_j + b_alpha forwards and
    x_j = A_alpha^-1 (x_{j+1} - b_alpha) backwards.
    """
    if jmax < jmin:
        raise EmptyResult("empty index range")
    A_alpha, b_alpha = normalized_linear_part(g, alpha)
    v = np.asarray(v, dtype=float)
    pts = {0: v}
    x = v
    for j in range(1, jmax + 1):
        x = A_alpha @ x + b_alpha
        pts[j] = x
    x = v
    for j in range(-1, jmin - 1, -1):
        x = np.linalg.solve(A_alpha, x - b_alpha)
        pts[j] = x
    return PolygonWindow(jmin, np.array([pts[j] for j in range(jmin, jmax + 1)]))


def closed_form_vertex(g: AffineMap, alpha: float, v, j: int) -> np.ndarray:
    """
    x_j without recursion:
    j > 0:  v + (A_a^j - I)(v + (A_a - I)^-1 b_a)
    j < 0:  v + (A_a^j - I)(v - (A_a^-1 - I)^-1 A_a^-1 b_a)

    Raises NotInvertible when the inner inverse factor is near-singular.
    """
    A_alpha, b_alpha = normalized_linear_part(g, alpha)
    v = np.asarray(v, dtype=float)
    n = g.dim
    I = np.eye(n)
    if j == 0:
        return v.copy()
    Aj = np.linalg.matrix_power(A_alpha, j)
    if j > 0:
        w = v + solve(A_alpha - I, b_alpha)
    else:
        Ainv = np.linalg.inv(A_alpha)
        w = v - solve(Ainv - I, Ainv @ b_alpha)
    return v + (Aj - I) @ w


def closed_form_deviation(x: PolygonWindow, g: AffineMap, alpha: float) -> float | None:
    """Max deviation between a window and the closed forms, skipping singular cases."""
    v = x.vertex(0)
    worst = None
    for j in x.indices():
        try:
            y = closed_form_vertex(g, alpha, v, j)
        except NotInvertible:
            log.info("closed form for j=%d skipped: inverse factor near-singular", j)
            continue
        dev = float(np.linalg.norm(y - x.vertex(j)))
        worst = dev if worst is None else max(worst, dev)
    return worst


def verify_soliton(x: PolygonWindow, g: AffineMap, alpha: float) -> SolitonResidual:
    """Residuals |(1-alpha) x_j + alpha x_{j+1} - (A x_j + b)| over the window."""
    _check_alpha(alpha)
    if len(x) < 2:
        raise EmptyResult("need at least two vertices")
    V = x.vertices
    W = _next(x)
    head = V[: len(W)]
    r = np.linalg.norm((1 - alpha) * head + alpha * W - g(head), axis=1)
    per_index = [(x.jmin + k, float(val)) for k, val in enumerate(r)]
    return SolitonResidual(float(r.max()), per_index, alpha, x.scale())


def embed_on_curve(g: AffineMap, alpha: float, v) -> SolitonSpec:
    """
    SolitonSpec (B_a, d_a, v) whose orbit passes through the soliton polygon:
    B_a = log A_a and d_a = F_{B_a}(1)^-1 b_a, so that c(j) = x_j.
    """
    A_alpha, b_alpha = normalized_linear_part(g, alpha)
    B_alpha = real_log(A_alpha)
    d_alpha = solve(f_b(B_alpha, 1.0), b_alpha)
    return SolitonSpec(B_alpha, d_alpha, np.asarray(v, dtype=float))
