"""
Orbits of one-parameter affine subgroups.

A SolitonSpec (B, d, v) determines the solution of c' = B c + d with
c(0) = v, namely c(t) = v + F_B(t)(B v + d). Every such curve is invariant
under the midpoint maps: (1-a) c(t) + a c(t+s) = A(s) c(t) + b(s).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

import numpy as np

from .affine import AffineMap
from .errors import AlphaOutOfRange, DimensionError
from .kernel import as_matrix, as_vector, f_b, mat_exp

DEFAULT_GRID = tuple(np.linspace(-2.0, 2.0, 9))


@dataclass(frozen=True, eq=False)
class SolitonSpec:
    B: np.ndarray
    d: np.ndarray
    v: np.ndarray

    def __post_init__(self):
        B = as_matrix(self.B)
        n = B.shape[0]
        d = as_vector(self.d, n)
        v = as_vector(self.v, n)
        for a in (B, d, v):
            a.setflags(write=False)
        object.__setattr__(self, "B", B)
        object.__setattr__(self, "d", d)
        object.__setattr__(self, "v", v)

    @property
    def dim(self) -> int:
        return self.B.shape[0]

    @property
    def velocity0(self) -> np.ndarray:
        """c'(0) = B v + d."""
        return self.B @ self.v + self.d

    def reversed(self) -> SolitonSpec:
        """The same orbit run backwards, t -> -t."""
        return SolitonSpec(-self.B, -self.d, self.v)

    def __eq__(self, other):
        if not isinstance(other, SolitonSpec):
            return NotImplemented
        return all(np.array_equal(x, y) for x, y in
                   ((self.B, other.B), (self.d, other.d), (self.v, other.v)))

    def __hash__(self):
        return hash((self.B.tobytes(), self.d.tobytes(), self.v.tobytes()))

    def __repr__(self):
        return f"SolitonSpec(B={self.B.tolist()}, d={self.d.tolist()}, v={self.v.tolist()})"


@dataclass
class CurveSamples:
    """
    Ordered samples of a smooth curve.

    ``derivs`` holds first and second derivatives at ``ts`` when known.
    ``evaluate`` and ``differentiate`` are optional callables t -> c(t) and
    t -> (c'(t), c''(t)) used by routines that need to resample.
    """

    ts: np.ndarray
    points: np.ndarray
    derivs: Optional[tuple] = None
    evaluate: Optional[Callable[[float], np.ndarray]] = field(default=None, repr=False)
    differentiate: Optional[Callable[[float], tuple]] = field(default=None, repr=False)

    def __post_init__(self):
        self.ts = np.asarray(self.ts, dtype=float)
        self.points = np.asarray(self.points, dtype=float)
        if self.ts.ndim != 1 or self.points.shape[0] != self.ts.shape[0]:
            raise DimensionError("ts and points lengths disagree")
        if np.any(np.diff(self.ts) <= 0):
            raise ValueError("ts must be strictly increasing")
        if self.derivs is not None:
            self.derivs = tuple(np.asarray(D, dtype=float) for D in self.derivs)
            if any(D.shape != self.points.shape for D in self.derivs):
                raise DimensionError("derivative arrays must match points")

    @property
    def dim(self) -> int:
        return self.points.shape[1]


def _check_alpha(alpha):
    if not 0.0 < alpha < 1.0:
        raise AlphaOutOfRange(f"alpha={alpha} not in (0, 1)")


def curve_point(spec: SolitonSpec, t: float) -> np.ndarray:
    return spec.v + f_b(spec.B, t) @ spec.velocity0


def curve_point_exp_form(spec: SolitonSpec, t: float) -> np.ndarray:
    """The equivalent form exp(Bt) v + F_B(t) d."""
    return mat_exp(spec.B, t) @ spec.v + f_b(spec.B, t) @ spec.d


def curve_derivatives(spec: SolitonSpec, t: float, order: int = 2) -> list:
    """[c'(t), ..., c^(order)(t)] with c^(k)(t) = B^(k-1) exp(Bt) (Bv + d)."""
    if order not in (1, 2, 3):
        raise ValueError("order must be 1, 2 or 3")
    w = mat_exp(spec.B, t) @ spec.velocity0
    out = [w]
    for _ in range(order - 1):
        w = spec.B @ w
        out.append(w)
    return out


def family_map(spec: SolitonSpec, alpha: float, s: float) -> AffineMap:
    """(A(s), b(s)) = ((1-a) I + a exp(Bs), a F_B(s) d)."""
    _check_alpha(alpha)
    n = spec.dim
    if s == 0:
        return AffineMap.identity(n)
    A = (1.0 - alpha) * np.eye(n) + alpha * mat_exp(spec.B, s)
    b = alpha * (f_b(spec.B, s) @ spec.d)
    return AffineMap(A, b)


def subgroup_element(spec: SolitonSpec, t: float) -> AffineMap:
    """exp(t [[B, d], [0, 0]]) as the affine map (exp(Bt), F_B(t) d)."""
    if t == 0:
        return AffineMap.identity(spec.dim)
    return AffineMap(mat_exp(spec.B, t), f_b(spec.B, t) @ spec.d)


def curve_scale(spec: SolitonSpec, ts) -> float:
    return 1.0 + max(float(np.linalg.norm(curve_point(spec, t))) for t in ts)


def verify_curve_soliton(spec: SolitonSpec, alpha: float,
                         s_grid: Sequence[float] = DEFAULT_GRID,
                         t_grid: Sequence[float] = DEFAULT_GRID) -> float:
    """Max over the grid of |(1-a) c(t) + a c(t+s) - (A(s) c(t) + b(s))|."""
    _check_alpha(alpha)
    if len(s_grid) == 0 or len(t_grid) == 0:
        raise ValueError("grids must be non-empty")
    cache = {}

    def c(t):
        if t not in cache:
            cache[t] = curve_point(spec, t)
        return cache[t]

    worst = 0.0
    for s in s_grid:
        g = family_map(spec, alpha, s)
        for t in t_grid:
            lhs = (1.0 - alpha) * c(t) + alpha * c(t + s)
            worst = max(worst, float(np.linalg.norm(lhs - g(c(t)))))
    return worst


def sample(spec: SolitonSpec, t0: float, t1: float, count: int) -> CurveSamples:
    if not t1 > t0:
        raise ValueError("need t1 > t0")
    if count < 2:
        raise ValueError("count must be at least 2")
    ts = np.linspace(t0, t1, count)
    points = np.array([curve_point(spec, t) for t in ts])
    d1, d2 = zip(*(curve_derivatives(spec, t, 2) for t in ts))
    return CurveSamples(
        ts, points, (np.array(d1), np.array(d2)),
        evaluate=lambda t: curve_point(spec, t),
        differentiate=lambda t: tuple(curve_derivatives(spec, t, 2)),
    )
