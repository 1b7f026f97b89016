"""
Planar classification of soliton curves by affine curvature.

For c' = B c + d in the plane, |c'(t) c''(t)| = beta^3 exp(tau t) with
tau = trace B. The similarity invariant k(B) = -2 + 9 det B / tau^2 gives the
equi-affine curvature k / sigma^2 and the constant general-affine curvature
-2 |k|^(-1/2).
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from typing import Optional

import numpy as np

from .curve import CurveSamples, SolitonSpec
from .errors import DegenerateCurve, DimensionError, UndefinedInvariant
from .kernel import (COMPLEX_PAIR, REAL_REPEATED_DEFECTIVE, as_matrix, spectrum2,
                     tau_eig)

K_ZERO = 1e-9

LINE = "line"
PARABOLA = "parabola"
ELLIPSE = "ellipse"
HYPERBOLA = "hyperbola"
CONSTANT_KGA = "constant-kga"

SCALING = "scaling"
SIMILARITY = "similarity"
SHEAR = "shear"
HOMOTHETY_SHEAR = "homothety-shear"
TRANSLATION_COMPOSITE = "translation-composite"


@dataclass(frozen=True)
class CurvatureReport:
    beta: float
    tau: float
    detB: float
    k: Optional[float]
    epsilon: int
    kind: str
    kga: Optional[float]
    family_type: str

    def to_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        kga = "undefined" if self.kga is None else repr(self.kga)
        return f"kind={self.kind} kga={kga} family={self.family_type}"


def _planar(B):
    B = as_matrix(B)
    if B.shape != (2, 2):
        raise DimensionError("affine curvature is defined for planar curves only")
    return B


def _det2(u, w) -> float:
    return float(u[0] * w[1] - u[1] * w[0])


def _sign(x: float) -> int:
    return (x > 0) - (x < 0)


def oriented(spec: SolitonSpec) -> SolitonSpec:
    """Reverse the orientation if |c'(0) c''(0)| < 0."""
    _planar(spec.B)
    w = spec.velocity0
    return spec.reversed() if _det2(w, spec.B @ w) < 0 else spec


def beta(spec: SolitonSpec) -> float:
    """beta = |c'(0) c''(0)|^(1/3) after orientation correction."""
    B = _planar(spec.B)
    w = spec.velocity0
    return abs(_det2(w, B @ w)) ** (1.0 / 3.0)


def _tau_is_zero(B) -> bool:
    return abs(B[0, 0] + B[1, 1]) <= tau_eig(B)


def k_invariant(B) -> Optional[float]:
    """k(B) = -2 + 9 det B / trace^2 B, or None when the trace vanishes."""
    B = _planar(B)
    if _tau_is_zero(B):
        return None
    tau = B[0, 0] + B[1, 1]
    det = B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]
    return float(-2.0 + 9.0 * det / tau**2)


def general_affine_curvature(B) -> float:
    """kga = -2 |k(B)|^(-1/2); needs trace B != 0 and k(B) != 0."""
    k = k_invariant(B)
    if k is None:
        raise UndefinedInvariant("general-affine curvature needs trace B != 0")
    if abs(k) <= K_ZERO:
        raise UndefinedInvariant("general-affine curvature needs k(B) != 0")
    return -2.0 / math.sqrt(abs(k))


def family_type(B) -> str:
    B = _planar(B)
    if not np.any(B):
        return TRANSLATION_COMPOSITE
    sp = spectrum2(B)
    if sp.kind == COMPLEX_PAIR:
        return SIMILARITY
    if sp.kind == REAL_REPEATED_DEFECTIVE:
        return SHEAR if abs(sp.eigenvalues[0]) <= tau_eig(B) else HOMOTHETY_SHEAR
    return SCALING


def classify(spec: SolitonSpec) -> CurvatureReport:
    B = _planar(spec.B)
    tau = float(B[0, 0] + B[1, 1])
    detB = float(B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0])
    b = beta(spec)
    ftype = family_type(B)
    if b <= tau_eig(B):
        return CurvatureReport(b, tau, detB, None, 0, LINE, None, ftype)
    k = k_invariant(B)
    if k is None:
        eps = 0 if abs(detB) <= tau_eig(B) * (1.0 + abs(tau)) else _sign(detB)
        kind = {0: PARABOLA, 1: ELLIPSE, -1: HYPERBOLA}[eps]
        return CurvatureReport(b, tau, detB, None, eps, kind, None, ftype)
    if abs(k) <= K_ZERO:
        return CurvatureReport(b, tau, detB, k, 0, PARABOLA, None, ftype)
    return CurvatureReport(b, tau, detB, k, _sign(k), CONSTANT_KGA,
                           -2.0 / math.sqrt(abs(k)), ftype)


def equi_affine_curvature_constant(spec: SolitonSpec) -> float:
    """kappa_ea = det B / beta^2 for a traceless B."""
    B = _planar(spec.B)
    if not _tau_is_zero(B):
        raise UndefinedInvariant("equi-affine curvature is constant only for trace B = 0")
    b = beta(spec)
    if b <= tau_eig(B):
        raise DegenerateCurve("c'(0) and c''(0) are collinear")
    return float(B[0, 0] * B[1, 1] - B[0, 1] * B[1, 0]) / b**2


@dataclass(frozen=True)
class ArcLengthMap:
    """
    sigma_ea(t) = beta t (tau = 0) or (3 beta / tau) exp(tau t / 3), and
    sigma_ga(t) = ga_rate * t when the general-affine curvature is defined.
    """

    kind: str
    beta: float
    tau: float
    ga_rate: Optional[float] = None

    def sigma_ea(self, t):
        t = np.asarray(t, dtype=float)
        if self.kind == "proportional-linear":
            out = self.beta * t
        else:
            out = (3.0 * self.beta / self.tau) * np.exp(self.tau * t / 3.0)
        return out if out.ndim else float(out)

    def t_of_sigma(self, sigma):
        sigma = np.asarray(sigma, dtype=float)
        if self.kind == "proportional-linear":
            out = sigma / self.beta
        else:
            out = (3.0 / self.tau) * np.log(self.tau * sigma / (3.0 * self.beta))
        return out if out.ndim else float(out)

    def sigma_ga(self, t):
        if self.ga_rate is None:
            raise UndefinedInvariant("general-affine arc length is not defined here")
        return self.ga_rate * np.asarray(t, dtype=float)


def arclength_map(spec: SolitonSpec) -> ArcLengthMap:
    B = _planar(spec.B)
    b = beta(spec)
    if b <= tau_eig(B):
        raise DegenerateCurve("beta = 0: c'(0) and c''(0) are collinear")
    tau = float(B[0, 0] + B[1, 1])
    if _tau_is_zero(B):
        return ArcLengthMap("proportional-linear", b, tau)
    k = k_invariant(B)
    rate = None
    if abs(k) > K_ZERO:
        K = abs(k) ** -0.5
        rate = tau / (3.0 * K)
    return ArcLengthMap("exponential", b, tau, rate)


# --- numeric oracle ---------------------------------------------------------


def finite_difference_stencil(P, h):
    """
    First three derivatives at the centre of 9 equally spaced samples,
    central differences with one Richardson step (steps h and 2h).
    """
    P = np.asarray(P, dtype=float)
    c = 4

    def d123(H, m):
        p1, m1, p2, m2 = P[c + m], P[c - m], P[c + 2 * m], P[c - 2 * m]
        d1 = (p1 - m1) / (2 * H)
        d2 = (p1 - 2 * P[c] + m1) / H**2
        d3 = (p2 - 2 * p1 + 2 * m1 - m2) / (2 * H**3)
        return d1, d2, d3

    fine = d123(h, 1)
    coarse = d123(2 * h, 2)
    return [(4 * f - g) / 3 for f, g in zip(fine, coarse)]


class _ArcLengthTable:
    """sigma(t) = sigma0 + int_{t0}^t |c' c''|^(1/3) by composite Simpson."""

    def __init__(self, differentiate, t0, t1, panels, sigma0):
        self.density = lambda t: abs(_det2(*differentiate(t))) ** (1.0 / 3.0)
        self.knots = np.linspace(t0, t1, panels + 1)
        mids = 0.5 * (self.knots[1:] + self.knots[:-1])
        g_knots = np.array([self.density(t) for t in self.knots])
        g_mids = np.array([self.density(t) for t in mids])
        self.g_knots = g_knots
        width = self.knots[1] - self.knots[0]
        panel = width / 6.0 * (g_knots[:-1] + 4 * g_mids + g_knots[1:])
        self.cumulative = sigma0 + np.concatenate(([0.0], np.cumsum(panel)))

    def __call__(self, t):
        p = int(np.clip(np.searchsorted(self.knots, t, side="right") - 1,
                        0, len(self.knots) - 2))
        a = self.knots[p]
        if t == a:
            return self.cumulative[p]
        g0 = self.g_knots[p]
        part = (t - a) / 6.0 * (g0 + 4 * self.density(0.5 * (a + t)) + self.density(t))
        return self.cumulative[p] + part

    def invert(self, sigma):
        """t with sigma(t) = sigma, Newton from a linear guess."""
        t = float(np.interp(sigma, self.cumulative, self.knots))
        lo, hi = self.knots[0], self.knots[-1]
        for _ in range(50):
            step = (self(t) - sigma) / self.density(t)
            t_new = min(max(t - step, lo), hi)
            if abs(t_new - t) <= 4e-16 * max(1.0, abs(t)):
                return t_new
            t = t_new
        return t


def numeric_equi_affine_curvature(samples: CurveSamples, panels: int = 512,
                                  points: int = 33, sigma0: float = 0.0,
                                  resolution: int = 2048) -> list:
    """
    Estimate (sigma_ea, kappa_ea) pairs at interior points of a sampled curve.

    The arc length is integrated with composite Simpson, the curve is
    resampled at equal steps h = (sigma range) / resolution, and
    kappa_ea = |c~'' c~'''| is taken from Richardson-extrapolated central
    differences. ``sigma0`` is the arc length assigned to the first sample.
    """
    if samples.evaluate is None or samples.differentiate is None:
        raise ValueError("samples must carry evaluate/differentiate callables")
    if panels < 512:
        raise ValueError("at least 512 Simpson panels are required")
    t0, t1 = float(samples.ts[0]), float(samples.ts[-1])
    table = _ArcLengthTable(samples.differentiate, t0, t1, panels, sigma0)

    dets = np.array([_det2(*samples.differentiate(t)) for t in table.knots])
    scale = 1.0 + float(np.abs(samples.points).max())
    floor = 1e-9 * scale
    if np.any(np.abs(dets) < floor):
        raise DegenerateCurve("c' and c'' become collinear on the sampled range")
    if np.any(np.sign(dets) != np.sign(dets[0])):
        raise DegenerateCurve("orientation changes on the sampled range")
    orientation = float(np.sign(dets[0]))

    s_lo, s_hi = table.cumulative[0], table.cumulative[-1]
    h = (s_hi - s_lo) / resolution
    centres = np.linspace(s_lo + 4 * h, s_hi - 4 * h, points + 2)[1:-1]
    out = []
    for sc in centres:
        P = [samples.evaluate(table.invert(sc + m * h)) for m in range(-4, 5)]
        _, d2, d3 = finite_difference_stencil(P, h)
        out.append((float(sc), orientation * _det2(d2, d3)))
    return out
