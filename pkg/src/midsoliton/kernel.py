"""
Small dense matrix functions.

exp(Bt), the series F_B(t) = sum_{k>=1} t^k/k! B^(k-1), the principal real
logarithm, and a 2x2 spectral classifier. Matrices are plain float ndarrays
of shape (n, n) with 1 <= n <= 16.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, MatrixOverflow, NoRealLog, NotInvertible

MAX_DIM = 16
_EPS = np.finfo(float).eps

REAL_DISTINCT = "real-distinct"
REAL_REPEATED_DIAGONALIZABLE = "real-repeated-diagonalizable"
REAL_REPEATED_DEFECTIVE = "real-repeated-defective"
COMPLEX_PAIR = "complex-pair"


def as_matrix(B) -> np.ndarray:
    B = np.array(B, dtype=float)
    if B.ndim != 2 or B.shape[0] != B.shape[1]:
        raise DimensionError(f"expected a square matrix, got shape {B.shape}")
    if not 1 <= B.shape[0] <= MAX_DIM:
        raise DimensionError(f"matrix dimension {B.shape[0]} outside 1..{MAX_DIM}")
    if not np.all(np.isfinite(B)):
        raise ValueError("matrix has non-finite entries")
    return B


def as_vector(x, n: int | None = None) -> np.ndarray:
    x = np.array(x, dtype=float)
    if x.ndim != 1:
        raise DimensionError(f"expected a vector, got shape {x.shape}")
    if n is not None and x.shape[0] != n:
        raise DimensionError(f"vector has dimension {x.shape[0]}, expected {n}")
    if not np.all(np.isfinite(x)):
        raise ValueError("vector has non-finite entries")
    return x


def norm(B) -> float:
    """Spectral norm."""
    return float(np.linalg.norm(B, 2))


def tau_det(A) -> float:
    """Singularity threshold 1e-12 * ||A||^n."""
    A = np.asarray(A)
    return 1e-12 * norm(A) ** A.shape[0]


def tau_eig(B) -> float:
    """Eigenvalue coincidence threshold 1e-9 * (1 + ||B||)."""
    return 1e-9 * (1.0 + norm(B))


def _check_finite(M, what):
    if not np.all(np.isfinite(M)):
        raise MatrixOverflow(f"{what} overflowed")
    return M


def det(B) -> float:
    return float(np.linalg.det(as_matrix(B)))


def trace(B) -> float:
    return float(np.trace(as_matrix(B)))


def is_singular(A) -> bool:
    A = as_matrix(A)
    return abs(np.linalg.det(A)) <= tau_det(A)


def inverse(B) -> np.ndarray:
    B = as_matrix(B)
    if is_singular(B):
        raise NotInvertible(f"|det| = {abs(np.linalg.det(B)):.3g} below threshold")
    return np.linalg.inv(B)


def solve(B, y) -> np.ndarray:
    B = as_matrix(B)
    y = np.asarray(y, dtype=float)
    if is_singular(B):
        raise NotInvertible(f"|det| = {abs(np.linalg.det(B)):.3g} below threshold")
    return np.linalg.solve(B, y)


def _scaling_steps(B, t):
    size = np.linalg.norm(B, 1) * abs(t)
    return 0 if size <= 0.5 else int(math.ceil(math.log2(size / 0.5)))


def mat_exp(B, t: float = 1.0) -> np.ndarray:
    """exp(B t) by Taylor series on a scaled argument followed by squaring."""
    B = as_matrix(B)
    n = B.shape[0]
    t = float(t)
    m = _scaling_steps(B, t)
    Bh = B * (t / 2.0**m)
    term = np.eye(n)
    E = np.eye(n)
    for k in range(1, 60):
        term = term @ Bh / k
        E += term
        if np.abs(term).max() <= _EPS * np.abs(E).max():
            break
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(m):
            E = E @ E
    return _check_finite(E, f"exp(Bt) at t={t}")


def f_b(B, t: float) -> np.ndarray:
    """
    F_B(t) = sum_{k>=1} t^k/k! B^(k-1).

    The argument is halved until ||B t|| <= 1/2, the series is summed there,
    and the result is brought back with F(2h) = F(h) + exp(Bh) F(h).
    """
    B = as_matrix(B)
    n = B.shape[0]
    I = np.eye(n)
    t = float(t)
    m = _scaling_steps(B, t)
    h = t / 2.0**m
    Bh = B * h
    # F(h) = h * sum_{k>=0} (Bh)^k / (k+1)!
    term = I.copy()
    S = I.copy()
    for k in range(1, 60):
        term = term @ Bh / (k + 1)
        S += term
        if np.abs(term).max() <= _EPS * np.abs(S).max():
            break
    F = h * S
    E = I + Bh @ S
    with np.errstate(over="ignore", invalid="ignore"):
        for _ in range(m):
            F = F + E @ F
            E = E @ E
    return _check_finite(F, f"F_B(t) at t={t}")


# --- 2x2 spectrum -----------------------------------------------------------


@dataclass(frozen=True)
class Spectrum2:
    kind: str
    eigenvalues: tuple

    @property
    def is_real(self) -> bool:
        return self.kind != COMPLEX_PAIR


def spectrum2(B) -> Spectrum2:
    """
    Classify a 2x2 matrix by the discriminant tr^2 - 4 det.

    Eigenvalues are treated as coincident when their separation sqrt(|D|)
    is at most tau_eig; the repeated case is defective when B - lambda*I
    is not numerically zero.
    """
    B = as_matrix(B)
    if B.shape != (2, 2):
        raise DimensionError("spectrum2 needs a 2x2 matrix")
    (p, q), (r, s) = B.tolist()
    tr = p + s
    dt = p * s - q * r
    # (p - s)^2 + 4qr is tr^2 - 4det without the cancellation
    D = (p - s) ** 2 + 4.0 * q * r
    tol = tau_eig(B)
    if math.sqrt(abs(D)) <= tol:
        lam = 0.5 * tr
        if np.abs(B - lam * np.eye(2)).max() > tol:
            return Spectrum2(REAL_REPEATED_DEFECTIVE, (lam, lam))
        return Spectrum2(REAL_REPEATED_DIAGONALIZABLE, (lam, lam))
    if D > 0:
        root = math.sqrt(D)
        l1 = 0.5 * (tr + math.copysign(root, tr))
        l2 = dt / l1 if l1 != 0.0 else 0.5 * (tr - math.copysign(root, tr))
        return Spectrum2(REAL_DISTINCT, tuple(sorted((l1, l2))))
    a, b = 0.5 * tr, 0.5 * math.sqrt(-D)
    return Spectrum2(COMPLEX_PAIR, (complex(a, b), complex(a, -b)))


# --- real logarithm ---------------------------------------------------------


def real_log(A) -> np.ndarray:
    """Principal real logarithm: B with exp(B) = A."""
    A = as_matrix(A)
    n = A.shape[0]
    if is_singular(A):
        raise NotInvertible("matrix logarithm of a singular matrix")
    if n == 1:
        if A[0, 0] <= tau_eig(A):
            raise NoRealLog(f"eigenvalue {A[0, 0]:.6g} <= 0")
        return np.array([[math.log(A[0, 0])]])
    if n == 2:
        return _log2(A)
    _check_log_spectrum(A)
    return log_inverse_scaling_squaring(A)


def _log2(A):
    sp = spectrum2(A)
    I = np.eye(2)
    l1, l2 = sp.eigenvalues
    if sp.kind == COMPLEX_PAIR:
        mu, nu = l1.real, l1.imag
        # (A - mu I)^2 = -nu^2 I, so log A = log|z| I + arg(z)/nu (A - mu I)
        return math.log(abs(l1)) * I + (math.atan2(nu, mu) / nu) * (A - mu * I)
    if min(l1, l2) <= tau_eig(A):
        raise NoRealLog(f"real eigenvalue {min(l1, l2):.6g} <= 0")
    if sp.kind == REAL_REPEATED_DIAGONALIZABLE:
        return math.log(l1) * I
    if sp.kind == REAL_REPEATED_DEFECTIVE:
        return math.log(l1) * I + (A - l1 * I) / l1
    # divided difference (log l1 - log l2)/(l1 - l2) in a cancellation-free form
    dd = 2.0 * math.atanh((l1 - l2) / (l1 + l2)) / (l1 - l2)
    return math.log(l2) * I + dd * (A - l2 * I)


def _check_log_spectrum(A):
    tol = tau_eig(A)
    for lam in np.linalg.eigvals(A):
        if abs(lam.imag) <= tol and lam.real <= tol:
            raise NoRealLog(f"real eigenvalue {lam.real:.6g} <= 0")


def sqrtm_denman_beavers(A, maxiter=100):
    A = np.asarray(A, dtype=float)
    Y, Z = A.copy(), np.eye(A.shape[0])
    for _ in range(maxiter):
        Yi, Zi = np.linalg.inv(Y), np.linalg.inv(Z)
        Y_next = 0.5 * (Y + Zi)
        Z = 0.5 * (Z + Yi)
        delta = np.abs(Y_next - Y).max()
        Y = Y_next
        if delta <= 10 * _EPS * np.abs(Y).max():
            break
    return Y


def log_inverse_scaling_squaring(A) -> np.ndarray:
    """
    Logarithm by repeated square roots and a unipotent series.

    After k square roots X = A^(1/2^k) is close to I and
    log X = 2 atanh(Z) with Z = (X - I)(X + I)^-1.
    """
    A = as_matrix(A)
    n = A.shape[0]
    I = np.eye(n)
    X = A
    k = 0
    while np.linalg.norm(X - I, 1) > 0.25:
        X = sqrtm_denman_beavers(X)
        k += 1
        if k > 64:
            raise NoRealLog("square root iteration did not approach the identity")
    Z = np.linalg.solve((X + I).T, (X - I).T).T
    Z2 = Z @ Z
    term = Z.copy()
    L = Z.copy()
    for j in range(1, 60):
        term = term @ Z2
        inc = term / (2 * j + 1)
        L += inc
        if np.abs(inc).max() <= _EPS * max(np.abs(L).max(), _EPS):
            break
    return 2.0 ** (k + 1) * L
