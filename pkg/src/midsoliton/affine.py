"""Elements (A, b) of the affine group acting by x -> A x + b."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .kernel import as_matrix, as_vector, inverse, is_singular


@dataclass(frozen=True, eq=False)
class AffineMap:
    A: np.ndarray
    b: np.ndarray

    def __post_init__(self):
        A = as_matrix(self.A)
        b = as_vector(self.b, A.shape[0])
        A.setflags(write=False)
        b.setflags(write=False)
        object.__setattr__(self, "A", A)
        object.__setattr__(self, "b", b)

    @classmethod
    def identity(cls, n: int) -> AffineMap:
        return cls(np.eye(n), np.zeros(n))

    @classmethod
    def translation(cls, b) -> AffineMap:
        b = np.asarray(b, dtype=float)
        return cls(np.eye(b.shape[0]), b)

    @classmethod
    def from_homogeneous(cls, H) -> AffineMap:
        H = np.asarray(H, dtype=float)
        n = H.shape[0] - 1
        return cls(H[:n, :n], H[:n, n])

    @property
    def dim(self) -> int:
        return self.A.shape[0]

    def __call__(self, x):
        """Apply to a point (n,) or to rows of an (m, n) array."""
        x = np.asarray(x, dtype=float)
        return x @ self.A.T + self.b

    def __matmul__(self, other: AffineMap) -> AffineMap:
        """Composition: (self @ other)(x) == self(other(x))."""
        return AffineMap(self.A @ other.A, self.A @ other.b + self.b)

    def inverse(self) -> AffineMap:
        Ai = inverse(self.A)
        return AffineMap(Ai, -Ai @ self.b)

    def homogeneous(self) -> np.ndarray:
        n = self.dim
        H = np.zeros((n + 1, n + 1))
        H[:n, :n] = self.A
        H[:n, n] = self.b
        H[n, n] = 1.0
        return H

    def is_invertible(self) -> bool:
        return not is_singular(self.A)

    def __eq__(self, other):
        if not isinstance(other, AffineMap):
            return NotImplemented
        return np.array_equal(self.A, other.A) and np.array_equal(self.b, other.b)

    def __hash__(self):
        return hash((self.A.tobytes(), self.b.tobytes()))

    def __repr__(self):
        return f"AffineMap(A={self.A.tolist()}, b={self.b.tolist()})"
