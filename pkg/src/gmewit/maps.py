"""Positive maps as superoperator matrices.

A map on d x d operators is stored as a d^2 x d^2 matrix acting on row-major
vectorizations: ``vec(A)[i*d + j] = A[i, j]``, so column ``i*d + j`` holds
``vec(Lambda(|i><j|))``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .hermitian import min_eigenvalue, projector


@dataclass(frozen=True, eq=False)
class Superoperator:
    d: int
    matrix: np.ndarray
    name: str = field(default="map", compare=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.shape != (self.d * self.d, self.d * self.d):
            raise ValueError(f"superoperator for d={self.d} must be {self.d**2}x{self.d**2}, got {m.shape}")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def __call__(self, A) -> np.ndarray:
        A = np.asarray(A, dtype=complex)
        if A.shape != (self.d, self.d):
            raise ValueError(f"{self.name} acts on {self.d}x{self.d} operators, got {A.shape}")
        return (self.matrix @ A.reshape(-1)).reshape(self.d, self.d)

    @classmethod
    def from_function(cls, d: int, f: Callable[[np.ndarray], np.ndarray], name: str = "map") -> "Superoperator":
        """Tabulate a linear map by its action on the matrix units."""
        m = np.empty((d * d, d * d), dtype=complex)
        for i in range(d):
            for j in range(d):
                E = np.zeros((d, d), dtype=complex)
                E[i, j] = 1.0
                m[:, i * d + j] = np.asarray(f(E), dtype=complex).reshape(-1)
        return cls(d, m, name)


def identity_map(d: int) -> Superoperator:
    return Superoperator(d, np.eye(d * d), "identity")


def transpose_map(d: int) -> Superoperator:
    return Superoperator.from_function(d, lambda A: A.T, "transpose")


def reduction_map(d: int) -> Superoperator:
    """Lambda(A) = Tr(A) 1 - A."""
    return Superoperator.from_function(d, lambda A: np.trace(A) * np.eye(d) - A, "reduction")


def generalized_choi(a: float, b: float, c: float) -> Superoperator:
    """Cyclic three-level map with diagonal a*A_ii + b*A_{i+1,i+1} + c*A_{i+2,i+2}.

    Off-diagonal entries are negated. No normalization is applied and the
    parameters are not screened for positivity; use :func:`positivity_probe`.
    """
    if min(a, b, c) < 0:
        raise ValueError(f"generalized Choi parameters must be nonnegative, got {(a, b, c)}")

    def f(A):
        out = -A.copy()
        for i in range(3):
            out[i, i] = a * A[i, i] + b * A[(i + 1) % 3, (i + 1) % 3] + c * A[(i + 2) % 3, (i + 2) % 3]
        return out

    return Superoperator.from_function(3, f, f"gchoi:{a:g},{b:g},{c:g}")


def choi_map() -> Superoperator:
    """Choi's qutrit map, with the overall factor 1/2.

    Diagonal of the image is (A00 + A22, A11 + A00, A22 + A11) / 2 and the
    off-diagonals are -A_ij / 2.
    """
    g = generalized_choi(1.0, 0.0, 1.0)
    return Superoperator(3, 0.5 * g.matrix, "choi3")


def canonical_antisymmetric_unitary(d: int) -> np.ndarray:
    """1_{d/2} tensor [[0, 1], [-1, 0]]."""
    if d < 2 or d % 2:
        raise ValueError(f"an antisymmetric unitary needs even d >= 2, got {d}")
    return np.kron(np.eye(d // 2), np.array([[0.0, 1.0], [-1.0, 0.0]])).astype(complex)


def breuer_hall_map(d: int, U=None) -> Superoperator:
    """Lambda(A) = Tr(A) 1 - A - U A^T U^dagger for antisymmetric unitary U."""
    if d < 2 or d % 2:
        raise ValueError(f"Breuer-Hall map needs even d >= 2, got {d}")
    U = canonical_antisymmetric_unitary(d) if U is None else np.asarray(U, dtype=complex)
    if U.shape != (d, d):
        raise ValueError(f"U must be {d}x{d}, got {U.shape}")
    if not np.allclose(U.conj().T @ U, np.eye(d), atol=1e-12):
        raise ValueError("U is not unitary")
    if not np.allclose(U.T, -U, atol=1e-12):
        raise ValueError("U is not antisymmetric")
    Ud = U.conj().T
    return Superoperator.from_function(d, lambda A: np.trace(A) * np.eye(d) - A - U @ A.T @ Ud, f"breuer-hall:{d}")


def dual(S: Superoperator) -> Superoperator:
    """Hilbert-Schmidt adjoint: Tr[Lambda(A)^dagger B] = Tr[A^dagger Lambda*(B)]."""
    name = S.name[:-1] if S.name.endswith("*") else S.name + "*"
    return Superoperator(S.d, S.matrix.conj().T, name)


def is_hermiticity_preserving(S: Superoperator, samples: int = 20, rng_seed: int = 0, tol: float = 1e-12) -> bool:
    rng = np.random.default_rng(rng_seed)
    for _ in range(samples):
        A = rng.normal(size=(S.d, S.d)) + 1j * rng.normal(size=(S.d, S.d))
        if np.max(np.abs(S(A.conj().T) - S(A).conj().T)) > tol * max(1.0, np.max(np.abs(A))):
            return False
    return True


def random_pure_state(dim: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-random unit vector."""
    z = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return z / np.linalg.norm(z)


def positivity_probe(S: Superoperator, samples: int = 1000, rng_seed: int = 0) -> float:
    """Minimum eigenvalue of Lambda(|phi><phi|) over Haar-random pure states.

    A clearly negative result proves the map is not positive; a nonnegative
    one is only evidence.
    """
    if samples < 1:
        raise ValueError("samples must be >= 1")
    rng = np.random.default_rng(rng_seed)
    worst = np.inf
    for _ in range(samples):
        phi = random_pure_state(S.d, rng)
        worst = min(worst, min_eigenvalue(S(projector(phi))))
    return float(worst)


@dataclass(frozen=True)
class MapSpec:
    """Parsed map specifier, e.g. ``choi3`` or ``gchoi:1,0,1``."""

    kind: str
    params: tuple = ()

    KINDS = ("identity", "transpose", "reduction", "choi3", "gchoi", "breuer-hall")

    @classmethod
    def parse(cls, text: str) -> "MapSpec":
        kind, _, rest = text.strip().partition(":")
        kind = kind.strip().lower()
        if kind not in cls.KINDS:
            raise ValueError(f"unknown map {kind!r}; expected one of {', '.join(cls.KINDS)}")
        args = [a.strip() for a in rest.split(",")] if rest.strip() else []
        try:
            if kind == "gchoi":
                if len(args) != 3:
                    raise ValueError("gchoi takes three parameters a,b,c")
                params = tuple(float(a) for a in args)
            elif kind == "breuer-hall":
                if len(args) != 1:
                    raise ValueError("breuer-hall takes the dimension d")
                params = (int(args[0]),)
            elif kind in ("identity", "transpose", "reduction"):
                if len(args) > 1:
                    raise ValueError(f"{kind} takes at most the dimension d")
                params = (int(args[0]),) if args else ()
            else:
                if args:
                    raise ValueError("choi3 takes no parameters")
                params = ()
        except ValueError as exc:
            raise ValueError(f"bad map specifier {text!r}: {exc}") from None
        return cls(kind, params)

    def build(self, d: int | None = None) -> Superoperator:
        """Construct the superoperator; ``d`` fills in an omitted dimension."""
        if self.kind == "choi3":
            return choi_map()
        if self.kind == "gchoi":
            return generalized_choi(*self.params)
        if self.kind == "breuer-hall":
            return breuer_hall_map(self.params[0])
        dim = self.params[0] if self.params else d
        if dim is None:
            raise ValueError(f"map {self.kind!r} needs a dimension")
        return {"identity": identity_map, "transpose": transpose_map, "reduction": reduction_map}[self.kind](dim)

    @property
    def dim(self) -> int | None:
        if self.kind in ("choi3", "gchoi"):
            return 3
        return self.params[0] if self.params else None
