"""Tensor-factor bookkeeping for multipartite operators.

Flat indices are big-endian: party 0 is the most significant digit, so
``|x0 x1 x2>`` sits at ``x0*d1*d2 + x1*d2 + x2``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod
from typing import Iterable, Sequence

import numpy as np

from .hermitian import as_square


@dataclass(frozen=True)
class SpaceShape:
    dims: tuple[int, ...]

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if not dims:
            raise ValueError("a space needs at least one party")
        if any(d < 2 for d in dims):
            raise ValueError(f"local dimensions must be >= 2, got {dims}")
        object.__setattr__(self, "dims", dims)

    @property
    def n(self) -> int:
        return len(self.dims)

    @property
    def total_dim(self) -> int:
        return prod(self.dims)

    def to_multi(self, index: int) -> tuple[int, ...]:
        if not 0 <= index < self.total_dim:
            raise IndexError(index)
        return tuple(int(k) for k in np.unravel_index(index, self.dims))

    def to_flat(self, multi: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(multi), self.dims))

    def subdim(self, parties: Iterable[int]) -> int:
        return prod(self.dims[k] for k in parties)

    def check_operator(self, A) -> np.ndarray:
        A = as_square(A)
        if A.shape[0] != self.total_dim:
            raise ValueError(f"operator of dim {A.shape[0]} does not match shape {self.dims} (dim {self.total_dim})")
        return A


def as_shape(shape) -> SpaceShape:
    return shape if isinstance(shape, SpaceShape) else SpaceShape(tuple(shape))


@dataclass(frozen=True)
class Bipartition:
    """A split of the parties into ``inside`` (always holding party 0) and ``outside``."""

    inside: tuple[int, ...]
    outside: tuple[int, ...]

    @classmethod
    def from_subset(cls, subset: Iterable[int], n: int) -> "Bipartition":
        s = set(int(k) for k in subset)
        if not s or len(s) >= n or not s <= set(range(n)):
            raise ValueError(f"{sorted(s)} is not a nonempty proper subset of {n} parties")
        if 0 not in s:
            s = set(range(n)) - s
        return cls(tuple(sorted(s)), tuple(sorted(set(range(n)) - s)))

    @property
    def mask(self) -> int:
        return sum(1 << k for k in self.inside)

    def side(self, which: str) -> tuple[int, ...]:
        if which == "inside":
            return self.inside
        if which == "outside":
            return self.outside
        raise ValueError(f"map side must be 'inside' or 'outside', got {which!r}")

    def __str__(self):
        return "{%s}|{%s}" % (",".join(map(str, self.inside)), ",".join(map(str, self.outside)))


def enumerate_bipartitions(shape) -> list[Bipartition]:
    """All 2**(n-1) - 1 bipartitions, ordered by the bitmask of ``inside``."""
    shape = as_shape(shape)
    n = shape.n
    if n < 2:
        raise ValueError("bipartitions need at least two parties")
    cuts = []
    for mask in range(1, 1 << n):
        if mask & 1 and mask != (1 << n) - 1:
            cuts.append(Bipartition.from_subset([k for k in range(n) if mask >> k & 1], n))
    return cuts


def _check_subset(subset, n: int) -> tuple[int, ...]:
    sub = tuple(sorted(set(int(k) for k in subset)))
    if any(k < 0 or k >= n for k in sub):
        raise ValueError(f"party subset {sub} out of range for {n} parties")
    return sub


def permute_parties(rho, shape, permutation: Sequence[int]) -> np.ndarray:
    """Reorder tensor factors: new party ``k`` is old party ``permutation[k]``."""
    shape = as_shape(shape)
    rho = shape.check_operator(rho)
    perm = [int(k) for k in permutation]
    if sorted(perm) != list(range(shape.n)):
        raise ValueError(f"{permutation} is not a permutation of 0..{shape.n - 1}")
    n = shape.n
    t = rho.reshape(shape.dims + shape.dims)
    t = t.transpose(perm + [n + k for k in perm])
    return t.reshape(rho.shape)


def partial_transpose(rho, shape, subset: Iterable[int]) -> np.ndarray:
    """Transpose the row/column indices of the parties in ``subset``."""
    shape = as_shape(shape)
    rho = shape.check_operator(rho)
    n = shape.n
    sub = _check_subset(subset, n)
    axes = list(range(2 * n))
    for k in sub:
        axes[k], axes[n + k] = n + k, k
    return rho.reshape(shape.dims + shape.dims).transpose(axes).reshape(rho.shape)


def apply_map_partial(S, rho, shape, subset: Iterable[int]) -> np.ndarray:
    """(Lambda on ``subset``) tensor identity on the rest, applied to ``rho``."""
    shape = as_shape(shape)
    rho = shape.check_operator(rho)
    n = shape.n
    sub = _check_subset(subset, n)
    db = shape.subdim(sub)
    if S.d != db:
        raise ValueError(f"map acts on dimension {S.d} but parties {sub} have dimension {db}")
    rest = [k for k in range(n) if k not in sub]
    perm = list(sub) + rest
    dc = shape.subdim(rest)
    moved = permute_parties(rho, shape, perm)
    # blocks X[:, c, :, c'] are d_b x d_b; vectorize each row-major
    blocks = moved.reshape(db, dc, db, dc).transpose(0, 2, 1, 3).reshape(db * db, dc * dc)
    out = (S.matrix @ blocks).reshape(db, db, dc, dc).transpose(0, 2, 1, 3).reshape(rho.shape)
    inverse = list(np.argsort(perm))
    return permute_parties(out, SpaceShape(tuple(shape.dims[k] for k in perm)), inverse)
