"""State families: GHZ, the flipped-GHZ bound entangled family, noisy mixtures
and random biseparable states."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Sequence

import numpy as np

from .hermitian import projector
from .maps import random_pure_state
from .multipartite import Bipartition, SpaceShape, as_shape, permute_parties

QUTRITS = SpaceShape((3, 3, 3))

# Level pairs (x, y) of the flip terms; |x>^n carries sqrt(lambda).
FLIP_PAIRS = ((1, 0), (2, 1), (0, 2))


def basis_ket(levels: Sequence[int], d: int) -> np.ndarray:
    n = len(levels)
    v = np.zeros(d**n, dtype=complex)
    v[int(np.ravel_multi_index(tuple(levels), (d,) * n))] = 1.0
    return v


def ghz(n: int = 3, d: int = 2) -> np.ndarray:
    """(1/sqrt(d)) sum_x |x>^n."""
    if n < 2 or d < 2:
        raise ValueError(f"GHZ state needs n >= 2 and d >= 2, got n={n}, d={d}")
    return sum(basis_ket([x] * n, d) for x in range(d)) / np.sqrt(d)


def flipped_ghz(alpha, x: int, y: int, lam: float, n: int = 3, d: int = 3) -> np.ndarray:
    """Unnormalized sqrt(lam)|x>^n + sqrt(1/lam)|y>^n with x<->y flipped on parties in ``alpha``.

    The squared norm is ``lam + 1/lam``.
    """
    alpha = set(int(k) for k in alpha)
    if not alpha or not alpha <= set(range(n)):
        raise ValueError(f"flip set {sorted(alpha)} must be a nonempty subset of range({n})")
    if x == y or not (0 <= x < d and 0 <= y < d):
        raise ValueError(f"levels must be distinct and below {d}, got x={x}, y={y}")
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    a = [y if k in alpha else x for k in range(n)]
    b = [x if k in alpha else y for k in range(n)]
    return np.sqrt(lam) * basis_ket(a, d) + np.sqrt(1.0 / lam) * basis_ket(b, d)


def _flip_weight(lam, party: int, pair: tuple[int, int]) -> float:
    if isinstance(lam, Mapping):
        return float(lam[(party, pair)])
    return float(lam)


def e_operator(lam) -> np.ndarray:
    """3|GHZ_3><GHZ_3| plus the nine unnormalized flip projectors.

    ``lam`` is a common positive weight, or a mapping
    ``{(party, (x, y)): weight}`` covering every flip term.
    """
    g = ghz(3, 3)
    E = 3.0 * projector(g)
    for party in range(3):
        for pair in FLIP_PAIRS:
            w = _flip_weight(lam, party, pair)
            if w <= 0:
                raise ValueError(f"lambda must be positive, got {w}")
            E += projector(flipped_ghz({party}, pair[0], pair[1], w, 3, 3))
    return E


def rho_lambda(lam) -> np.ndarray:
    E = e_operator(lam)
    return E / np.trace(E).real


def maximally_mixed(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex) / dim


def add_white_noise(rho, p: float) -> np.ndarray:
    """p * 1/dim + (1 - p) * rho."""
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"noise weight must lie in [0, 1], got {p}")
    rho = np.asarray(rho, dtype=complex)
    return p * maximally_mixed(rho.shape[0]) + (1.0 - p) * rho


def two_param_family(p: float, q: float, lam: float = 1.0 / 9.0, slack: float = 1e-12) -> np.ndarray:
    """p |GHZ_3><GHZ_3| + q rho(lam) + (1 - p - q) 1/27."""
    if p < 0 or q < 0 or p + q > 1.0 + slack:
        raise ValueError(f"(p, q) = ({p}, {q}) lies outside the simplex p, q >= 0, p + q <= 1")
    rest = max(0.0, 1.0 - p - q)
    return p * projector(ghz(3, 3)) + q * rho_lambda(lam) + rest * maximally_mixed(27)


@dataclass
class BiseparableSample:
    partition_weights: np.ndarray
    term_weights: list[np.ndarray]
    terms: list[list[tuple[np.ndarray, np.ndarray]]]
    rho: np.ndarray


def product_vector(shape: SpaceShape, cut: Bipartition, phi: np.ndarray, phi_bar: np.ndarray) -> np.ndarray:
    """|phi>_inside (x) |phi'>_outside, reordered into the natural party order."""
    v = np.kron(phi, phi_bar)
    order = list(cut.inside) + list(cut.outside)
    moved = SpaceShape(tuple(shape.dims[k] for k in order))
    return np.asarray(v).reshape(moved.dims).transpose(np.argsort(order)).reshape(-1)


def random_biseparable(shape, partitions: Sequence[Bipartition], terms_per_partition: int | Sequence[int] = 1,
                       rng_seed=None) -> BiseparableSample:
    """Mixture of Haar-random product pure states, one group per bipartition.

    Partition weights and per-partition term weights are flat-Dirichlet.
    ``rng_seed`` may be an int or a ``numpy.random.Generator``.
    """
    shape = as_shape(shape)
    if not partitions:
        raise ValueError("at least one bipartition is required")
    rng = rng_seed if isinstance(rng_seed, np.random.Generator) else np.random.default_rng(rng_seed)
    if isinstance(terms_per_partition, int):
        counts = [terms_per_partition] * len(partitions)
    else:
        counts = list(terms_per_partition)
    if len(counts) != len(partitions) or min(counts) < 1:
        raise ValueError("need a positive term count for every bipartition")
    pb = rng.dirichlet(np.ones(len(partitions)))
    rho = np.zeros((shape.total_dim,) * 2, dtype=complex)
    weights, terms = [], []
    for p, cut, k in zip(pb, partitions, counts):
        q = rng.dirichlet(np.ones(k))
        group = []
        for qi in q:
            phi = random_pure_state(shape.subdim(cut.inside), rng)
            phi_bar = random_pure_state(shape.subdim(cut.outside), rng)
            rho += p * qi * projector(product_vector(shape, cut, phi, phi_bar))
            group.append((phi, phi_bar))
        weights.append(q)
        terms.append(group)
    rho = 0.5 * (rho + rho.conj().T)
    return BiseparableSample(pb, weights, terms, rho)


def random_density_matrix(dim: int, rng: np.random.Generator, rank: int | None = None) -> np.ndarray:
    """Ginibre-induced random state of the given rank (full rank by default)."""
    k = dim if rank is None else rank
    X = rng.normal(size=(dim, k)) + 1j * rng.normal(size=(dim, k))
    rho = X @ X.conj().T
    return rho / np.trace(rho).real


def cyclic_relabel(rho, shape=QUTRITS) -> np.ndarray:
    shape = as_shape(shape)
    n = shape.n
    return permute_parties(rho, shape, [(k + 1) % n for k in range(n)])
