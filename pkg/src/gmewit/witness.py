"""Witnesses for genuine multipartite entanglement built from positive maps.

Given one seed state |psi_b> and one positive map per bipartition b, each seed
image M_b = (Lambda_b* (x) 1)[|psi_b><psi_b|] is a bipartite witness for b.
The entries the images agree on in sign are pooled into a common part
Q = N + P, and the remainders are truncated to their positive parts
tau_b = [M_b - Q]_+. Then W = Q + sum_b tau_b is nonnegative on every
biseparable state.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .hermitian import (
    check_hermitian,
    check_state,
    herm_eig,
    min_eigenvalue,
    positive_part,
    projector,
    trace_product,
)
from .maps import Superoperator, dual
from .multipartite import Bipartition, SpaceShape, apply_map_partial, as_shape, enumerate_bipartitions

DETECTION_TOL = 1e-10
PSD_TOL = 1e-10


class Verdict(str, enum.Enum):
    GME_DETECTED = "GME-DETECTED"
    UNDETECTED = "UNDETECTED"

    def __str__(self):
        return self.value


@dataclass(frozen=True, eq=False)
class WitnessSeed:
    bipartition: Bipartition
    psi: np.ndarray
    map: Superoperator
    map_side: str = "inside"

    def __post_init__(self):
        psi = np.asarray(self.psi, dtype=complex).ravel()
        if abs(np.linalg.norm(psi) - 1.0) > 1e-12:
            raise ValueError(f"seed state must be normalized, |psi| = {np.linalg.norm(psi)!r}")
        self.bipartition.side(self.map_side)
        object.__setattr__(self, "psi", psi)

    @property
    def parties(self) -> tuple[int, ...]:
        return self.bipartition.side(self.map_side)


@dataclass
class WitnessConstruction:
    seeds: list[WitnessSeed]
    M: list[np.ndarray]
    P: np.ndarray
    N: np.ndarray
    Q: np.ndarray
    tau: list[np.ndarray]
    W: np.ndarray
    shape: SpaceShape = field(default=None)


def seed_image(seed: WitnessSeed, shape) -> np.ndarray:
    """(Lambda* on the seed's map side (x) identity)[|psi><psi|]."""
    shape = as_shape(shape)
    if seed.psi.size != shape.total_dim:
        raise ValueError(f"seed of length {seed.psi.size} does not fit shape {shape.dims}")
    M = apply_map_partial(dual(seed.map), projector(seed.psi), shape, seed.parties)
    return check_hermitian(M)


def overlap_matrices(M: Sequence[np.ndarray]) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Entrywise sign-agreement of the real parts of the seed images.

    P keeps entries positive in every image (their minimum), N entries
    negative in every image (their maximum). Returns ``(P, N, Q = N + P)``.
    """
    if not M:
        raise ValueError("need at least one seed image")
    shapes = {np.shape(m) for m in M}
    if len(shapes) != 1:
        raise ValueError(f"seed images have mismatched shapes {sorted(shapes)}")
    re = np.stack([np.asarray(m).real for m in M])
    P = np.maximum(0.0, re.min(axis=0))
    N = np.minimum(0.0, re.max(axis=0))
    return P, N, N + P


def build_witness(seeds: Sequence[WitnessSeed], shape) -> WitnessConstruction:
    shape = as_shape(shape)
    if not seeds:
        raise ValueError("need at least one seed")
    M = [seed_image(s, shape) for s in seeds]
    P, N, Q = overlap_matrices(M)
    tau = [positive_part(m - Q) for m in M]
    W = Q + sum(tau)
    return WitnessConstruction(list(seeds), M, P, N, Q, tau, W, shape)


def evaluate(W, rho, tol: float = DETECTION_TOL, validate: bool = True) -> tuple[float, Verdict]:
    """Witness expectation Re Tr[rho W] and the resulting verdict.

    With ``validate`` the state is checked for unit trace and positivity
    first (raises :class:`~gmewit.hermitian.InvalidStateError`).
    """
    if validate:
        rho = check_state(rho)
    value = trace_product(rho, W).real
    return value, (Verdict.GME_DETECTED if value < -tol else Verdict.UNDETECTED)


def bipartite_witness_from_map(S: Superoperator, sigma, shape, cut: Bipartition, map_side: str = "inside",
                               tol: float = DETECTION_TOL):
    """Bipartite witness (Lambda* (x) 1)[|n><n|] from the most negative eigenvector.

    Returns ``None`` when (Lambda (x) 1)[sigma] has no eigenvalue below ``-tol``.
    """
    shape = as_shape(shape)
    parties = cut.side(map_side)
    image = apply_map_partial(S, sigma, shape, parties)
    values, vectors = herm_eig(image)
    if values[0] >= -tol:
        return None
    n = vectors[:, 0]
    return check_hermitian(apply_map_partial(dual(S), projector(n), shape, parties))


def combine_overlapping_witnesses(Q, M: Sequence[np.ndarray]) -> np.ndarray:
    """Q + sum_b M_b for PSD remainders M_b."""
    Q = check_hermitian(Q)
    W = Q.copy()
    for k, m in enumerate(M):
        m = check_hermitian(m)
        lo = min_eigenvalue(m)
        if lo < -PSD_TOL:
            raise ValueError(f"remainder {k} is not positive semidefinite (min eigenvalue {lo:.3e})")
        W = W + m
    return W


def single_party_seeds(shape, psi_for_party, map_for_party) -> list[WitnessSeed]:
    """One seed per bipartition that isolates a single party.

    The map acts on the isolated party. ``psi_for_party(k)`` and
    ``map_for_party(k)`` supply the seed state and map for the cut that
    singles out party ``k``.
    """
    shape = as_shape(shape)
    seeds = []
    for cut in enumerate_bipartitions(shape):
        if len(cut.inside) == 1:
            side, k = "inside", cut.inside[0]
        elif len(cut.outside) == 1:
            side, k = "outside", cut.outside[0]
        else:
            continue
        seeds.append(WitnessSeed(cut, psi_for_party(k), map_for_party(k), side))
    return seeds
