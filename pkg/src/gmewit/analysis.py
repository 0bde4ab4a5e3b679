"""Analysis drivers: PPT and map checks, lambda scans, white-noise robustness
and the two-map detection-region scan over the (p, q) family."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np
from scipy.optimize import bisect

from .hermitian import check_state, min_eigenvalue, trace_product
from .maps import MapSpec, Superoperator, choi_map, transpose_map
from .multipartite import Bipartition, apply_map_partial, as_shape, enumerate_bipartitions, partial_transpose
from .states import add_white_noise, basis_ket, ghz, rho_lambda, two_param_family
from .witness import DETECTION_TOL, Verdict, build_witness, evaluate, single_party_seeds

# ---------------------------------------------------------------------------
# reference witnesses


def example1_seed(party: int, n: int = 3, d: int = 2) -> np.ndarray:
    """(|1..0..1> - |0..1..0>)/sqrt(2) with the odd level on ``party``.

    For d > 2 the qubit seed is embedded in levels {0, 1}.
    """
    a = [1] * n
    a[party] = 0
    b = [0] * n
    b[party] = 1
    return (basis_ket(a, d) - basis_ket(b, d)) / np.sqrt(2)


def example1_witness(d: int = 2):
    """Transpose-map construction with the Example-1 seeds on (d, d, d)."""
    shape = (d, d, d)
    seeds = single_party_seeds(shape, lambda k: example1_seed(k, 3, d), lambda k: transpose_map(d))
    return build_witness(seeds, shape)


def ghz_seed_witness(S: Superoperator, n: int = 3, d: int = 3):
    """Map-derived witness with |psi_b> = |GHZ> on every single-party cut."""
    shape = (d,) * n
    g = ghz(n, d)
    return build_witness(single_party_seeds(shape, lambda k: g, lambda k: S), shape)


def choi_witness():
    return ghz_seed_witness(choi_map())


def ppt_qutrit_witness():
    """PPT-derived comparison witness for the qutrit region scan."""
    return example1_witness(3)


# ---------------------------------------------------------------------------
# bipartite checks


def ppt_check(rho, shape) -> list[tuple[Bipartition, float]]:
    """Min eigenvalue of the partial transpose across every bipartition."""
    shape = as_shape(shape)
    rho = check_state(shape.check_operator(rho))
    return [(cut, min_eigenvalue(partial_transpose(rho, shape, cut.inside))) for cut in enumerate_bipartitions(shape)]


def _map_side(cut: Bipartition, shape, d: int | None) -> tuple[int, ...]:
    sides = sorted((cut.inside, cut.outside), key=len)
    if d is None:
        return sides[0]
    for side in sides:
        if shape.subdim(side) == d:
            return side
    raise ValueError(f"map of dimension {d} fits neither side of {cut} for shape {shape.dims}")


def map_check(rho, shape, map_spec) -> list[tuple[Bipartition, float]]:
    """Min eigenvalue of (Lambda (x) 1)[rho] for every bipartition.

    The map acts on the smaller side of each cut when its dimension fits,
    otherwise on whichever side matches.
    """
    shape = as_shape(shape)
    rho = check_state(shape.check_operator(rho))
    spec = MapSpec.parse(map_spec) if isinstance(map_spec, str) else map_spec
    rows = []
    for cut in enumerate_bipartitions(shape):
        if isinstance(spec, Superoperator):
            S = spec
            side = _map_side(cut, shape, S.d)
        else:
            side = _map_side(cut, shape, spec.dim)
            S = spec.build(shape.subdim(side))
        rows.append((cut, min_eigenvalue(apply_map_partial(S, rho, shape, side))))
    return rows


# ---------------------------------------------------------------------------
# lambda scan


@dataclass(frozen=True)
class LambdaScanRow:
    lam: float
    value: float
    verdict: Verdict


def witness_for_map(map_spec) -> np.ndarray:
    spec = MapSpec.parse(map_spec) if isinstance(map_spec, str) else map_spec
    return ghz_seed_witness(spec.build(3)).W


def lambda_scan(lambda_grid: Iterable[float], map_spec="choi3", tol: float = DETECTION_TOL) -> list[LambdaScanRow]:
    """Witness value on rho(lambda) across a grid, GHZ_3 seeds on every cut."""
    W = witness_for_map(map_spec)
    rows = []
    for lam in lambda_grid:
        if lam <= 0:
            raise ValueError(f"lambda must be positive, got {lam}")
        value, verdict = evaluate(W, rho_lambda(lam), tol, validate=False)
        rows.append(LambdaScanRow(float(lam), value, verdict))
    return rows


def lambda_threshold(W=None, lo: float = 0.2, hi: float = 0.5, xtol: float = 1e-12) -> float:
    """Bisect for the lambda where Tr[rho(lambda) W] changes sign."""
    W = choi_witness().W if W is None else W
    return bisect(lambda lam: trace_product(rho_lambda(lam), W).real, lo, hi, xtol=xtol)


# ---------------------------------------------------------------------------
# white-noise robustness


class NotDetectedError(ValueError):
    """The noiseless state is not detected, so no critical noise exists."""


@dataclass(frozen=True)
class RobustnessResult:
    lam: float | None
    p_crit: float
    p_crit_bisection: float
    witness_value_at_zero: float
    witness_trace: float
    dim: int


def critical_noise(rho, W, tol: float = DETECTION_TOL, lam: float | None = None) -> RobustnessResult:
    """Largest white-noise weight p at which Tr[rho_p W] is still nonpositive.

    The witness value is affine in p, so the root is solved in closed form
    and cross-checked by bisection on directly mixed states.
    """
    rho = np.asarray(rho, dtype=complex)
    dim = rho.shape[0]
    v0 = trace_product(rho, W).real
    tw = float(np.trace(W).real)
    if v0 >= -tol:
        raise NotDetectedError(f"state not detected without noise (witness value {v0:.6g})")
    v1 = tw / dim
    if v1 <= 0:
        raise ValueError(f"witness is nonpositive on the maximally mixed state (value {v1:.6g})")
    p_affine = v0 / (v0 - v1)
    p_bisect = bisect(lambda p: trace_product(add_white_noise(rho, p), W).real, 0.0, 1.0, xtol=1e-15, maxiter=200)
    return RobustnessResult(lam, p_affine, p_bisect, v0, tw, dim)


def noise_robustness(lam: float, W=None, tol: float = DETECTION_TOL) -> RobustnessResult:
    """Critical white noise for rho(lambda); defaults to the Choi witness."""
    W = choi_witness().W if W is None else W
    return critical_noise(rho_lambda(lam), W, tol, lam)


# ---------------------------------------------------------------------------
# region scan


class RegionVerdict(str, enum.Enum):
    NONE = "NONE"
    PPT = "PPT"
    CHOI = "CHOI"
    BOTH = "BOTH"
    SKIPPED = "SKIPPED"

    def __str__(self):
        return self.value


@dataclass(frozen=True)
class RegionScanRow:
    p: float
    q: float
    value_ppt: float
    value_choi: float
    verdict: RegionVerdict

    @property
    def ppt_detects(self) -> bool:
        return self.verdict in (RegionVerdict.PPT, RegionVerdict.BOTH)

    @property
    def choi_detects(self) -> bool:
        return self.verdict in (RegionVerdict.CHOI, RegionVerdict.BOTH)


def region_verdict(value_ppt: float, value_choi: float, tol: float = DETECTION_TOL) -> RegionVerdict:
    ppt, choi = value_ppt < -tol, value_choi < -tol
    if ppt and choi:
        return RegionVerdict.BOTH
    if ppt:
        return RegionVerdict.PPT
    if choi:
        return RegionVerdict.CHOI
    return RegionVerdict.NONE


def region_scan(p_grid: Sequence[float], q_grid: Sequence[float], W_ppt=None, W_choi=None,
                tol: float = DETECTION_TOL, include_skipped: bool = False) -> list[RegionScanRow]:
    """Evaluate both witnesses over the (p, q) family.

    Rows are ordered by p index, then q index. Points outside the simplex
    p + q <= 1 are dropped, or kept as SKIPPED rows with NaN values.
    """
    W_ppt = ppt_qutrit_witness().W if W_ppt is None else W_ppt
    W_choi = choi_witness().W if W_choi is None else W_choi
    rows = []
    for p in p_grid:
        for q in q_grid:
            p, q = float(p), float(q)
            if p < 0 or q < 0 or p + q > 1.0 + 1e-12:
                if include_skipped:
                    rows.append(RegionScanRow(p, q, float("nan"), float("nan"), RegionVerdict.SKIPPED))
                continue
            rho = two_param_family(p, q)
            vp = trace_product(rho, W_ppt).real
            vc = trace_product(rho, W_choi).real
            rows.append(RegionScanRow(p, q, vp, vc, region_verdict(vp, vc, tol)))
    return rows


def scan_grid(steps: int) -> np.ndarray:
    if steps < 2:
        raise ValueError("a grid needs at least two steps")
    return np.linspace(0.0, 1.0, steps)

