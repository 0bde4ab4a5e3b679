"""Witnesses for genuine multipartite entanglement derived from positive maps."""

from .hermitian import (
    EigenDecomposition,
    HermiticityError,
    InvalidStateError,
    herm_eig,
    kron,
    min_eigenvalue,
    positive_part,
    trace_product,
)
from .maps import (
    MapSpec,
    Superoperator,
    breuer_hall_map,
    choi_map,
    dual,
    generalized_choi,
    identity_map,
    positivity_probe,
    reduction_map,
    transpose_map,
)
from .multipartite import (
    Bipartition,
    SpaceShape,
    apply_map_partial,
    enumerate_bipartitions,
    partial_transpose,
    permute_parties,
)
from .states import (
    add_white_noise,
    e_operator,
    flipped_ghz,
    ghz,
    random_biseparable,
    rho_lambda,
    two_param_family,
)
from .witness import (
    Verdict,
    WitnessConstruction,
    WitnessSeed,
    bipartite_witness_from_map,
    build_witness,
    combine_overlapping_witnesses,
    evaluate,
    overlap_matrices,
    seed_image,
)

__version__ = "0.1.0"
