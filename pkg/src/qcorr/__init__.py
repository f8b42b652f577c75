"""Correlator-based entanglement witnesses and a d-level bipartite Bell functional.

The package builds the correlator operators whose joint sign pattern certifies
correlation across a bipartition, assembles them into entanglement witnesses
for three reference states (tunable four-qubit GHZ, four-qubit singlet,
four-level tripartite GHZ), and evaluates a two-qudit Bell functional whose
deterministic local bound is 2 at every dimension.
"""

from .core import (
    DensityMatrix,
    EigensolverError,
    HermitianOperator,
    PartyStructure,
    PureState,
    bipartitions,
    combine_bipartite,
    expectation,
    identity,
    kron,
    min_eigenvalue,
    schmidt_max_sq,
    set_tolerances,
    spectral_norm,
)
from .states import GhzParams, ghz4, ghz_4x3, max_entangled_qudit, mix_white_noise, singlet4
from .correlators import (
    CorrelatorFamily,
    CorrelatorPair,
    DERANGEMENTS_4,
    LocalBasis,
    all_ghz4x3_families,
    build_C_ghz4x3,
    build_C_phi,
    build_C_psi,
    ghz4_pair_z,
    ghz4_party_x,
    ghz4_party_z,
    ghz4_x_pairs,
    ghz4_z_pairs,
    ghz4x3_correlators,
    local_projector,
    prop1_test,
    prop2_test,
    random_product_state,
    singlet_correlators,
)
from .witnesses import (
    DominanceCertificate,
    GHZ4_CASES,
    ProjectorWitness,
    SeesawResult,
    Witness,
    WitnessNeverFiresError,
    biseparable_max,
    make_witness,
    noise_tolerance,
    projector_witness,
    verify_dominance,
)
from .bell import (
    BellReport,
    LhvAssignment,
    MeasurementSetting,
    analytic_value,
    bell_report,
    chsh_reduction_check,
    correlator_m,
    joint_prob,
    lhv_max,
    lhv_value,
    noise_threshold,
    projector_witness_threshold,
    quantum_value,
    setting_vector,
)

__version__ = "0.1.0"

__all__ = [
    "BellReport",
    "CorrelatorFamily",
    "CorrelatorPair",
    "DERANGEMENTS_4",
    "DensityMatrix",
    "DominanceCertificate",
    "EigensolverError",
    "GHZ4_CASES",
    "GhzParams",
    "HermitianOperator",
    "LhvAssignment",
    "LocalBasis",
    "MeasurementSetting",
    "PartyStructure",
    "ProjectorWitness",
    "PureState",
    "SeesawResult",
    "Witness",
    "WitnessNeverFiresError",
    "all_ghz4x3_families",
    "analytic_value",
    "bell_report",
    "bipartitions",
    "biseparable_max",
    "build_C_ghz4x3",
    "build_C_phi",
    "build_C_psi",
    "chsh_reduction_check",
    "combine_bipartite",
    "correlator_m",
    "expectation",
    "ghz4",
    "ghz4_pair_z",
    "ghz4_party_x",
    "ghz4_party_z",
    "ghz4_x_pairs",
    "ghz4_z_pairs",
    "ghz4x3_correlators",
    "ghz_4x3",
    "identity",
    "joint_prob",
    "kron",
    "lhv_max",
    "lhv_value",
    "local_projector",
    "make_witness",
    "max_entangled_qudit",
    "min_eigenvalue",
    "mix_white_noise",
    "noise_threshold",
    "noise_tolerance",
    "projector_witness",
    "projector_witness_threshold",
    "prop1_test",
    "prop2_test",
    "quantum_value",
    "random_product_state",
    "schmidt_max_sq",
    "set_tolerances",
    "setting_vector",
    "singlet4",
    "singlet_correlators",
    "spectral_norm",
    "verify_dominance",
]
