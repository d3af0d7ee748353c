"""Hybrid near/far-field channel modeling and block-sparse channel estimation
for extremely large antenna arrays."""

from .geometry import (
    SPEED_OF_LIGHT,
    ArrayConfig,
    ChannelSpec,
    PathParams,
    b_vector,
    effective_distance,
    effective_rayleigh,
    element_distance,
    far_steering,
    field_boundaries,
    near_steering,
    sample_channel,
    synthesize_channel,
)
from .dictionaries import (
    Dictionary,
    SparseRep,
    analyze,
    build_dft,
    build_dmu,
    build_polar_baseline,
    coherence_limited_rings,
    dft_grid,
    export_dictionary,
    load_dictionary_matrix,
    mutual_coherence,
)
from .coherence import (
    CoherenceParams,
    SparsityBoundReport,
    coherence_approx,
    coherence_exact,
    empirical_sparsity,
    fresnel,
    fresnel_increment_bound_check,
    params_from_geometry,
    predicted_support,
    sparsity_bound,
    thresholds,
)
from .recovery import (
    BlockOMP,
    BlockPartition,
    RecoveryResult,
    SensingProblem,
    block_omp,
    gen_pilots,
    ls_estimate,
    make_problem,
    nmse,
    noise_variance,
    omp,
)
from .block_rip import (
    GaussianityReport,
    RipProbeReport,
    empirical_rip_probe,
    gaussianity_probe,
    sample_complexity,
    varrho_bound,
)
from .harness import (
    ExperimentConfig,
    ResultRow,
    config_hash,
    emit,
    parse_rows,
    preset_config,
    run,
)

__version__ = "0.1.0"
