"""Entanglement detection and quantification for bipartite states from the
correlation matrix of their Bloch representation."""

from .bloch import (
    BlochDecomposition,
    GeneratorBasis,
    decompose,
    purity_relations_check,
    reconstruct,
    su_generators,
)
from .criteria import (
    CriterionReport,
    ccnr_report,
    cm_hs_report,
    cm_report,
    cm_threshold,
    full_report,
    ppt_report,
)
from .errors import (
    BlochsepError,
    DimensionError,
    DomainError,
    NumericalError,
    SingularFilterError,
    SingularReductionError,
    ValidationError,
)
from .fnf import FilterResult, apply_filter, filter_normal_form, fnf_invariant_check
from .matrix import (
    DensityMatrix,
    PureState,
    hs_norm,
    inv_sqrt_psd,
    kron,
    partial_trace_a,
    partial_trace_b,
    partial_transpose_a,
    purity,
    realign,
    trace_norm,
)
from .measures import (
    MeasureEstimate,
    concurrence_lower_caf,
    concurrence_lower_cm,
    estimate_all,
    mnb_from_cm,
    mnb_measure,
    pure_concurrence,
    pure_tangle_bloch,
    pure_tangle_cm,
    tangle_lower_hs,
    tangle_upper,
    wootters_concurrence,
)
from .states import (
    gentiles2_state,
    gentiles2_upb,
    max_entangled,
    random_mixed,
    random_pure,
    random_separable,
    read_state,
    white_noise_mix,
    write_state,
)
from .sweep import noise_threshold, sweep_noise

__version__ = "0.1.0"
