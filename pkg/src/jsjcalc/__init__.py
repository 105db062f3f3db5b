"""Decomposition calculus for symplectic fillings of tight lens spaces,
Seifert fibered spaces over S^2, Legendrian negative cables, and circle
bundles over surfaces, carried out on stabilization sign patterns of
surgery diagrams."""

from .arith import (
    DomainError,
    IDENTITY,
    INFINITY,
    Rational,
    Slope,
    UnimodularMap,
    apply_map,
    eval_cont_frac,
    increment_last,
    neg_cont_frac,
    neg_cont_frac_of,
    rational,
)
from .bundles import BundleInput, BundleReport, bundle_classify
from .cables import (
    CableInput,
    CableReport,
    CableSlopeEvidence,
    cable_knot_type,
    cable_report,
    cable_slope_check,
)
from .chains import (
    AdjacentPair,
    BothSignsKnot,
    ContactClass,
    KnotNode,
    MixedLocus,
    StabilizedChain,
    classify,
    count_tight,
    find_mixed_locus,
    fossati_count,
    h1_order,
    linking_matrix,
    make_lens,
    split_at,
)
from .documents import (
    InputError,
    StructureDocument,
    emit_tree,
    parse_chain_spec,
    parse_structure,
    serialize,
)
from .seifert import (
    CensusResult,
    Mixedness,
    SeifertNegE0,
    SeifertPosE0,
    amputate_leg,
    b_coefficients,
    build_seifert_tree,
    classify_mixedness,
    clean_leg_vs_center,
    count_choices_neg,
    count_tight_small,
    decompose_centrally,
    decompose_lightly,
    decompose_thoroughly,
    euler_number,
    is_universally_tight_small,
    is_virtually_overtwisted_small,
    lightly_mixed_pairs,
    make_seifert_neg,
    make_seifert_pos,
    merge_chains,
    normalize_lens,
    star_linking_matrix,
    ut_census_small,
)
from .slopes import (
    InternalCheckError,
    MixedTorusData,
    SlopeTriple,
    SplittingData,
    basic_slice_slopes,
    splitting_data,
)
from .trees import (
    ContactAssembly,
    DecompositionTree,
    S1xS2,
    build_tree,
    children,
    leaf_filling_count,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
