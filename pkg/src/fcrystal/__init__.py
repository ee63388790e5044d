"""Exact arithmetic for Frobenius modules on the punctured formal disk.

Builds unit F-crystals from representations of cyclic covering groups,
computes canonical level filtrations, checks the defining axioms, and
moves objects back and forth through the associated functors (fixed
points, nearby and vanishing parts, gluing data).

Everything is computed over explicit finite fields with no floating
point anywhere, so every reported number is exact and every check is
a genuine proof for the finite window it ran on.
"""

__version__ = "0.1.0"

from .crystal import (
    CyclicRep,
    DeltaElement,
    ExtensionModule,
    KummerCrystal,
    SolutionReport,
    WeightDecomposition,
    build_extension,
    build_kummer_crystal,
    direct_sum,
    galois_orbit_check,
    sol_extension,
    weight_decompose,
)
from .errors import (
    BoundExceededError,
    CapExceededError,
    FCrystalError,
    InvalidInputError,
    WindowError,
)
from .field import (
    DEFAULT_SATURATION_CAP,
    Embedding,
    FieldCtx,
    SaturationResult,
    SemilinearOperator,
    embed_field,
    make_field,
    mu_log,
    primitive_root_of_unity,
    saturate_fixed_points,
    semilinear_fixed_points,
)
from .functors import (
    CGObject,
    GluingTriple,
    GResult,
    UnipotentNearby,
    VanishingReport,
    fg_roundtrip,
    flatten_object,
    functor_F,
    functor_G,
    gf_roundtrip,
    gluing_data,
    naturality_check,
    naturality_check_F,
    naturality_check_G,
    nearby_full,
    nearby_unipotent,
    recover_rep,
    rep_isomorphic,
    sol_crystal,
    vanishing,
    weight_dims_full,
)
from .series import LaurentSeries, level_json, parse_series
from .vfilt import (
    AxiomReport,
    DeltaVFilt,
    DepthGradingVFilt,
    ExtensionVFilt,
    FiltrationSpec,
    GradedReport,
    KummerVFilt,
    PullbackVFilt,
    ShiftedVFilt,
    SplitVFilt,
    check_axioms,
    check_specializing,
    check_super,
    compare,
    delta_vfilt,
    graded,
    graded_frobenius_map,
    graded_t_map,
    mc_depth_grading,
    mc_vfilt,
    pullback_filtration,
    shifted_exactness,
    shifted_filtration,
    split_vfilt,
    standard_vfilt,
)

__all__ = [
    "__version__",
    "AxiomReport",
    "BoundExceededError",
    "CapExceededError",
    "CGObject",
    "CyclicRep",
    "DEFAULT_SATURATION_CAP",
    "DeltaElement",
    "DeltaVFilt",
    "DepthGradingVFilt",
    "Embedding",
    "ExtensionModule",
    "ExtensionVFilt",
    "FCrystalError",
    "FieldCtx",
    "FiltrationSpec",
    "GluingTriple",
    "GradedReport",
    "GResult",
    "InvalidInputError",
    "KummerCrystal",
    "KummerVFilt",
    "LaurentSeries",
    "PullbackVFilt",
    "SaturationResult",
    "SemilinearOperator",
    "ShiftedVFilt",
    "SolutionReport",
    "SplitVFilt",
    "UnipotentNearby",
    "VanishingReport",
    "WeightDecomposition",
    "WindowError",
    "build_extension",
    "build_kummer_crystal",
    "check_axioms",
    "check_specializing",
    "check_super",
    "compare",
    "delta_vfilt",
    "direct_sum",
    "embed_field",
    "fg_roundtrip",
    "flatten_object",
    "functor_F",
    "functor_G",
    "galois_orbit_check",
    "gf_roundtrip",
    "gluing_data",
    "graded",
    "graded_frobenius_map",
    "graded_t_map",
    "level_json",
    "make_field",
    "mc_depth_grading",
    "mc_vfilt",
    "mu_log",
    "naturality_check",
    "naturality_check_F",
    "naturality_check_G",
    "nearby_full",
    "nearby_unipotent",
    "parse_series",
    "primitive_root_of_unity",
    "pullback_filtration",
    "recover_rep",
    "rep_isomorphic",
    "saturate_fixed_points",
    "semilinear_fixed_points",
    "shifted_exactness",
    "shifted_filtration",
    "sol_crystal",
    "sol_extension",
    "split_vfilt",
    "standard_vfilt",
    "vanishing",
    "weight_decompose",
    "weight_dims_full",
]
