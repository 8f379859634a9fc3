"""Exact cycle classes of group-theoretic strata, with the prime left
symbolic.

The pipeline: a root datum with a dominant cocharacter determines a
parabolic type I, a frame element z, and a transversal ^I W; for each
transversal element the stratum class is computed from the diagonal by
divided differences, a twisted pullback, a flag pushforward, and a
point-count multiplicity gamma(w) -- all over exact rationals with p a
polynomial variable.  Finite models at numeric p support expansion over
the stratum basis, duality pairings, and Hodge-class normalization.
"""

from zipchow.coeffpoly import (
    MultiPoly,
    NotDivisible,
    ParamPoly,
    TensorPoly,
    VarSpace,
)
from zipchow.rootweyl import (
    CartanComponent,
    RootDatum,
    WeylElt,
    enumerate_weyl,
    min_coset_reps,
)
from zipchow.schubert import (
    diagonal_class,
    divided_difference,
    delta_w,
    delta_word,
    i_w_eval,
    schubert_class,
)
from zipchow.zipdatum import (
    NonDominantCocharacter,
    NotInIW,
    UnsupportedTwistedForm,
    ZipDatum,
    build_zipdatum,
    siegel_frame_element,
    type_of_w,
)
from zipchow.chowpipeline import (
    AmbiguousHodgeClass,
    CoinvariantModel,
    CycleReport,
    NonZeroResidual,
    build_coinvariant_model,
    cycle_classes,
    hodge_class,
    hodge_power_expand,
    pi_star,
    psi_star,
    stratum_class,
)
from zipchow.presets import build_preset

__version__ = "0.1.0"

__all__ = [
    "AmbiguousHodgeClass",
    "CartanComponent",
    "CoinvariantModel",
    "CycleReport",
    "MultiPoly",
    "NonDominantCocharacter",
    "NonZeroResidual",
    "NotDivisible",
    "NotInIW",
    "ParamPoly",
    "RootDatum",
    "TensorPoly",
    "UnsupportedTwistedForm",
    "VarSpace",
    "WeylElt",
    "ZipDatum",
    "build_coinvariant_model",
    "build_preset",
    "build_zipdatum",
    "cycle_classes",
    "delta_w",
    "delta_word",
    "diagonal_class",
    "divided_difference",
    "enumerate_weyl",
    "hodge_class",
    "hodge_power_expand",
    "i_w_eval",
    "min_coset_reps",
    "pi_star",
    "psi_star",
    "schubert_class",
    "siegel_frame_element",
    "stratum_class",
    "type_of_w",
    "__version__",
]
