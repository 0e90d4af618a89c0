"""Exact homotopy invariants of complex homogeneous spaces from root data."""

from .extcplx import (
    ComplexMap,
    TorsionInDegreeZero,
    TwoTermComplex,
    cor_ext0_bounds,
    ext0_fiber_product,
    ext0_resolution,
    fiber_product_replacement,
    is_quasi_isomorphism,
)
from .fgab import (
    FgAbGroup,
    FgAbMap,
    IllFormedMap,
    InvariantFactors,
    check_map,
    cokernel,
    ext1_to_Z,
    hom_to_Z,
    invariants,
    kernel,
)
from .homotopy import (
    AllResults,
    CrossCheckError,
    GateError,
    HKerCharNotConnected,
    HNotConnected,
    HomotopyResult,
    PicNonTrivial,
    SpaceDescriptor,
    compute_all,
    cor14_sequence,
    pi1_thm_main,
    pi1_thm_pi2,
    pi2,
)
from .intlat import IntMatrix, SnfResult, is_unimodular, kernel_basis, saturation, snf
from .rootdata import (
    EmbeddingDescriptor,
    GroupDescriptor,
    NotAnEmbedding,
    NotApplicable,
    RootDatum,
    char_group,
    induced_char_map,
    induced_pi1alg_map,
    pi1_alg,
    pic_group,
    pic_is_trivial,
    validate_root_datum,
)

__version__ = "0.1.0"
