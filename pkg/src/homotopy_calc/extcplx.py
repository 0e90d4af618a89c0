"""Two-term complexes [A0 -> A1> and Ext^0(-, Z) by two independent routes.

The fiber-product route replaces the complex by a quasi-isomorphic complex
of free groups (pulling A0 back along a free surjection onto A1) and takes
the cokernel of the dualized map.  The resolution route resolves both terms
by free groups, dualizes the total complex, and reads off its degree-zero
cohomology.  The two must always agree; the resolution route is the oracle.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgab import (
    FgAbGroup,
    FgAbMap,
    IllFormedMap,
    InvariantFactors,
    check_map,
    cokernel,
    hom_dual_map,
    invariants,
    kernel,
    kernel_embedding,
    torsion_dual_map,
)
from .intlat import IntMatrix, column_basis, hstack, inverse_unimodular, kernel_basis, snf, solve, vstack


class TorsionInDegreeZero(ValueError):
    """The fiber-product construction needs a torsion-free degree-0 term."""


@dataclass(frozen=True)
class TwoTermComplex:
    """A homomorphism viewed as a cochain complex in degrees 0 and 1."""

    alpha: FgAbMap

    def __post_init__(self) -> None:
        if not check_map(self.alpha):
            raise IllFormedMap("differential does not respect relations")

    @property
    def a0(self) -> FgAbGroup:
        return self.alpha.source

    @property
    def a1(self) -> FgAbGroup:
        return self.alpha.target

    def h0(self) -> FgAbGroup:
        return kernel(self.alpha)

    def h1(self) -> FgAbGroup:
        return cokernel(self.alpha)


@dataclass(frozen=True)
class ComplexMap:
    """Degreewise map of two-term complexes; the square must commute."""

    source: TwoTermComplex
    target: TwoTermComplex
    f0: FgAbMap
    f1: FgAbMap


def commutes(phi: ComplexMap) -> bool:
    diff = phi.target.alpha.matrix @ phi.f0.matrix - phi.f1.matrix @ phi.source.alpha.matrix
    return solve(phi.target.a1.relations, diff) is not None


def _free_coordinates(group: FgAbGroup) -> tuple[IntMatrix, IntMatrix]:
    """For torsion-free A: projection P and section S with A ~ Z^r via P.

    P maps generator coordinates onto free coordinates (killing relations),
    S lifts free coordinates back; P @ S is the identity.
    """
    res = snf(group.relations)
    if any(d != 1 for d in res.diagonal):
        raise TorsionInDegreeZero("group has torsion")
    free_idx = range(res.rank, group.generators)
    projection = res.U.submatrix(res.rank, group.generators, 0, group.generators)
    section = inverse_unimodular(res.U).take_columns(free_idx)
    return projection, section


def fiber_product_replacement(
    complex_: TwoTermComplex, surjection: IntMatrix | None = None
) -> ComplexMap:
    """The free replacement [B0 -> B1> -> [A0 -> A1> built from a surjection.

    B1 is free mapping onto A1 (default: free on A1's generators via the
    presentation quotient), B0 is the fiber product of A0 and B1 over A1,
    and the returned map of complexes is a quasi-isomorphism.
    """
    a0, a1 = complex_.a0, complex_.a1
    projection, section = _free_coordinates(a0)
    alpha_free = complex_.alpha.matrix @ section
    rels1 = a1.relations
    n1 = a1.generators
    if surjection is None:
        surj = IntMatrix.identity(n1)
    else:
        surj = surjection
        if surj.rows != n1:
            raise ValueError("surjection must land on the degree-1 generators")
        if not invariants(FgAbGroup(n1, hstack(surj, rels1))).is_trivial:
            raise ValueError("given map is not surjective onto the degree-1 group")
    r = alpha_free.cols
    m = surj.cols
    block = hstack(alpha_free, -surj, rels1)
    lifted = kernel_basis(block)
    pairs = column_basis(lifted.submatrix(0, r + m, 0, lifted.cols))
    a_rows = pairs.submatrix(0, r, 0, pairs.cols)
    b_rows = pairs.submatrix(r, r + m, 0, pairs.cols)
    b0 = FgAbGroup.free(pairs.cols)
    b1 = FgAbGroup.free(m)
    beta = FgAbMap(b0, b1, b_rows)
    return ComplexMap(
        source=TwoTermComplex(beta),
        target=complex_,
        f0=FgAbMap(b0, a0, section @ a_rows),
        f1=FgAbMap(b1, a1, surj),
    )


def ext0_fiber_product(
    complex_: TwoTermComplex, surjection: IntMatrix | None = None
) -> FgAbGroup:
    """Ext^0 of the complex into Z as coker[Hom(B1,Z) -> Hom(B0,Z)].

    Needs a torsion-free degree-0 term (raises TorsionInDegreeZero
    otherwise); the result does not depend on the chosen surjection.
    """
    phi = fiber_product_replacement(complex_, surjection)
    beta = phi.source.alpha
    presented = FgAbGroup(beta.source.generators, beta.matrix.transpose())
    inv = invariants(presented)
    return FgAbGroup.from_invariants(inv.rank, inv.torsion)


def ext0_resolution(complex_: TwoTermComplex) -> FgAbGroup:
    """Ext^0 via free resolutions of both terms; handles arbitrary torsion.

    Resolving A0 and A1 and totalizing gives a free complex concentrated in
    degrees -1, 0, 1 quasi-isomorphic to the input; Ext^0 is H^0 of its
    Z-dual.
    """
    a0, a1 = complex_.a0, complex_.a1
    p1 = column_basis(a0.relations)
    q1 = column_basis(a1.relations)
    lifted = solve(q1, complex_.alpha.matrix @ p1)
    assert lifted is not None  # alpha respects relations, so the lift exists
    d_minus1 = vstack(p1, -lifted)
    d_zero = hstack(complex_.alpha.matrix, q1)
    cocycles = kernel_basis(d_minus1.transpose())
    coboundaries = solve(cocycles, d_zero.transpose())
    assert coboundaries is not None  # d d = 0, so image sits inside the kernel
    inv = invariants(FgAbGroup(cocycles.cols, coboundaries))
    return FgAbGroup.from_invariants(inv.rank, inv.torsion)


@dataclass(frozen=True)
class Ext0Bounds:
    """Outer terms of the five-term exact sequence around Ext^0.

    `hom_map` is the dualized differential Hom(A1,Z) -> Hom(A0,Z) and
    `tors_map` its torsion-dual counterpart; Ext^0 is an extension of
    ker(tors_map) by coker(hom_map), which pins its rank exactly and its
    torsion order between the two derived groups.
    """

    hom_map: FgAbMap
    coker_hom: FgAbGroup
    ker_tors: FgAbGroup
    tors_map: FgAbMap

    def admits(self, candidate: InvariantFactors) -> bool:
        low = invariants(self.coker_hom)
        cap = invariants(self.ker_tors)
        if candidate.rank != low.rank:
            return False
        if candidate.torsion_order() % low.torsion_order():
            return False
        if (low.torsion_order() * cap.torsion_order()) % candidate.torsion_order():
            return False
        # A rank-0 extension surjects onto ker(tors_map) with nothing free
        # to absorb it, so that order must divide the candidate's.
        if candidate.rank == 0 and candidate.torsion_order() % cap.torsion_order():
            return False
        return True


def cor_ext0_bounds(complex_: TwoTermComplex) -> Ext0Bounds:
    hom_map = hom_dual_map(complex_.alpha)
    tors_map = torsion_dual_map(complex_.alpha)
    return Ext0Bounds(
        hom_map=hom_map,
        coker_hom=cokernel(hom_map),
        ker_tors=kernel(tors_map),
        tors_map=tors_map,
    )


def _is_isomorphism(f: FgAbMap) -> bool:
    return invariants(kernel(f)).is_trivial and invariants(cokernel(f)).is_trivial


def is_quasi_isomorphism(phi: ComplexMap) -> bool:
    """True iff phi induces isomorphisms on H^0 and H^1."""
    if not commutes(phi):
        raise IllFormedMap("complex map square does not commute")
    h1_map = FgAbMap(
        cokernel(phi.source.alpha), cokernel(phi.target.alpha), phi.f1.matrix
    )
    if not _is_isomorphism(h1_map):
        return False
    ker_src, incl_src = kernel_embedding(phi.source.alpha)
    ker_tgt, incl_tgt = kernel_embedding(phi.target.alpha)
    induced = solve(incl_tgt, phi.f0.matrix @ incl_src)
    if induced is None:
        # f0 does not carry kernel representatives into the target kernel
        # lattice; with a commuting square this cannot happen.
        raise IllFormedMap("kernel does not map into kernel")
    return _is_isomorphism(FgAbMap(ker_src, ker_tgt, induced))
