"""Finitely generated abelian groups presented by integer relation matrices.

A group is Z^n modulo the column span of its relation matrix.  Groups keep
their presentations (maps act on generator coordinates); reduction to the
canonical form rank + invariant factors is the explicit `invariants`
operation.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import prod

from .intlat import (
    IntMatrix,
    column_basis,
    hstack,
    inverse_unimodular,
    kernel_basis,
    saturation,
    snf,
    solve,
)


class IllFormedMap(ValueError):
    """The matrix does not send source relations into target relations."""


@dataclass(frozen=True)
class InvariantFactors:
    """Canonical form of a finitely generated abelian group.

    Classifies the group as Z^rank + Z/d_1 + ... + Z/d_k with each d_i >= 2
    and d_i | d_{i+1}; this is a complete isomorphism invariant.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.rank < 0:
            raise ValueError("negative rank")
        for d in self.torsion:
            if d < 2:
                raise ValueError("torsion factors must be >= 2")
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"broken divisibility chain {self.torsion}")

    @property
    def is_trivial(self) -> bool:
        return self.rank == 0 and not self.torsion

    def torsion_order(self) -> int:
        return prod(self.torsion) if self.torsion else 1

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{d}" for d in self.torsion)
        return " ⊕ ".join(parts) if parts else "0"


@dataclass(frozen=True)
class FgAbGroup:
    """Z^generators modulo the column span of `relations`."""

    generators: int
    relations: IntMatrix

    def __post_init__(self) -> None:
        if self.relations.rows != self.generators:
            raise ValueError("relation matrix must have one row per generator")

    @classmethod
    def free(cls, n: int) -> "FgAbGroup":
        return cls(n, IntMatrix.zeros(n, 0))

    @classmethod
    def from_invariants(cls, rank: int, torsion=()) -> "FgAbGroup":
        factors = tuple(int(d) for d in torsion)
        n = rank + len(factors)
        grid = [[0] * len(factors) for _ in range(n)]
        for j, d in enumerate(factors):
            grid[rank + j][j] = d
        return cls(n, IntMatrix.from_rows(grid, cols=len(factors)))

    @classmethod
    def cyclic(cls, n: int) -> "FgAbGroup":
        if n == 0:
            return cls.free(1)
        return cls(1, IntMatrix.from_rows([[n]]))

    def __str__(self) -> str:
        return str(invariants(self))


@dataclass(frozen=True)
class FgAbMap:
    """Homomorphism given by a matrix on generator coordinates."""

    source: FgAbGroup
    target: FgAbGroup
    matrix: IntMatrix

    def __post_init__(self) -> None:
        if self.matrix.rows != self.target.generators or self.matrix.cols != self.source.generators:
            raise ValueError("map matrix shape must be target-generators x source-generators")


def invariants(group: FgAbGroup) -> InvariantFactors:
    res = snf(group.relations)
    torsion = tuple(d for d in res.diagonal if d > 1)
    return InvariantFactors(rank=group.generators - res.rank, torsion=torsion)


def zero_map(source: FgAbGroup, target: FgAbGroup) -> FgAbMap:
    return FgAbMap(source, target, IntMatrix.zeros(target.generators, source.generators))


def identity_map(group: FgAbGroup) -> FgAbMap:
    return FgAbMap(group, group, IntMatrix.identity(group.generators))


def compose(g: FgAbMap, f: FgAbMap) -> FgAbMap:
    if g.source.generators != f.target.generators:
        raise ValueError("composition shape mismatch")
    return FgAbMap(f.source, g.target, g.matrix @ f.matrix)


def check_map(f: FgAbMap) -> bool:
    """True iff f sends the source relation lattice into the target one."""
    return solve(f.target.relations, f.matrix @ f.source.relations) is not None


def hom_to_Z(group: FgAbGroup) -> tuple[FgAbGroup, IntMatrix]:
    """Hom(A, Z) as a free group, plus a basis of dual vectors.

    The basis columns are functionals on A's generators (they vanish on the
    relation lattice); downstream code uses them to express induced maps.
    """
    basis = kernel_basis(group.relations.transpose())
    return FgAbGroup.free(basis.cols), basis


def ext1_to_Z(group: FgAbGroup) -> FgAbGroup:
    """Ext^1(A, Z): a finite group with the invariant factors of A_tors."""
    return FgAbGroup.from_invariants(0, invariants(group).torsion)


def cokernel(f: FgAbMap) -> FgAbGroup:
    if not check_map(f):
        raise IllFormedMap("cokernel of a map that does not respect relations")
    return FgAbGroup(f.target.generators, hstack(f.target.relations, f.matrix))


def kernel_embedding(f: FgAbMap) -> tuple[FgAbGroup, IntMatrix]:
    """Kernel of f, plus the matrix of its generators in source coordinates.

    A source class [v] dies in the target iff M v lies in the target relation
    lattice; that membership is a kernel computation on a block matrix, and
    the relations among the resulting generators are found the same way.
    """
    if not check_map(f):
        raise IllFormedMap("kernel of a map that does not respect relations")
    n_src = f.source.generators
    block = hstack(f.matrix, f.target.relations)
    lifted = kernel_basis(block)
    preimage = column_basis(lifted.submatrix(0, n_src, 0, lifted.cols))
    rel_block = hstack(preimage, f.source.relations)
    rel_lifted = kernel_basis(rel_block)
    rels = column_basis(rel_lifted.submatrix(0, preimage.cols, 0, rel_lifted.cols))
    return FgAbGroup(preimage.cols, rels), preimage


def kernel(f: FgAbMap) -> FgAbGroup:
    return kernel_embedding(f)[0]


def torsion_part(group: FgAbGroup) -> tuple[FgAbGroup, IntMatrix]:
    """A_tors presented as saturation/relations, plus its generators in A."""
    sat = saturation(group.relations)
    span = column_basis(group.relations)
    rels = solve(sat, span)
    assert rels is not None  # the span always sits inside its saturation
    return FgAbGroup(sat.cols, rels), sat


def _diagonalize_finite(group: FgAbGroup) -> tuple[list[int], IntMatrix, IntMatrix]:
    """Orders d_i and the change of basis z = U x onto a direct sum of Z/d_i."""
    res = snf(group.relations)
    if res.rank != group.generators:
        raise ValueError("group is not finite")
    orders = list(res.diagonal)
    return orders, res.U, inverse_unimodular(res.U)


def torsion_dual_map(f: FgAbMap) -> FgAbMap:
    """Hom(B_tors, Q/Z) -> Hom(A_tors, Q/Z) induced by f: A -> B.

    Both duals are returned as abstract finite groups presented by diagonal
    relation matrices; the generator psi_i of Hom(Z/d, Q/Z) is z -> z/d.
    """
    if not check_map(f):
        raise IllFormedMap("dualizing a map that does not respect relations")
    tors_a, incl_a = torsion_part(f.source)
    tors_b, incl_b = torsion_part(f.target)
    restricted = solve(incl_b, f.matrix @ incl_a)
    assert restricted is not None  # torsion maps into torsion
    d_a, u_a, u_a_inv = _diagonalize_finite(tors_a)
    d_b, u_b, _ = _diagonalize_finite(tors_b)
    t = u_b @ restricted @ u_a_inv
    keep_a = [i for i, d in enumerate(d_a) if d > 1]
    keep_b = [j for j, d in enumerate(d_b) if d > 1]
    grid = []
    for i in keep_a:
        row = []
        for j in keep_b:
            num = t.entries[j][i] * d_a[i]
            if num % d_b[j]:
                raise IllFormedMap("torsion map is not well defined")
            row.append((num // d_b[j]) % d_a[i])
        grid.append(row)
    dual_b = FgAbGroup.from_invariants(0, [d_b[j] for j in keep_b])
    dual_a = FgAbGroup.from_invariants(0, [d_a[i] for i in keep_a])
    return FgAbMap(dual_b, dual_a, IntMatrix.from_rows(grid, cols=len(keep_b)))


def hom_dual_map(f: FgAbMap) -> FgAbMap:
    """Hom(B, Z) -> Hom(A, Z) induced by f: A -> B, on the hom_to_Z bases."""
    hom_a, basis_a = hom_to_Z(f.source)
    hom_b, basis_b = hom_to_Z(f.target)
    x = solve(basis_a, f.matrix.transpose() @ basis_b)
    assert x is not None  # pulled-back functionals vanish on source relations
    return FgAbMap(hom_b, hom_a, x)
