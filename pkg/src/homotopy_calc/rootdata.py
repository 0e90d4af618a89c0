"""Root data of reductive groups and their lattice-level invariants.

Character and cocharacter lattices are both identified with Z^rank under
the standard dot pairing.  A reductive descriptor determines the character
group (the sublattice orthogonal to all coroots), the algebraic fundamental
group X^vee / Z R^vee, and the Picard group (saturation of the coroot
lattice modulo the coroot lattice).  Groups of multiplicative type are
carried by their character group alone, which may have torsion.
"""

from __future__ import annotations

from dataclasses import dataclass

from .fgab import FgAbGroup, FgAbMap, IllFormedMap, check_map, invariants
from .intlat import IntMatrix, column_basis, kernel_basis, saturation, solve


class NotApplicable(ValueError):
    """The requested invariant is not defined for this descriptor."""


class NotAnEmbedding(ValueError):
    """The lattice data cannot come from a homomorphism of the groups."""


@dataclass(frozen=True)
class RootDatum:
    """(X, X^vee, R, R^vee) with X = X^vee = Z^rank and the dot pairing.

    Roots and coroots are listed in a common order; the bijection is by
    index.
    """

    rank: int
    roots: tuple[tuple[int, ...], ...]
    coroots: tuple[tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if len(self.roots) != len(self.coroots):
            raise ValueError("roots and coroots must be in bijection")
        for v in self.roots + self.coroots:
            if len(v) != self.rank:
                raise ValueError("root vector length differs from rank")

    def coroot_matrix(self) -> IntMatrix:
        """Coroots as columns: the sublattice Z R^vee of X^vee."""
        return IntMatrix.from_columns(self.coroots, rows=self.rank)

    def pairing_matrix(self) -> IntMatrix:
        """Rows are coroots: chi -> (<chi, a^vee>)_a on X."""
        return IntMatrix.from_rows(self.coroots, cols=self.rank)


def _dot(x, y) -> int:
    return sum(a * b for a, b in zip(x, y))


def _reflect(v, root, coroot) -> tuple[int, ...]:
    c = _dot(v, coroot)
    return tuple(a - c * b for a, b in zip(v, root))


def root_datum_violations(rd: RootDatum) -> list[str]:
    """All root-datum axioms violated by the data, as readable strings."""
    problems = []
    pairs = list(zip(rd.roots, rd.coroots))
    root_set = set(rd.roots)
    coroot_set = set(rd.coroots)
    if len(root_set) != len(rd.roots):
        problems.append("duplicate roots")
    for i, (a, av) in enumerate(pairs):
        if _dot(a, av) != 2:
            problems.append(f"<alpha_{i}, alpha_{i}^vee> = {_dot(a, av)} != 2")
    for a in rd.roots:
        if tuple(-x for x in a) not in root_set:
            problems.append(f"root {a} has no negative")
        if tuple(2 * x for x in a) in root_set:
            problems.append(f"root {a} is half of another root (not reduced)")
    for i, (a, av) in enumerate(pairs):
        for b in rd.roots:
            if _reflect(b, a, av) not in root_set:
                problems.append(f"reflection s_{i} does not permute the roots")
                break
        for bv in rd.coroots:
            if _reflect(bv, av, a) not in coroot_set:
                problems.append(f"dual reflection s_{i} does not permute the coroots")
                break
    return problems


def validate_root_datum(rd: RootDatum) -> bool:
    return not root_datum_violations(rd)


@dataclass(frozen=True)
class GroupDescriptor:
    """Either a connected reductive group (root datum) or a group of
    multiplicative type (character group, possibly with torsion)."""

    root_datum: RootDatum | None = None
    char_lattice: FgAbGroup | None = None

    def __post_init__(self) -> None:
        if (self.root_datum is None) == (self.char_lattice is None):
            raise ValueError("descriptor needs exactly one of root_datum / char_lattice")

    @classmethod
    def reductive(cls, rd: RootDatum) -> "GroupDescriptor":
        return cls(root_datum=rd)

    @classmethod
    def multiplicative(cls, chars: FgAbGroup) -> "GroupDescriptor":
        return cls(char_lattice=chars)

    @classmethod
    def torus(cls, rank: int) -> "GroupDescriptor":
        return cls(root_datum=RootDatum(rank, (), ()))

    @property
    def is_reductive(self) -> bool:
        return self.root_datum is not None

    @property
    def is_multiplicative(self) -> bool:
        return self.char_lattice is not None


@dataclass(frozen=True)
class EmbeddingDescriptor:
    """Lattice-level data of an embedding H -> G.

    For reductive H this is an injective map of cocharacter lattices that
    carries coroots into coroots; for multiplicative H it is the induced
    restriction of characters on the computed character-group bases.  The
    hypothesis flags describe the actual stabilizer when it is larger than
    the supplied multiplicative data.
    """

    cochar_matrix: IntMatrix | None = None
    char_map: IntMatrix | None = None
    h_connected: bool = True
    h_ker_char_connected: bool = True

    def __post_init__(self) -> None:
        if (self.cochar_matrix is None) == (self.char_map is None):
            raise ValueError("embedding needs exactly one of cochar_matrix / char_map")


def char_group(g: GroupDescriptor) -> FgAbGroup:
    """Character group: the coroot-orthogonal sublattice, or the stored one."""
    if g.is_multiplicative:
        return g.char_lattice
    return FgAbGroup.free(char_basis(g).cols)


def char_basis(g: GroupDescriptor) -> IntMatrix:
    """Basis of the character group inside X (identity for stored groups)."""
    if g.is_multiplicative:
        return IntMatrix.identity(g.char_lattice.generators)
    return kernel_basis(g.root_datum.pairing_matrix())


def pi1_alg(g: GroupDescriptor) -> FgAbGroup:
    """Algebraic fundamental group X^vee / Z R^vee (presentation kept).

    For multiplicative descriptors this is only defined in the torus case
    (Hom of the character group into Z); torsion means a disconnected
    group, which is rejected here.
    """
    if g.is_reductive:
        return FgAbGroup(g.root_datum.rank, g.root_datum.coroot_matrix())
    inv = invariants(g.char_lattice)
    if inv.torsion:
        raise NotApplicable("pi1_alg of a disconnected multiplicative group")
    return FgAbGroup.free(inv.rank)


def pic_group(g: GroupDescriptor) -> FgAbGroup:
    """Picard group: saturation of the coroot lattice modulo the coroot lattice.

    Trivial for groups of multiplicative type.
    """
    if g.is_multiplicative:
        return FgAbGroup.free(0)
    lattice = g.root_datum.coroot_matrix()
    sat = saturation(lattice)
    span = column_basis(lattice)
    rels = solve(sat, span)
    assert rels is not None
    return FgAbGroup(sat.cols, rels)


def pic_is_trivial(g: GroupDescriptor) -> bool:
    return invariants(pic_group(g)).is_trivial


def induced_char_map(g: GroupDescriptor, h: GroupDescriptor, e: EmbeddingDescriptor) -> FgAbMap:
    """The restriction of characters G^ -> H^ determined by the embedding."""
    chars_g = char_group(g)
    if e.char_map is not None:
        if h.is_reductive:
            raise NotApplicable("char_map embeddings require multiplicative H")
        f = FgAbMap(chars_g, h.char_lattice, e.char_map)
        if not check_map(f):
            raise IllFormedMap("char_map does not respect the relations of H^")
        return f
    if not (g.is_reductive and h.is_reductive):
        raise NotApplicable("cochar_matrix embeddings require reductive data on both sides")
    m = e.cochar_matrix
    if m.rows != g.root_datum.rank or m.cols != h.root_datum.rank:
        raise NotAnEmbedding("cochar_matrix shape does not match the torus ranks")
    basis_g = char_basis(g)
    basis_h = char_basis(h)
    restricted = solve(basis_h, m.transpose() @ basis_g)
    if restricted is None:
        raise NotAnEmbedding("restriction does not carry G^ into H^")
    return FgAbMap(chars_g, char_group(h), restricted)


def induced_pi1alg_map(g: GroupDescriptor, h: GroupDescriptor, e: EmbeddingDescriptor) -> FgAbMap:
    """The map pi1_alg(H) -> pi1_alg(G) induced by the cocharacter embedding.

    Validates that the matrix is injective and carries the coroot lattice of
    H into the coroot lattice of G; a violation cannot come from a group
    homomorphism, so it is rejected as NotAnEmbedding.
    """
    if not (g.is_reductive and h.is_reductive):
        raise NotApplicable("pi1_alg maps need reductive data on both sides")
    if e.cochar_matrix is None:
        raise NotApplicable("pi1_alg maps need a cocharacter embedding")
    m = e.cochar_matrix
    if m.rows != g.root_datum.rank or m.cols != h.root_datum.rank:
        raise NotAnEmbedding("cochar_matrix shape does not match the torus ranks")
    if kernel_basis(m).cols:
        raise NotAnEmbedding("cochar_matrix is not injective")
    coroots_g = g.root_datum.coroot_matrix()
    coroots_h = h.root_datum.coroot_matrix()
    if solve(coroots_g, m @ coroots_h) is None:
        raise NotAnEmbedding("coroot lattice of H is not carried into the coroot lattice of G")
    return FgAbMap(pi1_alg(h), pi1_alg(g), m)
