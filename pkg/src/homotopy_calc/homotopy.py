"""Top-level invariants of a homogeneous space X = G/H.

Two independent routes compute the fundamental group (twisted by (-1), so
results are plain abelian groups in canonical form): the Ext route needs
Pic(G) = 0 and a connected kernel-of-characters, the cokernel route needs H
connected but no Picard hypothesis.  The second homotopy group is the
kernel of the same induced map and needs no connectedness at all.  When
both fundamental-group routes apply they must agree; disagreement is an
internal error, never a property of the input.
"""

from __future__ import annotations

from dataclasses import dataclass

from .extcplx import TwoTermComplex, cor_ext0_bounds, ext0_fiber_product, ext0_resolution
from .fgab import (
    FgAbGroup,
    FgAbMap,
    InvariantFactors,
    cokernel,
    hom_to_Z,
    invariants,
    kernel,
    zero_map,
)
from .intlat import IntMatrix, solve
from .rootdata import (
    EmbeddingDescriptor,
    GroupDescriptor,
    NotApplicable,
    char_basis,
    induced_char_map,
    induced_pi1alg_map,
    pi1_alg,
    pic_group,
)


class GateError(Exception):
    """A theorem hypothesis failed; carries a stable diagnostic code."""

    code = "GateFailed"


class PicNonTrivial(GateError):
    code = "PicNonTrivial"

    def __init__(self, pic: InvariantFactors):
        self.pic = pic
        super().__init__(f"Pic(G) = {pic}")


class HNotConnected(GateError):
    code = "HNotConnected"

    def __init__(self, message: str = "H is not connected"):
        super().__init__(message)


class HKerCharNotConnected(GateError):
    code = "HKerCharNotConnected"

    def __init__(self):
        super().__init__("the kernel of the characters of H is flagged disconnected")


class CrossCheckError(RuntimeError):
    """Two routes that must agree returned different groups (a bug)."""


@dataclass(frozen=True)
class SpaceDescriptor:
    """X = G/H given by group descriptors and an embedding."""

    g: GroupDescriptor
    h: GroupDescriptor
    e: EmbeddingDescriptor

    def __post_init__(self) -> None:
        if self.g.is_multiplicative and invariants(self.g.char_lattice).torsion:
            raise ValueError("G must be connected: its character group cannot have torsion")


@dataclass(frozen=True)
class HomotopyResult:
    group: InvariantFactors
    method: str
    gates: tuple[tuple[str, str], ...] = ()


def pi1_thm_main(space: SpaceDescriptor, cross_check: bool = True) -> HomotopyResult:
    """Fundamental group as Ext^0 of the character complex [G^ -> H^>.

    Gate 1: Pic(G) = 0.  Gate 2: the kernel-of-characters flag.  The
    fiber-product value is cross-checked against the resolution route by
    default; a mismatch raises CrossCheckError.
    """
    gates = []
    pic = invariants(pic_group(space.g))
    if not pic.is_trivial:
        raise PicNonTrivial(pic)
    gates.append(("pic_trivial", "pass"))
    if not space.e.h_ker_char_connected:
        raise HKerCharNotConnected()
    gates.append(("h_ker_char_connected", "pass"))
    complex_ = TwoTermComplex(induced_char_map(space.g, space.h, space.e))
    result = invariants(ext0_fiber_product(complex_))
    if cross_check:
        oracle = invariants(ext0_resolution(complex_))
        if oracle != result:
            raise CrossCheckError(
                f"ext0 routes disagree: fiber product {result}, resolution {oracle}"
            )
        gates.append(("ext0_oracle", "agree"))
    return HomotopyResult(result, "thm_main", tuple(gates))


def _h_is_trivial_group(h: GroupDescriptor) -> bool:
    if h.is_reductive:
        return h.root_datum.rank == 0
    return invariants(h.char_lattice).is_trivial


def _pi1alg_map(space: SpaceDescriptor) -> FgAbMap:
    """pi1_alg(H^0) -> pi1_alg(G), on whatever data the descriptor carries.

    Reductive H uses the cocharacter embedding directly.  A finite
    multiplicative H has trivial identity component, so the map is zero.  A
    positive-dimensional multiplicative H determines the map only when G is
    a torus (dualize the character restriction); inside a group with roots
    the character-level data cannot see where the cocharacters land, so the
    caller must supply H as a root datum instead.
    """
    g, h, e = space.g, space.h, space.e
    if h.is_reductive:
        return induced_pi1alg_map(g, h, e)
    h_inv = invariants(h.char_lattice)
    target = pi1_alg(g)
    if h_inv.rank == 0:
        return zero_map(FgAbGroup.free(0), target)
    if e.char_map is None:
        raise NotApplicable("multiplicative H needs a char_map embedding")
    g_has_roots = g.is_reductive and len(g.root_datum.roots) > 0
    if g_has_roots:
        raise NotApplicable(
            "positive-dimensional multiplicative H inside a group with roots: "
            "supply H as a root datum with a cocharacter embedding"
        )
    _, basis_h = hom_to_Z(h.char_lattice)
    pulled = e.char_map.transpose() @ basis_h
    if g.is_reductive:
        # G is a torus here: characters are all of X, so the pulled-back
        # functionals are already cocharacter coordinates.
        basis_g = char_basis(g)
    else:
        _, basis_g = hom_to_Z(g.char_lattice)
    matrix = solve(basis_g, pulled)
    assert matrix is not None
    return FgAbMap(FgAbGroup.free(basis_h.cols), target, matrix)


def pi1_thm_pi2(space: SpaceDescriptor) -> HomotopyResult:
    """Fundamental group as coker[pi1_alg(H) -> pi1_alg(G)] for connected H."""
    if not space.e.h_connected:
        raise HNotConnected()
    if space.h.is_multiplicative and invariants(space.h.char_lattice).torsion:
        raise HNotConnected("H of multiplicative type with torsion characters is disconnected")
    gates = (("h_connected", "pass"),)
    induced = _pi1alg_map(space)
    return HomotopyResult(invariants(cokernel(induced)), "thm_pi2", gates)


def pi2(space: SpaceDescriptor) -> HomotopyResult:
    """Second homotopy group as ker[pi1_alg(H) -> pi1_alg(G)].

    No connectedness hypothesis: pi1_alg(H) always means the invariant of
    the identity component.
    """
    induced = _pi1alg_map(space)
    return HomotopyResult(invariants(kernel(induced)), "thm_pi2")


@dataclass(frozen=True)
class Cor14Report:
    """The four outer terms of the exact sequence around pi1, plus checks.

    `cor_ii` is the cokernel description available for connected H (when
    the characters of H are torsion-free); it must coincide with `pi1`.
    """

    hom_h: InvariantFactors
    hom_g: InvariantFactors
    pi1: InvariantFactors
    tors_dual_h: InvariantFactors
    i_star: IntMatrix
    cor_ii: InvariantFactors | None


def cor14_sequence(space: SpaceDescriptor) -> Cor14Report:
    """Exact-sequence report Hom(H^,Z) -> Hom(G^,Z) -> pi1 -> Hom(H^_tors,Q/Z)."""
    main = pi1_thm_main(space)
    complex_ = TwoTermComplex(induced_char_map(space.g, space.h, space.e))
    bounds = cor_ext0_bounds(complex_)
    if not bounds.admits(main.group):
        raise CrossCheckError("pi1 violates the exact-sequence bounds")
    h_chars = complex_.a1
    cor_ii = None
    if not invariants(h_chars).torsion:
        cor_ii = invariants(cokernel(bounds.hom_map))
        if cor_ii != main.group:
            raise CrossCheckError(
                f"cokernel form {cor_ii} disagrees with Ext^0 form {main.group}"
            )
    return Cor14Report(
        hom_h=invariants(bounds.hom_map.source),
        hom_g=invariants(bounds.hom_map.target),
        pi1=main.group,
        tors_dual_h=invariants(bounds.tors_map.source),
        i_star=bounds.hom_map.matrix,
        cor_ii=cor_ii,
    )


@dataclass(frozen=True)
class AllResults:
    """Everything computable for one space, with per-method gate failures."""

    pi1: HomotopyResult | None
    pi2: HomotopyResult | None
    failures: tuple[tuple[str, str], ...]


def compute_all(space: SpaceDescriptor) -> AllResults:
    """Run every applicable method; enforce agreement when both pi1 routes run."""
    failures: list[tuple[str, str]] = []
    main = cok = None
    try:
        main = pi1_thm_main(space)
    except GateError as exc:
        failures.append(("pi1_thm_main", f"{exc.code}: {exc}"))
    except NotApplicable as exc:
        failures.append(("pi1_thm_main", f"NotApplicable: {exc}"))
    try:
        cok = pi1_thm_pi2(space)
    except GateError as exc:
        failures.append(("pi1_thm_pi2", f"{exc.code}: {exc}"))
    except NotApplicable as exc:
        failures.append(("pi1_thm_pi2", f"NotApplicable: {exc}"))
    if main and cok:
        if main.group != cok.group:
            raise CrossCheckError(
                f"theorem routes disagree: {main.group} vs {cok.group}"
            )
        fundamental = HomotopyResult(main.group, "both", main.gates + cok.gates)
    else:
        fundamental = main or cok
    second = None
    try:
        second = pi2(space)
    except NotApplicable as exc:
        failures.append(("pi2", f"NotApplicable: {exc}"))
    return AllResults(pi1=fundamental, pi2=second, failures=tuple(failures))
