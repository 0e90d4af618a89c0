"""Built-in root data for classical groups, tori, and standard embeddings.

Coordinate conventions (fixed so that serialized descriptors reproduce
byte-for-byte):

* SL(n):  rank n-1, simply connected presentation.  Simple coroots are the
  standard basis e_1..e_{n-1} of the cocharacter lattice; simple roots are
  the columns of the type-A Cartan matrix.  The full root system is the
  closure of the simple pairs under simultaneous reflections.
* PGL(n): rank n-1, adjoint presentation.  Simple roots are e_1..e_{n-1};
  simple coroots are the rows of the Cartan matrix.
* GL(n):  rank n; roots e_i - e_j (i != j) with coroots the same vectors.
* Sp(2n): rank n; long roots +-2e_i with coroots +-e_i; short roots
  +-e_i +- e_j (i < j) with coroots the same vectors.
* SO(2l+1): rank l; short roots +-e_i with coroots +-2e_i; long roots
  +-e_i +- e_j (i < j) with coroots the same vectors.
* SO(2l): rank l; roots +-e_i +- e_j (i < j) with coroots the same vectors.
* Spin(n): simply connected presentation of the type of SO(n), built from
  the Cartan matrix like SL(n).
* Torus(n): rank n, no roots.  Mu(n): multiplicative with characters Z/n.
"""

from __future__ import annotations

from .fgab import FgAbGroup
from .intlat import IntMatrix
from .rootdata import EmbeddingDescriptor, GroupDescriptor, RootDatum, validate_root_datum


class UnknownName(ValueError):
    """No catalog entry under this name."""


class BadParams(ValueError):
    """Catalog entry exists but the parameters are out of range."""


def _dot(x, y):
    return sum(a * b for a, b in zip(x, y))


def _reflect(v, root, coroot):
    c = _dot(v, coroot)
    return tuple(a - c * b for a, b in zip(v, root))


def _close_under_reflections(rank, simple_pairs):
    """Orbit of the simple (root, coroot) pairs under all simple reflections."""
    pairs = set(simple_pairs)
    frontier = list(pairs)
    while frontier:
        beta, beta_v = frontier.pop()
        for alpha, alpha_v in simple_pairs:
            new = (_reflect(beta, alpha, alpha_v), _reflect(beta_v, alpha_v, alpha))
            if new not in pairs:
                pairs.add(new)
                frontier.append(new)
    ordered = sorted(pairs)
    roots = tuple(p[0] for p in ordered)
    coroots = tuple(p[1] for p in ordered)
    return roots, coroots


def _simply_connected_datum(cartan: list[list[int]]) -> RootDatum:
    """Datum with coroot lattice = Z^l: coroots e_i, roots = Cartan columns."""
    l = len(cartan)
    simple = []
    for j in range(l):
        root = tuple(cartan[i][j] for i in range(l))
        coroot = tuple(int(i == j) for i in range(l))
        simple.append((root, coroot))
    roots, coroots = _close_under_reflections(l, simple)
    return RootDatum(l, roots, coroots)


def _adjoint_datum(cartan: list[list[int]]) -> RootDatum:
    """Datum with root lattice = Z^l: roots e_i, coroots = Cartan rows."""
    l = len(cartan)
    simple = []
    for j in range(l):
        root = tuple(int(i == j) for i in range(l))
        coroot = tuple(cartan[j][i] for i in range(l))
        simple.append((root, coroot))
    roots, coroots = _close_under_reflections(l, simple)
    return RootDatum(l, roots, coroots)


def _cartan_A(l: int) -> list[list[int]]:
    c = [[0] * l for _ in range(l)]
    for i in range(l):
        c[i][i] = 2
        if i + 1 < l:
            c[i][i + 1] = -1
            c[i + 1][i] = -1
    return c


def _cartan_B(l: int) -> list[list[int]]:
    # entry (i, j) is <alpha_j, alpha_i^vee>; alpha_l is the short root
    c = _cartan_A(l)
    if l >= 2:
        c[l - 1][l - 2] = -2
    return c


def _cartan_D(l: int) -> list[list[int]]:
    if l < 2:
        raise BadParams("type D needs rank >= 2")
    c = [[0] * l for _ in range(l)]
    for i in range(l):
        c[i][i] = 2
    for i in range(l - 2):
        if i + 1 < l - 1:
            c[i][i + 1] = c[i + 1][i] = -1
    if l >= 3:
        c[l - 3][l - 1] = c[l - 1][l - 3] = -1
    return c


def _signed_pair_vectors(rank, i, j):
    """All +-e_i +- e_j for i < j."""
    out = []
    for si in (1, -1):
        for sj in (1, -1):
            v = [0] * rank
            v[i] = si
            v[j] = sj
            out.append(tuple(v))
    return out


def _gl_datum(n: int) -> RootDatum:
    roots = []
    for i in range(n):
        for j in range(n):
            if i != j:
                v = [0] * n
                v[i] = 1
                v[j] = -1
                roots.append(tuple(v))
    roots = tuple(sorted(roots))
    return RootDatum(n, roots, roots)


def _sp_datum(n: int) -> RootDatum:
    pairs = []
    for i in range(n):
        for s in (1, -1):
            long_root = tuple(2 * s if k == i else 0 for k in range(n))
            coroot = tuple(s if k == i else 0 for k in range(n))
            pairs.append((long_root, coroot))
    for i in range(n):
        for j in range(i + 1, n):
            for v in _signed_pair_vectors(n, i, j):
                pairs.append((v, v))
    pairs.sort()
    return RootDatum(n, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def _so_odd_datum(l: int) -> RootDatum:
    pairs = []
    for i in range(l):
        for s in (1, -1):
            short_root = tuple(s if k == i else 0 for k in range(l))
            coroot = tuple(2 * s if k == i else 0 for k in range(l))
            pairs.append((short_root, coroot))
    for i in range(l):
        for j in range(i + 1, l):
            for v in _signed_pair_vectors(l, i, j):
                pairs.append((v, v))
    pairs.sort()
    return RootDatum(l, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def _so_even_datum(l: int) -> RootDatum:
    pairs = []
    for i in range(l):
        for j in range(i + 1, l):
            for v in _signed_pair_vectors(l, i, j):
                pairs.append((v, v))
    pairs.sort()
    return RootDatum(l, tuple(p[0] for p in pairs), tuple(p[1] for p in pairs))


def make_group(name: str, n: int | None = None) -> GroupDescriptor:
    """Standard group descriptor by family name and parameter."""
    key = name.strip().lower()
    if key not in _FAMILIES:
        raise UnknownName(f"unknown catalog group {name!r}")
    if n is None:
        raise BadParams(f"{name} needs a parameter n")
    return _FAMILIES[key](n)


def _make_sl(n: int) -> GroupDescriptor:
    if n < 1:
        raise BadParams("SL(n) needs n >= 1")
    if n == 1:
        return GroupDescriptor.torus(0)
    return GroupDescriptor.reductive(_simply_connected_datum(_cartan_A(n - 1)))


def _make_pgl(n: int) -> GroupDescriptor:
    if n < 1:
        raise BadParams("PGL(n) needs n >= 1")
    if n == 1:
        return GroupDescriptor.torus(0)
    return GroupDescriptor.reductive(_adjoint_datum(_cartan_A(n - 1)))


def _make_gl(n: int) -> GroupDescriptor:
    if n < 1:
        raise BadParams("GL(n) needs n >= 1")
    return GroupDescriptor.reductive(_gl_datum(n))


def _make_sp(n: int) -> GroupDescriptor:
    if n < 1:
        raise BadParams("Sp(2n) needs n >= 1")
    return GroupDescriptor.reductive(_sp_datum(n))


def _make_so(n: int) -> GroupDescriptor:
    if n < 3:
        raise BadParams("SO(n) needs n >= 3")
    if n % 2:
        return GroupDescriptor.reductive(_so_odd_datum(n // 2))
    return GroupDescriptor.reductive(_so_even_datum(n // 2))


def _make_spin(n: int) -> GroupDescriptor:
    if n < 3:
        raise BadParams("Spin(n) needs n >= 3")
    if n % 2:
        cartan = _cartan_B(n // 2)
    else:
        cartan = _cartan_D(n // 2)
    return GroupDescriptor.reductive(_simply_connected_datum(cartan))


def _make_torus(n: int) -> GroupDescriptor:
    if n < 0:
        raise BadParams("Torus(n) needs n >= 0")
    return GroupDescriptor.torus(n)


def _make_mu(n: int) -> GroupDescriptor:
    if n < 1:
        raise BadParams("Mu(n) needs n >= 1")
    return GroupDescriptor.multiplicative(FgAbGroup.cyclic(n))


_FAMILIES = {
    "sl": _make_sl,
    "gl": _make_gl,
    "pgl": _make_pgl,
    "sp": _make_sp,
    "so": _make_so,
    "spin": _make_spin,
    "torus": _make_torus,
    "mu": _make_mu,
}


def product(g1: GroupDescriptor, g2: GroupDescriptor) -> GroupDescriptor:
    """Direct product of two reductive descriptors."""
    if not (g1.is_reductive and g2.is_reductive):
        raise BadParams("product is only defined for reductive descriptors")
    r1, r2 = g1.root_datum, g2.root_datum
    rank = r1.rank + r2.rank
    pad_left = lambda v: tuple(v) + (0,) * r2.rank
    pad_right = lambda v: (0,) * r1.rank + tuple(v)
    roots = tuple(pad_left(v) for v in r1.roots) + tuple(pad_right(v) for v in r2.roots)
    coroots = tuple(pad_left(v) for v in r1.coroots) + tuple(pad_right(v) for v in r2.coroots)
    return GroupDescriptor.reductive(RootDatum(rank, roots, coroots))


def make_embedding(kind: str, **params):
    """Standard space G/H as a validated (G, H, embedding) triple."""
    key = kind.strip().lower()
    if key in ("maximal_torus", "diagonal_torus_in"):
        g = _group_param(params)
        if not g.is_reductive:
            raise BadParams("maximal_torus needs a reductive ambient group")
        rank = g.root_datum.rank
        h = GroupDescriptor.torus(rank)
        e = EmbeddingDescriptor(cochar_matrix=IntMatrix.identity(rank))
        return g, h, e
    if key == "block":
        m, n = int(params.get("m", 0)), int(params.get("n", 0))
        if not 1 <= m < n:
            raise BadParams("block embedding needs 1 <= m < n")
        g = _make_sl(n)
        h = _make_sl(m)
        h_rank = 0 if m == 1 else m - 1
        grid = [[int(i == j) for j in range(h_rank)] for i in range(n - 1)]
        e = EmbeddingDescriptor(cochar_matrix=IntMatrix.from_rows(grid, cols=h_rank))
        return g, h, e
    if key == "center_mu":
        n = int(params.get("n", 0))
        if n < 1:
            raise BadParams("center_mu needs n >= 1")
        g = _make_sl(n)
        h = _make_mu(n)
        e = EmbeddingDescriptor(
            char_map=IntMatrix.zeros(1, 0),
            h_connected=(n == 1),
        )
        return g, h, e
    if key == "subtorus":
        matrix = params.get("matrix")
        if matrix is None:
            raise BadParams("subtorus needs a cocharacter matrix")
        m = matrix if isinstance(matrix, IntMatrix) else IntMatrix.from_rows(matrix)
        g = GroupDescriptor.torus(m.rows)
        h = GroupDescriptor.torus(m.cols)
        e = EmbeddingDescriptor(cochar_matrix=m)
        return g, h, e
    if key == "det_kernel":
        n = int(params.get("n", 0))
        if n < 1:
            raise BadParams("det_kernel needs n >= 1")
        g = _make_gl(n)
        h = _make_sl(n)
        h_rank = 0 if n == 1 else n - 1
        grid = [[0] * h_rank for _ in range(n)]
        for j in range(h_rank):
            grid[j][j] = 1
            grid[j + 1][j] = -1
        e = EmbeddingDescriptor(cochar_matrix=IntMatrix.from_rows(grid, cols=h_rank))
        return g, h, e
    if key == "trivial":
        g = _group_param(params)
        rank = g.root_datum.rank if g.is_reductive else 0
        h = GroupDescriptor.torus(0)
        e = EmbeddingDescriptor(cochar_matrix=IntMatrix.zeros(rank, 0))
        return g, h, e
    if key == "mu_in_torus":
        n = int(params.get("n", 0))
        if n < 1:
            raise BadParams("mu_in_torus needs n >= 1")
        g = GroupDescriptor.torus(1)
        h = _make_mu(n)
        e = EmbeddingDescriptor(
            char_map=IntMatrix.from_rows([[1]]),
            h_connected=(n == 1),
        )
        return g, h, e
    raise UnknownName(f"unknown embedding kind {kind!r}")


def _group_param(params) -> GroupDescriptor:
    g = params.get("group")
    if isinstance(g, GroupDescriptor):
        return g
    if isinstance(g, dict) and "catalog" in g:
        return make_group(g["catalog"], g.get("n"))
    raise BadParams("missing or malformed ambient group parameter")


GROUP_NAMES = ("SL", "GL", "PGL", "Sp", "SO", "Spin", "Torus", "Mu")
EMBEDDING_KINDS = (
    "maximal_torus",
    "diagonal_torus_in",
    "block",
    "center_mu",
    "subtorus",
    "det_kernel",
    "trivial",
    "mu_in_torus",
)


def sanity_check_catalog(max_n: int = 6) -> None:
    """Assert that every produced reductive datum satisfies the axioms."""
    for name in ("SL", "GL", "PGL"):
        for n in range(1, max_n + 1):
            g = make_group(name, n)
            if g.is_reductive:
                assert validate_root_datum(g.root_datum), (name, n)
    for n in range(1, max_n + 1):
        assert validate_root_datum(make_group("Sp", n).root_datum), ("Sp", n)
    for n in range(3, max_n + 1):
        assert validate_root_datum(make_group("SO", n).root_datum), ("SO", n)
        assert validate_root_datum(make_group("Spin", n).root_datum), ("Spin", n)
