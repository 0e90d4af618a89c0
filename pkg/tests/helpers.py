"""Deterministic random generators shared by the test modules."""

from __future__ import annotations

import random
from math import gcd

from homotopy_calc.fgab import FgAbGroup, FgAbMap, invariants
from homotopy_calc.intlat import IntMatrix, hstack, inverse_unimodular


def random_matrix(rng: random.Random, rows: int, cols: int, bound: int = 20) -> IntMatrix:
    grid = [[rng.randint(-bound, bound) for _ in range(cols)] for _ in range(rows)]
    return IntMatrix.from_rows(grid, cols=cols)


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> IntMatrix:
    grid = [[int(i == j) for j in range(n)] for i in range(n)]
    for _ in range(steps if steps is not None else 4 * n):
        if n < 2:
            break
        i, j = rng.sample(range(n), 2)
        q = rng.randint(-2, 2)
        grid[i] = [x + q * y for x, y in zip(grid[i], grid[j])]
    if n and rng.random() < 0.5:
        k = rng.randrange(n)
        grid[k] = [-x for x in grid[k]]
    return IntMatrix.from_rows(grid, cols=n)


def random_torsion_chain(rng: random.Random, max_len: int = 3, cap: int = 24) -> list[int]:
    factors: list[int] = []
    d = rng.choice([2, 2, 3, 4, 5])
    target = rng.randrange(0, max_len + 1)
    while len(factors) < target and d <= cap:
        factors.append(d)
        d *= rng.choice([1, 1, 2, 2, 3])
    return factors


def random_canonical_group(
    rng: random.Random, max_rank: int = 4, torsion: bool = True, cap: int = 24
) -> FgAbGroup:
    rank = rng.randrange(0, max_rank + 1)
    chain = random_torsion_chain(rng, cap=cap) if torsion else []
    return FgAbGroup.from_invariants(rank, chain)


def scramble_presentation(rng: random.Random, group: FgAbGroup) -> tuple[FgAbGroup, IntMatrix]:
    """Same group, new presentation; returns the generator change P."""
    p = random_unimodular(rng, group.generators)
    k = group.relations.cols
    redundant = group.relations @ random_matrix(rng, k, rng.randrange(0, 3), bound=2)
    rels = p @ hstack(group.relations, redundant)
    return FgAbGroup(group.generators, rels), p


def generator_orders(group: FgAbGroup) -> list[int]:
    """Per-generator orders for groups presented by diagonal-ish relations."""
    orders = []
    for i in range(group.generators):
        nz = [abs(group.relations.entries[i][j]) for j in range(group.relations.cols)
              if group.relations.entries[i][j]]
        orders.append(nz[0] if nz else 0)
    return orders


def random_well_defined_map(rng: random.Random, source: FgAbGroup, target: FgAbGroup) -> IntMatrix:
    """A random matrix sending source relations into target relations.

    Assumes both groups are in canonical (diagonal) presentation.
    """
    src_orders = generator_orders(source)
    tgt_orders = generator_orders(target)
    grid = []
    for i in range(target.generators):
        row = []
        for j in range(source.generators):
            da, db = src_orders[j], tgt_orders[i]
            if da == 0:
                row.append(rng.randint(-4, 4))
            elif db == 0:
                row.append(0)
            else:
                row.append((db // gcd(db, da)) * rng.randint(-3, 3))
        grid.append(row)
    return IntMatrix.from_rows(grid, cols=source.generators)


def random_complex_data(
    rng: random.Random,
    max_rank: int = 4,
    torsion_cap: int = 24,
    torsion_free_a0: bool = True,
    scramble: bool = True,
):
    """(a0, a1, alpha-matrix) for a random well-defined two-term complex."""
    a0 = random_canonical_group(rng, max_rank, torsion=not torsion_free_a0, cap=torsion_cap)
    a1 = random_canonical_group(rng, max_rank, torsion=True, cap=torsion_cap)
    alpha = random_well_defined_map(rng, a0, a1)
    if scramble:
        a0s, p0 = scramble_presentation(rng, a0)
        a1s, p1 = scramble_presentation(rng, a1)
        alpha = p1 @ alpha @ inverse_unimodular(p0)
        a0, a1 = a0s, a1s
    return a0, a1, alpha


def random_surjection_onto(rng: random.Random, group: FgAbGroup, extra: int = 3) -> IntMatrix:
    """Matrix of a surjection from a free group onto `group`.

    Free rank ranges up to generators + extra; columns span the generators
    jointly with nothing (a unimodular image), so the quotient is onto.
    """
    n = group.generators
    m = rng.randrange(n, n + extra + 1)
    base = hstack(IntMatrix.identity(n), random_matrix(rng, n, m - n, bound=4))
    u = random_unimodular(rng, n)
    cols = list(range(m))
    rng.shuffle(cols)
    return (u @ base).take_columns(cols)


def assert_same_invariants(a, b, context=""):
    ia = invariants(a) if isinstance(a, FgAbGroup) else a
    ib = invariants(b) if isinstance(b, FgAbGroup) else b
    assert ia == ib, f"{context}: {ia} != {ib}"
