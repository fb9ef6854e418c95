"""Seeded generators for the curated test pools: small monoids, random
homomorphisms between them, and ideals on sharp saturated parents."""

import random

from logflatten.homs import MonoidHom
from logflatten.ideals import MonoidIdeal
from logflatten.monoids import free_monoid, hilbert_basis, monoid
from logflatten.polyhedra import Cone, dual_cone

N1 = free_monoid(1)
N2 = free_monoid(2)
N3 = free_monoid(3)

MONOID_LIBRARY = [
    N1,
    N2,
    N3,
    monoid(1, [(2,), (3,)]),
    monoid(2, [(1, 0), (1, 1), (1, 2)]),
    monoid(2, [(1, 0), (1, 2)]),
    monoid(2, [(1, 0), (1, 1)]),
    monoid(2, [(2, 1), (1, 2), (1, 1)]),
    monoid(2, [(1, 0), (0, 1), (0, -1)]),  # extra unit direction
    monoid(3, [(1, 0, 0), (0, 1, 0), (1, 1, 2)]),
]


def hom_pool(seed: int, count: int) -> list[MonoidHom]:
    """At least `count` homs with rank <= 3, <= 4 generators, entries <= 3.

    Mixes hand-picked maps (identities, shears, diagonal embeddings,
    multiplications, a sum map) with seeded random matrices filtered so
    every generator image lands in the target.
    """
    from logflatten.homs import identity_hom, multiplication_map

    pool: list[MonoidHom] = []
    pool.append(identity_hom(N1))
    pool.append(identity_hom(N2))
    pool.append(MonoidHom(N2, N2, ((1, 1), (0, 1))))
    pool.append(MonoidHom(N2, N1, ((1, 1),)))
    pool.append(MonoidHom(N1, N2, ((1,), (1,))))
    pool.append(multiplication_map(N2, 2))
    pool.append(multiplication_map(monoid(2, [(1, 0), (1, 1), (1, 2)]), 3))
    pool.append(MonoidHom(monoid(2, [(1, 0), (1, 2)]), N2, ((1, 0), (0, 1))))
    rng = random.Random(seed)
    attempts = 0
    while len(pool) < count and attempts < 50_000:
        attempts += 1
        src = rng.choice(MONOID_LIBRARY)
        tgt = rng.choice(MONOID_LIBRARY)
        matrix = tuple(
            tuple(rng.randrange(-1, 4) for _ in range(src.rank)) for _ in range(tgt.rank)
        )
        try:
            pool.append(MonoidHom(src, tgt, matrix))
        except Exception:
            continue
    assert len(pool) >= count
    return pool[:count]


def ideal_pool(seed: int, count: int) -> list[MonoidIdeal]:
    """Nonempty ideals on sharp saturated parents (rank <= 3, <= 4
    generators, entries <= 4)."""
    rng = random.Random(seed)
    pool = []
    while len(pool) < count:
        n = rng.choice([2, 2, 2, 3])
        rays = tuple(
            tuple(rng.randrange(-4, 5) for _ in range(n))
            for _ in range(rng.randrange(1, n + 1))
        )
        rays = tuple(r for r in rays if any(r))
        if not rays:
            continue
        c = Cone(n, rays)
        if not c.is_pointed() or c.dim() < n:
            continue
        p = hilbert_basis(dual_cone(c))
        if not p.generators or len(p.generators) > 4:
            continue
        if any(abs(x) > 4 for g in p.generators for x in g):
            continue
        elems = list(p.generators)
        k = rng.randrange(1, min(4, len(elems)) + 1)
        gens = tuple(rng.choice(elems) for _ in range(k))
        pool.append(MonoidIdeal(p, gens))
    return pool
