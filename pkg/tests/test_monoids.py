import itertools
import random

import pytest

from logflatten.errors import NotSharp, NotSubmonoid, TorsionQuotient
from logflatten.lattice import solve_nonneg, transpose, mat
from logflatten.monoids import (
    cone_of,
    elements_up_to_degree,
    free_monoid,
    gp_embedded,
    hilbert_basis,
    is_saturated,
    is_sharp,
    monoid,
    monoid_contains,
    quotient,
    quotient_hom,
    saturate,
    units,
)
from logflatten.polyhedra import Cone, dual_cone

N2 = free_monoid(2)
NUMERIC = monoid(1, [(2,), (3,)])


def brute_force_monoid_points(p, box=6):
    """All monoid elements in [-box, box]^rank via bounded coefficient search."""
    cols = transpose(mat(p.generators))
    out = set()
    for x in itertools.product(range(-box, box + 1), repeat=p.rank):
        if solve_nonneg(cols, x, 4 * box) is not None:
            out.add(x)
    return out


def test_contains_numeric():
    assert monoid_contains(NUMERIC, (5,))
    assert not monoid_contains(NUMERIC, (1,))
    assert monoid_contains(NUMERIC, (0,))
    assert not monoid_contains(NUMERIC, (-2,))


def test_contains_nonsharp():
    p = monoid(2, [(1, 0), (-1, 0), (0, 1)])
    assert monoid_contains(p, (5, 0))
    assert monoid_contains(p, (-7, 2))
    assert not monoid_contains(p, (0, -1))


def test_units():
    basis, sharp = units(N2)
    assert basis == () and sharp == N2

    p = monoid(2, [(1, 0), (-1, 0), (0, 1)])
    basis, sharp = units(p)
    assert basis == ((1, 0),)
    assert sharp.rank == 1 and sharp.generators == ((1,),)

    z = monoid(1, [(1,), (-1,)])
    basis, sharp = units(z)
    assert basis == ((1,),)
    assert sharp.is_trivial()


def test_units_torsion():
    p = monoid(2, [(2, 0), (-2, 0), (0, 1)])
    with pytest.raises(TorsionQuotient):
        units(p)


def test_hilbert_basis():
    assert hilbert_basis(Cone(2, ((1, 0), (0, 1)))) == N2
    hb = hilbert_basis(Cone(2, ((0, 1), (2, -1))))
    assert set(hb.generators) == {(0, 1), (1, 0), (2, -1)}
    assert hilbert_basis(Cone(2, ((1, 2),))).generators == ((1, 2),)


def test_hilbert_basis_minimality():
    rng = random.Random(31)
    for _ in range(25):
        n = rng.choice([2, 3])
        rays = tuple(tuple(rng.randrange(-3, 4) for _ in range(n)) for _ in range(rng.randrange(1, n + 2)))
        rays = tuple(r for r in rays if any(r))
        if not rays:
            continue
        c = Cone(n, rays)
        if not c.is_pointed():
            continue
        hb = hilbert_basis(c)
        gens = set(hb.generators)
        # irreducibility via pairwise subtraction plus cone membership
        for a in gens:
            for b in gens:
                if a == b:
                    continue
                diff = tuple(x - y for x, y in zip(a, b))
                assert not (any(diff) and c.contains(diff)), (a, b)
        assert saturate(hb) == hb


def test_saturate_numeric():
    assert saturate(NUMERIC) == monoid(1, [(1,)])
    assert saturate(N2) == N2


def test_saturate_index_two():
    # group of <(1,0),(1,2)> is {(a,b) : b even}; the monoid is already
    # saturated inside it, confirmed against a brute-force oracle
    p = monoid(2, [(1, 0), (1, 2)])
    sat = saturate(p)
    box_points = brute_force_monoid_points(p)
    sat_points = brute_force_monoid_points(sat)
    assert box_points == sat_points
    assert is_saturated(p)


def test_saturate_adds_points():
    p = monoid(2, [(2, 0), (1, 1), (0, 2)])
    # group is {(a,b): a+b even}; (1,1) + cone closure forces nothing new,
    # but <(2,0),(0,2)> alone saturates to the even sublattice quadrant part
    q = monoid(2, [(2, 0), (0, 2), (1, 1)])
    assert saturate(p) == saturate(q)
    r = monoid(2, [(2, 0), (0, 2)])
    # (1,1) is in cone(r) but not in group(r) = even x even, so r stays put
    assert saturate(r) == r

    s = monoid(1, [(2,), (5,)])
    assert saturate(s) == monoid(1, [(1,)])
    assert not is_saturated(s)


def test_saturate_idempotent_extensive():
    rng = random.Random(41)
    for _ in range(20):
        n = rng.choice([1, 2, 3])
        gens = tuple(tuple(rng.randrange(0, 4) for _ in range(n)) for _ in range(rng.randrange(1, 4)))
        gens = tuple(g for g in gens if any(g))
        if not gens:
            continue
        p = monoid(n, gens)
        sat = saturate(p)
        for g in p.generators:
            assert monoid_contains(sat, g)
        assert saturate(sat) == sat


def test_quotient():
    q = quotient(N2, monoid(2, [(1, 0)]))
    assert q.rank == 1 and q.generators == ((1,),)
    assert quotient(N2, monoid(2, [])) == N2
    sharp_two = monoid(2, [(1, 0), (0, 1)])
    assert quotient(sharp_two, sharp_two).is_trivial()
    with pytest.raises(NotSubmonoid):
        quotient(N2, monoid(2, [(-1, 0)]))


def test_quotient_relation_matches_pairwise_definition():
    # a ~ b iff a + c = b + d for some c, d in the submonoid
    p = N2
    n = monoid(2, [(1, 0)])
    hom = quotient_hom(p, n)
    elems = elements_up_to_degree(p, 3)
    for a in elems:
        for b in elems:
            image_equal = hom.apply(a) == hom.apply(b)
            related = any(
                tuple(x + c for x, c in zip(a, (c1, 0))) == tuple(x + c for x, c in zip(b, (c2, 0)))
                for c1 in range(8)
                for c2 in range(8)
            )
            assert image_equal == related


def test_cone_of():
    assert cone_of(N2) == Cone(2, ((1, 0), (0, 1)))
    p = monoid(2, [(1, 0), (1, 1), (1, 2)])
    assert cone_of(p) == Cone(2, ((0, 1), (2, -1)))
    assert cone_of(monoid(1, [(1,)])) == Cone(1, ((1,),))
    with pytest.raises(NotSharp):
        cone_of(monoid(1, [(1,), (-1,)]))


def test_cone_of_hilbert_roundtrip():
    rng = random.Random(59)
    count = 0
    for _ in range(40):
        n = rng.choice([2, 3])
        rays = tuple(tuple(rng.randrange(-3, 4) for _ in range(n)) for _ in range(rng.randrange(1, n + 1)))
        rays = tuple(r for r in rays if any(r))
        if not rays:
            continue
        c = Cone(n, rays)
        if not c.is_pointed() or c.dim() < n:
            continue
        p = hilbert_basis(dual_cone(c))
        assert is_sharp(p) and is_saturated(p)
        assert cone_of(p) == c
        count += 1
    assert count >= 5


def test_gp_embedded():
    p = monoid(2, [(1, 1)])
    p2, basis = gp_embedded(p)
    assert p2.rank == 1 and p2.generators == ((1,),)
    assert basis == ((1, 1),)


def test_elements_up_to_degree_order():
    elems = elements_up_to_degree(N2, 2)
    assert elems[0] == (0, 0)
    # degree 1 values in colex order: e1 before e2
    assert elems[1] == (1, 0) and elems[2] == (0, 1)
    assert len(elems) == 6
