import pytest

from logflatten.errors import NotSaturated, NotSubmonoid
from logflatten.homs import (
    INCONCLUSIVE,
    INTEGRAL,
    NOT_INTEGRAL,
    MonoidHom,
    compose,
    identity_hom,
    is_exact,
    is_integral,
    is_integral_bounded,
    is_local,
    multiplication_map,
    pushout_fine,
    pushout_fs,
    sharpen,
)
from logflatten.lattice import mat
from logflatten.monoids import free_monoid, is_saturated, monoid, monoid_contains

N1 = free_monoid(1)
N2 = free_monoid(2)

# chart model of (x, y) -> (x, xy): e1 -> e1, e2 -> e1 + e2
SHEAR = MonoidHom(N2, N2, mat([[1, 1], [0, 1]]))
SUM_MAP = MonoidHom(N2, N1, mat([[1, 1]]))
DIAG = MonoidHom(N1, N2, mat([[1], [1]]))


def test_hom_certifies_images():
    with pytest.raises(NotSubmonoid):
        MonoidHom(N2, N2, mat([[1, -1], [0, 1]]))


def test_is_local():
    assert is_local(identity_hom(N2))
    assert is_local(DIAG)
    z = monoid(1, [(1,), (-1,)])
    assert not is_local(MonoidHom(N1, z, mat([[1]])))


def test_is_exact():
    assert is_exact(MonoidHom(N1, N2, mat([[1], [0]])))
    assert is_exact(MonoidHom(N1, N1, mat([[2]])))
    inc = MonoidHom(monoid(2, [(1, 0), (1, 2)]), N2, mat([[1, 0], [0, 1]]))
    assert not is_exact(inc)
    with pytest.raises(NotSaturated):
        is_exact(MonoidHom(monoid(1, [(2,), (3,)]), N1, mat([[1]])))


def test_oracle_sum_map():
    v = is_integral_bounded(SUM_MAP, 2)
    assert v.status == NOT_INTEGRAL
    assert v.counterexample == ((1, 0), (0, 1), (0,), (0,))


def test_oracle_identity():
    assert is_integral_bounded(identity_hom(N2), 3).status == INCONCLUSIVE


def test_oracle_diag():
    assert is_integral_bounded(DIAG, 3).status == INCONCLUSIVE


def test_is_integral_shear():
    v = is_integral(SHEAR)
    assert v.status == NOT_INTEGRAL
    assert v.counterexample == ((1, 0), (0, 1), (0, 1), (0, 0))
    # the oracle agrees, with the same counterexample
    o = is_integral_bounded(SHEAR, 3)
    assert o.status == NOT_INTEGRAL
    assert o.counterexample == v.counterexample


def test_is_integral_diag():
    assert is_integral(DIAG).status == INTEGRAL
    assert is_integral_bounded(DIAG, 4).status == INCONCLUSIVE


def test_is_integral_quotient_map():
    from logflatten.monoids import quotient_hom

    pi = quotient_hom(N2, monoid(2, [(1, 0)]))
    assert is_integral(pi).status == INTEGRAL
    assert is_integral_bounded(pi, 4).status == INCONCLUSIVE


def test_multiplication_map():
    assert multiplication_map(N2, 1).matrix == ((1, 0), (0, 1))
    m = multiplication_map(N1, 2)
    assert m.apply((1,)) == (2,)
    m3 = multiplication_map(N2, 3)
    assert m3.matrix == ((3, 0), (0, 3))
    assert is_local(m3)


def test_sharpen():
    assert sharpen(SHEAR) == SHEAR
    p = monoid(2, [(1, 0), (-1, 0), (0, 1)])
    h = MonoidHom(p, p, mat([[1, 0], [0, 1]]))
    s = sharpen(h)
    assert s.source.rank == 1 and s.source.generators == ((1,),)
    z = monoid(1, [(1,), (-1,)])
    h2 = MonoidHom(N1, z, mat([[1]]))
    s2 = sharpen(h2)
    assert s2.source == N1 and s2.target.is_trivial()


def test_sharpen_preserves_integrality_verdict():
    p = monoid(3, [(1, 0, 0), (0, 1, 0), (0, 0, 1), (0, 0, -1)])
    # shear on the first two coordinates, unit factor on the third
    h = MonoidHom(p, p, mat([[1, 1, 0], [0, 1, 0], [0, 0, 1]]))
    v = is_integral(h)
    assert v.status == NOT_INTEGRAL
    q1, q2, b1, b2 = v.counterexample
    assert h.apply(q1) != h.apply(q2) or b1 != b2
    # the lifted counterexample is re-checkable by the oracle
    o = is_integral_bounded(h, 3)
    assert o.status == NOT_INTEGRAL


def test_pushout_along_identity():
    po, from_qp, from_p = pushout_fine(DIAG, identity_hom(N1))
    # pushout along the identity is the target, up to canonical isomorphism:
    # the structure map from P must be invertible on groups and match
    # generators both ways
    assert po.rank == 2
    from logflatten.lattice import determinant

    assert abs(determinant(from_p.matrix)) == 1
    image = monoid(2, [from_p.apply(g) for g in N2.generators])
    assert all(monoid_contains(image, g) for g in po.generators)
    assert all(monoid_contains(po, g) for g in image.generators)
    # structure maps commute with the legs on source generators
    for g in N1.generators:
        assert from_p.apply(DIAG.apply(g)) == from_qp.apply(g)


def test_pushout_two_three():
    q = N1
    h = MonoidHom(q, N1, mat([[2]]))
    g = MonoidHom(q, N1, mat([[3]]))
    po, from_qp, from_p = pushout_fine(h, g)
    assert po.rank == 1
    gens = {abs(x[0]) for x in po.generators}
    assert gens == {2, 3}
    sat, sq, sp = pushout_fs(h, g)
    assert sat.generators == ((1,),) or sat.generators == ((-1,),)
    assert is_saturated(sat)
    for gg in q.generators:
        assert sp.apply(h.apply(gg)) == sq.apply(g.apply(gg))


def test_pushout_of_integral_is_integral():
    # Lemma-style property: pushouts of integral maps stay integral
    h = DIAG  # integral
    g = MonoidHom(N1, N1, mat([[2]]))
    po, from_qp, _ = pushout_fine(h, g)
    assert is_integral_bounded(from_qp, 4).status != NOT_INTEGRAL


def test_composition_of_integral_is_integral():
    h = DIAG
    k = MonoidHom(N2, N2, mat([[1, 0], [0, 2]]))
    assert is_integral(h).status == INTEGRAL
    assert is_integral(k).status == INTEGRAL
    assert is_integral(compose(k, h)).status == INTEGRAL


def test_integral_and_local_implies_exact():
    cases = [DIAG, identity_hom(N2), MonoidHom(N1, N1, mat([[2]]))]
    for h in cases:
        if is_integral(h).status == INTEGRAL and is_local(h):
            assert is_exact(h)


def test_conservative_mode_matches_default_here():
    assert is_integral(DIAG, conservative=True).status == INTEGRAL
    assert is_integral(SHEAR, conservative=True).status == NOT_INTEGRAL
