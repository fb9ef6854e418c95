import pytest

from logflatten.blowup import BlowupModel, blow_up, chart_monoid, subdivision_to_ideal
from logflatten.errors import NoStrictFunctionWithinBound, NotAGenerator, NotASubdivision
from logflatten.ideals import (
    MonoidIdeal,
    extend,
    ideal_equal,
    is_principal,
    linearity_fan,
    support_function_of_ideal,
    unit_ideal,
)
from logflatten.monoids import (
    cone_of,
    free_monoid,
    hilbert_basis,
    is_saturated,
    monoid,
    monoid_contains,
)
from logflatten.polyhedra import (
    Cone,
    dual_cone,
    face_fan,
    fan_from_cones,
    is_smooth,
    resolve_to_smooth,
    stellar_subdivision,
)

N2 = free_monoid(2)
MAX_IDEAL = MonoidIdeal(N2, ((1, 0), (0, 1)))


def test_chart_monoid_origin_blowup():
    cm = chart_monoid(N2, MAX_IDEAL, (1, 0), saturated=True)
    assert cm == monoid(2, [(1, 0), (-1, 1)])
    cm2 = chart_monoid(N2, MAX_IDEAL, (0, 1), saturated=True)
    assert cm2 == monoid(2, [(0, 1), (1, -1)])


def test_chart_monoid_principal_is_identity():
    k = MonoidIdeal(N2, ((2, 3),))
    assert chart_monoid(N2, k, (2, 3), saturated=False) == N2
    with pytest.raises(NotAGenerator):
        chart_monoid(N2, k, (1, 1))


def test_chart_monoid_saturation():
    p = monoid(2, [(1, 0), (1, 1), (1, 2)])
    k = MonoidIdeal(p, ((1, 0), (1, 2)))
    unsat = chart_monoid(p, k, (1, 0), saturated=False)
    assert monoid_contains(unsat, (0, 2))
    sat = chart_monoid(p, k, (1, 0), saturated=True)
    assert monoid_contains(sat, (0, 1))
    assert is_saturated(sat)


def test_blow_up_origin():
    model = blow_up(N2, MAX_IDEAL)
    assert isinstance(model, BlowupModel)
    assert len(model.charts) == 2
    monoids = {c.monoid for c in model.charts}
    assert monoids == {monoid(2, [(1, 0), (-1, 1)]), monoid(2, [(0, 1), (1, -1)])}
    for c in model.charts:
        assert is_smooth(cone_of(c.monoid))
        ext = extend(model.ideal, c.inclusion)
        assert is_principal(ext) is not None
        assert ext.contains(c.pivot)
    assert (1, 1) in model.fan.rays
    assert len(model.fan.maximal_cones()) == 2


def test_blow_up_principal_trivial():
    k = MonoidIdeal(N2, ((1, 2),))
    model = blow_up(N2, k)
    assert len(model.charts) == 1
    assert model.charts[0].monoid == N2
    assert model.fan == face_fan(cone_of(N2))


def test_blow_up_square_of_max_ideal():
    sq = MonoidIdeal(N2, ((2, 0), (1, 1), (0, 2)))
    model = blow_up(N2, sq)
    base_model = blow_up(N2, MAX_IDEAL)
    assert model.fan == base_model.fan
    # full-dimensional charts saturate to the same monoids as for the
    # maximal ideal; the dominated middle generator gives an overlap chart
    full = {c.monoid for c in model.charts if c.region.dim() == 2}
    assert full == {c.monoid for c in base_model.charts}
    mid = [c for c in model.charts if c.pivot == (1, 1)]
    assert len(mid) == 1 and mid[0].region.dim() == 1


def test_chart_fan_duality():
    for k in [MAX_IDEAL, MonoidIdeal(N2, ((2, 1), (0, 2)))]:
        model = blow_up(N2, k, saturated=True)
        for c in model.charts:
            assert c.monoid == hilbert_basis(dual_cone(c.region))


def test_subdivision_to_ideal_trivial():
    assert ideal_equal(subdivision_to_ideal(N2, face_fan(cone_of(N2)), 8), unit_ideal(N2))


def test_subdivision_to_ideal_diagonal():
    target = stellar_subdivision(face_fan(cone_of(N2)), (1, 1))
    k = subdivision_to_ideal(N2, target, 8)
    assert ideal_equal(k, MAX_IDEAL)


def test_subdivision_to_ideal_two_walls():
    f = face_fan(cone_of(N2))
    target = stellar_subdivision(stellar_subdivision(f, (1, 2)), (2, 1))
    k = subdivision_to_ideal(N2, target, 16)
    assert linearity_fan(support_function_of_ideal(k)) == target


def test_subdivision_to_ideal_errors():
    other = fan_from_cones(2, [Cone(2, ((1, 0), (-1, 2)))])
    with pytest.raises(NotASubdivision):
        subdivision_to_ideal(N2, other, 8)
    target = stellar_subdivision(face_fan(cone_of(N2)), (1, 1))
    with pytest.raises(NoStrictFunctionWithinBound):
        subdivision_to_ideal(N2, target, 0)


def test_blowup_fan_roundtrip_after_resolution():
    for kparam in range(2, 5):
        base = Cone(2, ((1, 0), (1, kparam)))
        p = hilbert_basis(dual_cone(base))
        resolved, _ = resolve_to_smooth(face_fan(base))
        k = subdivision_to_ideal(p, resolved, 64)
        model = blow_up(p, k)
        assert model.fan == resolved


def test_base_change_compatibility():
    # blowing up the target of a hom along the extended ideal gives the fan
    # obtained by pulling the base blow-up fan back through the dual map
    from logflatten.homs import MonoidHom, multiplication_map
    from logflatten.lattice import transpose
    from logflatten.polyhedra import FanMap, common_refinement_with_preimage

    cases = [
        (MonoidHom(N2, N2, ((1, 1), (0, 1))), MAX_IDEAL),
        (multiplication_map(N2, 2), MAX_IDEAL),
        (MonoidHom(N2, N2, ((1, 1), (0, 1))), MonoidIdeal(N2, ((2, 1), (0, 2)))),
    ]
    for g, k in cases:
        extended = extend(k, g)
        lhs = blow_up(g.target, extended).fan
        base_fan = blow_up(g.source, k).fan
        pulled = common_refinement_with_preimage(
            FanMap(transpose(g.matrix), face_fan(cone_of(g.target)), base_fan)
        )
        assert lhs == pulled, (g.matrix, k.generators)
