"""The flattening pipeline: from an injective local homomorphism of sharp
saturated monoids, construct an ideal on the base whose blow-up makes every
chart of the base change integral, and certify the result.

Pipeline: (1) fast exit when the input is already integral; (2) sum the
per-ray support functions attached to the images of the source cone's rays;
(3) resolve the resulting base subdivision to a smooth fan and realize the
combined refinement as a single ideal; (4) pull the subdivision back to the
source; (5) check that every source cone maps onto a base cone
(equidimensionality); (6) verify integrality chart by chart; (7) on an
equidimensionality failure, star-subdivide the base at the offending ray
images and retry, up to an iteration cap.

Every claim lands in a FlatteningCertificate that an independent
oracle-only re-checker can replay.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from .blowup import subdivision_to_ideal
from .errors import (
    NotFullRank,
    NotInCone,
    NotInjective,
    NotLocal,
    NotSaturated,
    NotSharp,
)
from .homs import (
    INTEGRAL,
    NOT_INTEGRAL,
    IntegralityVerdict,
    MonoidHom,
    is_integral,
    is_integral_bounded,
    is_local,
)
from .ideals import (
    MonoidIdeal,
    SupportFunction,
    ideal_equal,
    ideal_of_support_function,
    linearity_fan,
    support_function,
    support_function_of_ideal,
    unit_ideal,
    zero_function,
)
from .lattice import (
    add,
    dual_basis,
    extend_to_basis,
    is_zero,
    mat,
    matrix_rank,
    primitive,
    span_basis,
    transpose,
    vec,
)
from .monoids import (
    FineMonoid,
    cone_of,
    elements_up_to_degree,
    gp_embedded,
    hilbert_basis,
    is_saturated,
    is_sharp,
)
from .polyhedra import (
    Cone,
    Fan,
    FanMap,
    common_refinement_with_preimage,
    dual_cone,
    face_fan,
    is_smooth,
    maps_cones_onto_cones,
    resolve_to_smooth,
    stellar_subdivision,
    validate_fan,
)

VERIFIED = "Verified"
FAILED = "Failed"
INCONCLUSIVE_OVERALL = "Inconclusive"


@dataclass(frozen=True)
class FlattenOptions:
    oracle_bound: int = 5
    height_bound: int = 64
    max_iterations: int = 8
    fast_exit: bool = True
    conservative: bool = False


@dataclass(frozen=True)
class ChartVerdict:
    base_chart: FineMonoid
    source_chart: FineMonoid
    chart_hom: MonoidHom
    verdict: IntegralityVerdict
    base_cone: tuple[int, ...]
    source_cone: tuple[int, ...]


@dataclass(frozen=True)
class FlatteningCertificate:
    input: MonoidHom
    phi: SupportFunction | None
    ideal: MonoidIdeal
    base_fan: Fan
    source_fan: Fan
    fan_map: FanMap
    equidimensional: bool
    charts: tuple[ChartVerdict, ...]
    overall: str
    options: FlattenOptions
    fast_exit_used: bool
    subdivision_rounds: int


def _thread_count() -> int:
    raw = os.environ.get("LOGFLATTEN_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def ray_support_function(q_cone: Cone, n1) -> SupportFunction:
    """Support function attached to a primitive ray image inside the base
    cone.

    Extend n1 to a lattice basis n_1..n_r; the complete fan on the rays
    n_1, ..., n_r, -(n_1+...+n_r) carries the min of the r+1 functionals
    {0, dual basis vectors}; restrict that to the cone, then add the first
    (degree, colex) monoid element making every linearity-fan ray value
    nonnegative.
    """
    n1 = vec(n1)
    if is_zero(n1) or primitive(n1) != n1:
        from .errors import NotPrimitive

        raise NotPrimitive(f"{n1} is not primitive")
    if not q_cone.contains(n1):
        raise NotInCone(f"{n1} does not lie in the base cone")
    basis = extend_to_basis(n1)
    duals = dual_basis(basis)
    functionals = [(0,) * q_cone.rank] + [tuple(m) for m in duals]
    restricted = support_function(q_cone, functionals)
    lattice_monoid = hilbert_basis(dual_cone(q_cone))
    rays = restricted.fan.rays
    needed = [max(0, -restricted.value(r)) for r in rays]
    if all(v == 0 for v in needed):
        return restricted
    from .lattice import dot

    for degree in range(1, 200):
        for ell in elements_up_to_degree(lattice_monoid, degree):
            if all(dot(r, ell) >= need for r, need in zip(rays, needed)):
                return restricted.shift(ell)
    raise AssertionError("no nonnegativizing shift found within the degree cap")


def _check_preconditions(h: MonoidHom) -> None:
    if not is_sharp(h.source) or not is_sharp(h.target):
        raise NotSharp("flattening needs sharp source and target")
    if not is_saturated(h.source) or not is_saturated(h.target):
        raise NotSaturated("flattening needs saturated source and target")
    if not is_local(h):
        raise NotLocal("flattening needs a local homomorphism")
    basis = span_basis(h.source.generators)
    images = [h.apply(b) for b in basis]
    if matrix_rank(mat(images) if images else ()) != len(basis):
        raise NotInjective("homomorphism is not injective on associated groups")


def _gp_reduce(h: MonoidHom) -> MonoidHom:
    """Re-express the hom inside the groups of its monoids, so both cones
    are full-dimensional.  Identity when both groups already span."""
    q_full = len(span_basis(h.source.generators)) == h.source.rank
    p_full = len(span_basis(h.target.generators)) == h.target.rank
    if q_full and p_full:
        return h
    q2, q_basis = gp_embedded(h.source)
    p2, p_basis = gp_embedded(h.target)
    # matrix: coordinates of h(q-basis row) in the p-basis
    from .lattice import coordinates_in_span

    cols = []
    for b in q_basis:
        c = coordinates_in_span(p_basis, h.apply(b))
        assert c is not None, "image of the source group must lie in the target group"
        cols.append(c)
    matrix = transpose(mat(cols)) if cols else tuple(() for _ in range(p2.rank))
    return MonoidHom(q2, p2, matrix)


def flattening_ideal(h: MonoidHom):
    """The base ideal from the sum of per-ray support functions.

    Returns (ideal, phi, base linearity fan); rays of the source cone whose
    image is zero contribute nothing.
    """
    _check_preconditions(h)
    h = _gp_reduce(h)
    q, p = h.source, h.target
    sigma_q = cone_of(q)
    sigma_p = cone_of(p)
    if sigma_q.dim() != q.rank or sigma_p.dim() != p.rank:
        raise NotFullRank("flattening_ideal needs full-dimensional cones")
    phi = zero_function(sigma_q)
    phi_map = transpose(h.matrix)
    for r in sigma_p.rays:
        w = tuple(sum(phi_map[i][j] * r[j] for j in range(len(r))) for i in range(len(phi_map)))
        if is_zero(w):
            continue
        phi = phi.add(ray_support_function(sigma_q, primitive(w)))
    ideal = ideal_of_support_function(phi, q)
    return ideal, phi, linearity_fan(phi)


def _chart_verdicts(h: MonoidHom, base_fan: Fan, source_fan: Fan, options: FlattenOptions):
    """Integrality verdicts for the chart pairs of the base change.

    For each maximal base cone, the relevant source charts come from the
    source cones that are maximal among those mapping into it; their duals
    can be non-pointed (extra unit directions on the source chart)."""
    from .monoids import monoid_of_cone
    from .polyhedra import cone_generators_of_halfspaces

    phi_matrix = transpose(h.matrix)

    def image_rays(s_idx):
        out = []
        for i in s_idx:
            r = source_fan.rays[i]
            w = tuple(
                sum(phi_matrix[a][j] * r[j] for j in range(len(r)))
                for a in range(len(phi_matrix))
            )
            if not is_zero(w):
                out.append(primitive(w))
        return out

    pairs = []
    for b_idx in base_fan.maximal_cones():
        b_cone = base_fan.cone_obj(b_idx)
        fitting = [
            s_idx
            for s_idx in source_fan.cones
            if all(b_cone.contains(w) for w in image_rays(s_idx))
        ]
        maximal = [
            s_idx
            for s_idx in fitting
            if not any(s_idx != t_idx and set(s_idx) < set(t_idx) for t_idx in fitting)
        ]
        for s_idx in maximal:
            pairs.append((b_idx, s_idx, b_cone, source_fan.cone_obj(s_idx)))

    def job(spec):
        b_idx, s_idx, b_cone, s_cone = spec
        base_chart = hilbert_basis(dual_cone(b_cone))
        dual_gens = cone_generators_of_halfspaces(s_cone.rays, s_cone.rank)
        source_chart = FineMonoid(s_cone.rank, monoid_of_cone(dual_gens, s_cone.rank))
        chart_hom = MonoidHom(base_chart, source_chart, h.matrix)
        verdict = is_integral(chart_hom, options.oracle_bound, options.conservative)
        return ChartVerdict(
            base_chart=base_chart,
            source_chart=source_chart,
            chart_hom=chart_hom,
            verdict=verdict,
            base_cone=b_idx,
            source_cone=s_idx,
        )

    nthreads = _thread_count()
    if nthreads > 1:
        with ThreadPoolExecutor(max_workers=nthreads) as pool:
            results = list(pool.map(job, pairs))
    else:
        results = [job(spec) for spec in pairs]
    return tuple(results)


def flatten(h: MonoidHom, options: FlattenOptions = FlattenOptions()) -> FlatteningCertificate:
    """Run the full pipeline and return the certificate."""
    _check_preconditions(h)
    reduced = _gp_reduce(h)
    q, p = reduced.source, reduced.target
    sigma_q = cone_of(q)
    sigma_p = cone_of(p)
    phi_matrix = transpose(reduced.matrix)

    if options.fast_exit:
        verdict = is_integral(reduced, options.oracle_bound, options.conservative)
        if verdict.status == INTEGRAL:
            base_fan = face_fan(sigma_q)
            source_fan = face_fan(sigma_p)
            fan_map = FanMap(phi_matrix, source_fan, base_fan)
            ok, _ = maps_cones_onto_cones(fan_map)
            chart = ChartVerdict(
                base_chart=q,
                source_chart=p,
                chart_hom=reduced,
                verdict=verdict,
                base_cone=tuple(range(len(base_fan.rays))),
                source_cone=tuple(range(len(source_fan.rays))),
            )
            return FlatteningCertificate(
                input=h,
                phi=None,
                ideal=unit_ideal(q),
                base_fan=base_fan,
                source_fan=source_fan,
                fan_map=fan_map,
                equidimensional=ok,
                charts=(chart,),
                overall=VERIFIED,
                options=options,
                fast_exit_used=True,
                subdivision_rounds=0,
            )

    ideal, phi, base_fan = flattening_ideal(reduced)
    rounds = 0
    while True:
        resolved, centers = resolve_to_smooth(base_fan)
        if resolved != linearity_fan(phi):
            from .errors import NoStrictFunctionWithinBound

            height = options.height_bound
            while True:
                try:
                    ideal = subdivision_to_ideal(q, resolved, height)
                    break
                except NoStrictFunctionWithinBound:
                    if height >= 4096:
                        raise
                    height *= 2
            phi = support_function_of_ideal(ideal)
        base_fan = resolved
        source_fan = common_refinement_with_preimage(
            FanMap(phi_matrix, face_fan(sigma_p), base_fan)
        )
        fan_map = FanMap(phi_matrix, source_fan, base_fan)
        ok, witness = maps_cones_onto_cones(fan_map)
        if ok or rounds >= options.max_iterations:
            break
        rounds += 1
        # star-subdivide the base at every offending primitive ray image
        new_rays = []
        for idxs in source_fan.cones:
            cone = source_fan.cone_obj(idxs)
            img = [
                primitive(w)
                for w in (
                    tuple(
                        sum(phi_matrix[i][j] * r[j] for j in range(len(r)))
                        for i in range(len(phi_matrix))
                    )
                    for r in cone.rays
                )
                if not is_zero(w)
            ]
            img_cone = Cone(base_fan.rank, tuple(img))
            is_target = any(
                all(base_fan.cone_obj(t).contains(x) for x in img_cone.rays)
                and all(img_cone.contains(y) for y in base_fan.cone_obj(t).rays)
                for t in base_fan.cones
            )
            if not is_target:
                new_rays.extend(img)
        subdivided = base_fan
        for w in sorted(set(new_rays)):
            if w not in subdivided.rays and subdivided.support_contains(w):
                subdivided = stellar_subdivision(subdivided, w)
        base_fan = subdivided

    charts = _chart_verdicts(reduced, base_fan, source_fan, options)
    smooth_base = all(is_smooth(base_fan.cone_obj(c)) for c in base_fan.maximal_cones())
    statuses = {c.verdict.status for c in charts}
    if ok and smooth_base and statuses <= {INTEGRAL}:
        overall = VERIFIED
    elif NOT_INTEGRAL in statuses:
        overall = FAILED
    else:
        overall = INCONCLUSIVE_OVERALL
    return FlatteningCertificate(
        input=h,
        phi=phi,
        ideal=ideal,
        base_fan=base_fan,
        source_fan=source_fan,
        fan_map=FanMap(phi_matrix, source_fan, base_fan),
        equidimensional=ok,
        charts=charts,
        overall=overall,
        options=options,
        fast_exit_used=False,
        subdivision_rounds=rounds,
    )


def verify_certificate(c: FlatteningCertificate) -> bool:
    """Replay every claim in the certificate, using the bounded oracle only
    for chart integrality, and compare against the recorded verdicts."""
    try:
        _check_preconditions(c.input)
    except Exception:
        return False
    reduced = _gp_reduce(c.input)
    bound = c.options.oracle_bound

    def chart_status_consistent(recorded: IntegralityVerdict, hom: MonoidHom) -> bool:
        oracle = is_integral_bounded(hom, bound)
        if recorded.status == NOT_INTEGRAL:
            if oracle.status != NOT_INTEGRAL:
                return False
            q1, q2, b1, b2 = recorded.counterexample
            return add(hom.apply(q1), b1) == add(hom.apply(q2), b2)
        if recorded.status == INTEGRAL:
            return oracle.status != NOT_INTEGRAL
        return oracle.status == NOT_INTEGRAL

    if c.fast_exit_used:
        if c.overall != VERIFIED or len(c.charts) != 1:
            return False
        chart = c.charts[0]
        if chart.chart_hom != reduced:
            return False
        if not ideal_equal(c.ideal, unit_ideal(reduced.source)):
            return False
        return chart_status_consistent(chart.verdict, chart.chart_hom)

    if not validate_fan(c.base_fan) or not validate_fan(c.source_fan):
        return False
    if c.phi is None:
        return False
    if not ideal_equal(c.ideal, ideal_of_support_function(c.phi, reduced.source)):
        return False
    ok, _ = maps_cones_onto_cones(c.fan_map)
    if ok != c.equidimensional:
        return False
    smooth_base = all(
        is_smooth(c.base_fan.cone_obj(idx)) for idx in c.base_fan.maximal_cones()
    )
    for chart in c.charts:
        if not chart_status_consistent(chart.verdict, chart.chart_hom):
            return False
    statuses = {chart.verdict.status for chart in c.charts}
    if c.equidimensional and smooth_base and statuses <= {INTEGRAL}:
        expected = VERIFIED
    elif NOT_INTEGRAL in statuses:
        expected = FAILED
    else:
        expected = INCONCLUSIVE_OVERALL
    return expected == c.overall