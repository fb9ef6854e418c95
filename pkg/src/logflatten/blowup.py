"""Chart-level blow-ups of monoid ideals.

A blow-up model records, for each minimal generator t of the ideal K, the
chart monoid generated by the base together with all differences t_j - t,
the inclusion of the base into it, and the linearity region of t inside the
base cone.  The attached fan is the linearity fan of K's support function;
charts whose region is full-dimensional correspond bijectively to its
maximal cones, while dominated generators contribute lower-dimensional
overlap charts.

``subdivision_to_ideal`` inverts the construction: given a subdivision of
the base cone it searches ray-value assignments for an integral,
nonnegative function that is strictly superadditive across every wall, and
returns the ideal of that function.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    EmptyIdeal,
    InvertibilityFailure,
    NoStrictFunctionWithinBound,
    NotAGenerator,
    NotASubdivision,
    NotSharp,
)
from .ideals import (
    MonoidIdeal,
    extend,
    ideal_of_support_function,
    linearity_fan,
    support_function,
    support_function_of_ideal,
    unit_ideal,
)
from .lattice import Vec, dot, identity, mat, matrix_rank, solve_integer, sub, vec
from .monoids import FineMonoid, cone_of, is_sharp, monoid_contains, saturate
from .polyhedra import Cone, Fan, cone_generators_of_halfspaces, faces


@dataclass(frozen=True)
class Chart:
    pivot: Vec
    monoid: FineMonoid
    inclusion: "MonoidHom"
    region: Cone


@dataclass(frozen=True)
class BlowupModel:
    base: FineMonoid
    ideal: MonoidIdeal
    charts: tuple[Chart, ...]
    fan: Fan


def chart_monoid(p: FineMonoid, k: MonoidIdeal, t, saturated: bool = True) -> FineMonoid:
    """The monoid generated by p and all t_j - t over the ideal generators."""
    t = vec(t)
    if t not in k.generators:
        raise NotAGenerator(f"{t} is not a minimal generator of the ideal")
    gens = p.generators + tuple(sub(tj, t) for tj in k.generators)
    out = FineMonoid(p.rank, gens)
    return saturate(out) if saturated else out


def blow_up(p: FineMonoid, k: MonoidIdeal, saturated: bool = True) -> BlowupModel:
    """All charts of the blow-up of p along k, with invertibility verified.

    In every chart the extension of k must be principal with the pivot as a
    generator; a failure would be an internal bug, hence the hard error.
    """
    from .homs import MonoidHom

    if k.is_empty():
        raise EmptyIdeal("cannot blow up the empty ideal")
    if not is_sharp(p):
        raise NotSharp("blow-up base must be sharp")
    f = support_function_of_ideal(k)
    fan = linearity_fan(f)
    sigma_constraints = p.generators
    charts = []
    for t in k.generators:
        cm = chart_monoid(p, k, t, saturated)
        inc = MonoidHom(p, cm, identity(p.rank))
        ext = extend(k, inc)
        pivot_ok = ext.contains(t) and all(
            monoid_contains(cm, sub(g, t)) for g in ext.generators
        )
        if not pivot_ok:
            raise InvertibilityFailure(f"extended ideal not generated by pivot {t}")
        constraints = list(sigma_constraints)
        for t2 in k.generators:
            if t2 != t:
                constraints.append(sub(t2, t))
        region = Cone(p.rank, cone_generators_of_halfspaces(tuple(constraints), p.rank))
        charts.append(Chart(pivot=t, monoid=cm, inclusion=inc, region=region))
    return BlowupModel(base=p, ideal=k, charts=tuple(charts), fan=fan)


def _check_subdivides(sigma: Cone, target: Fan) -> None:
    n = sigma.rank
    d = sigma.dim()
    if not target.rays:
        raise NotASubdivision("target fan has no rays")
    for r in target.rays:
        if not sigma.contains(r):
            raise NotASubdivision(f"target ray {r} lies outside the base cone")
    maximal = [target.cone_obj(c) for c in target.maximal_cones()]
    top = [c for c in maximal if c.dim() == d]
    if not top:
        raise NotASubdivision("target fan has no top-dimensional cone")
    sigma_facets = [f for f in faces(sigma) if f.dim() == d - 1]
    wall_count: dict[tuple[Vec, ...], int] = {}
    for cell in top:
        for w in faces(cell):
            if w.dim() == d - 1:
                wall_count[w.rays] = wall_count.get(w.rays, 0) + 1
    for wall_rays, count in wall_count.items():
        if count == 1:
            if not any(all(f.contains(r) for r in wall_rays) for f in sigma_facets):
                raise NotASubdivision(f"wall {wall_rays} is interior but uncovered")


def subdivision_to_ideal(p: FineMonoid, target: Fan, height_bound: int) -> MonoidIdeal:
    """An ideal of p whose blow-up fan is exactly the target subdivision.

    Searches assignments of integer values in [0, height_bound] to the
    target rays, in lexicographic order over the canonical ray list, for a
    function that is linear on each maximal cone, everywhere the minimum of
    its pieces, and strict across every internal wall.  Deterministic; the
    first assignment found wins.
    """
    sigma = cone_of(p)
    _check_subdivides(sigma, target)
    rays = target.rays
    nrays = len(rays)
    maximal = target.maximal_cones()
    if len(maximal) == 1:
        return unit_ideal(p)
    # adjacency: maximal cones sharing a wall of codimension one
    adjacent = []
    for i in range(len(maximal)):
        for j in range(i + 1, len(maximal)):
            common = tuple(sorted(set(maximal[i]) & set(maximal[j])))
            if common and target.cone_obj(common).dim() == sigma.dim() - 1:
                adjacent.append((i, j))

    cone_rays = [tuple(idx for idx in c) for c in maximal]
    adj_of = {ci: [] for ci in range(len(maximal))}
    for i, j in adjacent:
        adj_of[i].append(j)
        adj_of[j].append(i)
    completed_at: dict[int, list[int]] = {}
    for ci, idxs in enumerate(cone_rays):
        completed_at.setdefault(max(idxs), []).append(ci)
    values = [0] * nrays
    solve_memo: dict[tuple[int, tuple[int, ...]], Vec | None] = {}

    def solve_cone(ci: int) -> Vec | None:
        idxs = cone_rays[ci]
        key = (ci, tuple(values[i] for i in idxs))
        if key not in solve_memo:
            rows = mat([rays[i] for i in idxs])
            if matrix_rank(rows) < sigma.rank:
                solve_memo[key] = None
            else:
                solve_memo[key] = solve_integer(rows, vec(key[1]))
        return solve_memo[key]

    solved: dict[int, Vec] = {}

    def dfs(pos: int) -> bool:
        if pos == nrays:
            return True
        r = rays[pos]
        cap = height_bound
        for m in solved.values():
            cap = min(cap, dot(r, m))
        for v in range(cap + 1):
            values[pos] = v
            newly = {}
            ok = True
            for ci in completed_at.get(pos, ()):
                m = solve_cone(ci)
                if m is None:
                    ok = False
                    break
                if any(dot(rays[i], m) < values[i] for i in range(pos + 1)):
                    ok = False
                    break
                clash = False
                for cj in adj_of[ci]:
                    other = solved.get(cj, newly.get(cj))
                    if other is not None and other == m:
                        clash = True
                        break
                if clash:
                    ok = False
                    break
                newly[ci] = m
            if ok:
                solved.update(newly)
                if dfs(pos + 1):
                    return True
                for ci in newly:
                    del solved[ci]
        values[pos] = 0
        return False

    if not dfs(0):
        raise NoStrictFunctionWithinBound(
            f"no strict support function with ray values <= {height_bound}"
        )
    f = support_function(sigma, [solve_cone(ci) for ci in range(len(maximal))])
    ideal = ideal_of_support_function(f, p)
    assert linearity_fan(support_function_of_ideal(ideal)) == target, (
        "blow-up fan of the constructed ideal must equal the target"
    )
    return ideal
