"""Rational polyhedral cones and fans with exact integer arithmetic.

Cones are stored by a canonical generating set: primitive, deduplicated,
lexicographically sorted rays with redundant generators removed.  Fans store
*all* faces explicitly as ray-index subsets (the empty subset is the zero
cone), which keeps ray-by-ray arguments straightforward.

Duals are computed by the double description method with exact adjacency
tests; everything downstream (membership, faces, smoothness, refinement)
reduces to dual descriptions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache

from .errors import (
    NotInSupport,
    NotPointed,
    NotPrimitive,
    SupportNotMapped,
)
from .lattice import (
    Mat,
    Vec,
    dot,
    is_zero,
    mat,
    mat_vec,
    matrix_rank,
    neg,
    primitive,
    scale,
    smith_normal_form,
    sub,
    transpose,
    vec,
)

# -- double description ------------------------------------------------------


@lru_cache(maxsize=None)
def dual_description(constraints: tuple[Vec, ...], rank: int) -> tuple[tuple[Vec, ...], tuple[Vec, ...]]:
    """Generators of {m : <c, m> >= 0 for all c in constraints}.

    Returns (lineality_basis, rays).  The cone they generate is the full set:
    span(lineality) + cone(rays).  Constraints are processed in sorted order;
    ray adjacency uses the standard active-set inclusion test, with active
    sets recomputed from scratch after every step for robustness.
    """
    cs = sorted({primitive(c) for c in constraints if not is_zero(c)})
    lineality: list[Vec] = [tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)]
    rays: list[Vec] = []
    processed: list[Vec] = []
    for a in cs:
        pair_l = [dot(l, a) for l in lineality]
        if any(p != 0 for p in pair_l):
            idx = next(i for i, p in enumerate(pair_l) if p != 0)
            lstar = lineality[idx]
            w = pair_l[idx]
            if w < 0:
                lstar, w = neg(lstar), -w
            new_lin = []
            for i, l in enumerate(lineality):
                if i == idx:
                    continue
                p = dot(l, a)
                cand = sub(scale(w, l), scale(p, lstar))
                if not is_zero(cand):
                    new_lin.append(primitive(cand))
            new_rays = []
            for r in rays:
                p = dot(r, a)
                cand = sub(scale(w, r), scale(p, lstar))
                if not is_zero(cand):
                    new_rays.append(primitive(cand))
            new_rays.append(lstar)
            lineality = new_lin
            rays = sorted(set(new_rays))
        else:
            plus = [r for r in rays if dot(r, a) > 0]
            zero = [r for r in rays if dot(r, a) == 0]
            minus = [r for r in rays if dot(r, a) < 0]
            if not minus:
                processed.append(a)
                continue
            active = {r: frozenset(i for i, c in enumerate(processed) if dot(r, c) == 0) for r in rays}
            combos = []
            for rp in plus:
                for rm in minus:
                    common = active[rp] & active[rm]
                    adjacent = not any(
                        r is not rp and r is not rm and common <= active[r] for r in rays
                    )
                    if adjacent:
                        cand = sub(scale(dot(rp, a), rm), scale(dot(rm, a), rp))
                        if not is_zero(cand):
                            combos.append(primitive(cand))
            rays = sorted(set(plus + zero + combos))
        processed.append(a)
    return tuple(lineality), tuple(rays)


def cone_generators_of_halfspaces(constraints, rank: int) -> tuple[Vec, ...]:
    """All generators (rays plus +/- lineality) of an inequality-cut cone."""
    lin, rays = dual_description(tuple(constraints), rank)
    gens = list(rays)
    for l in lin:
        gens.append(l)
        gens.append(neg(l))
    return tuple(sorted(set(gens)))


# -- cones --------------------------------------------------------------------


@dataclass(frozen=True)
class Cone:
    """Rational polyhedral cone given by a canonical generating ray set."""

    rank: int
    rays: tuple[Vec, ...]

    def __post_init__(self):
        rays = sorted({primitive(vec(r)) for r in self.rays if not is_zero(vec(r))})
        # drop generators inside the cone of the others (deterministic greedy)
        i = 0
        while i < len(rays):
            others = rays[:i] + rays[i + 1:]
            if others and _in_cone_of(rays[i], tuple(others), self.rank):
                rays = others
            else:
                i += 1
        object.__setattr__(self, "rays", tuple(rays))

    def contains(self, x) -> bool:
        x = vec(x)
        return all(dot(x, m) >= 0 for m in _facet_normals(self))

    def dim(self) -> int:
        if not self.rays:
            return 0
        return matrix_rank(mat(self.rays))

    def is_pointed(self) -> bool:
        return all(not self.contains(neg(r)) for r in self.rays)


def _in_cone_of(x: Vec, gens: tuple[Vec, ...], rank: int) -> bool:
    return all(dot(x, m) >= 0 for m in cone_generators_of_halfspaces(gens, rank))


@lru_cache(maxsize=None)
def _facet_normals(c: Cone) -> tuple[Vec, ...]:
    """Generators of the dual cone, doubling as membership constraints."""
    return cone_generators_of_halfspaces(c.rays, c.rank)


def dual_cone(c: Cone) -> Cone:
    """The dual cone {m : <x, m> >= 0 for all x in c} in the dual lattice."""
    return Cone(c.rank, _facet_normals(c))


def contains(c: Cone, x) -> bool:
    return c.contains(x)


def faces(c: Cone) -> tuple[Cone, ...]:
    """All faces of a strongly convex cone, ordered by dimension then rays."""
    if not c.is_pointed():
        raise NotPointed(f"cone with rays {c.rays} is not pointed")
    normals = _facet_normals(c)
    found = {}
    for k in range(len(normals) + 1):
        for subset in itertools.combinations(normals, k):
            face_rays = tuple(r for r in c.rays if all(dot(r, m) == 0 for m in subset))
            found.setdefault(face_rays, Cone(c.rank, face_rays))
    result = sorted(found.values(), key=lambda f: (len(f.rays), f.rays))
    return tuple(result)


def is_smooth(c: Cone) -> bool:
    """True iff the rays extend to a basis of the ambient lattice."""
    if not c.is_pointed():
        raise NotPointed(f"cone with rays {c.rays} is not pointed")
    if not c.rays:
        return True
    d, _, _ = smith_normal_form(mat(c.rays))
    k = len(c.rays)
    if k > min(len(d), len(d[0]) if d else 0):
        return False
    return all(d[i][i] == 1 for i in range(k))


def multiplicity(c: Cone) -> int:
    """Index of the ray span inside its saturation (1 iff smooth simplicial)."""
    if not c.rays:
        return 1
    d, _, _ = smith_normal_form(mat(c.rays))
    out = 1
    for i in range(min(len(d), len(d[0]))):
        if d[i][i] != 0:
            out *= d[i][i]
    return out


def is_simplicial(c: Cone) -> bool:
    return len(c.rays) == c.dim()


def parallelepiped_points(rays: tuple[Vec, ...], rank: int) -> tuple[Vec, ...]:
    """Nonzero lattice points sum(l_i r_i) with all l_i in [0, 1), for
    linearly independent rays; sorted.

    Walks the quotient group saturation/span via the Smith form, so the cost
    is linear in the multiplicity rather than exponential in the ray count.
    """
    from fractions import Fraction

    k = len(rays)
    if k == 0:
        return ()
    d, u, _v = smith_normal_form(mat(rays))
    diag = [d[i][i] for i in range(k)]
    assert all(x != 0 for x in diag), "rays must be linearly independent"
    pts = set()
    for t in itertools.product(*[range(x) for x in diag]):
        lam = []
        for i in range(k):
            val = sum(Fraction(t[j], diag[j]) * u[j][i] for j in range(k))
            lam.append(val - (val.numerator // val.denominator))
        x = [0] * rank
        exact = True
        for j in range(rank):
            coord = sum(lam[i] * rays[i][j] for i in range(k))
            if coord.denominator != 1:
                exact = False
                break
            x[j] = coord.numerator
        assert exact, "parallelepiped point must be integral"
        pts.add(tuple(x))
    pts.discard((0,) * rank)
    return tuple(sorted(pts))


@lru_cache(maxsize=None)
def triangulate(c: Cone) -> tuple[tuple[Vec, ...], ...]:
    """Split a pointed cone into simplicial subcones on the same rays.

    Pulling triangulation from the lexicographically least ray; recursion on
    facets keeps it deterministic.
    """
    d = c.dim()
    if len(c.rays) == d:
        return (c.rays,)
    r0 = c.rays[0]
    out = []
    for f in faces(c):
        if f.dim() == d - 1 and r0 not in f.rays:
            for simplex in triangulate(f):
                out.append(tuple(sorted(simplex + (r0,))))
    return tuple(sorted(set(out)))


# -- fans ----------------------------------------------------------------------


@dataclass(frozen=True)
class Fan:
    """Fan given by its rays and the ray-index sets of *all* its cones."""

    rank: int
    rays: tuple[Vec, ...]
    cones: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        rays = tuple(primitive(vec(r)) for r in self.rays)
        assert len(set(rays)) == len(rays), "duplicate rays"
        order = sorted(range(len(rays)), key=lambda i: rays[i])
        remap = {old: new for new, old in enumerate(order)}
        sorted_rays = tuple(rays[i] for i in order)
        cones = sorted({tuple(sorted(remap[i] for i in cone)) for cone in self.cones})
        object.__setattr__(self, "rays", sorted_rays)
        object.__setattr__(self, "cones", tuple(cones))

    def cone_obj(self, idxs: tuple[int, ...]) -> Cone:
        return Cone(self.rank, tuple(self.rays[i] for i in idxs))

    def maximal_cones(self) -> tuple[tuple[int, ...], ...]:
        out = []
        for cone in self.cones:
            s = set(cone)
            if not any(s < set(other) for other in self.cones):
                out.append(cone)
        return tuple(out)

    def support_contains(self, x) -> bool:
        x = vec(x)
        return any(self.cone_obj(c).contains(x) for c in self.maximal_cones())


def fan_from_cones(rank: int, cones) -> Fan:
    """Build a fan from a collection of cones, closing under faces."""
    all_cones: dict[tuple[Vec, ...], None] = {}
    for c in cones:
        if not isinstance(c, Cone):
            c = Cone(rank, tuple(c))
        for f in faces(c):
            all_cones.setdefault(f.rays, None)
    rays = sorted({r for key in all_cones for r in key})
    index = {r: i for i, r in enumerate(rays)}
    idx_cones = sorted({tuple(sorted(index[r] for r in key)) for key in all_cones})
    return Fan(rank, tuple(rays), tuple(idx_cones))


def face_fan(c: Cone) -> Fan:
    """The fan whose cones are exactly the faces of c."""
    return fan_from_cones(c.rank, [c])


def validate_fan(f: Fan) -> bool:
    """Exhaustive fan-axiom check: listed ray sets are exact, faces present,
    pairwise intersections are common faces."""
    cone_keys = set(f.cones)
    for idxs in f.cones:
        c = f.cone_obj(idxs)
        if not c.is_pointed():
            return False
        if c.rays != tuple(sorted(f.rays[i] for i in idxs)):
            return False
        for face in faces(c):
            key = tuple(sorted(f.rays.index(r) for r in face.rays))
            if key not in cone_keys:
                return False
    for a, b in itertools.combinations(f.cones, 2):
        ca, cb = f.cone_obj(a), f.cone_obj(b)
        inter = intersect_cones(ca, cb)
        key = tuple(sorted(f.rays.index(r) for r in inter.rays))
        if key not in cone_keys:
            return False
        if not (set(key) <= set(a) and set(key) <= set(b)):
            return False
        if inter.rays not in {face.rays for face in faces(ca)}:
            return False
        if inter.rays not in {face.rays for face in faces(cb)}:
            return False
    return True


def intersect_cones(a: Cone, b: Cone) -> Cone:
    gens = cone_generators_of_halfspaces(
        tuple(sorted(set(_facet_normals(a)) | set(_facet_normals(b)))), a.rank
    )
    return Cone(a.rank, gens)


def stellar_subdivision(f: Fan, v) -> Fan:
    """Star subdivision of the fan at a primitive lattice point of its support."""
    v = vec(v)
    if is_zero(v) or primitive(v) != v:
        raise NotPrimitive(f"{v} is not primitive")
    if not f.support_contains(v):
        raise NotInSupport(f"{v} is outside the fan support")
    star = [idxs for idxs in f.cones if f.cone_obj(idxs).contains(v)]
    keep = [f.cone_obj(idxs) for idxs in f.cones if not f.cone_obj(idxs).contains(v)]
    joins = []
    for tau in f.cones:
        tau_c = f.cone_obj(tau)
        if tau_c.contains(v):
            continue
        if any(set(tau) <= set(sigma) for sigma in star):
            joins.append(Cone(f.rank, tau_c.rays + (v,)))
    return fan_from_cones(f.rank, keep + joins)


def resolve_to_smooth(f: Fan) -> tuple[Fan, tuple[Vec, ...]]:
    """Refine the fan by stellar subdivisions until every cone is smooth.

    Strategy: first break non-simplicial cones by subdividing at one of
    their own rays; then repeatedly take the non-smooth simplicial cone of
    largest multiplicity and subdivide at the parallelepiped lattice point
    that minimizes the worst resulting multiplicity (lexicographically least
    on ties).  Returns the refined fan and the subdivision centers used.
    """
    for idxs in f.cones:
        if not f.cone_obj(idxs).is_pointed():
            raise NotPointed("fan contains a non-pointed cone")
    fan = f
    centers: list[Vec] = []
    while True:
        maximal = [fan.cone_obj(i) for i in fan.maximal_cones()]
        nonsimp = sorted((c for c in maximal if not is_simplicial(c)), key=lambda c: c.rays)
        if nonsimp:
            target = nonsimp[0]
            chosen = None
            for r in target.rays:
                others = tuple(x for x in target.rays if x != r)
                pyramidal = any(
                    set(others) <= set(face.rays)
                    for face in faces(target)
                    if face.dim() == target.dim() - 1
                )
                if not pyramidal:
                    chosen = r
                    break
            assert chosen is not None, "non-simplicial cone pyramidal over every ray"
            fan = stellar_subdivision(fan, chosen)
            centers.append(chosen)
            continue
        bad = [c for c in maximal if not is_smooth(c)]
        if not bad:
            return fan, tuple(centers)
        worst = sorted(bad, key=lambda c: (-multiplicity(c), c.rays))[0]
        cands = set()
        for p in parallelepiped_points(worst.rays, fan.rank):
            cands.add(primitive(p))
        assert cands, "non-smooth simplicial cone with empty parallelepiped"

        def score(v: Vec) -> int:
            worst_piece = 1
            for i in range(len(worst.rays)):
                piece = worst.rays[:i] + (v,) + worst.rays[i + 1:]
                if matrix_rank(mat(piece)) == len(piece):
                    piece_cone = Cone(fan.rank, piece)
                    if len(piece_cone.rays) == len(piece):
                        worst_piece = max(worst_piece, multiplicity(piece_cone))
            return worst_piece

        best = min(cands, key=lambda v: (score(v), v))
        fan = stellar_subdivision(fan, best)
        centers.append(best)


# -- fan maps ------------------------------------------------------------------


@dataclass(frozen=True)
class FanMap:
    """Lattice map between the ambient lattices of two fans."""

    matrix: Mat
    source: Fan
    target: Fan

    def apply(self, x) -> Vec:
        return mat_vec(self.matrix, vec(x))


def _image_cone(fm: FanMap, idxs: tuple[int, ...]) -> Cone:
    imgs = []
    for i in idxs:
        w = fm.apply(fm.source.rays[i])
        if not is_zero(w):
            imgs.append(primitive(w))
    return Cone(fm.target.rank, tuple(imgs))


def maps_cones_onto_cones(fm: FanMap) -> tuple[bool, tuple[int, ...] | None]:
    """True iff the image of every source cone is a cone of the target fan;
    on failure also returns the first offending source cone (ray indices)."""
    target_cones = [fm.target.cone_obj(i) for i in fm.target.cones]
    for idxs in fm.source.cones:
        img = _image_cone(fm, idxs)
        ok = False
        for t in target_cones:
            if all(t.contains(r) for r in img.rays) and all(img.contains(r) for r in t.rays):
                ok = True
                break
        if not ok:
            return False, idxs
    return True, None


def common_refinement_with_preimage(fm: FanMap) -> Fan:
    """The source fan refined by preimages of target cones.

    Cones are {tau  intersect  Phi^-1(sigma')}.  Raises SupportNotMapped when
    the map fails to carry the source support into the target support; the
    check is exact whenever the target support is convex (the case used
    here, where target fans subdivide a single cone).
    """
    phi_t = transpose(fm.matrix)
    for i, r in enumerate(fm.source.rays):
        w = fm.apply(r)
        if not is_zero(w) and not fm.target.support_contains(w):
            raise SupportNotMapped(f"image of ray {r} lies outside the target support")
    pieces: dict[tuple[Vec, ...], Cone] = {}
    per_max: dict[tuple[int, ...], list[Cone]] = {}
    source_max = fm.source.maximal_cones()
    for tau_idx in fm.source.cones:
        tau = fm.source.cone_obj(tau_idx)
        tau_constraints = _facet_normals(tau)
        for sig_idx in fm.target.cones:
            sig = fm.target.cone_obj(sig_idx)
            pulled = tuple(mat_vec(phi_t, m) for m in _facet_normals(sig))
            cons = tuple(sorted({primitive(c) for c in tau_constraints + pulled if not is_zero(c)}))
            cell = Cone(fm.source.rank, cone_generators_of_halfspaces(cons, fm.source.rank))
            pieces.setdefault(cell.rays, cell)
            if tau_idx in source_max:
                per_max.setdefault(tau_idx, []).append(cell)
    # coverage check: inside each maximal source cone the top-dimensional
    # cells may only leave boundary walls on the cone's own boundary
    for tau_idx in source_max:
        tau = fm.source.cone_obj(tau_idx)
        d = tau.dim()
        if d == 0:
            continue
        cells = [c for c in per_max.get(tau_idx, []) if c.dim() == d]
        cells = list({c.rays: c for c in cells}.values())
        if not cells:
            raise SupportNotMapped(f"no full-dimensional piece inside cone {tau.rays}")
        tau_facets = [f for f in faces(tau) if f.dim() == d - 1]
        wall_count: dict[tuple[Vec, ...], int] = {}
        for cell in cells:
            for w in faces(cell):
                if w.dim() == d - 1:
                    wall_count[w.rays] = wall_count.get(w.rays, 0) + 1
        for wall_rays, count in wall_count.items():
            if count == 1:
                on_boundary = any(
                    all(ftac.contains(r) for r in wall_rays) for ftac in tau_facets
                )
                if not on_boundary:
                    raise SupportNotMapped(
                        f"piece wall {wall_rays} is interior to {tau.rays} but uncovered"
                    )
    return fan_from_cones(fm.source.rank, list(pieces.values()))
