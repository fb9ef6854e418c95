"""Monoid ideals and the correspondence with piecewise linear support
functions.

Convexity convention: a support function here is the pointwise *minimum* of
finitely many integral linear functionals on a full-dimensional pointed
cone (superadditive).  Under this convention the ideal attached to a
function phi, K = {m : <x, m> >= phi(x) on the whole cone}, satisfies
phi_K = phi, and blowing up K subdivides the cone exactly along the
linearity regions of phi.  The max-of-linear reading would collapse every
such ideal to a principal one, which is why the min convention is fixed
package-wide.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    ConventionViolation,
    EmptyIdeal,
    NotFullRank,
    NotInMonoid,
    NotSharp,
    ParentMismatch,
)
from .lattice import Vec, add, dot, sub, vec
from .monoids import FineMonoid, colex_key, is_sharp, monoid_contains
from .polyhedra import (
    Cone,
    Fan,
    _facet_normals,
    cone_generators_of_halfspaces,
    fan_from_cones,
)


@dataclass(frozen=True)
class MonoidIdeal:
    """Ideal of a fine monoid, stored by its minimal generators."""

    parent: FineMonoid
    generators: tuple[Vec, ...]

    def __post_init__(self):
        gens = sorted({vec(g) for g in self.generators}, key=colex_key)
        p = self.parent
        for g in gens:
            if not monoid_contains(p, g):
                raise NotInMonoid(f"ideal generator {g} is outside the parent monoid")
        # collapse associate generators (mutually divisible; only possible
        # over non-sharp parents), keeping the first in canonical order
        reps: list[Vec] = []
        for g in gens:
            if not any(
                monoid_contains(p, sub(g, r)) and monoid_contains(p, sub(r, g))
                for r in reps
            ):
                reps.append(g)
        minimal = [
            g
            for g in reps
            if not any(r != g and monoid_contains(p, sub(g, r)) for r in reps)
        ]
        object.__setattr__(self, "generators", tuple(minimal))

    def contains(self, v) -> bool:
        v = vec(v)
        return any(monoid_contains(self.parent, sub(v, g)) for g in self.generators)

    def is_empty(self) -> bool:
        return not self.generators


def minimal_generators(parent: FineMonoid, gens) -> MonoidIdeal:
    """The ideal generated by gens, with redundant generators removed."""
    return MonoidIdeal(parent, tuple(vec(g) for g in gens))


def unit_ideal(parent: FineMonoid) -> MonoidIdeal:
    return MonoidIdeal(parent, ((0,) * parent.rank,))


def ideal_contains(k: MonoidIdeal, v) -> bool:
    return k.contains(v)


def product(k1: MonoidIdeal, k2: MonoidIdeal) -> MonoidIdeal:
    if k1.parent != k2.parent:
        raise ParentMismatch("ideal product needs a common parent")
    sums = [add(a, b) for a in k1.generators for b in k2.generators]
    return MonoidIdeal(k1.parent, tuple(sums))


def is_principal(k: MonoidIdeal) -> Vec | None:
    if len(k.generators) == 1:
        return k.generators[0]
    return None


def extend(k: MonoidIdeal, h) -> MonoidIdeal:
    """Push the ideal forward along a hom whose source is the parent."""
    if k.parent != h.source:
        raise ParentMismatch("ideal parent differs from the hom source")
    return MonoidIdeal(h.target, tuple(h.apply(g) for g in k.generators))


def ideal_equal(a: MonoidIdeal, b: MonoidIdeal) -> bool:
    return a.parent == b.parent and all(b.contains(g) for g in a.generators) and all(
        a.contains(g) for g in b.generators
    )


# -- support functions -------------------------------------------------------


@dataclass(frozen=True)
class SupportFunction:
    """Min of integral linear functionals over a full-dimensional pointed
    cone, stored with its coarsest linearity fan.

    pieces maps the index (into fan.cones) of each maximal fan cone to the
    linear functional realized there.
    """

    domain: Cone
    fan: Fan
    pieces: tuple[tuple[int, Vec], ...]

    def functionals(self) -> tuple[Vec, ...]:
        return tuple(sorted({m for _, m in self.pieces}))

    def value(self, x) -> int:
        x = vec(x)
        return min(dot(x, m) for m in self.functionals())

    def ray_values(self) -> tuple[tuple[Vec, int], ...]:
        return tuple((r, self.value(r)) for r in self.fan.rays)

    def shift(self, ell) -> SupportFunction:
        ell = vec(ell)
        return support_function(self.domain, [add(m, ell) for m in self.functionals()])

    def add(self, other: SupportFunction) -> SupportFunction:
        assert self.domain == other.domain
        sums = {add(a, b) for a in self.functionals() for b in other.functionals()}
        return support_function(self.domain, sums)


def support_function(domain: Cone, functionals) -> SupportFunction:
    """Canonical support function min(<., m>) over the domain.

    Functionals whose minimality region is not full-dimensional are dropped;
    the fan is the coarsest subdivision on which the minimum is linear.
    """
    if domain.dim() != domain.rank or not domain.is_pointed():
        raise NotFullRank("support functions need a full-dimensional pointed domain")
    fns = sorted({vec(m) for m in functionals})
    if not fns:
        raise ConventionViolation("a support function needs at least one functional")
    domain_constraints = _facet_normals(domain)
    kept: list[tuple[Vec, Cone]] = []
    for m in fns:
        constraints = list(domain_constraints)
        for other in fns:
            if other != m:
                constraints.append(sub(other, m))
        region = Cone(
            domain.rank,
            cone_generators_of_halfspaces(tuple(constraints), domain.rank),
        )
        if region.dim() == domain.rank:
            kept.append((m, region))
    assert kept, "at least one functional must achieve the minimum somewhere"
    fan = fan_from_cones(domain.rank, [region for _, region in kept])
    piece_list = []
    for m, region in kept:
        key = tuple(sorted(fan.rays.index(r) for r in region.rays))
        idx = fan.cones.index(key)
        piece_list.append((idx, m))
    return SupportFunction(domain, fan, tuple(sorted(piece_list)))


def zero_function(domain: Cone) -> SupportFunction:
    return support_function(domain, [(0,) * domain.rank])


def validate_support_function(f: SupportFunction) -> None:
    """Raise ConventionViolation unless f is nonnegative on its domain and
    equals the minimum of its pieces there (superadditivity)."""
    fns = f.functionals()
    for idx, m in f.pieces:
        cone = f.fan.cone_obj(f.fan.cones[idx])
        for r in cone.rays:
            val = dot(r, m)
            if val < 0:
                raise ConventionViolation(f"negative value {val} at ray {r}")
            if any(dot(r, other) < val for other in fns):
                raise ConventionViolation(
                    f"piece functional {m} is not minimal at its own ray {r}"
                )


def linearity_fan(f: SupportFunction) -> Fan:
    """The coarsest fan subdividing the domain on which f is linear."""
    return f.fan


def support_function_of_ideal(k: MonoidIdeal) -> SupportFunction:
    """phi_K(x) = min over generators t of <x, t> on the dual-side cone."""
    from .monoids import cone_of

    if k.is_empty():
        raise EmptyIdeal("support function of the empty ideal")
    if not is_sharp(k.parent):
        raise NotSharp("support functions live over sharp parents")
    sigma = cone_of(k.parent)
    return support_function(sigma, k.generators)


def ideal_of_support_function(f: SupportFunction, parent: FineMonoid) -> MonoidIdeal:
    """K_phi = {m in parent : <x, m> >= phi(x) for all x in the domain}.

    The parent must be the full lattice monoid of the domain's dual (sharp
    and saturated with the matching cone), so membership in the parent is
    itself a ray condition and K_phi is cut out by <r, m> >= phi(r) over the
    linearity-fan rays.

    That polyhedron has the piece functionals as its integral vertex set and
    the parent cone as recession cone; an element lying beyond the generator
    zonotope around the vertex hull is reducible by a parent generator, so
    every minimal generator lives in a finite box, which is enumerated and
    Dickson-filtered exactly.
    """
    from .lattice import enumerate_box
    from .monoids import cone_of, is_saturated

    if not is_sharp(parent):
        raise NotSharp("the parent of an ideal must be sharp here")
    if cone_of(parent) != f.domain or not is_saturated(parent):
        raise ParentMismatch(
            "parent must be the lattice-point monoid dual to the function domain"
        )
    validate_support_function(f)
    rays = f.fan.rays
    n = parent.rank
    targets = [f.value(r) for r in rays]
    verts = f.functionals()
    zon_lo = [sum(min(0, g[i]) for g in parent.generators) for i in range(n)]
    zon_hi = [sum(max(0, g[i]) for g in parent.generators) for i in range(n)]
    lo = tuple(min(v[i] for v in verts) + zon_lo[i] for i in range(n))
    hi = tuple(max(v[i] for v in verts) + zon_hi[i] for i in range(n))
    members = [
        m
        for m in enumerate_box(lo, hi)
        if all(dot(r, m) >= t for r, t in zip(rays, targets))
    ]
    return MonoidIdeal(parent, tuple(members))


def ideal_of_support_function_bruteforce(
    f: SupportFunction, parent: FineMonoid, degree_bound: int
) -> MonoidIdeal:
    """Enumeration oracle for cross-checking ideal_of_support_function."""
    from .monoids import elements_up_to_degree

    rays = f.fan.rays
    hits = [
        m
        for m in elements_up_to_degree(parent, degree_bound)
        if all(dot(r, m) >= f.value(r) for r in rays)
    ]
    return MonoidIdeal(parent, tuple(hits))
