"""Finitely generated submonoids of integer lattices.

A FineMonoid is stored by its ambient rank and a generating set; the monoid
is automatically integral and cancellative because it lives in a lattice.
Generators are deduplicated and kept in colexicographic order (so the first
standard basis vector sorts first), and every enumeration in the package
walks elements in (generator degree, colex) order; counterexamples and
certificates inherit that determinism.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import NotPointed, NotSharp, NotSubmonoid, TorsionQuotient
from .lattice import (
    Mat,
    Vec,
    add,
    coordinates_in_span,
    dot,
    is_saturated_lattice,
    is_zero,
    mat,
    mat_vec,
    neg,
    quotient_projection,
    span_basis,
    sub,
    transpose,
    vec,
)
from .polyhedra import (
    Cone,
    cone_generators_of_halfspaces,
    dual_cone,
    parallelepiped_points,
    triangulate,
)


def colex_key(v: Vec):
    return tuple(reversed(v))


@dataclass(frozen=True)
class FineMonoid:
    """Submonoid of Z^rank generated by finitely many lattice vectors."""

    rank: int
    generators: tuple[Vec, ...]

    def __post_init__(self):
        gens = sorted({vec(g) for g in self.generators if not is_zero(vec(g))}, key=colex_key)
        object.__setattr__(self, "generators", tuple(gens))

    def contains(self, v) -> bool:
        return monoid_contains(self, vec(v))

    def is_trivial(self) -> bool:
        return not self.generators


def monoid(rank: int, generators) -> FineMonoid:
    return FineMonoid(rank, tuple(vec(g) for g in generators))


def free_monoid(rank: int) -> FineMonoid:
    return FineMonoid(rank, tuple(tuple(1 if i == j else 0 for j in range(rank)) for i in range(rank)))


@lru_cache(maxsize=None)
def _gen_cone(p: FineMonoid) -> Cone:
    return Cone(p.rank, p.generators)


def is_sharp(p: FineMonoid) -> bool:
    """Sharp iff the cone spanned by the generators is pointed."""
    return _gen_cone(p).is_pointed()


@lru_cache(maxsize=None)
def _sharp_membership_data(p: FineMonoid):
    """(constraints, weight) for a sharp monoid: membership prerequisites and
    a functional positive on every generator."""
    cons = cone_generators_of_halfspaces(p.generators, p.rank)
    w = [0] * p.rank
    for c in cons:
        for i in range(p.rank):
            w[i] += c[i]
    w = tuple(w)
    assert all(dot(g, w) > 0 for g in p.generators)
    return cons, w


@lru_cache(maxsize=None)
def _sharp_contains(p: FineMonoid, v: Vec) -> bool:
    if is_zero(v):
        return True
    cons, w = _sharp_membership_data(p)
    if any(dot(v, c) < 0 for c in cons):
        return False

    gens = p.generators
    degs = [dot(g, w) for g in gens]

    memo: dict[tuple[Vec, int], bool] = {}

    def rec(x: Vec, start: int) -> bool:
        if is_zero(x):
            return True
        key = (x, start)
        if key in memo:
            return memo[key]
        out = False
        for i in range(start, len(gens)):
            if dot(x, w) < degs[i]:
                continue
            y = sub(x, gens[i])
            if all(dot(y, c) >= 0 for c in cons) and rec(y, i):
                out = True
                break
        memo[key] = out
        return out

    return rec(v, 0)


@lru_cache(maxsize=None)
def monoid_contains(p: FineMonoid, v: Vec) -> bool:
    """Exact membership: is v a nonnegative integer combination of the
    generators?  Non-sharp monoids are first reduced by their units, which
    makes the coefficient search bounded."""
    v = vec(v)
    if is_zero(v):
        return True
    if not p.generators:
        return False
    if is_sharp(p):
        return _sharp_contains(p, v)
    _basis, proj, _lift, sharp = _units_data(p)
    # v lies in p iff its unit-quotient image lies in the sharp quotient:
    # the difference is then a unit, and units belong to p
    return monoid_contains(sharp, mat_vec(proj, v))


def in_group(p: FineMonoid, v: Vec) -> bool:
    """Membership in the group generated by p (the lattice spanned)."""
    return coordinates_in_span(span_basis(p.generators), vec(v)) is not None


@lru_cache(maxsize=None)
def _units_data(p: FineMonoid):
    """(unit_basis, proj, lift, sharp_quotient); raises TorsionQuotient when
    the ambient quotient by the unit lattice has torsion."""
    c = _gen_cone(p)
    unit_gens = [g for g in p.generators if c.contains(neg(g))]
    basis = span_basis(unit_gens)
    if not basis:
        ident = tuple(tuple(1 if i == j else 0 for j in range(p.rank)) for i in range(p.rank))
        return (), ident, ident, p
    if not is_saturated_lattice(basis):
        raise TorsionQuotient("unit lattice is not saturated in the ambient lattice")
    proj, lift = quotient_projection(mat(basis), p.rank)
    sharp = FineMonoid(len(proj), tuple(mat_vec(proj, g) for g in p.generators))
    return basis, proj, lift, sharp


def units(p: FineMonoid) -> tuple[tuple[Vec, ...], FineMonoid]:
    """Unit sublattice basis and the sharp quotient monoid."""
    basis, _proj, _lift, sharp = _units_data(p)
    return basis, sharp


def unit_projection(p: FineMonoid) -> Mat:
    return _units_data(p)[1]


def unit_lift(p: FineMonoid) -> Mat:
    return _units_data(p)[2]


# -- Hilbert bases and saturation ---------------------------------------------


@lru_cache(maxsize=None)
def hilbert_basis(c: Cone) -> FineMonoid:
    """Unique minimal generating set of c intersected with the lattice.

    Bounded construction: triangulate, collect simplex rays plus their
    fundamental-parallelepiped lattice points, then keep the irreducible
    candidates.  Adequate at desk scale; complexity grows with the cone
    multiplicities.
    """
    if not c.is_pointed():
        raise NotPointed(f"cone with rays {c.rays} is not pointed")
    if not c.rays:
        return FineMonoid(c.rank, ())
    candidates = set(c.rays)
    for simplex in triangulate(c):
        candidates.update(parallelepiped_points(simplex, c.rank))
    candidates.discard((0,) * c.rank)
    irreducible = []
    for x in sorted(candidates):
        reducible = any(
            g != x and not is_zero(sub(x, g)) and c.contains(sub(x, g))
            for g in candidates
        )
        if not reducible:
            irreducible.append(x)
    return FineMonoid(c.rank, tuple(irreducible))


def monoid_of_cone(gens: tuple[Vec, ...], rank: int) -> tuple[Vec, ...]:
    """Generators of cone(gens) intersected with Z^rank, lineality allowed.

    The lineality sublattice contributes a basis with both signs; the
    pointed image contributes lifts of its Hilbert basis.
    """
    from .lattice import primitive as prim
    from .lattice import saturation_basis

    gens = tuple(sorted({prim(g) for g in gens if not is_zero(vec(g))}))
    if not gens:
        return ()
    cone = Cone(rank, gens)
    lin_members = [g for g in cone.rays if cone.contains(neg(g))]
    if not lin_members:
        return hilbert_basis(cone).generators
    lin_basis = saturation_basis(lin_members)
    proj, lift = quotient_projection(mat(lin_basis), rank)
    image = Cone(len(proj), tuple(mat_vec(proj, g) for g in cone.rays))
    hb = hilbert_basis(image)
    out = [mat_vec(lift, h) for h in hb.generators]
    for b in lin_basis:
        out.append(b)
        out.append(neg(b))
    return tuple(sorted(set(out)))


@lru_cache(maxsize=None)
def saturate(p: FineMonoid) -> FineMonoid:
    """The saturation: cone(p) intersected with the group of p."""
    if not p.generators:
        return p
    basis = span_basis(p.generators)
    coords = tuple(coordinates_in_span(basis, g) for g in p.generators)
    s = len(basis)
    sat_gens = monoid_of_cone(coords, s)
    back = transpose(basis)
    mapped = tuple(mat_vec(back, g) for g in sat_gens)
    return FineMonoid(p.rank, mapped)


def is_saturated(p: FineMonoid) -> bool:
    sat = saturate(p)
    return all(monoid_contains(p, g) for g in sat.generators)


def quotient(p: FineMonoid, n: FineMonoid) -> FineMonoid:
    """Image of p in the quotient of its group by the group of n.

    Realizes the relation a ~ b iff a + c = b + d with c, d in n.  Raises
    TorsionQuotient when group(p)/group(n) has torsion and NotSubmonoid when
    n's generators are not all in p.
    """
    for g in n.generators:
        if not monoid_contains(p, g):
            raise NotSubmonoid(f"{g} is not in the parent monoid")
    if n.is_trivial():
        return p
    basis = span_basis(p.generators)
    coords_p = [coordinates_in_span(basis, g) for g in p.generators]
    coords_n = [coordinates_in_span(basis, g) for g in n.generators]
    s = len(basis)
    sub_basis = span_basis(coords_n)
    if not is_saturated_lattice(sub_basis):
        raise TorsionQuotient("group(p)/group(n) has torsion")
    if len(sub_basis) == s:
        return FineMonoid(0, ())
    proj, _ = quotient_projection(mat(sub_basis), s)
    return FineMonoid(len(proj), tuple(mat_vec(proj, c) for c in coords_p))


def gp_embedded(p: FineMonoid) -> tuple[FineMonoid, Mat]:
    """Isomorphic copy of p inside coordinates of its own group.

    Returns (p', basis) where basis rows span group(p) and p' lives in
    Z^rank(group); x in p corresponds to its coordinate vector.
    """
    basis = span_basis(p.generators)
    coords = tuple(coordinates_in_span(basis, g) for g in p.generators)
    return FineMonoid(len(basis), coords), mat(basis)


def quotient_hom(p: FineMonoid, n: FineMonoid):
    """The structure map p -> p/n as a MonoidHom.

    The quotient is realized inside ambient/group(n), so group(n) must be
    saturated in the ambient lattice for the projection to be an integer
    matrix; the resulting monoid is isomorphic to quotient(p, n).
    """
    from .homs import MonoidHom

    for g in n.generators:
        if not monoid_contains(p, g):
            raise NotSubmonoid(f"{g} is not in the parent monoid")
    if n.is_trivial():
        ident = tuple(tuple(1 if i == j else 0 for j in range(p.rank)) for i in range(p.rank))
        return MonoidHom(p, p, ident)
    sub_basis = span_basis(n.generators)
    if not is_saturated_lattice(sub_basis):
        raise TorsionQuotient("ambient/group(n) has torsion")
    proj, _ = quotient_projection(mat(sub_basis), p.rank)
    q = FineMonoid(len(proj), tuple(mat_vec(proj, g) for g in p.generators))
    return MonoidHom(p, q, proj)


@lru_cache(maxsize=None)
def cone_of(p: FineMonoid) -> Cone:
    """The cone in the dual lattice whose dual recovers cone(p)."""
    if not is_sharp(p):
        raise NotSharp("cone_of needs a sharp monoid")
    return dual_cone(_gen_cone(p))


# -- element enumeration --------------------------------------------------------


@lru_cache(maxsize=None)
def elements_up_to_degree(p: FineMonoid, bound: int) -> tuple[Vec, ...]:
    """All distinct element values of generator degree <= bound, ordered by
    (minimal degree, colex)."""
    found: dict[Vec, int] = {(0,) * p.rank: 0}
    frontier = [(0,) * p.rank]
    for d in range(1, bound + 1):
        nxt = []
        for x in frontier:
            for g in p.generators:
                y = add(x, g)
                if y not in found:
                    found[y] = d
                    nxt.append(y)
        frontier = nxt
    return tuple(sorted(found, key=lambda v: (found[v], colex_key(v))))


def element_order_key(p: FineMonoid, bound: int):
    elems = elements_up_to_degree(p, bound)
    return {v: i for i, v in enumerate(elems)}
