"""Monoid homomorphisms and decision procedures: locality, exactness,
integrality, pushouts.

Integrality is decided two ways.  ``is_integral_bounded`` is the brute-force
oracle: it enumerates every equation h(a1) + b1 = h(a2) + b2 up to a
generator-degree bound and searches witnesses up to twice that bound; its
negative answers are trusted.  ``is_integral`` is the fast path: it reduces
to sharp monoids, computes for every ordered generator pair (q1, q2) the
minimal module generators of {(b1, b2) : h(q1) + b1 = h(q2) + b2} and
decides the witness condition on each generator *exactly* with the
Diophantine solver.  Every fast-path negative is re-validated against the
oracle before being reported.  Whether checking generator pairs suffices in
general is open; a conservative mode downgrades fast-path positives that
the oracle cannot corroborate.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .diophantine import has_nonneg_solution, minimal_nonneg_solutions
from .errors import DimensionMismatch, NotSaturated, NotSubmonoid
from .lattice import (
    Mat,
    Vec,
    add,
    coordinates_in_span,
    identity,
    is_saturated_lattice,
    is_zero,
    mat,
    mat_mul,
    mat_vec,
    neg,
    quotient_projection,
    span_basis,
    sub,
    transpose,
    vec,
)
from .monoids import (
    FineMonoid,
    _units_data,
    colex_key,
    elements_up_to_degree,
    is_saturated,
    monoid_contains,
    monoid_of_cone,
    saturate,
)
from .polyhedra import cone_generators_of_halfspaces

INTEGRAL = "Integral"
NOT_INTEGRAL = "NotIntegral"
INCONCLUSIVE = "InconclusiveAtBound"


@dataclass(frozen=True)
class MonoidHom:
    """Homomorphism induced by an integer matrix on the ambient lattices."""

    source: FineMonoid
    target: FineMonoid
    matrix: Mat

    def __post_init__(self):
        m = mat(self.matrix)
        object.__setattr__(self, "matrix", m)
        if len(m) != self.target.rank or (m and len(m[0]) != self.source.rank):
            raise DimensionMismatch(
                f"matrix is {len(m)}x{len(m[0]) if m else 0}, expected "
                f"{self.target.rank}x{self.source.rank}"
            )
        for g in self.source.generators:
            if not monoid_contains(self.target, mat_vec(m, g)):
                raise NotSubmonoid(f"image of generator {g} is outside the target monoid")

    def apply(self, v) -> Vec:
        return mat_vec(self.matrix, vec(v))


@dataclass(frozen=True)
class IntegralityVerdict:
    status: str
    counterexample: tuple[Vec, Vec, Vec, Vec] | None
    witness_bound: int


def identity_hom(p: FineMonoid) -> MonoidHom:
    return MonoidHom(p, p, identity(p.rank))


def compose(k: MonoidHom, h: MonoidHom) -> MonoidHom:
    """k after h; the middle monoids must agree on the nose."""
    if h.target != k.source:
        raise DimensionMismatch("middle monoids of the composition differ")
    return MonoidHom(h.source, k.target, mat_mul(k.matrix, h.matrix))


def multiplication_map(q: FineMonoid, n: int) -> MonoidHom:
    """The endomorphism x -> n*x."""
    assert n >= 1
    m = tuple(tuple(n if i == j else 0 for j in range(q.rank)) for i in range(q.rank))
    return MonoidHom(q, q, m)


# -- locality and exactness ----------------------------------------------------


def is_local(h: MonoidHom) -> bool:
    """Preimage of target units equals source units (checked on generators;
    the unit set of a fine monoid is the lattice spanned by its invertible
    generators)."""
    src_units = span_basis([g for g in h.source.generators if monoid_contains(h.source, neg(g))])
    tgt_units = span_basis([g for g in h.target.generators if monoid_contains(h.target, neg(g))])
    for g in h.source.generators:
        img_is_unit = coordinates_in_span(tgt_units, h.apply(g)) is not None
        src_is_unit = coordinates_in_span(src_units, g) is not None
        if img_is_unit and not src_is_unit:
            return False
    return True


def is_exact(h: MonoidHom) -> bool:
    """For saturated source and target: the group preimage of the target
    monoid equals the source monoid."""
    if not is_saturated(h.source) or not is_saturated(h.target):
        raise NotSaturated("exactness is only decided for saturated monoids")
    q = h.source
    basis = span_basis(q.generators)
    if not basis:
        return True
    # constraints cutting out {y : M.(basis^T y) in cone(target)}
    tgt_constraints = cone_generators_of_halfspaces(h.target.generators, h.target.rank)
    bt = mat(basis)
    mt = transpose(h.matrix)
    pulled = []
    for c in tgt_constraints:
        pulled.append(mat_vec(bt, mat_vec(mt, c)))
    gens_y = cone_generators_of_halfspaces(tuple(pulled), len(basis))
    preimage_gens = monoid_of_cone(gens_y, len(basis))
    back = transpose(basis)
    for y in preimage_gens:
        x = mat_vec(back, y)
        if not monoid_contains(q, x):
            return False
    return True


# -- bounded integrality oracle --------------------------------------------------


@lru_cache(maxsize=None)
def is_integral_bounded(h: MonoidHom, bound: int) -> IntegralityVerdict:
    """Brute-force semi-decision of the four-element witness criterion.

    Enumerates all (a1, a2, b1, b2) of generator degree <= bound with
    h(a1) + b1 = h(a2) + b2 and searches witnesses over a3 of degree
    <= 2*bound; the remaining components a4 = a1 + a3 - a2 and
    b = b1 - h(a3) are determined by cancellativity and checked by exact
    membership.  Returns the first counterexample in (degree, colex) order,
    else InconclusiveAtBound.  Negative answers are trusted.
    """
    q, p = h.source, h.target
    q_elems = elements_up_to_degree(q, bound)
    p_elems = elements_up_to_degree(p, bound)
    q2_elems = elements_up_to_degree(q, 2 * bound)
    p_set = set(p_elems)

    witness_values: dict[Vec, list[Vec]] = {}

    def h_candidates(delta_q: Vec) -> list[Vec]:
        # images h(a3) over a3 with a4 = a3 - delta_q still in the monoid
        if delta_q not in witness_values:
            vals = []
            seen = set()
            for a3 in q2_elems:
                if monoid_contains(q, sub(a3, delta_q)):
                    v = h.apply(a3)
                    if v not in seen:
                        seen.add(v)
                        vals.append(v)
            witness_values[delta_q] = vals
        return witness_values[delta_q]

    witness_memo: dict[tuple[Vec, Vec], bool] = {}

    def has_witness(delta_q: Vec, b1: Vec) -> bool:
        key = (delta_q, b1)
        if key not in witness_memo:
            witness_memo[key] = any(
                monoid_contains(p, sub(b1, v)) for v in h_candidates(delta_q)
            )
        return witness_memo[key]

    # group equations by a2 - a1; reconstruct the first failure afterwards
    first_fail_by_delta: dict[Vec, int] = {}

    def failing_b1_index(delta_q: Vec) -> int | None:
        if delta_q in first_fail_by_delta:
            idx = first_fail_by_delta[delta_q]
            return idx if idx >= 0 else None
        h_delta = h.apply(delta_q)
        found = -1
        for i, b1 in enumerate(p_elems):
            if sub(b1, h_delta) in p_set and not has_witness(delta_q, b1):
                found = i
                break
        first_fail_by_delta[delta_q] = found
        return found if found >= 0 else None

    best: tuple[int, int, int] | None = None
    best_quad = None
    for i, a1 in enumerate(q_elems):
        if best is not None and best[0] < i:
            break
        for j, a2 in enumerate(q_elems):
            if a1 == a2:
                continue
            if best is not None and (i, j) >= best[:2]:
                continue
            delta_q = sub(a2, a1)
            k = failing_b1_index(delta_q)
            if k is not None:
                b1 = p_elems[k]
                b2 = sub(b1, h.apply(delta_q))
                cand = (i, j, k)
                if best is None or cand < best:
                    best = cand
                    best_quad = (a1, a2, b1, b2)
    if best_quad is not None:
        return IntegralityVerdict(NOT_INTEGRAL, best_quad, 2 * bound)
    return IntegralityVerdict(INCONCLUSIVE, None, 2 * bound)


# -- exact fast path ---------------------------------------------------------------


def _witness_exists(h: MonoidHom, q1: Vec, q2: Vec, b1: Vec) -> bool:
    """Exact decision: do a3, a4 in Q and b in P exist with
    b1 = h(a3) + b, b2 = h(a4) + b and q1 + a3 = q2 + a4?

    With a4 = q1 + a3 - q2 and b = b1 - h(a3) both conditions reduce to a
    nonnegative integer feasibility problem over generator coefficients.
    """
    q, p = h.source, h.target
    kq, kp = len(q.generators), len(p.generators)
    gq_cols = [g for g in q.generators]
    gp_cols = [g for g in p.generators]
    rows = []
    rhs = []
    # target-rank block: h(G_Q e) + G_P c = b1
    for r in range(p.rank):
        row = []
        for g in gq_cols:
            row.append(mat_vec(h.matrix, g)[r])
        row.extend([0] * kq)
        for g in gp_cols:
            row.append(g[r])
        rows.append(tuple(row))
        rhs.append(b1[r])
    # source-rank block: G_Q e - G_Q f = q2 - q1
    diffs = sub(q2, q1)
    for r in range(q.rank):
        row = []
        for g in gq_cols:
            row.append(g[r])
        for g in gq_cols:
            row.append(-g[r])
        row.extend([0] * kp)
        rows.append(tuple(row))
        rhs.append(diffs[r])
    return has_nonneg_solution(tuple(rows), tuple(rhs))


def _module_generators(h: MonoidHom, q1: Vec, q2: Vec):
    """Minimal generators (b1, b2) of the pair module
    {(b1, b2) in P x P : h(q1) + b1 = h(q2) + b2} over the diagonal action."""
    p = h.target
    kp = len(p.generators)
    delta = sub(h.apply(q2), h.apply(q1))
    rows = []
    for r in range(p.rank):
        row = [g[r] for g in p.generators] + [-g[r] for g in p.generators]
        rows.append(tuple(row))
    sols = minimal_nonneg_solutions(tuple(rows), delta)
    out = []
    seen = set()
    for s in sols:
        b1 = [0] * p.rank
        for coeff, g in zip(s[:kp], p.generators):
            for r in range(p.rank):
                b1[r] += coeff * g[r]
        b1 = tuple(b1)
        b2 = sub(b1, delta)
        if (b1, b2) not in seen:
            seen.add((b1, b2))
            out.append((b1, b2))
    return sorted(out, key=lambda t: (colex_key(t[0]), colex_key(t[1])))


def _integral_core(h: MonoidHom):
    """Generator-pair criterion for sharp source and target.

    Returns None when every minimal module generator admits a witness, else
    the first failing quadruple (q1, q2, b1, b2)."""
    gens = h.source.generators
    for q1 in gens:
        for q2 in gens:
            if q1 == q2:
                continue
            for b1, b2 in _module_generators(h, q1, q2):
                if not _witness_exists(h, q1, q2, b1):
                    return (q1, q2, b1, b2)
    return None


@lru_cache(maxsize=None)
def is_integral(h: MonoidHom, oracle_bound: int = 5, conservative: bool = False) -> IntegralityVerdict:
    """Fast-path integrality with oracle cross-validation.

    Reduces to sharp monoids first (the verdict is invariant under that
    reduction), runs the generator-pair module criterion with exact witness
    decisions, and re-validates any counterexample against the bounded
    oracle.  In conservative mode a positive verdict that the oracle
    contradicts is downgraded to InconclusiveAtBound.
    """
    from .monoids import is_sharp

    if is_sharp(h.source) and is_sharp(h.target):
        cex = _integral_core(h)
    else:
        sharp_h, lift_q, lift_p = sharpen_with_lifts(h)
        cex_bar = _integral_core_with_coeffs(sharp_h)
        if cex_bar is None:
            cex = None
        else:
            q1b, q2b, c_vec = cex_bar
            q1 = lift_q[q1b]
            q2 = lift_q[q2b]
            b1 = (0,) * h.target.rank
            for coeff, gbar in zip(c_vec, sharp_h.target.generators):
                b1 = add(b1, tuple(coeff * x for x in lift_p[gbar]))
            b2 = add(b1, sub(h.apply(q1), h.apply(q2)))
            cex = (q1, q2, b1, b2)
    if cex is not None:
        q1, q2, b1, b2 = cex
        assert add(h.apply(q1), b1) == add(h.apply(q2), b2)
        oracle_check = _bounded_witness_search(h, q1, q2, b1, oracle_bound)
        assert not oracle_check, "fast-path counterexample contradicted by the oracle"
        return IntegralityVerdict(NOT_INTEGRAL, cex, 2 * oracle_bound)
    if conservative:
        oracle = is_integral_bounded(h, oracle_bound)
        if oracle.status == NOT_INTEGRAL:
            return IntegralityVerdict(INCONCLUSIVE, oracle.counterexample, 2 * oracle_bound)
    return IntegralityVerdict(INTEGRAL, None, 0)


def _bounded_witness_search(h: MonoidHom, q1: Vec, q2: Vec, b1: Vec, bound: int) -> bool:
    """Oracle-style witness search (a3 up to degree 2*bound) for one equation."""
    delta_q = sub(q2, q1)
    for a3 in elements_up_to_degree(h.source, 2 * bound):
        if monoid_contains(h.source, sub(a3, delta_q)) and monoid_contains(
            h.target, sub(b1, h.apply(a3))
        ):
            return True
    return False


def _integral_core_with_coeffs(h: MonoidHom):
    """Like _integral_core but reports (q1, q2, coefficient vector of b1)."""
    p = h.target
    kp = len(p.generators)
    gens = h.source.generators
    for q1 in gens:
        for q2 in gens:
            if q1 == q2:
                continue
            delta = sub(h.apply(q2), h.apply(q1))
            rows = []
            for r in range(p.rank):
                row = [g[r] for g in p.generators] + [-g[r] for g in p.generators]
                rows.append(tuple(row))
            sols = minimal_nonneg_solutions(tuple(rows), delta)
            pairs = []
            for s in sols:
                b1 = [0] * p.rank
                for coeff, g in zip(s[:kp], p.generators):
                    for r in range(p.rank):
                        b1[r] += coeff * g[r]
                pairs.append((tuple(b1), s[:kp]))
            pairs.sort(key=lambda t: colex_key(t[0]))
            for b1, c_vec in pairs:
                if not _witness_exists(h, q1, q2, b1):
                    return (q1, q2, c_vec)
    return None


def sharpen(h: MonoidHom) -> MonoidHom:
    """The induced map between the sharp quotients by the unit sublattices."""
    return sharpen_with_lifts(h)[0]


def sharpen_with_lifts(h: MonoidHom):
    """Sharpened hom plus generator lift tables (sharp generator -> some
    original generator/element mapping onto it)."""
    _bq, proj_q, lift_q_mat, sharp_q = _units_data(h.source)
    _bp, proj_p, lift_p_mat, sharp_p = _units_data(h.target)
    matrix = mat_mul(proj_p, mat_mul(h.matrix, lift_q_mat))
    if sharp_q.rank == 0:
        matrix = tuple(() for _ in range(sharp_p.rank))
    sharp_h = MonoidHom(sharp_q, sharp_p, matrix)
    lift_q = {}
    for g in h.source.generators:
        img = mat_vec(proj_q, g)
        if not is_zero(img) and img not in lift_q:
            lift_q[img] = g
    lift_p = {}
    for g in h.target.generators:
        img = mat_vec(proj_p, g)
        if not is_zero(img) and img not in lift_p:
            lift_p[img] = g
    return sharp_h, lift_q, lift_p


# -- pushouts ---------------------------------------------------------------------


def pushout_fine(h: MonoidHom, g: MonoidHom):
    """Amalgamated sum in lattices: the image of P + Q' in the quotient of
    the ambient product by the graph sublattice of (h, -g).

    h: Q -> P and g: Q -> Q' must share their source.  Returns the fine
    pushout with the two structure maps (from Q', then from P).
    """
    from .errors import TorsionQuotient

    if h.source != g.source:
        raise DimensionMismatch("pushout legs must share their source monoid")
    p, qp = h.target, g.target
    rp, rq = p.rank, qp.rank
    graph = [tuple(h.apply(x)) + tuple(-c for c in g.apply(x)) for x in h.source.generators]
    graph_basis = span_basis(graph)
    n = rp + rq
    if not graph_basis:
        proj = identity(n)
    else:
        if not is_saturated_lattice(graph_basis):
            raise TorsionQuotient("amalgamated group has torsion")
        proj, _ = quotient_projection(mat(graph_basis), n)
    emb_p = [tuple(x) + (0,) * rq for x in p.generators]
    emb_q = [(0,) * rp + tuple(x) for x in qp.generators]
    po = FineMonoid(len(proj), tuple(mat_vec(proj, v) for v in emb_p + emb_q))
    m_from_p = tuple(row[:rp] for row in proj)
    m_from_q = tuple(row[rp:] for row in proj)
    hom_from_qp = MonoidHom(qp, po, m_from_q)
    hom_from_p = MonoidHom(p, po, m_from_p)
    return po, hom_from_qp, hom_from_p


def pushout_fs(h: MonoidHom, g: MonoidHom):
    """Fine pushout followed by saturation, with the structure maps."""
    po, from_qp, from_p = pushout_fine(h, g)
    sat = saturate(po)
    return sat, MonoidHom(from_qp.source, sat, from_qp.matrix), MonoidHom(
        from_p.source, sat, from_p.matrix
    )
