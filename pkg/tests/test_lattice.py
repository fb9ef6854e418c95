import random

import pytest

from logflatten.errors import NotABasis, NotPrimitive, ZeroVector
from logflatten.lattice import (
    coordinates_in_span,
    determinant,
    dual_basis,
    extend_to_basis,
    hermite_normal_form,
    identity,
    is_saturated_lattice,
    is_zero,
    kernel_basis,
    mat,
    mat_mul,
    mat_vec,
    matrix_rank,
    primitive,
    quotient_projection,
    saturation_basis,
    smith_normal_form,
    solve_integer,
    solve_nonneg,
    span_basis,
    transpose,
    unimodular_inverse,
    vec,
)


def assert_lower_left_hnf(h):
    """Entry-wise shape check: zero rows first, last-nonzero pivots positive,
    pivot columns strictly increasing, entries below a pivot in [0, pivot)."""
    pivots = []
    seen_nonzero = False
    for i, row in enumerate(h):
        nz = [j for j, x in enumerate(row) if x != 0]
        if not nz:
            assert not seen_nonzero, "zero row after a nonzero row"
            continue
        seen_nonzero = True
        p = nz[-1]
        assert row[p] > 0
        if pivots:
            assert p > pivots[-1][1]
        pivots.append((i, p))
    for i, p in pivots:
        for k in range(i + 1, len(h)):
            assert 0 <= h[k][p] < h[i][p]


def test_hnf_identity():
    m = identity(2)
    h, u = hermite_normal_form(m)
    assert h == m
    assert u == identity(2)


def test_hnf_already_in_form():
    m = mat([[2, 0], [0, 3]])
    h, u = hermite_normal_form(m)
    assert h == m
    assert u == identity(2)


def test_hnf_2x2():
    m = mat([[2, 4], [1, 3]])
    h, u = hermite_normal_form(m)
    assert mat_mul(u, m) == h
    assert abs(determinant(u)) == 1
    assert abs(determinant(h)) == 2
    assert_lower_left_hnf(h)


def test_hnf_random_property():
    rng = random.Random(7)
    for _ in range(120):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        m = mat([[rng.randrange(-5, 6) for _ in range(cols)] for _ in range(rows)])
        h, u = hermite_normal_form(m)
        assert mat_mul(u, m) == h
        assert abs(determinant(u)) == 1
        assert_lower_left_hnf(h)


def test_snf_zero():
    m = mat([[0, 0], [0, 0]])
    d, u, v = smith_normal_form(m)
    assert d == m


def test_snf_example():
    m = mat([[2, 0], [0, 3]])
    d, u, v = smith_normal_form(m)
    assert mat_mul(mat_mul(u, m), v) == d
    assert (d[0][0], d[1][1]) == (1, 6)


def test_snf_identity():
    m = identity(3)
    d, u, v = smith_normal_form(m)
    assert d == m


def test_snf_random_property():
    rng = random.Random(11)
    for _ in range(120):
        rows = rng.randrange(1, 4)
        cols = rng.randrange(1, 4)
        m = mat([[rng.randrange(-6, 7) for _ in range(cols)] for _ in range(rows)])
        d, u, v = smith_normal_form(m)
        assert mat_mul(mat_mul(u, m), v) == d
        assert abs(determinant(u)) == 1
        assert abs(determinant(v)) == 1
        diag = [d[i][i] for i in range(min(rows, cols))]
        for i in range(len(diag)):
            for j in range(len(d[i])):
                if j != i:
                    assert d[i][j] == 0
            assert diag[i] >= 0
        for a, b in zip(diag, diag[1:]):
            if a == 0:
                assert b == 0
            else:
                assert b % a == 0


def test_primitive():
    assert primitive(vec([2, 4])) == (1, 2)
    assert primitive(vec([1, 1])) == (1, 1)
    assert primitive(vec([0, -6])) == (0, -1)
    with pytest.raises(ZeroVector):
        primitive(vec([0, 0]))


def test_extend_to_basis_examples():
    assert extend_to_basis((1, 0)) == ((1, 0), (0, 1))
    b = extend_to_basis((1, 1))
    assert b == ((1, 1), (0, 1))
    b = extend_to_basis((2, 3))
    assert b[0] == (2, 3)
    assert abs(determinant(b)) == 1
    with pytest.raises(NotPrimitive):
        extend_to_basis((2, 4))


def test_extend_to_basis_property():
    rng = random.Random(3)
    for _ in range(150):
        n = rng.randrange(1, 5)
        v = tuple(rng.randrange(-6, 7) for _ in range(n))
        if is_zero(v):
            continue
        v = primitive(v)
        b = extend_to_basis(v)
        assert b[0] == v
        assert abs(determinant(b)) == 1


def test_dual_basis_examples():
    assert dual_basis(identity(3)) == identity(3)
    assert dual_basis(((1, 1), (0, 1))) == ((1, 0), (-1, 1))
    assert dual_basis(((1, 0), (1, 1))) == ((1, -1), (0, 1))
    with pytest.raises(NotABasis):
        dual_basis(((2, 0), (0, 1)))


def test_dual_basis_property():
    rng = random.Random(5)
    for _ in range(80):
        n = rng.randrange(1, 4)
        b = [list(row) for row in identity(n)]
        for _ in range(6):
            i, j = rng.randrange(n), rng.randrange(n)
            if i != j:
                c = rng.randrange(-2, 3)
                b[i] = [x + c * y for x, y in zip(b[i], b[j])]
        b = mat(b)
        d = dual_basis(b)
        pairing = tuple(tuple(sum(x * y for x, y in zip(bi, dj)) for dj in d) for bi in b)
        assert pairing == identity(n)


def test_solve_nonneg_examples():
    assert solve_nonneg(identity(2), (1, 2), 2) == (1, 2)
    assert solve_nonneg(mat([[2, 3]]), (1,), 10) is None
    assert solve_nonneg(mat([[2, 3]]), (5,), 10) == (1, 1)


def test_solve_nonneg_agrees_with_enumeration():
    import itertools

    rng = random.Random(13)
    for _ in range(60):
        rows = rng.randrange(1, 3)
        cols = rng.randrange(1, 4)
        bound = rng.randrange(0, 7)
        a = mat([[rng.randrange(-3, 4) for _ in range(cols)] for _ in range(rows)])
        b = vec([rng.randrange(-4, 5) for _ in range(rows)])
        expected = None
        for x in itertools.product(range(bound + 1), repeat=cols):
            if mat_vec(a, x) == b:
                expected = x
                break
        assert solve_nonneg(a, b, bound) == expected


def test_kernel_and_solve():
    a = mat([[1, 2, 3]])
    kb = kernel_basis(a)
    assert len(kb) == 2
    for k in kb:
        assert mat_vec(a, k) == (0,)
    x = solve_integer(a, (6,))
    assert x is not None and mat_vec(a, x) == (6,)
    assert solve_integer(mat([[2]]), (3,)) is None


def test_span_and_saturation():
    b = span_basis([(2, 0), (0, 2)])
    assert matrix_rank(b) == 2
    sat = saturation_basis([(2, 0)])
    assert sat == ((1, 0),)
    assert not is_saturated_lattice([(2, 0)])
    assert is_saturated_lattice([(1, 0), (0, 3), (0, 1)])


def test_quotient_projection():
    proj, lift = quotient_projection(mat([[1, 0]]), 2)
    assert mat_mul(proj, lift) == identity(1)
    assert mat_vec(proj, (1, 0)) == (0,)
    assert mat_vec(proj, (0, 1)) != (0,)
    with pytest.raises(NotABasis):
        quotient_projection(mat([[2, 0]]), 2)


def test_coordinates_in_span():
    b = mat([[1, 1], [0, 2]])
    assert coordinates_in_span(b, (1, 3)) == (1, 1)
    assert coordinates_in_span(b, (0, 1)) is None


def test_unimodular_inverse():
    m = mat([[1, 1], [0, 1]])
    assert mat_mul(m, unimodular_inverse(m)) == identity(2)
    assert transpose(mat([[1, 2], [3, 4]])) == ((1, 3), (2, 4))
