import random
from fractions import Fraction

import pytest

from ydhalg.cyclo import CycNum
from ydhalg.errors import NonSplitField
from ydhalg.exactla import (Mat, Span, Tensor3, algebra_center,
                            block_matrix_units, central_primitive_idempotents,
                            charpoly, determinant, eigenvalues, invert,
                            kernel, rank, solve, split_invariant,
                            tensor_product_vec, trace_form_rank)


def rand_mat(rng, order, n, density=0.7):
    def scalar():
        if rng.random() > density:
            return CycNum.zero(order)
        return CycNum.zeta_pow(order, rng.randrange(order)) \
            * Fraction(rng.randrange(-3, 4), rng.randrange(1, 3))
    return Mat(order, [[scalar() for _ in range(n)] for _ in range(n)])


def test_kernel_examples():
    one, zero = CycNum.one(4), CycNum.zero(4)
    assert kernel(Mat.identity(4, 2)) == []
    assert len(kernel(Mat.zero(4, 2, 2))) == 2
    m = Mat(4, [[one, one], [one, one]])
    basis = kernel(m)
    assert len(basis) == 1
    v = basis[0]
    assert (v[0] + v[1]).is_zero() and not v[0].is_zero()


def test_solve_and_kernel_back_substitution():
    rng = random.Random(5)
    for _ in range(30):
        n = rng.randrange(1, 5)
        m = rand_mat(rng, 4, n)
        for v in kernel(m):
            assert all(x.is_zero() for x in m.apply(v))
        b = m.apply(tuple(CycNum.rational(4, rng.randrange(-2, 3))
                          for _ in range(n)))
        x = solve(m, b)
        assert x is not None and m.apply(x) == tuple(b)


def test_charpoly_and_eigenvalues():
    one, zero = CycNum.one(4), CycNum.zero(4)
    d = Mat(4, [[one, zero], [zero, -one]])
    assert [str(c) for c in charpoly(d).coeffs] == ["-1", "0", "1"]
    assert [(str(v), m) for v, m in eigenvalues(d)] == [("-1", 1), ("1", 1)]
    # monomial fast path: a weighted 3-cycle has eigenvalues the cube roots
    # of the cycle product
    z = CycNum.zeta_pow(12, 1)
    perm = Mat(12, [[CycNum.zero(12)] * 3 for _ in range(3)])
    rows = [[CycNum.zero(12)] * 3 for _ in range(3)]
    rows[1][0] = z ** 3
    rows[2][1] = CycNum.one(12)
    rows[0][2] = CycNum.one(12)
    m = Mat(12, rows)
    eigs = eigenvalues(m)
    assert sum(mult for _, mult in eigs) == 3
    for value, _ in eigs:
        assert value ** 3 == z ** 3


def test_non_split_field():
    # rotation by a primitive 3rd root of unity does not split over Q(i)
    one, zero = CycNum.one(4), CycNum.zero(4)
    m = Mat(4, [[zero, -one], [one, -one]])   # char poly x^2 + x + 1
    with pytest.raises(NonSplitField):
        eigenvalues(m)


def test_split_invariant_examples():
    one, zero = CycNum.one(4), CycNum.zero(4)
    full = [(one, zero), (zero, one)]
    d = Mat(4, [[one, zero], [zero, -one]])
    parts = split_invariant(list(full), [d])
    assert len(parts) == 2 and all(len(p) == 1 for p in parts)
    assert len(split_invariant(list(full), [Mat.identity(4, 2)])) == 1
    swap = Mat(4, [[zero, one], [one, zero]])
    parts = split_invariant(list(full), [swap])
    assert len(parts) == 2
    for p in parts:
        img = swap.apply(p[0])
        assert Span(4, [p[0]]).contains(img)


def test_split_invariant_outputs_are_invariant():
    rng = random.Random(6)
    one, zero = CycNum.one(4), CycNum.zero(4)
    diag_vals = [one, -one, one, CycNum.zeta_pow(4, 1)]
    d = Mat(4, [[diag_vals[i] if i == j else zero for j in range(4)]
                for i in range(4)])
    full = [tuple(one if t == s else zero for t in range(4))
            for s in range(4)]
    parts = split_invariant(full, [d])
    assert sum(len(p) for p in parts) == 4
    for p in parts:
        span = Span(4, p)
        for v in p:
            assert span.contains(d.apply(v))


def test_invert_determinant():
    rng = random.Random(12)
    for _ in range(20):
        n = rng.randrange(1, 4)
        m = rand_mat(rng, 8, n, density=1.0)
        det = determinant(m)
        if det.is_zero():
            continue
        assert (m @ invert(m)).is_identity()


def test_span_incremental():
    one, zero = CycNum.one(4), CycNum.zero(4)
    s = Span(4)
    assert s.add((one, zero, zero))
    assert s.add((one, one, zero))
    assert not s.add((CycNum.rational(4, 2), one, zero))
    assert s.contains((zero, one, zero))
    assert not s.contains((zero, zero, one))
    assert s.dim == 2


def test_semisimple_tools_on_matrix_algebra():
    idx = {(0, 0): 0, (0, 1): 1, (1, 0): 2, (1, 1): 3}
    entries = {}
    for (a, b), p in idx.items():
        for (c, d), q in idx.items():
            if b == c:
                entries[(p, q, idx[(a, d)])] = CycNum.one(4)
    mult = Tensor3(4, 4, entries)
    one, zero = CycNum.one(4), CycNum.zero(4)
    unit = (one, zero, zero, one)
    assert trace_form_rank(mult, 4) == 4
    assert len(algebra_center(mult, 4)) == 1
    blocks = central_primitive_idempotents(mult, unit, 4)
    assert blocks == [unit]
    basis = [tuple(one if t == s else zero for t in range(4))
             for s in range(4)]
    units = block_matrix_units(mult, unit, basis, 4)
    for s in range(2):
        for t in range(2):
            for u in range(2):
                for v in range(2):
                    prod = tensor_product_vec(mult, units[s][t], units[u][v])
                    if t == u:
                        assert prod == units[s][v]
                    else:
                        assert all(x.is_zero() for x in prod)


def test_center_of_commutative_algebra():
    entries = {(i, i, i): CycNum.one(4) for i in range(3)}
    mult = Tensor3(3, 4, entries)
    assert len(algebra_center(mult, 4)) == 3
    assert trace_form_rank(mult, 4) == 3
    one = CycNum.one(4)
    idems = central_primitive_idempotents(mult, (one, one, one), 4)
    assert len(idems) == 3
