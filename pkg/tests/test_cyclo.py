import random
from fractions import Fraction

import pytest

from ydhalg.cyclo import (CycNum, CycPoly, binomial_roots, embed, euler_phi,
                          parse_scalar, render_scalar, root_of_unity,
                          roots_in_field, roots_of_unity_in_field)
from ydhalg.errors import NonDivisibleOrders, ParseError


def rand_cyc(rng, order):
    phi = euler_phi(order)
    return CycNum(order, [Fraction(rng.randrange(-6, 7), rng.randrange(1, 5))
                          for _ in range(phi)])


def test_embed_examples():
    # rational elements map to themselves
    assert embed(2, 4, CycNum.rational(2, -1)) == CycNum.rational(4, -1)
    # identity case
    z4 = CycNum.zeta_pow(4, 1)
    assert embed(4, 4, z4) == z4
    # zeta_4 -> zeta_8^2, whose square reduces to -1 mod the 8th cyclotomic
    img = embed(4, 8, z4)
    assert img == CycNum.zeta_pow(8, 2)
    assert img * img == CycNum.rational(8, -1)
    with pytest.raises(NonDivisibleOrders):
        embed(4, 6, z4)


def test_embed_is_ring_homomorphism():
    rng = random.Random(7)
    for _ in range(40):
        x = rand_cyc(rng, 4)
        y = rand_cyc(rng, 4)
        assert embed(4, 12, x + y) == embed(4, 12, x) + embed(4, 12, y)
        assert embed(4, 12, x * y) == embed(4, 12, x) * embed(4, 12, y)


def test_embed_then_restrict_is_identity():
    rng = random.Random(8)
    for _ in range(20):
        x = rand_cyc(rng, 3)
        up = embed(3, 12, x)
        # restriction: the element must be expressible back; check by
        # re-embedding a solved preimage through linear algebra on the
        # power basis of the small field
        candidates = [embed(3, 12, CycNum(3, [Fraction(1) if i == k else
                                              Fraction(0)
                                              for i in range(euler_phi(3))]))
                      for k in range(euler_phi(3))]
        # up must be an exact rational combination of the embedded basis
        # with the original coefficients
        acc = CycNum.zero(12)
        for c, b in zip(x.coeffs, candidates):
            acc = acc + b * c
        assert acc == up


def test_field_axioms_randomized():
    rng = random.Random(9)
    for order in (1, 2, 3, 4, 8, 12):
        for _ in range(15):
            x, y, z = (rand_cyc(rng, order) for _ in range(3))
            assert (x + y) + z == x + (y + z)
            assert (x * y) * z == x * (y * z)
            assert x * (y + z) == x * y + x * z
            if not x.is_zero():
                assert x * x.inverse() == CycNum.one(order)


def test_root_of_unity_examples():
    assert root_of_unity(2, 4) == CycNum.rational(4, -1)
    assert root_of_unity(1, 12) == CycNum.one(12)
    z = root_of_unity(4, 4)
    assert z ** 2 == CycNum.rational(4, -1)
    assert z ** 4 == CycNum.one(4)
    for k in range(1, 4):
        assert z ** k != CycNum.one(4)
    with pytest.raises(NonDivisibleOrders):
        root_of_unity(5, 12)


def test_roots_in_field_examples():
    one, zero = CycNum.one(4), CycNum.zero(4)
    # x^2 - 1 over Q(zeta_4)
    roots = roots_in_field(CycPoly(4, [CycNum.rational(4, -1), zero, one]))
    assert {str(r) for r, m in roots} == {"1", "-1"}
    assert all(m == 1 for _, m in roots)
    # x^2 + 1 over Q(zeta_4)
    roots = roots_in_field(CycPoly(4, [one, zero, one]))
    assert {str(r) for r, m in roots} == {"z", "-z"}
    # x^2 + 1 over Q(zeta_3): no roots
    one3, zero3 = CycNum.one(3), CycNum.zero(3)
    assert roots_in_field(CycPoly(3, [one3, zero3, one3])) == []


def test_roots_in_field_brute_force_grid():
    # polynomials with pre-constructed roots: agreement with evaluation on
    # the grid of small rationals times roots of unity
    rng = random.Random(10)
    order = 8
    grid = []
    for unit in roots_of_unity_in_field(order, 8):
        for num in range(-3, 4):
            for den in (1, 2, 3):
                grid.append(unit * Fraction(num, den))
    for _ in range(10):
        roots = [grid[rng.randrange(len(grid))] for _ in range(3)]
        poly = CycPoly.from_roots(order, roots)
        found = roots_in_field(poly)
        assert sum(m for _, m in found) == 3
        by_eval = {v.sort_key() for v in grid if poly.evaluate(v).is_zero()}
        assert {r.sort_key() for r, _ in found if r.sort_key() in by_eval} \
            == by_eval
        for r, m in found:
            assert poly.evaluate(r).is_zero()


def test_roots_multiplicity():
    r = CycNum.rational(4, Fraction(2, 3))
    z = CycNum.zeta_pow(4, 1)
    poly = CycPoly.from_roots(4, [r, r, z])
    found = roots_in_field(poly)
    assert {(str(a), m) for a, m in found} == {("2/3", 2), ("z", 1)}


def test_binomial_roots_complete_when_found():
    # x^4 = 1 over Q(zeta_8): exactly the four 4th roots of unity
    c = CycNum.one(8)
    roots = binomial_roots(c, 4)
    assert roots is not None and len(roots) == 4
    for r in roots:
        assert r ** 4 == c
    # x^2 = 2i over Q(zeta_8) defers (irrational modulus) ...
    c = CycNum.zeta_pow(8, 2) * 2
    assert binomial_roots(c, 2) is None
    # ... but the general machinery still finds both roots
    poly = CycPoly(8, [-c, CycNum.zero(8), CycNum.one(8)])
    found = roots_in_field(poly)
    assert len(found) == 2
    for r, _ in found:
        assert r * r == c


def test_scalar_round_trip():
    rng = random.Random(11)
    for order in (1, 2, 4, 8, 12):
        for _ in range(25):
            x = rand_cyc(rng, order)
            assert parse_scalar(render_scalar(x), order) == x
    assert parse_scalar("1/2 - 1/2*z^3", 8) == parse_scalar("1/2-1/2*z^3", 8)
    assert render_scalar(CycNum.zero(12)) == "0"


def test_scalar_parse_errors():
    with pytest.raises(ParseError):
        parse_scalar("1/0", 4)
    with pytest.raises(ParseError):
        parse_scalar("q", 4)
    with pytest.raises(ParseError):
        parse_scalar("1+", 4)


def test_canonical_equality():
    # same value built two ways has identical coefficients
    a = CycNum.zeta_pow(8, 1) ** 5
    b = -CycNum.zeta_pow(8, 1)
    assert a == b and a.coeffs == b.coeffs
