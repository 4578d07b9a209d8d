from itertools import combinations

from ydhalg.abgroup import (FinAbGroup, GroupChar, Subgroup, coset_reps,
                            orthogonality_sum, perp, quotient,
                            smith_normal_form)
from ydhalg.cyclo import CycNum


def all_subgroups(group):
    """Every subgroup, by closing all generator pairs (enough for rank <= 2
    at these orders, and rank-3 order-8 groups are covered by triples)."""
    seen = {}
    elements = group.elements()
    gens_pool = [()]
    gens_pool += [(g,) for g in elements]
    gens_pool += list(combinations(elements, 2))
    if group.rank >= 3:
        gens_pool += list(combinations(elements, 3))
    for gens in gens_pool:
        sub = Subgroup.generated(group, list(gens))
        seen[sub.elements] = sub
    return list(seen.values())


def test_perp_examples():
    g = FinAbGroup([4])
    q = Subgroup(g, [(0,), (2,)], dual=True)
    assert perp(q).elements == ((0,), (2,))
    assert perp(Subgroup.trivial(g, dual=True)).elements \
        == Subgroup.full(g).elements
    assert perp(Subgroup.full(g)).elements == ((0,),)


def test_perp_involution_and_order():
    for factors in ([2], [4], [2, 2], [2, 4], [8]):
        g = FinAbGroup(factors)
        for sub in all_subgroups(g):
            p = perp(sub)
            assert len(sub) * len(p) == g.order
            assert perp(p).elements == sub.elements


def test_perp_brute_force_oracle():
    g = FinAbGroup([2, 4])
    for sub in all_subgroups(g):
        dual_sub = Subgroup(g, sub.elements, dual=True)
        got = perp(dual_sub)
        expected = [x for x in g.elements()
                    if all(g.pairing_exponent(chi, x) == 0
                           for chi in sub.elements)]
        assert list(got.elements) == sorted(expected)


def test_quotient_examples():
    g = FinAbGroup([4])
    q = quotient(Subgroup.full(g), Subgroup(g, [(0,), (2,)]))
    assert q.group.invariant_factors == (2,)
    assert q.project[(1,)] == q.project[(3,)]
    assert q.project[(0,)] == q.group.identity()
    q = quotient(Subgroup.full(g), Subgroup.trivial(g))
    assert q.group.order == 4
    q = quotient(Subgroup.full(g), Subgroup.full(g))
    assert q.group.invariant_factors == ()


def test_quotient_is_homomorphism_with_kernel():
    g = FinAbGroup([2, 4])
    for nsub in all_subgroups(g):
        q = quotient(Subgroup.full(g), nsub)
        assert q.group.order * len(nsub) == g.order
        for a in g.elements():
            for b in g.elements():
                assert q.group.add(q.project[a], q.project[b]) \
                    == q.project[g.add(a, b)]
        kernel = {h for h, c in q.project.items()
                  if c == q.group.identity()}
        assert kernel == set(nsub.elements)


def test_coset_reps_examples():
    g = FinAbGroup([4])
    assert coset_reps(Subgroup(g, [(0,), (2,)])) == [(0,), (1,)]
    assert coset_reps(Subgroup.full(g)) == [(0,)]
    assert coset_reps(Subgroup.trivial(g)) == g.elements()
    # representatives are minimal in canonical order and cover all cosets
    h = Subgroup.generated(g, [(2,)])
    reps = coset_reps(h)
    covered = {frozenset(g.add(r, x) for x in h.elements) for r in reps}
    assert len(covered) == g.order // len(h)


def test_orthogonality_sum():
    g = FinAbGroup([2])
    chi = GroupChar(g, (1,))
    eps = GroupChar(g, (0,))
    assert orthogonality_sum(chi, chi, 4) == CycNum.rational(4, 2)
    assert orthogonality_sum(eps, chi, 4).is_zero()
    trivial = FinAbGroup([])
    assert orthogonality_sum(GroupChar(trivial, ()), GroupChar(trivial, ()),
                             4) == CycNum.one(4)
    # full orthogonality over a larger group
    g = FinAbGroup([2, 4])
    for a in g.elements():
        for b in g.elements():
            s = orthogonality_sum(GroupChar(g, a), GroupChar(g, b), 8)
            if a == b:
                assert s == CycNum.rational(8, g.order)
            else:
                assert s.is_zero()


def test_coefficient_symmetry_exhaustive():
    # |Q-perp| |Q cap T-perp| = |T-perp| |T cap Q-perp| on all subgroup
    # pairs of all abelian groups of order <= 16
    shapes = ([2], [3], [4], [5], [6], [7], [8], [9], [10], [11], [12],
              [13], [14], [15], [16], [2, 2], [2, 4], [2, 6], [2, 8],
              [3, 3], [4, 4], [2, 2, 2], [2, 2, 4])
    for factors in shapes:
        g = FinAbGroup(factors)
        subs = all_subgroups(g)
        for t in subs:
            t_perp = perp(t)
            for q0 in subs:
                q = Subgroup(g, q0.elements, dual=True)
                q_perp = perp(q)
                lhs = len(q_perp) * len(q.intersection(t_perp))
                rhs = len(t_perp) * len(t.intersection(q_perp))
                assert lhs == rhs, (factors, t.elements, q.elements)


def test_quotient_character_bijection():
    # the induced-character map T-perp/(Q cap T-perp) -> characters of
    # Q-perp/(T cap Q-perp) is a bijection, by exhaustion
    for factors in ([2], [4], [2, 2], [2, 4]):
        g = FinAbGroup(factors)
        subs = all_subgroups(g)
        for t in subs:
            for q0 in subs:
                q = Subgroup(g, q0.elements, dual=True)
                t_perp = perp(t)
                q_perp = perp(q)
                gq = quotient(q_perp, t.intersection(q_perp))
                images = {gq.induced_character(chi).exponents
                          for chi in t_perp.elements}
                assert len(images) == len(t_perp) // len(
                    q.intersection(t_perp))
                assert len(images) == gq.group.order


def test_perp_exchanges_intersection_and_product():
    # (Q-perp cap T)-perp = Q * T-perp
    for factors in ([2], [4], [2, 2], [2, 4]):
        g = FinAbGroup(factors)
        subs = all_subgroups(g)
        for t in subs:
            for q0 in subs:
                q = Subgroup(g, q0.elements, dual=True)
                lhs = perp(perp(q).intersection(t))
                rhs = q.join(perp(t))
                assert lhs.elements == rhs.elements


def test_smith_normal_form_properties():
    import random
    rng = random.Random(3)
    for _ in range(80):
        nrows = rng.randrange(1, 5)
        ncols = rng.randrange(1, 5)
        m = [[rng.randrange(-9, 10) for _ in range(ncols)]
             for _ in range(nrows)]
        diag, v = smith_normal_form(m)
        for a, b in zip(diag, diag[1:]):
            assert a == 0 or b % a == 0
        # V is unimodular: integer inverse exists iff det is +-1
        det = _int_det(v)
        assert det in (1, -1)


def _int_det(m):
    n = len(m)
    if n == 0:
        return 1
    m = [row[:] for row in m]
    import fractions
    mat = [[fractions.Fraction(x) for x in row] for row in m]
    det = fractions.Fraction(1)
    for c in range(n):
        piv = None
        for r in range(c, n):
            if mat[r][c] != 0:
                piv = r
                break
        if piv is None:
            return 0
        if piv != c:
            mat[c], mat[piv] = mat[piv], mat[c]
            det = -det
        det *= mat[c][c]
        inv = 1 / mat[c][c]
        for r in range(c + 1, n):
            f = mat[r][c] * inv
            for k in range(c, n):
                mat[r][k] -= f * mat[c][k]
    return det
