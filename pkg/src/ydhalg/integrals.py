"""Two-sided integrals and the divisibility/freeness checks.

The integral element is the solution of the two-sided invariance system,
normalized so the counit takes value 1 on it; its existence with nonzero
counit value certifies semisimplicity (the Maschke direction), which is why
this module needs no Wedderburn machinery.  The integral functional is
computed independently as the trace of the left regular representation and
cross-checked against the functional solved from the dual system.
"""

from fractions import Fraction

from .cyclo import CycNum
from .errors import (NonIntegralRank, NotSemisimple, NotSubcoalgebra,
                     NotUnique, NotUnitalSubalgebra, YdhError)
from .exactla import (Mat, Tensor3, coordinates_in_span, kernel, solve,
                      vec_add, vec_scale, vec_zero)


class IntegralPair:
    """The normalized two-sided integrals: an element of A and a functional
    on A, with counit value 1 and pairing value 1 respectively."""

    __slots__ = ("element", "functional")

    def __init__(self, element, functional):
        self.element = element
        self.functional = functional

    def apply_functional(self, v):
        total = None
        for c, x in zip(self.functional, v):
            if c.is_zero() or x.is_zero():
                continue
            p = c * x
            total = p if total is None else total + p
        if total is None:
            return CycNum.zero(self.element[0].order)
        return total


def _left_ops(algebra):
    d = algebra.dim
    order = algebra.order
    ops = []
    for i in range(d):
        z = CycNum.zero(order)
        rows = [[z] * d for _ in range(d)]
        for j in range(d):
            w = algebra.basis_product(i, j)
            for k in range(d):
                rows[k][j] = w[k]
        ops.append(Mat(order, rows))
    return ops


def _right_ops(algebra):
    d = algebra.dim
    order = algebra.order
    ops = []
    for i in range(d):
        z = CycNum.zero(order)
        rows = [[z] * d for _ in range(d)]
        for j in range(d):
            w = algebra.basis_product(j, i)
            for k in range(d):
                rows[k][j] = w[k]
        ops.append(Mat(order, rows))
    return ops


def compute_integrals(algebra):
    """Solve for the unique normalized two-sided integrals.

    Raises NotSemisimple when the invariance system forces counit value 0,
    NotUnique when the solution space does not have dimension one."""
    d = algebra.dim
    order = algebra.order
    left_ops = _left_ops(algebra)
    right_ops = _right_ops(algebra)
    rows = []
    eye = Mat.identity(order, d)
    for i in range(d):
        for m in (left_ops[i], right_ops[i]):
            shifted = m - eye.scale(algebra.counit[i])
            rows.extend(shifted.rows)
    ker = kernel(Mat(order, rows))
    if len(ker) != 1:
        raise NotUnique(
            "integral space has dimension %d, expected 1" % len(ker))
    lam_vec = ker[0]
    eps = algebra.counit_apply(lam_vec)
    if eps.is_zero():
        raise NotSemisimple(
            "the integral exists only with counit value 0")
    element = vec_scale(eps.inverse(), lam_vec)

    # functional, primary route: trace of the left regular representation
    functional = tuple(left_ops[i].trace() for i in range(d))
    # independent route: the invariance system in the dual algebra
    dual_rows = []
    for i in range(d):
        z = CycNum.zero(order)
        left = [[z] * d for _ in range(d)]
        right = [[z] * d for _ in range(d)]
        for (t, p, q), val in algebra.comult.entries.items():
            if p == i:
                left[t][q] = left[t][q] + val
            if q == i:
                right[t][p] = right[t][p] + val
        unit_i = algebra.unit[i]
        for m in (left, right):
            shifted = Mat(order, m) - Mat.identity(order, d).scale(unit_i)
            dual_rows.extend(shifted.rows)
    dual_ker = kernel(Mat(order, dual_rows))
    if len(dual_ker) != 1:
        raise NotUnique(
            "dual integral space has dimension %d, expected 1" % len(dual_ker))
    pair = IntegralPair(element, functional)
    norm = pair.apply_functional(element)
    if norm != CycNum.one(order):
        raise YdhError("trace functional does not pair to 1 with the "
                       "integral; structure constants are corrupt")
    cand = dual_ker[0]
    scale = None
    for a, b in zip(functional, cand):
        if not b.is_zero():
            scale = a / b
            break
    if scale is None or tuple(vec_scale(scale, cand)) != functional:
        raise YdhError("solved dual integral disagrees with the regular "
                       "representation trace")
    if pair.apply_functional(algebra.unit) != CycNum.rational(order, d):
        raise YdhError("integral functional does not take the dimension "
                       "on the unit")
    return pair


def verify_integral_properties(algebra, pair):
    """The full property list for the normalized integrals; returns a list
    of (name, passed, witness)."""
    a = algebra
    d = a.dim
    order = a.order
    s = a.antipode
    checks = []
    lam = pair.element

    checks.append(("antipode-fixes-integral", s.apply(lam) == tuple(lam), None))

    lam_s = tuple(pair.apply_functional(s.apply(a.basis_vector(i)))
                  for i in range(d))
    checks.append(("functional-antipode-invariant",
                   lam_s == tuple(pair.functional), None))

    dl = a.coproduct(lam)
    st = s.transpose()
    casimir_first = dl @ st       # Lambda_(1) (x) S(Lambda_(2))
    casimir_second = s @ dl       # S(Lambda_(1)) (x) Lambda_(2)
    checks.append(("casimir-forms-agree", casimir_first == casimir_second,
                   None))

    ok, wit = True, None
    for t in range(d):
        b = a.basis_vector(t)
        # lambda(b * Lambda_(1)) S(Lambda_(2))
        acc = vec_zero(order, d)
        for i in range(d):
            for j in range(d):
                c = dl.rows[i][j]
                if c.is_zero():
                    continue
                coeff = pair.apply_functional(a.product(b, a.basis_vector(i)))
                acc = vec_add(acc, vec_scale(
                    c * coeff, s.apply(a.basis_vector(j))))
        if acc != b:
            ok, wit = False, ("left", t)
            break
        # S(Lambda_(1)) lambda(Lambda_(2) * b)
        acc = vec_zero(order, d)
        for i in range(d):
            for j in range(d):
                c = dl.rows[i][j]
                if c.is_zero():
                    continue
                coeff = pair.apply_functional(a.product(a.basis_vector(j), b))
                acc = vec_add(acc, vec_scale(
                    c * coeff, s.apply(a.basis_vector(i))))
        if acc != b:
            ok, wit = False, ("right", t)
            break
    checks.append(("casimir-reconstruction", ok, wit))

    checks.append(("integral-cocommutative", dl == dl.transpose(), None))

    ok, wit = True, None
    for i in range(d):
        for j in range(d):
            ab = pair.apply_functional(a.basis_product(i, j))
            ba = pair.apply_functional(a.basis_product(j, i))
            if ab != ba:
                ok, wit = False, (i, j)
                break
        if not ok:
            break
    checks.append(("functional-cocommutative", ok, wit))
    return checks


def subalgebra_structure(algebra, sub_basis):
    """Coordinates of a unital subalgebra-and-subcoalgebra: returns
    (mult tensor, comult tensor, counit covector) of the substructure.

    Raises NotUnitalSubalgebra / NotSubcoalgebra when the span is not
    closed."""
    order = algebra.order
    m = len(sub_basis)
    bmat = Mat.from_columns(order, list(sub_basis))
    if solve(bmat, algebra.unit) is None:
        raise NotUnitalSubalgebra("the unit is not in the span")
    mult_entries = {}
    for i, u in enumerate(sub_basis):
        for j, v in enumerate(sub_basis):
            w = algebra.product(u, v)
            coords = solve(bmat, w)
            if coords is None:
                raise NotUnitalSubalgebra(
                    "product of basis vectors %d and %d leaves the span"
                    % (i, j))
            for k, c in enumerate(coords):
                if not c.is_zero():
                    mult_entries[(i, j, k)] = c
    comult_entries = {}
    for t, u in enumerate(sub_basis):
        tensor = algebra.coproduct(u)
        # solve tensor = sum C[p][q] b_p (x) b_q in two stages
        stage1 = []
        for col in range(algebra.dim):
            coords = solve(bmat, tuple(tensor.rows[r][col]
                                       for r in range(algebra.dim)))
            if coords is None:
                raise NotSubcoalgebra(
                    "coproduct of sub-basis vector %d leaves the span" % t)
            stage1.append(coords)
        # stage1[col][p] = coefficient of b_p (x) e_col; now solve columns
        for p in range(m):
            coords = solve(bmat, tuple(stage1[col][p]
                                       for col in range(algebra.dim)))
            if coords is None:
                raise NotSubcoalgebra(
                    "coproduct of sub-basis vector %d leaves the span" % t)
            for q, c in enumerate(coords):
                if not c.is_zero():
                    comult_entries[(t, p, q)] = c
    counit = tuple(algebra.counit_apply(u) for u in sub_basis)
    return (Tensor3(m, order, mult_entries), Tensor3(m, order, comult_entries),
            counit)


class _PlainAlgebra:
    """Minimal product/counit view used to reuse the integral solver on a
    substructure."""

    def __init__(self, order, mult, comult, unit_coords, counit):
        self.dim = mult.dim
        self.order = order
        self.mult = mult
        self.comult = comult
        self.unit = unit_coords
        self.counit = counit
        self._prod = {}

    def basis_vector(self, i):
        one, zero = CycNum.one(self.order), CycNum.zero(self.order)
        return tuple(one if t == i else zero for t in range(self.dim))

    def basis_product(self, i, j):
        hit = self._prod.get((i, j))
        if hit is None:
            out = [CycNum.zero(self.order)] * self.dim
            for (a, b, k), val in self.mult.entries.items():
                if a == i and b == j:
                    out[k] = out[k] + val
            hit = tuple(out)
            self._prod[(i, j)] = hit
        return hit

    def counit_apply(self, v):
        total = CycNum.zero(self.order)
        for c, x in zip(self.counit, v):
            if not c.is_zero() and not x.is_zero():
                total = total + c * x
        return total


def check_freeness(algebra, sub_basis, pair=None):
    """Freeness rank of the algebra over a unital subalgebra-and-
    subcoalgebra, certified through the integrals.

    Returns (rank, checks).  The rank is dim(A)/dim(B) as forced by the
    restriction identity; NonIntegralRank signals inconsistent input."""
    order = algebra.order
    m = len(sub_basis)
    if pair is None:
        pair = compute_integrals(algebra)
    mult, comult, counit = subalgebra_structure(algebra, sub_basis)
    bmat = Mat.from_columns(order, list(sub_basis))
    unit_coords = solve(bmat, algebra.unit)
    sub = _PlainAlgebra(order, mult, comult, unit_coords, counit)
    sub_pair = compute_integrals(sub)
    lam_b_in_a = vec_zero(order, algebra.dim)
    for c, v in zip(sub_pair.element, sub_basis):
        if not c.is_zero():
            lam_b_in_a = vec_add(lam_b_in_a, vec_scale(c, v))
    value = pair.apply_functional(lam_b_in_a)
    if not value.is_rational():
        raise NonIntegralRank("freeness rank %s is not rational" % value)
    frac = value.rational_value()
    if frac.denominator != 1 or frac <= 0:
        raise NonIntegralRank("freeness rank %s is not a positive integer"
                              % frac)
    rank = int(frac)
    checks = []
    checks.append(("rank-times-subdimension",
                   rank * m == algebra.dim, (rank, m, algebra.dim)))
    ok, wit = True, None
    scale = CycNum.rational(order, rank)
    for s, v in enumerate(sub_basis):
        lhs = pair.apply_functional(v)
        rhs = scale * sub_pair.apply_functional(sub.basis_vector(s))
        if lhs != rhs:
            ok, wit = False, s
            break
    checks.append(("functional-restriction-scales", ok, wit))
    return rank, checks
