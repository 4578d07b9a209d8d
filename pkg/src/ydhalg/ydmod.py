"""Yetter-Drinfel'd modules over the group ring of a finite abelian group.

Over K[G] with G finite abelian, a left Yetter-Drinfel'd module is the same
thing as two commuting representations: phi of G (the action) and psi of the
character group (encoding the grading/coaction).  The coaction is recovered
from psi by a finite Fourier sum, and the braiding sigma replaces the flip
of tensor factors:

    sigma(v (x) w) = 1/|G| sum_{chi, g} chi(g^-1) phi_g(w) (x) psi_chi(v)

Right modules use the mirrored formula and are also realized as left modules
over the dual group by exchanging the two representations; that second
description keeps the tensor order and the braiding unchanged, which is how
duals are handled throughout.
"""

from fractions import Fraction

from .abgroup import FinAbGroup, Subgroup, perp, quotient
from .cyclo import CycNum
from .errors import GroupMismatch, MalformedStructure, PreconditionViolated
from .exactla import Mat, vec_add, vec_scale, vec_zero

LEFT = "left"
RIGHT = "right"


class YDModuleStruct:
    """Module data: the group, the cyclotomic order, and one matrix per
    generator for each of the two commuting representations."""

    __slots__ = ("group", "order", "dim", "phi_gens", "psi_gens", "side",
                 "_phi_cache", "_psi_cache")

    def __init__(self, group, order, dim, phi_gens, psi_gens, side=LEFT):
        if order % max(group.exponent, 1) != 0:
            raise MalformedStructure(
                "cyclotomic order %d lacks the %d-th roots of unity"
                % (order, group.exponent))
        phi_gens = tuple(phi_gens)
        psi_gens = tuple(psi_gens)
        if len(phi_gens) != group.rank or len(psi_gens) != group.rank:
            raise MalformedStructure("one action matrix per generator required")
        for m in phi_gens + psi_gens:
            if m.nrows != dim or m.ncols != dim:
                raise MalformedStructure("action matrix is not dim x dim")
            if m.order != order:
                raise MalformedStructure("action matrix has wrong cyclotomic order")
        self.group = group
        self.order = order
        self.dim = dim
        self.phi_gens = phi_gens
        self.psi_gens = psi_gens
        self.side = side
        self._phi_cache = {}
        self._psi_cache = {}

    @staticmethod
    def trivial(group, order, dim, side=LEFT):
        eye = Mat.identity(order, dim)
        return YDModuleStruct(group, order, dim,
                              [eye] * group.rank, [eye] * group.rank, side)

    def _power(self, gens, exponents, cache):
        exponents = self.group.reduce(exponents)
        hit = cache.get(exponents)
        if hit is not None:
            return hit
        m = Mat.identity(self.order, self.dim)
        for g, e in zip(gens, exponents):
            for _ in range(e):
                m = g @ m
        cache[exponents] = m
        return m

    def phi(self, g):
        """Action of the group element g (exponent tuple)."""
        return self._power(self.phi_gens, g, self._phi_cache)

    def psi(self, chi):
        """Action of the character chi (exponent tuple)."""
        return self._power(self.psi_gens, chi, self._psi_cache)

    def same_shape(self, other):
        return (self.group == other.group and self.order == other.order
                and self.side == other.side)

    def structure_failures(self):
        """Representation and commutation defects, as (name, witness) pairs."""
        out = []
        eye = Mat.identity(self.order, self.dim)
        for i, n in enumerate(self.group.invariant_factors):
            m = eye
            for _ in range(n):
                m = self.phi_gens[i] @ m
            if m != eye:
                out.append(("phi-representation", "generator %d" % i))
            m = eye
            for _ in range(n):
                m = self.psi_gens[i] @ m
            if m != eye:
                out.append(("psi-representation", "generator %d" % i))
        gens = list(self.phi_gens) + list(self.psi_gens)
        names = (["phi[%d]" % i for i in range(len(self.phi_gens))]
                 + ["psi[%d]" % i for i in range(len(self.psi_gens))])
        for a in range(len(gens)):
            for b in range(a + 1, len(gens)):
                if gens[a] @ gens[b] != gens[b] @ gens[a]:
                    out.append(("actions-commute",
                                "%s vs %s" % (names[a], names[b])))
        return out


def dual_group(group):
    """The character group, identified with the group itself through the
    fixed pairing (same invariant factors)."""
    return FinAbGroup(group.invariant_factors)


# ---------------------------------------------------------------------------
# coaction and braiding


def coaction(module, v):
    """The coaction of v as a sparse list of (group element, vector) pairs,
    reconstructed from psi; for right modules the pairs read (vector part,
    group part) in the same storage."""
    group = module.group
    order = module.order
    inv_order = CycNum.rational(order, Fraction(1, group.order))
    out = []
    elements = group.elements()
    for g in elements:
        comp = vec_zero(order, module.dim)
        for chi in elements:
            c = group.char_value(chi, group.neg(g), order)
            comp = vec_add(comp, vec_scale(c, module.psi(chi).apply(v)))
        comp = vec_scale(inv_order, comp)
        if not all(x.is_zero() for x in comp):
            out.append((g, comp))
    return out


def coaction_apply_char(module, v, chi):
    """(chi (x) id) applied to the coaction of v; must equal psi_chi(v)."""
    group = module.group
    order = module.order
    total = vec_zero(order, module.dim)
    for g, comp in coaction(module, v):
        total = vec_add(total, vec_scale(group.char_value(chi, g, order), comp))
    return total


def _pure_sigma_sum(vmod, wmod, v, w, chis, gs, weight, inverse):
    """Shared Fourier sum for the braiding variants on a pure tensor."""
    group = vmod.group
    order = vmod.order
    rows = None
    for chi in chis:
        psi_v = vmod.psi(chi).apply(v)
        for g in gs:
            c = group.char_value(chi, g if inverse else group.neg(g), order)
            phi_w = wmod.phi(g).apply(w)
            if inverse:
                first, second = psi_v, phi_w
            else:
                first, second = phi_w, psi_v
            block = [[c * a * b for b in second] for a in first]
            if rows is None:
                rows = block
            else:
                rows = [[x + y for x, y in zip(r1, r2)]
                        for r1, r2 in zip(rows, block)]
    return Mat(order, [[weight * x for x in r] for r in rows])


def sigma_pure(vmod, wmod, v, w):
    """sigma(v (x) w) for a pure tensor, as a Mat over (W, V) for left
    modules and over (W, V) with the mirrored formula for right ones."""
    if vmod.group != wmod.group or vmod.order != wmod.order:
        raise GroupMismatch("braiding needs one group and one cyclotomic order")
    if vmod.side != wmod.side:
        raise GroupMismatch("mixed left/right tensor factors")
    group = vmod.group
    order = vmod.order
    weight = CycNum.rational(order, Fraction(1, group.order))
    elements = group.elements()
    if vmod.side == LEFT:
        return _pure_sigma_sum(vmod, wmod, v, w, elements, elements,
                               weight, inverse=False)
    # right modules: sigma(v (x) w) = 1/|G| sum chi(g^-1) psi_chi(w) (x) phi_g(v);
    # computed as the transpose of the sum with the roles of the two
    # factors exchanged
    return _pure_sigma_sum(wmod, vmod, w, v, elements, elements,
                           weight, inverse=False).transpose()


def sigma(vmod, wmod, tensor):
    """The braiding on a general element of V (x) W given as a Mat
    (rows indexed by V, columns by W); result rows are indexed by W."""
    order = vmod.order
    out = Mat.zero(order, wmod.dim, vmod.dim)
    basis_v = [tuple(CycNum.one(order) if t == s else CycNum.zero(order)
                     for t in range(vmod.dim)) for s in range(vmod.dim)]
    basis_w = [tuple(CycNum.one(order) if t == s else CycNum.zero(order)
                     for t in range(wmod.dim)) for s in range(wmod.dim)]
    for i in range(vmod.dim):
        for j in range(wmod.dim):
            c = tensor.rows[i][j]
            if c.is_zero():
                continue
            out = out + sigma_pure(vmod, wmod, basis_v[i], basis_w[j]).scale(c)
    return out


def sigma_inverse_pure(vmod, wmod, w, v):
    """sigma^{-1}(w (x) v), as a Mat over (V, W)."""
    if vmod.side != wmod.side:
        raise GroupMismatch("mixed left/right tensor factors")
    group = vmod.group
    order = vmod.order
    weight = CycNum.rational(order, Fraction(1, group.order))
    elements = group.elements()
    if vmod.side == LEFT:
        return _pure_sigma_sum(vmod, wmod, v, w, elements, elements,
                               weight, inverse=True)
    return _pure_sigma_sum(wmod, vmod, w, v, elements, elements,
                           weight, inverse=True).transpose()


def sigma_inverse(vmod, wmod, tensor):
    """Inverse braiding on a Mat over (W, V); result over (V, W)."""
    order = vmod.order
    out = Mat.zero(order, vmod.dim, wmod.dim)
    for j in range(wmod.dim):
        for i in range(vmod.dim):
            c = tensor.rows[j][i]
            if c.is_zero():
                continue
            w = tuple(CycNum.one(order) if t == j else CycNum.zero(order)
                      for t in range(wmod.dim))
            v = tuple(CycNum.one(order) if t == i else CycNum.zero(order)
                      for t in range(vmod.dim))
            out = out + sigma_inverse_pure(vmod, wmod, w, v).scale(c)
    return out


def _check_stabilized(module, v, sub, use_psi):
    for x in sub.elements:
        act = module.psi(x) if use_psi else module.phi(x)
        if act.apply(v) != tuple(v):
            return False
    return True


def sigma_refined(vmod, wmod, v, w, t_sub, q_sub):
    """Subgroup-refined braiding for stabilized elements.

    For left modules: psi must fix v on all of q_sub and phi must fix w on
    all of t_sub; the double sum then runs over t_sub-perp and q_sub-perp
    with the reduced coefficient.  The result equals sigma_pure exactly.
    """
    if vmod.side != wmod.side:
        raise GroupMismatch("mixed left/right tensor factors")
    group = vmod.group
    order = vmod.order
    if vmod.side == LEFT:
        if not _check_stabilized(vmod, v, q_sub, use_psi=True):
            raise PreconditionViolated("first factor is not stabilized by Q")
        if not _check_stabilized(wmod, w, t_sub, use_psi=False):
            raise PreconditionViolated("second factor is not stabilized by T")
    else:
        if not _check_stabilized(vmod, v, t_sub, use_psi=False):
            raise PreconditionViolated("first factor is not stabilized by T")
        if not _check_stabilized(wmod, w, q_sub, use_psi=True):
            raise PreconditionViolated("second factor is not stabilized by Q")
    q_perp = perp(q_sub)
    t_perp = perp(t_sub)
    denom = len(q_perp) * len(q_sub.intersection(t_perp))
    weight = CycNum.rational(order, Fraction(1, denom))
    if vmod.side == LEFT:
        return _pure_sigma_sum(vmod, wmod, v, w, t_perp.elements,
                               q_perp.elements, weight, inverse=False)
    return _pure_sigma_sum(wmod, vmod, w, v, t_perp.elements,
                           q_perp.elements, weight, inverse=False).transpose()


def sigma_inverse_refined(vmod, wmod, w, v, t_sub, q_sub):
    group = vmod.group
    order = vmod.order
    if vmod.side == LEFT:
        if not _check_stabilized(vmod, v, q_sub, use_psi=True):
            raise PreconditionViolated("first factor is not stabilized by Q")
        if not _check_stabilized(wmod, w, t_sub, use_psi=False):
            raise PreconditionViolated("second factor is not stabilized by T")
    else:
        if not _check_stabilized(vmod, v, t_sub, use_psi=False):
            raise PreconditionViolated("first factor is not stabilized by T")
        if not _check_stabilized(wmod, w, q_sub, use_psi=True):
            raise PreconditionViolated("second factor is not stabilized by Q")
    q_perp = perp(q_sub)
    t_perp = perp(t_sub)
    denom = len(q_perp) * len(q_sub.intersection(t_perp))
    weight = CycNum.rational(order, Fraction(1, denom))
    if vmod.side == LEFT:
        return _pure_sigma_sum(vmod, wmod, v, w, t_perp.elements,
                               q_perp.elements, weight, inverse=True)
    return _pure_sigma_sum(wmod, vmod, w, v, t_perp.elements,
                           q_perp.elements, weight, inverse=True).transpose()


# ---------------------------------------------------------------------------
# constructions


def tensor(vmod, wmod):
    """Tensor product with diagonal action and codiagonal coaction."""
    if vmod.group != wmod.group or vmod.order != wmod.order:
        raise GroupMismatch("tensor factors live over different groups")
    if vmod.side != wmod.side:
        raise GroupMismatch("mixed left/right tensor factors")
    order = vmod.order
    d = vmod.dim * wmod.dim

    def kron(a, b):
        rows = []
        for i in range(a.nrows):
            for p in range(b.nrows):
                row = []
                for j in range(a.ncols):
                    for q in range(b.ncols):
                        row.append(a.rows[i][j] * b.rows[p][q])
                rows.append(row)
        return Mat(order, rows)

    phis = [kron(x, y) for x, y in zip(vmod.phi_gens, wmod.phi_gens)]
    psis = [kron(x, y) for x, y in zip(vmod.psi_gens, wmod.psi_gens)]
    return YDModuleStruct(vmod.group, order, d, phis, psis, vmod.side)


def dual(module):
    """The dual module: transposed actions on the dual basis, opposite side."""
    side = RIGHT if module.side == LEFT else LEFT
    return YDModuleStruct(module.group, module.order, module.dim,
                          [m.transpose() for m in module.phi_gens],
                          [m.transpose() for m in module.psi_gens],
                          side)


def over_dual(module):
    """Reinterpret over the dual group: phi and psi exchange roles, the side
    flips, and the braiding is unchanged."""
    side = RIGHT if module.side == LEFT else LEFT
    return YDModuleStruct(dual_group(module.group), module.order, module.dim,
                          list(module.psi_gens), list(module.phi_gens), side)


def restrict_group(module, t_sub, q_sub):
    """Factor the structure through G' = Q-perp / (T cap Q-perp) when T and
    Q act trivially.  Returns (module over G', quotient data for the group
    side, quotient data for the character side)."""
    group = module.group
    eye = Mat.identity(module.order, module.dim)
    for g in t_sub.elements:
        if module.phi(g) != eye:
            raise PreconditionViolated("T does not act trivially")
    for chi in q_sub.elements:
        if module.psi(chi) != eye:
            raise PreconditionViolated("Q does not act trivially")
    q_perp = perp(q_sub)  # inside G
    t_perp = perp(t_sub)  # inside the character group
    g_quot = quotient(q_perp, t_sub.intersection(q_perp))
    c_quot = quotient(t_perp, q_sub.intersection(t_perp))
    new_group = g_quot.group
    # phi generators: act by any lift of each new generator
    phis = [module.phi(lift) for lift in g_quot.lifts]
    # psi generators: find a character in T-perp inducing each dual generator
    psis = []
    for k in range(new_group.rank):
        target = tuple(1 if t == k else 0 for t in range(new_group.rank))
        found = None
        for chi in t_perp.elements:
            if g_quot.induced_character(chi).exponents == target:
                found = chi
                break
        if found is None:
            raise PreconditionViolated(
                "no character of the quotient lifts generator %d" % k)
        psis.append(module.psi(found))
    restricted = YDModuleStruct(new_group, module.order, module.dim,
                                phis, psis, module.side)
    return restricted, g_quot, c_quot
