"""The analyzer for commutative semisimple instances: primitive idempotents
and their characters, inertia/isotropy/index data, orbit and ideal
structure, Fourier-transformed orbit elements, character products, the
antipode's interaction with ideals, stability subalgebras, cores, and the
triviality theorem together with the constructive extraction of a trivial
Hopf subalgebra from a cocommutative instance.

Every check below is exact.  Checks are returned as (name, passed, witness)
triples; the named theorem checks must never fail on input that passed the
axiom verifier, and a failure there signals corrupted structure constants
or an implementation bug rather than a property of the example.
"""

from fractions import Fraction
from itertools import combinations
from math import gcd

from .abgroup import Subgroup, coset_reps, perp, quotient
from .cyclo import CycNum
from .errors import (ClosureFailure, DecompositionFailure, EquivalenceViolation,
                     FormulaMismatch, NotCommutative, PreconditionViolated,
                     TheoremViolation, YdhError)
from .exactla import (Mat, Span, coordinates_in_span, in_span, invert, kernel,
                      rank, span_equal, solve, split_invariant, vec_add,
                      vec_is_zero, vec_key, vec_scale, vec_sub, vec_zero)
from .integrals import check_freeness, compute_integrals, subalgebra_structure
from .ydhopf import YDHopfAlgebra, dual_as_left, is_trivial, verify_axioms
from .ydmod import YDModuleStruct, coaction, sigma_pure


class IdempotentRecord:
    """Everything the analysis attaches to one primitive idempotent."""

    __slots__ = ("index", "vector", "character", "inertia", "isotropy",
                 "index_group", "index_value", "orbit", "full_orbit",
                 "stability_set")

    def __init__(self, index, vector, character, inertia, isotropy,
                 index_group, index_value, orbit, full_orbit, stability_set):
        self.index = index
        self.vector = vector
        self.character = character        # covector: character(b_j) per j
        self.inertia = inertia            # T_e, subgroup of G
        self.isotropy = isotropy          # Q_e, subgroup of the characters
        self.index_group = index_group    # FinAbGroup
        self.index_value = index_value
        self.orbit = orbit                # indices, canonical order
        self.full_orbit = full_orbit
        self.stability_set = stability_set


class InstanceAnalysis:
    """Memoized analysis state for one verified commutative semisimple
    instance."""

    def __init__(self, algebra, pair, idempotents, characters, phi_perms,
                 psi_perms, records):
        self.algebra = algebra
        self.pair = pair
        self.idempotents = idempotents    # list of vectors, canonical order
        self.characters = characters      # list of covectors, same order
        self.phi_perms = phi_perms        # dict: group element -> index perm
        self.psi_perms = psi_perms        # dict: character -> index perm
        self.records = records
        self._dual = None
        self._smash = None
        self._s_inverse = None
        self._coactions = None
        self._left_ops = None
        self._mod_ops = {}

    @property
    def dim(self):
        return self.algebra.dim

    @property
    def order(self):
        return self.algebra.order

    @property
    def group(self):
        return self.algebra.group

    def dual(self):
        if self._dual is None:
            self._dual = dual_as_left(self.algebra)
        return self._dual

    def antipode_inverse(self):
        if self._s_inverse is None:
            self._s_inverse = invert(self.algebra.antipode)
        return self._s_inverse

    def basis_coactions(self):
        if self._coactions is None:
            self._coactions = [coaction(self.algebra.module,
                                        self.algebra.basis_vector(t))
                               for t in range(self.dim)]
        return self._coactions

    def left_ops(self):
        if self._left_ops is None:
            d = self.dim
            z = CycNum.zero(self.order)
            mats = [[[z] * d for _ in range(d)] for _ in range(d)]
            for (i, j, k), val in self.algebra.mult.entries.items():
                mats[i][k][j] = mats[i][k][j] + val
            self._left_ops = [Mat(self.order, m) for m in mats]
        return self._left_ops

    def module_operator(self, i, j, f_idx):
        """The operator b -> (e_i (x) e_j).b of the tensor-square module
        structure twisted by the character of idempotent f_idx, memoized."""
        hit = self._mod_ops.get((i, j, f_idx))
        if hit is None:
            a = self.algebra
            eta_f = self.characters[f_idx]
            kappa = Mat.zero(self.order, self.dim, self.dim)
            for g, comp in self.basis_coactions()[j]:
                weight = _pair_covector(eta_f, comp)
                if not weight.is_zero():
                    kappa = kappa + a.module.phi(g).scale(weight)
            hit = self.left_ops()[i] @ kappa
            self._mod_ops[(i, j, f_idx)] = hit
        return hit

    def integral_index(self):
        """Index of the integral among the primitive idempotents."""
        for i, e in enumerate(self.idempotents):
            if e == tuple(self.pair.element):
                return i
        raise YdhError("the integral is not a primitive idempotent")

    def character_index(self, covector):
        for i, c in enumerate(self.characters):
            if tuple(c) == tuple(covector):
                return i
        return None

    # -- character-side helpers (products in the dual algebra)

    def char_product(self, f, g):
        """Product of two covectors in the dual algebra."""
        out = [CycNum.zero(self.order)] * self.dim
        for (t, i, j), val in self.algebra.comult.entries.items():
            if not f[i].is_zero() and not g[j].is_zero():
                out[t] = out[t] + val * f[i] * g[j]
        return tuple(out)

    def char_phi_star(self, g, f):
        """f composed with the action of g (the dual right action)."""
        m = self.algebra.module.phi(g)
        return tuple(sum_entries(m, f, col) for col in range(self.dim))

    def char_psi_star(self, chi, f):
        m = self.algebra.module.psi(chi)
        return tuple(sum_entries(m, f, col) for col in range(self.dim))

    def char_antipode_star(self, f):
        s = self.algebra.antipode
        return tuple(sum_entries(s, f, col) for col in range(self.dim))

    def char_inverse(self, f):
        """The convolution inverse of a character: composition with the
        antipode."""
        return self.char_antipode_star(f)


def sum_entries(m, f, col):
    total = None
    for k in range(m.nrows):
        c = m.rows[k][col]
        if c.is_zero() or f[k].is_zero():
            continue
        p = f[k] * c
        total = p if total is None else total + p
    if total is None:
        return CycNum.zero(m.order)
    return total


def primitive_idempotents(algebra, pair=None):
    """Full Wedderburn data: the canonical list of primitive idempotents,
    their characters, the permutations induced by both actions, and the
    orbit/stabilizer records of every idempotent.

    Raises NotCommutative for noncommutative input; semisimplicity is
    certified by the integral computation."""
    a = algebra
    d = a.dim
    order = a.order
    for i in range(d):
        for j in range(i + 1, d):
            if a.basis_product(i, j) != a.basis_product(j, i):
                raise NotCommutative(
                    "multiplication is not symmetric at %s" % ((i, j),))
    if pair is None:
        pair = compute_integrals(a)
    one, zero = CycNum.one(order), CycNum.zero(order)
    full = [tuple(one if t == s else zero for t in range(d)) for s in range(d)]
    ops = []
    for i in range(d):
        rows = [[zero] * d for _ in range(d)]
        for j in range(d):
            w = a.basis_product(i, j)
            for k in range(d):
                rows[k][j] = w[k]
        ops.append(Mat(order, rows))
    pieces = split_invariant(full, ops)
    if any(len(p) != 1 for p in pieces):
        raise YdhError("commutative semisimple algebra did not split into "
                       "lines; structure constants are corrupt")
    idems = []
    for p in pieces:
        v = p[0]
        vv = a.product(v, v)
        coords = coordinates_in_span([v], vv)
        if coords is None or coords[0].is_zero():
            raise YdhError("eigenvector squared outside its line; "
                           "the algebra is not semisimple")
        idems.append(vec_scale(coords[0].inverse(), v))
    idems.sort(key=vec_key)
    index_of = {vec_key(e): i for i, e in enumerate(idems)}
    # characters: eta_e(b_j) from b_j e = eta_e(b_j) e
    characters = []
    for e in idems:
        row = []
        for j in range(d):
            prod = a.product(a.basis_vector(j), e)
            coords = coordinates_in_span([e], prod)
            if coords is None:
                raise YdhError("basis action does not preserve an "
                               "idempotent line")
            row.append(coords[0])
        characters.append(tuple(row))
    # permutations induced by the actions
    group = a.group
    phi_perms = {}
    psi_perms = {}
    for g in group.elements():
        m = a.module.phi(g)
        perm = []
        for e in idems:
            img = m.apply(e)
            key = vec_key(img)
            if key not in index_of:
                raise YdhError("phi does not permute the idempotents")
            perm.append(index_of[key])
        phi_perms[g] = tuple(perm)
    for chi in group.elements():
        m = a.module.psi(chi)
        perm = []
        for e in idems:
            img = m.apply(e)
            key = vec_key(img)
            if key not in index_of:
                raise YdhError("psi does not permute the idempotents")
            perm.append(index_of[key])
        psi_perms[chi] = tuple(perm)
    records = []
    for i, e in enumerate(idems):
        inertia = Subgroup(group,
                           [g for g in group.elements()
                            if phi_perms[g][i] == i])
        isotropy = Subgroup(group,
                            [chi for chi in group.elements()
                             if psi_perms[chi][i] == i],
                            dual=True)
        q_perp = perp(isotropy)
        quot = quotient(q_perp, inertia.intersection(q_perp))
        orbit = sorted({phi_perms[g][i] for g in q_perp.elements})
        full_orbit = sorted({psi_perms[chi][phi_perms[g][i]]
                             for g in group.elements()
                             for chi in group.elements()})
        records.append(IdempotentRecord(
            i, e, characters[i], inertia, isotropy, quot.group,
            quot.group.order, tuple(orbit), tuple(full_orbit), ()))
    # stability sets need all inertia/isotropy groups first
    for rec in records:
        stab = sorted(j for j, other in enumerate(records)
                      if other.inertia.contains_subgroup(rec.inertia)
                      and other.isotropy.contains_subgroup(rec.isotropy))
        rec.stability_set = tuple(stab)
    analysis = InstanceAnalysis(a, pair, idems, characters, phi_perms,
                                psi_perms, records)
    _basic_invariants(analysis)
    return analysis


def _basic_invariants(analysis):
    """The bookkeeping identities every analysis must satisfy; violations
    are raised, not reported, since downstream results would be garbage."""
    a = analysis.algebra
    d = a.dim
    total = vec_zero(analysis.order, d)
    for e in analysis.idempotents:
        total = vec_add(total, e)
    if total != a.unit:
        raise YdhError("primitive idempotents do not sum to the unit")
    for i, e in enumerate(analysis.idempotents):
        for j, f in enumerate(analysis.idempotents):
            prod = a.product(e, f)
            want = e if i == j else vec_zero(analysis.order, d)
            if prod != want:
                raise YdhError("idempotents are not orthogonal")
    for rec in analysis.records:
        if len(rec.orbit) != rec.index_value:
            raise YdhError("orbit size differs from the index")
        if not set(rec.orbit) <= set(rec.full_orbit) <= set(rec.stability_set):
            raise YdhError("orbit inclusions violated")
        value = analysis.pair.apply_functional(rec.vector)
        if value != CycNum.one(analysis.order):
            raise YdhError("integral functional is not 1 on an idempotent")
    # the two permutation actions commute
    for g, pg in analysis.phi_perms.items():
        for chi, pc in analysis.psi_perms.items():
            if tuple(pg[pc[i]] for i in range(d)) != tuple(
                    pc[pg[i]] for i in range(d)):
                raise YdhError("induced permutations do not commute")


# ---------------------------------------------------------------------------
# integral-based idempotent formulas


def idempotent_from_character(algebra, character, pair):
    """All four integral formulas for the idempotent of a character; they
    must agree exactly (FormulaMismatch otherwise)."""
    a = algebra
    d = a.dim
    order = a.order
    s = a.antipode
    eta = tuple(character)
    eta_inv = tuple(sum_entries(s, eta, col) for col in range(d))
    dl = a.coproduct(pair.element)
    forms = []
    # eta^-1(L_(1)) L_(2)
    v = vec_zero(order, d)
    for i in range(d):
        for j in range(d):
            c = dl.rows[i][j]
            if not c.is_zero():
                v = vec_add(v, vec_scale(c * eta_inv[i], a.basis_vector(j)))
    forms.append(v)
    # eta(L_(1)) S(L_(2))
    v = vec_zero(order, d)
    for i in range(d):
        for j in range(d):
            c = dl.rows[i][j]
            if not c.is_zero():
                v = vec_add(v, vec_scale(c * eta[i], s.apply(a.basis_vector(j))))
    forms.append(v)
    # L_(1) eta^-1(L_(2))
    v = vec_zero(order, d)
    for i in range(d):
        for j in range(d):
            c = dl.rows[i][j]
            if not c.is_zero():
                v = vec_add(v, vec_scale(c * eta_inv[j], a.basis_vector(i)))
    forms.append(v)
    # S(L_(1)) eta(L_(2))
    v = vec_zero(order, d)
    for i in range(d):
        for j in range(d):
            c = dl.rows[i][j]
            if not c.is_zero():
                v = vec_add(v, vec_scale(c * eta[j], s.apply(a.basis_vector(i))))
    forms.append(v)
    for other in forms[1:]:
        if other != forms[0]:
            raise FormulaMismatch(
                "integral idempotent formulas disagree; structure corrupt")
    return forms[0]


def reciprocity_check(analysis):
    """eta_e^-1(e') = eta_{e'}^-1(e) on all ordered idempotent pairs."""
    checks = []
    inv = [analysis.char_inverse(c) for c in analysis.characters]
    ok, wit = True, None
    n = len(analysis.idempotents)
    for i in range(n):
        for j in range(n):
            lhs = _pair_covector(inv[i], analysis.idempotents[j])
            rhs = _pair_covector(inv[j], analysis.idempotents[i])
            if lhs != rhs:
                ok, wit = False, (i, j)
                break
        if not ok:
            break
    checks.append(("reciprocity", ok, wit))
    return checks


def _pair_covector(f, v):
    total = None
    for a, b in zip(f, v):
        if a.is_zero() or b.is_zero():
            continue
        p = a * b
        total = p if total is None else total + p
    if total is None:
        return CycNum.zero(v[0].order)
    return total


# ---------------------------------------------------------------------------
# the pair orbits, Fourier elements, and tensor-square ideals


class PairData:
    """Orbits, ideals and Fourier elements attached to an ordered pair of
    primitive idempotents."""

    def __init__(self, analysis, e_idx, f_idx):
        self.analysis = analysis
        self.e_idx = e_idx
        self.f_idx = f_idx
        rec_e = analysis.records[e_idx]
        rec_f = analysis.records[f_idx]
        group = analysis.group
        self.q_perp = perp(rec_f.isotropy)      # Q_{e'}-perp inside G
        self.t_perp = perp(rec_e.inertia)       # T_e-perp inside the dual
        self.orbit = tuple(sorted({analysis.phi_perms[g][e_idx]
                                   for g in self.q_perp.elements}))
        self.orbit_prime = tuple(sorted({analysis.psi_perms[chi][f_idx]
                                         for chi in self.t_perp.elements}))
        self.m = len(self.orbit)
        self.ideal_basis = [analysis.idempotents[i] for i in self.orbit]
        self.ideal_prime_basis = [analysis.idempotents[i]
                                  for i in self.orbit_prime]

    def w_element(self, chi):
        """The Fourier combination of the orbit of e weighted by chi."""
        analysis = self.analysis
        group = analysis.group
        order = analysis.order
        e = analysis.idempotents[self.e_idx]
        t_e = analysis.records[self.e_idx].inertia
        denom = len(t_e.intersection(self.q_perp))
        acc = vec_zero(order, analysis.dim)
        for g in self.q_perp.elements:
            c = group.char_value(chi, group.neg(g), order)
            acc = vec_add(acc, vec_scale(
                c, analysis.algebra.module.phi(g).apply(e)))
        return vec_scale(CycNum.rational(order, Fraction(1, denom)), acc)

    def u_element(self, g):
        analysis = self.analysis
        group = analysis.group
        order = analysis.order
        f = analysis.idempotents[self.f_idx]
        q_f = analysis.records[self.f_idx].isotropy
        denom = len(q_f.intersection(self.t_perp))
        acc = vec_zero(order, analysis.dim)
        for chi in self.t_perp.elements:
            c = group.char_value(chi, group.neg(g), order)
            acc = vec_add(acc, vec_scale(
                c, analysis.algebra.module.psi(chi).apply(f)))
        return vec_scale(CycNum.rational(order, Fraction(1, denom)), acc)


def w_u_elements(analysis, e_idx, f_idx):
    """The w and u Fourier elements for the ordered pair, with the full
    property lists verified; returns (w map, u map, checks)."""
    data = PairData(analysis, e_idx, f_idx)
    a = analysis.algebra
    group = analysis.group
    order = analysis.order
    rec_e = analysis.records[e_idx]
    rec_f = analysis.records[f_idx]
    checks = []
    w = {chi: data.w_element(chi) for chi in group.elements()}
    u = {g: data.u_element(g) for g in group.elements()}
    m = data.m
    checks.append(("orbits-same-size", m == len(data.orbit_prime),
                   (m, len(data.orbit_prime))))

    ok, wit = True, None
    for g in data.q_perp.elements:
        for chi in group.elements():
            lhs = a.module.phi(g).apply(w[chi])
            rhs = vec_scale(group.char_value(chi, g, order), w[chi])
            if lhs != tuple(rhs):
                ok, wit = False, (g, chi)
                break
        if not ok:
            break
    checks.append(("w-eigenvector", ok, wit))

    q_f = rec_f.isotropy
    ok, wit = True, None
    for chi in group.elements():
        for q in q_f.elements:
            if w[chi] != w[group.add(chi, q)]:
                ok, wit = False, (chi, q)
                break
        if not ok:
            break
    checks.append(("w-coset-constant", ok, wit))

    support = Subgroup(group, rec_f.isotropy.elements, dual=True).join(
        Subgroup(group, data.t_perp.elements, dual=True))
    ok, wit = True, None
    for chi in group.elements():
        inside = chi in support
        if inside and _pair_covector(analysis.characters[e_idx], w[chi]) \
                != CycNum.one(order):
            ok, wit = False, ("value", chi)
            break
        if not inside and not vec_is_zero(w[chi]):
            ok, wit = False, ("support", chi)
            break
    checks.append(("w-support-and-value", ok, wit))

    t_cap = rec_e.inertia.intersection(data.q_perp)
    reps_g = coset_reps(t_cap, ambient=data.q_perp)
    ok, wit = True, None
    for chi in support.elements:
        acc = vec_zero(order, analysis.dim)
        for g in reps_g:
            acc = vec_add(acc, vec_scale(
                group.char_value(chi, group.neg(g), order),
                a.module.phi(g).apply(analysis.idempotents[e_idx])))
        if tuple(acc) != w[chi]:
            ok, wit = False, chi
            break
    checks.append(("w-representative-formula", ok, wit))

    q_cap = rec_f.isotropy.intersection(data.t_perp)
    reps_chi = coset_reps(q_cap, ambient=data.t_perp)
    checks.append(("representative-count", len(reps_g) == m
                   and len(reps_chi) == m, (len(reps_g), len(reps_chi), m)))

    basis_w = [w[chi] for chi in reps_chi]
    span_ok = (len(basis_w) == m
               and rank(Mat(order, basis_w)) == m
               and all(in_span(data.ideal_basis, v) for v in basis_w))
    checks.append(("w-basis-of-ideal", span_ok, None))

    ok, wit = True, None
    inv_m = CycNum.rational(order, Fraction(1, m))
    for g in data.q_perp.elements:
        acc = vec_zero(order, analysis.dim)
        for chi in reps_chi:
            acc = vec_add(acc, vec_scale(group.char_value(chi, g, order),
                                         w[chi]))
        if vec_scale(inv_m, acc) != tuple(
                a.module.phi(g).apply(analysis.idempotents[e_idx])):
            ok, wit = False, g
            break
    checks.append(("w-inversion-formula", ok, wit))

    # mirrored list for the u elements
    ok, wit = True, None
    for chi in data.t_perp.elements:
        for g in group.elements():
            lhs = a.module.psi(chi).apply(u[g])
            rhs = vec_scale(group.char_value(chi, g, order), u[g])
            if lhs != tuple(rhs):
                ok, wit = False, (chi, g)
                break
        if not ok:
            break
    checks.append(("u-eigenvector", ok, wit))

    ok, wit = True, None
    for g in group.elements():
        for t in rec_e.inertia.elements:
            if u[g] != u[group.add(g, t)]:
                ok, wit = False, (g, t)
                break
        if not ok:
            break
    checks.append(("u-coset-constant", ok, wit))

    support_u = rec_e.inertia.join(Subgroup(group, data.q_perp.elements))
    ok, wit = True, None
    for g in group.elements():
        inside = g in support_u
        if inside and _pair_covector(analysis.characters[f_idx], u[g]) \
                != CycNum.one(order):
            ok, wit = False, ("value", g)
            break
        if not inside and not vec_is_zero(u[g]):
            ok, wit = False, ("support", g)
            break
    checks.append(("u-support-and-value", ok, wit))

    ok, wit = True, None
    for g in support_u.elements:
        acc = vec_zero(order, analysis.dim)
        for chi in reps_chi:
            acc = vec_add(acc, vec_scale(
                group.char_value(chi, group.neg(g), order),
                a.module.psi(chi).apply(analysis.idempotents[f_idx])))
        if tuple(acc) != u[g]:
            ok, wit = False, g
            break
    checks.append(("u-representative-formula", ok, wit))

    basis_u = [u[g] for g in reps_g]
    span_ok = (len(basis_u) == m
               and rank(Mat(order, basis_u)) == m
               and all(in_span(data.ideal_prime_basis, v) for v in basis_u))
    checks.append(("u-basis-of-prime-ideal", span_ok, None))

    ok, wit = True, None
    for chi in data.t_perp.elements:
        acc = vec_zero(order, analysis.dim)
        for g in reps_g:
            acc = vec_add(acc, vec_scale(group.char_value(chi, g, order),
                                         u[g]))
        if vec_scale(inv_m, acc) != tuple(
                a.module.psi(chi).apply(analysis.idempotents[f_idx])):
            ok, wit = False, chi
            break
    checks.append(("u-inversion-formula", ok, wit))
    return w, u, checks


# -- tensor-square ideal checks


def _closure_dim(span_basis, ops, order):
    """Dimension of the smallest ops-invariant subspace containing the
    given vectors."""
    span = Span(order)
    frontier = []
    for v in span_basis:
        if span.add(v):
            frontier.append(v)
    while frontier:
        v = frontier.pop()
        for op in ops:
            img = op.apply(v)
            if span.add(img):
                frontier.append(img)
    return span.dim


def _is_simple_module(basis, ops, order):
    """Simplicity via generated-submodule tests on a finite spanning family
    plus the endomorphism-dimension (Schur) criterion."""
    dim = len(basis)
    family = list(basis)
    for a, b in combinations(range(dim), 2):
        family.append(vec_add(basis[a], basis[b]))
    for v in family:
        if vec_is_zero(v):
            continue
        if _closure_dim([v], ops, order) != dim:
            return False, "proper-submodule"
    # restrict operators to the span and compute End
    restricted = []
    bmat = Mat.from_columns(order, list(basis))
    for op in ops:
        cols = [solve(bmat, op.apply(v)) for v in basis]
        if any(c is None for c in cols):
            return False, "not-invariant"
        restricted.append(Mat.from_columns(order, cols))
    rows = []
    z = CycNum.zero(order)
    for op in restricted:
        # X op - op X = 0, unknown X flattened row-major
        for r in range(dim):
            for c in range(dim):
                row = [z] * (dim * dim)
                for k in range(dim):
                    row[r * dim + k] = row[r * dim + k] + op.rows[k][c]
                    row[k * dim + c] = row[k * dim + c] - op.rows[r][k]
                rows.append(row)
    end_dim = len(kernel(Mat(order, rows)))
    if end_dim != 1:
        return False, "endomorphisms %d" % end_dim
    return True, None


def ideal_structure_checks(analysis, e_idx, f_idx):
    """The twisted-tensor-square ideal facts for an ordered idempotent
    pair: coaction support, the u-element interchange law, minimality of
    the left ideal and of the two-sided ideal (including the full-matrix
    rank count), and the simple module structure on the orbit ideal."""
    a = analysis.algebra
    d = a.dim
    order = analysis.order
    group = analysis.group
    data = PairData(analysis, e_idx, f_idx)
    rec_f = analysis.records[f_idx]
    eta_f = analysis.characters[f_idx]
    checks = []

    # coaction support: (id (x) eta')(delta(a)) lands in the span of Q'-perp
    ok, wit = True, None
    q_perp_set = set(data.q_perp.elements)
    for t in range(d):
        for g, comp in coaction(a.module, a.basis_vector(t)):
            weight = _pair_covector(eta_f, comp)
            if not weight.is_zero() and g not in q_perp_set:
                ok, wit = False, (t, g)
                break
        if not ok:
            break
    checks.append(("coaction-support", ok, wit))

    # interchange: (u_g^(1).a) (x) u_g^(2) = phi_g(a) (x) u_g on the ideal
    ok, wit = True, None
    for g in group.elements():
        ug = data.u_element(g)
        co = coaction(a.module, ug)
        for v in data.ideal_basis:
            lhs = Mat.zero(order, d, d)
            for h, comp in co:
                moved = a.module.phi(h).apply(v)
                lhs = lhs + Mat(order, [[x * y for y in comp] for x in moved])
            phi_v = a.module.phi(g).apply(v)
            rhs = Mat(order, [[x * y for y in ug] for x in phi_v])
            if lhs != rhs:
                ok, wit = False, g
                break
        if not ok:
            break
    checks.append(("u-interchange", ok, wit))

    smash = analysis.algebra.smash()
    left_ops = smash.left_ops()
    right_ops = smash.right_ops()

    # the left ideal I (x)hat K e'
    f_vec = analysis.idempotents[f_idx]
    left_ideal = []
    for v in data.ideal_basis:
        left_ideal.append(smash.flatten(
            Mat(order, [[x * y for y in f_vec] for x in v])))
    checks.append(("left-ideal-closed",
                   _closure_dim(left_ideal, left_ops, order)
                   == len(left_ideal), None))
    simple, why = _is_simple_module(left_ideal, left_ops, order)
    checks.append(("left-ideal-minimal", simple, why))

    # the module structure on A (one representation check per character)
    checks.append(("module-structure",) + _module_structure_check(
        analysis, f_idx))

    op_list = [analysis.module_operator(i, j, f_idx)
               for i in range(d) for j in range(d)]
    simple, why = _is_simple_module(data.ideal_basis, op_list, order)
    checks.append(("orbit-ideal-simple", simple, why))

    # the two-sided ideal I (x)hat I'
    two_sided = []
    for v in data.ideal_basis:
        for w in data.ideal_prime_basis:
            two_sided.append(smash.flatten(
                Mat(order, [[x * y for y in w] for x in v])))
    checks.append(("two-sided-ideal-closed",
                   _closure_dim(two_sided, left_ops + right_ops, order)
                   == len(two_sided), None))
    ok = True
    for v in two_sided:
        if _closure_dim([v], left_ops + right_ops, order) != len(two_sided):
            ok = False
            break
    checks.append(("two-sided-ideal-minimal", ok, None))

    # Burnside count: the structure map onto End(I) has full rank m^2
    bmat = Mat.from_columns(order, data.ideal_basis)
    flat_rows = []
    for x in two_sided:
        mat = smash.unflatten(x)
        op = Mat.zero(order, d, d)
        for i in range(d):
            for j in range(d):
                c = mat.rows[i][j]
                if not c.is_zero():
                    op = op + analysis.module_operator(i, j, f_idx).scale(c)
        cols = [solve(bmat, op.apply(v)) for v in data.ideal_basis]
        if any(c is None for c in cols):
            checks.append(("structure-map-rank", False, "not invariant"))
            break
        flat_rows.append([cols[t][s] for t in range(data.m)
                          for s in range(data.m)])
    else:
        checks.append(("structure-map-rank",
                       rank(Mat(order, flat_rows)) == data.m * data.m,
                       rank(Mat(order, flat_rows))))

    # the map a -> a (x) e' intertwines I with the left ideal
    ok, wit = True, None
    for i in range(d):
        for j in range(d):
            op = analysis.module_operator(i, j, f_idx)
            x = smash.flatten(_basis_tensor(a, i, j))
            for v in data.ideal_basis:
                lhs = smash.flatten(Mat(order, [[p * q for q in f_vec]
                                                for p in op.apply(v)]))
                rhs = smash.product(x, smash.flatten(
                    Mat(order, [[p * q for q in f_vec] for p in v])))
                if lhs != tuple(rhs):
                    ok, wit = False, (i, j)
                    break
            if not ok:
                break
        if not ok:
            break
    checks.append(("intertwiner-to-left-ideal", ok, wit))
    return checks


def _module_structure_check(analysis, f_idx):
    """(passed, witness) of the representation property of the twisted
    module structure, computed once per twisting character."""
    hit = getattr(analysis, "_modstruct_cache", None)
    if hit is None:
        hit = {}
        analysis._modstruct_cache = hit
    if f_idx in hit:
        return hit[f_idx]
    a = analysis.algebra
    d = a.dim
    order = analysis.order
    smash = a.smash()
    ok, wit = True, None
    unit_op = Mat.zero(order, d, d)
    smash_unit = a.smash_unit()
    for i in range(d):
        for j in range(d):
            c = smash_unit.rows[i][j]
            if not c.is_zero():
                unit_op = unit_op + analysis.module_operator(
                    i, j, f_idx).scale(c)
    if not unit_op.is_identity():
        ok, wit = False, "unit"
    else:
        table = smash.pair_table()
        for x in range(d * d):
            op_x = analysis.module_operator(x // d, x % d, f_idx)
            for y in range(d * d):
                op_y = analysis.module_operator(y // d, y % d, f_idx)
                lhs = op_x @ op_y
                rhs = Mat.zero(order, d, d)
                for k, val in table.get((x, y), ()):
                    rhs = rhs + analysis.module_operator(
                        k // d, k % d, f_idx).scale(val)
                if lhs != rhs:
                    ok, wit = False, (x, y)
                    break
            if not ok:
                break
    hit[f_idx] = (ok, wit)
    return hit[f_idx]


def _basis_tensor(algebra, i, j):
    d = algebra.dim
    one, zero = CycNum.one(algebra.order), CycNum.zero(algebra.order)
    return Mat(algebra.order,
               [[one if (r == i and c == j) else zero for c in range(d)]
                for r in range(d)])


# ---------------------------------------------------------------------------
# character products


class CharProduct:
    """The decomposition data of a product of two idempotent characters."""

    __slots__ = ("e_idx", "f_idx", "m", "omega_indices", "omegas",
                 "coefficients", "eigenvectors")

    def __init__(self, e_idx, f_idx, m, omega_indices, omegas, coefficients,
                 eigenvectors):
        self.e_idx = e_idx
        self.f_idx = f_idx
        self.m = m
        self.omega_indices = omega_indices
        self.omegas = omegas
        self.coefficients = coefficients
        self.eigenvectors = eigenvectors


def character_product(analysis, e_idx, f_idx):
    """Decompose the orbit ideal of the pair into one-dimensional modules
    along the coproduct; the eigencharacters span the product of the two
    idempotent characters with all-nonzero coefficients.

    Returns (CharProduct, checks)."""
    a = analysis.algebra
    d = a.dim
    order = analysis.order
    data = PairData(analysis, e_idx, f_idx)
    rho = []
    for t in range(d):
        dk = a.coproduct_basis(t)
        op = Mat.zero(order, d, d)
        for i in range(d):
            for j in range(d):
                c = dk.rows[i][j]
                if not c.is_zero():
                    op = op + analysis.module_operator(i, j, f_idx).scale(c)
        rho.append(op)
    pieces = split_invariant(data.ideal_basis, rho)
    if any(len(p) != 1 for p in pieces):
        raise DecompositionFailure(
            "the orbit ideal did not split into lines")
    omegas = []
    omega_indices = []
    eigenvectors = []
    for piece in pieces:
        v = piece[0]
        row = []
        for t in range(d):
            img = rho[t].apply(v)
            coords = coordinates_in_span([v], img)
            if coords is None:
                raise DecompositionFailure("eigenline is not invariant")
            row.append(coords[0])
        omegas.append(tuple(row))
        idx = analysis.character_index(row)
        if idx is None:
            raise DecompositionFailure(
                "an eigencharacter is not an algebra character")
        omega_indices.append(idx)
        eigenvectors.append(v)
    checks = []
    checks.append(("omegas-distinct",
                   len(set(omega_indices)) == len(omega_indices), None))
    checks.append(("omega-count-is-m", len(omegas) == data.m,
                   (len(omegas), data.m)))
    prod = analysis.char_product(analysis.characters[e_idx],
                                 analysis.characters[f_idx])
    coords = coordinates_in_span([tuple(o) for o in omegas], prod)
    full_support = coords is not None and all(not c.is_zero() for c in coords)
    checks.append(("product-expansion-full-support", full_support,
                   None if coords is None else [str(c) for c in coords]))
    # stability statements, checked when their hypotheses hold
    orbit_set = set(data.orbit)
    orbit_prime_set = set(data.orbit_prime)
    omega_set = set(omega_indices)
    ok, wit = True, None
    for chi in data.t_perp.elements:
        if {analysis.psi_perms[chi][i] for i in orbit_set} == orbit_set:
            moved = {analysis.character_index(
                analysis.char_psi_star(chi, analysis.characters[k]))
                for k in omega_set}
            if moved != omega_set:
                ok, wit = False, chi
                break
    checks.append(("omega-psi-stability", ok, wit))
    ok, wit = True, None
    for g in data.q_perp.elements:
        if {analysis.phi_perms[g][i] for i in orbit_prime_set} \
                == orbit_prime_set:
            moved = {analysis.character_index(
                analysis.char_phi_star(g, analysis.characters[k]))
                for k in omega_set}
            if moved != omega_set:
                ok, wit = False, g
                break
    checks.append(("omega-phi-stability", ok, wit))
    # dimension of the span of all pairwise products of orbit characters
    products = []
    for i in data.orbit:
        for j in data.orbit_prime:
            products.append(analysis.char_product(analysis.characters[i],
                                                  analysis.characters[j]))
    checks.append(("product-span-dimension",
                   rank(Mat(order, products)) == data.m, None))
    cp = CharProduct(e_idx, f_idx, data.m, tuple(omega_indices),
                     [tuple(o) for o in omegas],
                     None if coords is None else tuple(coords),
                     eigenvectors)
    return cp, checks


def character_product_criterion(analysis, e_idx, f_idx):
    """The three equivalent characterizations of the product of two
    characters being a character; raises EquivalenceViolation when the
    three conditions disagree."""
    prod = analysis.char_product(analysis.characters[e_idx],
                                 analysis.characters[f_idx])
    cond_char = analysis.character_index(prod) is not None
    rec_e = analysis.records[e_idx]
    rec_f = analysis.records[f_idx]
    q_perp = perp(rec_f.isotropy)
    cond_sub = rec_e.inertia.contains_subgroup(q_perp)
    dual = analysis.dual()
    braid = sigma_pure(dual.module, dual.module,
                       analysis.characters[e_idx],
                       analysis.characters[f_idx])
    flip = Mat(analysis.order,
               [[x * y for y in analysis.characters[e_idx]]
                for x in analysis.characters[f_idx]])
    cond_braid = braid == flip
    if not (cond_char == cond_sub == cond_braid):
        raise EquivalenceViolation(
            "character-product criteria disagree at %s: %s"
            % ((e_idx, f_idx), (cond_char, cond_sub, cond_braid)))
    return cond_char, cond_sub, cond_braid


# ---------------------------------------------------------------------------
# the antipode against ideals and idempotents


def _span_is_ideal(analysis, span_basis):
    a = analysis.algebra
    for t in range(a.dim):
        for v in span_basis:
            if not in_span(span_basis, a.product(a.basis_vector(t), v)):
                return False
    return True


def antipode_ideal_checks(analysis, e_idx, subset_cap=12):
    """The antipode-ideal interaction suite for one idempotent."""
    a = analysis.algebra
    d = a.dim
    order = analysis.order
    group = analysis.group
    rec = analysis.records[e_idx]
    s = a.antipode
    checks = []
    idem_set = {vec_key(e): i for i, e in enumerate(analysis.idempotents)}

    orbit_basis = [analysis.idempotents[i] for i in rec.orbit]
    s_orbit = [s.apply(v) for v in orbit_basis]
    checks.append(("antipode-image-is-ideal",
                   _span_is_ideal(analysis, s_orbit), None))

    # converse minimality: no smaller idempotent-spanned ideal containing e
    # has an antipode image that is an ideal
    ok, wit = True, None
    if d <= subset_cap:
        others = [i for i in range(d) if i != e_idx]
        for size in range(0, len(rec.orbit) - 1):
            for extra in combinations(others, size):
                subset = (e_idx,) + extra
                span = [analysis.idempotents[i] for i in subset]
                image = [s.apply(v) for v in span]
                if _span_is_ideal(analysis, image):
                    ok, wit = False, subset
                    break
            if not ok:
                break
    checks.append(("antipode-minimality", ok, wit))

    # the closure criterion on every idempotent-spanned ideal
    ok, wit = True, None
    if d <= subset_cap:
        for size in range(1, d + 1):
            for subset in combinations(range(d), size):
                sset = set(subset)
                cond_orbit = all(
                    analysis.phi_perms[g][i] in sset
                    for i in subset
                    for g in perp(analysis.records[i].isotropy).elements)
                span = [analysis.idempotents[i] for i in subset]
                image = [s.apply(v) for v in span]
                cond_ideal = _span_is_ideal(analysis, image)
                if cond_orbit != cond_ideal:
                    ok, wit = False, subset
                    break
            if not ok:
                break
    checks.append(("antipode-ideal-criterion", ok, wit))

    # the complement ideal also maps to an ideal
    complement = [analysis.idempotents[i] for i in range(d)
                  if i not in set(rec.orbit)]
    checks.append(("antipode-complement-ideal",
                   (not complement) or _span_is_ideal(
                       analysis, [s.apply(v) for v in complement]), None))

    # orbit symmetry
    psi_orbit = sorted({analysis.psi_perms[chi][e_idx]
                        for chi in perp(rec.inertia).elements})
    checks.append(("orbit-symmetry", tuple(psi_orbit) == rec.orbit,
                   (psi_orbit, rec.orbit)))

    # S^2 stabilizes the orbit ideal, and matches the braided double-dual
    s2 = s @ s
    s2_orbit = [s2.apply(v) for v in orbit_basis]
    checks.append(("antipode-square-stabilizes",
                   span_equal(orbit_basis, s2_orbit), None))
    ok, wit = True, None
    weight = CycNum.rational(order, Fraction(1, group.order))
    for t in range(d):
        acc = vec_zero(order, d)
        for chi in group.elements():
            for g in group.elements():
                c = group.char_value(chi, group.neg(g), order)
                acc = vec_add(acc, vec_scale(c, a.module.phi(g).apply(
                    a.module.psi(chi).apply(a.basis_vector(t)))))
        if s2.apply(a.basis_vector(t)) != tuple(vec_scale(weight, acc)):
            ok, wit = False, t
            break
    checks.append(("antipode-square-ribbon", ok, wit))

    # S(e) primitive iff index 1
    img = s.apply(analysis.idempotents[e_idx])
    is_primitive = vec_key(img) in idem_set
    checks.append(("antipode-primitive-iff-index-one",
                   is_primitive == (rec.index_value == 1),
                   (is_primitive, rec.index_value)))

    # the two permutation actions of Q_e-perp are isomorphic as permutation
    # representations: both regular, equal stabilizers
    q_perp = perp(rec.isotropy)
    s_members = sorted(i for i in range(d)
                       if in_span(s_orbit, analysis.idempotents[i]))
    ok, wit = True, None
    if len(s_members) != len(rec.orbit):
        ok, wit = False, "image orbit size"
    else:
        stab_e = {g for g in q_perp.elements
                  if analysis.phi_perms[g][e_idx] == e_idx}
        for j in s_members:
            stab_j = {g for g in q_perp.elements
                      if analysis.phi_perms[g][j] == j}
            if stab_j != stab_e:
                ok, wit = False, j
                break
        if ok and len(stab_e) * len(rec.orbit) != len(q_perp):
            ok, wit = False, "not regular"
    checks.append(("permutation-representations-isomorphic", ok, wit))
    return checks


# ---------------------------------------------------------------------------
# stability subalgebra and the core


def _restrict_matrix_to_span(mat, basis, order):
    bmat = Mat.from_columns(order, list(basis))
    cols = []
    for v in basis:
        coords = solve(bmat, mat.apply(v))
        if coords is None:
            raise ClosureFailure("span is not stable under a structure map")
        cols.append(coords)
    return Mat.from_columns(order, cols)


def sub_hopf_structure(algebra, basis, label=None):
    """The restriction of every structure map to a closed span, as a new
    algebra over the same group.  Raises ClosureFailure (actions, antipode)
    or the subalgebra errors from the integrals module."""
    order = algebra.order
    mult, comult, counit = subalgebra_structure(algebra, basis)
    bmat = Mat.from_columns(order, list(basis))
    unit_coords = solve(bmat, algebra.unit)
    if unit_coords is None:
        raise ClosureFailure("unit is not in the span")
    phis = [_restrict_matrix_to_span(m, basis, order)
            for m in algebra.module.phi_gens]
    psis = [_restrict_matrix_to_span(m, basis, order)
            for m in algebra.module.psi_gens]
    anti = _restrict_matrix_to_span(algebra.antipode, basis, order)
    module = YDModuleStruct(algebra.group, order, len(basis), phis, psis,
                            algebra.module.side)
    return YDHopfAlgebra(module, mult, unit_coords, comult, counit, anti,
                         label=label)


def stability_subalgebra(analysis, e_idx):
    """The span of the characters whose idempotents dominate e's
    stabilizers, as a Hopf subalgebra of the dual, re-based over the index
    group.  Returns (basis covectors, subalgebra over the dual group,
    re-based subalgebra, checks)."""
    a = analysis.algebra
    order = analysis.order
    rec = analysis.records[e_idx]
    dual = analysis.dual()
    basis = [analysis.characters[j] for j in rec.stability_set]
    checks = []
    # closure under the dual product with witness
    for x in rec.stability_set:
        for y in rec.stability_set:
            prod = analysis.char_product(analysis.characters[x],
                                         analysis.characters[y])
            if not in_span(basis, prod):
                raise ClosureFailure(
                    "character product %s leaves the stability span"
                    % ((x, y),))
    sub = sub_hopf_structure(dual, basis, label="stability(e%d)" % e_idx)
    checks.append(("contains-counit", in_span(basis, dual.unit), None))
    checks.append(("subalgebra-axioms", verify_axioms(sub).passed, None))
    # re-base over the index group: on the dual side the trivially acting
    # pair is (isotropy, inertia)
    dual_group = dual.group
    t_side = Subgroup(dual_group, rec.isotropy.elements)
    q_side = Subgroup(dual_group, rec.inertia.elements, dual=True)
    from .ydhopf import change_group
    rebased = change_group(sub, t_side, q_side)
    checks.append(("rebased-group-size",
                   rebased.group.order == rec.index_value,
                   (rebased.group.order, rec.index_value)))
    checks.append(("rebased-axioms", verify_axioms(rebased).passed, None))
    rank_value, free_checks = check_freeness(dual, basis)
    checks.extend(("freeness:" + n, ok, w) for n, ok, w in free_checks)
    checks.append(("span-dimension-divides",
                   rank_value * len(basis) == a.dim,
                   (rank_value, len(basis), a.dim)))
    if rec.index_value == 1:
        # the characters form a group and the span is trivial
        idx_set = set(rec.stability_set)
        ok = True
        for x in rec.stability_set:
            for y in rec.stability_set:
                prod = analysis.char_product(analysis.characters[x],
                                             analysis.characters[y])
                k = analysis.character_index(prod)
                if k is None or k not in idx_set:
                    ok = False
                    break
            if not ok:
                break
        checks.append(("characters-form-group", ok, None))
        checks.append(("span-trivial", is_trivial(sub)[0], None))
    return basis, sub, rebased, checks


class CoreRecord:
    """The core of an idempotent: the characters spanning the product of
    its character set with that of an antipode-image partner."""

    __slots__ = ("e_idx", "partner_idx", "m", "omega_indices",
                 "freeness_rank")

    def __init__(self, e_idx, partner_idx, m, omega_indices, freeness_rank):
        self.e_idx = e_idx
        self.partner_idx = partner_idx
        self.m = m
        self.omega_indices = omega_indices
        self.freeness_rank = freeness_rank


def core(analysis, e_idx):
    """The core of an idempotent with its full property suite.

    Returns (CoreRecord, checks)."""
    a = analysis.algebra
    d = a.dim
    order = analysis.order
    group = analysis.group
    rec = analysis.records[e_idx]
    s = a.antipode
    checks = []
    orbit_basis = [analysis.idempotents[i] for i in rec.orbit]
    s_orbit = [s.apply(v) for v in orbit_basis]
    partners = sorted(i for i in range(d)
                      if in_span(s_orbit, analysis.idempotents[i]))
    if not partners:
        raise YdhError("antipode image contains no idempotent")
    partner = partners[0]
    cp, cp_checks = character_product(analysis, e_idx, partner)
    checks.extend(("pair:" + n, ok, w) for n, ok, w in cp_checks)
    m = rec.index_value
    checks.append(("core-size-is-index", cp.m == m, (cp.m, m)))

    # equal stabilizers and matching orbits for the partner
    prec = analysis.records[partner]
    checks.append(("partner-same-inertia",
                   prec.inertia.elements == rec.inertia.elements, None))
    checks.append(("partner-same-isotropy",
                   prec.isotropy.elements == rec.isotropy.elements, None))
    checks.append(("partner-orbit-is-image",
                   sorted(prec.orbit) == partners, (prec.orbit, partners)))

    # choice independence
    if len(partners) > 1:
        cp2, _ = character_product(analysis, e_idx, partners[1])
        checks.append(("core-choice-independent",
                       set(cp2.omega_indices) == set(cp.omega_indices),
                       None))
    omega_set = set(cp.omega_indices)
    core_basis = [analysis.characters[k] for k in sorted(omega_set)]

    checks.append(("core-inside-stability",
                   omega_set <= set(rec.stability_set), None))
    ok, wit = True, None
    for chi in perp(rec.inertia).elements:
        moved = {analysis.character_index(
            analysis.char_psi_star(chi, analysis.characters[k]))
            for k in omega_set}
        if moved != omega_set:
            ok, wit = False, chi
            break
    checks.append(("core-psi-stable", ok, wit))
    ok, wit = True, None
    for g in perp(rec.isotropy).elements:
        moved = {analysis.character_index(
            analysis.char_phi_star(g, analysis.characters[k]))
            for k in omega_set}
        if moved != omega_set:
            ok, wit = False, g
            break
    checks.append(("core-phi-stable", ok, wit))

    counit_idx = analysis.character_index(a.counit)
    checks.append(("core-contains-counit", counit_idx in omega_set, None))
    integral_idx = analysis.integral_index()
    checks.append(("counit-is-integral-character",
                   counit_idx == integral_idx, None))
    # the counit eigenline is spanned by S^{-1}(partner)
    s_inv = analysis.antipode_inverse()
    target = s_inv.apply(analysis.idempotents[partner])
    ok = False
    for omega_idx, v in zip(cp.omega_indices, cp.eigenvectors):
        if omega_idx == counit_idx:
            ok = coordinates_in_span([v], target) is not None
    checks.append(("counit-eigenline", ok, None))

    if m > 1:
        ok, wit = True, None
        for k in omega_set:
            if analysis.records[k].index_value >= m:
                ok, wit = False, k
                break
        checks.append(("core-indices-drop", ok, wit))

    # closure under inversion / the dual antipode
    inv_set = {analysis.character_index(analysis.char_inverse(
        analysis.characters[k])) for k in omega_set}
    checks.append(("core-closed-under-inverse", inv_set == omega_set, None))

    # the complements' annihilators multiply back to themselves
    u_e = [analysis.characters[i] for i in rec.orbit]
    u_p = [analysis.characters[i] for i in prec.orbit]
    ok, wit = True, None
    for k in sorted(omega_set):
        omega = analysis.characters[k]
        left = [analysis.char_product(omega, f) for f in u_e]
        right = [analysis.char_product(f, omega) for f in u_e]
        if not (span_equal(u_e, left) and span_equal(u_e, right)):
            ok, wit = False, ("orbit", k)
            break
        left = [analysis.char_product(omega, f) for f in u_p]
        right = [analysis.char_product(f, omega) for f in u_p]
        if not (span_equal(u_p, left) and span_equal(u_p, right)):
            ok, wit = False, ("partner-orbit", k)
            break
    checks.append(("core-multiplies-annihilators", ok, wit))

    # antipode swaps the complement ideals
    j_e = [analysis.idempotents[i] for i in range(d)
           if i not in set(rec.orbit)]
    j_p = [analysis.idempotents[i] for i in range(d)
           if i not in set(prec.orbit)]
    checks.append(("antipode-swaps-complements",
                   span_equal([s.apply(v) for v in j_e], j_p)
                   and span_equal([s.apply(v) for v in j_p], j_e), None))

    # reversed product span agrees
    rev = []
    for i in prec.orbit:
        for j in rec.orbit:
            rev.append(analysis.char_product(analysis.characters[i],
                                             analysis.characters[j]))
    checks.append(("reversed-product-span",
                   span_equal(core_basis, _reduce_span(rev, order)), None))

    # the core is a Hopf subalgebra of the re-based stability algebra
    _, _, rebased, _ = stability_subalgebra(analysis, e_idx)
    stab_basis = [analysis.characters[j] for j in rec.stability_set]
    bmat = Mat.from_columns(order, list(stab_basis))
    core_in_stab = [solve(bmat, c) for c in core_basis]
    if any(c is None for c in core_in_stab):
        raise YdhError("core does not sit inside the stability span")
    sub_core = sub_hopf_structure(rebased, core_in_stab,
                                  label="core(e%d)" % e_idx)
    checks.append(("core-subalgebra-axioms",
                   verify_axioms(sub_core).passed, None))

    # freeness of the dual over the core
    dual = analysis.dual()
    rank_value, free_checks = check_freeness(dual, core_basis)
    checks.extend(("freeness:" + n, ok, w) for n, ok, w in free_checks)
    checks.append(("index-divides-dimension", rank_value * cp.m == d,
                   (rank_value, cp.m, d)))
    record = CoreRecord(e_idx, partner, cp.m, tuple(sorted(omega_set)),
                        rank_value)
    return record, checks


def _reduce_span(vectors, order):
    out = []
    for v in vectors:
        if not in_span(out, v):
            out.append(v)
    return out


# ---------------------------------------------------------------------------
# the triviality theorem and the extraction of a trivial subalgebra


def check_triviality_theorem(analysis):
    """The coprime-dimension triviality theorem plus the proof's set
    identity and the divisibility facts.  A failed assertion raises
    TheoremViolation: this cannot happen on valid input."""
    a = analysis.algebra
    d = a.dim
    group = analysis.group
    checks = []
    coprime = gcd(d, group.order) == 1
    trivial, witness = is_trivial(a)
    if coprime and not trivial:
        raise TheoremViolation(
            "coprime dimension and group order but nontrivial braiding "
            "at %s" % (witness,))
    checks.append(("coprime-implies-trivial",
                   (not coprime) or trivial, witness))
    ok, wit = True, None
    for e_idx in range(d):
        for f_idx in range(d):
            rec_e = analysis.records[e_idx]
            rec_f = analysis.records[f_idx]
            eta_e = analysis.characters[e_idx]
            eta_f = analysis.characters[f_idx]
            eta_e_inv = analysis.char_inverse(eta_e)
            eta_f_inv = analysis.char_inverse(eta_f)
            left = set()
            for g in perp(rec_f.isotropy).elements:
                left.add(tuple(analysis.char_product(
                    eta_e_inv, analysis.char_phi_star(g, eta_e))))
            right = set()
            for chi in perp(rec_e.inertia).elements:
                right.add(tuple(analysis.char_product(
                    analysis.char_psi_star(chi, eta_f), eta_f_inv)))
            if left != right:
                ok, wit = False, (e_idx, f_idx)
                break
        if not ok:
            break
    if not ok:
        raise TheoremViolation("the proof-step set identity fails at %s"
                               % (wit,))
    checks.append(("set-identity", ok, wit))
    ok, wit = True, None
    for rec in analysis.records:
        if group.order % rec.index_value != 0 or d % rec.index_value != 0:
            ok, wit = False, rec.index
            break
    if not ok:
        raise TheoremViolation("an index fails the divisibility facts")
    checks.append(("index-divides-both", ok, wit))
    return checks


class AnalysisOutcome:
    """Everything the full pipeline produces for one instance.

    Axiom failures (the input is not a Yetter-Drinfel'd Hopf algebra) are
    kept separate from theorem failures (valid input on which a theorem
    check failed, which must never happen and indicates corruption or an
    implementation bug)."""

    def __init__(self, algebra):
        self.algebra = algebra
        self.axiom_report = None
        self.trivial = None
        self.trivial_witness = None
        self.integral_pair = None
        self.integral_checks = []
        self.analysis = None
        self.named_checks = []      # flat (name, passed, witness) list
        self.char_product_sizes = None
        self.core_records = []
        self.error = None

    def add(self, prefix, checks):
        for name, ok, wit in checks:
            self.named_checks.append(("%s:%s" % (prefix, name), ok, wit))

    @property
    def axioms_passed(self):
        return self.axiom_report is not None and self.axiom_report.passed

    @property
    def theorems_passed(self):
        return (self.error is None
                and all(ok for _, ok, _ in self.named_checks))

    @property
    def passed(self):
        return self.axioms_passed and self.theorems_passed

    def theorem_failures(self):
        return [(n, w) for n, ok, w in self.named_checks if not ok]


def analyze(algebra, tensor_ideals=False, subset_cap=12):
    """The complete pipeline: axioms, triviality, integrals, idempotent
    analysis, per-pair and per-idempotent section suites, the triviality
    theorem, and optionally the tensor-square ideal checks."""
    out = AnalysisOutcome(algebra)
    out.axiom_report = verify_axioms(algebra)
    if not out.axiom_report.passed:
        return out
    out.trivial, out.trivial_witness = is_trivial(algebra)
    try:
        analysis = primitive_idempotents(algebra)
        out.analysis = analysis
        out.integral_pair = analysis.pair
        from .integrals import verify_integral_properties
        out.integral_checks = verify_integral_properties(algebra,
                                                         analysis.pair)
        out.add("integrals", out.integral_checks)
        ok = True
        for rec in analysis.records:
            e = idempotent_from_character(algebra, rec.character,
                                          analysis.pair)
            if e != rec.vector:
                ok = False
                break
        out.named_checks.append(("idempotent-formulas", ok, None))
        out.add("", reciprocity_check(analysis))
        d = algebra.dim
        sizes = [[0] * d for _ in range(d)]
        for i in range(d):
            for j in range(d):
                _w, _u, checks = w_u_elements(analysis, i, j)
                out.add("wu(%d,%d)" % (i, j), checks)
                cp, checks = character_product(analysis, i, j)
                sizes[i][j] = cp.m
                out.add("charprod(%d,%d)" % (i, j), checks)
                character_product_criterion(analysis, i, j)
        out.char_product_sizes = sizes
        out.named_checks.append(("criterion-equivalences", True, None))
        for i in range(d):
            out.add("antipode(%d)" % i,
                    antipode_ideal_checks(analysis, i, subset_cap))
            _b, _s, _r, checks = stability_subalgebra(analysis, i)
            out.add("stability(%d)" % i, checks)
            record, checks = core(analysis, i)
            out.core_records.append(record)
            out.add("core(%d)" % i, checks)
        out.add("theorem", check_triviality_theorem(analysis))
        if tensor_ideals:
            for i in range(d):
                for j in range(d):
                    out.add("ideals(%d,%d)" % (i, j),
                            ideal_structure_checks(analysis, i, j))
    except (TheoremViolation, EquivalenceViolation, FormulaMismatch,
            DecompositionFailure) as err:
        # valid-looking input on which a theorem check failed: keep the
        # report, mark the failure; this is the analyzer's loudest signal
        out.error = err
        out.named_checks.append(
            ("theorem-violation", False, str(err)))
    return out


def find_trivial_subalgebra(algebra):
    """A verified trivial Hopf subalgebra of dimension > 1 inside a
    cocommutative cosemisimple instance of dimension > 1, constructed
    through the analysis of the dual.

    Returns (subalgebra, basis vectors, checks)."""
    a = algebra
    if a.dim <= 1:
        raise PreconditionViolated("dimension must exceed 1")
    for k in range(a.dim):
        dk = a.coproduct_basis(k)
        if dk != dk.transpose():
            raise PreconditionViolated("instance is not cocommutative")
    dual = dual_as_left(a)
    analysis = primitive_idempotents(dual)
    integral_idx = analysis.integral_index()
    candidates = [rec for rec in analysis.records
                  if rec.index_value == 1 and rec.index != integral_idx]
    if candidates:
        chosen = candidates[0].index
    else:
        by_index = sorted((rec.index_value, rec.index)
                          for rec in analysis.records
                          if rec.index_value > 1)
        if not by_index:
            raise PreconditionViolated(
                "every idempotent is the integral; dimension 1")
        base = by_index[0][1]
        record, _ = core(analysis, base)
        chosen = None
        for k in record.omega_indices:
            if k != integral_idx:
                if analysis.records[k].index_value != 1:
                    raise TheoremViolation(
                        "core member of minimal-index idempotent has "
                        "index > 1")
                chosen = k
                break
        if chosen is None:
            raise TheoremViolation("core consists only of the counit")
    rec = analysis.records[chosen]
    basis = [analysis.characters[j] for j in rec.stability_set]
    sub = sub_hopf_structure(a, basis,
                             label="trivial part of %s" % (a.label or "A"))
    checks = []
    checks.append(("subalgebra-axioms", verify_axioms(sub).passed, None))
    trivial, wit = is_trivial(sub)
    checks.append(("subalgebra-trivial", trivial, wit))
    checks.append(("dimension-exceeds-one", sub.dim > 1, sub.dim))
    pair = compute_integrals(a)
    rank_value, free_checks = check_freeness(a, basis, pair)
    checks.extend(("freeness:" + n, ok, w) for n, ok, w in free_checks)
    checks.append(("dimension-divides", rank_value * sub.dim == a.dim,
                   (rank_value, sub.dim, a.dim)))
    if not all(ok for _, ok, _ in checks):
        raise TheoremViolation(
            "extracted subalgebra failed verification: %s"
            % [n for n, ok, _ in checks if not ok])
    return sub, basis, checks
