"""Known-trivial instances (group algebras and their duals carried as
Yetter-Drinfel'd Hopf algebras with inert actions) and a constraint search
for nontrivial commutative semisimple instances over small groups.

The search works on the commutative side, where the multiplication is fixed
completely by an idempotent basis: the unknowns are the comultiplication
constants.  A valid comultiplication is an algebra map into the twisted
tensor square, so its basis images form a complete orthogonal system of
idempotents there; candidates are enumerated block by block in the corner
of that algebra away from the counit row and column, and the axiom checker
is the final oracle.
"""

from fractions import Fraction
from itertools import permutations, product
from math import gcd

from .abgroup import FinAbGroup
from .cyclo import CycNum
from .errors import YdhError
from .exactla import (Mat, Tensor3, central_primitive_idempotents,
                      block_matrix_units, coordinates_in_span, _reduce_basis,
                      tensor_product_vec, vec_add, vec_is_zero, vec_key,
                      vec_scale, vec_sub, vec_zero)
from .ydhopf import YDHopfAlgebra, ensure_antipode, is_trivial, verify_axioms
from .ydmod import YDModuleStruct
from .errors import NoAntipode, NotColinear


def _lcm(a, b):
    return a * b // gcd(a, b) if a and b else max(a, b, 1)


GROUP_ALGEBRA = "group_algebra"
DUAL_GROUP_ALGEBRA = "dual_group_algebra"


def trivial_instances(coeff_group, kind, over_group, order=None):
    """The ordinary Hopf algebra K[C] or K^C, viewed as a Yetter-Drinfel'd
    Hopf algebra with trivial action and coaction over `over_group`."""
    c = coeff_group
    g = over_group
    if order is None:
        order = _lcm(max(c.exponent, 1), max(g.exponent, 1))
    elements = c.elements()
    index = {e: i for i, e in enumerate(elements)}
    d = len(elements)
    one = CycNum.one(order)
    zero = CycNum.zero(order)
    inverse_perm = [index[c.neg(e)] for e in elements]
    anti = Mat(order, [[one if inverse_perm[j] == i else zero
                        for j in range(d)] for i in range(d)])
    module = YDModuleStruct.trivial(g, order, d)
    if kind == GROUP_ALGEBRA:
        mult = {}
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                mult[(i, j, index[c.add(a, b)])] = one
        comult = {(k, k, k): one for k in range(d)}
        unit = tuple(one if i == index[c.identity()] else zero
                     for i in range(d))
        counit = tuple(one for _ in range(d))
        label = "K[%s] over %s" % (c, g)
    elif kind == DUAL_GROUP_ALGEBRA:
        mult = {(i, i, i): one for i in range(d)}
        comult = {}
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                comult[(index[c.add(a, b)], i, j)] = one
        unit = tuple(one for _ in range(d))
        counit = tuple(one if i == index[c.identity()] else zero
                       for i in range(d))
        label = "K^%s over %s" % (c, g)
    else:
        raise ValueError("unknown kind %r" % (kind,))
    return YDHopfAlgebra(module, Tensor3(d, order, mult), unit,
                         Tensor3(d, order, comult), counit, anti, label=label)


def standard_catalog():
    """The stock of trivial instances used by the verification suite:
    K[C] and K^C for small C over small base groups."""
    coeff_groups = [FinAbGroup([2]), FinAbGroup([3]), FinAbGroup([4]),
                    FinAbGroup([2, 2]), FinAbGroup([6])]
    base_groups = [FinAbGroup([2]), FinAbGroup([4]), FinAbGroup([2, 2])]
    out = []
    for c in coeff_groups:
        for g in base_groups:
            for kind in (GROUP_ALGEBRA, DUAL_GROUP_ALGEBRA):
                out.append(trivial_instances(c, kind, g))
    return out


# ---------------------------------------------------------------------------
# the search


class BudgetSpec:
    """Scalar budget for enumerated idempotent parameters: Gaussian-style
    grid (a + b*zeta)/q over the root of unity zeta of the given order,
    with |a|, |b| <= max_num and 1 <= q <= max_den."""

    __slots__ = ("max_num", "max_den", "root_order")

    def __init__(self, max_num=2, max_den=4, root_order=4):
        self.max_num = max_num
        self.max_den = max_den
        self.root_order = root_order

    def values(self, order):
        if order % self.root_order != 0:
            raise YdhError("budget root order must divide the field order")
        zeta = CycNum.zeta_pow(order, order // self.root_order)
        seen = {}
        for a in range(-self.max_num, self.max_num + 1):
            for b in range(-self.max_num, self.max_num + 1):
                for q in range(1, self.max_den + 1):
                    x = (CycNum.rational(order, Fraction(a, q))
                         + zeta * Fraction(b, q))
                    seen.setdefault(x.sort_key(), x)
        return [seen[k] for k in sorted(seen)]


class SearchConfig:
    """Configuration of one search run.

    action_ansatz is either None (enumerate every commuting pair of
    permutation actions fixing the counit coordinate) or an explicit list of
    (phi permutations, psi permutations), one permutation per group
    generator, each given as an image tuple."""

    __slots__ = ("group", "dim", "order", "budget", "action_ansatz",
                 "max_candidates", "confirm_prune")

    def __init__(self, group, dim, order=None, budget=None,
                 action_ansatz=None, max_candidates=200000,
                 confirm_prune=False):
        self.group = group
        self.dim = dim
        self.order = order if order is not None else _lcm(group.exponent, 4)
        self.budget = budget or BudgetSpec()
        self.action_ansatz = action_ansatz
        self.max_candidates = max_candidates
        self.confirm_prune = confirm_prune


class SearchOutcome:
    """Verified instances found by the search, plus bookkeeping flags."""

    def __init__(self, instances, pruned, exhausted, candidates_checked):
        self.instances = instances
        self.pruned = pruned
        self.exhausted = exhausted
        self.candidates_checked = candidates_checked

    def nontrivial(self):
        return [a for a, trivial in self.instances if not trivial]


def _permutation_matrices(perm, order):
    d = len(perm)
    one, zero = CycNum.one(order), CycNum.zero(order)
    return Mat(order, [[one if perm[j] == i else zero for j in range(d)]
                       for i in range(d)])


def _perm_order(perm):
    ident = list(range(len(perm)))
    o = 1
    cur = list(perm)
    while cur != ident:
        cur = [perm[x] for x in cur]
        o += 1
    return o


def _action_candidates(group, dim, counit_index):
    """All image tuples usable as one generator's permutation action: order
    divides the generator order, counit coordinate fixed."""
    out = {}
    for n in set(group.invariant_factors):
        cands = []
        for perm in permutations(range(dim)):
            if perm[counit_index] != counit_index:
                continue
            if n % _perm_order(perm) == 0:
                cands.append(tuple(perm))
        out[n] = cands
    return out


def _commuting(perms):
    for a in perms:
        for b in perms:
            if tuple(a[b[i]] for i in range(len(a))) != tuple(
                    b[a[i]] for i in range(len(a))):
                return False
    return True


def _enumerate_ansatz(group, dim, counit_index):
    """All commuting (phi, psi) permutation tuples, canonical order."""
    per_order = _action_candidates(group, dim, counit_index)
    slots = [per_order[n] for n in group.invariant_factors] * 2
    for combo in product(*slots):
        if _commuting(list(combo)):
            r = group.rank
            yield combo[:r], combo[r:]


def _build_instance(group, order, dim, counit_index, phi_perms, psi_perms,
                    comult_entries):
    one = CycNum.one(order)
    module = YDModuleStruct(
        group, order, dim,
        [_permutation_matrices(p, order) for p in phi_perms],
        [_permutation_matrices(p, order) for p in psi_perms])
    mult = Tensor3(dim, order, {(i, i, i): one for i in range(dim)})
    unit = tuple(one for _ in range(dim))
    counit = tuple(one if i == counit_index else CycNum.zero(order)
                   for i in range(dim))
    comult = Tensor3(dim, order, comult_entries)
    return YDHopfAlgebra(module, mult, unit, comult, counit, None)


def _counit_border(dim, counit_index, order):
    """The forced coproduct entries: Delta(e_k) must restrict to
    e_0 (x) e_k + e_k (x) e_0 (+ corner terms) relative to the counit
    coordinate."""
    one = CycNum.one(order)
    border = {}
    for k in range(dim):
        border[(k, counit_index, k)] = one
        if k != counit_index:
            border[(k, k, counit_index)] = one
    return border


class _CornerProblem:
    """The corner of A (x)hat A away from the counit row and column, split
    into blocks, with slot assignment utilities."""

    def __init__(self, algebra, counit_index):
        self.algebra = algebra
        self.d = algebra.dim
        self.order = algebra.order
        self.counit_index = counit_index
        smash = algebra.smash()
        self.smash = smash
        d = self.d
        others = [i for i in range(d) if i != counit_index]
        self.corner_cells = [(i, j) for i in others for j in others]
        self.cell_index = {c: k for k, c in enumerate(self.corner_cells)}
        # corner structure constants (the corner is closed under the smash
        # product and unital)
        entries = {}
        for (x, y, z), val in smash.mult.entries.items():
            cx = (x // d, x % d)
            cy = (y // d, y % d)
            cz = (z // d, z % d)
            if (cx in self.cell_index and cy in self.cell_index
                    and cz in self.cell_index):
                entries[(self.cell_index[cx], self.cell_index[cy],
                         self.cell_index[cz])] = val
        self.mult = Tensor3(len(self.corner_cells), self.order, entries)
        one = CycNum.one(self.order)
        self.unit = tuple(one for _ in self.corner_cells)
        self.blocks = self._split_blocks()

    def _split_blocks(self):
        idems = central_primitive_idempotents(self.mult, self.unit, self.order)
        blocks = []
        for z in idems:
            vectors = []
            for t in range(len(self.corner_cells)):
                e = tuple(CycNum.one(self.order) if s == t else
                          CycNum.zero(self.order)
                          for s in range(len(self.corner_cells)))
                v = tensor_product_vec(self.mult, z, e)
                vectors.append(v)
            basis = _reduce_basis(vectors, self.order)
            blocks.append((z, basis))
        return blocks

    def corner_vec_to_smash(self, v):
        d = self.d
        out = [CycNum.zero(self.order)] * (d * d)
        for val, (i, j) in zip(v, self.corner_cells):
            out[i * d + j] = val
        return tuple(out)


def _compose(p, q):
    return tuple(p[q[i]] for i in range(len(p)))


def _action_group(dim, phi_perms, psi_perms):
    """The permutation group on basis slots generated by both actions."""
    ident = tuple(range(dim))
    seen = {ident}
    frontier = [ident]
    gens = [tuple(p) for p in phi_perms] + [tuple(p) for p in psi_perms]
    while frontier:
        u = frontier.pop()
        for g in gens:
            v = _compose(g, u)
            if v not in seen:
                seen.add(v)
                frontier.append(v)
    return sorted(seen)


def _rank_one_idempotents(units, budget_values, order):
    """Budgeted rank-1 idempotents of an M_2 block given its matrix units,
    as ambient vectors; (a, b, c) ranges over the budget with bc = a(1-a)."""
    e11, e12 = units[0][0], units[0][1]
    e21, e22 = units[1][0], units[1][1]
    one = CycNum.one(order)
    out = []
    seen = set()

    def emit(a, b, c):
        v = vec_add(vec_add(vec_scale(a, e11), vec_scale(b, e12)),
                    vec_add(vec_scale(c, e21), vec_scale(one - a, e22)))
        key = vec_key(v)
        if key not in seen:
            seen.add(key)
            out.append(v)

    for a in budget_values:
        target = a * (one - a)
        for b in budget_values:
            if b.is_zero():
                if target.is_zero():
                    for c in budget_values:
                        emit(a, b, c)
                continue
            emit(a, b, target / b)
    return out


def _block_assignments(problem, block, dim, budget_values):
    """All ways to distribute one block's identity over `dim` slots as an
    orthogonal system of idempotents (one assignment = list of ambient
    corner vectors, one per slot, None for absent).  A trailing None marks
    a truncated enumeration (matrix blocks beyond 2 x 2)."""
    z, basis = block
    order = problem.order
    m2 = len(basis)
    zero_assign = [None] * dim
    out = []
    if m2 == 1:
        for k in range(dim):
            assign = list(zero_assign)
            assign[k] = z
            out.append(assign)
        return out
    m = 1
    while m * m < m2:
        m += 1
    if m * m != m2:
        raise YdhError("corner block dimension %d is not a square" % m2)
    if m == 2:
        units = block_matrix_units(problem.mult, z, basis, order)
        rank1 = _rank_one_idempotents(units, budget_values, order)
        for k in range(dim):
            assign = list(zero_assign)
            assign[k] = z
            out.append(assign)
        for k in range(dim):
            for l in range(dim):
                if k == l:
                    continue
                for p in rank1:
                    assign = list(zero_assign)
                    assign[k] = p
                    assign[l] = vec_sub(z, p)
                    out.append(assign)
        return out
    # larger matrix blocks: only whole-block assignments are enumerated;
    # deeper rank profiles are beyond the default budget
    for k in range(dim):
        assign = list(zero_assign)
        assign[k] = z
        out.append(assign)
    out.append(None)
    return out


def _apply_cells(problem, slot_perm, v):
    """The diagonal permutation action of a slot permutation on a corner
    vector."""
    index = problem.cell_index
    out = [None] * len(problem.corner_cells)
    for val, (i, j) in zip(v, problem.corner_cells):
        out[index[(slot_perm[i], slot_perm[j])]] = val
    return tuple(out)


def _stabilizer_consistent(problem, assign, stab):
    for u in stab:
        for k, piece in enumerate(assign):
            target = assign[u[k]]
            if piece is None:
                if target is not None:
                    return False
                continue
            if target is None:
                return False
            if _apply_cells(problem, u, piece) != tuple(target):
                return False
    return True


def _block_orbits(problem, group_elems):
    """Orbit data of the corner blocks under the joint action group: a list
    of (rep index, {member index: carrying element}, stabilizer)."""
    blocks = problem.blocks
    key_to_idx = {vec_key(z): i for i, (z, _) in enumerate(blocks)}
    images = {}
    for u in group_elems:
        for b, (z, _) in enumerate(blocks):
            images[(u, b)] = key_to_idx[vec_key(_apply_cells(problem, u, z))]
    orbits = []
    assigned = [False] * len(blocks)
    for b in range(len(blocks)):
        if assigned[b]:
            continue
        members = {}
        for u in group_elems:
            mb = images[(u, b)]
            if mb not in members:
                members[mb] = u
        for mb in members:
            assigned[mb] = True
        stab = [u for u in group_elems if images[(u, b)] == b]
        orbits.append((b, members, stab))
    return orbits


def _table_search(dim, counit_index, group_elems):
    """Multiplication tables on the basis slots with identity at the counit
    coordinate, row/column cancellation, associativity and equivariance.

    Valid only when the braiding is the plain flip: the coproduct then
    dualizes a plain monoid structure, and an antipode will exist exactly
    for group tables, so cancellative tables are the complete candidate
    set."""
    table = {}
    for j in range(dim):
        table[(counit_index, j)] = j
        table[(j, counit_index)] = j
    cells = [(i, j) for i in range(dim) if i != counit_index
             for j in range(dim) if j != counit_index]
    solutions = []

    def propagate(cell, val, trail):
        stack = [(cell, val)]
        while stack:
            c, v = stack.pop()
            known = table.get(c)
            if known is not None:
                if known != v:
                    return False
                continue
            i, j = c
            for jj in range(dim):
                if jj != j and table.get((i, jj)) == v:
                    return False
            for ii in range(dim):
                if ii != i and table.get((ii, j)) == v:
                    return False
            table[c] = v
            trail.append(c)
            for u in group_elems:
                stack.append(((u[i], u[j]), u[v]))
        return True

    def assoc_ok():
        for a in range(dim):
            for b in range(dim):
                ab = table.get((a, b))
                for c in range(dim):
                    bc = table.get((b, c))
                    left = table.get((ab, c)) if ab is not None else None
                    right = table.get((a, bc)) if bc is not None else None
                    if left is not None and right is not None and left != right:
                        return False
        return True

    def backtrack(idx):
        while idx < len(cells) and cells[idx] in table:
            idx += 1
        if idx == len(cells):
            solutions.append(dict(table))
            return
        cell = cells[idx]
        for val in range(dim):
            trail = []
            if propagate(cell, val, trail) and assoc_ok():
                backtrack(idx + 1)
            for c in trail:
                del table[c]

    backtrack(0)
    return solutions


def search_nontrivial(cfg):
    """Enumerate commutative semisimple candidates over cfg.group at
    cfg.dim and return every one passing the full axiom checker, tagged
    with its triviality status."""
    group = cfg.group
    dim = cfg.dim
    order = cfg.order
    if gcd(dim, group.order) == 1 and not cfg.confirm_prune:
        # the triviality theorem forces every instance trivial here
        return SearchOutcome([], pruned=True, exhausted=False,
                             candidates_checked=0)
    budget_values = cfg.budget.values(order)
    one = CycNum.one(order)
    results = []
    seen_keys = set()
    exhausted = False
    checked = 0
    counit_index = 0
    if cfg.action_ansatz is not None:
        ansatz_list = list(cfg.action_ansatz)
    else:
        ansatz_list = list(_enumerate_ansatz(group, dim, counit_index))

    def consider(candidate, phi_perms, psi_perms):
        nonlocal checked
        checked += 1
        if not _coassociative(candidate):
            return
        try:
            candidate = ensure_antipode(candidate)
        except (NoAntipode, NotColinear):
            return
        report = verify_axioms(candidate)
        if not report.passed:
            return
        trivial, _ = is_trivial(candidate)
        key = _instance_key(candidate)
        if key in seen_keys:
            return
        seen_keys.add(key)
        candidate.label = "search %s dim %d #%d" % (group, dim, len(results))
        results.append((candidate, trivial))

    for phi_perms, psi_perms in ansatz_list:
        if checked > cfg.max_candidates:
            exhausted = True
            break
        group_elems = _action_group(dim, phi_perms, psi_perms)
        shell = _build_instance(group, order, dim, counit_index,
                                phi_perms, psi_perms, {})
        if is_trivial(shell)[0]:
            # flip braiding: coproducts dualize group tables on the slots
            for table in _table_search(dim, counit_index, group_elems):
                comult = {}
                for (i, j), k in table.items():
                    comult[(k, i, j)] = one
                candidate = _build_instance(group, order, dim, counit_index,
                                            phi_perms, psi_perms, comult)
                consider(candidate, phi_perms, psi_perms)
            continue
        problem = _CornerProblem(shell, counit_index)
        border = _counit_border(dim, counit_index, order)
        orbits = _block_orbits(problem, group_elems)
        per_orbit = []
        for rep, _members, stab in orbits:
            raw = _block_assignments(problem, problem.blocks[rep], dim,
                                     budget_values)
            if raw and raw[-1] is None:
                exhausted = True
                raw = raw[:-1]
            per_orbit.append([asg for asg in raw
                              if _stabilizer_consistent(problem, asg, stab)])
        for combo in product(*per_orbit):
            if checked > cfg.max_candidates:
                exhausted = True
                break
            slots = [vec_zero(order, len(problem.corner_cells))
                     for _ in range(dim)]
            for (rep, members, _stab), asg in zip(orbits, combo):
                for _member, u in members.items():
                    for k, piece in enumerate(asg):
                        if piece is not None:
                            slots[u[k]] = vec_add(
                                slots[u[k]], _apply_cells(problem, u, piece))
            comult = dict(border)
            for k in range(dim):
                flat = problem.corner_vec_to_smash(slots[k])
                for idx, val in enumerate(flat):
                    if not val.is_zero():
                        i, j = idx // dim, idx % dim
                        comult[(k, i, j)] = comult.get(
                            (k, i, j), CycNum.zero(order)) + val
            candidate = _build_instance(group, order, dim, counit_index,
                                        phi_perms, psi_perms, comult)
            consider(candidate, phi_perms, psi_perms)
        if checked > cfg.max_candidates:
            break
    return SearchOutcome(results, pruned=False, exhausted=exhausted,
                         candidates_checked=checked)


def _coassociative(algebra):
    from .ydhopf import _tensor3_of_coassoc
    lefts = _tensor3_of_coassoc(algebra, left=True)
    rights = _tensor3_of_coassoc(algebra, left=False)
    return lefts == rights


def _instance_key(algebra):
    return (tuple(sorted((idx, val.sort_key())
                         for idx, val in algebra.comult.entries.items())),
            tuple(tuple(vec_key(r) for r in m.rows)
                  for m in algebra.module.phi_gens),
            tuple(tuple(vec_key(r) for r in m.rows)
                  for m in algebra.module.psi_gens))
