"""Finite abelian groups in invariant-factor form, their characters,
subgroups, annihilators and quotients.

A group Z/n_1 x ... x Z/n_r (n_1 | n_2 | ... | n_r) has elements stored as
exponent tuples.  The character group is identified with the group itself
through the fixed pairing

    <chi, g> = sum_i chi_i * g_i * (E / n_i)   (mod E),   E = exponent,

so that chi(g) is the corresponding power of a primitive E-th root of unity.
Annihilators (perp) are computed by exhaustive pairing checks; quotients go
through a small integer Smith normal form so that the projection map comes
out explicit.
"""

from math import gcd
from itertools import product

from .cyclo import CycNum, root_of_unity
from .errors import GroupMismatch


def _lcm(a, b):
    return a * b // gcd(a, b) if a and b else max(a, b)


class FinAbGroup:
    """Invariant-factor presentation of a finite abelian group."""

    __slots__ = ("invariant_factors", "exponent", "order")

    def __init__(self, invariant_factors):
        factors = tuple(int(n) for n in invariant_factors)
        for n in factors:
            if n < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(factors, factors[1:]):
            if b % a != 0:
                raise ValueError("each factor must divide the next: %s" % (factors,))
        self.invariant_factors = factors
        e = 1
        o = 1
        for n in factors:
            e = _lcm(e, n)
            o *= n
        self.exponent = e
        self.order = o

    def __eq__(self, other):
        return (isinstance(other, FinAbGroup)
                and self.invariant_factors == other.invariant_factors)

    def __hash__(self):
        return hash(self.invariant_factors)

    def __repr__(self):
        return "FinAbGroup(%s)" % (self.invariant_factors,)

    def __str__(self):
        if not self.invariant_factors:
            return "trivial"
        return " x ".join("Z/%d" % n for n in self.invariant_factors)

    @property
    def rank(self):
        return len(self.invariant_factors)

    def identity(self):
        return (0,) * self.rank

    def elements(self):
        """All elements, in lexicographic (canonical) order."""
        return [tuple(g) for g in product(*[range(n) for n in self.invariant_factors])]

    def reduce(self, g):
        return tuple(x % n for x, n in zip(g, self.invariant_factors))

    def add(self, a, b):
        return tuple((x + y) % n
                     for x, y, n in zip(a, b, self.invariant_factors))

    def neg(self, a):
        return tuple((-x) % n for x, n in zip(a, self.invariant_factors))

    def scale(self, k, a):
        return tuple((k * x) % n for x, n in zip(a, self.invariant_factors))

    def element_order(self, a):
        o = 1
        for x, n in zip(a, self.invariant_factors):
            o = _lcm(o, n // gcd(n, x))
        return o

    def generators(self):
        """Standard basis tuples, one per invariant factor."""
        out = []
        for i in range(self.rank):
            g = [0] * self.rank
            g[i] = 1
            out.append(tuple(g))
        return out

    def decompose(self, g):
        """Exponent vector of g over the standard generators (itself)."""
        return self.reduce(g)

    # -- pairing with the character group (identified with the group itself)

    def pairing_exponent(self, chi, g):
        """k with chi(g) = zeta_E^k, E the exponent."""
        e = self.exponent
        total = 0
        for c, x, n in zip(chi, g, self.invariant_factors):
            total += c * x * (e // n)
        return total % e if e else 0

    def char_value(self, chi, g, order):
        """chi(g) realized in Q(zeta_order); exponent must divide order."""
        if self.exponent == 1:
            return CycNum.one(order)
        if order % self.exponent != 0:
            raise GroupMismatch(
                "cyclotomic order %d does not contain the %d-th roots of unity"
                % (order, self.exponent))
        zeta = root_of_unity(self.exponent, order)
        return zeta ** self.pairing_exponent(chi, g)


class GroupChar:
    """A character of a finite abelian group, stored by its exponent tuple
    under the fixed pairing."""

    __slots__ = ("group", "exponents")

    def __init__(self, group, exponents):
        self.group = group
        self.exponents = group.reduce(exponents)

    def __eq__(self, other):
        return (isinstance(other, GroupChar) and self.group == other.group
                and self.exponents == other.exponents)

    def __hash__(self):
        return hash((self.group, self.exponents))

    def __repr__(self):
        return "GroupChar(%s, %s)" % (self.group, self.exponents)

    def value(self, g, order):
        return self.group.char_value(self.exponents, g, order)

    def __mul__(self, other):
        return GroupChar(self.group, self.group.add(self.exponents, other.exponents))

    def inverse(self):
        return GroupChar(self.group, self.group.neg(self.exponents))


def orthogonality_sum(chi, chi2, order):
    """sum over g of chi(g^-1) chi2(g); equals |G| when the characters are
    equal and 0 otherwise."""
    group = chi.group
    total = CycNum.zero(order)
    for g in group.elements():
        total = total + chi.value(group.neg(g), order) * chi2.value(g, order)
    return total


class Subgroup:
    """An explicitly enumerated subgroup of G or of its character group."""

    __slots__ = ("group", "elements", "dual")

    def __init__(self, group, elements, dual=False):
        elems = sorted({group.reduce(g) for g in elements})
        self.group = group
        self.elements = tuple(elems)
        self.dual = dual
        if group.identity() not in self.elements:
            raise ValueError("subgroup must contain the identity")
        eset = set(self.elements)
        for a in self.elements:
            if group.neg(a) not in eset:
                raise ValueError("subgroup not closed under inverse")
            for b in self.elements:
                if group.add(a, b) not in eset:
                    raise ValueError("subgroup not closed under addition")

    @staticmethod
    def generated(group, generators, dual=False):
        seen = {group.identity()}
        frontier = [group.identity()]
        gens = [group.reduce(g) for g in generators]
        while frontier:
            g = frontier.pop()
            for h in gens:
                x = group.add(g, h)
                if x not in seen:
                    seen.add(x)
                    frontier.append(x)
        return Subgroup(group, seen, dual=dual)

    @staticmethod
    def trivial(group, dual=False):
        return Subgroup(group, [group.identity()], dual=dual)

    @staticmethod
    def full(group, dual=False):
        return Subgroup(group, group.elements(), dual=dual)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and self.group == other.group
                and self.dual == other.dual and self.elements == other.elements)

    def __hash__(self):
        return hash((self.group, self.dual, self.elements))

    def __len__(self):
        return len(self.elements)

    def __contains__(self, g):
        return self.group.reduce(g) in set(self.elements)

    def __repr__(self):
        side = "char" if self.dual else "grp"
        return "Subgroup(%s, %s, %s)" % (self.group, side, list(self.elements))

    def contains_subgroup(self, other):
        mine = set(self.elements)
        return all(g in mine for g in other.elements)

    def intersection(self, other):
        assert self.group == other.group and self.dual == other.dual
        common = set(self.elements) & set(other.elements)
        return Subgroup(self.group, common, dual=self.dual)

    def join(self, other):
        """The product subgroup generated by both."""
        assert self.group == other.group and self.dual == other.dual
        return Subgroup.generated(self.group,
                                  list(self.elements) + list(other.elements),
                                  dual=self.dual)


def perp(sub):
    """Annihilator on the other side of the pairing.

    For Q inside the character group, returns {g : chi(g) = 1 for all chi in
    Q} inside G; for T inside G, returns {chi : chi(g) = 1 for all g in T}
    inside the character group.
    """
    group = sub.group
    out = []
    for x in group.elements():
        if sub.dual:
            ok = all(group.pairing_exponent(chi, x) == 0 for chi in sub.elements)
        else:
            ok = all(group.pairing_exponent(x, g) == 0 for g in sub.elements)
        if ok:
            out.append(x)
    return Subgroup(group, out, dual=not sub.dual)


def coset_reps(sub, ambient=None):
    """One representative per coset of `sub` inside `ambient` (default: the
    whole group), each the smallest element of its coset in canonical
    order."""
    group = sub.group
    elems = ambient.elements if ambient is not None else group.elements()
    seen = set()
    reps = []
    subset = set(sub.elements)
    for g in sorted(elems):
        coset = frozenset(group.add(g, h) for h in subset)
        if coset not in seen:
            seen.add(coset)
            reps.append(g)
    return reps


# ---------------------------------------------------------------------------
# Smith normal form over Z, with transforms


def smith_normal_form(rows):
    """Return (d, v) for the integer matrix given as a list of rows, where
    d is the list of diagonal entries of the Smith form D = U*M*V and v is
    the (square) right transform V as a list of rows.

    Only V is needed by callers: x |-> x*V carries Z^s/rowspan(M) onto
    Z^s/rowspan(D)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]

    def swap_cols(i, j):
        for row in m:
            row[i], row[j] = row[j], row[i]
        for r in range(ncols):
            v[r][i], v[r][j] = v[r][j], v[r][i]

    def add_row(src, dst, k):
        for c in range(ncols):
            m[dst][c] += k * m[src][c]

    def add_col(src, dst, k):
        for row in m:
            row[dst] += k * row[src]
        for r in range(ncols):
            v[r][dst] += k * v[r][src]

    def negate_col(i):
        for row in m:
            row[i] = -row[i]
        for r in range(ncols):
            v[r][i] = -v[r][i]

    diag = []
    t = 0
    while t < min(nrows, ncols):
        pivot = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                if m[i][j] != 0 and (best is None or abs(m[i][j]) < best):
                    best = abs(m[i][j])
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            # clear column t below the pivot
            dirty = False
            for i in range(t + 1, nrows):
                if m[i][t] != 0:
                    q = m[i][t] // m[t][t]
                    add_row(t, i, -q)
                    if m[i][t] != 0:
                        swap_rows(t, i)
                        dirty = True
            if dirty:
                continue
            # clear row t to the right of the pivot
            for j in range(t + 1, ncols):
                if m[t][j] != 0:
                    q = m[t][j] // m[t][t]
                    add_col(t, j, -q)
                    if m[t][j] != 0:
                        swap_cols(t, j)
                        dirty = True
            if dirty:
                continue
            # enforce divisibility of the remaining block by the pivot
            fixed = False
            for i in range(t + 1, nrows):
                for j in range(t + 1, ncols):
                    if m[i][j] % m[t][t] != 0:
                        add_row(i, t, 1)
                        fixed = True
                        break
                if fixed:
                    break
            if not fixed:
                break
        if m[t][t] < 0:
            negate_col(t)
        diag.append(m[t][t])
        t += 1
    return diag, v


class QuotientGroup:
    """Result of quotienting a subgroup H by a subgroup N: the quotient in
    invariant-factor form, the projection map, and canonical lifts."""

    __slots__ = ("group", "project", "lifts", "source", "kernel")

    def __init__(self, group, project, lifts, source, kernel):
        self.group = group
        self.project = project          # dict: element of H -> element of H/N
        self.lifts = lifts              # list: one lift per quotient generator
        self.source = source            # Subgroup H
        self.kernel = kernel            # Subgroup N

    def induced_character(self, chi):
        """The character of the quotient induced by chi (which must kill the
        kernel), as a GroupChar of the quotient group."""
        parent = self.source.group
        e = parent.exponent
        exps = []
        for d, lift in zip(self.group.invariant_factors, self.lifts):
            val = parent.pairing_exponent(chi, lift)
            assert (val * d) % e == 0, "character does not kill the kernel"
            exps.append((val * d // e) % d)
        return GroupChar(self.group, tuple(exps))


def quotient(sub_h, sub_n):
    """Quotient H/N of two subgroups N <= H, with explicit projection.

    Returns a QuotientGroup whose .group is a FinAbGroup in invariant-factor
    form and whose .project sends each element of H to its class."""
    group = sub_h.group
    if not sub_h.contains_subgroup(sub_n):
        raise ValueError("N is not contained in H")
    # greedy generating set of H: maximal order first, canonical tie-break
    gens = []
    gen_span = {group.identity()}
    for g in sorted(sub_h.elements, key=lambda g: (-group.element_order(g), g)):
        if g not in gen_span:
            gens.append(g)
            gen_span = set(
                Subgroup.generated(group, gens).elements)
        if len(gen_span) == len(sub_h):
            break
    s = len(gens)
    if s == 0:
        trivial = FinAbGroup([])
        proj = {group.identity(): ()}
        return QuotientGroup(trivial, proj, [], sub_h, sub_n)
    orders = [group.element_order(g) for g in gens]
    # exponent vectors for every element of H over the chosen generators
    table = {group.identity(): (0,) * s}
    frontier = [group.identity()]
    while frontier:
        h = frontier.pop()
        x = table[h]
        for j, g in enumerate(gens):
            h2 = group.add(h, g)
            if h2 not in table:
                x2 = list(x)
                x2[j] += 1
                table[h2] = tuple(x2)
                frontier.append(h2)
    # relation rows: order relations plus everything landing in N
    nset = set(sub_n.elements)
    rows = []
    for j, o in enumerate(orders):
        row = [0] * s
        row[j] = o
        rows.append(row)
    for combo in product(*[range(o) for o in orders]):
        h = group.identity()
        for j, k in enumerate(combo):
            h = group.add(h, group.scale(k, gens[j]))
        if h in nset and any(combo):
            rows.append(list(combo))
    diag, v = smith_normal_form(rows)
    assert len(diag) == s, "quotient of a finite group must be finite"
    keep = [i for i, d in enumerate(diag) if d > 1]
    factors = [diag[i] for i in keep]
    qgroup = FinAbGroup(factors)

    def classify(x):
        y = [sum(x[r] * v[r][c] for r in range(s)) for c in range(s)]
        return tuple(y[i] % diag[i] for i in keep)

    project = {h: classify(x) for h, x in table.items()}
    # canonical lifts: smallest element of H projecting to each basis tuple
    lifts = []
    for i in range(qgroup.rank):
        target = tuple(1 if j == i else 0 for j in range(qgroup.rank))
        lift = min(h for h, c in project.items() if c == target)
        lifts.append(lift)
    # sanity: projection is a homomorphism with kernel N
    assert {h for h, c in project.items() if c == qgroup.identity()} == nset
    return QuotientGroup(qgroup, project, lifts, sub_h, sub_n)
