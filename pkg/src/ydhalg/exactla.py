"""Exact dense linear algebra over CycNum, plus order-3 structure-constant
tensors and the simultaneous invariant-subspace splitting that drives the
Wedderburn decompositions.

Gaussian elimination is fraction-free in the Bareiss sense: the forward pass
divides only by the previous pivot (exact in any integral domain), and field
inverses are taken only in the final normalization.  Pivoting is
deterministic (first nonzero in canonical order), so bases and reports are
reproducible.
"""

from fractions import Fraction

from .cyclo import CycNum, CycPoly, roots_in_field
from .errors import NonSplitField, PreconditionViolated, YdhError

# ---------------------------------------------------------------------------
# vectors: plain tuples of CycNum


def vec_zero(order, n):
    z = CycNum.zero(order)
    return tuple([z] * n)


def vec_add(u, v):
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u, v):
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, u):
    return tuple(c * a for a in u)


def vec_is_zero(u):
    return all(a.is_zero() for a in u)


def vec_key(u):
    return tuple(a.sort_key() for a in u)


class Mat:
    """Immutable dense matrix with one shared cyclotomic order."""

    __slots__ = ("order", "rows", "nrows", "ncols")

    def __init__(self, order, rows):
        rows = tuple(tuple(r) for r in rows)
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ValueError("ragged matrix")
            for x in r:
                if x.order != order:
                    raise ValueError("mixed cyclotomic orders in matrix")
        self.order = order
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    @staticmethod
    def identity(order, n):
        z, o = CycNum.zero(order), CycNum.one(order)
        return Mat(order, [[o if i == j else z for j in range(n)] for i in range(n)])

    @staticmethod
    def zero(order, nrows, ncols):
        z = CycNum.zero(order)
        return Mat(order, [[z] * ncols for _ in range(nrows)])

    @staticmethod
    def from_columns(order, cols):
        if not cols:
            return Mat(order, [])
        return Mat(order, [[col[i] for col in cols] for i in range(len(cols[0]))])

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def __eq__(self, other):
        return (isinstance(other, Mat) and self.order == other.order
                and self.rows == other.rows)

    def __hash__(self):
        return hash((self.order, self.rows))

    def __repr__(self):
        return "Mat(%d, %d x %d)" % (self.order, self.nrows, self.ncols)

    def __add__(self, other):
        return Mat(self.order, [vec_add(a, b) for a, b in zip(self.rows, other.rows)])

    def __sub__(self, other):
        return Mat(self.order, [vec_sub(a, b) for a, b in zip(self.rows, other.rows)])

    def scale(self, c):
        return Mat(self.order, [vec_scale(c, r) for r in self.rows])

    def __matmul__(self, other):
        if isinstance(other, Mat):
            ocols = other.columns()
            return Mat(self.order,
                       [[_dot(r, c) for c in ocols] for r in self.rows])
        raise TypeError

    def apply(self, v):
        """Matrix times column vector."""
        return tuple(_dot(r, v) for r in self.rows)

    def transpose(self):
        return Mat(self.order, [self.column(j) for j in range(self.ncols)])

    def trace(self):
        t = CycNum.zero(self.order)
        for i in range(min(self.nrows, self.ncols)):
            t = t + self.rows[i][i]
        return t

    def is_identity(self):
        if self.nrows != self.ncols:
            return False
        one, zero = CycNum.one(self.order), CycNum.zero(self.order)
        return all(self.rows[i][j] == (one if i == j else zero)
                   for i in range(self.nrows) for j in range(self.ncols))


def _dot(u, v):
    total = None
    for a, b in zip(u, v):
        if a.is_zero() or b.is_zero():
            continue
        p = a * b
        total = p if total is None else total + p
    if total is None:
        return CycNum.zero(u[0].order if u else 2)
    return total


# ---------------------------------------------------------------------------
# elimination


def _rref(order, rows):
    """Reduced row echelon form with unit pivots.

    Forward pass is Bareiss (division only by the previous pivot), then
    pivots are normalized and cleared upward.  Returns (rows, pivot_cols).
    """
    m = [list(r) for r in rows]
    nrows = len(m)
    ncols = len(m[0]) if nrows else 0
    one = CycNum.one(order)
    prev = one
    pivots = []
    r = 0
    for c in range(ncols):
        pivot_row = None
        for i in range(r, nrows):
            if not m[i][c].is_zero():
                pivot_row = i
                break
        if pivot_row is None:
            continue
        m[r], m[pivot_row] = m[pivot_row], m[r]
        piv = m[r][c]
        for i in range(r + 1, nrows):
            if m[i][c].is_zero():
                # Bareiss still rescales untouched rows below
                for j in range(c, ncols):
                    if not m[i][j].is_zero():
                        m[i][j] = (piv * m[i][j]) / prev
                continue
            fac = m[i][c]
            for j in range(c, ncols):
                m[i][j] = (piv * m[i][j] - fac * m[r][j]) / prev
        pivots.append(c)
        prev = piv
        r += 1
        if r == nrows:
            break
    # normalize pivots to 1 and clear upward
    for k in range(len(pivots) - 1, -1, -1):
        c = pivots[k]
        inv = m[k][c].inverse()
        m[k] = [x * inv for x in m[k]]
        for i in range(k):
            f = m[i][c]
            if not f.is_zero():
                m[i] = [a - f * b for a, b in zip(m[i], m[k])]
    return [tuple(r) for r in m[:len(pivots)]], pivots


def rank(mat):
    return len(_rref(mat.order, mat.rows)[1])


def kernel(mat):
    """Exact reduced basis of the kernel of mat, canonical order."""
    rref_rows, pivots = _rref(mat.order, mat.rows)
    n = mat.ncols
    one, zero = CycNum.one(mat.order), CycNum.zero(mat.order)
    free = [c for c in range(n) if c not in pivots]
    basis = []
    for fc in free:
        v = [zero] * n
        v[fc] = one
        for k, pc in enumerate(pivots):
            v[pc] = -rref_rows[k][fc]
        basis.append(tuple(v))
    return basis


def solve(mat, b):
    """One exact solution of mat @ x = b, or None if inconsistent."""
    aug = [list(r) + [bv] for r, bv in zip(mat.rows, b)]
    rref_rows, pivots = _rref(mat.order, aug)
    n = mat.ncols
    zero = CycNum.zero(mat.order)
    if n in pivots:
        return None
    x = [zero] * n
    for k, pc in enumerate(pivots):
        x[pc] = rref_rows[k][n]
    return tuple(x)


def solve_many(mat, bs):
    """Solve mat @ x = b for each right-hand side; None marks an
    inconsistent system."""
    return [solve(mat, b) for b in bs]


def invert(mat):
    if mat.nrows != mat.ncols:
        raise ValueError("only square matrices invert")
    n = mat.nrows
    one, zero = CycNum.one(mat.order), CycNum.zero(mat.order)
    aug = [list(r) + [one if i == j else zero for j in range(n)]
           for i, r in enumerate(mat.rows)]
    rref_rows, pivots = _rref(mat.order, aug)
    if pivots != list(range(n)):
        raise ZeroDivisionError("matrix is singular")
    return Mat(mat.order, [row[n:] for row in rref_rows])


def determinant(mat):
    if mat.nrows != mat.ncols:
        raise ValueError("determinant of a non-square matrix")
    n = mat.nrows
    if n == 0:
        return CycNum.one(mat.order)
    m = [list(r) for r in mat.rows]
    prev = CycNum.one(mat.order)
    sign = 1
    for c in range(n - 1):
        pr = None
        for i in range(c, n):
            if not m[i][c].is_zero():
                pr = i
                break
        if pr is None:
            return CycNum.zero(mat.order)
        if pr != c:
            m[c], m[pr] = m[pr], m[c]
            sign = -sign
        piv = m[c][c]
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                m[i][j] = (piv * m[i][j] - m[i][c] * m[c][j]) / prev
            m[i][c] = CycNum.zero(mat.order)
        prev = piv
    d = m[n - 1][n - 1]
    return -d if sign < 0 else d


def charpoly(mat):
    """Monic characteristic polynomial via Faddeev-LeVerrier (divisions by
    integers only, exact)."""
    n = mat.nrows
    order = mat.order
    one = CycNum.one(order)
    coeffs = [one]  # leading
    M = Mat.identity(order, n)
    c = one
    for k in range(1, n + 1):
        M = mat @ M
        c = -(M.trace() / k)
        coeffs.append(c)
        if k < n:
            M = M + Mat.identity(order, n).scale(c)
    return CycPoly(order, list(reversed(coeffs)))


# ---------------------------------------------------------------------------
# eigenvalues and joint eigenspace splitting


def _is_monomial(mat):
    n = mat.nrows
    if n != mat.ncols:
        return None
    col_of_row = [None] * n
    seen_cols = set()
    for i in range(n):
        nz = [j for j in range(n) if not mat.rows[i][j].is_zero()]
        if len(nz) != 1 or nz[0] in seen_cols:
            return None
        col_of_row[i] = nz[0]
        seen_cols.add(nz[0])
    return col_of_row


def eigenvalues(mat):
    """All eigenvalues in the field with algebraic multiplicities.

    Raises NonSplitField when the characteristic polynomial does not split
    into linear factors over Q(zeta_N)."""
    n = mat.nrows
    order = mat.order
    found = {}

    def record(value, mult):
        key = value.sort_key()
        if key in found:
            found[key] = (value, found[key][1] + mult)
        else:
            found[key] = (value, mult)

    diag = all(mat.rows[i][j].is_zero()
               for i in range(n) for j in range(n) if i != j)
    if diag:
        for i in range(n):
            record(mat.rows[i][i], 1)
    else:
        perm = _is_monomial(mat)
        if perm is not None:
            # row i has its entry in column perm[i]: M e_{perm[i]} ~ e_i,
            # so cycles of the permutation j -> row with perm[row] = j give
            # factors x^L - (product of cycle entries)
            inv = [0] * n
            for i, j in enumerate(perm):
                inv[j] = i
            visited = [False] * n
            factors = []
            for s in range(n):
                if visited[s]:
                    continue
                prod = CycNum.one(order)
                length = 0
                j = s
                while not visited[j]:
                    visited[j] = True
                    i = inv[j]
                    prod = prod * mat.rows[i][j]
                    j = i
                    length += 1
                factors.append((length, prod))
            for length, prod in factors:
                zero = CycNum.zero(order)
                poly = CycPoly(order, [-prod] + [zero] * (length - 1)
                               + [CycNum.one(order)])
                roots = roots_in_field(poly)
                if sum(m for _, m in roots) != length:
                    raise NonSplitField(
                        "eigenvalue outside Q(zeta_%d); enlarge the "
                        "cyclotomic order of the input" % order)
                for value, mult in roots:
                    record(value, mult)
        else:
            poly = charpoly(mat)
            roots = roots_in_field(poly)
            if sum(m for _, m in roots) != n:
                raise NonSplitField(
                    "characteristic polynomial has an irreducible factor of "
                    "degree > 1 over Q(zeta_%d); enlarge the cyclotomic "
                    "order of the input" % order)
            for value, mult in roots:
                record(value, mult)
    return [found[k] for k in sorted(found)]


def restrict_operator(op, basis):
    """Matrix of op on span(basis), in basis coordinates.

    Raises PreconditionViolated when the span is not op-invariant."""
    order = op.order
    bmat = Mat.from_columns(order, list(basis))
    cols = []
    for b in basis:
        img = op.apply(b)
        x = solve(bmat, img)
        if x is None:
            raise PreconditionViolated("operator does not preserve the subspace")
        cols.append(x)
    return Mat.from_columns(order, cols)


def split_invariant(basis, operators):
    """Split span(basis) into maximal joint eigenspaces of the commuting
    operators.  Returns a list of bases (lists of ambient vectors) whose
    direct sum is the input span; canonical, deterministic order."""
    if not basis:
        return []
    order = operators[0].order if operators else basis[0][0].order
    spaces = [list(basis)]
    for op in operators:
        new_spaces = []
        for space in spaces:
            if len(space) == 1:
                new_spaces.append(space)
                continue
            r = restrict_operator(op, space)
            eigs = eigenvalues(r)
            pieces = []
            total = 0
            for value, _mult in eigs:
                shifted = r - Mat.identity(order, r.nrows).scale(value)
                ker = kernel(shifted)
                lifted = []
                for coords in ker:
                    v = vec_zero(order, len(space[0]))
                    for c, b in zip(coords, space):
                        if not c.is_zero():
                            v = vec_add(v, vec_scale(c, b))
                    lifted.append(v)
                if lifted:
                    total += len(lifted)
                    pieces.append(lifted)
            if total != len(space):
                raise YdhError("operator is not diagonalizable on the subspace; "
                               "the input cannot be semisimple")
            new_spaces.extend(pieces)
        spaces = new_spaces
    # canonical order: by the key of the first reduced basis vector
    for s in spaces:
        s.sort(key=vec_key)
    spaces.sort(key=lambda s: vec_key(s[0]))
    return spaces


class Span:
    """Incrementally maintained row-reduced span with exact membership
    tests; much cheaper than re-eliminating for every query."""

    __slots__ = ("order", "rows")

    def __init__(self, order, vectors=()):
        self.order = order
        self.rows = []  # (pivot column, vector with unit pivot), sorted
        for v in vectors:
            self.add(v)

    @property
    def dim(self):
        return len(self.rows)

    def reduce(self, v):
        v = list(v)
        for pivot, row in self.rows:
            c = v[pivot]
            if not c.is_zero():
                for k in range(pivot, len(v)):
                    v[k] = v[k] - c * row[k]
        return tuple(v)

    def add(self, v):
        """Insert v; returns True when the dimension grew."""
        r = self.reduce(v)
        pivot = None
        for k, x in enumerate(r):
            if not x.is_zero():
                pivot = k
                break
        if pivot is None:
            return False
        inv = r[pivot].inverse()
        r = tuple(x * inv for x in r)
        self.rows.append((pivot, r))
        self.rows.sort(key=lambda pr: pr[0])
        return True

    def contains(self, v):
        return all(x.is_zero() for x in self.reduce(v))


def in_span(basis, v):
    """Whether v lies in span(basis) (basis a list of ambient vectors)."""
    if not basis:
        return vec_is_zero(v)
    order = v[0].order
    return Span(order, list(basis)).contains(v)


def coordinates_in_span(basis, v):
    """Coordinates of v in span(basis), or None."""
    order = v[0].order
    bmat = Mat.from_columns(order, list(basis))
    return solve(bmat, v)


def span_equal(basis_a, basis_b):
    return (len(basis_a) == len(basis_b)
            and all(in_span(basis_a, v) for v in basis_b)
            and all(in_span(basis_b, v) for v in basis_a))


def span_dimension(vectors, order):
    if not vectors:
        return 0
    return rank(Mat(order, list(vectors)))


# ---------------------------------------------------------------------------
# order-3 structure-constant tensors


class Tensor3:
    """Sparse order-3 tensor of structure constants over CycNum.

    Indexed (i, j, k): for a multiplication, entry (i, j, k) is the
    coefficient of basis vector k in the product b_i * b_j; for a
    comultiplication, entry (k, i, j) is the coefficient of b_i (x) b_j in
    the coproduct of b_k.
    """

    __slots__ = ("dim", "order", "entries")

    def __init__(self, dim, order, entries):
        self.dim = dim
        self.order = order
        clean = {}
        for idx, val in entries.items():
            i, j, k = idx
            if not (0 <= i < dim and 0 <= j < dim and 0 <= k < dim):
                raise ValueError("tensor index out of range: %s" % (idx,))
            if not val.is_zero():
                clean[idx] = val
        self.entries = clean

    def get(self, i, j, k):
        return self.entries.get((i, j, k), CycNum.zero(self.order))

    def items(self):
        return sorted(self.entries.items())

    def __eq__(self, other):
        return (isinstance(other, Tensor3) and self.dim == other.dim
                and self.order == other.order and self.entries == other.entries)

    def permuted(self, perm):
        """Reindex entries: (i, j, k) -> (i', j', k') by position permutation.

        perm is a tuple like (1, 0, 2) meaning the new first index is the old
        second one, etc."""
        out = {}
        for (i, j, k), val in self.entries.items():
            old = (i, j, k)
            out[tuple(old[p] for p in perm)] = val
        return Tensor3(self.dim, self.order, out)


def mult_table(tensor):
    """Dense lookup: table[i][j] = list of (k, coefficient)."""
    d = tensor.dim
    table = [[[] for _ in range(d)] for _ in range(d)]
    for (i, j, k), val in sorted(tensor.entries.items()):
        table[i][j].append((k, val))
    return table


def left_mult_operator(tensor, u):
    """Matrix of v -> u*v for the multiplication tensor."""
    d = tensor.dim
    order = tensor.order
    z = CycNum.zero(order)
    rows = [[z] * d for _ in range(d)]
    for (i, j, k), val in tensor.entries.items():
        if not u[i].is_zero():
            rows[k][j] = rows[k][j] + u[i] * val
    return Mat(order, rows)


def right_mult_operator(tensor, u):
    """Matrix of v -> v*u for the multiplication tensor."""
    d = tensor.dim
    order = tensor.order
    z = CycNum.zero(order)
    rows = [[z] * d for _ in range(d)]
    for (i, j, k), val in tensor.entries.items():
        if not u[j].is_zero():
            rows[k][i] = rows[k][i] + u[j] * val
    return Mat(order, rows)


def tensor_product_vec(tensor, u, v):
    """u * v for the multiplication tensor."""
    order = tensor.order
    out = [CycNum.zero(order)] * tensor.dim
    for (i, j, k), val in tensor.entries.items():
        if not u[i].is_zero() and not v[j].is_zero():
            out[k] = out[k] + u[i] * v[j] * val
    return tuple(out)


# ---------------------------------------------------------------------------
# semisimple split algebras: center, blocks, matrix units


def algebra_center(mult, order):
    """Basis of the center of the structure-constant algebra."""
    d = mult.dim
    z = CycNum.zero(order)
    rows = []
    # unknown vector u: for every basis index j and output k:
    #   sum_i u_i (m_{ij}^k - m_{ji}^k) = 0
    coeff = {}
    for (i, j, k), val in mult.entries.items():
        coeff[(j, k, i)] = coeff.get((j, k, i), z) + val
        coeff[(i, k, j)] = coeff.get((i, k, j), z) - val
    for j in range(d):
        for k in range(d):
            row = [coeff.get((j, k, i), z) for i in range(d)]
            if any(not c.is_zero() for c in row):
                rows.append(row)
    if not rows:
        return [tuple(CycNum.one(order) if i == t else z for i in range(d))
                for t in range(d)]
    return kernel(Mat(order, rows))


def trace_form_rank(mult, order):
    """Rank of the trace form (a, b) -> trace(L_{ab}); equals the dimension
    exactly when the algebra is semisimple (characteristic zero)."""
    d = mult.dim
    basis = [tuple(CycNum.one(order) if i == t else CycNum.zero(order)
                   for i in range(d)) for t in range(d)]
    ops = [left_mult_operator(mult, b) for b in basis]
    rows = []
    for i in range(d):
        row = []
        for j in range(d):
            row.append((ops[i] @ ops[j]).trace())
        rows.append(row)
    return rank(Mat(order, rows))


def central_primitive_idempotents(mult, unit, order):
    """The block idempotents of a split semisimple algebra, canonical order."""
    center = algebra_center(mult, order)
    ops = [left_mult_operator(mult, c) for c in center]
    pieces = split_invariant(center, ops)
    idems = []
    for piece in pieces:
        if len(piece) != 1:
            raise NonSplitField(
                "the center does not split over Q(zeta_%d); enlarge the "
                "cyclotomic order" % order)
        v = piece[0]
        vv = tensor_product_vec(mult, v, v)
        coords = coordinates_in_span([v], vv)
        if coords is None or coords[0].is_zero():
            raise YdhError("central eigenvector squared to zero; "
                           "the algebra is not semisimple")
        idems.append(vec_scale(coords[0].inverse(), v))
    idems.sort(key=vec_key)
    return idems


def primitive_idempotent_in_block(mult, block_unit, block_basis, order,
                                  _depth=0):
    """A primitive idempotent inside a simple block of a split semisimple
    algebra given by the ambient multiplication tensor."""
    if len(block_basis) == 1:
        return block_unit
    if _depth > 16:
        raise YdhError("block splitting did not terminate")
    # search for a block element whose left multiplication splits with at
    # least two distinct eigenvalues
    candidates = list(block_basis)
    for i in range(len(block_basis)):
        for j in range(i + 1, len(block_basis)):
            candidates.append(vec_add(block_basis[i], block_basis[j]))
    for x in candidates:
        lx = left_mult_operator(mult, x)
        r = restrict_operator(lx, block_basis)
        try:
            eigs = eigenvalues(r)
        except NonSplitField:
            continue
        if len(eigs) < 2:
            continue
        # spectral projection onto the first eigenvalue: corner by the
        # idempotent p = prod_{mu != lam} (x - mu)/(lam - mu) requires a
        # squarefree minimal polynomial; check by reconstructing
        lam = eigs[0][0]
        p = block_unit
        for mu, _m in eigs[1:]:
            factor = vec_sub(x, vec_scale(mu, block_unit))
            p = tensor_product_vec(mult, p, factor)
            scale = (lam - mu).inverse()
            p = vec_scale(scale, p)
        pp = tensor_product_vec(mult, p, p)
        if pp != p or vec_is_zero(p):
            continue
        corner_unit = p
        # corner algebra p B p
        corner_vectors = []
        for b in block_basis:
            v = tensor_product_vec(mult, corner_unit,
                                   tensor_product_vec(mult, b, corner_unit))
            corner_vectors.append(v)
        corner_basis = _reduce_basis(corner_vectors, order)
        if not corner_basis:
            continue
        if len(corner_basis) == len(block_basis):
            continue
        return primitive_idempotent_in_block(mult, corner_unit, corner_basis,
                                             order, _depth + 1)
    raise NonSplitField(
        "could not split a matrix block over Q(zeta_%d); enlarge the "
        "cyclotomic order" % order)


def _reduce_basis(vectors, order):
    vectors = [v for v in vectors if not vec_is_zero(v)]
    if not vectors:
        return []
    rows, _pivots = _rref(order, vectors)
    return [r for r in rows if not vec_is_zero(r)]


def block_matrix_units(mult, block_unit, block_basis, order):
    """Matrix units E[s][t] of a simple block isomorphic to M_m(K)."""
    m2 = len(block_basis)
    m = 1
    while m * m < m2:
        m += 1
    if m * m != m2:
        raise YdhError("block dimension %d is not a square" % m2)
    # primitive orthogonal idempotents summing to the block unit
    prims = []
    rest_unit = block_unit
    rest_basis = block_basis
    for _ in range(m - 1):
        p = primitive_idempotent_in_block(mult, rest_unit, rest_basis, order)
        prims.append(p)
        rest_unit = vec_sub(rest_unit, p)
        corner = []
        for b in block_basis:
            corner.append(tensor_product_vec(
                mult, rest_unit, tensor_product_vec(mult, b, rest_unit)))
        rest_basis = _reduce_basis(corner, order)
    prims.append(rest_unit)
    # connecting elements through the first idempotent
    units = [[None] * m for _ in range(m)]
    units[0][0] = prims[0]
    for t in range(1, m):
        c1t = None
        for b in block_basis:
            v = tensor_product_vec(mult, prims[0],
                                   tensor_product_vec(mult, b, prims[t]))
            if not vec_is_zero(v):
                c1t = v
                break
        ct1 = None
        for b in block_basis:
            v = tensor_product_vec(mult, prims[t],
                                   tensor_product_vec(mult, b, prims[0]))
            if not vec_is_zero(v):
                ct1 = v
                break
        if c1t is None or ct1 is None:
            raise YdhError("degenerate block: missing connecting elements")
        prod = tensor_product_vec(mult, c1t, ct1)
        coords = coordinates_in_span([prims[0]], prod)
        if coords is None or coords[0].is_zero():
            raise YdhError("degenerate block: connectors do not compose")
        units[0][t] = c1t
        units[t][0] = vec_scale(coords[0].inverse(), ct1)
    for s in range(1, m):
        for t in range(1, m):
            units[s][t] = tensor_product_vec(mult, units[s][0], units[0][t])
    return units
