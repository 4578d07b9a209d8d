"""Exact arithmetic in the cyclotomic field Q(zeta_N).

Elements are stored on the power basis 1, z, ..., z^(phi(N)-1), where z is a
fixed primitive N-th root of unity, reduced modulo the N-th cyclotomic
polynomial.  The representation is canonical: two elements of the same order
are equal iff their coefficient vectors are equal.  All coefficients are
`fractions.Fraction`, so there are no tolerances anywhere.

Root finding over the field (needed to split commuting operators exactly)
uses native fast paths for binomials x^L - c and falls back to sympy's
factorization over QQ(zeta_N) for the general case.
"""

from fractions import Fraction
from math import gcd

from .errors import NonDivisibleOrders, ParseError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def euler_phi(n):
    if n < 1:
        raise ValueError("order must be positive")
    result = n
    m = n
    p = 2
    while p * p <= m:
        if m % p == 0:
            while m % p == 0:
                m //= p
            result -= result // p
        p += 1
    if m > 1:
        result -= result // m
    return result


# ---------------------------------------------------------------------------
# dense polynomial helpers over Fraction, ascending coefficients


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return c[:i]


def _poly_mul(a, b):
    if not a or not b:
        return []
    out = [_ZERO] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai == 0:
            continue
        for j, bj in enumerate(b):
            if bj != 0:
                out[i + j] += ai * bj
    return _poly_trim(out)


def _poly_divmod(a, b):
    b = _poly_trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = _poly_trim(list(a))
    q = [_ZERO] * max(0, len(a) - len(b) + 1)
    lead = b[-1]
    while len(a) >= len(b):
        k = len(a) - len(b)
        f = a[-1] / lead
        q[k] = f
        for i, bi in enumerate(b):
            a[k + i] -= f * bi
        a = _poly_trim(a)
    return _poly_trim(q), a


def _poly_sub(a, b):
    n = max(len(a), len(b))
    a = list(a) + [_ZERO] * (n - len(a))
    b = list(b) + [_ZERO] * (n - len(b))
    return _poly_trim([x - y for x, y in zip(a, b)])


_cyclotomic_cache = {}


def cyclotomic_polynomial(n):
    """Coefficients of Phi_n, ascending, as Fractions (monic, integral)."""
    if n in _cyclotomic_cache:
        return _cyclotomic_cache[n]
    # (x^n - 1) / prod of Phi_d over proper divisors d
    poly = [-_ONE] + [_ZERO] * (n - 1) + [_ONE]
    for d in range(1, n):
        if n % d == 0:
            poly, rem = _poly_divmod(poly, cyclotomic_polynomial(d))
            assert not rem
    poly = tuple(poly)
    _cyclotomic_cache[n] = poly
    return poly


_reduction_cache = {}


def _power_table(n):
    """Vectors of z^k reduced mod Phi_n, for k in range(2*phi(n) - 1)."""
    if n in _reduction_cache:
        return _reduction_cache[n]
    phi = euler_phi(n)
    mod = cyclotomic_polynomial(n)
    table = []
    for k in range(phi):
        vec = [_ZERO] * phi
        vec[k] = _ONE
        table.append(tuple(vec))
    # z^phi and beyond: multiply previous entry by z and reduce
    current = list(table[-1]) if phi > 0 else [_ONE]
    for _ in range(phi, max(2 * phi - 1, n)):
        shifted = [_ZERO] + current
        if len(shifted) > phi:
            # degree phi term equals phi-coefficient times reduced z^phi
            top = shifted.pop()
            if top != 0:
                for i in range(phi):
                    shifted[i] -= top * mod[i]
        current = shifted
        table.append(tuple(current))
    _reduction_cache[n] = table
    return table


_zero_cache = {}
_one_cache = {}


class CycNum:
    """An element of Q(zeta_N), canonical on the power basis mod Phi_N."""

    __slots__ = ("order", "coeffs", "_hash")

    def __init__(self, order, coeffs):
        phi = euler_phi(order)
        coeffs = tuple(coeffs)
        if len(coeffs) != phi:
            raise ValueError("expected %d coefficients for order %d" % (phi, order))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "coeffs", coeffs)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError("CycNum is immutable")

    # -- constructors

    @staticmethod
    def zero(order):
        x = _zero_cache.get(order)
        if x is None:
            x = CycNum(order, [_ZERO] * euler_phi(order))
            _zero_cache[order] = x
        return x

    @staticmethod
    def one(order):
        x = _one_cache.get(order)
        if x is None:
            coeffs = [_ZERO] * euler_phi(order)
            coeffs[0] = _ONE
            x = CycNum(order, coeffs)
            _one_cache[order] = x
        return x

    @staticmethod
    def rational(order, value):
        value = Fraction(value)
        coeffs = [_ZERO] * euler_phi(order)
        coeffs[0] = value
        return CycNum(order, coeffs)

    @staticmethod
    def zeta_pow(order, k):
        """z^k in Q(zeta_order)."""
        k %= order
        table = _power_table(order)
        return CycNum(order, table[k])

    # -- predicates / conversions

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def is_rational(self):
        return all(c == 0 for c in self.coeffs[1:])

    def rational_value(self):
        if not self.is_rational():
            raise ValueError("not a rational element: %s" % self)
        return self.coeffs[0]

    def sort_key(self):
        return tuple((c.numerator, c.denominator) for c in self.coeffs)

    # -- arithmetic

    def _check(self, other):
        if not isinstance(other, CycNum):
            raise TypeError("expected CycNum, got %r" % (other,))
        if other.order != self.order:
            raise ValueError(
                "mixed cyclotomic orders %d and %d; embed first"
                % (self.order, other.order)
            )

    def __add__(self, other):
        self._check(other)
        return CycNum(self.order, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other):
        self._check(other)
        return CycNum(self.order, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self):
        return CycNum(self.order, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum(self.order, [a * f for a in self.coeffs])
        self._check(other)
        a, b = self.coeffs, other.coeffs
        phi = len(a)
        conv = [_ZERO] * (2 * phi - 1 if phi else 1)
        for i, ai in enumerate(a):
            if ai == 0:
                continue
            for j, bj in enumerate(b):
                if bj != 0:
                    conv[i + j] += ai * bj
        table = _power_table(self.order)
        out = list(conv[:phi])
        for k in range(phi, len(conv)):
            ck = conv[k]
            if ck != 0:
                red = table[k]
                for i in range(phi):
                    if red[i] != 0:
                        out[i] += ck * red[i]
        return CycNum(self.order, out)

    __rmul__ = __mul__

    def inverse(self):
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero")
        if self.is_rational():
            return CycNum.rational(self.order, 1 / self.coeffs[0])
        # extended Euclid in Q[x] against Phi_N; track s with r = u*Phi + s*self
        r0 = list(cyclotomic_polynomial(self.order))
        r1 = _poly_trim(list(self.coeffs))
        s0, s1 = [], [_ONE]
        while True:
            q, r = _poly_divmod(r0, r1)
            if not r:
                break
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        # r1 is the gcd, a nonzero constant since Phi_N is irreducible
        assert len(r1) == 1
        g = r1[0]
        phi = euler_phi(self.order)
        inv = [c / g for c in s1] + [_ZERO] * (phi - len(s1))
        return CycNum(self.order, inv[:phi])

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            f = Fraction(other)
            return CycNum(self.order, [a / f for a in self.coeffs])
        self._check(other)
        return self * other.inverse()

    def __pow__(self, k):
        if k < 0:
            return self.inverse() ** (-k)
        result = CycNum.one(self.order)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if not isinstance(other, CycNum):
            return NotImplemented
        return self.order == other.order and self.coeffs == other.coeffs

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.order, self.coeffs))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return "CycNum(%d, %s)" % (self.order, render_scalar(self))

    def __str__(self):
        return render_scalar(self)


def embed(order_from, order_to, x):
    """Image of x under Q(zeta_M) -> Q(zeta_N), zeta_M -> zeta_N^(N/M)."""
    if order_to % order_from != 0:
        raise NonDivisibleOrders(
            "%d does not divide %d" % (order_from, order_to)
        )
    if x.order != order_from:
        raise ValueError("element has order %d, not %d" % (x.order, order_from))
    if order_from == order_to:
        return x
    step = order_to // order_from
    out = CycNum.zero(order_to)
    for k, c in enumerate(x.coeffs):
        if c != 0:
            out = out + CycNum.zeta_pow(order_to, k * step) * c
    return out


def root_of_unity(order, n):
    """zeta_n^(n/order): a primitive order-th root of unity in Q(zeta_n)."""
    if n % order != 0:
        raise NonDivisibleOrders("%d does not divide %d" % (order, n))
    return CycNum.zeta_pow(n, n // order)


def unit_group_order(n):
    """The roots of unity contained in Q(zeta_n) form mu_M; return M."""
    return n if n % 2 == 0 else 2 * n


def roots_of_unity_in_field(n, k):
    """All x in Q(zeta_n) with x^k = 1."""
    m = unit_group_order(n)
    d = gcd(m, k)
    minus_one = CycNum.rational(n, -1)
    out = []
    seen = set()
    for j in range(m):
        # mu_m is generated by -zeta_n (n odd) or zeta_n (n even)
        if n % 2 == 0:
            x = CycNum.zeta_pow(n, j)
        else:
            x = CycNum.zeta_pow(n, j % n)
            if j % 2 == 1:
                x = x * minus_one
        if j % (m // d) == 0 and x not in seen:
            seen.add(x)
            out.append(x)
    return sorted(out, key=CycNum.sort_key)


def _rational_nth_root(value, k):
    """Exact rational x with x^k = value, or None."""
    value = Fraction(value)
    if value == 0:
        return _ZERO
    neg = value < 0
    if neg and k % 2 == 0:
        return None
    mag = -value if neg else value

    def iroot(m, k):
        if m == 0:
            return 0
        lo, hi = 0, max(2, int(round(m ** (1.0 / k))) + 2)
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if mid ** k <= m:
                lo = mid
            else:
                hi = mid - 1
        return lo

    num = iroot(mag.numerator, k)
    den = iroot(mag.denominator, k)
    if num ** k != mag.numerator or den ** k != mag.denominator:
        return None
    root = Fraction(num, den)
    return -root if neg else root


def binomial_roots(c, k):
    """Roots of x^k = c in Q(zeta_N), or None when the fast path cannot
    decide.  Complete whenever it returns a list."""
    n = c.order
    if c.is_zero():
        return [CycNum.zero(n)]
    # try to write c as r * (root of unity); scan the finitely many units
    base = None
    for w in roots_of_unity_in_field(n, unit_group_order(n)):
        q = c * w.inverse()
        if q.is_rational():
            r = q.rational_value()
            rho = _rational_nth_root(r, k)
            if rho is not None:
                # need an exact k-th root of w as well: w = u^k for some unit u?
                for u in roots_of_unity_in_field(n, unit_group_order(n)):
                    if u ** k == w:
                        base = CycNum.rational(n, rho) * u
                        break
            if base is not None:
                break
    if base is None:
        return None
    assert base ** k == c
    return sorted(
        {(base * w).sort_key(): base * w for w in roots_of_unity_in_field(n, k)}.values(),
        key=CycNum.sort_key,
    )


# ---------------------------------------------------------------------------
# scalar text syntax: sums of  c | c*z^k | z^k   with rational c


def render_scalar(x):
    """Canonical text form: ascending powers, reduced fractions, no spaces."""
    parts = []
    for k, c in enumerate(x.coeffs):
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        mag = -c if c < 0 else c
        if k == 0:
            body = str(mag)
        else:
            zk = "z" if k == 1 else "z^%d" % k
            body = zk if mag == 1 else "%s*%s" % (mag, zk)
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += sign + body
    return text


def parse_scalar(text, order, line=1, col=1):
    """Parse the scalar syntax into a CycNum of the given order.

    line/col seed the error positions so the YDH parser can report the
    location inside a larger file.
    """
    phi = euler_phi(order)
    s = text
    i = 0
    out = [_ZERO] * phi

    def err(expected, at):
        raise ParseError(line, col + at, expected)

    def skip_ws(i):
        while i < len(s) and s[i] in " \t":
            i += 1
        return i

    def parse_int(i):
        start = i
        while i < len(s) and s[i].isdigit():
            i += 1
        if i == start:
            err("integer", start)
        return int(s[start:i]), i

    i = skip_ws(i)
    if i >= len(s):
        err("scalar", i)
    first = True
    while i < len(s):
        i = skip_ws(i)
        if i >= len(s):
            break
        sign = 1
        if s[i] in "+-":
            if s[i] == "-":
                sign = -1
            i += 1
            i = skip_ws(i)
        elif not first:
            err("'+' or '-'", i)
        first = False
        if i >= len(s) or (not s[i].isdigit() and s[i] != "z"):
            err("term", i)
        coeff = _ONE
        power = None
        if i < len(s) and s[i].isdigit():
            num, i = parse_int(i)
            den = 1
            if i < len(s) and s[i] == "/":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("denominator", i)
                den, i = parse_int(i)
                if den == 0:
                    err("nonzero denominator", i - 1)
            coeff = Fraction(num, den)
            i = skip_ws(i)
            if i < len(s) and s[i] == "*":
                i += 1
                i = skip_ws(i)
                if i >= len(s) or s[i] != "z":
                    err("'z'", i)
        if i < len(s) and s[i] == "z":
            i += 1
            power = 1
            if i < len(s) and s[i] == "^":
                i += 1
                if i >= len(s) or not s[i].isdigit():
                    err("exponent", i)
                power, i = parse_int(i)
        if power is None:
            term = [_ZERO] * phi
            term[0] = coeff
        else:
            red = _power_table(order)[power % order]
            term = [coeff * r for r in red]
        if sign < 0:
            term = [-t for t in term]
        out = [a + b for a, b in zip(out, term)]
        i = skip_ws(i)
    return CycNum(order, out)


# ---------------------------------------------------------------------------
# polynomials over CycNum


class CycPoly:
    """Dense polynomial over CycNum, ascending degree.  The zero polynomial
    has an empty coefficient tuple."""

    __slots__ = ("order", "coeffs")

    def __init__(self, order, coeffs):
        coeffs = list(coeffs)
        while coeffs and coeffs[-1].is_zero():
            coeffs.pop()
        self.order = order
        self.coeffs = tuple(coeffs)

    @staticmethod
    def from_roots(order, roots):
        p = CycPoly(order, [CycNum.one(order)])
        for r in roots:
            p = p * CycPoly(order, [-r, CycNum.one(order)])
        return p

    def degree(self):
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        return (isinstance(other, CycPoly) and self.order == other.order
                and self.coeffs == other.coeffs)

    def __hash__(self):
        return hash((self.order, self.coeffs))

    def __repr__(self):
        return "CycPoly(%d, [%s])" % (
            self.order, ", ".join(render_scalar(c) for c in self.coeffs))

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        z = CycNum.zero(self.order)
        a = list(self.coeffs) + [z] * (n - len(self.coeffs))
        b = list(other.coeffs) + [z] * (n - len(other.coeffs))
        return CycPoly(self.order, [x + y for x, y in zip(a, b)])

    def __neg__(self):
        return CycPoly(self.order, [-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, CycNum):
            return CycPoly(self.order, [c * other for c in self.coeffs])
        if self.is_zero() or other.is_zero():
            return CycPoly(self.order, [])
        z = CycNum.zero(self.order)
        out = [z] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return CycPoly(self.order, out)

    def divmod(self, other):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        a = list(self.coeffs)
        b = other.coeffs
        z = CycNum.zero(self.order)
        q = [z] * max(0, len(a) - len(b) + 1)
        inv_lead = b[-1].inverse()
        while len(a) >= len(b):
            k = len(a) - len(b)
            f = a[-1] * inv_lead
            q[k] = f
            for i, bi in enumerate(b):
                a[k + i] = a[k + i] - f * bi
            while a and a[-1].is_zero():
                a.pop()
        return CycPoly(self.order, q), CycPoly(self.order, a)

    def monic(self):
        if self.is_zero():
            return self
        inv = self.coeffs[-1].inverse()
        return self * inv

    def gcd(self, other):
        a, b = self, other
        while not b.is_zero():
            a, b = b, a.divmod(b)[1]
        return a.monic()

    def derivative(self):
        return CycPoly(self.order,
                       [c * k for k, c in enumerate(self.coeffs)][1:])

    def evaluate(self, x):
        acc = CycNum.zero(self.order)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def squarefree_decomposition(self):
        """Yun's algorithm: list of (factor, multiplicity), factors monic
        squarefree and pairwise coprime."""
        p = self.monic()
        if p.degree() < 1:
            return []
        d = p.derivative()
        a = p.gcd(d)
        b = p.divmod(a)[0]
        c = d.divmod(a)[0]
        z = c - b.derivative()
        out = []
        i = 1
        while b.degree() >= 1:
            f = b.gcd(z)
            if f.degree() >= 1:
                out.append((f, i))
            b = b.divmod(f)[0]
            z = z.divmod(f)[0] - b.derivative()
            i += 1
        return out


def _root_multiplicity(p, r):
    count = 0
    linear = CycPoly(p.order, [-r, CycNum.one(p.order)])
    while True:
        q, rem = p.divmod(linear)
        if not rem.is_zero():
            return count
        count += 1
        p = q


# sympy fallback ------------------------------------------------------------

_sympy_field_cache = {}


def _sympy_field(order):
    import sympy
    from sympy import QQ

    if order in _sympy_field_cache:
        return _sympy_field_cache[order]
    if order <= 2:
        field = QQ
    else:
        zeta = sympy.exp(2 * sympy.pi * sympy.I / order)
        field = QQ.algebraic_field(zeta)
    _sympy_field_cache[order] = field
    return field


def _to_sympy_coeff(field, order, x):
    from sympy import QQ
    from sympy.polys.polyclasses import ANP

    if order <= 2:
        f = x.rational_value()
        return QQ(f.numerator, f.denominator)
    mod = field.one.mod
    rep = [QQ(c.numerator, c.denominator) for c in reversed(x.coeffs)]
    return ANP(rep, mod, QQ)


def _from_sympy_coeff(order, a):
    phi = euler_phi(order)
    if order <= 2:
        return CycNum(order, [Fraction(int(a.numerator), int(a.denominator))])
    rep = list(a.rep)  # descending coefficients in the primitive element
    rep = rep[::-1] + [0] * (phi - len(rep))
    return CycNum(order, [Fraction(int(c.numerator), int(c.denominator))
                          for c in rep[:phi]])


def _sympy_linear_roots(p):
    """Roots in Q(zeta_N) of a squarefree CycPoly via field factorization."""
    import sympy

    field = _sympy_field(p.order)
    x = sympy.Symbol("x")
    coeffs = [_to_sympy_coeff(field, p.order, c) for c in reversed(p.coeffs)]
    poly = sympy.Poly(coeffs, x, domain=field)
    roots = []
    for factor, _mult in poly.factor_list()[1]:
        if factor.degree() == 1:
            c1, c0 = factor.rep.to_list()
            lead = _from_sympy_coeff(p.order, c1)
            const = _from_sympy_coeff(p.order, c0)
            roots.append(-const / lead)
    return roots


def roots_in_field(p):
    """Every root of p in Q(zeta_N) with exact multiplicity, sorted
    canonically.  A polynomial without roots in the field returns []."""
    if p.is_zero():
        raise ValueError("roots of the zero polynomial are undefined")
    if p.degree() < 1:
        return []
    order = p.order
    roots = []
    for factor, mult in p.squarefree_decomposition():
        found = None
        if factor.degree() == 1:
            found = [-factor.coeffs[0] / factor.coeffs[1]]
        elif all(c.is_zero() for c in factor.coeffs[1:-1]):
            # binomial a*x^L + b
            c = -factor.coeffs[0] / factor.coeffs[-1]
            found = binomial_roots(c, factor.degree())
        if found is None:
            found = _sympy_linear_roots(factor)
        for r in found:
            assert factor.evaluate(r).is_zero()
            roots.append((r, mult))
    return sorted(roots, key=lambda rm: rm[0].sort_key())
