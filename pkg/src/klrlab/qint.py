"""Laurent polynomials in q with integer coefficients, plus exact fraction and elimination helpers."""

from fractions import Fraction
from math import gcd as _int_gcd


class LaurentPoly:
    """A Laurent polynomial in q, stored as {exponent: nonzero int coefficient}."""

    __slots__ = ("_t",)

    def __init__(self, terms=None):
        t = {}
        if terms:
            items = terms.items() if isinstance(terms, dict) else terms
            for e, c in items:
                if c:
                    c2 = t.get(e, 0) + c
                    if c2:
                        t[e] = c2
                    elif e in t:
                        del t[e]
        self._t = t

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def one(cls):
        return cls({0: 1})

    @classmethod
    def q_power(cls, k, coeff=1):
        return cls({k: coeff})

    def items(self):
        return self._t.items()

    def is_zero(self):
        return not self._t

    def __bool__(self):
        return bool(self._t)

    def __eq__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._t == other._t

    def __hash__(self):
        return hash(tuple(sorted(self._t.items())))

    def __add__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        t = dict(self._t)
        for e, c in other._t.items():
            c2 = t.get(e, 0) + c
            if c2:
                t[e] = c2
            elif e in t:
                del t[e]
        out = LaurentPoly()
        out._t = t
        return out

    __radd__ = __add__

    def __neg__(self):
        out = LaurentPoly()
        out._t = {e: -c for e, c in self._t.items()}
        return out

    def __sub__(self, other):
        if isinstance(other, int):
            other = LaurentPoly({0: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return LaurentPoly()
            out = LaurentPoly()
            out._t = {e: c * other for e, c in self._t.items()}
            return out
        t = {}
        for e1, c1 in self._t.items():
            for e2, c2 in other._t.items():
                e = e1 + e2
                c = t.get(e, 0) + c1 * c2
                if c:
                    t[e] = c
                elif e in t:
                    del t[e]
        out = LaurentPoly()
        out._t = t
        return out

    __rmul__ = __mul__

    def __pow__(self, n):
        out = LaurentPoly.one()
        for _ in range(n):
            out = out * self
        return out

    def shift(self, k):
        """Multiply by q^k."""
        out = LaurentPoly()
        out._t = {e + k: c for e, c in self._t.items()}
        return out

    def bar(self):
        """Substitute q -> q^{-1}."""
        out = LaurentPoly()
        out._t = {-e: c for e, c in self._t.items()}
        return out

    def at_one(self):
        """Evaluate at q = 1."""
        return sum(self._t.values())

    def min_exp(self):
        return min(self._t) if self._t else 0

    def max_exp(self):
        return max(self._t) if self._t else 0

    def to_pairs(self):
        """JSON form: [[exponent, coefficient], ...] with exponents ascending."""
        return [[e, self._t[e]] for e in sorted(self._t)]

    @classmethod
    def from_pairs(cls, pairs):
        return cls({int(e): int(c) for e, c in pairs})

    def __repr__(self):
        if not self._t:
            return "0"
        bits = []
        for e in sorted(self._t, reverse=True):
            c = self._t[e]
            if e == 0:
                bits.append(f"{c:+d}")
            elif e == 1:
                bits.append(f"{c:+d}*q")
            else:
                bits.append(f"{c:+d}*q^{e}")
        s = " ".join(bits)
        return s[1:] if s.startswith("+") else s


def quantum_integer(n):
    """The balanced quantum integer [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}, with [-n] = -[n]."""
    if n == 0:
        return LaurentPoly.zero()
    sign = 1 if n > 0 else -1
    m = abs(n)
    return LaurentPoly({m - 1 - 2 * k: sign for k in range(m)})


def bar_involution(p):
    """Apply the bar involution q -> q^{-1} to a Laurent polynomial."""
    return p.bar()


def laurent_arith(a, b, op):
    """Dispatch basic arithmetic: op is one of 'add', 'mul', 'eq'."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "eq":
        return a == b
    raise ValueError(f"unknown op {op!r}")


# ---------------------------------------------------------------------------
# dense integer polynomial helpers (for gcd / exact division of Laurent polys)

def _to_dense(p):
    """LaurentPoly -> (shift, coefficient list c[0..d]) with c[0] != 0, as q^shift * sum c_k q^k."""
    if p.is_zero():
        return 0, []
    lo = p.min_exp()
    hi = p.max_exp()
    c = [0] * (hi - lo + 1)
    for e, v in p.items():
        c[e - lo] = v
    return lo, c


def _from_dense(shift, c):
    return LaurentPoly({shift + k: v for k, v in enumerate(c) if v})


def _dense_trim(c):
    while c and c[-1] == 0:
        c.pop()
    return c


def _dense_content(c):
    g = 0
    for v in c:
        g = _int_gcd(g, abs(v))
    return g or 1


def _dense_mul_scalar(c, s):
    return [v * s for v in c]


def _dense_pseudo_rem(f, g):
    """Pseudo-remainder of f by g (both dense int lists, g nonzero)."""
    f = list(f)
    dg = len(g) - 1
    lg = g[-1]
    while len(f) - 1 >= dg and f:
        df = len(f) - 1
        lf = f[-1]
        f = _dense_mul_scalar(f, lg)
        for k in range(dg + 1):
            f[df - dg + k] -= lf * g[k]
        _dense_trim(f)
    return f


def _dense_gcd(f, g):
    """Primitive gcd of two dense int polynomials (primitive PRS)."""
    f = _dense_trim(list(f))
    g = _dense_trim(list(g))
    while g:
        r = _dense_pseudo_rem(f, g)
        _dense_trim(r)
        if r:
            cont = _dense_content(r)
            r = [v // cont for v in r]
        f, g = g, r
    cont = _dense_content(f)
    f = [v // cont for v in f]
    if f and f[-1] < 0:
        f = [-v for v in f]
    return f


def _dense_divexact(f, g):
    """Exact quotient f/g over the rationals; raises if the division is not exact."""
    f = [Fraction(v) for v in f]
    q = [Fraction(0)] * (len(f) - len(g) + 1)
    dg = len(g) - 1
    lg = Fraction(g[-1])
    work = list(f)
    for i in range(len(q) - 1, -1, -1):
        coef = work[i + dg] / lg
        q[i] = coef
        for k in range(dg + 1):
            work[i + k] -= coef * g[k]
    if any(v != 0 for v in work):
        raise ArithmeticError("inexact polynomial division")
    return q


def laurent_divexact(a, b):
    """Exact division of Laurent polynomials; the quotient must have integer coefficients."""
    if b.is_zero():
        raise ZeroDivisionError("laurent division by zero")
    if a.is_zero():
        return LaurentPoly.zero()
    sa, fa = _to_dense(a)
    sb, fb = _to_dense(b)
    q = _dense_divexact(fa, fb)
    out = {}
    for k, v in enumerate(q):
        if v:
            if v.denominator != 1:
                raise ArithmeticError("inexact laurent division")
            out[sa - sb + k] = int(v)
    return LaurentPoly(out)


class LaurentFrac:
    """A reduced fraction of Laurent polynomials."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=None):
        if isinstance(num, int):
            num = LaurentPoly({0: num})
        if den is None:
            den = LaurentPoly.one()
        elif isinstance(den, int):
            den = LaurentPoly({0: den})
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if num.is_zero():
            self.num = LaurentPoly.zero()
            self.den = LaurentPoly.one()
            return
        sn, fn = _to_dense(num)
        sd, fd = _to_dense(den)
        cn, cd = _dense_content(fn), _dense_content(fd)
        pn = [v // cn for v in fn]
        pd = [v // cd for v in fd]
        g = _dense_gcd(pn, pd)
        if len(g) > 1 or g[0] != 1:
            pn = [int(v) for v in _int_quotient_list(_dense_divexact(pn, g))]
            pd = [int(v) for v in _int_quotient_list(_dense_divexact(pd, g))]
        cg = _int_gcd(cn, cd)
        cn //= cg
        cd //= cg
        if pd[-1] < 0:
            pd = [-v for v in pd]
            pn = [-v for v in pn]
        if cd < 0:
            cd = -cd
            cn = -cn
        # absorb the q-power shift entirely into the numerator
        self.num = _from_dense(sn - sd, _dense_mul_scalar(pn, cn))
        self.den = _from_dense(0, _dense_mul_scalar(pd, cd))

    @classmethod
    def zero(cls):
        return cls(LaurentPoly.zero())

    @classmethod
    def one(cls):
        return cls(LaurentPoly.one())

    def is_zero(self):
        return self.num.is_zero()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentFrac(other)
        if not isinstance(other, LaurentFrac):
            return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def __add__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentFrac(other)
        return LaurentFrac(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        out = LaurentFrac.__new__(LaurentFrac)
        out.num = -self.num
        out.den = self.den
        return out

    def __sub__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentFrac(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentFrac(other)
        return LaurentFrac(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, LaurentPoly)):
            other = LaurentFrac(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero fraction")
        return LaurentFrac(self.num * other.den, self.den * other.num)

    def as_poly(self):
        """Return the numerator if the denominator is 1, else raise."""
        if self.den == LaurentPoly.one():
            return self.num
        raise ArithmeticError(f"fraction {self!r} is not polynomial")

    def to_record(self):
        return {"num": self.num.to_pairs(), "den": self.den.to_pairs()}

    def __repr__(self):
        if self.den == LaurentPoly.one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"


def _int_quotient_list(fracs):
    out = []
    for v in fracs:
        if v.denominator != 1:
            raise ArithmeticError("inexact division")
        out.append(int(v))
    return out


# ---------------------------------------------------------------------------
# fraction-free elimination (Bareiss) over Z or Z[q, q^{-1}]

def _exact_div(a, b):
    if isinstance(a, int) and isinstance(b, int):
        q, r = divmod(a, b)
        if r:
            raise ArithmeticError("inexact integer division in elimination")
        return q
    if isinstance(a, int):
        a = LaurentPoly({0: a})
    if isinstance(b, int):
        b = LaurentPoly({0: b})
    return laurent_divexact(a, b)


def _is_zero_entry(a):
    return a == 0 if isinstance(a, int) else a.is_zero()


def row_echelon_bareiss(rows):
    """Fraction-free row reduction; returns (pivot column list, reduced rows).

    Works in place on a copy, entries are ints or LaurentPolys.
    """
    m = [list(r) for r in rows]
    if not m:
        return [], m
    ncols = len(m[0])
    pivots = []
    prev = 1
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(m)):
            if not _is_zero_entry(m[i][c]):
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(r + 1, len(m)):
            for j in range(c + 1, ncols):
                m[i][j] = _exact_div(m[r][c] * m[i][j] - m[i][c] * m[r][j], prev)
            m[i][c] = 0 if isinstance(m[i][c], int) else LaurentPoly.zero()
        prev = m[r][c]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return pivots, m


def matrix_rank(rows):
    """Rank of an integer or Laurent-polynomial matrix, via fraction-free elimination."""
    pivots, _ = row_echelon_bareiss(rows)
    return len(pivots)


def solve_linear(matrix, rhs):
    """Solve M x = rhs exactly over Laurent fractions; M square nonsingular."""
    n = len(matrix)
    a = [[LaurentFrac(v) if not isinstance(v, LaurentFrac) else v for v in row] + [
        rhs[i] if isinstance(rhs[i], LaurentFrac) else LaurentFrac(rhs[i])
    ] for i, row in enumerate(matrix)]
    for c in range(n):
        piv = None
        for i in range(c, n):
            if not a[i][c].is_zero():
                piv = i
                break
        if piv is None:
            raise ArithmeticError("singular system")
        a[c], a[piv] = a[piv], a[c]
        inv = a[c][c]
        for i in range(n):
            if i == c or a[i][c].is_zero():
                continue
            factor = a[i][c] / inv
            for j in range(c, n + 1):
                a[i][j] = a[i][j] - factor * a[c][j]
    return [a[i][n] / a[i][i] for i in range(n)]
