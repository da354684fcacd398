"""Exact rational polynomials, Laurent polynomials and linear algebra.

Everything is built on :class:`fractions.Fraction`; nothing here ever
rounds.  Polynomials are immutable maps ``exponent -> Fraction`` with no
stored zeros.  Arithmetic between two polynomials returns a :class:`Poly`
whenever every exponent of the result is non-negative, otherwise a
:class:`LaurentPoly`; the two compare equal whenever their coefficient
maps agree.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from numbers import Rational as _RationalABC
from typing import Iterable, Mapping, Sequence

INF = math.inf
NEG_INF = -math.inf


def Q(x) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, str)):
        return Fraction(x)
    if isinstance(x, _RationalABC):
        return Fraction(x.numerator, x.denominator)
    raise TypeError(f"not an exact rational: {x!r}")


def format_rational(q: Fraction) -> str:
    q = Q(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


class LaurentPoly:
    """Element of Q[t, 1/t]."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs=None):
        if coeffs is None:
            c = {}
        elif isinstance(coeffs, LaurentPoly):
            c = dict(coeffs._c)
        elif isinstance(coeffs, Mapping):
            c = {}
            for e, v in coeffs.items():
                if not isinstance(e, int) or isinstance(e, bool):
                    raise TypeError(f"exponent must be int, got {e!r}")
                v = Q(v)
                if v:
                    c[e] = v
        else:
            v = Q(coeffs)
            c = {0: v} if v else {}
        self._check(c)
        self._c = c
        self._hash = None

    def _check(self, c):
        pass

    @staticmethod
    def _wrap(c: dict) -> "LaurentPoly":
        # trusted constructor: c has no zeros and int keys
        cls = Poly if all(e >= 0 for e in c) else LaurentPoly
        obj = object.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        coeff = Q(coeff)
        return LaurentPoly._wrap({exp: coeff} if coeff else {})

    # -- inspection -------------------------------------------------------
    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def coeff(self, e: int) -> Fraction:
        return self._c.get(e, Fraction(0))

    def items(self):
        return self._c.items()

    def terms(self):
        """(exponent, coefficient) pairs, highest exponent first."""
        return sorted(self._c.items(), reverse=True)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def is_poly(self) -> bool:
        return all(e >= 0 for e in self._c)

    def is_constant(self) -> bool:
        return all(e == 0 for e in self._c)

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    @property
    def degree(self):
        return max(self._c) if self._c else NEG_INF

    @property
    def low_degree(self):
        return min(self._c) if self._c else INF

    @property
    def lc(self) -> Fraction:
        return self._c[max(self._c)] if self._c else Fraction(0)

    def to_poly(self) -> "Poly":
        if not self.is_poly():
            raise ValueError(f"{self} has negative exponents")
        return Poly._wrap(dict(self._c))

    # -- arithmetic -------------------------------------------------------
    @staticmethod
    def _coerce(other):
        if isinstance(other, LaurentPoly):
            return other
        try:
            return LaurentPoly(Q(other))
        except TypeError:
            return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        c = dict(self._c)
        for e, v in other._c.items():
            s = c.get(e, 0) + v
            if s:
                c[e] = s
            else:
                c.pop(e, None)
        return LaurentPoly._wrap(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._wrap({e: -v for e, v in self._c.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        if isinstance(other, LaurentPoly):
            c: dict = {}
            for e1, v1 in self._c.items():
                for e2, v2 in other._c.items():
                    e = e1 + e2
                    c[e] = c.get(e, 0) + v1 * v2
            return LaurentPoly._wrap({e: v for e, v in c.items() if v})
        try:
            s = Q(other)
        except TypeError:
            return NotImplemented
        if not s:
            return LaurentPoly._wrap({})
        return LaurentPoly._wrap({e: v * s for e, v in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, LaurentPoly):
            if other.is_monomial():
                (e, v), = other._c.items()
                return LaurentPoly._wrap({k - e: c / v for k, c in self._c.items()})
            return NotImplemented
        s = Q(other)
        if not s:
            raise ZeroDivisionError("division by zero")
        return LaurentPoly._wrap({e: v / s for e, v in self._c.items()})

    def __pow__(self, n: int):
        if not isinstance(n, int):
            return NotImplemented
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative powers only for monomials")
            (e, v), = self._c.items()
            return LaurentPoly._wrap({e * n: v ** n})
        result = LaurentPoly._wrap({0: Fraction(1)})
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        return LaurentPoly._wrap({e + k: v for e, v in self._c.items()})

    def derivative(self) -> "LaurentPoly":
        return LaurentPoly._wrap({e - 1: v * e for e, v in self._c.items() if e})

    def __call__(self, x):
        x = Q(x)
        if not self._c:
            return Fraction(0)
        if x == 0:
            if self.low_degree < 0:
                raise ZeroDivisionError("Laurent polynomial has a pole at 0")
            return self.coeff(0)
        return sum((v * x ** e for e, v in self._c.items()), Fraction(0))

    # -- comparisons ------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, LaurentPoly):
            return self._c == other._c
        try:
            return self._c == LaurentPoly(Q(other))._c
        except TypeError:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"{type(self).__name__}({format_poly(self)!r})"


class Poly(LaurentPoly):
    """Element of Q[t]."""

    __slots__ = ()

    def _check(self, c):
        if any(e < 0 for e in c):
            raise ValueError("Poly exponents must be non-negative")

    @classmethod
    def from_coeffs(cls, coeffs: Sequence) -> "Poly":
        """Build from an ascending coefficient list ``[a0, a1, ...]``."""
        return Poly({i: c for i, c in enumerate(coeffs)})

    @classmethod
    def t(cls) -> "Poly":
        return Poly({1: 1})

    def to_list(self, length: int | None = None) -> list:
        n = (self.degree + 1 if self._c else 0) if length is None else length
        return [self.coeff(i) for i in range(n)]

    def monic(self) -> "Poly":
        if not self._c:
            return self
        return self / self.lc

    def divmod(self, other: "Poly"):
        if not other:
            raise ZeroDivisionError("polynomial division by zero")
        r = dict(self._c)
        dq = other.degree
        lcq = other.lc
        oterms = list(other._c.items())
        quo = {}
        while r:
            dr = max(r)
            if dr < dq:
                break
            c = r[dr] / lcq
            s = dr - dq
            quo[s] = c
            for e, v in oterms:
                k = e + s
                nv = r.get(k, 0) - c * v
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
        return Poly._wrap(quo), Poly._wrap(r)

    def __floordiv__(self, other):
        return self.divmod(_as_poly(other))[0]

    def __mod__(self, other):
        return self.divmod(_as_poly(other))[1]

    def divides(self, other: "Poly") -> bool:
        return not other.divmod(self)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if r:
            raise ValueError(f"{other} does not divide {self}")
        return q

    def compose(self, q: "LaurentPoly") -> "LaurentPoly":
        """self(q(t)), by Horner's rule."""
        result = LaurentPoly._wrap({})
        if not self._c:
            return result
        for e in range(self.degree, -1, -1):
            result = result * q + self.coeff(e)
        return result

    def content_primitive(self):
        """Return (c, P) with self = c*P and P having coprime integer coefficients, lc > 0."""
        if not self._c:
            return Fraction(0), self
        den = reduce(lambda a, b: a * b // math.gcd(a, b), (v.denominator for v in self._c.values()))
        ints = {e: int(v * den) for e, v in self._c.items()}
        g = reduce(math.gcd, (abs(v) for v in ints.values()))
        if ints[max(ints)] < 0:
            g = -g
        return Fraction(g, den), Poly._wrap({e: Fraction(v // g) for e, v in ints.items()})


def _as_poly(p) -> Poly:
    if isinstance(p, Poly):
        return p
    if isinstance(p, LaurentPoly):
        return p.to_poly()
    return Poly(Q(p))


ONE = Poly(1)
T = Poly({1: 1})


# -- formatting -----------------------------------------------------------

def format_poly(p: LaurentPoly) -> str:
    """Canonical text: descending exponents, explicit signs, lowest terms."""
    if not p:
        return "0"
    parts = []
    for i, (e, v) in enumerate(p.terms()):
        neg = v < 0
        a = -v if neg else v
        if e == 0:
            body = format_rational(a)
        else:
            mono = "t" if e == 1 else f"t^{e}"
            body = mono if a == 1 else f"{format_rational(a)}*{mono}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


# -- polynomial algorithms ------------------------------------------------

def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd; gcd(0, 0) = 0."""
    f, g = _as_poly(f), _as_poly(g)
    while g:
        f, g = g, f.divmod(g)[1]
    return f.monic()


def poly_gcd_many(polys: Iterable[Poly]) -> Poly:
    return reduce(poly_gcd, polys, Poly())


def poly_lcm(f: Poly, g: Poly) -> Poly:
    if not f or not g:
        return Poly()
    return (f * g).to_poly().exact_div(poly_gcd(f, g)).monic()


def poly_xgcd(f: Poly, g: Poly):
    """Return (d, a, b) with a*f + b*g = d = monic gcd."""
    r0, r1 = _as_poly(f), _as_poly(g)
    a0, a1 = ONE, Poly()
    b0, b1 = Poly(), ONE
    while r1:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        a0, a1 = a1, (a0 - q * a1).to_poly()
        b0, b1 = b1, (b0 - q * b1).to_poly()
    if not r0:
        return r0, a0, b0
    c = r0.lc
    return r0 / c, a0 / c, b0 / c


def squarefree_part(f: Poly) -> Poly:
    """Monic radical rad(f) = f / gcd(f, f')."""
    f = _as_poly(f)
    if not f:
        from .errors import DomainError
        raise DomainError("squarefree part of the zero polynomial")
    return f.exact_div(poly_gcd(f, f.derivative().to_poly())).monic()


def squarefree_decomposition(f: Poly) -> list:
    """Yun's algorithm: monic [a1, a2, ...] with f = lc * prod a_i^i."""
    f = _as_poly(f)
    if not f or f.degree == 0:
        return []
    f = f.monic()
    fp = f.derivative().to_poly()
    a = poly_gcd(f, fp)
    b = f.exact_div(a)
    c = fp.exact_div(a)
    d = (c - b.derivative()).to_poly()
    out = []
    while b.degree > 0:
        ai = poly_gcd(b, d)
        out.append(ai)
        b = b.exact_div(ai)
        c = d.exact_div(ai)
        d = (c - b.derivative()).to_poly()
    return out


def multiplicity_profile(f: Poly) -> tuple:
    """Sorted multiset of root multiplicities over the algebraic closure."""
    out = []
    for i, a in enumerate(squarefree_decomposition(f), start=1):
        out.extend([i] * int(a.degree))
    return tuple(sorted(out))


def ord_at(f: LaurentPoly, xi) -> float | int:
    """Order of vanishing of f at xi; ``INF`` for the zero polynomial."""
    xi = Q(xi)
    if not f:
        return INF
    if xi == 0:
        return int(f.low_degree)
    low = f.low_degree
    p = f.shift(-low).to_poly() if low < 0 else f.to_poly()
    lin = Poly({1: 1, 0: -xi})
    k = 0
    while True:
        q, r = p.divmod(lin)
        if r:
            return k
        p = q
        k += 1


def poly_compose(p: Poly, q: LaurentPoly) -> LaurentPoly:
    return _as_poly(p).compose(q)


def _divisors(n: int) -> list:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(f: Poly) -> list:
    """Distinct rational roots in increasing order (rational root theorem)."""
    f = _as_poly(f)
    if not f or f.degree <= 0:
        return []
    roots = set()
    low = int(f.low_degree)
    if low > 0:
        roots.add(Fraction(0))
        f = f.shift(-low).to_poly()
    if f.degree > 0:
        _, prim = f.content_primitive()
        a0 = int(prim.coeff(0))
        an = int(prim.lc)
        for p in _divisors(a0):
            for q in _divisors(an):
                for s in (1, -1):
                    x = Fraction(s * p, q)
                    if x not in roots and not prim(x):
                        roots.add(x)
    return sorted(roots)


def rational_kth_roots(q, k: int) -> list:
    """All rational x with x^k = q."""
    q = Q(q)
    if k <= 0:
        raise ValueError("k must be positive")
    if q == 0:
        return [Fraction(0)]
    if q < 0 and k % 2 == 0:
        return []
    num = _int_kth_root(abs(q.numerator), k)
    den = _int_kth_root(q.denominator, k)
    if num is None or den is None:
        return []
    x = Fraction(num, den)
    if q < 0:
        return [-x]
    return [-x, x] if k % 2 == 0 else [x]


def _int_kth_root(n: int, k: int):
    if n < 2:
        return n
    x = int(round(n ** (1.0 / k)))
    for c in (x - 1, x, x + 1):
        if c >= 0 and c ** k == n:
            return c
    # large inputs: Newton iteration on integers
    lo, hi = 0, 1 << (n.bit_length() // k + 1)
    while lo <= hi:
        mid = (lo + hi) // 2
        m = mid ** k
        if m == n:
            return mid
        if m < n:
            lo = mid + 1
        else:
            hi = mid - 1
    return None


def inverse_mod(a: Poly, m: Poly) -> Poly:
    d, x, _ = poly_xgcd(_as_poly(a) % m, m)
    if d != ONE:
        raise ValueError(f"{a} is not invertible modulo {m}")
    return x % m


def laurent_mod(p: LaurentPoly, m: Poly) -> Poly:
    """Reduce p modulo m in Q[t,1/t]/(m), returning the representative of degree < deg m.

    Requires m(0) != 0 when p has negative exponents.
    """
    m = _as_poly(m)
    low = p.low_degree
    if not p or low >= 0:
        return _as_poly(p) % m
    k = int(-low)
    if not m.coeff(0):
        raise ValueError("t is not invertible modulo a polynomial vanishing at 0")
    num = p.shift(k).to_poly() % m
    return (num * inverse_mod(Poly({k: 1}), m)).to_poly() % m


def laurent_divides(f: LaurentPoly, p: LaurentPoly) -> bool:
    """Divisibility in Q[t,1/t]: units are the nonzero monomials."""
    if not p:
        return True
    if not f:
        return False
    fp = f.shift(-int(f.low_degree)).to_poly()
    pp = p.shift(-int(p.low_degree)).to_poly()
    return fp.divides(pp)


def strip_t(f: LaurentPoly) -> Poly:
    """Divide out the power of t so the result has nonzero constant term."""
    if not f:
        return Poly()
    return f.shift(-int(f.low_degree)).to_poly()


# -- linear algebra -------------------------------------------------------

class Echelon:
    """Incremental reduced echelon basis of sparse vectors.

    Vectors are dicts ``key -> Fraction`` with orderable keys.  Each stored
    row has pivot equal to its largest key, pivot coefficient one, and no
    other row has a nonzero entry in that pivot column.
    """

    def __init__(self, track: bool = False):
        self.rows: dict = {}
        self.track = track
        self.combos: dict = {}
        self._count = 0

    def __len__(self):
        return len(self.rows)

    def pivots(self):
        return sorted(self.rows)

    def reduce(self, v: Mapping, with_combo: bool = False):
        r = {k: Q(x) for k, x in v.items() if x}
        combo: dict = {}
        rows = self.rows
        pending = sorted((k for k in r if k in rows), reverse=True)
        # rows are fully reduced, so eliminating pivots never reintroduces
        # another pivot column
        for p in pending:
            c = r.get(p)
            if not c:
                continue
            for k, x in rows[p].items():
                nv = r.get(k, 0) - c * x
                if nv:
                    r[k] = nv
                else:
                    r.pop(k, None)
            if with_combo:
                for i, x in self.combos[p].items():
                    nv = combo.get(i, 0) - c * x
                    if nv:
                        combo[i] = nv
                    else:
                        combo.pop(i, None)
        if with_combo:
            return r, combo
        return r

    def add(self, v: Mapping):
        """Insert v; returns the new pivot or None when v was dependent."""
        idx = self._count
        self._count += 1
        if self.track:
            # reduce leaves r = v + sum combo_i v_i
            r, combo = self.reduce(v, with_combo=True)
            combo[idx] = Fraction(1)
        else:
            r = self.reduce(v)
            combo = None
        if not r:
            return None
        p = max(r)
        c = r[p]
        r = {k: x / c for k, x in r.items()}
        if combo is not None:
            combo = {i: x / c for i, x in combo.items()}
        for q, row in self.rows.items():
            a = row.get(p)
            if a:
                for k, x in r.items():
                    nv = row.get(k, 0) - a * x
                    if nv:
                        row[k] = nv
                    else:
                        row.pop(k, None)
                if combo is not None:
                    cq = self.combos[q]
                    for i, x in combo.items():
                        nv = cq.get(i, 0) - a * x
                        if nv:
                            cq[i] = nv
                        else:
                            cq.pop(i, None)
        self.rows[p] = r
        if combo is not None:
            self.combos[p] = combo
        return p

    def contains(self, v: Mapping) -> bool:
        return not self.reduce(v)

    def express(self, v: Mapping):
        """Coefficients of v over the inserted vectors (by insertion index), or None."""
        if not self.track:
            raise ValueError("express needs track=True")
        r, combo = self.reduce(v, with_combo=True)
        if r:
            return None
        return {i: -x for i, x in combo.items()}

    def basis(self) -> list:
        return [dict(self.rows[p]) for p in sorted(self.rows)]


def sparse_kernel(rows: Iterable[Mapping], keys: Sequence) -> list:
    """Kernel of the linear map whose equations are ``rows`` (sparse dicts over ``keys``).

    Returned vectors are dicts; one per free key, with that key set to 1.
    """
    ech = Echelon()
    for r in rows:
        ech.add(r)
    free = [k for k in keys if k not in ech.rows]
    out = []
    for j in free:
        v = {j: Fraction(1)}
        for p, row in ech.rows.items():
            a = row.get(j)
            if a:
                v[p] = -a
        out.append(v)
    return out


class QMatrix:
    """Dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries: Sequence[Sequence], cols: int | None = None):
        self.entries = [[Q(x) for x in row] for row in entries]
        self.rows = len(self.entries)
        if cols is None:
            cols = len(self.entries[0]) if self.entries else 0
        self.cols = cols
        if any(len(r) != cols for r in self.entries):
            raise ValueError("ragged matrix")

    @classmethod
    def identity(cls, n: int) -> "QMatrix":
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, r: int, c: int) -> "QMatrix":
        return cls([[0] * c for _ in range(r)], c)

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, QMatrix) and self.cols == other.cols and self.entries == other.entries

    def __repr__(self):
        return f"QMatrix({[[format_rational(x) for x in r] for r in self.entries]})"

    def _sparse_rows(self):
        return [{j: x for j, x in enumerate(r) if x} for r in self.entries]

    def kernel(self) -> list:
        vecs = sparse_kernel(self._sparse_rows(), range(self.cols))
        return [[v.get(j, Fraction(0)) for j in range(self.cols)] for v in vecs]

    def rank(self) -> int:
        ech = Echelon()
        for r in self._sparse_rows():
            ech.add(r)
        return len(ech)

    def apply(self, v: Sequence) -> list:
        return [sum((a * Q(b) for a, b in zip(r, v)), Fraction(0)) for r in self.entries]

    def __matmul__(self, other: "QMatrix") -> "QMatrix":
        cols = list(zip(*other.entries)) if other.entries else [[] for _ in range(other.cols)]
        return QMatrix([[sum((a * b for a, b in zip(r, c)), Fraction(0)) for c in cols] for r in self.entries],
                       other.cols)

    def __sub__(self, other: "QMatrix") -> "QMatrix":
        return QMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.entries, other.entries)], self.cols)

    def scale(self, c) -> "QMatrix":
        c = Q(c)
        return QMatrix([[a * c for a in r] for r in self.entries], self.cols)

    def solve(self, b: Sequence):
        """One solution x of Mx = b (free variables set to zero), or None."""
        if len(b) != self.rows:
            raise ValueError("right-hand side has wrong length")
        # augmented column -1 carries -b; it is the smallest key, so it can
        # only become a pivot for an inconsistent row
        ech = Echelon()
        for r, bi in zip(self.entries, b):
            d = {j: v for j, v in enumerate(r) if v}
            if Q(bi):
                d[-1] = -Q(bi)
            ech.add(d)
        if -1 in ech.rows:
            return None
        x = [Fraction(0)] * self.cols
        for p, row in ech.rows.items():
            x[p] = -row.get(-1, Fraction(0))
        return x

    def charpoly(self) -> Poly:
        """det(tI - M) via the Faddeev-LeVerrier recursion."""
        n = self.rows
        if n != self.cols:
            raise ValueError("square matrix required")
        coeffs = [Fraction(1)]
        M = QMatrix.zeros(n, n)
        c = Fraction(1)
        for k in range(1, n + 1):
            M = QMatrix([[M.entries[i][j] + (c if i == j else 0) for j in range(n)] for i in range(n)], n)
            M = self @ M
            c = -sum((M.entries[i][i] for i in range(n)), Fraction(0)) / k
            coeffs.append(c)
        return Poly({n - i: a for i, a in enumerate(coeffs)})


def mat_kernel(M) -> list:
    if not isinstance(M, QMatrix):
        M = QMatrix(M)
    return M.kernel()


def mat_rank(M) -> int:
    if not isinstance(M, QMatrix):
        M = QMatrix(M)
    return M.rank()
