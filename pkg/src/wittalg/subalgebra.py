"""Finite-codimension subalgebras in canonical form.

Every subalgebra ``L`` of finite codimension sits between two submodules,
``W(f) <= L <= W(rad f)``, for a unique monic ``f`` of minimal degree (the
conductor).  Since ``W(rad f)/W(f)`` is finite dimensional, ``L`` is
recorded as ``f`` plus an echelon basis of ``L/W(f)``.  All the algorithms
below work inside the finite quotient ``k[t]/(f)`` and are exact; only
:func:`from_generators` searches a finite window, and it certifies its
answer before returning it.

Two facts do most of the work:

* ``W(f)`` is an ideal of ``W(rad f)``, so brackets with ``W(f)`` never
  leave ``W(f)`` once the other argument is divisible by ``rad f``;
* ``[W(f), W(f)] = W(f^2)``, which bounds every bracket span from below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DomainError, VerificationFailure, WindowExhausted
from .exact import (Echelon, LaurentPoly, Poly, format_poly, laurent_mod, poly_gcd_many,
                    poly_lcm, sparse_kernel, squarefree_part)
from .parsing import parse_subalgebra_text
from .witt import (ONE_SIDED, TWO_SIDED, AlgebraKind, GradedWindow, WittElement, bracket,
                   normalize_conductor)


# -- helpers on the quotient k[t]/(F) ---------------------------------------------

def residue(p: LaurentPoly, F: Poly, kind: AlgebraKind) -> Poly:
    """Representative of p in k[t]/(F) (two-sided: k[t,1/t]/(F), F(0) != 0)."""
    if kind is TWO_SIDED:
        return laurent_mod(p, F)
    return p.to_poly() % F


def _vec(p: LaurentPoly) -> dict:
    return dict(p.items())


def _poly(v: dict) -> Poly:
    return Poly(v)


def _exact_quotient(p: LaurentPoly, g: Poly) -> LaurentPoly:
    """p / g for g | p in the relevant ring (Laurent division allowed)."""
    if not p:
        return LaurentPoly()
    low = int(p.low_degree)
    shift = -low if low < 0 else 0
    q = p.shift(shift).to_poly().exact_div(g)
    return q.shift(-shift)


# -- records ----------------------------------------------------------------------

@dataclass(frozen=True)
class Certificate:
    """How a canonical form was established.

    ``closure_pairs`` counts the coset brackets checked; ``notes`` carries
    method-specific evidence (for generator input: the verified range of
    conductor translates and the bracket pairs that propagate it).
    """

    method: str
    closure_pairs: int
    ideal_dim: int
    notes: tuple = ()


@dataclass(frozen=True)
class DegreeSet:
    """deg(L) = sporadic U [threshold, oo); ``threshold is None`` means every integer."""

    threshold: int | None
    sporadic: tuple = ()

    def __contains__(self, n: int) -> bool:
        if self.threshold is None:
            return True
        return n >= self.threshold or n in self.sporadic

    def __str__(self):
        if self.threshold is None:
            return "Z"
        head = "".join(f"{d}, " for d in self.sporadic)
        return f"{{{head}{self.threshold}, {self.threshold + 1}, ...}}"


@dataclass(frozen=True)
class Membership:
    member: bool
    coset_coefficients: tuple = ()
    module_part: LaurentPoly | None = None

    def __bool__(self):
        return self.member


@dataclass(frozen=True)
class FinCodimSubalgebra:
    kind: AlgebraKind
    conductor: Poly
    coset_basis: tuple
    certificate: Certificate = field(compare=False, repr=False, default=None)

    # -- basic data -----------------------------------------------------------
    @property
    def radical(self) -> Poly:
        return squarefree_part(self.conductor)

    @property
    def codim(self) -> int:
        return int(self.conductor.degree) - len(self.coset_basis)

    @property
    def is_submodule_form(self) -> bool:
        return not self.coset_basis

    def is_full(self) -> bool:
        return self.codim == 0

    def module_generator(self, k: int = 0) -> WittElement:
        """The element f t^k d of W(f)."""
        return WittElement(self.conductor.shift(k), self.kind)

    def spanning_mod(self, F: Poly) -> list:
        """Elements spanning L modulo W(F), for a multiple F of the conductor."""
        f = self.conductor
        extra = int(F.degree) - int(f.degree)
        return list(self.coset_basis) + [self.module_generator(k) for k in range(extra)]

    def lie_generators(self) -> list:
        """A finite set generating L as a Lie algebra.

        The translates f t^k for a stretch of length deg f + 4 around 0
        generate W(f): bracketing f t^a with f t^j raises (or lowers) the
        verified range by one, with leading coefficient (j - a) != 0.
        """
        n = int(self.conductor.degree)
        top = n + 3
        ks = range(0, top + 1) if self.kind is ONE_SIDED else range(-top, top + 1)
        return list(self.coset_basis) + [self.module_generator(k) for k in ks]

    def degree_set(self) -> DegreeSet:
        if self.kind is TWO_SIDED:
            return DegreeSet(None)
        thr = int(self.conductor.degree) - 1
        spor = sorted(c.degree for c in self.coset_basis)
        while spor and spor[-1] == thr - 1:
            spor.pop()
            thr -= 1
        return DegreeSet(thr, tuple(spor))

    # -- membership ---------------------------------------------------------------
    def membership(self, w: WittElement) -> Membership:
        if w.kind is not self.kind:
            raise DomainError("element and subalgebra belong to different algebras")
        f = self.conductor
        if not w.coeff:
            return Membership(True, (Fraction(0),) * len(self.coset_basis), LaurentPoly())
        if self.kind is ONE_SIDED and not w.coeff.is_poly():
            return Membership(False)
        res = residue(w.coeff, f, self.kind)
        r = self.radical
        if not r.divides(res):
            return Membership(False)
        coeffs = []
        rem = _vec(res)
        reps = {int(c.coeff.degree): c for c in self.coset_basis}
        # coset representatives have distinct top degrees and are reduced,
        # so peel them off from the top
        while rem:
            top = max(rem)
            c = reps.get(top)
            if c is None:
                return Membership(False)
            a = rem[top] / c.coeff.lc
            coeffs.append((c, a))
            for e, v in c.coeff.items():
                nv = rem.get(e, 0) - a * v
                if nv:
                    rem[e] = nv
                else:
                    rem.pop(e, None)
        amap = {id(c): a for c, a in coeffs}
        alist = tuple(amap.get(id(c), Fraction(0)) for c in self.coset_basis)
        acc = w.coeff
        for c, a in coeffs:
            acc = acc - c.coeff * a
        return Membership(True, alist, _exact_quotient(acc, f))

    def __contains__(self, w: WittElement) -> bool:
        return self.membership(w).member

    def contains_subalgebra(self, other: "FinCodimSubalgebra") -> bool:
        if other.kind is not self.kind:
            return False
        if not self.conductor.divides(other.conductor):
            return False
        return all(c in self for c in other.coset_basis)

    # -- text ---------------------------------------------------------------------
    def __str__(self):
        w = f"W({format_poly(self.conductor)})"
        if not self.coset_basis:
            return w
        inner = ", ".join(c.field_text() for c in self.coset_basis)
        return f"span{{{inner}}} + {w}"

    def to_dict(self) -> dict:
        return {
            "kind": self.kind.value,
            "conductor": format_poly(self.conductor),
            "coset_basis": [c.field_text() for c in self.coset_basis],
            "codim": self.codim,
            "text": str(self),
        }

    @classmethod
    def from_dict(cls, d: dict) -> "FinCodimSubalgebra":
        from .parsing import parse_laurent
        kind = AlgebraKind.parse(d["kind"])
        cosets = [WittElement.parse(c, kind) for c in d.get("coset_basis", [])]
        return from_sandwich(kind, parse_laurent(d["conductor"]), cosets, method="json")


# -- constructors -------------------------------------------------------------------

def _largest_t_stable(U: Echelon, F: Poly, kind: AlgebraKind) -> list:
    """Largest ideal of k[t]/(F) inside the subspace U (as residue vectors)."""
    basis = U.basis()
    while basis:
        cur = Echelon()
        for b in basis:
            cur.add(b)
        images = [_vec(residue(_poly(b).shift(1), F, kind)) for b in basis]
        residuals = [cur.reduce(v) for v in images]
        keys = sorted({k for r in residuals for k in r})
        rows = [{i: r[k] for i, r in enumerate(residuals) if k in r} for k in keys]
        ker = sparse_kernel(rows, range(len(basis)))
        if len(ker) == len(basis):
            return basis
        new = []
        for v in ker:
            acc: dict = {}
            for i, a in v.items():
                for k, x in basis[i].items():
                    nv = acc.get(k, 0) + a * x
                    if nv:
                        acc[k] = nv
                    else:
                        acc.pop(k, None)
            new.append(acc)
        basis = new
    return []


def from_sandwich(kind: AlgebraKind, F: LaurentPoly, elements: Iterable[WittElement] = (),
                  *, method: str = "sandwich", notes: tuple = ()) -> FinCodimSubalgebra:
    """Canonical form of W(F) + span(elements), which must be a subalgebra.

    The minimal conductor is the generator of the largest ideal of k[t]/(F)
    contained in the image of the span; closure is then checked on every
    pair of coset representatives.
    """
    kind = AlgebraKind.parse(kind)
    F = normalize_conductor(F, kind)
    elements = list(elements)
    for w in elements:
        if w.kind is not kind:
            raise DomainError("element and subalgebra belong to different algebras")
    n = int(F.degree)
    if n == 0:
        return FinCodimSubalgebra(kind, F, (), Certificate(method, 0, 0, notes))
    U = Echelon()
    for w in elements:
        if w.coeff:
            U.add(_vec(residue(w.coeff, F, kind)))
    ideal = _largest_t_stable(U, F, kind)
    g = poly_gcd_many([F] + [_poly(b) for b in ideal])
    if len(ideal) != n - int(g.degree):
        raise VerificationFailure("ideal dimension does not match its generator")
    r = squarefree_part(g)
    q = g.exact_div(r)
    C = Echelon()
    for w in elements:
        if not w.coeff:
            continue
        res = residue(w.coeff, g, kind)
        x, rem = res.divmod(r)
        if rem:
            raise DomainError(
                f"not a subalgebra: {w.field_text()} is not divisible by rad of the conductor "
                f"{format_poly(r)}")
        C.add(_vec(x % q))
    reps = tuple(WittElement(r * _poly(row), kind) for row in C.basis())
    L = FinCodimSubalgebra(kind, g, reps, None)
    pairs = 0
    for i in range(len(reps)):
        for j in range(i + 1, len(reps)):
            pairs += 1
            b = bracket(reps[i], reps[j])
            if b not in L:
                raise DomainError(
                    f"not closed under the bracket: [{reps[i].field_text()}, {reps[j].field_text()}] "
                    f"= {b.field_text()} is not in {L}")
    cert = Certificate(method, pairs, len(ideal), notes)
    return FinCodimSubalgebra(kind, g, reps, cert)


def submodule(f, kind: AlgebraKind = ONE_SIDED) -> FinCodimSubalgebra:
    """W(f) = f*W."""
    if isinstance(f, str):
        from .parsing import parse_laurent
        f = parse_laurent(f)
    return from_sandwich(kind, LaurentPoly(f), (), method="submodule")


def full_algebra(kind: AlgebraKind = ONE_SIDED) -> FinCodimSubalgebra:
    return submodule(LaurentPoly(1), kind)


def w_geq(n: int) -> FinCodimSubalgebra:
    """W_{>=n} = W(t^(n+1)) inside the one-sided algebra."""
    return submodule(Poly({n + 1: 1}), ONE_SIDED)


def parse_subalgebra(text: str, kind: AlgebraKind = ONE_SIDED) -> FinCodimSubalgebra:
    gens, f = parse_subalgebra_text(text)
    return from_sandwich(kind, f, [WittElement(g, kind) for g in gens], method="text")


# -- derived and lower central series -------------------------------------------------

def bracket_span(A: FinCodimSubalgebra, B: FinCodimSubalgebra) -> FinCodimSubalgebra:
    """[A, B] as a subalgebra, for A, B with the same radical whose span is a subalgebra.

    With P = lcm of the conductors, [A, B] contains [W(P), W(P)] = W(P^2), and
    both A and B normalize W(P^2).  So [A, B] = W(P^2) + the brackets of
    finite spanning sets of A and B modulo W(P^2).
    """
    if A.kind is not B.kind:
        raise DomainError("subalgebras of different algebras")
    if A.radical != B.radical:
        raise DomainError("bracket spans are only computed for subalgebras with equal radicals")
    P = poly_lcm(A.conductor, B.conductor)
    F = (P * P).to_poly()
    SA = A.spanning_mod(F)
    SB = B.spanning_mod(F)
    same = A == B
    out = []
    for i, a in enumerate(SA):
        for j, b in enumerate(SB):
            if same and j <= i:
                continue
            out.append(bracket(a, b))
    return from_sandwich(A.kind, F, out, method="bracket-span")


def derived_subalgebra(L: FinCodimSubalgebra) -> FinCodimSubalgebra:
    return bracket_span(L, L)


def derived_series_term(L: FinCodimSubalgebra, n: int, window: GradedWindow | None = None,
                        *, mode: str = "derived") -> FinCodimSubalgebra:
    """D^n(L) (``mode="derived"``) or the lower central term L_(n) (``mode="lower"``).

    Indexing: D^0(L) = L_(0) = L, D^1(L) = L_(1) = [L, L], L_(n+1) = [L, L_(n)].
    The computation is exact, so ``window`` is accepted only for interface
    symmetry and ignored.
    """
    if n < 0:
        raise DomainError("series index must be non-negative")
    if mode not in ("derived", "lower"):
        raise DomainError(f"unknown series mode {mode!r}")
    cur = L
    for _ in range(n):
        if cur.is_full():
            return cur
        cur = bracket_span(cur, cur) if mode == "derived" else bracket_span(L, cur)
    return cur


def abelianisation_dim(L: FinCodimSubalgebra, window: GradedWindow | None = None) -> int:
    """dim L/[L, L]."""
    return derived_subalgebra(L).codim - L.codim


def is_submodule_check(L: FinCodimSubalgebra, window: GradedWindow | None = None):
    """(t L <= L checked directly, dim L^ab == codim L)."""
    direct = True
    shifts = (1,) if L.kind is ONE_SIDED else (1, -1)
    for c in L.coset_basis:
        for s in shifts:
            if WittElement(c.coeff.shift(s), L.kind) not in L:
                direct = False
    criterion = abelianisation_dim(L) == L.codim
    return direct, criterion


# -- normalizer ------------------------------------------------------------------------

def normalizer(L: FinCodimSubalgebra) -> FinCodimSubalgebra:
    """N(L) = {w in W(rad f) : [w, L] <= L}, solved on W(rad f)/W(f)."""
    f, r, kind = L.conductor, L.radical, L.kind
    q = f.exact_div(r)
    nq = int(q.degree)
    if nq == 0:
        return L
    basis = [WittElement(r.shift(k), kind) for k in range(nq)]
    # coset coordinates: x with c = r*x, x in k[t]/(q)
    C = Echelon()
    for c in L.coset_basis:
        C.add(_vec(c.coeff.to_poly().exact_div(r) % q))
    rows: dict = {}
    for k, b in enumerate(basis):
        for i, c in enumerate(L.coset_basis):
            br = residue(bracket(b, c).coeff, f, kind)
            x, rem = br.divmod(r)
            if rem:
                raise VerificationFailure("bracket left W(rad f)")
            resid = C.reduce(_vec(x % q))
            for e, v in resid.items():
                rows.setdefault((i, e), {})[k] = v
    ker = sparse_kernel(rows.values(), range(nq))
    extra = []
    for v in ker:
        acc = LaurentPoly()
        for k, a in v.items():
            acc = acc + basis[k].coeff * a
        extra.append(WittElement(acc, kind))
    N = from_sandwich(kind, f, list(L.coset_basis) + extra, method="normalizer")
    return N


# -- solvable quotients ----------------------------------------------------------------

def is_ideal(L: FinCodimSubalgebra, I: FinCodimSubalgebra) -> bool:
    if not L.contains_subalgebra(I):
        return False
    if L.radical != I.radical:
        # [L, W(g)] <= W(g) needs L <= W(rad g); fall back to generator checks
        return all(bracket(u, v) in I for u in L.lie_generators() for v in I.lie_generators())
    return I.contains_subalgebra(bracket_span(L, I))


def solvable_quotient_depth(L: FinCodimSubalgebra, I: FinCodimSubalgebra,
                            window: GradedWindow | None = None) -> int:
    """Least m with D^m(L) <= I, for an ideal I of finite codimension."""
    if I.kind is not L.kind:
        raise DomainError("subalgebras of different algebras")
    if not L.contains_subalgebra(I):
        raise DomainError(f"{I} is not contained in {L}")
    if not is_ideal(L, I):
        raise DomainError(f"{I} is not an ideal of {L}")
    # bound: conductor g of I divides rad(f)^n, and D^m(L) <= W(rad(f)^(2^m))
    r = L.radical
    g = I.conductor
    n = 0
    acc = Poly(1)
    while not g.divides(acc):
        acc = (acc * r).to_poly()
        n += 1
        if n > int(g.degree) + 1:
            raise VerificationFailure("conductor of the ideal is not supported on rad f")
    bound = math.ceil(math.log2(n)) if n > 1 else (0 if n == 0 else 1)
    cur = L
    m = 0
    while not I.contains_subalgebra(cur):
        if m >= bound:
            raise VerificationFailure(f"derived series did not reach the ideal by step {bound}")
        cur = derived_subalgebra(cur)
        m += 1
    return m


# -- generators -----------------------------------------------------------------------

def default_window(gens: Sequence[WittElement]) -> GradedWindow:
    kind = gens[0].kind
    top = max((int(g.coeff.degree) for g in gens if g.coeff), default=1)
    if kind is ONE_SIDED:
        return GradedWindow(-1, 2 * top + 12)
    low = min((int(g.coeff.low_degree) for g in gens if g.coeff), default=0)
    span = max(abs(top), abs(low), 1)
    return GradedWindow(-(2 * span + 12), 2 * span + 12)


def _closure(gens, lo_exp: int, hi_exp: int, kind):
    """Span of brackets of gens that stay inside exponents [lo_exp, hi_exp]."""
    ech = Echelon()
    elems: list = []

    def push(p: LaurentPoly):
        if not p or p.low_degree < lo_exp or p.degree > hi_exp:
            return
        r = ech.reduce(_vec(p))
        if r:
            ech.add(r)
            elems.append(LaurentPoly(r))

    for g in gens:
        push(g.coeff)
    i = 0
    while i < len(elems):
        x = WittElement(elems[i], kind)
        for j in range(i):
            push(bracket(WittElement(elems[j], kind), x).coeff)
        i += 1
    return ech


def _propagation_pair(n: int, b: int, J: int, upward: bool):
    """Indices a != j in [b, J] whose bracket f t^a, f t^j extends the range by one."""
    for a in range(b, J + 1):
        j = (J + 2 - n - a) if upward else (b - a)
        if j == a or not (b <= j <= J):
            continue
        low = a + j - 1
        if low < b or low + n > (J + 1 if upward else J):
            continue
        return (a, j)
    return None


def _module_certificate(F: Poly, V: Echelon, lo_exp: int, hi_exp: int, kind):
    """Check that V (inside L) forces W(F) <= L; returns evidence or None."""
    n = int(F.degree)
    inside = lambda j: V.contains(_vec(F.shift(j)))  # noqa: E731
    if kind is ONE_SIDED:
        b = 0
        J = -1
        while J + 1 + n <= hi_exp and inside(J + 1):
            J += 1
        if J < 0:
            return None
        up = _propagation_pair(n, b, J, True)
        return None if up is None else (("translates", b, J), ("raise", up))
    # two-sided: symmetric stretch around 0
    J = 0
    if not inside(0):
        return None
    while -(J + 1) >= lo_exp and J + 1 + n <= hi_exp and inside(J + 1) and inside(-(J + 1)):
        J += 1
    up = _propagation_pair(n, -J, J, True)
    down = _propagation_pair(n, -J, J, False)
    if up is None or down is None:
        return None
    return (("translates", -J, J), ("raise", up), ("lower", down))


def _candidate_conductors(V: Echelon, lo_exp: int, hi_exp: int, kind):
    """Monic p of increasing degree with p t^j in V for every shift fitting the window."""
    span = hi_exp - lo_exp
    cache: dict = {}

    def resid(e):
        if e not in cache:
            cache[e] = V.reduce({e: Fraction(1)})
        return cache[e]

    for d in range(0, span // 2 + 1):
        if kind is ONE_SIDED:
            shifts = range(0, hi_exp - d + 1)
        else:
            shifts = range(lo_exp, hi_exp - d + 1)
        rows: dict = {}
        for j in shifts:
            # residual of t^(j+i) for the unknown a_i; column d is the fixed leading 1
            for i in range(d + 1):
                for k, v in resid(j + i).items():
                    rows.setdefault((j, k), {})[i] = v
        # solve sum_{i<d} a_i R_i = -R_d
        eqs = []
        for row in rows.values():
            eq = {i: v for i, v in row.items() if i < d}
            if d in row:
                eq[-1] = row[d]
            if eq:
                eqs.append(eq)
        ech = Echelon()
        for eq in eqs:
            ech.add(eq)
        if -1 in ech.rows:
            continue
        coeffs = {d: Fraction(1)}
        for p, row in ech.rows.items():
            coeffs[p] = -row.get(-1, Fraction(0))
        p = Poly(coeffs)
        if kind is TWO_SIDED and not p.coeff(0):
            continue
        yield p


def from_generators(gens: Sequence[WittElement], window: GradedWindow | None = None) -> FinCodimSubalgebra:
    """Canonical form of the subalgebra generated by ``gens``.

    The window only proposes a conductor F; the answer W(F) + span(V) is
    returned after three exact checks: it is closed under the bracket, it
    contains every generator, and a stretch of translates F t^j found inside
    the generated span propagates to all of W(F).
    """
    gens = [g for g in gens]
    if not gens:
        raise DomainError("need at least one generator")
    kind = gens[0].kind
    if any(g.kind is not kind for g in gens):
        raise DomainError("generators belong to different algebras")
    gens = [g for g in gens if g.coeff]
    if not gens:
        raise DomainError("the zero subalgebra has infinite codimension; see the lfg module")
    window = (window or default_window(gens)).clip(kind)
    lo_exp, hi_exp = window.min_degree + 1, window.max_degree + 1
    V = _closure(gens, lo_exp, hi_exp, kind)
    retry = GradedWindow(window.min_degree if kind is ONE_SIDED else 2 * window.min_degree - 2,
                         2 * window.max_degree + 2)
    for F in _candidate_conductors(V, lo_exp, hi_exp, kind):
        evidence = _module_certificate(F, V, lo_exp, hi_exp, kind)
        if evidence is None:
            continue
        elems = [WittElement(LaurentPoly(row), kind) for row in V.basis()]
        try:
            L = from_sandwich(kind, F, elems, method="generators",
                              notes=evidence + (("window", str(window)),))
        except DomainError:
            continue
        if all(g in L for g in gens):
            return L
    degs = sorted(p - 1 for p in V.rows)
    diffs = [b - a for a, b in zip(degs, degs[1:])]
    step = math.gcd(*diffs) if diffs else 0
    if step != 1:
        raise DomainError(
            "probable infinite codimension (heuristic): the degrees reached in window "
            f"{window} lie in an arithmetic progression with step {step or 'undefined'}; "
            "subalgebras such as k[f]*g*d are handled by the lfg module")
    raise WindowExhausted(
        f"could not certify a conductor within window {window}; retry with --window {retry}",
        (retry.min_degree, retry.max_degree))
