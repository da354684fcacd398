"""The infinite-codimension subalgebras L(f, g) = k[f] g d.

``L(f, g)`` is closed under the bracket exactly when ``f' g = h(f)`` for a
polynomial ``h``, and then

    [p(f) g d, q(f) g d] = (h (p q' - p' q))(f) g d,

which is the bracket of ``p h d`` and ``q h d`` in the one-sided algebra.
So ``p(f) g d -> p h d`` is an isomorphism ``L(f, g) -> W(h)``.

The admissible ``h`` form the ideal ``I(f) = {p : f' | p(f)}``; its monic
generator is squarefree, and the smallest admissible ``g`` (``g_f``) gives
``L(f) = L(f, g_f)`` with no outer derivations.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .derivations import DerivationSpaceReport, derivation_space
from .errors import DomainError, VerificationFailure
from .exact import Echelon, LaurentPoly, Poly, Q, format_poly, sparse_kernel, squarefree_part
from .subalgebra import submodule
from .witt import ONE_SIDED, WittElement, bracket


def base_f_expansion(p, f) -> tuple | None:
    """Constants (c_0, c_1, ...) with p = sum c_i f^i, or None if p is not in k[f]."""
    p, f = Poly(dict(LaurentPoly(p).items())), Poly(dict(LaurentPoly(f).items()))
    if f.degree < 1:
        raise DomainError("base-f expansion needs deg f >= 1")
    out = []
    while p:
        p, r = p.divmod(f)
        if r.degree > 0:
            return None
        out.append(r.coeff(0))
    return tuple(out)


def from_base_f(coeffs, f: Poly) -> Poly:
    acc = Poly()
    for c in reversed(coeffs):
        acc = acc * f + Poly(Q(c))
    return acc


@dataclass(frozen=True)
class IfIdeal:
    """I(f) = {p : f' divides p(f)} with its monic generator."""

    f: Poly
    generator_h: Poly

    @property
    def reduced(self) -> bool:
        return squarefree_part(self.generator_h) == self.generator_h

    def __contains__(self, p) -> bool:
        p = Poly(dict(LaurentPoly(p).items()))
        return self.f.derivative().to_poly().divides(p.compose(self.f).to_poly())


def ideal_generator(f) -> IfIdeal:
    """Minimal monic h with f' | h(f), found degree by degree."""
    f = Poly(dict(LaurentPoly(f).items()))
    if f.degree < 1:
        raise DomainError("I(f) needs deg f >= 1")
    fp = f.derivative().to_poly()
    residues = []  # f^i mod f'
    power = Poly(1)
    d = 0
    while True:
        residues.append(dict((power % fp).items()))
        # sum_{i<=d} p_i f^i = 0 mod f' with p_d = 1
        rows = {}
        for i, r in enumerate(residues):
            for e, v in r.items():
                rows.setdefault(e, {})[i] = v
        ker = sparse_kernel(rows.values(), range(d + 1))
        monic = [v for v in ker if v.get(d)]
        if monic:
            v = monic[0]
            h = Poly({i: x / v[d] for i, x in v.items()})
            if not fp.divides(h.compose(f).to_poly()):
                raise VerificationFailure("ideal generator fails the division check")
            ideal = IfIdeal(f, h)
            if not ideal.reduced:
                raise VerificationFailure(f"ideal generator {h} is not squarefree")
            return ideal
        power = power * f
        d += 1


def minimal_g(f) -> Poly:
    """g_f: the monic g of least degree with f' g in k[f]."""
    return gf_data(f)[0]


def gf_data(f):
    """(g_f, h) with f' g_f = h(f) exactly (h not normalized)."""
    f = Poly(dict(LaurentPoly(f).items()))
    hm = ideal_generator(f).generator_h
    q = hm.compose(f).to_poly().exact_div(f.derivative().to_poly())
    c = q.lc
    g = q.monic()
    h = Poly({e: v / c for e, v in hm.items()})
    if f.derivative() * g != h.compose(f):
        raise VerificationFailure("f' g_f != h(f)")
    return g, h


def g_minimality_check(f) -> bool:
    """No nonzero g with deg g < deg g_f has f' g in k[f] (linear algebra per degree)."""
    f = Poly(dict(LaurentPoly(f).items()))
    gf = minimal_g(f)
    fp = f.derivative().to_poly()
    n = int(f.degree)
    for D in range(int(gf.degree)):
        top = (D + int(fp.degree)) // n
        # unknowns: g_0..g_D (keys ("g", j)) and c_0..c_top (keys ("c", i))
        cols = [("g", j) for j in range(D + 1)] + [("c", i) for i in range(top + 1)]
        idx = {k: i for i, k in enumerate(cols)}
        rows = {}
        for j in range(D + 1):
            for e, v in fp.shift(j).items():
                rows.setdefault(e, {})[idx[("g", j)]] = v
        power = Poly(1)
        for i in range(top + 1):
            for e, v in power.items():
                rows.setdefault(e, {})[idx[("c", i)]] = -v
            power = power * f
        for v in sparse_kernel(rows.values(), range(len(cols))):
            if any(v.get(idx[("g", j)]) for j in range(D + 1)):
                return False
    return True


@dataclass(frozen=True)
class LfgAlgebra:
    """L(f, g) = k[f] g d, with f' g = h(f)."""

    f: Poly
    g: Poly
    h: Poly

    @classmethod
    def build(cls, f, g) -> "LfgAlgebra":
        f = Poly(dict(LaurentPoly(f).items()))
        g = Poly(dict(LaurentPoly(g).items()))
        if f.degree < 1:
            raise DomainError("L(f, g) needs deg f >= 1")
        if not g:
            raise DomainError("L(f, 0) is zero")
        exp = base_f_expansion(f.derivative().to_poly() * g, f)
        if exp is None:
            raise DomainError(f"f' g = {format_poly(f.derivative() * g)} is not a polynomial in f; "
                              "L(f, g) is not a subalgebra")
        return cls(f, g, Poly(dict(enumerate(exp))))

    @classmethod
    def maximal(cls, f) -> "LfgAlgebra":
        """L(f) = L(f, g_f)."""
        g, h = gf_data(f)
        return cls(Poly(dict(LaurentPoly(f).items())), g, h)

    def element(self, p) -> WittElement:
        """p(f) g d."""
        p = Poly(dict(LaurentPoly(p).items()))
        return WittElement(p.compose(self.f) * self.g, ONE_SIDED)

    def to_target(self, w: WittElement) -> WittElement:
        """p(f) g d -> p h d."""
        p = self.coordinate(w)
        if p is None:
            raise DomainError(f"{w} is not in L(f, g)")
        return WittElement(p * self.h, ONE_SIDED)

    def from_target(self, w: WittElement) -> WittElement:
        """Inverse of to_target on W(h)."""
        p, r = w.coeff.to_poly().divmod(self.h)
        if r:
            raise DomainError(f"{w} is not in W(h)")
        return self.element(p)

    def coordinate(self, w: WittElement) -> Poly | None:
        """p with w = p(f) g d, or None."""
        if not w.coeff:
            return Poly()
        if not w.coeff.is_poly():
            return None
        q, r = w.coeff.to_poly().divmod(self.g)
        if r:
            return None
        exp = base_f_expansion(q, self.f)
        return None if exp is None else Poly(dict(enumerate(exp)))

    def __contains__(self, w: WittElement) -> bool:
        return self.coordinate(w) is not None

    def __str__(self):
        return f"L({format_poly(self.f)}, {format_poly(self.g)})"


def lfg_contains(A: LfgAlgebra, w: WittElement) -> bool:
    return w in A


@dataclass(frozen=True)
class IsoTranscript:
    algebra: LfgAlgebra
    records: tuple  # (p, q, source bracket, image, target bracket, ok)

    @property
    def ok(self) -> bool:
        return all(r[-1] for r in self.records)

    def to_dict(self) -> dict:
        A = self.algebra
        return {"f": format_poly(A.f), "g": format_poly(A.g), "h": format_poly(A.h),
                "map": "p(f)*g*d -> p*h*d",
                "pairs": [{"p": format_poly(p), "q": format_poly(q), "source": str(s),
                           "image": str(i), "target": str(t), "ok": ok}
                          for p, q, s, i, t, ok in self.records],
                "ok": self.ok}


def lfg_iso(A: LfgAlgebra, max_degree: int = 4) -> IsoTranscript:
    """Bracket transcript of p(f) g d -> p h d on all pairs of monomials t^i, t^j (i < j <= max_degree)."""
    recs = []
    for i in range(max_degree + 1):
        for j in range(i + 1, max_degree + 1):
            p, q = Poly({i: 1}), Poly({j: 1})
            src = bracket(A.element(p), A.element(q))
            img = A.to_target(src)
            tgt = bracket(WittElement(p * A.h), WittElement(q * A.h))
            recs.append((p, q, src, img, tgt, img == tgt))
    t = IsoTranscript(A, tuple(recs))
    if not t.ok:
        raise VerificationFailure(f"bracket transcript fails for {A}; h is invalid")
    return t


@dataclass(frozen=True)
class LfgDerivationReport:
    """Derivations of L(f, g), computed on W(h) and pulled back through the isomorphism.

    A derivation ad_w of W(h) becomes D(x) = iso^-1 [w, iso(x)] on L(f, g).
    """

    algebra: LfgAlgebra
    target: DerivationSpaceReport

    @property
    def h1_dim(self) -> int:
        return self.target.h1_dim

    @property
    def outer_witnesses(self) -> tuple:
        return self.target.outer_witnesses

    def derivation(self, w: WittElement):
        A = self.algebra
        return lambda x: A.from_target(bracket(w, A.to_target(x)))

    def pulled_back_witnesses(self) -> tuple:
        """Witnesses that already lie in W(h), as elements of L(f, g)."""
        A = self.algebra
        out = []
        for w in self.target.outer_witnesses:
            try:
                out.append(A.from_target(w))
            except DomainError:
                pass
        return tuple(out)


def lfg_derivation_space(A: LfgAlgebra) -> LfgDerivationReport:
    rep = derivation_space(submodule(A.h, ONE_SIDED))
    out = LfgDerivationReport(A, rep)
    # Leibniz on a few elements for every outer witness
    els = [A.element(Poly({i: 1})) for i in range(3)]
    for w in rep.outer_witnesses:
        D = out.derivation(w)
        for x in els:
            for y in els:
                if D(bracket(x, y)) != bracket(D(x), y) + bracket(x, D(y)):
                    raise VerificationFailure(f"transported derivation from {w} violates Leibniz")
    return out
