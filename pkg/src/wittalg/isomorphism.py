"""Automorphisms of the ambient algebras and isomorphisms between W(f) and W(g).

One-sided: every automorphism is ``rho_{x;a}: p(t) d -> a^-1 p(a(t - x)) d``,
so ``e_n -> a^n (t - x)^(n+1) d``.  These compose as the affine group:

    rho_{x;a} o rho_{y;b} = rho_{x + y/a; ab}.

Two-sided: automorphisms are ``sigma_a: p(t) d -> a^-1 p(a t) d`` and
``sigma_a o tau`` with ``tau: p(t) d -> -t^2 p(1/t) d`` (so ``e_n -> -e_{-n}``),
subject to ``tau sigma_a = sigma_{1/a} tau``.

An automorphism sends W(f) to W(f*) where f* is the coefficient of the
image of ``f d``; deciding ``W(f) ~ W(g)`` is therefore matching polynomials
up to the substitutions above and a scalar.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import DomainError, VerificationFailure
from .exact import (LaurentPoly, Poly, Q, format_poly, format_rational, multiplicity_profile,
                    poly_gcd_many, rational_roots)
from .subalgebra import FinCodimSubalgebra, from_sandwich, submodule
from .witt import ONE_SIDED, TWO_SIDED, AlgebraKind, WittElement, normalize_conductor


@dataclass(frozen=True)
class Automorphism:
    """rho_{x;alpha} (one-sided) or sigma_alpha o tau^inverted (two-sided)."""

    kind: AlgebraKind = ONE_SIDED
    alpha: Fraction = Fraction(1)
    x: Fraction = Fraction(0)
    inverted: bool = False

    def __post_init__(self):
        object.__setattr__(self, "alpha", Q(self.alpha))
        object.__setattr__(self, "x", Q(self.x))
        if self.alpha == 0:
            raise DomainError("alpha must be nonzero")
        if self.kind is ONE_SIDED and self.inverted:
            raise DomainError("the inversion tau exists only in the two-sided algebra")
        if self.kind is TWO_SIDED and self.x != 0:
            raise DomainError("translations are not automorphisms of the two-sided algebra")

    @classmethod
    def identity(cls, kind: AlgebraKind = ONE_SIDED) -> "Automorphism":
        return cls(kind)

    @classmethod
    def rho(cls, x, alpha) -> "Automorphism":
        return cls(ONE_SIDED, alpha, x)

    @classmethod
    def sigma(cls, alpha) -> "Automorphism":
        return cls(TWO_SIDED, alpha)

    @classmethod
    def tau(cls) -> "Automorphism":
        return cls(TWO_SIDED, Fraction(1), Fraction(0), True)

    @property
    def is_identity(self) -> bool:
        return self.alpha == 1 and self.x == 0 and not self.inverted

    def __call__(self, w: WittElement) -> WittElement:
        return apply_automorphism(self, w)

    def compose(self, other: "Automorphism") -> "Automorphism":
        """self o other."""
        if self.kind is not other.kind:
            raise DomainError("cannot compose automorphisms of different algebras")
        if self.kind is ONE_SIDED:
            return Automorphism.rho(self.x + other.x / self.alpha, self.alpha * other.alpha)
        # sigma_a tau^e sigma_b tau^d = sigma_{a b^(+-1)} tau^(e+d)
        b = 1 / other.alpha if self.inverted else other.alpha
        return Automorphism(TWO_SIDED, self.alpha * b, Fraction(0), self.inverted != other.inverted)

    def __matmul__(self, other):
        return self.compose(other)

    def inverse(self) -> "Automorphism":
        if self.kind is ONE_SIDED:
            return Automorphism.rho(-self.x * self.alpha, 1 / self.alpha)
        if self.inverted:
            return self  # (sigma_a tau)^2 = sigma_a sigma_{1/a} = id
        return Automorphism.sigma(1 / self.alpha)

    def conductor_image(self, f) -> Poly:
        """Monic conductor of the image of W(f)."""
        return normalize_conductor(apply_automorphism(self, WittElement(LaurentPoly(f), self.kind)).coeff,
                                   self.kind)

    def __str__(self):
        if self.kind is ONE_SIDED:
            return f"rho_{{{format_rational(self.x)};{format_rational(self.alpha)}}}"
        s = f"sigma_{{{format_rational(self.alpha)}}}"
        return s + " o tau" if self.inverted else s

    def to_dict(self) -> dict:
        d = {"kind": self.kind.value, "alpha": format_rational(self.alpha)}
        if self.kind is ONE_SIDED:
            d["x"] = format_rational(self.x)
        else:
            d["inverted"] = self.inverted
        return d

    @classmethod
    def from_dict(cls, d: dict) -> "Automorphism":
        kind = AlgebraKind.parse(d["kind"])
        return cls(kind, Q(d["alpha"]), Q(d.get("x", 0)), bool(d.get("inverted", False)))


def apply_automorphism(a: Automorphism, w: WittElement) -> WittElement:
    if a.kind is not w.kind:
        raise DomainError("automorphism and element belong to different algebras")
    p = w.coeff
    if a.kind is ONE_SIDED:
        s = Poly({1: a.alpha, 0: -a.alpha * a.x})
        return WittElement(p.to_poly().compose(s) * (1 / a.alpha), ONE_SIDED)
    if a.inverted:
        p = LaurentPoly({2 - e: -v for e, v in p.items()})
    return WittElement(LaurentPoly({e: v * a.alpha ** (e - 1) for e, v in p.items()}), TWO_SIDED)


# -- deciding isomorphism -----------------------------------------------------------

@dataclass(frozen=True)
class IsoWitness:
    """An automorphism a with a(W(f)) = W(g), and gamma with a(f d) = gamma g d up to alpha.

    One-sided: f(alpha (t - x)) = gamma g(t).  Two-sided: f(alpha t) = gamma g(t),
    or for the inverted case t^n f(beta / t) = gamma g(t) with beta = 1/alpha.
    """

    auto: Automorphism
    scale: Fraction
    f: Poly
    g: Poly

    verdict = "isomorphic"

    def substituted(self) -> LaurentPoly:
        """The left-hand side of the defining identity."""
        a = self.auto
        if a.kind is ONE_SIDED:
            return self.f.compose(Poly({1: a.alpha, 0: -a.alpha * a.x}))
        if not a.inverted:
            return self.f.compose(Poly({1: a.alpha}))
        beta = 1 / a.alpha
        n = int(self.f.degree)
        return LaurentPoly({n - e: v * beta ** e for e, v in self.f.items()})

    def verify(self) -> bool:
        return self.substituted() == self.g * self.scale

    def to_dict(self) -> dict:
        d = {"verdict": self.verdict, "witness": self.auto.to_dict()}
        d["witness"]["gamma"] = format_rational(self.scale)
        return d


@dataclass(frozen=True)
class NotIsomorphic:
    reason: str
    verdict = "not-isomorphic"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "reason": self.reason}


@dataclass(frozen=True)
class NoRationalWitness:
    """Isomorphic over an extension field only if alpha is a root of ``constraint``."""

    constraint: Poly
    x_rule: str = ""
    verdict = "no-rational-witness"

    def to_dict(self) -> dict:
        return {"verdict": self.verdict, "constraint": format_poly(self.constraint).replace("t", "alpha"),
                "x": self.x_rule}


def _alpha_constraints(a: dict, b: dict, n: int, weight):
    """Solve a_i alpha^w(i) = b_i over rational alpha != 0.

    Returns (status, payload): ("free", None) if every alpha works,
    ("none", reason), ("roots", list) or ("irrational", constraint).
    """
    if set(a) != set(b):
        return "none", "coefficient supports differ"
    conds = []
    for i in sorted(a):
        k = weight(i)
        if k == 0:
            if a[i] != b[i]:
                return "none", f"fixed coefficient of t^{i} differs"
            continue
        # alpha^k = b_i / a_i
        conds.append(Poly({k: 1, 0: -b[i] / a[i]}))
    if not conds:
        return "free", None
    c = poly_gcd_many(conds)
    if c.degree == 0:
        return "none", "the coefficient ratios admit no common alpha over any field"
    roots = [r for r in rational_roots(c) if r != 0]
    if not roots:
        return "irrational", c
    return "roots", roots


def _x_rule(mf, mg) -> str:
    if mf == 0:
        return f"x = {format_rational(mg)}"
    return f"x = {format_rational(mg)} - ({format_rational(mf)})/alpha"


def _depress(p: Poly):
    """(monic depressed polynomial, shift m) with p(u + m) = lc * depressed(u)."""
    n = int(p.degree)
    m = -p.monic().coeff(n - 1) / n
    return p.monic().compose(Poly({1: 1, 0: m})).to_poly(), m


def _one_sided_candidates(f: Poly, g: Poly):
    n = int(f.degree)
    F, mf = _depress(f)
    G, mg = _depress(g)
    # F(alpha u) = alpha^n G(u)  <=>  c_i = alpha^(n-i) d_i
    a = {i: v for i, v in F.items() if i < n}
    b = {i: v for i, v in G.items() if i < n}
    status, payload = _alpha_constraints(b, a, n, lambda i: n - i)
    return status, payload, mf, mg


def decide_isomorphic(f, g, kind: AlgebraKind = ONE_SIDED):
    """IsoWitness, NotIsomorphic or NoRationalWitness for W(f) versus W(g)."""
    kind = AlgebraKind.parse(kind)
    fn = normalize_conductor(LaurentPoly(f), kind)
    gn = normalize_conductor(LaurentPoly(g), kind)
    if kind is TWO_SIDED:
        f_in, g_in = fn, gn
    else:
        f_in, g_in = LaurentPoly(f).to_poly(), LaurentPoly(g).to_poly()
    if fn.degree != gn.degree:
        return NotIsomorphic(f"degrees differ ({fn.degree} vs {gn.degree}); codimensions differ")
    if multiplicity_profile(fn) != multiplicity_profile(gn):
        return NotIsomorphic(f"root multiplicity multisets differ "
                             f"({list(multiplicity_profile(fn))} vs {list(multiplicity_profile(gn))})")
    n = int(fn.degree)
    if kind is ONE_SIDED:
        if n == 0:
            return _checked(IsoWitness(Automorphism.identity(), f_in.lc / g_in.lc, f_in, g_in))
        status, payload, mf, mg = _one_sided_candidates(fn, gn)
        if status == "free":
            payload = [Fraction(1)]
        elif status == "none":
            return NotIsomorphic(payload)
        elif status == "irrational":
            return NoRationalWitness(payload, _x_rule(mf, mg))
        alpha = min(payload, key=lambda r: (abs(r - 1), r < 0, r))
        x = mg - mf / alpha
        gamma = f_in.lc * alpha ** n / g_in.lc
        return _checked(IsoWitness(Automorphism.rho(x, alpha), gamma, f_in, g_in))
    # two-sided: sigma_alpha first, then the inverted form
    if n == 0:
        return _checked(IsoWitness(Automorphism.identity(TWO_SIDED), Fraction(1), fn, gn))
    out = []
    for inverted in (False, True):
        target = gn if not inverted else Poly({n - e: v for e, v in gn.items()})
        target = target.monic()
        # f(alpha t) = c * target;  f(0) = target(0) up to the scalar
        c0 = fn.coeff(0) / target.coeff(0)
        a = {i: v for i, v in fn.items() if i > 0}
        b = {i: v * c0 for i, v in target.items() if i > 0}
        status, payload = _alpha_constraints(a, b, n, lambda i: i)
        if status in ("roots", "free"):
            alpha = Fraction(1) if status == "free" else min(payload, key=lambda r: (abs(r - 1), r < 0, r))
            auto = Automorphism.sigma(alpha) if not inverted else Automorphism(TWO_SIDED, 1 / alpha, 0, True)
            w = IsoWitness(auto, Fraction(1), fn, gn)
            lhs = w.substituted()
            return _checked(IsoWitness(auto, lhs.lc / gn.lc, fn, gn))
        out.append((status, payload))
    irr = [p for s, p in out if s == "irrational"]
    if irr:
        return NoRationalWitness(irr[0], "x = 0 (two-sided)")
    return NotIsomorphic("; ".join(f"{'inverted' if i else 'direct'}: {p}" for i, (s, p) in enumerate(out)))


def _checked(w: IsoWitness) -> IsoWitness:
    if not w.verify():
        raise VerificationFailure(f"witness {w.auto} fails substitution")
    return w


# -- automorphism groups of W(f) ---------------------------------------------------

@dataclass(frozen=True)
class AutomorphismGroup:
    """Rational stabilizer of W(f).

    Either finite (``elements``) or, for f a power of a linear form (or
    constant), a family described by ``family``.
    """

    kind: AlgebraKind
    f: Poly
    elements: tuple = ()
    family: dict | None = None

    @property
    def is_finite(self) -> bool:
        return self.family is None

    def member(self, alpha) -> Automorphism:
        """The family element with parameter alpha."""
        if self.family is None:
            raise DomainError("the group is finite")
        alpha = Q(alpha)
        if self.family["type"] == "all":
            return Automorphism(self.kind, alpha)
        m = Q(self.family["fixed_point"])
        return Automorphism.rho(m * (1 - 1 / alpha), alpha)

    def __contains__(self, a: Automorphism) -> bool:
        return a.conductor_image(self.f) == self.f

    def to_dict(self) -> dict:
        d = {"conductor": format_poly(self.f), "kind": self.kind.value,
             "finite": self.is_finite, "elements": [a.to_dict() for a in self.elements]}
        if self.family:
            d["family"] = self.family
        return d


def automorphism_group(f, kind: AlgebraKind = ONE_SIDED) -> AutomorphismGroup:
    kind = AlgebraKind.parse(kind)
    fn = normalize_conductor(LaurentPoly(f), kind)
    n = int(fn.degree)
    if n == 0:
        fam = {"type": "all", "description": "every automorphism (W(1) is the whole algebra)"}
        return AutomorphismGroup(kind, fn, (Automorphism.identity(kind),), fam)
    if kind is ONE_SIDED:
        F, m = _depress(fn)
        if all(i == n for i in F.coeffs):
            fam = {"type": "line", "fixed_point": format_rational(m),
                   "description": ("rho_{0;alpha}, alpha != 0" if m == 0 else
                                   f"rho_{{x;alpha}} with x = {format_rational(m)}*(1 - 1/alpha), alpha != 0")}
            return AutomorphismGroup(kind, fn, (Automorphism.identity(kind),), fam)
        status, payload, mf, mg = _one_sided_candidates(fn, fn)
        roots = payload if status == "roots" else [Fraction(1)]
        elems = []
        for alpha in sorted(roots, key=lambda r: (r != 1, abs(r), r)):
            a = Automorphism.rho(m - m / alpha, alpha)
            if a in AutomorphismGroup(kind, fn):
                elems.append(a)
        return AutomorphismGroup(kind, fn, tuple(elems))
    elems = []
    rev = Poly({n - e: v for e, v in fn.items()})
    for inverted, target in ((False, fn), (True, rev)):
        c0 = fn.coeff(0) / target.coeff(0)
        a = {i: v for i, v in fn.items() if i > 0}
        b = {i: v * c0 for i, v in target.items() if i > 0}
        status, payload = _alpha_constraints(a, b, n, lambda i: i)
        roots = payload if status == "roots" else []
        for alpha in sorted(roots, key=lambda r: (r != 1, abs(r), r)):
            auto = Automorphism.sigma(alpha) if not inverted else Automorphism(TWO_SIDED, 1 / alpha, 0, True)
            if auto in AutomorphismGroup(kind, fn):
                elems.append(auto)
    return AutomorphismGroup(kind, fn, tuple(elems))


def transport_subalgebra(L: FinCodimSubalgebra, a: Automorphism) -> FinCodimSubalgebra:
    """a(L) in canonical form."""
    if L.kind is not a.kind:
        raise DomainError("automorphism and subalgebra belong to different algebras")
    F = a.conductor_image(L.conductor)
    images = [apply_automorphism(a, c) for c in L.coset_basis]
    out = from_sandwich(L.kind, F, images, method="transport")
    if out.codim != L.codim:
        raise VerificationFailure("transport changed the codimension")
    return out
