"""Elements of the Witt algebra and the one-sided Witt algebra.

An element ``p*d`` is stored as its coefficient ``p`` together with the
algebra it lives in.  The basis vector ``e_n`` is ``t^(n+1)*d`` and

    [p*d, q*d] = (p q' - p' q)*d,   so   [e_n, e_m] = (m - n) e_{n+m}.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError
from .exact import (LaurentPoly, Poly, Q, format_rational, laurent_divides, strip_t)
from .parsing import parse_field


class AlgebraKind(enum.Enum):
    ONE_SIDED = "one-sided"
    TWO_SIDED = "witt"

    @classmethod
    def parse(cls, text) -> "AlgebraKind":
        if isinstance(text, cls):
            return text
        key = str(text).strip().lower()
        aliases = {"one-sided": cls.ONE_SIDED, "onesided": cls.ONE_SIDED, "w>=-1": cls.ONE_SIDED,
                   "witt": cls.TWO_SIDED, "two-sided": cls.TWO_SIDED, "twosided": cls.TWO_SIDED,
                   "w": cls.TWO_SIDED}
        try:
            return aliases[key]
        except KeyError:
            raise DomainError(f"unknown algebra kind {text!r}; use 'one-sided' or 'witt'") from None


ONE_SIDED = AlgebraKind.ONE_SIDED
TWO_SIDED = AlgebraKind.TWO_SIDED


@dataclass(frozen=True)
class GradedWindow:
    """The span of e_lo, ..., e_hi."""

    min_degree: int
    max_degree: int

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise DomainError(f"empty window {self.min_degree}:{self.max_degree}")

    @classmethod
    def parse(cls, text: str) -> "GradedWindow":
        try:
            lo, hi = str(text).split(":")
            return cls(int(lo), int(hi))
        except ValueError:
            raise DomainError(f"window must look like LO:HI, got {text!r}") from None

    def __str__(self):
        return f"{self.min_degree}:{self.max_degree}"

    def degrees(self):
        return range(self.min_degree, self.max_degree + 1)

    def clip(self, kind: AlgebraKind) -> "GradedWindow":
        if kind is ONE_SIDED and self.min_degree < -1:
            return GradedWindow(-1, max(self.max_degree, -1))
        return self


@dataclass(frozen=True)
class WittElement:
    coeff: LaurentPoly
    kind: AlgebraKind = ONE_SIDED

    def __post_init__(self):
        c = self.coeff
        if not isinstance(c, LaurentPoly):
            c = LaurentPoly(Q(c))
        # canonical Python class so equal elements have equal fields
        object.__setattr__(self, "coeff", LaurentPoly._wrap(dict(c.items())))
        if self.kind is ONE_SIDED and not self.coeff.is_poly():
            raise DomainError(f"{self.coeff} has negative exponents; not in the one-sided algebra")

    # -- constructors -----------------------------------------------------
    @classmethod
    def e(cls, n: int, kind: AlgebraKind = ONE_SIDED, coeff=1) -> "WittElement":
        return cls(LaurentPoly.monomial(n + 1, coeff), kind)

    @classmethod
    def zero(cls, kind: AlgebraKind = ONE_SIDED) -> "WittElement":
        return cls(LaurentPoly(), kind)

    @classmethod
    def parse(cls, text: str, kind: AlgebraKind = ONE_SIDED) -> "WittElement":
        return cls(parse_field(text), kind)

    # -- vector space structure ---------------------------------------------
    def _same(self, other: "WittElement"):
        if not isinstance(other, WittElement):
            raise TypeError("expected a WittElement")
        if other.kind is not self.kind:
            raise DomainError("elements of different algebras")

    def __add__(self, other):
        self._same(other)
        return WittElement(self.coeff + other.coeff, self.kind)

    def __sub__(self, other):
        self._same(other)
        return WittElement(self.coeff - other.coeff, self.kind)

    def __neg__(self):
        return WittElement(-self.coeff, self.kind)

    def __mul__(self, scalar):
        if isinstance(scalar, WittElement):
            return NotImplemented
        if isinstance(scalar, LaurentPoly):
            return WittElement(self.coeff * scalar, self.kind)
        return WittElement(self.coeff * Q(scalar), self.kind)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.coeff)

    def is_zero(self) -> bool:
        return not self.coeff

    # -- grading --------------------------------------------------------------
    @property
    def degree(self) -> int:
        if not self.coeff:
            raise DomainError("the zero element has no degree")
        return int(self.coeff.degree) - 1

    @property
    def low_degree(self) -> int:
        if not self.coeff:
            raise DomainError("the zero element has no degree")
        return int(self.coeff.low_degree) - 1

    def components(self) -> dict:
        """Map n -> coefficient of e_n."""
        return {e - 1: v for e, v in self.coeff.items()}

    # -- text -------------------------------------------------------------
    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"WittElement({format_element(self)!r}, {self.kind.value})"

    def field_text(self) -> str:
        """``(p)*d`` form."""
        from .exact import format_poly
        return "0" if not self.coeff else f"({format_poly(self.coeff)})*d"


def format_element(w: WittElement) -> str:
    """e-basis text: highest degree first, explicit signs."""
    if not w.coeff:
        return "0"
    parts = []
    for i, (e, v) in enumerate(w.coeff.terms()):
        n = e - 1
        neg = v < 0
        a = -v if neg else v
        body = f"e_{n}" if a == 1 else f"{format_rational(a)}*e_{n}"
        if i == 0:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def e(n: int, kind: AlgebraKind = ONE_SIDED) -> WittElement:
    return WittElement.e(n, kind)


def bracket(u: WittElement, v: WittElement) -> WittElement:
    """[p d, q d] = (p q' - p' q) d."""
    if u.kind is not v.kind:
        raise DomainError("cannot bracket elements of different algebras")
    p, q = u.coeff, v.coeff
    if not p or not q:
        return WittElement.zero(u.kind)
    return WittElement(p * q.derivative() - p.derivative() * q, u.kind)


def leading_data(w: WittElement):
    """(deg w, leading term of w)."""
    if not w.coeff:
        raise DomainError("the zero element has no leading term")
    top = int(w.coeff.degree)
    return top - 1, WittElement(LaurentPoly.monomial(top, w.coeff.lc), w.kind)


def normalize_conductor(f: LaurentPoly, kind: AlgebraKind) -> Poly:
    """Monic representative of the ideal generated by f.

    In the two-sided algebra powers of t are units and are removed.
    """
    if not f:
        raise DomainError("the zero polynomial does not define a submodule")
    if kind is TWO_SIDED:
        p = strip_t(f)
    else:
        if not f.is_poly():
            raise DomainError(f"{f} has negative exponents; not allowed for the one-sided algebra")
        p = f.to_poly()
    return p.monic()


def submodule_membership(w: WittElement, f: LaurentPoly) -> bool:
    """Is w in W(f) = f*W?"""
    if not f:
        raise DomainError("the zero polynomial does not define a submodule")
    if not w.coeff:
        return True
    if w.kind is TWO_SIDED:
        return laurent_divides(f, w.coeff)
    if not f.is_poly():
        raise DomainError("one-sided conductors must be polynomials")
    return f.to_poly().divides(w.coeff.to_poly())


def submodule_element(f: LaurentPoly, p: LaurentPoly, kind: AlgebraKind = ONE_SIDED) -> WittElement:
    return WittElement(f * p, kind)


def lie_combination(terms, kind: AlgebraKind) -> WittElement:
    acc = LaurentPoly()
    for c, w in terms:
        acc = acc + w.coeff * Q(c)
    return WittElement(acc, kind)

