"""Text grammar for polynomials, vector fields and subalgebra forms.

::

    expr   := term (('+' | '-') term)*
    term   := unary ('*' unary)*
    unary  := ('+' | '-') unary | power
    power  := atom ('^' exponent)?
    atom   := NUMBER | 't' | 'd' | 'e_' INT | '(' expr ')'

``NUMBER`` is an integer or ``p/q``.  ``d`` stands for the derivation
d/dt, and ``e_n`` is shorthand for ``t^(n+1)*d``.  An expression is either
a scalar (a Laurent polynomial) or a vector field (Laurent polynomial times
``d``); mixing the two in a sum is an error.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .errors import ParseError
from .exact import LaurentPoly, Poly

_TOKEN = re.compile(
    r"""
    (?P<ws>\s+)
  | (?P<num>\d+(?:/\d+)?)
  | (?P<e>e_(?:\{\s*-?\d+\s*\}|-?\d+))
  | (?P<t>t)
  | (?P<d>d)
  | (?P<op>[-+*^(),{}])
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class _Tok:
    kind: str
    text: str
    pos: int


@dataclass(frozen=True)
class _Field:
    """coeff * d"""

    coeff: LaurentPoly


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r} at position {pos}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append(_Tok(kind if kind != "op" else m.group(), m.group(), pos))
        pos = m.end()
    out.append(_Tok("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, tokens=None):
        self.text = text
        self.toks = tokens if tokens is not None else _tokenize(text)
        self.i = 0

    @property
    def cur(self) -> _Tok:
        return self.toks[self.i]

    def error(self, msg, tok=None):
        tok = tok or self.cur
        where = "end of input" if tok.kind == "end" else f"{tok.text!r}"
        raise ParseError(f"{msg} at position {tok.pos} (found {where})", tok.pos, self.text)

    def eat(self, kind):
        if self.cur.kind != kind:
            self.error(f"expected {kind!r}")
        tok = self.cur
        self.i += 1
        return tok

    def expr(self):
        val = self.term()
        while self.cur.kind in ("+", "-"):
            tok = self.cur
            self.i += 1
            rhs = self.term()
            val = self._add(val, rhs, tok, negate=tok.kind == "-")
        return val

    def _add(self, a, b, tok, negate):
        if isinstance(b, _Field):
            b = _Field(-b.coeff) if negate else b
        else:
            b = -b if negate else b
        if isinstance(a, _Field) and isinstance(b, _Field):
            return _Field(a.coeff + b.coeff)
        if not isinstance(a, _Field) and not isinstance(b, _Field):
            return a + b
        # allow adding a literal zero scalar to a field
        scalar = b if isinstance(a, _Field) else a
        if not scalar:
            return a if isinstance(a, _Field) else b
        self.error("cannot add a scalar to a vector field", tok)

    def term(self):
        val = self.unary()
        while self.cur.kind == "*":
            tok = self.cur
            self.i += 1
            rhs = self.unary()
            val = self._mul(val, rhs, tok)
        return val

    def _mul(self, a, b, tok):
        if isinstance(a, _Field) and isinstance(b, _Field):
            self.error("cannot multiply two vector fields", tok)
        if isinstance(a, _Field):
            return _Field(a.coeff * b)
        if isinstance(b, _Field):
            return _Field(b.coeff * a)
        return a * b

    def unary(self):
        if self.cur.kind in ("+", "-"):
            tok = self.eat(self.cur.kind)
            val = self.unary()
            if tok.kind == "-":
                return _Field(-val.coeff) if isinstance(val, _Field) else -val
            return val
        return self.power()

    def power(self):
        base_tok = self.cur
        base = self.atom()
        if self.cur.kind == "^":
            tok = self.eat("^")
            n = self.exponent()
            if isinstance(base, _Field):
                self.error("cannot raise a vector field to a power", tok)
            if n < 0 and not base.is_monomial():
                self.error("negative exponent needs a monomial base", base_tok)
            base = base ** n
        return base

    def exponent(self) -> int:
        paren = self.cur.kind == "("
        if paren:
            self.eat("(")
        sign = 1
        if self.cur.kind in ("+", "-"):
            sign = -1 if self.eat(self.cur.kind).kind == "-" else 1
        tok = self.cur
        if tok.kind != "num" or "/" in tok.text:
            self.error("expected an integer exponent")
        self.i += 1
        if paren:
            self.eat(")")
        return sign * int(tok.text)

    def atom(self):
        tok = self.cur
        if tok.kind == "num":
            self.i += 1
            return LaurentPoly(Fraction(tok.text))
        if tok.kind == "t":
            self.i += 1
            return LaurentPoly({1: 1})
        if tok.kind == "d":
            self.i += 1
            return _Field(LaurentPoly(1))
        if tok.kind == "e":
            self.i += 1
            n = int(tok.text[2:].strip("{} "))
            return _Field(LaurentPoly({n + 1: 1}))
        if tok.kind == "(":
            self.i += 1
            val = self.expr()
            self.eat(")")
            return val
        self.error("expected a number, 't', 'd', 'e_n' or '('")


def _parse_full(text: str):
    p = _Parser(text)
    if p.cur.kind == "end":
        p.error("empty expression")
    val = p.expr()
    if p.cur.kind != "end":
        p.error("unexpected trailing input")
    return val


def parse_laurent(text: str) -> LaurentPoly:
    val = _parse_full(text)
    if isinstance(val, _Field):
        raise ParseError("expected a polynomial, got a vector field", 0, text)
    return val


def parse_poly(text: str) -> Poly:
    val = parse_laurent(text)
    if not val.is_poly():
        raise ParseError("negative exponents are not allowed in a polynomial", 0, text)
    return val.to_poly()


def parse_field(text: str) -> LaurentPoly:
    """Coefficient p of a vector field written as ``p*d`` or in ``e_n`` form."""
    val = _parse_full(text)
    if isinstance(val, _Field):
        return val.coeff
    if not val:
        return val
    raise ParseError("expected a vector field such as '(t^2+1)*d' or 'e_3'", 0, text)


_SUB_W = re.compile(r"\s*W\s*\(")
_SUB_SPAN = re.compile(r"\s*span\s*\{")


def parse_subalgebra_text(text: str):
    """Parse ``W(f)`` or ``span{w1, ..., wk} + W(f)``.

    Returns ``(field coefficients, conductor text polynomial)``.
    """
    pos = 0
    gens = []
    m = _SUB_SPAN.match(text, pos)
    if m:
        close = _matching(text, m.end() - 1, "{", "}")
        inner = text[m.end():close]
        for piece, offset in _split_top(inner, m.end()):
            if not piece.strip():
                raise ParseError(f"empty span entry at position {offset}", offset, text)
            try:
                gens.append(parse_field(piece))
            except ParseError as exc:
                raise ParseError(f"{exc} (inside span entry starting at {offset})",
                                 offset + (exc.position or 0), text) from None
        pos = close + 1
        m = re.compile(r"\s*\+").match(text, pos)
        if not m:
            raise ParseError(f"expected '+ W(...)' at position {pos}", pos, text)
        pos = m.end()
    m = _SUB_W.match(text, pos)
    if not m:
        raise ParseError(f"expected 'W(' at position {pos}", pos, text)
    close = _matching(text, m.end() - 1, "(", ")")
    inner = text[m.end():close]
    if text[close + 1:].strip():
        raise ParseError(f"unexpected trailing input at position {close + 1}", close + 1, text)
    try:
        f = parse_laurent(inner)
    except ParseError as exc:
        raise ParseError(str(exc), m.end() + (exc.position or 0), text) from None
    return gens, f


def _matching(text, start, open_, close):
    depth = 0
    for i in range(start, len(text)):
        if text[i] == open_:
            depth += 1
        elif text[i] == close:
            depth -= 1
            if depth == 0:
                return i
    raise ParseError(f"unbalanced {open_!r} opened at position {start}", start, text)


def _split_top(s, base):
    depth = 0
    start = 0
    for i, ch in enumerate(s):
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
        elif ch == "," and depth == 0:
            yield s[start:i], base + start
            start = i + 1
    if s.strip() or start:
        yield s[start:], base + start
