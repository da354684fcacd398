import sympy as sp
from hypothesis import HealthCheck, settings, strategies as st

from wittalg.exact import LaurentPoly, Poly
from wittalg.witt import ONE_SIDED, TWO_SIDED, WittElement

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

SYM_T = sp.Symbol("t")

rationals = st.fractions(min_value=-5, max_value=5, max_denominator=4)
small_ints = st.integers(min_value=-4, max_value=4)


@st.composite
def polys(draw, max_degree=5, nonzero=False):
    coeffs = draw(st.lists(rationals, min_size=1, max_size=max_degree + 1))
    p = Poly.from_coeffs(coeffs)
    if nonzero and not p:
        p = Poly(1)
    return p


@st.composite
def laurents(draw, low=-3, high=4):
    exps = draw(st.lists(st.integers(low, high), max_size=5))
    return LaurentPoly({e: draw(rationals) for e in exps})


@st.composite
def elements(draw, kind=None):
    kind = kind or draw(st.sampled_from([ONE_SIDED, TWO_SIDED]))
    if kind is ONE_SIDED:
        return WittElement(draw(polys()), kind)
    return WittElement(draw(laurents()), kind)


@st.composite
def monic_with_roots(draw, max_degree=5):
    """Monic products of small linear factors, so repeated roots are common."""
    roots = draw(st.lists(st.integers(-2, 2), min_size=1, max_size=max_degree))
    f = Poly(1)
    for r in roots:
        f = f * Poly({1: 1, 0: -r})
    return f


def to_sym(p) -> sp.Expr:
    return sum((sp.Rational(v.numerator, v.denominator) * SYM_T ** e for e, v in p.items()), sp.Integer(0))


def from_sym(expr) -> LaurentPoly:
    expr = sp.expand(expr)
    if expr == 0:
        return Poly()
    poly = sp.Poly(expr, SYM_T)
    from fractions import Fraction
    return Poly({m[0]: Fraction(int(c.p), int(c.q)) for m, c in zip(poly.monoms(), poly.coeffs())})
