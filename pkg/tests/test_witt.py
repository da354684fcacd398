"""Brackets, leading data, membership and the text grammar."""

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import SYM_T, elements, from_sym, polys, to_sym
from wittalg.errors import DomainError, ParseError
from wittalg.exact import LaurentPoly, Poly, ord_at
from wittalg.witt import (ONE_SIDED, TWO_SIDED, AlgebraKind, GradedWindow, WittElement, bracket, e,
                          leading_data, normalize_conductor, submodule_membership)

t = Poly.t()


def W(text, kind=ONE_SIDED):
    return WittElement.parse(text, kind)


def test_bracket_examples():
    assert bracket(e(1), e(2)) == e(3)
    assert not bracket(e(0), e(0))
    assert bracket(W("(t^2+1)*d"), W("t*d")) == W("(1-t^2)*d")


@pytest.mark.parametrize("n,m", [(-1, 3), (2, -2), (5, 5), (-4, 1)])
def test_basis_rule(n, m):
    assert bracket(e(n, TWO_SIDED), e(m, TWO_SIDED)) == WittElement.e(n + m, TWO_SIDED, m - n)


def test_leading_data_examples():
    assert leading_data(W("e_5 + e_3")) == (5, e(5))
    assert leading_data(W("(t^2+1)*d")) == (1, e(1))
    assert leading_data(bracket(W("e_5 + e_3"), e(2))) == (7, WittElement.e(7, ONE_SIDED, -3))
    with pytest.raises(DomainError):
        leading_data(WittElement.zero())


def test_membership_examples():
    assert submodule_membership(W("t^2*d"), t ** 2)
    assert not submodule_membership(W("t*d"), t ** 2)
    assert submodule_membership(W("(t^3-t^2)*d"), t * (t - 1))


def test_kinds_do_not_mix():
    with pytest.raises(DomainError):
        bracket(e(1), e(1, TWO_SIDED))
    with pytest.raises(DomainError):
        WittElement(LaurentPoly({-1: 1}), ONE_SIDED)
    assert AlgebraKind.parse("witt") is TWO_SIDED


def test_two_sided_conductor_normalized():
    assert normalize_conductor(LaurentPoly({3: 2, 1: -2}), TWO_SIDED) == t ** 2 - 1


def test_window():
    assert list(GradedWindow.parse("-1:3").degrees()) == [-1, 0, 1, 2, 3]
    with pytest.raises(DomainError):
        GradedWindow.parse("3")


@settings(max_examples=1000)
@given(st.data())
def test_antisymmetry_and_jacobi(data):
    kind = data.draw(st.sampled_from([ONE_SIDED, TWO_SIDED]))
    x, y, z = (data.draw(elements(kind)) for _ in range(3))
    assert bracket(x, y) == -bracket(y, x)
    assert not (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y)))


@given(polys(), polys())
def test_bracket_matches_sympy(p, q):
    expect = to_sym(p) * sp.diff(to_sym(q), SYM_T) - sp.diff(to_sym(p), SYM_T) * to_sym(q)
    assert bracket(WittElement(p), WittElement(q)).coeff == from_sym(expect)


@given(st.integers(-2, 2), st.integers(0, 3), st.integers(0, 3), polys(max_degree=3), polys(max_degree=3))
def test_ord_law(xi, a, b, u, v):
    lin = Poly({1: 1, 0: -xi})
    if not u(xi) or not v(xi):
        return
    f, g = lin ** a * u, lin ** b * v
    br = bracket(WittElement(f), WittElement(g)).coeff
    ob = ord_at(br, xi) if br else float("inf")
    if a != b:
        assert ob == a + b - 1
    else:
        assert ob >= 2 * a


@given(polys(nonzero=True), polys(), polys())
def test_submodule_bracket_lands_in_square(f, p, q):
    u, v = WittElement(f * p), WittElement(f * q)
    assert submodule_membership(bracket(u, v), f * f)


@given(elements())
def test_element_text_round_trip(w):
    assert WittElement.parse(str(w), w.kind) == w
    assert WittElement.parse(w.field_text(), w.kind) == w


@pytest.mark.parametrize("text,pos", [("e_1 +", 5), ("(t+1", 4), ("t $ 2", 2), ("t^x", 2)])
def test_parse_errors_have_positions(text, pos):
    with pytest.raises(ParseError) as exc:
        WittElement.parse(text)
    assert exc.value.position == pos


def test_parse_forms():
    assert W("e_{-1}") == W("d")
    assert W("t^(2)*d") == e(1)
    assert W("e_-2", TWO_SIDED) == WittElement(LaurentPoly({-1: 1}), TWO_SIDED)
    assert W("1/2*t*d").coeff == Poly({1: Fraction(1, 2)})
