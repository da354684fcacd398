"""The algebras L(f, g) and the ideal I(f).

Oracle for the ideal generator: h(f) is divisible by f' exactly when h
vanishes at every critical value f(xi), f'(xi) = 0, so the monic generator
is the squarefree part of the resultant Res_s(f'(s), t - f(s)).  sympy
computes that independently of the package's degree-by-degree search.
"""

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings, strategies as st

from conftest import SYM_T, from_sym, polys, to_sym
from wittalg.errors import DomainError
from wittalg.exact import Poly, squarefree_part
from wittalg.lfg import (LfgAlgebra, base_f_expansion, from_base_f, g_minimality_check, gf_data,
                         ideal_generator, lfg_derivation_space, lfg_iso, minimal_g)
from wittalg.samples import random_poly
from wittalg.witt import WittElement, bracket

t = Poly.t()
S = sp.Symbol("s")


def _sym_generator(f: Poly) -> Poly:
    fs = to_sym(f).subs(SYM_T, S)
    res = sp.resultant(sp.diff(fs, S), SYM_T - fs, S)
    if sp.degree(res, SYM_T) <= 0:
        return Poly(1)
    return from_sym(sp.Poly(sp.sqf_part(res), SYM_T).monic().as_expr())


def test_examples():
    assert ideal_generator(t ** 2).generator_h == t
    g, h = gf_data(t ** 2)
    assert g == t and h == 2 * t
    assert ideal_generator(t ** 2 * (t - 1)).generator_h == t * (t + Fraction(4, 27))
    assert ideal_generator(t).generator_h == Poly(1)
    assert ideal_generator(t ** 3).generator_h == t


def test_base_f_examples():
    f = t ** 2 + 1
    assert base_f_expansion(f ** 2 + 3 * f, f) == (0, 3, 1)
    assert base_f_expansion(t ** 3, f) is None
    assert from_base_f((0, 3, 1), f) == f ** 2 + 3 * f
    with pytest.raises(DomainError):
        base_f_expansion(t, Poly(2))


@given(polys(max_degree=4), polys(max_degree=3))
def test_base_f_round_trip(p, f):
    if f.degree < 1:
        return
    q = p.compose(f).to_poly()
    assert from_base_f(base_f_expansion(q, f), f) == q


def _random_f(rng):
    while True:
        f = random_poly(rng, 5)
        if f.degree >= 2:
            return f


def test_generator_matches_resultant_oracle():
    rng = random.Random(25)
    for _ in range(25):
        f = _random_f(rng)
        ideal = ideal_generator(f)
        assert ideal.reduced
        assert ideal.generator_h == _sym_generator(f)
        assert ideal.generator_h in ideal


@settings(max_examples=30)
@given(st.lists(st.integers(-2, 2), min_size=2, max_size=4), st.integers(1, 3))
def test_generator_vanishes_on_critical_values(roots, lead):
    f = Poly(lead)
    for r in roots:
        f = f * (t - r)
    h = ideal_generator(f).generator_h
    fp = f.derivative().to_poly()
    for xi in sp.roots(to_sym(fp), SYM_T):
        if xi.is_rational:
            assert h(f(Fraction(int(xi.p), int(xi.q)))) == 0
    assert squarefree_part(h) == h
    assert h == _sym_generator(f)


def test_g_minimal():
    rng = random.Random(6)
    for _ in range(15):
        f = _random_f(rng)
        g, h = gf_data(f)
        assert f.derivative() * g == h.compose(f)
        assert g_minimality_check(f)
        assert minimal_g(f) == g


def test_build_examples():
    A = LfgAlgebra.build(t, t ** 2)
    assert A.h == t ** 2
    A = LfgAlgebra.build(t ** 2, t ** 3)
    assert A.h == 2 * t ** 2
    with pytest.raises(DomainError):
        LfgAlgebra.build(t ** 2, Poly(1))
    with pytest.raises(DomainError):
        LfgAlgebra.build(Poly(3), t)


def test_membership():
    A = LfgAlgebra.build(t ** 2, t ** 3)
    assert A.element(t + 1) in A
    assert WittElement((t ** 2 + 1) * t ** 3) in A
    assert WittElement(t ** 4) not in A
    x, y = A.element(t), A.element(t ** 2 + 3)
    assert bracket(x, y) in A


@given(polys(max_degree=3), polys(max_degree=3))
def test_iso_is_homomorphism(p, q):
    A = LfgAlgebra.maximal(t ** 3 - t)
    x, y = A.element(p), A.element(q)
    assert A.to_target(bracket(x, y)) == bracket(A.to_target(x), A.to_target(y))
    assert A.from_target(A.to_target(x)) == x


def test_transcripts():
    for f, g in [(t ** 2, t), (t ** 2 * (t - 1), None), (t ** 3, t ** 4), (t ** 2 + t, None)]:
        A = LfgAlgebra.maximal(f) if g is None else LfgAlgebra.build(f, g)
        tr = lfg_iso(A)
        assert tr.ok and len(tr.records) == 10
        assert tr.to_dict()["map"] == "p(f)*g*d -> p*h*d"


def test_derivations():
    assert lfg_derivation_space(LfgAlgebra.build(t, t ** 2)).h1_dim == 1
    assert lfg_derivation_space(LfgAlgebra.build(t ** 2, t ** 5)).h1_dim == 2
    rng = random.Random(12)
    for _ in range(10):
        A = LfgAlgebra.maximal(_random_f(rng))
        assert lfg_derivation_space(A).h1_dim == 0


def test_pulled_back_derivations_are_leibniz():
    A = LfgAlgebra.build(t ** 2, t ** 5)  # h = 2 t^3
    rep = lfg_derivation_space(A)
    els = [A.element(Poly({i: 1})) for i in range(4)]
    for w in rep.outer_witnesses:
        D = rep.derivation(w)
        for x in els:
            assert D(x) in A
            for y in els:
                assert D(bracket(x, y)) == bracket(D(x), y) + bracket(x, D(y))
