"""Derivations: graded solver, H^1, associated graded, the relation."""

import random
import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import SYM_T, monic_with_roots, to_sym
from wittalg.derivations import (associated_graded_derivation, derivation_space,
                                 graded_derivation_space, h1_dim, h1_formula, h1_graded_count,
                                 relation_terms, verify_relation)
from wittalg.errors import DomainError, WindowExhausted
from wittalg.exact import Poly
from wittalg.samples import random_subalgebra
from wittalg.subalgebra import full_algebra, parse_subalgebra, submodule, w_geq
from wittalg.witt import TWO_SIDED, GradedWindow, WittElement, bracket, e

t = Poly.t()


@pytest.mark.parametrize("n,k", [(1, 0), (1, 1), (3, 2)])
def test_graded_examples(n, k):
    (d,) = graded_derivation_space(n, k, GradedWindow(-1, 40))
    assert d.c == 1
    assert all(x == m - k for m, x in d.window_values)
    # the solution is ad e_k restricted to W_{>=n}
    for m in range(n, n + 6):
        assert d(e(m, TWO_SIDED)) == bracket(e(k, TWO_SIDED), e(m, TWO_SIDED))


def test_graded_sweep_is_leibniz():
    for n in range(6):
        for k in range(-1, 11):
            (d,) = graded_derivation_space(n, k, GradedWindow(-1, 40))
            for a in range(n, n + 5):
                for b in range(n, n + 5):
                    x, y = e(a, TWO_SIDED), e(b, TWO_SIDED)
                    assert d(bracket(x, y)) == bracket(d(x), y) + bracket(x, d(y))


def test_graded_window_too_small():
    with pytest.raises(WindowExhausted) as exc:
        graded_derivation_space(2, 3, GradedWindow(-1, 10))
    assert exc.value.suggested is not None


def test_h1_examples():
    assert h1_dim(submodule(t ** 2)) == 1
    assert h1_dim(submodule(t * (t - 1) * (t + 2))) == 0
    assert h1_dim(submodule(t ** 3 * (t - 1))) == 2
    assert h1_dim(w_geq(4)) == 4
    assert h1_dim(full_algebra()) == 0
    assert h1_dim(submodule(t ** 2 * (t - 3) ** 2)) == 2


def test_h1_graded_family_two_routes():
    for n in range(7):
        assert h1_dim(w_geq(n)) == n == h1_graded_count(n)


@settings(max_examples=25)
@given(monic_with_roots(6))
def test_h1_formula_matches_sympy_radical(f):
    fs = to_sym(f)
    rad_deg = sp.degree(sp.sqf_part(fs), SYM_T)
    assert h1_dim(submodule(f)) == int(f.degree) - rad_deg == h1_formula(f)


def test_witnesses_are_derivations_of_L():
    rng = random.Random(4)
    cases = [submodule(t ** 3 * (t - 1)), parse_subalgebra("span{e_0 + e_1} + W(t^3)")]
    cases += [random_subalgebra(rng, 5) for _ in range(8)]
    for L in cases:
        rep = derivation_space(L)
        gens = L.lie_generators()
        for w in rep.outer_witnesses:
            assert w not in L
            for u in gens:
                assert bracket(w, u) in L
            for _ in range(5):
                u, v = rng.choice(gens), rng.choice(gens)
                lhs = bracket(w, bracket(u, v))
                assert lhs == bracket(bracket(w, u), v) + bracket(u, bracket(w, v))


def test_non_submodule_has_no_outer_derivations():
    L = parse_subalgebra("span{e_0 + e_1} + W(t^3)")
    rep = derivation_space(L)
    assert rep.h1_dim == 0 and rep.normalizer == L


def test_associated_graded_examples():
    ag = associated_graded_derivation(WittElement.parse("e_5 + e_3"), submodule(t ** 2 + 1))
    assert tuple(ag) == (5, 1) and not ag.is_compatible(5)
    ag = associated_graded_derivation(e(0), submodule(t ** 2))
    assert tuple(ag) == (0, 1)
    ag = associated_graded_derivation(WittElement.parse("2*e_3"), submodule(t ** 4))
    assert tuple(ag) == (3, 2)
    with pytest.raises(DomainError):
        associated_graded_derivation(e(-1), submodule(t ** 2))


def test_associated_graded_leading_terms():
    # gr(ad_w) e_k = lam (k - N) e_(N+k) matches LT([w, x]) for compatible k
    w, L = WittElement.parse("e_5 + e_3"), submodule(t ** 2 + 1)
    N, lam = associated_graded_derivation(w, L)
    for k in range(1, 12):
        if k == N:
            continue
        x = WittElement((t ** 2 + 1) * t ** (k - 1))  # leading term e_k
        br = bracket(w, x)
        assert br.degree == N + k and br.coeff.lc == lam * (k - N)


def test_relation():
    assert not verify_relation(1, 2)
    first, second = relation_terms(1, 2)
    assert first == WittElement.e(15, TWO_SIDED, 648) and second == WittElement.e(15, TWO_SIDED, -144)
    assert not verify_relation(3, 3) and not verify_relation(2, 5)
    for n in range(1, 13):
        for m in range(n + 1, 13):
            assert not verify_relation(n, m)
