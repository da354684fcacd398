"""Canonical forms, membership, series and normalizers.

The derived-series oracle is brute force: bracket every pair of window
elements of W(f) and compare the span with W(f^2) truncated to the same
window.  The normalizer oracle for W(f) is [w, f t^k d] = w f' t^k d mod W(f),
so N(W(f)) = W(f / gcd(f, f')), with the gcd taken from sympy.
"""

import random

import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import SYM_T, from_sym, monic_with_roots, to_sym
from wittalg.errors import DomainError, WindowExhausted
from wittalg.exact import Echelon, Poly, squarefree_part
from wittalg.samples import random_monic, random_subalgebra
from wittalg.subalgebra import (FinCodimSubalgebra, abelianisation_dim, derived_series_term,
                                from_generators, from_sandwich, full_algebra, is_submodule_check,
                                normalizer, parse_subalgebra, solvable_quotient_depth, submodule, w_geq)
from wittalg.witt import ONE_SIDED, TWO_SIDED, GradedWindow, WittElement, bracket, e, submodule_membership

t = Poly.t()
EX = "span{e_0 + e_1} + W(t^3)"


def W(text, kind=ONE_SIDED):
    return WittElement.parse(text, kind)


def test_from_generators_examples():
    L = from_generators([e(1), e(2)])
    assert L.conductor == t ** 2 and not L.coset_basis
    assert from_generators([W("t^2*d"), W("t^3*d"), W("t^4*d")]) == L
    M = from_generators([W("e_0 + e_1")] + [e(n) for n in range(2, 31)], GradedWindow(-1, 30))
    assert M.conductor == t ** 3
    assert M.coset_basis == (W("(t+t^2)*d"),)
    assert M == parse_subalgebra(EX)


def test_minimal_conductor_examples():
    assert w_geq(1).conductor == t ** 2
    assert submodule(t * (t - 1)).conductor == t ** 2 - t
    assert parse_subalgebra(EX).conductor == t ** 3


def test_membership_examples():
    assert e(5) in w_geq(1)
    assert e(0) not in w_geq(1)
    m = parse_subalgebra(EX).membership(W("2*e_0 + 2*e_1 + e_3"))
    assert m.member and m.coset_coefficients == (2,)


def test_degree_sets():
    assert str(w_geq(1).degree_set()) == "{1, 2, ...}" or 1 in w_geq(1).degree_set()
    d = parse_subalgebra(EX).degree_set()
    assert 1 in d and 0 not in d and 5 in d


def test_derived_series_examples():
    assert derived_series_term(submodule(t ** 2), 1) == submodule(t ** 4)
    assert derived_series_term(submodule(t * (t - 1)), 1) == submodule(t ** 2 * (t - 1) ** 2)
    assert derived_series_term(submodule(t ** 2), 2, mode="lower") == submodule(t ** 5)


def test_normalizer_examples():
    assert normalizer(submodule(t ** 2)) == w_geq(0)
    assert normalizer(submodule(t * (t - 1))) == submodule(t * (t - 1))
    assert normalizer(submodule(t ** 3)) == w_geq(0)


def test_abelianisation_examples():
    assert abelianisation_dim(submodule(t ** 2)) == 2
    assert abelianisation_dim(submodule(t * (t - 1))) == 2
    assert abelianisation_dim(parse_subalgebra(EX)) < 2


def test_submodule_check_examples():
    assert is_submodule_check(submodule(t ** 2)) == (True, True)
    assert is_submodule_check(parse_subalgebra(EX)) == (False, False)
    assert is_submodule_check(submodule(t * (t - 2))) == (True, True)


def test_solvable_depth_examples():
    assert solvable_quotient_depth(w_geq(0), submodule(t ** 4)) == 2
    assert solvable_quotient_depth(w_geq(0), w_geq(0)) == 0
    f = t * (t - 1)
    assert solvable_quotient_depth(submodule(f), submodule(f * f)) == 1


def test_not_a_subalgebra():
    with pytest.raises(DomainError):
        parse_subalgebra("span{e_0, e_1 + e_2} + W(t^5)")  # [e_0, e_1 + e_2] = e_1 + 2 e_2
    with pytest.raises(DomainError):
        parse_subalgebra("span{d} + W(t^2)")


def test_infinite_codimension_is_flagged():
    with pytest.raises((DomainError, WindowExhausted)) as exc:
        from_generators([W("t^3*d"), W("t^5*d")], GradedWindow(-1, 20))
    assert "lfg" in str(exc.value) or isinstance(exc.value, WindowExhausted)


def test_two_sided_conductor():
    L = submodule(t ** 3 - t ** 2, TWO_SIDED)
    assert L.conductor == t - 1
    assert W("(t^-2 - t^-1)*d", TWO_SIDED) in L


def _window_derived_oracle(f: Poly, top: int):
    """Span of [f t^i d, f t^j d] with i, j < top, versus W(f^2) truncated at the same degree."""
    els = [f * t ** i for i in range(top)]
    ech = Echelon()
    hi = 0
    for i in range(top):
        for j in range(i + 1, top):
            b = bracket(WittElement(els[i]), WittElement(els[j])).coeff
            hi = max(hi, int(b.degree))
            ech.add(dict(b.items()))
            assert (f * f).divides(b.to_poly())
    bound = 2 * int(f.degree) + top - 3  # brackets reach every degree up to here
    for k in range(bound - 2 * int(f.degree) + 1):
        assert ech.contains(dict((f * f * t ** k).items()))


@settings(max_examples=20)
@given(monic_with_roots(5))
def test_derived_equals_square(f):
    assert derived_series_term(submodule(f), 1) == submodule(f * f)
    _window_derived_oracle(f, 6)


@settings(max_examples=25)
@given(monic_with_roots(5))
def test_normalizer_of_submodule(f):
    fs = to_sym(f)
    r = from_sym(sp.quo(fs, sp.gcd(fs, sp.diff(fs, SYM_T))))
    assert normalizer(submodule(f)) == submodule(r)
    assert abelianisation_dim(submodule(f)) == int(f.degree)


def test_random_subalgebras_invariants():
    rng = random.Random(8)
    for _ in range(30):
        L = random_subalgebra(rng, 5)
        r = squarefree_part(L.conductor)
        for c in L.coset_basis:
            assert submodule_membership(c, r)
        for k in range(4):
            assert L.module_generator(k) in L
        for a in L.coset_basis:
            for b in L.coset_basis:
                assert bracket(a, b) in L
        # canonicalization idempotence through from_generators
        gens = list(L.coset_basis) + [L.module_generator(k) for k in range(int(L.conductor.degree) + 2)]
        assert from_generators(gens) == L
        # normalizer is monotone
        N = normalizer(L)
        assert N.contains_subalgebra(L) and normalizer(N).contains_subalgebra(N)
        d, c = is_submodule_check(L)
        assert d == c
        assert FinCodimSubalgebra.from_dict(L.to_dict()) == L


def test_lie_generators_generate():
    L = parse_subalgebra(EX)
    gens = L.lie_generators()
    assert from_generators(gens) == L


def test_full_algebra():
    assert full_algebra().is_full() and full_algebra().codim == 0
    assert from_sandwich(ONE_SIDED, Poly(1)) == full_algebra()
