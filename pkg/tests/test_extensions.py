"""One-dimensional extensions, embeddings and non-split chains.

The eigenspace oracle is independent of the package: the quotient W/W(f) is
modelled by sympy on the monomials t^i, i < deg f, and the action of
t^k f d is computed by expanding the bracket symbolically.
"""

import random
from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings

from conftest import SYM_T, monic_with_roots, to_sym
from wittalg.derivations import h1_dim
from wittalg.errors import DomainError
from wittalg.exact import Poly
from wittalg.extensions import (Character, ExtensionData, action_from_element, classify_characters,
                                embed_extension, extension_bracket, extension_chain, find_section,
                                zero_action)
from wittalg.samples import random_subalgebra
from wittalg.subalgebra import parse_subalgebra, submodule, w_geq
from wittalg.witt import ONE_SIDED, TWO_SIDED, WittElement, e, submodule_membership

t = Poly.t()


def _sym_quotient_action(f: Poly, k: int) -> sp.Matrix:
    """Matrix of ad(t^k f d) on k[t]/(f) with basis 1, t, ..., t^(n-1)."""
    fs = to_sym(f)
    n = int(f.degree)
    u = SYM_T ** k * fs
    cols = []
    for i in range(n):
        v = SYM_T ** i
        br = sp.expand(u * sp.diff(v, SYM_T) - sp.diff(u, SYM_T) * v)
        r = sp.Poly(sp.rem(br, fs, SYM_T), SYM_T)
        cols.append([r.coeff_monomial(SYM_T ** j) for j in range(n)])
    return sp.Matrix(cols).T


def _sym_eigenspace_dim(f: Poly, lam_of_k) -> int:
    n = int(f.degree)
    blocks = [_sym_quotient_action(f, k) - lam_of_k(k) * sp.eye(n) for k in range(n + 1)]
    return n - sp.Matrix.vstack(*blocks).rank()


def test_classification_examples():
    c = classify_characters(t * (t - 1) * (t - 2))
    assert c.trivial.ext_dim == 0
    assert sorted(r.character.root for r in c.simple_roots) == [0, 1, 2]
    c = classify_characters(t ** 2)
    assert c.trivial.ext_dim == 1 and not c.simple_roots
    assert c.trivial.canonical_extensions == (submodule(t),)
    c = classify_characters(t ** 2 * (t - 1))
    assert c.trivial.ext_dim == 1
    (s,) = c.simple_roots
    assert s.character.root == 1 and s.canonical_extensions == (submodule(t ** 2),)


def test_nonrational_simple_roots_counted():
    c = classify_characters((t ** 2 + 1) * t ** 2)
    assert c.nonrational_simple_roots == 2 and not c.simple_roots


@settings(max_examples=20)
@given(monic_with_roots(4))
def test_classification_matches_sympy_eigenspaces(f):
    c = classify_characters(f)
    assert c.trivial.ext_dim == _sym_eigenspace_dim(f, lambda k: 0)
    fp = to_sym(f.derivative())
    for r in c.simple_roots:
        xi = sp.Rational(r.character.root.numerator, r.character.root.denominator)
        lam = lambda k: -fp.subs(SYM_T, xi) * xi ** k
        assert _sym_eigenspace_dim(f, lam) == 1


def test_trivial_ext_dim_equals_h1():
    for f in [t ** 2, t ** 3 * (t - 1), t * (t - 1) * (t + 2), t ** 2 * (t - 3) ** 2, t ** 5]:
        assert classify_characters(f).trivial.ext_dim == h1_dim(submodule(f))


def test_character_formula():
    f = t * (t - 1)
    ch = Character(f, Fraction(0))
    # f'(0) = -1, so t^k f d acts by 0^k
    assert ch.values(4) == [1, 0, 0, 0]
    assert ch(WittElement(f * (t + 3))) == 3
    assert Character(f).values(3) == [0, 0, 0]


def test_embedding_examples():
    # e_n acts by -1 for n = 0 and by 0 otherwise; the coefficient of t is that scalar up to sign
    w = embed_extension(w_geq(0), ExtensionData(lambda u: -u.coeff.coeff(1)))
    assert w == e(-1)
    L = submodule(t * (t - 1))
    w = embed_extension(L, Character(t * (t - 1), Fraction(0)))
    assert submodule_membership(w - WittElement(t - 1), t * (t - 1))
    assert w not in L
    w = embed_extension(submodule(t ** 2), Character(t ** 2))
    assert w == e(0)


def test_embedding_split_and_ambiguous():
    with pytest.raises(DomainError, match="split"):
        embed_extension(w_geq(0), zero_action())
    with pytest.raises(DomainError, match="split"):
        embed_extension(submodule(t * (t - 1)), Character(t * (t - 1)))
    with pytest.raises(DomainError, match="cocycle"):
        embed_extension(submodule(t ** 3), Character(t ** 3))


def test_embedding_with_cocycle_round_trip():
    for L, w in [(submodule(t ** 3), WittElement(t)), (w_geq(1), e(0)), (submodule(t ** 3), e(1) + e(0))]:
        data = action_from_element(L, w)
        got = embed_extension(L, data)
        assert got == w or (got - w) in L
        assert find_section(L, data) is None


def test_extension_bracket():
    L = w_geq(1)
    ext = extension_bracket(L, action_from_element(L, e(0)))
    u, x = (e(2), 0), (WittElement.zero(), 1)
    y, a = ext.bracket(u, x)
    assert y == WittElement.e(2, ONE_SIDED, -2) and a == 0  # [e_2, e_0] = -2 e_2 lies in L
    y, a = ext.bracket((WittElement.zero(), 1), (e(1), 0))
    assert y == e(1) and a == 0
    # a constant nonzero character does not vanish on [L, L]
    with pytest.raises(DomainError):
        extension_bracket(L, ExtensionData(lambda u: Fraction(1), lambda u: WittElement.zero()))


def test_chain_examples():
    ch = extension_chain(w_geq(3))
    assert ch.length == 4 and ch.subalgebras[-1].is_full()
    ch = extension_chain(submodule(t * (t - 1)))
    assert [str(L) for L in ch.subalgebras] == ["W(t^2 - t)", "W(t)", "W(1)"]
    for s in ch.steps:
        assert len(s.nonsplit_witness["degree_pair"]) == 2


def test_chain_length_is_codim():
    rng = random.Random(13)
    for _ in range(15):
        L = random_subalgebra(rng, 5)
        ch = extension_chain(L)
        assert ch.length == L.codim
        for a, b in zip(ch.subalgebras, ch.subalgebras[1:]):
            assert b.contains_subalgebra(a) and b.codim == a.codim - 1


def test_chain_two_sided():
    L = submodule(t ** 2 * (t - 1), TWO_SIDED)
    ch = extension_chain(L)
    assert ch.length == L.codim


def test_non_submodule_chain():
    L = parse_subalgebra("span{e_0 + e_1} + W(t^3)")
    ch = extension_chain(L)
    assert ch.length == L.codim
