"""Seeded random inputs: polynomials with repeated roots and small subalgebras.

Shared by the verification suite and the tests so both exercise the same
kinds of input.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .exact import Echelon, Poly, squarefree_part
from .subalgebra import FinCodimSubalgebra, from_sandwich, residue
from .witt import ONE_SIDED, AlgebraKind, WittElement, bracket

_IRREDUCIBLE = (Poly({2: 1, 0: 1}), Poly({2: 1, 0: -2}), Poly({2: 1, 1: 1, 0: 1}))


def random_monic(rng: random.Random, max_degree: int = 6, min_degree: int = 1,
                 irreducible: bool = True) -> Poly:
    """Product of random linear factors (t - a) with multiplicities, plus maybe a quadratic."""
    while True:
        f = Poly(1)
        target = rng.randint(min_degree, max_degree)
        if irreducible and target >= 2 and rng.random() < 0.3:
            f = f * rng.choice(_IRREDUCIBLE)
        while f.degree < target:
            a = Fraction(rng.randint(-3, 3), rng.choice((1, 1, 1, 2)))
            m = rng.randint(1, 3)
            for _ in range(m):
                if f.degree < target:
                    f = f * Poly({1: 1, 0: -a})
        if min_degree <= f.degree <= max_degree:
            return f


def random_poly(rng: random.Random, max_degree: int = 5, low: int = 0) -> Poly:
    d = rng.randint(low, max_degree)
    return Poly({i: Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for i in range(low, d + 1)})


def random_subalgebra(rng: random.Random, max_codim: int = 5,
                      kind: AlgebraKind = ONE_SIDED) -> FinCodimSubalgebra:
    """W(F) plus the bracket closure of a few random elements of W(rad F)."""
    F = random_monic(rng, max_codim, 1, irreducible=False)
    r = squarefree_part(F)
    if r == F or rng.random() < 0.3:
        return from_sandwich(kind, F, ())
    ech = Echelon()
    els = []
    for _ in range(rng.randint(1, 2)):
        w = WittElement(r * random_poly(rng, int(F.degree)), kind)
        if ech.add(dict(residue(w.coeff, F, kind).items())) is not None:
            els.append(w)
    grew = True
    while grew:
        grew = False
        for i in range(len(els)):
            for j in range(i + 1, len(els)):
                b = bracket(els[i], els[j])
                if ech.add(dict(residue(b.coeff, F, kind).items())) is not None:
                    els.append(b)
                    grew = True
    return from_sandwich(kind, F, els, method="random")
