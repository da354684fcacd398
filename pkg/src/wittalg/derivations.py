"""Derivations, first cohomology and graded derivation components.

Every derivation of a finite-codimension subalgebra ``L`` is ``ad_w`` for
some ``w`` in the normalizer of ``L``, so ``H^1(L; L) = N(L)/L``.  That
quotient is computed exactly by :func:`wittalg.subalgebra.normalizer`.

The graded solver is independent of that theory.  It writes a
degree-``k`` derivation of ``W_{>=n}`` into ``W`` as ``e_m -> lam_m e_{m+k}``,
imposes the Leibniz rule on a window and solves for the ``lam_m``.  The
answer is then compared with the closed form ``lam_m = (m - k) c`` of
``ad_{e_k}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, VerificationFailure, WindowExhausted
from .exact import Poly, sparse_kernel, squarefree_part
from .subalgebra import FinCodimSubalgebra, normalizer, submodule
from .witt import ONE_SIDED, TWO_SIDED, AlgebraKind, GradedWindow, WittElement, bracket, e


@dataclass(frozen=True)
class GradedDerivation:
    """d(e_m) = lam_m e_{m+k} on W_{>=n}, with lam_m = (m - k) c."""

    source_min_degree: int
    degree: int
    c: Fraction
    window_values: tuple = ()

    def lam(self, m: int) -> Fraction:
        if m < self.source_min_degree:
            raise DomainError(f"e_{m} is not in the source")
        return (m - self.degree) * self.c

    def __call__(self, w: WittElement) -> WittElement:
        out = WittElement.zero(w.kind)
        for m, a in w.components().items():
            out = out + WittElement.e(m + self.degree, w.kind, a * self.lam(m))
        return out


def _leibniz_rows(n: int, k: int, ms):
    """(l - m) lam_{m+l} - (l + k - m) lam_l - (l - m - k) lam_m = 0 for m < l."""
    top = ms[-1]
    rows = []
    for m in ms:
        for l in ms:
            if l <= m or m + l > top:
                continue
            row: dict = {}
            for key, c in ((m + l, l - m), (l, -(l + k - m)), (m, -(l - m - k))):
                v = row.get(key, 0) + c
                if v:
                    row[key] = v
                else:
                    row.pop(key, None)
            if row:
                rows.append({kk: Fraction(v) for kk, v in row.items()})
    return rows


def graded_derivation_space(n: int, k: int, window: GradedWindow | None = None,
                            kind: AlgebraKind = ONE_SIDED) -> list:
    """Basis of Der(W_{>=n}, W)_k found by solving the Leibniz system on a window.

    For the two-sided algebra with ``n`` unbounded below pass the window's
    lower end as ``n``.
    """
    if kind is ONE_SIDED and n < -1:
        raise DomainError("the one-sided algebra starts at degree -1")
    window = window or GradedWindow(-1 if kind is ONE_SIDED else n, max(n + 16, 40))
    lo = max(n, window.min_degree)
    hi = window.max_degree
    if hi - lo < 16:
        raise WindowExhausted(
            f"window {window} must cover degrees {lo}..{lo + 16}",
            (window.min_degree, lo + 16))
    ms = list(range(lo, hi + 1))
    rows = _leibniz_rows(lo, k, ms)
    ker = sparse_kernel(rows, ms)
    basis = []
    for v in ker:
        # identify c from any m != k, then confirm the closed form on the whole window
        ref = next(m for m in ms if m != k)
        c = v.get(ref, Fraction(0)) / (ref - k)
        for m in ms:
            if v.get(m, Fraction(0)) != (m - k) * c:
                raise WindowExhausted(
                    f"graded component (n={n}, k={k}) is not determined on window {window}; "
                    f"found a solution off the closed form at m={m}",
                    (window.min_degree, 2 * hi))
        basis.append(GradedDerivation(lo, k, c, tuple((m, v.get(m, Fraction(0))) for m in ms)))
    if len(basis) > 1:
        raise WindowExhausted(
            f"graded component (n={n}, k={k}) has {len(basis)} solutions on window {window}",
            (window.min_degree, 2 * hi))
    # normalize to c = 1
    return [GradedDerivation(b.source_min_degree, b.degree, Fraction(1),
                             tuple((m, x / b.c) for m, x in b.window_values)) for b in basis]


def h1_graded_count(n: int, window: GradedWindow | None = None) -> int:
    """dim H^1(W_{>=n}) via graded components (independent of the normalizer).

    A degree-k component d = c ad_{e_k} maps W_{>=n} into itself exactly
    when k >= 0 (or n = -1); it is outer exactly when e_k is not in W_{>=n}.
    """
    count = 0
    for k in range(-1, n):
        for d in graded_derivation_space(n, k, window):
            lands = all(m + k >= n or d.lam(m) == 0 for m in range(n, n + 20))
            if lands:
                count += 1
    return count


@dataclass(frozen=True)
class DerivationSpaceReport:
    """Der(L) = {ad_w : w in N(L)}.

    ``outer_witnesses`` lift a basis of N(L)/L, ``inner_generators`` are Lie
    generators of L (giving the inner derivations), and ``h1_dim`` is
    dim N(L)/L.  ``inner_dim`` counts the listed inner generators; the
    space of inner derivations itself is infinite dimensional.
    """

    subalgebra: FinCodimSubalgebra
    normalizer: FinCodimSubalgebra
    outer_witnesses: tuple
    inner_generators: tuple
    h1_dim: int
    inner_dim: int
    formula_h1: int | None = None

    @property
    def normalizer_basis(self) -> tuple:
        return self.outer_witnesses + self.inner_generators


def _outer_lifts(N: FinCodimSubalgebra, L: FinCodimSubalgebra) -> list:
    """Elements of N whose classes form a basis of N/L."""
    from .exact import Echelon
    ech = Echelon()
    f = L.conductor
    # work modulo W(f): N/W(f) is spanned by N's cosets and N's conductor translates
    cand = list(N.spanning_mod(f)) if N.conductor.divides(f) else []
    for c in L.coset_basis:
        ech.add(dict(_res(c, f).items()))
    out = []
    for w in cand:
        if ech.add(dict(_res(w, f).items())) is not None:
            out.append(w)
    return out


def _res(w: WittElement, f: Poly):
    from .subalgebra import residue
    return residue(w.coeff, f, w.kind)


def derivation_space(L: FinCodimSubalgebra) -> DerivationSpaceReport:
    N = normalizer(L)
    h1 = L.codim - N.codim
    outer = _outer_lifts(N, L)
    if len(outer) != h1:
        raise VerificationFailure("normalizer lifts do not match the codimension count")
    for w in outer:
        for u in L.lie_generators():
            if bracket(w, u) not in L:
                raise VerificationFailure(f"{w} does not normalize {L}")
    formula = None
    if L.is_submodule_form:
        f = L.conductor
        formula = int(f.degree) - int(squarefree_part(f).degree)
        if formula != h1:
            raise VerificationFailure(f"H^1 mismatch for {L}: linear algebra {h1}, formula {formula}")
    inner = tuple(L.lie_generators())
    return DerivationSpaceReport(L, N, tuple(outer), inner, h1, len(inner), formula)


def h1_dim(L: FinCodimSubalgebra) -> int:
    return derivation_space(L).h1_dim


def h1_formula(f: Poly) -> int:
    return int(f.degree) - int(squarefree_part(f).degree)


@dataclass(frozen=True)
class AssociatedGraded:
    """gr(ad_w) = scale * ad_{e_degree}; ``non_compatible`` lists degrees of L
    where the leading term cancels."""

    degree: int
    scale: Fraction
    non_compatible: frozenset

    def __iter__(self):
        yield self.degree
        yield self.scale

    def is_compatible(self, k: int) -> bool:
        return k not in self.non_compatible


def associated_graded_derivation(w: WittElement, L: FinCodimSubalgebra) -> AssociatedGraded:
    if w.kind is not L.kind:
        raise DomainError("element and subalgebra belong to different algebras")
    if not w.coeff:
        raise DomainError("the zero derivation has no degree")
    for u in L.lie_generators():
        if bracket(w, u) not in L:
            raise DomainError(f"{w} does not normalize {L}")
    N = w.degree
    lam = w.coeff.lc
    # for x with LT(x) = e_k, [w, x] has leading term lam (k - N) e_{N+k}
    # unless k = N; so the only candidate exception is N itself
    bad = frozenset({N}) if N in L.degree_set() else frozenset()
    return AssociatedGraded(N, lam, bad)



def verify_relation(n: int, m: int) -> WittElement:
    """The degree-5(n+m) relation between e_n and e_m; always zero."""
    en, em = e(n, TWO_SIDED), e(m, TWO_SIDED)
    a = bracket(en, em)                              # [e_n, e_m]
    b = bracket(em, bracket(en, a))                  # [e_m, [e_n, [e_n, e_m]]]
    first = bracket(a, bracket(a, bracket(a, b)))
    second = bracket(b, bracket(b, a))
    return first * (n * m) + second * (3 * (m - n) * (n + m))


def relation_terms(n: int, m: int):
    """The two summands of :func:`verify_relation` separately."""
    en, em = e(n, TWO_SIDED), e(m, TWO_SIDED)
    a = bracket(en, em)
    b = bracket(em, bracket(en, a))
    return bracket(a, bracket(a, bracket(a, b))), bracket(b, bracket(b, a))


def graded_family(n: int) -> FinCodimSubalgebra:
    return submodule(Poly({n + 1: 1}), ONE_SIDED)
