"""One-dimensional extensions of finite-codimension subalgebras.

Any non-split extension ``0 -> L -> X -> k -> 0`` of a finite-codimension
subalgebra embeds in the ambient algebra, so extensions of ``L`` are the
same thing as one-dimensional ``L``-submodules of the finite-dimensional
module ``W/L``.  Since ``[W(f^2), W] <= W(f) <= L``, the action on ``W/L``
factors through the finite-dimensional ``L/W(f^2)``.  Everything here is
linear algebra on that quotient.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .errors import DomainError, VerificationFailure, WindowExhausted
from .exact import (Echelon, LaurentPoly, Poly, Q, QMatrix, format_poly, format_rational,
                    ord_at, rational_roots, sparse_kernel, squarefree_decomposition,
                    squarefree_part)
from .subalgebra import FinCodimSubalgebra, from_sandwich, residue, submodule
from .witt import ONE_SIDED, TWO_SIDED, AlgebraKind, WittElement, bracket, normalize_conductor


# -- the quotient module W/L --------------------------------------------------------

class QuotientModule:
    """W/L with basis the monomials t^i d (i < deg f) outside the echelon of L/W(f)."""

    def __init__(self, L: FinCodimSubalgebra):
        self.L = L
        self.f = L.conductor
        self.kind = L.kind
        self._U = Echelon()
        for c in L.coset_basis:
            self._U.add(dict(residue(c.coeff, self.f, self.kind).items()))
        self.exps = [i for i in range(int(self.f.degree)) if i not in self._U.rows]
        self._index = {e: i for i, e in enumerate(self.exps)}

    @property
    def dim(self) -> int:
        return len(self.exps)

    def coords(self, p: LaurentPoly) -> list:
        r = self._U.reduce(dict(residue(p, self.f, self.kind).items()))
        out = [Fraction(0)] * self.dim
        for e, v in r.items():
            out[self._index[e]] = v
        return out

    def lift(self, vec) -> WittElement:
        return WittElement(Poly({e: v for e, v in zip(self.exps, vec)}), self.kind)

    def generators(self) -> list:
        """Elements spanning L modulo W(f^2); they span the acting Lie algebra."""
        f2 = (self.f * self.f).to_poly()
        return self.L.spanning_mod(f2)

    def action_matrix(self, u: WittElement) -> QMatrix:
        cols = [self.coords(bracket(u, WittElement(LaurentPoly.monomial(e), self.kind)).coeff)
                for e in self.exps]
        return QMatrix([list(r) for r in zip(*cols)] if cols else [], self.dim)

    def eigenvalue(self, u: WittElement, v: WittElement) -> Fraction | None:
        """The scalar by which u acts on the class of v, or None if that class is not a line."""
        cv = self.coords(v.coeff)
        cu = self.coords(bracket(u, v).coeff)
        piv = next((i for i, x in enumerate(cv) if x), None)
        if piv is None:
            raise DomainError(f"{v} lies in the subalgebra")
        lam = cu[piv] / cv[piv]
        return lam if all(a == lam * b for a, b in zip(cu, cv)) else None


def _span_kernel(mats, dim):
    rows = []
    for M in mats:
        rows.extend({j: x for j, x in enumerate(r) if x} for r in M.entries)
    return sparse_kernel(rows, range(dim))


def _restrict(M: QMatrix, basis: list, dim: int) -> QMatrix:
    """Matrix of M on the invariant subspace spanned by ``basis`` (dense vectors)."""
    ech = Echelon(track=True)
    for b in basis:
        ech.add({j: x for j, x in enumerate(b) if x})
    cols = []
    for b in basis:
        img = M.apply(b)
        comb = ech.express({j: x for j, x in enumerate(img) if x})
        if comb is None:
            raise VerificationFailure("subspace is not invariant")
        cols.append([comb.get(i, Fraction(0)) for i in range(len(basis))])
    n = len(basis)
    return QMatrix([[cols[j][i] for j in range(n)] for i in range(n)], n)


def _combine(basis, vec):
    dim = len(basis[0]) if basis else 0
    out = [Fraction(0)] * dim
    for c, b in zip(vec, basis):
        if c:
            out = [o + c * x for o, x in zip(out, b)]
    return out


def common_eigenspaces(mats: list, dim: int):
    """Common eigenspaces over Q of matrices spanning a Lie algebra of operators.

    Yields ``(eigenvalues, basis)`` with eigenvalues in lexicographic order.
    Common eigenvectors are killed by every commutator; on the joint kernel
    of the commutators the operators commute, so the eigenspaces can be cut
    out one operator at a time.
    """
    comms = []
    for i in range(len(mats)):
        for j in range(i + 1, len(mats)):
            C = mats[i] @ mats[j] - mats[j] @ mats[i]
            if any(any(r) for r in C.entries):
                comms.append(C)
    K0 = [[v.get(j, Fraction(0)) for j in range(dim)] for v in _span_kernel(comms, dim)]
    if not K0:
        return

    def rec(i, basis, lams):
        if i == len(mats):
            yield tuple(lams), basis
            return
        B = _restrict(mats[i], basis, dim)
        n = len(basis)
        for mu in rational_roots(B.charpoly()):
            shifted = B - QMatrix.identity(n).scale(mu)
            ker = shifted.kernel()
            if ker:
                sub = [_combine(basis, v) for v in ker]
                yield from rec(i + 1, sub, lams + [mu])

    yield from rec(0, K0, [])


# -- characters ----------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """A one-dimensional module of W(f): trivial, or W/W(t - xi) for a simple root xi.

    As a functional, u = f p d acts by 0 (trivial) or by -f'(xi) p(xi).
    """

    f: Poly
    root: Fraction | None = None
    kind: AlgebraKind = ONE_SIDED

    @property
    def variant(self) -> str:
        return "Trivial" if self.root is None else "SimpleRoot"

    def __str__(self):
        return "Trivial" if self.root is None else f"SimpleRoot({format_rational(self.root)})"

    def value(self, k: int) -> Fraction:
        """Scalar of t^k f d."""
        if self.root is None:
            return Fraction(0)
        return -(self.root ** k) * self.f.derivative()(self.root)

    def values(self, count: int) -> list:
        return [self.value(k) for k in range(count)]

    def __call__(self, u: WittElement) -> Fraction:
        if not u.coeff:
            return Fraction(0)
        from .subalgebra import _exact_quotient
        p = _exact_quotient(u.coeff, self.f)
        if self.root is None:
            return Fraction(0)
        return -self.f.derivative()(self.root) * p(self.root)

    def to_dict(self) -> dict:
        return {"variant": self.variant,
                "root": None if self.root is None else format_rational(self.root)}


@dataclass(frozen=True)
class ExtensionReport:
    character: Character
    ext_dim: int
    canonical_extensions: tuple
    eigenspace_dim: int

    def to_dict(self) -> dict:
        return {"character": self.character.to_dict(), "ext_dim": self.ext_dim,
                "extensions": [L.to_dict() for L in self.canonical_extensions]}


@dataclass(frozen=True)
class ExtClassification:
    f: Poly
    kind: AlgebraKind
    reports: tuple
    nonrational_simple_roots: int

    def __iter__(self):
        return iter(self.reports)

    def __len__(self):
        return len(self.reports)

    @property
    def trivial(self) -> ExtensionReport:
        return self.reports[0]

    @property
    def simple_roots(self) -> tuple:
        return tuple(r for r in self.reports if r.character.root is not None)

    def to_dict(self) -> dict:
        return {"conductor": format_poly(self.f), "kind": self.kind.value,
                "reports": [r.to_dict() for r in self.reports],
                "nonrational_simple_roots": self.nonrational_simple_roots,
                "other_characters": "Ext = 0"}


def eigenspace_dim(L: FinCodimSubalgebra, character: Callable[[WittElement], Fraction]) -> int:
    """dim of {v in W/L : u v = character(u) v for all u in L}."""
    Qm = QuotientModule(L)
    mats = []
    for u in Qm.generators():
        A = Qm.action_matrix(u)
        mats.append(A - QMatrix.identity(Qm.dim).scale(character(u)))
    return len(_span_kernel(mats, Qm.dim))


def classify_characters(f, kind: AlgebraKind = ONE_SIDED) -> ExtClassification:
    """One-dimensional extensions of W(f), grouped by quotient character.

    Trivial character: Ext has dimension deg f - deg rad f, realized inside
    W(rad f).  SimpleRoot(xi): dimension one, realized by W(f/(t - xi)).
    Every other character has Ext = 0.  Both dimensions are recomputed as
    eigenspace dimensions of W/W(f) and must agree.
    """
    kind = AlgebraKind.parse(kind)
    f = normalize_conductor(LaurentPoly(f), kind)
    r = squarefree_part(f)
    q = f.exact_div(r)
    L = submodule(f, kind)
    triv = Character(f, None, kind)
    exts = tuple(from_sandwich(kind, f, [WittElement(r.shift(i), kind)]) for i in range(int(q.degree)))
    dim_triv = int(f.degree) - int(r.degree)
    eig = eigenspace_dim(L, triv)
    if eig != dim_triv:
        raise VerificationFailure(f"trivial Ext mismatch for {f}: formula {dim_triv}, eigenspace {eig}")
    reports = [ExtensionReport(triv, dim_triv, exts, eig)]
    simple = [xi for xi in rational_roots(f) if ord_at(f, xi) == 1]
    for xi in simple:
        ch = Character(f, xi, kind)
        ext = submodule(f.exact_div(Poly({1: 1, 0: -xi})), kind)
        eig = eigenspace_dim(L, ch)
        if eig != 1:
            raise VerificationFailure(f"SimpleRoot({xi}) Ext mismatch for {f}: eigenspace {eig}")
        reports.append(ExtensionReport(ch, 1, (ext,), eig))
    sqf = squarefree_decomposition(f)
    mult_one = int(sqf[0].degree) if sqf else 0
    return ExtClassification(f, kind, tuple(reports), mult_one - len(simple))


# -- abstract extensions L + kx --------------------------------------------------------

@dataclass(frozen=True)
class ExtensionData:
    """The L-module structure on L + kx: u.x = cocycle(u) + character(u) x.

    ``cocycle`` may be omitted, in which case only the class modulo L is
    specified (enough to locate the extension inside the ambient algebra).
    """

    character: Callable[[WittElement], Fraction]
    cocycle: Callable[[WittElement], WittElement] | None = None

    def act(self, u: WittElement):
        y = self.cocycle(u) if self.cocycle else WittElement.zero(u.kind)
        return y, Q(self.character(u))


def action_from_element(L: FinCodimSubalgebra, w: WittElement) -> ExtensionData:
    """The action of L on L + k w, read off from brackets with w."""
    Qm = QuotientModule(L)
    if w in L:
        raise DomainError(f"{w} already lies in the subalgebra")

    def lam(u):
        val = Qm.eigenvalue(u, w)
        if val is None:
            raise DomainError(f"L + k w is not an L-module: [{u}, w] leaves it")
        return val

    def coc(u):
        return bracket(u, w) - w * lam(u)

    return ExtensionData(lam, coc)


def zero_action() -> ExtensionData:
    return ExtensionData(lambda u: Fraction(0), lambda u: WittElement.zero(u.kind))


@dataclass
class ExtendedAlgebra:
    """L + kx with [u, x] = u.x; elements are pairs (u, a) meaning u + a x."""

    L: FinCodimSubalgebra
    data: ExtensionData
    checked_pairs: int = 0

    def bracket(self, a, b):
        (u, s), (v, c) = a, b
        s, c = Q(s), Q(c)
        yu, lu = self.data.act(u)
        yv, lv = self.data.act(v)
        return (bracket(u, v) + yu * c - yv * s, c * lu - s * lv)

    def table(self, elements):
        return {(i, j): self.bracket(elements[i], elements[j])
                for i in range(len(elements)) for j in range(len(elements))}


def _test_set(L: FinCodimSubalgebra) -> list:
    f2 = (L.conductor * L.conductor).to_poly()
    seen = []
    for u in L.lie_generators() + L.spanning_mod(f2):
        if u not in seen:
            seen.append(u)
    return seen


def extension_bracket(L: FinCodimSubalgebra, action: ExtensionData) -> ExtendedAlgebra:
    """The Lie algebra L + kx, after checking the module identity on a finite test set.

    The test set is the Lie generators of L together with a spanning set
    of L modulo W(f^2).
    """
    test = _test_set(L)
    pairs = 0
    for u in test:
        yu, lu = action.act(u)
        if yu not in L:
            raise DomainError(f"action of {u} on x leaves L + kx")
    for u in test:
        for v in test:
            pairs += 1
            yu, lu = action.act(u)
            yv, lv = action.act(v)
            y, lam = action.act(bracket(u, v))
            want_y = bracket(u, yv) + yu * lv - bracket(v, yu) - yv * lu
            if lam != 0 or y != want_y:
                raise DomainError(f"not a module: the identity fails on the pair ({u}, {v})")
    return ExtendedAlgebra(L, action, pairs)


def _window_basis(L: FinCodimSubalgebra, extra: int) -> list:
    n = int(L.conductor.degree)
    ks = range(0, n + extra) if L.kind is ONE_SIDED else range(-(n + extra), n + extra)
    return list(L.coset_basis) + [L.module_generator(k) for k in ks]


def _solve_linear_fields(unknowns: list, const: Callable, gens: list, lam: Callable):
    """Find coefficients b with sum b_i X_i satisfying [u, X] - lam(u) X = const(u) for u in gens.

    Returns a list of Fractions or None.
    """
    rows = {}
    for gi, u in enumerate(gens):
        lu = lam(u)
        for i, X in enumerate(unknowns):
            img = bracket(u, X).coeff - X.coeff * lu
            for e, v in img.items():
                rows.setdefault((gi, e), {})[i] = v
        for e, v in const(u).coeff.items():
            rows.setdefault((gi, e), {})[-1] = -v
    ech = Echelon()
    for r in rows.values():
        ech.add(r)
    if -1 in ech.rows:
        return None
    sol = [Fraction(0)] * len(unknowns)
    for p, row in ech.rows.items():
        sol[p] = -row.get(-1, Fraction(0))
    return sol


def find_section(L: FinCodimSubalgebra, data: ExtensionData, extra: int = 8):
    """l in L (within a window) with u.(x + l) = character(u)(x + l), or None."""
    if data.cocycle is None:
        raise DomainError("a section search needs the full action (cocycle)")
    basis = _window_basis(L, extra)
    gens = L.lie_generators()
    sol = _solve_linear_fields(basis, lambda u: -data.cocycle(u), gens, lambda u: Q(data.character(u)))
    if sol is None:
        return None
    acc = WittElement.zero(L.kind)
    for c, X in zip(sol, basis):
        acc = acc + X * c
    return acc


def embed_candidates(L: FinCodimSubalgebra, character: Callable[[WittElement], Fraction]) -> list:
    """Lifts of a basis of the character's eigenspace in W/L."""
    Qm = QuotientModule(L)
    mats = [Qm.action_matrix(u) - QMatrix.identity(Qm.dim).scale(Q(character(u)))
            for u in Qm.generators()]
    ker = _span_kernel(mats, Qm.dim)
    ech = Echelon()
    for v in ker:
        ech.add(v)
    return [Qm.lift([row.get(j, Fraction(0)) for j in range(Qm.dim)])
            for row in reversed(ech.basis())]


def embed_extension(L: FinCodimSubalgebra, data) -> WittElement:
    """The element w of the ambient algebra realizing x.

    With only a character, w is determined modulo L (and must be unique
    up to scale there); with a cocycle it is determined exactly.
    """
    if not isinstance(data, ExtensionData):
        data = ExtensionData(data)
    cands = embed_candidates(L, data.character)
    if not cands:
        raise DomainError("split: every extension with this character has a section "
                          "(no line with this character in W/L)")
    if data.cocycle is None:
        if len(cands) > 1:
            raise DomainError(f"the character alone does not determine the extension "
                              f"(Ext has dimension {len(cands)}); supply the cocycle")
        w = cands[0]
        _check_embedding(L, w, data.character)
        return w
    if find_section(L, data) is not None:
        raise DomainError("split: section exists")
    unknowns = cands + _window_basis(L, 8)
    sol = _solve_linear_fields(unknowns, data.cocycle, L.lie_generators(), lambda u: Q(data.character(u)))
    if sol is None:
        raise WindowExhausted("no embedding found within the window; enlarge the window", None)
    w = WittElement.zero(L.kind)
    for c, X in zip(sol, unknowns):
        w = w + X * c
    if w in L:
        raise DomainError("split: section exists")
    for u in L.lie_generators():
        if bracket(u, w) != data.cocycle(u) + w * Q(data.character(u)):
            raise VerificationFailure(f"embedding fails on {u}")
    return w


def _check_embedding(L, w, character):
    Qm = QuotientModule(L)
    for u in L.lie_generators():
        lam = Qm.eigenvalue(u, w)
        if lam is None or lam != Q(character(u)):
            raise VerificationFailure(f"{w} does not span a line with the given character")


def extension_from_witness(L: FinCodimSubalgebra, w: WittElement) -> FinCodimSubalgebra:
    X = from_sandwich(L.kind, L.conductor, list(L.coset_basis) + [w], method="extension")
    if X.codim != L.codim - 1:
        raise DomainError(f"{w} does not give a one-dimensional extension of {L}")
    return X


# -- chains ----------------------------------------------------------------------------

@dataclass(frozen=True)
class ChainStep:
    sub: FinCodimSubalgebra
    sup: FinCodimSubalgebra
    witness: WittElement
    eigenvalues: tuple
    nonsplit_witness: dict


@dataclass(frozen=True)
class ExtensionChain:
    start: FinCodimSubalgebra
    steps: tuple = field(default_factory=tuple)

    @property
    def length(self) -> int:
        return len(self.steps)

    @property
    def subalgebras(self) -> list:
        return [self.start] + [s.sup for s in self.steps]


def _nonsplit_certificate(L: FinCodimSubalgebra, w: WittElement) -> dict:
    """Two elements of L with distinct nonzero degrees.

    If y spanned an L-stable line, [u, y] = lam y for every u in L.  For u of
    degree a not in {0, deg y}, [u, y] is nonzero of degree a + deg y, which
    is impossible; one of two distinct nonzero degrees always qualifies.
    The window search for a section is run as well and must fail.
    """
    cands = [u for u in _window_basis(L, 4) if u.coeff and u.degree != 0]
    picked = []
    for u in cands:
        if all(u.degree != p.degree for p in picked):
            picked.append(u)
        if len(picked) == 2:
            break
    if len(picked) < 2:
        raise VerificationFailure("could not find two elements of distinct nonzero degree")
    data = action_from_element(L, w)
    section = find_section(L, data)
    if section is not None:
        raise VerificationFailure(f"extension of {L} by {w} splits")
    return {"degree_pair": tuple(str(p) for p in picked), "window_section": None}


def extension_chain(L: FinCodimSubalgebra) -> ExtensionChain:
    """L = L_0 < L_1 < ... < L_n = ambient, each step a non-split one-dimensional extension."""
    steps = []
    cur = L
    while not cur.is_full():
        Qm = QuotientModule(cur)
        gens = Qm.generators()
        mats = [Qm.action_matrix(u) for u in gens]
        found = next(iter(common_eigenspaces(mats, Qm.dim)), None)
        if found is None:
            raise VerificationFailure(
                f"anomaly: no rational common eigenvector for the action of {cur} on the quotient")
        lams, basis = found
        ech = Echelon()
        for b in basis:
            ech.add({j: x for j, x in enumerate(b) if x})
        top = max(ech.rows)
        row = ech.rows[top]
        w = Qm.lift([row.get(j, Fraction(0)) for j in range(Qm.dim)])
        nxt = extension_from_witness(cur, w)
        cert = _nonsplit_certificate(cur, w)
        steps.append(ChainStep(cur, nxt, w, lams, cert))
        cur = nxt
    return ExtensionChain(L, tuple(steps))
