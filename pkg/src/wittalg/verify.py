"""Re-derivation of every desk-scale claim as a pass/fail report.

Claims carry a stable id, a topical tag used by ``--scope`` and a short
anchor describing the statement checked.  Random inputs are drawn from
fixed seeds, so reports are reproducible byte for byte apart from timings.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .derivations import (derivation_space, graded_derivation_space, h1_formula, h1_graded_count,
                          verify_relation)
from .errors import WittError
from .exact import LaurentPoly, Poly, format_poly, ord_at, poly_gcd
from .extensions import classify_characters, embed_extension, extension_chain, extension_from_witness
from .isomorphism import IsoWitness, NotIsomorphic, decide_isomorphic, transport_subalgebra
from .lfg import LfgAlgebra, gf_data, ideal_generator, lfg_derivation_space, lfg_iso
from .samples import random_monic, random_poly, random_subalgebra
from .subalgebra import (FinCodimSubalgebra, derived_series_term, full_algebra, is_submodule_check,
                         normalizer, parse_subalgebra, submodule, w_geq)
from .witt import ONE_SIDED, TWO_SIDED, GradedWindow, WittElement, bracket

T = Poly({1: 1})


@dataclass(frozen=True)
class Claim:
    id: str
    tag: str
    anchor: str
    expected: str
    run: Callable[[], tuple]  # -> (computed text, passed)


@dataclass(frozen=True)
class ClaimResult:
    id: str
    tag: str
    anchor: str
    expected: str
    computed: str
    passed: bool
    seconds: float

    def to_dict(self, timings: bool = True) -> dict:
        d = {"id": self.id, "tag": self.tag, "anchor": self.anchor, "expected": self.expected,
             "computed": self.computed, "pass": self.passed}
        if timings:
            d["seconds"] = round(self.seconds, 3)
        return d


@dataclass(frozen=True)
class VerifyReport:
    scope: str
    results: tuple = field(default_factory=tuple)

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.results)

    def to_dict(self, timings: bool = True) -> dict:
        return {"scope": self.scope, "passed": self.passed,
                "claims": [r.to_dict(timings) for r in self.results]}


# -- individual claims ------------------------------------------------------------------

def _h1_graded_family():
    vals = [derivation_space(w_geq(n)).h1_dim for n in range(7)]
    graded = [h1_graded_count(n) for n in range(7)]
    return f"normalizer {vals}, graded components {graded}", vals == graded == list(range(7))


def _h1_general():
    rng = random.Random(2024)
    bad = []
    for _ in range(25):
        f = random_monic(rng, 6)
        L = submodule(f)
        lin = L.codim - normalizer(L).codim
        if lin != h1_formula(f):
            bad.append(format_poly(f))
    return ("all 25 agree" if not bad else f"mismatch on {bad}"), not bad


def _graded_sweep():
    bad = []
    win = GradedWindow(-1, 40)
    for n in range(6):
        for k in range(-1, 11):
            basis = graded_derivation_space(n, k, win)
            ok = len(basis) == 1 and all(x == (m - k) * basis[0].c for m, x in basis[0].window_values)
            if not ok:
                bad.append((n, k))
    return ("72 components, one solution each, closed form holds" if not bad else f"failed {bad}"), not bad


def _relation():
    bad = [(n, m) for n in range(1, 13) for m in range(n + 1, 13) if verify_relation(n, m)]
    return ("zero for all 66 pairs" if not bad else f"nonzero at {bad}"), not bad


def _series():
    rng = random.Random(77)
    bad = []
    for _ in range(15):
        f = random_monic(rng, 4)
        L = submodule(f)
        d1 = derived_series_term(L, 1)
        l2 = derived_series_term(L, 2, mode="lower")
        want_l2 = submodule(poly_gcd(f.derivative().to_poly(), f) * f * f)
        if d1 != submodule(f * f) or l2 != want_l2:
            bad.append(format_poly(f))
    return ("15 conductors agree" if not bad else f"mismatch on {bad}"), not bad


def _classification():
    a = classify_characters(T * (T - 1) * (T - 2))
    b = classify_characters(T ** 2)
    c = classify_characters(T ** 2 * (T - 1))
    ok_a = a.trivial.ext_dim == 0 and len(a.simple_roots) == 3 and all(r.ext_dim == 1 for r in a.simple_roots)
    ok_b = (b.trivial.ext_dim == 1 and not b.simple_roots
            and b.trivial.canonical_extensions[0] == submodule(T))
    ok_c = (c.trivial.ext_dim == 1 and len(c.simple_roots) == 1 and c.simple_roots[0].character.root == 1
            and c.simple_roots[0].canonical_extensions[0] == submodule(T ** 2))
    text = "; ".join(f"{format_poly(x.f)}: " + ", ".join(f"{r.character}={r.ext_dim}" for r in x)
                     for x in (a, b, c))
    return text, ok_a and ok_b and ok_c


def _embedding():
    L = w_geq(0)
    w = embed_extension(L, lambda u: -u.coeff.coeff(1))
    X = extension_from_witness(L, w)
    return f"w = {w}, extension {X}", w == WittElement.e(-1) and X == full_algebra()


def _iso_pairs():
    return [(T ** 2 * (T - 1), T ** 2 * (T - 2)), (T ** 2, T * (T - 1))]


def _isomorphism():
    a = decide_isomorphic(*_iso_pairs()[0])
    b = decide_isomorphic(*_iso_pairs()[1])
    ok = (isinstance(a, IsoWitness) and a.auto.x == 0 and a.auto.alpha == Fraction(1, 2)
          and a.verify() and isinstance(b, NotIsomorphic))
    return f"{a.auto} gamma={a.scale}; second: {b.verdict}", ok


def _transport():
    out = []
    ok = True
    for f, g in _iso_pairs():
        w = decide_isomorphic(f, g)
        if isinstance(w, IsoWitness):
            img = transport_subalgebra(submodule(f), w.auto)
            ok &= img == submodule(g)
            out.append(f"{submodule(f)} -> {img}")
    return "; ".join(out), ok and bool(out)


def _chains():
    ch = extension_chain(w_geq(3))
    ok = ch.length == 4 and ch.subalgebras[-1] == full_algebra()
    rng = random.Random(5)
    bad = []
    for _ in range(15):
        L = random_subalgebra(rng, 5)
        c = extension_chain(L)
        if c.length != L.codim or not c.subalgebras[-1].is_full():
            bad.append(str(L))
    return (f"W_(>=3) chain length {ch.length}; random: " + ("all match" if not bad else f"bad {bad}")), ok and not bad


def _lfg():
    i2, i3 = ideal_generator(T ** 2), ideal_generator(T ** 2 * (T - 1))
    g2, _ = gf_data(T ** 2)
    ok = i2.generator_h == T and g2 == T
    ok &= i3.generator_h == T * (T + Fraction(4, 27))
    fp = (T ** 2 * (T - 1)).derivative().to_poly()
    ok &= fp.divides(i3.generator_h.compose(T ** 2 * (T - 1)).to_poly())
    rng = random.Random(11)
    for _ in range(25):
        f = random_monic(rng, 6)
        ok &= ideal_generator(f).reduced
    tr = [lfg_iso(LfgAlgebra.maximal(f)) for f in (T ** 2, T ** 3, T ** 2 * (T - 1))]
    ok &= all(t.ok and len(t.records) == 10 for t in tr)
    h1 = [lfg_derivation_space(LfgAlgebra.maximal(f)).h1_dim for f in (T ** 2, T ** 3, T ** 2 * (T - 1))]
    ok &= h1 == [0, 0, 0]
    return (f"h(t^2) = {i2.generator_h}, g_f = {g2}; h(t^2(t-1)) = {i3.generator_h}; "
            f"transcripts exact; h1(L(f)) = {h1}"), ok


def _submodule_criterion():
    rng = random.Random(3)
    ok = True
    for _ in range(10):
        d, c = is_submodule_check(submodule(random_monic(rng, 5)))
        ok &= d is True and c is True
    L = parse_subalgebra("span{e_0 + e_1} + W(t^3)")
    d, c = is_submodule_check(L)
    ok &= d is False and c is False
    return f"W(f): both criteria true on 10 cases; span{{e_0+e_1}} + W_(>=2): ({d}, {c})", ok


def _properties():
    rng = random.Random(13)
    ok = True
    # Jacobi and antisymmetry
    for _ in range(1000):
        kind = rng.choice((ONE_SIDED, TWO_SIDED))
        low = 0 if kind is ONE_SIDED else -2
        x, y, z = (WittElement(LaurentPoly(dict(random_poly(rng, 3).shift(low).items())), kind)
                   for _ in range(3))
        ok &= bracket(x, y) == -bracket(y, x)
        ok &= not (bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y)))
    # ord law: orders add minus one when they differ, and at least double when equal
    for _ in range(200):
        xi = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
        a, b = rng.randint(0, 3), rng.randint(0, 3)
        lin = Poly({1: 1, 0: -xi})
        f, g = lin ** a * _unit_at(rng, xi), lin ** b * _unit_at(rng, xi)
        br = bracket(WittElement(f), WittElement(g)).coeff
        ob = ord_at(br, xi) if br else float("inf")
        ok &= ob == a + b - 1 if a != b else ob >= 2 * a
    # Leibniz for derivation witnesses
    for f in (T ** 3, T ** 2 * (T - 1), T ** 3 * (T - 2)):
        L = submodule(f)
        rep = derivation_space(L)
        gens = L.lie_generators()[:4]
        for w in rep.outer_witnesses:
            for u in gens:
                ok &= bracket(w, u) in L
                for v in gens:
                    lhs = bracket(w, bracket(u, v))
                    ok &= lhs == bracket(bracket(w, u), v) + bracket(u, bracket(w, v))
    # JSON round trip
    rng2 = random.Random(17)
    for _ in range(30):
        L = random_subalgebra(rng2, 4)
        ok &= FinCodimSubalgebra.from_dict(json.loads(json.dumps(L.to_dict()))) == L
    return "Jacobi/antisymmetry 1000, ord law 200, Leibniz on witnesses, JSON round trip 30", ok


def _unit_at(rng, xi) -> Poly:
    while True:
        u = random_poly(rng, 3)
        if u(xi):
            return u


CLAIMS = (
    Claim("C01-h1-graded-family", "graded", "H^1 of W_(>=n) has dimension n", "n for n = 0..6",
          _h1_graded_family),
    Claim("C02-h1-general", "cohomology", "H^1(W(f)) = deg f - deg rad f", "agreement on 25 random f",
          _h1_general),
    Claim("C03-graded-solver", "graded", "graded derivations are multiples of ad e_k",
          "lam_m = (m - k) c, unique", _graded_sweep),
    Claim("C04-relation", "graded", "degree-5(n+m) relation between e_n and e_m", "0", _relation),
    Claim("C05-derived-lower", "series", "[W(f), W(f)] = W(f^2); third lower-central term",
          "W(f^2) and W(gcd(f', f) f^2)", _series),
    Claim("C06-ext-classification", "extensions", "one-dimensional extensions of W(f)",
          "t(t-1)(t-2): 3 SimpleRoot, trivial 0; t^2: trivial 1 via W(t); t^2(t-1): trivial 1, SimpleRoot(1) via W(t^2)",
          _classification),
    Claim("C07-embedding", "extensions", "W_(>=0) with e_0 acting as -1 on the quotient",
          "e_-1, extension W_(>=-1)", _embedding),
    Claim("C08-isomorphism", "isomorphism", "W(f) ~ W(g) iff f(alpha(t - x)) = gamma g",
          "x = 0, alpha = 1/2; t^2 vs t(t-1) not isomorphic", _isomorphism),
    Claim("C09-transport", "isomorphism", "witness automorphisms carry W(f) onto W(g)",
          "canonical equality", _transport),
    Claim("C10-chains", "chains", "completely non-split extension chains",
          "length 4 for W_(>=3); length = codim on 15 random", _chains),
    Claim("C11-lfg", "lfg", "L(f, g) and the ideal I(f)",
          "h(t^2) = t, g_f = t; h(t^2(t-1)) = t(t + 4/27); h squarefree; H^1(L(f)) = 0", _lfg),
    Claim("C12-submodule-criterion", "submodule", "L is a submodule iff dim L^ab = codim L",
          "direct and abelianisation criteria agree", _submodule_criterion),
    Claim("C13-properties", "properties", "bracket identities, ord law, Leibniz, JSON round trip",
          "all hold", _properties),
)

TAGS = tuple(sorted({c.tag for c in CLAIMS}))


def select(scope: str = "all") -> list:
    scope = (scope or "all").strip()
    if scope == "all":
        return sorted(CLAIMS, key=lambda c: c.id)
    return sorted((c for c in CLAIMS if c.tag == scope or c.id == scope), key=lambda c: c.id)


def run_claim(c: Claim) -> ClaimResult:
    t0 = time.perf_counter()
    try:
        computed, passed = c.run()
    except WittError as exc:
        computed, passed = f"{exc.code}: {exc}", False
    return ClaimResult(c.id, c.tag, c.anchor, c.expected, computed, bool(passed), time.perf_counter() - t0)


def verify_suite(scope: str = "all") -> VerifyReport:
    return VerifyReport(scope or "all", tuple(run_claim(c) for c in select(scope)))
