"""The ``witt`` command.

Every subcommand prints a short text answer, or with ``--json`` a single
JSON object ``{"schema": 1, "command": ..., "result": ...}`` with sorted
keys and rationals written as ``"p/q"`` strings.  Errors become
``{"schema": 1, "error": {"code": ..., ...}}``.

Exit status: 0 success, 1 a verification failed, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import derivations as der
from . import extensions as ext
from . import isomorphism as iso
from . import lfg
from .errors import VerificationFailure, WittError
from .exact import Q, format_poly, format_rational
from .parsing import parse_laurent, parse_poly
from .subalgebra import from_generators, parse_subalgebra, submodule
from .verify import TAGS, verify_suite
from .witt import AlgebraKind, GradedWindow, WittElement, bracket

SCHEMA = 1


class UsageError(Exception):
    pass


# -- helpers ------------------------------------------------------------------------

def _kind(args) -> AlgebraKind:
    return AlgebraKind.parse(args.algebra)


def _window(args):
    return GradedWindow.parse(args.window) if getattr(args, "window", None) else None


def _subalgebra(args):
    kind = _kind(args)
    if getattr(args, "subalgebra", None):
        return parse_subalgebra(args.subalgebra, kind)
    if getattr(args, "conductor", None):
        return submodule(parse_laurent(args.conductor), kind)
    raise UsageError("give --subalgebra TEXT or --conductor POLY")


def _element_dict(w: WittElement) -> dict:
    return {"e_basis": str(w), "field": w.field_text()}


# -- subcommands --------------------------------------------------------------------
# each returns (json-able result, text lines, success flag)

def cmd_bracket(args):
    kind = _kind(args)
    u, v = WittElement.parse(args.u, kind), WittElement.parse(args.v, kind)
    w = bracket(u, v)
    return _element_dict(w), [str(w)], True


def cmd_conductor(args):
    kind = _kind(args)
    if args.gen:
        gens = [WittElement.parse(g, kind) for g in args.gen]
        L = from_generators(gens, _window(args))
    else:
        L = _subalgebra(args)
    d = L.to_dict()
    d["degree_set"] = str(L.degree_set()) if kind is AlgebraKind.ONE_SIDED else None
    return d, [str(L), f"codimension {L.codim}"], True


def cmd_derivations(args):
    L = _subalgebra(args)
    rep = der.derivation_space(L)
    res = {"subalgebra": L.to_dict(), "normalizer": rep.normalizer.to_dict(), "h1_dim": rep.h1_dim,
           "outer_witnesses": [_element_dict(w) for w in rep.outer_witnesses],
           "inner_generators": [_element_dict(w) for w in rep.inner_generators],
           "formula_h1": rep.formula_h1}
    lines = [f"H^1 dimension {rep.h1_dim}", f"normalizer {rep.normalizer}"]
    lines += [f"outer: ad({w})" for w in rep.outer_witnesses]
    return res, lines, True


def cmd_h1(args):
    L = _subalgebra(args)
    h = der.h1_dim(L)
    return {"subalgebra": str(L), "h1_dim": h}, [str(h)], True


def cmd_graded_der(args):
    kind = _kind(args)
    basis = der.graded_derivation_space(args.n, args.k, _window(args), kind)
    res = {"n": args.n, "k": args.k,
           "basis": [{"c": format_rational(b.c), "closed_form": "lam_m = (m - k) c",
                      "values": {str(m): format_rational(x) for m, x in b.window_values}} for b in basis]}
    lines = [f"dim {len(basis)}"] + [f"d(e_m) = (m - {args.k}) e_(m+{args.k})  (c = {format_rational(b.c)})"
                                      for b in basis]
    return res, lines, True


def cmd_relation(args):
    val = der.verify_relation(args.n, args.m)
    first, second = der.relation_terms(args.n, args.m)
    res = {"n": args.n, "m": args.m, "value": str(val), "first": str(first), "second": str(second)}
    return res, [str(val)], not val


def cmd_ext(args):
    c = ext.classify_characters(parse_laurent(args.conductor), _kind(args))
    lines = [f"{r.character}: Ext dimension {r.ext_dim}"
             + "".join(f"; {x}" for x in r.canonical_extensions) for r in c]
    lines.append(f"non-rational simple roots: {c.nonrational_simple_roots}; other characters: Ext = 0")
    return c.to_dict(), lines, True


def cmd_chain(args):
    L = _subalgebra(args)
    ch = ext.extension_chain(L)
    res = {"length": ch.length, "steps": [
        {"subalgebra": s.sup.to_dict(), "witness": _element_dict(s.witness),
         "eigenvalues": [format_rational(x) for x in s.eigenvalues],
         "nonsplit_witness": {"degree_pair": list(s.nonsplit_witness["degree_pair"])}}
        for s in ch.steps]}
    lines = [" < ".join(str(x) for x in ch.subalgebras), f"length {ch.length}"]
    return res, lines, True


def cmd_iso(args):
    kind = _kind(args)
    v = iso.decide_isomorphic(parse_laurent(args.f), parse_laurent(args.g), kind)
    if isinstance(v, iso.IsoWitness):
        line = f"Isomorphic via {v.auto}, gamma = {format_rational(v.scale)}"
    elif isinstance(v, iso.NotIsomorphic):
        line = f"NotIsomorphic: {v.reason}"
    else:
        line = f"NoRationalWitness: alpha must satisfy {v.to_dict()['constraint']} = 0; {v.x_rule}"
    return v.to_dict(), [line], True


def cmd_aut(args):
    G = iso.automorphism_group(parse_laurent(args.f), _kind(args))
    if G.is_finite:
        lines = [f"finite, {len(G.elements)} element(s): " + ", ".join(str(a) for a in G.elements)]
    else:
        lines = [G.family["description"]]
    return G.to_dict(), lines, True


def cmd_transport(args):
    kind = _kind(args)
    L = _subalgebra(args)
    a = iso.Automorphism(kind, Q(args.alpha), Q(args.x), args.inverted)
    img = iso.transport_subalgebra(L, a)
    return {"automorphism": a.to_dict(), "image": img.to_dict()}, [str(img)], True


def cmd_gf(args):
    f = parse_poly(args.f)
    I = lfg.ideal_generator(f)
    g, h = lfg.gf_data(f)
    res = {"f": format_poly(f), "h": format_poly(I.generator_h), "h_unnormalized": format_poly(h),
           "g_f": format_poly(g), "reduced": I.reduced}
    return res, [f"h = {I.generator_h}", f"g_f = {g}", f"reduced: {I.reduced}"], True


def cmd_lfg_iso(args):
    f = parse_poly(args.f)
    A = lfg.LfgAlgebra.build(f, parse_poly(args.g)) if args.g else lfg.LfgAlgebra.maximal(f)
    tr = lfg.lfg_iso(A, args.max_degree)
    lines = [f"{A} ~ W({A.h}) via p(f)*g*d -> p*h*d",
             f"{len(tr.records)} bracket pairs checked, all exact: {tr.ok}"]
    return tr.to_dict(), lines, tr.ok


def cmd_verify(args):
    rep = verify_suite(args.scope)
    lines = [f"{'PASS' if r.passed else 'FAIL'} {r.id} [{r.tag}] {r.computed}" for r in rep.results]
    if not rep.results:
        lines = [f"no claims match scope {args.scope!r}; tags: {', '.join(TAGS)}"]
    return rep.to_dict(timings=not args.json), lines, rep.passed


COMMANDS = {
    "bracket": cmd_bracket, "conductor": cmd_conductor, "derivations": cmd_derivations,
    "graded-der": cmd_graded_der, "relation": cmd_relation, "h1": cmd_h1, "ext": cmd_ext,
    "chain": cmd_chain, "iso": cmd_iso, "aut": cmd_aut, "gf": cmd_gf, "lfg-iso": cmd_lfg_iso,
    "transport": cmd_transport, "verify": cmd_verify,
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", default="one-sided", choices=["one-sided", "witt"],
                        help="ambient algebra (default one-sided)")
    common.add_argument("--window", help="graded window LO:HI for searches")
    common.add_argument("--json", action="store_true", help="emit JSON")
    common.add_argument("--out", help="also write the JSON output to FILE")

    p = argparse.ArgumentParser(prog="witt", description="Exact computations in Witt algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, help_):
        return sub.add_parser(name, parents=[common], help=help_)

    def sub_args(sp):
        sp.add_argument("--subalgebra", help="'W(f)' or 'span{w1, ...} + W(f)'")
        sp.add_argument("--conductor", help="polynomial f, meaning W(f)")

    s = add("bracket", "bracket of two elements")
    s.add_argument("--u", required=True)
    s.add_argument("--v", required=True)
    s = add("conductor", "canonical form of a subalgebra")
    sub_args(s)
    s.add_argument("--gen", action="append", help="a generator (repeatable)")
    s = add("derivations", "derivations and H^1 of a subalgebra")
    sub_args(s)
    s = add("h1", "dimension of H^1")
    sub_args(s)
    s = add("graded-der", "graded derivations W_(>=n) -> W of degree k")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--k", type=int, required=True)
    s = add("relation", "evaluate the degree-5(n+m) relation")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s = add("ext", "one-dimensional extensions of W(f)")
    s.add_argument("--conductor", required=True)
    s = add("chain", "completely non-split extension chain")
    sub_args(s)
    s = add("iso", "decide W(f) ~ W(g)")
    s.add_argument("--f", required=True)
    s.add_argument("--g", required=True)
    s = add("aut", "automorphisms preserving W(f)")
    s.add_argument("--f", required=True)
    s = add("transport", "image of a subalgebra under an automorphism")
    sub_args(s)
    s.add_argument("--x", default="0")
    s.add_argument("--alpha", default="1")
    s.add_argument("--inverted", action="store_true")
    s = add("gf", "ideal generator h and minimal g for f")
    s.add_argument("--f", required=True)
    s = add("lfg-iso", "isomorphism L(f, g) -> W(h) with a bracket transcript")
    s.add_argument("--f", required=True)
    s.add_argument("--g", help="defaults to the minimal g_f")
    s.add_argument("--max-degree", type=int, default=4)
    s = add("verify", "re-derive the catalogued claims")
    s.add_argument("--scope", default="all", help=f"'all', a tag ({', '.join(TAGS)}) or a claim id")
    return p


def _emit(obj, args):
    text = json.dumps(obj, sort_keys=True, indent=2, default=_json_default)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text + "\n")
    return text


def _json_default(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        result, lines, ok = COMMANDS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except VerificationFailure as exc:
        return _fail(exc, args, stdout, 1)
    except WittError as exc:
        return _fail(exc, args, stdout, 2)
    obj = {"schema": SCHEMA, "command": args.command, "result": result}
    text = _emit(obj, args)
    print(text if args.json else "\n".join(lines), file=stdout)
    return 0 if ok else 1


def _fail(exc, args, stdout, status) -> int:
    obj = {"schema": SCHEMA, "command": args.command, "error": exc.to_dict()}
    text = _emit(obj, args)
    if args.json:
        print(text, file=stdout)
    else:
        print(f"error [{exc.code}]: {exc}", file=sys.stderr)
    return status


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
