"""Parsers and printers for every surface language.

All grammars are prefix s-expressions. ``parse`` turns text into a
``SurfaceNode`` (or raises ``ParseError`` with a span); ``print_node`` renders
a node back so that re-parsing gives an alpha-equivalent payload.

Theory files are sequences of declarations. Definitions are expanded while
parsing; a binder with the same name as a definition shadows it.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from . import aca as A
from . import dtt as D
from . import fol as F
from . import hao as H
from . import logic as L
from .sexp import Atom, ParseError, SExp, SList, SourceSpan, read_all, read_one

CATEGORIES = ("type", "term", "formula", "proof", "dtt", "aca", "fol", "theory-file")

_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_'!?.\-]*\Z")
_DIGITS = re.compile(r"[0-9]+\Z")


@dataclass(frozen=True)
class SurfaceNode:
    kind: str
    payload: object
    span: SourceSpan
    sexp: SExp | None = field(default=None, compare=False, repr=False)


@dataclass(frozen=True)
class Decl:
    """One top-level declaration of a theory file."""
    kind: str
    name: str | None
    args: tuple
    span: SourceSpan
    error: ParseError | None = None


# ------------------------------------------------------------------ helpers


def _fail(sx: SExp, msg: str):
    raise ParseError(msg, sx.span)


def _ident(sx: SExp, what: str = "identifier", reserved=frozenset()) -> str:
    if not isinstance(sx, Atom) or not _IDENT.match(sx.text) or sx.text in reserved:
        _fail(sx, f"expected {what}, found {sx}")
    return sx.text


def _form(sx: SExp, *arities: int) -> tuple:
    """Arguments of a list form whose argument count is one of ``arities``."""
    args = sx.items[1:]
    if arities and len(args) not in arities:
        want = " or ".join(map(str, arities))
        _fail(sx, f"{sx.head()} takes {want} arguments, found {len(args)}")
    return args


def _binder_pair(sx: SExp, what: str) -> tuple[SExp, SExp]:
    if not isinstance(sx, SList) or len(sx) != 2:
        _fail(sx, f"expected a binder ({what})")
    return sx[0], sx[1]


def _distinct(sx: SExp, *names: str) -> None:
    if len(set(names)) != len(names):
        _fail(sx, f"duplicate binder name in {sx}")


# ----------------------------------------------------------- finite types


def parse_type(sx: SExp) -> H.FiniteType:
    if isinstance(sx, Atom):
        if sx.text == "N":
            return H.N
        _fail(sx, f"unknown finite type {sx.text!r}")
    match sx.head():
        case "->":
            args = sx.items[1:]
            if len(args) < 2:
                _fail(sx, "-> takes at least 2 arguments")
            return H.arrows(*(parse_type(a) for a in args))
        case "*":
            a, b = _form(sx, 2)
            return H.Prod(parse_type(a), parse_type(b))
    _fail(sx, f"unknown finite type form {sx}")


def print_type(t: H.FiniteType) -> str:
    match t:
        case H.Nat():
            return "N"
        case H.Arrow(a, b):
            return f"(-> {print_type(a)} {print_type(b)})"
        case H.Prod(a, b):
            return f"(* {print_type(a)} {print_type(b)})"
    raise TypeError(f"not a finite type: {t!r}")


# ------------------------------------------------------------------ terms

_TERM_WORDS = frozenset({"zero", "succ", "k", "s", "rec", "pair", "fst", "snd", "ap"})
_CONSTS = {"k": (H.K, 2), "s": (H.S, 3), "rec": (H.Rec, 1),
           "pair": (H.Pair, 2), "fst": (H.Fst, 2), "snd": (H.Snd, 2)}


def parse_term(sx: SExp, defs=None, bound=frozenset()) -> H.Term:
    defs = defs or {}
    if isinstance(sx, Atom):
        if _DIGITS.match(sx.text):
            return H.numeral(int(sx.text))
        if sx.text == "zero":
            return H.ZERO
        if sx.text == "succ":
            return H.SUCC
        name = _ident(sx, "term variable")
        if name in defs and name not in bound:
            return defs[name]
        return H.Var(name)
    head = sx.head()
    if head in _CONSTS:
        cls, n = _CONSTS[head]
        return cls(*(parse_type(a) for a in _form(sx, n)))
    if head == "ap":
        args = sx.items[1:]
        if len(args) < 2:
            _fail(sx, "ap takes at least 2 arguments")
        return H.ap(*(parse_term(a, defs, bound) for a in args))
    _fail(sx, f"unknown term form {sx}")


def print_term(t: H.Term) -> str:
    n = H.as_numeral(t)
    if n is not None:
        return str(n)
    match t:
        case H.Var(name):
            return name
        case H.Succ():
            return "succ"
        case H.K(a, b) | H.Pair(a, b) | H.Fst(a, b) | H.Snd(a, b):
            return f"({t!r} {print_type(a)} {print_type(b)})"
        case H.S(a, b, c):
            return f"(s {print_type(a)} {print_type(b)} {print_type(c)})"
        case H.Rec(a):
            return f"(rec {print_type(a)})"
        case H.Ap():
            args = []
            while isinstance(t, H.Ap) and H.as_numeral(t) is None:
                args.append(t.arg)
                t = t.fun
            return "(ap " + " ".join(print_term(x) for x in [t, *reversed(args)]) + ")"
    raise TypeError(f"not a term: {t!r}")


# --------------------------------------------------------------- formulas


def parse_formula(sx: SExp, defs=None, bound=frozenset()) -> L.Formula:
    if isinstance(sx, Atom):
        if sx.text == "false":
            return L.FALSE
        _fail(sx, f"expected a formula, found {sx.text!r}")
    match sx.head():
        case "=":
            ty, a, b = _form(sx, 3)
            return L.Eq(parse_type(ty), parse_term(a, defs, bound), parse_term(b, defs, bound))
        case "and" | "or" | "imp" | "iff":
            a, b = _form(sx, 2)
            fa, fb = parse_formula(a, defs, bound), parse_formula(b, defs, bound)
            if sx.head() == "iff":
                return L.Iff(fa, fb)
            return {"and": L.And, "or": L.Or, "imp": L.Imp}[sx.head()](fa, fb)
        case "not":
            (a,) = _form(sx, 1)
            return L.Not(parse_formula(a, defs, bound))
        case "forall" | "exists" | "exists!":
            binder, body = _form(sx, 2)
            xs, ts = _binder_pair(binder, "x type")
            x, ty = _ident(xs, "bound variable", _TERM_WORDS), parse_type(ts)
            phi = parse_formula(body, defs, bound | {x})
            if sx.head() == "forall":
                return L.Forall(x, ty, phi)
            if sx.head() == "exists":
                return L.Exists(x, ty, phi)
            return L.expand_exists_unique(x, ty, phi)
    _fail(sx, f"unknown formula form {sx}")


def print_formula(f: L.Formula, scope: frozenset = frozenset()) -> str:
    """Render ``f``; binders shadowing an enclosing binder get a primed name."""
    match f:
        case L.Falsum():
            return "false"
        case L.Eq(ty, a, b):
            return f"(= {print_type(ty)} {print_term(a)} {print_term(b)})"
        case L.Imp(a, L.Falsum()):
            return f"(not {print_formula(a, scope)})"
        case L.And(L.Imp(a, b), L.Imp(b2, a2)) if L.alpha_equal(a, a2) and L.alpha_equal(b, b2):
            return f"(iff {print_formula(a, scope)} {print_formula(b, scope)})"
        case L.And(a, b):
            m = L.match_exists_unique(f)
            if m is not None:
                y, ty, phi = m
                y, phi = _rename_apart(y, phi, scope)
                return f"(exists! ({y} {print_type(ty)}) {print_formula(phi, scope | {y})})"
            return f"(and {print_formula(a, scope)} {print_formula(b, scope)})"
        case L.Or(a, b):
            return f"(or {print_formula(a, scope)} {print_formula(b, scope)})"
        case L.Imp(a, b):
            return f"(imp {print_formula(a, scope)} {print_formula(b, scope)})"
        case L.Forall(x, ty, body) | L.Exists(x, ty, body):
            x, body = _rename_apart(x, body, scope)
            q = "forall" if isinstance(f, L.Forall) else "exists"
            return f"({q} ({x} {print_type(ty)}) {print_formula(body, scope | {x})})"
    raise TypeError(f"not a formula: {f!r}")


def _rename_apart(x: str, body: L.Formula, scope: frozenset) -> tuple[str, L.Formula]:
    if x not in scope:
        return x, body
    y = L.fresh(x, scope | L.free_vars(body))
    return y, L.subst(body, {x: H.Var(y)})


# ----------------------------------------------------------------- proofs

_PROOF_WORDS = frozenset({
    "use", "the", "and-i", "and-e1", "and-e2", "or-i1", "or-i2", "or-e", "imp-i", "imp-e",
    "forall-i", "forall-e", "exists-i", "exists-e", "false-e", "refl", "eq-subst", "axiom",
    "induction", "lem", "irc"})


def parse_proof(sx: SExp, defs=None, bound=frozenset()) -> L.Proof:
    if isinstance(sx, Atom):
        return L.Hyp(_ident(sx, "hypothesis label"))
    head = sx.head()
    p = lambda s, b=bound: parse_proof(s, defs, b)
    t = lambda s, b=bound: parse_term(s, defs, b)
    phi = lambda s, b=bound: parse_formula(s, defs, b)
    match head:
        case "use":
            (n,) = _form(sx, 1)
            return L.Use(_ident(n, "lemma name"))
        case "the":
            f, q = _form(sx, 2)
            return L.Ann(phi(f), p(q))
        case "and-i":
            a, b = _form(sx, 2)
            return L.AndI(p(a), p(b))
        case "and-e1" | "and-e2" | "or-i1" | "or-i2" | "false-e" | "irc":
            (a,) = _form(sx, 1)
            cls = {"and-e1": L.AndE1, "and-e2": L.AndE2, "or-i1": L.OrI1, "or-i2": L.OrI2,
                   "false-e": L.FalseE, "irc": L.Irc}[head]
            return cls(p(a))
        case "or-e":
            q, left, right = _form(sx, 3)
            l1, a = _binder_pair(left, "label proof")
            l2, b = _binder_pair(right, "label proof")
            return L.OrE(p(q), _ident(l1, "label"), p(a), _ident(l2, "label"), p(b))
        case "imp-i":
            h, body = _form(sx, 2)
            return L.ImpI(_ident(h, "label"), p(body))
        case "imp-e":
            args = sx.items[1:]
            if len(args) < 2:
                _fail(sx, "imp-e takes at least 2 arguments")
            out = p(args[0])
            for a in args[1:]:
                out = L.ImpE(out, p(a))
            return out
        case "forall-i":
            x, body = _form(sx, 2)
            xn = _ident(x, "eigenvariable", _TERM_WORDS)
            return L.ForallI(xn, p(body, bound | {xn}))
        case "forall-e":
            args = sx.items[1:]
            if len(args) < 2:
                _fail(sx, "forall-e takes at least 2 arguments")
            out = p(args[0])
            for a in args[1:]:
                out = L.ForallE(out, t(a))
            return out
        case "exists-i":
            w, q = _form(sx, 2)
            return L.ExistsI(t(w), p(q))
        case "exists-e":
            q, binder, body = _form(sx, 3)
            xs, hs = _binder_pair(binder, "variable label")
            x, h = _ident(xs, "eigenvariable", _TERM_WORDS), _ident(hs, "label")
            _distinct(binder, x, h)
            return L.ExistsE(p(q), x, h, p(body, bound | {x}))
        case "refl":
            (a,) = _form(sx, 1)
            return L.Refl(t(a))
        case "eq-subst":
            binder, motive, e, base = _form(sx, 4)
            zs, tys = _binder_pair(binder, "variable type")
            z = _ident(zs, "motive variable", _TERM_WORDS)
            return L.EqSubst(z, parse_type(tys), phi(motive, bound | {z}), p(e), p(base))
        case "axiom":
            return _parse_axiom(sx, defs, bound)
        case "induction":
            motive, base, stp = _form(sx, 3)
            xs, ms = _binder_pair(motive, "variable motive")
            x = _ident(xs, "induction variable", _TERM_WORDS)
            if not isinstance(stp, SList) or len(stp) != 3:
                _fail(stp, "expected (pred label step)")
            n, h = _ident(stp[0], "predecessor", _TERM_WORDS), _ident(stp[1], "label")
            _distinct(stp, n, h)
            return L.Induction(x, phi(ms, bound | {x}), p(base), n, h, p(stp[2], bound | {n}))
        case "lem":
            (f,) = _form(sx, 1)
            return L.Lem(phi(f))
    _fail(sx, f"unknown proof form {sx}")


def _parse_axiom(sx: SList, defs, bound) -> L.Proof:
    if len(sx) < 2:
        _fail(sx, "axiom needs a name")
    name = _ident(sx[1], "axiom name")
    if name not in L.AXIOM_SIGNATURES:
        _fail(sx[1], f"unknown axiom {name!r}")
    kinds = L.AXIOM_SIGNATURES[name]
    raw = sx.items[2:]
    if len(raw) != len(kinds):
        _fail(sx, f"axiom {name} takes {len(kinds)} arguments, found {len(raw)}")
    args = []
    scope = set(bound)
    for kind, a in zip(kinds, raw):
        if kind == "type":
            args.append(parse_type(a))
        elif kind == "var":
            v = _ident(a, "variable", _TERM_WORDS)
            scope.add(v)
            args.append(v)
        else:
            args.append(parse_formula(a, defs, frozenset(scope)))
    return L.Axiom(name, tuple(args))


def print_proof(p: L.Proof) -> str:
    pp, pt, pf = print_proof, print_term, print_formula
    match p:
        case L.Hyp(label):
            return label
        case L.Use(name):
            return f"(use {name})"
        case L.Ann(f, q):
            return f"(the {pf(f)} {pp(q)})"
        case L.AndI(a, b):
            return f"(and-i {pp(a)} {pp(b)})"
        case L.AndE1(a) | L.AndE2(a) | L.OrI1(a) | L.OrI2(a) | L.FalseE(a) | L.Irc(a):
            word = {L.AndE1: "and-e1", L.AndE2: "and-e2", L.OrI1: "or-i1", L.OrI2: "or-i2",
                    L.FalseE: "false-e", L.Irc: "irc"}[type(p)]
            return f"({word} {pp(a)})"
        case L.OrE(q, l1, a, l2, b):
            return f"(or-e {pp(q)} ({l1} {pp(a)}) ({l2} {pp(b)}))"
        case L.ImpI(h, body):
            return f"(imp-i {h} {pp(body)})"
        case L.ImpE(fn, arg):
            return f"(imp-e {pp(fn)} {pp(arg)})"
        case L.ForallI(x, body):
            return f"(forall-i {x} {pp(body)})"
        case L.ForallE(q, t):
            return f"(forall-e {pp(q)} {pt(t)})"
        case L.ExistsI(w, q):
            return f"(exists-i {pt(w)} {pp(q)})"
        case L.ExistsE(q, x, h, body):
            return f"(exists-e {pp(q)} ({x} {h}) {pp(body)})"
        case L.Refl(t):
            return f"(refl {pt(t)})"
        case L.EqSubst(z, ty, motive, e, base):
            return f"(eq-subst ({z} {print_type(ty)}) {pf(motive)} {pp(e)} {pp(base)})"
        case L.Axiom(name, args):
            kinds = L.AXIOM_SIGNATURES.get(name, ())
            parts = [name]
            for kind, a in zip(kinds, args):
                parts.append(print_type(a) if kind == "type" else a if kind == "var" else pf(a))
            return "(axiom " + " ".join(parts) + ")"
        case L.Induction(x, motive, base, n, h, st):
            return f"(induction ({x} {pf(motive)}) {pp(base)} ({n} {h} {pp(st)}))"
        case L.Lem(f):
            return f"(lem {pf(f)})"
    raise TypeError(f"not a proof: {p!r}")


# ------------------------------------------------------- dependent types

_DTT_ATOMS = {"Nat": D.NAT, "Empty": D.EMPTY, "Unit": D.UNIT, "PowUnit": D.POWUNIT,
              "Props": D.PROPS_COLL, "pfalse": D.FALSEP, "zero": D.ZERO, "true": D.TRUE}
_DTT_BINDERS = {"Pi": D.Pi, "Sigma": D.Sigma, "pforall": D.ForallP, "pexists": D.ExistsP,
                "Unique": D.Unique}
_DTT_BINARY = {"Sum": D.Sum, "por": D.OrP, "pimp": D.ImpP, "pand": D.AndP, "pair": D.Pair}
_DTT_UNARY = {"fst": D.Fst, "snd": D.Snd, "inl": D.Inl, "inr": D.Inr, "absurd": D.Absurd,
              "succ": D.Succ, "refl": D.Refl, "Trunc": D.Trunc, "trunc-intro": D.TruncIntro}
_DTT_WORDS = frozenset(_DTT_ATOMS) | frozenset(_DTT_BINDERS) | frozenset(_DTT_BINARY) | \
    frozenset(_DTT_UNARY) | {"->", "*", "Id", "peq", "lam", "app", "case", "natrec", "idpeel",
                             "exists-elim", "trunc-elim", "plam", "the", "_"}


def parse_dtt(sx: SExp, defs=None, bound=frozenset()) -> D.Expr:
    defs = defs or {}
    r = lambda s, b=bound: parse_dtt(s, defs, b)

    def var(s: SExp, allow_blank=False) -> str:
        if allow_blank and isinstance(s, Atom) and s.text == "_":
            return "_"
        return _ident(s, "bound variable", _DTT_WORDS)

    if isinstance(sx, Atom):
        if sx.text in _DTT_ATOMS:
            return _DTT_ATOMS[sx.text]
        if _DIGITS.match(sx.text):
            return D.numeral(int(sx.text))
        name = _ident(sx, "variable", _DTT_WORDS)
        if name in defs and name not in bound:
            return defs[name]
        return D.Var(name)
    head = sx.head()
    if not sx.items:
        _fail(sx, "empty expression")
    match head:
        case h if h in _DTT_BINDERS:
            binder, body = _form(sx, 2)
            xs, ts = _binder_pair(binder, "x type")
            x = var(xs, allow_blank=True)
            return _DTT_BINDERS[h](x, r(ts), r(body, bound | {x}))
        case "->" | "*":
            args = sx.items[1:]
            if len(args) < 2:
                _fail(sx, f"{head} takes at least 2 arguments")
            out = r(args[-1])
            for a in reversed(args[:-1]):
                out = (D.arrow if head == "->" else D.times)(r(a), out)
            return out
        case h if h in _DTT_BINARY:
            a, b = _form(sx, 2)
            return _DTT_BINARY[h](r(a), r(b))
        case h if h in _DTT_UNARY:
            (a,) = _form(sx, 1)
            return _DTT_UNARY[h](r(a))
        case "Id" | "peq":
            t, a, b = _form(sx, 3)
            return (D.Id if head == "Id" else D.EqP)(r(t), r(a), r(b))
        case "lam":
            binder, body = _form(sx, 2)
            if isinstance(binder, Atom):
                x, ann = var(binder, True), None
            else:
                xs, ts = _binder_pair(binder, "x type")
                x, ann = var(xs, True), r(ts)
            return D.Lam(x, ann, r(body, bound | {x}))
        case "plam":
            binder, body = _form(sx, 2)
            xs, ts = _binder_pair(binder, "x type")
            x = var(xs, True)
            return D.PLam(x, r(ts), r(body, bound | {x}))
        case "the":
            t, e = _form(sx, 2)
            return D.The(r(t), r(e))
        case "app":
            args = sx.items[1:]
            if len(args) < 2:
                _fail(sx, "app takes at least 2 arguments")
            return D.apps(*(r(a) for a in args))
        case "case":
            s, left, right = _form(sx, 3)
            xs, l = _binder_pair(left, "x branch")
            ys, rr = _binder_pair(right, "y branch")
            x, y = var(xs, True), var(ys, True)
            return D.Case(r(s), x, r(l, bound | {x}), y, r(rr, bound | {y}))
        case "natrec":
            motive, z, stp, t = _form(sx, 4)
            xs, c = _binder_pair(motive, "x motive")
            x = var(xs, True)
            if not isinstance(stp, SList) or len(stp) != 3:
                _fail(stp, "expected (n ih step)")
            n, ih = var(stp[0], True), var(stp[1], True)
            if "_" not in (n, ih):
                _distinct(stp, n, ih)
            return D.NatRec(x, r(c, bound | {x}), r(z), n, ih, r(stp[2], bound | {n, ih}), r(t))
        case "idpeel":
            e, motive, d = _form(sx, 3)
            xs, c = _binder_pair(motive, "x motive")
            x = var(xs, True)
            return D.IdPeel(r(e), x, r(c, bound | {x}), r(d))
        case "exists-elim":
            s, binder, body = _form(sx, 3)
            xs, hs = _binder_pair(binder, "x h")
            x, h = var(xs, True), var(hs, True)
            if "_" not in (x, h):
                _distinct(binder, x, h)
            return D.ExistsElim(r(s), x, h, r(body, bound | {x, h}))
        case "trunc-elim":
            s, binder = _form(sx, 2)
            xs, body = _binder_pair(binder, "x body")
            x = var(xs, True)
            return D.TruncElim(r(s), x, r(body, bound | {x}))
    if len(sx) < 2:
        _fail(sx, f"unknown expression form {sx}")
    return D.apps(*(r(a) for a in sx.items))


def print_dtt(e: D.Expr) -> str:
    p = print_dtt
    match e:
        case D.Var(name):
            return name
        case D.Nat():
            return "Nat"
        case D.Empty():
            return "Empty"
        case D.Unit():
            return "Unit"
        case D.PowUnit():
            return "PowUnit"
        case D.Props():
            return "Props"
        case D.FalseP():
            return "pfalse"
        case D.Zero():
            return "0"
        case D.TrueC():
            return "true"
        case D.Succ():
            n, t = 0, e
            while isinstance(t, D.Succ):
                n, t = n + 1, t.pred
            if isinstance(t, D.Zero):
                return str(n)
            return f"(succ {p(e.pred)})"
        case D.Pi(x, a, b) | D.Sigma(x, a, b) if x == "_" or x not in D.free_vars(b):
            return f"({'->' if isinstance(e, D.Pi) else '*'} {p(a)} {p(b)})"
    for word, cls in _DTT_BINDERS.items():
        if type(e) is cls:
            return f"({word} ({e.x} {p(e.dom)}) {p(e.cod)})"
    for table in (_DTT_BINARY,):
        for word, cls in table.items():
            if type(e) is cls:
                return f"({word} {p(e.left)} {p(e.right)})"
    for word, cls in _DTT_UNARY.items():
        if type(e) is cls:
            (only,) = [getattr(e, f) for f in e.__dataclass_fields__]
            return f"({word} {p(only)})"
    match e:
        case D.Id(t, a, b):
            return f"(Id {p(t)} {p(a)} {p(b)})"
        case D.EqP(t, a, b):
            return f"(peq {p(t)} {p(a)} {p(b)})"
        case D.Lam(x, None, body):
            return f"(lam {x} {p(body)})"
        case D.Lam(x, ann, body):
            return f"(lam ({x} {p(ann)}) {p(body)})"
        case D.PLam(x, dom, body):
            return f"(plam ({x} {p(dom)}) {p(body)})"
        case D.The(t, v):
            return f"(the {p(t)} {p(v)})"
        case D.App():
            head, args = D._spine(e)
            parts = [p(head), *(p(a) for a in args)]
            if isinstance(head, D.Var) and head.name not in _DTT_WORDS:
                return "(" + " ".join(parts) + ")"
            return "(app " + " ".join(parts) + ")"
        case D.Case(s, x, l, y, r):
            return f"(case {p(s)} ({x} {p(l)}) ({y} {p(r)}))"
        case D.NatRec(x, c, z, n, ih, st, t):
            return f"(natrec ({x} {p(c)}) {p(z)} ({n} {ih} {p(st)}) {p(t)})"
        case D.IdPeel(q, x, c, d):
            return f"(idpeel {p(q)} ({x} {p(c)}) {p(d)})"
        case D.ExistsElim(s, x, h, body):
            return f"(exists-elim {p(s)} ({x} {h}) {p(body)})"
        case D.TruncElim(s, x, body):
            return f"(trunc-elim {p(s)} ({x} {p(body)}))"
    raise TypeError(f"not a dtt expression: {e!r}")


# ------------------------------------------------------------------- ACA

_ACA_WORDS = frozenset({"S", "+", "*", "false", "in", "N", "set"})


def parse_aterm(sx: SExp, defs=None, bound=frozenset()) -> A.ATerm:
    if isinstance(sx, Atom):
        if _DIGITS.match(sx.text):
            return A.anumeral(int(sx.text))
        return A.AVar(_ident(sx, "number variable", _ACA_WORDS))
    match sx.head():
        case "S":
            (a,) = _form(sx, 1)
            return A.ASucc(parse_aterm(a))
        case "+" | "*":
            a, b = _form(sx, 2)
            return (A.AAdd if sx.head() == "+" else A.AMul)(parse_aterm(a), parse_aterm(b))
    _fail(sx, f"unknown arithmetic term {sx}")


def parse_aca(sx: SExp, defs=None, bound=frozenset()) -> A.AcaFormula:
    if isinstance(sx, Atom):
        if sx.text == "false":
            return A.AFALSE
        _fail(sx, f"expected an ACA formula, found {sx.text!r}")
    match sx.head():
        case "=":
            a, b = _form(sx, 2)
            return A.AEq(parse_aterm(a), parse_aterm(b))
        case "in":
            t, s = _form(sx, 2)
            return A.AMem(parse_aterm(t), _ident(s, "set variable", _ACA_WORDS))
        case "and" | "or" | "imp" | "iff":
            a, b = _form(sx, 2)
            fa, fb = parse_aca(a), parse_aca(b)
            return {"and": A.AAnd, "or": A.AOr, "imp": A.AImp, "iff": A.AIff}[sx.head()](fa, fb)
        case "not":
            (a,) = _form(sx, 1)
            return A.ANot(parse_aca(a))
        case "forall" | "exists":
            binder, body = _form(sx, 2)
            xs, ss = _binder_pair(binder, "x N or X set")
            x = _ident(xs, "bound variable", _ACA_WORDS)
            sort = ss.text if isinstance(ss, Atom) else None
            if sort not in ("N", "set"):
                _fail(ss, "quantifier sort must be N or set")
            cls = {("forall", "N"): A.AForallN, ("exists", "N"): A.AExistsN,
                   ("forall", "set"): A.AForallS, ("exists", "set"): A.AExistsS}[sx.head(), sort]
            return cls(x, parse_aca(body))
    _fail(sx, f"unknown ACA formula form {sx}")


def print_aterm(t: A.ATerm) -> str:
    n, u = 0, t
    while isinstance(u, A.ASucc):
        n, u = n + 1, u.pred
    if isinstance(u, A.AZero):
        return str(n)
    match t:
        case A.AVar(name):
            return name
        case A.ASucc(a):
            return f"(S {print_aterm(a)})"
        case A.AAdd(a, b):
            return f"(+ {print_aterm(a)} {print_aterm(b)})"
        case A.AMul(a, b):
            return f"(* {print_aterm(a)} {print_aterm(b)})"
    raise TypeError(f"not an arithmetic term: {t!r}")


def print_aca(f: A.AcaFormula) -> str:
    p = print_aca
    match f:
        case A.AFalse():
            return "false"
        case A.AEq(a, b):
            return f"(= {print_aterm(a)} {print_aterm(b)})"
        case A.AMem(t, s):
            return f"(in {print_aterm(t)} {s})"
        case A.AImp(a, A.AFalse()):
            return f"(not {p(a)})"
        case A.AAnd(A.AImp(a, b), A.AImp(b2, a2)) if a == a2 and b == b2:
            return f"(iff {p(a)} {p(b)})"
        case A.AAnd(a, b) | A.AOr(a, b) | A.AImp(a, b):
            word = {A.AAnd: "and", A.AOr: "or", A.AImp: "imp"}[type(f)]
            return f"({word} {p(a)} {p(b)})"
        case A.AForallN(x, b) | A.AExistsN(x, b) | A.AForallS(x, b) | A.AExistsS(x, b):
            q = "forall" if isinstance(f, (A.AForallN, A.AForallS)) else "exists"
            sort = "N" if isinstance(f, (A.AForallN, A.AExistsN)) else "set"
            return f"({q} ({x} {sort}) {p(b)})"
    raise TypeError(f"not an ACA formula: {f!r}")


# ----------------------------------------------------------- first order

_FOL_WORDS = frozenset({"omega", "funset", "prodset", "app", "const", "in", "false"})


def parse_fol_term(sx: SExp) -> F.FolTerm:
    if isinstance(sx, Atom):
        if sx.text == "omega":
            return F.OMEGA
        return F.FolVar(_ident(sx, "variable", _FOL_WORDS))
    match sx.head():
        case "funset" | "prodset":
            a, b = _form(sx, 2)
            return (F.FunSet if sx.head() == "funset" else F.ProdSet)(parse_fol_term(a), parse_fol_term(b))
        case "app":
            a, b = _form(sx, 2)
            return F.FolApp(parse_fol_term(a), parse_fol_term(b))
        case "const":
            if len(sx) < 2:
                _fail(sx, "const needs a name")
            return F.FolConst(_ident(sx[1], "constant"), tuple(parse_fol_term(a) for a in sx.items[2:]))
    _fail(sx, f"unknown first-order term {sx}")


def parse_fol(sx: SExp, defs=None, bound=frozenset()) -> F.FolFormula:
    if isinstance(sx, Atom):
        if sx.text == "false":
            return F.FOL_FALSE
        _fail(sx, f"expected a first-order formula, found {sx.text!r}")
    match sx.head():
        case "=" | "in":
            a, b = _form(sx, 2)
            return (F.FolEq if sx.head() == "=" else F.FolMem)(parse_fol_term(a), parse_fol_term(b))
        case "and" | "or" | "imp":
            a, b = _form(sx, 2)
            return {"and": F.FolAnd, "or": F.FolOr, "imp": F.FolImp}[sx.head()](parse_fol(a), parse_fol(b))
        case "forall" | "exists":
            x, body = _form(sx, 2)
            cls = F.FolForall if sx.head() == "forall" else F.FolExists
            return cls(_ident(x, "bound variable", _FOL_WORDS), parse_fol(body))
    _fail(sx, f"unknown first-order form {sx}")


def print_fol_term(t: F.FolTerm) -> str:
    match t:
        case F.FolVar(n):
            return n
        case F.Omega():
            return "omega"
        case F.FunSet(a, b):
            return f"(funset {print_fol_term(a)} {print_fol_term(b)})"
        case F.ProdSet(a, b):
            return f"(prodset {print_fol_term(a)} {print_fol_term(b)})"
        case F.FolApp(a, b):
            return f"(app {print_fol_term(a)} {print_fol_term(b)})"
        case F.FolConst(n, sets):
            return "(const " + " ".join([n, *(print_fol_term(s) for s in sets)]) + ")"
    raise TypeError(f"not a first-order term: {t!r}")


def print_fol(f: F.FolFormula) -> str:
    match f:
        case F.FolFalse():
            return "false"
        case F.FolEq(a, b):
            return f"(= {print_fol_term(a)} {print_fol_term(b)})"
        case F.FolMem(a, b):
            return f"(in {print_fol_term(a)} {print_fol_term(b)})"
        case F.FolAnd(a, b) | F.FolOr(a, b) | F.FolImp(a, b):
            word = {F.FolAnd: "and", F.FolOr: "or", F.FolImp: "imp"}[type(f)]
            return f"({word} {print_fol(a)} {print_fol(b)})"
        case F.FolForall(x, b) | F.FolExists(x, b):
            q = "forall" if isinstance(f, F.FolForall) else "exists"
            return f"({q} {x} {print_fol(b)})"
    raise TypeError(f"not a first-order formula: {f!r}")


# ------------------------------------------------------------ theory files

_DTT_MODES = {m.value: m for m in D.SortMode}
_SORTS = {s.value: s for s in D.Sort}


def language_of(path: str) -> str:
    ext = Path(path).suffix.lstrip(".")
    return ext if ext in ("hao", "dtt", "aca", "fol") else "hao"


def parse_declarations(text: str, file: str = "<input>", lang: str | None = None) -> list[Decl]:
    """Parse a whole theory file; a malformed declaration becomes an error record."""
    lang = lang or language_of(file)
    forms = _guarded(lambda: read_all(text, file), SourceSpan(file, 0, len(text)))
    parser = {"hao": _HaoDecls, "dtt": _DttDecls, "aca": _AcaDecls, "fol": _FolDecls}[lang]()
    out = []
    for i, sx in enumerate(forms):
        try:
            out.append(_guarded(lambda: parser.decl(sx, i), sx.span))
        except ParseError as e:
            kind = sx.head() if isinstance(sx, SList) and sx.head() else "error"
            name = sx[1].text if isinstance(sx, SList) and len(sx) > 1 and isinstance(sx[1], Atom) else None
            out.append(Decl(kind, name or f"{kind}-{i}", (), sx.span, e))
    return out


def _guarded(fn, span: SourceSpan):
    try:
        return fn()
    except RecursionError:
        raise ParseError("expression nested too deeply", span) from None


class _HaoDecls:
    def __init__(self):
        self.defs: dict[str, H.Term] = {}

    def decl(self, sx: SExp, i: int) -> Decl:
        if not isinstance(sx, SList) or sx.head() is None:
            _fail(sx, "expected a declaration")
        match sx.head():
            case "profile":
                try:
                    prof = L.AxiomProfile.from_names(_ident(a, "profile flag") for a in sx.items[1:])
                except ValueError as e:
                    _fail(sx, str(e))
                return Decl("profile", f"profile-{i}", (prof,), sx.span)
            case "define":
                n, t = _form(sx, 2)
                name = _ident(n, "definition name", _TERM_WORDS)
                term = parse_term(t, self.defs)
                self.defs[name] = term
                return Decl("define", name, (term,), sx.span)
            case "lemma":
                n, f, p = _form(sx, 3)
                return Decl("lemma", _ident(n, "lemma name"),
                            (parse_formula(f, self.defs), parse_proof(p, self.defs)), sx.span)
            case "formula":
                n, f = _form(sx, 2)
                return Decl("formula", _ident(n, "formula name"), (parse_formula(f, self.defs),), sx.span)
        _fail(sx, f"unknown declaration {sx.head()!r}")


class _DttDecls:
    def __init__(self):
        self.defs: dict[str, D.Expr] = {}

    def decl(self, sx: SExp, i: int) -> Decl:
        if not isinstance(sx, SList) or sx.head() is None:
            _fail(sx, "expected a declaration")
        args = sx.items[1:]
        r = lambda s: parse_dtt(s, self.defs)
        match sx.head():
            case "mode":
                (m,) = _form(sx, 1)
                if not isinstance(m, Atom) or m.text not in _DTT_MODES:
                    _fail(m, "mode must be mltt, mtt or emtt")
                return Decl("mode", f"mode-{i}", (_DTT_MODES[m.text],), sx.span)
            case "family":
                n, params, s = _form(sx, 3)
                if not isinstance(params, SList):
                    _fail(params, "expected a parameter list")
                if not isinstance(s, Atom) or s.text not in _SORTS:
                    _fail(s, "expected a sort: props, prop, set or coll")
                fam = D.Family(tuple(r(p) for p in params.items), _SORTS[s.text])
                return Decl("family", _ident(n, "family name", _DTT_WORDS), (fam,), sx.span)
            case "var":
                n, t = _form(sx, 2)
                return Decl("var", _ident(n, "variable", _DTT_WORDS), (r(t),), sx.span)
            case "define":
                n, e = _form(sx, 2)
                name = _ident(n, "definition name", _DTT_WORDS)
                val = r(e)
                self.defs[name] = val
                return Decl("define", name, (val,), sx.span)
            case "check":
                _form(sx, 2, 3)
                name = _ident(args[0], "goal name") if len(args) == 3 else f"check-{i}"
                e, t = args[-2:]
                return Decl("check", name, (r(e), r(t)), sx.span)
            case "reject":
                _form(sx, 3, 4)
                name = _ident(args[0], "goal name")
                needle = None
                if len(args) == 4:
                    if not (isinstance(args[3], Atom) and args[3].text.startswith('"')):
                        _fail(args[3], "expected a quoted diagnostic substring")
                    needle = args[3].text.strip('"')
                return Decl("reject", name, (r(args[1]), r(args[2]), needle), sx.span)
            case "classify":
                _form(sx, 1, 2, 3)
                want = None
                rest = list(args)
                if len(rest) >= 2 and isinstance(rest[-1], Atom) and rest[-1].text in _SORTS:
                    want = _SORTS[rest.pop().text]
                if len(rest) == 2:
                    name = _ident(rest[0], "goal name")
                elif len(rest) == 1:
                    name = f"classify-{i}"
                else:
                    _fail(sx, "classify takes [name] type [sort]")
                return Decl("classify", name, (r(rest[-1]), want), sx.span)
        _fail(sx, f"unknown declaration {sx.head()!r}")


class _AcaDecls:
    def decl(self, sx: SExp, i: int) -> Decl:
        if not isinstance(sx, SList) or sx.head() is None:
            _fail(sx, "expected a declaration")
        match sx.head():
            case "formula":
                n, f = _form(sx, 2)
                return Decl("formula", _ident(n, "formula name"), (parse_aca(f),), sx.span)
            case "comprehension" | "induction":
                n, x, f = _form(sx, 3)
                xv = _ident(x, "number variable", _ACA_WORDS)
                phi = parse_aca(f)
                if sx.head() == "comprehension":
                    if not A.is_arithmetical(phi):
                        _fail(f, "comprehension formula must be arithmetical")
                    inst = A.comprehension_instance(xv, phi)
                else:
                    inst = A.induction_instance(xv, phi)
                return Decl(sx.head(), _ident(n, "name"), (xv, phi, inst), sx.span)
        _fail(sx, f"unknown declaration {sx.head()!r}")


class _FolDecls:
    def decl(self, sx: SExp, i: int) -> Decl:
        if not isinstance(sx, SList) or sx.head() != "formula":
            _fail(sx, "expected (formula name phi)")
        n, f = _form(sx, 2)
        return Decl("formula", _ident(n, "formula name"), (parse_fol(f),), sx.span)


def print_decl(d: Decl, lang: str) -> str:
    match lang, d.kind:
        case "hao", "profile":
            return "(profile " + " ".join(d.args[0].names()) + ")" if d.args[0].names() else "(profile)"
        case "hao", "define":
            return f"(define {d.name} {print_term(d.args[0])})"
        case "hao", "lemma":
            return f"(lemma {d.name} {print_formula(d.args[0])} {print_proof(d.args[1])})"
        case "hao", "formula":
            return f"(formula {d.name} {print_formula(d.args[0])})"
        case "dtt", "mode":
            return f"(mode {d.args[0].value})"
        case "dtt", "family":
            fam = d.args[0]
            return f"(family {d.name} ({' '.join(print_dtt(p) for p in fam.params)}) {fam.sort.value})"
        case "dtt", "var":
            return f"(var {d.name} {print_dtt(d.args[0])})"
        case "dtt", "define":
            return f"(define {d.name} {print_dtt(d.args[0])})"
        case "dtt", "check":
            return f"(check {d.name} {print_dtt(d.args[0])} {print_dtt(d.args[1])})"
        case "dtt", "reject":
            tail = f' "{d.args[2]}"' if d.args[2] else ""
            return f"(reject {d.name} {print_dtt(d.args[0])} {print_dtt(d.args[1])}{tail})"
        case "dtt", "classify":
            tail = f" {d.args[1].value}" if d.args[1] else ""
            return f"(classify {d.name} {print_dtt(d.args[0])}{tail})"
        case "aca", "formula":
            return f"(formula {d.name} {print_aca(d.args[0])})"
        case "aca", "comprehension" | "induction":
            return f"({d.kind} {d.name} {d.args[0]} {print_aca(d.args[1])})"
        case "fol", "formula":
            return f"(formula {d.name} {print_fol(d.args[0])})"
    raise ValueError(f"cannot print {d.kind} declaration in {lang}")


# ------------------------------------------------------------ entry points

_PARSERS = {"type": lambda sx: parse_type(sx), "term": parse_term, "formula": parse_formula,
            "proof": parse_proof, "dtt": parse_dtt, "aca": parse_aca, "fol": parse_fol}

_PRINTERS = {"type": print_type, "term": print_term, "formula": print_formula,
             "proof": print_proof, "dtt": print_dtt, "aca": print_aca, "fol": print_fol}


def parse(text: str, category: str, file: str = "<input>", lang: str | None = None) -> SurfaceNode:
    """Parse ``text`` as ``category``; raises ParseError carrying a span."""
    if category not in CATEGORIES:
        raise ValueError(f"unknown syntactic category {category!r}")
    whole = SourceSpan(file, 0, len(text.encode("utf-8", "replace")))
    if category == "theory-file":
        decls = parse_declarations(text, file, lang)
        return SurfaceNode(category, (lang or language_of(file), tuple(decls)), whole)
    sx = _guarded(lambda: read_one(text, file), whole)
    payload = _guarded(lambda: _PARSERS[category](sx), sx.span)
    return SurfaceNode(category, payload, sx.span, sx)


def print_node(node: SurfaceNode) -> str:
    if node.kind == "theory-file":
        lang, decls = node.payload
        return "".join(print_decl(d, lang) + "\n" for d in decls if d.error is None)
    return _PRINTERS[node.kind](node.payload)


def alpha_equivalent(kind: str, a, b) -> bool:
    match kind:
        case "formula":
            return L.alpha_equal(a, b)
        case "dtt":
            return D.alpha_eq(a, b)
        case "fol":
            return F.alpha_equal(a, b)
    return a == b
