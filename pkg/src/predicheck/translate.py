"""Translations out of finite-type arithmetic and two-sorted arithmetic.

* ``to_mltt``   propositions-as-types into the dependent kernel
* ``to_trunc``  the same, with existentials and disjunctions truncated
* ``to_fol``    untyped first-order syntax, sorts read as set terms
* ``to_emtt``   number variables to ``Nat``, set variables to propositional functions
* ``transport_proof_mltt``  natural-deduction proofs to dependent terms
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from . import aca as A
from . import dtt as D
from . import fol as F
from . import hao as H
from . import logic as L
from .dtt import App, Lam, Var


class TranslationError(Exception):
    pass


# ------------------------------------------------------------------ to_mltt


def type_to_mltt(t: H.FiniteType) -> D.Expr:
    match t:
        case H.Nat():
            return D.NAT
        case H.Arrow(a, b):
            return D.arrow(type_to_mltt(a), type_to_mltt(b))
        case H.Prod(a, b):
            return D.times(type_to_mltt(a), type_to_mltt(b))
    raise TranslationError(f"not a finite type: {t!r}")


def _rec_step(f: D.Expr) -> D.Expr:
    return App(App(f, Var("m")), Var("ih"))


def term_to_mltt(t: H.Term) -> D.Expr:
    T = type_to_mltt
    match t:
        case H.Var(name):
            return Var(name)
        case H.Zero():
            return D.ZERO
        case H.Succ():
            return Lam("n", D.NAT, D.Succ(Var("n")))
        case H.K(s, r):
            return Lam("x", T(s), Lam("y", T(r), Var("x")))
        case H.S(s, r, u):
            x, y, z = Var("x"), Var("y"), Var("z")
            return Lam("x", T(H.arrows(s, r, u)), Lam("y", T(H.Arrow(s, r)), Lam("z", T(s),
                       App(App(x, z), App(y, z)))))
        case H.Rec(s):
            step = D.NatRec("_", T(s), Var("a"), "m", "ih", _rec_step(Var("f")), Var("n"))
            return Lam("a", T(s), Lam("f", T(H.arrows(H.N, s, s)), Lam("n", D.NAT, step)))
        case H.Pair(s, r):
            return Lam("x", T(s), Lam("y", T(r), D.Pair(Var("x"), Var("y"))))
        case H.Fst(s, r):
            return Lam("p", T(H.Prod(s, r)), D.Fst(Var("p")))
        case H.Snd(s, r):
            return Lam("p", T(H.Prod(s, r)), D.Snd(Var("p")))
        case H.Ap(H.Succ(), a):
            return D.Succ(term_to_mltt(a))
        case H.Ap(f, a):
            return App(term_to_mltt(f), term_to_mltt(a))
    raise TranslationError(f"not a term: {t!r}")


def formula_to_mltt(f: L.Formula, *, truncate: bool = False) -> D.Expr:
    r = lambda g: formula_to_mltt(g, truncate=truncate)
    match f:
        case L.Falsum():
            return D.EMPTY
        case L.Eq(ty, a, b):
            return D.Id(type_to_mltt(ty), term_to_mltt(a), term_to_mltt(b))
        case L.And(a, b):
            return D.times(r(a), r(b))
        case L.Or(a, b):
            s = D.Sum(r(a), r(b))
            return D.Trunc(s) if truncate else s
        case L.Imp(a, b):
            return D.arrow(r(a), r(b))
        case L.Forall(x, ty, body):
            return D.Pi(x, type_to_mltt(ty), r(body))
        case L.Exists(x, ty, body):
            s = D.Sigma(x, type_to_mltt(ty), r(body))
            return D.Trunc(s) if truncate else s
    raise TranslationError(f"not a formula: {f!r}")


def to_mltt(x) -> D.Expr:
    if isinstance(x, H.FiniteType):
        return type_to_mltt(x)
    if isinstance(x, H.Term):
        return term_to_mltt(x)
    if isinstance(x, L.Formula):
        return formula_to_mltt(x)
    raise TranslationError(f"cannot translate {type(x).__name__}")


def to_trunc(f: L.Formula) -> D.Expr:
    """Existentials and disjunctions become truncations; equations stay as identity types."""
    return formula_to_mltt(f, truncate=True)


def context_to_mltt(ctx: Mapping[str, H.FiniteType]) -> dict[str, D.Expr]:
    return {x: type_to_mltt(t) for x, t in ctx.items()}


# ------------------------------------------------------------------- to_fol


def type_to_fol(t: H.FiniteType) -> F.FolTerm:
    match t:
        case H.Nat():
            return F.OMEGA
        case H.Arrow(a, b):
            return F.FunSet(type_to_fol(a), type_to_fol(b))
        case H.Prod(a, b):
            return F.ProdSet(type_to_fol(a), type_to_fol(b))
    raise TranslationError(f"not a finite type: {t!r}")


_CONST_NAMES = {H.K: "k", H.S: "s", H.Rec: "rec", H.Pair: "pair", H.Fst: "fst", H.Snd: "snd"}


def term_to_fol(t: H.Term) -> F.FolTerm:
    match t:
        case H.Var(name):
            return F.FolVar(name)
        case H.Zero():
            return F.FolConst("zero")
        case H.Succ():
            return F.FolConst("succ")
        case H.Ap(f, a):
            return F.FolApp(term_to_fol(f), term_to_fol(a))
    sets = tuple(type_to_fol(getattr(t, fld)) for fld in t.__dataclass_fields__)
    return F.FolConst(_CONST_NAMES[type(t)], sets)


def formula_to_fol(f: L.Formula) -> F.FolFormula:
    match f:
        case L.Falsum():
            return F.FOL_FALSE
        case L.Eq(_, a, b):
            return F.FolEq(term_to_fol(a), term_to_fol(b))
        case L.And(a, b):
            return F.FolAnd(formula_to_fol(a), formula_to_fol(b))
        case L.Or(a, b):
            return F.FolOr(formula_to_fol(a), formula_to_fol(b))
        case L.Imp(a, b):
            return F.FolImp(formula_to_fol(a), formula_to_fol(b))
        case L.Forall(x, ty, body):
            mem = F.FolMem(F.FolVar(x), type_to_fol(ty))
            return F.FolForall(x, F.FolImp(mem, formula_to_fol(body)))
        case L.Exists(x, ty, body):
            mem = F.FolMem(F.FolVar(x), type_to_fol(ty))
            return F.FolExists(x, F.FolAnd(mem, formula_to_fol(body)))
    raise TranslationError(f"not a formula: {f!r}")


def to_fol(x):
    if isinstance(x, H.FiniteType):
        return type_to_fol(x)
    if isinstance(x, H.Term):
        return term_to_fol(x)
    if isinstance(x, L.Formula):
        return formula_to_fol(x)
    raise TranslationError(f"proofs and {type(x).__name__} values are not translatable to fol")


# ------------------------------------------------------------------ to_emtt

_NAT2 = D.arrow(D.NAT, D.arrow(D.NAT, D.NAT))

# addition and multiplication by recursion on the second argument
ADD = Lam("m", D.NAT, Lam("n", D.NAT,
          D.NatRec("_", D.NAT, Var("m"), "k", "ih", D.Succ(Var("ih")), Var("n"))))
MUL = Lam("m", D.NAT, Lam("n", D.NAT,
          D.NatRec("_", D.NAT, D.ZERO, "k", "ih", App(App(ADD, Var("ih")), Var("m")), Var("n"))))


def aterm_to_emtt(t: A.ATerm) -> D.Expr:
    match t:
        case A.AVar(name):
            return Var(name)
        case A.AZero():
            return D.ZERO
        case A.ASucc(a):
            return D.Succ(aterm_to_emtt(a))
        case A.AAdd(a, b):
            return D.apps(ADD, aterm_to_emtt(a), aterm_to_emtt(b))
        case A.AMul(a, b):
            return D.apps(MUL, aterm_to_emtt(a), aterm_to_emtt(b))
    raise TranslationError(f"not an arithmetic term: {t!r}")


def subset_collection(mode: D.SortMode = D.EMTT) -> D.Expr:
    """Where set variables live: ``Nat -> PowUnit`` extensionally, ``Nat -> Props`` intensionally."""
    return D.arrow(D.NAT, D.POWUNIT if mode is D.EMTT else D.PROPS_COLL)


def aca_to_emtt(f: A.AcaFormula, mode: D.SortMode = D.EMTT) -> D.Expr:
    r = lambda g: aca_to_emtt(g, mode)
    match f:
        case A.AFalse():
            return D.FALSEP
        case A.AEq(a, b):
            return D.EqP(D.NAT, aterm_to_emtt(a), aterm_to_emtt(b))
        case A.AMem(t, s):
            return App(Var(s), aterm_to_emtt(t))
        case A.AAnd(a, b):
            return D.AndP(r(a), r(b))
        case A.AOr(a, b):
            return D.OrP(r(a), r(b))
        case A.AImp(a, b):
            return D.ImpP(r(a), r(b))
        case A.AForallN(x, b):
            return D.ForallP(x, D.NAT, r(b))
        case A.AExistsN(x, b):
            return D.ExistsP(x, D.NAT, r(b))
        case A.AForallS(x, b):
            return D.ForallP(x, subset_collection(mode), r(b))
        case A.AExistsS(x, b):
            return D.ExistsP(x, subset_collection(mode), r(b))
    raise TranslationError(f"not an ACA formula: {f!r}")


def aca_context(f: A.AcaFormula, mode: D.SortMode = D.EMTT) -> dict[str, D.Expr]:
    nums, sets = A.free_vars(f)
    ctx = {x: D.NAT for x in sorted(nums)}
    ctx.update({x: subset_collection(mode) for x in sorted(sets)})
    return ctx


@dataclass(frozen=True)
class EmttResult:
    expr: D.Expr
    sort: D.Sort
    ctx: dict


def to_emtt(f: A.AcaFormula) -> EmttResult:
    """Translate and classify; a classification failure means the translation is wrong."""
    ctx = aca_context(f)
    e = aca_to_emtt(f)
    try:
        s = D.classify(D.EMTT, ctx, e)
    except D.TypeCheckError as err:
        raise TranslationError(f"translation is not sort-correct: {err}") from None
    return EmttResult(e, s, ctx)


def arithmetic_lemmas() -> list[tuple[str, D.Expr]]:
    """Defining equations of the translated addition and multiplication."""
    m, n = Var("m"), Var("n")
    add = lambda a, b: D.apps(ADD, a, b)
    mul = lambda a, b: D.apps(MUL, a, b)
    eq = lambda a, b: D.EqP(D.NAT, a, b)
    both = lambda body: D.ForallP("m", D.NAT, D.ForallP("n", D.NAT, body))
    return [
        ("add-zero", D.ForallP("m", D.NAT, eq(add(m, D.ZERO), m))),
        ("add-succ", both(eq(add(m, D.Succ(n)), D.Succ(add(m, n))))),
        ("mul-zero", D.ForallP("m", D.NAT, eq(mul(m, D.ZERO), D.ZERO))),
        ("mul-succ", both(eq(mul(m, D.Succ(n)), add(mul(m, n), m)))),
    ]


def comprehension_witness(x: str, phi: A.AcaFormula) -> D.Expr:
    return D.PLam(x, D.NAT, aca_to_emtt(phi))


def comprehension_validity(x: str, phi: A.AcaFormula) -> D.Expr:
    """``forall x (W x <-> phi)`` with the witness substituted for the set variable."""
    w = comprehension_witness(x, phi)
    body = aca_to_emtt(phi)
    wx = App(w, Var(x))
    return D.ForallP(x, D.NAT, D.AndP(D.ImpP(wx, body), D.ImpP(body, wx)))


def induction_proof(x: str, phi: A.AcaFormula) -> D.Expr:
    """Inhabitant of the translated induction instance by recursion at a propositional motive."""
    motive = aca_to_emtt(phi, D.MTT)
    h, v = Var("h"), "v"
    step = D.apps(D.Snd(h), Var("k"), Var("ih"))
    rec = D.NatRec(x, motive, D.Fst(h), "k", "ih", step, Var(v))
    return Lam("h", None, Lam(v, None, rec))


# ------------------------------------------------------------ proof transport

# Without universes there is no large elimination, so the Peano axiom
# succ x != 0 has no closed inhabitant; it is assumed as a constant.
POSTULATES = {"ax.succ-ne-zero": L.axiom_formula("succ-ne-zero")}


def mltt_postulates() -> dict[str, D.Expr]:
    return {name: formula_to_mltt(f) for name, f in POSTULATES.items()}


def _hyp(label: str) -> Var:
    return Var(f"h.{label}")


def _choice_term(premise: D.Expr, unique: bool) -> D.Expr:
    """``(lam x. fst(h x), lam x. snd(h x))`` with one extra projection for unique existence."""
    hx = App(premise, Var("x"))
    core = D.Fst(hx) if unique else hx
    return D.Pair(Lam("x", None, D.Fst(core)), Lam("x", None, D.Snd(core)))


_PRED = lambda t: D.NatRec("_", D.NAT, D.ZERO, "k", "ih", Var("k"), t)


def _axiom_term(name: str, args: tuple) -> D.Expr:
    x, y, z = Var("x"), Var("y"), Var("z")
    T = type_to_mltt
    match name, args:
        case "k-def", _:
            return Lam("x", None, Lam("y", None, D.Refl(x)))
        case "s-def", _:
            return Lam("x", None, Lam("y", None, Lam("z", None, D.Refl(App(App(x, z), App(y, z))))))
        case "rec-zero", _:
            return Lam("a", None, Lam("f", None, D.Refl(Var("a"))))
        case "rec-succ", (s,):
            rec = D.NatRec("_", T(s), Var("a"), "m", "ih", _rec_step(Var("f")), Var("n"))
            return Lam("a", None, Lam("f", None, Lam("n", None, D.Refl(D.apps(Var("f"), Var("n"), rec)))))
        case "fst-def", _:
            return Lam("x", None, Lam("y", None, D.Refl(x)))
        case "snd-def", _:
            return Lam("x", None, Lam("y", None, D.Refl(y)))
        case "succ-inj", _:
            motive = D.Id(D.NAT, x, _PRED(Var("z")))
            return Lam("x", None, Lam("y", None, Lam("e", None,
                       D.IdPeel(Var("e"), "z", motive, D.Refl(x)))))
        case "succ-ne-zero", _:
            return Var("ax.succ-ne-zero")
        case "ac", _:
            return Lam("h", None, _choice_term(Var("h"), unique=False))
        case "ac!", _:
            return Lam("h", None, _choice_term(Var("h"), unique=True))
    raise TranslationError(f"no transport for axiom {name}")


class _Transport:
    def __init__(self, lemmas: Mapping[str, tuple[L.Formula, L.Proof]]):
        self.lemmas = lemmas
        self.cache: dict[str, D.Expr] = {}
        self.statements = {n: f for n, (f, _) in lemmas.items()}

    def lemma(self, name: str) -> D.Expr:
        if name not in self.cache:
            if name not in self.lemmas:
                raise TranslationError(f"unknown lemma {name}")
            f, p = self.lemmas[name]
            self.cache[name] = D.The(formula_to_mltt(f), self.proof(p))
        return self.cache[name]

    def proof(self, p: L.Proof) -> D.Expr:
        t = self.proof
        match p:
            case L.Hyp(label):
                return _hyp(label)
            case L.Use(name):
                return self.lemma(name)
            case L.Ann(f, q):
                return D.The(formula_to_mltt(f), t(q))
            case L.AndI(a, b):
                return D.Pair(t(a), t(b))
            case L.AndE1(a):
                return D.Fst(t(a))
            case L.AndE2(a):
                return D.Snd(t(a))
            case L.OrI1(a):
                return D.Inl(t(a))
            case L.OrI2(a):
                return D.Inr(t(a))
            case L.OrE(q, l1, a, l2, b):
                return D.Case(t(q), _hyp(l1).name, t(a), _hyp(l2).name, t(b))
            case L.ImpI(label, body):
                return Lam(_hyp(label).name, None, t(body))
            case L.ImpE(fn, arg):
                return App(t(fn), t(arg))
            case L.ForallI(x, body):
                return Lam(x, None, t(body))
            case L.ForallE(q, term):
                return App(t(q), term_to_mltt(term))
            case L.ExistsI(w, q):
                return D.Pair(term_to_mltt(w), t(q))
            case L.ExistsE(q, x, label, body):
                return D.ExistsElim(t(q), x, _hyp(label).name, t(body))
            case L.FalseE(q):
                return D.Absurd(t(q))
            case L.Refl(term):
                return D.Refl(term_to_mltt(term))
            case L.EqSubst(z, _, motive, e, base):
                return D.IdPeel(t(e), z, formula_to_mltt(motive), t(base))
            case L.Axiom(name, args):
                f = L.axiom_formula(name, args)
                return D.The(formula_to_mltt(f), _axiom_term(name, args))
            case L.Induction(x, motive, base, n, label, st):
                m, b, s = formula_to_mltt(motive), t(base), t(st)
                v = D.fresh("n", D.free_vars(b) | D.free_vars(s) | D.free_vars(m) | {x})
                rec = D.NatRec(x, m, b, n, _hyp(label).name, s, Var(v))
                return D.The(D.Pi(x, D.NAT, m), Lam(v, None, rec))
            case L.Irc(sub):
                concl = L.infer_proof(L.AxiomProfile(irc_nn=True, irc_any=True), {}, p,
                                      lemmas=self.statements)
                premise = t(sub)
                return D.The(formula_to_mltt(concl), _choice_term(premise, unique=True))
            case L.Lem():
                raise TranslationError("classical node: excluded middle has no MLTT inhabitant")
        raise TranslationError(f"cannot transport {type(p).__name__}")


def transport_proof_mltt(p: L.Proof, lemmas: Mapping[str, tuple[L.Formula, L.Proof]] | None = None) -> D.Expr:
    """Dependent term for a natural-deduction proof; hypothesis ``h`` becomes variable ``h.h``."""
    return _Transport(lemmas or {}).proof(p)


def transport_context(hyps: Mapping[str, L.Formula], ctx: Mapping[str, H.FiniteType] | None = None) -> dict:
    out = mltt_postulates()
    out.update(context_to_mltt(ctx or {}))
    out.update({_hyp(label).name: formula_to_mltt(f) for label, f in hyps.items()})
    return out


def check_transport(goal: L.Formula, p: L.Proof, lemmas=None, hyps=None, ctx=None, fuel=None) -> D.Expr:
    """Transport ``p`` and check it against ``to_mltt(goal)``; returns the term."""
    term = transport_proof_mltt(p, lemmas)
    D.check(D.MLTT, transport_context(hyps or {}, ctx), term, formula_to_mltt(goal), fuel)
    return term
