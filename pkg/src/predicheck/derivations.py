"""Proof synthesizers: comprehension from unique choice and excluded middle, and choice terms.

``derive_ca(phi)`` builds a closed natural-deduction proof of

    exists f:N->N. forall x:N. (f x = 1 <-> phi(x))

by case analysis on ``phi(x) or not phi(x)``, showing the characteristic
relation ``chi`` is functional, applying the internal unique-choice rule once,
and unfolding ``chi`` at ``f x`` (which is where ``1 != 0`` is needed).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import dtt as D
from . import hao as H
from . import logic as L
from .dtt import App, Fst, Lam, Pair, Snd, Var
from .hao import N
from .logic import (And, Ann, AndE1, AndE2, AndI, Eq, Exists, ExistsE, ExistsI, FalseE, Forall,
                    ForallE, ForallI, Hyp, Imp, ImpE, ImpI, Irc, Lem, Not, Or, OrE, OrI1, OrI2)

ONE = H.numeral(1)
ZERO = H.ZERO


class DerivationError(Exception):
    pass


@dataclass(frozen=True)
class CaInstance:
    phi: L.Formula
    chi: L.Formula
    proof: L.Proof
    goal: L.Formula
    x: str = "x"
    y: str = "y"


CA_PROFILE = L.AxiomProfile(lem=True, irc_nn=True)


# --------------------------------------------------------- equality helpers


def _fresh_motive_var(*terms: H.Term) -> str:
    used = frozenset().union(*(H.free_vars(t) for t in terms))
    return L.fresh("z", used)


def sym(e: L.Proof, a: H.Term, ty=N) -> L.Proof:
    """From ``e : a = b`` conclude ``b = a``."""
    z = _fresh_motive_var(a)
    return L.EqSubst(z, ty, Eq(ty, H.Var(z), a), e, L.Refl(a))


def trans(e1: L.Proof, e2: L.Proof, a: H.Term, ty=N) -> L.Proof:
    """From ``e1 : a = b`` and ``e2 : b = c`` conclude ``a = c``."""
    z = _fresh_motive_var(a)
    return L.EqSubst(z, ty, Eq(ty, a, H.Var(z)), e2, e1)


def one_ne_zero() -> L.Proof:
    return ForallE(L.Axiom("succ-ne-zero"), ZERO)


# ------------------------------------------------------------------ CA schema


def build_chi(phi: L.Formula, x: str = "x", y: str = "y") -> L.Formula:
    """``(phi and y = 1) or (not phi and y = 0)``."""
    fv = L.free_vars(phi)
    if y in fv:
        raise DerivationError(f"{y} occurs free in phi")
    if "f" in fv:
        raise DerivationError("f occurs free in phi")
    extra = fv - {x}
    if extra:
        raise DerivationError(f"phi may only mention {x} free, found {sorted(extra)}")
    try:
        L.check_formula({x: N}, phi)
    except L.FormulaError as e:
        raise DerivationError(f"ill-formed phi: {e}") from None
    yv = H.Var(y)
    return Or(And(phi, Eq(N, yv, ONE)), And(Not(phi), Eq(N, yv, ZERO)))


def ca_goal(phi: L.Formula, x: str = "x") -> L.Formula:
    f = L.fresh("f", L.free_vars(phi) | {x})
    return Exists(f, H.Arrow(N, N), Forall(x, N, L.Iff(Eq(N, H.Ap(H.Var(f), H.Var(x)), ONE), phi)))


def functional_proof(phi: L.Formula, chi: L.Formula, x: str, y: str) -> tuple[L.Formula, L.Proof]:
    """Proof of ``forall x exists! y chi`` by excluded middle on ``phi``."""
    unique = L.expand_exists_unique(y, N, chi)
    statement = Forall(x, N, unique)
    uniq = unique.right
    y1, y2 = uniq.var, uniq.body.var
    v1, v2 = H.Var(y1), H.Var(y2)

    existence = OrE(Lem(phi),
                    "hp", ExistsI(ONE, OrI1(AndI(Hyp("hp"), L.Refl(ONE)))),
                    "hn", ExistsI(ZERO, OrI2(AndI(Hyp("hn"), L.Refl(ZERO)))))

    def same(a: str, b: str) -> L.Proof:
        return trans(AndE2(Hyp(a)), sym(AndE2(Hyp(b)), v2), v1)

    def clash(pos: str, neg: str) -> L.Proof:
        return FalseE(ImpE(AndE1(Hyp(neg)), AndE1(Hyp(pos))))

    cases = OrE(AndE1(Hyp("hc")),
                "a1", OrE(AndE2(Hyp("hc")), "b1", same("a1", "b1"), "b2", clash("a1", "b2")),
                "a2", OrE(AndE2(Hyp("hc")), "b1", clash("b1", "a2"), "b2", same("a2", "b2")))
    uniqueness = ForallI(y1, ForallI(y2, ImpI("hc", cases)))
    return statement, ForallI(x, AndI(existence, uniqueness))


def unfold_proof(phi: L.Formula, chosen: L.Formula, goal: L.Formula, x: str) -> tuple[L.Formula, L.Proof]:
    """Proof of ``(exists f forall x chi(x, f x)) -> CA``."""
    f = chosen.var
    fx = H.Ap(H.Var(f), H.Var(x))
    hfx = ForallE(Hyp("hf"), H.Var(x))
    to_phi = ImpI("e", OrE(hfx,
                           "c1", AndE1(Hyp("c1")),
                           "c2", FalseE(ImpE(one_ne_zero(),
                                             trans(sym(Hyp("e"), fx), AndE2(Hyp("c2")), ONE)))))
    from_phi = ImpI("p", OrE(hfx,
                             "c1", AndE2(Hyp("c1")),
                             "c2", FalseE(ImpE(AndE1(Hyp("c2")), Hyp("p")))))
    body = ExistsE(Hyp("hg"), f, "hf", ExistsI(H.Var(f), ForallI(x, AndI(to_phi, from_phi))))
    return Imp(chosen, goal), ImpI("hg", body)


def derive_ca(phi: L.Formula, profile: L.AxiomProfile | None = None,
              x: str = "x", y: str = "y") -> CaInstance:
    if profile is not None and not (profile.lem and (profile.irc_nn or profile.irc_any)):
        raise DerivationError("the comprehension derivation needs lem and irc! in the profile")
    chi = build_chi(phi, x, y)
    goal = ca_goal(phi, x)
    functional, fproof = functional_proof(phi, chi, x, y)
    irc = Irc(Ann(functional, fproof))
    chosen = L.infer_proof(CA_PROFILE, {}, irc)
    unfold_stmt, uproof = unfold_proof(phi, chosen, goal, x)
    proof = ImpE(Ann(unfold_stmt, uproof), irc)
    return CaInstance(phi, chi, proof, goal, x, y)


# ------------------------------------------------------------- choice terms

NAT = D.NAT
_NN = D.arrow(NAT, NAT)


def R(x: D.Expr, y: D.Expr, rel: str = "R") -> D.Expr:
    return App(App(Var(rel), x), y)


def _conclusion() -> D.Expr:
    return D.Sigma("f", _NN, D.Pi("x", NAT, R(Var("x"), App(Var("f"), Var("x")))))


def ac_type() -> D.Expr:
    """Pi h:(Pi x. Sigma y. R x y). Sigma f. Pi x. R x (f x)."""
    premise = D.Pi("x", NAT, D.Sigma("y", NAT, R(Var("x"), Var("y"))))
    return D.Pi("h", premise, _conclusion())


def ac_prop_type() -> D.Expr:
    """AC stated with the proposition formers."""
    premise = D.ForallP("x", NAT, D.ExistsP("y", NAT, R(Var("x"), Var("y"))))
    concl = D.ExistsP("f", _NN, D.ForallP("x", NAT, R(Var("x"), App(Var("f"), Var("x")))))
    return D.ImpP(premise, concl)


def unique_sigma(y: str, dom: D.Expr, body: D.Expr) -> D.Expr:
    """Sigma-style unique existence: a witness with its proof, then uniqueness."""
    return D.times(D.Sigma(y, dom, body), D.uniqueness_type(y, dom, body))


def ac_bang_type() -> D.Expr:
    premise = D.Pi("x", NAT, unique_sigma("y", NAT, R(Var("x"), Var("y"))))
    return D.Pi("h", premise, _conclusion())


def ac_trunc_bang_type() -> D.Expr:
    premise = D.Pi("x", NAT, D.Trunc(D.Unique("y", NAT, R(Var("x"), Var("y")))))
    return D.Pi("h", premise, _conclusion())


def ac_trunc_type() -> D.Expr:
    """General choice with truncated existence; not derivable by the term below."""
    premise = D.Pi("x", NAT, D.Trunc(D.Sigma("y", NAT, R(Var("x"), Var("y")))))
    return D.Pi("h", premise, _conclusion())


def ac_term() -> D.Expr:
    hx = App(Var("h"), Var("x"))
    return Lam("h", None, Pair(Lam("x", None, Fst(hx)), Lam("x", None, Snd(hx))))


def ac_bang_term() -> D.Expr:
    """AC! from AC by precomposing with the projection that forgets uniqueness."""
    forget = Lam("x", None, Fst(App(Var("h"), Var("x"))))
    return Lam("h", None, D.nf(App(ac_term(), forget)))


def ac_bang_trunc_term() -> D.Expr:
    unpacked = D.TruncElim(App(Var("h"), Var("x")), "u", Var("u"))
    return Lam("h", None, Pair(Lam("x", None, Fst(Fst(unpacked))),
                               Lam("x", None, Snd(Fst(unpacked)))))


def relation_context(sort: D.Sort, rel: str = "R") -> dict:
    return {rel: D.Family((NAT, NAT), sort)}
