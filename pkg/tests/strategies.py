"""Hypothesis strategies for every surface language."""

from __future__ import annotations

from hypothesis import strategies as st

from predicheck import aca as A
from predicheck import dtt as D
from predicheck import fol as F
from predicheck import hao as H
from predicheck import logic as L
from predicheck.hao import N, Arrow, Prod

NAMES = ["x", "y", "z", "u", "v"]
names = st.sampled_from(NAMES)

# ------------------------------------------------------------------ HA^omega

BASE_TYPES = [N, Arrow(N, N), Prod(N, N)]


def finite_types(max_leaves: int = 6) -> st.SearchStrategy:
    return st.recursive(st.just(N),
                        lambda inner: st.builds(Arrow, inner, inner) | st.builds(Prod, inner, inner),
                        max_leaves=max_leaves)


def _heads_for(ty):
    """Constant spines whose result type is ``ty``: (head, argument types)."""
    out = [(H.K(ty, t), [ty, t]) for t in BASE_TYPES]
    out.append((H.Rec(ty), [ty, Arrow(N, Arrow(ty, ty)), N]))
    for s in BASE_TYPES[:2]:
        out.append((H.S(N, s, ty), [Arrow(N, Arrow(s, ty)), Arrow(N, s), N]))
    out.append((H.Fst(ty, N), [Prod(ty, N)]))
    out.append((H.Snd(N, ty), [Prod(N, ty)]))
    if ty == N:
        out.append((H.SUCC, [N]))
    if isinstance(ty, Prod):
        out.append((H.Pair(ty.left, ty.right), [ty.left, ty.right]))
    return out


def _leaves(ty, ctx):
    opts = [H.Var(v) for v, t in ctx.items() if t == ty]
    if ty == N:
        opts += [H.numeral(i) for i in range(3)]
    if ty == Arrow(N, N):
        opts.append(H.SUCC)
    if isinstance(ty, Arrow) and isinstance(ty.cod, Arrow) and ty.cod.cod == ty.dom:
        opts.append(H.K(ty.dom, ty.cod.dom))
    return opts


@st.composite
def well_typed_terms(draw, ty=N, ctx=None, depth: int = 3):
    """A term of type ``ty`` in ``ctx``; the shape mix favours redexes."""
    ctx = {"x": N, "g": Arrow(N, N)} if ctx is None else ctx
    leaves = _leaves(ty, ctx)
    if depth <= 0 or (leaves and draw(st.integers(0, 3)) == 0):
        return draw(st.sampled_from(leaves)) if leaves else _canonical(ty)
    head, args = draw(st.sampled_from(_heads_for(ty)))
    return H.ap(head, *[draw(well_typed_terms(a, ctx, depth - 1)) for a in args])


def _canonical(ty):
    """Some closed term of type ``ty``."""
    match ty:
        case H.Nat():
            return H.ZERO
        case Prod(l, r):
            return H.ap(H.Pair(l, r), _canonical(l), _canonical(r))
        case Arrow(d, c):
            return H.Ap(H.K(c, d), _canonical(c))
    raise TypeError(ty)


# ------------------------------------------------------------------ formulas


@st.composite
def hao_formulas(draw, scope=("x",), depth: int = 3):
    """Well-formed formulas over number variables in ``scope``."""
    ctx = {v: N for v in scope}
    if depth <= 0 or draw(st.integers(0, 4)) == 0:
        if draw(st.integers(0, 9)) == 0:
            return L.FALSE
        return L.Eq(N, draw(well_typed_terms(N, ctx, 1)), draw(well_typed_terms(N, ctx, 1)))
    k = draw(st.integers(0, 5))
    sub = lambda s=scope: hao_formulas(s, depth - 1)
    if k == 0:
        return L.And(draw(sub()), draw(sub()))
    if k == 1:
        return L.Or(draw(sub()), draw(sub()))
    if k == 2:
        return L.Imp(draw(sub()), draw(sub()))
    v = draw(names)
    q = L.Forall if k in (3, 4) else L.Exists
    inner = tuple(dict.fromkeys((*scope, v)))
    return q(v, N, draw(sub(inner)))


# ---------------------------------------------------------------------- DTT

_DTT_ATOMS = [D.NAT, D.EMPTY, D.UNIT, D.FALSEP, D.POWUNIT, D.PROPS_COLL, D.ZERO, D.TRUE]


def dtt_exprs(max_leaves: int = 12) -> st.SearchStrategy:
    """Structurally arbitrary expressions (not necessarily well-typed) for round-trips."""
    leaf = st.sampled_from(_DTT_ATOMS) | st.builds(D.Var, names)

    def extend(e):
        binder = lambda cls: st.builds(cls, names, e, e)
        return st.one_of(
            binder(D.Pi), binder(D.Sigma), binder(D.ForallP), binder(D.ExistsP), binder(D.Unique),
            st.builds(D.Sum, e, e), st.builds(D.OrP, e, e), st.builds(D.ImpP, e, e), st.builds(D.AndP, e, e),
            st.builds(D.Id, e, e, e), st.builds(D.EqP, e, e, e), st.builds(D.Trunc, e),
            st.builds(D.Lam, names, st.none() | e, e), st.builds(D.App, e, e), st.builds(D.Pair, e, e),
            st.builds(D.Fst, e), st.builds(D.Snd, e), st.builds(D.Inl, e), st.builds(D.Inr, e),
            st.builds(D.Case, e, names, e, names, e), st.builds(D.Absurd, e), st.builds(D.Succ, e),
            st.builds(D.NatRec, names, e, e, st.just("n"), st.just("ih"), e, e),
            st.builds(D.Refl, e), st.builds(D.IdPeel, e, names, e, e),
            st.builds(D.ExistsElim, e, names, st.just("h"), e),
            st.builds(D.TruncIntro, e), st.builds(D.TruncElim, e, names, e),
            st.builds(D.PLam, names, e, e), st.builds(D.The, e, e),
        )

    return st.recursive(leaf, extend, max_leaves=max_leaves)


# ---------------------------------------------------------------------- ACA


def aca_terms(nums=("x",)) -> st.SearchStrategy:
    leaf = st.sampled_from([A.AVar(v) for v in nums] + [A.AZERO])
    return st.recursive(leaf, lambda t: st.builds(A.ASucc, t) | st.builds(A.AAdd, t, t)
                        | st.builds(A.AMul, t, t), max_leaves=4)


@st.composite
def aca_formulas(draw, nums=("x",), sets=("X",), depth: int = 3, arithmetical: bool = False):
    if depth <= 0 or draw(st.integers(0, 4)) == 0:
        k = draw(st.integers(0, 4))
        if k == 0:
            return A.AFALSE
        if k == 1 and sets:
            return A.AMem(draw(aca_terms(nums)), draw(st.sampled_from(sets)))
        return A.AEq(draw(aca_terms(nums)), draw(aca_terms(nums)))
    sub = lambda n=nums, s=sets: aca_formulas(n, s, depth - 1, arithmetical)
    k = draw(st.integers(0, 6 if arithmetical else 8))
    if k == 0:
        return A.AAnd(draw(sub()), draw(sub()))
    if k == 1:
        return A.AOr(draw(sub()), draw(sub()))
    if k == 2:
        return A.AImp(draw(sub()), draw(sub()))
    if k in (3, 4, 5, 6):
        v = draw(st.sampled_from(["x", "y", "z"]))
        q = A.AForallN if k in (3, 4) else A.AExistsN
        return q(v, draw(sub(tuple(dict.fromkeys((*nums, v))))))
    v = draw(st.sampled_from(["X", "Y"]))
    q = A.AForallS if k == 7 else A.AExistsS
    return q(v, draw(sub(nums, tuple(dict.fromkeys((*sets, v))))))


# ---------------------------------------------------------------------- FOL


def fol_formulas() -> st.SearchStrategy:
    sets = st.recursive(st.just(F.OMEGA), lambda s: st.builds(F.FunSet, s, s) | st.builds(F.ProdSet, s, s),
                        max_leaves=3)
    terms = st.builds(F.FolVar, names) | sets | st.builds(F.FolConst, st.sampled_from(["zero", "succ"]),
                                                          st.just(()))
    terms = st.recursive(terms, lambda t: st.builds(F.FolApp, t, t), max_leaves=3)
    leaf = st.just(F.FOL_FALSE) | st.builds(F.FolEq, terms, terms) | st.builds(F.FolMem, terms, sets)
    return st.recursive(leaf, lambda f: st.one_of(
        st.builds(F.FolAnd, f, f), st.builds(F.FolOr, f, f), st.builds(F.FolImp, f, f),
        st.builds(F.FolForall, names, f), st.builds(F.FolExists, names, f)), max_leaves=8)
