"""Finite types and combinator terms of Heyting arithmetic in all finite types.

Reduction is leftmost-outermost over six contraction rules::

    k x y          -> x
    s x y z        -> (x z) (y z)
    rec a f 0      -> a
    rec a f (S n)  -> f n (rec a f n)
    fst (pair x y) -> x
    snd (pair x y) -> y

The recursor hands its step function the predecessor first and the
recursive value second.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping

DEFAULT_FUEL = 10**6


def default_fuel() -> int:
    return int(os.environ.get("PREDICHECK_FUEL", DEFAULT_FUEL))


# ---------------------------------------------------------------- finite types


class FiniteType:
    __slots__ = ()


@dataclass(frozen=True)
class Nat(FiniteType):
    def __repr__(self) -> str:
        return "N"


N = Nat()


@dataclass(frozen=True)
class Arrow(FiniteType):
    dom: FiniteType
    cod: FiniteType

    def __repr__(self) -> str:
        return f"({self.dom!r} -> {self.cod!r})"


@dataclass(frozen=True)
class Prod(FiniteType):
    left: FiniteType
    right: FiniteType

    def __repr__(self) -> str:
        return f"({self.left!r} * {self.right!r})"


def arrows(*tys: FiniteType) -> FiniteType:
    """Right-nested arrow: ``arrows(a, b, c) == a -> (b -> c)``."""
    out = tys[-1]
    for t in reversed(tys[:-1]):
        out = Arrow(t, out)
    return out


# ---------------------------------------------------------------------- terms


class Term:
    __slots__ = ()


@dataclass(frozen=True)
class Var(Term):
    name: str

    def __repr__(self) -> str:
        return self.name


@dataclass(frozen=True)
class Zero(Term):
    def __repr__(self) -> str:
        return "0"


@dataclass(frozen=True)
class Succ(Term):
    def __repr__(self) -> str:
        return "S"


@dataclass(frozen=True)
class K(Term):
    s: FiniteType
    t: FiniteType

    def __repr__(self) -> str:
        return "k"


@dataclass(frozen=True)
class S(Term):
    s: FiniteType
    t: FiniteType
    r: FiniteType

    def __repr__(self) -> str:
        return "s"


@dataclass(frozen=True)
class Rec(Term):
    s: FiniteType

    def __repr__(self) -> str:
        return "rec"


@dataclass(frozen=True)
class Pair(Term):
    s: FiniteType
    t: FiniteType

    def __repr__(self) -> str:
        return "pair"


@dataclass(frozen=True)
class Fst(Term):
    s: FiniteType
    t: FiniteType

    def __repr__(self) -> str:
        return "fst"


@dataclass(frozen=True)
class Snd(Term):
    s: FiniteType
    t: FiniteType

    def __repr__(self) -> str:
        return "snd"


@dataclass(frozen=True)
class Ap(Term):
    fun: Term
    arg: Term

    def __repr__(self) -> str:
        return f"({self.fun!r} {self.arg!r})"


ZERO = Zero()
SUCC = Succ()


def ap(f: Term, *args: Term) -> Term:
    for a in args:
        f = Ap(f, a)
    return f


def numeral(n: int) -> Term:
    t: Term = ZERO
    for _ in range(n):
        t = Ap(SUCC, t)
    return t


def as_numeral(t: Term) -> int | None:
    n = 0
    while isinstance(t, Ap) and t.fun == SUCC:
        t, n = t.arg, n + 1
    return n if t == ZERO else None


def free_vars(t: Term) -> frozenset[str]:
    if isinstance(t, Var):
        return frozenset([t.name])
    if isinstance(t, Ap):
        return free_vars(t.fun) | free_vars(t.arg)
    return frozenset()


def subst(t: Term, mapping: Mapping[str, Term]) -> Term:
    """Simultaneous substitution; terms have no binders so capture cannot occur."""
    if isinstance(t, Var):
        return mapping.get(t.name, t)
    if isinstance(t, Ap):
        f, a = subst(t.fun, mapping), subst(t.arg, mapping)
        if f is t.fun and a is t.arg:
            return t
        return Ap(f, a)
    return t


# --------------------------------------------------------------------- typing


class HaoTypeError(Exception):
    pass


class FuelExhausted(Exception):
    def __init__(self, last: Term, fuel: int):
        super().__init__(f"reduction fuel {fuel} exhausted; last term reached: {last!r}")
        self.last = last
        self.fuel = fuel


TypingContext = Mapping[str, FiniteType]


def constant_type(c: Term) -> FiniteType:
    match c:
        case Zero():
            return N
        case Succ():
            return Arrow(N, N)
        case K(s, t):
            return arrows(s, t, s)
        case S(s, t, r):
            return arrows(arrows(s, t, r), arrows(s, t), arrows(s, r))
        case Rec(s):
            return arrows(s, arrows(N, s, s), N, s)
        case Pair(s, t):
            return arrows(s, t, Prod(s, t))
        case Fst(s, t):
            return Arrow(Prod(s, t), s)
        case Snd(s, t):
            return Arrow(Prod(s, t), t)
    raise HaoTypeError(f"not a constant: {c!r}")


def infer_type(ctx: TypingContext, t: Term) -> FiniteType:
    if isinstance(t, Var):
        try:
            return ctx[t.name]
        except KeyError:
            raise HaoTypeError(f"unbound variable {t.name}") from None
    if isinstance(t, Ap):
        ft = infer_type(ctx, t.fun)
        if not isinstance(ft, Arrow):
            raise HaoTypeError(f"application of {t.fun!r} : {ft!r}, which is not an arrow")
        at = infer_type(ctx, t.arg)
        if at != ft.dom:
            raise HaoTypeError(
                f"argument {t.arg!r} has type {at!r} but {t.fun!r} expects {ft.dom!r}"
            )
        return ft.cod
    return constant_type(t)


# ------------------------------------------------------------------ reduction


def _contract(t: Term) -> Term | None:
    """Contract ``t`` itself if it is a redex."""
    if not isinstance(t, Ap):
        return None
    f, z = t.fun, t.arg
    if isinstance(f, Ap):
        g, y = f.fun, f.arg
        if isinstance(g, Ap):
            h, x = g.fun, g.arg
            if isinstance(h, S):
                return Ap(Ap(x, z), Ap(y, z))
            if isinstance(h, Rec):
                if z == ZERO:
                    return x
                if isinstance(z, Ap) and z.fun == SUCC:
                    return Ap(Ap(y, z.arg), Ap(Ap(Ap(h, x), y), z.arg))
        elif isinstance(g, K):
            return y
    if isinstance(f, (Fst, Snd)) and isinstance(z, Ap) and isinstance(z.fun, Ap):
        if isinstance(z.fun.fun, Pair):
            return z.fun.arg if isinstance(f, Fst) else z.arg
    return None


def step(t: Term) -> Term | None:
    """One leftmost-outermost contraction, or None when ``t`` is normal."""
    r = _contract(t)
    if r is not None:
        return r
    if isinstance(t, Ap):
        f = step(t.fun)
        if f is not None:
            return Ap(f, t.arg)
        a = step(t.arg)
        if a is not None:
            return Ap(t.fun, a)
    return None


def normalize(t: Term, fuel: int | None = None) -> Term:
    if fuel is None:
        fuel = default_fuel()
    return _normalize(t, fuel)


@lru_cache(maxsize=65536)
def _normalize(t: Term, fuel: int) -> Term:
    n = 0
    while True:
        nxt = step(t)
        if nxt is None:
            return t
        if n >= fuel:
            raise FuelExhausted(t, fuel)
        t, n = nxt, n + 1


def def_equal(t: Term, u: Term, fuel: int | None = None) -> bool:
    return normalize(t, fuel) == normalize(u, fuel)
