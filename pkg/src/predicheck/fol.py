"""Untyped first-order formulas over a set-theoretic vocabulary.

Sorts become set terms (``omega``, function sets, products) and typed
quantifiers are relativised by membership.
"""

from __future__ import annotations

from dataclasses import dataclass


class FolTerm:
    __slots__ = ()


@dataclass(frozen=True)
class FolVar(FolTerm):
    name: str


@dataclass(frozen=True)
class FolConst(FolTerm):
    """A constant of the source theory together with the set terms it is instantiated at."""
    name: str
    sets: tuple = ()


@dataclass(frozen=True)
class FolApp(FolTerm):
    """Application of a functional relation to an argument."""
    fun: FolTerm
    arg: FolTerm


@dataclass(frozen=True)
class Omega(FolTerm):
    pass


@dataclass(frozen=True)
class FunSet(FolTerm):
    dom: FolTerm
    cod: FolTerm


@dataclass(frozen=True)
class ProdSet(FolTerm):
    left: FolTerm
    right: FolTerm


OMEGA = Omega()


class FolFormula:
    __slots__ = ()


@dataclass(frozen=True)
class FolFalse(FolFormula):
    pass


@dataclass(frozen=True)
class FolEq(FolFormula):
    lhs: FolTerm
    rhs: FolTerm


@dataclass(frozen=True)
class FolMem(FolFormula):
    elem: FolTerm
    set: FolTerm


@dataclass(frozen=True)
class FolAnd(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FolOr(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FolImp(FolFormula):
    left: FolFormula
    right: FolFormula


@dataclass(frozen=True)
class FolForall(FolFormula):
    var: str
    body: FolFormula


@dataclass(frozen=True)
class FolExists(FolFormula):
    var: str
    body: FolFormula


FOL_FALSE = FolFalse()


def term_vars(t: FolTerm) -> frozenset[str]:
    match t:
        case FolVar(n):
            return frozenset([n])
        case FolApp(f, a):
            return term_vars(f) | term_vars(a)
    return frozenset()


def free_vars(f: FolFormula) -> frozenset[str]:
    match f:
        case FolFalse():
            return frozenset()
        case FolEq(a, b) | FolMem(a, b):
            return term_vars(a) | term_vars(b)
        case FolAnd(a, b) | FolOr(a, b) | FolImp(a, b):
            return free_vars(a) | free_vars(b)
        case FolForall(x, body) | FolExists(x, body):
            return free_vars(body) - {x}
    raise TypeError(f"not a first-order formula: {f!r}")


def alpha_equal(f: FolFormula, g: FolFormula) -> bool:
    return _alpha(f, g, {}, {}, 0)


def _term_eq(a, b, ea, eb) -> bool:
    match a, b:
        case FolVar(x), FolVar(y):
            return ea.get(x, x) == eb.get(y, y)
        case FolApp(f, u), FolApp(g, v):
            return _term_eq(f, g, ea, eb) and _term_eq(u, v, ea, eb)
    return a == b


def _alpha(f, g, ef, eg, depth) -> bool:
    if type(f) is not type(g):
        return False
    match f:
        case FolFalse():
            return True
        case FolEq(a, b) | FolMem(a, b):
            ga, gb = (g.lhs, g.rhs) if isinstance(g, FolEq) else (g.elem, g.set)
            return _term_eq(a, ga, ef, eg) and _term_eq(b, gb, ef, eg)
        case FolAnd(a, b) | FolOr(a, b) | FolImp(a, b):
            return _alpha(a, g.left, ef, eg, depth) and _alpha(b, g.right, ef, eg, depth)
        case FolForall(x, body) | FolExists(x, body):
            mark = f"#{depth}"
            return _alpha(body, g.body, {**ef, x: mark}, {**eg, g.var: mark}, depth + 1)
    return False
