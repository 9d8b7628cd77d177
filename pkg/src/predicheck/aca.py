"""Two-sorted arithmetic formulas: numbers and sets of numbers."""

from __future__ import annotations

from dataclasses import dataclass


class ATerm:
    __slots__ = ()


@dataclass(frozen=True)
class AVar(ATerm):
    name: str


@dataclass(frozen=True)
class AZero(ATerm):
    pass


@dataclass(frozen=True)
class ASucc(ATerm):
    pred: ATerm


@dataclass(frozen=True)
class AAdd(ATerm):
    left: ATerm
    right: ATerm


@dataclass(frozen=True)
class AMul(ATerm):
    left: ATerm
    right: ATerm


AZERO = AZero()


def anumeral(n: int) -> ATerm:
    t: ATerm = AZERO
    for _ in range(n):
        t = ASucc(t)
    return t


class AcaFormula:
    __slots__ = ()


@dataclass(frozen=True)
class AFalse(AcaFormula):
    pass


@dataclass(frozen=True)
class AEq(AcaFormula):
    lhs: ATerm
    rhs: ATerm


@dataclass(frozen=True)
class AMem(AcaFormula):
    elem: ATerm
    set: str


@dataclass(frozen=True)
class AAnd(AcaFormula):
    left: AcaFormula
    right: AcaFormula


@dataclass(frozen=True)
class AOr(AcaFormula):
    left: AcaFormula
    right: AcaFormula


@dataclass(frozen=True)
class AImp(AcaFormula):
    left: AcaFormula
    right: AcaFormula


@dataclass(frozen=True)
class AForallN(AcaFormula):
    var: str
    body: AcaFormula


@dataclass(frozen=True)
class AExistsN(AcaFormula):
    var: str
    body: AcaFormula


@dataclass(frozen=True)
class AForallS(AcaFormula):
    var: str
    body: AcaFormula


@dataclass(frozen=True)
class AExistsS(AcaFormula):
    var: str
    body: AcaFormula


AFALSE = AFalse()


def ANot(f: AcaFormula) -> AcaFormula:
    return AImp(f, AFALSE)


def AIff(a: AcaFormula, b: AcaFormula) -> AcaFormula:
    return AAnd(AImp(a, b), AImp(b, a))


def is_arithmetical(f: AcaFormula) -> bool:
    """No set quantifiers anywhere (free set variables are allowed)."""
    match f:
        case AFalse() | AEq() | AMem():
            return True
        case AAnd(a, b) | AOr(a, b) | AImp(a, b):
            return is_arithmetical(a) and is_arithmetical(b)
        case AForallN(_, b) | AExistsN(_, b):
            return is_arithmetical(b)
        case AForallS() | AExistsS():
            return False
    raise TypeError(f"not an ACA formula: {f!r}")


def term_vars(t: ATerm) -> frozenset[str]:
    match t:
        case AVar(n):
            return frozenset([n])
        case ASucc(a):
            return term_vars(a)
        case AAdd(a, b) | AMul(a, b):
            return term_vars(a) | term_vars(b)
    return frozenset()


def free_vars(f: AcaFormula) -> tuple[frozenset[str], frozenset[str]]:
    """Free (number, set) variables."""
    match f:
        case AFalse():
            return frozenset(), frozenset()
        case AEq(a, b):
            return term_vars(a) | term_vars(b), frozenset()
        case AMem(t, x):
            return term_vars(t), frozenset([x])
        case AAnd(a, b) | AOr(a, b) | AImp(a, b):
            (na, sa), (nb, sb) = free_vars(a), free_vars(b)
            return na | nb, sa | sb
        case AForallN(x, b) | AExistsN(x, b):
            n, s = free_vars(b)
            return n - {x}, s
        case AForallS(x, b) | AExistsS(x, b):
            n, s = free_vars(b)
            return n, s - {x}
    raise TypeError(f"not an ACA formula: {f!r}")


def subformulas(f: AcaFormula):
    yield f
    match f:
        case AAnd(a, b) | AOr(a, b) | AImp(a, b):
            yield from subformulas(a)
            yield from subformulas(b)
        case AForallN(_, b) | AExistsN(_, b) | AForallS(_, b) | AExistsS(_, b):
            yield from subformulas(b)


def comprehension_instance(x: str, phi: AcaFormula, set_var: str = "X") -> AcaFormula:
    """``exists X forall x (x in X <-> phi)`` for arithmetical ``phi`` not mentioning ``X``."""
    if not is_arithmetical(phi):
        raise ValueError("comprehension is restricted to arithmetical formulas")
    nums, sets = free_vars(phi)
    while set_var in sets:
        set_var += "'"
    return AExistsS(set_var, AForallN(x, AIff(AMem(AVar(x), set_var), phi)))


def subst_num(f: AcaFormula, x: str, t: ATerm) -> AcaFormula:
    """Substitute a closed or fresh-variable term for a number variable."""
    def term(u: ATerm) -> ATerm:
        match u:
            case AVar(n):
                return t if n == x else u
            case ASucc(a):
                return ASucc(term(a))
            case AAdd(a, b):
                return AAdd(term(a), term(b))
            case AMul(a, b):
                return AMul(term(a), term(b))
        return u

    tv = term_vars(t)
    match f:
        case AFalse():
            return f
        case AEq(a, b):
            return AEq(term(a), term(b))
        case AMem(a, s):
            return AMem(term(a), s)
        case AAnd(a, b) | AOr(a, b) | AImp(a, b):
            return type(f)(subst_num(a, x, t), subst_num(b, x, t))
        case AForallN(y, b) | AExistsN(y, b):
            if y == x:
                return f
            if y in tv:
                raise ValueError(f"substitution would capture {y}")
            return type(f)(y, subst_num(b, x, t))
        case AForallS(y, b) | AExistsS(y, b):
            return type(f)(y, subst_num(b, x, t))
    raise TypeError(f"not an ACA formula: {f!r}")


def induction_instance(x: str, phi: AcaFormula) -> AcaFormula:
    """``phi(0) and forall x (phi(x) -> phi(S x)) -> forall x phi(x)``."""
    step = AForallN(x, AImp(phi, subst_num(phi, x, ASucc(AVar(x)))))
    return AImp(AAnd(subst_num(phi, x, AZERO), step), AForallN(x, phi))
