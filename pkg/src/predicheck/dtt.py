"""A universe-free dependent type checker with three sort disciplines.

``MLTT`` identifies propositions with types: the proposition formers are
desugared to Sigma/Pi/Sum/Empty/Id before checking. ``MTT`` keeps four sorts
(small propositions, propositions, sets, collections) and lets eliminators of
propositions target propositions only. ``EMTT`` adds the power-collection of
the singleton and checks formation judgements, accepting only the canonical
``true`` as a proof.

Definitional equality is untyped beta-conversion under a fuel bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, fields
from typing import ClassVar, Mapping

from . import hao


class Sort(enum.Enum):
    PROPS = "props"
    PROP = "prop"
    SET = "set"
    COLL = "coll"

    def __le__(self, other: Sort) -> bool:
        return self is other or self is Sort.PROPS or other is Sort.COLL

    def __lt__(self, other: Sort) -> bool:
        return self is not other and self <= other


class SortMode(enum.Enum):
    MLTT = "mltt"
    MTT = "mtt"
    EMTT = "emtt"


MLTT, MTT, EMTT = SortMode.MLTT, SortMode.MTT, SortMode.EMTT


# ----------------------------------------------------------------- syntax


class Expr:
    # child field -> binder-name fields scoping over it
    BINDS: ClassVar[dict[str, tuple[str, ...]]] = {}
    __slots__ = ()


@dataclass(frozen=True)
class Var(Expr):
    name: str


@dataclass(frozen=True)
class Nat(Expr):
    pass


@dataclass(frozen=True)
class Empty(Expr):
    pass


@dataclass(frozen=True)
class Unit(Expr):
    pass


@dataclass(frozen=True)
class FalseP(Expr):
    pass


@dataclass(frozen=True)
class PowUnit(Expr):
    pass


@dataclass(frozen=True)
class Props(Expr):
    """The collection of small propositions (intensional level only)."""


@dataclass(frozen=True)
class Pi(Expr):
    x: str
    dom: Expr
    cod: Expr
    BINDS = {"cod": ("x",)}


@dataclass(frozen=True)
class Sigma(Expr):
    x: str
    dom: Expr
    cod: Expr
    BINDS = {"cod": ("x",)}


@dataclass(frozen=True)
class ForallP(Expr):
    x: str
    dom: Expr
    cod: Expr
    BINDS = {"cod": ("x",)}


@dataclass(frozen=True)
class ExistsP(Expr):
    x: str
    dom: Expr
    cod: Expr
    BINDS = {"cod": ("x",)}


@dataclass(frozen=True)
class Unique(Expr):
    """Unique existence with an untruncated witness: a Sigma plus uniqueness.

    Behaves like ``Sigma(_, Sigma(x, dom, cod), uniqueness)`` for projections,
    but is a proposition whenever ``cod`` is one.
    """
    x: str
    dom: Expr
    cod: Expr
    BINDS = {"cod": ("x",)}


@dataclass(frozen=True)
class Sum(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class OrP(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class ImpP(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class AndP(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Id(Expr):
    ty: Expr
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class EqP(Expr):
    ty: Expr
    lhs: Expr
    rhs: Expr


@dataclass(frozen=True)
class Trunc(Expr):
    ty: Expr


# terms


@dataclass(frozen=True)
class Lam(Expr):
    x: str
    ann: Expr | None
    body: Expr
    BINDS = {"body": ("x",)}


@dataclass(frozen=True)
class App(Expr):
    fun: Expr
    arg: Expr


@dataclass(frozen=True)
class Pair(Expr):
    left: Expr
    right: Expr


@dataclass(frozen=True)
class Fst(Expr):
    pair: Expr


@dataclass(frozen=True)
class Snd(Expr):
    pair: Expr


@dataclass(frozen=True)
class Inl(Expr):
    value: Expr


@dataclass(frozen=True)
class Inr(Expr):
    value: Expr


@dataclass(frozen=True)
class Case(Expr):
    scrut: Expr
    x: str
    left: Expr
    y: str
    right: Expr
    BINDS = {"left": ("x",), "right": ("y",)}


@dataclass(frozen=True)
class Absurd(Expr):
    scrut: Expr


@dataclass(frozen=True)
class Zero(Expr):
    pass


@dataclass(frozen=True)
class Succ(Expr):
    pred: Expr


@dataclass(frozen=True)
class NatRec(Expr):
    x: str
    motive: Expr
    base: Expr
    n: str
    ih: str
    step: Expr
    target: Expr
    BINDS = {"motive": ("x",), "step": ("n", "ih")}


@dataclass(frozen=True)
class Refl(Expr):
    term: Expr


@dataclass(frozen=True)
class IdPeel(Expr):
    """Transport along an identity proof: from ``eq : a = b`` and ``base : motive[a]``."""
    eq: Expr
    x: str
    motive: Expr
    base: Expr
    BINDS = {"motive": ("x",)}


@dataclass(frozen=True)
class ExistsElim(Expr):
    scrut: Expr
    x: str
    h: str
    body: Expr
    BINDS = {"body": ("x", "h")}


@dataclass(frozen=True)
class TruncIntro(Expr):
    value: Expr


@dataclass(frozen=True)
class TruncElim(Expr):
    scrut: Expr
    x: str
    body: Expr
    BINDS = {"body": ("x",)}


@dataclass(frozen=True)
class PLam(Expr):
    """A small propositional function ``x:dom |- body prop_s``."""
    x: str
    dom: Expr
    body: Expr
    BINDS = {"body": ("x",)}


@dataclass(frozen=True)
class TrueC(Expr):
    pass


@dataclass(frozen=True)
class The(Expr):
    ty: Expr
    term: Expr


NAT, EMPTY, UNIT, FALSEP, POWUNIT, PROPS_COLL = Nat(), Empty(), Unit(), FalseP(), PowUnit(), Props()
ZERO, TRUE = Zero(), TrueC()

PROP_FORMERS = (ForallP, ExistsP, ImpP, AndP, OrP, FalseP, EqP)


def arrow(a: Expr, b: Expr) -> Expr:
    return Pi("_", a, b)


def times(a: Expr, b: Expr) -> Expr:
    return Sigma("_", a, b)


def apps(f: Expr, *args: Expr) -> Expr:
    for a in args:
        f = App(f, a)
    return f


def numeral(n: int) -> Expr:
    e: Expr = ZERO
    for _ in range(n):
        e = Succ(e)
    return e


@dataclass(frozen=True)
class Family:
    """A schematic family variable ``R : params -> sort`` (no universes)."""
    params: tuple[Expr, ...]
    sort: Sort


Context = Mapping[str, "Expr | Family"]


# ------------------------------------------------------- binders, substitution


def _parts(e: Expr):
    """(field name, value, bound names) for every expression child of ``e``."""
    binds = type(e).BINDS
    for f in fields(e):
        v = getattr(e, f.name)
        if isinstance(v, Expr):
            yield f.name, v, tuple(getattr(e, b) for b in binds.get(f.name, ()))


def free_vars(e: Expr) -> frozenset[str]:
    if isinstance(e, Var):
        return frozenset([e.name])
    out: set[str] = set()
    for _, v, bound in _parts(e):
        out |= free_vars(v) - set(bound)
    return frozenset(out)


def fresh(base: str, avoid) -> str:
    name = base if base != "_" else "v"
    while name in avoid:
        name += "'"
    return name


def subst(e: Expr, mapping: Mapping[str, Expr]) -> Expr:
    """Capture-avoiding simultaneous substitution."""
    if not mapping:
        return e
    if isinstance(e, Var):
        return mapping.get(e.name, e)
    binds = type(e).BINDS
    changes = {}
    for fname, v, bound in _parts(e):
        inner = {k: r for k, r in mapping.items() if k not in bound}
        if not inner:
            continue
        fv = free_vars(v)
        inner = {k: r for k, r in inner.items() if k in fv}
        if not inner:
            continue
        repl_fv = frozenset().union(*(free_vars(r) for r in inner.values()))
        renames = {}
        for bfield in binds.get(fname, ()):
            b = getattr(e, bfield)
            if b in repl_fv:
                nb = fresh(b, repl_fv | fv | inner.keys() | set(bound) | set(renames.values()))
                renames[b] = nb
                changes[bfield] = nb
        if renames:
            inner = {**inner, **{b: Var(nb) for b, nb in renames.items()}}
        changes[fname] = subst(v, inner)
    if not changes:
        return e
    return type(e)(**{f.name: changes.get(f.name, getattr(e, f.name)) for f in fields(e)})


def alpha_eq(a: Expr, b: Expr) -> bool:
    return _alpha(a, b, {}, {}, 0)


def _alpha(a, b, ea, eb, depth) -> bool:
    if type(a) is not type(b):
        return False
    if isinstance(a, Var):
        la, lb = ea.get(a.name), eb.get(b.name)
        if la is None and lb is None:
            return a.name == b.name
        return la == lb
    binds = type(a).BINDS
    for f in fields(a):
        va, vb = getattr(a, f.name), getattr(b, f.name)
        if isinstance(va, Expr) or isinstance(vb, Expr):
            if not (isinstance(va, Expr) and isinstance(vb, Expr)):
                return False
            na, nb, d = dict(ea), dict(eb), depth
            for bfield in binds.get(f.name, ()):
                na[getattr(a, bfield)] = d
                nb[getattr(b, bfield)] = d
                d += 1
            if not _alpha(va, vb, na, nb, d):
                return False
        elif f.name in _binder_fields(type(a)):
            continue
        elif va != vb:
            return False
    return True


def _binder_fields(cls) -> frozenset[str]:
    return frozenset(b for bs in cls.BINDS.values() for b in bs)


# ------------------------------------------------------------------ reduction


class ConversionFuel(Exception):
    pass


class _Fuel:
    def __init__(self, n: int):
        self.n = n

    def tick(self) -> None:
        self.n -= 1
        if self.n < 0:
            raise ConversionFuel("conversion fuel exhausted")


def whnf(e: Expr, fuel: _Fuel | None = None) -> Expr:
    fuel = fuel or _Fuel(hao.default_fuel())
    while True:
        match e:
            case The(_, t):
                e = t
                continue
            case App(f, a):
                f2 = whnf(f, fuel)
                if isinstance(f2, Lam):
                    fuel.tick()
                    e = subst(f2.body, {f2.x: a})
                    continue
                if isinstance(f2, PLam):
                    fuel.tick()
                    e = subst(f2.body, {f2.x: a})
                    continue
                return App(f2, a) if f2 is not f else e
            case Fst(p) | Snd(p):
                p2 = whnf(p, fuel)
                if isinstance(p2, Pair):
                    fuel.tick()
                    e = p2.left if isinstance(e, Fst) else p2.right
                    continue
                return type(e)(p2)
            case Case(s, x, l, y, r):
                s2 = whnf(s, fuel)
                if isinstance(s2, Inl):
                    fuel.tick()
                    e = subst(l, {x: s2.value})
                    continue
                if isinstance(s2, Inr):
                    fuel.tick()
                    e = subst(r, {y: s2.value})
                    continue
                return Case(s2, x, l, y, r)
            case NatRec(x, c, z, n, ih, st, t):
                t2 = whnf(t, fuel)
                if isinstance(t2, Zero):
                    fuel.tick()
                    e = z
                    continue
                if isinstance(t2, Succ):
                    fuel.tick()
                    e = subst(st, {n: t2.pred, ih: NatRec(x, c, z, n, ih, st, t2.pred)})
                    continue
                return NatRec(x, c, z, n, ih, st, t2)
            case IdPeel(q, x, c, d):
                q2 = whnf(q, fuel)
                if isinstance(q2, Refl):
                    fuel.tick()
                    e = d
                    continue
                return IdPeel(q2, x, c, d)
            case ExistsElim(s, x, h, body):
                s2 = whnf(s, fuel)
                if isinstance(s2, Pair):
                    fuel.tick()
                    e = subst(body, {x: s2.left, h: s2.right})
                    continue
                return ExistsElim(s2, x, h, body)
            case TruncElim(s, x, body):
                s2 = whnf(s, fuel)
                if isinstance(s2, TruncIntro):
                    fuel.tick()
                    e = subst(body, {x: s2.value})
                    continue
                return TruncElim(s2, x, body)
        return e


def nf(e: Expr, fuel: _Fuel | None = None) -> Expr:
    fuel = fuel or _Fuel(hao.default_fuel())
    w = whnf(e, fuel)
    changes = {}
    for fname, v, _ in _parts(w):
        n = nf(v, fuel)
        if n is not v:
            changes[fname] = n
    if isinstance(w, The):
        return nf(w.term, fuel)
    if isinstance(w, Lam) and w.ann is not None:
        # annotations are erased by conversion
        changes["ann"] = None
    if not changes:
        return w
    return type(w)(**{f.name: changes.get(f.name, getattr(w, f.name)) for f in fields(w)})


def conv(a: Expr, b: Expr, fuel: int | None = None) -> bool:
    f = _Fuel(fuel if fuel is not None else hao.default_fuel())
    if alpha_eq(a, b):
        return True
    return alpha_eq(nf(a, f), nf(b, f))


# ----------------------------------------------------------------- desugaring


def desugar(e: Expr) -> Expr:
    """Propositions-as-types reading of the proposition formers."""
    match e:
        case ForallP(x, d, c):
            return Pi(x, desugar(d), desugar(c))
        case ExistsP(x, d, c):
            return Sigma(x, desugar(d), desugar(c))
        case ImpP(a, b):
            return Pi("_", desugar(a), desugar(b))
        case AndP(a, b):
            return Sigma("_", desugar(a), desugar(b))
        case OrP(a, b):
            return Sum(desugar(a), desugar(b))
        case FalseP():
            return EMPTY
        case EqP(t, a, b):
            return Id(desugar(t), desugar(a), desugar(b))
    changes = {fname: desugar(v) for fname, v, _ in _parts(e)}
    if not changes:
        return e
    return type(e)(**{f.name: changes.get(f.name, getattr(e, f.name)) for f in fields(e)})


def uniqueness_type(x: str, dom: Expr, body: Expr) -> Expr:
    avoid = free_vars(body) | free_vars(dom) | {x}
    y1 = fresh(x + "1", avoid)
    y2 = fresh(x + "2", avoid | {y1})
    both = times(subst(body, {x: Var(y1)}), subst(body, {x: Var(y2)}))
    return Pi(y1, dom, Pi(y2, dom, arrow(both, Id(dom, Var(y1), Var(y2)))))


# --------------------------------------------------------------------- errors


class TypeCheckError(Exception):
    kind = "type-error"

    def __init__(self, message: str):
        super().__init__(f"{self.kind}: {message}")
        self.message = message


class SortViolation(TypeCheckError):
    kind = "sort-violation"

    def __init__(self, eliminator: str, motive: Expr, motive_sort: Sort, message: str):
        super().__init__(message)
        self.eliminator = eliminator
        self.motive = motive
        self.motive_sort = motive_sort


class ConversionError(TypeCheckError):
    kind = "conversion"


class ModeUnavailable(TypeCheckError):
    kind = "mode-unavailable"


def _show(e) -> str:
    from .syntax import print_dtt
    try:
        return print_dtt(e)
    except Exception:  # printing must never mask the real diagnostic
        return repr(e)


# -------------------------------------------------------------------- checker


class Checker:
    def __init__(self, mode: SortMode, fuel: int | None = None):
        self.mode = mode
        self.fuel = fuel if fuel is not None else hao.default_fuel()

    # helpers

    def whnf(self, e: Expr) -> Expr:
        try:
            return whnf(e, _Fuel(self.fuel))
        except ConversionFuel as err:
            raise TypeCheckError(str(err)) from None

    def conv(self, a: Expr, b: Expr) -> bool:
        try:
            return conv(a, b, self.fuel)
        except ConversionFuel as err:
            raise TypeCheckError(str(err)) from None

    def bind(self, ctx, x: str, ty, *avoid_in: Expr) -> tuple[dict, str, dict]:
        """Extend ``ctx`` with ``x``, renaming it when it would shadow."""
        if x == "_" or x in ctx:
            avoid = set(ctx) | set().union(*(free_vars(a) for a in avoid_in))
            y = fresh(x, avoid)
            return {**ctx, y: ty}, y, {x: Var(y)}
        return {**ctx, x: ty}, x, {}

    def gate(self, ctx, motive: Expr, eliminator: str, what: str) -> None:
        s = self.sort(ctx, motive)
        if not s <= Sort.PROP:
            raise SortViolation(
                eliminator, motive, s,
                f"{eliminator} eliminates {what} towards {_show(motive)} of sort {s.value}; "
                f"it may only target propositions")

    # sorts

    def sort(self, ctx, a: Expr) -> Sort:
        a = self.whnf(a)
        match a:
            case Nat():
                return Sort.SET
            case Empty() | Unit() | FalseP():
                return Sort.PROPS
            case PowUnit():
                if self.mode is not EMTT:
                    raise ModeUnavailable("PowUnit is only available in emtt mode")
                return Sort.COLL
            case Props():
                if self.mode is not MTT:
                    raise ModeUnavailable("props is only available in mtt mode")
                return Sort.COLL
            case Pi(x, d, c):
                sd = self.sort(ctx, d)
                ctx2, _, ren = self.bind(ctx, x, d, c)
                sc = self.sort(ctx2, subst(c, ren))
                if sc <= Sort.PROP:
                    return Sort.PROPS if sd <= Sort.SET and sc is Sort.PROPS else Sort.PROP
                return Sort.SET if sd <= Sort.SET and sc <= Sort.SET else Sort.COLL
            case Sigma(x, d, c):
                sd = self.sort(ctx, d)
                ctx2, _, ren = self.bind(ctx, x, d, c)
                sc = self.sort(ctx2, subst(c, ren))
                if sd <= Sort.PROP and sc <= Sort.PROP:
                    return Sort.PROPS if sd is sc is Sort.PROPS else Sort.PROP
                return Sort.SET if sd <= Sort.SET and sc <= Sort.SET else Sort.COLL
            case ForallP(x, d, c) | ExistsP(x, d, c) | Unique(x, d, c):
                sd = self.sort(ctx, d)
                ctx2, _, ren = self.bind(ctx, x, d, c)
                sc = self.sort(ctx2, subst(c, ren))
                if not sc <= Sort.PROP:
                    raise TypeCheckError(
                        f"body of {type(a).__name__.lower()} must be a proposition, "
                        f"{_show(c)} has sort {sc.value}")
                return Sort.PROPS if sd <= Sort.SET and sc is Sort.PROPS else Sort.PROP
            case ImpP(l, r) | AndP(l, r) | OrP(l, r):
                sl, sr = self.sort(ctx, l), self.sort(ctx, r)
                for side, s in ((l, sl), (r, sr)):
                    if not s <= Sort.PROP:
                        raise TypeCheckError(f"{_show(side)} has sort {s.value}, expected a proposition")
                return Sort.PROPS if sl is sr is Sort.PROPS else Sort.PROP
            case Sum(l, r):
                sl, sr = self.sort(ctx, l), self.sort(ctx, r)
                return Sort.SET if sl <= Sort.SET and sr <= Sort.SET else Sort.COLL
            case Id(t, l, r) | EqP(t, l, r):
                st = self.sort(ctx, t)
                self.check(ctx, l, t)
                self.check(ctx, r, t)
                return Sort.PROPS if st <= Sort.SET else Sort.PROP
            case Trunc(t):
                return Sort.PROPS if self.sort(ctx, t) <= Sort.SET else Sort.PROP
        head, args = _spine(a)
        if isinstance(head, Var) and isinstance(ctx.get(head.name), Family):
            fam = ctx[head.name]
            if len(args) != len(fam.params):
                raise TypeCheckError(
                    f"family {head.name} expects {len(fam.params)} arguments, got {len(args)}")
            for arg, p in zip(args, fam.params):
                self.check(ctx, arg, p)
            return fam.sort
        try:
            t = self.whnf(self.infer(ctx, a))
        except TypeCheckError:
            raise TypeCheckError(f"{_show(a)} is not a type") from None
        if isinstance(t, (PowUnit, Props)):
            return Sort.PROPS
        raise TypeCheckError(f"{_show(a)} is a term of {_show(t)}, not a type")

    def is_proposition_type(self, ctx, a: Expr) -> bool:
        w = self.whnf(a)
        if isinstance(w, Unit):
            return False
        return self.sort(ctx, a) <= Sort.PROP

    def canonically_true(self, ctx, a: Expr) -> bool:
        a = self.whnf(a)
        match a:
            case Unit():
                return True
            case EqP(_, l, r) | Id(_, l, r):
                return self.conv(l, r)
            case AndP(l, r):
                return self.canonically_true(ctx, l) and self.canonically_true(ctx, r)
            case OrP(l, r):
                return self.canonically_true(ctx, l) or self.canonically_true(ctx, r)
            case ImpP(l, r):
                return (self.canonically_true(ctx, r) or self.conv(l, r)
                        or isinstance(self.whnf(l), (FalseP, Empty)))
            case ForallP(x, d, c) | Pi(x, d, c):
                ctx2, _, ren = self.bind(ctx, x, d, c)
                return self.canonically_true(ctx2, subst(c, ren))
            case Trunc(t):
                return self.canonically_true(ctx, t)
        return False

    # checking

    def check(self, ctx, e: Expr, a: Expr) -> None:
        aw = self.whnf(a)
        if (self.mode is EMTT and not isinstance(e, TrueC)
                and not isinstance(aw, (PowUnit, Props)) and self.is_proposition_type(ctx, aw)):
            raise TypeCheckError(
                f"emtt checks formation judgements only; the proof {_show(e)} of "
                f"{_show(aw)} is not checked (only true is accepted)")
        match e:
            case TrueC():
                if isinstance(aw, Unit):
                    return
                if self.mode is EMTT and self.is_proposition_type(ctx, aw):
                    if self.canonically_true(ctx, aw):
                        return
                    raise TypeCheckError(f"{_show(aw)} is not canonically true")
                raise TypeCheckError(f"true does not inhabit {_show(aw)} in {self.mode.value} mode")
            case Lam(x, ann, body):
                match aw:
                    case Pi(y, d, c) | ForallP(y, d, c):
                        pass
                    case ImpP(d, c):
                        y = None
                    case _:
                        raise TypeCheckError(f"lambda checked against non-function {_show(aw)}")
                if ann is not None:
                    self.sort(ctx, ann)
                    if not self.conv(ann, d):
                        raise ConversionError(f"binder annotation {_show(ann)} differs from {_show(d)}")
                ctx2, x2, ren = self.bind(ctx, x, d, body, aw)
                cod = subst(c, {y: Var(x2)}) if y is not None else c
                self.check(ctx2, subst(body, ren), cod)
                return
            case Pair(l, r):
                match aw:
                    case Sigma(y, d, c) | ExistsP(y, d, c):
                        self.check(ctx, l, d)
                        self.check(ctx, r, subst(c, {y: l}))
                        return
                    case AndP(p, q):
                        self.check(ctx, l, p)
                        self.check(ctx, r, q)
                        return
                    case Unique(y, d, c):
                        self.check(ctx, l, Sigma(y, d, c))
                        self.check(ctx, r, uniqueness_type(y, d, c))
                        return
                raise TypeCheckError(f"pair checked against {_show(aw)}")
            case Inl(v) | Inr(v):
                if not isinstance(aw, (Sum, OrP)):
                    raise TypeCheckError(f"injection checked against {_show(aw)}")
                self.check(ctx, v, aw.left if isinstance(e, Inl) else aw.right)
                return
            case Case(s, x, l, y, r):
                ts = self.whnf(self.infer(ctx, s))
                if not isinstance(ts, (Sum, OrP)):
                    raise TypeCheckError(f"case on {_show(s)} : {_show(ts)}, not a sum")
                if isinstance(ts, OrP):
                    self.gate(ctx, aw, "case", "a disjunction")
                ctx2, _, ren = self.bind(ctx, x, ts.left, l, aw)
                self.check(ctx2, subst(l, ren), aw)
                ctx3, _, ren = self.bind(ctx, y, ts.right, r, aw)
                self.check(ctx3, subst(r, ren), aw)
                return
            case Absurd(s):
                ts = self.whnf(self.infer(ctx, s))
                if isinstance(ts, FalseP):
                    self.gate(ctx, aw, "absurd", "falsum")
                elif not isinstance(ts, Empty):
                    raise TypeCheckError(f"absurd on {_show(ts)}")
                return
            case ExistsElim(s, x, h, body):
                d, c = self._exists_parts(ctx, s, aw)
                self._exists_body_check(ctx, x, h, d, c, body, aw)
                return
            case TruncIntro(v):
                if not isinstance(aw, Trunc):
                    raise TypeCheckError(f"truncation intro checked against {_show(aw)}")
                self.check(ctx, v, aw.ty)
                return
            case TruncElim(s, x, body):
                ts = self.whnf(self.infer(ctx, s))
                if not isinstance(ts, Trunc):
                    raise TypeCheckError(f"trunc-elim on {_show(ts)}, not a truncation")
                self.gate(ctx, aw, "trunc-elim", "a truncation")
                ctx2, _, ren = self.bind(ctx, x, ts.ty, body, aw)
                self.check(ctx2, subst(body, ren), aw)
                return
            case Refl(t):
                if isinstance(aw, (Id, EqP)):
                    self.check(ctx, t, aw.ty)
                    if not (self.conv(t, aw.lhs) and self.conv(t, aw.rhs)):
                        raise ConversionError(
                            f"refl {_show(t)} does not prove {_show(aw)}: sides are not convertible")
                    return
        if isinstance(aw, (PowUnit, Props)):
            self.sort(ctx, aw)
            s = self.sort(ctx, e)
            if s is not Sort.PROPS:
                raise TypeCheckError(f"{_show(e)} has sort {s.value}, not a small proposition")
            return
        got = self.infer(ctx, e)
        if not self.conv(got, aw):
            raise ConversionError(f"{_show(e)} has type {_show(got)}, expected {_show(aw)}")

    def _exists_parts(self, ctx, s, motive):
        ts = self.whnf(self.infer(ctx, s))
        if isinstance(ts, ExistsP):
            if motive is not None:
                self.gate(ctx, motive, "exists-elim", "an existential")
        elif not isinstance(ts, Sigma):
            raise TypeCheckError(f"exists-elim on {_show(ts)}")
        return ts.dom, Lam(ts.x, None, ts.cod)

    def _exists_body_check(self, ctx, x, h, d, fam, body, aw):
        ctx2, x2, ren = self.bind(ctx, x, d, body, aw)
        hyp_ty = subst(fam.body, {fam.x: Var(x2)})
        body = subst(body, ren)
        ctx3, _, ren2 = self.bind(ctx2, h, hyp_ty, body, aw)
        self.check(ctx3, subst(body, ren2), aw)

    # inference

    def infer(self, ctx, e: Expr) -> Expr:
        match e:
            case Var(name):
                entry = ctx.get(name)
                if entry is None:
                    raise TypeCheckError(f"unbound variable {name}")
                if isinstance(entry, Family):
                    raise TypeCheckError(f"family {name} used as a term")
                return entry
            case The(t, v):
                self.sort(ctx, t)
                self.check(ctx, v, t)
                return t
            case App(f, a):
                tf = self.whnf(self.infer(ctx, f))
                match tf:
                    case Pi(x, d, c) | ForallP(x, d, c):
                        self.check(ctx, a, d)
                        return subst(c, {x: a})
                    case ImpP(d, c):
                        self.check(ctx, a, d)
                        return c
                raise TypeCheckError(f"{_show(f)} : {_show(tf)} is not a function")
            case Fst(p) | Snd(p):
                tp = self.whnf(self.infer(ctx, p))
                name = "fst" if isinstance(e, Fst) else "snd"
                match tp:
                    case Sigma(x, d, c):
                        return d if name == "fst" else subst(c, {x: Fst(p)})
                    case AndP(l, r):
                        return l if name == "fst" else r
                    case Unique(x, d, c):
                        return Sigma(x, d, c) if name == "fst" else uniqueness_type(x, d, c)
                    case ExistsP(x, d, c):
                        s = self.sort(ctx, d)
                        raise SortViolation(
                            name, d, s,
                            f"{name} applied to a proof of the proposition {_show(tp)}: the motive "
                            f"{_show(d)} has sort {s.value}, but propositions eliminate only "
                            f"towards propositions")
                raise TypeCheckError(f"{name} of {_show(p)} : {_show(tp)}, not a pair type")
            case Lam(x, ann, body) if ann is not None:
                self.sort(ctx, ann)
                ctx2, x2, ren = self.bind(ctx, x, ann, body)
                return Pi(x2, ann, self.infer(ctx2, subst(body, ren)))
            case Pair(a, b):
                # synthesised pairs are non-dependent; dependent ones need (the A e)
                return times(self.infer(ctx, a), self.infer(ctx, b))
            case Zero():
                return NAT
            case Succ(n):
                self.check(ctx, n, NAT)
                return NAT
            case NatRec(x, c, z, n, ih, st, t):
                ctx_x, x2, ren = self.bind(ctx, x, NAT, c)
                motive = subst(c, ren)
                self.sort(ctx_x, motive)
                at = lambda v: subst(motive, {x2: v})
                self.check(ctx, z, at(ZERO))
                ctx_n, n2, ren_n = self.bind(ctx, n, NAT, st, c)
                ctx_ih, _, ren_ih = self.bind(ctx_n, ih, at(Var(n2)), st, c)
                self.check(ctx_ih, subst(st, {**ren_n, **ren_ih}), at(Succ(Var(n2))))
                self.check(ctx, t, NAT)
                return at(t)
            case Refl(t):
                return Id(self.infer(ctx, t), t, t)
            case IdPeel(q, x, c, d):
                tq = self.whnf(self.infer(ctx, q))
                if not isinstance(tq, (Id, EqP)):
                    raise TypeCheckError(f"idpeel on {_show(tq)}, not an identity")
                ctx_x, x2, ren = self.bind(ctx, x, tq.ty, c)
                motive = subst(c, ren)
                self.sort(ctx_x, motive)
                if self.mode is not MLTT:
                    self.gate(ctx_x, motive, "idpeel", "an identity proof")
                self.check(ctx, d, subst(motive, {x2: tq.lhs}))
                return subst(motive, {x2: tq.rhs})
            case PLam(x, d, body):
                if self.mode is MLTT:
                    raise ModeUnavailable("propositional functions need mtt or emtt mode")
                sd = self.sort(ctx, d)
                if not sd <= Sort.SET:
                    raise TypeCheckError(f"domain {_show(d)} of a propositional function must be a set")
                ctx2, x2, ren = self.bind(ctx, x, d, body)
                s = self.sort(ctx2, subst(body, ren))
                if s is not Sort.PROPS:
                    raise TypeCheckError(f"{_show(body)} has sort {s.value}, not a small proposition")
                return Pi(x, d, POWUNIT if self.mode is EMTT else PROPS_COLL)
            case TruncElim(s, x, body):
                ts = self.whnf(self.infer(ctx, s))
                if not isinstance(ts, Trunc):
                    raise TypeCheckError(f"trunc-elim on {_show(ts)}, not a truncation")
                ctx2, x2, ren = self.bind(ctx, x, ts.ty, body)
                tb = self.infer(ctx2, subst(body, ren))
                if x2 in free_vars(tb):
                    raise TypeCheckError("trunc-elim motive may not depend on the unpacked value")
                self.gate(ctx, tb, "trunc-elim", "a truncation")
                return tb
            case ExistsElim(s, x, h, body):
                d, fam = self._exists_parts(ctx, s, None)
                ctx2, x2, ren = self.bind(ctx, x, d, body)
                body = subst(body, ren)
                ctx3, h2, ren2 = self.bind(ctx2, h, subst(fam.body, {fam.x: Var(x2)}), body)
                tb = self.infer(ctx3, subst(body, ren2))
                if {x2, h2} & free_vars(tb):
                    raise TypeCheckError("exists-elim result type depends on the unpacked witness")
                if isinstance(self.whnf(self.infer(ctx, s)), ExistsP):
                    self.gate(ctx, tb, "exists-elim", "an existential")
                return tb
        raise TypeCheckError(f"cannot infer a type for {_show(e)}; annotate it with (the A e)")


def _spine(e: Expr) -> tuple[Expr, list[Expr]]:
    args = []
    while isinstance(e, App):
        args.append(e.arg)
        e = e.fun
    return e, args[::-1]


# ------------------------------------------------------------------ public API


def _prepare(mode: SortMode, ctx: Context | None, *es: Expr):
    ctx = dict(ctx or {})
    if mode is MLTT:
        ctx = {k: (desugar(v) if isinstance(v, Expr) else Family(tuple(desugar(p) for p in v.params), v.sort))
               for k, v in ctx.items()}
        es = tuple(desugar(e) for e in es)
    return ctx, es


def classify(mode: SortMode, ctx: Context | None, a: Expr, fuel: int | None = None) -> Sort:
    ctx, (a,) = _prepare(mode, ctx, a)
    s = Checker(mode, fuel).sort(ctx, a)
    return Sort.SET if mode is MLTT else s


def check(mode: SortMode, ctx: Context | None, e: Expr, a: Expr, fuel: int | None = None) -> None:
    """Raise TypeCheckError unless ``e : a`` in ``ctx``; ``a`` must be well formed."""
    ctx, (e, a) = _prepare(mode, ctx, e, a)
    c = Checker(mode, fuel)
    c.sort(ctx, a)
    c.check(ctx, e, a)


def infer(mode: SortMode, ctx: Context | None, e: Expr, fuel: int | None = None) -> Expr:
    ctx, (e,) = _prepare(mode, ctx, e)
    return Checker(mode, fuel).infer(ctx, e)


def lem_type(mode: SortMode, a: Expr, ctx: Context | None = None) -> Expr:
    """Excluded middle for ``a``: a sum type in MLTT, a disjunction of propositions otherwise."""
    if mode is MLTT:
        classify(mode, ctx, a)
        return Sum(a, arrow(a, EMPTY))
    s = classify(mode, ctx, a)
    if not s <= Sort.PROP:
        raise TypeCheckError(f"excluded middle needs a proposition; {_show(a)} has sort {s.value}")
    return OrP(a, ImpP(a, FALSEP))
