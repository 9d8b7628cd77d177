"""Natural-deduction proof checking for many-sorted intuitionistic logic over HA^omega.

Proofs are checked bidirectionally: introduction forms are checked against a
goal, elimination forms infer the formula they prove. ``Ann`` turns any proof
into an inferable one.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping

from . import hao
from .hao import FiniteType, N, Arrow, Term


# ------------------------------------------------------------------- formulas


class Formula:
    __slots__ = ()


@dataclass(frozen=True)
class Falsum(Formula):
    pass


FALSE = Falsum()


@dataclass(frozen=True)
class Eq(Formula):
    ty: FiniteType
    lhs: Term
    rhs: Term


@dataclass(frozen=True)
class And(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Or(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Imp(Formula):
    left: Formula
    right: Formula


@dataclass(frozen=True)
class Forall(Formula):
    var: str
    ty: FiniteType
    body: Formula


@dataclass(frozen=True)
class Exists(Formula):
    var: str
    ty: FiniteType
    body: Formula


Quantifier = Forall | Exists


def Not(f: Formula) -> Formula:
    return Imp(f, FALSE)


def Iff(a: Formula, b: Formula) -> Formula:
    return And(Imp(a, b), Imp(b, a))


def free_vars(f: Formula) -> frozenset[str]:
    match f:
        case Falsum():
            return frozenset()
        case Eq(_, a, b):
            return hao.free_vars(a) | hao.free_vars(b)
        case And(a, b) | Or(a, b) | Imp(a, b):
            return free_vars(a) | free_vars(b)
        case Forall(x, _, body) | Exists(x, _, body):
            return free_vars(body) - {x}
    raise TypeError(f"not a formula: {f!r}")


def fresh(base: str, avoid) -> str:
    """Prime-suffixed variant of ``base`` not in ``avoid``."""
    name = base
    while name in avoid:
        name += "'"
    return name


def subst(f: Formula, mapping: Mapping[str, Term]) -> Formula:
    """Capture-avoiding simultaneous substitution of terms for variables."""
    if not mapping:
        return f
    match f:
        case Falsum():
            return f
        case Eq(ty, a, b):
            return Eq(ty, hao.subst(a, mapping), hao.subst(b, mapping))
        case And(a, b):
            return And(subst(a, mapping), subst(b, mapping))
        case Or(a, b):
            return Or(subst(a, mapping), subst(b, mapping))
        case Imp(a, b):
            return Imp(subst(a, mapping), subst(b, mapping))
        case Forall(x, ty, body) | Exists(x, ty, body):
            inner = {k: v for k, v in mapping.items() if k != x}
            if not inner:
                return f
            fv_body = free_vars(body)
            inner = {k: v for k, v in inner.items() if k in fv_body}
            if not inner:
                return f
            repl_fv = frozenset().union(*(hao.free_vars(v) for v in inner.values()))
            if x in repl_fv:
                y = fresh(x, repl_fv | fv_body | inner.keys())
                inner[x] = hao.Var(y)
                x = y
            return type(f)(x, ty, subst(body, inner))
    raise TypeError(f"not a formula: {f!r}")


def instantiate(q: Quantifier, t: Term) -> Formula:
    return subst(q.body, {q.var: t})


def alpha_equal(f: Formula, g: Formula) -> bool:
    return _conv(f, g, {}, {}, 0, None)


def convertible(f: Formula, g: Formula, fuel: int | None = None) -> bool:
    """Equality up to renaming of bound variables and def_equal on terms."""
    return _conv(f, g, {}, {}, 0, fuel if fuel is not None else hao.default_fuel())


def _rename_term(t: Term, env: dict[str, int]) -> Term:
    return hao.subst(t, {k: hao.Var(f"#{v}") for k, v in env.items()}) if env else t


def _conv(f, g, ef, eg, depth, fuel) -> bool:
    if type(f) is not type(g):
        return False
    match f:
        case Falsum():
            return True
        case Eq(ty, a, b):
            if ty != g.ty:
                return False
            pairs = ((_rename_term(a, ef), _rename_term(g.lhs, eg)),
                     (_rename_term(b, ef), _rename_term(g.rhs, eg)))
            if fuel is None:
                return all(x == y for x, y in pairs)
            return all(hao.def_equal(x, y, fuel) for x, y in pairs)
        case And(a, b) | Or(a, b) | Imp(a, b):
            return _conv(a, g.left, ef, eg, depth, fuel) and _conv(b, g.right, ef, eg, depth, fuel)
        case Forall(x, ty, body) | Exists(x, ty, body):
            if ty != g.ty:
                return False
            return _conv(body, g.body, {**ef, x: depth}, {**eg, g.var: depth}, depth + 1, fuel)
    raise TypeError(f"not a formula: {f!r}")


def expand_exists_unique(var: str, ty: FiniteType, phi: Formula) -> Formula:
    """``exists! var:ty. phi`` as existence plus uniqueness.

    The two uniqueness variables are fresh for ``phi``; nested occurrences are
    expected to be expanded already (the parser expands innermost first).
    """
    avoid = free_vars(phi) | {var}
    y1 = fresh(var + "1", avoid)
    y2 = fresh(var + "2", avoid | {y1})
    uniq = Forall(y1, ty, Forall(y2, ty, Imp(
        And(subst(phi, {var: hao.Var(y1)}), subst(phi, {var: hao.Var(y2)})),
        Eq(ty, hao.Var(y1), hao.Var(y2)))))
    return And(Exists(var, ty, phi), uniq)


def match_exists_unique(f: Formula) -> tuple[str, FiniteType, Formula] | None:
    """Inverse of :func:`expand_exists_unique` up to alpha-equivalence."""
    if not (isinstance(f, And) and isinstance(f.left, Exists)):
        return None
    ex = f.left
    if alpha_equal(f, expand_exists_unique(ex.var, ex.ty, ex.body)):
        return ex.var, ex.ty, ex.body
    return None


class FormulaError(Exception):
    pass


def check_formula(ctx: Mapping[str, FiniteType], f: Formula) -> None:
    """Raise FormulaError unless every term in ``f`` is typed at its annotated sort."""
    match f:
        case Falsum():
            return
        case Eq(ty, a, b):
            for side in (a, b):
                try:
                    got = hao.infer_type(ctx, side)
                except hao.HaoTypeError as e:
                    raise FormulaError(str(e)) from None
                if got != ty:
                    raise FormulaError(f"term {_show(side)} has type {_show(got)}, equation is at {_show(ty)}")
        case And(a, b) | Or(a, b) | Imp(a, b):
            check_formula(ctx, a)
            check_formula(ctx, b)
        case Forall(x, ty, body) | Exists(x, ty, body):
            check_formula({**ctx, x: ty}, body)
        case _:
            raise FormulaError(f"not a formula: {f!r}")


# -------------------------------------------------------------------- proofs


class Proof:
    __slots__ = ()


@dataclass(frozen=True)
class Hyp(Proof):
    label: str


@dataclass(frozen=True)
class Use(Proof):
    """Cite an earlier checked lemma by name."""
    name: str


@dataclass(frozen=True)
class Ann(Proof):
    formula: Formula
    proof: Proof


@dataclass(frozen=True)
class AndI(Proof):
    left: Proof
    right: Proof


@dataclass(frozen=True)
class AndE1(Proof):
    proof: Proof


@dataclass(frozen=True)
class AndE2(Proof):
    proof: Proof


@dataclass(frozen=True)
class OrI1(Proof):
    proof: Proof


@dataclass(frozen=True)
class OrI2(Proof):
    proof: Proof


@dataclass(frozen=True)
class OrE(Proof):
    proof: Proof
    left_label: str
    left: Proof
    right_label: str
    right: Proof


@dataclass(frozen=True)
class ImpI(Proof):
    label: str
    body: Proof


@dataclass(frozen=True)
class ImpE(Proof):
    fun: Proof
    arg: Proof


@dataclass(frozen=True)
class ForallI(Proof):
    var: str
    body: Proof


@dataclass(frozen=True)
class ForallE(Proof):
    proof: Proof
    term: Term


@dataclass(frozen=True)
class ExistsI(Proof):
    witness: Term
    proof: Proof


@dataclass(frozen=True)
class ExistsE(Proof):
    proof: Proof
    var: str
    label: str
    body: Proof


@dataclass(frozen=True)
class FalseE(Proof):
    proof: Proof


@dataclass(frozen=True)
class Refl(Proof):
    term: Term


@dataclass(frozen=True)
class EqSubst(Proof):
    """From ``e : a = b`` and ``base : motive[a/var]`` conclude ``motive[b/var]``."""
    var: str
    ty: FiniteType
    motive: Formula
    eq: Proof
    base: Proof


@dataclass(frozen=True)
class Axiom(Proof):
    name: str
    args: tuple = ()


@dataclass(frozen=True)
class Induction(Proof):
    """Concludes ``forall var:N. motive`` from the base case and a labelled step."""
    var: str
    motive: Formula
    base: Proof
    pred: str
    label: str
    step: Proof


@dataclass(frozen=True)
class Lem(Proof):
    formula: Formula


@dataclass(frozen=True)
class Irc(Proof):
    proof: Proof


def children(p: Proof) -> tuple[Proof, ...]:
    return tuple(getattr(p, f) for f in p.__dataclass_fields__ if isinstance(getattr(p, f), Proof))


def iter_nodes(p: Proof):
    yield p
    for c in children(p):
        yield from iter_nodes(c)


def free_hyps(p: Proof) -> frozenset[str]:
    match p:
        case Hyp(label):
            return frozenset([label])
        case OrE(q, l1, a, l2, b):
            return free_hyps(q) | (free_hyps(a) - {l1}) | (free_hyps(b) - {l2})
        case ImpI(label, body):
            return free_hyps(body) - {label}
        case ExistsE(q, _, label, body):
            return free_hyps(q) | (free_hyps(body) - {label})
        case Induction(_, _, base, _, label, st):
            return free_hyps(base) | (free_hyps(st) - {label})
    return frozenset().union(*(free_hyps(c) for c in children(p)))


# ------------------------------------------------------------------- profiles


@dataclass(frozen=True)
class AxiomProfile:
    lem: bool = False
    ac: bool = False
    ac_bang: bool = False
    irc_nn: bool = False
    # experiments only: iRC! at every pair of finite types
    irc_any: bool = field(default=False, repr=False)

    FLAG_NAMES = {"lem": "lem", "ac": "ac", "ac!": "ac_bang", "irc!": "irc_nn",
                  "irc": "irc_nn", "irc_nn": "irc_nn", "ac_bang": "ac_bang",
                  "irc-any": "irc_any"}

    def with_flags(self, **flags: bool) -> AxiomProfile:
        return replace(self, **flags)

    def issubset(self, other: AxiomProfile) -> bool:
        return all(not getattr(self, k) or getattr(other, k)
                   for k in ("lem", "ac", "ac_bang", "irc_nn", "irc_any"))

    @classmethod
    def from_names(cls, names) -> AxiomProfile:
        flags = {}
        for n in names:
            try:
                flags[cls.FLAG_NAMES[n]] = True
            except KeyError:
                raise ValueError(f"unknown profile flag {n!r}") from None
        return cls(**flags)

    def apply_overrides(self, overrides: str) -> AxiomProfile:
        """Apply ``+lem,-irc`` style overrides."""
        flags = {}
        for item in filter(None, (s.strip() for s in overrides.split(","))):
            sign, name = (item[0], item[1:]) if item[0] in "+-" else ("+", item)
            if name not in self.FLAG_NAMES:
                raise ValueError(f"unknown profile flag {name!r}")
            flags[self.FLAG_NAMES[name]] = sign == "+"
        return replace(self, **flags)

    def names(self) -> list[str]:
        out = [n for n, attr in (("lem", "lem"), ("ac", "ac"), ("ac!", "ac_bang"),
                                 ("irc!", "irc_nn")) if getattr(self, attr)]
        if self.irc_any:
            out.append("irc-any")
        return out


INTUITIONISTIC = AxiomProfile()


# --------------------------------------------------------------------- axioms


def _v(name: str) -> Term:
    return hao.Var(name)


def _axiom_formula(name: str, args: tuple, profile: AxiomProfile) -> Formula:
    match name, args:
        case "succ-ne-zero", ():
            return Forall("x", N, Not(Eq(N, hao.Ap(hao.SUCC, _v("x")), hao.ZERO)))
        case "succ-inj", ():
            return Forall("x", N, Forall("y", N, Imp(
                Eq(N, hao.Ap(hao.SUCC, _v("x")), hao.Ap(hao.SUCC, _v("y"))),
                Eq(N, _v("x"), _v("y")))))
        case "k-def", (s, t):
            return Forall("x", s, Forall("y", t, Eq(s, hao.ap(hao.K(s, t), _v("x"), _v("y")), _v("x"))))
        case "s-def", (s, t, r):
            x, y, z = _v("x"), _v("y"), _v("z")
            return Forall("x", hao.arrows(s, t, r), Forall("y", Arrow(s, t), Forall("z", s, Eq(
                r, hao.ap(hao.S(s, t, r), x, y, z), hao.Ap(hao.Ap(x, z), hao.Ap(y, z))))))
        case "rec-zero", (s,):
            return Forall("a", s, Forall("f", hao.arrows(N, s, s), Eq(
                s, hao.ap(hao.Rec(s), _v("a"), _v("f"), hao.ZERO), _v("a"))))
        case "rec-succ", (s,):
            a, f, n = _v("a"), _v("f"), _v("n")
            return Forall("a", s, Forall("f", hao.arrows(N, s, s), Forall("n", N, Eq(
                s, hao.ap(hao.Rec(s), a, f, hao.Ap(hao.SUCC, n)),
                hao.ap(f, n, hao.ap(hao.Rec(s), a, f, n))))))
        case "fst-def", (s, t):
            return Forall("x", s, Forall("y", t, Eq(
                s, hao.Ap(hao.Fst(s, t), hao.ap(hao.Pair(s, t), _v("x"), _v("y"))), _v("x"))))
        case "snd-def", (s, t):
            return Forall("x", s, Forall("y", t, Eq(
                t, hao.Ap(hao.Snd(s, t), hao.ap(hao.Pair(s, t), _v("x"), _v("y"))), _v("y"))))
        case "ac", (s, t, x, y, phi):
            if not profile.ac:
                raise _Gate("AC disabled in this profile")
            return _choice_formula(s, t, x, y, phi, Exists(y, t, phi))
        case "ac!", (s, t, x, y, phi):
            if not profile.ac_bang:
                raise _Gate("AC! disabled in this profile")
            return _choice_formula(s, t, x, y, phi, expand_exists_unique(y, t, phi))
    raise _Gate(f"unknown axiom {name!r} or bad instantiation ({len(args)} arguments)")


def _choice_formula(s, t, x, y, phi, inner) -> Formula:
    f = fresh("f", free_vars(phi) | {x, y})
    conclusion = Exists(f, Arrow(s, t), Forall(x, s, subst(phi, {y: hao.Ap(_v(f), _v(x))})))
    return Imp(Forall(x, s, inner), conclusion)


# Parameter kinds per axiom, used by the surface parser.
AXIOM_SIGNATURES: dict[str, tuple[str, ...]] = {
    "succ-ne-zero": (),
    "succ-inj": (),
    "k-def": ("type", "type"),
    "s-def": ("type", "type", "type"),
    "rec-zero": ("type",),
    "rec-succ": ("type",),
    "fst-def": ("type", "type"),
    "snd-def": ("type", "type"),
    "ac": ("type", "type", "var", "var", "formula"),
    "ac!": ("type", "type", "var", "var", "formula"),
}


def axiom_formula(name: str, args: tuple = (), profile: AxiomProfile | None = None) -> Formula:
    """The formula asserted by an axiom instance (all profile gates open)."""
    return _axiom_formula(name, tuple(args), profile or AxiomProfile(True, True, True, True))


# -------------------------------------------------------------------- checker


def _show(obj) -> str:
    from . import syntax
    match obj:
        case Formula():
            return syntax.print_formula(obj)
        case hao.FiniteType():
            return syntax.print_type(obj)
        case hao.Term():
            return syntax.print_term(obj)
    return repr(obj)


class ProofError(Exception):
    """A failed check, pointing at the offending proof node."""

    def __init__(self, message: str, node: Proof | None = None):
        super().__init__(message)
        self.message = message
        self.node = node


class _Gate(Exception):
    pass


@dataclass
class _Env:
    profile: AxiomProfile
    lemmas: Mapping[str, Formula]
    fuel: int


def check_proof(profile: AxiomProfile, hyps: Mapping[str, Formula], p: Proof, goal: Formula,
                ctx: Mapping[str, FiniteType] | None = None,
                lemmas: Mapping[str, Formula] | None = None,
                fuel: int | None = None) -> None:
    """Raise ProofError unless ``p`` derives ``goal`` from ``hyps`` under ``profile``.

    ``ctx`` types the free variables of ``goal`` and ``hyps``; ``lemmas`` maps
    names of earlier checked closed theorems to their statements.
    """
    ctx = dict(ctx or {})
    env = _Env(profile, lemmas or {}, fuel if fuel is not None else hao.default_fuel())
    try:
        check_formula(ctx, goal)
        for label, h in hyps.items():
            check_formula(ctx, h)
    except FormulaError as e:
        raise ProofError(f"ill-formed statement: {e}") from None
    try:
        _check(env, ctx, dict(hyps), p, goal)
    except hao.FuelExhausted as e:
        raise ProofError(str(e)) from None


def infer_proof(profile: AxiomProfile, hyps: Mapping[str, Formula], p: Proof,
                ctx: Mapping[str, FiniteType] | None = None,
                lemmas: Mapping[str, Formula] | None = None,
                fuel: int | None = None) -> Formula:
    env = _Env(profile, lemmas or {}, fuel if fuel is not None else hao.default_fuel())
    return _infer(env, dict(ctx or {}), dict(hyps), p)


def _wf(ctx, f: Formula, node: Proof) -> None:
    try:
        check_formula(ctx, f)
    except FormulaError as e:
        raise ProofError(f"ill-formed formula: {e}", node) from None


def _type_of(ctx, t: Term, node: Proof) -> FiniteType:
    try:
        return hao.infer_type(ctx, t)
    except hao.HaoTypeError as e:
        raise ProofError(f"ill-typed term: {e}", node) from None


def _expect(env, node, got: Formula, goal: Formula) -> None:
    if not convertible(got, goal, env.fuel):
        raise ProofError(f"proves {_show(got)}, expected {_show(goal)}", node)


def _fresh_var(ctx, x: str, node: Proof) -> None:
    if x in ctx:
        raise ProofError(f"eigenvariable {x} is not fresh", node)


def _check(env: _Env, ctx, hyps, p: Proof, goal: Formula) -> None:
    match p:
        case AndI(a, b):
            if not isinstance(goal, And):
                raise ProofError(f"and-i against non-conjunction {_show(goal)}", p)
            _check(env, ctx, hyps, a, goal.left)
            _check(env, ctx, hyps, b, goal.right)
        case OrI1(a):
            if not isinstance(goal, Or):
                raise ProofError(f"or-i1 against non-disjunction {_show(goal)}", p)
            _check(env, ctx, hyps, a, goal.left)
        case OrI2(b):
            if not isinstance(goal, Or):
                raise ProofError(f"or-i2 against non-disjunction {_show(goal)}", p)
            _check(env, ctx, hyps, b, goal.right)
        case OrE(q, l1, a, l2, b):
            d = _infer(env, ctx, hyps, q)
            if not isinstance(d, Or):
                raise ProofError(f"or-e on a proof of {_show(d)}", p)
            _check(env, ctx, {**hyps, l1: d.left}, a, goal)
            _check(env, ctx, {**hyps, l2: d.right}, b, goal)
        case ImpI(label, body):
            if not isinstance(goal, Imp):
                raise ProofError(f"imp-i against non-implication {_show(goal)}", p)
            _check(env, ctx, {**hyps, label: goal.left}, body, goal.right)
        case ForallI(x, body):
            if not isinstance(goal, Forall):
                raise ProofError(f"forall-i against {_show(goal)}", p)
            _fresh_var(ctx, x, p)
            _check(env, {**ctx, x: goal.ty}, hyps, body, instantiate(goal, hao.Var(x)))
        case ExistsI(t, a):
            if not isinstance(goal, Exists):
                raise ProofError(f"exists-i against {_show(goal)}", p)
            ty = _type_of(ctx, t, p)
            if ty != goal.ty:
                raise ProofError(f"witness {_show(t)} has type {_show(ty)}, expected {_show(goal.ty)}", p)
            _check(env, ctx, hyps, a, instantiate(goal, t))
        case ExistsE(q, x, label, body):
            d = _infer(env, ctx, hyps, q)
            if not isinstance(d, Exists):
                raise ProofError(f"exists-e on a proof of {_show(d)}", p)
            _fresh_var(ctx, x, p)
            if x in free_vars(goal):
                raise ProofError(f"eigenvariable {x} occurs in the goal", p)
            _check(env, {**ctx, x: d.ty}, {**hyps, label: instantiate(d, hao.Var(x))}, body, goal)
        case FalseE(a):
            _check(env, ctx, hyps, a, FALSE)
        case _:
            _expect(env, p, _infer(env, ctx, hyps, p), goal)


def _infer(env: _Env, ctx, hyps, p: Proof) -> Formula:
    match p:
        case Hyp(label):
            if label not in hyps:
                raise ProofError(f"unbound hypothesis label {label}", p)
            return hyps[label]
        case Use(name):
            if name not in env.lemmas:
                raise ProofError(f"unknown lemma {name}", p)
            return env.lemmas[name]
        case Ann(f, a):
            _wf(ctx, f, p)
            _check(env, ctx, hyps, a, f)
            return f
        case AndE1(a) | AndE2(a):
            d = _infer(env, ctx, hyps, a)
            if not isinstance(d, And):
                raise ProofError(f"and-e on a proof of {_show(d)}", p)
            return d.left if isinstance(p, AndE1) else d.right
        case ImpE(fn, arg):
            d = _infer(env, ctx, hyps, fn)
            if not isinstance(d, Imp):
                raise ProofError(f"imp-e on a proof of {_show(d)}", p)
            _check(env, ctx, hyps, arg, d.left)
            return d.right
        case ForallE(a, t):
            d = _infer(env, ctx, hyps, a)
            if not isinstance(d, Forall):
                raise ProofError(f"forall-e on a proof of {_show(d)}", p)
            ty = _type_of(ctx, t, p)
            if ty != d.ty:
                raise ProofError(f"instance {_show(t)} has type {_show(ty)}, expected {_show(d.ty)}", p)
            return instantiate(d, t)
        case Refl(t):
            return Eq(_type_of(ctx, t, p), t, t)
        case EqSubst(x, ty, motive, e, base):
            _wf({**ctx, x: ty}, motive, p)
            d = _infer(env, ctx, hyps, e)
            if not isinstance(d, Eq) or d.ty != ty:
                raise ProofError(f"eq-subst needs an equation at {_show(ty)}, got {_show(d)}", p)
            _check(env, ctx, hyps, base, subst(motive, {x: d.lhs}))
            return subst(motive, {x: d.rhs})
        case Axiom(name, args):
            try:
                f = _axiom_formula(name, args, env.profile)
            except _Gate as e:
                raise ProofError(str(e), p) from None
            _wf(ctx, f, p)
            return f
        case Induction(x, motive, base, n, label, st):
            _wf({**ctx, x: N}, motive, p)
            _check(env, ctx, hyps, base, subst(motive, {x: hao.ZERO}))
            _fresh_var(ctx, n, p)
            step_hyps = {**hyps, label: subst(motive, {x: hao.Var(n)})}
            _check(env, {**ctx, n: N}, step_hyps, st, subst(motive, {x: hao.Ap(hao.SUCC, hao.Var(n))}))
            return Forall(x, N, motive)
        case Lem(f):
            if not env.profile.lem:
                raise ProofError("LEM disabled in this profile", p)
            _wf(ctx, f, p)
            return Or(f, Not(f))
        case Irc(sub):
            return _irc(env, p, sub)
    raise ProofError(f"cannot infer the conclusion of {type(p).__name__}; annotate it", p)


def _irc(env: _Env, node: Irc, sub: Proof) -> Formula:
    if not (env.profile.irc_nn or env.profile.irc_any):
        raise ProofError("iRC! disabled in this profile", node)
    used = free_hyps(sub)
    if used:
        raise ProofError(
            f"iRC! needs a closed subderivation; it uses hypotheses {sorted(used)}", node)
    # the premise is a theorem: empty hypotheses, empty variable context
    d = _infer(env, {}, {}, sub)
    if free_vars(d):
        raise ProofError(f"iRC! premise has free variables {sorted(free_vars(d))}", node)
    if not isinstance(d, Forall):
        raise ProofError(f"iRC! premise must be forall x exists! y phi, got {_show(d)}", node)
    m = match_exists_unique(d.body)
    if m is None:
        raise ProofError(f"iRC! premise body is not a unique existence: {_show(d.body)}", node)
    y, ty, phi = m
    if not env.profile.irc_any and (d.ty != N or ty != N):
        raise ProofError(f"iRC!_N,N applies only at N, N; got {_show(d.ty)}, {_show(ty)}", node)
    x = d.var
    f = fresh("f", free_vars(phi) | {x, y})
    return Exists(f, Arrow(d.ty, ty), Forall(x, d.ty, subst(phi, {y: hao.Ap(hao.Var(f), hao.Var(x))})))
