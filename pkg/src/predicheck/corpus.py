"""Seeded generators for comprehension instances and the fixed corpus formulas."""

from __future__ import annotations

import random
from dataclasses import dataclass

from . import hao as H
from . import logic as L
from .hao import N, Arrow

KS = H.ap(H.K(Arrow(N, N), N), H.SUCC)


def add(a: H.Term, b: H.Term) -> H.Term:
    """Addition by primitive recursion on the second argument."""
    return H.ap(H.Rec(N), a, KS, b)


def depth(f: L.Formula) -> int:
    match f:
        case L.Falsum() | L.Eq():
            return 0
        case L.And(a, b) | L.Or(a, b) | L.Imp(a, b):
            return 1 + max(depth(a), depth(b))
        case L.Forall(_, _, body) | L.Exists(_, _, body):
            return 1 + depth(body)
    raise TypeError(f"not a formula: {f!r}")


@dataclass(frozen=True)
class PhiGen:
    """Random formulas whose only free variable is ``x``."""

    max_depth: int = 5
    binders: tuple[str, ...] = ("u", "v", "w", "p", "q")

    def term(self, rng: random.Random, scope: list[str], budget: int) -> H.Term:
        roll = rng.random()
        if budget <= 0 or roll < 0.45:
            choice = rng.randrange(len(scope) + 2)
            if choice < len(scope):
                return H.Var(scope[choice])
            return H.numeral(rng.randrange(3))
        if roll < 0.75:
            return H.Ap(H.SUCC, self.term(rng, scope, budget - 1))
        return add(self.term(rng, scope, budget - 1), self.term(rng, scope, budget - 1))

    def formula(self, rng: random.Random, scope: list[str], budget: int) -> L.Formula:
        if budget <= 0 or rng.random() < 0.25:
            if rng.random() < 0.1:
                return L.FALSE
            return L.Eq(N, self.term(rng, scope, 2), self.term(rng, scope, 2))
        match rng.randrange(6):
            case 0:
                return L.And(self.formula(rng, scope, budget - 1), self.formula(rng, scope, budget - 1))
            case 1:
                return L.Or(self.formula(rng, scope, budget - 1), self.formula(rng, scope, budget - 1))
            case 2:
                return L.Imp(self.formula(rng, scope, budget - 1), self.formula(rng, scope, budget - 1))
            case 3:
                return L.Not(self.formula(rng, scope, budget - 1))
            case _:
                v = self.binders[len(scope) - 1] if len(scope) - 1 < len(self.binders) else f"b{len(scope)}"
                q = L.Forall if rng.random() < 0.5 else L.Exists
                return q(v, N, self.formula(rng, scope + [v], budget - 1))

    def __call__(self, rng: random.Random) -> L.Formula:
        return self.formula(rng, ["x"], self.max_depth)


def generated_phis(count: int = 16, seed: int = 2024, max_depth: int = 5) -> list[L.Formula]:
    rng = random.Random(seed)
    gen = PhiGen(max_depth)
    return [gen(rng) for _ in range(count)]


def _x():
    return H.Var("x")


def named_phis() -> list[tuple[str, L.Formula]]:
    """Hand-picked instances, one of them quantifying over N -> N."""
    x, u, g = _x(), H.Var("u"), H.Var("g")
    return [
        ("is-zero", L.Eq(N, x, H.ZERO)),
        ("never", L.FALSE),
        ("even", L.Exists("u", N, L.Eq(N, add(u, u), x))),
        ("above-two", L.Exists("u", N, L.Eq(N, add(H.numeral(3), u), x))),
        ("hits-all-functions", L.Forall("g", Arrow(N, N), L.Exists("u", N, L.Eq(N, H.Ap(g, u), x)))),
        ("some-function-fixes", L.Exists("g", Arrow(N, N), L.Eq(N, H.Ap(g, x), x))),
    ]


def ca_phis(count: int = 16, seed: int = 2024) -> list[tuple[str, L.Formula]]:
    return named_phis() + [(f"gen-{i:02d}", phi) for i, phi in enumerate(generated_phis(count, seed))]
