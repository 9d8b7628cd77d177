import pytest
from hypothesis import given, settings

import strategies as S
from predicheck import aca as A
from predicheck import dtt as D
from predicheck import fol as F
from predicheck import hao as H
from predicheck import logic as L
from predicheck import translate as T
from predicheck.dtt import MTT, Sort
from predicheck.hao import N, Arrow, Prod
from predicheck.syntax import parse


def f(text):
    return parse(text, "formula").payload


def p(text):
    return parse(text, "proof").payload


# ------------------------------------------------------------------ to_mltt


def test_types():
    assert T.to_mltt(N) == D.NAT
    assert T.to_mltt(Arrow(N, Prod(N, N))) == D.arrow(D.NAT, D.times(D.NAT, D.NAT))


def test_formulas():
    assert T.to_mltt(L.FALSE) == D.EMPTY
    got = T.to_mltt(f("(exists (y N) (= N y 0))"))
    assert got == D.Sigma("y", D.NAT, D.Id(D.NAT, D.Var("y"), D.ZERO))
    assert isinstance(T.to_mltt(f("(or false false)")), D.Sum)


def test_constants_compute_like_their_reduction_rules():
    t = parse("(ap (rec N) 2 (ap (k (-> N N) N) succ) 3)", "term").payload
    assert D.conv(T.to_mltt(t), D.numeral(5))
    assert D.conv(T.to_mltt(H.normalize(t)), D.numeral(5))


@settings(max_examples=200, deadline=None)
@given(S.well_typed_terms(N, None, 3))
def test_term_translation_is_well_typed_and_respects_reduction(t):
    ctx = T.context_to_mltt({"x": N, "g": Arrow(N, N)})
    D.check(D.MLTT, ctx, T.to_mltt(t), D.NAT)
    assert D.conv(T.to_mltt(t), T.to_mltt(H.normalize(t)))


@settings(max_examples=200, deadline=None)
@given(S.hao_formulas(("x",), 3), S.well_typed_terms(N, {}, 2))
def test_mltt_translation_commutes_with_substitution(phi, t):
    lhs = T.to_mltt(L.subst(phi, {"x": t}))
    rhs = D.subst(T.to_mltt(phi), {"x": T.to_mltt(t)})
    assert D.alpha_eq(lhs, rhs)


@settings(max_examples=200, deadline=None)
@given(S.hao_formulas(("x",), 3))
def test_mltt_translation_is_a_type(phi):
    assert D.classify(D.MLTT, {"x": D.NAT}, T.to_mltt(phi)) is Sort.SET


# ----------------------------------------------------------------- to_trunc


def test_truncation_placement():
    got = T.to_trunc(f("(forall (x N) (or (exists (y N) (= N y x)) false))"))
    assert got == D.Pi("x", D.NAT, D.Trunc(D.Sum(
        D.Trunc(D.Sigma("y", D.NAT, D.Id(D.NAT, D.Var("y"), D.Var("x")))), D.EMPTY)))


@settings(max_examples=200, deadline=None)
@given(S.hao_formulas(("x",), 3))
def test_truncated_translation_is_a_proposition(phi):
    assert D.classify(MTT, {"x": D.NAT}, T.to_trunc(phi)) <= Sort.PROP


# ------------------------------------------------------------------- to_fol


def test_quantifiers_are_relativised():
    got = T.to_fol(f("(forall (g (-> N N)) (exists (y N) (= N (ap g y) 0)))"))
    g, y = F.FolVar("g"), F.FolVar("y")
    want = F.FolForall("g", F.FolImp(
        F.FolMem(g, F.FunSet(F.OMEGA, F.OMEGA)),
        F.FolExists("y", F.FolAnd(F.FolMem(y, F.OMEGA),
                                  F.FolEq(F.FolApp(g, y), F.FolConst("zero"))))))
    assert got == want


def test_typed_constants_carry_their_sets():
    assert T.to_fol(H.K(N, Arrow(N, N))) == F.FolConst("k", (F.OMEGA, F.FunSet(F.OMEGA, F.OMEGA)))


def test_proofs_do_not_translate_to_fol():
    with pytest.raises(T.TranslationError, match="proofs"):
        T.to_fol(p("(refl 0)"))


def _fol_subst(x, name, t):
    match x:
        case F.FolVar(n):
            return t if n == name else x
        case F.FolApp(a, b):
            return F.FolApp(_fol_subst(a, name, t), _fol_subst(b, name, t))
        case F.FolForall(v, b) | F.FolExists(v, b):
            return x if v == name else type(x)(v, _fol_subst(b, name, t))
        case F.FolEq(a, b) | F.FolMem(a, b) | F.FolAnd(a, b) | F.FolOr(a, b) | F.FolImp(a, b):
            return type(x)(_fol_subst(a, name, t), _fol_subst(b, name, t))
    return x


@settings(max_examples=200, deadline=None)
@given(S.hao_formulas(("x",), 3), S.well_typed_terms(N, {}, 2))
def test_fol_translation_commutes_with_closed_substitution(phi, t):
    lhs = T.to_fol(L.subst(phi, {"x": t}))
    rhs = _fol_subst(T.to_fol(phi), "x", T.to_fol(t))
    assert F.alpha_equal(lhs, rhs)
    assert F.free_vars(lhs) == frozenset()


# ------------------------------------------------------------------ to_emtt


def test_arithmetical_formula_is_a_small_proposition():
    phi = parse("(forall (x N) (exists (y N) (= (+ x y) (* 2 y))))", "aca").payload
    assert T.to_emtt(phi).sort is Sort.PROPS


def test_set_quantifier_gives_a_large_proposition():
    phi = parse("(forall (X set) (in 0 X))", "aca").payload
    res = T.to_emtt(phi)
    assert res.sort is Sort.PROP
    assert res.expr.dom == D.arrow(D.NAT, D.POWUNIT)


def test_free_set_variables_become_propositional_functions():
    res = T.to_emtt(parse("(in x X)", "aca").payload)
    assert res.ctx == {"x": D.NAT, "X": D.arrow(D.NAT, D.POWUNIT)}


def test_arithmetic_is_computed():
    for name, stmt in T.arithmetic_lemmas():
        D.check(D.EMTT, {}, D.TRUE, stmt)
    two_times_three = D.apps(T.MUL, D.numeral(2), D.numeral(3))
    assert D.conv(two_times_three, D.numeral(6))


@settings(max_examples=200, deadline=None)
@given(S.aca_formulas(nums=("x",), sets=("X",), depth=3))
def test_emtt_translation_is_sort_correct(phi):
    res = T.to_emtt(phi)
    assert res.sort is (Sort.PROPS if A.is_arithmetical(phi) else Sort.PROP)
    # the intensional reading has the same shape with Props in place of PowUnit
    ctx = T.aca_context(phi, MTT)
    assert D.classify(MTT, ctx, T.aca_to_emtt(phi, MTT)) is res.sort


def test_comprehension_validity_holds_canonically():
    phi = parse("(exists (y N) (= x (* 2 y)))", "aca").payload
    D.check(D.EMTT, {}, D.TRUE, T.comprehension_validity("x", phi))


def test_induction_instance_is_inhabited_intensionally():
    phi = parse("(= (+ 0 x) x)", "aca").payload
    inst = A.induction_instance("x", phi)
    D.check(MTT, {}, T.induction_proof("x", phi), T.aca_to_emtt(inst, MTT))


# ---------------------------------------------------------- proof transport


def test_reflexivity_transports_to_refl():
    term = T.check_transport(f("(= N 2 2)"), p("(refl 2)"))
    assert term == D.Refl(D.numeral(2))


def test_excluded_middle_is_a_classical_node():
    with pytest.raises(T.TranslationError, match="classical node"):
        T.check_transport(f("(or (= N 0 0) (not (= N 0 0)))"), p("(lem (= N 0 0))"))


def test_unique_choice_rule_transports():
    stmt = "(forall (x N) (exists! (y N) (= N y x)))"
    body = ("(forall-i x (and-i (exists-i x (refl x)) (forall-i a (forall-i b (imp-i h"
            " (eq-subst (z N) (= N a z) (eq-subst (z N) (= N z b) (and-e2 h) (refl b)) (and-e1 h)))))))")
    goal = f("(exists (f (-> N N)) (forall (x N) (= N (ap f x) x)))")
    proof = p(f"(irc (the {stmt} {body}))")
    L.check_proof(L.INTUITIONISTIC.with_flags(irc_nn=True), {}, proof, goal)
    T.check_transport(goal, proof)


def test_hypotheses_transport_with_prefixed_names():
    goal = f("(= N 0 0)")
    term = T.check_transport(goal, p("q"), hyps={"q": goal})
    assert term == D.Var("h.q")


def test_peano_injectivity_transports_without_postulates():
    goal = f("(forall (a N) (imp (= N (ap succ a) 1) (= N a 0)))")
    proof = p("(forall-i a (imp-i h (imp-e (forall-e (axiom succ-inj) a 0) h)))")
    term = T.check_transport(goal, proof)
    assert "ax.succ-ne-zero" not in D.free_vars(term)
