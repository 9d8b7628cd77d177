import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import strategies as S
from predicheck import dtt as D
from predicheck import hao as H
from predicheck import logic as L
from predicheck.sexp import ParseError, read_all
from predicheck.syntax import (CATEGORIES, alpha_equivalent, parse, parse_declarations, print_aca,
                               print_dtt, print_fol, print_formula, print_node, print_term, print_type)


# ------------------------------------------------------------------ reader


def test_reader_records_byte_spans():
    (form,) = read_all("  (a (b c))")
    assert (form.span.start, form.span.end) == (2, 11)
    assert (form[1].span.start, form[1].span.end) == (5, 10)


def test_comments_are_skipped():
    assert len(read_all("; nothing\n(a) ; trailing\n(b)")) == 2


@pytest.mark.parametrize("text,fragment", [
    ("(a b", "unclosed"),
    ("a)", "unbalanced"),
    ("(a #)", "unexpected character"),
    ("(forall (x N) (= N x é))", "non-ASCII"),
])
def test_reader_errors_carry_spans(text, fragment):
    with pytest.raises(ParseError) as exc:
        read_all(text)
    assert fragment in exc.value.message
    assert 0 <= exc.value.span.start <= exc.value.span.end <= len(text.encode())


# ---------------------------------------------------------- category parsing


def test_arrow_type():
    node = parse("(-> N N)", "type")
    assert node.payload == H.Arrow(H.N, H.N)
    assert (node.span.start, node.span.end) == (0, 8)


def test_reflexivity_formula():
    f = parse("(forall (x N) (= N x x))", "formula").payload
    assert f == L.Forall("x", H.N, L.Eq(H.N, H.Var("x"), H.Var("x")))


def test_parsing_is_type_agnostic():
    t = parse("(ap zero zero)", "term").payload
    assert t == H.Ap(H.ZERO, H.ZERO)
    with pytest.raises(H.HaoTypeError):
        H.infer_type({}, t)


def test_numerals_are_sugar_and_resugar():
    t = parse("2", "term").payload
    assert t == H.Ap(H.SUCC, H.Ap(H.SUCC, H.ZERO))
    assert print_term(t) == "2"


def test_product_type_prints_canonically():
    assert print_node(parse("(* N (-> N N))", "type")) == "(* N (-> N N))"


def test_shadowed_binders_are_renamed_apart():
    inner = L.Forall("x", H.N, L.Eq(H.N, H.Var("x"), H.Var("x")))
    f = L.Forall("x", H.N, L.And(L.Eq(H.N, H.Var("x"), H.ZERO), inner))
    text = print_formula(f)
    assert "(forall (x N)" in text and "(forall (x' N)" in text
    assert L.alpha_equal(parse(text, "formula").payload, f)


def test_not_iff_and_unique_existence_resugar():
    for text in ["(not (= N x 0))", "(iff (= N x 0) (= N 0 x))", "(exists! (y N) (= N y x))"]:
        f = parse(text, "formula").payload
        assert print_formula(f) == text


def test_not_is_implication_into_false():
    f = parse("(not (= N 0 1))", "formula").payload
    assert f == L.Imp(L.Eq(H.N, H.ZERO, H.numeral(1)), L.FALSE)


@pytest.mark.parametrize("text", [
    "(natrec (x Nat) zero (n n (succ n)) zero)",
    "(exists-elim s (x x) x)",
])
def test_duplicate_names_in_one_binder_list_are_rejected(text):
    with pytest.raises(ParseError, match="distinct|twice|duplicate"):
        parse(text, "dtt")


@pytest.mark.parametrize("text,category", [
    ("(-> N)", "type"),
    ("(k N)", "term"),
    ("(forall x (= N x x))", "formula"),
    ("(imp-i)", "proof"),
    ("(Pi (x Nat))", "dtt"),
    ("(+ 1)", "aca"),
])
def test_arity_mismatches_are_diagnosed(text, category):
    with pytest.raises(ParseError) as exc:
        parse(text, category)
    assert 0 <= exc.value.span.start <= exc.value.span.end <= len(text)


def test_unknown_category():
    with pytest.raises(ValueError):
        parse("N", "banana")


def test_theory_file_keeps_going_after_a_bad_declaration():
    text = "(lemma a (= N 0 0) (refl 0))\n(lemma b (= N 0) (refl 0))\n(lemma c (= N 1 1) (refl 1))"
    decls = parse_declarations(text, "t.hao")
    assert [d.error is None for d in decls] == [True, False, True]
    bad = decls[1].error
    assert text[bad.span.start:bad.span.end].startswith("(= N 0)")


def test_deep_nesting_is_a_diagnostic_not_a_crash():
    text = "(succ " * 5000 + "zero" + ")" * 5000
    with pytest.raises(ParseError):
        parse(text, "dtt")


# -------------------------------------------------------------- properties


@settings(max_examples=200, deadline=None)
@given(st.text(alphabet="()abN->x 0;=\n\"", max_size=40), st.sampled_from(CATEGORIES[:-1]))
def test_parser_totality(text, category):
    try:
        node = parse(text, category)
    except ParseError as e:
        assert 0 <= e.span.start <= e.span.end <= len(text)
    else:
        assert node.kind == category


@settings(max_examples=200, deadline=None)
@given(S.finite_types())
def test_type_round_trip(ty):
    assert parse(print_type(ty), "type").payload == ty


@settings(max_examples=200, deadline=None)
@given(S.well_typed_terms(H.N, depth=3))
def test_term_round_trip(t):
    assert parse(print_term(t), "term").payload == t


@settings(max_examples=300, deadline=None)
@given(S.hao_formulas(depth=4))
def test_formula_round_trip(f):
    back = parse(print_formula(f), "formula").payload
    assert alpha_equivalent("formula", back, f)
    assert print_formula(back) == print_formula(f)


@settings(max_examples=300, deadline=None)
@given(S.dtt_exprs())
def test_dtt_round_trip(e):
    back = parse(print_dtt(e), "dtt").payload
    assert D.alpha_eq(back, e)
    assert print_dtt(back) == print_dtt(e)


@settings(max_examples=200, deadline=None)
@given(S.aca_formulas(nums=("x", "y"), sets=("X",)))
def test_aca_round_trip(f):
    assert parse(print_aca(f), "aca").payload == f


@settings(max_examples=200, deadline=None)
@given(S.fol_formulas())
def test_fol_round_trip(f):
    back = parse(print_fol(f), "fol").payload
    assert alpha_equivalent("fol", back, f)
