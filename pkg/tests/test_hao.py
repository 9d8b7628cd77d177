import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hao_oracle as O
import strategies as S
from predicheck import hao as H
from predicheck.hao import N, Arrow, Prod
from predicheck.syntax import parse

x, y = H.Var("x"), H.Var("y")
KS = H.ap(H.K(Arrow(N, N), N), H.SUCC)


def term(text):
    return parse(text, "term").payload


# ------------------------------------------------------------------- typing


def test_zero_is_a_number():
    assert H.infer_type({}, H.ZERO) == N


def test_k_has_the_shape_sigma_tau_sigma():
    assert H.infer_type({}, H.K(N, Arrow(N, N))) == Arrow(N, Arrow(Arrow(N, N), N))


def test_constant_types():
    assert H.constant_type(H.Rec(N)) == H.arrows(N, Arrow(N, Arrow(N, N)), N, N)
    assert H.constant_type(H.Pair(N, Arrow(N, N))) == H.arrows(N, Arrow(N, N), Prod(N, Arrow(N, N)))
    assert H.constant_type(H.S(N, N, N)) == H.arrows(H.arrows(N, N, N), Arrow(N, N), Arrow(N, N))


def test_ill_typed_application():
    with pytest.raises(H.HaoTypeError, match="not an arrow"):
        H.infer_type({}, H.Ap(H.ZERO, H.ZERO))
    with pytest.raises(H.HaoTypeError, match="expects"):
        H.infer_type({}, H.Ap(H.SUCC, H.SUCC))


def test_unbound_variable():
    with pytest.raises(H.HaoTypeError, match="unbound"):
        H.infer_type({}, x)


# ---------------------------------------------------------------- reduction


def test_k_rule():
    assert H.step(H.ap(H.K(N, N), H.ZERO, H.numeral(1))) == H.ZERO


def test_projection_rule():
    p = H.ap(H.Pair(N, N), H.ZERO, H.numeral(1))
    assert H.step(H.Ap(H.Fst(N, N), p)) == H.ZERO
    assert H.step(H.Ap(H.Snd(N, N), p)) == H.numeral(1)


def test_recursor_step_hands_over_predecessor_then_recursive_value():
    f, a = H.Var("f"), H.Var("a")
    rec = lambda n: H.ap(H.Rec(N), a, f, n)
    expected = H.ap(f, H.numeral(1), rec(H.numeral(1)))
    assert H.step(rec(H.numeral(2))) == expected
    assert O.decode(O.step(O.encode(rec(H.numeral(2))))) == expected


def test_step_is_none_on_normal_forms():
    for t in [x, H.ZERO, H.numeral(3), H.ap(H.K(N, N), x), H.Ap(H.SUCC, x)]:
        assert H.step(t) is None


def test_leftmost_outermost_order():
    inner = H.ap(H.K(N, N), H.ZERO, H.ZERO)
    outer = H.ap(H.K(N, N), inner, inner)
    assert H.step(outer) == inner


def test_successor_iteration_by_recursion():
    """Rec 0 (k succ) n counts up to n; checked against plain integer iteration."""
    for n in range(6):
        t = H.ap(H.Rec(N), H.ZERO, KS, H.numeral(n))
        assert H.as_numeral(H.normalize(t)) == n


def test_addition_by_recursion_matches_integers():
    for a in range(4):
        for b in range(4):
            t = H.ap(H.Rec(N), H.numeral(a), KS, H.numeral(b))
            assert H.as_numeral(H.normalize(t)) == a + b


def test_normal_variable_is_fixed():
    assert H.normalize(x) == x


def test_zero_fuel_on_a_redex():
    with pytest.raises(H.FuelExhausted) as exc:
        H.normalize(H.ap(H.K(N, N), H.ZERO, H.ZERO), fuel=0)
    assert exc.value.fuel == 0 and exc.value.last is not None


def test_fuel_from_environment(monkeypatch):
    monkeypatch.setenv("PREDICHECK_FUEL", "3")
    assert H.default_fuel() == 3
    big = H.ap(H.Rec(N), H.ZERO, KS, H.numeral(5))
    with pytest.raises(H.FuelExhausted):
        H.normalize(big)
    monkeypatch.delenv("PREDICHECK_FUEL")
    assert H.default_fuel() == H.DEFAULT_FUEL


# --------------------------------------------------------------- def_equal


def test_def_equal_examples():
    assert H.def_equal(H.ap(H.K(N, N), x, y), x)
    assert not H.def_equal(H.ZERO, H.Ap(H.SUCC, H.ZERO))


def test_skk_is_identity():
    skk = term("(ap (s N (-> N N) N) (k N (-> N N)) (k N N) 0)")
    assert H.def_equal(skk, H.ZERO)
    assert O.normal_form(O.encode(skk)) == O.encode(H.ZERO)


@settings(max_examples=200, deadline=None)
@given(S.well_typed_terms(N, depth=3), S.well_typed_terms(N, depth=3), S.well_typed_terms(N, depth=2))
def test_def_equal_is_an_equivalence_and_a_congruence(a, b, c):
    assert H.def_equal(a, a)
    assert H.def_equal(a, b) == H.def_equal(b, a)
    if H.def_equal(a, b) and H.def_equal(b, c):
        assert H.def_equal(a, c)
    if H.def_equal(a, b):
        assert H.def_equal(H.Ap(H.SUCC, a), H.Ap(H.SUCC, b))


@settings(max_examples=200, deadline=None)
@given(S.well_typed_terms(N, depth=3))
def test_step_matches_the_oracle_at_every_point(t):
    e = O.encode(t)
    for _ in range(40):
        k, o = H.step(t), O.step(e)
        assert (None if k is None else O.encode(k)) == o
        if k is None:
            break
        t, e = k, o


@settings(max_examples=200, deadline=None)
@given(S.well_typed_terms(N, depth=3))
def test_normal_forms_have_no_redexes(t):
    assert O.redexes(O.encode(H.normalize(t))) == []


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([N, Arrow(N, N), Prod(N, N)]).flatmap(lambda ty: S.well_typed_terms(ty, None, 3)))
def test_substituting_every_free_variable_closes_the_term(t):
    closed = H.subst(t, {"x": H.numeral(2), "g": H.SUCC})
    assert H.free_vars(closed) == frozenset()
