import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import hao_oracle as O
from predicheck import corpus as C
from predicheck import derivations as DV
from predicheck import hao as H
from predicheck import logic as L
from predicheck.hao import N
from predicheck.syntax import parse

x = H.Var("x")


def f(text):
    return parse(text, "formula").payload


# ------------------------------------------------------------- a tiny model


def _value(t) -> int:
    """Numeric value of a closed number term, via the tuple interpreter."""
    e = O.normal_form(O.encode(t))
    n = 0
    while e[0] == "ap":
        assert e[1][0] == "succ"
        n, e = n + 1, e[2]
    assert e[0] == "zero"
    return n


def holds(phi, env) -> bool:
    """Classical truth of a quantifier-free formula under a numeric assignment."""
    sub = lambda t: H.subst(t, {k: H.numeral(v) for k, v in env.items()})
    match phi:
        case L.Falsum():
            return False
        case L.Eq(_, a, b):
            return _value(sub(a)) == _value(sub(b))
        case L.And(a, b):
            return holds(a, env) and holds(b, env)
        case L.Or(a, b):
            return holds(a, env) or holds(b, env)
        case L.Imp(a, b):
            return not holds(a, env) or holds(b, env)
    raise ValueError("quantifier")


@st.composite
def qf_formulas(draw, depth=3):
    terms = st.sampled_from([x, H.ZERO, H.numeral(1), H.numeral(2), H.Ap(H.SUCC, x), C.add(x, x)])
    if depth == 0 or draw(st.booleans()):
        return L.Eq(N, draw(terms), draw(terms))
    con = draw(st.sampled_from([L.And, L.Or, L.Imp]))
    return con(draw(qf_formulas(depth - 1)), draw(qf_formulas(depth - 1)))


# ---------------------------------------------------------------- build_chi


def test_chi_shape():
    phi = f("(= N x 0)")
    assert DV.build_chi(phi) == f("(or (and (= N x 0) (= N y 1)) (and (not (= N x 0)) (= N y 0)))")


@pytest.mark.parametrize("bad,msg", [
    ("(= N y 0)", "y occurs free"),
    ("(= N z x)", "only mention x"),
    ("(= N f 0)", "f occurs free"),
])
def test_chi_rejects_stray_variables(bad, msg):
    with pytest.raises(DV.DerivationError, match=msg):
        DV.build_chi(f(bad))


def test_chi_rejects_ill_typed_phi():
    with pytest.raises(DV.DerivationError, match="ill-formed"):
        DV.build_chi(f("(= N x succ)"))


@settings(max_examples=150, deadline=None)
@given(qf_formulas())
def test_chi_is_the_graph_of_the_characteristic_function(phi):
    chi = DV.build_chi(phi)
    for xv in range(3):
        for yv in range(2):
            expected = yv == (1 if holds(phi, {"x": xv}) else 0)
            assert holds(chi, {"x": xv, "y": yv}) is expected


# ---------------------------------------------------------------- derive_ca


def test_comprehension_goal():
    assert L.alpha_equal(DV.ca_goal(f("(= N x 0)")),
                         f("(exists (f (-> N N)) (forall (x N) (iff (= N (ap f x) 1) (= N x 0))))"))


def test_goal_with_a_bound_f_inside_phi_is_closed_and_well_formed():
    goal = DV.ca_goal(f("(forall (f N) (= N f x))"))
    L.check_formula({}, goal)
    assert L.free_vars(goal) == frozenset()


def test_evenness_instance():
    even = L.Exists("u", N, L.Eq(N, C.add(H.Var("u"), H.Var("u")), x))
    inst = DV.derive_ca(even)
    L.check_proof(DV.CA_PROFILE, {}, inst.proof, inst.goal)


def test_instance_uses_each_classical_principle_exactly_once():
    inst = DV.derive_ca(f("(= N x 0)"))
    kinds = [type(n) for n in L.iter_nodes(inst.proof)]
    assert kinds.count(L.Irc) == 1 and kinds.count(L.Lem) == 1
    assert L.free_hyps(inst.proof) == frozenset()


@pytest.mark.parametrize("profile", [
    L.INTUITIONISTIC,
    L.INTUITIONISTIC.with_flags(lem=True),
    L.INTUITIONISTIC.with_flags(irc_nn=True),
])
def test_profile_must_provide_both_principles(profile):
    with pytest.raises(DV.DerivationError, match="lem and irc"):
        DV.derive_ca(f("(= N x 0)"), profile)


def test_instance_fails_without_excluded_middle():
    inst = DV.derive_ca(f("(= N x 0)"))
    with pytest.raises(L.ProofError, match="LEM disabled"):
        L.check_proof(DV.CA_PROFILE.with_flags(lem=False), {}, inst.proof, inst.goal)


@settings(max_examples=40, deadline=None)
@given(qf_formulas())
def test_every_quantifier_free_instance_checks(phi):
    inst = DV.derive_ca(phi)
    L.check_proof(DV.CA_PROFILE, {}, inst.proof, inst.goal)


def test_generated_instances_are_deterministic():
    assert C.generated_phis(5, seed=7) == C.generated_phis(5, seed=7)
    assert all(C.depth(p) <= 5 and L.free_vars(p) <= {"x"} for _, p in C.ca_phis())


# ----------------------------------------------------------- helper proofs


def test_symmetry_and_transitivity_helpers():
    a, b, c = H.numeral(1), H.Var("b"), H.Var("c")
    hyps = {"p": L.Eq(N, a, b), "q": L.Eq(N, b, c)}
    ctx = {"b": N, "c": N}
    L.check_proof(L.INTUITIONISTIC, hyps, DV.sym(L.Hyp("p"), a), L.Eq(N, b, a), ctx=ctx)
    L.check_proof(L.INTUITIONISTIC, hyps, DV.trans(L.Hyp("p"), L.Hyp("q"), a), L.Eq(N, a, c), ctx=ctx)
    L.check_proof(L.INTUITIONISTIC, {}, DV.one_ne_zero(), L.Not(L.Eq(N, H.numeral(1), H.ZERO)))
