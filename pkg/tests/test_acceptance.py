"""One test group per acceptance criterion; the terminal summary prints a verdict per criterion."""

import json
import random

import pytest
from hypothesis import HealthCheck, given, settings
from hypothesis import strategies as st

import hao_oracle as O
from strategies import well_typed_terms
from predicheck import aca as A
from predicheck import derivations as V
from predicheck import dtt as D
from predicheck import hao as H
from predicheck import logic as L
from predicheck import translate as T
from predicheck.cli import cmd_corpus, stable_json
from predicheck.corpus import PhiGen, ca_phis, depth
from predicheck.syntax import (alpha_equivalent, parse_declarations, print_decl, language_of)
from predicheck.theory import EXPECTED_REJECT, OK, check_theory_file, hao_lemma_env

STRIP_LEM = V.CA_PROFILE.with_flags(lem=False)
STRIP_IRC = V.CA_PROFILE.with_flags(irc_nn=False)


def _fail_node(profile, inst):
    with pytest.raises(L.ProofError) as exc:
        L.check_proof(profile, {}, inst.proof, inst.goal)
    return exc.value.node


def _has_function_quantifier(f):
    match f:
        case L.Forall(_, ty, body) | L.Exists(_, ty, body):
            return ty != H.N or _has_function_quantifier(body)
        case L.And(a, b) | L.Or(a, b) | L.Imp(a, b):
            return _has_function_quantifier(a) or _has_function_quantifier(b)
    return False


# ---------------------------------------------------------------- criterion 1

C1 = pytest.mark.criterion(1, "CA schema checks; stripping lem / irc_nn fails at the Lem / Irc node")


@C1
def test_ca_instances_cover_the_required_range():
    phis = ca_phis()
    assert len(phis) >= 20
    assert all(depth(phi) <= 5 for _, phi in phis)
    assert any(_has_function_quantifier(phi) for _, phi in phis)


@C1
@pytest.mark.parametrize("name,phi", ca_phis(), ids=[n for n, _ in ca_phis()])
def test_ca_instance_checks_and_fails_exactly_at_the_stripped_principle(name, phi):
    inst = V.derive_ca(phi)
    L.check_proof(V.CA_PROFILE, {}, inst.proof, inst.goal)
    nodes = list(L.iter_nodes(inst.proof))
    lem_node = _fail_node(STRIP_LEM, inst)
    assert isinstance(lem_node, L.Lem) and any(n is lem_node for n in nodes)
    irc_node = _fail_node(STRIP_IRC, inst)
    irc_nodes = [n for n in nodes if isinstance(n, L.Irc)]
    assert len(irc_nodes) == 1 and irc_node is irc_nodes[0]


@C1
@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_ca_schema_over_random_formulas(seed):
    phi = PhiGen(5)(random.Random(seed))
    assert depth(phi) <= 5
    inst = V.derive_ca(phi)
    L.check_proof(V.CA_PROFILE, {}, inst.proof, inst.goal)
    assert isinstance(_fail_node(STRIP_LEM, inst), L.Lem)
    assert isinstance(_fail_node(STRIP_IRC, inst), L.Irc)


@C1
def test_ca_corpus_file_checks(corpus_dir):
    report = check_theory_file(str(corpus_dir / "ca-schema.hao"))
    assert len(report.records) >= 21 and report.ok
    stripped = check_theory_file(str(corpus_dir / "ca-schema.hao"), overrides="-lem")
    failures = [r for r in stripped.records if r.status != OK]
    assert failures and all("LEM disabled" in r.message for r in failures)


# ---------------------------------------------------------------- criterion 2

C2 = pytest.mark.criterion(2, "AC and AC! terms check in MLTT")


@C2
def test_ac_term_checks_in_mltt():
    D.check(D.MLTT, V.relation_context(D.Sort.SET), V.ac_term(), V.ac_type())


@C2
def test_ac_bang_term_checks_in_mltt():
    D.check(D.MLTT, V.relation_context(D.Sort.SET), V.ac_bang_term(), V.ac_bang_type())


@C2
def test_ac_corpus_records(corpus_dir):
    report = check_theory_file(str(corpus_dir / "ac.dtt"))
    by_name = {r.name: r.status for r in report.records}
    assert by_name["ac-sigma"] == OK and by_name["ac-bang"] == OK
    assert report.ok


# ---------------------------------------------------------------- criterion 3

C3 = pytest.mark.criterion(3, "AC term rejected in MTT: sort violation at fst, motive sort Set")


@C3
def test_minimalist_rejection_names_fst_and_set():
    with pytest.raises(D.SortViolation) as exc:
        D.check(D.MTT, V.relation_context(D.Sort.PROPS), V.ac_term(), V.ac_prop_type())
    assert exc.value.eliminator == "fst"
    assert exc.value.motive_sort is D.Sort.SET


@C3
def test_minimalist_rejection_is_an_expected_reject_record(corpus_dir):
    report = check_theory_file(str(corpus_dir / "ac-mtt-reject.dtt"))
    rec = next(r for r in report.records if r.name == "ac-minimalist")
    assert rec.status == EXPECTED_REJECT
    assert "fst" in rec.message and "sort set" in rec.message
    assert report.ok


# ---------------------------------------------------------------- criterion 4

C4 = pytest.mark.criterion(4, "truncated AC! checks; general truncated AC is expected-reject")


@C4
def test_truncated_ac_bang_checks():
    D.check(D.MTT, V.relation_context(D.Sort.PROPS), V.ac_bang_trunc_term(), V.ac_trunc_bang_type())


@C4
def test_truncated_general_ac_is_rejected():
    with pytest.raises(D.SortViolation) as exc:
        D.check(D.MTT, V.relation_context(D.Sort.PROPS), V.ac_bang_trunc_term(), V.ac_trunc_type())
    assert exc.value.eliminator == "trunc-elim" and exc.value.motive_sort is D.Sort.SET


@C4
def test_truncated_corpus_records(corpus_dir):
    report = check_theory_file(str(corpus_dir / "trunc-ac-bang.dtt"))
    by_name = {r.name: r.status for r in report.records}
    assert by_name["trunc-ac-bang"] == OK
    assert by_name["trunc-ac-general"] == EXPECTED_REJECT
    assert report.ok


# ---------------------------------------------------------------- criterion 5

C5 = pytest.mark.criterion(5, "every Lem-free corpus lemma transports and checks in MLTT")


def _lem_free_lemmas(corpus_dir):
    out = []
    for path in sorted(corpus_dir.glob("*.hao")):
        decls = parse_declarations(path.read_text(), path.name)
        env = hao_lemma_env(decls)
        for name, (formula, proof) in env.items():
            if not any(isinstance(n, L.Lem) for n in L.iter_nodes(proof)):
                out.append((f"{path.name}:{name}", formula, proof, env))
    return out


@C5
def test_enough_lem_free_lemmas(corpus_dir):
    assert len(_lem_free_lemmas(corpus_dir)) >= 15


@C5
def test_lem_free_lemmas_transport(corpus_dir):
    failures = []
    for name, formula, proof, env in _lem_free_lemmas(corpus_dir):
        try:
            T.check_transport(formula, proof, env)
        except (D.TypeCheckError, T.TranslationError) as e:
            failures.append(f"{name}: {e}")
    assert not failures, "\n".join(failures)


# ---------------------------------------------------------------- criterion 6

C6 = pytest.mark.criterion(6, "ACA examples translate to sort-correct EMTT; arithmetical parts are PropS")


def _aca_entries(corpus_dir):
    path = corpus_dir / "aca-examples.aca"
    return parse_declarations(path.read_text(), path.name)


def _subformulas_in_context(f, nums, sets):
    """Yield (subformula, free numbers, free sets) including bound variables in scope."""
    yield f, nums, sets
    match f:
        case A.AAnd(a, b) | A.AOr(a, b) | A.AImp(a, b):
            yield from _subformulas_in_context(a, nums, sets)
            yield from _subformulas_in_context(b, nums, sets)
        case A.AForallN(x, b) | A.AExistsN(x, b):
            yield from _subformulas_in_context(b, nums | {x}, sets)
        case A.AForallS(x, b) | A.AExistsS(x, b):
            yield from _subformulas_in_context(b, nums, sets | {x})


@C6
def test_aca_corpus_shape(corpus_dir):
    decls = _aca_entries(corpus_dir)
    assert len(decls) >= 10 and all(d.error is None for d in decls)
    kinds = {d.kind for d in decls}
    assert {"comprehension", "induction"} <= kinds


@C6
def test_aca_translations_are_sort_correct(corpus_dir):
    for d in _aca_entries(corpus_dir):
        f = d.args[-1] if d.kind != "formula" else d.args[0]
        result = T.to_emtt(f)
        expected = D.Sort.PROPS if A.is_arithmetical(f) else D.Sort.PROP
        assert result.sort is expected, d.name
        for sub, nums, sets in _subformulas_in_context(f, frozenset(A.free_vars(f)[0]),
                                                       frozenset(A.free_vars(f)[1])):
            if A.is_arithmetical(sub):
                ctx = {x: D.NAT for x in nums} | {x: T.subset_collection() for x in sets}
                assert D.classify(D.EMTT, ctx, T.aca_to_emtt(sub)) is D.Sort.PROPS, (d.name, sub)


@C6
def test_aca_emtt_output_checks(corpus_dir, tmp_path):
    from predicheck.cli import cmd_translate
    report = cmd_translate(str(corpus_dir / "aca-examples.aca"), "emtt", str(tmp_path / "out.dtt"), check=True)
    assert report.records and report.ok
    witnesses = [r for r in report.records if r.name.endswith("-witness")]
    assert witnesses and all(r.status == OK for r in witnesses)


# ---------------------------------------------------------------- criterion 7

C7 = pytest.mark.criterion(7, "subject reduction, def_equal vs oracle, parse/print round-trip")

_SR_CTX = {"x": H.N, "g": H.Arrow(H.N, H.N)}


@C7
@settings(max_examples=1000, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
@given(st.sampled_from([H.N, H.Arrow(H.N, H.N), H.Prod(H.N, H.N)]).flatmap(
    lambda ty: st.tuples(st.just(ty), well_typed_terms(ty, _SR_CTX, 3))))
def test_subject_reduction(ty_term):
    ty, t = ty_term
    assert H.infer_type(_SR_CTX, t) == ty
    for _ in range(60):
        nxt = H.step(t)
        if nxt is None:
            break
        assert H.infer_type(_SR_CTX, nxt) == ty
        t = nxt


@st.composite
def redex_chains(draw):
    t = draw(well_typed_terms(H.N, _SR_CTX, 3))
    e = O.encode(t)
    chain = [e]
    for _ in range(draw(st.integers(1, 6))):
        spots = O.redexes(chain[-1])
        if not spots:
            break
        chain.append(O.contract_at(chain[-1], draw(st.sampled_from(spots))))
    other = draw(well_typed_terms(H.N, _SR_CTX, 2))
    return [O.decode(c) for c in chain], other


@C7
@settings(max_examples=200, deadline=None, derandomize=True,
          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
@given(redex_chains())
def test_def_equal_agrees_with_oracle(data):
    chain, other = data
    first, last = chain[0], chain[-1]
    nf = O.normal_form(O.encode(first))
    assert H.def_equal(first, last) is (nf == O.normal_form(O.encode(last))) is True
    assert H.def_equal(first, other) is (nf == O.normal_form(O.encode(other)))


def _decl_equal(lang, a, b):
    if a.kind != b.kind or (a.kind not in ("mode", "profile") and a.name != b.name):
        return False
    for x, y in zip(a.args, b.args, strict=True):
        if isinstance(x, L.Formula) or isinstance(x, D.Expr):
            if not alpha_equivalent("formula" if isinstance(x, L.Formula) else "dtt", x, y):
                return False
        elif x != y:
            return False
    return True


@C7
def test_round_trip_on_every_corpus_node(corpus_dir):
    checked = 0
    for path in sorted(corpus_dir.iterdir()):
        if path.suffix not in (".hao", ".dtt", ".aca"):
            continue
        lang = language_of(path.name)
        for d in parse_declarations(path.read_text(), path.name):
            assert d.error is None, (path.name, d.name)
            if lang == "hao" and d.kind == "define":
                continue
            text = print_decl(d, lang)
            (back,) = parse_declarations(text, path.name, lang)
            assert back.error is None, text
            assert _decl_equal(lang, d, back), text
            assert print_decl(back, lang) == text
            checked += 1
    assert checked >= 60


# ---------------------------------------------------------------- criterion 8

C8 = pytest.mark.criterion(8, "two corpus runs give byte-identical stable reports")


@C8
def test_corpus_runs_are_byte_identical(corpus_dir):
    first = cmd_corpus(str(corpus_dir))
    second = cmd_corpus(str(corpus_dir))
    assert first.ok and second.ok
    assert json.dumps(first.stable(), sort_keys=True) == json.dumps(second.stable(), sort_keys=True)
    assert stable_json(first) == stable_json(second)


@C8
def test_parallel_run_matches_serial(corpus_dir):
    from predicheck.cli import Options
    serial = cmd_corpus(str(corpus_dir))
    parallel = cmd_corpus(str(corpus_dir), opts=Options(jobs=3))
    assert stable_json(serial) == stable_json(parallel)
