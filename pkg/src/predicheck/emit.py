"""Render translations and synthesized derivations as theory-file text.

Every emitter returns the file text together with the records of anything it
could not translate; the text itself re-parses with the syntax module.
"""

from __future__ import annotations

from dataclasses import fields

from . import aca as A
from . import derivations as V
from . import dtt as D
from . import logic as L
from . import translate as T
from .syntax import Decl, print_aca, print_dtt, print_fol, print_formula, print_proof
from .theory import ERROR, Record, _span

_HEADER = ";; generated by predicheck; do not edit by hand\n"


def _fold(e: D.Expr, names: dict) -> D.Expr:
    """Replace closed subterms equal to a named definition by the name."""
    for name, value in names.items():
        if e == value:
            return D.Var(name)
    changes = {}
    for f in fields(e):
        v = getattr(e, f.name)
        if isinstance(v, D.Expr):
            nv = _fold(v, names)
            if nv is not v:
                changes[f.name] = nv
    if not changes:
        return e
    return type(e)(**{f.name: changes.get(f.name, getattr(e, f.name)) for f in fields(e)})


def _pd(e: D.Expr, names: dict | None = None) -> str:
    return print_dtt(_fold(e, names) if names else e)


# -------------------------------------------------------------- hao sources


def emit_mltt(decls: list[Decl], path: str) -> tuple[str, list[Record]]:
    """Formulas become classify goals, lemma proofs become transported check goals."""
    lines = [_HEADER, "(mode mltt)"]
    for name, ty in T.mltt_postulates().items():
        lines.append(f"(var {name} {print_dtt(ty)})")
    lemmas = {}
    errors: list[Record] = []
    for d in decls:
        if d.error is not None:
            errors.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
            continue
        match d.kind:
            case "formula":
                lines.append(f"(classify {d.name} {print_dtt(T.to_mltt(d.args[0]))} set)")
            case "lemma":
                formula, proof = d.args
                lemmas[d.name] = (formula, proof)
                try:
                    term = T.transport_proof_mltt(proof, lemmas)
                except (T.TranslationError, L.ProofError) as e:
                    errors.append(Record(d.name, "lemma", ERROR, str(e), _span(d.span)))
                    continue
                lines.append(f"(check {d.name} {print_dtt(term)} {print_dtt(T.to_mltt(formula))})")
    return "\n".join(lines) + "\n", errors


def emit_trunc(decls: list[Decl], path: str) -> tuple[str, list[Record]]:
    lines = [_HEADER, "(mode mtt)"]
    errors: list[Record] = []
    for d in decls:
        if d.error is not None:
            errors.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
        elif d.kind in ("formula", "lemma"):
            lines.append(f"(classify {d.name} {print_dtt(T.to_trunc(d.args[0]))} props)")
    return "\n".join(lines) + "\n", errors


def emit_fol(decls: list[Decl], path: str) -> tuple[str, list[Record]]:
    lines = [_HEADER.rstrip("\n")]
    errors: list[Record] = []
    for d in decls:
        if d.error is not None:
            errors.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
        elif d.kind == "formula":
            lines.append(f"(formula {d.name} {print_fol(T.to_fol(d.args[0]))})")
        elif d.kind == "lemma":
            errors.append(Record(d.name, "lemma", ERROR,
                                 "proofs are not transportable to the fol target", _span(d.span)))
    return "\n".join(lines) + "\n", errors


# -------------------------------------------------------------- aca sources

_ARITH = {"add": T.ADD, "mul": T.MUL}


def emit_emtt(decls: list[Decl], path: str) -> tuple[str, list[Record]]:
    """EMTT classify goals for every formula; comprehension witnesses; induction by recursion."""
    errors: list[Record] = []
    good = []
    for d in decls:
        if d.error is not None:
            errors.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
        else:
            good.append(d)
    nums, sets = set(), set()
    for d in good:
        n, s = A.free_vars(d.args[-1] if d.kind != "formula" else d.args[0])
        nums |= n
        sets |= s
    pd = lambda e: _pd(e, _ARITH)
    lines = [_HEADER, "(mode emtt)",
             f"(define add {print_dtt(T.ADD)})",
             f"(define mul {_pd(T.MUL, {'add': T.ADD})})"]
    lines += [f"(var {x} Nat)" for x in sorted(nums)]
    lines += [f"(var {x} {print_dtt(T.subset_collection())})" for x in sorted(sets)]
    for name, stmt in T.arithmetic_lemmas():
        lines.append(f"(check {name} true {pd(stmt)})")
    proofs = []
    for d in good:
        f = d.args[0] if d.kind == "formula" else d.args[2]
        want = " props" if A.is_arithmetical(f) else ""
        lines.append(f"(classify {d.name} {pd(T.aca_to_emtt(f))}{want})")
        if d.kind == "comprehension":
            x, phi, _ = d.args
            lines.append(f"(check {d.name}-witness {pd(T.comprehension_witness(x, phi))} "
                         f"{print_dtt(T.subset_collection())})")
            lines.append(f"(check {d.name}-valid true {pd(T.comprehension_validity(x, phi))})")
        elif d.kind == "induction":
            x, phi, inst = d.args
            proofs.append((d.name, x, phi, inst))
    if proofs:
        lines.append("(mode mtt)")
        for name, x, phi, inst in proofs:
            term, ty = closed_induction(x, phi, inst)
            lines.append(f"(check {name}-proof {pd(term)} {pd(ty)})")
    return "\n".join(lines) + "\n", errors


def closed_induction(x: str, phi: A.AcaFormula, inst: A.AcaFormula) -> tuple[D.Expr, D.Expr]:
    """Induction proof and statement, abstracted over the free variables (intensional level)."""
    nums, sets = A.free_vars(inst)
    term = T.induction_proof(x, phi)
    ty = T.aca_to_emtt(inst, D.MTT)
    for v in sorted(sets, reverse=True):
        term, ty = D.Lam(v, None, term), D.ForallP(v, T.subset_collection(D.MTT), ty)
    for v in sorted(nums, reverse=True):
        term, ty = D.Lam(v, None, term), D.ForallP(v, D.NAT, ty)
    return term, ty


# ------------------------------------------------------------ derivations


def ca_file(instances: list[tuple[str, V.CaInstance]], defines: list[tuple[str, str]] = ()) -> str:
    lines = [_HEADER, "(profile lem irc!)"]
    lines += [f"(define {n} {t})" for n, t in defines]
    lines.append(f"(lemma one-ne-zero {print_formula(L.Not(L.Eq(L.N, V.ONE, V.ZERO)))} "
                 f"{print_proof(V.one_ne_zero())})")
    for name, inst in instances:
        lines.append(f"(lemma {name} {print_formula(inst.goal)}\n  {print_proof(inst.proof)})")
    return "\n".join(lines) + "\n"


def ac_file() -> str:
    return "\n".join([
        _HEADER,
        "(mode mltt)",
        "(family R (Nat Nat) set)",
        f"(define ac {print_dtt(V.ac_term())})",
        f"(check ac-sigma ac {print_dtt(V.ac_type())})",
        f"(check ac-prop-formers ac {print_dtt(V.ac_prop_type())})",
        f"(check ac-bang {print_dtt(V.ac_bang_term())} {print_dtt(V.ac_bang_type())})",
        "(mode mtt)",
        "(family R (Nat Nat) props)",
        f'(reject ac-minimalist ac {print_dtt(V.ac_prop_type())} "fst")',
    ]) + "\n"


def ac_mtt_reject_file() -> str:
    return "\n".join([
        _HEADER,
        "(mode mtt)",
        "(family R (Nat Nat) props)",
        f"(classify ac-statement {print_dtt(V.ac_prop_type())} props)",
        f'(reject ac-minimalist {print_dtt(V.ac_term())} {print_dtt(V.ac_prop_type())} "fst")',
        "(mode mltt)",
        f"(check ac-prop-formers-mltt {print_dtt(V.ac_term())} {print_dtt(V.ac_prop_type())})",
    ]) + "\n"


def ac_bang_file() -> str:
    return "\n".join([
        _HEADER,
        "(mode mltt)",
        "(family R (Nat Nat) set)",
        f"(check ac-bang {print_dtt(V.ac_bang_term())} {print_dtt(V.ac_bang_type())})",
        "(define R' (lam x (lam y (Id Nat y x))))",
        f"(check ac-bang-identity {print_dtt(_rel(V.ac_bang_term()))} {print_dtt(_rel(V.ac_bang_type()))})",
    ]) + "\n"


def _rel(e: D.Expr) -> D.Expr:
    return D.subst(e, {"R": D.Var("R'")})


def trunc_ac_bang_file() -> str:
    term = V.ac_bang_trunc_term()
    return "\n".join([
        _HEADER,
        "(mode mtt)",
        "(family R (Nat Nat) props)",
        f"(define ac-bang-trunc {print_dtt(term)})",
        f"(check trunc-ac-bang ac-bang-trunc {print_dtt(V.ac_trunc_bang_type())})",
        f'(reject trunc-ac-general ac-bang-trunc {print_dtt(V.ac_trunc_type())} "trunc-elim")',
        "(define R' (lam x (lam y Unit)))",
        f"(check trunc-ac-bang-unit ac-bang-trunc {print_dtt(_rel(V.ac_trunc_bang_type()))})",
        "(mode mltt)",
        f'(reject trunc-ac-general-mltt ac-bang-trunc {print_dtt(V.ac_trunc_type())} "trunc-elim")',
    ]) + "\n"
