"""Checking whole theory files and collecting per-declaration records."""

from __future__ import annotations

import time
from dataclasses import asdict, dataclass, field

from . import __version__
from . import aca as A
from . import dtt as D
from . import fol as F
from . import logic as L
from .sexp import ParseError, SourceSpan
from .syntax import Decl, language_of, parse_declarations, print_proof

OK, EXPECTED_REJECT, ERROR, UNEXPECTED_ACCEPT = "ok", "expected-reject", "error", "unexpected-accept"
PASSING = frozenset({OK, EXPECTED_REJECT})


@dataclass
class Record:
    name: str
    kind: str
    status: str
    message: str
    span: dict
    elapsed_ms: float = field(default=0.0)

    def stable(self) -> dict:
        d = asdict(self)
        del d["elapsed_ms"]
        d["diagnostic"] = d.pop("message")
        return d


@dataclass
class RunReport:
    records: list[Record] = field(default_factory=list)
    files: list[str] = field(default_factory=list)
    tool: str = "predicheck"
    version: str = __version__

    def extend(self, other: RunReport) -> None:
        self.records.extend(other.records)
        self.files.extend(other.files)

    @property
    def ok(self) -> bool:
        return all(r.status in PASSING for r in self.records)

    @property
    def exit_code(self) -> int:
        return 0 if self.ok else 1

    def counts(self) -> dict[str, int]:
        out = {s: 0 for s in (OK, EXPECTED_REJECT, ERROR, UNEXPECTED_ACCEPT)}
        for r in self.records:
            out[r.status] += 1
        out["total"] = len(self.records)
        return out

    def stable(self) -> dict:
        return {"tool": self.tool, "version": self.version, "files": list(self.files),
                "records": [r.stable() for r in self.records], "counts": self.counts()}

    def to_json(self) -> dict:
        d = self.stable()
        d["timing"] = {"elapsed_ms": [round(r.elapsed_ms, 3) for r in self.records]}
        return d


def _span(s: SourceSpan) -> dict:
    return {"file": s.file, "start": s.start, "end": s.end}


def _clip(text: str, limit: int = 160) -> str:
    return text if len(text) <= limit else text[:limit - 3] + "..."


class _Clock:
    def __enter__(self):
        self.t = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = (time.perf_counter() - self.t) * 1000.0


# ------------------------------------------------------------------- .hao


def check_hao_decls(decls: list[Decl], overrides: str = "", fuel: int | None = None) -> RunReport:
    """Check lemmas in order; later lemmas may cite earlier ones that checked."""
    report = RunReport()
    profile = L.INTUITIONISTIC.apply_overrides(overrides)
    lemmas: dict[str, L.Formula] = {}
    seen: set[str] = set()
    for d in decls:
        if d.error is not None:
            report.records.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
            continue
        match d.kind:
            case "profile":
                profile = d.args[0].apply_overrides(overrides)
            case "lemma":
                formula, proof = d.args
                with _Clock() as clk:
                    status, msg = OK, ""
                    if d.name in seen:
                        status, msg = ERROR, f"duplicate lemma name {d.name}"
                    else:
                        try:
                            L.check_proof(profile, {}, proof, formula, lemmas=lemmas, fuel=fuel)
                            lemmas[d.name] = formula
                        except L.ProofError as e:
                            where = f" at {_clip(print_proof(e.node), 80)}" if e.node is not None else ""
                            status, msg = ERROR, _clip(e.message, 400) + where
                seen.add(d.name)
                report.records.append(Record(d.name, "lemma", status, msg, _span(d.span), clk.ms))
            case "formula":
                f = d.args[0]
                status, msg = OK, ""
                try:
                    L.check_formula({}, f)
                    if L.free_vars(f):
                        status, msg = ERROR, f"formula has free variables {sorted(L.free_vars(f))}"
                except L.FormulaError as e:
                    status, msg = ERROR, str(e)
                report.records.append(Record(d.name, "formula", status, msg, _span(d.span)))
    return report


def hao_lemma_env(decls: list[Decl]) -> dict[str, tuple[L.Formula, L.Proof]]:
    return {d.name: d.args for d in decls if d.kind == "lemma" and d.error is None}


# ------------------------------------------------------------------- .dtt


def check_dtt_decls(decls: list[Decl], mode: D.SortMode | None = None,
                    fuel: int | None = None) -> RunReport:
    """Run check / reject / classify goals; ``mode`` overrides the file's mode declarations."""
    report = RunReport()
    current = mode or D.MLTT
    ctx: dict = {}
    for d in decls:
        if d.error is not None:
            report.records.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
            continue
        rec = lambda status, msg, ms=0.0: report.records.append(
            Record(d.name, d.kind, status, _clip(msg, 400), _span(d.span), ms))
        match d.kind:
            case "mode":
                if mode is None:
                    current = d.args[0]
            case "family":
                ctx[d.name] = d.args[0]
            case "var":
                try:
                    D.classify(current, ctx, d.args[0], fuel)
                    ctx[d.name] = d.args[0]
                except D.TypeCheckError as e:
                    rec(ERROR, str(e))
            case "check":
                e, ty = d.args
                with _Clock() as clk:
                    try:
                        D.check(current, ctx, e, ty, fuel)
                        status, msg = OK, ""
                    except D.TypeCheckError as err:
                        status, msg = ERROR, str(err)
                rec(status, msg, clk.ms)
            case "reject":
                e, ty, needle = d.args
                with _Clock() as clk:
                    try:
                        D.check(current, ctx, e, ty, fuel)
                        status, msg = UNEXPECTED_ACCEPT, "goal was expected to be rejected"
                    except D.TypeCheckError as err:
                        msg = str(err)
                        if needle and needle not in msg:
                            status, msg = ERROR, f"rejected, but without {needle!r}: {msg}"
                        else:
                            status = EXPECTED_REJECT
                rec(status, msg, clk.ms)
            case "classify":
                ty, want = d.args
                try:
                    got = D.classify(current, ctx, ty, fuel)
                    if want is not None and got is not want:
                        rec(ERROR, f"classified {got.value}, expected {want.value}")
                    else:
                        rec(OK, got.value)
                except D.TypeCheckError as err:
                    rec(ERROR, str(err))
    return report


# ------------------------------------------------------------------- .aca


def check_fol_decls(decls: list[Decl]) -> RunReport:
    """Target-side files: well-formed and closed is all there is to check."""
    report = RunReport()
    for d in decls:
        if d.error is not None:
            report.records.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
            continue
        fv = F.free_vars(d.args[0])
        status, msg = (ERROR, f"free variables {sorted(fv)}") if fv else (OK, "")
        report.records.append(Record(d.name, d.kind, status, msg, _span(d.span)))
    return report


def check_aca_decls(decls: list[Decl]) -> RunReport:
    report = RunReport()
    for d in decls:
        if d.error is not None:
            report.records.append(Record(d.name or "?", d.kind, ERROR, d.error.message, _span(d.error.span)))
            continue
        f = d.args[-1] if d.kind != "formula" else d.args[0]
        kind = "arithmetical" if A.is_arithmetical(f) else "second-order"
        report.records.append(Record(d.name, d.kind, OK, kind, _span(d.span)))
    return report


# ----------------------------------------------------------------- dispatch


def check_text(text: str, path: str, overrides: str = "", mode: D.SortMode | None = None,
               fuel: int | None = None, lang: str | None = None) -> RunReport:
    lang = lang or language_of(path)
    try:
        decls = parse_declarations(text, path, lang)
    except ParseError as e:
        report = RunReport([Record(path, "file", ERROR, e.message, _span(e.span))])
        report.files.append(path)
        return report
    if lang == "hao":
        report = check_hao_decls(decls, overrides, fuel)
    elif lang == "dtt":
        report = check_dtt_decls(decls, mode, fuel)
    elif lang == "fol":
        report = check_fol_decls(decls)
    else:
        report = check_aca_decls(decls)
    report.files.append(path)
    return report


def check_theory_file(path: str, overrides: str = "", mode: D.SortMode | None = None,
                      fuel: int | None = None) -> RunReport:
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except (OSError, UnicodeDecodeError) as e:
        report = RunReport([Record(str(path), "file", ERROR, f"cannot read: {e}",
                                   _span(SourceSpan(str(path), 0, 0)))])
        report.files.append(str(path))
        return report
    return check_text(text, str(path), overrides, mode, fuel)
