"""Command-line driver: check, translate, synthesize, corpus."""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path

from . import __version__
from . import dtt as D
from . import emit as E
from . import logic as L
from .derivations import DerivationError, derive_ca
from .sexp import ParseError
from .syntax import language_of, parse, parse_declarations
from .theory import ERROR, OK, Record, RunReport, _span, check_text, check_theory_file

TARGETS = {"mltt": ("hao", E.emit_mltt, ".mltt.dtt"),
           "trunc": ("hao", E.emit_trunc, ".trunc.dtt"),
           "fol": ("hao", E.emit_fol, ".fol"),
           "emtt": ("aca", E.emit_emtt, ".emtt.dtt")}

SCHEMAS = {"ac": E.ac_file, "ac-bang": E.ac_bang_file, "trunc-ac-bang": E.trunc_ac_bang_file}

SOURCE_SUFFIXES = (".hao", ".dtt", ".aca")


class UsageError(Exception):
    pass


@dataclass(frozen=True)
class Options:
    profile: str = ""
    mode: D.SortMode | None = None
    fuel: int | None = None
    jobs: int = 1


def _mode(name: str | None) -> D.SortMode | None:
    return None if name is None else D.SortMode(name)


def _parallel(fn, items: list, jobs: int) -> list:
    """Order-preserving map; falls back to a plain loop for one job."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(i) for i in items]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def _check_one(args: tuple) -> RunReport:
    path, opts = args
    return check_theory_file(path, opts.profile, opts.mode, opts.fuel)


def _check_named(args: tuple) -> RunReport:
    path, name, opts = args
    text = Path(path).read_text(encoding="utf-8")
    return check_text(text, name, opts.profile, opts.mode, opts.fuel)


# ---------------------------------------------------------------- commands


def cmd_check(paths: list[str], opts: Options = Options()) -> RunReport:
    report = RunReport()
    for r in _parallel(_check_one, [(str(p), opts) for p in paths], opts.jobs):
        report.extend(r)
    return report


def cmd_translate(src: str, target: str, out: str | None = None, check: bool = False,
                  opts: Options = Options()) -> RunReport:
    if target not in TARGETS:
        raise UsageError(f"unknown target {target!r}; choose from {', '.join(TARGETS)}")
    want, emitter, suffix = TARGETS[target]
    lang = language_of(src)
    if Path(src).suffix != f".{want}":
        raise UsageError(f"the {target} target translates .{want} files, got {src}")
    try:
        text = Path(src).read_text(encoding="utf-8")
        decls = parse_declarations(text, src, lang)
    except OSError as e:
        return _failed(src, f"cannot read: {e}")
    except ParseError as e:
        return RunReport([Record(src, "file", ERROR, e.message, _span(e.span))], [src])
    out_text, errors = emitter(decls, src)
    out = out or str(Path(src).with_suffix("")) + suffix
    Path(out).write_text(out_text, encoding="utf-8")
    report = RunReport(list(errors), [src])
    if check:
        report.extend(check_text(out_text, out, fuel=opts.fuel, lang="fol" if target == "fol" else "dtt"))
    else:
        failed = {r.name for r in errors}
        for d in decls:
            if d.error is None and d.kind in ("formula", "lemma", "comprehension", "induction") \
                    and d.name not in failed:
                report.records.append(Record(d.name, d.kind, OK, f"translated to {target}", _span(d.span)))
    return report


def cmd_synthesize(schema: str, phis: list[str] = (), phi_file: str | None = None,
                   out: str | None = None, opts: Options = Options()) -> RunReport:
    if schema == "ca":
        instances, defines = _ca_instances(phis, phi_file)
        text = E.ca_file(instances, defines)
        out = out or "ca.hao"
    elif schema in SCHEMAS:
        if phis or phi_file:
            raise UsageError(f"the {schema} schema is closed and takes no formula")
        text = SCHEMAS[schema]()
        out = out or f"{schema}.dtt"
    else:
        raise UsageError(f"unknown schema {schema!r}")
    Path(out).write_text(text, encoding="utf-8")
    return check_text(text, out, opts.profile, opts.mode, opts.fuel)


def _ca_instances(phis, phi_file):
    if not phis and not phi_file:
        raise UsageError("the ca schema needs a formula: pass --phi or --phi-file")
    named: list[tuple[str, L.Formula]] = []
    defines: list[tuple[str, str]] = []
    for i, text in enumerate(phis):
        try:
            named.append((f"ca-{i}", parse(text, "formula", "<phi>").payload))
        except ParseError as e:
            raise UsageError(f"cannot parse phi: {e.message}") from None
    if phi_file:
        try:
            src = Path(phi_file).read_text(encoding="utf-8")
        except OSError as e:
            raise UsageError(f"cannot read {phi_file}: {e}") from None
        for d in parse_declarations(src, phi_file, "hao"):
            if d.error is not None:
                raise UsageError(f"{phi_file}: {d.name}: {d.error.message}")
            if d.kind == "formula":
                named.append((f"ca-{d.name}", d.args[0]))
            elif d.kind == "define":
                defines.append((d.name, _source(src, d.span)))
    try:
        return [(name, derive_ca(phi)) for name, phi in named], _define_args(defines)
    except DerivationError as e:
        raise UsageError(str(e)) from None


def _source(text: str, span) -> str:
    return text[span.start:span.end]


def _define_args(defines):
    """Keep the original definition text; strip the ``(define name`` wrapper."""
    out = []
    for name, src in defines:
        body = src.strip()[1:-1].split(None, 2)[2]
        out.append((name, body))
    return out


def cmd_corpus(root: str = "corpus", update: bool = False, opts: Options = Options()) -> RunReport:
    """Check every corpus file and compare its stable report against the golden copy."""
    base = Path(root)
    files = sorted(p for p in base.iterdir() if p.suffix in SOURCE_SUFFIXES)
    golden = base / "golden"
    reports = _parallel(_check_named, [(str(p), p.name, opts) for p in files], opts.jobs)
    report = RunReport()
    for p, r in zip(files, reports):
        report.extend(r)
        gpath = golden / f"{p.name}.json"
        rendered = stable_json(r)
        if update:
            golden.mkdir(parents=True, exist_ok=True)
            gpath.write_text(rendered, encoding="utf-8")
        elif not gpath.exists():
            report.records.append(Record(p.name, "golden", ERROR, f"no golden report {gpath.name}",
                                         {"file": p.name, "start": 0, "end": 0}))
        elif gpath.read_text(encoding="utf-8") != rendered:
            report.records.append(Record(p.name, "golden", ERROR, "report differs from golden copy",
                                         {"file": p.name, "start": 0, "end": 0}))
    return report


def stable_json(report: RunReport) -> str:
    return json.dumps(report.stable(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def _failed(path: str, message: str) -> RunReport:
    return RunReport([Record(path, "file", ERROR, message, {"file": path, "start": 0, "end": 0})], [path])


# ------------------------------------------------------------------ output


def render_text(report: RunReport) -> str:
    lines = []
    for r in report.records:
        sp = r.span
        where = f"{sp['file']}:{sp['start']}-{sp['end']}"
        tail = f": {r.message}" if r.message else ""
        lines.append(f"{r.status:17} {r.kind:13} {r.name}  [{where}]{tail}")
    c = report.counts()
    lines.append(f"{c['total']} records: {c[OK]} ok, {c['expected-reject']} expected-reject, "
                 f"{c['error']} error, {c['unexpected-accept']} unexpected-accept")
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report on stdout")
    common.add_argument("--fuel", type=int, default=None, help="reduction fuel (default $PREDICHECK_FUEL or 10^6)")
    common.add_argument("--jobs", type=int, default=1, help="files checked concurrently")
    common.add_argument("--profile", default="", help="axiom overrides such as +lem,-irc")
    common.add_argument("--mode", choices=[m.value for m in D.SortMode], default=None,
                        help="force the sort discipline for .dtt files")

    ap = argparse.ArgumentParser(prog="predicheck", description=__doc__)
    ap.add_argument("--version", action="version", version=f"predicheck {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    c = sub.add_parser("check", parents=[common], help="check theory files")
    c.add_argument("paths", nargs="+")

    t = sub.add_parser("translate", parents=[common], help="translate a theory file")
    t.add_argument("input")
    t.add_argument("--to", required=True, choices=list(TARGETS))
    t.add_argument("-o", "--output")
    t.add_argument("--check", action="store_true", help="kernel-check the translated output")

    s = sub.add_parser("synthesize", parents=[common], help="write and check a derivation")
    s.add_argument("schema", choices=["ca", *SCHEMAS])
    s.add_argument("--phi", action="append", default=[], help="formula in x (repeatable)")
    s.add_argument("--phi-file", help=".hao file whose formula declarations are instances")
    s.add_argument("-o", "--output")

    k = sub.add_parser("corpus", parents=[common], help="run the corpus against golden reports")
    k.add_argument("root", nargs="?", default="corpus")
    k.add_argument("--update", action="store_true", help="rewrite the golden reports")
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        if args.profile:
            L.INTUITIONISTIC.apply_overrides(args.profile)
        if args.fuel is not None and args.fuel <= 0:
            raise UsageError("--fuel must be positive")
        opts = Options(args.profile, _mode(args.mode), args.fuel, max(1, args.jobs))
        match args.command:
            case "check":
                report = cmd_check(args.paths, opts)
            case "translate":
                report = cmd_translate(args.input, args.to, args.output, args.check, opts)
            case "synthesize":
                report = cmd_synthesize(args.schema, args.phi, args.phi_file, args.output, opts)
            case "corpus":
                report = cmd_corpus(args.root, args.update, opts)
    except (UsageError, ValueError) as e:
        ap.error(str(e))
    except OSError as e:
        print(f"predicheck: {e}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(json.dumps(report.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_text(report))
    return report.exit_code


if __name__ == "__main__":
    sys.exit(main())
