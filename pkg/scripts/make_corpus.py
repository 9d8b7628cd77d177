"""Regenerate the synthesized corpus files and their golden reports.

    python3 scripts/make_corpus.py [--root corpus] [--count 16] [--seed 2024]

Hand-written files (basics.hao, choice.hao, formulas.hao, aca-examples.aca)
are left alone; their golden reports are refreshed with the rest.
"""

import argparse
from pathlib import Path

from predicheck import emit
from predicheck.cli import cmd_corpus, render_text
from predicheck.corpus import ca_phis
from predicheck.derivations import derive_ca


def main() -> None:
    ap = argparse.ArgumentParser()
    ap.add_argument("--root", default=str(Path(__file__).resolve().parent.parent / "corpus"))
    ap.add_argument("--count", type=int, default=16)
    ap.add_argument("--seed", type=int, default=2024)
    args = ap.parse_args()
    root = Path(args.root)
    root.mkdir(parents=True, exist_ok=True)

    instances = [(f"ca-{name}", derive_ca(phi)) for name, phi in ca_phis(args.count, args.seed)]
    files = {
        "ca-schema.hao": emit.ca_file(instances),
        "ac.dtt": emit.ac_file(),
        "ac-mtt-reject.dtt": emit.ac_mtt_reject_file(),
        "ac-bang.dtt": emit.ac_bang_file(),
        "trunc-ac-bang.dtt": emit.trunc_ac_bang_file(),
    }
    for name, text in files.items():
        (root / name).write_text(text, encoding="utf-8")
    report = cmd_corpus(str(root), update=True)
    print(render_text(report), end="")
    raise SystemExit(report.exit_code)


if __name__ == "__main__":
    main()
