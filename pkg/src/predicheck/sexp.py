"""S-expression reader with byte-offset spans.

Every surface language in the package is written as uniform prefix
s-expressions; this module only knows about atoms and lists.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start: int
    end: int

    def __str__(self) -> str:
        return f"{self.file}:{self.start}-{self.end}"


class ParseError(Exception):
    def __init__(self, message: str, span: SourceSpan):
        super().__init__(f"{span}: {message}")
        self.message = message
        self.span = span


@dataclass(frozen=True)
class Atom:
    text: str
    span: SourceSpan = field(compare=False)

    def __str__(self) -> str:
        return self.text


@dataclass(frozen=True)
class SList:
    items: tuple
    span: SourceSpan = field(compare=False)

    def __len__(self) -> int:
        return len(self.items)

    def __getitem__(self, i):
        return self.items[i]

    def head(self) -> str | None:
        if self.items and isinstance(self.items[0], Atom):
            return self.items[0].text
        return None

    def __str__(self) -> str:
        return "(" + " ".join(str(x) for x in self.items) + ")"


SExp = Atom | SList

# ASCII identifiers plus the operator spellings used by the grammars (->, *, =, +).
ATOM_CHARS = r"A-Za-z0-9_!?'.+*/<>=\-:"
_TOKEN = re.compile(rf"\s+|;[^\n]*|\(|\)|[{ATOM_CHARS}]+|\"[^\"\n]*\"")


def read_all(text: str, file: str = "<input>") -> list[SExp]:
    """Read every top-level form in ``text``."""
    stack: list[tuple[int, list]] = []
    top: list[SExp] = []
    pos = 0
    if not text.isascii():
        bad = next(i for i, ch in enumerate(text) if not ch.isascii())
        off = len(text[:bad].encode("utf-8"))
        raise ParseError(f"non-ASCII character {text[bad]!r}", SourceSpan(file, off, off + 1))
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            raise ParseError(f"unexpected character {text[pos]!r}", SourceSpan(file, pos, pos + 1))
        tok = m.group(0)
        start, pos = pos, m.end()
        if tok[0].isspace() or tok[0] == ";":
            continue
        if tok == "(":
            stack.append((start, []))
        elif tok == ")":
            if not stack:
                raise ParseError("unbalanced ')'", SourceSpan(file, start, pos))
            open_at, items = stack.pop()
            node = SList(tuple(items), SourceSpan(file, open_at, pos))
            (stack[-1][1] if stack else top).append(node)
        else:
            node = Atom(tok, SourceSpan(file, start, pos))
            (stack[-1][1] if stack else top).append(node)
    if stack:
        open_at, _ = stack[-1]
        raise ParseError("unclosed '('", SourceSpan(file, open_at, len(text)))
    return top


def read_one(text: str, file: str = "<input>") -> SExp:
    forms = read_all(text, file)
    if len(forms) != 1:
        span = SourceSpan(file, 0, len(text))
        raise ParseError(f"expected exactly one form, found {len(forms)}", span)
    return forms[0]
