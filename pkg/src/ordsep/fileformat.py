"""Line-oriented text format for presentations, letter maps and languages.

::

    # comments run to the end of the line
    elements: 1 a aa
    unit: 1
    mul: a a aa          # one product per line, or a whole table:
    table:
      1  a  aa
      a  aa a
      aa a  aa
    omega: a aa
    letters: a->a b->aa
    accept NAME: a aa

A file may instead start with ``monoid: PATH`` to reuse the presentation
(and letter map) of another file; the path is relative to the including
file. Identifiers are whitespace-separated; unknown or repeated entries are
errors.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import MalformedInput
from .monoid import LetterMap, OrdinalMonoid

_WORD = re.compile(r"\S+")


@dataclass
class PresentationFile:
    monoid: OrdinalMonoid
    letters: LetterMap | None = None
    accepts: dict[str, frozenset[int]] = field(default_factory=dict)
    source: str | None = None

    def language(self, name: str | None = None):
        from .decision import LanguageRecognizer

        if self.letters is None:
            raise MalformedInput(f"{self.source or 'input'}: no 'letters:' line")
        if name is None:
            if len(self.accepts) != 1:
                names = ", ".join(self.accepts) or "none"
                raise MalformedInput(
                    f"{self.source or 'input'}: name one accept block (available: {names})"
                )
            name = next(iter(self.accepts))
        if name not in self.accepts:
            raise MalformedInput(f"{self.source or 'input'}: no accept block named {name!r}")
        return LanguageRecognizer(self.monoid, self.letters, self.accepts[name], name)


def _tokens(line: str) -> list[tuple[str, int]]:
    body = line.split("#", 1)[0]
    return [(m.group(), m.start() + 1) for m in _WORD.finditer(body)]


def parse_presentation(text: str, source: str | None = None, base_dir: Path | None = None) -> PresentationFile:
    lines = text.splitlines()
    names: list[str] | None = None
    index: dict[str, int] = {}
    unit: int | None = None
    products: dict[tuple[int, int], int] = {}
    omegas: dict[int, int] = {}
    letters: list[tuple[str, int]] = []
    letter_lines: dict[str, int] = {}
    accepts: dict[str, frozenset[int]] = {}
    included: PresentationFile | None = None
    table_rows: list[tuple[int, list[tuple[str, int]]]] | None = None
    seen_table = False

    def err(msg: str, line: int, col: int | None = None):
        raise MalformedInput(msg, line, col, source)

    def elem(tok: tuple[str, int], ln: int) -> int:
        if names is None:
            err("element used before the 'elements:' line", ln, tok[1])
        if tok[0] not in index:
            err(f"unknown element {tok[0]!r}", ln, tok[1])
        return index[tok[0]]

    def finish_table(end_line: int) -> None:
        nonlocal table_rows
        if table_rows is None:
            return
        n = len(names)
        if len(table_rows) != n:
            err(f"table has {len(table_rows)} rows, expected {n}", end_line)
        for x, (ln, row) in enumerate(table_rows):
            if len(row) != n:
                err(f"table row for {names[x]!r} has {len(row)} entries, expected {n}", ln)
            for y, tok in enumerate(row):
                if (x, y) in products:
                    err(f"duplicate product {names[x]}·{names[y]}", ln, tok[1])
                products[x, y] = elem(tok, ln)
        table_rows = None

    for ln, line in enumerate(lines, 1):
        toks = _tokens(line)
        if not toks:
            continue
        head, col = toks[0]
        if table_rows is not None:
            table_rows.append((ln, toks))
            if len(table_rows) == len(names):
                finish_table(ln)
            continue
        if head == "accept":
            if len(toks) < 2 or not toks[1][0].endswith(":") or len(toks[1][0]) == 1:
                err("expected 'accept NAME: elements…'", ln, col)
            lname = toks[1][0][:-1]
            if lname in accepts:
                err(f"duplicate accept block {lname!r}", ln, toks[1][1])
            members = []
            for tok in toks[2:]:
                x = elem(tok, ln)
                if x in members:
                    err(f"element {tok[0]!r} listed twice", ln, tok[1])
                members.append(x)
            accepts[lname] = frozenset(members)
            continue
        if not head.endswith(":"):
            err(f"expected a directive, found {head!r}", ln, col)
        key, args = head[:-1], toks[1:]
        if key == "monoid":
            if names is not None or included is not None:
                err("'monoid:' must come first and only once", ln, col)
            if len(args) != 1:
                err("'monoid:' takes one path", ln, col)
            path = Path(args[0][0])
            if not path.is_absolute():
                path = (base_dir or Path.cwd()) / path
            included = load_presentation(path)
            names = list(included.monoid.names)
            index = {nm: i for i, nm in enumerate(names)}
        elif included is not None and key in ("elements", "unit", "mul", "table", "omega"):
            err(f"'{key}:' is not allowed after 'monoid:'", ln, col)
        elif key == "elements":
            if names is not None:
                err("duplicate 'elements:' line", ln, col)
            if not args:
                err("empty carrier: a monoid needs a unit", ln, col)
            names = []
            for tok, c in args:
                if tok.endswith(":") or "->" in tok:
                    err(f"element name {tok!r} may not end in ':' or contain '->'", ln, c)
                if tok in index:
                    err(f"duplicate element {tok!r}", ln, c)
                index[tok] = len(names)
                names.append(tok)
        elif key == "unit":
            if unit is not None:
                err("duplicate 'unit:' line", ln, col)
            if len(args) != 1:
                err("'unit:' takes one element", ln, col)
            unit = elem(args[0], ln)
        elif key == "mul":
            if len(args) != 3:
                err("'mul:' takes three elements x y z meaning x·y = z", ln, col)
            x, y, z = (elem(t, ln) for t in args)
            if (x, y) in products:
                err(f"duplicate product {names[x]}·{names[y]}", ln, args[0][1])
            products[x, y] = z
        elif key == "table":
            if names is None:
                err("'table:' before 'elements:'", ln, col)
            if seen_table:
                err("duplicate 'table:' block", ln, col)
            if args:
                err("'table:' rows go on the following lines", ln, args[0][1])
            seen_table = True
            table_rows = []
        elif key == "omega":
            if len(args) != 2:
                err("'omega:' takes two elements x y meaning x^ω = y", ln, col)
            x, y = (elem(t, ln) for t in args)
            if x in omegas:
                err(f"duplicate omega entry for {names[x]}", ln, args[0][1])
            omegas[x] = y
        elif key == "letters":
            if names is None:
                err("'letters:' before 'elements:'", ln, col)
            for tok, c in args:
                if "->" not in tok:
                    err(f"expected letter->element, found {tok!r}", ln, c)
                a, target = tok.split("->", 1)
                if not a:
                    err("empty letter name", ln, c)
                if a in letter_lines:
                    err(f"duplicate letter {a!r}", ln, c)
                letter_lines[a] = ln
                letters.append((a, elem((target, c + len(a) + 2), ln)))
        else:
            err(f"unknown directive {key!r}", ln, col)
    finish_table(len(lines))

    end = len(lines) or 1
    if included is not None:
        monoid = included.monoid
        lm = LetterMap(tuple(letters)) if letters else included.letters
        return PresentationFile(monoid, lm, accepts, source)
    if names is None:
        err("missing 'elements:' line", end)
    if unit is None:
        err("missing 'unit:' line", end)
    n = len(names)
    for x in range(n):
        for y in range(n):
            if (x, y) not in products:
                err(f"missing product entry {names[x]}·{names[y]}", end)
        if x not in omegas:
            err(f"missing omega entry for {names[x]}", end)
    table = [[products[x, y] for y in range(n)] for x in range(n)]
    monoid = OrdinalMonoid(names, unit, table, [omegas[x] for x in range(n)])
    return PresentationFile(monoid, LetterMap(tuple(letters)) if letters else None, accepts, source)


def load_presentation(path: str | Path) -> PresentationFile:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as err:
        raise MalformedInput(f"cannot read {path}: {err.strerror}") from None
    return parse_presentation(text, str(path), path.parent)


def print_presentation(
    monoid: OrdinalMonoid,
    letters: LetterMap | None = None,
    accepts: dict[str, frozenset[int]] | None = None,
) -> str:
    nm = monoid.names
    width = max(len(x) for x in nm)
    out = [f"elements: {' '.join(nm)}", f"unit: {nm[monoid.unit]}", "table:"]
    for row in monoid.product:
        out.append("  " + " ".join(nm[z].ljust(width) for z in row).rstrip())
    for x, y in enumerate(monoid.omega):
        out.append(f"omega: {nm[x]} {nm[y]}")
    if letters is not None and len(letters):
        out.append("letters: " + " ".join(f"{a}->{nm[x]}" for a, x in letters.items))
    for name, members in (accepts or {}).items():
        out.append(f"accept {name}: " + " ".join(nm[x] for x in sorted(members)).rstrip())
    return "\n".join(out) + "\n"
