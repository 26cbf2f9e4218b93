"""Finite terms denoting countable ordinal words, their evaluation and syntax.

Concrete syntax: letters are identifiers, concatenation is juxtaposition or
``.``, ``^n`` is a finite power, ``^w`` the omega power, ``()`` the empty
word; e.g. ``(a b)^w . a^5``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterator, Union

from .errors import BoundsExceeded, MalformedInput
from .monoid import LetterMap, OrdinalMonoid


class _Expr:
    __slots__ = ()

    def __hash__(self) -> int:
        return self._key_hash

    def __str__(self) -> str:
        return format_expr(self)


@dataclass(frozen=True, eq=True)
class Empty(_Expr):
    @cached_property
    def _key_hash(self) -> int:
        return hash("Empty")

    __hash__ = _Expr.__hash__


@dataclass(frozen=True, eq=True)
class Letter(_Expr):
    name: str

    @cached_property
    def _key_hash(self) -> int:
        return hash(("Letter", self.name))

    __hash__ = _Expr.__hash__


@dataclass(frozen=True, eq=True)
class Concat(_Expr):
    left: "WordExpr"
    right: "WordExpr"

    @cached_property
    def _key_hash(self) -> int:
        return hash(("Concat", self.left, self.right))

    __hash__ = _Expr.__hash__


@dataclass(frozen=True, eq=True)
class Pow(_Expr):
    body: "WordExpr"
    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise MalformedInput(f"finite power exponent must be >= 1, got {self.n!r}")

    @cached_property
    def _key_hash(self) -> int:
        return hash(("Pow", self.body, self.n))

    __hash__ = _Expr.__hash__


@dataclass(frozen=True, eq=True)
class OmegaPow(_Expr):
    body: "WordExpr"

    @cached_property
    def _key_hash(self) -> int:
        return hash(("OmegaPow", self.body))

    __hash__ = _Expr.__hash__


WordExpr = Union[Empty, Letter, Concat, Pow, OmegaPow]


def concat(*parts: WordExpr) -> WordExpr:
    """Right-nested concatenation; ``Empty`` for no parts."""
    if not parts:
        return Empty()
    out = parts[-1]
    for p in reversed(parts[:-1]):
        out = Concat(p, out)
    return out


def power(body: WordExpr, n: int) -> WordExpr:
    if n == 0:
        return Empty()
    return body if n == 1 else Pow(body, n)


def runs(parts: list[WordExpr]) -> WordExpr:
    """Concatenation with maximal runs of equal parts folded into powers."""
    grouped: list[WordExpr] = []
    i = 0
    while i < len(parts):
        j = i
        while j + 1 < len(parts) and parts[j + 1] == parts[i]:
            j += 1
        grouped.append(power(parts[i], j - i + 1))
        i = j + 1
    return concat(*grouped)


def eval_expr(e: WordExpr, monoid: OrdinalMonoid, letters: LetterMap) -> int:
    """Value of the word denoted by ``e`` under the letter map."""
    memo: dict[WordExpr, int] = {}

    def go(e: WordExpr) -> int:
        got = memo.get(e)
        if got is not None:
            return got
        if isinstance(e, Empty):
            got = monoid.unit
        elif isinstance(e, Letter):
            got = letters[e.name]
        elif isinstance(e, Concat):
            got = monoid.mul(go(e.left), go(e.right))
        elif isinstance(e, Pow):
            b = go(e.body)
            got = monoid.unit
            # square-and-multiply keeps huge exponents cheap
            n, acc = e.n, b
            while n:
                if n & 1:
                    got = monoid.mul(got, acc)
                acc = monoid.mul(acc, acc)
                n >>= 1
        elif isinstance(e, OmegaPow):
            got = monoid.omega[go(e.body)]
        else:
            raise TypeError(f"not a word expression: {e!r}")
        memo[e] = got
        return got

    return go(e)


def is_finite(e: WordExpr) -> bool:
    if isinstance(e, OmegaPow):
        return False
    if isinstance(e, Concat):
        return is_finite(e.left) and is_finite(e.right)
    if isinstance(e, Pow):
        return is_finite(e.body)
    return True


def expanded_length(e: WordExpr) -> int:
    if isinstance(e, Empty):
        return 0
    if isinstance(e, Letter):
        return 1
    if isinstance(e, Concat):
        return expanded_length(e.left) + expanded_length(e.right)
    if isinstance(e, Pow):
        return e.n * expanded_length(e.body)
    raise ValueError("omega powers have no finite length")


def expand(e: WordExpr, limit: int | None = None) -> tuple[str, ...]:
    """The finite word denoted by an omega-free expression, letter by letter."""
    if not is_finite(e):
        raise ValueError("expression denotes an infinite word")
    if limit is not None and expanded_length(e) > limit:
        raise BoundsExceeded(f"expanded length exceeds {limit}")

    def go(e: WordExpr) -> tuple[str, ...]:
        if isinstance(e, Empty):
            return ()
        if isinstance(e, Letter):
            return (e.name,)
        if isinstance(e, Concat):
            return go(e.left) + go(e.right)
        return go(e.body) * e.n

    return go(e)


def letters_of(e: WordExpr) -> set[str]:
    if isinstance(e, Letter):
        return {e.name}
    if isinstance(e, Concat):
        return letters_of(e.left) | letters_of(e.right)
    if isinstance(e, (Pow, OmegaPow)):
        return letters_of(e.body)
    return set()


# Concrete syntax.

def format_expr(e: WordExpr) -> str:
    if isinstance(e, Empty):
        return "()"
    if isinstance(e, Letter):
        return e.name
    if isinstance(e, Concat):
        left = format_expr(e.left)
        if isinstance(e.left, Concat):
            left = f"({left})"
        return f"{left} . {format_expr(e.right)}"
    if isinstance(e, Pow):
        return f"{_atom(e.body)}^{e.n}"
    if isinstance(e, OmegaPow):
        return f"{_atom(e.body)}^w"
    raise TypeError(f"not a word expression: {e!r}")


def _atom(e: WordExpr) -> str:
    s = format_expr(e)
    return s if isinstance(e, (Letter, Empty)) else f"({s})"


_TOKEN = re.compile(r"\s*(?:(?P<id>[A-Za-z_][A-Za-z0-9_]*)|(?P<num>\d+)|(?P<op>[().^]))")


def _tokens(text: str) -> Iterator[tuple[str, str, int]]:
    pos = 0
    while True:
        while pos < len(text) and text[pos].isspace():
            pos += 1
        if pos >= len(text):
            yield ("end", "", pos)
            return
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise MalformedInput(f"unexpected character {text[pos]!r}", 1, pos + 1)
        kind = m.lastgroup
        yield (kind, m.group(kind), m.start(kind))
        pos = m.end()


def parse_expr(text: str) -> WordExpr:
    """Parse the concrete syntax described in the module docstring."""
    toks = list(_tokens(text))
    i = 0

    def peek() -> tuple[str, str, int]:
        return toks[i]

    def take() -> tuple[str, str, int]:
        nonlocal i
        t = toks[i]
        i += 1
        return t

    def fail(msg: str, t: tuple[str, str, int]):
        raise MalformedInput(msg, 1, t[2] + 1)

    def sequence() -> WordExpr:
        parts = [postfix()]
        while True:
            kind, val, _ = peek()
            if kind == "op" and val == ".":
                take()
                parts.append(postfix())
            elif kind == "id" or (kind == "op" and val == "("):
                parts.append(postfix())
            else:
                return concat(*parts)

    def postfix() -> WordExpr:
        e = primary()
        while peek()[0] == "op" and peek()[1] == "^":
            take()
            t = take()
            if t[0] == "num":
                n = int(t[1])
                if n == 0:
                    e = Empty()
                else:
                    e = Pow(e, n)
            elif t[0] == "id" and t[1] in ("w", "omega"):
                e = OmegaPow(e)
            else:
                fail("expected a number or 'w' after '^'", t)
        return e

    def primary() -> WordExpr:
        t = take()
        if t[0] == "id":
            return Letter(t[1])
        if t[0] == "op" and t[1] == "(":
            if peek()[0] == "op" and peek()[1] == ")":
                take()
                return Empty()
            e = sequence()
            close = take()
            if not (close[0] == "op" and close[1] == ")"):
                fail("expected ')'", close)
            return e
        fail(f"unexpected {t[1] or 'end of input'!r}", t)

    e = sequence()
    if peek()[0] != "end":
        fail(f"unexpected {peek()[1]!r}", peek())
    return e


def check_letters(e: WordExpr, letters: LetterMap) -> None:
    unknown = sorted(letters_of(e) - set(letters.alphabet))
    if unknown:
        raise MalformedInput(f"unknown letter {unknown[0]!r}")
