"""Ehrenfeucht–Fraïssé oracle for finite words.

Two finite words are ``≡ᵏ`` iff their depth-``k`` FO[<] types agree. For
words the type is computed compositionally: the depth-``k`` type of ``w``
is the set of triples (type of the prefix, letter, type of the suffix) at
depth ``k - 1`` over all positions. Types are interned so that equality is
a pointer comparison.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as cartesian

from .errors import BoundsExceeded
from .words import WordExpr, expand, expanded_length, is_finite

MAX_LENGTH = 64
MAX_DEPTH = 4

_interned: dict[frozenset, int] = {}


def _intern(t: frozenset) -> int:
    got = _interned.get(t)
    if got is None:
        got = _interned[t] = len(_interned) + 1
    return got


@lru_cache(maxsize=None)
def fo_type(word: tuple[str, ...], k: int) -> int:
    """Interned identifier of the depth-``k`` type of ``word``."""
    if k == 0:
        return 0
    return _intern(
        frozenset(
            (fo_type(word[:i], k - 1), word[i], fo_type(word[i + 1 :], k - 1))
            for i in range(len(word))
        )
    )


def ef_equiv_words(u: tuple[str, ...], v: tuple[str, ...], k: int) -> bool:
    return fo_type(tuple(u), k) == fo_type(tuple(v), k)


def ef_equiv_finite(
    u: WordExpr, v: WordExpr, k: int, max_length: int = MAX_LENGTH, max_depth: int = MAX_DEPTH
) -> bool:
    """Whether Duplicator wins the ``k``-round game on the two finite words."""
    if k < 0:
        raise ValueError("k must be non-negative")
    if k > max_depth:
        raise BoundsExceeded(f"depth {k} exceeds the bound {max_depth}")
    for e in (u, v):
        if not is_finite(e):
            raise ValueError(f"{e} is not a finite word")
        if expanded_length(e) > max_length:
            raise BoundsExceeded(f"{e} is longer than {max_length}")
    return ef_equiv_words(expand(u), expand(v), k)


def ef_game(u: tuple[str, ...], v: tuple[str, ...], k: int) -> bool:
    """Direct search of the ``k``-round game; exponential, for cross-checks only."""

    def partial_iso(ps: tuple[int, ...], qs: tuple[int, ...]) -> bool:
        for i, j in zip(ps, qs):
            if u[i] != v[j]:
                return False
        for (i1, j1), (i2, j2) in cartesian(zip(ps, qs), repeat=2):
            if (i1 < i2) != (j1 < j2) or (i1 == i2) != (j1 == j2):
                return False
        return True

    @lru_cache(maxsize=None)
    def duplicator_wins(ps: tuple[int, ...], qs: tuple[int, ...], rounds: int) -> bool:
        if not partial_iso(ps, qs):
            return False
        if rounds == 0:
            return True
        for i in range(len(u)):
            if not any(duplicator_wins(ps + (i,), qs + (j,), rounds - 1) for j in range(len(v))):
                return False
        for j in range(len(v)):
            if not any(duplicator_wins(ps + (i,), qs + (j,), rounds - 1) for i in range(len(u))):
                return False
        return True

    return duplicator_wins((), (), k)
