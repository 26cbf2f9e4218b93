"""Saturation: closure of a family of subsets under product, merge and omega.

Also the closure variants used in the completeness argument and the two
trichotomy classifiers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Hashable, Iterable, Sequence, TypeVar

from .errors import InconsistencyError, MalformedInput
from .monoid import OrdinalMonoid
from .powerset import MergeMonoidView, SubsetElement, power_of

T = TypeVar("T", bound=Hashable)

# tie-break order when several rules could produce the same member
RULES = ("seed", "unit", "product", "merge", "omega")


@dataclass(frozen=True)
class Provenance:
    """How a closure member was first produced.

    ``operands`` are member positions, except for ``seed`` where it is the
    position in the seed list.
    """

    rule: str
    operands: tuple[int, ...] = ()


def close(
    start: Iterable[T],
    binary: Callable[[T, T], T],
    unaries: Sequence[Callable[[T], T]] = (),
    on_new: Callable[[T, str, tuple[int, ...]], None] | None = None,
) -> list[T]:
    """FIFO worklist closure; members are returned in discovery order.

    Member ``i`` is combined with every member ``j <= i`` on both sides
    (``m[j]·m[i]`` then ``m[i]·m[j]``) before the unary operations are
    applied to it, in the order given.
    """
    members: list[T] = []
    index: dict[T, int] = {}

    def add(x: T, rule: str, operands: tuple[int, ...]) -> None:
        if x not in index:
            index[x] = len(members)
            members.append(x)
            if on_new is not None:
                on_new(x, rule, operands)

    for i, x in enumerate(start):
        add(x, "start", (i,))
    i = 0
    while i < len(members):
        x = members[i]
        for j in range(i + 1):
            y = members[j]
            add(binary(y, x), "product", (j, i))
            add(binary(x, y), "product", (i, j))
        for k, op in enumerate(unaries):
            add(op(x), f"unary{k}", (i,))
        i += 1
    return members


@dataclass(frozen=True)
class SaturationResult:
    """The least family containing the seeds and ``{1}``, closed under ·, merge, ω."""

    base: OrdinalMonoid = field(repr=False)
    seeds: tuple[int, ...]
    masks: tuple[int, ...]
    provenance: tuple[Provenance, ...]
    labels: tuple[str | None, ...] = ()

    def __len__(self) -> int:
        return len(self.masks)

    def __contains__(self, x: SubsetElement | int) -> bool:
        mask = x.mask if isinstance(x, SubsetElement) else x
        return mask in self.position

    @property
    def members(self) -> tuple[SubsetElement, ...]:
        return tuple(SubsetElement(self.base, m) for m in self.masks)

    @cached_property
    def position(self) -> dict[int, int]:
        return {m: i for i, m in enumerate(self.masks)}

    def index(self, x: SubsetElement | int) -> int:
        mask = x.mask if isinstance(x, SubsetElement) else x
        try:
            return self.position[mask]
        except KeyError:
            raise KeyError(f"{power_of(self.base).fmt(mask)} is not in the saturation") from None

    def replay(self, i: int) -> int:
        """Recompute member ``i`` from its recorded rule and operands."""
        return apply_rule(self.base, self.provenance[i], self.seeds, self.masks)

    def chain(self, i: int) -> list[int]:
        """Members needed to rebuild member ``i``, operands before users."""
        seen: set[int] = set()
        order: list[int] = []

        def visit(j: int) -> None:
            if j in seen:
                return
            seen.add(j)
            prov = self.provenance[j]
            if prov.rule not in ("seed", "unit"):
                for op in prov.operands:
                    visit(op)
            order.append(j)

        visit(i)
        return order


def apply_rule(
    base: OrdinalMonoid, prov: Provenance, seeds: Sequence[int], masks: Sequence[int]
) -> int:
    pm = power_of(base)
    ops = prov.operands
    if prov.rule == "seed":
        return seeds[ops[0]]
    if prov.rule == "unit":
        return pm.unit
    if prov.rule == "product":
        return pm.product(masks[ops[0]], masks[ops[1]])
    if prov.rule == "merge":
        return pm.merge(masks[ops[0]])
    if prov.rule == "omega":
        return pm.omega(masks[ops[0]])
    raise ValueError(f"unknown rule {prov.rule!r}")


def saturate(
    base: OrdinalMonoid,
    seed: Iterable[SubsetElement],
    labels: Sequence[str | None] | None = None,
) -> SaturationResult:
    """Compute the saturation of ``seed`` inside P(base).

    ``labels`` optionally names the letter behind each seed; witness
    construction needs them for the base case.
    """
    seed = list(seed)
    for s in seed:
        if s.base is not base and s.base != base:
            raise MalformedInput("seed subset over a different base monoid")
        if s.mask == 0:
            raise MalformedInput("seed contains the empty set")
    if labels is not None and len(labels) != len(seed):
        raise ValueError("one label per seed expected")
    pm = power_of(base)
    seeds = tuple(s.mask for s in seed)
    prov: list[Provenance] = []
    n_seeds = len(seeds)
    rename = {"product": "product", "unary0": "merge", "unary1": "omega"}

    def on_new(x: int, rule: str, operands: tuple[int, ...]) -> None:
        if rule == "start":
            i = operands[0]
            prov.append(Provenance("seed", (i,)) if i < n_seeds else Provenance("unit"))
        else:
            prov.append(Provenance(rename[rule], operands))

    masks = close([*seeds, pm.unit], pm.product, [pm.merge, pm.omega], on_new)
    return SaturationResult(
        base,
        seeds,
        tuple(masks),
        tuple(prov),
        tuple(labels) if labels is not None else (None,) * n_seeds,
    )


def saturate_letters(base: OrdinalMonoid, letters) -> SaturationResult:
    """Saturation of the letter images ``{{h(a)} | a ∈ Σ}``."""
    seed, labels, seen = [], [], set()
    for a, x in letters.items:
        if x in seen:
            continue
        seen.add(x)
        seed.append(SubsetElement(base, 1 << x))
        labels.append(a)
    return saturate(base, seed, labels)


# Closure variants inside an arbitrary merge-monoid view.

CLOS_KINDS = ("plus", "g_plus", "g_star", "g_ord_plus", "g_ord", "g_omega")


def clos(
    v: MergeMonoidView, a: Iterable[Hashable], which: str, prose_omega: bool = False
) -> frozenset:
    """Closures of ``a`` in the view ``v``.

    ``plus``: under ·; ``g_plus``: under · and merge; ``g_star``: ``g_plus``
    plus the unit; ``g_ord_plus``: under ·, merge and ω; ``g_ord``: that plus
    the unit; ``g_omega``: ``{x·y^ω | x, y ∈ g_plus}`` (or over ``plus`` when
    ``prose_omega`` is set).
    """
    a = list(dict.fromkeys(a))
    if which == "plus":
        return frozenset(close(a, v.product))
    if which == "g_plus":
        return frozenset(close(a, v.product, [v.merge]))
    if which == "g_star":
        return clos(v, a, "g_plus") | {v.unit}
    if which == "g_ord_plus":
        return frozenset(close(a, v.product, [v.merge, v.omega]))
    if which == "g_ord":
        return clos(v, a, "g_ord_plus") | {v.unit}
    if which == "g_omega":
        base = clos(v, a, "plus" if prose_omega else "g_plus")
        return frozenset(v.product(x, v.omega(y)) for x in base for y in base)
    raise ValueError(f"unknown closure kind {which!r}; expected one of {CLOS_KINDS}")


def set_product(v: MergeMonoidView, xs: Iterable[Hashable], ys: Iterable[Hashable]) -> frozenset:
    ys = list(ys)
    return frozenset(v.product(x, y) for x in xs for y in ys)


@dataclass(frozen=True)
class LeftDrop:
    letter: Hashable


@dataclass(frozen=True)
class RightDrop:
    letter: Hashable


@dataclass(frozen=True)
class Maximum:
    element: Hashable


@dataclass(frozen=True)
class OmegaDrop:
    pass


@dataclass(frozen=True)
class Degenerate:
    pass


def _ordered(a: Iterable[Hashable]) -> list:
    a = list(dict.fromkeys(a))
    if not a:
        raise ValueError("trichotomy needs a nonempty set")
    return a


def trichotomy_finite(a: Iterable[Hashable], v: MergeMonoidView):
    """Classify ``C = Clos_g⁺(a)``: a letter dropping ``C`` on the left, on the
    right, or the maximum of ``C``. Dropping cases take precedence."""
    a = _ordered(a)
    c = clos(v, a, "g_plus")
    for x in a:
        if set_product(v, [x], c) < c:
            return LeftDrop(x)
    for x in a:
        if set_product(v, c, [x]) < c:
            return RightDrop(x)
    for top in c:
        if all(v.leq(y, top) for y in c):
            return Maximum(top)
    raise InconsistencyError("finite trichotomy: no case applies")


def trichotomy_ordinal(a: Iterable[Hashable], v: MergeMonoidView):
    """Classify ``C = Clos_ord⁺(a)``: a letter dropping ``C`` on the left, the
    closure of the ω-part being strictly smaller, or ``C`` degenerate
    (``x·y = y`` and ``x^ω = y^ω`` throughout)."""
    a = _ordered(a)
    c = clos(v, a, "g_ord_plus")
    for x in a:
        if set_product(v, [x], c) < c:
            return LeftDrop(x)
    if clos(v, clos(v, a, "g_omega"), "g_ord_plus") < c:
        return OmegaDrop()
    if all(v.product(x, y) == y and v.omega(x) == v.omega(y) for x in c for y in c):
        return Degenerate()
    raise InconsistencyError("ordinal trichotomy: no case applies")
