"""The power ordinal monoid P(M), the merge operator and merge-monoid views.

Subsets of the carrier are bitmasks internally (bit ``i`` set iff element
``i`` belongs to the set); :class:`SubsetElement` is the public wrapper.
The empty set is not a carrier element of P(M) here.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product as cartesian
from typing import Callable, Hashable, Iterable, Sequence

from .errors import BoundsExceeded, MalformedInput
from .monoid import OrdinalMonoid, Violation, cycle_idempotent, power_cycle

DEFAULT_CAP = 12


def bits(mask: int) -> list[int]:
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(indices: Iterable[int]) -> int:
    m = 0
    for i in indices:
        m |= 1 << i
    return m


def is_subset(a: int, b: int) -> bool:
    return a & ~b == 0


class PowerMonoid:
    """Operations of P(M) on bitmasks, memoised per base monoid."""

    def __init__(self, base: OrdinalMonoid):
        self.base = base
        self.unit = 1 << base.unit
        self._prod: dict[tuple[int, int], int] = {}
        self._plus: dict[int, int] = {}
        self._omega: dict[int, int] = {}
        self._merge: dict[int, int] = {}
        self._left_rows = [
            [1 << base.product[x][y] for y in range(len(base))] for x in range(len(base))
        ]

    def product(self, a: int, b: int) -> int:
        key = (a, b)
        got = self._prod.get(key)
        if got is None:
            ys = bits(b)
            got = 0
            for x in bits(a):
                row = self._left_rows[x]
                for y in ys:
                    got |= row[y]
            self._prod[key] = got
        return got

    def plus(self, a: int) -> int:
        """Elements of the subsemigroup generated by ``a``."""
        got = self._plus.get(a)
        if got is None:
            got = a
            frontier = a
            while frontier:
                new = self.product(frontier, a) & ~got
                got |= new
                frontier = new
            self._plus[a] = got
        return got

    def omega(self, a: int) -> int:
        if a == 0:
            raise ValueError("omega-power of the empty set is undefined")
        got = self._omega.get(a)
        if got is None:
            s = self.plus(a)
            om = self.base.omega
            t_omegas = mask_of(om[t] for t in bits(s))
            got = self.product(s, t_omegas)
            self._omega[a] = got
        return got

    def powers(self, a: int) -> tuple[list[int], int]:
        return power_cycle(a, self.product)

    def merge(self, a: int) -> int:
        got = self._merge.get(a)
        if got is None:
            powers, start = self.powers(a)
            got = 0
            for p in powers[start:]:
                got |= p
            self._merge[a] = got
        return got

    def idempotent_power(self, a: int) -> int:
        powers, start = self.powers(a)
        return cycle_idempotent(powers, start, self.product)

    def fmt(self, a: int) -> str:
        return "{" + ",".join(self.base.names[i] for i in bits(a)) + "}"


@lru_cache(maxsize=64)
def power_of(base: OrdinalMonoid) -> PowerMonoid:
    return PowerMonoid(base)


@dataclass(frozen=True)
class SubsetElement:
    """A subset of the carrier of ``base``; an element of P(M)."""

    base: OrdinalMonoid = field(repr=False)
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.base):
            raise MalformedInput("subset mentions elements outside the carrier")

    @classmethod
    def of(cls, base: OrdinalMonoid, members: Iterable[int | str]) -> "SubsetElement":
        idx = [base.index(x) if isinstance(x, str) else x for x in members]
        for i in idx:
            if not 0 <= i < len(base):
                raise MalformedInput(f"element index {i} outside the carrier")
        return cls(base, mask_of(idx))

    @property
    def members(self) -> tuple[int, ...]:
        return tuple(bits(self.mask))

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(self.base.names[i] for i in bits(self.mask))

    def __contains__(self, x: int) -> bool:
        return bool(self.mask >> x & 1)

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __le__(self, other: "SubsetElement") -> bool:
        _same_base(self, other)
        return is_subset(self.mask, other.mask)

    def __str__(self) -> str:
        return "{" + ", ".join(self.names) + "}"


def _same_base(x: SubsetElement, y: SubsetElement) -> PowerMonoid:
    if x.base is not y.base and x.base != y.base:
        raise MalformedInput("subsets live over different base monoids")
    return power_of(x.base)


def p_product(x: SubsetElement, y: SubsetElement) -> SubsetElement:
    """``{a·b | a ∈ x, b ∈ y}``."""
    pm = _same_base(x, y)
    return SubsetElement(x.base, pm.product(x.mask, y.mask))


def generated_subsemigroup(x: SubsetElement) -> SubsetElement:
    return SubsetElement(x.base, power_of(x.base).plus(x.mask))


def p_omega(x: SubsetElement) -> SubsetElement:
    """``{s·t^ω | s, t ∈ x⁺}``; undefined (ValueError) on the empty set."""
    return SubsetElement(x.base, power_of(x.base).omega(x.mask))


def p_merge(x: SubsetElement) -> SubsetElement:
    """Union of the eventual cycle of ``x, x², x³, …``."""
    return SubsetElement(x.base, power_of(x.base).merge(x.mask))


def subset_name(base: OrdinalMonoid, mask: int) -> str:
    return "{" + ",".join(base.names[i] for i in bits(mask)) + "}"


def power_presentation(
    base: OrdinalMonoid,
    generators: Iterable[SubsetElement] | None = None,
    cap: int = DEFAULT_CAP,
    with_merge: bool = True,
) -> tuple[OrdinalMonoid, tuple[int, ...]]:
    """Presentation of P(M) without the empty set.

    With ``generators`` the carrier is the fragment reachable from them and
    ``{1}`` under product, omega and (if ``with_merge``) merge; otherwise all
    nonempty subsets, which requires ``|M| <= cap``. Returns the presentation
    and the bitmask of each of its elements.
    """
    pm = power_of(base)
    if generators is None:
        if len(base) > cap:
            raise BoundsExceeded(
                f"|M| = {len(base)} exceeds the cap {cap}; pass generators for a fragment"
            )
        masks = list(range(1, 1 << len(base)))
        masks.sort(key=lambda m: (bin(m).count("1"), bits(m)))
    else:
        from .saturation import close

        seeds = [g.mask for g in generators]
        unaries = ([pm.merge] if with_merge else []) + [pm.omega]
        masks = list(close([*seeds, pm.unit], pm.product, unaries))
    pos = {m: i for i, m in enumerate(masks)}
    table = [[pos[pm.product(a, b)] for b in masks] for a in masks]
    om = [pos[pm.omega(a)] for a in masks]
    names = [subset_name(base, m) for m in masks]
    return OrdinalMonoid(names, pos[pm.unit], table, om), tuple(masks)


@dataclass(frozen=True)
class MergeMonoidView:
    """A finite ordered ordinal monoid with a merge operation, given by callables.

    ``leq`` is the partial order; for power monoids it is subset inclusion.
    """

    elements: tuple[Hashable, ...]
    unit: Hashable
    product: Callable[[Hashable, Hashable], Hashable]
    omega: Callable[[Hashable], Hashable]
    merge: Callable[[Hashable], Hashable]
    leq: Callable[[Hashable, Hashable], bool]
    fmt: Callable[[Hashable], str] = str

    def with_merge(self, merge: Callable[[Hashable], Hashable]) -> "MergeMonoidView":
        return MergeMonoidView(
            self.elements, self.unit, self.product, self.omega, merge, self.leq, self.fmt
        )


def power_view(base: OrdinalMonoid, carrier: Sequence[int] | None = None) -> MergeMonoidView:
    """View of P(M) (or of a closed family of masks such as a saturation)."""
    pm = power_of(base)
    if carrier is None:
        carrier = range(1, 1 << len(base))
    return MergeMonoidView(
        tuple(carrier), pm.unit, pm.product, pm.omega, pm.merge, is_subset, pm.fmt
    )


def monoid_view(m: OrdinalMonoid, merge: Callable[[int], int] | None = None) -> MergeMonoidView:
    """View of a plain presentation, ordered by equality.

    The default merge is the idempotent power, which is a merge operator
    exactly when ``m`` is aperiodic.
    """
    from .monoid import idempotent_power

    if merge is None:
        def merge(x: int) -> int:
            return idempotent_power(m, x)

    return MergeMonoidView(
        tuple(m), m.unit, m.mul, m.omega.__getitem__, merge, lambda x, y: x == y, m.name
    )


def validate_merge_axioms(v: MergeMonoidView) -> list[Violation]:
    """Check the merge laws and monotonicity on a finite view.

    Laws: ``a^(π+k) <= a^merge`` for every ``k``, ``(a^π)^merge = a^π``,
    ``a^merge·a^merge = a^merge``, ``(a^merge)^merge = a^merge``,
    ``(a·b)^merge = a·(b·a)^merge·b``; monotonicity of merge, product and
    omega. Witnesses are positions in ``v.elements``.
    """
    els = v.elements
    pos = {e: i for i, e in enumerate(els)}
    mul, mrg, leq = v.product, v.merge, v.leq
    found: dict[str, tuple[int, ...]] = {}

    def report(axiom: str, *witness) -> None:
        found.setdefault(axiom, tuple(pos.get(w, -1) for w in witness))

    for a in els:
        am = mrg(a)
        powers, start = power_cycle(a, mul)
        for p in powers[start:]:
            if not leq(p, am):
                report("merge-covers-cycle", a)
                break
        idem = cycle_idempotent(powers, start, mul)
        if mrg(idem) != idem:
            report("merge-fixes-idempotent-power", a)
        if mul(am, am) != am:
            report("merge-idempotent", a)
        if mrg(am) != am:
            report("merge-of-merge", a)
    for a in els:
        for b in els:
            if mrg(mul(a, b)) != mul(mul(a, mrg(mul(b, a))), b):
                report("merge-swap", a, b)
                break
        if "merge-swap" in found:
            break
    for a, b in cartesian(els, els):
        if a == b or not leq(a, b):
            continue
        if not leq(mrg(a), mrg(b)):
            report("merge-monotone", a, b)
        if not leq(v.omega(a), v.omega(b)):
            report("omega-monotone", a, b)
        for c in els:
            if not (leq(mul(a, c), mul(b, c)) and leq(mul(c, a), mul(c, b))):
                report("product-monotone", a, b, c)
                break
    order = [
        "merge-covers-cycle",
        "merge-fixes-idempotent-power",
        "merge-idempotent",
        "merge-of-merge",
        "merge-swap",
        "merge-monotone",
        "omega-monotone",
        "product-monotone",
    ]
    return [Violation(a, found[a]) for a in order if a in found]
