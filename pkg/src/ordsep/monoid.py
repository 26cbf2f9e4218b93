"""Finite ordinal monoids given by their presentation (unit, product, omega-power).

Elements are dense indices ``0..n-1``; names are only for display and I/O.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Callable, Hashable, Iterable, Mapping, Sequence, TypeVar

from .errors import InconsistencyError, MalformedInput

T = TypeVar("T", bound=Hashable)


class OrdinalMonoid:
    """Immutable presentation ``(M, 1, ·, ω)`` of a finite ordinal monoid.

    ``product[x][y]`` is ``x·y`` and ``omega[x]`` is ``x^ω``. Construction only
    checks the shape of the tables; the algebraic laws are checked by
    :func:`validate_presentation`.
    """

    __slots__ = ("names", "unit", "product", "omega", "_index", "_hash")

    def __init__(
        self,
        names: Sequence[str],
        unit: int,
        product: Sequence[Sequence[int]],
        omega: Sequence[int],
    ):
        names = tuple(str(n) for n in names)
        n = len(names)
        if n == 0:
            raise MalformedInput("empty carrier: a monoid needs a unit")
        if len(set(names)) != n:
            dup = next(x for x in names if names.count(x) > 1)
            raise MalformedInput(f"duplicate element name {dup!r}")
        if not 0 <= unit < n:
            raise MalformedInput(f"unit index {unit} outside carrier of size {n}")
        if len(product) != n or any(len(row) != n for row in product):
            raise MalformedInput("product table is not n×n")
        if len(omega) != n:
            raise MalformedInput("omega table does not have one entry per element")
        for x, row in enumerate(product):
            for y, z in enumerate(row):
                if not isinstance(z, int) or not 0 <= z < n:
                    raise MalformedInput(
                        f"product {names[x]}·{names[y]} = {z!r} is outside the carrier"
                    )
        for x, z in enumerate(omega):
            if not isinstance(z, int) or not 0 <= z < n:
                raise MalformedInput(f"omega of {names[x]} = {z!r} is outside the carrier")
        self.names = names
        self.unit = unit
        self.product = tuple(tuple(row) for row in product)
        self.omega = tuple(omega)
        self._index = {name: i for i, name in enumerate(names)}
        self._hash = hash((names, unit, self.product, self.omega))

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self):
        return iter(range(len(self.names)))

    def __eq__(self, other: object) -> bool:
        if self is other:
            return True
        if not isinstance(other, OrdinalMonoid):
            return NotImplemented
        return (
            self._hash == other._hash
            and self.names == other.names
            and self.unit == other.unit
            and self.product == other.product
            and self.omega == other.omega
        )

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"OrdinalMonoid({' '.join(self.names)})"

    def mul(self, x: int, y: int) -> int:
        return self.product[x][y]

    def mul_all(self, xs: Iterable[int]) -> int:
        acc = self.unit
        for x in xs:
            acc = self.product[acc][x]
        return acc

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise MalformedInput(f"unknown element {name!r}") from None

    def name(self, x: int) -> str:
        return self.names[x]

    @classmethod
    def from_names(
        cls,
        names: Sequence[str],
        unit: str,
        product: Mapping[tuple[str, str], str],
        omega: Mapping[str, str],
    ) -> "OrdinalMonoid":
        """Build from name-keyed tables, e.g. ``product[("a", "a")] = "aa"``."""
        idx = {n: i for i, n in enumerate(names)}

        def get(name: str) -> int:
            if name not in idx:
                raise MalformedInput(f"unknown element {name!r}")
            return idx[name]

        table = []
        for x in names:
            row = []
            for y in names:
                if (x, y) not in product:
                    raise MalformedInput(f"missing product entry {x}·{y}")
                row.append(get(product[x, y]))
            table.append(row)
        om = []
        for x in names:
            if x not in omega:
                raise MalformedInput(f"missing omega entry for {x}")
            om.append(get(omega[x]))
        return cls(names, get(unit), table, om)


@dataclass(frozen=True)
class LetterMap:
    """Total map from alphabet letters to carrier indices, in declaration order."""

    items: tuple[tuple[str, int], ...]

    def __post_init__(self):
        letters = [a for a, _ in self.items]
        if len(set(letters)) != len(letters):
            raise MalformedInput("duplicate letter in letter map")

    @classmethod
    def of(cls, mapping: Mapping[str, int]) -> "LetterMap":
        return cls(tuple(mapping.items()))

    @cached_property
    def _dict(self) -> dict[str, int]:
        return dict(self.items)

    @property
    def alphabet(self) -> tuple[str, ...]:
        return tuple(a for a, _ in self.items)

    def __getitem__(self, letter: str) -> int:
        try:
            return self._dict[letter]
        except KeyError:
            raise MalformedInput(f"unknown letter {letter!r}") from None

    def __contains__(self, letter: object) -> bool:
        return letter in self._dict

    def __len__(self) -> int:
        return len(self.items)


@dataclass(frozen=True)
class Violation:
    axiom: str
    witness: tuple[int, ...]

    def describe(self, monoid: OrdinalMonoid) -> str:
        return f"{self.axiom}: " + ", ".join(monoid.name(x) for x in self.witness)


def validate_presentation(m: OrdinalMonoid) -> list[Violation]:
    """Check the laws a finite presentation must satisfy.

    Laws: associativity, two-sided unit, ``1^ω = 1``, the swap law
    ``x·(y·x)^ω = (x·y)^ω`` and the power law ``(x^n)^ω = x^ω`` for
    ``1 <= n <= |M|``. Returns one :class:`Violation` per failing law (the
    first counterexample found in index order); an empty list means valid.
    """
    mul, om, n, one = m.product, m.omega, len(m), m.unit
    found: dict[str, tuple[int, ...]] = {}

    def report(axiom: str, *witness: int) -> None:
        found.setdefault(axiom, witness)

    for x in range(n):
        if mul[one][x] != x:
            report("left-unit", x)
        if mul[x][one] != x:
            report("right-unit", x)
    if om[one] != one:
        report("omega-unit", one)
    for x in range(n):
        row = mul[x]
        for y in range(n):
            xy = row[y]
            for z in range(n):
                if mul[xy][z] != row[mul[y][z]]:
                    report("associativity", x, y, z)
                    break
            if "associativity" in found:
                break
        if "associativity" in found:
            break
    for x in range(n):
        for y in range(n):
            if mul[x][om[mul[y][x]]] != om[mul[x][y]]:
                report("swap", x, y)
                break
        if "swap" in found:
            break
    for x in range(n):
        p = x
        for k in range(1, n + 1):
            if om[p] != om[x]:
                report("power", x, k)
                break
            p = mul[p][x]
        if "power" in found:
            break
    order = ["left-unit", "right-unit", "omega-unit", "associativity", "swap", "power"]
    return [Violation(a, found[a]) for a in order if a in found]


def power_cycle(x: T, mul: Callable[[T, T], T]) -> tuple[list[T], int]:
    """Powers ``x, x², …`` up to the first repetition.

    Returns ``(powers, start)`` where ``powers[i]`` is ``x^(i+1)`` and the
    eventual cycle is ``powers[start:]``.
    """
    powers = [x]
    seen = {x: 0}
    while True:
        nxt = mul(powers[-1], x)
        if nxt in seen:
            return powers, seen[nxt]
        seen[nxt] = len(powers)
        powers.append(nxt)


def cycle_idempotent(powers: list[T], start: int, mul: Callable[[T, T], T]) -> T:
    for p in powers[start:]:
        if mul(p, p) == p:
            return p
    raise InconsistencyError("power cycle without an idempotent")


def idempotent_power(m: OrdinalMonoid, x: int) -> int:
    """``x^π``: the unique idempotent among the powers of ``x``."""
    powers, start = power_cycle(x, m.mul)
    return cycle_idempotent(powers, start, m.mul)


def power_plus(m: OrdinalMonoid, x: int, k: int) -> int:
    """``x^(π+k)``."""
    if k < 0:
        raise ValueError("k must be non-negative")
    acc = idempotent_power(m, x)
    for _ in range(k):
        acc = m.mul(acc, x)
    return acc


def is_aperiodic(m: OrdinalMonoid) -> tuple[bool, int | None]:
    """``(True, None)`` if ``x^π = x^(π+1)`` everywhere, else ``(False, x)``."""
    for x in m:
        if power_plus(m, x, 1) != idempotent_power(m, x):
            return False, x
    return True, None


def omega_tower_stabilisation(m: OrdinalMonoid, x: int) -> tuple[int, int]:
    """Least ``ℓ`` with ``x^(ω^ℓ) = x^(ω^(ℓ+1))``, and that stable value."""
    y = x
    for level in range(2 * len(m) + 1):
        nxt = m.omega[y]
        if nxt == y:
            return level, y
        y = nxt
    raise InconsistencyError(
        f"omega tower of {m.name(x)} does not stabilise within 2·|M| steps"
    )


def check_r_omega_idempotent(m: OrdinalMonoid) -> bool:
    """Every ``x`` that is R-equivalent to ``x^ω`` is idempotent."""
    right = [frozenset(m.product[x]) for x in m]
    for x in m:
        w = m.omega[x]
        if x in right[w] and w in right[x] and m.mul(x, x) != x:
            return False
    return True


def submonoid(m: OrdinalMonoid, keep: Iterable[int]) -> OrdinalMonoid:
    """Restrict ``m`` to ``keep`` (which must contain the unit and be closed)."""
    keep = sorted(set(keep) | {m.unit})
    pos = {x: i for i, x in enumerate(keep)}
    try:
        table = [[pos[m.mul(x, y)] for y in keep] for x in keep]
        om = [pos[m.omega[x]] for x in keep]
    except KeyError as err:
        raise MalformedInput(f"subset not closed: produces {m.name(err.args[0])}") from None
    return OrdinalMonoid([m.name(x) for x in keep], pos[m.unit], table, om)


def trivial_monoid(name: str = "1") -> OrdinalMonoid:
    return OrdinalMonoid([name], 0, [[0]], [0])
