"""Ordinals below ω^ω in Cantor normal form and the one-letter approximant."""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Hashable

from .errors import InconsistencyError, MalformedInput
from .monoid import power_cycle
from .powerset import MergeMonoidView


@dataclass(frozen=True)
class Ordinal:
    """``ω^e1·c1 + … + ω^er·cr`` with ``e1 > … > er`` and ``ci >= 1``."""

    terms: tuple[tuple[int, int], ...] = ()

    def __post_init__(self):
        exps = [e for e, _ in self.terms]
        if any(e < 0 for e in exps) or any(c < 1 for _, c in self.terms):
            raise MalformedInput("CNF terms need exponents >= 0 and coefficients >= 1")
        if exps != sorted(set(exps), reverse=True):
            raise MalformedInput("CNF exponents must be strictly decreasing")

    @classmethod
    def of(cls, n: int) -> "Ordinal":
        if n < 0:
            raise MalformedInput("ordinals are non-negative")
        return cls(((0, n),) if n else ())

    @classmethod
    def omega_power(cls, e: int, c: int = 1) -> "Ordinal":
        return cls(((e, c),) if c else ())

    def __add__(self, other: "Ordinal") -> "Ordinal":
        if not other.terms:
            return self
        lead, c = other.terms[0]
        keep = [(e, d) for e, d in self.terms if e > lead]
        same = sum(d for e, d in self.terms if e == lead)
        return Ordinal(tuple(keep) + ((lead, c + same),) + other.terms[1:])

    def is_zero(self) -> bool:
        return not self.terms

    def is_successor(self) -> bool:
        return bool(self.terms) and self.terms[-1][0] == 0

    def is_limit(self) -> bool:
        return bool(self.terms) and not self.is_successor()

    def is_finite(self) -> bool:
        return all(e == 0 for e, _ in self.terms)

    def coefficient(self, e: int) -> int:
        return dict(self.terms).get(e, 0)

    def normalize(self, ell: int) -> "CnfOrdinal":
        """Split as ``ω^ℓ·κ_ℓ + ω^(ℓ-1)·k_(ℓ-1) + … + k_0``."""
        if ell < 0:
            raise ValueError("ell must be non-negative")
        top = any(e >= ell for e, _ in self.terms)
        return CnfOrdinal(ell, top, tuple(self.coefficient(m) for m in range(ell - 1, -1, -1)))

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e, c in self.terms:
            if e == 0:
                parts.append(str(c))
                continue
            base = "w" if e == 1 else f"w^{e}"
            parts.append(base if c == 1 else f"{base}*{c}")
        return "+".join(parts)

    @classmethod
    def parse(cls, text: str) -> "Ordinal":
        """Parse sums of ``n``, ``w``, ``w^e``, ``w*c``, ``w^e*c`` (ordinal addition)."""
        out = cls()
        if not text.strip():
            raise MalformedInput("empty ordinal")
        for raw in text.split("+"):
            term = raw.replace(" ", "")
            m = re.fullmatch(r"(\d+)", term)
            if m:
                out = out + cls.of(int(m.group(1)))
                continue
            m = re.fullmatch(r"(?:(\d+)\*)?w(?:\^(\d+))?(?:\*(\d+))?", term)
            if not m or (m.group(1) and m.group(3)):
                raise MalformedInput(f"cannot read ordinal term {raw.strip()!r}")
            e = int(m.group(2)) if m.group(2) else 1
            c = int(m.group(3) or 1)
            if m.group(1):
                # n·ω^e = ω^e for n >= 1
                c = 1 if int(m.group(1)) else 0
            out = out + cls.omega_power(e, c)
        return out


@dataclass(frozen=True)
class CnfOrdinal:
    """``ℓ``-bounded normal form: whether ``κ_ℓ`` is nonzero, then ``k_(ℓ-1) … k_0``."""

    ell: int
    top: bool
    coeffs: tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) != self.ell:
            raise MalformedInput("an ℓ-bounded form needs exactly ℓ coefficients")
        if any(c < 0 for c in self.coeffs):
            raise MalformedInput("coefficients must be natural numbers")

    def coefficient(self, m: int) -> int:
        return self.coeffs[self.ell - 1 - m]

    def normalize(self, ell: int) -> "CnfOrdinal":
        if ell >= self.ell:
            if self.top and ell > self.ell:
                # κ_ℓ is only known to be nonzero; refining it is not possible
                raise ValueError("cannot refine a nonzero top part to a higher level")
            return CnfOrdinal(ell, self.top, (0,) * (ell - self.ell) + self.coeffs)
        absorbed = self.top or any(self.coeffs[: self.ell - ell])
        return CnfOrdinal(ell, absorbed, self.coeffs[self.ell - ell :])


def omega_iterate(v: MergeMonoidView, x: Hashable, m: int) -> Hashable:
    for _ in range(m):
        x = v.omega(x)
    return x


def finite_power(v: MergeMonoidView, x: Hashable, n: int) -> Hashable:
    acc = v.unit
    for _ in range(n):
        acc = v.product(acc, x)
    return acc


def eval_power(v: MergeMonoidView, x: Hashable, kappa: Ordinal) -> Hashable:
    """Value of ``x^κ``: ``(x^(ω^e))^c`` per term, ``x^(ω^e)`` by ``e``-fold ω."""
    acc = v.unit
    for e, c in kappa.terms:
        acc = v.product(acc, finite_power(v, omega_iterate(v, x, e), c))
    return acc


def tower_level(v: MergeMonoidView, x: Hashable, limit: int | None = None) -> int:
    """Least ``ℓ`` with ``x^(ω^ℓ) = x^(ω^(ℓ+1))``."""
    limit = 2 * len(v.elements) + 1 if limit is None else limit
    y = x
    for level in range(limit + 1):
        nxt = v.omega(y)
        if nxt == y:
            return level
        y = nxt
    raise InconsistencyError("omega tower does not stabilise")


def idempotent_bound(v: MergeMonoidView, x: Hashable, ell: int) -> int:
    """Least ``n`` such that ``y^n`` already lies in the power cycle of ``y``
    for every ``y = x^(ω^m)``, ``m <= ℓ``."""
    n = 1
    for m in range(ell + 1):
        _, start = power_cycle(omega_iterate(v, x, m), v.product)
        n = max(n, start + 1)
    return n


def approximate_one_letter(
    v: MergeMonoidView,
    x: Hashable,
    kappa: Ordinal | CnfOrdinal,
    n: int | None = None,
    ell: int | None = None,
) -> Hashable:
    """Closed-form approximant of ``x^κ`` in the view ``v``.

    ``ℓ`` defaults to the ω-tower level of ``x`` and ``n`` to
    :func:`idempotent_bound`; both can be overridden. The result bounds the
    true value ``x^κ`` from above in ``v``'s order. An ``ℓ`` below the tower
    level is rejected, since the top factor must be fixed by ω.
    """
    if ell is None:
        ell = tower_level(v, x)
    top = omega_iterate(v, x, ell)
    if v.omega(top) != top:
        raise ValueError(f"ell={ell} is below the omega-tower level of {v.fmt(x)}")
    if n is None:
        n = idempotent_bound(v, x, ell)
    if n < 1:
        raise ValueError("n must be at least 1")
    cnf = kappa.normalize(ell)
    acc = top if cnf.top else v.unit
    for m in range(ell - 1, -1, -1):
        y = omega_iterate(v, x, m)
        k = cnf.coefficient(m)
        tau = finite_power(v, y, k) if k < n else v.merge(y)
        acc = v.product(acc, tau)
    return acc
