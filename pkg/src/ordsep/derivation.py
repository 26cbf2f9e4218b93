"""Certificates for depth-k FO indistinguishability of ordinal words.

A derivation proves ``lhs ≡ᵏ rhs`` from six rules:

- ``Refl``: ``e ≡ e``.
- ``StructEq``: both sides denote the same ordinal word, decided by a normal
  form that flattens concatenations, drops empty words, unfolds finite
  powers and identifies ``(v^j)^ω`` with ``v^ω``.
- ``ConcatCong(d1, d2)``: from ``u ≡ u'`` and ``v ≡ v'`` infer ``uv ≡ u'v'``.
- ``OmegaSeqCong(d)``: from ``u ≡ v`` infer ``u^ω ≡ v^ω``.
- ``Pump(n)``: ``u^n ≡ u^(n+1)`` (either orientation) when ``n >= 2^k - 1``.
- ``Trans(d1, d2)``: chain two derivations whose middle terms coincide.

There is no symmetry rule; :func:`reverse` mirrors a derivation instead.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Iterable

from .words import Concat, Empty, Letter, OmegaPow, Pow, WordExpr

RULE_NAMES = ("Refl", "StructEq", "ConcatCong", "OmegaSeqCong", "Pump", "Trans")


@dataclass(frozen=True, eq=False)
class EquivDerivation:
    rule: str
    lhs: WordExpr
    rhs: WordExpr
    k: int
    premises: tuple["EquivDerivation", ...] = ()
    n: int | None = None

    def to_record(self) -> dict[str, Any]:
        rec: dict[str, Any] = {
            "rule": self.rule,
            "lhs": str(self.lhs),
            "rhs": str(self.rhs),
            "k": self.k,
        }
        if self.n is not None:
            rec["n"] = self.n
        if self.premises:
            rec["premises"] = [p.to_record() for p in self.premises]
        return rec

    def size(self) -> int:
        seen: set[int] = set()
        stack = [self]
        while stack:
            d = stack.pop()
            if id(d) in seen:
                continue
            seen.add(id(d))
            stack.extend(d.premises)
        return len(seen)


# Smart constructors.

def refl(e: WordExpr, k: int) -> EquivDerivation:
    return EquivDerivation("Refl", e, e, k)


def struct_eq(lhs: WordExpr, rhs: WordExpr, k: int) -> EquivDerivation:
    if lhs == rhs:
        return refl(lhs, k)
    return EquivDerivation("StructEq", lhs, rhs, k)


def concat_cong(d1: EquivDerivation, d2: EquivDerivation) -> EquivDerivation:
    return EquivDerivation(
        "ConcatCong", Concat(d1.lhs, d2.lhs), Concat(d1.rhs, d2.rhs), d1.k, (d1, d2)
    )


def concat_cong_all(ds: list[EquivDerivation], k: int) -> EquivDerivation:
    """Congruence over ``concat(*parts)`` (right-nested), one premise per part."""
    if not ds:
        return refl(Empty(), k)
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = concat_cong(d, out)
    return out


def omega_cong(d: EquivDerivation) -> EquivDerivation:
    return EquivDerivation("OmegaSeqCong", OmegaPow(d.lhs), OmegaPow(d.rhs), d.k, (d,))


def pump(body: WordExpr, n: int, k: int, up: bool = True) -> EquivDerivation:
    lo, hi = Pow(body, n), Pow(body, n + 1)
    return EquivDerivation("Pump", *((lo, hi) if up else (hi, lo)), k, n=n)


def pump_between(body: WordExpr, m: int, m2: int, k: int) -> EquivDerivation:
    """``body^m ≡ body^m2`` by single pump steps."""
    if m == m2:
        return refl(Pow(body, m), k)
    step = 1 if m2 > m else -1
    ds = [pump(body, min(i, i + step), k, up=step > 0) for i in range(m, m2, step)]
    return chain(ds, k)


def trans(d1: EquivDerivation, d2: EquivDerivation) -> EquivDerivation:
    if d1.rule == "Refl":
        return d2
    if d2.rule == "Refl":
        return d1
    return EquivDerivation("Trans", d1.lhs, d2.rhs, d1.k, (d1, d2))


def chain(ds: Iterable[EquivDerivation], k: int) -> EquivDerivation:
    ds = [d for d in ds if d.rule != "Refl"]
    if not ds:
        raise ValueError("empty chain has no endpoints")
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = trans(d, out)
    return out


def reverse(d: EquivDerivation) -> EquivDerivation:
    """The mirrored derivation of ``rhs ≡ lhs``."""
    memo: dict[int, EquivDerivation] = {}

    def go(d: EquivDerivation) -> EquivDerivation:
        got = memo.get(id(d))
        if got is not None:
            return got
        if d.rule == "Refl":
            got = d
        elif d.rule == "StructEq":
            got = EquivDerivation("StructEq", d.rhs, d.lhs, d.k)
        elif d.rule == "Pump":
            got = EquivDerivation("Pump", d.rhs, d.lhs, d.k, n=d.n)
        elif d.rule == "ConcatCong":
            got = concat_cong(go(d.premises[0]), go(d.premises[1]))
        elif d.rule == "OmegaSeqCong":
            got = omega_cong(go(d.premises[0]))
        elif d.rule == "Trans":
            got = EquivDerivation(
                "Trans", d.rhs, d.lhs, d.k, (go(d.premises[1]), go(d.premises[0]))
            )
        else:
            raise ValueError(f"unknown rule {d.rule!r}")
        memo[id(d)] = got
        return got

    return go(d)


# Normal form for StructEq.

@lru_cache(maxsize=65536)
def normal_form(e: WordExpr) -> tuple:
    """Letters and ``("w", root)`` atoms; equal iff the words coincide.

    ``root`` is the primitive root of the normalised body of an ω-power, so
    ``(v^j)^ω`` and ``v^ω`` share a normal form. ``()^ω`` is the empty word.
    """
    if isinstance(e, Empty):
        return ()
    if isinstance(e, Letter):
        return (e.name,)
    if isinstance(e, Concat):
        return normal_form(e.left) + normal_form(e.right)
    if isinstance(e, Pow):
        return normal_form(e.body) * e.n
    if isinstance(e, OmegaPow):
        body = normal_form(e.body)
        if not body:
            return ()
        return (("w", primitive_root(body)),)
    raise TypeError(f"not a word expression: {e!r}")


def primitive_root(seq: tuple) -> tuple:
    n = len(seq)
    for p in range(1, n + 1):
        if n % p == 0 and seq[:p] * (n // p) == seq:
            return seq[:p]
    return seq


# Checking.

@dataclass(frozen=True)
class CheckResult:
    ok: bool
    path: tuple[int, ...] = ()
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        if self.ok:
            return "ok"
        where = "/".join(map(str, self.path)) or "root"
        return f"invalid at {where}: {self.reason}"


def check_derivation(d: EquivDerivation, k: int | None = None) -> CheckResult:
    """Validate every rule instance; ``k`` pins the depth of the root if given.

    ``path`` in a failing result lists premise positions from the root.
    """
    if k is not None and d.k != k:
        return CheckResult(False, (), f"derivation is for depth {d.k}, expected {k}")
    ok_ids: set[int] = set()

    def go(d: EquivDerivation, path: tuple[int, ...]) -> CheckResult:
        if id(d) in ok_ids:
            return CheckResult(True)
        why = _local_check(d)
        if why:
            return CheckResult(False, path, why)
        for i, p in enumerate(d.premises):
            if p.k != d.k:
                return CheckResult(False, path + (i,), f"premise depth {p.k} differs from {d.k}")
            sub = go(p, path + (i,))
            if not sub:
                return sub
        ok_ids.add(id(d))
        return CheckResult(True)

    try:
        return go(d, ())
    except RecursionError:
        return CheckResult(False, (), "derivation too deep to check")


def _local_check(d: EquivDerivation) -> str:
    if not isinstance(d, EquivDerivation):
        return f"not a derivation node: {d!r}"
    if d.k < 0:
        return "negative depth"
    prem = d.premises
    if d.rule == "Refl":
        if prem or d.lhs != d.rhs:
            return "Refl needs identical sides and no premises"
        return ""
    if d.rule == "StructEq":
        if prem:
            return "StructEq takes no premises"
        if normal_form(d.lhs) != normal_form(d.rhs):
            return f"{d.lhs} and {d.rhs} denote different words"
        return ""
    if d.rule == "ConcatCong":
        if len(prem) != 2:
            return "ConcatCong needs two premises"
        if not (isinstance(d.lhs, Concat) and isinstance(d.rhs, Concat)):
            return "ConcatCong conclusion must be concatenations"
        if (d.lhs.left, d.lhs.right, d.rhs.left, d.rhs.right) != (
            prem[0].lhs, prem[1].lhs, prem[0].rhs, prem[1].rhs
        ):
            return "ConcatCong conclusion does not match its premises"
        return ""
    if d.rule == "OmegaSeqCong":
        if len(prem) != 1:
            return "OmegaSeqCong needs one premise"
        if not (isinstance(d.lhs, OmegaPow) and isinstance(d.rhs, OmegaPow)):
            return "OmegaSeqCong conclusion must be omega-powers"
        if (d.lhs.body, d.rhs.body) != (prem[0].lhs, prem[0].rhs):
            return "OmegaSeqCong conclusion does not match its premise"
        return ""
    if d.rule == "Pump":
        if prem:
            return "Pump takes no premises"
        n = d.n
        if n is None or n < 1:
            return "Pump needs an exponent n >= 1"
        if n < 2 ** d.k - 1:
            return f"Pump exponent {n} below 2^{d.k} - 1 = {2 ** d.k - 1}"
        lo, hi = sorted((d.lhs, d.rhs), key=lambda e: getattr(e, "n", 0))
        if not (isinstance(lo, Pow) and isinstance(hi, Pow)):
            return "Pump sides must be finite powers"
        if lo.body != hi.body or (lo.n, hi.n) != (n, n + 1):
            return f"Pump sides must be e^{n} and e^{n + 1} of the same e"
        return ""
    if d.rule == "Trans":
        if len(prem) != 2:
            return "Trans needs two premises"
        if prem[0].rhs != prem[1].lhs:
            return f"Trans middle terms differ: {prem[0].rhs} vs {prem[1].lhs}"
        if (d.lhs, d.rhs) != (prem[0].lhs, prem[1].rhs):
            return "Trans conclusion does not match its premises"
        return ""
    return f"unknown rule {d.rule!r}"


def from_record(rec: dict[str, Any]) -> EquivDerivation:
    """Inverse of :meth:`EquivDerivation.to_record`."""
    from .words import parse_expr

    return EquivDerivation(
        rec["rule"],
        parse_expr(rec["lhs"]),
        parse_expr(rec["rhs"]),
        int(rec["k"]),
        tuple(from_record(p) for p in rec.get("premises", ())),
        rec.get("n"),
    )


__all__ = [
    "EquivDerivation",
    "CheckResult",
    "check_derivation",
    "normal_form",
    "reverse",
    "refl",
    "struct_eq",
    "concat_cong",
    "concat_cong_all",
    "omega_cong",
    "pump",
    "pump_between",
    "trans",
    "chain",
]
