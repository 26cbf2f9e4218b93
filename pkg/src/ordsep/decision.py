"""Separation, covering and pointlike sets, with self-checkable certificates."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import MalformedInput
from .monoid import LetterMap, OrdinalMonoid
from .powerset import bits, is_subset, power_of
from .saturation import SaturationResult, apply_rule, saturate_letters

SEPARATOR_NOTE = (
    "no separator formula is synthesised; a separator is the set of words whose "
    "FO-approximant value in the power monoid meets the first accepting set"
)


class IncompatibleRecognizers(MalformedInput):
    pass


@dataclass(frozen=True)
class LanguageRecognizer:
    """A language given by ``(M, h, F)``: words whose value lies in ``accepting``."""

    monoid: OrdinalMonoid
    letters: LetterMap
    accepting: frozenset[int]
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "accepting", frozenset(self.accepting))
        for x in self.accepting:
            if not 0 <= x < len(self.monoid):
                raise MalformedInput(f"accepting element {x} outside the carrier")
        for a, x in self.letters.items:
            if not 0 <= x < len(self.monoid):
                raise MalformedInput(f"letter {a!r} maps outside the carrier")

    def accepts_value(self, x: int) -> bool:
        return x in self.accepting


@dataclass(frozen=True)
class Outcome:
    """Result of a separation (two sets) or covering (``L`` then the ``K_i``) run.

    ``verdict`` is ``"no"`` iff some member of ``sat`` meets every set in
    ``sets``. On ``no``, ``blocking`` is the first such member and ``marked``
    holds the least element of it in each set. On ``yes``, ``attestation[i]``
    is the position of a set that member ``i`` misses.
    """

    kind: str
    verdict: str
    sat: SaturationResult
    sets: tuple[frozenset[int], ...]
    names: tuple[str, ...]
    blocking: int | None = None
    marked: tuple[int, ...] = ()
    attestation: tuple[int, ...] = ()
    trivial: bool = False

    @property
    def blocking_set(self) -> tuple[int, ...]:
        return () if self.blocking is None else tuple(bits(self.sat.masks[self.blocking]))

    def to_record(self) -> dict:
        m = self.sat.base
        rec = {
            "kind": self.kind,
            "verdict": self.verdict,
            "languages": list(self.names),
            "accepting": [[m.name(x) for x in sorted(s)] for s in self.sets],
            "sat_size": len(self.sat),
        }
        if self.trivial:
            rec["trivial"] = "no languages to cover against; the universal language covers"
        if self.verdict == "no":
            rec["blocking_index"] = self.blocking
            rec["blocking_set"] = [m.name(x) for x in self.blocking_set]
            rec["marked"] = [m.name(x) for x in self.marked]
            rec["provenance_chain"] = [
                _prov_record(self.sat, j) for j in self.sat.chain(self.blocking)
            ]
        elif not self.trivial:
            rec["attestation"] = [
                {"member": _names(self.sat, i), "misses": self.names[a]}
                for i, a in enumerate(self.attestation)
            ]
            if self.kind == "separation":
                rec["separator"] = SEPARATOR_NOTE
        return rec


def _names(sat: SaturationResult, i: int) -> list[str]:
    return [sat.base.name(x) for x in bits(sat.masks[i])]


def _prov_record(sat: SaturationResult, j: int) -> dict:
    p = sat.provenance[j]
    return {"index": j, "set": _names(sat, j), "rule": p.rule, "operands": list(p.operands)}


def _require_joint(recs: Sequence[LanguageRecognizer]) -> None:
    first = recs[0]
    for r in recs[1:]:
        if r.monoid != first.monoid or r.letters != first.letters:
            raise IncompatibleRecognizers(
                "recognizers must share one presentation and letter map; "
                "build a product recognizer for both languages first"
            )


def _scan(sat: SaturationResult, sets: Sequence[frozenset[int]]):
    masks = [sum(1 << x for x in s) for s in sets]
    attestation = []
    for i, x in enumerate(sat.masks):
        miss = next((j for j, s in enumerate(masks) if x & s == 0), None)
        if miss is None:
            marked = tuple(bits(x & s)[0] for s in masks)
            return i, marked, ()
        attestation.append(miss)
    return None, (), tuple(attestation)


def _decide(kind: str, recs: Sequence[LanguageRecognizer], trivial: bool = False) -> Outcome:
    _require_joint(recs)
    sat = saturate_letters(recs[0].monoid, recs[0].letters)
    sets = tuple(r.accepting for r in recs)
    names = tuple(r.name or f"#{i}" for i, r in enumerate(recs))
    if trivial:
        return Outcome(kind, "yes", sat, sets, names, trivial=True)
    blocking, marked, att = _scan(sat, sets)
    if blocking is None:
        return Outcome(kind, "yes", sat, sets, names, attestation=att)
    return Outcome(kind, "no", sat, sets, names, blocking, marked)


def separate(K: LanguageRecognizer, L: LanguageRecognizer) -> Outcome:
    """Decide whether some FO-definable language contains ``K`` and avoids ``L``."""
    return _decide("separation", [K, L])


def cover(L: LanguageRecognizer, Ks: Sequence[LanguageRecognizer]) -> Outcome:
    """Decide whether ``L`` has an FO-cover avoiding the ``K_i`` jointly.

    ``no`` iff some saturation member meets ``F_L`` and every ``F_{K_i}``. With
    no ``K_i`` the answer is a flagged ``yes``.
    """
    return _decide("cover", [L, *Ks], trivial=not Ks)


@dataclass(frozen=True)
class CertificateCheck:
    ok: bool
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def __str__(self) -> str:
        return "ok" if self.ok else self.reason


def _replays(sat: SaturationResult, members: Iterable[int]) -> str:
    n = len(sat)
    for j in members:
        p = sat.provenance[j]
        if p.rule == "seed":
            if not (len(p.operands) == 1 and 0 <= p.operands[0] < len(sat.seeds)):
                return f"member {j}: dangling seed reference"
        elif p.rule != "unit":
            if not p.operands or any(not 0 <= o < j for o in p.operands):
                return f"member {j}: dangling or forward operand {p.operands}"
        try:
            got = apply_rule(sat.base, p, sat.seeds, sat.masks)
        except (ValueError, IndexError) as err:
            return f"member {j}: {err}"
        if got != sat.masks[j]:
            fmt = power_of(sat.base).fmt
            return f"member {j}: replaying {p.rule}{p.operands} gives {fmt(got)}, not {fmt(sat.masks[j])}"
    if len(sat.provenance) != n:
        return "provenance and members differ in length"
    return ""


def _closed(sat: SaturationResult) -> str:
    pm = power_of(sat.base)
    have = set(sat.masks)
    if pm.unit not in have:
        return "saturation lacks {1}"
    for s in sat.seeds:
        if s not in have:
            return f"seed {pm.fmt(s)} missing"
    for x in sat.masks:
        for op, name in ((pm.merge, "merge"), (pm.omega, "omega")):
            if op(x) not in have:
                return f"not closed: {name} of {pm.fmt(x)}"
        for y in sat.masks:
            if pm.product(x, y) not in have:
                return f"not closed: {pm.fmt(x)}·{pm.fmt(y)}"
    return ""


def check_certificate(o: Outcome) -> CertificateCheck:
    """Re-verify an outcome against its stored saturation."""
    sat = o.sat
    if o.verdict == "no":
        if o.blocking is None or not 0 <= o.blocking < len(sat):
            return CertificateCheck(False, "blocking index out of range")
        try:
            members = sat.chain(o.blocking)
        except (IndexError, RecursionError):
            return CertificateCheck(False, "dangling provenance")
        why = _replays(sat, members)
        if why:
            return CertificateCheck(False, why)
        x = sat.masks[o.blocking]
        if len(o.marked) != len(o.sets):
            return CertificateCheck(False, "one marked element per accepting set expected")
        for j, (e, s) in enumerate(zip(o.marked, o.sets)):
            if not (x >> e & 1) or e not in s:
                return CertificateCheck(False, f"marked element {e} not in blocking set ∩ set {j}")
        return CertificateCheck(True)
    if o.verdict != "yes":
        return CertificateCheck(False, f"unknown verdict {o.verdict!r}")
    if o.trivial:
        return CertificateCheck(True) if len(o.sets) == 1 else CertificateCheck(
            False, "trivial flag on a nontrivial instance"
        )
    why = _replays(sat, range(len(sat))) or _closed(sat)
    if why:
        return CertificateCheck(False, why)
    if len(o.attestation) != len(sat):
        return CertificateCheck(False, "attestation does not cover every member")
    for i, (x, a) in enumerate(zip(sat.masks, o.attestation)):
        if not 0 <= a < len(o.sets):
            return CertificateCheck(False, f"member {i}: attestation names no set")
        if any(x >> e & 1 for e in o.sets[a]):
            return CertificateCheck(False, f"member {i} meets the set it claims to miss")
    return CertificateCheck(True)


@dataclass(frozen=True)
class PointlikeFamily:
    """Downward closure (without ∅) of the letter saturation."""

    sat: SaturationResult
    masks: tuple[int, ...]

    def __contains__(self, x) -> bool:
        mask = getattr(x, "mask", x)
        if isinstance(mask, (set, frozenset, tuple, list)):
            mask = sum(1 << e for e in mask)
        return mask in self._set

    @property
    def _set(self) -> frozenset[int]:
        return frozenset(self.masks)

    def __len__(self) -> int:
        return len(self.masks)

    def maximal(self) -> tuple[int, ...]:
        return tuple(
            x for x in self.masks if not any(x != y and is_subset(x, y) for y in self.masks)
        )


def submasks(mask: int) -> Iterable[int]:
    sub = mask
    while sub:
        yield sub
        sub = (sub - 1) & mask


def pointlikes(monoid: OrdinalMonoid, letters: LetterMap) -> PointlikeFamily:
    sat = saturate_letters(monoid, letters)
    out: set[int] = set()
    for x in sat.masks:
        out.update(submasks(x))
    ordered = sorted(out, key=lambda m: (bin(m).count("1"), bits(m)))
    return PointlikeFamily(sat, tuple(ordered))
