from __future__ import annotations

from dataclasses import replace
from itertools import combinations
from pathlib import Path

import pytest

from _corpus import corpus_files, omega_parity
from _oracles import closure
from ordsep import corpus
from ordsep.decision import (
    IncompatibleRecognizers,
    LanguageRecognizer,
    check_certificate,
    cover,
    pointlikes,
    separate,
    submasks,
)
from ordsep.errors import MalformedInput
from ordsep.monoid import LetterMap
from ordsep.powerset import power_of
from ordsep.saturation import Provenance


def omega_parity_langs():
    pf = corpus.load("omega_parity")
    return pf.language("J"), pf.language("K"), pf.language("L")


def test_omega_parity_verdicts():
    J, K, L = omega_parity_langs()
    no = separate(J, K)
    assert no.verdict == "no"
    assert no.blocking == 7
    assert [J.monoid.name(x) for x in no.blocking_set] == ["a^w.a", "a^w.a.a"]
    assert [J.monoid.name(x) for x in no.marked] == ["a^w.a.a", "a^w.a"]
    assert check_certificate(no)
    yes = separate(K, L)
    assert yes.verdict == "yes" and len(yes.attestation) == len(yes.sat) == 8
    assert check_certificate(yes)


def test_records():
    J, K, L = omega_parity_langs()
    rec = separate(J, K).to_record()
    assert rec["verdict"] == "no" and rec["blocking_set"] == ["a^w.a", "a^w.a.a"]
    assert [p["index"] for p in rec["provenance_chain"]][-1] == 7
    rec = separate(K, L).to_record()
    assert "separator" in rec and len(rec["attestation"]) == 8
    assert "separator" not in cover(L, [K]).to_record()


def lettered():
    return [pf for pf in corpus_files() if pf.letters is not None and len(pf.accepts) >= 2]


def brute_verdict(pf, sets):
    pm = power_of(pf.monoid)
    seeds = {1 << x for _, x in pf.letters.items}
    fam = closure(seeds | {pm.unit}, pm.product, [pm.merge, pm.omega])
    masks = [sum(1 << x for x in s) for s in sets]
    return "no" if any(all(x & s for s in masks) for x in fam) else "yes"


@pytest.mark.parametrize("pf", lettered(), ids=lambda pf: Path(pf.source).stem)
def test_verdicts_match_brute_force_and_are_symmetric(pf):
    langs = [pf.language(n) for n in pf.accepts]
    for K, L in combinations(langs, 2):
        out = separate(K, L)
        assert out.verdict == separate(L, K).verdict
        assert out.verdict == brute_verdict(pf, [K.accepting, L.accepting])
        assert out.verdict == cover(L, [K]).verdict
        assert check_certificate(out)
    for r in range(1, len(langs)):
        for Ks in combinations(langs[1:], r):
            out = cover(langs[0], list(Ks))
            assert check_certificate(out)
            assert out.verdict == brute_verdict(pf, [langs[0].accepting] + [k.accepting for k in Ks])
            if out.verdict == "no":
                # dropping constraints keeps the instance non-coverable
                for sub in combinations(Ks, r - 1):
                    assert cover(langs[0], list(sub)).verdict == "no" or not sub


def test_cover_without_constraints_is_trivial():
    _, K, _ = omega_parity_langs()
    out = cover(K, [])
    assert out.verdict == "yes" and out.trivial
    assert check_certificate(out)
    assert "trivial" in out.to_record()


def test_certificate_mutations_are_rejected():
    J, K, L = omega_parity_langs()
    no = separate(J, K)
    sat = no.sat
    assert not check_certificate(replace(no, marked=(no.marked[1], no.marked[0])))
    assert not check_certificate(replace(no, blocking=99))
    assert not check_certificate(replace(no, marked=no.marked[:1]))
    prov = list(sat.provenance)
    prov[7] = Provenance("product", (4, 2))
    assert not check_certificate(replace(no, sat=replace(sat, provenance=tuple(prov))))
    prov[7] = Provenance("product", (7, 3))
    assert not check_certificate(replace(no, sat=replace(sat, provenance=tuple(prov))))

    yes = separate(K, L)
    assert not check_certificate(replace(yes, attestation=yes.attestation[:-1]))
    flipped = tuple(1 - a for a in yes.attestation)
    assert not check_certificate(replace(yes, attestation=flipped))
    short = replace(yes.sat, masks=yes.sat.masks[:-1], provenance=yes.sat.provenance[:-1])
    res = check_certificate(replace(yes, sat=short, attestation=yes.attestation[:-1]))
    assert not res and "closed" in str(res)
    assert not check_certificate(replace(yes, verdict="maybe"))
    assert not check_certificate(replace(yes, trivial=True))


def test_incompatible_recognizers():
    J, _, _ = omega_parity_langs()
    m = omega_parity()
    other = LanguageRecognizer(m, LetterMap.of({"b": m.index("a")}), {m.index("a")}, "B")
    with pytest.raises(IncompatibleRecognizers):
        separate(J, other)
    zero = corpus.load("cyclic2").language("odd")
    with pytest.raises(MalformedInput):
        cover(J, [zero])


def test_recognizer_validation():
    m = omega_parity()
    with pytest.raises(MalformedInput):
        LanguageRecognizer(m, LetterMap.of({"a": 1}), {17})
    with pytest.raises(MalformedInput):
        LanguageRecognizer(m, LetterMap.of({"a": 9}), {1})


def test_pointlikes_omega_parity():
    pf = corpus.load("omega_parity")
    m = pf.monoid
    pl = pointlikes(m, pf.letters)
    pm = power_of(m)
    fam = closure({1 << m.index("a"), pm.unit}, pm.product, [pm.merge, pm.omega])
    expected = {sub for sub in range(1, 1 << len(m)) if any(sub & ~x == 0 for x in fam)}
    # every subset of an omega_parity member is already a member
    assert set(pl.masks) == expected == fam and len(pl) == 8
    assert 1 << m.index("a^w.a") in pl
    assert {m.index("a"), m.index("a^w")} not in pl
    maximal = {tuple(m.name(x) for x in range(len(m)) if mask >> x & 1) for mask in pl.maximal()}
    assert maximal == {("1",), ("a", "aa"), ("a^w",), ("a^w.a", "a^w.a.a")}


def test_submasks():
    assert sorted(submasks(0b101)) == [0b001, 0b100, 0b101]
    assert list(submasks(0)) == []


@pytest.mark.parametrize("pf", [p for p in corpus_files() if p.letters], ids=lambda pf: Path(pf.source).stem)
def test_pointlikes_are_the_downward_closure(pf):
    pm = power_of(pf.monoid)
    fam = closure({1 << x for _, x in pf.letters.items} | {pm.unit}, pm.product, [pm.merge, pm.omega])
    expected = {s for s in range(1, 1 << len(pf.monoid)) if any(s & ~x == 0 for x in fam)}
    pl = pointlikes(pf.monoid, pf.letters)
    assert set(pl.masks) == expected
    assert all(any(s & ~x == 0 for x in pl.maximal()) for s in pl.masks)
