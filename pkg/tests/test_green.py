from __future__ import annotations

import pytest

from _corpus import corpus_ids, omega_parity
from ordsep import corpus
from ordsep.green import greens
from ordsep.monoid import trivial_monoid


def classes(ids):
    out = {}
    for x, c in enumerate(ids):
        out.setdefault(c, set()).add(x)
    return sorted(map(frozenset, out.values()), key=min)


def test_omega_parity_egg_box():
    m = omega_parity()
    g = greens(m)
    named = [{m.name(x) for x in c.members} for c in g.j_classes]
    assert named == [{"1"}, {"a", "aa"}, {"a^w", "a^w.a", "a^w.a.a"}]


def test_omega_parity_flags():
    m = omega_parity()
    g = greens(m)
    top = g.j_class_of(m.index("a^w"))
    assert top.omega_stable and top.h_trivial and top.regular
    group = g.j_class_of(m.index("a"))
    assert group.regular and not group.omega_stable and not group.h_trivial


def test_trivial_monoid():
    g = greens(trivial_monoid())
    assert len(g.j_classes) == 1
    c = g.j_classes[0]
    assert c.regular and c.omega_stable and c.h_trivial


def test_orders_by_definition():
    m = omega_parity()
    g = greens(m)
    for x in m:
        for y in m:
            by_right = any(m.mul(y, z) == x for z in m)
            by_left = any(m.mul(z, y) == x for z in m)
            assert g.leq_r(x, y) == by_right
            assert g.leq_l(x, y) == by_left


@pytest.mark.parametrize("name", corpus_ids())
def test_green_invariants(name):
    m = corpus.load(name).monoid
    g = greens(m)
    for x in m:
        for y in m:
            if g.leq_l(x, y) or g.leq_r(x, y):
                assert g.leq_j(x, y)
    h, l, r = classes(g.h), classes(g.l), classes(g.r)
    for hc in h:
        assert any(hc <= lc for lc in l) and any(hc <= rc for rc in r)
    for x in m:
        for y in m:
            assert (g.h[x] == g.h[y]) == (g.l[x] == g.l[y] and g.r[x] == g.r[y])
    for c in g.j_classes:
        if c.regular:
            assert any(m.mul(x, x) == x for x in c.members)
        if c.omega_stable:
            assert c.h_trivial
    first_seen = list(dict.fromkeys(g.j))
    assert first_seen == list(range(len(g.j_classes)))
