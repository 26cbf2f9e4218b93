"""Green's relations and the J-class flags used by the trichotomy arguments."""

from __future__ import annotations

from dataclasses import dataclass

from .monoid import OrdinalMonoid


@dataclass(frozen=True)
class JClass:
    members: tuple[int, ...]
    regular: bool
    omega_stable: bool
    h_trivial: bool


@dataclass(frozen=True)
class GreenSummary:
    """Class identifiers per element for J, L, R and H, plus per-J-class flags.

    Class identifiers are numbered in order of the least element index they
    contain, so they are stable across runs.
    """

    j: tuple[int, ...]
    l: tuple[int, ...]
    r: tuple[int, ...]
    h: tuple[int, ...]
    j_classes: tuple[JClass, ...]
    # up_*[x] is the set of y with x <=_* y
    up_l: tuple[frozenset[int], ...]
    up_r: tuple[frozenset[int], ...]
    up_j: tuple[frozenset[int], ...]

    def leq_l(self, x: int, y: int) -> bool:
        return y in self.up_l[x]

    def leq_r(self, x: int, y: int) -> bool:
        return y in self.up_r[x]

    def leq_j(self, x: int, y: int) -> bool:
        return y in self.up_j[x]

    def j_class_of(self, x: int) -> JClass:
        return self.j_classes[self.j[x]]


def _classes(n: int, same) -> tuple[int, ...]:
    ids = [-1] * n
    count = 0
    for x in range(n):
        if ids[x] >= 0:
            continue
        for y in range(x, n):
            if ids[y] < 0 and same(x, y):
                ids[y] = count
        count += 1
    return tuple(ids)


def greens(m: OrdinalMonoid) -> GreenSummary:
    n = len(m)
    mul = m.product
    right = [frozenset(mul[y]) for y in range(n)]  # yM
    left = [frozenset(mul[a][y] for a in range(n)) for y in range(n)]  # My
    both = [frozenset(mul[z][b] for z in left[y] for b in range(n)) for y in range(n)]

    up_r = tuple(frozenset(y for y in range(n) if x in right[y]) for x in range(n))
    up_l = tuple(frozenset(y for y in range(n) if x in left[y]) for x in range(n))
    up_j = tuple(frozenset(y for y in range(n) if x in both[y]) for x in range(n))

    j = _classes(n, lambda x, y: _equivalent(up_j, x, y))
    l = _classes(n, lambda x, y: _equivalent(up_l, x, y))
    r = _classes(n, lambda x, y: _equivalent(up_r, x, y))
    h = _classes(n, lambda x, y: l[x] == l[y] and r[x] == r[y])

    classes = []
    for cid in range(max(j) + 1):
        members = tuple(x for x in range(n) if j[x] == cid)
        mset = set(members)
        regular = any(mul[x][x] == x for x in members)
        stable = any(m.omega[x] in mset for x in members)
        h_sizes = {}
        for x in members:
            h_sizes[h[x]] = h_sizes.get(h[x], 0) + 1
        classes.append(JClass(members, regular, stable, all(s == 1 for s in h_sizes.values())))
    return GreenSummary(j, l, r, h, tuple(classes), up_l, up_r, up_j)


def _equivalent(up, x: int, y: int) -> bool:
    return y in up[x] and x in up[y]
