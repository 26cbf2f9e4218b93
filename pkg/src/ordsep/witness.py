"""Witness families for saturation members.

For a member ``X`` of the saturation and a depth ``k`` we build one word
``u_x`` per ``x ∈ X`` with ``π(h(u_x)) = x``, together with derivations of
``u_x ≡ᵏ u_x'`` for every pair. The construction follows the member's
provenance:

- seed: the letter; unit: the empty word;
- product ``X·Y``: ``u_x u_y`` for the first factorisation ``z = x·y``;
- merge: a concatenation of ``m >= 2^k + 1`` witnesses of ``X``, with ``m``
  the least such length reaching the element;
- omega: a prefix of a common length ``ℓ`` followed by an ω-power.

Every family has an *anchor* word all members are proved equivalent to;
pairwise derivations go through it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .derivation import (
    EquivDerivation,
    chain,
    check_derivation,
    concat_cong,
    concat_cong_all,
    omega_cong,
    pump_between,
    refl,
    reverse,
    struct_eq,
)
from .errors import InconsistencyError
from .monoid import LetterMap, OrdinalMonoid
from .powerset import bits
from .saturation import SaturationResult
from .words import Concat, Empty, Letter, OmegaPow, Pow, WordExpr, concat, eval_expr, power, runs


@dataclass
class WitnessFamily:
    member: int
    mask: int
    k: int
    words: dict[int, WordExpr]
    anchor: WordExpr
    to_anchor: dict[int, EquivDerivation] = field(repr=False)

    @property
    def elements(self) -> tuple[int, ...]:
        return tuple(sorted(self.words))

    def derivation(self, x: int, y: int) -> EquivDerivation:
        """A derivation of ``u_x ≡ᵏ u_y``."""
        if x == y:
            return refl(self.words[x], self.k)
        return _link([self.to_anchor[x], reverse(self.to_anchor[y])], self.words[x], self.k)

    def check(self, monoid: OrdinalMonoid, letters: LetterMap) -> list[str]:
        """Problems found when re-evaluating words and re-checking derivations."""
        problems = []
        for x, w in self.words.items():
            got = eval_expr(w, monoid, letters)
            if got != x:
                problems.append(f"{w} evaluates to {monoid.name(got)}, not {monoid.name(x)}")
        for x in self.words:
            for y in self.words:
                res = check_derivation(self.derivation(x, y), self.k)
                if not res:
                    problems.append(f"{monoid.name(x)} ~ {monoid.name(y)}: {res}")
        return problems


def _link(ds: Sequence[EquivDerivation], start: WordExpr, k: int) -> EquivDerivation:
    ds = [d for d in ds if d.rule != "Refl"]
    return chain(ds, k) if ds else refl(start, k)


def _cat(a: WordExpr, b: WordExpr) -> WordExpr:
    if isinstance(a, Empty):
        return b
    if isinstance(b, Empty):
        return a
    return Concat(a, b)


def _layers_until(pm_mul, xs: list[int], done) -> list[dict[int, tuple[int | None, int]]]:
    """Exact-length product layers over ``xs`` with back-pointers.

    ``layers[m-1][z] = (prev, x)`` means ``z = prev·x`` with ``prev`` in
    layer ``m-1`` (``None`` at length 1). Grows until ``done(layers)``.
    """
    first = {}
    for x in xs:
        first.setdefault(x, (None, x))
    layers = [first]
    while not done(layers):
        nxt: dict[int, tuple[int | None, int]] = {}
        for prev in sorted(layers[-1]):
            for x in xs:
                nxt.setdefault(pm_mul(prev, x), (prev, x))
        layers.append(nxt)
    return layers


def _spell(layers, m: int, z: int) -> list[int]:
    seq = []
    for level in range(m - 1, -1, -1):
        prev, x = layers[level][z]
        seq.append(x)
        z = prev
    return seq[::-1]


class WitnessBuilder:
    """Builds (and caches) witness families for all members of one saturation."""

    def __init__(self, sat: SaturationResult, k: int):
        if k < 0:
            raise ValueError("depth k must be non-negative")
        self.sat = sat
        self.k = k
        self.base = sat.base
        self.cache: dict[int, WitnessFamily] = {}

    @property
    def merge_length(self) -> int:
        return 2 ** self.k + 1

    def family(self, i: int) -> WitnessFamily:
        if not 0 <= i < len(self.sat):
            raise IndexError(f"no saturation member {i}")
        stack, order = [i], []
        # iterative post-order to stay clear of the recursion limit
        while stack:
            j = stack.pop()
            if j in self.cache or j in order:
                continue
            order.append(j)
            prov = self.sat.provenance[j]
            if prov.rule not in ("seed", "unit"):
                stack.extend(prov.operands)
        # operands always precede the members built from them
        for j in sorted(order):
            if j not in self.cache:
                self.cache[j] = self._build(j)
        return self.cache[i]

    def _build(self, i: int) -> WitnessFamily:
        prov = self.sat.provenance[i]
        mask = self.sat.masks[i]
        k = self.k
        if prov.rule == "seed":
            label = self.sat.labels[prov.operands[0]] if self.sat.labels else None
            elems = bits(mask)
            if label is None or len(elems) != 1:
                raise ValueError(f"seed member {i} has no letter to witness it")
            w = Letter(label)
            return WitnessFamily(i, mask, k, {elems[0]: w}, w, {elems[0]: refl(w, k)})
        if prov.rule == "unit":
            w = Empty()
            return WitnessFamily(i, mask, k, {self.base.unit: w}, w, {self.base.unit: refl(w, k)})
        if prov.rule == "product":
            return self._product(i, mask, self.cache[prov.operands[0]], self.cache[prov.operands[1]])
        if prov.rule == "merge":
            return self._merge(i, mask, self.cache[prov.operands[0]])
        if prov.rule == "omega":
            return self._omega(i, mask, self.cache[prov.operands[0]])
        raise ValueError(f"member {i}: unknown provenance {prov.rule!r}")

    def _product(self, i, mask, fx: WitnessFamily, fy: WitnessFamily) -> WitnessFamily:
        mul, k = self.base.mul, self.k
        anchor = _cat(fx.anchor, fy.anchor)
        words, to = {}, {}
        for z in bits(mask):
            x, y = next((x, y) for x in fx.elements for y in fy.elements if mul(x, y) == z)
            plain = Concat(fx.words[x], fy.words[y])
            word = _cat(fx.words[x], fy.words[y])
            words[z] = word
            to[z] = _link(
                [
                    struct_eq(word, plain, k),
                    concat_cong(fx.to_anchor[x], fy.to_anchor[y]),
                    struct_eq(Concat(fx.anchor, fy.anchor), anchor, k),
                ],
                word,
                k,
            )
        return WitnessFamily(i, mask, k, words, anchor, to)

    def _merge(self, i, mask, fx: WitnessFamily) -> WitnessFamily:
        mul, k, m0 = self.base.mul, self.k, self.merge_length
        targets = bits(mask)
        xs = list(fx.elements)
        found: dict[int, int] = {}

        def done(layers) -> bool:
            m = len(layers)
            if m >= m0:
                for z in layers[-1]:
                    found.setdefault(z, m)
            if m > m0 + 2 ** len(self.base) + len(self.base):
                raise InconsistencyError(f"merge member {i}: element not reached by powers")
            return all(z in found for z in targets)

        layers = _layers_until(mul, xs, done)
        a = fx.anchor
        anchor = Pow(a, m0)
        words, to = {}, {}
        for z in targets:
            m = found[z]
            seq = _spell(layers, m, z)
            parts = [fx.words[x] for x in seq]
            word = runs(parts)
            words[z] = word
            to[z] = _link(
                [
                    struct_eq(word, concat(*parts), k),
                    concat_cong_all([fx.to_anchor[x] for x in seq], k),
                    struct_eq(concat(*[a] * m), Pow(a, m), k),
                    pump_between(a, m, m0, k),
                ],
                word,
                k,
            )
        return WitnessFamily(i, mask, k, words, anchor, to)

    def _omega(self, i, mask, fx: WitnessFamily) -> WitnessFamily:
        base, k = self.base, self.k
        mul, om = base.mul, base.omega
        targets = bits(mask)
        xs = list(fx.elements)

        def closed(layers) -> bool:
            seen = set().union(*layers[:-1]) if len(layers) > 1 else set()
            return set(layers[-1]) <= seen

        t_layers = _layers_until(mul, xs, closed)
        # shortest spelling of each element of X⁺, in (length, index) order
        t_len: dict[int, int] = {}
        for m, layer in enumerate(t_layers, 1):
            for t in sorted(layer):
                t_len.setdefault(t, m)
        t_order = sorted(t_len, key=lambda t: (t_len[t], t))

        choice: dict[int, tuple[int, int | None, int]] = {}
        for z in targets:
            t = next((t for t in t_order if om[t] == z), None)
            if t is not None:
                choice[z] = (0, None, t)
        ell = 0
        p_layers: list = []
        if len(choice) < len(targets):
            choice.clear()

            def reached(layers) -> bool:
                layer = layers[-1]
                ok = True
                for z in targets:
                    hit = next(
                        ((p, t) for p in sorted(layer) for t in t_order if mul(p, om[t]) == z),
                        None,
                    )
                    if hit is None:
                        ok = False
                        break
                    choice[z] = (len(layers), hit[0], hit[1])
                if not ok:
                    choice.clear()
                if len(layers) > 4 * len(base) + 2 ** len(base):
                    raise InconsistencyError(f"omega member {i}: no common prefix length")
                return ok

            p_layers = _layers_until(mul, xs, reached)
            ell = len(p_layers)

        a = fx.anchor
        anchor = _cat(power(a, ell), OmegaPow(a))
        words, to = {}, {}
        for z in targets:
            _, p, t = choice[z]
            tseq = _spell(t_layers, t_len[t], t)
            tparts = [fx.words[x] for x in tseq]
            q = runs(tparts)
            dq = _link(
                [struct_eq(q, concat(*tparts), k), concat_cong_all([fx.to_anchor[x] for x in tseq], k)],
                q,
                k,
            )
            loop = omega_cong(dq)
            a_loop = OmegaPow(concat(*[a] * len(tseq)))
            if ell == 0:
                word = OmegaPow(q)
                steps = [loop, struct_eq(a_loop, anchor, k)]
            else:
                pseq = _spell(p_layers, ell, p)
                pparts = [fx.words[x] for x in pseq]
                pw = runs(pparts)
                dp = _link(
                    [
                        struct_eq(pw, concat(*pparts), k),
                        concat_cong_all([fx.to_anchor[x] for x in pseq], k),
                    ],
                    pw,
                    k,
                )
                word = Concat(pw, OmegaPow(q))
                steps = [concat_cong(dp, loop), struct_eq(Concat(concat(*[a] * ell), a_loop), anchor, k)]
            words[z] = word
            to[z] = _link(steps, word, k)
        return WitnessFamily(i, mask, k, words, anchor, to)


def witnesses(sat: SaturationResult, index: int, k: int) -> WitnessFamily:
    """Witness family for member ``index`` of ``sat`` at depth ``k``."""
    return WitnessBuilder(sat, k).family(index)


@dataclass(frozen=True)
class WitnessPair:
    u: WordExpr
    v: WordExpr
    x: int
    y: int
    derivation: EquivDerivation
    blocking: int
    k: int


def witness_pair(K, L, k: int) -> WitnessPair:
    """Words ``u ∈ K`` and ``v ∈ L`` with a derivation of ``u ≡ᵏ v``.

    Raises ``ValueError`` when ``K`` and ``L`` are separable.
    """
    from .decision import separate

    out = separate(K, L)
    if out.verdict != "no":
        raise ValueError("languages are FO-separable; there is no witness pair")
    fam = witnesses(out.sat, out.blocking, k)
    x, y = out.marked
    return WitnessPair(fam.words[x], fam.words[y], x, y, fam.derivation(x, y), out.blocking, k)
