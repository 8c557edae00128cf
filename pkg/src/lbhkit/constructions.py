"""Standard finite groupoids: groups, pair groupoids, bundles, actions, unions."""

from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import Callable, Sequence

from .algebra import Cocycle
from .groupoid import FiniteGroupoid


def from_group(elements: Sequence, mul: Callable, identity, name: str = "",
               label: Callable = str) -> FiniteGroupoid:
    """One-unit groupoid of a finite group given by its multiplication."""
    ids = {x: label(x) for x in elements}
    e = ids[identity]
    inv, comp = {}, {}
    for x in elements:
        for y in elements:
            xy = mul(x, y)
            comp[(ids[x], ids[y])] = ids[xy]
            if xy == identity:
                inv[ids[x]] = ids[y]
    arrows = [ids[x] for x in elements]
    return FiniteGroupoid(arrows, {e}, {a: e for a in arrows}, {a: e for a in arrows},
                          inv, comp, name=name)


def _cyclic_label(k: int) -> str:
    return "e" if k == 0 else ("g" if k == 1 else f"g{k}")


def cyclic_group(n: int) -> FiniteGroupoid:
    """Z/n with arrows ``e, g, g2, ..., g{n-1}``; ``gk`` is the k-th power of ``g``."""
    return from_group(range(n), lambda a, b: (a + b) % n, 0, name=f"Z/{n}",
                      label=_cyclic_label)


def abelian_group(moduli: Sequence[int]) -> FiniteGroupoid:
    """Z/m1 x ... x Z/mr with arrows labelled ``(a1,...,ar)``."""
    elements = list(itertools.product(*(range(m) for m in moduli)))
    mul = lambda a, b: tuple((x + y) % m for x, y, m in zip(a, b, moduli))
    label = lambda a: "(" + ",".join(map(str, a)) + ")"
    name = " x ".join(f"Z/{m}" for m in moduli)
    return from_group(elements, mul, tuple(0 for _ in moduli), name=name, label=label)


def symmetric_group(n: int) -> FiniteGroupoid:
    elements = list(itertools.permutations(range(n)))
    # (p q)(i) = p(q(i))
    mul = lambda p, q: tuple(p[q[i]] for i in range(n))
    label = lambda p: "".join(map(str, p))
    return from_group(elements, mul, tuple(range(n)), name=f"S{n}", label=label)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Full equivalence relation on ``n`` points; arrow ``i<-j`` has range i, source j."""
    pts = [f"{i}" for i in range(n)]
    arrow = lambda i, j: pts[i] if i == j else f"{i}<-{j}"
    arrows = [arrow(i, j) for i in range(n) for j in range(n)]
    src, rng, inv, comp = {}, {}, {}, {}
    for i in range(n):
        for j in range(n):
            a = arrow(i, j)
            rng[a], src[a], inv[a] = pts[i], pts[j], arrow(j, i)
            for k in range(n):
                comp[(a, arrow(j, k))] = arrow(i, k)
    return FiniteGroupoid(arrows, set(pts), src, rng, inv, comp, name=f"R{n}")


def trivial_groupoid(n: int) -> FiniteGroupoid:
    """Unit space only: ``n`` points and no other arrows."""
    pts = [f"u{i}" for i in range(n)]
    same = {x: x for x in pts}
    comp = {(x, x): x for x in pts}
    return FiniteGroupoid(pts, set(pts), same, dict(same), dict(same), comp,
                          name=f"X{n}")


def action_groupoid(points: Sequence, group: FiniteGroupoid, act: Callable,
                    name: str = "") -> FiniteGroupoid:
    """Transformation groupoid ``X x| Gamma`` of a group acting on the left.

    The arrow ``(t, x)`` goes from ``x`` to ``t.x``; ``act(t, x)`` is the
    action with ``t`` an arrow label of ``group``.
    """
    if len(group.units) != 1:
        raise ValueError("action_groupoid needs a one-unit groupoid (a group)")
    (e,) = group.units
    unit_of = {x: f"{x}" for x in points}
    arrow = lambda t, x: unit_of[x] if t == e else f"{t}.{x}"
    src, rng, inv, comp, arrows = {}, {}, {}, {}, []
    for x in points:
        for t in group.arrows:
            a = arrow(t, x)
            arrows.append(a)
            tx = act(t, x)
            src[a], rng[a] = unit_of[x], unit_of[tx]
            inv[a] = arrow(group.inv[t], tx)
            for u in group.arrows:
                comp[(arrow(u, tx), a)] = arrow(group.comp[(u, t)], x)
    return FiniteGroupoid(arrows, set(unit_of.values()), src, rng, inv, comp,
                          name=name or f"{group.name} acting on {len(points)} points")


def disjoint_union(*parts: FiniteGroupoid, name: str = "") -> FiniteGroupoid:
    """Disjoint union; arrows of the i-th summand are prefixed ``i:``."""
    arrows, unit_set, src, rng, inv, comp = [], set(), {}, {}, {}, {}
    for i, g in enumerate(parts):
        tag = lambda a, i=i: f"{i}:{a}"
        arrows += [tag(a) for a in g.arrows]
        unit_set |= {tag(x) for x in g.units}
        for a in g.arrows:
            src[tag(a)], rng[tag(a)], inv[tag(a)] = tag(g.src[a]), tag(g.rng[a]), tag(g.inv[a])
        for (a, b), c in g.comp.items():
            comp[(tag(a), tag(b))] = tag(c)
    return FiniteGroupoid(arrows, unit_set, src, rng, inv, comp,
                          name=name or " + ".join(g.name for g in parts))


def group_bundle(group: FiniteGroupoid, n_units: int) -> FiniteGroupoid:
    """Trivial bundle of a group over ``n_units`` points."""
    g = disjoint_union(*(group for _ in range(n_units)))
    return FiniteGroupoid(g.arrows, g.units, g.src, g.rng, g.inv, g.comp,
                          name=f"{group.name} bundle over {n_units}")


def product(g: FiniteGroupoid, h: FiniteGroupoid) -> FiniteGroupoid:
    """Cartesian product groupoid; arrow ``a*b`` pairs ``a`` in g with ``b`` in h."""
    pair = lambda a, b: f"{a}*{b}"
    arrows = [pair(a, b) for a in g.arrows for b in h.arrows]
    unit_set = {pair(x, y) for x in g.units for y in h.units}
    src, rng, inv, comp = {}, {}, {}, {}
    for a in g.arrows:
        for b in h.arrows:
            ab = pair(a, b)
            src[ab] = pair(g.src[a], h.src[b])
            rng[ab] = pair(g.rng[a], h.rng[b])
            inv[ab] = pair(g.inv[a], h.inv[b])
    for (a1, a2), a in g.comp.items():
        for (b1, b2), b in h.comp.items():
            comp[(pair(a1, b1), pair(a2, b2))] = pair(a, b)
    return FiniteGroupoid(arrows, unit_set, src, rng, inv, comp,
                          name=f"{g.name} x {h.name}")


def empty_groupoid() -> FiniteGroupoid:
    return FiniteGroupoid((), set(), {}, {}, {}, {}, name="empty")


def corpus() -> list[FiniteGroupoid]:
    """The fixture corpus: every groupoid here has at most 60 arrows."""
    z2, z3, z4 = cyclic_group(2), cyclic_group(3), cyclic_group(4)
    s3 = symmetric_group(3)
    shift = lambda n: (lambda t, x: (x + int(t[1:] or 1) * (t != "e")) % n)
    perm_act = lambda t, x: int(t[x])
    items = [
        trivial_groupoid(1),
        trivial_groupoid(3),
        empty_groupoid(),
        pair_groupoid(2),
        pair_groupoid(3),
        pair_groupoid(5),
        z2,
        z3,
        z4,
        cyclic_group(5),
        cyclic_group(6),
        cyclic_group(7),
        cyclic_group(9),
        abelian_group([2, 2]),
        abelian_group([3, 3]),
        s3,
        group_bundle(z3, 2),
        group_bundle(cyclic_group(6), 2),
        group_bundle(cyclic_group(9), 2),
        action_groupoid(range(2), z2, shift(2), name="Z/2 acting freely on 2 points"),
        action_groupoid(range(3), z3, shift(3), name="Z/3 acting freely on 3 points"),
        action_groupoid(range(2), z4, shift(2), name="Z/4 acting on 2 points"),
        action_groupoid(range(3), s3, perm_act, name="S3 acting on 3 points"),
        disjoint_union(pair_groupoid(2), z2),
        disjoint_union(pair_groupoid(3), pair_groupoid(2)),
        disjoint_union(pair_groupoid(2), cyclic_group(9)),
        product(pair_groupoid(3), z2),
    ]
    return items


def bicharacter_cocycle(g: FiniteGroupoid, coords: Callable, modulus: int) -> Cocycle:
    """``sigma(a, b) = a_0 b_1 / modulus`` turns.

    ``coords`` must be a homomorphism from ``g`` to ``(Z/modulus)**2``; the
    pulled-back bicharacter is then a normalised 2-cocycle, in general not a
    coboundary.
    """
    turns = {(a, b): Fraction(coords(a)[0] * coords(b)[1], modulus) for (a, b) in g.comp}
    return Cocycle(g, turns)


def _tuple_label(label: str) -> tuple:
    return tuple(int(t) for t in label.strip("()").split(","))


def random_coboundary(g: FiniteGroupoid, seed: int = 0, denominator: int = 12) -> Cocycle:
    rnd = random.Random(seed)
    phase = {a: Fraction(rnd.randrange(denominator), denominator) for a in g.arrows}
    return Cocycle.coboundary(g, phase)


def twisted_corpus() -> list[tuple[FiniteGroupoid, Cocycle]]:
    """Groupoids paired with nontrivial cocycles."""
    klein, z3z3 = abelian_group([2, 2]), abelian_group([3, 3])
    r2_klein = product(pair_groupoid(2), klein)
    bundle = group_bundle(z3z3, 2)
    items = [
        (klein, bicharacter_cocycle(klein, _tuple_label, 2)),
        (z3z3, bicharacter_cocycle(z3z3, _tuple_label, 3)),
        (r2_klein, bicharacter_cocycle(r2_klein, lambda a: _tuple_label(a.split("*")[1]), 2)),
        (bundle, bicharacter_cocycle(bundle, lambda a: _tuple_label(a.split(":")[1]), 3)),
    ]
    for i, g in enumerate(corpus()):
        if len(g.arrows) > 1:
            items.append((g, random_coboundary(g, seed=i)))
    return items
