"""Finite groupoids with the discrete topology.

Composition reads right-to-left: ``comp[(a, b)]`` is the arrow ``ab`` and is
defined exactly when ``src[a] == rng[b]``.  Every subset of a discrete
groupoid is open, so the interior of the isotropy is the isotropy itself and
effective coincides with principal.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Hashable, Iterable, Mapping

Arrow = Hashable


class NotIsotropyError(ValueError):
    """Raised when an isotropy arrow was required."""


@dataclass(frozen=True, eq=False)
class FiniteGroupoid:
    arrows: tuple
    units: frozenset
    src: Mapping[Arrow, Arrow]
    rng: Mapping[Arrow, Arrow]
    inv: Mapping[Arrow, Arrow]
    comp: Mapping[tuple, Arrow]
    name: str = field(default="", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "arrows", tuple(self.arrows))
        object.__setattr__(self, "units", frozenset(self.units))

    def __len__(self):
        return len(self.arrows)

    def __repr__(self):
        label = f" {self.name!r}" if self.name else ""
        return f"<FiniteGroupoid{label}: {len(self.arrows)} arrows, {len(self.units)} units>"

    @cached_property
    def position(self) -> dict:
        return {a: i for i, a in enumerate(self.arrows)}

    @cached_property
    def unit_list(self) -> tuple:
        """Units in arrow order."""
        return tuple(a for a in self.arrows if a in self.units)

    @cached_property
    def source_fibres(self) -> dict:
        """``x -> G_x``, arrows with source ``x``, in arrow order."""
        fibres = {x: [] for x in self.unit_list}
        for a in self.arrows:
            fibres.setdefault(self.src[a], []).append(a)
        return {x: tuple(v) for x, v in fibres.items()}

    @cached_property
    def range_fibres(self) -> dict:
        """``x -> G^x``, arrows with range ``x``, in arrow order."""
        fibres = {x: [] for x in self.unit_list}
        for a in self.arrows:
            fibres.setdefault(self.rng[a], []).append(a)
        return {x: tuple(v) for x, v in fibres.items()}

    def composable(self, a, b) -> bool:
        return self.src[a] == self.rng[b]

    def compose(self, a, b):
        if not self.composable(a, b):
            raise ValueError(f"arrows {a!r} and {b!r} are not composable")
        return self.comp[(a, b)]

    def power(self, a, k: int):
        """``a**k`` for an isotropy arrow; ``a**0`` is ``src(a)``."""
        if k < 0:
            return self.power(self.inv[a], -k)
        out = self.src[a]
        for _ in range(k):
            out = self.comp[(out, a)]
        return out

    def arrow_set(self, members: Iterable = ()) -> "ArrowSet":
        return ArrowSet(self, frozenset(members))

    def sorted_arrows(self, members: Iterable) -> list:
        pos = self.position
        return sorted(members, key=pos.__getitem__)


@dataclass(frozen=True)
class Violation:
    axiom: str
    arrows: tuple
    detail: str = ""

    def __str__(self):
        names = ", ".join(map(str, self.arrows))
        extra = f": {self.detail}" if self.detail else ""
        return f"{self.axiom} [{names}]{extra}"


def validate(g: FiniteGroupoid) -> list[Violation]:
    """Check every groupoid axiom; an empty list means ``g`` is valid.

    Runs the full associativity scan, so the cost is cubic in ``len(g)``.
    """
    out: list[Violation] = []
    arrows = set(g.arrows)
    if len(arrows) != len(g.arrows):
        seen = set()
        dups = [a for a in g.arrows if a in seen or seen.add(a)]
        out.append(Violation("duplicate arrow", tuple(dups)))
    for x in g.units:
        if x not in arrows:
            out.append(Violation("unit is not an arrow", (x,)))

    structural = True
    for a in g.arrows:
        for label, table in (("src", g.src), ("rng", g.rng)):
            if a not in table:
                out.append(Violation(f"missing {label}", (a,)))
                structural = False
            elif table[a] not in g.units:
                out.append(Violation(f"{label} is not a unit", (a, table[a])))
                structural = False
        if a not in g.inv:
            out.append(Violation("missing inverse", (a,)))
            structural = False
        elif g.inv[a] not in arrows:
            out.append(Violation("inverse is not an arrow", (a, g.inv[a])))
            structural = False
    if not structural:
        return out

    for x in g.unit_list:
        if g.src[x] != x or g.rng[x] != x:
            out.append(Violation("unit not fixed by src/rng", (x,)))

    for (a, b), c in g.comp.items():
        if a not in arrows or b not in arrows or c not in arrows:
            out.append(Violation("composition references unknown arrow", (a, b, c)))
        elif g.src[a] != g.rng[b]:
            out.append(Violation("composite defined on non-composable pair", (a, b)))
    for a in g.arrows:
        for b in g.range_fibres.get(g.src[a], ()):
            c = g.comp.get((a, b))
            if c is None:
                out.append(Violation("missing composite", (a, b)))
                continue
            if c not in arrows:
                continue
            if g.rng[c] != g.rng[a] or g.src[c] != g.src[b]:
                out.append(Violation("composite has wrong endpoints", (a, b, c)))
    if out:
        return out

    for a in g.arrows:
        if g.comp[(a, g.src[a])] != a:
            out.append(Violation("right unit law", (a, g.src[a])))
        if g.comp[(g.rng[a], a)] != a:
            out.append(Violation("left unit law", (g.rng[a], a)))
        ai = g.inv[a]
        if g.inv[ai] != a:
            out.append(Violation("inverse not an involution", (a, ai)))
        if g.src[ai] != g.rng[a] or g.rng[ai] != g.src[a]:
            out.append(Violation("inverse has wrong endpoints", (a, ai)))
            continue
        if g.comp[(a, ai)] != g.rng[a]:
            out.append(Violation("a a^-1 != rng(a)", (a, ai)))
        if g.comp[(ai, a)] != g.src[a]:
            out.append(Violation("a^-1 a != src(a)", (ai, a)))

    rf = g.range_fibres
    for a in g.arrows:
        for b in rf[g.src[a]]:
            ab = g.comp[(a, b)]
            for c in rf[g.src[b]]:
                if g.comp[(ab, c)] != g.comp[(a, g.comp[(b, c)])]:
                    out.append(Violation("associativity", (a, b, c)))
    return out


@dataclass(frozen=True)
class ArrowSet:
    parent: FiniteGroupoid = field(repr=False)
    members: frozenset

    def __post_init__(self):
        object.__setattr__(self, "members", frozenset(self.members))
        stray = self.members.difference(self.parent.arrows)
        if stray:
            raise ValueError(f"not arrows of the parent groupoid: {sorted(map(str, stray))}")

    def __eq__(self, other):
        if isinstance(other, ArrowSet):
            return self.parent is other.parent and self.members == other.members
        return NotImplemented

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __iter__(self):
        return iter(self.parent.sorted_arrows(self.members))

    def __len__(self):
        return len(self.members)

    def __contains__(self, a):
        return a in self.members

    def __mul__(self, other: "ArrowSet") -> "ArrowSet":
        return set_product(self, other)

    def __or__(self, other: "ArrowSet") -> "ArrowSet":
        _same_parent(self, other)
        return ArrowSet(self.parent, self.members | other.members)

    def __and__(self, other: "ArrowSet") -> "ArrowSet":
        _same_parent(self, other)
        return ArrowSet(self.parent, self.members & other.members)

    def __le__(self, other: "ArrowSet") -> bool:
        _same_parent(self, other)
        return self.members <= other.members

    def inverse(self) -> "ArrowSet":
        return set_inverse(self)

    def range_image(self) -> "ArrowSet":
        return ArrowSet(self.parent, {self.parent.rng[a] for a in self.members})

    def source_image(self) -> "ArrowSet":
        return ArrowSet(self.parent, {self.parent.src[a] for a in self.members})

    def power(self, k: int) -> "ArrowSet":
        """``A**k`` under :func:`set_product`; ``A**0`` is ``s(A)``."""
        if k < 0:
            return self.inverse().power(-k)
        out = self.source_image()
        for _ in range(k):
            out = set_product(out, self)
        return out

    def labels(self) -> list:
        return list(self)


def _same_parent(a: ArrowSet, b: ArrowSet):
    if a.parent is not b.parent:
        raise ValueError("arrow sets belong to different groupoids")


def set_inverse(a: ArrowSet) -> ArrowSet:
    return ArrowSet(a.parent, {a.parent.inv[x] for x in a.members})


def set_product(a: ArrowSet, b: ArrowSet) -> ArrowSet:
    """All composites ``alpha beta`` with ``alpha`` in ``a`` and ``beta`` in ``b``."""
    _same_parent(a, b)
    g = a.parent
    by_range: dict = {}
    for y in b.members:
        by_range.setdefault(g.rng[y], []).append(y)
    out = set()
    for x in a.members:
        for y in by_range.get(g.src[x], ()):
            out.add(g.comp[(x, y)])
    return ArrowSet(g, out)


def is_bisection(a: ArrowSet) -> bool:
    """Range and source are both injective on ``a`` (all sets are open here)."""
    g = a.parent
    return (len({g.rng[x] for x in a.members}) == len(a.members)
            and len({g.src[x] for x in a.members}) == len(a.members))


def units(g: FiniteGroupoid) -> ArrowSet:
    return ArrowSet(g, g.units)


def isotropy(g: FiniteGroupoid) -> ArrowSet:
    return ArrowSet(g, {a for a in g.arrows if g.rng[a] == g.src[a]})


def isotropy_interior(g: FiniteGroupoid) -> ArrowSet:
    # every subset of a discrete groupoid is open
    return isotropy(g)


def is_principal(g: FiniteGroupoid) -> bool:
    return isotropy(g).members == g.units


def is_effective(g: FiniteGroupoid) -> bool:
    return isotropy_interior(g).members == g.units


def element_order(g: FiniteGroupoid, a) -> int:
    """Least ``N >= 1`` with ``a**N`` a unit."""
    if g.rng[a] != g.src[a]:
        raise NotIsotropyError(f"{a!r} is not an isotropy arrow")
    power, n = a, 1
    while power not in g.units:
        power = g.comp[(power, a)]
        n += 1
        if n > len(g.arrows):
            raise RuntimeError(f"powers of {a!r} never reach a unit")
    return n


def nice_bisection(g: FiniteGroupoid, L: ArrowSet, N: int) -> ArrowSet:
    """Shrink an isotropy bisection ``L`` to ``B = L W`` with ``W = L**N`` on units.

    Then ``B**N`` lies in the unit space and ``{B**k}`` is cyclic of order
    dividing ``N``.
    """
    if N < 1:
        raise ValueError("N must be a positive integer")
    if L.parent is not g:
        raise ValueError("L belongs to a different groupoid")
    if not L <= isotropy(g):
        raise NotIsotropyError("L is not contained in the isotropy")
    if not is_bisection(L):
        raise ValueError("L is not a bisection")
    W = L.power(N) & units(g)
    return set_product(L, W)


def cyclic_powers(B: ArrowSet) -> list[ArrowSet]:
    """The distinct sets ``B**0, B**1, ...`` until the sequence repeats."""
    seen = [B.power(0)]
    current = B
    while current not in seen:
        seen.append(current)
        current = set_product(current, B)
    return seen
