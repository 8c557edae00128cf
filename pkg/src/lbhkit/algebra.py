"""Convolution *-algebra of a finite groupoid, optionally twisted by a 2-cocycle.

Elements are finitely supported complex functions on arrows.  ``C_0`` of the
unit space is identified with the unit-supported elements, so the inclusion
of it and the map taking an element to its function on arrows are both the
identity on coefficients.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from typing import Mapping, Optional

import numpy as np

from .groupoid import ArrowSet, FiniteGroupoid, is_bisection

DEFAULT_TOL = 1e-10


class ParentMismatchError(ValueError):
    pass


class NotABisectionError(ValueError):
    pass


def turn_to_complex(t: Fraction) -> complex:
    """``exp(2 pi i t)``, exact on quarter turns."""
    t = Fraction(t) % 1
    exact = {Fraction(0): 1 + 0j, Fraction(1, 4): 1j, Fraction(1, 2): -1 + 0j,
             Fraction(3, 4): -1j}
    if t in exact:
        return exact[t]
    theta = 2 * math.pi * float(t)
    return complex(math.cos(theta), math.sin(theta))


@dataclass(frozen=True, eq=False)
class Cocycle:
    """Normalised circle-valued 2-cocycle, stored as rational turns.

    Missing composable pairs carry phase 0.
    """
    parent: FiniteGroupoid = field(repr=False)
    turns: Mapping[tuple, Fraction]

    def __post_init__(self):
        object.__setattr__(self, "turns",
                           {k: Fraction(v) % 1 for k, v in self.turns.items() if Fraction(v) % 1})

    @classmethod
    def trivial(cls, g: FiniteGroupoid) -> "Cocycle":
        return cls(g, {})

    @classmethod
    def coboundary(cls, g: FiniteGroupoid, phase: Mapping) -> "Cocycle":
        """``sigma(a, b) = b(a) + b(b) - b(ab)`` in turns; units get phase 0."""
        b = lambda a: Fraction(0) if a in g.units else Fraction(phase.get(a, 0))
        return cls(g, {(x, y): b(x) + b(y) - b(z) for (x, y), z in g.comp.items()})

    def phase(self, a, b) -> Fraction:
        return self.turns.get((a, b), Fraction(0))

    @cached_property
    def _values(self) -> dict:
        return {k: turn_to_complex(t) for k, t in self.turns.items()}

    def __call__(self, a, b) -> complex:
        return self._values.get((a, b), 1 + 0j)

    def violations(self) -> list[str]:
        """Exact check of normalisation and the cocycle identity."""
        g = self.parent
        out = []
        for (a, b) in self.turns:
            if (a, b) not in g.comp:
                out.append(f"phase on non-composable pair ({a}, {b})")
        for a in g.arrows:
            if self.phase(g.rng[a], a) or self.phase(a, g.src[a]):
                out.append(f"not normalised at {a}")
        rf = g.range_fibres
        for a in g.arrows:
            for b in rf[g.src[a]]:
                ab = g.comp[(a, b)]
                for c in rf[g.src[b]]:
                    lhs = self.phase(a, b) + self.phase(ab, c)
                    rhs = self.phase(b, c) + self.phase(a, g.comp[(b, c)])
                    if (lhs - rhs) % 1:
                        out.append(f"cocycle identity fails at ({a}, {b}, {c})")
        return out


def _sigma(twist: Optional[Cocycle]):
    return twist if twist is not None else (lambda a, b: 1 + 0j)


@dataclass(frozen=True, eq=False)
class AlgebraElement:
    parent: FiniteGroupoid = field(repr=False)
    coeffs: Mapping

    def __post_init__(self):
        clean = {a: complex(v) for a, v in self.coeffs.items() if v != 0}
        stray = set(clean).difference(self.parent.arrows)
        if stray:
            raise ValueError(f"coefficients on unknown arrows: {sorted(map(str, stray))}")
        object.__setattr__(self, "coeffs", clean)

    @classmethod
    def zero(cls, g: FiniteGroupoid) -> "AlgebraElement":
        return cls(g, {})

    @classmethod
    def point_mass(cls, g: FiniteGroupoid, a, value: complex = 1) -> "AlgebraElement":
        return cls(g, {a: value})

    @classmethod
    def indicator(cls, s: ArrowSet) -> "AlgebraElement":
        return cls(s.parent, {a: 1 for a in s.members})

    @classmethod
    def from_vector(cls, g: FiniteGroupoid, vec) -> "AlgebraElement":
        return cls(g, dict(zip(g.arrows, vec)))

    def __getitem__(self, a) -> complex:
        return self.coeffs.get(a, 0j)

    def __eq__(self, other):
        if isinstance(other, AlgebraElement):
            return self.parent is other.parent and self.coeffs == other.coeffs
        return NotImplemented

    __hash__ = None

    def __repr__(self):
        terms = ", ".join(f"{a}: {v:.6g}" for a, v in self.items())
        return f"AlgebraElement({{{terms}}})"

    def items(self):
        pos = self.parent.position
        return sorted(self.coeffs.items(), key=lambda kv: pos[kv[0]])

    def vector(self) -> np.ndarray:
        return np.array([self[a] for a in self.parent.arrows], dtype=complex)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        _check_parent(self, other)
        out = dict(self.coeffs)
        for a, v in other.coeffs.items():
            out[a] = out.get(a, 0) + v
        return AlgebraElement(self.parent, out)

    def __neg__(self) -> "AlgebraElement":
        return AlgebraElement(self.parent, {a: -v for a, v in self.coeffs.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + (-other)

    def __mul__(self, c: complex) -> "AlgebraElement":
        return AlgebraElement(self.parent, {a: c * v for a, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __matmul__(self, other: "AlgebraElement") -> "AlgebraElement":
        return convolve(self, other)

    def max_abs(self) -> float:
        return max((abs(v) for v in self.coeffs.values()), default=0.0)

    def allclose(self, other: "AlgebraElement", atol: float = 1e-12) -> bool:
        return (self - other).max_abs() <= atol

    def truncate(self, tol: float) -> "AlgebraElement":
        return AlgebraElement(self.parent, {a: v for a, v in self.coeffs.items() if abs(v) > tol})


def _check_parent(f: AlgebraElement, g: AlgebraElement):
    if f.parent is not g.parent:
        raise ParentMismatchError("elements live over different groupoids")


def convolve(f: AlgebraElement, g: AlgebraElement,
             twist: Optional[Cocycle] = None) -> AlgebraElement:
    """``(f*g)(c) = sum over ab = c of f(a) g(b) sigma(a, b)``."""
    _check_parent(f, g)
    G = f.parent
    sigma = _sigma(twist)
    by_range: dict = {}
    for b, v in g.coeffs.items():
        by_range.setdefault(G.rng[b], []).append((b, v))
    out: dict = {}
    for a, u in f.coeffs.items():
        for b, v in by_range.get(G.src[a], ()):
            c = G.comp[(a, b)]
            out[c] = out.get(c, 0j) + u * v * sigma(a, b)
    return AlgebraElement(G, out)


def involute(f: AlgebraElement, twist: Optional[Cocycle] = None) -> AlgebraElement:
    """``f*(c) = conj(sigma(c, c^-1)) conj(f(c^-1))``."""
    G = f.parent
    sigma = _sigma(twist)
    out = {}
    for a, v in f.coeffs.items():
        c = G.inv[a]
        out[c] = (sigma(c, a) * v).conjugate()
    return AlgebraElement(G, out)


@dataclass(frozen=True)
class RepMatrix:
    unit: object
    basis: tuple
    entries: np.ndarray = field(repr=False)

    def norm(self) -> float:
        if self.entries.size == 0:
            return 0.0
        return float(np.linalg.norm(self.entries, 2))


def regular_rep(f: AlgebraElement, x, twist: Optional[Cocycle] = None) -> RepMatrix:
    """Matrix of left convolution by ``f`` on ``l2(G_x)``.

    ``entries[i, j]`` is the coefficient of ``basis[i]`` in ``f * delta_{basis[j]}``.
    """
    G = f.parent
    if x not in G.units:
        raise ValueError(f"{x!r} is not a unit")
    sigma = _sigma(twist)
    basis = G.source_fibres[x]
    index = {a: i for i, a in enumerate(basis)}
    m = np.zeros((len(basis), len(basis)), dtype=complex)
    for j, b in enumerate(basis):
        for a, u in f.coeffs.items():
            if G.src[a] == G.rng[b]:
                m[index[G.comp[(a, b)]], j] += u * sigma(a, b)
    return RepMatrix(x, basis, m)


def reduced_norm(f: AlgebraElement, twist: Optional[Cocycle] = None) -> float:
    """Supremum over units of the operator norm of the regular representation."""
    return max((regular_rep(f, x, twist).norm() for x in f.parent.unit_list), default=0.0)


def expectation(f: AlgebraElement) -> AlgebraElement:
    G = f.parent
    return AlgebraElement(G, {a: v for a, v in f.coeffs.items() if a in G.units})


def support(f: AlgebraElement, tol: float = DEFAULT_TOL) -> ArrowSet:
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return ArrowSet(f.parent, {a for a, v in f.coeffs.items() if abs(v) > tol})


@dataclass(frozen=True)
class NormaliserCheck:
    is_normaliser: bool
    residual: float

    def __bool__(self):
        return self.is_normaliser


def is_normaliser(n: AlgebraElement, tol: float = DEFAULT_TOL,
                  twist: Optional[Cocycle] = None) -> NormaliserCheck:
    """Test ``n B n* + n* B n`` against the unit-supported subalgebra ``B``.

    ``B`` is spanned by the unit point masses, so it suffices to conjugate
    each of them; the residual is the largest off-unit coefficient seen.
    """
    G = n.parent
    ns = involute(n, twist)
    residual = 0.0
    for x in G.unit_list:
        dx = AlgebraElement.point_mass(G, x)
        for left, right in ((n, ns), (ns, n)):
            h = convolve(convolve(left, dx, twist), right, twist)
            off = [abs(v) for a, v in h.coeffs.items() if a not in G.units]
            residual = max([residual, *off])
    return NormaliserCheck(residual <= tol, residual)


def commutant_dimension(g: FiniteGroupoid, twist: Optional[Cocycle] = None) -> int:
    """Dimension of the relative commutant of the unit-supported subalgebra.

    Solves ``f * delta_x = delta_x * f`` for every unit ``x`` as one linear
    system in the coefficients of ``f``.
    """
    n = len(g.arrows)
    if n == 0:
        return 0
    blocks = []
    for x in g.unit_list:
        dx = AlgebraElement.point_mass(g, x)
        cols = []
        for a in g.arrows:
            da = AlgebraElement.point_mass(g, a)
            cols.append((convolve(da, dx, twist) - convolve(dx, da, twist)).vector())
        blocks.append(np.column_stack(cols))
    system = np.vstack(blocks)
    return n - int(np.linalg.matrix_rank(system))


@dataclass(frozen=True)
class CartanReport:
    masa: bool
    normaliser_span_full: bool
    expectation_faithful: bool

    def as_dict(self) -> dict:
        return {"masa": self.masa, "span": self.normaliser_span_full,
                "faithful": self.expectation_faithful}


def random_element(g: FiniteGroupoid, rng: np.random.Generator,
                   support_set=None) -> AlgebraElement:
    arrows = g.arrows if support_set is None else list(support_set)
    vals = rng.normal(size=len(arrows)) + 1j * rng.normal(size=len(arrows))
    return AlgebraElement(g, dict(zip(arrows, vals)))


def cartan_check(g: FiniteGroupoid, twist: Optional[Cocycle] = None,
                 trials: int = 8, seed: int = 0) -> CartanReport:
    masa = commutant_dimension(g, twist) == len(g.units)
    span = all(is_normaliser(AlgebraElement.point_mass(g, a), twist=twist)
               for a in g.arrows)
    rng = np.random.default_rng(seed)
    faithful = True
    for _ in range(trials):
        f = random_element(g, rng)
        ef = expectation(convolve(involute(f, twist), f, twist))
        for x in g.unit_list:
            expected = sum(abs(f[a]) ** 2 for a in g.source_fibres[x])
            if abs(ef[x] - expected) > 1e-9 * max(1.0, expected):
                faithful = False
        if f.coeffs and max((ef[x].real for x in g.unit_list), default=0.0) <= 0:
            faithful = False
    return CartanReport(masa, span, faithful)


@dataclass
class FkSequence:
    """Projections ``f_k = 1_{W_k}`` with ``W_k = {x : |E(n)(x)| > 1/k}``.

    ``terms[k-1]`` is ``f_k`` for ``k = 1 .. stable_index``; from
    ``stable_index`` on, ``f_k E(n) = E(n)`` and the sequence is constant.
    """
    normaliser: AlgebraElement
    terms: list
    stable_index: int
    equalities_hold: bool
    projections_hold: bool
    limit_reached: bool

    def __getitem__(self, k: int) -> AlgebraElement:
        """``f_k`` for any ``k >= 1``."""
        if k < 1:
            raise IndexError("the sequence starts at k = 1")
        return self.terms[min(k, self.stable_index) - 1]

    def __len__(self):
        return len(self.terms)

    @property
    def verified(self) -> bool:
        return self.equalities_hold and self.projections_hold and self.limit_reached


def level_set(e: AlgebraElement, k: int) -> ArrowSet:
    return ArrowSet(e.parent, {x for x, v in e.coeffs.items() if abs(v) > 1 / k})


def stabilising_index(e: AlgebraElement) -> int:
    """Least ``K >= 1`` with ``1/K`` below every nonzero ``|e(x)|``."""
    if not e.coeffs:
        return 1
    smallest = min(abs(v) for v in e.coeffs.values())
    k = max(1, math.floor(1 / smallest))
    while not 1 / k < smallest:
        k += 1
    return k


def build_fk_sequence(n: AlgebraElement, tol: float = DEFAULT_TOL,
                      twist: Optional[Cocycle] = None) -> FkSequence:
    """Projections in ``C(G0)`` implementing the conditional expectation on ``n``.

    ``n`` is first cut down to its support at ``tol``; that support must be
    a bisection.
    """
    n = n.truncate(tol)
    if not is_bisection(support(n, 0.0)):
        raise NotABisectionError("support not a bisection")
    e = expectation(n)
    K = stabilising_index(e)
    terms = [AlgebraElement.indicator(level_set(e, k)) for k in range(1, K + 1)]
    equal = proj = True
    for fk in terms:
        a = convolve(fk, n, twist)
        b = convolve(fk, e, twist)
        c = convolve(e, fk, twist)
        d = convolve(n, fk, twist)
        equal &= a == b == c == d
        proj &= convolve(fk, fk, twist) == fk == involute(fk, twist)
    limit = convolve(terms[-1], e, twist) == e
    return FkSequence(n, terms, K, equal, proj, limit)

