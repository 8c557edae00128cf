"""Exact Gauss-sum normalisers in prime cyclic group algebras.

Scalars live in Z[zeta_m] as integer vectors over the exponents ``0..m-1``.
For prime ``m`` the only relation used is that the ``m``-th roots of unity
sum to zero; for ``m = 4`` (the Gaussian integers, needed when ``p = 2``) it
is ``zeta**2 = -1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import AlgebraElement, turn_to_complex
from .groupoid import FiniteGroupoid, element_order


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


@dataclass(frozen=True)
class RootOfUnity:
    order: int
    exponent: int

    def __post_init__(self):
        object.__setattr__(self, "exponent", self.exponent % self.order)

    def __mul__(self, other: "RootOfUnity") -> "RootOfUnity":
        if other.order != self.order:
            raise ValueError("roots of unity of different orders")
        return RootOfUnity(self.order, self.exponent + other.exponent)

    def conjugate(self) -> "RootOfUnity":
        return RootOfUnity(self.order, -self.exponent)

    def __complex__(self):
        return turn_to_complex(Fraction(self.exponent, self.order))


@dataclass(frozen=True)
class Cyclotomic:
    """Integer combination ``sum v[j] zeta_m**j``."""
    order: int
    vec: tuple

    @classmethod
    def scalar(cls, m: int, c: int) -> "Cyclotomic":
        return cls(m, (c,) + (0,) * (m - 1))

    @classmethod
    def root(cls, r: RootOfUnity, c: int = 1) -> "Cyclotomic":
        v = [0] * r.order
        v[r.exponent] = c
        return cls(r.order, tuple(v))

    def __add__(self, other: "Cyclotomic") -> "Cyclotomic":
        return Cyclotomic(self.order, tuple(a + b for a, b in zip(self.vec, other.vec)))

    def __neg__(self) -> "Cyclotomic":
        return Cyclotomic(self.order, tuple(-a for a in self.vec))

    def __mul__(self, other: "Cyclotomic") -> "Cyclotomic":
        m = self.order
        out = [0] * m
        for i, a in enumerate(self.vec):
            if a:
                for j, b in enumerate(other.vec):
                    out[(i + j) % m] += a * b
        return Cyclotomic(m, tuple(out))

    def conjugate(self) -> "Cyclotomic":
        m = self.order
        out = [0] * m
        for j, a in enumerate(self.vec):
            out[-j % m] += a
        return Cyclotomic(m, tuple(out))

    def reduced(self) -> tuple:
        """Canonical integer coordinates modulo the ring relation."""
        m, v = self.order, list(self.vec)
        if m == 4:
            return (v[0] - v[2], v[1] - v[3])
        if not is_prime(m):
            raise NotImplementedError("only prime orders and m = 4 are supported")
        top = v[-1]
        return tuple(a - top for a in v[:-1])

    def equals_int(self, c: int) -> bool:
        return self.reduced() == Cyclotomic.scalar(self.order, c).reduced()

    def is_zero(self) -> bool:
        return self.equals_int(0)

    def __complex__(self):
        m = self.order
        return complex(sum(a * turn_to_complex(Fraction(j, m)) for j, a in enumerate(self.vec)))


@dataclass(frozen=True)
class CyclotomicElement:
    """Element of the group algebra of Z/p with exact Z[zeta_m] coefficients.

    ``coeffs[k]`` is the coefficient of the point mass at ``k``.
    """
    p: int
    ring_order: int
    coeffs: tuple

    @classmethod
    def zero(cls, p: int, ring_order: int) -> "CyclotomicElement":
        return cls(p, ring_order, tuple(Cyclotomic.scalar(ring_order, 0) for _ in range(p)))

    @classmethod
    def delta(cls, p: int, ring_order: int, k: int, c: int = 1) -> "CyclotomicElement":
        z = cls.zero(p, ring_order).coeffs
        return cls(p, ring_order, tuple(Cyclotomic.scalar(ring_order, c) if i == k % p else z[i]
                                        for i in range(p)))

    def __mul__(self, other: "CyclotomicElement") -> "CyclotomicElement":
        """Convolution over Z/p."""
        p = self.p
        out = list(CyclotomicElement.zero(p, self.ring_order).coeffs)
        for k, a in enumerate(self.coeffs):
            for l, b in enumerate(other.coeffs):
                out[(k + l) % p] = out[(k + l) % p] + a * b
        return CyclotomicElement(p, self.ring_order, tuple(out))

    def star(self) -> "CyclotomicElement":
        """``n*(k) = conj(n(-k))``."""
        p = self.p
        return CyclotomicElement(p, self.ring_order,
                                 tuple(self.coeffs[-k % p].conjugate() for k in range(p)))

    def equals(self, other: "CyclotomicElement") -> bool:
        return all(a.reduced() == b.reduced() for a, b in zip(self.coeffs, other.coeffs))

    def complex_coeffs(self) -> list[complex]:
        return [complex(c) for c in self.coeffs]

    def __str__(self):
        terms = []
        for k, c in enumerate(self.coeffs):
            scal = _scalar_str(c)
            if scal == "0":
                continue
            terms.append(f"δ{k}" if scal == "1" else f"{scal}·δ{k}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


def _scalar_str(c: Cyclotomic) -> str:
    if c.order == 4:
        re, im = c.reduced()
        parts = [str(re)] if re else []
        if im:
            parts.append({1: "i", -1: "-i"}.get(im, f"{im}i"))
        s = " + ".join(parts).replace("+ -", "- ") or "0"
        return f"({s})" if len(parts) > 1 else s
    parts = []
    for j, a in enumerate(c.vec):
        if not a:
            continue
        root = "ζ" if j == 1 else f"ζ^{j}"
        if j == 0:
            parts.append(str(a))
        elif a in (1, -1):
            parts.append(root if a == 1 else "-" + root)
        else:
            parts.append(f"{a}·{root}")
    s = " + ".join(parts).replace("+ -", "- ") or "0"
    return f"({s})" if len(parts) > 1 else s


def gauss_normaliser(p: int) -> CyclotomicElement:
    """``delta_0 - i delta_1`` for p = 2, otherwise ``sum_k zeta**(k*k) delta_k``."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p == 2:
        one = Cyclotomic.scalar(4, 1)
        minus_i = Cyclotomic.root(RootOfUnity(4, 1), -1)
        return CyclotomicElement(2, 4, (one, minus_i))
    return CyclotomicElement(p, p, tuple(Cyclotomic.root(RootOfUnity(p, k * k))
                                         for k in range(p)))


def gauss_products(p: int) -> tuple[CyclotomicElement, CyclotomicElement]:
    n = gauss_normaliser(p)
    return n * n.star(), n.star() * n


def verify_gauss_identity(p: int) -> bool:
    """Exact check that ``n n* = n* n = p delta_0``."""
    n = gauss_normaliser(p)
    target = CyclotomicElement.delta(p, n.ring_order, 0, p)
    left, right = gauss_products(p)
    return left.equals(target) and right.equals(target)


def quadratic_permutation_check(p: int, k: int) -> bool:
    """Whether ``l -> k(2l - k) mod p`` takes ``p`` distinct values."""
    return len({k * (2 * l - k) % p for l in range(p)}) == p


def roots_sum_vanishes(p: int) -> bool:
    return Cyclotomic(p, (1,) * p).is_zero()


def to_algebra_element(c: CyclotomicElement, g: FiniteGroupoid,
                       generator=None) -> AlgebraElement:
    """Transfer onto a one-unit groupoid isomorphic to Z/p.

    The group element ``k`` goes to ``generator**k``; by default the generator
    is the first non-unit arrow.
    """
    if len(g.units) != 1 or len(g.arrows) != c.p:
        raise ValueError(f"expected a one-unit groupoid with {c.p} arrows")
    if generator is None:
        generator = next((a for a in g.arrows if a not in g.units), g.unit_list[0])
    if element_order(g, generator) != c.p:
        raise ValueError(f"{generator!r} does not generate a cyclic group of order {c.p}")
    values = c.complex_coeffs()
    return AlgebraElement(g, {g.power(generator, k): values[k] for k in range(c.p)})
