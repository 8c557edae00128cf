"""Counterexample normalisers for non-effective finite groupoids.

Given torsion isotropy ``gamma`` of order ``N`` and a prime ``p | N``, the
powers ``gamma**(c l)`` with ``c = N/p`` form a copy of Z/p.  Transporting
the Gauss normaliser of Z/p onto those arrows (extension by zero) gives a
normaliser of the unit-supported subalgebra whose support contains both
``gamma**c`` and the unit ``s(gamma)``, so it is not a bisection.

Finite groupoids have no isotropy of infinite order, so only this torsion
case arises here.  With a cocycle the point mass at ``gamma**c`` is rescaled
so that its p-th twisted power is the unit; its powers then carry a copy of
the untwisted group algebra of Z/p and the same transport applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from .algebra import AlgebraElement, Cocycle, convolve, is_normaliser, reduced_norm, support
from .cyclotomic import gauss_normaliser
from .groupoid import ArrowSet, FiniteGroupoid, element_order, is_bisection, isotropy

WITNESS_TOL = 1e-10


class InternalInconsistency(RuntimeError):
    """A property guaranteed by the construction failed to hold."""


@dataclass(frozen=True)
class Certificate:
    normaliser_residual: float
    support: ArrowSet
    bisection: bool


@dataclass(frozen=True)
class Witness:
    gamma: object
    order: int
    p: int
    cofactor: int
    subgroup: ArrowSet
    powers: tuple
    m: AlgebraElement
    certificate: Certificate
    twist: Optional[Cocycle] = None

    def norm(self) -> float:
        return reduced_norm(self.m, self.twist)


def find_torsion_isotropy(g: FiniteGroupoid) -> Optional[tuple]:
    """A non-unit isotropy arrow of largest order, or ``None`` if ``g`` is effective."""
    best = None
    for a in g.arrows:
        if a in g.units or g.rng[a] != g.src[a]:
            continue
        n = element_order(g, a)
        if best is None or n > best[1]:
            best = (a, n)
    return best


def smallest_prime_factor(n: int) -> int:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return d
        d += 1
    return n


def prime_power_step(N: int) -> tuple[int, int]:
    """``(p, c)`` with ``p`` the smallest prime factor of ``N`` and ``c = N // p``."""
    if N <= 1:
        raise ValueError("N must exceed 1")
    p = smallest_prime_factor(N)
    return p, N // p


@dataclass(frozen=True)
class CyclicSubgroup:
    members: ArrowSet
    powers: tuple


def build_subgroup(g: FiniteGroupoid, gamma, c: int, p: int) -> CyclicSubgroup:
    """``R = {gamma**(c l) : l = 0..p-1}``, checked to be a copy of Z/p."""
    v = g.power(gamma, c)
    if v in g.units:
        raise ValueError("gamma**c is a unit")
    if g.power(v, p) not in g.units:
        raise ValueError("gamma**(c p) is not a unit")
    powers = tuple(g.power(v, l) for l in range(p))
    if len(set(powers)) != p:
        raise InternalInconsistency(f"powers of {v!r} are not pairwise distinct")
    R = ArrowSet(g, powers)
    closed = all(g.comp[(a, b)] in R for a in powers for b in powers)
    closed &= all(g.inv[a] in R for a in powers)
    if not closed or len(R.members & g.units) != 1:
        raise InternalInconsistency("R is not a subgroup with a single unit")
    return CyclicSubgroup(R, powers)


def twisted_generator_powers(g: FiniteGroupoid, R: CyclicSubgroup,
                             twist: Optional[Cocycle]) -> list[AlgebraElement]:
    """``u**l`` for l = 0..p-1, where ``u`` is a multiple of the point mass at
    ``gamma**c`` scaled so that ``u**p`` is the unit point mass."""
    p, v = len(R.powers), R.powers[1]
    base = AlgebraElement.point_mass(g, v)
    power = AlgebraElement.point_mass(g, R.powers[0])
    for _ in range(p):
        power = convolve(power, base, twist)
    # power = c_p delta_unit with |c_p| = 1
    scale = complex(power[R.powers[0]]) ** (-1 / p)
    u = scale * base
    out = [AlgebraElement.point_mass(g, R.powers[0])]
    for _ in range(p - 1):
        out.append(convolve(out[-1], u, twist))
    return out


def build_witness(g: FiniteGroupoid, tol: float = WITNESS_TOL,
                  twist: Optional[Cocycle] = None) -> Optional[Witness]:
    """Certified normaliser with non-bisection support, or ``None`` if ``g`` is effective."""
    found = find_torsion_isotropy(g)
    if found is None:
        return None
    gamma, N = found
    p, c = prime_power_step(N)
    R = build_subgroup(g, gamma, c, p)
    # f = delta at s(gamma), so f (x) n is n carried along l -> gamma**(c l)
    n = gauss_normaliser(p).complex_coeffs()
    if twist is None or not twist.turns:
        m = AlgebraElement(g, {a: n[l] for l, a in enumerate(R.powers)})
    else:
        m = AlgebraElement.zero(g)
        for l, u in enumerate(twisted_generator_powers(g, R, twist)):
            m = m + n[l] * u
    check = is_normaliser(m, tol, twist)
    supp = support(m, tol)
    cert = Certificate(check.residual, supp, is_bisection(supp))
    if not check or cert.bisection:
        raise InternalInconsistency(f"witness for {gamma!r} failed its certificate")
    return Witness(gamma, N, p, c, R.members, R.powers, m, cert, twist)


def random_bisection(g: FiniteGroupoid, rng: np.random.Generator) -> ArrowSet:
    """Greedy random bisection: arrows in random order, kept when both endpoints are free."""
    used_r, used_s, out = set(), set(), []
    for i in rng.permutation(len(g.arrows)):
        a = g.arrows[i]
        if g.rng[a] not in used_r and g.src[a] not in used_s and rng.random() < 0.6:
            out.append(a)
            used_r.add(g.rng[a])
            used_s.add(g.src[a])
    return ArrowSet(g, out)


@dataclass(frozen=True)
class ProbeResult:
    candidates: int
    normalisers: int
    counterexamples: int


def probe_bisection_hypothesis(g: FiniteGroupoid, trials: int = 200, seed: int = 0,
                               tol: float = WITNESS_TOL) -> ProbeResult:
    """Sample candidates ``sum lambda_B 1_B`` over random bisections ``B``.

    Counts the candidates that are normalisers yet whose support, after
    dropping cancelled coefficients, is not a bisection.  On an effective
    groupoid that count should be zero.
    """
    rng = np.random.default_rng(seed)
    normalisers = bad = 0
    for _ in range(trials):
        k = int(rng.integers(1, 4))
        cand = AlgebraElement.zero(g)
        for _ in range(k):
            B = random_bisection(g, rng)
            lam = complex(*rng.integers(-2, 3, size=2))
            if rng.random() < 0.5:
                coeffs = {a: lam for a in B.members}
            else:
                coeffs = {a: complex(*rng.normal(size=2)) for a in B.members}
            cand = cand + AlgebraElement(g, coeffs)
        if is_normaliser(cand, tol):
            normalisers += 1
            if not is_bisection(support(cand, tol)):
                bad += 1
    return ProbeResult(trials, normalisers, bad)


def isotropy_orders(g: FiniteGroupoid) -> dict:
    return {a: element_order(g, a) for a in isotropy(g)}
