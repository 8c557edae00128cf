from fractions import Fraction

import numpy as np
import pytest

from lbhkit.algebra import AlgebraElement, Cocycle, is_normaliser
from lbhkit.constructions import abelian_group, cyclic_group, group_bundle, pair_groupoid
from lbhkit.groupoid import is_bisection, is_effective
from lbhkit.witness import (build_subgroup, build_witness, find_torsion_isotropy,
                            isotropy_orders, prime_power_step, probe_bisection_hypothesis,
                            smallest_prime_factor)

from conftest import CORPUS, TWISTED, corpus_id


def test_find_torsion_examples():
    assert find_torsion_isotropy(pair_groupoid(3)) is None
    assert find_torsion_isotropy(cyclic_group(2)) == ("g", 2)
    assert find_torsion_isotropy(cyclic_group(6)) == ("g", 6)
    # Z/2 x Z/2: every non-unit has order 2, first in arrow order wins
    assert find_torsion_isotropy(abelian_group([2, 2])) == ("(0,1)", 2)


def test_prime_power_step():
    assert prime_power_step(6) == (2, 3)
    assert prime_power_step(2) == (2, 1)
    assert prime_power_step(9) == (3, 3)
    assert prime_power_step(35) == (5, 7)
    for bad in (1, 0, -4):
        with pytest.raises(ValueError):
            prime_power_step(bad)


def test_smallest_prime_factor_oracle():
    for n in range(2, 200):
        oracle = next(d for d in range(2, n + 1) if n % d == 0)
        assert smallest_prime_factor(n) == oracle


def test_build_subgroup_examples():
    assert build_subgroup(cyclic_group(2), "g", 1, 2).powers == ("e", "g")
    assert build_subgroup(cyclic_group(6), "g", 3, 2).powers == ("e", "g3")
    assert build_subgroup(cyclic_group(9), "g", 3, 3).powers == ("e", "g3", "g6")
    with pytest.raises(ValueError):
        build_subgroup(cyclic_group(6), "g", 6, 2)
    with pytest.raises(ValueError):
        build_subgroup(cyclic_group(6), "g", 1, 2)


def test_witness_z2():
    z2 = cyclic_group(2)
    w = build_witness(z2)
    assert (w.gamma, w.order, w.p, w.cofactor) == ("g", 2, 2, 1)
    assert w.m == AlgebraElement(z2, {"e": 1, "g": -1j})
    assert w.certificate.normaliser_residual == 0
    assert not w.certificate.bisection
    assert w.norm() == pytest.approx(np.sqrt(2), abs=1e-12)


def test_witness_bundle():
    g = group_bundle(cyclic_group(3), 2)
    w = build_witness(g)
    assert w.gamma == "0:g" and w.p == 3
    assert w.certificate.support.members == {"0:e", "0:g", "0:g2"}
    assert w.norm() == pytest.approx(np.sqrt(3), rel=1e-12)


def test_no_witness_when_effective():
    assert build_witness(pair_groupoid(2)) is None


@pytest.mark.parametrize("g", CORPUS, ids=corpus_id)
def test_witness_invariants(g):
    w = build_witness(g)
    assert (w is None) == is_effective(g)
    if w is None:
        return
    supp = w.certificate.support
    assert len(supp) == w.p
    assert len(supp.range_image()) == len(supp.source_image()) == 1
    assert supp.range_image().members == supp.source_image().members == {g.src[w.gamma]}
    assert not is_bisection(supp)
    # independent recheck with a looser tolerance
    assert is_normaliser(w.m, 1e-8)
    assert w.norm() == pytest.approx(np.sqrt(w.p), rel=1e-9)
    assert w.order == max(isotropy_orders(g).values())


@pytest.mark.parametrize("g", [g for g in CORPUS if is_effective(g) and g.arrows], ids=corpus_id)
def test_probe_effective_has_no_counterexample(g):
    result = probe_bisection_hypothesis(g, trials=150, seed=3)
    assert result.counterexamples == 0
    assert result.normalisers > 0


def test_probe_finds_counterexamples_somewhere():
    # the probe is not designed to find witnesses, but on Z/2 random
    # combinations of the two bisections {e} and {g} often normalise anyway
    result = probe_bisection_hypothesis(cyclic_group(2), trials=200, seed=1)
    assert result.normalisers > 0


@pytest.mark.parametrize("g,twist", TWISTED, ids=lambda x: getattr(x, "name", ""))
def test_twisted_witness_certified_against_cocycle(g, twist):
    w = build_witness(g, twist=twist)
    assert (w is None) == is_effective(g)
    if w is None:
        return
    assert is_normaliser(w.m, 1e-10, twist)
    assert len(w.certificate.support) == w.p and not w.certificate.bisection
    # unit-modulus coefficients, and the norm matches the untwisted value
    assert all(abs(abs(v) - 1) < 1e-12 for _, v in w.m.items())
    assert w.norm() == pytest.approx(np.sqrt(w.p), rel=1e-9)


def test_coboundary_twist_needs_correction():
    # negative control: the untwisted element is not a normaliser once twisted
    g = cyclic_group(3)
    twist = Cocycle.coboundary(g, {"e": 0, "g": Fraction(1, 12), "g2": Fraction(5, 12)})
    assert not is_normaliser(build_witness(g).m, 1e-10, twist)
    assert is_normaliser(build_witness(g, twist=twist).m, 1e-10, twist)
