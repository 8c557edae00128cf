"""Acceptance criteria 1-9, each printing one PASS/FAIL line (run with ``-s`` to see them)."""

import itertools
import json
import math
import subprocess
import sys

import numpy as np
import pytest

from lbhkit.algebra import (AlgebraElement, build_fk_sequence, cartan_check, commutant_dimension,
                            convolve, expectation, involute, is_normaliser, random_element,
                            reduced_norm)
from lbhkit.circle import dft, is_unimodular, laurent_sweep, sample_m
from lbhkit.cyclotomic import is_prime, quadratic_permutation_check, verify_gauss_identity
from lbhkit.groupoid import is_bisection, is_effective, isotropy
from lbhkit.witness import build_witness, random_bisection

from conftest import CORPUS, FIXTURES, GOLDEN, TWISTED

PRIMES = [p for p in range(2, 32) if is_prime(p)]


def verdict(number: int, title: str, ok: bool, detail: str):
    print(f"\ncriterion {number} [{'PASS' if ok else 'FAIL'}] {title}: {detail}")
    assert ok, detail


def test_criterion_1_gauss_identity():
    failed = [p for p in PRIMES if not verify_gauss_identity(p)]
    verdict(1, "exact Gauss identity n n* = n* n = p delta_0", not failed,
            f"{len(PRIMES)} primes up to 31, failures {failed}")


def test_criterion_2_quadratic_permutation():
    cases = [(p, k) for p in PRIMES if p > 2 for k in range(1, p)]
    # independent oracle: sorted residues equal range(p)
    failed = [(p, k) for p, k in cases
              if not quadratic_permutation_check(p, k)
              or sorted(k * (2 * l - k) % p for l in range(p)) != list(range(p))]
    verdict(2, "quadratic permutation", not failed, f"{len(cases)} (p, k) pairs, failures {failed}")


def test_criterion_3_equivalence_sweep():
    members = [g for g in CORPUS]
    bad = []
    for g in members:
        eff = is_effective(g)
        masa = cartan_check(g).masa
        w = build_witness(g)
        if not eff == masa == (w is None):
            bad.append(g.name)
        elif w is not None and not (w.certificate.normaliser_residual < 1e-10
                                    and not is_bisection(w.certificate.support)):
            bad.append(g.name)
    big = max(len(g.arrows) for g in members)
    ok = len(members) >= 20 and big <= 60 and not bad
    verdict(3, "effective <=> masa <=> no witness", ok,
            f"{len(members)} groupoids (max {big} arrows), failures {bad}")


def test_criterion_4_masa_dimension_law():
    bad = [g.name for g in CORPUS if commutant_dimension(g) != len(isotropy(g))]
    verdict(4, "commutant dimension = |Iso|", not bad, f"{len(CORPUS)} groupoids, failures {bad}")


def test_criterion_5_cstar_identity():
    rng = np.random.default_rng(5)
    pool = [(g, None) for g in CORPUS if g.arrows] + TWISTED
    worst, count = 0.0, 0
    for i in range(240):
        g, twist = pool[i % len(pool)]
        f = random_element(g, rng)
        lhs = reduced_norm(convolve(involute(f, twist), f, twist), twist)
        worst = max(worst, abs(lhs - reduced_norm(f, twist) ** 2))
        count += 1
    twisted = sum(1 for i in range(240) if pool[i % len(pool)][1] is not None)
    verdict(5, "C*-identity", count >= 200 and worst < 1e-8,
            f"{count} elements ({twisted} twisted), worst error {worst:.2e}")


def _predicted_index(e: AlgebraElement) -> int:
    smallest = min((abs(v) for v in e.coeffs.values()), default=None)
    if smallest is None:
        return 1
    return next(k for k in itertools.count(1) if 1 / k < smallest)


def test_criterion_6_fk_sequence():
    rng = np.random.default_rng(6)
    pool = [(g, None) for g in CORPUS if g.arrows] + TWISTED
    bad, count, twisted, max_k = [], 0, 0, 0
    for i in range(120):
        g, twist = pool[i % len(pool)]
        B = random_bisection(g, rng)
        # magnitudes in (0.05, 2] so that K varies
        coeffs = {a: rng.uniform(0.05, 2) * np.exp(2j * np.pi * rng.random()) for a in B.members}
        n = AlgebraElement(g, coeffs)
        if not is_normaliser(n, 1e-10, twist):
            bad.append((g.name, "not a normaliser"))
            continue
        seq = build_fk_sequence(n, twist=twist)
        e = expectation(n)
        K = _predicted_index(e)
        count += 1
        twisted += twist is not None
        max_k = max(max_k, K)
        if not seq.verified or seq.stable_index != K:
            bad.append((g.name, "sequence"))
            continue
        # independent recheck of the equalities and projections
        for k in range(1, K + 1):
            fk = seq[k]
            w = {x for x, v in e.coeffs.items() if abs(v) > 1 / k}
            products = [convolve(fk, n, twist), convolve(fk, e, twist),
                        convolve(e, fk, twist), convolve(n, fk, twist)]
            if (set(fk.coeffs) != w or any(p != products[0] for p in products)
                    or convolve(fk, fk, twist) != fk or involute(fk, twist) != fk):
                bad.append((g.name, k))
        if convolve(seq[K], e, twist) != e:
            bad.append((g.name, "limit"))
    verdict(6, "f_k projections and equalities", count >= 50 and twisted > 0 and not bad,
            f"{count} normalisers ({twisted} twisted, K up to {max_k}), failures {bad[:5]}")


def test_criterion_7_integers_example():
    s = sample_m(2 ** 14)
    series, fine = dft(s), dft(sample_m(2 ** 16))
    c1, c2 = series[1], series[2]
    stable = max(abs(c1 - fine[1]), abs(c2 - fine[2]))
    sweep = laurent_sweep(radius=3, bound=2)
    ok = (is_unimodular(s, 1e-12) and abs(c1) > 0.1 and abs(c2) > 0.1 and stable < 1e-6
          and sweep.total == 5 ** 7 and sweep.exceptions == 0)
    verdict(7, "integer group example", ok,
            f"|c1| = {abs(c1):.6f}, |c2| = {abs(c2):.6f}, drift {stable:.1e}, "
            f"sweep {sweep.total} elements with {sweep.exceptions} exceptions")


def test_criterion_8_witness_norm():
    rows = []
    for g in CORPUS:
        w = build_witness(g)
        if w is not None:
            rows.append((g.name, abs(w.norm() - math.sqrt(w.p))))
    worst = max(err for _, err in rows)
    verdict(8, "witness norm = sqrt(p)", worst < 1e-8 and len(rows) > 0,
            f"{len(rows)} non-effective groupoids, worst error {worst:.1e}")


def _cli(*args):
    proc = subprocess.run([sys.executable, "-m", "lbhkit.cli", *map(str, args)],
                          capture_output=True, text=True, encoding="utf-8")
    return proc.returncode, proc.stdout


def test_criterion_9_cli_round_trip(tmp_path):
    problems = []
    for name in ("z2", "r2", "z6_bundle", "klein_twisted"):
        first = _cli("analyze", FIXTURES / f"{name}.json", "--json")
        second = _cli("analyze", FIXTURES / f"{name}.json", "--json")
        if first != second or first[0] != 0:
            problems.append(f"{name} not byte-identical")
    golden = json.loads((GOLDEN / "analyze_z2.json").read_text(encoding="utf-8"))
    current = json.loads(_cli("analyze", FIXTURES / "z2.json", "--json")[1])
    if current.keys() != golden.keys() or current["witness"]["gamma"] != golden["witness"]["gamma"]:
        problems.append("analyze_z2 golden mismatch")
    for name in ("z2", "klein_twisted"):
        out = tmp_path / f"{name}_m.json"
        _cli("analyze", FIXTURES / f"{name}.json", "--witness-out", out)
        runs = [_cli("check-normaliser", FIXTURES / f"{name}.json", out, "--json") for _ in range(2)]
        v = json.loads(runs[0][1])
        if runs[0] != runs[1] or not v["is_normaliser"] or v["is_bisection"]:
            problems.append(f"{name} witness round trip")
    verdict(9, "CLI stability and witness round trip", not problems, f"problems {problems}")
