import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from lbhkit.circle import (CircleSample, LaurentElement, cstar_lbh_violation, dft,
                           is_unimodular, laurent_normaliser_check, laurent_sweep, m_function,
                           sample, sample_m)


def direct_dft(values):
    """O(K^2) oracle straight from the definition."""
    K = len(values)
    j = np.arange(K)
    return {k: complex(np.sum(values * np.exp(-2j * np.pi * j * k / K)) / K)
            for k in range(-K // 2, K // 2)}


def test_m_examples():
    assert sample_m(8).values[0] == pytest.approx(-1)
    assert m_function(np.array([-1 + 0j]))[0] == pytest.approx(-1)
    assert is_unimodular(sample_m(2 ** 12))


def test_invalid_sample_counts():
    for K in (0, 4, 12, 100):
        with pytest.raises(ValueError):
            sample_m(K)
    with pytest.raises(ValueError):
        CircleSample(np.ones(6))


def test_dft_constant_and_tone():
    s = sample(lambda z: 3 * np.ones_like(z), 16)
    assert dft(s).as_dict(1e-12) == {0: pytest.approx(3)}
    t = dft(sample(lambda z: z ** -2, 16))
    assert set(t.as_dict(1e-12)) == {-2}
    assert t[-2] == pytest.approx(1)
    assert t[100] == 0


def test_dft_matches_direct_oracle():
    s = sample_m(64)
    ours, oracle = dft(s), direct_dft(s.values)
    assert all(abs(ours[k] - oracle[k]) < 1e-12 for k in oracle)


def test_m_has_two_large_coefficients():
    series = dft(sample_m(2 ** 14))
    fine = dft(sample_m(2 ** 16))
    assert abs(series[1]) > 0.1 and abs(series[2]) > 0.1
    assert abs(series[1] - fine[1]) < 1e-6
    assert abs(series[2] - fine[2]) < 1e-6
    assert cstar_lbh_violation(series)


def test_parseval():
    s = sample_m(2 ** 10)
    assert dft(s).energy() == pytest.approx(np.mean(np.abs(s.values) ** 2), rel=1e-12)


@settings(max_examples=40)
@given(st.dictionaries(st.integers(-5, 5),
                       st.complex_numbers(max_magnitude=5, allow_nan=False, allow_infinity=False),
                       max_size=5))
def test_trig_polynomial_recovery(coeffs):
    K = 16  # K > 2 * degree
    s = sample(lambda z: sum((c * z ** k for k, c in coeffs.items()), np.zeros_like(z)), K)
    series = dft(s)
    for k in range(-K // 2, K // 2):
        assert abs(series[k] - coeffs.get(k, 0)) < 1e-9


def test_violation_examples():
    assert not cstar_lbh_violation(dft(sample(lambda z: z ** 3, 32)))
    assert cstar_lbh_violation(dft(sample(lambda z: (1 + z) / 2, 32)))
    assert not cstar_lbh_violation(dft(sample(lambda z: 0.01 * (1 + z), 32)))


def test_laurent_examples():
    mono = laurent_normaliser_check(LaurentElement({5: 3}))
    assert mono.is_normaliser and mono.is_monomial
    f = LaurentElement({1: 1, 2: -2})
    assert (f * f.star()).coeffs == {-1: -2, 0: 5, 1: -2}
    assert not laurent_normaliser_check(f).is_normaliser
    zero = laurent_normaliser_check(LaurentElement({}))
    assert zero.is_normaliser and not zero.is_monomial


def test_laurent_star_conjugates():
    f = LaurentElement({1: 1j, -2: 2})
    assert f.star().coeffs == {-1: -1j, 2: 2}


def _per_element_sweep(radius, bound, stride=1):
    import itertools
    exceptions = total = 0
    for i, coeffs in enumerate(itertools.product(range(-bound, bound + 1), repeat=2 * radius + 1)):
        if i % stride:
            continue
        total += 1
        f = LaurentElement({k - radius: c for k, c in enumerate(coeffs)})
        check = laurent_normaliser_check(f)
        exceptions += check.is_normaliser != (len(f.coeffs) <= 1)
    return total, exceptions


def test_sweep_small_exhaustive_cross_check():
    result = laurent_sweep(radius=1, bound=2)
    total, exceptions = _per_element_sweep(1, 2)
    assert result.total == total == 125
    assert result.exceptions == exceptions == 0
    # monomials and zero: 1 + 3 positions * 4 nonzero values
    assert result.normalisers == 13


def test_sweep_default():
    result = laurent_sweep()
    assert result.total == 5 ** 7
    assert result.exceptions == 0
    assert result.normalisers == 1 + 7 * 4
    _, sampled_exceptions = _per_element_sweep(3, 2, stride=37)
    assert sampled_exceptions == 0
