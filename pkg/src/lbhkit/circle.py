"""The integer group seen through the circle.

``C*(Z)`` is identified with ``C(T)`` by the Fourier transform.  A sampled
unimodular function is a normaliser of the scalars; its Fourier coefficients
give the corresponding function on ``Z``, whose support is a bisection only
when it has at most one point.  Laurent polynomials model the algebraic
(finitely supported) side.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Callable, Mapping

import numpy as np

NONZERO_TOL = 0.05


def _check_samples(K: int):
    if K < 8 or K & (K - 1):
        raise ValueError(f"sample count must be a power of two >= 8, got {K}")


@dataclass(frozen=True)
class CircleSample:
    values: np.ndarray

    def __post_init__(self):
        _check_samples(len(self.values))

    @property
    def K(self) -> int:
        return len(self.values)

    @property
    def points(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.K) / self.K)


def sample(func: Callable[[np.ndarray], np.ndarray], K: int) -> CircleSample:
    _check_samples(K)
    z = np.exp(2j * np.pi * np.arange(K) / K)
    return CircleSample(np.asarray(func(z), dtype=complex))


def m_function(z: np.ndarray) -> np.ndarray:
    """``(z - 2z^2) / |z - 2z^2|``; the zeros 0 and 1/2 are off the circle."""
    w = z - 2 * z * z
    return w / np.abs(w)


def sample_m(K: int) -> CircleSample:
    return sample(m_function, K)


@dataclass(frozen=True)
class FourierSeries:
    """Coefficients ``c_k`` for ``k`` in ``[-K/2, K/2)``."""
    K: int
    coefficients: np.ndarray

    @property
    def indices(self) -> np.ndarray:
        return np.arange(-self.K // 2, self.K // 2)

    def __getitem__(self, k: int) -> complex:
        if not -self.K // 2 <= k < self.K // 2:
            return 0j
        return complex(self.coefficients[k + self.K // 2])

    def as_dict(self, tol: float = 0.0) -> dict:
        return {int(k): complex(c) for k, c in zip(self.indices, self.coefficients)
                if abs(c) > tol}

    def energy(self) -> float:
        return float(np.sum(np.abs(self.coefficients) ** 2))


def dft(s: CircleSample) -> FourierSeries:
    """``c_k = (1/K) sum_j values[j] exp(-2 pi i j k / K)``."""
    K = s.K
    c = np.fft.fft(s.values) / K
    return FourierSeries(K, np.fft.fftshift(c))


def is_unimodular(s: CircleSample, tol: float = 1e-12) -> bool:
    return bool(np.max(np.abs(np.abs(s.values) - 1)) < tol)


def cstar_lbh_violation(series: FourierSeries, tol: float = NONZERO_TOL) -> bool:
    """At least two coefficients above ``tol``: the support is not a bisection of Z."""
    return int(np.count_nonzero(np.abs(series.coefficients) > tol)) >= 2


@dataclass(frozen=True)
class LaurentElement:
    coeffs: Mapping[int, complex]

    def __post_init__(self):
        object.__setattr__(self, "coeffs", {int(k): v for k, v in self.coeffs.items() if v != 0})

    def __mul__(self, other: "LaurentElement") -> "LaurentElement":
        out: dict = {}
        for i, a in self.coeffs.items():
            for j, b in other.coeffs.items():
                out[i + j] = out.get(i + j, 0) + a * b
        return LaurentElement(out)

    def star(self) -> "LaurentElement":
        return LaurentElement({-k: v.conjugate() for k, v in self.coeffs.items()})

    def support(self) -> list[int]:
        return sorted(self.coeffs)


@dataclass(frozen=True)
class LaurentCheck:
    is_normaliser: bool
    is_monomial: bool


def laurent_normaliser_check(f: LaurentElement, tol: float = 1e-12) -> LaurentCheck:
    """``f`` normalises the scalars iff ``f f*`` is a multiple of ``delta_0``."""
    ff = f * f.star()
    off = max((abs(v) for k, v in ff.coeffs.items() if k != 0), default=0.0)
    return LaurentCheck(off < tol, len(f.coeffs) == 1)


@dataclass(frozen=True)
class SweepResult:
    total: int
    normalisers: int
    exceptions: int


def laurent_sweep(radius: int = 3, bound: int = 2) -> SweepResult:
    """Exhaustive check over integer Laurent polynomials with support in
    ``[-radius, radius]`` and coefficients in ``[-bound, bound]``.

    An exception is an element where being a normaliser disagrees with being
    a monomial or zero.
    """
    width = 2 * radius + 1
    grid = np.array(list(itertools.product(range(-bound, bound + 1), repeat=width)),
                    dtype=np.int64)
    # autocorrelation at nonzero lags: (f f*)_k = sum_j f_j f_{j-k} for real f
    off = np.zeros(len(grid), dtype=bool)
    for lag in range(1, width):
        off |= np.einsum("ij,ij->i", grid[:, lag:], grid[:, :-lag]) != 0
    normal = ~off
    nnz = np.count_nonzero(grid, axis=1)
    expected = nnz <= 1
    return SweepResult(len(grid), int(normal.sum()), int(np.count_nonzero(normal != expected)))
