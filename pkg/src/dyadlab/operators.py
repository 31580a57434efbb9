"""Partial sums and Fejer means in both orderings, as coefficient multipliers.

S_n f = sum_{i<n} hat{f}(i) alpha_i  and  sigma_n f = (1/n) sum_{j<=n} S_j f.
Averaging the partial sums weights coefficient i by (n - i)/n for i < n,
so both operators are diagonal in the acting system's ordering.  In the
Kaczmarz ordering the diagonal acts through the block bit-reversal
sigma: the Paley coefficient at j carries weight (n - sigma(j))/n when
sigma(j) < n.  The definitional averages are kept as test oracles.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Sequence, Union

import numpy as np

from .hardy import DyadicMartingale
from .norms import PLike, normalize_p
from .walsh import (CoefficientSequence, SampledFunction, System, _butterfly_list,
                    fwht, inverse_fwht, sigma_permutation)

Operand = Union[DyadicMartingale, SampledFunction]


def _paley_spectrum(f: Operand) -> CoefficientSequence:
    if isinstance(f, DyadicMartingale):
        return f.terminal
    return fwht(f)


def _resolution(f: Operand) -> int:
    return f.depth if isinstance(f, DyadicMartingale) else f.resolution


def coefficients(f: Operand, system: System | str = System.PALEY) -> CoefficientSequence:
    """Spectrum of f in the requested ordering."""
    return _paley_spectrum(f).to_ordering(system)


def partial_sum(f: Operand, system: System | str, n: int) -> SampledFunction:
    """S_n f: keep coefficients 0..n-1 in the acting system's ordering."""
    system = System.coerce(system)
    N = _resolution(f)
    size = 1 << N
    if not 0 <= n <= size:
        raise ValueError(f"partial-sum order {n} outside 0..{size}")
    spec = _paley_spectrum(f)
    sigma = sigma_permutation(N)
    kept: Sequence | np.ndarray
    if spec.is_exact:
        if system is System.PALEY:
            kept = [c if j < n else 0 for j, c in enumerate(spec.coeffs)]
        else:
            kept = [c if sigma[j] < n else 0 for j, c in enumerate(spec.coeffs)]
    else:
        arr = np.asarray(spec.coeffs).copy()
        if system is System.PALEY:
            arr[n:] = 0.0
        else:
            arr[np.array(sigma) >= n] = 0.0
        kept = arr
    return inverse_fwht(CoefficientSequence(N, System.PALEY, kept))


def fejer_mean(f: Operand, system: System | str, n: int) -> SampledFunction:
    """sigma_n f via the diagonal weights (n - i)/n, i < n, in `system` order."""
    system = System.coerce(system)
    N = _resolution(f)
    size = 1 << N
    if n < 1:
        raise ValueError("Fejer mean order must be >= 1")
    if n > size:
        raise ValueError(f"Fejer order {n} outside spectrum 0..{size}")
    spec = _paley_spectrum(f)
    sigma = sigma_permutation(N)
    if spec.is_exact:
        if all(isinstance(c, int) for c in spec.coeffs):
            # integer spectrum: butterfly the numerators, divide by n once
            numer = []
            for j, c in enumerate(spec.coeffs):
                i = j if system is System.PALEY else sigma[j]
                numer.append(c * (n - i) if i < n else 0)
            return SampledFunction(
                N, [Fraction(v, n) for v in _butterfly_list(numer)])
        out = []
        for j, c in enumerate(spec.coeffs):
            i = j if system is System.PALEY else sigma[j]
            out.append(c * Fraction(n - i, n) if i < n else 0)
        return inverse_fwht(CoefficientSequence(N, System.PALEY, out))
    pos = np.arange(size) if system is System.PALEY else np.array(sigma)
    weights = np.where(pos < n, (n - pos) / n, 0.0)
    return inverse_fwht(
        CoefficientSequence(N, System.PALEY, np.asarray(spec.coeffs) * weights))


def fejer_mean_by_average(f: Operand, system: System | str, n: int) -> SampledFunction:
    """Definitional sigma_n f = (1/n) sum_{j=1..n} S_j f (test oracle)."""
    if n < 1:
        raise ValueError("Fejer mean order must be >= 1")
    acc = partial_sum(f, system, 1)
    for j in range(2, n + 1):
        acc = acc + partial_sum(f, system, j)
    if acc.is_exact:
        return acc.scale(Fraction(1, n))
    return acc.scale(1.0 / n)


def fejer_weight(p: Fraction | float, n: int) -> float:
    """Denominator weight (n+1)^{1/p-2} log2^{2[1/2+p]}(n+1) of the maximal sweep.

    [1/2 + p] = 0 for p < 1/2 and 1 for p = 1/2; the logarithm base is
    fixed to 2 so reports are reproducible.
    """
    if not 0 < p <= Fraction(1, 2):
        raise ValueError(f"weighted maximal operator needs 0 < p <= 1/2, got {p}")
    if p == Fraction(1, 2):
        return math.log2(n + 1.0) ** 2
    return float(n + 1.0) ** (1.0 / float(p) - 2.0)


def weighted_maximal(f: Operand, p: PLike, n_max: int) -> SampledFunction:
    """max_{1<=n<=n_max} |sigma_n^kappa f| / fejer_weight(p, n), in float mode.

    The sweep keeps a running sum of Kaczmarz partial sums, so the whole
    range costs O(n_max 2^N) instead of n_max separate means.
    """
    p = normalize_p(p)
    if not 0 < p <= Fraction(1, 2):
        raise ValueError(f"weighted maximal operator needs 0 < p <= 1/2, got {p}")
    N = _resolution(f)
    size = 1 << N
    if not 1 <= n_max <= size:
        raise ValueError(f"n_max {n_max} outside 1..{size}")
    spec = _paley_spectrum(f)
    coeffs = (np.array([float(c) for c in spec.coeffs])
              if spec.is_exact else np.asarray(spec.coeffs))
    sigma = sigma_permutation(N)
    idx = np.arange(size)
    partial = np.full(size, coeffs[0])  # S_1 in either ordering
    acc = partial.copy()                # sum of S_1..S_n
    best = np.abs(acc) / fejer_weight(p, 1)
    for n in range(2, n_max + 1):
        j = sigma[n - 1]  # kappa_{n-1} = w_j
        c = coeffs[j]
        if c != 0.0:
            row = 1.0 - 2.0 * (np.bitwise_count(idx & j) & 1).astype(np.float64)
            partial = partial + c * row
        acc = acc + partial
        cand = np.abs(acc) / (n * fejer_weight(p, n))
        best = np.maximum(best, cand)
    return SampledFunction(N, best)
