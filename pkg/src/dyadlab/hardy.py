"""Finite dyadic martingales, maximal functions, H_p machinery, atoms.

A depth-M martingale is stored through its terminal level only: the
Paley spectrum of f^(M) on 2^M cells.  Level n is the conditional
expectation onto the rank-n cells, which for the Paley system is the
same as zeroing every coefficient with index >= 2^n; both routes are
implemented and cross-checked.

The maximal function is f* = max_{0<=n<=M} |f^(n)| and
||f||_{H_p} = ||f*||_p.  For 0 < p <= 1 a p-atom on an interval I has
zero mean on I, support inside I and sup-norm at most mu(I)^{-1/p}.

The conjugate transform multiplies the n-th martingale difference by
the sign r_n(t).  It always preserves every H_p quasi-norm; it agrees
with a group translation exactly when the sign pattern is realizable as
a character on the occupied spectrum, which `conjugate_shift` decides by
solving the corresponding GF(2) linear system.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence, Union

import numpy as np

from .group import DyadicInterval, GroupPoint, msb, rademacher
from .norms import PLike, QuasiNormValue, lp_quasinorm, normalize_p, translate
from .walsh import (CoefficientSequence, SampledFunction, System, fwht,
                    inverse_fwht, truncate_paley)


class DyadicMartingale:
    """Finite dyadic martingale (f^(n))_{n<=M} determined by its terminal level."""

    __slots__ = ("depth", "terminal", "_level_cache")

    def __init__(self, terminal: CoefficientSequence):
        self.depth = terminal.resolution
        self.terminal = terminal.to_ordering(System.PALEY)
        self._level_cache: dict[int, SampledFunction] = {}

    # -- constructors -----------------------------------------------------
    @classmethod
    def from_paley_coeffs(cls, depth: int,
                          coeffs: Sequence | np.ndarray) -> "DyadicMartingale":
        return cls(CoefficientSequence(depth, System.PALEY, coeffs))

    @classmethod
    def from_function(cls, f: SampledFunction) -> "DyadicMartingale":
        return cls(fwht(f))

    # -- structure ---------------------------------------------------------
    @property
    def is_exact(self) -> bool:
        return self.terminal.is_exact

    def level(self, n: int) -> SampledFunction:
        """f^(n) = S_{2^n} f^(M), sampled on the 2^M cells."""
        if not 0 <= n <= self.depth:
            raise ValueError(f"level {n} outside 0..{self.depth}")
        cached = self._level_cache.get(n)
        if cached is None:
            cached = self._truncated(1 << n if n < self.depth else len(self.terminal))
            self._level_cache[n] = cached
        return cached

    def _truncated(self, count: int) -> SampledFunction:
        coeffs = self.terminal.coeffs
        if self.terminal.is_exact:
            kept = list(coeffs[:count]) + [0] * (len(self.terminal) - count)
            return inverse_fwht(
                CoefficientSequence(self.depth, System.PALEY, kept))
        arr = np.asarray(coeffs).copy()
        arr[count:] = 0.0
        return inverse_fwht(CoefficientSequence(self.depth, System.PALEY, arr))

    def terminal_function(self) -> SampledFunction:
        return self.level(self.depth)

    def coefficient(self, i: int) -> Union[int, Fraction, float]:
        return self.terminal.coeffs[i]

    def tail(self, n: int) -> "DyadicMartingale":
        """The martingale of f - S_{2^n}f: levels <= n vanish."""
        if not 0 <= n <= self.depth:
            raise ValueError(f"tail level {n} outside 0..{self.depth}")
        count = 1 << n
        coeffs = self.terminal.coeffs
        if self.terminal.is_exact:
            cut: Sequence | np.ndarray = [0] * count + list(coeffs[count:])
        else:
            cut = np.asarray(coeffs).copy()
            cut[:count] = 0.0
        return DyadicMartingale(CoefficientSequence(self.depth, System.PALEY, cut))

    def __repr__(self) -> str:
        mode = "exact" if self.is_exact else "float"
        return f"DyadicMartingale(depth={self.depth}, mode={mode})"


def s2n(f: "DyadicMartingale | SampledFunction", n: int) -> SampledFunction:
    """S_{2^n} f by Paley-coefficient truncation."""
    if isinstance(f, DyadicMartingale):
        return f.level(n)
    if not 0 <= n <= f.resolution:
        raise ValueError(f"partial-sum level {n} outside 0..{f.resolution}")
    return truncate_paley(f, 1 << n)


def s2n_by_averaging(f: SampledFunction, n: int) -> SampledFunction:
    """S_{2^n} f by averaging over each rank-n cell (independent route)."""
    if not 0 <= n <= f.resolution:
        raise ValueError(f"partial-sum level {n} outside 0..{f.resolution}")
    N = f.resolution
    cells = 1 << n
    reps = 1 << (N - n)
    if f.is_exact:
        vals = f.values
        means = [Fraction(sum(vals[c + (t << n)] for t in range(reps)), reps)
                 for c in range(cells)]
        return SampledFunction(N, [means[j & (cells - 1)] for j in range(1 << N)])
    arr = np.asarray(f.values).reshape(reps, cells)
    means = arr.mean(axis=0)
    return SampledFunction(N, np.tile(means, reps))


def maximal(f: DyadicMartingale) -> SampledFunction:
    """f* = max_n |f^(n)| pointwise over all levels 0..M."""
    if f.is_exact:
        best = [abs(v) for v in f.level(0).values]
        for n in range(1, f.depth + 1):
            for j, v in enumerate(f.level(n).values):
                a = abs(v)
                if a > best[j]:
                    best[j] = a
        return SampledFunction(f.depth, best)
    acc = np.abs(np.asarray(f.level(0).values))
    for n in range(1, f.depth + 1):
        acc = np.maximum(acc, np.abs(np.asarray(f.level(n).values)))
    return SampledFunction(f.depth, acc)


def maximal_by_averages(f: SampledFunction) -> SampledFunction:
    """sup_n |mean of f over the rank-n cell through x| (integral form)."""
    out = s2n_by_averaging(f, 0)
    if f.is_exact:
        best = [abs(v) for v in out.values]
        for n in range(1, f.resolution + 1):
            for j, v in enumerate(s2n_by_averaging(f, n).values):
                a = abs(v)
                if a > best[j]:
                    best[j] = a
        return SampledFunction(f.resolution, best)
    acc = np.abs(np.asarray(out.values))
    for n in range(1, f.resolution + 1):
        acc = np.maximum(acc, np.abs(np.asarray(s2n_by_averaging(f, n).values)))
    return SampledFunction(f.resolution, acc)


def hardy_quasinorm(f: DyadicMartingale, p: PLike) -> QuasiNormValue:
    """||f||_{H_p} = ||f*||_p."""
    return lp_quasinorm(maximal(f), p)


def square_function_squared(f: DyadicMartingale) -> SampledFunction:
    """S(f)^2 = sum_n |f^(n) - f^(n-1)|^2 pointwise (exact in exact mode).

    Any modulation of the differences by unit signs leaves this function
    unchanged pointwise, which is the exactly-preserved quantity behind
    the conjugate transform's isometry.
    """
    prev = f.level(0)
    acc = prev * prev
    for n in range(1, f.depth + 1):
        cur = f.level(n)
        diff = cur - prev
        acc = acc + diff * diff
        prev = cur
    return acc


def modulus_hp(f: DyadicMartingale, n: int, p: PLike) -> QuasiNormValue:
    """omega_{H_p}(1/2^n, f) = ||f - S_{2^n}f||_{H_p}."""
    if not 0 <= n <= f.depth:
        raise ValueError(f"modulus level {n} outside 0..{f.depth}")
    return hardy_quasinorm(f.tail(n), p)


# ---------------------------------------------------------------------------
# atoms

@dataclass(frozen=True)
class PAtomCertificate:
    """Outcome of the three p-atom clauses; failure names the first violation."""

    passed: bool
    violated: Optional[str]  # 'support' | 'mean' | 'sup_bound' | None
    p: Fraction | float
    interval: DyadicInterval
    sup_value: Fraction | float
    sup_bound: float
    integral_over_interval: Fraction | float


def is_p_atom(a: SampledFunction, interval: DyadicInterval,
              p: PLike) -> PAtomCertificate:
    """Check supp(a) in I, zero mean on I, and ||a||_inf <= mu(I)^{-1/p}."""
    p = normalize_p(p)
    if not 0 < p <= 1:
        raise ValueError(f"atoms are defined for 0 < p <= 1, got {p}")
    N = a.resolution
    inside = set(interval.indices(N))
    violated = None

    support_ok = all(a[j] == 0 for j in range(len(a)) if j not in inside)
    if not support_ok:
        violated = "support"

    cell = Fraction(1, 1 << N)
    if a.is_exact:
        integral = Fraction(sum(a[j] for j in inside)) * cell
        mean_ok = integral == 0
    else:
        integral = float(np.sum(np.asarray(a.values)[sorted(inside)])) * float(cell)
        mean_ok = abs(integral) < 1e-12
    if violated is None and not mean_ok:
        violated = "mean"

    sup_value = max(abs(a[j]) for j in range(len(a)))
    rank = interval.rank
    bound = 2.0 ** (rank / float(p))
    if a.is_exact and isinstance(p, Fraction):
        # |v| <= 2^{rank/p}  <=>  |v|^num <= 2^{rank*den}, all integers/rationals
        sup_ok = Fraction(sup_value) ** p.numerator <= Fraction(2) ** (rank * p.denominator)
    else:
        sup_ok = float(sup_value) <= bound * (1 + 1e-12)
    if violated is None and not sup_ok:
        violated = "sup_bound"

    return PAtomCertificate(violated is None, violated, p, interval,
                            sup_value, bound, integral)


def atomic_norm_bound(weights: Sequence, p: PLike) -> float:
    """(sum_k |mu_k|^p)^{1/p}: comparison series for the atomic decomposition.

    The equivalence constant linking this to ||f||_{H_p} is not asserted;
    callers report the empirical ratio instead.
    """
    p = normalize_p(p)
    if not p > 0:
        raise ValueError(f"exponent p must be > 0, got {p}")
    pf = float(p)
    power = math.fsum(abs(float(w)) ** pf for w in weights)
    return power ** (1.0 / pf)


# ---------------------------------------------------------------------------
# conjugate transform

def conjugate(f: DyadicMartingale, t: GroupPoint) -> DyadicMartingale:
    """Multiply the n-th martingale difference by r_n(t).

    Difference n = 0 is the constant term; difference n >= 1 occupies the
    Paley coefficient block [2^{n-1}, 2^n).  Signing differences 0..M
    needs coordinates t_0..t_M, hence resolution >= depth + 1.
    """
    M = f.depth
    if t.resolution < M + 1:
        raise ValueError(
            f"conjugate sign point needs resolution >= {M + 1}, got {t.resolution}")
    signs = [rademacher(n, t) for n in range(M + 1)]
    coeffs = f.terminal.coeffs
    if f.is_exact:
        out = list(coeffs)
        if signs[0] < 0:
            out[0] = -out[0]
        for n in range(1, M + 1):
            if signs[n] < 0:
                for i in range(1 << (n - 1), 1 << n):
                    out[i] = -out[i]
        return DyadicMartingale(CoefficientSequence(M, System.PALEY, out))
    arr = np.asarray(coeffs).copy()
    if signs[0] < 0:
        arr[0] = -arr[0]
    for n in range(1, M + 1):
        if signs[n] < 0:
            arr[1 << (n - 1):1 << n] *= -1.0
    return DyadicMartingale(CoefficientSequence(M, System.PALEY, arr))


def conjugate_shift(f: DyadicMartingale, t: GroupPoint) -> Optional[GroupPoint]:
    """A shift u with  conjugate(f, t) = f(. + u)  on the terminal level, if any.

    Translation multiplies coefficient i by w_i(u) while conjugation
    multiplies it by the per-block sign r_{msb(i)+1}(t); matching them on
    the occupied spectrum is a GF(2) linear system in the bits of u.
    Martingales with at most one occupied coefficient per block (and no
    constant term when r_0(t) = -1) always admit a solution; dense
    spectra generally do not, in which case None is returned.
    """
    M = f.depth
    if t.resolution < M + 1:
        raise ValueError(
            f"conjugate sign point needs resolution >= {M + 1}, got {t.resolution}")
    coeffs = f.terminal.coeffs

    def occupied(i: int) -> bool:
        c = coeffs[i]
        return c != 0

    if occupied(0) and rademacher(0, t) < 0:
        return None  # no translation can flip the constant term

    rows: list[tuple[int, int]] = []
    for i in range(1, len(f.terminal)):
        if occupied(i):
            flip = 1 if rademacher(msb(i) + 1, t) < 0 else 0
            rows.append((i, flip))

    # Gaussian elimination over GF(2); pivot on the highest set bit.
    pivots: dict[int, tuple[int, int]] = {}
    for mask, rhs in rows:
        while mask:
            top = mask.bit_length() - 1
            if top not in pivots:
                pivots[top] = (mask, rhs)
                break
            pmask, prhs = pivots[top]
            mask ^= pmask
            rhs ^= prhs
        else:
            if rhs:
                return None  # inconsistent: 0 = 1
    # masks only carry bits <= their pivot, so resolve low pivots first
    u = 0
    for top in sorted(pivots):
        mask, rhs = pivots[top]
        parity = ((mask & ~(1 << top)) & u).bit_count() & 1
        if parity ^ rhs:
            u |= 1 << top
    shift = GroupPoint(M, u)
    if translate(f.terminal_function(), shift) == conjugate(f, t).terminal_function():
        return shift
    return None
