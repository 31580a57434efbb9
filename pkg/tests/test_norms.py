"""Quasi-norms, weak norms, translation, moduli, approximation brackets."""

import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from dyadlab import (DyadicInterval, GroupPoint, SampledFunction, approx_bracket,
                     dirichlet, fwht, lp_quasinorm, modulus_lp,
                     plancherel_power_sums, translate, translate_norm_profile,
                     truncate_paley, walsh_paley_samples, weak_lp)


def random_exact(rng, N):
    return SampledFunction(N, [rng.randint(-9, 9) for _ in range(1 << N)])


def random_float(rng, N):
    return SampledFunction(N, np.array([rng.uniform(-1, 1) for _ in range(1 << N)]))


class TestLp:
    def test_constant(self):
        f = SampledFunction.constant(-3, 4)
        assert lp_quasinorm(f, 1).value == 3
        assert lp_quasinorm(f, 2).power_sum == 9

    def test_block_kernel_l1(self):
        for n in range(5):
            assert lp_quasinorm(dirichlet("paley", 1 << n, 5), 1).value == 1

    def test_normalized_indicator(self):
        # 2^{n/p} 1_{I_n} has unit p-norm; p = 1 exact, p = 2 via power sum
        n = 3
        f = SampledFunction.indicator(DyadicInterval.at_zero(n, 5), 5, scale=1 << n)
        assert lp_quasinorm(f, 1).value == 1
        g = SampledFunction.indicator(DyadicInterval.at_zero(4, 5), 5, scale=4)
        assert lp_quasinorm(g, 2).power_sum == 1

    def test_bad_exponent(self):
        f = SampledFunction.constant(1, 2)
        with pytest.raises(ValueError):
            lp_quasinorm(f, 0)
        with pytest.raises(ValueError):
            lp_quasinorm(f, Fraction(-1, 2))

    def test_float_matches_exact(self):
        rng = random.Random(0)
        f = random_exact(rng, 6)
        for p in (1, 2, Fraction(1, 2), 1.7):
            a = float(lp_quasinorm(f, p))
            b = float(lp_quasinorm(f.to_float(), p))
            assert math.isclose(a, b, rel_tol=1e-12)

    def test_power_subadditive_below_one(self):
        rng = random.Random(1)
        p = Fraction(1, 2)
        for _ in range(20):
            f, g = random_exact(rng, 5), random_exact(rng, 5)
            lhs = lp_quasinorm(f + g, p).power_sum
            rhs = lp_quasinorm(f, p).power_sum + lp_quasinorm(g, p).power_sum
            assert lhs <= rhs + 1e-9

    def test_triangle_above_one(self):
        rng = random.Random(2)
        for p in (1, 2, 4):
            for _ in range(10):
                f, g = random_exact(rng, 5), random_exact(rng, 5)
                assert float(lp_quasinorm(f + g, p)) <= \
                    float(lp_quasinorm(f, p)) + float(lp_quasinorm(g, p)) + 1e-9


class TestWeakLp:
    def test_unimodular(self):
        f = SampledFunction(3, walsh_paley_samples(5, 3))
        assert weak_lp(f, Fraction(1, 4)).value == 1
        assert weak_lp(f, 2).value == 1

    def test_scaled_indicator(self):
        # c * 1_{I_n}: single jump at level c with tail measure 2^{-n}
        f = SampledFunction.indicator(DyadicInterval.at_zero(2, 5), 5, scale=7)
        assert weak_lp(f, 1).value == Fraction(7, 4)
        assert weak_lp(f, Fraction(1, 2)).value == Fraction(7, 16)

    def test_chebyshev_containment(self):
        rng = random.Random(3)
        for p in (Fraction(1, 2), 1, 2):
            for _ in range(20):
                f = random_exact(rng, 6)
                assert float(weak_lp(f, p)) <= float(lp_quasinorm(f, p)) + 1e-9

    @settings(max_examples=30)
    @given(st.integers(-60, 60), st.integers(0, 2 ** 16 - 1))
    def test_homogeneity_exact(self, c, seed):
        rng = random.Random(seed)
        f = random_exact(rng, 4)
        p = Fraction(1, 2)
        assert weak_lp(f.scale(c), p).value == abs(c) * weak_lp(f, p).value

    def test_zero_function(self):
        assert weak_lp(SampledFunction.constant(0, 3), 1).value == 0

    def test_float_matches_exact(self):
        rng = random.Random(4)
        f = random_exact(rng, 6)
        for p in (Fraction(1, 4), Fraction(1, 2), 1, 2):
            a = float(weak_lp(f, p))
            b = float(weak_lp(f.to_float(), p))
            assert math.isclose(a, b, rel_tol=1e-12)


class TestTranslate:
    def test_zero_shift(self):
        f = SampledFunction(3, list(range(8)))
        assert translate(f, GroupPoint.zero(3)) == f

    def test_character_eigenfunction(self):
        N = 4
        for n in (1, 5, 11):
            f = SampledFunction(N, walsh_paley_samples(n, N))
            for h_idx in range(16):
                h = GroupPoint(N, h_idx)
                assert translate(f, h) == f.scale(f[h_idx])

    def test_indicator_moves(self):
        f = SampledFunction.indicator(DyadicInterval.at_zero(1, 3), 3)
        moved = translate(f, GroupPoint.unit(0, 3))
        expected = SampledFunction.indicator(
            DyadicInterval(1, GroupPoint.unit(0, 3)), 3)
        assert moved == expected

    def test_resolution_mismatch(self):
        with pytest.raises(ValueError):
            translate(SampledFunction.constant(1, 3), GroupPoint.zero(4))


class TestModulus:
    def test_coarse_measurable_vanishes(self):
        # constant on rank-2 cells => shifts inside I_2 change nothing
        f = SampledFunction(4, [j & 3 for j in range(16)])
        assert float(modulus_lp(f, 2, 1)) == 0
        assert float(modulus_lp(f, 3, 2)) == 0

    def test_rademacher_full_shift(self):
        f = SampledFunction(3, walsh_paley_samples(1, 3))
        for p in (1, 2, Fraction(1, 2)):
            assert math.isclose(float(modulus_lp(f, 0, p)), 2.0, rel_tol=1e-12)

    def test_block_character(self):
        for n in (1, 2, 3):
            f = SampledFunction(5, walsh_paley_samples(1 << n, 5))
            assert math.isclose(float(modulus_lp(f, n, 2)), 2.0, rel_tol=1e-12)

    def test_nonincreasing_in_rank(self):
        rng = random.Random(5)
        for _ in range(5):
            f = random_exact(rng, 5)
            values = [float(modulus_lp(f, n, 1)) for n in range(6)]
            assert all(a >= b - 1e-12 for a, b in zip(values, values[1:]))

    def test_rank_error(self):
        with pytest.raises(ValueError):
            modulus_lp(SampledFunction.constant(1, 3), 4, 1)

    def test_float_matches_exact(self):
        rng = random.Random(6)
        f = random_exact(rng, 5)
        for n in range(4):
            a = float(modulus_lp(f, n, 1))
            b = float(modulus_lp(f.to_float(), n, 1))
            assert math.isclose(a, b, rel_tol=1e-12)

    def test_profile_matches_modulus(self):
        rng = random.Random(7)
        f = random_float(rng, 6)
        p = 2
        profile = translate_norm_profile(f, p)
        for n in range(7):
            mask = [h for h in range(64) if h & ((1 << n) - 1) == 0]
            best = max(profile[h] for h in mask)
            assert math.isclose(best, modulus_lp(f, n, p).power_sum,
                                rel_tol=1e-12, abs_tol=1e-15)


class TestApproxBracket:
    def test_low_spectrum_exact_zero(self):
        f = truncate_paley(SampledFunction(4, list(range(16))), 4)
        br = approx_bracket(f, 2, 2)
        assert br.lower == br.upper == 0
        assert br.l2_value == 0

    def test_l2_exact_is_tail_energy(self):
        rng = random.Random(8)
        f = random_exact(rng, 5)
        for n in range(6):
            br = approx_bracket(f, n, 2)
            coeffs = fwht(f)
            energy = sum(c * c for c in coeffs.coeffs[1 << n:])
            assert br.l2_tail_energy == energy
            assert br.lower - 1e-12 <= br.l2_value <= br.upper + 1e-12

    def test_requires_p_at_least_one(self):
        with pytest.raises(ValueError):
            approx_bracket(SampledFunction.constant(1, 3), 1, Fraction(1, 2))

    def test_watari_sandwich_random(self):
        rng = random.Random(9)
        for _ in range(10):
            f = random_exact(rng, 5)
            for p in (1, 2, 4):
                for n in range(6):
                    tail = float(lp_quasinorm(f - truncate_paley(f, 1 << n), p))
                    omega = float(modulus_lp(f, n, p))
                    assert omega / 2 <= tail + 1e-9
                    assert tail <= omega + 1e-9


class TestPlancherel:
    def test_exact(self):
        rng = random.Random(10)
        for _ in range(10):
            f = random_exact(rng, 6)
            lhs, rhs = plancherel_power_sums(f)
            assert lhs == rhs

    def test_float(self):
        rng = random.Random(11)
        f = random_float(rng, 8)
        lhs, rhs = plancherel_power_sums(f)
        assert math.isclose(lhs, rhs, rel_tol=1e-12)
