"""Transforms, norms, and functionals on the torus."""

import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from paleyzyg import (GridSignal, MultiplierSeq, TrigPoly, analyze, coeffs_close,
                      lp_norm, orlicz_functional, periodic_square_function_norm,
                      synthesize, vallee_poussin, weighted_l2)
from paleyzyg.torus import square_function_blocks


def random_poly(rng, dim, degree, count):
    coeffs = {}
    for _ in range(count):
        if dim == 1:
            n = int(rng.integers(-degree, degree + 1))
        else:
            n = tuple(int(v) for v in rng.integers(-degree, degree + 1, size=dim))
        coeffs[n] = complex(*rng.standard_normal(2))
    return TrigPoly(dim, coeffs)


class TestTrigPoly:
    def test_zero_coefficients_elided(self):
        p = TrigPoly(1, {3: 0.0, 5: 1.0})
        assert p.support == {5}

    def test_degree(self):
        p = TrigPoly(2, {(3, -7): 1.0, (-4, 2): 1.0})
        assert p.degrees == (4, 7)
        assert p.degree == 7

    def test_arity_mismatch_rejected(self):
        with pytest.raises(ValueError):
            TrigPoly(2, {(1, 2, 3): 1.0})

    def test_json_round_trip(self):
        p = TrigPoly(1, {-2: 1 + 2j, 5: -0.5j})
        q = TrigPoly.from_json(p.to_json())
        assert q.coeffs == p.coeffs
        p2 = TrigPoly(2, {(1, -1): 3.0})
        assert TrigPoly.from_json(p2.to_json()).coeffs == p2.coeffs


class TestSynthesize:
    def test_unimodular_character(self):
        s = synthesize(TrigPoly(1, {3: 1.0}), 16)
        assert np.abs(np.abs(s.values) - 1.0).max() <= 1e-12

    def test_constant(self):
        s = synthesize(TrigPoly(1, {0: 2.5 - 1j}), 32)
        assert np.abs(s.values - (2.5 - 1j)).max() <= 1e-12

    def test_grid_too_small_reports_minimum(self):
        p = TrigPoly(1, {40: 1.0})
        with pytest.raises(ValueError, match="128"):
            synthesize(p, 64)

    def test_round_trip_deg100(self):
        rng = np.random.default_rng(11)
        p = random_poly(rng, 1, 100, 60)
        q = analyze(synthesize(p, 256))
        assert coeffs_close(p, q, 1e-10)

    def test_round_trip_2d(self):
        rng = np.random.default_rng(12)
        p = random_poly(rng, 2, 30, 40)
        q = analyze(synthesize(p, (64, 64)))
        assert coeffs_close(p, q, 1e-10)


@given(st.dictionaries(st.integers(min_value=-30, max_value=30),
                       st.complex_numbers(max_magnitude=1e6, allow_nan=False,
                                          allow_infinity=False),
                       min_size=1, max_size=12))
@settings(max_examples=60, deadline=None)
def test_round_trip_property(coeffs):
    p = TrigPoly(1, coeffs)
    if not p.coeffs:
        return
    q = analyze(synthesize(p, 128))
    assert coeffs_close(p, q, 1e-10)


class TestAnalyze:
    def test_constant_signal(self):
        s = GridSignal(np.ones(16, dtype=complex))
        p = analyze(s)
        assert set(p.coeffs) == {0}
        assert p.coeffs[0] == pytest.approx(1.0)

    def test_pure_tone(self):
        theta = np.arange(32) / 32
        s = GridSignal(np.exp(2j * np.pi * 5 * theta))
        p = analyze(s)
        assert set(p.coeffs) == {5}
        assert p.coeffs[5] == pytest.approx(1.0, abs=1e-12)


class TestLpNorm:
    def test_character_all_p(self):
        s = synthesize(TrigPoly(1, {7: 1.0}), 64)
        for p in (1, 2, 3.5, 6, math.inf):
            assert lp_norm(s, p) == pytest.approx(1.0, abs=1e-12)

    def test_cosine_l2(self):
        s = synthesize(TrigPoly(1, {1: 0.5, -1: 0.5}), 16)
        assert lp_norm(s, 2) == pytest.approx(1 / math.sqrt(2), abs=1e-12)

    def test_p_below_one_rejected(self):
        s = synthesize(TrigPoly(1, {1: 1.0}), 16)
        with pytest.raises(ValueError):
            lp_norm(s, 0.5)

    def test_parseval(self):
        rng = np.random.default_rng(13)
        p = random_poly(rng, 1, 60, 30)
        s = synthesize(p, 256)
        assert lp_norm(s, 2) ** 2 == pytest.approx(
            sum(abs(c) ** 2 for c in p.coeffs.values()), rel=1e-10)

    def test_even_p_grid_doubling_invariance(self):
        rng = np.random.default_rng(14)
        p = random_poly(rng, 1, 10, 8)
        for q in (4, 6):
            m = 1
            while m <= q * p.degree:
                m *= 2
            a = lp_norm(synthesize(p, m), q)
            b = lp_norm(synthesize(p, 2 * m), q)
            assert a == pytest.approx(b, rel=1e-10)


class TestOrlicz:
    def test_r_zero_is_l1(self):
        rng = np.random.default_rng(15)
        p = random_poly(rng, 1, 20, 10)
        s = synthesize(p, 64)
        assert orlicz_functional(s, 0) == pytest.approx(lp_norm(s, 1), rel=1e-12)

    def test_zero_signal(self):
        s = GridSignal(np.zeros(16, dtype=complex))
        assert orlicz_functional(s, 0.5) == 0.0

    def test_flat_kernel_sqrt_growth(self):
        # Phi_{1/2}(V_{2^N}) fitted against N gives a slope close to 1/2
        ns, vals = [], []
        for N in range(4, 9):
            vp = vallee_poussin(N)
            s = synthesize(vp, 2 ** (N + 4))
            ns.append(N)
            vals.append(orlicz_functional(s, 0.5))
        slope = np.polyfit(np.log(ns), np.log(vals), 1)[0]
        assert 0.35 <= slope <= 0.65

    @given(st.floats(min_value=0.0, max_value=2.0), st.floats(min_value=0.0, max_value=2.0),
           st.integers(min_value=0, max_value=1000))
    @settings(max_examples=40, deadline=None)
    def test_monotone_in_r_when_values_large(self, r1, r2, seed):
        # |values| >= e - 1 makes log1p >= 1, so the functional grows with r
        rng = np.random.default_rng(seed)
        vals = (math.e - 1.0) + rng.random(16) * 5.0
        s = GridSignal(vals.astype(complex))
        lo, hi = sorted((r1, r2))
        assert orlicz_functional(s, lo) <= orlicz_functional(s, hi) + 1e-12

    def test_monotone_in_pointwise_magnitude(self):
        rng = np.random.default_rng(16)
        a = rng.random(32)
        s1 = GridSignal(a.astype(complex))
        s2 = GridSignal((a + 0.5).astype(complex))
        assert orlicz_functional(s1, 0.5) <= orlicz_functional(s2, 0.5)


class TestWeightedL2:
    def test_constant_weight_is_parseval(self):
        rng = np.random.default_rng(17)
        p = random_poly(rng, 1, 50, 20)
        m = MultiplierSeq.constant(1.0, 64)
        assert weighted_l2(p, m) == pytest.approx(p.l2_coeff_norm(), rel=1e-12)

    def test_indicator_restriction(self):
        from paleyzyg import FrequencySet
        p = TrigPoly(1, {1: 1.0, 2: 1.0, 4: 1.0})
        m = MultiplierSeq.indicator(FrequencySet(1, frozenset([1, 4])))
        assert weighted_l2(p, m) == pytest.approx(math.sqrt(2.0), rel=1e-12)

    def test_flat_kernel_harmonic_lower_bound(self):
        # exact harmonic sum H_1024 = sum_{n <= 2^10} 1/n computed directly
        H = float(np.sum(1.0 / np.arange(1, 1025)))
        assert H == pytest.approx(7.509176, abs=1e-6)
        vp = vallee_poussin(10)
        m = MultiplierSeq.inverse_sqrt(2 ** 11)
        assert weighted_l2(vp, m) >= math.sqrt(H)

    def test_sup_weight_bound(self):
        rng = np.random.default_rng(18)
        p = random_poly(rng, 1, 30, 12)
        m = MultiplierSeq.inverse_sqrt(64)
        s = synthesize(p, 128)
        assert weighted_l2(p, m) <= m.sup_norm() * lp_norm(s, 2) + 1e-12


class TestSquareFunction:
    def test_single_character_blocks(self):
        blocks = square_function_blocks(TrigPoly(1, {2: 1.0}))
        assert set(blocks) <= {0, 1}
        assert periodic_square_function_norm(TrigPoly(1, {2: 1.0})) <= math.sqrt(2) + 1e-12

    def test_zero_polynomial(self):
        assert periodic_square_function_norm(TrigPoly(1, {})) == 0.0

    def test_mean_never_enters(self):
        p = TrigPoly(1, {0: 100.0, 5: 1.0})
        q = TrigPoly(1, {5: 1.0})
        assert periodic_square_function_norm(p) == pytest.approx(
            periodic_square_function_norm(q), rel=1e-12)

    def test_split_frequency_two_blocks(self):
        # n = 5 meets two windows with weights 1/2 each
        blocks = square_function_blocks(TrigPoly(1, {5: 1.0}))
        weights = sorted(abs(b.coeffs[5]) for b in blocks.values())
        assert weights == pytest.approx([0.5, 0.5])
        val = periodic_square_function_norm(TrigPoly(1, {5: 1.0}))
        assert val == pytest.approx(math.sqrt(0.5), rel=1e-9)
