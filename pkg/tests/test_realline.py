"""Compact signals, dyadic blocks, Paley measures, and the line harnesses."""

import math

import numpy as np
import pytest

from paleyzyg import (CompactSignal, PaleyMeasure, fourier_transform, low_block_divergence,
                      lp_block, mean_zero_reduction, mu_l2_sq, paley_inequality_probe,
                      paley_sup, product_paley_sup_2d, raised_cosine_bump,
                      random_mean_zero_corpus, rudin_counterexample, square_function_norm,
                      zygmund_realline_probe)
from paleyzyg.realline import _dual_grid, _dual_inverse, default_k_range


def gaussian_signal(L=8.0, M=2048, sigma=0.5):
    h = 2 * L / M
    x = -L + h * np.arange(M)
    return CompactSignal(np.exp(-x ** 2 / (2 * sigma ** 2)).astype(complex), L)


class TestTransform:
    def test_zero_frequency_is_plain_quadrature(self):
        s = gaussian_signal()
        got = fourier_transform(s, [0.0]).values[0]
        assert got == pytest.approx(s.h * s.values.sum(), rel=1e-14)

    def test_gaussian_pair(self):
        sigma = 0.5
        s = gaussian_signal(sigma=sigma)
        xi = np.linspace(-8, 8, 33)
        got = fourier_transform(s, xi).values
        exact = np.sqrt(2 * np.pi) * sigma * np.exp(-2 * (np.pi * sigma * xi) ** 2)
        assert np.abs(got - exact).max() <= 1e-4

    def test_real_even_gives_real_even(self):
        s = gaussian_signal()
        xi = np.linspace(-4, 4, 17)
        got = fourier_transform(s, xi).values
        assert np.abs(got.imag).max() <= 1e-10
        assert np.abs(got - got[::-1]).max() <= 1e-10

    def test_conjugate_symmetry_for_real_input(self):
        rng = np.random.default_rng(3)
        L, M = 4.0, 256
        vals = rng.standard_normal(M)
        s = CompactSignal(vals.astype(complex), L)
        xi = np.array([0.3, 1.1, 2.7])
        a = fourier_transform(s, xi).values
        b = fourier_transform(s, -xi).values
        assert np.abs(a - np.conj(b)).max() <= 1e-12

    def test_linearity(self):
        s1 = gaussian_signal(sigma=0.4)
        s2 = gaussian_signal(sigma=0.9)
        xi = np.array([0.5, 1.5])
        combo = CompactSignal(2 * s1.values + 1j * s2.values, s1.half_width)
        got = fourier_transform(combo, xi).values
        ref = 2 * fourier_transform(s1, xi).values + 1j * fourier_transform(s2, xi).values
        assert np.abs(got - ref).max() <= 1e-12

    def test_band_rejection(self):
        s = gaussian_signal(L=8.0, M=256)
        with pytest.raises(ValueError, match="band"):
            fourier_transform(s, [s.band * 2])

    def test_quad_error_metadata(self):
        s = gaussian_signal()
        rep = fourier_transform(s, [0.0])
        assert rep.quad_error_scale == pytest.approx(s.h ** 2)


class TestBlocks:
    def test_block_of_band_limited_signal_is_identity(self):
        s = gaussian_signal(L=8.0, M=2048)
        k = 2
        _, xi, fhat = _dual_grid(s)
        hat = np.where((np.abs(xi) >= 1.5 * 2 ** k) & (np.abs(xi) <= 2.0 ** (k + 1)),
                       np.exp(-np.abs(xi)), 0.0)
        f = _dual_inverse(s, hat)
        g = lp_block(f, k)
        scale = np.abs(f.values).max()
        assert np.abs(g.values - f.values).max() <= 1e-10 * scale

    def test_block_of_zero_is_zero(self):
        s = CompactSignal(np.zeros(64, dtype=complex), 2.0)
        assert np.abs(lp_block(s, 0).values).max() == 0.0

    def test_band_violation_rejected(self):
        s = gaussian_signal(L=8.0, M=256)
        with pytest.raises(ValueError, match="band"):
            lp_block(s, 10)

    def test_square_function_zero(self):
        s = CompactSignal(np.zeros(64, dtype=complex), 2.0)
        assert square_function_norm(s, (-2, 0)) == 0.0

    def test_square_function_single_block(self):
        s = gaussian_signal(L=8.0, M=2048)
        k = 2
        _, xi, fhat = _dual_grid(s)
        hat = np.where((np.abs(xi) >= 1.5 * 2 ** k) & (np.abs(xi) <= 2.0 ** (k + 1)),
                       np.exp(-np.abs(xi) / 8), 0.0)
        f = _dual_inverse(s, hat)
        assert square_function_norm(f, (k - 3, k + 1)) >= f.l1() * 0.9

    def test_square_function_stable_under_widening(self):
        s = random_mean_zero_corpus(1)[0]
        kr = default_k_range(s)
        a = square_function_norm(s, kr)
        b = square_function_norm(s, (kr[0] - 5, kr[1]))
        assert abs(a - b) <= 0.01 * a


class TestPaleyMeasure:
    def test_atoms_block_mass(self):
        mu = PaleyMeasure.from_atoms([(2.0 ** k, 1.0) for k in range(5)])
        rep = paley_sup(mu, (0, 4))
        assert rep.sup == 1.0
        assert rep.verdict == "bounded-in-range"

    def test_growing_atoms_flagged(self):
        mu = PaleyMeasure.from_atoms([(1.5 * 2.0 ** k, float(k + 1)) for k in range(12)])
        rep = paley_sup(mu, (0, 11))
        assert rep.sup == 12.0
        assert rep.verdict == "diverging"

    def test_inverse_abs_block_mass(self):
        mu = PaleyMeasure.inverse_abs(-20, 10)
        for k in (-20, -3, 0, 7):
            assert mu.block_mass(k) == pytest.approx(2 * math.log(2), abs=1e-10)
        assert paley_sup(mu, (-20, 10)).sup == pytest.approx(2 * math.log(2), abs=1e-10)

    def test_negative_weight_rejected(self):
        with pytest.raises(ValueError):
            PaleyMeasure.from_atoms([(1.0, -2.0)])

    def test_atom_inside_gap_rejected(self):
        with pytest.raises(ValueError):
            PaleyMeasure.from_atoms([(0.1, 1.0)], gap=0.5)

    def test_subadditive_for_atom_sums(self):
        a = PaleyMeasure.from_atoms([(3.0, 1.0), (12.0, 2.0)])
        b = PaleyMeasure.from_atoms([(3.5, 0.5), (100.0, 1.0)])
        merged = PaleyMeasure.from_atoms(list(a.atoms) + list(b.atoms))
        for kr in ((0, 7),):
            assert paley_sup(merged, kr).sup <= paley_sup(a, kr).sup + paley_sup(b, kr).sup

    def test_json_round_trip(self):
        mu = PaleyMeasure.from_atoms([(2.0, 1.0), (-8.0, 0.5)], gap=1.0)
        q = PaleyMeasure.from_json(mu.to_json())
        assert q.atoms == mu.atoms and q.gap == mu.gap
        d = PaleyMeasure.inverse_abs(-4, 6)
        q = PaleyMeasure.from_json(d.to_json())
        assert q.block_mass(3) == pytest.approx(d.block_mass(3), rel=1e-14)


class TestProbe:
    def test_zero_measure_ratio_zero(self):
        mu = PaleyMeasure.from_atoms([])
        corpus = random_mean_zero_corpus(2)
        rep = paley_inequality_probe(mu, corpus)
        assert rep.max_ratio == 0.0

    def test_single_atom_single_block(self):
        s0 = gaussian_signal(L=8.0, M=2048)
        k = 2
        _, xi, fhat = _dual_grid(s0)
        hat = np.where((np.abs(xi) >= 1.5 * 2 ** k) & (np.abs(xi) <= 2.0 ** (k + 1)),
                       np.exp(-np.abs(xi) / 8), 0.0)
        f = _dual_inverse(s0, hat)
        mu = PaleyMeasure.from_atoms([(1.5 * 2.0 ** k + 0.25, 1.0)])
        rep = paley_inequality_probe(mu, [f])
        assert rep.max_ratio <= 1.0 + 0.05

    def test_corpus_bounded(self):
        mu = PaleyMeasure.inverse_abs(-10, 4)
        corpus = random_mean_zero_corpus(10)
        rep = paley_inequality_probe(mu, corpus)
        assert 0 < rep.max_ratio < 5.0

    def test_non_mean_zero_rejected(self):
        mu = PaleyMeasure.inverse_abs(-2, 2)
        bad = raised_cosine_bump(4.0, 2048)
        with pytest.raises(ValueError, match="mean-zero"):
            paley_inequality_probe(mu, [bad])


class TestMeanZero:
    def test_already_zero_unchanged(self):
        f = random_mean_zero_corpus(1)[0]
        g = mean_zero_reduction(f)
        assert np.abs(g.values - f.values).max() <= 1e-12 * np.abs(f.values).max()

    def test_psi_goes_to_zero(self):
        psi = raised_cosine_bump(4.0, 1024)
        g = mean_zero_reduction(psi, psi)
        assert np.abs(g.values).max() <= 1e-12

    def test_random_signal_mean_removed(self):
        rng = np.random.default_rng(8)
        s = CompactSignal((rng.standard_normal(512) + 1j * rng.standard_normal(512)), 4.0)
        g = mean_zero_reduction(s)
        assert abs(g.integral()) <= 1e-10

    def test_bad_psi_rejected(self):
        psi = raised_cosine_bump(4.0, 1024)
        crooked = CompactSignal(psi.values * 1.001, psi.half_width)
        f = random_mean_zero_corpus(1)[0]
        with pytest.raises(ValueError, match="deviates"):
            mean_zero_reduction(
                CompactSignal(f.values[:1024], 4.0) if f.size != 1024 else f, crooked)


class TestRudin:
    @staticmethod
    def j4_measure(J=6):
        ks = []
        k = 0
        for j in range(1, J + 1):
            ks.append(k)
            k = 5 * k + 1 if k > 0 else k + 1
        return PaleyMeasure.from_atoms(
            [(1.5 * 2.0 ** k, float(j ** 4)) for j, k in enumerate(ks, start=1)]), ks

    def test_witness_uniformly_bounded_below(self):
        mu, ks = self.j4_measure()
        rep = rudin_counterexample(mu, 6)
        assert rep.block_indices == tuple(ks)
        for w, f in zip(rep.witnesses, rep.floors):
            assert w >= 0.5 * f

    def test_paley_measure_refused(self):
        mu = PaleyMeasure.inverse_abs(0, 30)
        with pytest.raises(ValueError, match="Paley"):
            rudin_counterexample(mu, 2, k_search_max=30)

    def test_single_bump(self):
        mu = PaleyMeasure.from_atoms([(3.0, 2.0)])
        rep = rudin_counterexample(mu, 1)
        assert len(rep.witnesses) == 1
        assert math.isfinite(rep.witnesses[0]) and rep.witnesses[0] > 0
        assert len(rep.partial_signals) == 1

    def test_partial_signals_limited_by_band(self):
        mu, _ = self.j4_measure()
        rep = rudin_counterexample(mu, 6, signal=(4.0, 2048))
        assert 0 < len(rep.partial_signals) < 6


class TestLineZygmund:
    def test_missing_gap_rejected_with_pointer(self):
        mu = PaleyMeasure.from_atoms([(4.0, 1.0)])  # gap undeclared
        f = random_mean_zero_corpus(1)[0]
        with pytest.raises(ValueError, match="low_block_divergence"):
            zygmund_realline_probe(mu, f)

    def test_zero_signal(self):
        mu = PaleyMeasure.inverse_abs(-2, 3)
        z = CompactSignal(np.zeros(2048, dtype=complex), 4.0)
        rep = zygmund_realline_probe(mu, z)
        assert rep.ratio == 0.0

    def test_single_block_single_atom_bound(self):
        s0 = gaussian_signal(L=8.0, M=2048)
        k = 2
        _, xi, fh = _dual_grid(s0)
        hat = np.where((np.abs(xi) >= 1.5 * 2 ** k) & (np.abs(xi) <= 2.0 ** (k + 1)),
                       np.exp(-np.abs(xi) / 8), 0.0)
        f = _dual_inverse(s0, hat)
        w = 2.5
        mu = PaleyMeasure.from_atoms([(1.5 * 2.0 ** k, w)], gap=1.0)
        rep = zygmund_realline_probe(mu, f)
        assert rep.lhs <= math.sqrt(w) * f.l1() + 1e-9

    def test_translation_invariance(self):
        f = random_mean_zero_corpus(1)[0]
        shift = f.size // 8
        g = CompactSignal(np.roll(f.values, shift), f.half_width)
        mu = PaleyMeasure.inverse_abs(-2, 3)
        a = zygmund_realline_probe(mu, f)
        b = zygmund_realline_probe(mu, g)
        # |f_hat| and the integrand are translation invariant up to wrap-around
        assert a.rhs == pytest.approx(b.rhs, rel=1e-8)
        assert a.lhs == pytest.approx(b.lhs, rel=1e-3)

    def test_low_block_divergence_floor(self):
        bump = raised_cosine_bump(4.0, 2048, support=2.0)
        f0 = abs(fourier_transform(bump, np.array([0.0])).values[0])
        floor = 0.4 * f0 ** 2 * math.log(2)
        for _, inc in low_block_divergence(bump, range(-20, -10)):
            assert inc >= floor


class TestProduct:
    def test_atom_per_block_product(self):
        mu = PaleyMeasure.from_atoms([(1.5 * 2.0 ** k, 1.0) for k in range(6)])
        rep = product_paley_sup_2d(mu, mu, (0, 5))
        assert rep.sup == 1.0
        assert rep.verdict == "bounded-in-range"

    def test_product_identity(self):
        mu = PaleyMeasure.from_atoms([(1.5, 2.0), (3.0, 0.5), (50.0, 1.0)])
        nu = PaleyMeasure.inverse_abs(-2, 6)
        rep = product_paley_sup_2d(mu, nu, (-2, 6))
        assert rep.product_identity_gap <= 1e-12
        assert rep.sup == pytest.approx(rep.factor_sups[0] * rep.factor_sups[1], rel=1e-12)

    def test_unbounded_factor_flagged(self):
        mu = PaleyMeasure.from_atoms([(1.5 * 2.0 ** k, float(k + 1)) for k in range(12)])
        nu = PaleyMeasure.inverse_abs(0, 11)
        rep = product_paley_sup_2d(mu, nu, (0, 11))
        assert rep.verdict == "diverging"
