"""Window shape, the telescoping partition, and its inverse transform."""

import numpy as np
import pytest

from paleyzyg import window


def test_knot_values():
    assert window.eta(1.0) == 0.0
    assert window.eta(1.5) == 1.0
    assert window.eta(2.0) == 1.0
    assert window.eta(3.0) == 0.0
    assert window.eta(0.0) == 0.0
    assert window.eta(3.5) == 0.0


def test_even_and_bounded():
    xi = np.linspace(-4, 4, 2001)
    v = window.eta(xi)
    assert np.all(v >= 0.0) and np.all(v <= 1.0)
    assert np.abs(v - window.eta(-xi)).max() == 0.0


def test_ramps_are_affine():
    assert window.eta(1.25) == pytest.approx(0.5)
    assert window.eta(2.5) == pytest.approx(0.5)


def test_partition_sums_to_one_off_zero():
    xi = np.concatenate([np.logspace(-6, 8, 4001), -np.logspace(-3, 5, 100)])
    s = window.partition_sum(xi)
    assert np.abs(s - 1.0).max() <= 1e-12


def test_partition_bounds_on_truncated_range():
    # interior of the covered band still sums into [1, 2]
    k_min, k_max = -3, 12
    xi = np.logspace(np.log10(2.0 ** (k_min + 2)), np.log10(2.0 ** k_max), 10_000)
    s = window.partition_sum(xi, k_min, k_max)
    assert s.min() >= 1.0 - 1e-12
    assert s.max() <= 2.0 + 1e-12


def test_scaled_window_huge_scales():
    # scales near the float exponent limit must not overflow or vanish
    assert window.eta_scaled(1.5 * 2.0 ** 781, 781) == 1.0
    assert window.eta_scaled(2.0 ** 781, 781) == 0.0


def test_inverse_transform_matches_riemann_sum():
    xs = np.array([0.0, 0.1, 0.37, 1.2])
    s = np.linspace(1.0, 3.0, 60_001)
    ds = s[1] - s[0]
    vals = window.eta(s)
    for x, got in zip(xs, window.eta_inverse_transform(xs)):
        ref = 2.0 * np.sum(vals * np.cos(2 * np.pi * s * x)) * ds
        assert got == pytest.approx(ref, abs=5e-6)


def test_inverse_transform_at_zero_is_window_mass():
    # 2 * int_1^3 eta = 2 * (0.25 + 0.5 + 0.5) = 2.5
    assert window.eta_inverse_transform(np.array([0.0]))[0] == pytest.approx(2.5, abs=1e-12)
