"""Tests for the synthetic generators and noise models.

Statistical checks compare sample statistics against closed-form
moments (Bessel ratios for vMF, exp(-sigma^2/2) for wrapped Gaussian)
with fixed seeds, so they are deterministic despite being statistical.
"""

import numpy as np
import pytest
import scipy.special

from spheretv import Signal
from spheretv.synth import (
    NoiseModel,
    Rng,
    add_gaussian,
    add_vmf,
    add_wrapped_gaussian,
    circle_profile_angle,
    gen_barcode,
    gen_circle_image,
    gen_circle_signal_1d,
    gen_qrcode,
    gen_rgb_image,
    gen_so3_image,
    perturb_so3_vmf,
    sample_vmf,
)


def test_rng_determinism_and_derivation():
    a = Rng(42).gen.normal(0.0, 1.0, 10)
    b = Rng(42).gen.normal(0.0, 1.0, 10)
    assert np.array_equal(a, b)
    c = Rng(42).derive(0).gen.normal(0.0, 1.0, 10)
    d = Rng(42).derive(1).gen.normal(0.0, 1.0, 10)
    assert not np.array_equal(c, d)
    assert not np.array_equal(a, c)
    # derivation is path-dependent, not order-dependent
    assert np.array_equal(
        Rng(42).derive(3).derive(1).gen.normal(0.0, 1.0, 4),
        Rng(42).derive(3).derive(1).gen.normal(0.0, 1.0, 4),
    )
    assert "seed=42" in repr(Rng(42).derive(5))


def test_noise_model_validation_and_dispatch():
    with pytest.raises(ValueError):
        NoiseModel("gaussian")
    with pytest.raises(ValueError):
        NoiseModel("von_mises_fisher", sigma=1.0)
    with pytest.raises(ValueError):
        NoiseModel("salt_pepper", sigma=1.0)
    x = gen_circle_signal_1d(50)
    m = NoiseModel("wrapped_gaussian", sigma=0.3)
    out = m.apply(x, Rng(1))
    assert np.array_equal(out.values, add_wrapped_gaussian(x, 0.3, Rng(1)).values)


def test_barcode_structure():
    bc = gen_barcode(12, 5, Rng(2))
    assert bc.values.shape == (1, 60)
    assert set(np.unique(bc.values)) <= {-1.0, 1.0}
    bars = bc.values[0].reshape(12, 5)
    assert np.all(bars == bars[:, :1])  # constant within each bar
    assert np.array_equal(bc.values, gen_barcode(12, 5, Rng(2)).values)
    with pytest.raises(ValueError):
        gen_barcode(0, 5, Rng(2))


def test_qrcode_structure():
    sig, graph = gen_qrcode(4, 3, Rng(3))
    assert sig.values.shape == (1, 144)
    assert graph.kind == "grid"
    assert graph.grid_shape == (12, 12)
    img = sig.values[0].reshape(12, 12)
    blocks = img.reshape(4, 3, 4, 3)
    assert np.all(blocks == blocks[:, :1, :, :1])  # constant within blocks
    assert set(np.unique(img)) <= {-1.0, 1.0}


def test_circle_profile_hand_values():
    assert circle_profile_angle(0.0) == pytest.approx(-1.0)
    assert circle_profile_angle(0.2) == pytest.approx(-0.2)
    assert circle_profile_angle(0.3) == pytest.approx(2.0)
    assert circle_profile_angle(0.65) == pytest.approx(-0.5)
    # jump sizes at the two discontinuities
    eps = 1e-9
    assert circle_profile_angle(0.3) - circle_profile_angle(0.3 - eps) == pytest.approx(
        1.8, abs=1e-6
    )
    assert circle_profile_angle(0.65) - circle_profile_angle(0.65 - eps) == pytest.approx(
        -1.975, abs=1e-6
    )


def test_circle_signal_1d():
    sig = gen_circle_signal_1d(200)
    assert sig.values.shape == (2, 200)
    assert sig.is_sphere_valued()
    theta = np.arctan2(sig.values[1], sig.values[0])
    assert theta[0] == pytest.approx(-1.0)


def test_circle_image_regions():
    sig = gen_circle_image(8, 8)
    assert sig.is_sphere_valued()
    theta = np.arctan2(sig.values[1], sig.values[0]).reshape(8, 8)
    assert np.allclose(theta[:4, :4], 0.3)
    assert np.allclose(theta[:4, 4:], 2.2)
    assert np.allclose(theta[4:, :4], -1.8)
    # the fourth quadrant is a smooth gradient, not a constant
    assert np.ptp(theta[4:, 4:]) > 0.5


def test_so3_image_is_canonical_unit_quaternions():
    sig = gen_so3_image(16, 16)
    assert sig.values.shape == (4, 256)
    assert sig.is_sphere_valued()
    assert np.all(sig.values[0] > 0.0)  # scalar part positive by construction
    # the centered disk carries its own region
    img = sig.values[:, :].reshape(4, 16, 16)
    assert not np.allclose(img[:, 8, 8], img[:, 0, 0])


def test_rgb_image_regions():
    img = gen_rgb_image(10, 12)
    assert img.shape == (10, 12, 3)
    assert img.min() >= 0.0 and img.max() <= 1.0
    assert np.allclose(img[0, 0], (0.80, 0.20, 0.15))
    assert np.allclose(img[0, 11], (0.15, 0.70, 0.25))
    assert np.allclose(img[9, 0], (0.20, 0.30, 0.85))
    assert np.allclose(img[5, 6], (0.75, 0.70, 0.20))  # disk center


def test_add_gaussian_moments():
    x = Signal(np.zeros((1, 200000)))
    noisy = add_gaussian(x, 0.7, Rng(4))
    assert float(np.mean(noisy.values)) == pytest.approx(0.0, abs=0.01)
    assert float(np.std(noisy.values)) == pytest.approx(0.7, rel=0.02)
    with pytest.raises(ValueError):
        add_gaussian(x, 0.0, Rng(4))


def test_wrapped_gaussian_resultant_length():
    n = 50000
    x = Signal(np.tile([[1.0], [0.0]], (1, n)))
    noisy = add_wrapped_gaussian(x, 0.5, Rng(5))
    assert noisy.is_sphere_valued()
    # E[cos(angle)] for a wrapped normal is exp(-sigma^2 / 2)
    resultant = float(np.mean(noisy.values[0]))
    assert resultant == pytest.approx(np.exp(-0.125), rel=0.01)
    with pytest.raises(ValueError):
        add_wrapped_gaussian(Signal(np.zeros((1, 4))), 0.5, Rng(5))


def test_vmf_resultant_length_s3():
    # mean resultant on the 3-sphere is I_2(kappa) / I_1(kappa)
    n = 30000
    mu = np.array([0.5, 0.5, 0.5, 0.5])
    x = Signal(np.tile(mu[:, None], (1, n)))
    noisy = add_vmf(x, 8.0, Rng(6))
    assert noisy.is_sphere_valued()
    resultant = float(np.mean(np.sum(noisy.values * mu[:, None], axis=0)))
    predicted = scipy.special.iv(2.0, 8.0) / scipy.special.iv(1.0, 8.0)
    assert resultant == pytest.approx(predicted, rel=0.01)


def test_sample_vmf_single_draw_and_validation():
    v = sample_vmf(np.array([0.0, 3.0, 0.0]), 50.0, Rng(7))
    assert np.linalg.norm(v) == pytest.approx(1.0, abs=1e-12)
    assert v[1] > 0.9  # concentrated around the (normalized) mean
    with pytest.raises(ValueError):
        sample_vmf(np.zeros(3), 1.0, Rng(7))
    with pytest.raises(ValueError):
        sample_vmf(np.array([1.0]), 1.0, Rng(7))
    with pytest.raises(ValueError):
        sample_vmf(np.array([1.0, 0.0]), 0.0, Rng(7))
    with pytest.raises(ValueError):
        add_vmf(Signal(np.full((3, 2), 0.2)), 1.0, Rng(7))


def test_perturb_so3_keeps_unit_canonical_quaternions():
    truth = gen_so3_image(12, 12)
    noisy = perturb_so3_vmf(truth, 10.0, 10.0, Rng(8))
    assert noisy.is_sphere_valued()
    lead = noisy.values[np.argmax(noisy.values != 0.0, axis=0), np.arange(144)]
    assert np.all(lead >= 0.0)
    # concentrated noise stays near the truth up to quaternion sign
    err = np.minimum(
        np.sum((noisy.values - truth.values) ** 2, axis=0),
        np.sum((noisy.values + truth.values) ** 2, axis=0),
    )
    assert float(np.mean(err)) < 0.2
    with pytest.raises(ValueError):
        perturb_so3_vmf(gen_circle_image(4, 4), 10.0, 10.0, Rng(8))
