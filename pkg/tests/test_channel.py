import numpy as np
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from ofdmjam import (
    ConfigError,
    DimensionError,
    OfdmConfig,
    add_noise,
    apply_channel,
    draw_channel,
    freq_response,
    strip_and_window,
    windowed_conv_matrix,
)

from helpers import complex_gaussian, linear_conv


def test_draw_is_deterministic():
    a = draw_channel(4, 2, 1, 3, 5, np.random.default_rng(42))
    b = draw_channel(4, 2, 1, 3, 5, np.random.default_rng(42))
    assert_array_equal(a.legit_taps, b.legit_taps)
    assert_array_equal(a.jammer_taps, b.jammer_taps)


def test_tap_moments():
    ch = draw_channel(50, 40, 0, 50, 1, np.random.default_rng(7))
    taps = ch.legit_taps.ravel()  # 1e5 draws
    assert 0.98 < np.mean(np.abs(taps) ** 2) < 1.02
    assert abs(np.mean(taps)) < 0.01


def test_no_jammer_draw():
    ch = draw_channel(4, 2, 0, 3, 1, np.random.default_rng(0))
    assert ch.jammer_taps.shape == (4, 0, 1)


def test_per_antenna_jammer_taps():
    ch = draw_channel(4, 1, 2, 3, [2, 4], np.random.default_rng(1))
    assert ch.jammer_taps.shape == (4, 2, 4)
    assert_array_equal(ch.jammer_taps[:, 0, 2:], 0)  # padded beyond L_0 = 2
    assert np.all(ch.jammer_taps[:, 1, :] != 0)


def test_draw_validation():
    rng = np.random.default_rng(0)
    with pytest.raises(ConfigError):
        draw_channel(0, 1, 0, 1, 1, rng)
    with pytest.raises(ConfigError):
        draw_channel(1, 1, 2, 1, [3], rng)
    with pytest.raises(ConfigError):
        draw_channel(1, 1, 1, 1, 0, rng)


def test_apply_channel_identity():
    x = complex_gaussian(np.random.default_rng(2), (1, 20))
    out = apply_channel(np.ones((1, 1, 1)), x)
    assert_allclose(out, x)


def test_apply_channel_impulse_recovers_taps():
    taps = complex_gaussian(np.random.default_rng(3), (3, 1, 4))
    impulse = np.zeros((1, 6), dtype=complex)
    impulse[0, 0] = 1.0
    out = apply_channel(taps, impulse)
    assert_allclose(out[:, :4], taps[:, 0, :])
    assert_allclose(out[:, 4:], 0, atol=1e-15)


def test_apply_channel_matches_bruteforce():
    rng = np.random.default_rng(4)
    taps = complex_gaussian(rng, (3, 2, 5))
    x = complex_gaussian(rng, (2, 30))
    out = apply_channel(taps, x)
    for b in range(3):
        expected = sum(linear_conv(taps[b, u], x[u]) for u in range(2))
        assert_allclose(out[b], expected, rtol=1e-10, atol=1e-12)


def test_apply_channel_dimension_error():
    with pytest.raises(DimensionError):
        apply_channel(np.ones((2, 2, 1)), np.ones((3, 5)))


def test_freq_response_flat_for_single_tap():
    cfg = OfdmConfig()
    ch = draw_channel(2, 1, 0, 1, 1, np.random.default_rng(5))
    fr = freq_response(ch, cfg).legit  # (N, B, U)
    for b in range(2):
        assert_allclose(fr[:, b, 0], np.full(64, fr[0, b, 0]), rtol=1e-12)


def test_freq_response_pure_delay_is_allpass():
    cfg = OfdmConfig()
    from ofdmjam import ChannelRealization

    taps = np.zeros((1, 1, 2), dtype=complex)
    taps[0, 0, 1] = 1.0
    ch = ChannelRealization(taps, np.zeros((1, 0, 1), dtype=complex))
    fr = freq_response(ch, cfg).legit[:, 0, 0]
    k = np.arange(64)
    assert_allclose(fr, np.exp(-2j * np.pi * k / 64) / 8.0, atol=1e-14)
    assert_allclose(np.abs(fr), 1 / 8.0, atol=1e-14)


def test_freq_response_matches_direct_dft():
    cfg = OfdmConfig()
    ch = draw_channel(3, 2, 1, 4, 4, np.random.default_rng(6))
    fr = freq_response(ch, cfg)
    k = np.arange(64)[:, None]
    lags = np.arange(4)[None, :]
    basis = np.exp(-2j * np.pi * k * lags / 64) / 8.0  # (N, L)
    for b in range(3):
        for u in range(2):
            assert_allclose(fr.legit[:, b, u], basis @ ch.legit_taps[b, u], rtol=1e-10)
        assert_allclose(fr.jammer[:, b, 0], basis @ ch.jammer_taps[b, 0], rtol=1e-10)


def test_freq_response_too_many_taps():
    cfg = OfdmConfig(n_subcarriers=4, cp_len=2, data_subcarriers=(1,))
    ch = draw_channel(1, 1, 0, 5, 1, np.random.default_rng(0))
    with pytest.raises(ConfigError):
        freq_response(ch, cfg)


def test_add_noise_zero_variance_copies():
    y = complex_gaussian(np.random.default_rng(8), (2, 10))
    out = add_noise(y, 0.0, np.random.default_rng(9))
    assert_array_equal(out, y)
    out[0, 0] = 0
    assert y[0, 0] != 0


def test_add_noise_moments():
    rng = np.random.default_rng(10)
    noise_var = 0.37
    out = add_noise(np.zeros(10 ** 6, dtype=complex), noise_var, rng)
    assert noise_var * 0.99 < np.mean(np.abs(out) ** 2) < noise_var * 1.01
    assert noise_var / 2 * 0.99 < np.var(out.real) < noise_var / 2 * 1.01
    assert noise_var / 2 * 0.99 < np.var(out.imag) < noise_var / 2 * 1.01


def test_add_noise_negative_variance():
    with pytest.raises(ConfigError):
        add_noise(np.zeros(3, dtype=complex), -1.0, np.random.default_rng(0))


def test_toeplitz_consistency():
    # convolve + window of an (N+P)-sample frame == windowed conv matrix product
    rng = np.random.default_rng(11)
    cfg = OfdmConfig(n_subcarriers=16, cp_len=5, data_subcarriers=(1,))
    taps = complex_gaussian(rng, 4)
    frame = complex_gaussian(rng, 21)
    received = apply_channel(taps[None, None, :], frame[None, :])[0]
    windowed = strip_and_window(received, cfg)
    mat = windowed_conv_matrix(taps, cfg)
    assert_allclose(windowed, mat @ frame, rtol=1e-10, atol=1e-12)


def test_freq_response_is_pure():
    cfg = OfdmConfig()
    ch = draw_channel(2, 1, 1, 4, 4, np.random.default_rng(12))
    first = freq_response(ch, cfg)
    second = freq_response(ch, cfg)
    assert_array_equal(first.legit, second.legit)
    assert_array_equal(first.jammer, second.jammer)
