import numpy as np
import pytest
from numpy.testing import assert_allclose

from ofdmjam import (
    ConfigError,
    DimensionError,
    FramingError,
    OfdmConfig,
    add_cyclic_prefix,
    default_data_subcarriers,
    dft,
    idft,
    strip_and_window,
)

from helpers import complex_gaussian, cyclic_conv, linear_conv


def test_dft_impulse_is_flat():
    assert_allclose(dft(np.array([1.0, 0, 0, 0])), np.full(4, 0.5), atol=1e-15)


def test_dft_dc_input():
    assert_allclose(dft(np.ones(4)), [2.0, 0, 0, 0], atol=1e-15)


def test_idft_dc_bin():
    assert_allclose(idft(np.array([2.0, 0, 0, 0])), np.ones(4), atol=1e-15)


def test_idft_single_bin_is_complex_exponential():
    n, k = 8, 3
    x = idft(np.eye(n)[k])
    expected = np.exp(2j * np.pi * k * np.arange(n) / n) / np.sqrt(n)
    assert_allclose(x, expected, atol=1e-14)
    assert_allclose(np.abs(x), np.full(n, 1 / np.sqrt(n)), atol=1e-14)


def test_round_trips():
    rng = np.random.default_rng(0)
    x = complex_gaussian(rng, 64)
    assert_allclose(idft(dft(x)), x, rtol=1e-12, atol=1e-14)
    assert_allclose(dft(idft(x)), x, rtol=1e-12, atol=1e-14)


def test_unitarity():
    rng = np.random.default_rng(1)
    for _ in range(20):
        x = complex_gaussian(rng, 64)
        assert abs(np.linalg.norm(dft(x)) - np.linalg.norm(x)) < 1e-10 * np.linalg.norm(x)


def test_add_cyclic_prefix_small_example():
    cfg = OfdmConfig(n_subcarriers=4, cp_len=2, data_subcarriers=(1, 2))
    a, b, c, d = 1 + 2j, -3j, 0.5, 2 - 1j
    out = add_cyclic_prefix(np.array([a, b, c, d]), cfg)
    assert_allclose(out, [c, d, a, b, c, d])


def test_add_cyclic_prefix_zero_length():
    cfg = OfdmConfig(n_subcarriers=4, cp_len=0, data_subcarriers=(1,))
    x = np.arange(4.0)
    out = add_cyclic_prefix(x, cfg)
    assert_allclose(out, x)
    out[0] = 99  # must be a copy
    assert x[0] == 0


def test_add_cyclic_prefix_index_check():
    cfg = OfdmConfig()
    x = complex_gaussian(np.random.default_rng(2), 64)
    out = add_cyclic_prefix(x, cfg)
    assert out.shape == (80,)
    assert_allclose(out[:16], x[48:])
    assert_allclose(out[16:], x)


def test_add_cyclic_prefix_wrong_length():
    cfg = OfdmConfig()
    with pytest.raises(DimensionError):
        add_cyclic_prefix(np.zeros(63), cfg)


def test_strip_and_window_small_example():
    cfg = OfdmConfig(n_subcarriers=4, cp_len=2, data_subcarriers=(1,))
    y = np.arange(7.0)
    assert_allclose(strip_and_window(y, cfg), y[2:6])


def test_strip_and_window_too_short():
    cfg = OfdmConfig(n_subcarriers=4, cp_len=2, data_subcarriers=(1,))
    with pytest.raises(FramingError):
        strip_and_window(np.zeros(5), cfg)


def test_cp_plus_strip_equals_cyclic_convolution():
    # add CP -> linear channel -> window is exactly cyclic convolution
    rng = np.random.default_rng(3)
    cfg = OfdmConfig(n_subcarriers=16, cp_len=5, data_subcarriers=(1, 2, 3))
    for l_taps in (1, 3, 6):
        h = complex_gaussian(rng, l_taps)
        x = complex_gaussian(rng, 16)
        framed = add_cyclic_prefix(x, cfg)
        received = linear_conv(h, framed)
        windowed = strip_and_window(received, cfg)
        h_padded = np.concatenate([h, np.zeros(16 - l_taps)])
        assert_allclose(windowed, cyclic_conv(h_padded, x), rtol=1e-10, atol=1e-12)


def test_cyclic_convolution_theorem():
    rng = np.random.default_rng(4)
    n, l_taps = 32, 7
    h = complex_gaussian(rng, l_taps)
    x = complex_gaussian(rng, n)
    h_padded = np.concatenate([h, np.zeros(n - l_taps)])
    lhs = dft(cyclic_conv(h_padded, x))
    rhs = np.sqrt(n) * dft(h_padded) * dft(x)
    assert_allclose(lhs, rhs, rtol=1e-10, atol=1e-12)


def test_circulant_diagonalization_chain():
    # idft -> CP -> convolve -> window -> dft gives sqrt(N) h_hat[k] s[k]
    rng = np.random.default_rng(5)
    cfg = OfdmConfig()
    n = cfg.n_subcarriers
    for _ in range(10):
        l_taps = int(rng.integers(1, cfg.cp_len + 2))
        h = complex_gaussian(rng, l_taps)
        s = complex_gaussian(rng, n)
        framed = add_cyclic_prefix(idft(s), cfg)
        received = np.convolve(framed, h)
        spectrum = dft(strip_and_window(received, cfg))
        h_hat = dft(np.concatenate([h, np.zeros(n - l_taps)]))
        expected = np.sqrt(n) * h_hat * s
        err = np.linalg.norm(spectrum - expected) / np.linalg.norm(expected)
        assert err < 1e-9


def test_stacked_inputs_pass_through():
    rng = np.random.default_rng(6)
    cfg = OfdmConfig(n_subcarriers=8, cp_len=3, data_subcarriers=(1, 2))
    x = complex_gaussian(rng, (5, 8))
    framed = add_cyclic_prefix(x, cfg)
    assert framed.shape == (5, 11)
    for row_in, row_out in zip(x, framed):
        assert_allclose(row_out, add_cyclic_prefix(row_in, cfg))
    assert_allclose(idft(dft(x)), x, rtol=1e-12, atol=1e-14)


def test_default_data_subcarriers():
    ks = default_data_subcarriers()
    assert len(ks) == 48
    assert len(set(ks)) == 48
    assert 0 not in ks  # null DC
    assert all(k not in ks for k in (7, 21, 43, 57))  # pilot slots unused
    assert all(27 <= k <= 37 or k == 0 for k in set(range(64)) - set(ks) - {7, 21, 43, 57})
    with pytest.raises(ConfigError):
        default_data_subcarriers(32)


@pytest.mark.parametrize(
    "kwargs",
    [
        dict(n_subcarriers=0, data_subcarriers=()),
        dict(cp_len=-1),
        dict(cp_len=65),
        dict(data_subcarriers=(1, 1)),
        dict(data_subcarriers=(64,)),
        dict(data_subcarriers=(-1,)),
        dict(symbols_per_block=0),
    ],
)
def test_config_validation(kwargs):
    with pytest.raises(ConfigError):
        OfdmConfig(**kwargs)
