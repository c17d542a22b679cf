"""Shared test oracles, all deliberately brute force and independent of
the library's own signal paths."""

from __future__ import annotations

import numpy as np


def cyclic_conv(h_padded: np.ndarray, x: np.ndarray) -> np.ndarray:
    """O(N^2) cyclic convolution by direct index arithmetic."""
    n = len(x)
    out = np.zeros(n, dtype=complex)
    for i in range(n):
        for m in range(n):
            out[i] += h_padded[m] * x[(i - m) % n]
    return out


def linear_conv(h: np.ndarray, x: np.ndarray) -> np.ndarray:
    """O(S*L) linear convolution by double loop."""
    out = np.zeros(len(x) + len(h) - 1, dtype=complex)
    for i, hi in enumerate(h):
        for j, xj in enumerate(x):
            out[i + j] += hi * xj
    return out


def complex_gaussian(rng: np.random.Generator, shape):
    return (rng.standard_normal(shape) + 1j * rng.standard_normal(shape)) / np.sqrt(2.0)


def snr_at_ber(snr_db, ber, target: float) -> float:
    """SNR where a monotone-falling BER curve crosses target.

    Linear interpolation in (snr, log10 ber); the curve must bracket the
    target. Zero-BER tail points are ignored.
    """
    pts = [(s, b) for s, b in zip(snr_db, ber) if b > 0]
    for (s0, b0), (s1, b1) in zip(pts, pts[1:]):
        if b0 >= target >= b1:
            t = (np.log10(target) - np.log10(b0)) / (np.log10(b1) - np.log10(b0))
            return s0 + t * (s1 - s0)
    raise AssertionError(
        f"BER curve does not bracket {target}: {list(zip(snr_db, ber))}"
    )
