"""OFDM numerology, unitary transforms, and cyclic-prefix framing.

All transforms use the unitary DFT convention (1/sqrt(N) in both
directions), so the sqrt(N) factor that shows up when a channel is
diagonalized is applied explicitly where the channel is applied and is
never hidden inside the transform.

Subcarrier indices are 0-based FFT bins throughout (bin 0 = DC).
Sample-stream operations act on the last axis, so stacks of sequences
(antennas, symbols) pass through unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import ConfigError, DimensionError, FramingError


def default_data_subcarriers(n_subcarriers: int = 64) -> tuple[int, ...]:
    """48-of-64 data bin layout in the 802.11 style.

    Guard bands at the spectrum edges, null DC, and the four legacy
    pilot positions (+/-7, +/-21) left unused. Only defined for 64 bins;
    other sizes must supply an explicit set.
    """
    if n_subcarriers != 64:
        raise ConfigError(
            f"no default data-subcarrier layout for N={n_subcarriers}; pass one explicitly"
        )
    skip = {7, 21}
    positive = [k for k in range(1, 27) if k not in skip]
    negative = [64 - k for k in reversed(positive)]
    return tuple(positive + negative)


@dataclass(frozen=True)
class OfdmConfig:
    """Static OFDM numerology: FFT size, CP length, data bins, block length."""

    n_subcarriers: int = 64
    cp_len: int = 16
    data_subcarriers: tuple[int, ...] = field(
        default_factory=default_data_subcarriers
    )
    symbols_per_block: int = 50

    def __post_init__(self):
        n, p = self.n_subcarriers, self.cp_len
        if n < 1:
            raise ConfigError(f"n_subcarriers must be positive, got {n}")
        if p < 0:
            raise ConfigError(f"cp_len must be non-negative, got {p}")
        if p > n:
            raise ConfigError(f"cp_len {p} exceeds n_subcarriers {n}")
        if self.symbols_per_block < 1:
            raise ConfigError("symbols_per_block must be positive")
        ks = tuple(int(k) for k in self.data_subcarriers)
        if len(set(ks)) != len(ks):
            raise ConfigError("data_subcarriers contains duplicates")
        if any(k < 0 or k >= n for k in ks):
            raise ConfigError(f"data_subcarriers must lie in [0, {n})")
        object.__setattr__(self, "data_subcarriers", ks)

    @property
    def symbol_len(self) -> int:
        """Samples per OFDM symbol including the cyclic prefix."""
        return self.n_subcarriers + self.cp_len

    @property
    def n_data(self) -> int:
        return len(self.data_subcarriers)


def dft(x: np.ndarray) -> np.ndarray:
    """Unitary DFT along the last axis; preserves the l2 norm."""
    x = np.asarray(x)
    return np.fft.fft(x, axis=-1) / np.sqrt(x.shape[-1])


def idft(values: np.ndarray) -> np.ndarray:
    """Unitary inverse DFT along the last axis; exact inverse of dft."""
    values = np.asarray(values)
    return np.fft.ifft(values, axis=-1) * np.sqrt(values.shape[-1])


def add_cyclic_prefix(x: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """Prepend the last cp_len samples of each length-N sequence to itself."""
    x = np.asarray(x)
    n, p = cfg.n_subcarriers, cfg.cp_len
    if x.shape[-1] != n:
        raise DimensionError(f"expected length {n} on last axis, got {x.shape[-1]}")
    if p == 0:
        return x.copy()
    return np.concatenate([x[..., n - p:], x], axis=-1)


def strip_and_window(y: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """Drop the CP portion and any trailing reverberation of a receive frame.

    Keeps samples [cp_len, cp_len + N) of the last axis, i.e. the window
    whose DFT diagonalizes a channel of up to cp_len + 1 taps.
    """
    y = np.asarray(y)
    n, p = cfg.n_subcarriers, cfg.cp_len
    if y.shape[-1] < n + p:
        raise FramingError(
            f"need at least {n + p} samples to window, got {y.shape[-1]}"
        )
    return y[..., p:p + n]
