"""Frequency-selective MIMO channel draws, application, and responses.

Channels are tapped delay lines with i.i.d. unit-variance circularly
symmetric complex Gaussian taps (uniform power-delay profile) held
constant over one coherence block.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError
from .ofdm import OfdmConfig, dft


@dataclass
class ChannelRealization:
    """One block-fading draw of all propagation links.

    legit_taps:  (B, U, L_h) taps from the U transmit antennas.
    jammer_taps: (B, I, L_j) taps from the I jammer antennas; width-0
                 second axis when there is no jammer.
    noise_var:   per-complex-sample receiver noise variance.
    """

    legit_taps: np.ndarray
    jammer_taps: np.ndarray
    noise_var: float = 0.0

    def __post_init__(self):
        if self.legit_taps.ndim != 3 or self.jammer_taps.ndim != 3:
            raise DimensionError("tap tensors must be (rx, tx, taps)")
        if self.jammer_taps.shape[0] != self.legit_taps.shape[0]:
            raise DimensionError("legit and jammer taps disagree on receive antennas")
        if not (np.all(np.isfinite(self.legit_taps)) and np.all(np.isfinite(self.jammer_taps))):
            raise ValueError("channel taps must be finite")
        if self.noise_var < 0:
            raise ConfigError(f"noise_var must be non-negative, got {self.noise_var}")

    @property
    def n_rx(self) -> int:
        return self.legit_taps.shape[0]


@dataclass
class FreqResponse:
    """Per-subcarrier responses: legit (N, B, U) and jammer (N, B, I).

    Entry [k] is the unitary N-point DFT of the zero-padded tap sequence
    of each link, evaluated at bin k.
    """

    legit: np.ndarray
    jammer: np.ndarray


def _complex_normal(rng: np.random.Generator, shape, var: float = 1.0) -> np.ndarray:
    scale = np.sqrt(var / 2.0)
    return scale * (rng.standard_normal(shape) + 1j * rng.standard_normal(shape))


def draw_channel(
    n_rx: int,
    n_tx: int,
    n_jammer: int,
    n_taps: int,
    n_jammer_taps,
    rng: np.random.Generator,
    noise_var: float = 0.0,
) -> ChannelRealization:
    """Draw i.i.d. CN(0,1) taps for every legitimate and jammer link.

    n_jammer_taps may be a single int or one int per jammer antenna; in
    the per-antenna case shorter links are zero-padded to the longest.
    n_jammer = 0 yields a zero-width jammer tensor. The legitimate links
    are drawn first, then the jammer links, so a fixed rng seed pins the
    whole realization.
    """
    if n_rx < 1 or n_tx < 1 or n_taps < 1:
        raise ConfigError("n_rx, n_tx, and n_taps must all be >= 1")
    if n_jammer < 0:
        raise ConfigError("n_jammer must be >= 0")
    taps_per_antenna = (
        [int(n_jammer_taps)] * n_jammer
        if np.isscalar(n_jammer_taps)
        else [int(t) for t in n_jammer_taps]
    )
    if len(taps_per_antenna) != n_jammer:
        raise ConfigError(
            f"got {len(taps_per_antenna)} jammer tap counts for {n_jammer} antennas"
        )
    if any(t < 1 for t in taps_per_antenna):
        raise ConfigError("jammer tap counts must be >= 1")

    legit = _complex_normal(rng, (n_rx, n_tx, n_taps))
    l_max = max(taps_per_antenna, default=1)
    jammer = np.zeros((n_rx, n_jammer, l_max), dtype=complex)
    for i, l_i in enumerate(taps_per_antenna):
        jammer[:, i, :l_i] = _complex_normal(rng, (n_rx, l_i))
    return ChannelRealization(legit, jammer, noise_var)


def apply_channel(taps: np.ndarray, x: np.ndarray) -> np.ndarray:
    """Convolve a (T, S) sample stack through (B, T, L) taps, summing over T.

    Returns the full linear-convolution output, shape (B, S + L - 1).
    """
    taps = np.asarray(taps)
    x = np.atleast_2d(np.asarray(x))
    if taps.ndim != 3:
        raise DimensionError("taps must be (rx, tx, taps)")
    b, t, l = taps.shape
    if x.shape[0] != t:
        raise DimensionError(f"stream has {x.shape[0]} antennas, taps expect {t}")
    s = x.shape[1]
    out = np.zeros((b, s + l - 1), dtype=complex)
    for lag in range(l):
        out[:, lag:lag + s] += taps[:, :, lag] @ x
    return out


def freq_response(ch: ChannelRealization, cfg: OfdmConfig) -> FreqResponse:
    """Unitary N-point DFT of every link's zero-padded taps."""
    n = cfg.n_subcarriers
    for name, taps in (("legit", ch.legit_taps), ("jammer", ch.jammer_taps)):
        if taps.shape[-1] > n:
            raise ConfigError(
                f"{name} channel has {taps.shape[-1]} taps, more than N={n}"
            )
    legit = np.moveaxis(dft(_pad(ch.legit_taps, n)), -1, 0)
    jammer = np.moveaxis(dft(_pad(ch.jammer_taps, n)), -1, 0)
    return FreqResponse(legit, jammer)


def _pad(taps: np.ndarray, n: int) -> np.ndarray:
    padded = np.zeros(taps.shape[:-1] + (n,), dtype=complex)
    padded[..., :taps.shape[-1]] = taps
    return padded


def add_noise(y: np.ndarray, noise_var: float, rng: np.random.Generator) -> np.ndarray:
    """Add i.i.d. CN(0, noise_var) to every complex sample."""
    if noise_var < 0:
        raise ConfigError(f"noise_var must be non-negative, got {noise_var}")
    y = np.asarray(y, dtype=complex)
    if noise_var == 0:
        return y.copy()
    return y + _complex_normal(rng, y.shape, noise_var)
