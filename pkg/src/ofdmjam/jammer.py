"""Jammer transmit models and their effective per-subcarrier channels.

A jammer that keeps the receiver's cyclic-prefix timing looks like a
rank-1 disturbance on every subcarrier. One that free-runs does not:
its windowed, DFT'd contribution on bin k factors exactly as

    contribution[k] = M[k] @ v[k]

where M[k] is B x (P+1), built from the frequency response plus a
prefix-deviation block, and v[k] stacks the bin-k DFT sample of the
frame with the frame's deviation from its own cyclic extension. The
rank of M[k] is at most min(B, L) for an L-tap link, which is what the
nulling experiments in this package quantify.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .channel import ChannelRealization, freq_response
from .errors import ConfigError, DimensionError, FramingError
from .ofdm import OfdmConfig, add_cyclic_prefix, dft, idft

# Relative singular-value cutoff for numerical rank decisions. Scale
# relative, so energy calibration of the jammer does not move ranks.
RANK_REL_TOL = 2.0 ** -40


class JammerMode(str, enum.Enum):
    NONE = "none"
    COMPLIANT = "compliant"
    VIOLATING = "violating"


@dataclass(frozen=True)
class JammerSpec:
    """Jammer behavior: framing mode, antenna count, receive-energy offset.

    rel_energy_db is the target average receive energy relative to the
    legitimate signal. taps_per_antenna optionally fixes each antenna's
    channel length; None defers to the scenario default.
    """

    mode: JammerMode = JammerMode.VIOLATING
    antennas: int = 1
    rel_energy_db: float = 25.0
    taps_per_antenna: tuple[int, ...] | None = None

    def __post_init__(self):
        mode = JammerMode(self.mode)
        object.__setattr__(self, "mode", mode)
        if mode is JammerMode.NONE and self.antennas != 0:
            raise ConfigError("mode 'none' requires antennas == 0")
        if mode is JammerMode.COMPLIANT and self.antennas != 1:
            raise ConfigError("compliant mode models a single-antenna jammer")
        if mode is JammerMode.VIOLATING and self.antennas < 1:
            raise ConfigError("violating mode requires antennas >= 1")
        if self.taps_per_antenna is not None:
            taps = tuple(int(t) for t in self.taps_per_antenna)
            if len(taps) != self.antennas:
                raise ConfigError(
                    f"taps_per_antenna has {len(taps)} entries for {self.antennas} antennas"
                )
            if any(t < 1 for t in taps):
                raise ConfigError("taps_per_antenna entries must be >= 1")
            object.__setattr__(self, "taps_per_antenna", taps)


@dataclass
class EffectiveJammerChannel:
    """Effective channel of one subcarrier: matrix (B, antennas*(P+1)).

    Per antenna the horizontal block is [sqrt(N) * response_k, prefix
    block]; multi-antenna jammers concatenate blocks. Multiplying by the
    stacked effective inputs reproduces the windowed, DFT'd interference
    exactly.
    """

    subcarrier: int
    matrix: np.ndarray
    block_width: int

    @property
    def n_antennas(self) -> int:
        return self.matrix.shape[1] // self.block_width


def gen_jammer_stream(
    spec: JammerSpec, cfg: OfdmConfig, total_len: int, rng: np.random.Generator
) -> np.ndarray:
    """Unit-variance transmit stream, shape (antennas, total_len).

    Violating mode free-runs i.i.d. complex Gaussian samples. Compliant
    mode draws Gaussian frequency symbols per OFDM symbol and emits them
    through the same inverse-DFT + cyclic-prefix framing as the
    legitimate transmitter, so total_len must be a whole number of
    frames. Mode 'none' returns an empty stack.
    """
    if total_len < 1:
        raise FramingError(f"total_len must be positive, got {total_len}")
    if spec.mode is JammerMode.NONE:
        return np.zeros((0, total_len), dtype=complex)
    if spec.mode is JammerMode.VIOLATING:
        scale = np.sqrt(0.5)
        return scale * (
            rng.standard_normal((spec.antennas, total_len))
            + 1j * rng.standard_normal((spec.antennas, total_len))
        )
    frame = cfg.symbol_len
    if total_len % frame != 0:
        raise FramingError(
            f"compliant stream length {total_len} is not a multiple of the frame length {frame}"
        )
    n_sym = total_len // frame
    freq = np.sqrt(0.5) * (
        rng.standard_normal((spec.antennas, n_sym, cfg.n_subcarriers))
        + 1j * rng.standard_normal((spec.antennas, n_sym, cfg.n_subcarriers))
    )
    framed = add_cyclic_prefix(idft(freq), cfg)
    return framed.reshape(spec.antennas, total_len)


def windowed_conv_matrix(taps: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """Matrix mapping one (N+P)-sample frame to its N windowed receive samples.

    Row r carries the reversed taps ending at column r + P, i.e. the
    linear convolution restricted to the receiver's DFT window. The
    first P - L + 1 columns are zero. Requires L <= P + 1.
    """
    taps = np.asarray(taps).ravel()
    n, p, l = cfg.n_subcarriers, cfg.cp_len, taps.size
    if l > p + 1:
        raise ConfigError(f"{l} taps exceed cp_len + 1 = {p + 1}; CP too short")
    mat = np.zeros((n, n + p), dtype=complex)
    rows = np.arange(n)
    for lag in range(l):
        mat[rows, rows + p - lag] = taps[lag]
    return mat


def prefix_columns(mat: np.ndarray) -> np.ndarray:
    """First P columns of a windowed convolution matrix (P = cols - rows)."""
    mat = np.asarray(mat)
    p = mat.shape[1] - mat.shape[0]
    if p < 0:
        raise DimensionError(f"matrix {mat.shape} has fewer columns than rows")
    return mat[:, :p]


def _prefix_response_rows(taps: np.ndarray, cfg: OfdmConfig) -> np.ndarray:
    """All-bin prefix blocks for one rx antenna: row k = dft_row(k) @ prefix."""
    pre = prefix_columns(windowed_conv_matrix(taps, cfg))
    return np.fft.fft(pre, axis=0) / np.sqrt(cfg.n_subcarriers)


def effective_channel(
    ch: ChannelRealization, cfg: OfdmConfig, k: int
) -> EffectiveJammerChannel:
    """Assemble the bin-k effective jammer channel from a realization.

    Each antenna contributes [sqrt(N) * response_k, prefix block]; the
    per-antenna blocks are concatenated horizontally for multi-antenna
    jammers.
    """
    n = cfg.n_subcarriers
    if not 0 <= k < n:
        raise ConfigError(f"subcarrier {k} outside [0, {n})")
    n_rx, n_jam = ch.jammer_taps.shape[:2]
    if n_jam == 0:
        raise ConfigError("realization has no jammer links")
    resp = freq_response(ch, cfg).jammer[k]  # (B, I)
    width = cfg.cp_len + 1
    mat = np.zeros((n_rx, n_jam * width), dtype=complex)
    for i in range(n_jam):
        block = mat[:, i * width:(i + 1) * width]
        block[:, 0] = np.sqrt(n) * resp[:, i]
        for b in range(n_rx):
            block[b, 1:] = _prefix_response_rows(ch.jammer_taps[b, i], cfg)[k]
    return EffectiveJammerChannel(k, mat, width)


def effective_channel_bank(ch: ChannelRealization, cfg: OfdmConfig) -> np.ndarray:
    """Effective channels of every bin at once, shape (N, B, antennas*(P+1))."""
    n = cfg.n_subcarriers
    n_rx, n_jam = ch.jammer_taps.shape[:2]
    if n_jam == 0:
        raise ConfigError("realization has no jammer links")
    resp = freq_response(ch, cfg).jammer  # (N, B, I)
    width = cfg.cp_len + 1
    bank = np.zeros((n, n_rx, n_jam * width), dtype=complex)
    for i in range(n_jam):
        bank[:, :, i * width] = np.sqrt(n) * resp[:, :, i]
        for b in range(n_rx):
            bank[:, b, i * width + 1:(i + 1) * width] = _prefix_response_rows(
                ch.jammer_taps[b, i], cfg
            )
    return bank


def effective_input(w: np.ndarray, cfg: OfdmConfig, k: int) -> np.ndarray:
    """Bin-k effective input of one (N+P)-sample frame of one antenna.

    Entry 0 is the unitary DFT of the frame's data portion at bin k; the
    remaining P entries are the prefix's deviation from the frame's own
    cyclic extension (zero for any prefix-compliant frame).
    """
    w = np.asarray(w).ravel()
    n, p = cfg.n_subcarriers, cfg.cp_len
    if w.size < n + p:
        raise FramingError(f"frame needs {n + p} samples, got {w.size}")
    if not 0 <= k < n:
        raise ConfigError(f"subcarrier {k} outside [0, {n})")
    data = w[p:p + n]
    deviation = w[:p] - w[n:n + p]
    spectrum_k = np.exp(-2j * np.pi * k * np.arange(n) / n) @ data / np.sqrt(n)
    return np.concatenate([[spectrum_k], deviation])


def rank_threshold(sigma_max: float, shape) -> float:
    """Scale-relative cutoff below which singular values count as zero."""
    return max(shape) * sigma_max * RANK_REL_TOL


def numerical_rank(mat: np.ndarray) -> int:
    """Number of singular values above the package-wide relative cutoff."""
    mat = np.asarray(mat)
    if mat.size == 0:
        return 0
    sigma = np.linalg.svd(mat, compute_uv=False)
    if sigma[0] == 0:
        return 0
    return int(np.count_nonzero(sigma > rank_threshold(sigma[0], mat.shape)))
