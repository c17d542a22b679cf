"""Receive-side processing: subcarrier grids, subspace nulling, ZF, QPSK.

The receiver works per subcarrier. For each bin it collects the block's
receive vectors into a B x M matrix, estimates the strongest d
interference directions by SVD, and projects both the receive vectors
and the channel onto the orthogonal complement before zero-forcing
detection.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError, DimensionError, FramingError
from .ofdm import OfdmConfig, dft, strip_and_window

# Rank cutoff for flagging an unusable projected channel; generous
# because a borderline ZF inverse only amplifies noise, it does not
# invalidate the block.
_ZF_RANK_RTOL = 1e-9


@dataclass
class SubcarrierGrid:
    """Per-subcarrier receive vectors: values[k_idx] is (B, M)."""

    values: np.ndarray
    subcarriers: np.ndarray

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        self.subcarriers = np.asarray(self.subcarriers, dtype=int)
        if self.values.ndim != 3:
            raise DimensionError("grid values must be (subcarriers, antennas, symbols)")
        if self.values.shape[0] != self.subcarriers.size:
            raise DimensionError("subcarrier index list does not match grid")

    @property
    def n_antennas(self) -> int:
        return self.values.shape[1]

    @property
    def n_symbols(self) -> int:
        return self.values.shape[2]


@dataclass
class ProjectionBank:
    """Orthonormal complement bases: basis[k_idx] is (B, B - d)."""

    basis: np.ndarray
    null_dims: int
    subcarriers: np.ndarray

    def projector(self, k_idx: int) -> np.ndarray:
        """Rank-(B-d) orthogonal projector U U^H for one subcarrier."""
        u = self.basis[k_idx]
        return u @ u.conj().T


def grid_from_stream(stream: np.ndarray, cfg: OfdmConfig) -> SubcarrierGrid:
    """Frame, window, and DFT a (B, M*(N+P)) sample stream onto the data bins."""
    stream = np.atleast_2d(np.asarray(stream))
    frame = cfg.symbol_len
    if stream.shape[-1] % frame != 0:
        raise FramingError(
            f"stream length {stream.shape[-1]} is not a multiple of the frame length {frame}"
        )
    n_rx = stream.shape[0]
    framed = stream.reshape(n_rx, -1, frame)
    spectra = dft(strip_and_window(framed, cfg))  # (B, M, N)
    values = np.moveaxis(spectra, -1, 0)[list(cfg.data_subcarriers)]
    return SubcarrierGrid(values, np.array(cfg.data_subcarriers))


def estimate_interference_basis(interf: SubcarrierGrid, d: int) -> ProjectionBank:
    """Orthonormal complement of the d strongest interference directions.

    Per subcarrier, the left-singular vectors of the B x M interference
    sample matrix are sorted by descending singular value; the basis
    keeps the trailing B - d of them. Ties are left in the order the
    decomposition returns them.
    """
    b = interf.n_antennas
    if not 0 <= d < b:
        raise ConfigError(f"null_dims must lie in [0, {b - 1}], got {d}")
    if interf.n_symbols < d:
        raise ConfigError(
            f"cannot estimate {d} directions from {interf.n_symbols} symbols"
        )
    # full_matrices only matters when M < B; avoid the M x M factor otherwise
    u, _, _ = np.linalg.svd(interf.values, full_matrices=interf.n_symbols < b)
    return ProjectionBank(u[:, :, d:], d, interf.subcarriers.copy())


def project_grid(grid: SubcarrierGrid, bank: ProjectionBank) -> SubcarrierGrid:
    """Apply U^H per subcarrier, reducing the grid to B - d dimensions."""
    if grid.values.shape[0] != bank.basis.shape[0]:
        raise DimensionError("grid and projection bank cover different subcarriers")
    if grid.n_antennas != bank.basis.shape[1]:
        raise DimensionError(
            f"grid has {grid.n_antennas} antennas, bank expects {bank.basis.shape[1]}"
        )
    projected = np.conj(np.swapaxes(bank.basis, 1, 2)) @ grid.values
    return SubcarrierGrid(projected, grid.subcarriers.copy())


def project_channels(channels: np.ndarray, bank: ProjectionBank) -> np.ndarray:
    """Apply U^H to per-subcarrier channel matrices, (K, B, U) -> (K, B-d, U)."""
    channels = np.asarray(channels)
    if channels.shape[0] != bank.basis.shape[0] or channels.shape[1] != bank.basis.shape[1]:
        raise DimensionError("channel stack does not match projection bank")
    return np.conj(np.swapaxes(bank.basis, 1, 2)) @ channels


def zf_detect(channel: np.ndarray, y: np.ndarray) -> np.ndarray:
    """Zero-forcing estimate (H^H H)^-1 H^H y for one subcarrier.

    Raises np.linalg.LinAlgError when the channel is rank deficient; the
    block-level accounting for that case lives in zf_detect_grid.
    """
    channel = np.asarray(channel)
    y = np.asarray(y)
    if channel.ndim != 2 or channel.shape[0] != y.shape[0]:
        raise DimensionError("channel and receive vector dimensions disagree")
    gram = channel.conj().T @ channel
    sv = np.linalg.eigvalsh(gram)
    if sv[0] <= _ZF_RANK_RTOL * max(sv[-1], 0) or sv[-1] == 0:
        raise np.linalg.LinAlgError("rank-deficient channel")
    return np.linalg.solve(gram, channel.conj().T @ y)


def zf_detect_grid(channels: np.ndarray, grid: SubcarrierGrid):
    """Batched ZF across subcarriers.

    channels is (K, n, U) and the grid (K, n, M). Returns estimates
    (K, U, M) and a boolean mask of subcarriers whose projected channel
    was rank deficient; those estimates are zero and their bits are
    later counted as erasures.
    """
    channels = np.asarray(channels)
    k, n, u = channels.shape
    if grid.values.shape[:2] != (k, n):
        raise DimensionError("channel stack and grid dimensions disagree")
    est = np.zeros((k, u, grid.n_symbols), dtype=complex)
    gram = np.conj(np.swapaxes(channels, 1, 2)) @ channels  # (K, U, U)
    if n < u:
        return est, np.ones(k, dtype=bool)
    ev = np.linalg.eigvalsh(gram)
    bad = (ev[:, 0] <= _ZF_RANK_RTOL * np.maximum(ev[:, -1], 0.0)) | (ev[:, -1] == 0)
    ok = ~bad
    if np.any(ok):
        rhs = np.conj(np.swapaxes(channels[ok], 1, 2)) @ grid.values[ok]
        est[ok] = np.linalg.solve(gram[ok], rhs)
    return est, bad


# Gray-mapped unit-energy QPSK; bit pair (0,0) -> (+1+1j)/sqrt(2), first
# bit sets the real sign, second the imaginary sign, 1 -> negative.
_QPSK_SCALE = 1.0 / np.sqrt(2.0)


def qpsk_map(bits: np.ndarray) -> np.ndarray:
    """Map pairs of bits along the last axis to unit-energy QPSK symbols."""
    bits = np.asarray(bits)
    if bits.shape[-1] % 2 != 0:
        raise FramingError(f"bit count {bits.shape[-1]} is odd")
    re = 1.0 - 2.0 * bits[..., 0::2]
    im = 1.0 - 2.0 * bits[..., 1::2]
    return _QPSK_SCALE * (re + 1j * im)


def qpsk_demap(symbols: np.ndarray) -> np.ndarray:
    """Sign-decision demapping; exact inverse of qpsk_map on clean symbols."""
    symbols = np.asarray(symbols)
    bits = np.empty(symbols.shape[:-1] + (2 * symbols.shape[-1],), dtype=np.int64)
    bits[..., 0::2] = symbols.real < 0
    bits[..., 1::2] = symbols.imag < 0
    return bits
