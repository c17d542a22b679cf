"""Monte-Carlo engine: single coherence blocks, sweeps, and aggregation.

Every block owns a private rng derived from (seed, snr index, block
index), so results are bit-identical no matter how blocks are scheduled
across workers. Within a block the draw order is fixed: channel taps,
data bits, jammer stream, receive noise, then (estimated mode only) the
training stream and its noise.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .analysis import SingularFractionStats, aggregate_stats, measured_rank, singular_fractions
from .channel import add_noise, apply_channel, draw_channel, freq_response
from .errors import ConfigError
from .jammer import JammerMode, gen_jammer_stream
from .ofdm import add_cyclic_prefix, idft
from .receiver import (
    SubcarrierGrid,
    estimate_interference_basis,
    grid_from_stream,
    project_channels,
    project_grid,
    qpsk_demap,
    qpsk_map,
    zf_detect_grid,
)
from .scenario import Scenario

WORKERS_ENV = "OFDMJAM_WORKERS"

# Blocks per scheduling unit. Fixed (never derived from the worker
# count) so that float aggregation folds in the same order regardless
# of parallelism.
_CHUNK = 25


@dataclass
class BlockResult:
    """Error counts of one coherence block, plus optional statistics."""

    bits: int
    errors: int
    fractions: np.ndarray | None = None  # (K, B)
    ranks: np.ndarray | None = None  # (K,)


@dataclass
class SimResult:
    """Aggregated sweep output, one entry per SNR grid point."""

    scenario: Scenario
    snr_db: list[float]
    bits: list[int]
    errors: list[int]
    lam_stats: list[SingularFractionStats] | None = None
    rank_hist: list[dict[int, int]] | None = None

    @property
    def ber(self) -> list[float]:
        return [e / b for e, b in zip(self.errors, self.bits)]


def block_rng(sc: Scenario, snr_index: int, block_index: int) -> np.random.Generator:
    """Private generator of one (snr point, block) cell of the sweep."""
    return np.random.default_rng(
        np.random.SeedSequence(sc.seed, spawn_key=(snr_index, block_index))
    )


def _jammer_tx_std(sc: Scenario, legit_taps, jammer_taps) -> float:
    """Transmit scale placing the jammer rel_energy_db above the signal.

    Analytic calibration given the drawn taps: per-sample legitimate
    receive energy is the tx per-sample variance (n_data/N for
    unit-energy symbols) times the total legitimate tap energy, and the
    unit-variance jammer stream contributes its total tap energy.
    """
    signal_energy = (sc.cfg.n_data / sc.cfg.n_subcarriers) * float(
        np.sum(np.abs(legit_taps) ** 2)
    )
    jam_energy = float(np.sum(np.abs(jammer_taps) ** 2))
    if jam_energy == 0:
        raise ConfigError("jammer calibration with all-zero jammer taps")
    ratio = 10.0 ** (sc.jammer.rel_energy_db / 10.0)
    return float(np.sqrt(ratio * signal_energy / jam_energy))


def run_block(
    sc: Scenario,
    snr_db: float,
    rng: np.random.Generator,
    collect_stats: bool = False,
) -> BlockResult:
    """Simulate one coherence block at one SNR point.

    Draws a channel, sends symbols_per_block OFDM symbols of QPSK on the
    data bins, adds the configured jammer and noise, nulls null_dims
    interference directions per subcarrier, zero-forces, and counts bit
    errors. Subcarriers whose projected channel is rank deficient count
    half their bits as errors (erasures).
    """
    cfg = sc.cfg
    m, n = cfg.symbols_per_block, cfg.n_subcarriers
    k_idx = list(cfg.data_subcarriers)
    stream_len = m * cfg.symbol_len
    noise_var = sc.noise_var(snr_db)
    jamming = sc.jammer.mode is not JammerMode.NONE

    ch = draw_channel(
        sc.b_antennas,
        sc.u_streams,
        sc.jammer.antennas,
        sc.l_taps,
        sc.jammer_tap_counts() if jamming else 1,
        rng,
        noise_var=noise_var,
    )

    bits = rng.integers(0, 2, size=(sc.u_streams, m, 2 * len(k_idx)))
    tx_grid = np.zeros((sc.u_streams, m, n), dtype=complex)
    tx_grid[..., k_idx] = qpsk_map(bits)
    tx_stream = add_cyclic_prefix(idft(tx_grid), cfg).reshape(sc.u_streams, stream_len)
    rx = apply_channel(ch.legit_taps, tx_stream)[:, :stream_len]

    if jamming:
        unit_stream = gen_jammer_stream(sc.jammer, cfg, stream_len, rng)
        tx_std = _jammer_tx_std(sc, ch.legit_taps, ch.jammer_taps)
        rx_jam = apply_channel(ch.jammer_taps, tx_std * unit_stream)[:, :stream_len]
        rx = rx + rx_jam
    else:
        rx_jam = np.zeros_like(rx)

    rx_grid = grid_from_stream(add_noise(rx, noise_var, rng), cfg)

    if sc.subspace_mode == "estimated" and jamming:
        # Silent training period: the jammer keeps transmitting, the
        # receiver listens to jammer plus noise for another block.
        train = gen_jammer_stream(sc.jammer, cfg, stream_len, rng)
        rx_train = apply_channel(ch.jammer_taps, tx_std * train)[:, :stream_len]
        interf = grid_from_stream(add_noise(rx_train, noise_var, rng), cfg)
    else:
        interf = grid_from_stream(rx_jam, cfg)

    bank = estimate_interference_basis(interf, sc.null_dims)
    channels = np.sqrt(n) * freq_response(ch, cfg).legit[k_idx]  # (K, B, U)
    estimates, bad = zf_detect_grid(project_channels(channels, bank), project_grid(rx_grid, bank))

    bits_hat = qpsk_demap(np.moveaxis(estimates, 0, -1))  # (U, M, 2K)
    ok_bits = np.repeat(~bad, 2)
    errors = int(np.sum(bits_hat[..., ok_bits] != bits[..., ok_bits]))
    errors += int(np.count_nonzero(bad)) * sc.u_streams * m  # erasures: half of 2*U*M bits

    result = BlockResult(bits=int(bits.size), errors=errors)
    if collect_stats and jamming:
        result.fractions = singular_fractions(interf)
        result.ranks = measured_rank(interf)
    return result


def jammer_only_grid(
    sc: Scenario, snr_db: float, rng: np.random.Generator
) -> "SubcarrierGrid":
    """Interference-plus-noise grid of one block with the transmitter silent.

    Fast path for rank and fraction surveys: same channel, jammer, and
    calibration as run_block, but no data transmission or detection.
    """
    if sc.jammer.mode is JammerMode.NONE:
        raise ConfigError("jammer_only_grid needs a jammer")
    cfg = sc.cfg
    stream_len = cfg.symbols_per_block * cfg.symbol_len
    noise_var = sc.noise_var(snr_db)
    ch = draw_channel(
        sc.b_antennas,
        sc.u_streams,
        sc.jammer.antennas,
        sc.l_taps,
        sc.jammer_tap_counts(),
        rng,
        noise_var=noise_var,
    )
    stream = gen_jammer_stream(sc.jammer, cfg, stream_len, rng)
    tx_std = _jammer_tx_std(sc, ch.legit_taps, ch.jammer_taps)
    rx = apply_channel(ch.jammer_taps, tx_std * stream)[:, :stream_len]
    return grid_from_stream(add_noise(rx, noise_var, rng), cfg)


def _run_chunk(args):
    sc, snr_db, snr_index, block_indices, collect_stats = args
    bits = errors = 0
    fractions = []
    ranks = np.zeros(0, dtype=int)
    for block_index in block_indices:
        res = run_block(sc, snr_db, block_rng(sc, snr_index, block_index), collect_stats)
        bits += res.bits
        errors += res.errors
        if res.fractions is not None:
            fractions.append(res.fractions)
            ranks = np.concatenate([ranks, res.ranks])
    stacked = np.concatenate(fractions) if fractions else None
    return snr_index, block_indices[0], bits, errors, stacked, ranks


def resolve_workers(workers: int | None = None) -> int:
    """Explicit argument, else the OFDMJAM_WORKERS env var, else 1."""
    if workers is None:
        workers = int(os.environ.get(WORKERS_ENV, "1"))
    if workers < 1:
        raise ConfigError(f"worker count must be >= 1, got {workers}")
    return workers


def sweep(
    sc: Scenario,
    workers: int | None = None,
    block_offset: int = 0,
    collect_stats: bool = False,
) -> SimResult:
    """Run the whole SNR grid, blocks x points, and aggregate.

    Block rng streams depend only on (seed, snr index, block index), and
    aggregation folds partial results in fixed index order, so the
    output is identical for any worker count. block_offset shifts the
    block indices, letting disjoint sweeps be merged.
    """
    if not sc.snr_grid_db:
        raise ConfigError("scenario has an empty SNR grid")
    workers = resolve_workers(workers)

    tasks = []
    for snr_index, snr_db in enumerate(sc.snr_grid_db):
        for start in range(block_offset, block_offset + sc.blocks, _CHUNK):
            stop = min(start + _CHUNK, block_offset + sc.blocks)
            tasks.append((sc, snr_db, snr_index, list(range(start, stop)), collect_stats))

    if workers == 1:
        outputs = [_run_chunk(t) for t in tasks]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outputs = list(pool.map(_run_chunk, tasks))
    outputs.sort(key=lambda out: (out[0], out[1]))

    n_snr = len(sc.snr_grid_db)
    bits = [0] * n_snr
    errors = [0] * n_snr
    fractions: list[list[np.ndarray]] = [[] for _ in range(n_snr)]
    hists: list[dict[int, int]] = [{} for _ in range(n_snr)]
    for snr_index, _, chunk_bits, chunk_errors, lam, ranks in outputs:
        bits[snr_index] += chunk_bits
        errors[snr_index] += chunk_errors
        if lam is not None:
            fractions[snr_index].append(lam)
            for r in ranks:
                hists[snr_index][int(r)] = hists[snr_index].get(int(r), 0) + 1

    have_stats = any(fractions)
    return SimResult(
        scenario=sc,
        snr_db=list(sc.snr_grid_db),
        bits=bits,
        errors=errors,
        lam_stats=(
            [aggregate_stats(np.concatenate(f)) if f else None for f in fractions]
            if have_stats
            else None
        ),
        rank_hist=hists if have_stats else None,
    )
