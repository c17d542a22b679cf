"""Interference subspace measurements: singular fractions and ranks."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ConfigError
from .jammer import rank_threshold
from .receiver import SubcarrierGrid


@dataclass
class SingularFractionStats:
    """Mean and population std of the ordered fractions, each length B."""

    mean: np.ndarray
    std: np.ndarray
    n_samples: int


def singular_fractions(interf: SubcarrierGrid, squared: bool = False) -> np.ndarray:
    """Per-subcarrier fractions of interference on each ordered dimension.

    Returns (K, B): the singular values of each B x M sample matrix,
    descending, normalized to sum to one. With squared=True the
    fractions are energy fractions (squared singular values) instead of
    the plain singular-value ratios used by default.
    """
    if interf.values.size == 0:
        raise ConfigError("empty interference grid")
    b = interf.n_antennas
    sigma = np.linalg.svd(interf.values, compute_uv=False)
    if sigma.shape[1] < b:  # fewer symbols than antennas: trailing dims zero
        pad = np.zeros((sigma.shape[0], b - sigma.shape[1]))
        sigma = np.concatenate([sigma, pad], axis=1)
    if squared:
        sigma = sigma ** 2
    totals = sigma.sum(axis=1, keepdims=True)
    if np.any(totals == 0):
        raise ConfigError("interference grid has an all-zero subcarrier")
    return sigma / totals


def measured_rank(interf: SubcarrierGrid) -> np.ndarray:
    """Numerical rank per subcarrier under the scale-relative cutoff."""
    if interf.values.size == 0:
        raise ConfigError("empty interference grid")
    sigma = np.linalg.svd(interf.values, compute_uv=False)
    shape = interf.values.shape[1:]
    cuts = rank_threshold(sigma[:, 0], shape)
    return (sigma > cuts[:, None]).sum(axis=1)


def aggregate_stats(samples: np.ndarray) -> SingularFractionStats:
    """Mean and population standard deviation per ordered dimension.

    samples is (n, B), one fraction vector per subcarrier/trial sample.
    """
    samples = np.atleast_2d(np.asarray(samples, dtype=float))
    if samples.size == 0:
        raise ConfigError("no samples to aggregate")
    return SingularFractionStats(
        mean=samples.mean(axis=0),
        std=samples.std(axis=0),
        n_samples=samples.shape[0],
    )
