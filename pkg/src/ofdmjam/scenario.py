"""Scenario assembly: one record that pins an entire simulation run.

SNR convention (documented here because no single standard exists): the
linear SNR is the average per-receive-antenna legitimate signal energy
per used subcarrier, divided by B * noise_var * (n_data / N). The
signal energy is the analytic expectation over channel realizations
(u_streams * l_taps for unit-energy symbols and unit-variance taps), so
a given SNR maps to a fixed noise variance. BER gaps between scenarios
in dB do not depend on this reference choice.

Jammer receive energy is calibrated per realization: the transmit
variance is scaled so the analytic average receive interference energy,
given the drawn taps, sits exactly rel_energy_db above the analytic
average receive signal energy given the drawn taps.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

from .errors import ConfigError
from .jammer import JammerMode, JammerSpec
from .ofdm import OfdmConfig

SUBSPACE_MODES = ("genie", "estimated")


@dataclass(frozen=True)
class Scenario:
    """Full description of one Monte-Carlo experiment."""

    cfg: OfdmConfig = field(default_factory=OfdmConfig)
    b_antennas: int = 8
    u_streams: int = 2
    l_taps: int = 4
    l_jam: int = 4
    jammer: JammerSpec = field(default_factory=JammerSpec)
    null_dims: int = 1
    snr_grid_db: tuple[float, ...] = tuple(float(s) for s in range(0, 21, 2))
    blocks: int = 2000
    seed: int = 12345
    subspace_mode: str = "genie"
    label: str = ""

    def __post_init__(self):
        if self.b_antennas < 1 or self.u_streams < 1:
            raise ConfigError("b_antennas and u_streams must be >= 1")
        if self.l_taps < 1 or self.l_jam < 1:
            raise ConfigError("l_taps and l_jam must be >= 1")
        if not 0 <= self.null_dims <= self.b_antennas - 1:
            raise ConfigError(
                f"null_dims must lie in [0, {self.b_antennas - 1}], got {self.null_dims}"
            )
        if self.blocks < 1:
            raise ConfigError("blocks must be >= 1")
        if self.subspace_mode not in SUBSPACE_MODES:
            raise ConfigError(f"subspace_mode must be one of {SUBSPACE_MODES}")
        if self.cfg.cp_len < self.l_taps - 1:
            raise ConfigError(
                f"cp_len {self.cfg.cp_len} shorter than l_taps - 1 = {self.l_taps - 1}"
            )
        if self.jammer.mode is not JammerMode.NONE:
            worst = max(self.jammer_tap_counts())
            if self.cfg.cp_len < worst - 1:
                raise ConfigError(
                    f"cp_len {self.cfg.cp_len} shorter than jammer taps - 1 = {worst - 1}"
                )
        object.__setattr__(self, "snr_grid_db", tuple(float(s) for s in self.snr_grid_db))

    def jammer_tap_counts(self) -> tuple[int, ...]:
        """Channel length per jammer antenna; spec override or l_jam."""
        if self.jammer.taps_per_antenna is not None:
            return self.jammer.taps_per_antenna
        return (self.l_jam,) * self.jammer.antennas

    def noise_var(self, snr_db: float) -> float:
        """Per-complex-sample noise variance realizing the documented SNR."""
        if math.isinf(snr_db):
            return 0.0
        expected_signal = self.u_streams * self.l_taps
        snr_lin = 10.0 ** (snr_db / 10.0)
        return expected_signal * self.cfg.n_subcarriers / (
            self.b_antennas * self.cfg.n_data * snr_lin
        )

    @property
    def scenario_id(self) -> str:
        if self.label:
            return self.label
        canon = json.dumps(self.to_dict(), sort_keys=True)
        return hashlib.sha1(canon.encode()).hexdigest()[:12]

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "ofdm": {
                "n_subcarriers": self.cfg.n_subcarriers,
                "cp_len": self.cfg.cp_len,
                "data_subcarriers": list(self.cfg.data_subcarriers),
                "symbols_per_block": self.cfg.symbols_per_block,
            },
            "b_antennas": self.b_antennas,
            "u_streams": self.u_streams,
            "l_taps": self.l_taps,
            "l_jam": self.l_jam,
            "jammer": {
                "mode": self.jammer.mode.value,
                "antennas": self.jammer.antennas,
                "rel_energy_db": self.jammer.rel_energy_db,
                "taps_per_antenna": (
                    list(self.jammer.taps_per_antenna)
                    if self.jammer.taps_per_antenna is not None
                    else None
                ),
            },
            "null_dims": self.null_dims,
            "snr_grid_db": list(self.snr_grid_db),
            "blocks": self.blocks,
            "seed": self.seed,
            "subspace_mode": self.subspace_mode,
        }

    @classmethod
    def from_dict(cls, data: dict) -> "Scenario":
        known = {
            "label", "ofdm", "b_antennas", "u_streams", "l_taps", "l_jam",
            "jammer", "null_dims", "snr_grid_db", "blocks", "seed", "subspace_mode",
        }
        unknown = set(data) - known
        if unknown:
            raise ConfigError(f"unknown scenario keys: {sorted(unknown)}")
        ofdm_data = dict(data.get("ofdm", {}))
        if "data_subcarriers" in ofdm_data:
            ofdm_data["data_subcarriers"] = tuple(ofdm_data["data_subcarriers"])
        jam_data = dict(data.get("jammer", {}))
        if jam_data.get("taps_per_antenna") is not None:
            jam_data["taps_per_antenna"] = tuple(jam_data["taps_per_antenna"])
        kwargs = {k: v for k, v in data.items() if k not in ("ofdm", "jammer")}
        if "snr_grid_db" in kwargs:
            kwargs["snr_grid_db"] = tuple(kwargs["snr_grid_db"])
        return cls(cfg=OfdmConfig(**ofdm_data), jammer=JammerSpec(**jam_data), **kwargs)


def load_scenario(path) -> Scenario:
    path = Path(path)
    try:
        data = json.loads(path.read_text())
    except OSError as exc:
        raise ConfigError(f"cannot read scenario file {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"scenario file {path} is not valid JSON: {exc}") from exc
    return Scenario.from_dict(data)


def save_scenario(sc: Scenario, path) -> None:
    Path(path).write_text(json.dumps(sc.to_dict(), indent=2) + "\n")
