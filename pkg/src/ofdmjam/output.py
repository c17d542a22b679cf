"""Result emission: BER CSV, fraction-statistics CSV, scenario JSON."""

from __future__ import annotations

import csv
from pathlib import Path

from .analysis import SingularFractionStats
from .sim import SimResult
from .scenario import save_scenario

RESULTS_HEADER = ["scenario_id", "jammer_mode", "null_dims", "snr_db", "bits", "bit_errors", "ber"]
FRACTIONS_HEADER = ["dim_index", "mean_fraction", "std_fraction"]


def _open_for_write(path: Path):
    try:
        return path.open("w", newline="")
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def write_results_csv(res: SimResult, path) -> None:
    """One row per SNR point; ber is exactly bit_errors / bits."""
    path = Path(path)
    sc = res.scenario
    with _open_for_write(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(RESULTS_HEADER)
        for snr, bits, errors in zip(res.snr_db, res.bits, res.errors):
            writer.writerow(
                [
                    sc.scenario_id,
                    sc.jammer.mode.value,
                    sc.null_dims,
                    repr(float(snr)),
                    bits,
                    errors,
                    repr(errors / bits),
                ]
            )


def write_fractions_csv(stats: SingularFractionStats, path) -> None:
    """Ordered-dimension fraction statistics, one row per dimension."""
    path = Path(path)
    with _open_for_write(path) as fh:
        writer = csv.writer(fh)
        writer.writerow(FRACTIONS_HEADER)
        for dim, (mean, std) in enumerate(zip(stats.mean, stats.std)):
            writer.writerow([dim, repr(float(mean)), repr(float(std))])


def read_results_csv(path) -> list[dict]:
    """Parse a results CSV back into typed rows (testing / reuse)."""
    rows = []
    with Path(path).open(newline="") as fh:
        for row in csv.DictReader(fh):
            rows.append(
                {
                    "scenario_id": row["scenario_id"],
                    "jammer_mode": row["jammer_mode"],
                    "null_dims": int(row["null_dims"]),
                    "snr_db": float(row["snr_db"]),
                    "bits": int(row["bits"]),
                    "bit_errors": int(row["bit_errors"]),
                    "ber": float(row["ber"]),
                }
            )
    return rows


def emit_results(res: SimResult, out_dir) -> list[Path]:
    """Write results.csv, scenario.json, and fraction CSVs when collected.

    Returns the written paths. With statistics at a single SNR point the
    fraction file is fractions.csv; with several points each gets a
    fractions_<snr>db.csv.
    """
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []

    results_path = out_dir / "results.csv"
    write_results_csv(res, results_path)
    written.append(results_path)

    scenario_path = out_dir / "scenario.json"
    save_scenario(res.scenario, scenario_path)
    written.append(scenario_path)

    if res.lam_stats is not None:
        present = [(snr, st) for snr, st in zip(res.snr_db, res.lam_stats) if st is not None]
        single = len(present) == 1
        for snr, stats in present:
            name = "fractions.csv" if single else f"fractions_{snr:g}db.csv"
            frac_path = out_dir / name
            write_fractions_csv(stats, frac_path)
            written.append(frac_path)
    return written
