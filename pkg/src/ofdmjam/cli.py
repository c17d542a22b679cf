"""Command-line front end.

Subcommands:
  simulate      BER sweep of one scenario, results to CSV + JSON.
  analyze-rank  measured interference ranks over (antennas, taps) pairs.
  fractions     ordered singular-fraction statistics of the interference.

Scenario values come from CLI flags first, then the --scenario JSON
file, then package defaults. OFDMJAM_WORKERS sets the number of worker
processes (results do not depend on it).
"""

from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

import numpy as np

from .analysis import measured_rank
from .errors import ConfigError
from .jammer import JammerSpec
from .ofdm import OfdmConfig
from .output import emit_results
from .scenario import Scenario, load_scenario
from .sim import jammer_only_grid, sweep

_JAMMER_ANTENNAS = {"none": 0, "compliant": 1, "violating": 1}


def _parse_snr(text: str) -> tuple[float, ...]:
    """Grid spec 'A:B:STEP' (inclusive) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        return (float(parts[0]),)
    if len(parts) != 3:
        raise ConfigError(f"--snr expects A:B:STEP or a single value, got {text!r}")
    lo, hi, step = (float(p) for p in parts)
    if step <= 0:
        raise ConfigError(f"--snr step must be positive, got {step}")
    return tuple(np.arange(lo, hi + step / 2, step))


def _parse_pairs(text: str) -> list[tuple[int, int]]:
    pairs = []
    for chunk in text.split(","):
        try:
            b, l = chunk.split(":")
            pairs.append((int(b), int(l)))
        except ValueError as exc:
            raise ConfigError(f"--pairs expects B:L[,B:L...], got {text!r}") from exc
    return pairs


def _scenario_from_args(args) -> Scenario:
    data = load_scenario(args.scenario).to_dict() if args.scenario else {}
    if getattr(args, "jammer", None) is not None:
        jam = data.setdefault("jammer", {})
        jam["mode"] = args.jammer
        # The file's antenna count / tap list may not fit the new mode.
        jam["antennas"] = _JAMMER_ANTENNAS[args.jammer]
        jam["taps_per_antenna"] = None
    if getattr(args, "null_dims", None) is not None:
        data["null_dims"] = args.null_dims
    if getattr(args, "snr", None) is not None:
        data["snr_grid_db"] = list(_parse_snr(args.snr))
    if getattr(args, "blocks", None) is not None:
        data["blocks"] = args.blocks
    if getattr(args, "seed", None) is not None:
        data["seed"] = args.seed
    if getattr(args, "subspace", None) is not None:
        data["subspace_mode"] = args.subspace
    if getattr(args, "label", None) is not None:
        data["label"] = args.label
    return Scenario.from_dict(data)


def _add_scenario_flags(parser: argparse.ArgumentParser, include_null_dims=True):
    parser.add_argument("--scenario", type=Path, help="scenario JSON file")
    parser.add_argument("--jammer", choices=["none", "compliant", "violating"])
    if include_null_dims:
        parser.add_argument("--null-dims", dest="null_dims", type=int, metavar="D")
    parser.add_argument("--snr", help="grid A:B:STEP in dB, or a single value")
    parser.add_argument("--blocks", type=int, metavar="N")
    parser.add_argument("--seed", type=int, metavar="S")
    parser.add_argument("--subspace", choices=["genie", "estimated"])
    parser.add_argument("--label", help="scenario_id override in the CSV output")
    parser.add_argument("--out", type=Path, required=True, help="output directory")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ofdmjam",
        description="MIMO-OFDM jammer nulling simulator",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    sim = sub.add_parser("simulate", help="run a BER sweep")
    _add_scenario_flags(sim)

    rank = sub.add_parser("analyze-rank", help="measured interference ranks per (B, L)")
    rank.add_argument(
        "--pairs",
        default="8:1,8:2,8:4,8:8,2:4",
        help="comma-separated B:L pairs (receive antennas : jammer taps)",
    )
    rank.add_argument("--draws", type=int, default=500, metavar="N")
    rank.add_argument("--seed", type=int, default=12345, metavar="S")
    rank.add_argument("--out", type=Path, required=True, help="output directory")

    frac = sub.add_parser("fractions", help="singular-fraction statistics")
    _add_scenario_flags(frac)

    return parser


def cmd_simulate(args) -> int:
    sc = _scenario_from_args(args)
    res = sweep(sc)
    for path in emit_results(res, args.out):
        print(path)
    return 0


def cmd_analyze_rank(args) -> int:
    cfg = OfdmConfig()
    args.out.mkdir(parents=True, exist_ok=True)
    out_path = args.out / "ranks.csv"
    with out_path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(
            ["b_antennas", "l_taps", "draws", "expected_rank", "conforming_fraction", "mean_rank"]
        )
        for pair_index, (b, l) in enumerate(_parse_pairs(args.pairs)):
            sc = Scenario(
                cfg=cfg,
                b_antennas=b,
                l_jam=l,
                jammer=JammerSpec(mode="violating"),
                null_dims=0,
                snr_grid_db=(float("inf"),),
                blocks=1,
                seed=args.seed,
            )
            expected = min(b, l)
            conforming = 0
            rank_total = 0
            for draw in range(args.draws):
                rng = np.random.default_rng(
                    np.random.SeedSequence(args.seed, spawn_key=(pair_index, draw))
                )
                ranks = measured_rank(jammer_only_grid(sc, float("inf"), rng))
                conforming += int(np.all(ranks == expected))
                rank_total += int(ranks.sum())
            mean_rank = rank_total / (args.draws * cfg.n_data)
            writer.writerow(
                [b, l, args.draws, expected, repr(conforming / args.draws), repr(mean_rank)]
            )
    print(out_path)
    return 0


def cmd_fractions(args) -> int:
    sc = _scenario_from_args(args)
    if sc.jammer.antennas == 0:
        raise ConfigError("fractions needs a jammer; pass --jammer compliant|violating")
    res = sweep(sc, collect_stats=True)
    for path in emit_results(res, args.out):
        print(path)
    return 0


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    handlers = {
        "simulate": cmd_simulate,
        "analyze-rank": cmd_analyze_rank,
        "fractions": cmd_fractions,
    }
    try:
        return handlers[args.command](args)
    except (ConfigError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
