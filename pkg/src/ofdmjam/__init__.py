"""MIMO-OFDM link simulator for jammer interference-rank analysis.

Quantifies how a single-antenna jammer that ignores the cyclic-prefix
framing of an OFDM system raises its per-subcarrier interference rank
to min(receive antennas, channel taps), and evaluates projection-based
spatial nulling against compliant and free-running jammers.
"""

from .analysis import SingularFractionStats, aggregate_stats, measured_rank, singular_fractions
from .channel import (
    ChannelRealization,
    FreqResponse,
    add_noise,
    apply_channel,
    draw_channel,
    freq_response,
)
from .errors import ConfigError, DimensionError, FramingError
from .jammer import (
    EffectiveJammerChannel,
    JammerMode,
    JammerSpec,
    effective_channel,
    effective_channel_bank,
    effective_input,
    gen_jammer_stream,
    numerical_rank,
    prefix_columns,
    rank_threshold,
    windowed_conv_matrix,
)
from .ofdm import (
    OfdmConfig,
    add_cyclic_prefix,
    default_data_subcarriers,
    dft,
    idft,
    strip_and_window,
)
from .output import emit_results, read_results_csv, write_fractions_csv, write_results_csv
from .receiver import (
    ProjectionBank,
    SubcarrierGrid,
    estimate_interference_basis,
    grid_from_stream,
    project_channels,
    project_grid,
    qpsk_demap,
    qpsk_map,
    zf_detect,
    zf_detect_grid,
)
from .scenario import Scenario, load_scenario, save_scenario
from .sim import BlockResult, SimResult, block_rng, jammer_only_grid, run_block, sweep

__version__ = "0.1.0"

__all__ = [
    "BlockResult",
    "ChannelRealization",
    "ConfigError",
    "DimensionError",
    "EffectiveJammerChannel",
    "FramingError",
    "FreqResponse",
    "JammerMode",
    "JammerSpec",
    "OfdmConfig",
    "ProjectionBank",
    "Scenario",
    "SimResult",
    "SingularFractionStats",
    "SubcarrierGrid",
    "add_cyclic_prefix",
    "add_noise",
    "aggregate_stats",
    "apply_channel",
    "block_rng",
    "default_data_subcarriers",
    "dft",
    "draw_channel",
    "effective_channel",
    "effective_channel_bank",
    "effective_input",
    "emit_results",
    "estimate_interference_basis",
    "freq_response",
    "gen_jammer_stream",
    "grid_from_stream",
    "idft",
    "jammer_only_grid",
    "load_scenario",
    "measured_rank",
    "numerical_rank",
    "prefix_columns",
    "project_channels",
    "project_grid",
    "qpsk_demap",
    "qpsk_map",
    "rank_threshold",
    "read_results_csv",
    "run_block",
    "save_scenario",
    "singular_fractions",
    "strip_and_window",
    "sweep",
    "windowed_conv_matrix",
    "write_fractions_csv",
    "write_results_csv",
    "zf_detect",
    "zf_detect_grid",
]
