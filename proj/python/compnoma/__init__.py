"""CoMP/NOMA downlink Monte Carlo simulator (Python bindings)."""

from ._core import (
    CSV_COLUMNS,
    SCHEMES,
    ConfigError,
    TopologyError,
    __version__,
    beta_fraction,
    channel_gain,
    default_config,
    link_rate,
    mcs_efficiency,
    path_loss,
    preset_config,
    resolve_config,
    run_sweep,
    solve_power_fraction,
    sweep_csv,
    theta_split,
)

__all__ = [
    "CSV_COLUMNS",
    "SCHEMES",
    "ConfigError",
    "TopologyError",
    "__version__",
    "beta_fraction",
    "channel_gain",
    "default_config",
    "link_rate",
    "mcs_efficiency",
    "path_loss",
    "preset_config",
    "resolve_config",
    "run_sweep",
    "solve_power_fraction",
    "sweep_csv",
    "theta_split",
]
