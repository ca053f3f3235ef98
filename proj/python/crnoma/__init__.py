# SPDX-License-Identifier: Apache-2.0
"""Outage, rate and power-adaptation statistics for a cognitive-radio NOMA uplink."""

from ._core import (
    ConfigError,
    Error,
    Scheme,
    SystemConfig,
    estimate_better_worse,
    estimate_ergodic_rate,
    estimate_outage,
    estimate_p_type2,
    figure_preset_json,
    oracle_outage,
    outage_fsic_pa_approx,
    outage_fsic_pa_exact,
    outage_hsic_pa_approx1,
    outage_hsic_pa_approx2,
    outage_hsic_pa_exact,
    p_better,
    p_type2,
    p_worse_fsic,
    run_sweep_csv,
    simulate_draw,
)

__all__ = [name for name in dir() if not name.startswith("_")]
