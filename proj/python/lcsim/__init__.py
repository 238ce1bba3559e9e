"""Longest-chain security simulator: recursions, bounds, and experiments."""

from ._lcsim import (
    balanced_fork_exists,
    chain_quality_bound,
    compute_params,
    extensive_bounds,
    exponential_boundary,
    figure1_csv,
    margin_trace,
    observer_transform,
    oracle_csv,
    oracle_reach_margin,
    oracle_suite,
    reach_trace,
    run_config,
    settlement_bound,
    statistical_suite,
    synchronous_threshold,
    trace_dump,
)

__all__ = [
    "balanced_fork_exists",
    "chain_quality_bound",
    "compute_params",
    "extensive_bounds",
    "exponential_boundary",
    "figure1_csv",
    "margin_trace",
    "observer_transform",
    "oracle_csv",
    "oracle_reach_margin",
    "oracle_suite",
    "reach_trace",
    "run_config",
    "settlement_bound",
    "statistical_suite",
    "synchronous_threshold",
    "trace_dump",
]
