"""Negotiated fishery harvests, viability analysis and harvest-control simulation."""

from ._fishvia import (
    EconParams,
    Scenario,
    check_viability,
    critical_levels,
    equilibrium,
    events_json,
    load_scenario,
    parse_scenario,
    r_hat,
    simulate,
    total_harvest,
    trajectory_csv,
    verify,
)

__all__ = [
    "EconParams",
    "Scenario",
    "check_viability",
    "critical_levels",
    "equilibrium",
    "events_json",
    "load_scenario",
    "parse_scenario",
    "r_hat",
    "simulate",
    "total_harvest",
    "trajectory_csv",
    "verify",
]
