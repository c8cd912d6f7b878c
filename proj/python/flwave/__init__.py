"""Darboux-transformation wave generator for the two-component (2+1)-dimensional Fokas-Lenells equation."""

from ._flwave import (
    ConfigError,
    DomainError,
    FlwaveError,
    IoError,
    NumericError,
    closed_form_rw1,
    critical_lambda,
    dispersion,
    evaluate_point,
    evaluate_scenario,
    run_cli,
    scenario_info,
    scenario_names,
    verify,
)

__all__ = [
    "ConfigError",
    "DomainError",
    "FlwaveError",
    "IoError",
    "NumericError",
    "closed_form_rw1",
    "critical_lambda",
    "dispersion",
    "evaluate_point",
    "evaluate_scenario",
    "run_cli",
    "scenario_info",
    "scenario_names",
    "verify",
]
