"""Weyl-function correlators for photon-irradiated interference experiments."""

from weylcorr._core import (
    ConfigError,
    GuardViolation,
    ModeKind,
    OperatorEnsemble,
    ProductKet,
    StateParseError,
    beat_frequency,
    build_state,
    closed_form_number_correlators,
    correlator,
    default_e_charge,
    displacement_element_coherent,
    displacement_element_fock,
    drive_lambdas,
    ensemble_from_json,
    factorizable_state,
    figure6_summary,
    figure_preset,
    fit_fringe,
    intensity,
    oracle_check,
    oracle_weyl,
    overlap,
    parse_state,
    partial_trace,
    phase_defined,
    phase_shift,
    pure_superposition,
    render_state,
    run_sweep,
    squid_current,
    visibility,
    weyl,
)

__all__ = [
    "ConfigError",
    "GuardViolation",
    "ModeKind",
    "OperatorEnsemble",
    "ProductKet",
    "StateParseError",
    "beat_frequency",
    "build_state",
    "closed_form_number_correlators",
    "correlator",
    "default_e_charge",
    "displacement_element_coherent",
    "displacement_element_fock",
    "drive_lambdas",
    "ensemble_from_json",
    "factorizable_state",
    "figure6_summary",
    "figure_preset",
    "fit_fringe",
    "intensity",
    "oracle_check",
    "oracle_weyl",
    "overlap",
    "parse_state",
    "partial_trace",
    "phase_defined",
    "phase_shift",
    "pure_superposition",
    "render_state",
    "run_sweep",
    "squid_current",
    "visibility",
    "weyl",
]

__version__ = "0.1.0"
