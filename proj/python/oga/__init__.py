"""Orthogonal greedy solver for indefinite elliptic problems on ReLU^k dictionaries."""

from ._core import (
    ConfigError,
    Error,
    ExperimentConfig,
    convergence_order,
    eval_neuron,
    gauss_legendre,
    grad_neuron,
    load_config,
    parse_config,
    preset_names,
    run_experiment,
)

__all__ = [
    "ConfigError",
    "Error",
    "ExperimentConfig",
    "convergence_order",
    "eval_neuron",
    "gauss_legendre",
    "grad_neuron",
    "load_config",
    "parse_config",
    "preset_names",
    "run_experiment",
]
