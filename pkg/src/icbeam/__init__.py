"""Coordinated single-stream beamforming on the MIMO interference channel.

Library layout:

* :mod:`icbeam.numerics` — Hermitian eigen primitives with a canonical form
* :mod:`icbeam.network` — channel generation and scenario construction
* :mod:`icbeam.equilibria` — per-link responses and balancing weights
* :mod:`icbeam.metrics` — SINR, rates, leakage, sweep slopes
* :mod:`icbeam.algorithms` — iterative coordination algorithms
* :mod:`icbeam.harness` — config parsing, Monte-Carlo sweeps, CSV
* :mod:`icbeam.service` — FastAPI wrapper; :mod:`icbeam.cli` — thin client
"""

__version__ = "0.1.0"

from .algorithms import (
    AlgorithmId,
    RunResult,
    RunSettings,
    brute_force_sumrate,
    closed_form_ia,
    ia_residual,
    ia_stability_probe,
    run_algorithm,
    run_altmin,
    run_dba,
    run_maxsinr,
    run_srmax,
)
from .equilibria import (
    BeamformerProfile,
    DegenerateDirectionError,
    altruistic_matrix,
    altruistic_response,
    balanced_response,
    egoistic_matrix,
    egoistic_response,
    heuristic_lambda,
    interference_covariance,
    max_sinr_receiver,
    optimal_lambda,
)
from .harness import (
    PRESETS,
    SweepConfig,
    SweepResult,
    emit_csv,
    get_preset,
    parse_config,
    run_sweep,
)
from .metrics import link_rates, multiplexing_gain, sinr, slope_bits_per_decade, sum_rate, total_leakage
from .network import (
    ChannelRealization,
    NetworkConfig,
    ScenarioSpec,
    build_scenario,
    draw_realization,
    effective_channel,
)
from .numerics import dominant_eigvec, hermitian_eig, least_eigvec, solve_hpd

__all__ = [
    "AlgorithmId",
    "BeamformerProfile",
    "ChannelRealization",
    "DegenerateDirectionError",
    "NetworkConfig",
    "PRESETS",
    "RunResult",
    "RunSettings",
    "ScenarioSpec",
    "SweepConfig",
    "SweepResult",
    "altruistic_matrix",
    "altruistic_response",
    "balanced_response",
    "brute_force_sumrate",
    "build_scenario",
    "closed_form_ia",
    "dominant_eigvec",
    "draw_realization",
    "effective_channel",
    "egoistic_matrix",
    "egoistic_response",
    "emit_csv",
    "get_preset",
    "heuristic_lambda",
    "hermitian_eig",
    "ia_residual",
    "ia_stability_probe",
    "interference_covariance",
    "least_eigvec",
    "link_rates",
    "max_sinr_receiver",
    "multiplexing_gain",
    "optimal_lambda",
    "parse_config",
    "run_algorithm",
    "run_altmin",
    "run_dba",
    "run_maxsinr",
    "run_srmax",
    "run_sweep",
    "sinr",
    "slope_bits_per_decade",
    "solve_hpd",
    "sum_rate",
    "total_leakage",
]
