"""Two-impurity quantum channel model: exact single-excitation dynamics,
spectral-function analysis, and closed-form regime predictors."""

from ._core import (
    ClassifierThresholds,
    ModelParams,
    ModeGrid,
    NumericalError,
    Parity,
    Pole,
    PoleSet,
    RabiPrediction,
    Regime,
    RegimeError,
    RegimeReport,
    ResonantFlag,
    ResonantPrediction,
    Spectrum,
    StrongPrediction,
    Trajectory,
    TransferMetrics,
    ValidationError,
    build_hamiltonian,
    classify_regime,
    d_pm,
    d_pm_gamma,
    eigendecompose,
    evolve,
    find_poles,
    lambda_closed,
    lambda_sum,
    mode_grid,
    occupation_probabilities,
    predict_strong,
    predict_weak_offres,
    predict_weak_resonant,
    reconstruct_amplitudes,
    transfer_metrics,
)

__all__ = [
    "ClassifierThresholds",
    "ModelParams",
    "ModeGrid",
    "NumericalError",
    "Parity",
    "Pole",
    "PoleSet",
    "RabiPrediction",
    "Regime",
    "RegimeError",
    "RegimeReport",
    "ResonantFlag",
    "ResonantPrediction",
    "Spectrum",
    "StrongPrediction",
    "Trajectory",
    "TransferMetrics",
    "ValidationError",
    "build_hamiltonian",
    "classify_regime",
    "d_pm",
    "d_pm_gamma",
    "eigendecompose",
    "evolve",
    "find_poles",
    "lambda_closed",
    "lambda_sum",
    "mode_grid",
    "occupation_probabilities",
    "predict_strong",
    "predict_weak_offres",
    "predict_weak_resonant",
    "reconstruct_amplitudes",
    "transfer_metrics",
]
