"""Label-denoising game solvers: social optimum, Nash equilibrium, price of stability."""

from ._core import (
    AccuracyModel,
    BudgetExceeded,
    ClientParams,
    ConfigError,
    CostModel,
    Error,
    GameInstance,
    InfeasibleStrategy,
    InvalidInput,
    IoError,
    NeReport,
    NonConvergence,
    PosReport,
    RatioUndefined,
    SwmReport,
    SweepRow,
    average_noise_rate,
    best_response,
    brute_force_swm,
    check_unimodal,
    compare,
    correction_cost,
    h_ne,
    h_swm,
    payoff,
    profile_from_threshold,
    run_sweep,
    social_welfare,
    solve_ne,
    solve_swm,
    sweep_csv,
    verify_ne,
    welfare_of_threshold,
)

__version__ = "0.1.0"
