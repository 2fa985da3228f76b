"""Parallel black-box optimization with classifier cascades.

A thin wrapper over the C++ core: search spaces, the Branin/Hartmann6
benchmarks, gradient boosted tree classifiers, the cascade optimizer and its
random-search baselines, plus post-run statistics.
"""

from pyshac._core import (  # noqa: F401
    AdoptionEvent,
    BudgetConfig,
    Cascade,
    Categorical,
    ContinuousUniform,
    Direction,
    DiscreteOrdinal,
    GbtConfig,
    GbtModel,
    LabeledDataset,
    Objective,
    Point,
    Proposal,
    RandomSearchOptimizer,
    Rng,
    RunResult,
    RunSummary,
    SampleOutcome,
    Schedule,
    SearchSpace,
    ShacConfig,
    ShacError,
    ShacOptimizer,
    TellReport,
    TrialLog,
    TrialRecord,
    as_maximization,
    branin,
    cross_val_accuracy,
    derive_schedule,
    fit,
    hamming_histogram,
    hartmann6,
    objective_by_name,
    per_batch_median,
    run,
    select_shortlist,
    top_k_mean,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
