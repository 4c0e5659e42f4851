//! Synthetic populations and the Monte-Carlo error-rate harness.

mod bayes;
mod distributions;
mod experiment;

pub use bayes::{bayes_error_exp1, normal_cdf};
pub use distributions::{sample_gaussian, sample_mixture, sample_mixture_labeled, GaussianComponent, MixtureSpec};
pub use experiment::{
    populations, run_experiment, run_experiment_with_threads, run_trial, test_set, train_set, CellResult,
    ExperimentConfig, ExperimentId, ExperimentResult, SummaryRow, TrialError, NCC_CALIBRATED,
};
