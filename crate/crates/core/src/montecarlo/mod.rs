//! Replicated experiments: seeding, estimators, bound checks, TV estimation,
//! insensitivity probing and the named verification suites.

mod checks;
mod insensitivity;
mod pipeline;
mod runner;
mod stats;
mod suites;
mod tv;
mod verdict;

pub use checks::{
    chernoff_xi_check, exact_coupling_check, psi_tail_check, IndependentRun, supermartingale_drift_check, xi_mean_check, SelectionRun,
};
pub use insensitivity::{exact_insensitivity, insensitivity_probe, subsets_within, EXHAUSTIVE_LIMIT};
pub use pipeline::{equivalence_pipeline, PipelineModels};
pub use runner::{mean_se, run_replicates, MeanEstimate, Proportion, Schedule};
pub use stats::{chi_square, ChiSquare};
pub use suites::{
    growth_grid, growth_rows, random_cci, random_nested_digraphs, random_simplex, run_suite, ExperimentConfig, Suite,
    EXACT_TOLERANCE,
};
pub use tv::{empirical_tv, TvEstimate, BOOTSTRAP_RESAMPLES};
pub use verdict::{series_rows, SeriesRow, SuiteReport, VerdictReport};
