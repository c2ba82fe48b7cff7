//! Numerical experiments that check the example maps against their claimed
//! regularity, with JSON/CSV reports.

mod config;
mod experiments;
mod montecarlo;
mod report;

pub use config::{ExperimentConfig, ExperimentKind, Tolerances, DEFAULT_MC_SAMPLES, DEFAULT_STEPS, MIN_STEPS};
pub use experiments::{
    exp_c1_not_c2, exp_identity_theorem_failure, exp_measure_identities, exp_real_restriction, exp_smoothness,
    exp_taylor_failure, fitted_slope, run_experiment, run_suite, suite_configs, MAX_BLOWUP_STEPS, SLOPE_TOL,
    SLOPE_WINDOW,
};
pub use montecarlo::{agrees_to_three_digits, StratifiedOracle};
pub use report::{BlowupConstants, Check, ExperimentReport, StepRecord, Verdict};
