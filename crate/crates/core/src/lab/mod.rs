//! Experiments, threshold formulas, reports and the self-check suite.

mod experiments;
mod report;
mod suite;
mod thresholds;

pub use experiments::{
    central_path_deviations, experiment_convergence, experiment_curvature, experiment_iterations, instance, parse_t, start_lambda,
    CurvatureOutcome, Deviation,
};
pub use report::{config_hash, records_from_csv, records_to_csv, CellRecord, Report, TOOL_VERSION};
pub use suite::{run_criterion, verify_suite, CriterionResult, Level, CRITERIA};
pub use thresholds::{convergence_budget, delta_bound, min_valid_t, threshold_met, two_n, DeltaBound};
