//! Experiment harness: Monte Carlo engine, scenarios, sweeps, figure tables
//! and closed-form validation.

pub mod engine;
pub mod figures;
pub mod run;
pub mod scenario;
pub mod table;
pub mod validate;

pub use engine::{monte_carlo, workers_from_env, Moments, WORKERS_ENV};
pub use figures::reproduce_figure;
pub use run::{evaluate, report_table, run_arms, run_trials, run_trials_with, sweep, RateReport, StdErrors};
pub use scenario::{parse_values, Axis, Mode, Policy, Scenario};
pub use table::Table;
pub use validate::{validate_asymptotics, Check, Status, ValidationGrid, ValidationReport};
