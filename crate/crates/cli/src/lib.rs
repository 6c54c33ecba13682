//! Scenario files, the task runner and report rendering behind the `invtool` binary.

pub mod bundled;
pub mod data;
pub mod error;
pub mod report;
pub mod run;
pub mod scenario;

pub use error::CliError;
pub use report::{Format, Report, Verdict};
pub use run::{run_scenario, RunOptions};
pub use scenario::Scenario;
