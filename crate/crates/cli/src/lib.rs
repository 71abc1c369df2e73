//! Configuration-driven verification suites over `vircalc`.

pub mod checks;
pub mod config;
pub mod golden;
pub mod report;
pub mod runner;

pub use checks::Status;
pub use config::{load_config, parse_config, CheckKind, ConfigError, ScalarMode, SuiteConfig};
pub use golden::{diff_golden, diff_values, GoldenError};
pub use report::{CheckRecord, Report};
pub use runner::{run_suite, RunOptions};
