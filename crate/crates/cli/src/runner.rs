//! Runs the checks of a suite on a bounded worker pool.

use std::time::Instant;

use rayon::prelude::*;

use crate::checks::run_check;
use crate::config::{validate_checks, CheckKind, ConfigError, Registry, ScalarMode, SuiteConfig};
use crate::report::{CheckRecord, Report};

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    /// Overrides `scalar_mode` from the configuration.
    pub mode: Option<ScalarMode>,
    /// Overrides `jobs` from the configuration; defaults to one worker.
    pub jobs: Option<usize>,
    /// Only checks of this kind.
    pub only: Option<CheckKind>,
}

/// Validates the configuration and runs its checks. Records come back
/// sorted by name whatever the number of workers.
pub fn run_suite(config: &SuiteConfig, config_text: &str, opts: &RunOptions) -> Result<Report, ConfigError> {
    let mode = opts.mode.unwrap_or(config.scalar_mode);
    let registry = Registry::build(config, mode)?;
    validate_checks(config, &registry)?;
    let jobs = opts.jobs.or(config.jobs).unwrap_or(1).max(1);
    let selected: Vec<_> = config.checks.iter().filter(|c| opts.only.is_none_or(|k| c.spec.kind() == k)).collect();
    let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().expect("worker pool");
    let records: Vec<CheckRecord> = pool.install(|| {
        selected
            .par_iter()
            .map(|check| {
                let start = Instant::now();
                let outcome = run_check(&check.spec, &registry);
                CheckRecord {
                    name: check.name.clone(),
                    kind: check.spec.kind(),
                    status: outcome.status,
                    data: outcome.data,
                    runtime_ms: start.elapsed().as_millis() as u64,
                }
            })
            .collect()
    });
    Ok(Report::new(config_text, mode, records))
}
