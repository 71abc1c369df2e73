use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vircalc_cli::{diff_golden, load_config, run_suite, CheckKind, RunOptions, ScalarMode};

/// Runs verification suites described by a JSON configuration.
#[derive(Debug, Parser)]
#[command(name = "vircalc", version)]
struct Cli {
    /// Suite configuration (JSON, `"schema": 1`).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Where to write the JSON report; overrides `output` in the configuration.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Golden report to compare against, ignoring runtimes and versions.
    #[arg(long, global = true)]
    golden: Option<PathBuf>,
    /// Worker threads; overrides `jobs` in the configuration.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Scalar mode; overrides `scalar_mode` in the configuration.
    #[arg(long, global = true, value_enum)]
    mode: Option<ScalarMode>,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Every check in the configuration.
    Run,
    /// Bracket relation on module bases.
    BracketCheck,
    /// Vanishing orders of the quadratic operators.
    OmegaSignature,
    /// Explicit isomorphism between two Ω modules.
    IsoCheck,
    /// Cyclic-on-window probes.
    IrreducibilityProbe,
    /// Induced module map and triangularity.
    InducedCheck,
    /// Binomial sums, g_n identities, closed forms of F and G.
    Identities,
    /// Coefficients of λ^{-m} d_m w as a polynomial in m.
    Extract,
}

impl Command {
    fn kind(&self) -> Option<CheckKind> {
        match self {
            Command::Run => None,
            Command::BracketCheck => Some(CheckKind::BracketCheck),
            Command::OmegaSignature => Some(CheckKind::OmegaSignature),
            Command::IsoCheck => Some(CheckKind::IsoCheck),
            Command::IrreducibilityProbe => Some(CheckKind::IrreducibilityProbe),
            Command::InducedCheck => Some(CheckKind::InducedCheck),
            Command::Identities => Some(CheckKind::Identities),
            Command::Extract => Some(CheckKind::Extract),
        }
    }
}

const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;

fn resolve(base: &Path, p: &Path) -> PathBuf {
    if p.is_absolute() {
        p.to_path_buf()
    } else {
        base.join(p)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let Some(config_path) = cli.config.as_deref() else {
        eprintln!("error: --config <path> is required");
        return ExitCode::from(EXIT_CONFIG);
    };
    let (config, text) = match load_config(config_path) {
        Ok(x) => x,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    let opts = RunOptions { mode: cli.mode, jobs: cli.jobs, only: cli.command.as_ref().and_then(Command::kind) };
    let report = match run_suite(&config, &text, &opts) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("config error: {e}");
            return ExitCode::from(EXIT_CONFIG);
        }
    };
    print!("{}", report.human());

    let base = config_path.parent().unwrap_or(Path::new("."));
    let out = cli.out.clone().or_else(|| config.output.as_deref().map(|p| resolve(base, p)));
    if let Some(out) = out {
        if let Err(e) = std::fs::write(&out, report.to_json()) {
            eprintln!("cannot write {}: {e}", out.display());
            return ExitCode::from(EXIT_FAIL);
        }
    }

    let mut failed = !report.all_passed();
    if let Some(golden) = &cli.golden {
        match diff_golden(&report, golden) {
            Ok(diffs) if diffs.is_empty() => println!("golden: match"),
            Ok(diffs) => {
                println!("golden: {} difference(s)", diffs.len());
                for d in diffs {
                    println!("  {d}");
                }
                failed = true;
            }
            Err(e) => {
                eprintln!("golden error: {e}");
                return ExitCode::from(EXIT_CONFIG);
            }
        }
    }
    if failed {
        ExitCode::from(EXIT_FAIL)
    } else {
        ExitCode::SUCCESS
    }
}
