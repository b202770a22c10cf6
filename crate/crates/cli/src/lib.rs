//! Command-line front end: norms, verification suites and the decision engine.

pub mod config;
pub mod error;
pub mod output;
pub mod suites;

use std::path::PathBuf;

use amalgam_core::{
    amalgam_norm, decide_compactness, decide_embedding, Exponent, FunctionSpec, GridSpec, SpaceSpec, SuiteReport,
    WeightSpec,
};
use clap::{Parser, Subcommand};

pub use config::{Format, RunConfig};
pub use error::CliError;

pub const THREADS_ENV: &str = "AMALGAM_THREADS";

#[derive(Debug, Parser)]
#[command(name = "amalgam", version, about = "Weighted amalgam norms and A-space checks")]
pub struct Cli {
    /// Config file (default: ./amalgam.json if present)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    /// Output format
    #[arg(long, global = true, value_enum)]
    pub emit: Option<Format>,

    /// Write output here instead of stdout
    #[arg(short, long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Amalgam norm of one function
    Norm {
        /// gaussian, gaussian:c:s, indicator:a:b, bump:c:r, zero, or JSON
        #[arg(long = "fn")]
        function: FunctionSpec,
        #[arg(long)]
        p: Exponent,
        #[arg(long)]
        q: Exponent,
        /// poly:s, exp:a, products joined by `*`, or JSON
        #[arg(long, default_value = "poly:0")]
        w: WeightSpec,
        /// Window half width
        #[arg(long = "L")]
        half_width: Option<usize>,
        /// Samples per unit cell
        #[arg(long)]
        m: Option<usize>,
    },
    /// Run a verification suite, or `all`
    Check {
        suite: String,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Embedding verdict, or compactness verdict when --theta3 is given
    Decide {
        /// p=..,q=..,r=..,w1=..,w2=.. or JSON
        #[arg(long)]
        src: SpaceSpec,
        #[arg(long, required_unless_present = "theta3")]
        dst: Option<SpaceSpec>,
        #[arg(long, conflicts_with = "dst")]
        theta3: Option<WeightSpec>,
        #[arg(long, requires = "theta3")]
        theta4: Option<WeightSpec>,
    },
}

/// Caps the global pool at `AMALGAM_THREADS` when set.
pub fn init_threads() -> Result<(), CliError> {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| CliError::Usage(format!("{THREADS_ENV}={value} is not a positive integer")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn all_pass(reports: &[SuiteReport]) -> bool {
    reports.iter().all(|r| r.stable_pass())
}

/// Runs the parsed command; returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32, CliError> {
    let mut config = RunConfig::discover(cli.config.as_deref())?;
    let format = cli.emit.unwrap_or(config.output.format);
    let path: Option<PathBuf> = cli.output.or_else(|| config.output.path.clone());
    let path = path.as_deref();
    match cli.command {
        Command::Norm { function, p, q, w, half_width, m } => {
            let grid = GridSpec::new(
                half_width.unwrap_or(config.grid.half_width()),
                m.unwrap_or(config.grid.per_cell()),
            )?;
            let f = function.build::<f64>(grid)?;
            let report = amalgam_norm(&f, p, q, &w)?;
            eprintln!("global = {}", report.global);
            output::write_norm(&report, format, path)?;
            Ok(0)
        }
        Command::Check { suite, seed } => {
            if let Some(seed) = seed {
                config.seed = seed;
            }
            let reports = suites::run(&suite, &config)?;
            eprint!("{}", output::summary(&reports));
            output::write_reports(&reports, format, path)?;
            Ok(if all_pass(&reports) { 0 } else { 1 })
        }
        Command::Decide { src, dst, theta3, theta4 } => {
            let verdict = match (dst, theta3) {
                (Some(dst), _) => decide_embedding(&src, &dst)?,
                (None, Some(t3)) => decide_compactness(&src, &t3, theta4.as_ref())?,
                (None, None) => return Err(CliError::Usage("decide needs --dst or --theta3".into())),
            };
            eprintln!("{:?} ({})", verdict.relation, verdict.rule);
            output::write_json(&verdict, path)?;
            Ok(0)
        }
    }
}

/// Entry point shared by the binary: parse, run, map errors to exit codes.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let run = init_threads().and_then(|_| execute(cli));
    match run {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
