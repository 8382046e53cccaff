//! Argument parsing and dispatch. [`run`] never exits the process; it
//! returns the text to print and the exit code, so it can be tested
//! in-process.
//!
//! Exit codes: 0 when every check holds, 1 when a mathematical check
//! fails, 2 for usage, parse and input errors.

use std::ffi::OsString;
use std::path::PathBuf;

use anyhow::{anyhow, bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use flexcert_core::ff_lab::PrimeField;
use flexcert_core::{parse, Polynomial, Scalar, Universe};

use crate::formats::SystemJson;
use crate::reports::{
    CertificateOutput, ConeReport, DecomposeReport, HessianReport, OrbitReport, Report,
    SampleReport, TablesReport,
};

pub const EXIT_PASS: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Exact verification of the flex-variety smoothness certificate.
#[derive(Debug, Parser)]
#[command(name = "flexcert", version)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run every certificate check at the witness point.
    Certificate {
        /// Test hook: move the witness off the cubic so the run must fail.
        #[arg(long)]
        corrupt_witness: bool,
    },
    /// Print the partial derivatives of f and their values at the witness.
    Tables,
    /// Split a polynomial in x0..x2, a300..a003 into isotypic components.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Hessian determinant in x0, x1, x2 of a polynomial.
    Hessian {
        #[arg(allow_hyphen_values = true)]
        expr: String,
    },
    /// Move the witness along a one-block torus orbit.
    Orbit {
        /// 0 scales the point block, 1 the coefficient block.
        #[arg(long)]
        block: usize,
        /// Nonzero rational, e.g. `3` or `-2/5`.
        #[arg(long, allow_hyphen_values = true)]
        t: String,
    },
    /// Finite-field coverage, sampling and flex-survey reports.
    Sample {
        /// A prime with 3 < p <= 65521.
        #[arg(long)]
        prime: u32,
        /// Number of sampled cone points, including the reduced witness.
        #[arg(long, default_value_t = 20)]
        count: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
    /// Check a multi-cone system given as JSON `{blocks, generators}`.
    Cone { file: PathBuf },
}

/// What a run prints, and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: u8,
    pub stdout: String,
    pub stderr: String,
}

fn flex_expression(text: &str) -> anyhow::Result<Polynomial> {
    parse(text, &Universe::flex()).map_err(|e| anyhow!("cannot parse `{text}`: {e}"))
}

fn execute(command: &Command) -> anyhow::Result<Box<dyn ErasedReport>> {
    Ok(match command {
        Command::Certificate { corrupt_witness } => Box::new(CertificateOutput::run(*corrupt_witness)),
        Command::Tables => Box::new(TablesReport::run()),
        Command::Decompose { expr } => Box::new(DecomposeReport::run(&flex_expression(expr)?)),
        Command::Hessian { expr } => Box::new(HessianReport::run(&flex_expression(expr)?)),
        Command::Orbit { block, t } => {
            let t: Scalar = t.parse().map_err(|e| anyhow!("invalid --t `{t}`: {e}"))?;
            if *block > 1 {
                bail!("--block must be 0 (points) or 1 (coefficients), got {block}");
            }
            Box::new(OrbitReport::run(*block, &t).map_err(|e| anyhow!("{e}"))?)
        }
        Command::Sample { prime, count, seed } => {
            let field = PrimeField::new(*prime).map_err(|e| anyhow!("invalid --prime: {e}"))?;
            if *count == 0 {
                bail!("--count must be at least 1");
            }
            Box::new(SampleReport::run(field, *count, *seed).map_err(|e| anyhow!("{e}"))?)
        }
        Command::Cone { file } => {
            let text = std::fs::read_to_string(file).with_context(|| format!("reading {}", file.display()))?;
            let json: SystemJson =
                serde_json::from_str(&text).with_context(|| format!("parsing {}", file.display()))?;
            let (grouping, generators) = json.to_parts()?;
            Box::new(ConeReport::run(&grouping, &generators).map_err(|e| anyhow!("{e}"))?)
        }
    })
}

/// Object-safe view of [`Report`].
trait ErasedReport {
    fn text(&self) -> String;
    fn json(&self) -> String;
    fn ok(&self) -> bool;
}

impl<T: Report> ErasedReport for T {
    fn text(&self) -> String {
        self.render_text()
    }
    fn json(&self) -> String {
        self.render_json()
    }
    fn ok(&self) -> bool {
        self.passed()
    }
}

pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: text }
            } else {
                Outcome { code: EXIT_PASS, stdout: text, stderr: String::new() }
            };
        }
    };
    match execute(&cli.command) {
        Ok(report) => Outcome {
            code: if report.ok() { EXIT_PASS } else { EXIT_CHECK_FAILED },
            stdout: match cli.format {
                Format::Text => report.text(),
                Format::Json => report.json(),
            },
            stderr: String::new(),
        },
        Err(e) => Outcome { code: EXIT_USAGE, stdout: String::new(), stderr: format!("error: {e:#}\n") },
    }
}
