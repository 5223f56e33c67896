//! Command-line front end: argument parsing, the report envelope, JSON/CSV
//! rendering and exit codes. The `rzlab` binary is a thin wrapper around
//! [`run`].

mod commands;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::Value;

pub const EXIT_OK: u8 = 0;
pub const EXIT_DOMAIN: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_USAGE: u8 = 64;

#[derive(Debug, Parser)]
#[command(name = "rzlab", version, about = "Numerical laboratory for zeta zeros, S(s) = xi(2s)/xi(-2s) and its Jost function")]
pub struct Cli {
    /// Output format; CSV is a flat projection of the JSON results.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Omit the timestamp so identical runs give identical bytes.
    #[arg(long, global = true)]
    pub deterministic: bool,
    /// Worker threads for parallel scans (default: logical cores).
    #[arg(long, global = true, env = "RZLAB_JOBS")]
    pub jobs: Option<usize>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Locate zeros on the critical line and cross-check the count.
    Zeros(ZerosArgs),
    /// Evaluate and check S(s).
    #[command(subcommand)]
    Smatrix(SmatrixCommand),
    /// Inverse-square potential checks.
    #[command(subcommand)]
    Quantum(QuantumCommand),
    /// Truncated Hadamard product of xi against direct evaluation.
    Hadamard(HadamardArgs),
    /// Real-line dispersion reconstruction.
    #[command(subcommand)]
    Dispersion(DispersionCommand),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ZerosArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub t_min: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: f64,
    #[arg(long, default_value_t = crate::zeros::DEFAULT_STEP)]
    pub step: f64,
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
}

#[derive(Debug, Subcommand)]
pub enum SmatrixCommand {
    /// S(s) and F+(s) at one point.
    Eval(SmatrixEvalArgs),
    /// ||S(i tau)| - 1| on the imaginary axis.
    Scan(SmatrixScanArgs),
    /// F+ at -1/4 + i t_n / 2 for the first zeros.
    Correspondence(CorrespondenceArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SmatrixEvalArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub re: f64,
    #[arg(long, allow_negative_numbers = true)]
    pub im: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SmatrixScanArgs {
    #[arg(long, default_value_t = 50.0)]
    pub tau_max: f64,
    #[arg(long, default_value_t = 0.1)]
    pub step: f64,
    /// Largest accepted deviation from unit modulus.
    #[arg(long, default_value_t = 1e-8)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CorrespondenceArgs {
    #[arg(long, default_value_t = 10)]
    pub num_zeros: usize,
}

#[derive(Debug, Subcommand)]
pub enum QuantumCommand {
    /// Direct ODE integration against the Hankel form of the Jost solution.
    JostVerify(JostVerifyArgs),
    /// The moment integral of y K_nu(y)^2 and its closed-form coefficient.
    Kmoment(KmomentArgs),
    /// Reality residual of the coupling at imaginary momentum.
    Khuri(KhuriArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct JostVerifyArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub lambda_im: f64,
    #[arg(long, default_value_t = 1.0)]
    pub k: f64,
    #[arg(long, default_value_t = 1.0)]
    pub y_min: f64,
    #[arg(long, default_value_t = 10.0)]
    pub y_max: f64,
    #[arg(long, default_value_t = 37)]
    pub points: usize,
    #[arg(long, default_value_t = 1e-6)]
    pub tolerance: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KmomentArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub nu: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub nu_im: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct KhuriArgs {
    #[arg(long, allow_negative_numbers = true)]
    pub lambda: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub lambda_im: f64,
    #[arg(long, default_value_t = 1.0)]
    pub tau: f64,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct HadamardArgs {
    #[arg(long, default_value_t = 100)]
    pub num_zeros: usize,
    #[arg(long, allow_negative_numbers = true, default_value_t = 2.0)]
    pub at: f64,
    #[arg(long, allow_negative_numbers = true, default_value_t = 0.0)]
    pub at_im: f64,
    /// Truncation orders to report (default: 10, 50 and --num-zeros).
    #[arg(long, value_delimiter = ',')]
    pub n_list: Vec<usize>,
}

#[derive(Debug, Subcommand)]
pub enum DispersionCommand {
    /// Rebuild F+ from S on the real line and check S = F- / F+.
    Roundtrip(RoundtripArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Model {
    Unit,
    Rational,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RoundtripArgs {
    #[arg(long, value_enum)]
    pub model: Model,
    #[arg(long, default_value_t = 50.0)]
    pub half_width: f64,
    #[arg(long, default_value_t = 4001)]
    pub nodes: usize,
    /// Rational model `F+ = (k + i a) / (k + i b)`.
    #[arg(long, default_value_t = 0.5)]
    pub a: f64,
    #[arg(long, default_value_t = 0.501)]
    pub b: f64,
    /// Bound-state momenta kappa > 0, comma separated.
    #[arg(long, value_delimiter = ',')]
    pub bound_states: Vec<f64>,
    /// Largest accepted residual (default: 1e-12 for unit, 1e-3 for rational).
    #[arg(long)]
    pub tolerance: Option<f64>,
}

/// Common wrapper of every report.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportEnvelope {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub results: Value,
    pub diagnostics: Vec<String>,
    pub version: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
}

/// Flat rows for the CSV projection.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

/// What a command produced: the envelope, its CSV projection, and whether
/// the checks it ran passed.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub envelope: ReportEnvelope,
    pub table: Table,
    pub verified: bool,
}

/// Process-level result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn failure(exit_code: u8, message: String) -> Self {
        Self { exit_code, stdout: String::new(), stderr: message }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { exit_code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome::failure(EXIT_USAGE, text),
            };
        }
    };
    run_cli(&cli)
}

pub fn run_cli(cli: &Cli) -> Outcome {
    let mut pool = rayon::ThreadPoolBuilder::new();
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Outcome::failure(EXIT_USAGE, "error: --jobs must be at least 1\n".into());
        }
        pool = pool.num_threads(jobs);
    }
    let pool = match pool.build() {
        Ok(p) => p,
        Err(e) => return Outcome::failure(EXIT_USAGE, format!("error: cannot start workers: {e}\n")),
    };
    let report = match pool.install(|| execute(&cli.command)) {
        Ok(r) => r,
        Err(e) => return Outcome::failure(EXIT_DOMAIN, format!("error: {e}\n")),
    };
    let mut envelope = report.envelope;
    if !cli.deterministic {
        envelope.timestamp = Some(chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Secs, true));
    }
    let rendered = match cli.format {
        Format::Json => render_json(&envelope),
        Format::Csv => render_csv(&report.table),
    };
    let text = match rendered {
        Ok(t) => t,
        Err(e) => return Outcome::failure(EXIT_DOMAIN, format!("error: cannot render report: {e}\n")),
    };
    let exit_code = if report.verified { EXIT_OK } else { EXIT_VERIFICATION };
    let stderr = if report.verified { String::new() } else { format!("verification failed: {}\n", envelope.command) };
    match &cli.out {
        Some(path) => match std::fs::write(path, text) {
            Ok(()) => Outcome { exit_code, stdout: String::new(), stderr },
            Err(e) => Outcome::failure(EXIT_DOMAIN, format!("error: cannot write {}: {e}\n", path.display())),
        },
        None => Outcome { exit_code, stdout: text, stderr },
    }
}

/// Run one command and build its report (no timestamp).
pub fn execute(command: &Command) -> crate::Result<Report> {
    match command {
        Command::Zeros(a) => commands::zeros(a),
        Command::Smatrix(SmatrixCommand::Eval(a)) => commands::smatrix_eval(a),
        Command::Smatrix(SmatrixCommand::Scan(a)) => commands::smatrix_scan(a),
        Command::Smatrix(SmatrixCommand::Correspondence(a)) => commands::smatrix_correspondence(a),
        Command::Quantum(QuantumCommand::JostVerify(a)) => commands::jost_verify(a),
        Command::Quantum(QuantumCommand::Kmoment(a)) => commands::kmoment(a),
        Command::Quantum(QuantumCommand::Khuri(a)) => commands::khuri(a),
        Command::Hadamard(a) => commands::hadamard(a),
        Command::Dispersion(DispersionCommand::Roundtrip(a)) => commands::roundtrip(a),
    }
}

fn render_json(envelope: &ReportEnvelope) -> Result<String, String> {
    let mut text = serde_json::to_string_pretty(envelope).map_err(|e| e.to_string())?;
    text.push('\n');
    Ok(text)
}

fn render_csv(table: &Table) -> Result<String, String> {
    let mut writer = csv::Writer::from_writer(Vec::new());
    writer.write_record(&table.header).map_err(|e| e.to_string())?;
    for row in &table.rows {
        writer.write_record(row).map_err(|e| e.to_string())?;
    }
    let bytes = writer.into_inner().map_err(|e| e.to_string())?;
    String::from_utf8(bytes).map_err(|e| e.to_string())
}
