mod commands;
mod config;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, Parser, Subcommand};

use crate::config::{CliError, CliResult, Params};
use crate::output::{Format, Provenance};

/// Heat kernels, potential kernels and fractional integrals for Hermite, Laguerre and Dunkl oscillators.
#[derive(Parser)]
#[command(name = "potentia", version)]
struct Cli {
    /// `key = value` file; flags override its entries.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output file (default stdout).
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    /// csv or json.
    #[arg(long, global = true)]
    format: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Heat (--t) or potential (--sigma) kernel on a grid of (x, y) pairs.
    Kernel(KernelArgs),
    /// Run a verification suite (or `all`).
    Verify(VerifyArgs),
    /// Classify exponent tuples against an encoded theorem.
    Regions(RegionsArgs),
    /// Norm-ratio sweep over a dilation family.
    Probe(ProbeArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct KernelArgs {
    /// hermite, laguerre-hermite, laguerre-conv, laguerre-standard, dunkl
    #[arg(long)]
    setting: Option<String>,
    #[arg(long)]
    d: Option<String>,
    /// Type index, comma-separated (one value is repeated to dimension d).
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    t: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    /// lo:hi:n per axis, comma-separated.
    #[arg(long, allow_hyphen_values = true)]
    grid: Option<String>,
    /// Relative tolerance of the potential-kernel time quadrature.
    #[arg(long)]
    tol: Option<String>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct VerifyArgs {
    /// Suite name or `all`.
    suite: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long = "plateau-factor")]
    plateau_factor: Option<String>,
    #[arg(long = "slope-tol")]
    slope_tol: Option<String>,
    #[arg(long = "growth-threshold")]
    growth_threshold: Option<String>,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct RegionsArgs {
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long = "A")]
    big_a: Option<String>,
    #[arg(long = "B")]
    big_b: Option<String>,
    #[arg(long)]
    r: Option<String>,
    #[arg(long)]
    eta: Option<String>,
    /// VAR lo:hi:n
    #[arg(long, num_args = 2, value_names = ["VAR", "RANGE"], allow_hyphen_values = true)]
    sweep: Option<Vec<String>>,
    /// CSV file of tuples; its columns override the flags.
    #[arg(long)]
    tuples: Option<String>,
    /// Print the interpolation plan of alpha instead of verdicts.
    #[arg(long)]
    plan: bool,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ProbeArgs {
    /// A setting name or `riesz`.
    #[arg(long)]
    setting: Option<String>,
    #[arg(long)]
    d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    alpha: Option<String>,
    #[arg(long)]
    theorem: Option<String>,
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long)]
    p: Option<String>,
    #[arg(long)]
    q: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    b: Option<String>,
    /// gaussian or plateau
    #[arg(long)]
    family: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    center: Option<String>,
    /// Comma-separated scales.
    #[arg(long)]
    scales: Option<String>,
    /// lo:hi, scales 2^lo..2^hi (default -5:5).
    #[arg(long, allow_hyphen_values = true)]
    dyadic: Option<String>,
    #[arg(long = "plateau-factor")]
    plateau_factor: Option<String>,
    #[arg(long = "slope-tol")]
    slope_tol: Option<String>,
    #[arg(long = "growth-threshold")]
    growth_threshold: Option<String>,
}

const GLOBAL_KEYS: [&str; 1] = ["format"];

fn keys(specific: &[&'static str]) -> Vec<&'static str> {
    specific.iter().chain(GLOBAL_KEYS.iter()).copied().collect()
}

fn threads() -> CliResult<()> {
    let Ok(raw) = std::env::var("POTENTIA_THREADS") else { return Ok(()) };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| CliError::Invalid(format!("POTENTIA_THREADS = {raw:?} must be a positive integer")))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| CliError::Invalid(e.to_string()))
}

fn usage(name: &str) -> String {
    let mut cmd = Cli::command();
    cmd.build();
    cmd.find_subcommand_mut(name).map(|c| c.render_usage().to_string()).unwrap_or_default()
}

fn run(cli: Cli) -> CliResult<bool> {
    threads()?;
    let config = cli.config.as_deref();
    let (name, params, kind) = match cli.command {
        Command::Kernel(a) => {
            let flags = vec![
                ("setting", a.setting),
                ("d", a.d),
                ("alpha", a.alpha),
                ("t", a.t),
                ("sigma", a.sigma),
                ("grid", a.grid),
                ("tol", a.tol),
                ("format", cli.format),
            ];
            ("kernel", Params::resolve(&keys(&commands::kernel::KEYS), flags, config)?, 0)
        }
        Command::Verify(a) => {
            let flags = vec![
                ("suite", a.suite),
                ("alpha", a.alpha),
                ("plateau_factor", a.plateau_factor),
                ("slope_tol", a.slope_tol),
                ("growth_threshold", a.growth_threshold),
                ("format", cli.format),
            ];
            ("verify", Params::resolve(&keys(&commands::verify::KEYS), flags, config)?, 1)
        }
        Command::Regions(a) => {
            let flags = vec![
                ("theorem", a.theorem),
                ("d", a.d),
                ("p", a.p),
                ("q", a.q),
                ("a", a.a),
                ("b", a.b),
                ("sigma", a.sigma),
                ("alpha", a.alpha),
                ("A", a.big_a),
                ("B", a.big_b),
                ("r", a.r),
                ("eta", a.eta),
                ("sweep", a.sweep.map(|v| v.join(" "))),
                ("tuples", a.tuples),
                ("plan", a.plan.then(|| "true".to_string())),
                ("format", cli.format),
            ];
            ("regions", Params::resolve(&keys(&commands::regions::KEYS), flags, config)?, 2)
        }
        Command::Probe(a) => {
            let flags = vec![
                ("setting", a.setting),
                ("d", a.d),
                ("alpha", a.alpha),
                ("theorem", a.theorem),
                ("sigma", a.sigma),
                ("p", a.p),
                ("q", a.q),
                ("a", a.a),
                ("b", a.b),
                ("family", a.family),
                ("center", a.center),
                ("scales", a.scales),
                ("dyadic", a.dyadic),
                ("plateau_factor", a.plateau_factor),
                ("slope_tol", a.slope_tol),
                ("growth_threshold", a.growth_threshold),
                ("format", cli.format),
            ];
            ("probe", Params::resolve(&keys(&commands::probe::KEYS), flags, config)?, 3)
        }
    };
    let format: Format = params.get_or("format", "csv").parse()?;
    let result = match kind {
        0 => commands::kernel::run(&params).map(|t| (t, true)),
        1 => commands::verify::run(&params),
        2 => commands::regions::run(&params).map(|t| (t, true)),
        _ => commands::probe::run(&params).map(|t| (t, true)),
    };
    let (table, ok) = match result {
        Err(CliError::Usage(m)) => return Err(CliError::Usage(format!("{m}\n\n{}", usage(name)))),
        other => other?,
    };
    let prov = Provenance { command: name.into(), params: params.echo() };
    output::emit(&output::render(&table, format, &prov)?, cli.output.as_deref())?;
    Ok(ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
