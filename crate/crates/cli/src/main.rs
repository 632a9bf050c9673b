use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

/// Area-weighted Dyck paths: enumeration, q-series evaluation of G(t, q),
/// Airy asymptotics and figure datasets.
#[derive(Debug, Parser)]
#[command(name = "dyckq", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate G(t, q) (or H(t)) by one method.
    Eval(EvalArgs),
    /// Write a figure dataset.
    Scan(ScanArgs),
    /// Build the table of area coefficients c_{m,n}.
    Enumerate(EnumerateArgs),
    /// Evaluate the scaling function F(s) = Ai'(s)/Ai(s).
    Scaling(ScalingArgs),
    /// Compare Q_m(t) with its finite-size scaling form.
    Partition(PartitionArgs),
    /// Run the acceptance checks.
    Validate(ValidateArgs),
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct QArg {
    /// Area fugacity q in (0, 1).
    #[arg(long)]
    q: Option<f64>,
    /// ε = -ln q.
    #[arg(long)]
    eps: Option<f64>,
}

impl QArg {
    fn q(&self) -> f64 {
        match (self.q, self.eps) {
            (Some(q), _) => q,
            (_, Some(e)) => (-e).exp(),
            _ => unreachable!("clap requires one of --q, --eps"),
        }
    }
}

#[derive(Debug, Args)]
#[group(required = false, multiple = false)]
struct OptQArg {
    #[arg(long)]
    q: Option<f64>,
    #[arg(long)]
    eps: Option<f64>,
}

impl OptQArg {
    fn q(&self) -> Option<f64> {
        self.q.or(self.eps.map(|e| (-e).exp()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    /// G: truncated length series; H: the defining q-series.
    Series,
    /// H(qt)/H(t).
    Ratio,
    /// Continued fraction (real t).
    Cfrac,
    /// Leading uniform Airy form.
    Uniform,
    /// 2[1 + (1-q)^{1/3} F(s)].
    Scaling,
    /// Contour integral for H.
    Contour,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Quantity {
    G,
    H,
}

#[derive(Debug, Args)]
struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    t: f64,
    #[command(flatten)]
    q: QArg,
    #[arg(long, value_enum)]
    method: Method,
    #[arg(long, value_enum, default_value = "g")]
    quantity: Quantity,
    /// Relative tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Working precision for the q-series (default: adaptive).
    #[arg(long)]
    precision_bits: Option<u32>,
    /// Cap on q-series terms.
    #[arg(long)]
    max_terms: Option<usize>,
    /// Terms of the length series for `--method series`.
    #[arg(long, default_value_t = 400)]
    terms: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
#[value(rename_all = "snake_case")]
enum Kind {
    PhaseBoundary,
    GVsT,
    ScalingFn,
    Partition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Debug, Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    #[command(flatten)]
    q: OptQArg,
    #[arg(long, allow_hyphen_values = true)]
    t_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    t_max: Option<f64>,
    #[arg(long)]
    q_min: Option<f64>,
    #[arg(long)]
    q_max: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s_min: Option<f64>,
    #[arg(long, allow_hyphen_values = true)]
    s_max: Option<f64>,
    #[arg(long)]
    steps: Option<usize>,
    /// Comma-separated ε values for scaling_fn.
    #[arg(long, value_delimiter = ',')]
    eps_list: Vec<f64>,
    /// Comma-separated areas for partition.
    #[arg(long, value_delimiter = ',')]
    m_list: Vec<usize>,
    /// Fixed scaling variable for partition.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "t")]
    s: Option<f64>,
    /// Fixed length fugacity for partition.
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 40)]
    j_max: u32,
    /// Output path (default: standard output).
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Evaluate the grid on one thread.
    #[arg(long)]
    sequential: bool,
    /// Record the generation time in the metadata.
    #[arg(long)]
    stamp: bool,
}

#[derive(Debug, Args)]
struct EnumerateArgs {
    #[arg(long)]
    n_max: usize,
    /// Keep only areas up to this value (allows longer paths).
    #[arg(long)]
    area_cap: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    #[arg(long)]
    out: Option<std::path::PathBuf>,
    /// Compare rows 0..=N with exhaustive enumeration (N ≤ 12).
    #[arg(long, value_name = "N")]
    verify_brute_force: Option<usize>,
}

#[derive(Debug, Args)]
struct ScalingArgs {
    #[arg(long, allow_hyphen_values = true)]
    s: f64,
    /// Also sum the power series to this order.
    #[arg(long)]
    j_max: Option<u32>,
    /// Also print the scaling approximation of G at this q.
    #[command(flatten)]
    q: OptQArg,
}

#[derive(Debug, Args)]
struct PartitionArgs {
    #[arg(long)]
    m: usize,
    #[arg(
        long,
        allow_hyphen_values = true,
        conflicts_with = "t",
        required_unless_present = "t"
    )]
    s: Option<f64>,
    #[arg(long)]
    t: Option<f64>,
    #[arg(long, default_value_t = 40)]
    j_max: u32,
}

#[derive(Debug, Args)]
struct ValidateArgs {
    /// Comma-separated criterion numbers (default: all).
    #[arg(long, value_delimiter = ',')]
    criteria: Vec<u32>,
    #[arg(long)]
    sequential: bool,
    /// Print reports as JSON.
    #[arg(long)]
    json: bool,
}

const EXIT_USAGE: u8 = 64;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let out = match cli.command {
        Command::Eval(a) => commands::eval(&a),
        Command::Scan(a) => commands::scan(&a),
        Command::Enumerate(a) => commands::enumerate(&a),
        Command::Scaling(a) => commands::scaling(&a),
        Command::Partition(a) => commands::partition(&a),
        Command::Validate(a) => commands::validate(&a),
    };
    match out {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
