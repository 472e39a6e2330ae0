//! `eulersum`: evaluate multiple zeta values and Euler sums, verify the
//! identity catalog, and print tables.
//!
//! Indices use the ascending convention: `zeta(a_1,...,a_r)` sums over
//! `k_1 < ... < k_r`, so the series converges only when the last entry is
//! at least 2. `zetastar` allows equality.

/// `println!` that tolerates a closed stdout, as when piped into `head`.
macro_rules! outln {
    ($($arg:tt)*) => {
        $crate::write_stdout(&format!("{}\n", format_args!($($arg)*)))
    };
}

mod cache;
mod eval;
mod expr;
mod range;
mod table;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use eulersum_core::PrecisionConfig;

use range::ValueRange;
use table::{Format, TableName};

/// Exit status for a failed identity.
const EXIT_FAIL: u8 = 1;
/// Exit status for usage, parse and domain errors.
const EXIT_USAGE: u8 = 2;

#[derive(Parser, Debug)]
#[command(
    name = "eulersum",
    version,
    about = "Multiple zeta values, zeta-star values and Euler sums G_{n+2}(p,q)",
    long_about = "Multiple zeta values, zeta-star values and Euler sums G_{n+2}(p,q).\n\n\
        Indices are ascending: zeta(a_1,...,a_r) sums 1/(k_1^a_1 ... k_r^a_r) over \
        k_1 < ... < k_r, and zetastar over k_1 <= ... <= k_r. A series converges only \
        when the LAST entry is at least 2."
)]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// Significant decimal digits.
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    /// Number of series terms summed before the tail is fitted.
    #[arg(long, global = true, default_value_t = 100_000)]
    cutoff: u64,
    /// Report plain partial sums with a tail bound instead of the fitted limit.
    #[arg(long, global = true)]
    no_extrapolate: bool,
    /// Tanh-sinh refinement level for integrals.
    #[arg(long, global = true, default_value_t = 10)]
    quad_level: u32,
    /// Relative tolerance overriding each identity's default.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Worker threads for identity runs.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Result cache file (JSON lines).
    #[arg(long, global = true, default_value = "eulersum-cache.jsonl")]
    cache: PathBuf,
    /// Neither read nor write the cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Timing and cache diagnostics on stderr.
    #[arg(long, short, global = true)]
    verbose: bool,
}

impl GlobalArgs {
    fn config(&self) -> Result<PrecisionConfig, Failure> {
        PrecisionConfig::new(
            self.digits,
            self.cutoff,
            !self.no_extrapolate,
            self.quad_level,
        )
        .map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Evaluate expressions such as `zetastar(3,{2}^2)`, `G(n=0,p=1,q=1)`,
    /// `zeta[10](1,2)` (truncated at 10) or `H[10](2)`.
    Eval {
        #[arg(required = true)]
        exprs: Vec<String>,
    },
    /// Check catalog identities: `verify prop2.4 --p 1 --q 1 --k 0`,
    /// `verify eq6.1 --n 0..2`, `verify --all`.
    ///
    /// Parameters are given as `--<name> <values>` with values like `3`,
    /// `0..2` or `1,3`. Unlisted parameters range over the default grid.
    Verify {
        /// Identity id; see `list`.
        id: Option<String>,
        /// Run every identity over its default grid.
        #[arg(long, conflicts_with_all = ["id", "filter"])]
        all: bool,
        /// Glob over ids, such as `prop4.*`.
        #[arg(long, conflicts_with = "id")]
        filter: Option<String>,
    },
    /// Print a table.
    ///
    /// zetastar-head: columns r, n, index, value, err, assembled,
    /// assembled_err; r in 0..2, n in 0..3.
    ///
    /// g2: columns p, q, closed_form, value, err, series, series_err for
    /// p + q <= max (max <= 8).
    ///
    /// g: columns n, p, q, weight, direct, direct_err, compositions,
    /// compositions_err.
    Table {
        #[arg(value_enum)]
        name: TableName,
        #[arg(long)]
        r: Option<ValueRange>,
        #[arg(long)]
        n: Option<ValueRange>,
        #[arg(long)]
        p: Option<ValueRange>,
        #[arg(long)]
        q: Option<ValueRange>,
        #[arg(long)]
        max: Option<u32>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// List catalog identities with their parameters.
    List,
}

pub(crate) fn write_stdout(text: &str) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_all(text.as_bytes()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write output: {e}");
        }
    }
}

/// How a command ended short of success.
#[derive(Debug)]
pub enum Failure {
    /// Bad input; exit status 2.
    Usage(String),
    /// Evaluation failed; exit status 1.
    Runtime(String),
}

impl From<eulersum_core::Error> for Failure {
    fn from(e: eulersum_core::Error) -> Self {
        use eulersum_core::Error as E;
        match e {
            E::QuadratureNonConvergence { .. } => Failure::Runtime(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let (argv, params) = verify::split_params(std::env::args().collect());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli, params) {
        Ok(code) => code,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Runtime(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FAIL)
        }
    }
}

fn run(cli: Cli, params: Vec<(String, String)>) -> Result<ExitCode, Failure> {
    let g = &cli.global;
    if let Some(t) = g.threads {
        if t == 0 {
            return Err(Failure::Usage("--threads must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    if let Some(t) = g.tol {
        if !(t.is_finite() && t >= 0.0) {
            return Err(Failure::Usage(format!(
                "--tol must be a nonnegative number, got {t}"
            )));
        }
    }
    if !params.is_empty() && !matches!(cli.command, Command::Verify { .. }) {
        let names: Vec<String> = params.iter().map(|(k, _)| format!("--{k}")).collect();
        return Err(Failure::Usage(format!(
            "unexpected arguments {}",
            names.join(" ")
        )));
    }
    let cfg = g.config()?;
    match cli.command {
        Command::Eval { exprs } => eval::run(&exprs, &cfg, g),
        Command::Verify { id, all, filter } => {
            let selection = match (id, all, filter) {
                (Some(id), false, None) => verify::Selection::One(id),
                (None, true, None) => verify::Selection::All,
                (None, false, Some(f)) => verify::Selection::Filter(f),
                _ => {
                    return Err(Failure::Usage(
                        "give an identity id, --filter or --all".into(),
                    ))
                }
            };
            verify::run(selection, &params, &cfg, g)
        }
        Command::Table {
            name,
            r,
            n,
            p,
            q,
            max,
            format,
        } => {
            let spec = table::TableArgs { r, n, p, q, max };
            let format = if g.json { Format::Json } else { format };
            table::run(name, &spec, format, &cfg)
        }
        Command::List => {
            verify::list(g.json);
            Ok(ExitCode::SUCCESS)
        }
    }
}
