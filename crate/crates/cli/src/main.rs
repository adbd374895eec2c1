//! `rankexact`: command-line access to the exact rank-coefficient series,
//! their Kloosterman sums and the property suites.

mod commands;
mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{CommandFactory, Parser, Subcommand, ValueEnum};
use rankexact_core::selftest::SelftestLevel;
use rankexact_core::{PrecisionConfig, SummationMode};
use serde::Serialize;
use serde_json::Value;

use commands::Family;
use output::{write_csv, write_json, Outcome, RunManifest};

#[derive(Parser, Debug)]
#[command(name = "rankexact", version, about = "Exact series for the rank generating function at roots of unity")]
struct Cli {
    /// Working precision in bits.
    #[arg(long, global = true, default_value_t = 256)]
    precision: u32,

    /// Worker threads for the inner parallel loops.
    #[arg(long, global = true)]
    threads: Option<usize>,

    /// Emit JSON (the default).
    #[arg(long, global = true, conflicts_with = "csv")]
    json: bool,

    /// Emit CSV, preceded by the manifest as a comment line.
    #[arg(long, global = true)]
    csv: bool,

    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Reduction order for lists of terms.
    #[arg(long, global = true, value_enum, default_value_t = Summation::Sequential)]
    summation: Summation,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Summation {
    Sequential,
    Tree,
}

#[derive(Subcommand, Debug, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Rank counts N(m, n) for n <= N_MAX.
    RankTable { n_max: usize },

    /// A(l/b; n) from the rank counts.
    Coeff { ell: i64, b: i64, n: usize },

    /// A(l/p; n) from its exact series; l = 0 gives p(n), p = 2 and 3 the
    /// single-modulus series, primes p >= 5 the two-cusp formula.
    Exact {
        ell: i64,
        p: i64,
        n: i64,
        /// Largest modulus at the cusp infinity.
        #[arg(long)]
        cmax: Option<i64>,
        /// Largest a at the cusp 0.
        #[arg(long)]
        amax: Option<i64>,
    },

    /// Circle-method approximation of A(l/u; n) truncated at sqrt(n).
    Bringmann { ell: i64, u: i64, n: i64 },

    /// One Kloosterman sum; PARAM is m for `inf` and r for `zero`, MODULUS is c or a.
    #[command(allow_negative_numbers = true)]
    Kloosterman { family: Family, ell: i64, param: i64, n: i64, modulus: i64, p: i64 },

    /// Both bridge identities over p | c <= C_MULTIPLES p and p ∤ a <= A_MAX.
    BridgeCheck {
        p: i64,
        #[arg(long, default_value_t = 20)]
        c_multiples: i64,
        #[arg(long, default_value_t = 200)]
        a_max: i64,
        /// Comma-separated values of n.
        #[arg(long = "n", value_delimiter = ',', default_values_t = [0, 1, 6])]
        ns: Vec<i64>,
        #[arg(long, default_value_t = 1e-40)]
        tolerance: f64,
    },

    /// One vanishing statement, e.g. `7-3.1`, at n and modulus c.
    Vanishing { case: String, n: i64, c: i64 },

    /// Dyson's identity, e.g. `5-4`, at every argument <= N_MAX.
    Dyson {
        identity: String,
        n_max: usize,
        /// Also rebuild the counts from the exact formula.
        #[arg(long)]
        analytic: bool,
    },

    /// Partial sums of a Kloosterman zeta function up to X_MAX with their fitted growth.
    #[command(allow_negative_numbers = true)]
    Growth { family: Family, ell: i64, param: i64, n: i64, p: i64, x_max: i64 },

    /// Property suites: `quick` or `full`.
    Selftest {
        #[arg(default_value = "quick")]
        level: SelftestLevel,
        /// Restrict to these modules (comma-separated).
        #[arg(long, value_delimiter = ',')]
        modules: Vec<String>,
    },

    /// max_r, x_r and the condition sets for a prime p.
    Geometry {
        p: i64,
        /// Largest a listed; defaults to 2p.
        #[arg(long)]
        a_max: Option<i64>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Self::RankTable { .. } => "rank-table",
            Self::Coeff { .. } => "coeff",
            Self::Exact { .. } => "exact",
            Self::Bringmann { .. } => "bringmann",
            Self::Kloosterman { .. } => "kloosterman",
            Self::BridgeCheck { .. } => "bridge-check",
            Self::Vanishing { .. } => "vanishing",
            Self::Dyson { .. } => "dyson",
            Self::Growth { .. } => "growth",
            Self::Selftest { .. } => "selftest",
            Self::Geometry { .. } => "geometry",
        }
    }

    /// The subcommand's fields as a JSON object.
    fn params(&self) -> Value {
        match serde_json::to_value(self) {
            Ok(Value::Object(map)) => map.into_iter().next().map(|(_, v)| v).unwrap_or(Value::Null),
            Ok(other) => other,
            Err(_) => Value::Null,
        }
    }

    fn run(&self, cfg: &PrecisionConfig, seed: u64) -> rankexact_core::Result<Outcome> {
        match self {
            Self::RankTable { n_max } => commands::rank_table_cmd(*n_max),
            Self::Coeff { ell, b, n } => commands::coeff(*ell, *b, *n, cfg),
            Self::Exact { ell, p, n, cmax, amax } => commands::exact(*ell, *p, *n, *cmax, *amax, cfg),
            Self::Bringmann { ell, u, n } => commands::bringmann(*ell, *u, *n, cfg),
            Self::Kloosterman { family, ell, param, n, modulus, p } => commands::kloosterman(*family, *ell, *param, *n, *modulus, *p, cfg),
            Self::BridgeCheck { p, c_multiples, a_max, ns, tolerance } => {
                commands::bridge_check(*p, *c_multiples, *a_max, ns, *tolerance, cfg)
            }
            Self::Vanishing { case, n, c } => commands::vanishing(case, *n, *c, cfg),
            Self::Dyson { identity, n_max, analytic } => commands::dyson(identity, *n_max, *analytic, cfg),
            Self::Growth { family, ell, param, n, p, x_max } => commands::growth(*family, *ell, *param, *n, *p, *x_max),
            Self::Selftest { level, modules } => commands::selftest(*level, modules, seed, cfg),
            Self::Geometry { p, a_max } => commands::geometry(*p, *a_max, cfg),
        }
    }
}

fn usage_error(command: &str, message: &str) -> ExitCode {
    let mut root = Cli::command();
    root.build();
    let usage = match root.find_subcommand_mut(command) {
        Some(sub) => sub.render_usage(),
        None => root.render_usage(),
    };
    eprintln!("error: {message}\n\n{usage}");
    ExitCode::from(2)
}

fn emit(cli: &Cli, manifest: &RunManifest, outcome: &Outcome) -> io::Result<()> {
    let mut sink: Box<dyn Write> = match &cli.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    if cli.csv {
        write_csv(&mut sink, manifest, outcome)?;
    } else {
        write_json(&mut sink, manifest, outcome)?;
    }
    sink.flush()
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let name = cli.command.name();
    let summation = match cli.summation {
        Summation::Sequential => SummationMode::SequentialAscending,
        Summation::Tree => SummationMode::DeterministicTree,
    };
    let cfg = match PrecisionConfig::new(cli.precision, summation) {
        Ok(cfg) => cfg,
        Err(e) => return usage_error(name, &e.to_string()),
    };
    if let Some(threads) = cli.threads {
        if threads == 0 {
            return usage_error(name, "--threads must be positive");
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(threads).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let outcome = match cli.command.run(&cfg, cli.seed) {
        Ok(outcome) => outcome,
        Err(e) => return usage_error(name, &e.to_string()),
    };
    let manifest = RunManifest::new(name, cli.command.params(), &cfg, cli.threads, cli.seed);
    if let Err(e) = emit(&cli, &manifest, &outcome) {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match outcome.pass {
        Some(false) => ExitCode::from(1),
        _ => ExitCode::SUCCESS,
    }
}
