use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use otx_core::analysis::AnalysisError;
use otx_core::iet::{self, IetError};
use otx_core::markov::{self, MarkovError, OverTwistVerdict, SearchLimits, SearchOptions};
use otx_core::rational::{self, Rational};
use otx_core::report::AnalysisReport;
use otx_core::{catalog, sharkovsky_cmp, svg, Pattern};

const EXIT_INPUT: u8 = 1;
const EXIT_REFUTED: u8 = 2;
const EXIT_REJECTED: u8 = 3;
const EXIT_LIMIT: u8 = 4;

/// Over-twist patterns of interval maps: analysis, catalog, IET export and
/// bounded over-twist verification.
///
/// Permutations are given as 1-based images, e.g. `otx analyze 2 3 1` or
/// `otx analyze "[2,3,1]"`.
///
/// Exit codes: 0 success, 1 invalid input, 2 pattern refuted by `verify`,
/// 3 canonical IET construction rejected, 4 search limit exceeded.
///
/// The OTX_PARALLELISM environment variable sets the number of worker
/// threads used for loop enumeration (1 disables parallelism).
#[derive(Parser)]
#[command(name = "otx", version)]
struct Cli {
    /// Emit JSON (default). `--json false` prints plain text instead for
    /// analyze, iet, verify and cycles; catalog, sharkovsky and interval
    /// always print plain lines.
    #[arg(long, global = true, default_value_t = true, num_args = 0..=1,
          default_missing_value = "true", action = clap::ArgAction::Set)]
    json: bool,

    /// Abort a loop enumeration after this many loops.
    #[arg(long, global = true, value_name = "GUARD")]
    max_loops: Option<u64>,

    /// Abort a loop enumeration after this many seconds.
    #[arg(long, global = true, value_name = "SECONDS")]
    time_limit: Option<f64>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invariants, special set, islands and bound checks of a pattern.
    Analyze {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
    },
    /// List the catalog patterns with over-rotation number p/q.
    Catalog { p: usize, q: usize },
    /// Build the interval exchange conjugate to a pattern.
    Iet {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, value_enum, default_value_t = BlockMode::Canonical)]
        blocks: BlockMode,
        /// Also write an SVG plot of the exchange.
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
    },
    /// Check over-twist necessary conditions and search for witnesses up to
    /// period depth * q.
    Verify {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, default_value_t = 2)]
        depth: usize,
    },
    /// Periodic orbits of a given period of the P-linear map.
    Cycles {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long)]
        period: usize,
        /// Print the Markov graph in DOT format instead.
        #[arg(long)]
        dot: bool,
    },
    /// Compare two positive integers in the Sharkovsky ordering.
    Sharkovsky { m: u64, n: u64 },
    /// Estimate the over-rotation interval from orbits up to a period.
    Interval {
        #[arg(required = true, num_args = 1..)]
        perm: Vec<String>,
        #[arg(long, default_value_t = 8)]
        max_period: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BlockMode {
    Canonical,
    Greedy,
}

struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: message.to_string(),
        }
    }
}

impl From<MarkovError> for Failure {
    fn from(e: MarkovError) -> Self {
        let code = match e {
            MarkovError::LimitExceeded(_) => EXIT_LIMIT,
            _ => EXIT_INPUT,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type Outcome = Result<(String, u8), Failure>;

fn pattern_arg(words: &[String]) -> Result<Pattern, Failure> {
    Pattern::parse(&words.join(" ")).map_err(Failure::input)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

fn options(cli: &Cli) -> Result<SearchOptions, Failure> {
    let time_limit = match cli.time_limit {
        Some(t) if !(t.is_finite() && t > 0.0) => {
            return Err(Failure::input("--time-limit must be a positive number"))
        }
        t => t.map(Duration::from_secs_f64),
    };
    let sequential = std::env::var("OTX_PARALLELISM").is_ok_and(|v| v.trim() == "1");
    Ok(SearchOptions {
        limits: SearchLimits {
            max_loops: cli.max_loops,
            time_limit,
        },
        parallel: !sequential,
    })
}

fn configure_threads() -> Result<(), Failure> {
    let Ok(value) = std::env::var("OTX_PARALLELISM") else {
        return Ok(());
    };
    let n: usize = value
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| {
            Failure::input(format!(
                "OTX_PARALLELISM must be a positive integer, got {value:?}"
            ))
        })?;
    // a second initialization can only fail if a pool already exists
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global();
    Ok(())
}

fn analyze(cli: &Cli, perm: &[String]) -> Outcome {
    let report = AnalysisReport::new(&pattern_arg(perm)?);
    if cli.json {
        return Ok((to_json(&report), 0));
    }
    let mut out = format!(
        "pattern {}\nperiod {}\norp {}\norn {}\nmodality {}\nconvergent {}\ngreen {}\n",
        report.pattern,
        report.period,
        report.orp,
        rational::format(&report.orn),
        report.modality,
        report.convergent,
        report.green
    );
    if let Some(isl) = &report.islands {
        out += &format!("islands left {} right {}\n", isl.left, isl.right);
    }
    if !report.pieces.is_empty() {
        let pieces: Vec<String> = report.pieces.iter().map(ToString::to_string).collect();
        out += &format!("pieces {}: {}\n", pieces.len(), pieces.join(" "));
    }
    if let Some(inside) = report.orbit_in_special_set {
        out += &format!("orbit in special set {inside}\n");
    }
    if let Some(b) = &report.bounds {
        out += &format!("bounds hold {}\n", b.all_hold());
    }
    match report.catalog {
        Some(id) => out += &format!("catalog r={} p={} q={}\n", id.r, id.p, id.q),
        None => out += "catalog none\n",
    }
    Ok((out, 0))
}

fn catalog_cmd(p: usize, q: usize) -> Outcome {
    catalog::listing(p, q)
        .map(|s| (s, 0))
        .map_err(Failure::input)
}

fn iet_cmd(cli: &Cli, perm: &[String], mode: BlockMode, svg_path: Option<&PathBuf>) -> Outcome {
    let pattern = pattern_arg(perm)?;
    let blocks = match mode {
        BlockMode::Greedy => iet::greedy_blocks(&pattern),
        BlockMode::Canonical => iet::canonical_blocks(&pattern).map_err(|e| {
            let code = match e {
                IetError::Analysis(AnalysisError::NonConvergent { .. })
                | IetError::NotGreen
                | IetError::ZeroModality
                | IetError::NotInSpecialSet(_)
                | IetError::BlocksNotCollinear { .. } => EXIT_REJECTED,
                _ => EXIT_INPUT,
            };
            Failure {
                code,
                message: format!("canonical construction rejected: {e}"),
            }
        })?,
    };
    let (spec, witness) = iet::iet_from_blocks(&pattern, &blocks).map_err(|e| Failure {
        code: EXIT_REJECTED,
        message: format!("construction rejected: {e}"),
    })?;
    if let Some(path) = svg_path {
        std::fs::write(path, svg::iet_svg(&spec, &witness.orbit))
            .map_err(|e| Failure::input(format!("cannot write {}: {e}", path.display())))?;
    }
    if cli.json {
        return Ok((to_json(&spec.to_json(&witness.orbit)), 0));
    }
    let fmt = |v: &[Rational]| v.iter().map(rational::format).collect::<Vec<_>>().join(" ");
    let perm: Vec<String> = spec.signed_perm().iter().map(i64::to_string).collect();
    let out = format!(
        "n {}\nk {}\nlengths {}\nsigned_perm {}\ntranslations {}\norbit {}\nconjugacy verified {}\n",
        spec.n(),
        spec.k(),
        fmt(spec.lengths()),
        perm.join(" "),
        fmt(&spec.translations()),
        fmt(&witness.orbit),
        witness.verified
    );
    Ok((out, 0))
}

fn verify_cmd(cli: &Cli, perm: &[String], depth: usize) -> Outcome {
    let pattern = pattern_arg(perm)?;
    if depth == 0 {
        return Err(Failure::input("--depth must be at least 1"));
    }
    let verdict = markov::verify_overtwist_with(&pattern, depth, &options(cli)?)?;
    let code = if verdict.passed() { 0 } else { EXIT_REFUTED };
    let mut out = verdict.label() + "\n";
    if cli.json {
        out += &to_json(&verdict);
    } else if let OverTwistVerdict::RefutedWitness { witness } = &verdict {
        let pts: Vec<String> = witness.points.iter().map(rational::format).collect();
        out += &format!("witness orbit {}\n", pts.join(" "));
    }
    Ok((out, code))
}

fn cycles_cmd(cli: &Cli, perm: &[String], period: usize, dot: bool) -> Outcome {
    let pattern = pattern_arg(perm)?;
    if dot {
        return Ok((markov::markov_graph(&pattern).to_dot(), 0));
    }
    if period == 0 {
        return Err(Failure::input("--period must be at least 1"));
    }
    let cycles = markov::cycles_of_period_with(&pattern, period, &options(cli)?)?;
    if cli.json {
        return Ok((to_json(&cycles), 0));
    }
    let mut out = String::new();
    for c in &cycles {
        let pts: Vec<String> = c.sorted_points().iter().map(rational::format).collect();
        let pat = c
            .pattern
            .as_ref()
            .map(ToString::to_string)
            .unwrap_or_default();
        out += &format!("{{{}}}\t[{pat}]\n", pts.join(", "));
    }
    Ok((out, 0))
}

fn sharkovsky_cmd(m: u64, n: u64) -> Outcome {
    if m == 0 || n == 0 {
        return Err(Failure::input("arguments must be positive integers"));
    }
    let rel = match sharkovsky_cmp(m, n) {
        std::cmp::Ordering::Greater => "≻",
        std::cmp::Ordering::Less => "≺",
        std::cmp::Ordering::Equal => "=",
    };
    Ok((format!("{m} {rel} {n}\n"), 0))
}

fn interval_cmd(cli: &Cli, perm: &[String], max_period: usize) -> Outcome {
    let pattern = pattern_arg(perm)?;
    if max_period < 2 {
        return Err(Failure::input("--max-period must be at least 2"));
    }
    let (lo, hi) = markov::rotation_interval_estimate_with(&pattern, max_period, &options(cli)?)?;
    Ok((
        format!("[{}, {}]\n", rational::format(&lo), rational::format(&hi)),
        0,
    ))
}

fn run(cli: &Cli) -> Outcome {
    configure_threads()?;
    match &cli.command {
        Command::Analyze { perm } => analyze(cli, perm),
        Command::Catalog { p, q } => catalog_cmd(*p, *q),
        Command::Iet { perm, blocks, svg } => iet_cmd(cli, perm, *blocks, svg.as_ref()),
        Command::Verify { perm, depth } => verify_cmd(cli, perm, *depth),
        Command::Cycles { perm, period, dot } => cycles_cmd(cli, perm, *period, *dot),
        Command::Sharkovsky { m, n } => sharkovsky_cmd(*m, *n),
        Command::Interval { perm, max_period } => interval_cmd(cli, perm, *max_period),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { 0 });
        }
    };
    match run(&cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("otx: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
