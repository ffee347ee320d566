//! `ctqw` — classify, sweep, and verify continuous-time quantum walks on
//! circulant graphs from the command line.
//!
//! Exit codes: 0 success, 1 internal error, 2 invalid input, 3 request over
//! the built-in scale limits.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ctqw::classify::verify_certificate;
use ctqw::spectrum::DEFAULT_INT_TOL;
use ctqw::sweep::convergence_report;
use ctqw::{census, classify, verify, ConnectionSet, Error, Time, Walk};

const EXIT_INTERNAL: u8 = 1;
const EXIT_INPUT: u8 = 2;
const EXIT_SCALE: u8 = 3;

#[derive(Parser)]
#[command(
    name = "ctqw",
    about = "Continuous-time quantum walks on circulant graphs",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the eigenvalues of a circulant graph.
    Spectrum(SpectrumArgs),
    /// Classify a circulant graph for antipodal state transfer.
    Classify(ClassifyArgs),
    /// Evaluate one transfer amplitude H(t)_{u,v}.
    Fidelity(FidelityArgs),
    /// Sweep fidelities over lattice times 2*pi*k or a dense grid.
    Sweep(SweepArgs),
    /// Run the randomized invariant batteries.
    Verify(VerifyArgs),
    /// Exhaustive census over all symmetric sets of small orders.
    Enumerate(EnumerateArgs),
}

/// Graph selection shared by most subcommands: an explicit connection set or
/// the gcd-set over a divisor list, never both.
#[derive(Args)]
struct GraphArgs {
    /// Order of the cyclic group.
    #[arg(long)]
    n: u64,
    /// Comma-separated connection set, e.g. 1,7.
    #[arg(long, value_delimiter = ',', conflicts_with = "divisors")]
    set: Option<Vec<u64>>,
    /// Comma-separated proper divisors; the graph is the gcd-set over them.
    #[arg(long, value_delimiter = ',')]
    divisors: Option<Vec<u64>>,
}

impl GraphArgs {
    fn build(&self) -> Result<ConnectionSet, CliError> {
        match (&self.set, &self.divisors) {
            (Some(set), None) => Ok(ConnectionSet::new(self.n, set)?),
            (None, Some(divisors)) => Ok(ConnectionSet::gcd_set(self.n, divisors)?),
            _ => Err(CliError::input(
                "exactly one of --set or --divisors is required",
            )),
        }
    }
}

#[derive(Args)]
struct SpectrumArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Also report integrality and the max deviation from the integers.
    #[arg(long)]
    check_integrality: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct ClassifyArgs {
    #[command(flatten)]
    graph: GraphArgs,
    /// Emit JSON (the default output is already JSON; kept for symmetry).
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct FidelityArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    u: u64,
    #[arg(long)]
    v: u64,
    /// Time: a real number, or an exact lattice literal like 2pi*6.
    #[arg(long)]
    t: String,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[arg(long)]
    u: u64,
    #[arg(long)]
    v: u64,
    /// Lattice sweep upper bound: k = 1..=kmax.
    #[arg(long, default_value_t = 100_000)]
    kmax: u64,
    /// Sweep a dense grid on [0, tmax] instead of the lattice.
    #[arg(long)]
    dense: bool,
    #[arg(long, requires = "dense")]
    tmax: Option<f64>,
    #[arg(long, requires = "dense")]
    step: Option<f64>,
    /// Report the first grid point reaching this fidelity.
    #[arg(long)]
    threshold: Option<f64>,
    /// Write the trace CSV here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Emit only the envelope section.
    #[arg(long)]
    envelope_only: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Cases per battery.
    #[arg(long, default_value_t = 100)]
    cases: usize,
    #[arg(long, default_value_t = verify::Config::default().seed)]
    seed: u64,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct EnumerateArgs {
    /// Largest order to enumerate (from 2 up).
    #[arg(long)]
    nmax: u64,
    /// Lattice sweep bound per graph.
    #[arg(long, default_value_t = 1000)]
    kmax: u64,
    #[arg(long)]
    json: bool,
}

/// Internal error type carrying the exit code.
struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INPUT,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        CliError {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        let code = match err {
            Error::OrderTooLargeForOracle { .. } | Error::TooLarge { .. } => EXIT_SCALE,
            _ => EXIT_INPUT,
        };
        CliError {
            code,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError::internal(err.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::internal(err.to_string())
    }
}

/// Parse `2pi*K` exactly into a lattice time, otherwise a plain float.
fn parse_time(text: &str) -> Result<Time, CliError> {
    let text = text.trim();
    if let Some(k) = text.strip_prefix("2pi*") {
        let k: u64 = k
            .parse()
            .map_err(|_| CliError::input(format!("bad lattice multiplier in {text:?}")))?;
        return Ok(Time::Lattice(k));
    }
    let t: f64 = text
        .parse()
        .map_err(|_| CliError::input(format!("bad time {text:?}: use a float or 2pi*K")))?;
    Ok(Time::Real(t))
}

fn configure_threads() {
    if let Ok(v) = std::env::var("WALK_THREADS") {
        if let Ok(threads) = v.parse::<usize>() {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
    }
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {}", err.message);
            ExitCode::from(err.code)
        }
    }
}

fn run(cli: Cli) -> Result<(), CliError> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Spectrum(args) => {
            let set = args.graph.build()?;
            let spec = ctqw::circulant_eigenvalues(&set);
            if args.json {
                let mut doc = serde_json::json!({
                    "n": spec.n(),
                    "values": spec.values(),
                });
                if args.check_integrality {
                    doc["integral"] = spec.is_integral().into();
                    doc["max_int_deviation"] = spec.max_int_deviation().into();
                    doc["tol_int"] = DEFAULT_INT_TOL.into();
                }
                writeln!(out, "{}", serde_json::to_string(&doc)?)?;
            } else {
                for (l, value) in spec.values().iter().enumerate() {
                    writeln!(out, "{l},{value}")?;
                }
                if args.check_integrality {
                    writeln!(out, "# integral,{}", spec.is_integral())?;
                    writeln!(out, "# max_int_deviation,{}", spec.max_int_deviation())?;
                }
            }
        }
        Command::Classify(args) => {
            let set = args.graph.build()?;
            let verdict = classify::classify(&set);
            debug_assert!(verify_certificate(&set, &verdict));
            writeln!(out, "{}", serde_json::to_string(&verdict)?)?;
        }
        Command::Fidelity(args) => {
            let set = args.graph.build()?;
            let t = parse_time(&args.t)?;
            let amp = Walk::new(set).amplitude(args.u, args.v, t)?;
            if args.json {
                let doc = serde_json::json!({
                    "fidelity": amp.fidelity(),
                    "phase": amp.phase(),
                    "re": amp.value().re,
                    "im": amp.value().im,
                });
                writeln!(out, "{}", serde_json::to_string(&doc)?)?;
            } else {
                writeln!(out, "fidelity,phase")?;
                writeln!(out, "{},{}", amp.fidelity(), amp.phase())?;
            }
        }
        Command::Sweep(args) => {
            let set = args.graph.build()?;
            let walk = Walk::new(set);
            let trace = if args.dense {
                let tmax = args
                    .tmax
                    .ok_or_else(|| CliError::input("--dense needs --tmax"))?;
                let step = args
                    .step
                    .ok_or_else(|| CliError::input("--dense needs --step"))?;
                ctqw::sweep_dense(&walk, args.u, args.v, tmax, step)?
            } else {
                ctqw::sweep_lattice(&walk, args.u, args.v, args.kmax)?
            };
            match &args.out {
                Some(path) => {
                    let mut file = BufWriter::new(File::create(path)?);
                    trace.write_csv(&mut file, args.envelope_only)?;
                    file.flush()?;
                }
                None => trace.write_csv(&mut out, args.envelope_only)?,
            }
            if let Some(threshold) = args.threshold {
                if let Some(report) = convergence_report(&trace, threshold) {
                    writeln!(out, "# threshold,{threshold}")?;
                    match report.first_reaching {
                        Some(s) => writeln!(out, "# first_reaching,{},{}", s.index, s.fidelity)?,
                        None => writeln!(out, "# first_reaching,absent,")?,
                    }
                    let b = report.best;
                    writeln!(out, "# best,{},{},{}", b.index, b.fidelity, b.phase)?;
                }
            }
        }
        Command::Verify(args) => {
            let config = verify::Config {
                seed: args.seed,
                cases: args.cases,
            };
            let results = verify::run_all(&config);
            let mut all_passed = true;
            if args.json {
                writeln!(out, "{}", serde_json::to_string(&results)?)?;
                all_passed = results.iter().all(|s| s.passed);
            } else {
                for s in &results {
                    all_passed &= s.passed;
                    writeln!(
                        out,
                        "{} {} cases={} max_residual={:e} tolerance={:e}",
                        if s.passed { "PASS" } else { "FAIL" },
                        s.name,
                        s.cases,
                        s.max_residual,
                        s.tolerance
                    )?;
                }
            }
            if !all_passed {
                return Err(CliError::internal("one or more invariant batteries failed"));
            }
        }
        Command::Enumerate(args) => {
            if args.nmax < 2 {
                return Err(CliError::input("--nmax must be at least 2"));
            }
            let orders: Vec<u64> = (2..=args.nmax).collect();
            let rows = census::run(&orders, args.kmax)?;
            let contradictions = rows.iter().filter(|r| r.contradiction).count();
            if args.json {
                writeln!(out, "{}", serde_json::to_string(&rows)?)?;
            } else {
                census::write_csv(&rows, &mut out)?;
                writeln!(out, "# contradictions,{contradictions}")?;
            }
            if contradictions > 0 {
                return Err(CliError::internal(format!(
                    "census found {contradictions} contradiction(s)"
                )));
            }
        }
    }
    Ok(())
}
