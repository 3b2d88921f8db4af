//! `normctl`: certified inversion in unitized convolution algebras on finite
//! abelian groups.
//!
//! Exit status: 0 success, 1 hypothesis violation or failed verification,
//! 2 parse or configuration error, 3 element not invertible.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use normctl::harness::{
    self, Decimal, Execution, Pipeline, ReportRow, SampleSpec, SearchOptions, Strategy, SweepConfig,
};
use normctl::inversion::{self, bezout_solve, best_certified_bound};
use normctl::{AlgebraKind, Error, Family, Group, Theorem, UnitizedElement};

const VERSION_HEADER: &str = concat!("# normctl ", env!("CARGO_PKG_VERSION"));

#[derive(Parser)]
#[command(name = "normctl", version, about = "Certified inversion in A_p(G)^1 and L^p(G)_1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Invert one element and report its certified bound.
    Invert(InvertArgs),
    /// Run a certification campaign on random admissible elements.
    Certify(CertifyArgs),
    /// Run campaigns over a grid of families, exponents, gaps and groups.
    Sweep(SweepArgs),
    /// Estimate the worst-case inverse norm from below by hill climbing.
    Search(SearchArgs),
    /// Solve sum_k x_k y_k = 1.
    Bezout(BezoutArgs),
}

#[derive(Args)]
struct KindArgs {
    /// Algebra family; defaults to the family of --theorem where given, else ap.
    #[arg(long, value_enum)]
    kind: Option<FamilyArg>,
    /// Exponent p >= 1.
    #[arg(long)]
    p: Decimal,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Ap,
    Lp,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Ap => Family::Ap,
            FamilyArg::Lp => Family::Lp,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct InvertArgs {
    /// Element JSON: {"group":[..],"lambda":[re,im],"f":[[re,im],..]}.
    #[arg(long, short)]
    input: PathBuf,
    #[command(flatten)]
    kind: KindArgs,
    /// Gap to certify at; defaults to the measured gap.
    #[arg(long)]
    delta: Option<Decimal>,
    /// Pipeline: auto, splitting, thm5, thm6, thm7, lp1, lp2 or oracle.
    #[arg(long, default_value = "auto")]
    theorem: Pipeline,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
    /// Re-read the emitted inverse and check x * inverse = 1.
    #[arg(long)]
    check: bool,
    /// With --check: verify this inverse instead of computing one.
    #[arg(long, requires = "check")]
    inverse: Option<PathBuf>,
    /// Residual tolerance for --check.
    #[arg(long, default_value_t = 1e-9)]
    tolerance: f64,
}

#[derive(Args)]
struct CampaignArgs {
    #[arg(long, default_value_t = 1000)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// spectral or boundary.
    #[arg(long, default_value = "boundary")]
    strategy: Strategy,
    /// Run trials on one thread.
    #[arg(long)]
    serial: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct CertifyArgs {
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long)]
    delta: Decimal,
    /// Group orders: 8, 3x4 or [3,4].
    #[arg(long)]
    group: Group,
    #[arg(long, default_value = "auto")]
    theorem: Pipeline,
    #[command(flatten)]
    campaign: CampaignArgs,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long, value_enum, value_delimiter = ',', default_value = "ap,lp")]
    kinds: Vec<FamilyArg>,
    #[arg(long, value_delimiter = ',', required = true)]
    ps: Vec<Decimal>,
    #[arg(long, value_delimiter = ',', required = true)]
    deltas: Vec<Decimal>,
    /// Space-separated groups, e.g. `--groups 8 3x4`.
    #[arg(long, num_args = 1.., required = true)]
    groups: Vec<Group>,
    #[arg(long, value_delimiter = ',', default_value = "auto")]
    theorems: Vec<Pipeline>,
    #[command(flatten)]
    campaign: CampaignArgs,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long)]
    delta: Decimal,
    #[arg(long)]
    group: Group,
    /// Hill-climbing steps per restart.
    #[arg(long, default_value_t = 5000)]
    iterations: usize,
    #[arg(long, default_value_t = 8)]
    restarts: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    serial: bool,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct BezoutArgs {
    /// JSON array of elements on a common group.
    #[arg(long, short)]
    input: PathBuf,
    #[command(flatten)]
    kind: KindArgs,
    #[arg(long)]
    delta: Option<Decimal>,
    /// Write to this file instead of stdout
    #[arg(long, short)]
    output: Option<PathBuf>,
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Lib(Error),
    Config(String),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Lib(Error::HypothesisViolated { .. } | Error::Internal(_)) => 1,
            Failure::Lib(Error::NotInvertible(_)) => 3,
            Failure::Lib(_) | Failure::Config(_) => 2,
            Failure::Verify(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Config(m) | Failure::Verify(m) => m.clone(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Invert(a) => invert(a),
        Command::Certify(a) => certify(a),
        Command::Sweep(a) => sweep(a),
        Command::Search(a) => search(a),
        Command::Bezout(a) => bezout(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.exit_code())
        }
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Config(format!("cannot read {}: {e}", path.display())))
}

fn emit(output: Option<&Path>, text: &str) -> CmdResult {
    match output {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Config(format!("cannot write {}: {e}", path.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Config(format!("cannot write to stdout: {e}"))),
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report types serialize");
    s.push('\n');
    s
}

fn resolve_kind(args: &KindArgs, pipeline: Option<Pipeline>) -> Result<AlgebraKind, Failure> {
    let family = match (args.kind, pipeline) {
        (Some(k), _) => k.into(),
        (None, Some(Pipeline::Fixed(Theorem::ThmLp1 | Theorem::ThmLp2))) => Family::Lp,
        (None, _) => Family::Ap,
    };
    Ok(AlgebraKind::new(family, args.p.value())?)
}

fn invert(args: InvertArgs) -> CmdResult {
    let kind = resolve_kind(&args.kind, Some(args.theorem))?;
    let x = UnitizedElement::from_json(&read(&args.input)?)?;
    let delta = args.delta.as_ref().map(Decimal::value);

    if let Some(path) = &args.inverse {
        let text = read(path)?;
        let value: serde_json::Value = serde_json::from_str(&text).map_err(Error::from)?;
        let element = value.get("inverse").cloned().unwrap_or(value);
        let y: UnitizedElement = serde_json::from_value(element).map_err(Error::from)?;
        return verify(&x, &y, kind, args.tolerance);
    }

    let out = match args.theorem {
        Pipeline::Auto => inversion::auto_invert(&x, kind, delta)?,
        Pipeline::Fixed(t) => inversion::invert_with(t, &x, kind, delta)?,
    };
    let text = to_json(&out);
    emit(args.output.as_deref(), &text)?;
    if args.check {
        let back: normctl::CertifiedInverse = serde_json::from_str(&text).map_err(Error::from)?;
        verify(&x, &back.inverse, kind, args.tolerance)?;
    }
    Ok(())
}

fn verify(x: &UnitizedElement, y: &UnitizedElement, kind: AlgebraKind, tolerance: f64) -> CmdResult {
    let r = inversion::residual(x, y, kind)?;
    if r <= tolerance {
        eprintln!("verified: ||x*y - 1|| = {r:e} <= {tolerance:e}");
        Ok(())
    } else {
        Err(Failure::Verify(format!("verification failed: ||x*y - 1|| = {r:e} > {tolerance:e}")))
    }
}

fn execution(serial: bool) -> Execution {
    if serial {
        Execution::Serial
    } else {
        Execution::Parallel
    }
}

fn emit_rows(rows: &[ReportRow], campaign: &CampaignArgs) -> CmdResult {
    let text = match campaign.format {
        Format::Json => to_json(&rows),
        Format::Csv => {
            let mut buf = format!("{VERSION_HEADER}\n").into_bytes();
            harness::write_csv(rows, &mut buf)?;
            String::from_utf8(buf).expect("csv output is utf-8")
        }
    };
    emit(campaign.output.as_deref(), &text)
}

fn certify(args: CertifyArgs) -> CmdResult {
    let kind = resolve_kind(&args.kind, Some(args.theorem))?;
    let c = &args.campaign;
    let spec = SampleSpec::new(args.group, kind, args.delta.value(), c.seed, c.strategy)?;
    let report = harness::certify_campaign(&spec, args.theorem, c.trials, execution(c.serial))?;
    if c.format == Format::Json {
        return emit(c.output.as_deref(), &to_json(&report));
    }
    emit_rows(&[report.to_row(args.kind.p.clone(), args.delta)], c)
}

fn sweep(args: SweepArgs) -> CmdResult {
    let config = SweepConfig {
        families: args.kinds.iter().map(|&k| k.into()).collect(),
        ps: args.ps,
        deltas: args.deltas,
        groups: args.groups,
        pipelines: args.theorems,
        trials: args.campaign.trials,
        seed: args.campaign.seed,
        strategy: args.campaign.strategy,
        execution: execution(args.campaign.serial),
    };
    let rows = harness::sweep(&config)?;
    emit_rows(&rows, &args.campaign)
}

fn search(args: SearchArgs) -> CmdResult {
    let kind = resolve_kind(&args.kind, None)?;
    let delta = args.delta.value();
    let options = SearchOptions {
        iterations: args.iterations,
        restarts: args.restarts,
        seed: args.seed,
        execution: execution(args.serial),
    };
    let est = harness::extremal_search_with(kind, delta, &args.group, &options)?;
    match best_certified_bound(kind, delta) {
        Some((t, b)) => eprintln!("lower bound {} (certified upper bound {b} from {t})", est.lower_bound),
        None => eprintln!("lower bound {}", est.lower_bound),
    }
    emit(args.output.as_deref(), &to_json(&est))
}

fn bezout(args: BezoutArgs) -> CmdResult {
    let kind = resolve_kind(&args.kind, None)?;
    let xs: Vec<UnitizedElement> = serde_json::from_str(&read(&args.input)?).map_err(Error::from)?;
    let sol = bezout_solve(&xs, kind, args.delta.as_ref().map(Decimal::value))?;
    emit(args.output.as_deref(), &to_json(&sol))
}
