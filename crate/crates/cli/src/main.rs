//! `cblocks`: ranks, degrees, divisor classes and verification scans.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or malformed
//! input, 3 capability (no basis for this `n`, dependent basis).

mod scan;
mod wire;

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use cblocks::props::{
    check_plussing, check_prop_main, check_rank_monotonicity, check_stabilization,
    reproduce_examples, STABLE_WEIGHTS,
};
use cblocks::{
    deg4, divisor_class, divisor_class_in, intersect, intersection_vector, rank, stabilizing_lie_rank,
    BoundaryBasis, BundleSpec, DivisorClass, FCurve, Family, VerificationReport, WeightVector,
};

use crate::wire::BundleSpecWire;

#[derive(Parser)]
#[command(name = "cblocks", version, about = "Conformal blocks ranks, F-curve degrees and divisor classes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the bundle as JSON, after sorting and validation.
    Bundle(BundleArgs),
    /// Print the rank of a bundle.
    Rank(BundleArgs),
    /// Print the degree of a four-point bundle.
    Degree4(BundleArgs),
    /// Print the degree of a bundle on one F-curve.
    Intersect {
        #[command(flatten)]
        bundle: BundleArgs,
        /// F-curve as 1-based blocks, e.g. `1|2|3|456`.
        #[arg(long)]
        curve: String,
    },
    /// Print the divisor class, as basis coordinates or F-curve degrees.
    Divisor {
        #[command(flatten)]
        bundle: BundleArgs,
        #[arg(long, value_enum, default_value_t = Format::Coords)]
        format: Format,
        /// Boundary subsets, one per line, as 1-based index lists.
        #[arg(long)]
        basis: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a verification scan and print a JSON report.
    Verify(VerifyArgs),
    /// Tabulate ranks, triviality and class hashes as CSV.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        lmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct BundleArgs {
    #[arg(long, value_enum, required_unless_present = "bundle")]
    family: Option<FamilyArg>,
    #[arg(long, required_unless_present = "bundle")]
    level: Option<u32>,
    /// Comma-separated weights; sorted unless `--labeled`.
    #[arg(long, value_delimiter = ',', required_unless_present = "bundle")]
    weights: Option<Vec<u32>>,
    /// Bundle as JSON; its weights keep their point order.
    #[arg(long, conflicts_with_all = ["family", "level", "weights"])]
    bundle: Option<String>,
    /// Reject weights that are not listed in non-increasing order.
    #[arg(long)]
    strict_order: bool,
    /// Attach the weights to points 1..n in the order given.
    #[arg(long, conflicts_with = "strict_order")]
    labeled: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Sl2,
    Spc,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Self {
        match f {
            FamilyArg::Sl2 => Family::Sl2,
            FamilyArg::Spc => Family::Spc,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Coords,
    Fvec,
}

#[derive(Clone, Copy, ValueEnum)]
enum Prop {
    Main,
    Stab,
    Mono,
    Plussing,
    Examples,
    All,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(value_enum)]
    prop: Prop,
    #[arg(long, default_value_t = 4)]
    n: usize,
    #[arg(long, default_value_t = 5)]
    lmax: u32,
    #[arg(long, value_delimiter = ',')]
    weights: Option<Vec<u32>>,
    #[arg(long, default_value_t = 3)]
    extra: u32,
    /// Highest level for `mono`; defaults to three past the stable level.
    #[arg(long)]
    rhi: Option<u32>,
    /// Level for `plussing`.
    #[arg(long, default_value_t = 3)]
    level: u32,
    /// Add `elapsed_ms` to the report.
    #[arg(long)]
    timing: bool,
}

/// A command failure with its exit code.
struct Exit {
    code: u8,
    message: String,
}

impl Exit {
    fn usage(message: impl Into<String>) -> Self {
        Exit { code: 2, message: message.into() }
    }
}

impl From<cblocks::Error> for Exit {
    fn from(e: cblocks::Error) -> Self {
        use cblocks::Error::*;
        let code = match e {
            BasisUnavailable(_) | SingularBasis { .. } | InconsistentSystem => 3,
            _ => 2,
        };
        Exit { code, message: e.to_string() }
    }
}

impl From<io::Error> for Exit {
    fn from(e: io::Error) -> Self {
        Exit::usage(e.to_string())
    }
}

impl From<csv::Error> for Exit {
    fn from(e: csv::Error) -> Self {
        Exit::usage(e.to_string())
    }
}

type CmdResult = Result<u8, Exit>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = configure_threads().and_then(|()| run(cli.command));
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("cblocks: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn configure_threads() -> Result<(), Exit> {
    let Ok(raw) = std::env::var("CBLOCKS_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Exit::usage(format!("CBLOCKS_THREADS must be a positive integer, got {raw:?}")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Exit::usage(e.to_string()))
}

fn run(command: Command) -> CmdResult {
    match command {
        Command::Bundle(args) => {
            println!("{}", BundleSpecWire::from(&args.bundle()?).emit());
            Ok(0)
        }
        Command::Rank(args) => {
            let b = args.bundle()?;
            println!("{}", rank(b.weights(), b.level())?);
            Ok(0)
        }
        Command::Degree4(args) => {
            let b = args.bundle()?;
            println!("{}", deg4(b.family(), b.weights(), b.level())?);
            Ok(0)
        }
        Command::Intersect { bundle, curve } => {
            let b = bundle.bundle()?;
            let c: FCurve = curve.parse()?;
            println!("{}", intersect(&b, &c)?);
            Ok(0)
        }
        Command::Divisor { bundle, format, basis, out } => {
            let b = bundle.bundle()?;
            let text = match format {
                Format::Coords => coords_text(&class_of(&b, basis.as_deref())?),
                Format::Fvec => fvec_text(&b)?,
            };
            emit(out.as_deref(), text.as_bytes())?;
            Ok(0)
        }
        Command::Verify(args) => verify(args),
        Command::Scan { n, lmax, out } => {
            let table = scan::table(n, lmax)?;
            emit(out.as_deref(), &table)?;
            Ok(0)
        }
    }
}

impl BundleArgs {
    fn bundle(&self) -> Result<BundleSpec, Exit> {
        if let Some(json) = &self.bundle {
            let wire = BundleSpecWire::parse(json).map_err(|e| Exit::usage(format!("bad --bundle: {e}")))?;
            return Ok(wire.to_bundle()?);
        }
        // clap enforces presence when --bundle is absent
        let family = Family::from(self.family.expect("required"));
        let level = self.level.expect("required");
        let mut weights = self.weights.clone().expect("required");
        if self.strict_order && weights.windows(2).any(|p| p[0] < p[1]) {
            return Err(Exit::usage("weights must be listed in non-increasing order"));
        }
        if !self.labeled {
            weights.sort_unstable_by(|a, b| b.cmp(a));
        }
        Ok(BundleSpec::labeled(family, level, weights)?)
    }
}

fn class_of(b: &BundleSpec, basis: Option<&Path>) -> Result<DivisorClass, Exit> {
    match basis {
        None => Ok(divisor_class(b)?),
        Some(path) => {
            let basis = read_basis(path, b.n())?;
            Ok(divisor_class_in(b, &basis)?)
        }
    }
}

fn read_basis(path: &Path, n: usize) -> Result<BoundaryBasis, Exit> {
    let text = fs::read_to_string(path)
        .map_err(|e| Exit::usage(format!("cannot read basis {}: {e}", path.display())))?;
    let mut subsets = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let set = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| t.parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Exit::usage(format!("{}:{}: {e}", path.display(), i + 1)))?;
        subsets.push(set);
    }
    let id = path.file_name().map_or_else(|| "basis".into(), |s| s.to_string_lossy().into_owned());
    Ok(BoundaryBasis::from_one_based(id, n, &subsets)?)
}

fn coords_text(class: &DivisorClass) -> String {
    let parts: Vec<String> = class.coords.iter().map(|q| q.to_string()).collect();
    format!("{}\n", parts.join(","))
}

fn fvec_text(b: &BundleSpec) -> Result<String, Exit> {
    let v = intersection_vector(b)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(["blocks", "degree"])?;
    for (c, d) in v.iter() {
        w.write_record([c.to_string(), d.to_string()])?;
    }
    let bytes = w.into_inner().map_err(|e| Exit::usage(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("ascii"))
}

fn emit(out: Option<&Path>, bytes: &[u8]) -> Result<(), Exit> {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| Exit::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = io::stdout().lock();
            stdout.write_all(bytes)?;
            Ok(stdout.flush()?)
        }
    }
}

#[derive(Serialize)]
struct TimedReport<'a> {
    #[serde(flatten)]
    report: &'a VerificationReport,
    elapsed_ms: u128,
}

fn verify(args: VerifyArgs) -> CmdResult {
    let weights = || -> Result<WeightVector, Exit> {
        let w = args
            .weights
            .clone()
            .ok_or_else(|| Exit::usage("this proposition needs --weights"))?;
        Ok(WeightVector::new(w)?)
    };
    let default_weights = || WeightVector::new(STABLE_WEIGHTS.to_vec()).expect("even sum");
    let rhi_for = |w: &WeightVector| {
        args.rhi
            .unwrap_or_else(|| stabilizing_lie_rank(w).map_or(w.max_entry().max(1), |r| r + 1) + 3)
    };

    let report = match args.prop {
        Prop::Main => check_prop_main(args.n, args.lmax)?,
        Prop::Stab => check_stabilization(&weights()?, args.extra)?,
        Prop::Mono => {
            let w = weights()?;
            check_rank_monotonicity(&w, rhi_for(&w))?
        }
        Prop::Plussing => check_plussing(args.n, args.level)?,
        Prop::Examples => reproduce_examples()?,
        Prop::All => {
            let w = match &args.weights {
                Some(_) => weights()?,
                None => default_weights(),
            };
            let parts = vec![
                reproduce_examples()?,
                check_prop_main(args.n, args.lmax)?,
                check_stabilization(&w, args.extra)?,
                check_rank_monotonicity(&w, rhi_for(&w))?,
                check_plussing(args.n, args.level)?,
            ];
            VerificationReport::merge("all", parts)
        }
    };

    let json = if args.timing {
        serde_json::to_string_pretty(&TimedReport {
            report: &report,
            elapsed_ms: report.elapsed.as_millis(),
        })
    } else {
        serde_json::to_string_pretty(&report)
    }
    .expect("report serializes");
    println!("{json}");
    Ok(if report.is_pass() { 0 } else { 1 })
}
