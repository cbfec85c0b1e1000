//! The `detlab` command line.

use std::fs::File;
use std::io::{BufReader, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::detcount::{self, Engine, Limits, DEFAULT_BUDGET};
use crate::energy;
use crate::error::{Error, Result};
use crate::families::{generate, FamilyKind};
use crate::ground::GroundSet;
use crate::harness::{self, Cache, DMode, ReportFormat, ScanConfig, THREADS_ENV};
use crate::incidence::{self, Hyperplane, HyperplaneFamily, PointGrid};
use crate::matkit::Matrix;
use crate::scalar::{parse_scalar, FieldSpec, Scalar};

#[derive(Debug, Parser)]
#[command(
    name = "detlab",
    version,
    about = "Count matrices by determinant over finite scalar sets"
)]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Scalar field: `rational` or `fp:<p>`.
    #[arg(long, global = true, default_value = "rational")]
    pub field: String,
    /// Ground-set file: one scalar per line, `#` comments allowed.
    #[arg(long, global = true)]
    pub set: Option<PathBuf>,
    /// Family: interval, ap[:a:s], gp[:g], random[:lo:hi][:seed], explicit:<path>.
    #[arg(long, global = true)]
    pub family: Option<String>,
    /// Ground-set size for a family.
    #[arg(long, global = true)]
    pub size: Option<usize>,
    /// Sizes for a scan: `2..6`, `4,6,8` or a mix.
    #[arg(long, global = true)]
    pub sizes: Option<String>,
    /// Matrix dimension.
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    /// Determinant value, or `zero`, `sup`, `sup-all`.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub d: Option<String>,
    /// Counting engine: brute, rowblock, conv.
    #[arg(long, global = true)]
    pub engine: Option<String>,
    /// Worker threads (default: available parallelism).
    #[arg(long, global = true, env = THREADS_ENV)]
    pub threads: Option<usize>,
    /// Seed for the random family.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Enumeration budget in elementary steps (accepts `1e9`).
    #[arg(long, global = true, value_parser = parse_budget, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    /// Result cache file (JSONL).
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Output file (default stdout).
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Output format: jsonl or csv.
    #[arg(long, global = true, default_value = "jsonl")]
    pub format: String,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// D_n(X, d) for one ground set.
    Count,
    /// Every attained determinant with its count.
    Spectrum,
    /// Counts of m x n matrices by rank.
    Rank {
        /// Number of rows (default n).
        #[arg(long)]
        m: Option<usize>,
        /// Report only this rank.
        #[arg(long)]
        r: Option<usize>,
    },
    /// Additive energies and the bilinear-form count.
    Energy {
        #[arg(value_enum)]
        kind: EnergyKind,
        /// Matrix for `bilinear`, rows separated by `;`, e.g. `1,0;0,1`.
        #[arg(long)]
        matrix: Option<String>,
        /// Target value for `bilinear`.
        #[arg(long, allow_hyphen_values = true)]
        omega: Option<String>,
        /// Second ground-set file for `bilinear` (default: the first set).
        #[arg(long)]
        set_c: Option<PathBuf>,
        /// Also run the direct enumeration for `Estar`.
        #[arg(long)]
        brute: bool,
    },
    /// Point-hyperplane incidences on X^k.
    Incidence {
        #[arg(value_enum)]
        kind: IncidenceKind,
        /// Grid dimension.
        #[arg(long, default_value_t = 3)]
        k: usize,
        /// Plane file, one `a_1 ... a_k b` per line (default: planes from
        /// the cofactor vectors of 2 x 3 blocks, with offset --d).
        #[arg(long)]
        planes: Option<PathBuf>,
        /// Slicing parameter for `classify` (default: the admissible choice).
        #[arg(long)]
        r: Option<usize>,
    },
    /// Count across sizes of one family.
    Scan,
    /// Fit count ~ X^slope to a JSONL report.
    Fit {
        /// Report produced by `scan`.
        report: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EnergyKind {
    #[value(name = "N")]
    N,
    #[value(name = "T")]
    T,
    #[value(name = "S")]
    S,
    #[value(name = "Estar")]
    Estar,
    #[value(name = "bilinear")]
    Bilinear,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum IncidenceKind {
    Brute,
    Classify,
    Minors,
    Curves,
}

fn parse_budget(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    match s.parse::<f64>() {
        Ok(v) if v >= 0.0 && v.is_finite() && v.fract() == 0.0 && v <= u64::MAX as f64 => Ok(v as u64),
        _ => Err(format!("{s:?} is not a nonnegative integer budget")),
    }
}

/// `2..6` (inclusive), `4,6,8`, or comma-separated mixtures.
pub fn parse_sizes(s: &str) -> Result<Vec<usize>> {
    let bad = || Error::precondition(format!("cannot parse sizes {s:?}"));
    let mut out = Vec::new();
    for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        if let Some((a, b)) = part.split_once("..") {
            let a: usize = a.trim().parse().map_err(|_| bad())?;
            let b: usize = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
            if a > b {
                return Err(bad());
            }
            out.extend(a..=b);
        } else {
            out.push(part.parse().map_err(|_| bad())?);
        }
    }
    if out.is_empty() {
        return Err(bad());
    }
    Ok(out)
}

struct Context {
    common: Common,
    field: FieldSpec,
    limits: Limits,
    format: ReportFormat,
}

impl Context {
    fn family(&self) -> Result<FamilyKind> {
        let mut kind = match (&self.common.set, &self.common.family) {
            (Some(path), _) => FamilyKind::Explicit { path: path.clone() },
            (None, Some(f)) => f.parse()?,
            (None, None) => FamilyKind::Interval,
        };
        if let (FamilyKind::Random { seed, .. }, Some(s)) = (&mut kind, self.common.seed) {
            *seed = s;
        }
        Ok(kind)
    }

    fn ground_set(&self) -> Result<(FamilyKind, GroundSet)> {
        let kind = self.family()?;
        let size = match (&kind, self.common.size) {
            (_, Some(s)) => s,
            (FamilyKind::Explicit { path }, None) => GroundSet::read(path, self.field)?.len(),
            (_, None) => return Err(Error::precondition("--size is required with --family")),
        };
        let set = generate(&kind.clone().with_size(size), self.field)?;
        Ok((kind, set))
    }

    fn engine(&self) -> Result<Engine> {
        match &self.common.engine {
            Some(e) => e.parse(),
            None if self.common.n >= 2 => Ok(Engine::RowBlock),
            None => Ok(Engine::Brute),
        }
    }

    fn dmode(&self, default: DMode) -> Result<DMode> {
        match &self.common.d {
            Some(d) => DMode::parse(d, self.field),
            None => Ok(default),
        }
    }

    fn scalar_d(&self) -> Result<Scalar> {
        match self.dmode(DMode::Zero)? {
            DMode::Fixed(d) => Ok(d),
            DMode::Zero => Ok(Scalar::zero(self.field)),
            _ => Err(Error::precondition("this command needs a fixed --d value")),
        }
    }

    fn output(&self) -> Result<Box<dyn Write>> {
        Ok(match &self.common.out {
            Some(p) => Box::new(File::create(p).map_err(|e| Error::io(p, e))?),
            None => Box::new(std::io::stdout().lock()),
        })
    }

    /// Writes flat records as JSON lines or as CSV with the given columns.
    fn emit(&self, columns: &[&str], records: &[Vec<Value>]) -> Result<()> {
        let mut out = self.output()?;
        let io = |e: std::io::Error| Error::io(self.common.out.clone().unwrap_or_else(|| "<stdout>".into()), e);
        let text = |v: &Value| match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            other => other.to_string(),
        };
        match self.format {
            ReportFormat::Jsonl => {
                for rec in records {
                    let obj: serde_json::Map<String, Value> =
                        columns.iter().map(|c| c.to_string()).zip(rec.iter().cloned()).collect();
                    writeln!(out, "{}", Value::Object(obj)).map_err(io)?;
                }
            }
            ReportFormat::Csv => {
                let mut w = csv::Writer::from_writer(out);
                let csv_err = |e: csv::Error| Error::io("<output>", std::io::Error::other(e));
                w.write_record(columns).map_err(csv_err)?;
                for rec in records {
                    w.write_record(rec.iter().map(text)).map_err(csv_err)?;
                }
                w.flush().map_err(io)?;
            }
        }
        Ok(())
    }

    fn scan_config(&self, family: FamilyKind, sizes: Vec<usize>, default: DMode) -> Result<ScanConfig> {
        Ok(ScanConfig {
            family,
            sizes,
            field: self.field,
            n: self.common.n,
            dmode: self.dmode(default)?,
            engine: self.engine()?,
            limits: self.limits,
        })
    }

    fn run_rows(&self, cfg: &ScanConfig) -> Result<()> {
        let mut cache = self.common.cache.as_ref().map(Cache::open).transpose()?;
        let rows = harness::run_scan(cfg, cache.as_mut())?;
        let mut out = self.output()?;
        harness::write_rows(&rows, self.format, &mut out)?;
        match rows.iter().filter(|r| r.budget_hit).count() {
            0 => Ok(()),
            rows => Err(Error::BudgetRows {
                rows,
                budget: self.limits.budget,
            }),
        }
    }
}

fn count_value(c: &detcount::BigCount) -> Value {
    Value::String(c.to_string())
}

fn parse_matrix(text: &str, field: FieldSpec) -> Result<Matrix> {
    let rows = text
        .split(';')
        .map(|row| {
            row.split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| parse_scalar(t, field))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Matrix::from_rows(rows, field)
}

fn read_planes(path: &PathBuf, k: usize, field: FieldSpec) -> Result<HyperplaneFamily> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut fam = HyperplaneFamily::new();
    for line in text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
    {
        let vals = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| parse_scalar(t, field))
            .collect::<Result<Vec<_>>>()?;
        if vals.len() != k + 1 {
            return Err(Error::DimensionMismatch(format!(
                "plane line {line:?} has {} values, expected {}",
                vals.len(),
                k + 1
            )));
        }
        let (offset, coeffs) = vals.split_last().expect("nonempty");
        fam.insert(Hyperplane::new(coeffs.to_vec(), offset.clone())?)?;
    }
    Ok(fam)
}

fn dispatch(ctx: &Context, command: &Command) -> Result<()> {
    let n = ctx.common.n;
    match command {
        Command::Count => {
            let (kind, set) = ctx.ground_set()?;
            let cfg = ctx.scan_config(kind, vec![set.len()], DMode::Zero)?;
            ctx.run_rows(&cfg)
        }
        Command::Scan => {
            let sizes = match (&ctx.common.sizes, ctx.common.size) {
                (Some(s), _) => parse_sizes(s)?,
                (None, Some(s)) => vec![s],
                (None, None) => return Err(Error::precondition("scan needs --sizes")),
            };
            let cfg = ctx.scan_config(ctx.family()?, sizes, DMode::Zero)?;
            ctx.run_rows(&cfg)
        }
        Command::Spectrum => {
            let (_, set) = ctx.ground_set()?;
            let spec = detcount::det_spectrum(&set, n, ctx.engine()?, &ctx.limits)?;
            let recs: Vec<Vec<Value>> = spec
                .entries()
                .iter()
                .map(|(d, c)| vec![Value::String(d.to_string()), count_value(c)])
                .collect();
            ctx.emit(&["d", "count"], &recs)
        }
        Command::Rank { m, r } => {
            let (_, set) = ctx.ground_set()?;
            let m = m.unwrap_or(n);
            let dist = detcount::rank_distribution(&set, m, n, &ctx.limits)?;
            let recs: Vec<Vec<Value>> = dist
                .iter()
                .enumerate()
                .filter(|(rank, _)| r.is_none_or(|want| want == *rank))
                .map(|(rank, c)| vec![json!(m), json!(n), json!(rank), count_value(c)])
                .collect();
            if recs.is_empty() {
                return Err(Error::precondition(format!(
                    "rank must be at most min(m, n) = {}",
                    m.min(n)
                )));
            }
            ctx.emit(&["m", "n", "r", "count"], &recs)
        }
        Command::Energy {
            kind,
            matrix,
            omega,
            set_c,
            brute,
        } => {
            let (_, set) = ctx.ground_set()?;
            let x = set.len();
            match kind {
                EnergyKind::T | EnergyKind::N | EnergyKind::S => {
                    let exp = if *kind == EnergyKind::N { 3 } else { 4 };
                    ctx.limits.check_tuples(x, exp)?;
                    let dist = match kind {
                        EnergyKind::T => energy::r_distribution(&set),
                        EnergyKind::N => energy::q_distribution(&set),
                        _ => energy::q2_distribution(&set),
                    };
                    let name = format!("{kind:?}");
                    ctx.emit(
                        &["kind", "X", "expression", "distinct", "value"],
                        &[vec![
                            json!(name),
                            json!(x),
                            json!(dist.label()),
                            json!(dist.len()),
                            count_value(&dist.energy()),
                        ]],
                    )
                }
                EnergyKind::Estar => {
                    let pyramid = energy::dyadic_pyramid(&set, &ctx.limits)?;
                    let direct = if *brute {
                        count_value(&energy::energy_estar_brute(&set, &ctx.limits)?)
                    } else {
                        Value::Null
                    };
                    let classes: Vec<String> = pyramid
                        .classes
                        .iter()
                        .map(|c| format!("{}:{}", c.w, c.planes))
                        .collect();
                    ctx.emit(
                        &["kind", "X", "value", "brute", "max_w2_planes", "pyramid"],
                        &[vec![
                            json!("Estar"),
                            json!(x),
                            count_value(&pyramid.energy),
                            direct,
                            count_value(&pyramid.max_weighted()),
                            json!(classes.join(" ")),
                        ]],
                    )
                }
                EnergyKind::Bilinear => {
                    let m = parse_matrix(
                        matrix
                            .as_deref()
                            .ok_or_else(|| Error::precondition("bilinear needs --matrix"))?,
                        ctx.field,
                    )?;
                    let omega = parse_scalar(
                        omega
                            .as_deref()
                            .ok_or_else(|| Error::precondition("bilinear needs --omega"))?,
                        ctx.field,
                    )?;
                    let c = match set_c {
                        Some(p) => GroundSet::read(p, ctx.field)?,
                        None => set.clone(),
                    };
                    let count = energy::count_bilinear(&m, &set, &c, &omega, &ctx.limits)?;
                    ctx.emit(
                        &["kind", "k", "omega", "value"],
                        &[vec![
                            json!("bilinear"),
                            json!(m.rows()),
                            json!(omega.to_string()),
                            count_value(&count),
                        ]],
                    )
                }
            }
        }
        Command::Incidence { kind, k, planes, r } => {
            let (_, set) = ctx.ground_set()?;
            if *kind == IncidenceKind::Curves {
                let c = incidence::curve_incidences_n3(&set, &ctx.limits)?;
                return ctx.emit(
                    &["kind", "X", "direct", "via_curves", "agree"],
                    &[vec![
                        json!("curves"),
                        json!(set.len()),
                        count_value(&c.direct),
                        count_value(&c.via_curves),
                        json!(c.agree()),
                    ]],
                );
            }
            let d = ctx.scalar_d()?;
            if (*kind == IncidenceKind::Minors || planes.is_none()) && *k != 3 {
                return Err(Error::precondition("planes from cofactor vectors live in dimension 3"));
            }
            let grid = PointGrid::cube(&set, *k)?;
            let minor = match planes {
                None => Some(incidence::planes_from_minors(&set, &d, &ctx.limits)?),
                Some(_) if *kind == IncidenceKind::Minors => {
                    Some(incidence::planes_from_minors(&set, &d, &ctx.limits)?)
                }
                Some(_) => None,
            };
            let family = match (planes, &minor) {
                (Some(p), _) if *kind != IncidenceKind::Minors => read_planes(p, *k, ctx.field)?,
                (_, Some(mp)) => mp.family(),
                _ => unreachable!("one plane source is always chosen"),
            };
            match kind {
                IncidenceKind::Brute => {
                    let total = incidence::incidences_brute(&grid, &family, &ctx.limits)?;
                    ctx.emit(
                        &["kind", "points", "planes", "incidences"],
                        &[vec![
                            json!("brute"),
                            json!(grid.len().to_string()),
                            json!(family.len()),
                            count_value(&total),
                        ]],
                    )
                }
                IncidenceKind::Classify => {
                    let r = match r {
                        Some(r) => *r,
                        None => incidence::choose_r(&grid, family.len())?,
                    };
                    let dec = incidence::classify_incidences(&grid, &family, r, &ctx.limits)?;
                    let mut max_hit = 0;
                    for p in family.iter() {
                        max_hit = max_hit.max(incidence::cells_hit(p, &dec)?);
                    }
                    let t = dec.tallies;
                    ctx.emit(
                        &[
                            "kind",
                            "r",
                            "cells",
                            "I1",
                            "I2",
                            "I3",
                            "incidences",
                            "max_cells_hit",
                            "cells_bound",
                        ],
                        &[vec![
                            json!("classify"),
                            json!(r),
                            json!(dec.cell_count()),
                            json!(t.i1.to_string()),
                            json!(t.i2.to_string()),
                            json!(t.i3.to_string()),
                            json!(t.total().to_string()),
                            json!(max_hit),
                            json!(k * r.pow(*k as u32 - 1)),
                        ]],
                    )
                }
                IncidenceKind::Minors => {
                    let mp = minor.expect("minor planes computed");
                    let weighted = mp.weighted_incidences(&grid, &ctx.limits)?;
                    ctx.emit(
                        &[
                            "kind",
                            "d",
                            "planes",
                            "weight_sum",
                            "zero_bucket",
                            "weight_energy",
                            "weighted_incidences",
                        ],
                        &[vec![
                            json!("minors"),
                            json!(d.to_string()),
                            json!(mp.weights.len()),
                            count_value(&mp.weight_sum()),
                            count_value(&mp.zero),
                            count_value(&mp.weight_energy()),
                            count_value(&weighted),
                        ]],
                    )
                }
                IncidenceKind::Curves => unreachable!("handled above"),
            }
        }
        Command::Fit { report } => {
            let f = File::open(report).map_err(|e| Error::io(report, e))?;
            let rows = harness::read_rows(BufReader::new(f))?;
            let fit = harness::fit_exponent(&rows)?;
            ctx.emit(
                &[
                    "slope",
                    "intercept",
                    "residual_stderr",
                    "points_used",
                    "excluded",
                    "warning",
                ],
                &[vec![
                    json!(fit.slope),
                    json!(fit.intercept),
                    json!(fit.residual_stderr),
                    json!(fit.points_used),
                    json!(fit.excluded),
                    fit.warning.map_or(Value::Null, Value::String),
                ]],
            )
        }
    }
}

/// Runs a parsed command line.
pub fn run(cli: Cli) -> Result<()> {
    let field: FieldSpec = cli.common.field.parse()?;
    let format: ReportFormat = cli.common.format.parse()?;
    let threads = harness::resolve_threads(cli.common.threads);
    let ctx = Context {
        limits: Limits::with_budget(cli.common.budget),
        common: cli.common,
        field,
        format,
    };
    harness::with_threads(threads, || dispatch(&ctx, &cli.command))?
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match run(cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
