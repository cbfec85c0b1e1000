//! Experiment orchestration: scans of a family across sizes, a persistent
//! result cache, exponent fitting and report output.

mod cache;
mod fit;
mod report;

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::detcount::{count_det, det_spectrum, BigCount, Engine, Limits};
use crate::error::{Error, Result};
use crate::families::{generate, FamilyKind};
use crate::scalar::{parse_scalar, FieldSpec, Scalar};

pub use cache::{Cache, CacheKey};
pub use fit::{fit_exponent, fit_power_law, ExponentFit};
pub use report::{read_rows, write_rows, ReportFormat};

/// Environment variable consulted for the worker count.
pub const THREADS_ENV: &str = "DETLAB_THREADS";

/// Which determinant value a scan row counts.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DMode {
    Fixed(Scalar),
    /// `max_{d != 0} D_n(X, d)`.
    SupNonzero,
    /// `max_d D_n(X, d)`.
    SupAll,
    Zero,
}

impl DMode {
    pub fn name(&self) -> &'static str {
        match self {
            DMode::Fixed(_) => "fixed",
            DMode::SupNonzero => "sup-nonzero",
            DMode::SupAll => "sup-all",
            DMode::Zero => "zero",
        }
    }

    /// `zero`, `sup` / `sup-nonzero`, `sup-all`, or a scalar for a fixed `d`.
    pub fn parse(text: &str, field: FieldSpec) -> Result<Self> {
        Ok(match text.trim() {
            "zero" => DMode::Zero,
            "sup" | "sup-nonzero" | "supnonzero" => DMode::SupNonzero,
            "sup-all" | "supall" => DMode::SupAll,
            other => DMode::Fixed(parse_scalar(other, field)?),
        })
    }
}

impl fmt::Display for DMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DMode::Fixed(d) => write!(f, "{d}"),
            other => f.write_str(other.name()),
        }
    }
}

/// One computed (or budget-refused) count. Counts and scalars are decimal
/// strings so that nothing is lost in JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub family: String,
    #[serde(rename = "kind-params")]
    pub params: String,
    pub seed: Option<u64>,
    pub field: String,
    #[serde(rename = "X")]
    pub x: usize,
    pub n: usize,
    pub dmode: String,
    /// The determinant value counted: the fixed value, or the maximizer in
    /// the `sup` modes.
    pub d: Option<String>,
    pub engine: String,
    pub count: Option<BigCount>,
    pub elapsed_ms: u64,
    pub budget_hit: bool,
}

impl ScanRow {
    /// The row with timing removed, for determinism comparisons.
    pub fn without_timing(&self) -> ScanRow {
        ScanRow {
            elapsed_ms: 0,
            ..self.clone()
        }
    }
}

/// A scan over sizes of one family.
#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub family: FamilyKind,
    pub sizes: Vec<usize>,
    pub field: FieldSpec,
    pub n: usize,
    pub dmode: DMode,
    pub engine: Engine,
    pub limits: Limits,
}

impl ScanConfig {
    pub fn key(&self, x: usize) -> CacheKey {
        CacheKey {
            family: self.family.name().to_string(),
            params: self.family.params(),
            seed: self.family.seed(),
            field: self.field.to_string(),
            x,
            n: self.n,
            dmode: self.dmode.name().to_string(),
            d: match &self.dmode {
                DMode::Fixed(d) => Some(d.to_string()),
                _ => None,
            },
            engine: self.engine.name().to_string(),
        }
    }
}

/// Computes one row; a budget refusal becomes a row with `budget_hit`.
pub fn compute_row(cfg: &ScanConfig, x: usize) -> Result<ScanRow> {
    let set = generate(&cfg.family.clone().with_size(x), cfg.field)?;
    let start = Instant::now();
    let result = match &cfg.dmode {
        DMode::Fixed(d) => count_det(&set, cfg.n, d, cfg.engine, &cfg.limits).map(|c| (Some(d.clone()), c)),
        DMode::Zero => {
            let zero = Scalar::zero(cfg.field);
            count_det(&set, cfg.n, &zero, cfg.engine, &cfg.limits).map(|c| (Some(zero), c))
        }
        DMode::SupNonzero | DMode::SupAll => det_spectrum(&set, cfg.n, cfg.engine, &cfg.limits)
            .and_then(|s| s.sup(cfg.dmode == DMode::SupNonzero))
            .map(|(d, c)| (Some(d), c)),
    };
    let elapsed_ms = start.elapsed().as_millis() as u64;
    let (d, count, budget_hit) = match result {
        Ok((d, c)) => (d.map(|d| d.to_string()), Some(c), false),
        Err(Error::BudgetExceeded { .. }) => {
            log::warn!("budget exceeded at X = {x}; row recorded without a count");
            (None, None, true)
        }
        Err(e) => return Err(e),
    };
    Ok(ScanRow {
        family: cfg.family.name().to_string(),
        params: cfg.family.params(),
        seed: cfg.family.seed(),
        field: cfg.field.to_string(),
        x,
        n: cfg.n,
        dmode: cfg.dmode.name().to_string(),
        d,
        engine: cfg.engine.name().to_string(),
        count,
        elapsed_ms,
        budget_hit,
    })
}

/// One row per size, in the given order; rows found in `cache` are reused
/// and freshly computed rows are stored there.
pub fn run_scan(cfg: &ScanConfig, mut cache: Option<&mut Cache>) -> Result<Vec<ScanRow>> {
    if cfg.sizes.is_empty() {
        return Err(Error::precondition("a scan needs at least one size"));
    }
    if cfg.engine == Engine::Convolution && cfg.n != 2 {
        return Err(Error::precondition("the convolution engine handles n = 2 only"));
    }
    if cfg.engine == Engine::RowBlock && cfg.n < 2 {
        return Err(Error::precondition("the row-block engine needs n >= 2"));
    }
    let mut rows = Vec::with_capacity(cfg.sizes.len());
    for &x in &cfg.sizes {
        let key = cfg.key(x);
        if let Some(row) = cache.as_deref_mut().and_then(|c| c.get(&key)) {
            rows.push(row);
            continue;
        }
        let row = compute_row(cfg, x)?;
        if let Some(c) = cache.as_deref_mut() {
            if !row.budget_hit {
                c.put(&key, &row)?;
            }
        }
        rows.push(row);
    }
    Ok(rows)
}

/// Worker count: the explicit value, else `DETLAB_THREADS`, else the
/// available parallelism.
pub fn resolve_threads(explicit: Option<usize>) -> usize {
    explicit
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.trim().parse().ok()))
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()))
}

/// Runs `f` on a dedicated pool of `threads` workers.
pub fn with_threads<T: Send>(threads: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::precondition(format!("cannot start {threads} worker threads: {e}")))?;
    Ok(pool.install(f))
}

impl FromStr for ReportFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "jsonl" | "json" => Ok(ReportFormat::Jsonl),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::precondition(format!("unknown report format {other:?}"))),
        }
    }
}
