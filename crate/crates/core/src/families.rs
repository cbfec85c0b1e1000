//! Structured ground-set families: intervals, progressions, seeded random
//! sets and explicit files.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use num_bigint::BigInt;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::scalar::{parse_scalar, FieldSpec, Scalar};

/// Seed used by the random family when none is given.
pub const DEFAULT_SEED: u64 = 0x5eed;

/// Family shape without its size.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FamilyKind {
    /// `{1, ..., X}`.
    Interval,
    /// `{start, start + step, ..., start + (X-1) step}`.
    ArithmeticProgression { start: Scalar, step: Scalar },
    /// `{g, g^2, ..., g^X}`.
    GeometricProgression { ratio: Scalar },
    /// `X` distinct integers drawn uniformly without replacement from
    /// `[lo, hi]` (default `[1, 10 X]`, capped at `p - 1` over `F_p`) with a
    /// ChaCha8 stream seeded by `seed`.
    Random { seed: u64, range: Option<(i64, i64)> },
    /// A ground-set file.
    Explicit { path: PathBuf },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FamilySpec {
    pub kind: FamilyKind,
    pub size: usize,
}

impl FamilyKind {
    /// Short name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            FamilyKind::Interval => "interval",
            FamilyKind::ArithmeticProgression { .. } => "ap",
            FamilyKind::GeometricProgression { .. } => "gp",
            FamilyKind::Random { .. } => "random",
            FamilyKind::Explicit { .. } => "explicit",
        }
    }

    /// Kind-specific parameters as `key=value` pairs.
    pub fn params(&self) -> String {
        match self {
            FamilyKind::Interval => String::new(),
            FamilyKind::ArithmeticProgression { start, step } => format!("start={start};step={step}"),
            FamilyKind::GeometricProgression { ratio } => format!("ratio={ratio}"),
            FamilyKind::Random {
                range: Some((lo, hi)), ..
            } => format!("lo={lo};hi={hi}"),
            FamilyKind::Random { range: None, .. } => "lo=1;hi=10X".into(),
            FamilyKind::Explicit { path } => format!("path={}", path.display()),
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            FamilyKind::Random { seed, .. } => Some(*seed),
            _ => None,
        }
    }

    pub fn with_size(self, size: usize) -> FamilySpec {
        FamilySpec { kind: self, size }
    }

    /// GP with the default ratio 2.
    pub fn gp2() -> Self {
        FamilyKind::GeometricProgression { ratio: Scalar::int(2) }
    }

    pub fn random(seed: u64) -> Self {
        FamilyKind::Random { seed, range: None }
    }

    pub fn random_in(seed: u64, lo: i64, hi: i64) -> Self {
        FamilyKind::Random {
            seed,
            range: Some((lo, hi)),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Interval => f.write_str("interval"),
            FamilyKind::ArithmeticProgression { start, step } => write!(f, "ap:{start}:{step}"),
            FamilyKind::GeometricProgression { ratio } => write!(f, "gp:{ratio}"),
            FamilyKind::Random { seed, range: None } => write!(f, "random:{seed}"),
            FamilyKind::Random {
                seed,
                range: Some((lo, hi)),
            } => write!(f, "random:{lo}:{hi}:{seed}"),
            FamilyKind::Explicit { path } => write!(f, "explicit:{}", path.display()),
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// `interval`, `ap[:start:step]`, `gp[:ratio]`, `random[:seed]`,
    /// `random:lo:hi[:seed]`, `explicit:<path>`. Progression parameters are
    /// rationals.
    fn from_str(s: &str) -> Result<Self> {
        let mut parts = s.trim().split(':');
        let head = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let q = |t: &str| parse_scalar(t, FieldSpec::Rationals);
        let int = |t: &str| {
            t.parse::<i64>()
                .map_err(|_| Error::precondition(format!("bad integer {t:?} in family {s:?}")))
        };
        let parse_seed = |t: &str| {
            t.parse::<u64>()
                .map_err(|_| Error::precondition(format!("bad seed {t:?} in family {s:?}")))
        };
        let kind = match (head, rest.as_slice()) {
            ("interval", []) => FamilyKind::Interval,
            ("ap", []) => FamilyKind::ArithmeticProgression {
                start: Scalar::int(1),
                step: Scalar::int(1),
            },
            ("ap", [a, b]) => FamilyKind::ArithmeticProgression {
                start: q(a)?,
                step: q(b)?,
            },
            ("gp", []) => FamilyKind::gp2(),
            ("gp", [g]) => FamilyKind::GeometricProgression { ratio: q(g)? },
            ("random", []) => FamilyKind::random(DEFAULT_SEED),
            ("random", [seed]) => FamilyKind::random(parse_seed(seed)?),
            ("random", [lo, hi]) => FamilyKind::random_in(DEFAULT_SEED, int(lo)?, int(hi)?),
            ("random", [lo, hi, seed]) => FamilyKind::random_in(parse_seed(seed)?, int(lo)?, int(hi)?),
            ("explicit", path) if !path.is_empty() => FamilyKind::Explicit {
                path: PathBuf::from(path.join(":")),
            },
            _ => return Err(Error::precondition(format!("unknown family {s:?}"))),
        };
        Ok(kind)
    }
}

/// Materializes a family as a ground set over `field`. Progression
/// parameters are rationals and are reduced into prime fields.
pub fn generate(spec: &FamilySpec, field: FieldSpec) -> Result<GroundSet> {
    let size = spec.size;
    if size == 0 {
        return Err(Error::precondition("family size must be at least 1"));
    }
    let lift = |s: &Scalar| -> Result<Scalar> {
        match s.as_rational() {
            Some(r) => Scalar::from_rational_in(r, field),
            None if s.field() == field => Ok(s.clone()),
            None => Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: s.field().to_string(),
            }),
        }
    };
    let collapsed = |what: &str| Error::precondition(format!("{what} yields fewer than {size} distinct elements"));

    let set = match &spec.kind {
        FamilyKind::Interval => {
            let values = (1..=size as i64).map(|v| Scalar::from_i64(v, field));
            GroundSet::new(values, field)?
        }
        FamilyKind::ArithmeticProgression { start, step } => {
            let (start, step) = (lift(start)?, lift(step)?);
            if step.is_zero() {
                return Err(Error::precondition("AP step must be nonzero"));
            }
            let mut values = Vec::with_capacity(size);
            let mut cur = start;
            for _ in 0..size {
                let next = &cur + &step;
                values.push(cur);
                cur = next;
            }
            GroundSet::new(values, field)?
        }
        FamilyKind::GeometricProgression { ratio } => {
            let g = lift(ratio)?;
            let one = Scalar::one(field);
            if g.is_zero() || g == one || g == -&one {
                return Err(Error::precondition("GP ratio must not be 0, 1 or -1"));
            }
            let mut values = Vec::with_capacity(size);
            let mut cur = g.clone();
            for _ in 0..size {
                let next = &cur * &g;
                values.push(cur);
                cur = next;
            }
            GroundSet::new(values, field)?
        }
        FamilyKind::Random { seed, range } => {
            let default_hi = match field.modulus() {
                Some(p) => (10 * size as i64).min(i64::try_from(p - 1).unwrap_or(i64::MAX)),
                None => 10 * size as i64,
            };
            let (lo, hi) = range.unwrap_or((1, default_hi));
            if hi < lo || ((hi - lo) as u128 + 1) < size as u128 {
                return Err(Error::precondition(format!(
                    "random range [{lo}, {hi}] has fewer than {size} values"
                )));
            }
            if let Some(p) = field.modulus() {
                if lo < 0 || hi as u64 >= p {
                    return Err(Error::precondition(format!(
                        "random range [{lo}, {hi}] must lie in [0, {p}) over fp:{p}"
                    )));
                }
            }
            let width = usize::try_from(hi - lo + 1).map_err(|_| Error::precondition("random range too wide"))?;
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let picks = rand::seq::index::sample(&mut rng, width, size);
            let values = picks
                .into_iter()
                .map(|i| Scalar::from_bigint(BigInt::from(lo) + BigInt::from(i), field));
            GroundSet::new(values, field)?
        }
        FamilyKind::Explicit { path } => {
            let set = GroundSet::read(path, field)?;
            if set.len() < size {
                return Err(Error::precondition(format!(
                    "{} holds {} elements, {size} requested",
                    path.display(),
                    set.len()
                )));
            }
            GroundSet::new(set.elements()[..size].iter().cloned(), field)?
        }
    };
    if set.len() != size {
        return Err(collapsed(spec.kind.name()));
    }
    Ok(set)
}
