//! Counting `n x n` matrices over a ground set by determinant.
//!
//! Three engines count `D_n(X, d)`, the number of matrices with entries in
//! `X` and determinant `d`:
//!
//! * [`Engine::Brute`] enumerates all `X^(n^2)` matrices. It is the oracle.
//! * [`Engine::RowBlock`] enumerates the bottom `(n-1) x n` block once,
//!   tabulates the first-row cofactor vectors `m` with their multiplicities,
//!   and for each distinct `m` solves the linear equation `<r, m> = d` for
//!   one entry of the first row `r`.
//! * [`Engine::Convolution`] (`n = 2` only) pairs the distribution of
//!   products `uv` with itself.

pub(crate) mod kernels;

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matkit::Matrix;
use crate::par::{pow_sat, Odometer};
use crate::ring::{factorial_bits, with_ring, Lowering, Ring};
use crate::scalar::Scalar;

/// An exact nonnegative count.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BigCount(BigUint);

impl BigCount {
    pub fn zero() -> Self {
        BigCount(BigUint::zero())
    }

    pub fn value(&self) -> &BigUint {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::INFINITY)
    }

    pub fn to_u128(&self) -> Option<u128> {
        self.0.to_u128()
    }

    /// `base^exp`.
    pub fn pow(base: usize, exp: usize) -> Self {
        BigCount(num_traits::pow(BigUint::from(base), exp))
    }
}

impl From<u128> for BigCount {
    fn from(v: u128) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<u64> for BigCount {
    fn from(v: u64) -> Self {
        BigCount(BigUint::from(v))
    }
}

impl From<BigUint> for BigCount {
    fn from(v: BigUint) -> Self {
        BigCount(v)
    }
}

impl PartialEq<u64> for BigCount {
    fn eq(&self, other: &u64) -> bool {
        self.0 == BigUint::from(*other)
    }
}

impl PartialOrd<u64> for BigCount {
    fn partial_cmp(&self, other: &u64) -> Option<std::cmp::Ordering> {
        Some(self.0.cmp(&BigUint::from(*other)))
    }
}

impl Add for BigCount {
    type Output = BigCount;
    fn add(self, rhs: BigCount) -> BigCount {
        BigCount(self.0 + rhs.0)
    }
}

impl<'a> Add<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn add(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 + &rhs.0)
    }
}

impl AddAssign<&BigCount> for BigCount {
    fn add_assign(&mut self, rhs: &BigCount) {
        self.0 += &rhs.0;
    }
}

impl<'a> Mul<&'a BigCount> for &'a BigCount {
    type Output = BigCount;
    fn mul(self, rhs: &'a BigCount) -> BigCount {
        BigCount(&self.0 * &rhs.0)
    }
}

impl Sum for BigCount {
    fn sum<I: Iterator<Item = BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| a + b)
    }
}

impl<'a> Sum<&'a BigCount> for BigCount {
    fn sum<I: Iterator<Item = &'a BigCount>>(iter: I) -> Self {
        iter.fold(BigCount::zero(), |a, b| &a + b)
    }
}

impl fmt::Display for BigCount {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for BigCount {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        s.trim().parse::<BigUint>().map(BigCount).map_err(|_| Error::Parse {
            text: s.to_string(),
            reason: "not a nonnegative decimal integer".into(),
        })
    }
}

impl Serialize for BigCount {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(&self.0)
    }
}

impl<'de> Deserialize<'de> for BigCount {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Default enumeration budget in elementary steps.
pub const DEFAULT_BUDGET: u64 = 1_000_000_000;

/// Resource limits for the enumerating engines.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Limits {
    pub budget: u64,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { budget: DEFAULT_BUDGET }
    }
}

impl Limits {
    pub fn with_budget(budget: u64) -> Self {
        Limits { budget }
    }

    pub fn unlimited() -> Self {
        Limits { budget: u64::MAX }
    }

    /// Refuses work whose estimated cost exceeds the budget.
    pub fn check(&self, cost: u128) -> Result<()> {
        if cost > self.budget as u128 {
            let cost = if cost == u128::MAX {
                "more than 2^128".to_string()
            } else {
                cost.to_string()
            };
            return Err(Error::BudgetExceeded {
                cost,
                budget: self.budget,
            });
        }
        Ok(())
    }

    /// Checks the cost of enumerating `x^exp` tuples.
    pub fn check_tuples(&self, x: usize, exp: usize) -> Result<()> {
        self.check(pow_sat(x, exp))
    }
}

/// Determinant counting engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Engine {
    Brute,
    RowBlock,
    Convolution,
}

impl Engine {
    pub fn name(self) -> &'static str {
        match self {
            Engine::Brute => "brute",
            Engine::RowBlock => "rowblock",
            Engine::Convolution => "conv",
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Engine {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "brute" => Ok(Engine::Brute),
            "rowblock" => Ok(Engine::RowBlock),
            "conv" | "convolution" => Ok(Engine::Convolution),
            other => Err(Error::precondition(format!("unknown engine {other:?}"))),
        }
    }
}

/// Bits needed for every intermediate of an `n x n` determinant computation
/// with entries of `entry_bits` bits, and for a target of `target_bits`.
fn det_bits(n: usize, entry_bits: u64, target_bits: u64) -> u64 {
    let minor = factorial_bits(n) + n as u64 * entry_bits;
    (2 * minor + 2).max(target_bits.max(minor) + 2)
}

fn require_field(x: &GroundSet, d: &Scalar) -> Result<()> {
    if d.field() != x.field() {
        return Err(Error::FieldMismatch {
            expected: x.field().to_string(),
            found: d.field().to_string(),
        });
    }
    Ok(())
}

fn require_dim(n: usize, min: usize) -> Result<()> {
    if n < min {
        return Err(Error::precondition(format!(
            "dimension must be at least {min}, got {n}"
        )));
    }
    Ok(())
}

/// `D_n(X, d)` by enumerating every matrix. The reference oracle.
pub fn count_det_brute(x: &GroundSet, n: usize, d: &Scalar, limits: &Limits) -> Result<BigCount> {
    require_dim(n, 1)?;
    require_field(x, d)?;
    limits.check_tuples(x.len(), n * n)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(n, low.entry_bits(), low.bits_of(d, n as u32)));
    Ok(with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        match low.target(&ring, d, n as u32) {
            Some(t) => kernels::brute_count(&ring, &elems, n, &t),
            None => 0,
        }
    })
    .into())
}

/// `D_n(X, d)` via first-row cofactor multiplicities and pivot solving.
pub fn count_det_rowblock(x: &GroundSet, n: usize, d: &Scalar, limits: &Limits) -> Result<BigCount> {
    require_dim(n, 2)?;
    require_field(x, d)?;
    limits.check_tuples(x.len(), n * (n - 1))?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(n, low.entry_bits(), low.bits_of(d, n as u32)));
    Ok(with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        match low.target(&ring, d, n as u32) {
            Some(t) => {
                let table = kernels::cofactor_table(&ring, &elems, n);
                kernels::rowblock_count(&ring, &elems, n, &t, &table)
            }
            None => 0,
        }
    })
    .into())
}

/// `D_2(X, d) = sum_t P(t) P(t - d)` with `P` the pair-product distribution.
pub fn count_det_conv_n2(x: &GroundSet, d: &Scalar) -> Result<BigCount> {
    require_field(x, d)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(2, low.entry_bits(), low.bits_of(d, 2)));
    Ok(with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        match low.target(&ring, d, 2) {
            Some(t) => kernels::conv_n2_count(&ring, &elems, &t),
            None => 0,
        }
    })
    .into())
}

/// `D_n(X, d)` with the chosen engine.
pub fn count_det(x: &GroundSet, n: usize, d: &Scalar, engine: Engine, limits: &Limits) -> Result<BigCount> {
    match engine {
        Engine::Brute => count_det_brute(x, n, d, limits),
        Engine::RowBlock => count_det_rowblock(x, n, d, limits),
        Engine::Convolution if n == 2 => count_det_conv_n2(x, d),
        Engine::Convolution => Err(Error::precondition("the convolution engine handles n = 2 only")),
    }
}

/// The full map `d -> D_n(X, d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectrumHistogram {
    n: usize,
    set: GroundSet,
    entries: BTreeMap<Scalar, BigCount>,
}

impl SpectrumHistogram {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn ground_set(&self) -> &GroundSet {
        &self.set
    }

    pub fn entries(&self) -> &BTreeMap<Scalar, BigCount> {
        &self.entries
    }

    /// `D_n(X, d)`, zero when `d` is not attained.
    pub fn get(&self, d: &Scalar) -> BigCount {
        self.entries.get(d).cloned().unwrap_or_default()
    }

    /// Number of distinct determinant values.
    pub fn distinct(&self) -> usize {
        self.entries.len()
    }

    pub fn total_mass(&self) -> BigCount {
        self.entries.values().sum()
    }

    /// Most frequent determinant, optionally excluding zero. Ties go to the
    /// smallest `|d|` (smallest residue in a prime field), then to `d > 0`.
    pub fn sup(&self, exclude_zero: bool) -> Result<(Scalar, BigCount)> {
        self.entries
            .iter()
            .filter(|(d, _)| !(exclude_zero && d.is_zero()))
            .max_by(|(a, ca), (b, cb)| {
                ca.cmp(cb)
                    .then_with(|| b.abs().cmp(&a.abs()))
                    .then_with(|| a.signum().cmp(&b.signum()))
            })
            .map(|(d, c)| (d.clone(), c.clone()))
            .ok_or_else(|| Error::precondition("no nonzero determinant is attained"))
    }

    /// Finds a matrix over the ground set with determinant `d`, scanning in
    /// enumeration order. Exponential; for spot checks on small inputs.
    pub fn witness(&self, d: &Scalar, limits: &Limits) -> Result<Option<Matrix>> {
        let (n, x) = (self.n, self.set.elements());
        limits.check_tuples(x.len(), n * n)?;
        let mut odo = Odometer::at(x.len(), n * n, 0);
        loop {
            let m = Matrix::new(
                n,
                n,
                odo.digits().iter().map(|&i| x[i].clone()).collect(),
                self.set.field(),
            )?;
            if &m.det()? == d {
                return Ok(Some(m));
            }
            if !odo.advance() {
                return Ok(None);
            }
        }
    }
}

fn lift_table<R: Ring>(
    low: &Lowering,
    ring: &R,
    table: kernels::Table<R::Elem>,
    degree: u32,
) -> BTreeMap<Scalar, BigCount> {
    table
        .into_iter()
        .map(|(k, v)| (low.lift(ring, &k, degree), BigCount::from(v)))
        .collect()
}

/// Determinant spectrum of `n x n` matrices over `X`.
pub fn det_spectrum(x: &GroundSet, n: usize, engine: Engine, limits: &Limits) -> Result<SpectrumHistogram> {
    require_dim(n, 1)?;
    match engine {
        Engine::Brute => limits.check_tuples(x.len(), n * n)?,
        Engine::RowBlock => {
            require_dim(n, 2)?;
            limits.check_tuples(x.len(), n * (n - 1))?;
        }
        Engine::Convolution if n == 2 => limits.check_tuples(x.len(), 4)?,
        Engine::Convolution => return Err(Error::precondition("the convolution engine handles n = 2 only")),
    }
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(n, low.entry_bits(), 0));
    let entries = with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        let table = match engine {
            Engine::Brute => kernels::brute_spectrum(&ring, &elems, n),
            Engine::RowBlock => {
                let cof = kernels::cofactor_table(&ring, &elems, n);
                kernels::rowblock_spectrum(&ring, &elems, n, &cof)
            }
            Engine::Convolution => kernels::conv_n2_spectrum(&ring, &elems),
        };
        lift_table(&low, &ring, table, n as u32)
    });
    Ok(SpectrumHistogram {
        n,
        set: x.clone(),
        entries,
    })
}

/// `(argmax d, D_n(X, d))` over all `d`, or over `d != 0` when
/// `exclude_zero` is set. Uses the row-block spectrum (brute for `n = 1`).
pub fn dsup(x: &GroundSet, n: usize, exclude_zero: bool, limits: &Limits) -> Result<(Scalar, BigCount)> {
    let engine = if n >= 2 { Engine::RowBlock } else { Engine::Brute };
    det_spectrum(x, n, engine, limits)?.sup(exclude_zero)
}

/// Multiplicities of the first-row cofactor vectors of all bottom
/// `(n-1) x n` blocks, with the zero vector held separately.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorMultiplicityMap {
    pub n: usize,
    pub entries: BTreeMap<Vec<Scalar>, BigCount>,
    pub zero: BigCount,
}

impl MinorMultiplicityMap {
    /// Sum of all multiplicities including the zero bucket; `X^(n(n-1))`.
    pub fn total_mass(&self) -> BigCount {
        &self.entries.values().sum::<BigCount>() + &self.zero
    }

    /// `sum mu^2` over all cofactor vectors, zero vector included.
    pub fn energy(&self) -> BigCount {
        let sq = |c: &BigCount| c * c;
        &self.entries.values().map(sq).sum::<BigCount>() + &sq(&self.zero)
    }
}

/// Cofactor-vector multiplicities; lowered with `field` scale `L` the keys
/// are lifted back to exact scalars of degree `n - 1`.
pub fn minor_multiplicities(x: &GroundSet, n: usize, limits: &Limits) -> Result<MinorMultiplicityMap> {
    require_dim(n, 2)?;
    limits.check_tuples(x.len(), n * (n - 1))?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(n, low.entry_bits(), 0));
    let degree = (n - 1) as u32;
    let (entries, zero) = with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        let table = kernels::cofactor_table(&ring, &elems, n);
        let mut entries = BTreeMap::new();
        let mut zero = BigCount::zero();
        for (k, mu) in table {
            if k.iter().all(|e| ring.is_zero(e)) {
                zero = BigCount::from(mu);
            } else {
                let key: Vec<Scalar> = k.iter().map(|e| low.lift(&ring, e, degree)).collect();
                entries.insert(key, BigCount::from(mu));
            }
        }
        (entries, zero)
    });
    Ok(MinorMultiplicityMap { n, entries, zero })
}

/// Number of `m x n` matrices over `X` of rank exactly `r`.
pub fn count_rank(x: &GroundSet, m: usize, n: usize, r: usize, limits: &Limits) -> Result<BigCount> {
    if !(r <= m && m <= n) {
        return Err(Error::precondition(format!(
            "need r <= m <= n, got r={r}, m={m}, n={n}"
        )));
    }
    Ok(rank_distribution(x, m, n, limits)?.swap_remove(r))
}

/// Counts of `m x n` matrices over `X` by rank `0..=min(m, n)`.
pub fn rank_distribution(x: &GroundSet, m: usize, n: usize, limits: &Limits) -> Result<Vec<BigCount>> {
    if m == 0 || n == 0 {
        return Err(Error::precondition("matrix dimensions must be positive"));
    }
    limits.check_tuples(x.len(), m * n)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(m.min(n), low.entry_bits(), 0));
    let counts = with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        kernels::rank_counts(&ring, &elems, m, n)
    });
    Ok(counts.into_iter().map(BigCount::from).collect())
}

/// Determinant-`d` matrices `[[Y, y^t], [z, x]]` split three ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    /// Corner entry `x = 0`.
    pub x_zero: BigCount,
    /// `x != 0` and `det Y = 0`.
    pub y_singular: BigCount,
    /// `x != 0` and `det Y != 0`.
    pub y_regular: BigCount,
}

impl Decomposition {
    pub fn total(&self) -> BigCount {
        &(&self.x_zero + &self.y_singular) + &self.y_regular
    }
}

/// Brute-force accounting of `D_n(X, d)` by corner and leading block.
pub fn count_decomposition(x: &GroundSet, n: usize, d: &Scalar, limits: &Limits) -> Result<Decomposition> {
    require_dim(n, 2)?;
    require_field(x, d)?;
    limits.check_tuples(x.len(), n * n)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(det_bits(n, low.entry_bits(), low.bits_of(d, n as u32)));
    let parts = with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        match low.target(&ring, d, n as u32) {
            Some(t) => kernels::decomposition(&ring, &elems, n, &t),
            None => [0; 3],
        }
    });
    Ok(Decomposition {
        x_zero: parts[0].into(),
        y_singular: parts[1].into(),
        y_regular: parts[2].into(),
    })
}

/// `X^(n^2)`, the total number of `n x n` matrices over `X`.
pub fn trivial_total(x: &GroundSet, n: usize) -> BigCount {
    BigCount::pow(x.len(), n * n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::FieldSpec;

    fn set(v: &[i64]) -> GroundSet {
        GroundSet::from_ints(v).unwrap()
    }

    fn lim() -> Limits {
        Limits::default()
    }

    #[test]
    fn brute_examples() {
        assert_eq!(count_det_brute(&set(&[0]), 2, &Scalar::int(0), &lim()).unwrap(), 1);
        assert_eq!(count_det_brute(&set(&[1, 2]), 2, &Scalar::int(0), &lim()).unwrap(), 6);
        assert_eq!(count_det_brute(&set(&[1, 2]), 2, &Scalar::int(3), &lim()).unwrap(), 1);
        // non-integral target over an integer set
        assert_eq!(
            count_det_brute(&set(&[1, 2]), 2, &Scalar::ratio(1, 2).unwrap(), &lim()).unwrap(),
            0
        );
    }

    #[test]
    fn rowblock_examples() {
        assert_eq!(
            count_det_rowblock(&set(&[1, 2]), 2, &Scalar::int(0), &lim()).unwrap(),
            6
        );
        assert_eq!(count_det_rowblock(&set(&[1]), 3, &Scalar::int(0), &lim()).unwrap(), 1);
        assert!(count_det_rowblock(&set(&[1]), 1, &Scalar::int(0), &lim()).is_err());
    }

    #[test]
    fn conv_examples() {
        assert_eq!(count_det_conv_n2(&set(&[1, 2]), &Scalar::int(0)).unwrap(), 6);
        assert_eq!(count_det_conv_n2(&set(&[1, 2]), &Scalar::int(1)).unwrap(), 2);
        assert_eq!(count_det_conv_n2(&set(&[0]), &Scalar::int(0)).unwrap(), 1);
    }

    #[test]
    fn spectrum_of_one_two() {
        let s = det_spectrum(&set(&[1, 2]), 2, Engine::Brute, &lim()).unwrap();
        let got: Vec<(String, String)> = s
            .entries()
            .iter()
            .map(|(d, c)| (d.to_string(), c.to_string()))
            .collect();
        let want = [(-3, 1), (-2, 2), (-1, 2), (0, 6), (1, 2), (2, 2), (3, 1)];
        let want: Vec<(String, String)> = want.iter().map(|(d, c)| (d.to_string(), c.to_string())).collect();
        assert_eq!(got, want);
        assert_eq!(s.distinct(), 7);
        assert_eq!(s.total_mass(), 16);
        for engine in [Engine::RowBlock, Engine::Convolution] {
            assert_eq!(det_spectrum(&set(&[1, 2]), 2, engine, &lim()).unwrap(), s);
        }
        let z = det_spectrum(&set(&[0]), 2, Engine::RowBlock, &lim()).unwrap();
        assert_eq!(z.entries().len(), 1);
        assert_eq!(z.get(&Scalar::int(0)), 1);
    }

    #[test]
    fn sup_tie_breaking() {
        let x = set(&[1, 2]);
        assert_eq!(
            dsup(&x, 2, true, &lim()).unwrap(),
            (Scalar::int(1), BigCount::from(2u64))
        );
        assert_eq!(
            dsup(&x, 2, false, &lim()).unwrap(),
            (Scalar::int(0), BigCount::from(6u64))
        );
        assert_eq!(
            dsup(&set(&[1]), 2, false, &lim()).unwrap(),
            (Scalar::int(0), BigCount::from(1u64))
        );
        assert!(dsup(&set(&[1]), 2, true, &lim()).is_err());
        assert!(dsup(&set(&[0]), 3, true, &lim()).is_err());
    }

    #[test]
    fn witnesses_exist() {
        let s = det_spectrum(&set(&[-1, 1, 3]), 2, Engine::RowBlock, &lim()).unwrap();
        for d in s.entries().keys() {
            let w = s.witness(d, &lim()).unwrap().expect("attained value has a witness");
            assert_eq!(&w.det().unwrap(), d);
        }
        assert!(s.witness(&Scalar::int(1000), &lim()).unwrap().is_none());
    }

    #[test]
    fn rank_examples() {
        assert_eq!(count_rank(&set(&[1, 2]), 2, 2, 1, &lim()).unwrap(), 6);
        assert_eq!(count_rank(&set(&[1, 2]), 2, 2, 0, &lim()).unwrap(), 0);
        assert_eq!(count_rank(&set(&[0, 1]), 2, 2, 0, &lim()).unwrap(), 1);
        assert!(count_rank(&set(&[0, 1]), 3, 2, 0, &lim()).is_err());
    }

    #[test]
    fn decomposition_examples() {
        let dec = count_decomposition(&set(&[1, 2]), 2, &Scalar::int(0), &lim()).unwrap();
        assert_eq!(dec.total(), 6);
        let dec = count_decomposition(&set(&[0, 1]), 2, &Scalar::int(1), &lim()).unwrap();
        assert_eq!(dec.x_zero, 0);
        let dec = count_decomposition(&set(&[1]), 3, &Scalar::int(0), &lim()).unwrap();
        assert_eq!(dec.x_zero, 0);
        assert_eq!(dec.total(), 1);
    }

    #[test]
    fn budget_is_enforced() {
        let x = set(&[1, 2, 3, 4, 5]);
        let tight = Limits::with_budget(1000);
        assert!(matches!(
            count_det_brute(&x, 3, &Scalar::int(1), &tight),
            Err(Error::BudgetExceeded { .. })
        ));
        assert!(count_det_rowblock(&set(&[1, 2]), 3, &Scalar::int(1), &Limits::with_budget(64)).is_ok());
    }

    #[test]
    fn prime_field_counts() {
        let f = FieldSpec::prime(5).unwrap();
        let x = GroundSet::from_ints_in(&[0, 1, 2, 3, 4], f).unwrap();
        // |GL_2(F_5)| = (25 - 1)(25 - 5) = 480, spread evenly over 4 nonzero d
        let d = Scalar::from_i64(3, f);
        assert_eq!(count_det_brute(&x, 2, &d, &lim()).unwrap(), 120);
        assert_eq!(count_det_rowblock(&x, 2, &d, &lim()).unwrap(), 120);
        assert_eq!(count_det_conv_n2(&x, &d).unwrap(), 120);
        assert_eq!(count_det_rowblock(&x, 2, &Scalar::zero(f), &lim()).unwrap(), 625 - 480);
    }

    #[test]
    fn rational_sets_are_lowered() {
        let x = GroundSet::new(
            [
                Scalar::ratio(1, 2).unwrap(),
                Scalar::int(1),
                Scalar::ratio(-2, 3).unwrap(),
            ],
            FieldSpec::Rationals,
        )
        .unwrap();
        let s = det_spectrum(&x, 2, Engine::Brute, &lim()).unwrap();
        assert_eq!(s.total_mass(), 81);
        for (d, c) in s.entries() {
            assert_eq!(&count_det_rowblock(&x, 2, d, &lim()).unwrap(), c);
            assert_eq!(&count_det_conv_n2(&x, d).unwrap(), c);
        }
    }

    #[test]
    fn bigint_domain_agrees() {
        // entries near 2^40 push 3x3 intermediates past the i128 threshold
        let big = 1i64 << 40;
        let x = set(&[big, big + 1, -big]);
        let s = det_spectrum(&x, 3, Engine::RowBlock, &lim()).unwrap();
        assert_eq!(s.total_mass(), 19683);
        let (d, c) = s.sup(true).unwrap();
        assert_eq!(count_det_brute(&x, 3, &d, &lim()).unwrap(), c);
    }
}
