//! Exact scalars: arbitrary-precision rationals or residues modulo a prime.
//!
//! Every scalar is kept in canonical form (reduced fraction with positive
//! denominator, or least nonnegative residue), so structural equality, hashing
//! and the byte encoding from [`Scalar::encode`] all agree.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// A prime modulus, checked at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

/// The ambient field the scalars live in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum FieldSpec {
    #[default]
    Rationals,
    PrimeField(Prime),
}

impl FieldSpec {
    pub fn prime(p: u64) -> Result<Self> {
        Prime::new(p).map(FieldSpec::PrimeField)
    }

    pub fn modulus(self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::PrimeField(p) => Some(p.get()),
        }
    }

    pub fn is_ordered(self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => f.write_str("rational"),
            FieldSpec::PrimeField(p) => write!(f, "fp:{}", p.get()),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `rational` (or `rationals`, `q`) and `fp:<p>`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        match t {
            "rational" | "rationals" | "q" | "Q" => Ok(FieldSpec::Rationals),
            _ => {
                let p = t
                    .strip_prefix("fp:")
                    .ok_or_else(|| Error::precondition(format!("unknown field {t:?}")))?;
                let p: u64 = p
                    .parse()
                    .map_err(|_| Error::precondition(format!("bad modulus in {t:?}")))?;
                FieldSpec::prime(p)
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
enum Repr {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

impl Scalar {
    pub fn zero(field: FieldSpec) -> Self {
        Scalar::from_i64(0, field)
    }

    pub fn one(field: FieldSpec) -> Self {
        Scalar::from_i64(1, field)
    }

    pub fn from_i64(v: i64, field: FieldSpec) -> Self {
        Scalar::from_bigint(BigInt::from(v), field)
    }

    /// An integer, reduced into `field`.
    pub fn from_bigint(v: BigInt, field: FieldSpec) -> Self {
        match field {
            FieldSpec::Rationals => Scalar(Repr::Rational(BigRational::from_integer(v))),
            FieldSpec::PrimeField(p) => {
                let m = BigInt::from(p.get());
                let r = v.mod_floor(&m).to_u64().expect("residue fits u64");
                Scalar(Repr::Residue {
                    value: r,
                    modulus: p.get(),
                })
            }
        }
    }

    pub fn rational(r: BigRational) -> Self {
        Scalar(Repr::Rational(r))
    }

    /// `num/den` over the rationals.
    pub fn ratio(num: i64, den: i64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Parse {
                text: format!("{num}/{den}"),
                reason: "zero denominator".into(),
            });
        }
        Ok(Scalar::rational(BigRational::new(num.into(), den.into())))
    }

    /// Convenience for rational integers.
    pub fn int(v: i64) -> Self {
        Scalar::from_i64(v, FieldSpec::Rationals)
    }

    /// Reduces a rational value into `field`. Fails in a prime field when the
    /// denominator is divisible by the modulus.
    pub fn from_rational_in(r: &BigRational, field: FieldSpec) -> Result<Self> {
        match field {
            FieldSpec::Rationals => Ok(Scalar::rational(r.clone())),
            FieldSpec::PrimeField(_) => {
                let num = Scalar::from_bigint(r.numer().clone(), field);
                let den = Scalar::from_bigint(r.denom().clone(), field);
                num.checked_div(&den).ok_or_else(|| Error::Parse {
                    text: r.to_string(),
                    reason: "denominator vanishes modulo p".into(),
                })
            }
        }
    }

    pub fn field(&self) -> FieldSpec {
        match &self.0 {
            Repr::Rational(_) => FieldSpec::Rationals,
            Repr::Residue { modulus, .. } => FieldSpec::PrimeField(Prime(*modulus)),
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(r) => Some(r),
            Repr::Residue { .. } => None,
        }
    }

    pub fn residue(&self) -> Option<u64> {
        match &self.0 {
            Repr::Rational(_) => None,
            Repr::Residue { value, .. } => Some(*value),
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_zero(),
            Repr::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Rational(r) => r.is_integer(),
            Repr::Residue { .. } => true,
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.recip())),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: mod_inv(*value, *modulus),
                modulus: *modulus,
            }),
        })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Option<Scalar> {
        rhs.inv().map(|i| self * &i)
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = Scalar::one(self.field());
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Absolute value for rationals; identity on residues.
    pub fn abs(&self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(r.abs())),
            Repr::Residue { .. } => self.clone(),
        }
    }

    /// -1, 0 or 1 for rationals; 0 or 1 for residues.
    pub fn signum(&self) -> i8 {
        match &self.0 {
            Repr::Rational(r) => {
                if r.is_zero() {
                    0
                } else if r.is_positive() {
                    1
                } else {
                    -1
                }
            }
            Repr::Residue { value, .. } => (*value != 0) as i8,
        }
    }

    /// Canonical byte encoding: a sign byte followed by the length-prefixed
    /// big-endian magnitudes of numerator and denominator. Residues use the
    /// marker byte `0x80` and encode (value, modulus) the same way.
    pub fn encode(&self) -> Vec<u8> {
        fn push_mag(out: &mut Vec<u8>, mag: &[u8]) {
            out.extend_from_slice(&(mag.len() as u32).to_be_bytes());
            out.extend_from_slice(mag);
        }
        let mut out = Vec::new();
        match &self.0 {
            Repr::Rational(r) => {
                let (sign, num) = r.numer().to_bytes_be();
                out.push(match sign {
                    Sign::NoSign => 0x00,
                    Sign::Plus => 0x01,
                    Sign::Minus => 0xff,
                });
                let num = if sign == Sign::NoSign { Vec::new() } else { num };
                push_mag(&mut out, &num);
                push_mag(&mut out, &r.denom().to_bytes_be().1);
            }
            Repr::Residue { value, modulus } => {
                out.push(0x80);
                push_mag(&mut out, &trim_be(&value.to_be_bytes()));
                push_mag(&mut out, &trim_be(&modulus.to_be_bytes()));
            }
        }
        out
    }

    fn same_field(&self, rhs: &Scalar) {
        assert_eq!(self.field(), rhs.field(), "arithmetic on scalars from different fields");
    }
}

fn trim_be(bytes: &[u8]) -> Vec<u8> {
    let first = bytes.iter().position(|&b| b != 0).unwrap_or(bytes.len());
    bytes[first..].to_vec()
}

/// Parses `text` as an integer or `p/q`, reduced into `field`.
pub fn parse_scalar(text: &str, field: FieldSpec) -> Result<Scalar> {
    let t = text.trim();
    let bad = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let int = |s: &str| -> Result<BigInt> {
        let s = s.trim();
        let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad("not a decimal integer"));
        }
        BigInt::from_str(s).map_err(|_| bad("not a decimal integer"))
    };
    match t.split_once('/') {
        None => Ok(Scalar::from_bigint(int(t)?, field)),
        Some((p, q)) => {
            let (p, q) = (int(p)?, int(q)?);
            if q.is_zero() {
                return Err(bad("zero denominator"));
            }
            Scalar::from_rational_in(&BigRational::new(p, q), field)
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Repr::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Repr::Residue { value, .. } => write!(f, "{value}"),
        }
    }
}

impl Ord for Scalar {
    /// Numeric order on rationals, residue order in a prime field. Scalars
    /// from different fields order rationals first, then by modulus.
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a.cmp(b),
            (Repr::Residue { value: a, modulus: p }, Repr::Residue { value: b, modulus: q }) => p.cmp(q).then(a.cmp(b)),
            (Repr::Rational(_), Repr::Residue { .. }) => Ordering::Less,
            (Repr::Residue { .. }, Repr::Rational(_)) => Ordering::Greater,
        }
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $rat:expr, $res:expr) => {
        impl<'a> $trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                self.same_field(rhs);
                match (&self.0, &rhs.0) {
                    (Repr::Rational(a), Repr::Rational(b)) => Scalar(Repr::Rational($rat(a, b))),
                    (Repr::Residue { value: a, modulus }, Repr::Residue { value: b, .. }) => Scalar(Repr::Residue {
                        value: $res(*a, *b, *modulus),
                        modulus: *modulus,
                    }),
                    _ => unreachable!(),
                }
            }
        }

        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, |a: &BigRational, b| a + b, mod_add);
binop!(Sub, sub, |a: &BigRational, b| a - b, mod_sub);
binop!(Mul, mul, |a: &BigRational, b| a * b, mod_mul);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Rational(r) => Scalar(Repr::Rational(-r)),
            Repr::Residue { value, modulus } => Scalar(Repr::Residue {
                value: mod_sub(0, *value, *modulus),
                modulus: *modulus,
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

pub(crate) fn mod_add(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 + b as u128) % p as u128) as u64
}

pub(crate) fn mod_sub(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        ((a as u128 + p as u128) - b as u128) as u64
    }
}

pub(crate) fn mod_mul(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

pub(crate) fn mod_pow(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, b, p);
        }
        b = mod_mul(b, b, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}
