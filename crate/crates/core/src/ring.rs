//! Arithmetic domains the counting kernels run in.
//!
//! Public operations take [`Scalar`]s, but the enumeration loops are generic
//! over [`Ring`]. A rational ground set is cleared of denominators (multiplied
//! by the lcm `L` of its denominators) and then counted over the integers: a
//! homogeneous degree-`k` equation `f(x) = d` over `X` has the same solutions
//! as `f(y) = L^k d` over `L X`. When a bound on every intermediate value fits
//! comfortably in 62 (or 120) bits the kernels use `i64` (or `i128`),
//! otherwise `BigInt`. Prime fields use `u64` residues.

use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::ground::GroundSet;
use crate::scalar::{mod_add, mod_inv, mod_mul, mod_sub, FieldSpec, Scalar};

/// A commutative ring with exact division where it exists.
pub trait Ring: Clone + Send + Sync {
    type Elem: Clone + Eq + Ord + Hash + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    /// `q` with `q * b == a`, if one exists in the ring.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem>;

    /// `s * scale` as a ring element, `None` when it does not land in the ring.
    fn embed(&self, s: &Scalar, scale: &BigInt) -> Option<Self::Elem>;
    /// Inverse of [`Ring::embed`]: `e / scale` as a scalar.
    fn lift(&self, e: &Self::Elem, scale: &BigInt) -> Scalar;
}

fn scaled_integer(s: &Scalar, scale: &BigInt) -> Option<BigInt> {
    let r = s.as_rational()? * BigRational::from_integer(scale.clone());
    r.is_integer().then(|| r.to_integer())
}

macro_rules! machine_ring {
    ($(#[$doc:meta])* $name:ident, $t:ty, $to:ident) => {
        $(#[$doc])*
        #[derive(Clone, Copy, Debug, Default)]
        pub struct $name;

        impl Ring for $name {
            type Elem = $t;

            fn zero(&self) -> $t {
                0
            }
            fn one(&self) -> $t {
                1
            }
            #[inline]
            fn add(&self, a: &$t, b: &$t) -> $t {
                a + b
            }
            #[inline]
            fn sub(&self, a: &$t, b: &$t) -> $t {
                a - b
            }
            #[inline]
            fn mul(&self, a: &$t, b: &$t) -> $t {
                a * b
            }
            #[inline]
            fn neg(&self, a: &$t) -> $t {
                -a
            }
            #[inline]
            fn is_zero(&self, a: &$t) -> bool {
                *a == 0
            }
            #[inline]
            fn div_exact(&self, a: &$t, b: &$t) -> Option<$t> {
                if *b == 0 || a % b != 0 {
                    None
                } else {
                    Some(a / b)
                }
            }
            fn embed(&self, s: &Scalar, scale: &BigInt) -> Option<$t> {
                scaled_integer(s, scale)?.$to()
            }
            fn lift(&self, e: &$t, scale: &BigInt) -> Scalar {
                Scalar::rational(BigRational::new(BigInt::from(*e), scale.clone()))
            }
        }
    };
}

machine_ring!(
    /// 64-bit machine integers. Callers guarantee (via [`Lowering`]) that no
    /// intermediate overflows.
    I64Ring,
    i64,
    to_i64
);

machine_ring!(
    /// 128-bit machine integers, under the same guarantee as [`I64Ring`].
    I128Ring,
    i128,
    to_i128
);

/// Arbitrary-precision integers.
#[derive(Clone, Copy, Debug, Default)]
pub struct BigIntRing;

impl Ring for BigIntRing {
    type Elem = BigInt;

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }
    fn one(&self) -> BigInt {
        BigInt::one()
    }
    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }
    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }
    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }
    fn is_zero(&self, a: &BigInt) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigInt, b: &BigInt) -> Option<BigInt> {
        if b.is_zero() {
            return None;
        }
        let (q, r) = a.div_rem(b);
        r.is_zero().then_some(q)
    }
    fn embed(&self, s: &Scalar, scale: &BigInt) -> Option<BigInt> {
        scaled_integer(s, scale)
    }
    fn lift(&self, e: &BigInt, scale: &BigInt) -> Scalar {
        Scalar::rational(BigRational::new(e.clone(), scale.clone()))
    }
}

/// The rational field itself; used by the matrix kernel on scalar input.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl Ring for RationalField {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn div_exact(&self, a: &BigRational, b: &BigRational) -> Option<BigRational> {
        (!b.is_zero()).then(|| a / b)
    }
    fn embed(&self, s: &Scalar, scale: &BigInt) -> Option<BigRational> {
        Some(s.as_rational()? * BigRational::from_integer(scale.clone()))
    }
    fn lift(&self, e: &BigRational, scale: &BigInt) -> Scalar {
        Scalar::rational(e / BigRational::from_integer(scale.clone()))
    }
}

/// Residues modulo a prime `p < 2^64`.
#[derive(Clone, Copy, Debug)]
pub struct PrimeRing {
    p: u64,
}

impl PrimeRing {
    pub fn new(p: u64) -> Self {
        PrimeRing { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }
}

impl Ring for PrimeRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
    }
    #[inline]
    fn add(&self, a: &u64, b: &u64) -> u64 {
        mod_add(*a, *b, self.p)
    }
    #[inline]
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        mod_sub(*a, *b, self.p)
    }
    #[inline]
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        mod_mul(*a, *b, self.p)
    }
    #[inline]
    fn neg(&self, a: &u64) -> u64 {
        mod_sub(0, *a, self.p)
    }
    #[inline]
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn div_exact(&self, a: &u64, b: &u64) -> Option<u64> {
        (*b != 0).then(|| mod_mul(*a, mod_inv(*b, self.p), self.p))
    }
    fn embed(&self, s: &Scalar, _scale: &BigInt) -> Option<u64> {
        match s.field() {
            FieldSpec::PrimeField(q) if q.get() == self.p => s.residue(),
            _ => None,
        }
    }
    fn lift(&self, e: &u64, _scale: &BigInt) -> Scalar {
        let field = FieldSpec::prime(self.p).expect("modulus was checked prime");
        Scalar::from_bigint(BigInt::from(*e), field)
    }
}

/// Which concrete ring a kernel should be instantiated with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Domain {
    Word,
    Small,
    Big,
    Prime(u64),
}

/// Plan for lowering one or more ground sets into an integer or residue ring.
#[derive(Clone, Debug)]
pub struct Lowering {
    field: FieldSpec,
    scale: BigInt,
    entry_bits: u64,
}

/// Values whose bound is at most this many bits run in `i64`.
const WORD_BITS: u64 = 62;
/// Values whose bound is at most this many bits run in `i128`.
const SMALL_BITS: u64 = 120;

impl Lowering {
    /// Common denominator-clearing scale for all `sets`, which must share a
    /// field.
    pub fn for_sets(sets: &[&GroundSet]) -> Self {
        let field = sets.first().map(|s| s.field()).unwrap_or_default();
        debug_assert!(sets.iter().all(|s| s.field() == field));
        let mut scale = BigInt::one();
        if field == FieldSpec::Rationals {
            for s in sets {
                for e in s.iter() {
                    scale = scale.lcm(e.as_rational().expect("rational set").denom());
                }
            }
        }
        let mut lowering = Lowering {
            field,
            scale,
            entry_bits: 0,
        };
        lowering.entry_bits = sets
            .iter()
            .flat_map(|s| s.iter())
            .map(|e| lowering.bits_of(e, 1))
            .max()
            .unwrap_or(0);
        lowering
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    /// `L^degree`.
    pub fn scale_pow(&self, degree: u32) -> BigInt {
        num_traits::pow(self.scale.clone(), degree as usize)
    }

    /// Bit length of the largest lowered entry.
    pub fn entry_bits(&self) -> u64 {
        self.entry_bits
    }

    /// Bit length of `|s| * L^degree` (rounded up for non-integers).
    pub fn bits_of(&self, s: &Scalar, degree: u32) -> u64 {
        match s.as_rational() {
            None => 64,
            Some(r) => {
                let v = (r * BigRational::from_integer(self.scale_pow(degree))).abs().ceil();
                v.to_integer().bits()
            }
        }
    }

    /// Smallest domain in which values of at most `bits` bits never overflow.
    pub fn domain(&self, bits: u64) -> Domain {
        match self.field {
            FieldSpec::PrimeField(p) => Domain::Prime(p.get()),
            FieldSpec::Rationals if bits <= WORD_BITS => Domain::Word,
            FieldSpec::Rationals if bits <= SMALL_BITS => Domain::Small,
            FieldSpec::Rationals => Domain::Big,
        }
    }

    /// Lowered elements of `set` (same order as the set).
    pub fn elems<R: Ring>(&self, ring: &R, set: &GroundSet) -> Vec<R::Elem> {
        set.iter()
            .map(|e| ring.embed(e, &self.scale).expect("entry lowers into ring"))
            .collect()
    }

    /// A degree-`degree` target value; `None` if it is not integral after
    /// scaling, in which case an integer equation has no solutions.
    pub fn target<R: Ring>(&self, ring: &R, d: &Scalar, degree: u32) -> Option<R::Elem> {
        ring.embed(d, &self.scale_pow(degree))
    }

    pub fn lift<R: Ring>(&self, ring: &R, e: &R::Elem, degree: u32) -> Scalar {
        ring.lift(e, &self.scale_pow(degree))
    }
}

/// Bits in `n!`, rounded up.
pub(crate) fn factorial_bits(n: usize) -> u64 {
    (2..=n).map(|k| (k as f64).log2()).sum::<f64>().ceil() as u64
}

/// Runs `$body` with `$ring` bound to the concrete ring for `$domain`.
macro_rules! with_ring {
    ($domain:expr, $ring:ident => $body:expr) => {
        match $domain {
            $crate::ring::Domain::Word => {
                let $ring = $crate::ring::I64Ring;
                $body
            }
            $crate::ring::Domain::Small => {
                let $ring = $crate::ring::I128Ring;
                $body
            }
            $crate::ring::Domain::Big => {
                let $ring = $crate::ring::BigIntRing;
                $body
            }
            $crate::ring::Domain::Prime(p) => {
                let $ring = $crate::ring::PrimeRing::new(p);
                $body
            }
        }
    };
}
pub(crate) use with_ring;
