//! Additive energies of a ground set and the bilinear-form count.
//!
//! Each energy is the number of solutions of an equation `f(a) = f(b)` and
//! is computed as `sum_t D(t)^2` over the value distribution `D` of `f`,
//! which replaces an `X^(2m)`-tuple enumeration by an `X^m`-size table.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::detcount::kernels::{cofactor_table, conv_n2_spectrum, product_table, Members, Table};
use crate::detcount::{BigCount, Limits};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matkit::Matrix;
use crate::par::{fold_range, Odometer};
use crate::ring::{with_ring, Lowering, Ring};
use crate::scalar::Scalar;

/// Counts of the values taken by an expression over all tuples of a set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValueDistribution {
    label: String,
    entries: BTreeMap<Scalar, BigCount>,
}

impl ValueDistribution {
    /// The expression that generated the distribution, e.g. `"uv"`.
    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn entries(&self) -> &BTreeMap<Scalar, BigCount> {
        &self.entries
    }

    pub fn get(&self, t: &Scalar) -> BigCount {
        self.entries.get(t).cloned().unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of tuples enumerated.
    pub fn mass(&self) -> BigCount {
        self.entries.values().sum()
    }

    /// `sum_t D(t)^2`: solutions of `f(a) = f(b)`.
    pub fn energy(&self) -> BigCount {
        self.entries.values().map(|c| c * c).sum()
    }
}

/// Builds a distribution of degree-2 values over the lowered set, lifting
/// the keys back to scalars.
macro_rules! degree2_table {
    ($u:expr, $label:expr, $ring:ident, $elems:ident => $table:expr) => {{
        let low = Lowering::for_sets(&[$u]);
        let domain = low.domain(2 * low.entry_bits() + 8);
        let entries = with_ring!(domain, $ring => {
            let $elems = low.elems(&$ring, $u);
            let table: Table<_> = $table;
            table
                .into_iter()
                .map(|(k, v)| (low.lift(&$ring, &k, 2), BigCount::from(v)))
                .collect()
        });
        ValueDistribution { label: $label.to_string(), entries }
    }};
}

/// `P(t) = #{(u, v) in U^2 : uv = t}`.
pub fn product_distribution(u: &GroundSet) -> ValueDistribution {
    degree2_table!(u, "uv", ring, elems => product_table(&ring, &elems))
}

fn sum_convolve<R: Ring>(ring: &R, p: &Table<R::Elem>) -> Table<R::Elem> {
    let mut out = Table::new();
    for (a, ca) in p {
        for (b, cb) in p {
            *out.entry(ring.add(a, b)).or_insert(0) += ca * cb;
        }
    }
    out
}

/// `R(t) = #{(u1, u2, v1, v2) in U^4 : u1 v1 + u2 v2 = t}`, the sum
/// convolution of [`product_distribution`] with itself.
pub fn r_distribution(u: &GroundSet) -> ValueDistribution {
    degree2_table!(u, "u1v1+u2v2", ring, elems => sum_convolve(&ring, &product_table(&ring, &elems)))
}

/// `Q(t) = #{(v, u, w) in U^3 : v(u - w) = t}`.
pub fn q_distribution(u: &GroundSet) -> ValueDistribution {
    degree2_table!(u, "v(u-w)", ring, elems => {
        let mut q = Table::new();
        for a in &elems {
            for b in &elems {
                let diff = ring.sub(a, b);
                for v in &elems {
                    *q.entry(ring.mul(v, &diff)).or_insert(0) += 1;
                }
            }
        }
        q
    })
}

/// `Q2(t) = #{(u1, u3, v1, v3) in U^4 : u1 v3 - u3 v1 = t}`, the
/// difference convolution of [`product_distribution`] with itself.
pub fn q2_distribution(u: &GroundSet) -> ValueDistribution {
    degree2_table!(u, "u1v3-u3v1", ring, elems => conv_n2_spectrum(&ring, &elems))
}

/// `T(U)`: solutions of `v1 u1 + v2 u2 = x1 y1 + x2 y2` over `U^8`.
pub fn energy_t(u: &GroundSet) -> BigCount {
    r_distribution(u).energy()
}

/// `N(U)`: solutions of `v1 (u1 - w1) = v2 (u2 - w2)` over `U^6`.
pub fn energy_n(u: &GroundSet) -> BigCount {
    q_distribution(u).energy()
}

/// Solutions of `u1 v3 - u3 v1 = y1 z3 - y3 z1` over `U^8`.
pub fn energy_s(u: &GroundSet) -> BigCount {
    q2_distribution(u).energy()
}

/// `E_*` as `sum mu^2` over the first-row cofactor triples of all `2 x 3`
/// blocks, the zero triple included.
pub fn energy_estar_mu(x: &GroundSet, limits: &Limits) -> Result<BigCount> {
    limits.check_tuples(x.len(), 6)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(2 * low.entry_bits() + 8);
    Ok(with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        cofactor_table(&ring, &elems, 3)
            .values()
            .map(|&mu| BigCount::from(mu * mu))
            .sum()
    }))
}

/// `E_*` by direct enumeration of `(u, v, y, z) in X^12`, counting tuples
/// where the three `2 x 2` minors of the rows `u, v` equal those of `y, z`.
pub fn energy_estar_brute(x: &GroundSet, limits: &Limits) -> Result<BigCount> {
    limits.check_tuples(x.len(), 12)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(2 * low.entry_bits() + 8);
    Ok(with_ring!(domain, ring => {
        let e = low.elems(&ring, x);
        let minor = |p: &[usize], q: &[usize], i: usize, j: usize| {
            ring.sub(&ring.mul(&e[p[i]], &e[q[j]]), &ring.mul(&e[p[j]], &e[q[i]]))
        };
        let total = (e.len() as u64).pow(12);
        let hits = fold_range(
            total,
            || 0u128,
            |acc, range| {
                let mut odo = Odometer::at(e.len(), 12, range.start);
                for _ in range {
                    let t = odo.digits();
                    let (u, v, y, z) = (&t[0..3], &t[3..6], &t[6..9], &t[9..12]);
                    if minor(u, v, 1, 2) == minor(y, z, 1, 2)
                        && minor(u, v, 2, 0) == minor(y, z, 2, 0)
                        && minor(u, v, 0, 1) == minor(y, z, 0, 1)
                    {
                        *acc += 1;
                    }
                    odo.advance();
                }
            },
            |a, b| a + b,
        );
        BigCount::from(hits)
    }))
}

/// Minor triples whose multiplicity lies in `[w, 2w)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicClass {
    pub w: u64,
    /// `#Pi_w`, the number of distinct triples in the class.
    pub planes: u64,
    /// Sum of the multiplicities in the class.
    pub mass: BigCount,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DyadicPyramid {
    pub classes: Vec<DyadicClass>,
    /// `sum mu^2`, equal to `E_*`.
    pub energy: BigCount,
}

impl DyadicPyramid {
    pub fn total_mass(&self) -> BigCount {
        self.classes.iter().map(|c| &c.mass).sum()
    }

    /// `max_w w^2 #Pi_w`, never more than [`DyadicPyramid::energy`].
    pub fn max_weighted(&self) -> BigCount {
        self.classes
            .iter()
            .map(|c| BigCount::from(c.w as u128 * c.w as u128 * c.planes as u128))
            .max()
            .unwrap_or_default()
    }
}

/// Dyadic classes `w = 1, 2, 4, ...` of the cofactor-triple multiplicities
/// of `2 x 3` blocks over `X`, the zero triple included.
pub fn dyadic_pyramid(x: &GroundSet, limits: &Limits) -> Result<DyadicPyramid> {
    limits.check_tuples(x.len(), 6)?;
    let low = Lowering::for_sets(&[x]);
    let domain = low.domain(2 * low.entry_bits() + 8);
    let mus: Vec<u128> = with_ring!(domain, ring => {
        let elems = low.elems(&ring, x);
        cofactor_table(&ring, &elems, 3).into_values().collect()
    });
    let mut by_class: BTreeMap<u32, (u64, u128)> = BTreeMap::new();
    for &mu in &mus {
        let slot = by_class.entry(mu.ilog2()).or_default();
        slot.0 += 1;
        slot.1 += mu;
    }
    Ok(DyadicPyramid {
        classes: by_class
            .into_iter()
            .map(|(k, (planes, mass))| DyadicClass {
                w: 1u64 << k,
                planes,
                mass: mass.into(),
            })
            .collect(),
        energy: mus.iter().map(|&m| BigCount::from(m * m)).sum(),
    })
}

/// `#{(b, c) in B^k x C^k : <Mb, c> = omega}` for nonsingular `M` and
/// `omega != 0`.
///
/// Enumerates `b`, forms `v = Mb`, and for every choice of the other
/// coordinates of `c` solves for the coordinate at the last nonzero entry
/// of `v`.
pub fn count_bilinear(m: &Matrix, b: &GroundSet, c: &GroundSet, omega: &Scalar, limits: &Limits) -> Result<BigCount> {
    let k = m.rows();
    if m.cols() != k {
        return Err(Error::NotSquare {
            rows: k,
            cols: m.cols(),
        });
    }
    let field = b.field();
    for f in [c.field(), m.field(), omega.field()] {
        if f != field {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: f.to_string(),
            });
        }
    }
    if omega.is_zero() {
        return Err(Error::ZeroScalar);
    }
    if m.det()?.is_zero() {
        return Err(Error::Singular);
    }
    limits.check(crate::par::pow_sat(b.len(), k).saturating_mul(crate::par::pow_sat(c.len(), k - 1)))?;

    let low = Lowering::for_sets(&[b, c]);
    // clear the denominators of M separately
    let m_scale = m
        .entries()
        .iter()
        .filter_map(|e| e.as_rational().map(|r| r.denom().clone()))
        .fold(BigInt::one(), |acc, d| acc.lcm(&d));
    let m_bits = m
        .entries()
        .iter()
        .filter_map(|e| e.as_rational())
        .map(|r| {
            (r * BigRational::from_integer(m_scale.clone()))
                .abs()
                .to_integer()
                .bits()
        })
        .max()
        .unwrap_or(64);
    let target_scale = low.scale_pow(2) * &m_scale;
    let bits = (2 * low.entry_bits() + m_bits + 8).max(low.bits_of(omega, 2) + m_bits + 4);
    let hits = with_ring!(low.domain(bits), ring => {
        let bs = low.elems(&ring, b);
        let cs = low.elems(&ring, c);
        let members = Members::new(&cs);
        let mm: Vec<_> = m
            .entries()
            .iter()
            .map(|e| ring.embed(e, &m_scale).expect("matrix entry lowers"))
            .collect();
        match ring.embed(omega, &target_scale) {
            None => 0,
            Some(target) => fold_range(
                (bs.len() as u64).pow(k as u32),
                || 0u128,
                |acc, range| {
                    let mut odo = Odometer::at(bs.len(), k, range.start);
                    let prefixes = (cs.len() as u64).pow(k as u32 - 1);
                    for _ in range {
                        let v: Vec<_> = (0..k)
                            .map(|i| {
                                odo.digits().iter().enumerate().fold(ring.zero(), |s, (j, &bj)| {
                                    ring.add(&s, &ring.mul(&mm[i * k + j], &bs[bj]))
                                })
                            })
                            .collect();
                        odo.advance();
                        // v = 0 would give <v, c> = 0 != omega; M is nonsingular so
                        // this only happens for b = 0
                        let Some(p) = v.iter().rposition(|e| !ring.is_zero(e)) else {
                            continue;
                        };
                        let others: Vec<usize> = (0..k).filter(|&i| i != p).collect();
                        let mut codo = Odometer::at(cs.len(), k - 1, 0);
                        for _ in 0..prefixes {
                            #[allow(clippy::clone_on_copy)]
                            let mut rhs = target.clone();
                            for (&slot, &i) in codo.digits().iter().zip(&others) {
                                rhs = ring.sub(&rhs, &ring.mul(&v[i], &cs[slot]));
                            }
                            if let Some(cp) = ring.div_exact(&rhs, &v[p]) {
                                if members.contains(&cp) {
                                    *acc += 1;
                                }
                            }
                            codo.advance();
                        }
                    }
                },
                |a, b| a + b,
            ),
        }
    });
    Ok(hits.into())
}
