//! Independent reference implementations used by the integration tests.
//! Nothing here goes through the library's lowering or counting kernels:
//! determinants are Leibniz sums over permutations and every count is a
//! plain loop over all tuples.

#![allow(dead_code)]

use std::collections::BTreeMap;

use detlab::{BigCount, FieldSpec, GroundSet, Scalar};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn rat(s: &Scalar) -> BigRational {
    s.as_rational().expect("rational scalar").clone()
}

pub fn scalar(r: &BigRational) -> Scalar {
    Scalar::rational(r.clone())
}

pub fn rats(x: &GroundSet) -> Vec<BigRational> {
    x.iter().map(rat).collect()
}

pub fn count(c: u128) -> BigCount {
    BigCount::from(c)
}

/// `X` distinct integers from `[lo, hi]`.
pub fn random_ints(rng: &mut ChaCha8Rng, size: usize, lo: i64, hi: i64) -> Vec<i64> {
    let mut pool: Vec<i64> = (lo..=hi).collect();
    pool.shuffle(rng);
    pool.truncate(size);
    pool
}

pub fn random_set(rng: &mut ChaCha8Rng, size: usize, lo: i64, hi: i64) -> GroundSet {
    GroundSet::from_ints(&random_ints(rng, size, lo, hi)).unwrap()
}

/// A random rational with small numerator and denominator.
pub fn random_ratio(rng: &mut ChaCha8Rng, nonzero: bool) -> Scalar {
    loop {
        let num = rng.random_range(-6i64..=6);
        let den = rng.random_range(1i64..=4);
        if nonzero && num == 0 {
            continue;
        }
        return Scalar::ratio(num, den).unwrap();
    }
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    fn go(prefix: &mut Vec<usize>, left: &mut Vec<usize>, out: &mut Vec<(Vec<usize>, bool)>) {
        if left.is_empty() {
            let mut inversions = 0;
            for i in 0..prefix.len() {
                for j in i + 1..prefix.len() {
                    if prefix[i] > prefix[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), inversions % 2 == 1));
            return;
        }
        for i in 0..left.len() {
            let v = left.remove(i);
            prefix.push(v);
            go(prefix, left, out);
            prefix.pop();
            left.insert(i, v);
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut (0..n).collect(), &mut out);
    out
}

/// Leibniz determinant of a row-major `n x n` matrix.
pub fn leibniz<T>(m: &[T], n: usize) -> T
where
    T: Clone + Zero + One + std::ops::Sub<Output = T>,
{
    let mut total = T::zero();
    for (p, odd) in permutations(n) {
        let mut term = T::one();
        for (i, &j) in p.iter().enumerate() {
            term = term * m[i * n + j].clone();
        }
        total = if odd { total - term } else { total + term };
    }
    total
}

/// Calls `f` on every tuple in `elems^len`.
pub fn each_tuple<T: Clone>(elems: &[T], len: usize, mut f: impl FnMut(&[T])) {
    let mut idx = vec![0usize; len];
    let mut buf: Vec<T> = vec![elems[0].clone(); len];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = elems[i].clone();
        }
        f(&buf);
        let mut pos = len;
        loop {
            if pos == 0 {
                return;
            }
            pos -= 1;
            idx[pos] += 1;
            if idx[pos] < elems.len() {
                break;
            }
            idx[pos] = 0;
        }
    }
}

/// Determinant histogram of all `n x n` matrices over `elems`.
pub fn spectrum<T>(elems: &[T], n: usize) -> BTreeMap<T, u128>
where
    T: Clone + Ord + Zero + One + std::ops::Sub<Output = T>,
{
    let mut out = BTreeMap::new();
    each_tuple(elems, n * n, |m| *out.entry(leibniz(m, n)).or_insert(0) += 1);
    out
}

/// Determinant histogram over `F_p` with entries given as residues.
pub fn spectrum_mod(elems: &[u64], n: usize, p: u64) -> BTreeMap<u64, u128> {
    let signed: Vec<i128> = elems.iter().map(|&e| e as i128).collect();
    let mut out = BTreeMap::new();
    each_tuple(&signed, n * n, |m| {
        let d = leibniz(m, n).rem_euclid(p as i128) as u64;
        *out.entry(d).or_insert(0) += 1;
    });
    out
}

/// Rank of a small rational matrix by plain Gaussian elimination.
pub fn rank(rows: usize, cols: usize, m: &[BigRational]) -> usize {
    let mut a = m.to_vec();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i * cols + c].is_zero()) else {
            continue;
        };
        for j in 0..cols {
            a.swap(r * cols + j, p * cols + j);
        }
        for i in 0..rows {
            if i != r && !a[i * cols + c].is_zero() {
                let f = &a[i * cols + c] / &a[r * cols + c];
                for j in 0..cols {
                    let v = &f * &a[r * cols + j];
                    a[i * cols + j] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

pub fn q() -> FieldSpec {
    FieldSpec::Rationals
}
