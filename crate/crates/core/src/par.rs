//! Deterministic parallel enumeration over mixed-radix index ranges.
//!
//! Work is split into contiguous index ranges; each worker folds into a
//! private accumulator and the accumulators are merged pairwise. All merges
//! in this crate are key-wise additions, so the result does not depend on the
//! schedule or the thread count.

use std::collections::HashMap;
use std::hash::Hash;
use std::ops::Range;

use rayon::prelude::*;

/// Tuples in `{0..base}^len`, last digit fastest.
#[derive(Clone, Debug)]
pub(crate) struct Odometer {
    base: usize,
    digits: Vec<usize>,
}

impl Odometer {
    /// Positioned at the `index`-th tuple.
    pub fn at(base: usize, len: usize, mut index: u64) -> Self {
        let mut digits = vec![0; len];
        for d in digits.iter_mut().rev() {
            *d = (index % base as u64) as usize;
            index /= base as u64;
        }
        Odometer { base, digits }
    }

    pub fn digits(&self) -> &[usize] {
        &self.digits
    }

    /// Steps to the next tuple; returns `false` after wrapping around.
    #[inline]
    pub fn advance(&mut self) -> bool {
        for d in self.digits.iter_mut().rev() {
            *d += 1;
            if *d < self.base {
                return true;
            }
            *d = 0;
        }
        false
    }
}

/// `base^exp`, saturating at `u128::MAX`.
pub(crate) fn pow_sat(base: usize, exp: usize) -> u128 {
    (base as u128).checked_pow(exp as u32).unwrap_or(u128::MAX)
}

const MIN_CHUNK: u64 = 1 << 12;

/// Folds `body` over `0..total` in parallel chunks.
pub(crate) fn fold_range<T, I, F, M>(total: u64, identity: I, body: F, merge: M) -> T
where
    T: Send,
    I: Fn() -> T + Sync + Send,
    F: Fn(&mut T, Range<u64>) + Sync + Send,
    M: Fn(T, T) -> T + Sync + Send,
{
    if total == 0 {
        return identity();
    }
    let workers = rayon::current_num_threads() as u64;
    let chunk = (total / (workers * 8)).max(MIN_CHUNK);
    let chunks = total.div_ceil(chunk);
    (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = identity();
            body(&mut acc, c * chunk..((c + 1) * chunk).min(total));
            acc
        })
        .reduce(&identity, &merge)
}

/// Key-wise sum of two count tables.
pub(crate) fn merge_counts<K: Eq + Hash, V: std::ops::AddAssign + Copy>(
    a: HashMap<K, V>,
    b: HashMap<K, V>,
) -> HashMap<K, V> {
    let (mut big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    for (k, v) in small {
        big.entry(k).and_modify(|x| *x += v).or_insert(v);
    }
    big
}
