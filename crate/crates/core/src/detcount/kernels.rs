//! Ring-generic enumeration kernels behind the public counting operations.

use std::collections::HashMap;

use crate::matkit::{det_in, det_small, first_row_cofactors_in, rank_in};
use crate::par::{fold_range, merge_counts, Odometer};
use crate::ring::Ring;

pub(crate) type Table<K> = HashMap<K, u128>;

/// Sorted copy of the lowered ground set, for membership tests.
pub(crate) struct Members<E>(Vec<E>);

impl<E: Ord + Clone> Members<E> {
    pub fn new(elems: &[E]) -> Self {
        let mut v = elems.to_vec();
        v.sort();
        v.dedup();
        Members(v)
    }

    #[inline]
    pub fn contains(&self, e: &E) -> bool {
        self.0.binary_search(e).is_ok()
    }
}

/// Calls `visit(entries)` for every tuple with indices in `range` of
/// `elems^len`. Only the entries whose digit moved are rewritten.
fn for_tuples<E: Clone>(elems: &[E], len: usize, range: std::ops::Range<u64>, mut visit: impl FnMut(&[E])) {
    let mut odo = Odometer::at(elems.len(), len, range.start);
    let mut buf: Vec<E> = odo.digits().iter().map(|&i| elems[i].clone()).collect();
    for _ in range {
        visit(&buf);
        odo.advance();
        let digits = odo.digits();
        for p in (0..len).rev() {
            buf[p] = elems[digits[p]].clone();
            if digits[p] != 0 {
                break;
            }
        }
    }
}

fn total(x: usize, len: usize) -> u64 {
    (x as u64).pow(len as u32)
}

/// Number of `n x n` matrices over `elems` with determinant `target`.
pub(crate) fn brute_count<R: Ring>(ring: &R, elems: &[R::Elem], n: usize, target: &R::Elem) -> u128 {
    fold_range(
        total(elems.len(), n * n),
        || 0u128,
        |acc, range| {
            let mut scratch = Vec::with_capacity(n * n);
            for_tuples(elems, n * n, range, |m| {
                let d = det_small(ring, m, n).unwrap_or_else(|| {
                    scratch.clear();
                    scratch.extend_from_slice(m);
                    det_in(ring, &mut scratch, n)
                });
                if d == *target {
                    *acc += 1;
                }
            });
        },
        |a, b| a + b,
    )
}

/// Full determinant histogram by enumerating every matrix.
pub(crate) fn brute_spectrum<R: Ring>(ring: &R, elems: &[R::Elem], n: usize) -> Table<R::Elem> {
    fold_range(
        total(elems.len(), n * n),
        Table::new,
        |acc, range| {
            let mut scratch = Vec::with_capacity(n * n);
            for_tuples(elems, n * n, range, |m| {
                let d = det_small(ring, m, n).unwrap_or_else(|| {
                    scratch.clear();
                    scratch.extend_from_slice(m);
                    det_in(ring, &mut scratch, n)
                });
                *acc.entry(d).or_insert(0) += 1;
            });
        },
        merge_counts,
    )
}

/// Multiplicities of first-row cofactor vectors over all bottom
/// `(n-1) x n` blocks. The zero vector is included as an ordinary key.
pub(crate) fn cofactor_table<R: Ring>(ring: &R, elems: &[R::Elem], n: usize) -> Table<Vec<R::Elem>> {
    fold_range(
        total(elems.len(), n * (n - 1)),
        Table::new,
        |acc, range| {
            let mut cof = Vec::with_capacity(n);
            for_tuples(elems, n * (n - 1), range, |block| {
                first_row_cofactors_in(ring, block, n, &mut cof);
                match acc.get_mut(&cof) {
                    Some(c) => *c += 1,
                    None => {
                        acc.insert(cof.clone(), 1);
                    }
                }
            });
        },
        merge_counts,
    )
}

type Split<'a, E> = (Vec<(&'a Vec<E>, u128)>, u128);

fn split_zero<'a, R: Ring>(ring: &R, table: &'a Table<Vec<R::Elem>>) -> Split<'a, R::Elem> {
    let mut zero = 0;
    let mut rest = Vec::with_capacity(table.len());
    for (k, &mu) in table {
        if k.iter().all(|e| ring.is_zero(e)) {
            zero += mu;
        } else {
            rest.push((k, mu));
        }
    }
    (rest, zero)
}

/// Determinant count from a cofactor table: for each nonzero cofactor
/// vector `m`, solve `sum_i r_i m_i = target` for the entry at the first
/// nonzero coordinate of `m` and test membership; weight hits by the
/// multiplicity of `m`.
pub(crate) fn rowblock_count<R: Ring>(
    ring: &R,
    elems: &[R::Elem],
    n: usize,
    target: &R::Elem,
    table: &Table<Vec<R::Elem>>,
) -> u128 {
    use rayon::prelude::*;
    let members = Members::new(elems);
    let (vectors, zero_mu) = split_zero(ring, table);
    let free = total(elems.len(), n - 1);
    let from_vectors: u128 = vectors
        .par_iter()
        .map(|(m, mu)| {
            let pivot = m.iter().position(|e| !ring.is_zero(e)).expect("nonzero vector");
            let others: Vec<usize> = (0..n).filter(|&i| i != pivot).collect();
            let mut odo = Odometer::at(elems.len(), n - 1, 0);
            let mut hits = 0u128;
            for _ in 0..free {
                let mut rhs = target.clone();
                for (slot, &col) in odo.digits().iter().zip(&others) {
                    rhs = ring.sub(&rhs, &ring.mul(&elems[*slot], &m[col]));
                }
                if let Some(r) = ring.div_exact(&rhs, &m[pivot]) {
                    if members.contains(&r) {
                        hits += 1;
                    }
                }
                odo.advance();
            }
            hits * mu
        })
        .sum();
    let degenerate = if ring.is_zero(target) {
        zero_mu * total(elems.len(), n) as u128
    } else {
        0
    };
    from_vectors + degenerate
}

/// Full determinant histogram from a cofactor table, enumerating the first
/// row against each distinct cofactor vector.
pub(crate) fn rowblock_spectrum<R: Ring>(
    ring: &R,
    elems: &[R::Elem],
    n: usize,
    table: &Table<Vec<R::Elem>>,
) -> Table<R::Elem> {
    use rayon::prelude::*;
    let (vectors, zero_mu) = split_zero(ring, table);
    let rows = total(elems.len(), n);
    let mut hist = vectors
        .par_iter()
        .fold(Table::new, |mut acc, (m, mu)| {
            let mut odo = Odometer::at(elems.len(), n, 0);
            for _ in 0..rows {
                let mut v = ring.zero();
                for (slot, c) in odo.digits().iter().zip(m.iter()) {
                    v = ring.add(&v, &ring.mul(&elems[*slot], c));
                }
                *acc.entry(v).or_insert(0) += *mu;
                odo.advance();
            }
            acc
        })
        .reduce(Table::new, merge_counts);
    if zero_mu > 0 {
        *hist.entry(ring.zero()).or_insert(0) += zero_mu * rows as u128;
    }
    hist
}

/// `P(t) = #{(u, v) : u v = t}`.
pub(crate) fn product_table<R: Ring>(ring: &R, elems: &[R::Elem]) -> Table<R::Elem> {
    let mut p = Table::new();
    for u in elems {
        for v in elems {
            *p.entry(ring.mul(u, v)).or_insert(0) += 1;
        }
    }
    p
}

/// `D_2(d) = sum_t P(t) P(t - d)`.
pub(crate) fn conv_n2_count<R: Ring>(ring: &R, elems: &[R::Elem], target: &R::Elem) -> u128 {
    let p = product_table(ring, elems);
    p.iter()
        .map(|(t, c)| c * p.get(&ring.sub(t, target)).copied().unwrap_or(0))
        .sum()
}

/// 2x2 determinant histogram as the difference distribution of `P`.
pub(crate) fn conv_n2_spectrum<R: Ring>(ring: &R, elems: &[R::Elem]) -> Table<R::Elem> {
    let p = product_table(ring, elems);
    let mut hist = Table::new();
    for (a, ca) in &p {
        for (b, cb) in &p {
            *hist.entry(ring.sub(a, b)).or_insert(0) += ca * cb;
        }
    }
    hist
}

/// Counts of `m x n` matrices by rank, indexed `0..=min(m, n)`.
pub(crate) fn rank_counts<R: Ring>(ring: &R, elems: &[R::Elem], m: usize, n: usize) -> Vec<u128> {
    let slots = m.min(n) + 1;
    fold_range(
        total(elems.len(), m * n),
        || vec![0u128; slots],
        |acc, range| {
            let mut scratch = Vec::with_capacity(m * n);
            for_tuples(elems, m * n, range, |a| {
                scratch.clear();
                scratch.extend_from_slice(a);
                acc[rank_in(ring, &mut scratch, m, n)] += 1;
            });
        },
        |mut a, b| {
            a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
            a
        },
    )
}

/// Splits the determinant-`target` matrices by the bottom-right corner `x`
/// and the leading `(n-1) x (n-1)` block `Y`: `[x = 0, det Y = 0, det Y != 0]`.
pub(crate) fn decomposition<R: Ring>(ring: &R, elems: &[R::Elem], n: usize, target: &R::Elem) -> [u128; 3] {
    let k = n - 1;
    fold_range(
        total(elems.len(), n * n),
        || [0u128; 3],
        |acc, range| {
            let mut scratch = Vec::with_capacity(n * n);
            let mut corner = Vec::with_capacity(k * k);
            for_tuples(elems, n * n, range, |a| {
                scratch.clear();
                scratch.extend_from_slice(a);
                if det_in(ring, &mut scratch, n) != *target {
                    return;
                }
                if ring.is_zero(&a[n * n - 1]) {
                    acc[0] += 1;
                    return;
                }
                corner.clear();
                for row in a.chunks_exact(n).take(k) {
                    corner.extend_from_slice(&row[..k]);
                }
                if ring.is_zero(&det_in(ring, &mut corner, k)) {
                    acc[1] += 1;
                } else {
                    acc[2] += 1;
                }
            });
        },
        |a, b| [a[0] + b[0], a[1] + b[1], a[2] + b[2]],
    )
}
