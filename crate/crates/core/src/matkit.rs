//! Exact dense matrices: determinant, adjugate, rank and the bordered
//! (Schur) determinant formula.
//!
//! The generic `*_in` kernels work over any [`Ring`] in an integral domain
//! and are what the counting engines call in their inner loops. The
//! [`Matrix`] API wraps them for scalar input.

use std::fmt;

use crate::error::{Error, Result};
use crate::ring::{PrimeRing, RationalField, Ring};
use crate::scalar::{FieldSpec, Scalar};

/// Direct expansion for `n <= 3`; `None` for larger matrices.
#[inline]
pub fn det_small<R: Ring>(ring: &R, a: &[R::Elem], n: usize) -> Option<R::Elem> {
    Some(match n {
        0 => ring.one(),
        1 => a[0].clone(),
        2 => ring.sub(&ring.mul(&a[0], &a[3]), &ring.mul(&a[1], &a[2])),
        3 => {
            let m = |i: usize, j: usize, k: usize, l: usize| ring.sub(&ring.mul(&a[i], &a[j]), &ring.mul(&a[k], &a[l]));
            let t0 = ring.mul(&a[0], &m(4, 8, 5, 7));
            let t1 = ring.mul(&a[1], &m(3, 8, 5, 6));
            let t2 = ring.mul(&a[2], &m(3, 7, 4, 6));
            ring.add(&ring.sub(&t0, &t1), &t2)
        }
        _ => return None,
    })
}

/// Determinant by fraction-free (Bareiss) elimination, with direct expansion
/// for `n <= 3`. `a` is an `n x n` row-major scratch buffer and may be
/// overwritten.
pub fn det_in<R: Ring>(ring: &R, a: &mut [R::Elem], n: usize) -> R::Elem {
    debug_assert_eq!(a.len(), n * n);
    if let Some(d) = det_small(ring, a, n) {
        return d;
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&a[k * n + k]) {
            let Some(i) = (k + 1..n).find(|&i| !ring.is_zero(&a[i * n + k])) else {
                return ring.zero();
            };
            for j in 0..n {
                a.swap(k * n + j, i * n + j);
            }
            negate = !negate;
        }
        let pivot = a[k * n + k].clone();
        for i in k + 1..n {
            let lead = a[i * n + k].clone();
            for j in k + 1..n {
                let num = ring.sub(&ring.mul(&a[i * n + j], &pivot), &ring.mul(&lead, &a[k * n + j]));
                a[i * n + j] = ring.div_exact(&num, &prev).expect("Bareiss division is exact");
            }
        }
        prev = pivot;
    }
    let d = a[n * n - 1].clone();
    if negate {
        ring.neg(&d)
    } else {
        d
    }
}

/// Rank by fraction-free elimination with full pivoting. The pivot at each
/// step is the first nonzero entry of the remaining block in row-major order.
/// `a` is an `m x n` row-major scratch buffer and is overwritten.
pub fn rank_in<R: Ring>(ring: &R, a: &mut [R::Elem], m: usize, n: usize) -> usize {
    debug_assert_eq!(a.len(), m * n);
    let mut prev = ring.one();
    let mut r = 0;
    while r < m.min(n) {
        let found = (r..m).find_map(|i| (r..n).find(|&j| !ring.is_zero(&a[i * n + j])).map(|j| (i, j)));
        let Some((pi, pj)) = found else { break };
        if pi != r {
            for j in 0..n {
                a.swap(r * n + j, pi * n + j);
            }
        }
        if pj != r {
            for i in 0..m {
                a.swap(i * n + r, i * n + pj);
            }
        }
        let pivot = a[r * n + r].clone();
        for i in r + 1..m {
            let lead = a[i * n + r].clone();
            for j in r + 1..n {
                let num = ring.sub(&ring.mul(&a[i * n + j], &pivot), &ring.mul(&lead, &a[r * n + j]));
                a[i * n + j] = ring.div_exact(&num, &prev).expect("Bareiss division is exact");
            }
            a[i * n + r] = ring.zero();
        }
        prev = pivot;
        r += 1;
    }
    r
}

/// Signed cofactors of the first row of an `n x n` matrix whose bottom
/// `n - 1` rows are `block` (row-major, `(n-1) x n`): entry `j` is
/// `(-1)^j` times the minor obtained by deleting column `j`, so that the
/// determinant equals `sum_j row[j] * out[j]`.
pub fn first_row_cofactors_in<R: Ring>(ring: &R, block: &[R::Elem], n: usize, out: &mut Vec<R::Elem>) {
    debug_assert_eq!(block.len(), (n - 1) * n);
    out.clear();
    if n == 3 {
        let (y1, y2, y3, z1, z2, z3) = (&block[0], &block[1], &block[2], &block[3], &block[4], &block[5]);
        out.push(ring.sub(&ring.mul(y2, z3), &ring.mul(y3, z2)));
        out.push(ring.sub(&ring.mul(y3, z1), &ring.mul(y1, z3)));
        out.push(ring.sub(&ring.mul(y1, z2), &ring.mul(y2, z1)));
        return;
    }
    let k = n - 1;
    let mut minor = Vec::with_capacity(k * k);
    for j in 0..n {
        minor.clear();
        for row in block.chunks_exact(n) {
            minor.extend(row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()));
        }
        let m = det_in(ring, &mut minor, k);
        out.push(if j % 2 == 0 { m } else { ring.neg(&m) });
    }
}

/// A dense matrix of scalars from one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: FieldSpec,
    entries: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Scalar>, field: FieldSpec) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|e| e.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(Matrix {
            rows,
            cols,
            field,
            entries,
        })
    }

    pub fn from_rows(rows: Vec<Vec<Scalar>>, field: FieldSpec) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Matrix::new(r, c, rows.into_iter().flatten().collect(), field)
    }

    /// Rational matrix from integer rows.
    pub fn from_ints(rows: &[&[i64]]) -> Result<Self> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| Scalar::int(v)).collect())
                .collect(),
            FieldSpec::Rationals,
        )
    }

    pub fn identity(n: usize, field: FieldSpec) -> Self {
        let entries = (0..n * n)
            .map(|k| {
                if k / n == k % n {
                    Scalar::one(field)
                } else {
                    Scalar::zero(field)
                }
            })
            .collect();
        Matrix {
            rows: n,
            cols: n,
            field,
            entries,
        }
    }

    pub fn zeros(rows: usize, cols: usize, field: FieldSpec) -> Self {
        Matrix {
            rows,
            cols,
            field,
            entries: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Matrix {
        let entries = (0..self.cols)
            .flat_map(|j| (0..self.rows).map(move |i| (i, j)))
            .map(|(i, j)| self.get(i, j).clone())
            .collect();
        Matrix {
            rows: self.cols,
            cols: self.rows,
            field: self.field,
            entries,
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                let mut acc = Scalar::zero(self.field);
                for k in 0..self.cols {
                    acc = &acc + &(self.get(i, k) * rhs.get(k, j));
                }
                entries.push(acc);
            }
        }
        Matrix::new(self.rows, rhs.cols, entries, self.field)
    }

    /// `M v` for a column vector `v`.
    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(Scalar::zero(self.field), |acc, (a, b)| &acc + &(a * b))
            })
            .collect())
    }

    pub fn scale(&self, c: &Scalar) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            field: self.field,
            entries: self.entries.iter().map(|e| e * c).collect(),
        }
    }

    /// The matrix with row `i` and column `j` removed.
    pub fn minor(&self, i: usize, j: usize) -> Matrix {
        let entries = (0..self.rows)
            .filter(|&r| r != i)
            .flat_map(|r| (0..self.cols).filter(move |&c| c != j).map(move |c| (r, c)))
            .map(|(r, c)| self.get(r, c).clone())
            .collect();
        Matrix {
            rows: self.rows - 1,
            cols: self.cols - 1,
            field: self.field,
            entries,
        }
    }

    fn require_square(&self) -> Result<usize> {
        if self.rows != self.cols || self.rows == 0 {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        Ok(self.rows)
    }

    /// Runs a generic kernel on the entries lowered into the field's ring.
    fn with_field<T>(
        &self,
        rational: impl FnOnce(&RationalField, Vec<num_rational::BigRational>) -> T,
        prime: impl FnOnce(&PrimeRing, Vec<u64>) -> T,
    ) -> T {
        match self.field {
            FieldSpec::Rationals => rational(
                &RationalField,
                self.entries.iter().map(|e| e.as_rational().unwrap().clone()).collect(),
            ),
            FieldSpec::PrimeField(p) => prime(
                &PrimeRing::new(p.get()),
                self.entries.iter().map(|e| e.residue().unwrap()).collect(),
            ),
        }
    }

    pub fn det(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        let field = self.field;
        Ok(self.with_field(
            |ring, mut a| Scalar::rational(det_in(ring, &mut a, n)),
            |ring, mut a| Scalar::from_bigint(det_in(ring, &mut a, n).into(), field),
        ))
    }

    /// Determinant by Laplace expansion along the first row. Exponential;
    /// kept as an independent check on [`Matrix::det`] for small `n`.
    pub fn det_cofactor(&self) -> Result<Scalar> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(self.entries[0].clone());
        }
        let mut acc = Scalar::zero(self.field);
        for j in 0..n {
            let term = self.get(0, j) * &self.minor(0, j).det_cofactor()?;
            acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
        }
        Ok(acc)
    }

    /// Transposed matrix of signed cofactors.
    pub fn adjugate(&self) -> Result<Matrix> {
        let n = self.require_square()?;
        if n == 1 {
            return Ok(Matrix::identity(1, self.field));
        }
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                // entry (i, j) is the (j, i) cofactor
                let m = self.minor(j, i).det()?;
                entries.push(if (i + j) % 2 == 0 { m } else { -m });
            }
        }
        Matrix::new(n, n, entries, self.field)
    }

    pub fn rank(&self) -> usize {
        let (m, n) = (self.rows, self.cols);
        if m == 0 || n == 0 {
            return 0;
        }
        self.with_field(
            |ring, mut a| rank_in(ring, &mut a, m, n),
            |ring, mut a| rank_in(ring, &mut a, m, n),
        )
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

pub fn det(m: &Matrix) -> Result<Scalar> {
    m.det()
}

pub fn adjugate(m: &Matrix) -> Result<Matrix> {
    m.adjugate()
}

pub fn rank(m: &Matrix) -> usize {
    m.rank()
}

/// `x det(Y) - z Adj(Y) y^t`, the determinant of the bordered matrix
/// `[[Y, y^t], [z, x]]`. Polynomial in the entries, so no invertibility is
/// needed.
pub fn schur_value(y_block: &Matrix, y: &[Scalar], z: &[Scalar], x: &Scalar) -> Result<Scalar> {
    let k = y_block.require_square()?;
    if y.len() != k || z.len() != k {
        return Err(Error::DimensionMismatch(format!(
            "border vectors of length {} and {} for a {k}x{k} block",
            y.len(),
            z.len()
        )));
    }
    let adj_y = y_block.adjugate()?.apply(y)?;
    let quad = z
        .iter()
        .zip(&adj_y)
        .fold(Scalar::zero(y_block.field()), |acc, (a, b)| &acc + &(a * b));
    Ok(&(x * &y_block.det()?) - &quad)
}

/// Assembles `[[Y, y^t], [z, x]]`.
pub fn assemble_bordered(y_block: &Matrix, y: &[Scalar], z: &[Scalar], x: &Scalar) -> Result<Matrix> {
    let k = y_block.require_square()?;
    if y.len() != k || z.len() != k {
        return Err(Error::DimensionMismatch("border vectors".into()));
    }
    let n = k + 1;
    let mut entries = Vec::with_capacity(n * n);
    for (i, yi) in y.iter().enumerate() {
        entries.extend_from_slice(y_block.row(i));
        entries.push(yi.clone());
    }
    entries.extend_from_slice(z);
    entries.push(x.clone());
    Matrix::new(n, n, entries, y_block.field())
}
