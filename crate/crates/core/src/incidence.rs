//! Point-hyperplane incidences on Cartesian grids.
//!
//! Besides exact counting this module carries out the axis-aligned cell
//! decomposition used to bound incidences: the grid is sliced into `r^k`
//! open cells and every incidence is assigned to one of three classes
//! according to how the hyperplane meets the incident point's cell.
//!
//! The determinant connection: for `3 x 3` matrices the first row `x`
//! satisfies `det = <x, m>` where `m` is the cofactor vector of the bottom
//! rows, so `D_3(X, d)` is a weighted incidence count between `X^3` and the
//! planes `<m, x> = d`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::detcount::{minor_multiplicities, BigCount, Limits};
use crate::error::{Error, Result};
use crate::ground::GroundSet;
use crate::matkit::Matrix;
use crate::par::{fold_range, pow_sat, Odometer};
use crate::ring::{with_ring, BigIntRing, Lowering, Ring};
use crate::scalar::{FieldSpec, Scalar};

/// `A_1 x ... x A_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointGrid {
    axes: Vec<GroundSet>,
}

impl PointGrid {
    pub fn new(axes: Vec<GroundSet>) -> Result<Self> {
        let Some(first) = axes.first() else {
            return Err(Error::precondition("a grid needs at least one axis"));
        };
        let field = first.field();
        if let Some(bad) = axes.iter().find(|a| a.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        Ok(PointGrid { axes })
    }

    /// `X^k`.
    pub fn cube(x: &GroundSet, k: usize) -> Result<Self> {
        PointGrid::new(vec![x.clone(); k])
    }

    pub fn k(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[GroundSet] {
        &self.axes
    }

    pub fn field(&self) -> FieldSpec {
        self.axes[0].field()
    }

    pub fn len(&self) -> u128 {
        self.axes.iter().map(|a| a.len() as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Axis indices sorted by decreasing size, ties in original order.
    pub fn axis_order(&self) -> Vec<usize> {
        let mut order: Vec<usize> = (0..self.k()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.axes[i].len()));
        order
    }

    /// The smallest axis size.
    pub fn min_axis(&self) -> usize {
        self.axes.iter().map(GroundSet::len).min().unwrap_or(0)
    }

    /// All points, last coordinate fastest, as per-axis element indices.
    fn index_tuples(&self) -> Vec<Vec<usize>> {
        let k = self.k();
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut idx = vec![0usize; k];
        'outer: loop {
            out.push(idx.clone());
            for i in (0..k).rev() {
                idx[i] += 1;
                if idx[i] < self.axes[i].len() {
                    continue 'outer;
                }
                idx[i] = 0;
            }
            return out;
        }
    }

    fn point(&self, idx: &[usize]) -> Vec<Scalar> {
        idx.iter()
            .zip(&self.axes)
            .map(|(&i, a)| a.elements()[i].clone())
            .collect()
    }

    /// Every point of the grid, last coordinate fastest.
    pub fn points(&self) -> Vec<Vec<Scalar>> {
        self.index_tuples().iter().map(|t| self.point(t)).collect()
    }
}

/// `<a, x> = b`, stored with the first nonzero coefficient equal to 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Hyperplane {
    coeffs: Vec<Scalar>,
    offset: Scalar,
}

impl Hyperplane {
    pub fn new(coeffs: Vec<Scalar>, offset: Scalar) -> Result<Self> {
        let field = offset.field();
        if let Some(bad) = coeffs.iter().find(|c| c.field() != field) {
            return Err(Error::FieldMismatch {
                expected: field.to_string(),
                found: bad.field().to_string(),
            });
        }
        let Some(lead) = coeffs.iter().find(|c| !c.is_zero()) else {
            return Err(Error::precondition("hyperplane coefficients are all zero"));
        };
        let inv = lead.inv().expect("nonzero scalar is invertible");
        Ok(Hyperplane {
            coeffs: coeffs.iter().map(|c| c * &inv).collect(),
            offset: &offset * &inv,
        })
    }

    pub fn from_ints(coeffs: &[i64], offset: i64) -> Result<Self> {
        Hyperplane::new(coeffs.iter().map(|&c| Scalar::int(c)).collect(), Scalar::int(offset))
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn offset(&self) -> &Scalar {
        &self.offset
    }

    pub fn k(&self) -> usize {
        self.coeffs.len()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        let field = self.offset.field();
        self.coeffs
            .iter()
            .zip(x)
            .fold(Scalar::zero(field), |acc, (a, xi)| &acc + &(a * xi))
    }

    pub fn contains(&self, x: &[Scalar]) -> bool {
        self.eval(x) == self.offset
    }
}

impl fmt::Display for Hyperplane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<String> = self.coeffs.iter().map(ToString::to_string).collect();
        write!(f, "({}) . x = {}", coeffs.join(", "), self.offset)
    }
}

/// A set of distinct hyperplanes in a common dimension.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HyperplaneFamily {
    planes: std::collections::BTreeSet<Hyperplane>,
}

impl HyperplaneFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_planes(planes: impl IntoIterator<Item = Hyperplane>) -> Result<Self> {
        let mut fam = HyperplaneFamily::new();
        for p in planes {
            fam.insert(p)?;
        }
        Ok(fam)
    }

    /// Adds `p`; returns `false` if an equal plane is already present.
    pub fn insert(&mut self, p: Hyperplane) -> Result<bool> {
        if let Some(q) = self.planes.first() {
            if q.k() != p.k() {
                return Err(Error::DimensionMismatch(format!(
                    "plane in dimension {} added to a family in dimension {}",
                    p.k(),
                    q.k()
                )));
            }
        }
        Ok(self.planes.insert(p))
    }

    pub fn len(&self) -> usize {
        self.planes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.planes.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Hyperplane> {
        self.planes.iter()
    }
}

/// The grid's points with a fast membership test: when the grid and a plane
/// clear to small integers, `<a, x> = b` is checked as `sum A_i X_i = B` in
/// `i128`.
struct PointIndex {
    tuples: Vec<Vec<usize>>,
    points: Vec<Vec<Scalar>>,
    lowered: Option<LoweredAxes>,
}

struct LoweredAxes {
    axes: Vec<Vec<i128>>,
    scale: BigInt,
    bits: u64,
}

/// Values of at most this many bits keep `sum A_i X_i` inside `i128`.
const FAST_BITS: u64 = 120;

impl PointIndex {
    fn new(grid: &PointGrid) -> Self {
        let tuples = grid.index_tuples();
        let points = tuples.iter().map(|t| grid.point(t)).collect();
        let lowered = (grid.field() == FieldSpec::Rationals)
            .then(|| {
                let sets: Vec<&GroundSet> = grid.axes.iter().collect();
                let low = Lowering::for_sets(&sets);
                let axes = grid.axes.iter().map(|a| low.elems(&BigIntRing, a)).collect::<Vec<_>>();
                let axes: Option<Vec<Vec<i128>>> =
                    axes.iter().map(|a| a.iter().map(|v| v.to_i128()).collect()).collect();
                Some(LoweredAxes {
                    axes: axes?,
                    scale: low.scale_pow(1),
                    bits: low.entry_bits(),
                })
            })
            .flatten();
        PointIndex {
            tuples,
            points,
            lowered,
        }
    }

    /// Positions (in `tuples` order) of the points on `plane`.
    fn on_plane(&self, plane: &Hyperplane) -> Vec<usize> {
        if let Some((a, b)) = self.lowered.as_ref().and_then(|l| l.clear(plane)) {
            let axes = &self.lowered.as_ref().expect("lowered").axes;
            return (0..self.tuples.len())
                .filter(|&i| {
                    let t = &self.tuples[i];
                    a.iter()
                        .zip(t)
                        .zip(axes)
                        .map(|((c, &j), axis)| c * axis[j])
                        .sum::<i128>()
                        == b
                })
                .collect();
        }
        (0..self.points.len())
            .filter(|&i| plane.contains(&self.points[i]))
            .collect()
    }
}

impl LoweredAxes {
    /// `(A, B)` with `A = a D` and `B = b D L` for the lcm `D` of the plane's
    /// denominators, or `None` if they do not fit.
    fn clear(&self, plane: &Hyperplane) -> Option<(Vec<i128>, i128)> {
        let mut d = BigInt::one();
        for c in plane.coeffs().iter().chain([plane.offset()]) {
            d = d.lcm(c.as_rational()?.denom());
        }
        let whole = |c: &Scalar, extra: &BigInt| {
            (c.as_rational()? * BigRational::from_integer(&d * extra))
                .to_integer()
                .to_i128()
        };
        let a: Vec<i128> = plane
            .coeffs()
            .iter()
            .map(|c| whole(c, &BigInt::one()))
            .collect::<Option<_>>()?;
        let b = whole(plane.offset(), &self.scale)?;
        let a_bits = a
            .iter()
            .map(|v| 128 - v.unsigned_abs().leading_zeros() as u64)
            .max()
            .unwrap_or(0);
        let k_bits = 64 - (a.len() as u64).leading_zeros() as u64;
        (a_bits + self.bits + k_bits <= FAST_BITS).then_some((a, b))
    }
}

fn check_compatible(grid: &PointGrid, planes: &HyperplaneFamily) -> Result<()> {
    if let Some(p) = planes.iter().next() {
        if p.k() != grid.k() {
            return Err(Error::DimensionMismatch(format!(
                "planes in dimension {} against a grid in dimension {}",
                p.k(),
                grid.k()
            )));
        }
        if p.offset().field() != grid.field() {
            return Err(Error::FieldMismatch {
                expected: grid.field().to_string(),
                found: p.offset().field().to_string(),
            });
        }
    }
    Ok(())
}

fn check_pairs(grid: &PointGrid, planes: usize, limits: &Limits) -> Result<()> {
    limits.check(grid.len().saturating_mul(planes as u128))
}

/// Exact number of point-plane incidences by testing every pair.
pub fn incidences_brute(grid: &PointGrid, planes: &HyperplaneFamily, limits: &Limits) -> Result<BigCount> {
    check_compatible(grid, planes)?;
    check_pairs(grid, planes.len(), limits)?;
    let index = PointIndex::new(grid);
    let list: Vec<&Hyperplane> = planes.iter().collect();
    let total: u128 = list.par_iter().map(|p| index.on_plane(p).len() as u128).sum();
    Ok(total.into())
}

/// `min{max{floor((#P^k / #Pi)^(1/(k^2 - 1))), 1}, A_k}`, computed exactly.
pub fn choose_r(grid: &PointGrid, planes: usize) -> Result<usize> {
    if planes == 0 {
        return Err(Error::precondition("choose_r needs at least one hyperplane"));
    }
    let k = grid.k();
    let cap = grid.min_axis();
    if k == 1 {
        return Ok(cap.max(1));
    }
    let lhs = num_traits::pow(num_bigint::BigUint::from(grid.len()), k);
    let fits = |r: usize| num_traits::pow(num_bigint::BigUint::from(r), k * k - 1) * planes <= lhs;
    let mut r = 1;
    while r < cap && fits(r + 1) {
        r += 1;
    }
    Ok(r)
}

/// Incidence counts per class.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ClassTallies {
    /// Fewer than `k` points of the plane in the cell.
    pub i1: u128,
    /// The plane's points in the cell span the plane.
    pub i2: u128,
    /// The rest: at least `k` points in a lower-dimensional flat.
    pub i3: u128,
}

impl ClassTallies {
    pub fn total(&self) -> u128 {
        self.i1 + self.i2 + self.i3
    }
}

/// An axis-aligned slicing of a grid into `r^k` open cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecomposition {
    r: usize,
    grid: PointGrid,
    axis_order: Vec<usize>,
    cuts: Vec<Vec<Scalar>>,
    group_of: Vec<Vec<usize>>,
    populations: Vec<u64>,
    pub tallies: ClassTallies,
}

impl CellDecomposition {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> usize {
        self.grid.k()
    }

    pub fn grid(&self) -> &PointGrid {
        &self.grid
    }

    /// Axes by decreasing size; `A_k` is the size of the last one.
    pub fn axis_order(&self) -> &[usize] {
        &self.axis_order
    }

    /// The `r - 1` increasing cut values on each axis.
    pub fn cuts(&self) -> &[Vec<Scalar>] {
        &self.cuts
    }

    pub fn cell_count(&self) -> usize {
        self.populations.len()
    }

    /// Grid points per cell, cells in row-major order of group indices.
    pub fn populations(&self) -> &[u64] {
        &self.populations
    }

    /// Row-major index of the cell holding the point with these per-axis
    /// element indices.
    pub fn cell_of(&self, idx: &[usize]) -> usize {
        idx.iter()
            .zip(&self.group_of)
            .fold(0, |acc, (&i, groups)| acc * self.r + groups[i])
    }

    /// Open interval `(lo, hi)` of group `g` on `axis`; `None` is unbounded.
    fn slab(&self, axis: usize, g: usize) -> (Option<&Scalar>, Option<&Scalar>) {
        let cuts = &self.cuts[axis];
        (g.checked_sub(1).map(|i| &cuts[i]), cuts.get(g))
    }
}

/// Slices every axis into `r` consecutive groups of sizes `ceil(A/r)` (first)
/// and `floor(A/r)`, cutting at midpoints between neighbouring elements.
pub fn cell_decompose(grid: &PointGrid, r: usize) -> Result<CellDecomposition> {
    if !grid.field().is_ordered() {
        return Err(Error::precondition("cell decomposition needs an ordered field"));
    }
    if r == 0 || r > grid.min_axis() {
        return Err(Error::precondition(format!(
            "r must lie in [1, {}], got {r}",
            grid.min_axis()
        )));
    }
    let two = Scalar::int(2).inv().expect("2 is invertible");
    let mut cuts = Vec::with_capacity(grid.k());
    let mut group_of = Vec::with_capacity(grid.k());
    let mut sizes = Vec::with_capacity(grid.k());
    for axis in grid.axes() {
        let (q, extra) = (axis.len() / r, axis.len() % r);
        let size: Vec<usize> = (0..r).map(|g| q + usize::from(g < extra)).collect();
        let mut groups = Vec::with_capacity(axis.len());
        let mut axis_cuts = Vec::with_capacity(r - 1);
        for (g, &s) in size.iter().enumerate() {
            groups.extend(std::iter::repeat_n(g, s));
            if g + 1 < r {
                let e = axis.elements();
                let last = groups.len() - 1;
                axis_cuts.push(&(&e[last] + &e[last + 1]) * &two);
            }
        }
        cuts.push(axis_cuts);
        group_of.push(groups);
        sizes.push(size);
    }
    let k = grid.k();
    let mut populations = Vec::with_capacity(r.pow(k as u32));
    let mut odo = Odometer::at(r, k, 0);
    loop {
        populations.push(odo.digits().iter().zip(&sizes).map(|(&g, s)| s[g] as u64).product());
        if !odo.advance() {
            break;
        }
    }
    Ok(CellDecomposition {
        r,
        grid: grid.clone(),
        axis_order: grid.axis_order(),
        cuts,
        group_of,
        populations,
        tallies: ClassTallies::default(),
    })
}

/// Affine rank of a point set: rank of the differences from the first point.
fn affine_rank(points: &[Vec<Scalar>], field: FieldSpec) -> usize {
    if points.len() < 2 {
        return 0;
    }
    let rows = points[1..]
        .iter()
        .map(|p| p.iter().zip(&points[0]).map(|(a, b)| a - b).collect())
        .collect();
    Matrix::from_rows(rows, field).expect("rectangular").rank()
}

/// Cell decomposition with every incidence assigned to a class by how the
/// plane meets the incident point's cell.
pub fn classify_incidences(
    grid: &PointGrid,
    planes: &HyperplaneFamily,
    r: usize,
    limits: &Limits,
) -> Result<CellDecomposition> {
    check_compatible(grid, planes)?;
    check_pairs(grid, planes.len(), limits)?;
    let mut dec = cell_decompose(grid, r)?;
    let k = grid.k();
    let field = grid.field();
    let index = PointIndex::new(grid);
    let cells: Vec<usize> = index.tuples.iter().map(|t| dec.cell_of(t)).collect();
    let list: Vec<&Hyperplane> = planes.iter().collect();
    dec.tallies = list
        .par_iter()
        .map(|p| {
            let mut by_cell: BTreeMap<usize, Vec<Vec<Scalar>>> = BTreeMap::new();
            for i in index.on_plane(p) {
                by_cell.entry(cells[i]).or_default().push(index.points[i].clone());
            }
            let mut t = ClassTallies::default();
            for on in by_cell.values() {
                let c = on.len() as u128;
                if on.len() < k {
                    t.i1 += c;
                } else if affine_rank(on, field) == k - 1 {
                    t.i2 += c;
                } else {
                    t.i3 += c;
                }
            }
            t
        })
        .reduce(ClassTallies::default, |a, b| ClassTallies {
            i1: a.i1 + b.i1,
            i2: a.i2 + b.i2,
            i3: a.i3 + b.i3,
        });
    Ok(dec)
}

/// Number of open cells of `dec` that the plane passes through.
pub fn cells_hit(plane: &Hyperplane, dec: &CellDecomposition) -> Result<usize> {
    if plane.k() != dec.k() {
        return Err(Error::DimensionMismatch(format!(
            "plane in dimension {} against cells in dimension {}",
            plane.k(),
            dec.k()
        )));
    }
    let mut hits = 0;
    let mut odo = Odometer::at(dec.r, dec.k(), 0);
    loop {
        // <a, x> ranges over an open interval on an open box; None = infinite
        let mut lo = Some(Scalar::zero(FieldSpec::Rationals));
        let mut hi = lo.clone();
        for (axis, &g) in odo.digits().iter().enumerate() {
            let a = &plane.coeffs()[axis];
            if a.is_zero() {
                continue;
            }
            let (left, right) = dec.slab(axis, g);
            let (min_end, max_end) = if a.signum() > 0 { (left, right) } else { (right, left) };
            lo = lo.zip(min_end).map(|(s, e)| &s + &(a * e));
            hi = hi.zip(max_end).map(|(s, e)| &s + &(a * e));
        }
        let b = plane.offset();
        if lo.is_none_or(|l| &l < b) && hi.is_none_or(|h| b < &h) {
            hits += 1;
        }
        if !odo.advance() {
            return Ok(hits);
        }
    }
}

/// Largest share of a plane's grid points carried by one `(k-2)`-flat.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FlatConcentration {
    pub flat_mass: u64,
    pub plane_mass: u64,
}

impl FlatConcentration {
    pub fn ratio(&self) -> f64 {
        self.flat_mass as f64 / self.plane_mass as f64
    }
}

/// Non-degeneracy diagnostic for one plane, `None` if it misses the grid.
pub fn flat_concentration(grid: &PointGrid, plane: &Hyperplane, limits: &Limits) -> Result<Option<FlatConcentration>> {
    let k = grid.k();
    if plane.k() != k {
        return Err(Error::DimensionMismatch(format!(
            "plane in dimension {} against a grid in dimension {k}",
            plane.k()
        )));
    }
    if k < 2 {
        return Err(Error::precondition("flats of dimension k - 2 need k >= 2"));
    }
    let index = PointIndex::new(grid);
    let on: Vec<Vec<Scalar>> = index
        .on_plane(plane)
        .into_iter()
        .map(|i| index.points[i].clone())
        .collect();
    let s = on.len();
    if s == 0 {
        return Ok(None);
    }
    let field = grid.field();
    let choose = (0..k - 1).fold(1u128, |acc, i| {
        acc.saturating_mul((s - i.min(s)) as u128) / (i as u128 + 1)
    });
    limits.check(choose.saturating_mul(s as u128))?;
    let mut best = if k == 2 { 1 } else { 0 };
    if k > 2 && s >= k - 1 {
        let mut pick: Vec<usize> = (0..k - 1).collect();
        loop {
            let base: Vec<Vec<Scalar>> = pick.iter().map(|&i| on[i].clone()).collect();
            if affine_rank(&base, field) == k - 2 {
                let mut with = base.clone();
                let mass = on
                    .iter()
                    .filter(|p| {
                        with.push((*p).clone());
                        let r = affine_rank(&with, field);
                        with.pop();
                        r == k - 2
                    })
                    .count();
                best = best.max(mass);
            }
            // next (k-1)-subset in lexicographic order
            let Some(i) = (0..k - 1).rev().find(|&i| pick[i] < s - (k - 1) + i) else {
                break;
            };
            pick[i] += 1;
            for j in i + 1..k - 1 {
                pick[j] = pick[j - 1] + 1;
            }
        }
    }
    if best == 0 {
        // all on-plane points lie in a flat of dimension below k - 2
        best = s;
    }
    Ok(Some(FlatConcentration {
        flat_mass: best as u64,
        plane_mass: s as u64,
    }))
}

/// The planes `<m, x> = d` for the cofactor vectors `m` of all `2 x 3`
/// blocks over `X`, weighted by how many blocks give the same plane.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorPlanes {
    pub d: Scalar,
    pub weights: BTreeMap<Hyperplane, BigCount>,
    /// Blocks whose cofactor vector is zero and so define no plane.
    pub zero: BigCount,
}

impl MinorPlanes {
    pub fn family(&self) -> HyperplaneFamily {
        HyperplaneFamily {
            planes: self.weights.keys().cloned().collect(),
        }
    }

    pub fn weight_sum(&self) -> BigCount {
        self.weights.values().sum()
    }

    pub fn weight_energy(&self) -> BigCount {
        self.weights.values().map(|w| w * w).sum()
    }

    /// `sum_pi w(pi) * #(P on pi)`, plus `zero * #P` when `d = 0` since
    /// every point satisfies `<0, x> = 0`.
    pub fn weighted_incidences(&self, grid: &PointGrid, limits: &Limits) -> Result<BigCount> {
        check_compatible(grid, &self.family())?;
        check_pairs(grid, self.weights.len(), limits)?;
        let index = PointIndex::new(grid);
        let list: Vec<(&Hyperplane, &BigCount)> = self.weights.iter().collect();
        let on_planes: BigCount = list
            .par_iter()
            .map(|(p, w)| *w * &BigCount::from(index.on_plane(p).len() as u64))
            .collect::<Vec<_>>()
            .into_iter()
            .sum();
        if self.d.is_zero() {
            Ok(&on_planes + &(&self.zero * &BigCount::from(grid.len())))
        } else {
            Ok(on_planes)
        }
    }
}

/// Weighted planes from the cofactor vectors of `2 x 3` blocks over `X`.
pub fn planes_from_minors(x: &GroundSet, d: &Scalar, limits: &Limits) -> Result<MinorPlanes> {
    if d.field() != x.field() {
        return Err(Error::FieldMismatch {
            expected: x.field().to_string(),
            found: d.field().to_string(),
        });
    }
    let map = minor_multiplicities(x, 3, limits)?;
    let mut weights: BTreeMap<Hyperplane, BigCount> = BTreeMap::new();
    for (m, mu) in map.entries {
        let plane = Hyperplane::new(m, d.clone())?;
        *weights.entry(plane).or_default() += &mu;
    }
    Ok(MinorPlanes {
        d: d.clone(),
        weights,
        zero: map.zero,
    })
}

/// Solutions of `u1 (v2 - w2) - u2 (v1 - w1) + v1 w2 - v2 w1 = 0` over `U^6`,
/// counted directly and as incidences between points `(r, s, t) in U^3` and
/// the curves `R(T - c) - S(a - b) + ac - Tb = 0` for `(a, b, c) in U^3`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveIncidences {
    pub direct: BigCount,
    pub via_curves: BigCount,
}

impl CurveIncidences {
    pub fn agree(&self) -> bool {
        self.direct == self.via_curves
    }
}

pub fn curve_incidences_n3(u: &GroundSet, limits: &Limits) -> Result<CurveIncidences> {
    limits.check(pow_sat(u.len(), 6))?;
    let low = Lowering::for_sets(&[u]);
    let domain = low.domain(2 * low.entry_bits() + 8);
    let (direct, via) = with_ring!(domain, ring => {
        let e = low.elems(&ring, u);
        let x = e.len();
        let direct = fold_range(
            (x as u64).pow(6),
            || 0u128,
            |acc, range| {
                let mut odo = Odometer::at(x, 6, range.start);
                for _ in range {
                    let t = odo.digits();
                    let (u1, u2, v1, v2, w1, w2) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]], &e[t[4]], &e[t[5]]);
                    let lhs = ring.add(
                        &ring.sub(&ring.mul(u1, &ring.sub(v2, w2)), &ring.mul(u2, &ring.sub(v1, w1))),
                        &ring.sub(&ring.mul(v1, w2), &ring.mul(v2, w1)),
                    );
                    if ring.is_zero(&lhs) {
                        *acc += 1;
                    }
                    odo.advance();
                }
            },
            |a, b| a + b,
        );
        let members = crate::detcount::kernels::Members::new(&e);
        // T (R - b) = cR + (a - b) S - ac: solve for T unless R = b
        let via = fold_range(
            (x as u64).pow(5),
            || 0u128,
            |acc, range| {
                let mut odo = Odometer::at(x, 5, range.start);
                for _ in range {
                    let t = odo.digits();
                    let (a, b, c, r, s) = (&e[t[0]], &e[t[1]], &e[t[2]], &e[t[3]], &e[t[4]]);
                    let rhs = ring.sub(&ring.add(&ring.mul(c, r), &ring.mul(&ring.sub(a, b), s)), &ring.mul(a, c));
                    let lead = ring.sub(r, b);
                    if ring.is_zero(&lead) {
                        if ring.is_zero(&rhs) {
                            *acc += x as u128;
                        }
                    } else if ring.div_exact(&rhs, &lead).is_some_and(|t| members.contains(&t)) {
                        *acc += 1;
                    }
                    odo.advance();
                }
            },
            |a, b| a + b,
        );
        (direct, via)
    });
    Ok(CurveIncidences {
        direct: direct.into(),
        via_curves: via.into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i64]) -> GroundSet {
        GroundSet::from_ints(v).unwrap()
    }

    fn fam(planes: &[(&[i64], i64)]) -> HyperplaneFamily {
        HyperplaneFamily::from_planes(planes.iter().map(|(a, b)| Hyperplane::from_ints(a, *b).unwrap())).unwrap()
    }

    #[test]
    fn normalization_dedups() {
        let f = fam(&[(&[2, 4], 6), (&[1, 2], 3), (&[0, 3], 3)]);
        assert_eq!(f.len(), 2);
        assert!(Hyperplane::from_ints(&[0, 0], 1).is_err());
        let p = Hyperplane::from_ints(&[0, -2, 4], 2).unwrap();
        assert_eq!(p.coeffs()[1], Scalar::int(1));
        assert_eq!(p.offset(), &Scalar::int(-1));
    }

    #[test]
    fn brute_examples() {
        let g = PointGrid::cube(&set(&[0, 1]), 2).unwrap();
        let lim = Limits::default();
        assert_eq!(incidences_brute(&g, &fam(&[(&[1, 1], 1)]), &lim).unwrap(), 2);
        assert_eq!(incidences_brute(&g, &fam(&[(&[1, 1], 5)]), &lim).unwrap(), 0);
    }

    #[test]
    fn choose_r_examples() {
        let ten = GroundSet::from_ints(&(1..=10).collect::<Vec<_>>()).unwrap();
        let g = PointGrid::cube(&ten, 3).unwrap();
        assert_eq!(choose_r(&g, 1000).unwrap(), 5);
        assert_eq!(choose_r(&g, 1_000_000_000).unwrap(), 1);
        let g = PointGrid::cube(&set(&[1, 2]), 3).unwrap();
        assert_eq!(choose_r(&g, 1).unwrap(), 2);
        assert!(choose_r(&g, 0).is_err());
    }

    #[test]
    fn decompose_examples() {
        let g = PointGrid::new(vec![set(&[1, 2, 3, 4]), set(&[1, 2, 3])]).unwrap();
        let d = cell_decompose(&g, 2).unwrap();
        assert_eq!(d.cuts()[0], vec![Scalar::ratio(5, 2).unwrap()]);
        assert_eq!(d.cuts()[1], vec![Scalar::ratio(5, 2).unwrap()]);
        assert_eq!(d.populations(), &[4, 2, 4, 2]);
        let one = cell_decompose(&g, 1).unwrap();
        assert_eq!(one.populations(), &[12]);
        assert!(cell_decompose(&g, 4).is_err());
        assert!(cell_decompose(&g, 0).is_err());
    }

    #[test]
    fn classify_examples() {
        let lim = Limits::default();
        let g = PointGrid::cube(&set(&[0, 1, 2]), 2).unwrap();
        let d = classify_incidences(&g, &fam(&[(&[1, 1], 2)]), 1, &lim).unwrap();
        assert_eq!(d.tallies, ClassTallies { i1: 0, i2: 3, i3: 0 });
        let d = classify_incidences(&g, &fam(&[(&[1, 1], 0)]), 2, &lim).unwrap();
        assert_eq!(d.tallies, ClassTallies { i1: 1, i2: 0, i3: 0 });
        let g3 = PointGrid::cube(&set(&[0, 1, 2]), 3).unwrap();
        // x + y + z = 0 meets the grid in the origin only; x = 0 is a whole face
        let planes = fam(&[(&[1, 1, 1], 0), (&[1, 0, 0], 0)]);
        let d = classify_incidences(&g3, &planes, 1, &lim).unwrap();
        assert_eq!(
            d.tallies.total(),
            incidences_brute(&g3, &planes, &lim).unwrap().to_u128().unwrap()
        );
        assert_eq!(d.tallies.i1, 1);
        assert_eq!(d.tallies.i2, 9);
    }

    #[test]
    fn cells_hit_examples() {
        let g = PointGrid::cube(&set(&[1, 2, 3, 4]), 3).unwrap();
        let d = cell_decompose(&g, 2).unwrap();
        assert_eq!(
            cells_hit(&Hyperplane::from_ints(&[1, 0, 0], 1).unwrap(), &d).unwrap(),
            4
        );
        let d1 = cell_decompose(&g, 1).unwrap();
        assert_eq!(
            cells_hit(&Hyperplane::from_ints(&[1, 2, 3], 7).unwrap(), &d1).unwrap(),
            1
        );
        // passes through the point where all cuts meet
        let p = Hyperplane::new(vec![Scalar::int(1); 3], Scalar::ratio(15, 2).unwrap()).unwrap();
        assert!(cells_hit(&p, &d).unwrap() <= 3 * 4);
    }

    #[test]
    fn concentration_examples() {
        let lim = Limits::default();
        let g = PointGrid::cube(&set(&[0, 1, 2]), 3).unwrap();
        let face = Hyperplane::from_ints(&[1, 0, 0], 0).unwrap();
        let c = flat_concentration(&g, &face, &lim).unwrap().unwrap();
        assert_eq!((c.flat_mass, c.plane_mass), (3, 9));
        let miss = Hyperplane::from_ints(&[1, 0, 0], 7).unwrap();
        assert!(flat_concentration(&g, &miss, &lim).unwrap().is_none());
        let g2 = PointGrid::cube(&set(&[0, 1, 2]), 2).unwrap();
        let line = Hyperplane::from_ints(&[1, 1], 2).unwrap();
        assert_eq!(flat_concentration(&g2, &line, &lim).unwrap().unwrap().flat_mass, 1);
    }

    #[test]
    fn minor_plane_examples() {
        let lim = Limits::default();
        let one = planes_from_minors(&set(&[1]), &Scalar::int(1), &lim).unwrap();
        assert!(one.weights.is_empty());
        assert_eq!(one.zero, 1);
        let x = set(&[1, 2]);
        let mp = planes_from_minors(&x, &Scalar::int(1), &lim).unwrap();
        assert_eq!(&mp.weight_sum() + &mp.zero, 64);
        let grid = PointGrid::cube(&x, 3).unwrap();
        let want = crate::detcount::count_det_brute(&x, 3, &Scalar::int(1), &lim).unwrap();
        assert_eq!(mp.weighted_incidences(&grid, &lim).unwrap(), want);
    }

    #[test]
    fn curve_examples() {
        let lim = Limits::default();
        let c = curve_incidences_n3(&set(&[1]), &lim).unwrap();
        assert_eq!(c.direct, 1);
        assert!(c.agree());
        for x in [set(&[0, 1]), set(&[1, 2]), set(&[-1, 2, 5])] {
            assert!(curve_incidences_n3(&x, &lim).unwrap().agree());
        }
    }
}
