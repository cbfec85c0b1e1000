//! Cell decomposition of a grid and the three incidence classes.
//!
//!     cargo run --example incidence_cells

use detlab::incidence::{
    cells_hit, choose_r, classify_incidences, flat_concentration, incidences_brute, Hyperplane, HyperplaneFamily,
    PointGrid,
};
use detlab::{GroundSet, Limits};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn main() {
    let limits = Limits::default();
    let grid = PointGrid::new(vec![
        GroundSet::from_ints(&[0, 1, 2, 3, 4, 5]).unwrap(),
        GroundSet::from_ints(&[0, 2, 4, 6]).unwrap(),
        GroundSet::from_ints(&[1, 2, 3, 5, 8]).unwrap(),
    ])
    .unwrap();

    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut planes = HyperplaneFamily::new();
    while planes.len() < 40 {
        let a: Vec<i64> = (0..3).map(|_| rng.random_range(-2..=2)).collect();
        if let Ok(p) = Hyperplane::from_ints(&a, rng.random_range(-6..=12)) {
            planes.insert(p).unwrap();
        }
    }

    let r = choose_r(&grid, planes.len()).unwrap();
    let dec = classify_incidences(&grid, &planes, r, &limits).unwrap();
    let brute = incidences_brute(&grid, &planes, &limits).unwrap();
    let t = dec.tallies;
    println!(
        "{} points, {} planes, r = {r}, {} cells",
        grid.len(),
        planes.len(),
        dec.cell_count()
    );
    println!(
        "I1 = {}, I2 = {}, I3 = {}, total {} (brute {brute})",
        t.i1,
        t.i2,
        t.i3,
        t.total()
    );

    let bound = 3 * r * r;
    let worst = planes.iter().map(|p| cells_hit(p, &dec).unwrap()).max().unwrap();
    println!("most cells met by one plane: {worst} (bound {bound})");

    let dense = planes
        .iter()
        .filter_map(|p| flat_concentration(&grid, p, &limits).unwrap())
        .max_by(|a, b| a.ratio().total_cmp(&b.ratio()))
        .unwrap();
    println!(
        "largest line share of a plane: {}/{}",
        dense.flat_mass, dense.plane_mass
    );
}
