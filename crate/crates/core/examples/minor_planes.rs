//! D_3(X, d) as a weighted count of incidences between X^3 and the planes
//! <m, x> = d, where m runs over cofactor vectors of the bottom two rows.
//!
//!     cargo run --example minor_planes

use detlab::detcount::{count_det_rowblock, Limits};
use detlab::energy::energy_estar_mu;
use detlab::incidence::{planes_from_minors, PointGrid};
use detlab::{GroundSet, Scalar};

pub fn main() {
    let limits = Limits::default();
    let x = GroundSet::from_ints(&[1, 2, 4]).unwrap();
    let grid = PointGrid::cube(&x, 3).unwrap();
    for d in [0, 1, 4, 7] {
        let d = Scalar::int(d);
        let mp = planes_from_minors(&x, &d, &limits).unwrap();
        let weighted = mp.weighted_incidences(&grid, &limits).unwrap();
        let direct = count_det_rowblock(&x, 3, &d, &limits).unwrap();
        assert_eq!(weighted, direct);
        println!(
            "d = {d}: {} planes, zero bucket {}, weighted incidences {weighted}",
            mp.weights.len(),
            mp.zero
        );
    }
    let mp = planes_from_minors(&x, &Scalar::int(1), &limits).unwrap();
    let estar = energy_estar_mu(&x, &limits).unwrap();
    println!(
        "sum of squared weights {} + zero bucket^2 {} = E_* = {estar}",
        mp.weight_energy(),
        &mp.zero * &mp.zero
    );
}
