//! Counting over a prime field F_p, where every nonzero determinant is
//! equally common once X = F_p.
//!
//!     cargo run --example prime_field

use detlab::detcount::{count_det_rowblock, det_spectrum, Engine, Limits};
use detlab::{FieldSpec, GroundSet, Scalar};

pub fn main() {
    let limits = Limits::default();
    let f = FieldSpec::prime(5).unwrap();
    let all = GroundSet::from_ints_in(&[0, 1, 2, 3, 4], f).unwrap();
    let s = det_spectrum(&all, 2, Engine::Convolution, &limits).unwrap();
    for (d, c) in s.entries() {
        println!("F_5: D_2(d = {d}) = {c}");
    }

    let x = GroundSet::from_ints_in(&[1, 2, 4], FieldSpec::prime(7).unwrap()).unwrap();
    for d in 0..7 {
        let d = Scalar::from_i64(d, x.field());
        println!(
            "X = {x} in F_7: D_3(d = {d}) = {}",
            count_det_rowblock(&x, 3, &d, &limits).unwrap()
        );
    }
}
