//! Determinant spectrum of 2x2 and 3x3 matrices over a small set, and the
//! most popular determinant values.
//!
//!     cargo run --example spectrum

use detlab::detcount::{det_spectrum, dsup, Engine, Limits};
use detlab::{GroundSet, Scalar};

pub fn main() {
    let x = GroundSet::from_ints(&[1, 2]).unwrap();
    let limits = Limits::default();

    let s2 = det_spectrum(&x, 2, Engine::Brute, &limits).unwrap();
    println!("D_2({x}, d):");
    for (d, c) in s2.entries() {
        println!("  d = {d:>3}: {c}");
    }
    println!("  total = {} = 2^4", s2.total_mass());

    let s3 = det_spectrum(&x, 3, Engine::RowBlock, &limits).unwrap();
    println!(
        "n = 3: {} distinct values, D_3(X, 0) = {}",
        s3.distinct(),
        s3.get(&Scalar::int(0))
    );

    let (d, c) = dsup(&x, 3, true, &limits).unwrap();
    println!("most frequent nonzero determinant: {d} ({c} matrices)");
    let w = s3.witness(&d, &limits).unwrap().unwrap();
    println!("one of them:\n{w}");
}
