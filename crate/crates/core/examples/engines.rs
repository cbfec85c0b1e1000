//! The three counting engines agree: full enumeration, the row-block
//! cofactor method and (for n = 2) the product convolution.
//!
//!     cargo run --release --example engines

use std::time::Instant;

use detlab::detcount::{count_det_brute, count_det_conv_n2, count_det_rowblock, det_spectrum, Engine, Limits};
use detlab::{generate, FamilyKind, FieldSpec};

pub fn main() {
    let limits = Limits::default();
    let x = generate(&FamilyKind::random_in(7, -5, 5).with_size(4), FieldSpec::Rationals).unwrap();
    println!("X = {x}");
    for n in [2, 3] {
        let spectrum = det_spectrum(&x, n, Engine::RowBlock, &limits).unwrap();
        let mut checked = 0;
        for (d, c) in spectrum.entries() {
            assert_eq!(&count_det_brute(&x, n, d, &limits).unwrap(), c);
            assert_eq!(&count_det_rowblock(&x, n, d, &limits).unwrap(), c);
            if n == 2 {
                assert_eq!(&count_det_conv_n2(&x, d).unwrap(), c);
            }
            checked += 1;
        }
        println!("n = {n}: all engines agree on {checked} determinant values");
    }

    let big = generate(&FamilyKind::Interval.with_size(7), FieldSpec::Rationals).unwrap();
    let zero = detlab::Scalar::int(0);
    let t = Instant::now();
    let fast = count_det_rowblock(&big, 3, &zero, &limits).unwrap();
    let t_fast = t.elapsed();
    let t = Instant::now();
    let slow = count_det_brute(&big, 3, &zero, &limits).unwrap();
    let t_slow = t.elapsed();
    assert_eq!(fast, slow);
    println!("D_3({{1..7}}, 0) = {fast}: rowblock {t_fast:?}, brute {t_slow:?}");
}
