//! Matrices over a set counted by rank.
//!
//!     cargo run --example rank

use detlab::detcount::{count_det_brute, rank_distribution, trivial_total, Limits};
use detlab::{GroundSet, Scalar};

pub fn main() {
    let limits = Limits::default();
    let x = GroundSet::from_ints(&[0, 1, 2]).unwrap();
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let dist = rank_distribution(&x, m, n, &limits).unwrap();
        let parts: Vec<String> = dist.iter().enumerate().map(|(r, c)| format!("r={r}: {c}")).collect();
        println!("{m}x{n} over {x}: {}", parts.join(", "));
    }
    let full = rank_distribution(&x, 3, 3, &limits).unwrap()[3].clone();
    let singular = count_det_brute(&x, 3, &Scalar::int(0), &limits).unwrap();
    assert_eq!(&full + &singular, trivial_total(&x, 3));
    println!("full rank {full} + singular {singular} = 3^9");
}
