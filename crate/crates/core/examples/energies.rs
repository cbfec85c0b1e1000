//! Value distributions and the energies T, N and S of a set.
//!
//!     cargo run --example energies

use detlab::energy::{energy_n, energy_s, energy_t, product_distribution, q2_distribution, r_distribution};
use detlab::{GroundSet, Scalar};

fn show(name: &str, d: &detlab::energy::ValueDistribution) {
    let parts: Vec<String> = d.entries().iter().map(|(t, c)| format!("{t}:{c}")).collect();
    println!("{name} [{}] mass {}: {{{}}}", d.label(), d.mass(), parts.join(", "));
}

pub fn main() {
    let u = GroundSet::from_ints(&[0, 1]).unwrap();
    show("P", &product_distribution(&u));
    show("R", &r_distribution(&u));
    show("Q2", &q2_distribution(&u));
    println!("T({u}) = {}", energy_t(&u));
    println!("S({u}) = {}", energy_s(&u));

    let v = GroundSet::from_ints(&[1, 2]).unwrap();
    println!("N({v}) = {}", energy_n(&v));

    // both equations are homogeneous, so dilating the set changes nothing
    let w = GroundSet::from_ints(&[1, 3, 4, 9]).unwrap();
    let w3 = w.scale(&Scalar::ratio(-2, 3).unwrap()).unwrap();
    assert_eq!(energy_t(&w), energy_t(&w3));
    assert_eq!(energy_n(&w), energy_n(&w3));
    println!("T({w}) = {} = T({w3})", energy_t(&w));
}
