//! The energy of cofactor triples of 2x3 blocks, computed two ways, and its
//! dyadic decomposition by multiplicity.
//!
//!     cargo run --release --example estar_pyramid

use detlab::energy::{dyadic_pyramid, energy_estar_brute, energy_estar_mu};
use detlab::{GroundSet, Limits};

pub fn main() {
    let limits = Limits::default();
    for x in [
        GroundSet::from_ints(&[1, 2]).unwrap(),
        GroundSet::from_ints(&[0, 1, 3]).unwrap(),
    ] {
        let mu = energy_estar_mu(&x, &limits).unwrap();
        let brute = energy_estar_brute(&x, &limits).unwrap();
        assert_eq!(mu, brute);
        println!("E_*({x}) = {mu}");
        let p = dyadic_pyramid(&x, &limits).unwrap();
        for c in &p.classes {
            println!("  w = {:>3}: {:>4} triples, mass {}", c.w, c.planes, c.mass);
        }
        println!("  max w^2 #Pi_w = {} <= {}", p.max_weighted(), p.energy);
    }
}
