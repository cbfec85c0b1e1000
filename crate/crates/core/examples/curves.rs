//! The singular 3x3 equation u1(v2 - w2) - u2(v1 - w1) + v1 w2 - v2 w1 = 0,
//! counted directly and as point-curve incidences.
//!
//!     cargo run --release --example curves

use detlab::incidence::curve_incidences_n3;
use detlab::{generate, FamilyKind, FieldSpec, Limits};

pub fn main() {
    for kind in [FamilyKind::Interval, FamilyKind::gp2()] {
        for size in [3, 5, 7] {
            let u = generate(&kind.clone().with_size(size), FieldSpec::Rationals).unwrap();
            let c = curve_incidences_n3(&u, &Limits::default()).unwrap();
            assert!(c.agree());
            println!("{:<8} U = {size}: {} solutions", kind.name(), c.direct);
        }
    }
}
