//! The ground-set families, and how counts move under X -> cX and X -> -X.
//!
//!     cargo run --example families

use detlab::detcount::{count_det_rowblock, Limits};
use detlab::{generate, FamilyKind, FieldSpec, Scalar};

pub fn main() {
    let q = FieldSpec::Rationals;
    for spec in ["interval", "ap:1/2:3", "gp:3", "random:42", "random:-20:20:9"] {
        let kind: FamilyKind = spec.parse().unwrap();
        println!("{spec:<16} {}", generate(&kind.with_size(5), q).unwrap());
    }

    let limits = Limits::default();
    let x = generate(&FamilyKind::random_in(3, -9, 9).with_size(4), q).unwrap();
    let c = Scalar::ratio(-3, 2).unwrap();
    let d = Scalar::int(6);
    for n in [2u32, 3] {
        let base = count_det_rowblock(&x, n as usize, &d, &limits).unwrap();
        let dilated = count_det_rowblock(&x.scale(&c).unwrap(), n as usize, &(&c.pow(n) * &d), &limits).unwrap();
        let sign = if n % 2 == 0 { d.clone() } else { -&d };
        let negated = count_det_rowblock(&x.negate(), n as usize, &sign, &limits).unwrap();
        assert_eq!(base, dilated);
        assert_eq!(base, negated);
        println!("n = {n}: D_n(X, {d}) = D_n(cX, c^n {d}) = D_n(-X, (-1)^n {d}) = {base}");
    }
}
