//! Solutions of <Mb, c> = omega with b, c drawn from finite sets.
//!
//!     cargo run --example bilinear

use detlab::energy::count_bilinear;
use detlab::{FieldSpec, GroundSet, Limits, Matrix, Scalar};

pub fn main() {
    let limits = Limits::default();
    let x = GroundSet::from_ints(&[1, 2]).unwrap();
    let id = Matrix::identity(2, FieldSpec::Rationals);
    for omega in 2..=8 {
        let c = count_bilinear(&id, &x, &x, &Scalar::int(omega), &limits).unwrap();
        println!("<b, c> = {omega}: {c}");
    }

    let m = Matrix::from_ints(&[&[2, 1, 0], &[0, 1, -1], &[1, 0, 3]]).unwrap();
    let b = GroundSet::from_ints(&[1, 2, 3]).unwrap();
    let c = GroundSet::from_ints(&[-1, 1, 4]).unwrap();
    let total = count_bilinear(&m, &b, &c, &Scalar::int(5), &limits).unwrap();
    println!("M = \n{m}\n<Mb, c> = 5 over B^3 x C^3: {total}");

    match count_bilinear(&id, &x, &x, &Scalar::int(0), &limits) {
        Err(e) => println!("omega = 0 is refused: {e}"),
        Ok(_) => unreachable!(),
    }
}
