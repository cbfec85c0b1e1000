//! The adjugate identity and the bordered determinant formula
//! det [[Y, y^t], [z, x]] = x det Y - z Adj(Y) y^t.
//!
//!     cargo run --example schur

use detlab::matkit::{assemble_bordered, schur_value};
use detlab::{Matrix, Scalar};

pub fn main() {
    let y = Matrix::from_ints(&[&[2, -1, 0], &[1, 3, 1], &[0, 1, 4]]).unwrap();
    let adj = y.adjugate().unwrap();
    let det = y.det().unwrap();
    println!("Y =\n{y}\nAdj(Y) =\n{adj}\ndet Y = {det}");
    assert_eq!(y.mul(&adj).unwrap(), Matrix::identity(3, y.field()).scale(&det));

    let col: Vec<Scalar> = [1, -2, 5].iter().map(|&v| Scalar::int(v)).collect();
    let row: Vec<Scalar> = [3, 0, -1].iter().map(|&v| Scalar::int(v)).collect();
    let x = Scalar::ratio(7, 2).unwrap();
    let m = assemble_bordered(&y, &col, &row, &x).unwrap();
    let s = schur_value(&y, &col, &row, &x).unwrap();
    assert_eq!(m.det().unwrap(), s);
    println!("bordered matrix\n{m}\ndeterminant {s} from both sides");
}
