//! Irreducible representations of the dihedral algebras `I2(m)`, m in {3, 4, 6}.

use super::GenericRep;
use crate::exactalg::{LaurentPoly, Matrix, RatFunc};

fn scalar(x: LaurentPoly) -> Matrix<RatFunc> {
    Matrix::from_fn(1, 1, |_, _| RatFunc::from_laurent(x.clone()))
}

/// `u (2 + 2 cos(2 pi j / m))`, which is rational for the crystallographic m.
fn twodim_coefficient(m: u32, j: u32) -> i64 {
    let two_cos = match (m, j) {
        (3, 1) => -1,
        (4, 1) => 0,
        (6, 1) => 1,
        (6, 2) => -1,
        _ => unreachable!("no two-dimensional representation {j} for m = {m}"),
    };
    2 + two_cos
}

pub fn dihedral_reps(m: u32) -> Vec<GenericRep> {
    let u = LaurentPoly::u;
    let minus = || LaurentPoly::int(-1);
    let one_dim = |label: &str, a: LaurentPoly, b: LaurentPoly| GenericRep {
        label: label.to_string(),
        dim: 1,
        gens: vec![scalar(a), scalar(b)],
    };
    let mut reps = vec![one_dim("index", u(), u()), one_dim("sign", minus(), minus())];
    if m % 2 == 0 {
        reps.push(one_dim("mixed1", u(), minus()));
        reps.push(one_dim("mixed2", minus(), u()));
    }
    for j in 1..=(m - 1) / 2 {
        let d = &u() * &LaurentPoly::int(twodim_coefficient(m, j));
        let r = |x: LaurentPoly| RatFunc::from_laurent(x);
        let t1 = Matrix::from_rows(vec![vec![r(minus()), r(LaurentPoly::zero())], vec![r(LaurentPoly::one()), r(u())]]);
        let t2 = Matrix::from_rows(vec![vec![r(u()), r(d)], vec![r(LaurentPoly::zero()), r(minus())]]);
        reps.push(GenericRep {
            label: format!("twodim:{j}"),
            dim: 2,
            gens: vec![t1.unwrap(), t2.unwrap()],
        });
    }
    reps
}
