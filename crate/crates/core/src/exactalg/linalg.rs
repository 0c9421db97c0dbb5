//! Dense exact matrices: rank, determinant, inverse.

use super::{CycloNum, FFElem, Field, LaurentPoly, RatFunc, Ring};
use crate::error::{input, Result};
use serde::Serialize;
use std::fmt::Display;

#[derive(Clone, Debug, PartialEq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return input("ragged matrix rows");
        }
        Ok(Matrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: T) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn map<U: Clone>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn try_map<U: Clone>(&self, f: impl FnMut(&T) -> Option<U>) -> Option<Matrix<U>> {
        let data: Option<Vec<U>> = self.data.iter().map(f).collect();
        Some(Matrix { rows: self.rows, cols: self.cols, data: data? })
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }
}

impl<T: Ring> Matrix<T> {
    pub fn identity_like(n: usize, one: &T) -> Self {
        let zero = one.zero_like();
        Matrix::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn mul(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, other.rows, "matrix shape mismatch");
        let zero = self.data.first().or(other.data.first()).map(|x| x.zero_like());
        let Some(zero) = zero else {
            return Matrix { rows: self.rows, cols: other.cols, data: Vec::new() };
        };
        Matrix::from_fn(self.rows, other.cols, |i, j| {
            let mut acc = zero.clone();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = other.get(k, j);
                if !b.is_zero() {
                    acc = acc.plus(&a.times(b));
                }
            }
            acc
        })
    }

    pub fn add(&self, other: &Matrix<T>) -> Matrix<T> {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Matrix<T> {
        self.map(|x| x.times(c))
    }

    pub fn trace(&self) -> Option<T> {
        let first = self.data.first()?;
        Some((0..self.rows.min(self.cols)).fold(first.zero_like(), |acc, i| acc.plus(self.get(i, i))))
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }
}

impl<T: Field> Matrix<T> {
    /// Rank by Gaussian elimination.
    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        let mut rank = 0;
        for col in 0..m.cols {
            let Some(p) = (rank..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                continue;
            };
            m.swap_rows(p, rank);
            let inv = m.get(rank, col).inverse().unwrap();
            for r in rank + 1..m.rows {
                let f = m.get(r, col).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let x = m.get(r, c).minus(&f.times(m.get(rank, c)));
                    m.set(r, c, x);
                }
            }
            rank += 1;
            if rank == m.rows {
                break;
            }
        }
        rank
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    /// Inverse of a square matrix, `None` if singular.
    pub fn inverse(&self) -> Option<Matrix<T>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        if n == 0 {
            return Some(self.clone());
        }
        let one = self.data[0].one_like();
        let mut a = self.clone();
        let mut b = Matrix::identity_like(n, &one);
        for col in 0..n {
            let p = (col..n).find(|&r| !a.get(r, col).is_zero())?;
            a.swap_rows(p, col);
            b.swap_rows(p, col);
            let inv = a.get(col, col).inverse().unwrap();
            for c in 0..n {
                let x = a.get(col, c).times(&inv);
                a.set(col, c, x);
                let y = b.get(col, c).times(&inv);
                b.set(col, c, y);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let f = a.get(r, col).clone();
                if f.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let x = a.get(r, c).minus(&f.times(a.get(col, c)));
                    a.set(r, c, x);
                    let y = b.get(r, c).minus(&f.times(b.get(col, c)));
                    b.set(r, c, y);
                }
            }
        }
        Some(b)
    }

    pub fn determinant(&self) -> Option<T> {
        assert_eq!(self.rows, self.cols);
        let first = self.data.first()?;
        let mut m = self.clone();
        let mut det = first.one_like();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&r| !m.get(r, col).is_zero()) else {
                return Some(first.zero_like());
            };
            if p != col {
                m.swap_rows(p, col);
                det = det.negate();
            }
            let piv = m.get(col, col).clone();
            det = det.times(&piv);
            let inv = piv.inverse().unwrap();
            for r in col + 1..m.rows {
                let f = m.get(r, col).times(&inv);
                if f.is_zero() {
                    continue;
                }
                for c in col..m.cols {
                    let x = m.get(r, c).minus(&f.times(m.get(col, c)));
                    m.set(r, c, x);
                }
            }
        }
        Some(det)
    }
}

/// Fraction-free (Bareiss) rank of a matrix of Laurent polynomials, viewed
/// over the rational-function field. Every division is exact.
pub fn bareiss_rank(m: &Matrix<LaurentPoly>) -> usize {
    let mut a = m.clone();
    let mut prev = LaurentPoly::one();
    let mut rank = 0;
    for col in 0..a.cols {
        let Some(p) = (rank..a.rows).find(|&r| !a.get(r, col).is_zero()) else {
            continue;
        };
        for c in 0..a.cols {
            a.data.swap(p * a.cols + c, rank * a.cols + c);
        }
        let piv = a.get(rank, col).clone();
        for r in rank + 1..a.rows {
            let f = a.get(r, col).clone();
            for c in 0..a.cols {
                let x = &(&piv * a.get(r, c)) - &(&f * a.get(rank, c));
                let x = x.div_exact(&prev).expect("Bareiss division is exact");
                a.set(r, c, x);
            }
        }
        prev = piv;
        rank += 1;
        if rank == a.rows {
            break;
        }
    }
    rank
}

/// Rank of a rational-function matrix: clear row denominators, then Bareiss.
pub fn ratfunc_rank(m: &Matrix<RatFunc>) -> usize {
    let rows: Vec<Vec<LaurentPoly>> = (0..m.rows())
        .map(|i| {
            let den = m
                .row(i)
                .iter()
                .fold(LaurentPoly::one(), |acc, x| {
                    let g = acc.gcd(x.denom());
                    (&acc * x.denom()).div_exact(&g).unwrap()
                });
            m.row(i)
                .iter()
                .map(|x| (x.numer() * &den).div_exact(x.denom()).unwrap())
                .collect()
        })
        .collect();
    if rows.is_empty() {
        return 0;
    }
    bareiss_rank(&Matrix::from_rows(rows).unwrap())
}

/// Dense matrix over one of the three exact coefficient domains.
#[derive(Clone, Debug)]
pub enum ExactMatrix {
    Finite(Matrix<FFElem>),
    Cyclotomic(Matrix<CycloNum>),
    RationalFunction(Matrix<RatFunc>),
}

/// A single entry of unspecified domain, for assembling an [`ExactMatrix`].
#[derive(Clone, Debug)]
pub enum Scalar {
    Finite(FFElem),
    Cyclotomic(CycloNum),
    RationalFunction(RatFunc),
}

impl ExactMatrix {
    /// Rejects mixed domains: different kinds, different finite fields, or
    /// different cyclotomic conductors.
    pub fn from_scalars(rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let first = rows.iter().flatten().next().cloned();
                match first {
            None => Ok(ExactMatrix::RationalFunction(Matrix::from_rows(Vec::new())?)),
            Some(Scalar::Finite(f0)) => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|x| match x {
                                Scalar::Finite(x) if x.same_field(&f0) => Ok(x),
                                _ => input("mixed-domain matrix"),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ExactMatrix::Finite(Matrix::from_rows(rows)?))
            }
            Some(Scalar::Cyclotomic(c0)) => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|x| match x {
                                Scalar::Cyclotomic(x) if x.conductor() == c0.conductor() => Ok(x),
                                _ => input("mixed-domain matrix"),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ExactMatrix::Cyclotomic(Matrix::from_rows(rows)?))
            }
            Some(Scalar::RationalFunction(_)) => {
                let rows = rows
                    .into_iter()
                    .map(|r| {
                        r.into_iter()
                            .map(|x| match x {
                                Scalar::RationalFunction(x) => Ok(x),
                                _ => input("mixed-domain matrix"),
                            })
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(ExactMatrix::RationalFunction(Matrix::from_rows(rows)?))
            }
        }
    }

    /// Row-major string-encoded entries, for debugging dumps.
    pub fn to_json(&self) -> serde_json::Value {
        fn enc<T: Display + Clone>(m: &Matrix<T>) -> Vec<Vec<String>> {
            (0..m.rows()).map(|i| m.row(i).iter().map(|x| x.to_string()).collect()).collect()
        }
        #[derive(Serialize)]
        struct Dump {
            domain: &'static str,
            rows: Vec<Vec<String>>,
        }
        let dump = match self {
            ExactMatrix::Finite(m) => Dump { domain: "finite", rows: enc(m) },
            ExactMatrix::Cyclotomic(m) => Dump { domain: "cyclotomic", rows: enc(m) },
            ExactMatrix::RationalFunction(m) => Dump { domain: "rational-function", rows: enc(m) },
        };
        serde_json::to_value(dump).expect("plain struct serialises")
    }
}

/// Exact rank: Gaussian elimination over finite and cyclotomic fields,
/// fraction-free elimination over the rational-function field.
pub fn exact_rank(m: &ExactMatrix) -> Result<usize> {
    Ok(match m {
        ExactMatrix::Finite(m) => {
            if let Some(f) = m.entries().next() {
                if m.entries().any(|x| !x.same_field(f)) {
                    return input("mixed-domain matrix");
                }
            }
            m.rank()
        }
        ExactMatrix::Cyclotomic(m) => {
            if let Some(f) = m.entries().next() {
                if m.entries().any(|x| x.conductor() != f.conductor()) {
                    return input("mixed-domain matrix");
                }
            }
            m.rank()
        }
        ExactMatrix::RationalFunction(m) => ratfunc_rank(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FField;

    #[test]
    fn finite_rank() {
        let f = FField::get(3, 1).unwrap();
        let one = f.elem(1);
        let m = Matrix::from_rows(vec![
            vec![one.clone(), one.negate()],
            vec![one.clone(), one.negate()],
        ])
        .unwrap();
        assert_eq!(exact_rank(&ExactMatrix::Finite(m)).unwrap(), 1);
    }

    #[test]
    fn cyclotomic_rank() {
        let one = CycloNum::int(4, 1);
        let id = Matrix::identity_like(4, &one);
        assert_eq!(exact_rank(&ExactMatrix::Cyclotomic(id)).unwrap(), 4);
        let z = CycloNum::zeta(4);
        let m = Matrix::from_rows(vec![
            vec![one.clone(), z.clone()],
            vec![z.clone(), CycloNum::int(4, -1)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn mixed_domain_rejected() {
        let a = FField::get(3, 1).unwrap().elem(1);
        let b = FField::get(5, 1).unwrap().elem(1);
        let err = ExactMatrix::from_scalars(vec![vec![Scalar::Finite(a), Scalar::Finite(b)]]);
        assert!(err.is_err());
        let c = CycloNum::int(4, 1);
        let d = CycloNum::int(6, 1);
        assert!(ExactMatrix::from_scalars(vec![vec![Scalar::Cyclotomic(c.clone())], vec![Scalar::Cyclotomic(d)]]).is_err());
        assert!(ExactMatrix::from_scalars(vec![vec![Scalar::Cyclotomic(c), Scalar::RationalFunction(RatFunc::one())]]).is_err());
    }

    #[test]
    fn ratfunc_rank_and_inverse() {
        let p = |s: &str| RatFunc::from_laurent(s.parse().unwrap());
        // second row = (u+1)/(u-1) times the first
        let k = RatFunc::new("u+1".parse().unwrap(), "u-1".parse().unwrap()).unwrap();
        let r1 = vec![p("1"), p("u"), p("u^2-1")];
        let r2: Vec<RatFunc> = r1.iter().map(|x| x.times(&k)).collect();
        let r3 = vec![p("0"), p("1"), p("v")];
        let m = Matrix::from_rows(vec![r1, r2, r3]).unwrap();
        assert_eq!(ratfunc_rank(&m), 2);
        assert_eq!(m.rank(), 2);
        let sq = Matrix::from_rows(vec![vec![p("u"), p("1")], vec![p("1"), p("u")]]).unwrap();
        let inv = sq.inverse().unwrap();
        assert_eq!(sq.mul(&inv), Matrix::identity_like(2, &RatFunc::one()));
        assert_eq!(sq.determinant().unwrap(), p("u^2-1"));
    }
}
