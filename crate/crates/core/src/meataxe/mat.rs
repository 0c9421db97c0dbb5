//! Dense and sparse matrices over a [`MtxField`], row-vector convention.

use super::field::MtxField;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub data: Vec<u16>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Mat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u16>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend_from_slice(r);
        }
        Mat { rows: rows.len(), cols, data }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u16 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u16) {
        self.data[i * self.cols + j] = x;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u16] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    #[inline]
    pub fn row_mut(&mut self, i: usize) -> &mut [u16] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.data[i * self.cols + j];
            }
        }
        t
    }

    pub fn mul(&self, f: &MtxField, other: &Mat) -> Mat {
        assert_eq!(self.cols, other.rows);
        let mut out = Mat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            let (a, o) = (self.row(i), out.row_mut(i));
            for (k, &c) in a.iter().enumerate() {
                if c != 0 {
                    f.axpy(o, c, other.row(k));
                }
            }
        }
        out
    }

    /// `self += c other`.
    pub fn add_scaled(&mut self, f: &MtxField, c: u16, other: &Mat) {
        f.axpy(&mut self.data, c, &other.data);
    }

    pub fn add_diagonal(&mut self, f: &MtxField, c: u16) {
        for i in 0..self.rows.min(self.cols) {
            let x = self.get(i, i);
            self.set(i, i, f.add(x, c));
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }
}

/// A generator matrix. The regular module starts out sparse; everything
/// derived from it is dense.
#[derive(Clone, Debug)]
pub enum Gen {
    Dense(Mat),
    /// Row `i` lists its non-zero `(column, value)` entries.
    Sparse { n: usize, rows: Vec<Vec<(u32, u16)>> },
}

impl Gen {
    pub fn dim(&self) -> usize {
        match self {
            Gen::Dense(m) => m.rows,
            Gen::Sparse { n, .. } => *n,
        }
    }

    pub fn to_dense(&self) -> Mat {
        match self {
            Gen::Dense(m) => m.clone(),
            Gen::Sparse { n, rows } => {
                let mut m = Mat::zero(*n, *n);
                for (i, r) in rows.iter().enumerate() {
                    for &(j, x) in r {
                        m.set(i, j as usize, x);
                    }
                }
                m
            }
        }
    }

    /// `out = v G`.
    pub fn apply(&self, f: &MtxField, v: &[u16], out: &mut [u16]) {
        out.fill(0);
        match self {
            Gen::Dense(m) => {
                for (i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        f.axpy(out, c, m.row(i));
                    }
                }
            }
            Gen::Sparse { rows, .. } => {
                for (i, &c) in v.iter().enumerate() {
                    if c != 0 {
                        for &(j, x) in &rows[i] {
                            let j = j as usize;
                            out[j] = f.add(out[j], f.mul(c, x));
                        }
                    }
                }
            }
        }
    }

    /// `X G`.
    pub fn right_mul(&self, f: &MtxField, x: &Mat) -> Mat {
        match self {
            Gen::Dense(m) => x.mul(f, m),
            Gen::Sparse { .. } => {
                let mut out = Mat::zero(x.rows, x.cols);
                for i in 0..x.rows {
                    let (src, dst) = (x.row(i), &mut out.data[i * x.cols..(i + 1) * x.cols]);
                    self.apply(f, src, dst);
                }
                out
            }
        }
    }

    pub fn transpose(&self) -> Gen {
        match self {
            Gen::Dense(m) => Gen::Dense(m.transpose()),
            Gen::Sparse { n, rows } => {
                let mut t = vec![Vec::new(); *n];
                for (i, r) in rows.iter().enumerate() {
                    for &(j, x) in r {
                        t[j as usize].push((i as u32, x));
                    }
                }
                Gen::Sparse { n: *n, rows: t }
            }
        }
    }
}

/// Reduced row echelon basis of a subspace, kept sorted by pivot column.
#[derive(Clone, Debug)]
pub struct Echelon {
    pub n: usize,
    pub rows: Vec<Vec<u16>>,
    pub pivots: Vec<usize>,
}

impl Echelon {
    pub fn new(n: usize) -> Self {
        Echelon { n, rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis in place.
    pub fn reduce(&self, f: &MtxField, v: &mut [u16]) {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                f.axpy(v, f.neg(c), r);
            }
        }
    }

    /// Add `v` if independent; returns the normalised new row.
    pub fn insert(&mut self, f: &MtxField, mut v: Vec<u16>) -> Option<Vec<u16>> {
        self.reduce(f, &mut v);
        let p = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[p]);
        f.scale(&mut v, inv);
        for r in self.rows.iter_mut() {
            let c = r[p];
            if c != 0 {
                f.axpy(r, f.neg(c), &v);
            }
        }
        let at = self.pivots.partition_point(|&x| x < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v.clone());
        Some(v)
    }
}

/// Basis of `{x : M x = 0}` (column vectors), returned as rows.
pub fn right_nullspace(f: &MtxField, m: &Mat) -> Vec<Vec<u16>> {
    let mut a = m.clone();
    let (rows, cols) = (a.rows, a.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| a.get(i, c) != 0) else { continue };
        if p != r {
            for j in 0..cols {
                a.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        f.scale(a.row_mut(r), inv);
        let pivot_row = a.row(r).to_vec();
        for i in 0..rows {
            if i != r {
                let x = a.get(i, c);
                if x != 0 {
                    f.axpy(a.row_mut(i), f.neg(x), &pivot_row);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let mut out = Vec::new();
    let mut is_pivot = vec![false; cols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    for free in (0..cols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![0u16; cols];
        v[free] = 1;
        for (i, &c) in pivots.iter().enumerate() {
            v[c] = f.neg(a.get(i, free));
        }
        out.push(v);
    }
    out
}

/// Basis of `{x : x M = 0}`.
pub fn left_nullspace(f: &MtxField, m: &Mat) -> Vec<Vec<u16>> {
    right_nullspace(f, &m.transpose())
}

pub fn inverse(f: &MtxField, m: &Mat) -> Option<Mat> {
    let n = m.rows;
    let mut a = m.clone();
    let mut b = Mat::identity(n);
    for c in 0..n {
        let p = (c..n).find(|&i| a.get(i, c) != 0)?;
        if p != c {
            for j in 0..n {
                a.data.swap(p * n + j, c * n + j);
                b.data.swap(p * n + j, c * n + j);
            }
        }
        let inv = f.inv(a.get(c, c));
        f.scale(a.row_mut(c), inv);
        f.scale(b.row_mut(c), inv);
        let (ar, br) = (a.row(c).to_vec(), b.row(c).to_vec());
        for i in 0..n {
            if i != c {
                let x = a.get(i, c);
                if x != 0 {
                    f.axpy(a.row_mut(i), f.neg(x), &ar);
                    f.axpy(b.row_mut(i), f.neg(x), &br);
                }
            }
        }
    }
    Some(b)
}

/// Characteristic polynomial, constant term first, via reduction to upper
/// Hessenberg form by elementary similarity transformations.
pub fn charpoly(f: &MtxField, m: &Mat) -> Vec<u16> {
    let n = m.rows;
    let mut h = m.clone();
    let mut mult = vec![0u16; n];
    for k in 0..n.saturating_sub(2) {
        let Some(p) = (k + 1..n).find(|&i| h.get(i, k) != 0) else { continue };
        if p != k + 1 {
            for j in 0..n {
                h.data.swap(p * n + j, (k + 1) * n + j);
            }
            for i in 0..n {
                h.data.swap(i * n + p, i * n + k + 1);
            }
        }
        let inv = f.inv(h.get(k + 1, k));
        let pivot_row = h.row(k + 1).to_vec();
        mult.fill(0);
        for i in k + 2..n {
            let x = h.get(i, k);
            if x != 0 {
                let c = f.mul(x, inv);
                mult[i] = c;
                f.axpy(h.row_mut(i), f.neg(c), &pivot_row);
            }
        }
        // column k+1 += sum_i mult[i] column i
        if mult[k + 2..].iter().any(|&c| c != 0) {
            for r in 0..n {
                let d = f.dot(&h.row(r)[k + 2..], &mult[k + 2..]);
                if d != 0 {
                    let x = h.get(r, k + 1);
                    h.set(r, k + 1, f.add(x, d));
                }
            }
        }
    }
    // p_k = (x - h_kk) p_{k-1} - sum_{i<k} h_ik (prod_{j=i+1..k} h_{j,j-1}) p_{i-1}
    let mut polys: Vec<Vec<u16>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut pk = vec![0u16; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            pk[d + 1] = f.add(pk[d + 1], c);
            pk[d] = f.sub(pk[d], f.mul(c, h.get(k, k)));
        }
        let mut t = 1u16;
        for i in (0..k).rev() {
            t = f.mul(t, h.get(i + 1, i));
            if t == 0 {
                break;
            }
            let c = f.mul(h.get(i, k), t);
            if c != 0 {
                f.axpy(&mut pk[..i + 1], f.neg(c), &polys[i]);
            }
        }
        polys.push(pk);
    }
    polys.pop().unwrap()
}

pub fn poly_eval(f: &MtxField, p: &[u16], x: u16) -> u16 {
    p.iter().rev().fold(0u16, |acc, &c| f.add(f.mul(acc, x), c))
}

/// Roots in the field with their multiplicities, ascending by root.
pub fn poly_roots(f: &MtxField, p: &[u16]) -> Vec<(u16, usize)> {
    let mut out = Vec::new();
    for x in 0..f.order() as u16 {
        if poly_eval(f, p, x) != 0 {
            continue;
        }
        let mut cur = p.to_vec();
        let mut mult = 0;
        loop {
            // synthetic division by (t - x)
            let deg = cur.len() - 1;
            let mut quot = vec![0u16; deg];
            let mut carry = 0u16;
            for d in (0..=deg).rev() {
                let val = f.add(cur[d], f.mul(carry, x));
                if d == 0 {
                    carry = val;
                } else {
                    quot[d - 1] = val;
                    carry = val;
                }
            }
            if carry != 0 {
                break;
            }
            mult += 1;
            cur = quot;
            if cur.len() <= 1 {
                break;
            }
        }
        out.push((x, mult));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FField;

    fn gf(p: u64, d: u32) -> std::sync::Arc<MtxField> {
        MtxField::get(&FField::get(p, d).unwrap()).unwrap()
    }

    #[test]
    fn charpoly_small() {
        let f = gf(7, 1);
        // [[1,2],[3,4]]: x^2 - 5x - 2
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(charpoly(&f, &m), vec![5, 2, 1]);
        let id = Mat::identity(3);
        // (x-1)^3 = x^3 - 3x^2 + 3x - 1
        assert_eq!(charpoly(&f, &id), vec![6, 3, 4, 1]);
        assert_eq!(poly_roots(&f, &charpoly(&f, &id)), vec![(1, 3)]);
    }

    #[test]
    fn charpoly_matches_determinant_expansion() {
        let f = gf(5, 1);
        let m = Mat::from_rows(&[vec![0, 1, 2, 3], vec![4, 0, 1, 1], vec![2, 2, 0, 4], vec![1, 3, 3, 0]]);
        let cp = charpoly(&f, &m);
        // p(lambda) = det(lambda - M) for each lambda
        for lam in 0..5u16 {
            let mut a = Mat::zero(4, 4);
            a.add_scaled(&f, f.neg(1), &m);
            a.add_diagonal(&f, lam);
            let singular = inverse(&f, &a).is_none();
            assert_eq!(singular, poly_eval(&f, &cp, lam) == 0);
        }
    }

    #[test]
    fn nullspaces_and_inverse() {
        let f = gf(3, 2);
        let m = Mat::from_rows(&[vec![1, 2, 0], vec![2, 4, 0], vec![0, 0, 5]]);
        for v in right_nullspace(&f, &m) {
            let col = Mat { rows: 3, cols: 1, data: v };
            assert!(m.mul(&f, &col).is_zero());
        }
        let inv = inverse(&f, &Mat::from_rows(&[vec![1, 2], vec![3, 1]])).unwrap();
        assert_eq!(Mat::from_rows(&[vec![1, 2], vec![3, 1]]).mul(&f, &inv), Mat::identity(2));
    }
}
