//! Partitions, standard (bi)tableaux, and seminormal representations for
//! types A and B.

use super::GenericRep;
use crate::exactalg::{LaurentPoly, Matrix, RatFunc, Ring};
use std::collections::HashMap;

/// Partitions of `n` in reverse lexicographic order, `(n)` first.
pub fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn go(n: usize, max: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=n.min(max)).rev() {
            prefix.push(part);
            go(n - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, n, &mut Vec::new(), &mut out);
    out
}

/// Ordered pairs of partitions with sizes adding to `n`, larger first part first.
pub fn bipartitions(n: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let mut out = Vec::new();
    for k in (0..=n).rev() {
        for a in partitions(k) {
            for b in partitions(n - k) {
                out.push((a.clone(), b));
            }
        }
    }
    out
}

pub fn partition_label(p: &[usize]) -> String {
    let parts: Vec<String> = p.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

pub fn bipartition_label(a: &[usize], b: &[usize]) -> String {
    format!("({},{})", partition_label(a), partition_label(b))
}

/// Position of an entry: (component, row, column).
type Cell = (u8, u8, u8);

/// All standard fillings of a multi-shape, each given by the cell of
/// `1, 2, ..., N` in order.
pub fn standard_tableaux(shape: &[Vec<usize>]) -> Vec<Vec<Cell>> {
    fn go(shape: &[Vec<usize>], filled: &mut Vec<Vec<usize>>, cur: &mut Vec<Cell>, total: usize, out: &mut Vec<Vec<Cell>>) {
        if cur.len() == total {
            out.push(cur.clone());
            return;
        }
        for c in 0..shape.len() {
            for r in 0..shape[c].len() {
                let len = filled[c][r];
                if len < shape[c][r] && (r == 0 || filled[c][r - 1] > len) {
                    cur.push((c as u8, r as u8, len as u8));
                    filled[c][r] += 1;
                    go(shape, filled, cur, total, out);
                    filled[c][r] -= 1;
                    cur.pop();
                }
            }
        }
    }
    let total = shape.iter().flatten().sum();
    let mut filled: Vec<Vec<usize>> = shape.iter().map(|p| vec![0; p.len()]).collect();
    let mut out = Vec::new();
    go(shape, &mut filled, &mut Vec::new(), total, &mut out);
    out
}

/// Seminormal form. `residue(cell)` is the eigenvalue of the Jucys-Murphy
/// element at that cell; `special` gives the diagonal action of the extra
/// type-B generator, if any.
fn seminormal(
    label: String,
    shape: &[Vec<usize>],
    residue: impl Fn(Cell) -> LaurentPoly,
    special: Option<&dyn Fn(Cell) -> LaurentPoly>,
) -> GenericRep {
    let tabs = standard_tableaux(shape);
    let dim = tabs.len();
    let index: HashMap<&[Cell], usize> = tabs.iter().enumerate().map(|(i, t)| (t.as_slice(), i)).collect();
    let total = tabs[0].len();
    let one = RatFunc::one();
    let mut gens = Vec::new();
    if let Some(f) = special {
        gens.push(Matrix::from_fn(dim, dim, |i, j| {
            if i == j {
                RatFunc::from_laurent(f(tabs[i][0]))
            } else {
                RatFunc::zero()
            }
        }));
    }
    for k in 0..total.saturating_sub(1) {
        let mut m = Matrix::from_fn(dim, dim, |_, _| RatFunc::zero());
        for (i, t) in tabs.iter().enumerate() {
            let rk = residue(t[k]);
            let rk1 = residue(t[k + 1]);
            let a = RatFunc::new(&LaurentPoly::u() * &rk1 - rk1.clone(), &rk1 - &rk).expect("distinct residues");
            m.set(i, i, a.clone());
            let mut swapped = t.clone();
            swapped.swap(k, k + 1);
            if let Some(&j) = index.get(swapped.as_slice()) {
                // T e_t = a_t e_t + (1 + a_t) e_{t'}
                m.set(j, i, one.plus(&a));
            }
        }
        gens.push(m);
    }
    GenericRep { label, dim, gens }
}

fn content_power(cell: Cell, shift: i64) -> LaurentPoly {
    LaurentPoly::u_pow(cell.2 as i64 - cell.1 as i64 + shift)
}

/// Irreducible representations of the type `A_n` algebra, indexed by
/// partitions of `n + 1`.
pub fn type_a_reps(n: usize) -> Vec<GenericRep> {
    partitions(n + 1)
        .into_iter()
        .map(|p| {
            let label = if n == 1 {
                if p.len() == 1 { "index" } else { "sign" }.to_string()
            } else {
                partition_label(&p)
            };
            seminormal(label, &[p], |c| content_power(c, 0), None)
        })
        .collect()
}

/// Irreducible representations of the type `B_n` algebra with equal
/// parameters, indexed by bipartitions of `n`. Generator 0 is the special
/// node of the diagram.
pub fn type_b_reps(n: usize) -> Vec<GenericRep> {
    let residue = |c: Cell| {
        if c.0 == 0 {
            content_power(c, 1)
        } else {
            -content_power(c, 0)
        }
    };
    let special = |c: Cell| if c.0 == 0 { LaurentPoly::u() } else { LaurentPoly::int(-1) };
    bipartitions(n)
        .into_iter()
        .map(|(a, b)| seminormal(bipartition_label(&a, &b), &[a, b], residue, Some(&special)))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_lists() {
        assert_eq!(partitions(4).len(), 5);
        assert_eq!(partitions(3), vec![vec![3], vec![2, 1], vec![1, 1, 1]]);
        assert_eq!(bipartitions(2).len(), 5);
        assert_eq!(standard_tableaux(&[vec![3, 2]]).len(), 5);
        assert_eq!(standard_tableaux(&[vec![2, 1], vec![1]]).len(), 8);
    }
}
