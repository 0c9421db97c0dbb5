//! Composition factors of modules over specialised Hecke algebras on
//! finite fields: random-word splitting, Norton's irreducibility test and
//! standard-basis isomorphism testing.

pub mod chop;
pub mod field;
pub mod mat;

pub use chop::{chop, count_simples_meataxe, is_isomorphic, FactorMultiset, SimpleFactor};
pub use field::MtxField;
pub use mat::{Gen, Mat};

use crate::error::{input, Error, Result};
use crate::exactalg::FFElem;
use crate::rootsys::WeylGroup;
use std::sync::Arc;

/// Largest group whose regular module we build by default.
pub const DEFAULT_REGULAR_CAP: u64 = 1200;

/// A right module, vectors as rows: `T_s` acts by `v -> v G_s`.
#[derive(Clone, Debug)]
pub struct FFModule {
    field: Arc<MtxField>,
    q: u16,
    dim: usize,
    gens: Vec<Gen>,
    tag: String,
}

impl FFModule {
    pub fn new(field: Arc<MtxField>, q: u16, gens: Vec<Gen>, tag: impl Into<String>) -> Result<Self> {
        let dim = gens.first().map_or(0, |g| g.dim());
        if dim == 0 {
            return input("module must have positive dimension and at least one generator");
        }
        if gens.iter().any(|g| g.dim() != dim) {
            return input("generator matrices differ in size");
        }
        Ok(FFModule { field, q, dim, gens, tag: tag.into() })
    }

    pub fn from_dense(field: Arc<MtxField>, q: u16, gens: Vec<Mat>, tag: impl Into<String>) -> Result<Self> {
        if gens.iter().any(|g| g.rows != g.cols) {
            return input("generator matrices must be square");
        }
        Self::new(field, q, gens.into_iter().map(Gen::Dense).collect(), tag)
    }

    pub fn field(&self) -> &Arc<MtxField> {
        &self.field
    }

    pub fn parameter(&self) -> u16 {
        self.q
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Gen] {
        &self.gens
    }

    pub fn tag(&self) -> &str {
        &self.tag
    }

    /// Quadratic relations `G^2 = q + (q-1) G` and the braid relations of the
    /// given Coxeter matrix.
    pub fn check_relations(&self, coxeter: &[Vec<u32>]) -> Result<()> {
        let f = &self.field;
        let dense: Vec<Mat> = self.gens.iter().map(|g| g.to_dense()).collect();
        if coxeter.len() != dense.len() {
            return input("Coxeter matrix size does not match the generator count");
        }
        for (s, g) in dense.iter().enumerate() {
            let mut lhs = g.mul(f, g);
            lhs.add_scaled(f, f.neg(f.sub(self.q, 1)), g);
            lhs.add_diagonal(f, f.neg(self.q));
            if !lhs.is_zero() {
                return Err(Error::Consistency(format!("{}: quadratic relation fails for generator {s}", self.tag)));
            }
        }
        for s in 0..dense.len() {
            for t in s + 1..dense.len() {
                let m = coxeter[s][t] as usize;
                let alt = |first: usize, second: usize| {
                    let mut acc = Mat::identity(self.dim);
                    for k in 0..m {
                        acc = acc.mul(f, &dense[if k % 2 == 0 { first } else { second }]);
                    }
                    acc
                };
                if alt(s, t) != alt(t, s) {
                    return Err(Error::Consistency(format!("{}: braid relation fails for ({s},{t})", self.tag)));
                }
            }
        }
        Ok(())
    }
}

/// Right multiplication by the `T_s` on the basis `(T_w)`, at parameter `q`.
pub fn regular_module(w: &WeylGroup, q: &FFElem, cap: u64, tag: impl Into<String>) -> Result<FFModule> {
    let n = w.order();
    if n as u64 > cap {
        return Err(Error::UnsupportedScale { what: format!("regular module of {}", w.datum()), order: n as u64, cap });
    }
    let field = MtxField::get(q.field())?;
    let qq = field.from_raw(q.raw());
    let qm1 = field.sub(qq, 1);
    let gens = (0..w.rank())
        .map(|s| {
            let rows = (0..n)
                .map(|x| {
                    let xs = w.right_mul(x, s);
                    if w.length(xs) > w.length(x) {
                        vec![(xs as u32, 1u16)]
                    } else {
                        let mut r = vec![(xs as u32, qq)];
                        if qm1 != 0 {
                            r.push((x as u32, qm1));
                        }
                        r.retain(|e| e.1 != 0);
                        r.sort_unstable();
                        r
                    }
                })
                .collect();
            Gen::Sparse { n, rows }
        })
        .collect();
    FFModule::new(field, qq, gens, tag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FField;
    use crate::rootsys::{CartanType, CoxeterDatum};

    #[test]
    fn regular_a1_at_minus_one() {
        let datum = CoxeterDatum::new(CartanType::A(1)).unwrap();
        let w = WeylGroup::new(&datum).unwrap();
        let ff = FField::get(3, 1).unwrap();
        let m = regular_module(&w, &ff.elem(2), DEFAULT_REGULAR_CAP, "regular:A1").unwrap();
        // rows: T_1 T_s = T_s, T_s T_s = -T_1 - 2 T_s
        assert_eq!(m.gens()[0].to_dense(), Mat::from_rows(&[vec![0, 1], vec![2, 1]]));
        m.check_relations(datum.coxeter_matrix()).unwrap();
    }

    #[test]
    fn regular_relations() {
        for (t, ell, q) in [(CartanType::A(2), 7u64, 3u32), (CartanType::B(2), 5, 4), (CartanType::G2, 13, 5)] {
            let datum = CoxeterDatum::new(t).unwrap();
            let w = WeylGroup::new(&datum).unwrap();
            let ff = FField::get(ell, 1).unwrap();
            let m = regular_module(&w, &ff.elem(q), DEFAULT_REGULAR_CAP, "t").unwrap();
            m.check_relations(datum.coxeter_matrix()).unwrap();
            for g in m.gens() {
                if let Gen::Sparse { rows, .. } = g {
                    assert!(rows.iter().all(|r| r.len() <= 2));
                }
            }
        }
    }
}
