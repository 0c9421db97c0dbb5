//! The Iwahori-Hecke algebra of a Weyl group over an arbitrary coefficient
//! ring, in the standard basis `T_w`.

use crate::chartable::CharacterTable;
use crate::error::{consistency, input, Result};
use crate::exactalg::{LaurentPoly, Matrix, RatFunc, RationalImage, Ring};
use crate::rootsys::WeylGroup;
use std::collections::BTreeMap;
use std::sync::Arc;

/// A finite linear combination of basis elements `T_w`, with the parameter
/// `q` of the quadratic relation `T_s^2 = q + (q-1) T_s`.
#[derive(Clone, Debug)]
pub struct HeckeElement<R: Ring> {
    group: Arc<WeylGroup>,
    q: R,
    coeffs: BTreeMap<usize, R>,
}

impl<R: Ring> PartialEq for HeckeElement<R> {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.group, &other.group) && self.q == other.q && self.coeffs == other.coeffs
    }
}

impl HeckeElement<LaurentPoly> {
    /// `T_w` in the generic algebra, `q = u = v^2`.
    pub fn generic_basis(group: &Arc<WeylGroup>, w: usize) -> Self {
        Self::basis(group, LaurentPoly::u(), w)
    }

    /// Evaluates every coefficient at `v -> v_image`, so `u -> v_image^2`.
    pub fn specialize<F: RationalImage>(&self, v_image: &F) -> Option<HeckeElement<F>> {
        let q = v_image.times(v_image);
        let mut out = HeckeElement::zero(&self.group, q);
        for (&w, c) in &self.coeffs {
            out.add_term(w, c.eval(v_image)?);
        }
        Some(out)
    }
}

impl<R: Ring> HeckeElement<R> {
    pub fn zero(group: &Arc<WeylGroup>, q: R) -> Self {
        HeckeElement { group: group.clone(), q, coeffs: BTreeMap::new() }
    }

    pub fn one(group: &Arc<WeylGroup>, q: R) -> Self {
        Self::basis(group, q, 0)
    }

    pub fn basis(group: &Arc<WeylGroup>, q: R, w: usize) -> Self {
        let mut h = Self::zero(group, q);
        let one = h.q.one_like();
        h.add_term(w, one);
        h
    }

    /// `T_{s_1} T_{s_2} ... T_{s_m}`.
    pub fn t_word(group: &Arc<WeylGroup>, q: R, word: &[usize]) -> Result<Self> {
        if let Some(&s) = word.iter().find(|&&s| s >= group.rank()) {
            return input(format!("generator index {s} out of range"));
        }
        let mut h = Self::one(group, q);
        for &s in word {
            h = h.right_mul_generator(s);
        }
        Ok(h)
    }

    pub fn group(&self) -> &Arc<WeylGroup> {
        &self.group
    }

    pub fn parameter(&self) -> &R {
        &self.q
    }

    pub fn coeff(&self, w: usize) -> R {
        self.coeffs.get(&w).cloned().unwrap_or_else(|| self.q.zero_like())
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &R)> {
        self.coeffs.iter().map(|(&w, c)| (w, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, w: usize, c: R) {
        if c.is_zero() {
            return;
        }
        match self.coeffs.get_mut(&w) {
            Some(x) => {
                *x = x.plus(&c);
                if x.is_zero() {
                    self.coeffs.remove(&w);
                }
            }
            None => {
                self.coeffs.insert(w, c);
            }
        }
    }

    fn check_compatible(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.group, &other.group) || self.q != other.q {
            return input("Hecke elements belong to different algebras");
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (&w, c) in &other.coeffs {
            out.add_term(w, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&self.q.one_like().negate()))
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero(&self.group, self.q.clone());
        for (&w, x) in &self.coeffs {
            out.add_term(w, x.times(c));
        }
        out
    }

    /// `T_s * self`.
    pub fn left_mul_generator(&self, s: usize) -> Self {
        let g = &self.group;
        let qm1 = self.q.minus(&self.q.one_like());
        let mut out = Self::zero(g, self.q.clone());
        for (&w, c) in &self.coeffs {
            let sw = g.left_mul(s, w);
            if g.length(sw) > g.length(w) {
                out.add_term(sw, c.clone());
            } else {
                out.add_term(sw, c.times(&self.q));
                out.add_term(w, c.times(&qm1));
            }
        }
        out
    }

    /// `self * T_s`.
    pub fn right_mul_generator(&self, s: usize) -> Self {
        let g = &self.group;
        let qm1 = self.q.minus(&self.q.one_like());
        let mut out = Self::zero(g, self.q.clone());
        for (&w, c) in &self.coeffs {
            let ws = g.right_mul(w, s);
            if g.length(ws) > g.length(w) {
                out.add_term(ws, c.clone());
            } else {
                out.add_term(ws, c.times(&self.q));
                out.add_term(w, c.times(&qm1));
            }
        }
        out
    }

    /// Product; each `T_x` on the left is applied letter by letter from the
    /// right end of its reduced word.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_compatible(other)?;
        let mut out = Self::zero(&self.group, self.q.clone());
        for (&x, c) in &self.coeffs {
            let mut h = other.clone();
            for &s in self.group.word(x).iter().rev() {
                h = h.left_mul_generator(s);
            }
            for (&w, d) in &h.coeffs {
                out.add_term(w, c.times(d));
            }
        }
        Ok(out)
    }

    /// The symmetrizing trace: coefficient of `T_1`.
    pub fn tau(&self) -> R {
        self.coeff(0)
    }
}

/// `q^d != 1` for every degree `d`.
pub fn satisfies_semisimplicity_criterion<R: Ring>(q: &R, degrees: &[u64]) -> bool {
    degrees.iter().all(|&d| !q.pow(d).is_one())
}

/// The class polynomials `f_{w,C}`: rows are group elements, columns classes.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassPolyTable {
    pub values: Vec<Vec<LaurentPoly>>,
}

impl ClassPolyTable {
    pub fn get(&self, w: usize, c: usize) -> &LaurentPoly {
        &self.values[w][c]
    }
}

/// Solves `chi_V(T_w) = sum_C f_{w,C} chi_V(T_{w_C})` for every `w`, using the
/// inverse of the character table over the rational-function field.
pub fn class_polynomials(group: &WeylGroup, table: &CharacterTable) -> Result<ClassPolyTable> {
    let all = table.all_values(group)?;
    let x = Matrix::from_rows(
        table.values.iter().map(|r| r.iter().cloned().map(RatFunc::from_laurent).collect()).collect(),
    )?;
    let xinv = x.inverse().ok_or_else(|| crate::Error::Consistency("character table is singular".into()))?;
    let nv = table.labels.len();
    let mut values = Vec::with_capacity(group.order());
    for w in 0..group.order() {
        let mut row = Vec::with_capacity(nv);
        for c in 0..nv {
            let mut acc = RatFunc::zero();
            for v in 0..nv {
                let coef = xinv.get(c, v);
                if !coef.is_zero() && !all[v][w].is_zero() {
                    acc = acc.plus(&coef.times(&RatFunc::from_laurent(all[v][w].clone())));
                }
            }
            let f = match acc.to_laurent() {
                Some(f) if f.is_in_u() && f.is_integral() && f.low_degree() >= 0 => f,
                _ => return consistency(format!("class polynomial f[{w}][{c}] = {acc} is not in Z[u]")),
            };
            row.push(f);
        }
        values.push(row);
    }
    Ok(ClassPolyTable { values })
}

/// `z_C = sum_w u^{-l(w)} f_{w,C} T_w`.
pub fn central_element(group: &Arc<WeylGroup>, table: &ClassPolyTable, class: usize) -> HeckeElement<LaurentPoly> {
    let mut z = HeckeElement::zero(group, LaurentPoly::u());
    for w in 0..group.order() {
        let f = table.get(w, class);
        if !f.is_zero() {
            z.add_term(w, f * &LaurentPoly::u_pow(-(group.length(w) as i64)));
        }
    }
    z
}

/// `z T_s - T_s z`.
pub fn commutator_with_generator<R: Ring>(z: &HeckeElement<R>, s: usize) -> Result<HeckeElement<R>> {
    z.right_mul_generator(s).sub(&z.left_mul_generator(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FField;

    fn grp(s: &str) -> Arc<WeylGroup> {
        Arc::new(WeylGroup::new(&s.parse().unwrap()).unwrap())
    }

    fn p(s: &str) -> LaurentPoly {
        s.parse().unwrap()
    }

    #[test]
    fn quadratic_relation() {
        let g = grp("A1");
        let ts = HeckeElement::generic_basis(&g, 1);
        let sq = ts.multiply(&ts).unwrap();
        assert_eq!(sq.coeff(0), p("u"));
        assert_eq!(sq.coeff(1), p("u-1"));
        assert_eq!(sq.tau(), p("u"));
        let f = FField::get(5, 1).unwrap();
        let spec = sq.specialize(&f.elem(2)).unwrap();
        assert_eq!(spec.coeff(0), f.elem(f.minus_one()));
        assert_eq!(spec.coeff(1), f.elem(f.from_int(-2)));
    }

    #[test]
    fn a2_products() {
        let g = grp("A2");
        let w = |s: &str| g.parse_word(s).unwrap();
        let t = |s: &str| HeckeElement::generic_basis(&g, w(s));
        let prod = t("s").multiply(&t("st")).unwrap();
        assert_eq!(prod.coeff(w("t")), p("u"));
        assert_eq!(prod.coeff(w("st")), p("u-1"));
        assert_eq!(prod.terms().count(), 2);
        let up = t("s").multiply(&t("ts")).unwrap();
        assert_eq!(up, t("sts"));
        let long = HeckeElement::t_word(&g, LaurentPoly::u(), g.word(g.longest())).unwrap();
        assert_eq!(long, t("sts"));
        for x in 0..g.order() {
            let tx = HeckeElement::generic_basis(&g, x);
            let ti = HeckeElement::generic_basis(&g, g.inverse(x));
            assert_eq!(tx.multiply(&ti).unwrap().tau(), LaurentPoly::u_pow(g.length(x) as i64));
        }
    }

    #[test]
    fn g2_reduced_word() {
        let g = grp("G2");
        let h = HeckeElement::t_word(&g, LaurentPoly::u(), &[0, 1, 0, 1, 0, 1]).unwrap();
        assert_eq!(h.terms().count(), 1);
        assert_eq!(g.length(h.terms().next().unwrap().0), 6);
    }

    #[test]
    fn semisimplicity_examples() {
        let f7 = FField::get(7, 1).unwrap();
        assert!(satisfies_semisimplicity_criterion(&f7.elem(3), &[2, 3]));
        assert!(!satisfies_semisimplicity_criterion(&f7.elem(1), &[2]));
        let f13 = FField::get(13, 1).unwrap();
        let q6 = crate::exactalg::ffield::element_of_order(&f13, 6).unwrap();
        assert!(!satisfies_semisimplicity_criterion(&q6, &[2, 6]));
    }

    #[test]
    fn a2_class_polynomials() {
        let g = grp("A2");
        let t = CharacterTable::for_group(&g).unwrap();
        let f = class_polynomials(&g, &t).unwrap();
        let sts = g.parse_word("sts").unwrap();
        assert_eq!(f.values[sts], vec![p("0"), p("u"), p("u-1")]);
        assert_eq!(f.values[g.parse_word("ts").unwrap()], vec![p("0"), p("0"), p("1")]);
        let z = central_element(&g, &f, 1);
        assert_eq!(z.coeff(g.parse_word("s").unwrap()), p("u^-1"));
        assert_eq!(z.coeff(sts), p("u^-2"));
        for c in 0..3 {
            let z = central_element(&g, &f, c);
            for s in 0..2 {
                assert!(commutator_with_generator(&z, s).unwrap().is_zero());
            }
        }
    }
}
