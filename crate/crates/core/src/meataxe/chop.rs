use super::field::MtxField;
use super::mat::{charpoly, inverse, left_nullspace, poly_roots, right_nullspace, Echelon, Gen, Mat};
use super::{regular_module, FFModule};
use crate::error::{input, Error, Result};
use crate::exactalg::FFElem;
use crate::rootsys::WeylGroup;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};
use std::collections::VecDeque;
use std::sync::Arc;

/// Products beyond the generators in one random-word sequence.
const MAX_PRODUCTS: usize = 12;
const ATTEMPTS: usize = 80;
const PARALLEL_DIM: usize = 48;
/// Seeds tried by [`count_simples_meataxe`] before giving up.
pub const CHOP_RETRIES: u64 = 5;

/// A random algebra element: words `W_0..W_{g-1}` are the generators, each
/// later word is `W_a G_b`, and the element is `sum c_j W_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Recipe {
    pub products: Vec<(usize, usize)>,
    pub coeffs: Vec<u16>,
}

impl Recipe {
    fn evaluate(&self, f: &MtxField, gens: &[Gen]) -> Mat {
        let n = gens[0].dim();
        let mut words: Vec<Mat> = gens.iter().map(|g| g.to_dense()).collect();
        for &(a, b) in &self.products {
            let w = gens[b].right_mul(f, &words[a]);
            words.push(w);
        }
        let mut acc = Mat::zero(n, n);
        for (c, w) in self.coeffs.iter().zip(&words) {
            acc.add_scaled(f, *c, w);
        }
        acc
    }
}

#[derive(Clone, Debug)]
struct Certificate {
    recipe: Recipe,
    lambda: u16,
    /// Generators in the standard basis spun from the null vector.
    standard: Vec<Mat>,
}

/// An irreducible composition factor.
#[derive(Clone, Debug)]
pub struct SimpleFactor {
    field: Arc<MtxField>,
    gens: Vec<Mat>,
    cert: Option<Certificate>,
}

impl SimpleFactor {
    pub fn dim(&self) -> usize {
        self.gens[0].rows
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    fn canonical(&self) -> &[Mat] {
        match &self.cert {
            Some(c) => &c.standard,
            None => &self.gens,
        }
    }

    pub fn to_json(&self) -> Value {
        let ff = self.field.ffield();
        json!({
            "field": {"ell": ff.characteristic(), "degree": ff.degree()},
            "dim": self.dim(),
            "gens": self.canonical().iter().map(|m| m.data.clone()).collect::<Vec<_>>(),
        })
    }

    /// Exact isomorphism test against another irreducible factor.
    pub fn isomorphic(&self, other: &SimpleFactor) -> bool {
        if self.dim() != other.dim() || self.gens.len() != other.gens.len() {
            return false;
        }
        let Some(cert) = &self.cert else {
            return self.gens == other.gens;
        };
        let f = &self.field;
        let gens: Vec<Gen> = other.gens.iter().cloned().map(Gen::Dense).collect();
        let mut a = cert.recipe.evaluate(f, &gens);
        a.add_diagonal(f, f.neg(cert.lambda));
        let null = left_nullspace(f, &a);
        if null.len() != 1 {
            return false;
        }
        match standard_gens(f, &gens, &null[0]) {
            Some(std) => std == cert.standard,
            None => false,
        }
    }
}

/// Composition factors grouped into isomorphism classes.
#[derive(Clone, Debug)]
pub struct FactorMultiset {
    pub classes: Vec<(SimpleFactor, usize)>,
}

impl FactorMultiset {
    fn from_factors(factors: Vec<SimpleFactor>) -> Self {
        let mut classes: Vec<(SimpleFactor, usize)> = Vec::new();
        for x in factors {
            match classes.iter_mut().find(|(rep, _)| rep.isomorphic(&x)) {
                Some(entry) => entry.1 += 1,
                None => classes.push((x, 1)),
            }
        }
        FactorMultiset { classes }
    }

    pub fn distinct(&self) -> usize {
        self.classes.len()
    }

    pub fn total_dim(&self) -> usize {
        self.classes.iter().map(|(f, m)| f.dim() * m).sum()
    }

    /// `(dimension, multiplicity)` pairs, sorted.
    pub fn shape(&self) -> Vec<(usize, usize)> {
        let mut v: Vec<_> = self.classes.iter().map(|(f, m)| (f.dim(), *m)).collect();
        v.sort_unstable();
        v
    }

    /// Same iso classes with the same multiplicities.
    pub fn equivalent(&self, other: &FactorMultiset) -> bool {
        if self.shape() != other.shape() {
            return false;
        }
        let mut used = vec![false; other.classes.len()];
        self.classes.iter().all(|(a, ma)| {
            let hit = other
                .classes
                .iter()
                .enumerate()
                .find(|(k, (b, mb))| !used[*k] && ma == mb && a.isomorphic(b));
            match hit {
                Some((k, _)) => {
                    used[k] = true;
                    true
                }
                None => false,
            }
        })
    }

    pub fn to_json(&self) -> Value {
        Value::Array(
            self.classes
                .iter()
                .map(|(f, m)| json!({"certificate": f.to_json(), "multiplicity": m}))
                .collect(),
        )
    }
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn child_path(path: u64, bit: u64) -> u64 {
    splitmix(path.wrapping_mul(3).wrapping_add(bit + 1))
}

/// Submodule generated by `seeds`.
fn spin(f: &MtxField, gens: &[Gen], seeds: Vec<Vec<u16>>) -> Echelon {
    let n = gens[0].dim();
    let mut e = Echelon::new(n);
    let mut queue = VecDeque::new();
    for s in seeds {
        if let Some(r) = e.insert(f, s) {
            queue.push_back(r);
        }
    }
    let mut out = vec![0u16; n];
    while let Some(v) = queue.pop_front() {
        for g in gens {
            g.apply(f, &v, &mut out);
            if let Some(r) = e.insert(f, out.clone()) {
                queue.push_back(r);
                if e.dim() == n {
                    return e;
                }
            }
        }
    }
    e
}

/// Generators in the standard basis `v, v G_0, v G_1, ...` (breadth first,
/// independent vectors kept unreduced), or `None` if `v` does not span.
fn standard_gens(f: &MtxField, gens: &[Gen], v: &[u16]) -> Option<Vec<Mat>> {
    let n = gens[0].dim();
    let mut e = Echelon::new(n);
    let mut basis = vec![v.to_vec()];
    e.insert(f, v.to_vec())?;
    let mut i = 0;
    let mut out = vec![0u16; n];
    while i < basis.len() && basis.len() < n {
        for g in gens {
            g.apply(f, &basis[i], &mut out);
            if e.insert(f, out.clone()).is_some() {
                basis.push(out.clone());
            }
        }
        i += 1;
    }
    if basis.len() < n {
        return None;
    }
    let b = Mat::from_rows(&basis);
    let binv = inverse(f, &b)?;
    Some(gens.iter().map(|g| g.right_mul(f, &b).mul(f, &binv)).collect())
}

enum Outcome {
    Split(Echelon),
    Irreducible(Certificate),
}

fn find_split(f: &MtxField, gens: &[Gen], rng: &mut ChaCha8Rng) -> Option<Outcome> {
    let n = gens[0].dim();
    let g = gens.len();
    let q = f.order() as u16;
    let mut words: Vec<Mat> = gens.iter().map(|x| x.to_dense()).collect();
    let mut products = Vec::new();
    let mut transposed: Option<Vec<Gen>> = None;
    for _ in 0..ATTEMPTS {
        if products.len() < MAX_PRODUCTS {
            let (a, b) = (rng.gen_range(0..words.len()), rng.gen_range(0..g));
            let w = gens[b].right_mul(f, &words[a]);
            words.push(w);
            products.push((a, b));
        }
        let mut coeffs: Vec<u16> = (0..words.len()).map(|_| rng.gen_range(0..q)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            *coeffs.last_mut().unwrap() = 1;
        }
        let mut a = Mat::zero(n, n);
        for (c, w) in coeffs.iter().zip(&words) {
            a.add_scaled(f, *c, w);
        }
        let roots = poly_roots(f, &charpoly(f, &a));
        let Some(&(lambda, _)) = roots.iter().min_by_key(|(x, m)| (*m, *x)) else { continue };
        a.add_diagonal(f, f.neg(lambda));
        let null = left_nullspace(f, &a);
        // the whole eigenspace first: it tends to give larger submodules
        if null.len() > 1 {
            let big = spin(f, gens, null.clone());
            if big.dim() < n {
                return Some(Outcome::Split(big));
            }
        }
        let v = if null.len() == 1 {
            null[0].clone()
        } else {
            let mut v = vec![0u16; n];
            for b in &null {
                f.axpy(&mut v, rng.gen_range(0..q), b);
            }
            if v.iter().all(|&x| x == 0) {
                continue;
            }
            v
        };
        let sub = spin(f, gens, vec![v.clone()]);
        if sub.dim() < n {
            return Some(Outcome::Split(sub));
        }
        if null.len() != 1 {
            continue;
        }
        let tgens = transposed.get_or_insert_with(|| gens.iter().map(|x| x.transpose()).collect());
        let w = right_nullspace(f, &a).swap_remove(0);
        let dual = spin(f, tgens, vec![w]);
        if dual.dim() == n {
            let recipe = Recipe { products: products.clone(), coeffs };
            let standard = standard_gens(f, gens, &v).expect("v spins the whole module");
            return Some(Outcome::Irreducible(Certificate { recipe, lambda, standard }));
        }
        // annihilator of the dual submodule
        let mut ann = Echelon::new(n);
        for x in right_nullspace(f, &Mat::from_rows(&dual.rows)) {
            ann.insert(f, x);
        }
        return Some(Outcome::Split(ann));
    }
    None
}

fn submodule_gens(f: &MtxField, gens: &[Gen], s: &Echelon) -> Vec<Gen> {
    let n = gens[0].dim();
    let k = s.dim();
    let mut out = vec![0u16; n];
    gens.iter()
        .map(|g| {
            let mut m = Mat::zero(k, k);
            for (i, b) in s.rows.iter().enumerate() {
                g.apply(f, b, &mut out);
                for (j, &p) in s.pivots.iter().enumerate() {
                    m.set(i, j, out[p]);
                }
            }
            Gen::Dense(m)
        })
        .collect()
}

fn quotient_gens(f: &MtxField, gens: &[Gen], s: &Echelon) -> Vec<Gen> {
    let n = gens[0].dim();
    let mut is_pivot = vec![false; n];
    for &p in &s.pivots {
        is_pivot[p] = true;
    }
    let free: Vec<usize> = (0..n).filter(|&j| !is_pivot[j]).collect();
    let mut unit = vec![0u16; n];
    let mut out = vec![0u16; n];
    gens.iter()
        .map(|g| {
            let mut m = Mat::zero(free.len(), free.len());
            for (i, &j) in free.iter().enumerate() {
                unit[j] = 1;
                g.apply(f, &unit, &mut out);
                unit[j] = 0;
                s.reduce(f, &mut out);
                for (c, &jj) in free.iter().enumerate() {
                    m.set(i, c, out[jj]);
                }
            }
            Gen::Dense(m)
        })
        .collect()
}

fn chop_rec(field: &Arc<MtxField>, gens: Vec<Gen>, seed: u64, path: u64) -> Result<Vec<SimpleFactor>> {
    let n = gens[0].dim();
    if n == 1 {
        let gens = gens.iter().map(|g| g.to_dense()).collect();
        return Ok(vec![SimpleFactor { field: field.clone(), gens, cert: None }]);
    }
    let f: &MtxField = field;
    let mut rng = ChaCha8Rng::seed_from_u64(splitmix(seed ^ path));
    match find_split(f, &gens, &mut rng) {
        None => Err(Error::ChopBudget { seed }),
        Some(Outcome::Irreducible(cert)) => {
            let gens = gens.iter().map(|g| g.to_dense()).collect();
            Ok(vec![SimpleFactor { field: field.clone(), gens, cert: Some(cert) }])
        }
        Some(Outcome::Split(s)) => {
            let sub = submodule_gens(f, &gens, &s);
            let quot = quotient_gens(f, &gens, &s);
            drop(gens);
            let (a, b) = if n >= PARALLEL_DIM {
                rayon::join(
                    || chop_rec(field, sub, seed, child_path(path, 0)),
                    || chop_rec(field, quot, seed, child_path(path, 1)),
                )
            } else {
                (chop_rec(field, sub, seed, child_path(path, 0)), chop_rec(field, quot, seed, child_path(path, 1)))
            };
            let mut out = a?;
            out.extend(b?);
            Ok(out)
        }
    }
}

/// Composition factors of `m`, grouped into isomorphism classes.
pub fn chop(m: &FFModule, seed: u64) -> Result<FactorMultiset> {
    let factors = chop_rec(m.field(), m.gens().to_vec(), seed, 0)?;
    let out = FactorMultiset::from_factors(factors);
    if out.total_dim() != m.dim() {
        return Err(Error::Consistency(format!("{}: factor dimensions do not add up", m.tag())));
    }
    Ok(out)
}

fn single_factor(m: &FFModule) -> Result<SimpleFactor> {
    let fm = chop(m, 0)?;
    match fm.classes.as_slice() {
        [(x, 1)] => Ok(x.clone()),
        _ => input(format!("{} is reducible", m.tag())),
    }
}

/// Exact isomorphism test for irreducible modules.
pub fn is_isomorphic(m1: &FFModule, m2: &FFModule) -> Result<bool> {
    if !Arc::ptr_eq(m1.field(), m2.field()) || m1.gens().len() != m2.gens().len() {
        return input("modules over different fields or algebras");
    }
    let (a, b) = (single_factor(m1)?, single_factor(m2)?);
    Ok(a.isomorphic(&b))
}

/// Chop with up to [`CHOP_RETRIES`] consecutive seeds.
pub fn chop_with_retries(m: &FFModule, seed: u64) -> Result<FactorMultiset> {
    let mut last = None;
    for k in 0..CHOP_RETRIES {
        match chop(m, seed.wrapping_add(k)) {
            Err(e @ Error::ChopBudget { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.unwrap())
}

/// Number of pairwise non-isomorphic composition factors of the regular module.
pub fn count_simples_meataxe(w: &WeylGroup, q: &FFElem, seed: u64, cap: u64) -> Result<usize> {
    let tag = format!("regular:{}:q={}", w.datum(), q);
    let m = regular_module(w, q, cap, tag)?;
    Ok(chop_with_retries(&m, seed)?.distinct())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::FField;
    use crate::meataxe::DEFAULT_REGULAR_CAP;
    use crate::rootsys::{CartanType, CoxeterDatum};

    fn group(t: CartanType) -> WeylGroup {
        WeylGroup::new(&CoxeterDatum::new(t).unwrap()).unwrap()
    }

    fn regular(t: CartanType, ell: u64, deg: u32, q: u32) -> FFModule {
        let w = group(t);
        let ff = FField::get(ell, deg).unwrap();
        regular_module(&w, &ff.elem(q), DEFAULT_REGULAR_CAP, "test").unwrap()
    }

    #[test]
    fn a1_at_minus_one() {
        let fm = chop(&regular(CartanType::A(1), 3, 1, 2), 0).unwrap();
        assert_eq!(fm.shape(), vec![(1, 2)]);
    }

    #[test]
    fn a2_counts() {
        // q = 3 has order 6 in GF(7): semisimple
        let fm = chop(&regular(CartanType::A(2), 7, 1, 3), 1).unwrap();
        assert_eq!(fm.distinct(), 3);
        assert_eq!(fm.shape(), vec![(1, 1), (1, 1), (2, 2)]);
        // q = 2 has order 3 in GF(7)
        let fm = chop(&regular(CartanType::A(2), 7, 1, 2), 1).unwrap();
        assert_eq!(fm.distinct(), 2);
        assert_eq!(fm.total_dim(), 6);
    }

    #[test]
    fn seeds_agree() {
        let m = regular(CartanType::B(2), 5, 1, 4);
        let base = chop(&m, 0).unwrap();
        for seed in [1, 2] {
            assert!(base.equivalent(&chop(&m, seed).unwrap()));
        }
    }

    #[test]
    fn isomorphism_of_one_dimensional_modules() {
        let ff = FField::get(7, 1).unwrap();
        let f = MtxField::get(&ff).unwrap();
        let index = FFModule::from_dense(f.clone(), 3, vec![Mat::from_rows(&[vec![3]])], "index").unwrap();
        let sign = FFModule::from_dense(f.clone(), 3, vec![Mat::from_rows(&[vec![6]])], "sign").unwrap();
        assert!(is_isomorphic(&index, &index).unwrap());
        assert!(!is_isomorphic(&index, &sign).unwrap());
        let m = regular(CartanType::A(1), 7, 1, 3);
        let m = FFModule::new(f, 3, m.gens().to_vec(), "reg").unwrap();
        assert!(is_isomorphic(&m, &index).is_err());
    }

    #[test]
    fn conjugated_modules_are_isomorphic() {
        let m = regular(CartanType::A(2), 7, 1, 3);
        let fm = chop(&m, 5).unwrap();
        let (two, _) = fm.classes.iter().find(|(x, _)| x.dim() == 2).unwrap();
        let f = m.field().clone();
        let p = Mat::from_rows(&[vec![1, 2], vec![3, 5]]);
        let pinv = inverse(&f, &p).unwrap();
        let conj: Vec<Mat> = two.gens().iter().map(|g| p.mul(&f, g).mul(&f, &pinv)).collect();
        let a = FFModule::from_dense(f.clone(), 3, two.gens().to_vec(), "a").unwrap();
        let b = FFModule::from_dense(f, 3, conj, "b").unwrap();
        assert!(is_isomorphic(&a, &b).unwrap());
    }
}
