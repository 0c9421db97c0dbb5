//! Generic irreducible representations, character tables, and Schur elements.

pub mod dihedral;
pub mod tableaux;

use crate::error::{consistency, Error, Result};
use crate::exactalg::linalg::bareiss_rank;
use crate::exactalg::{phi_adic_valuation, FFElem, LaurentPoly, Matrix, RatFunc, Ring};
use crate::rootsys::{CartanType, CoxeterDatum, WeylGroup};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;
use std::sync::OnceLock;

/// Groups above this order are refused by the `|W|`-term Schur pairing.
pub const SCHUR_MAX_ORDER: usize = 1_200;

/// A representation of the generic algebra: one matrix per generator over
/// the rational functions in `v`.
#[derive(Clone, Debug)]
pub struct GenericRep {
    pub label: String,
    pub dim: usize,
    pub gens: Vec<Matrix<RatFunc>>,
}

impl GenericRep {
    pub fn word_matrix(&self, word: &[usize]) -> Matrix<RatFunc> {
        let mut m = Matrix::identity_like(self.dim, &RatFunc::one());
        for &s in word {
            m = m.mul(&self.gens[s]);
        }
        m
    }

    /// Quadratic relation for every generator and braid relation for every pair.
    pub fn check_relations(&self, datum: &CoxeterDatum) -> Result<()> {
        let u = RatFunc::from_laurent(LaurentPoly::u());
        let um1 = u.minus(&RatFunc::one());
        let id = Matrix::identity_like(self.dim, &RatFunc::one());
        for (s, g) in self.gens.iter().enumerate() {
            if g.mul(g) != id.scale(&u).add(&g.scale(&um1)) {
                return consistency(format!("{}: quadratic relation fails for generator {s}", self.label));
            }
        }
        let cox = datum.coxeter_matrix();
        for s in 0..self.gens.len() {
            for t in s + 1..self.gens.len() {
                let m = cox[s][t] as usize;
                let alt = |a: usize, b: usize| (0..m).map(|k| if k % 2 == 0 { a } else { b }).collect::<Vec<_>>();
                if self.word_matrix(&alt(s, t)) != self.word_matrix(&alt(t, s)) {
                    return consistency(format!("{}: braid relation fails for generators {s}, {t}", self.label));
                }
            }
        }
        Ok(())
    }

    /// Generator matrices at `v = x`, stored by column as (row, value) lists.
    fn evaluate_sparse(&self, x: &BigRational) -> Option<Vec<Vec<Vec<(usize, BigRational)>>>> {
        self.gens
            .iter()
            .map(|g| {
                (0..self.dim)
                    .map(|j| {
                        let mut col = Vec::new();
                        for i in 0..self.dim {
                            let e = g.get(i, j);
                            if !e.is_zero() {
                                col.push((i, e.eval(x)?));
                            }
                        }
                        Some(col)
                    })
                    .collect()
            })
            .collect()
    }
}

/// All irreducible representations of the generic algebra, for the types
/// with a model: A, B, and the dihedral types.
pub fn irreducible_reps(datum: &CoxeterDatum) -> Result<Vec<GenericRep>> {
    match datum.cartan_type() {
        CartanType::A(n) => Ok(tableaux::type_a_reps(n)),
        CartanType::B(n) => Ok(tableaux::type_b_reps(n)),
        CartanType::G2 => Ok(dihedral::dihedral_reps(6)),
        CartanType::I2(m) => Ok(dihedral::dihedral_reps(m)),
        _ => Err(Error::NoTableModel(datum.to_string())),
    }
}

/// Character values `chi_V(T_{w_C})` at minimal-length class representatives.
#[derive(Clone, Debug)]
pub struct CharacterTable {
    pub datum: CoxeterDatum,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub class_names: Vec<String>,
    pub values: Vec<Vec<LaurentPoly>>,
    reps: Vec<GenericRep>,
    all: OnceLock<Vec<Vec<LaurentPoly>>>,
}

impl CharacterTable {
    /// Builds and checks the representations, then the table.
    pub fn for_group(group: &WeylGroup) -> Result<Self> {
        let reps = irreducible_reps(group.datum())?;
        for r in &reps {
            r.check_relations(group.datum())?;
        }
        character_table(group, reps)
    }

    pub fn reps(&self) -> &[GenericRep] {
        &self.reps
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// `chi_V(T_w)` for every irreducible `V` and every `w`; rows are
    /// representations, columns group elements.
    ///
    /// Each value is a polynomial in `u` of degree at most `l(w)`. It is
    /// recovered by interpolation from exact rational evaluations at
    /// `v = 2, 3, ...`, with two surplus points as a check, and compared with
    /// the exact values at class representatives.
    pub fn all_values(&self, group: &WeylGroup) -> Result<&[Vec<LaurentPoly>]> {
        if let Some(v) = self.all.get() {
            return Ok(v);
        }
        let rows: Vec<Vec<LaurentPoly>> =
            self.reps.par_iter().map(|r| interpolate_characters(group, r)).collect::<Result<_>>()?;
        for (vi, row) in rows.iter().enumerate() {
            for (ci, c) in group.classes().iter().enumerate() {
                if row[c.rep] != self.values[vi][ci] {
                    return consistency(format!("{}: interpolated value disagrees at class {}", self.labels[vi], c.name));
                }
            }
        }
        let _ = self.all.set(rows);
        Ok(self.all.get().unwrap())
    }

    /// Sets precomputed full character values, checked against the table.
    pub fn with_all_values(self, group: &WeylGroup, all: Vec<Vec<LaurentPoly>>) -> Result<Self> {
        if all.len() != self.size() || all.iter().any(|r| r.len() != group.order()) {
            return consistency("full character values have the wrong shape");
        }
        for (vi, row) in all.iter().enumerate() {
            for (ci, c) in group.classes().iter().enumerate() {
                if row[c.rep] != self.values[vi][ci] {
                    return consistency("full character values disagree with the table");
                }
            }
        }
        let _ = self.all.set(all);
        Ok(self)
    }

    /// Serialisable form for the on-disk cache.
    pub fn to_cached(&self) -> CachedTable {
        CachedTable {
            datum: self.datum.clone(),
            labels: self.labels.clone(),
            dims: self.dims.clone(),
            class_names: self.class_names.clone(),
            values: self.values.clone(),
            all: self.all.get().cloned(),
        }
    }

    /// Rebuilds a table from the cache. The representations are rebuilt (they
    /// are cheap); traces are not recomputed.
    pub fn from_cached(group: &WeylGroup, cached: CachedTable) -> Result<Self> {
        let reps = irreducible_reps(group.datum())?;
        let labels: Vec<String> = reps.iter().map(|r| r.label.clone()).collect();
        let dims: Vec<usize> = reps.iter().map(|r| r.dim).collect();
        let class_names: Vec<String> = group.classes().iter().map(|c| c.name.clone()).collect();
        if cached.datum != *group.datum() || cached.labels != labels || cached.dims != dims || cached.class_names != class_names {
            return consistency("cached character table does not match the group");
        }
        if cached.values.len() != labels.len() || cached.values.iter().any(|r| r.len() != class_names.len()) {
            return consistency("cached character table has the wrong shape");
        }
        for (row, d) in cached.values.iter().zip(&dims) {
            if row[0] != LaurentPoly::int(*d as i64) {
                return consistency("cached character table: identity column is not the dimensions");
            }
        }
        let table = CharacterTable {
            datum: cached.datum,
            labels,
            dims,
            class_names,
            values: cached.values,
            reps,
            all: OnceLock::new(),
        };
        match cached.all {
            Some(all) => table.with_all_values(group, all),
            None => Ok(table),
        }
    }

    /// Rows as canonical strings, keyed for JSON output.
    pub fn to_json(&self) -> serde_json::Value {
        #[derive(Serialize)]
        struct Out<'a> {
            schema: u32,
            #[serde(rename = "type")]
            ty: String,
            labels: &'a [String],
            dims: &'a [usize],
            classes: &'a [String],
            values: Vec<Vec<String>>,
        }
        serde_json::to_value(Out {
            schema: 1,
            ty: self.datum.to_string(),
            labels: &self.labels,
            dims: &self.dims,
            classes: &self.class_names,
            values: self.values.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect(),
        })
        .expect("plain struct serialises")
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct CachedTable {
    pub datum: CoxeterDatum,
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub class_names: Vec<String>,
    pub values: Vec<Vec<LaurentPoly>>,
    pub all: Option<Vec<Vec<LaurentPoly>>>,
}

/// Evaluates traces along the class representatives' reduced words and
/// checks the structural invariants of a complete table.
pub fn character_table(group: &WeylGroup, reps: Vec<GenericRep>) -> Result<CharacterTable> {
    let classes = group.classes();
    if reps.len() != classes.len() {
        return consistency(format!("{} representations for {} classes", reps.len(), classes.len()));
    }
    let sum_sq: usize = reps.iter().map(|r| r.dim * r.dim).sum();
    if sum_sq != group.order() {
        return consistency(format!("sum of squared dimensions {sum_sq} != |W| = {}", group.order()));
    }
    let values: Vec<Vec<LaurentPoly>> = reps
        .par_iter()
        .map(|r| {
            classes
                .iter()
                .map(|c| {
                    let tr = r.word_matrix(&c.rep_word).trace().unwrap();
                    tr.to_laurent().ok_or_else(|| {
                        Error::Consistency(format!("{}: character value {tr} at {} is not a Laurent polynomial", r.label, c.name))
                    })
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    for (r, row) in reps.iter().zip(&values) {
        if row[0] != LaurentPoly::int(r.dim as i64) {
            return consistency(format!("{}: identity value is not the dimension", r.label));
        }
    }
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            if values[i] == values[j] {
                return consistency(format!("{} and {} have equal characters", reps[i].label, reps[j].label));
            }
        }
    }
    let n = values.len();
    if n > 0 && bareiss_rank(&Matrix::from_rows(values.clone())?) != n {
        return consistency("character table is singular");
    }
    Ok(CharacterTable {
        datum: group.datum().clone(),
        labels: reps.iter().map(|r| r.label.clone()).collect(),
        dims: reps.iter().map(|r| r.dim).collect(),
        class_names: classes.iter().map(|c| c.name.clone()).collect(),
        values,
        reps,
        all: OnceLock::new(),
    })
}

fn interpolate_characters(group: &WeylGroup, rep: &GenericRep) -> Result<Vec<LaurentPoly>> {
    let order = group.order();
    let npts = group.num_positive_roots() + 3;
    let vs: Vec<BigRational> = (0..npts).map(|k| BigRational::from_integer((k as i64 + 2).into())).collect();
    let us: Vec<BigRational> = vs.iter().map(|v| v * v).collect();
    let d = rep.dim;
    // traces[w][point]
    let mut traces = vec![Vec::with_capacity(npts); order];
    for v in &vs {
        let gens = rep
            .evaluate_sparse(v)
            .ok_or_else(|| Error::Consistency(format!("{}: denominator vanishes at v = {v}", rep.label)))?;
        let mut mats: Vec<Vec<BigRational>> = Vec::with_capacity(order);
        let mut id = vec![BigRational::zero(); d * d];
        for i in 0..d {
            id[i * d + i] = BigRational::one();
        }
        mats.push(id);
        for w in 1..order {
            let word = group.word(w);
            let s = *word.last().unwrap();
            let parent = group.right_mul(w, s);
            debug_assert!(parent < w);
            let pm = &mats[parent];
            let mut out = vec![BigRational::zero(); d * d];
            for (j, col) in gens[s].iter().enumerate() {
                for (i, val) in col {
                    for r in 0..d {
                        let x = &pm[r * d + i];
                        if !Zero::is_zero(x) {
                            out[r * d + j] += x * val;
                        }
                    }
                }
            }
            mats.push(out);
        }
        for (w, m) in mats.iter().enumerate() {
            let tr: BigRational = (0..d).map(|i| m[i * d + i].clone()).sum();
            traces[w].push(tr);
        }
    }
    (0..order)
        .map(|w| {
            let need = group.length(w) + 1;
            let coeffs = newton_interpolate(&us[..need], &traces[w][..need]);
            for k in need..npts {
                if horner(&coeffs, &us[k]) != traces[w][k] {
                    return consistency(format!("{}: character at element {w} is not a polynomial of degree <= l(w)", rep.label));
                }
            }
            let mut vcoeffs = Vec::with_capacity(2 * coeffs.len());
            for c in coeffs {
                vcoeffs.push(c);
                vcoeffs.push(BigRational::zero());
            }
            Ok(LaurentPoly::from_parts(0, vcoeffs))
        })
        .collect()
}

/// Coefficients (constant term first) of the polynomial through the points.
fn newton_interpolate(xs: &[BigRational], ys: &[BigRational]) -> Vec<BigRational> {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for level in 1..n {
        for i in (level..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - level]);
        }
    }
    // expand sum dd[k] prod_{j<k} (x - xs[j]) by Horner from the top
    let mut poly = vec![BigRational::zero(); n];
    for k in (0..n).rev() {
        // poly = poly * (x - xs[k]) + dd[k]
        let mut next = vec![BigRational::zero(); n];
        for i in 0..n {
            if Zero::is_zero(&poly[i]) {
                continue;
            }
            if i + 1 < n {
                next[i + 1] += &poly[i];
            }
            next[i] -= &poly[i] * &xs[k];
        }
        next[0] += &dd[k];
        poly = next;
    }
    poly
}

fn horner(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
}

/// Schur elements `c_V`, in the order of the table rows.
#[derive(Clone, Debug, PartialEq, Serialize, serde::Deserialize)]
pub struct SchurData {
    pub labels: Vec<String>,
    pub elements: Vec<LaurentPoly>,
}

impl SchurData {
    pub fn to_json(&self) -> serde_json::Value {
        let map: serde_json::Map<String, serde_json::Value> = self
            .labels
            .iter()
            .zip(&self.elements)
            .map(|(l, c)| (l.clone(), serde_json::Value::String(c.to_string())))
            .collect();
        serde_json::Value::Object(map)
    }
}

/// The pairing `sum_w u^{-l(w)} chi_V(T_w) chi_V'(T_{w^-1})` for all pairs.
pub fn orthogonality_matrix(group: &WeylGroup, table: &CharacterTable) -> Result<Vec<Vec<LaurentPoly>>> {
    if group.order() > SCHUR_MAX_ORDER {
        return Err(Error::UnsupportedScale {
            what: format!("Schur elements of {}", group.datum()),
            order: group.order() as u64,
            cap: SCHUR_MAX_ORDER as u64,
        });
    }
    let all = table.all_values(group)?;
    let n = table.size();
    let weights: Vec<LaurentPoly> = (0..group.order()).map(|w| LaurentPoly::u_pow(-(group.length(w) as i64))).collect();
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    let flat: Vec<LaurentPoly> = pairs
        .par_iter()
        .map(|&(i, j)| {
            let mut acc = LaurentPoly::zero();
            for w in 0..group.order() {
                let a = &all[i][w];
                let b = &all[j][group.inverse(w)];
                if !a.is_zero() && !b.is_zero() {
                    acc = &acc + &(&(a * b) * &weights[w]);
                }
            }
            acc
        })
        .collect();
    Ok(flat.chunks(n).map(|c| c.to_vec()).collect())
}

/// Schur elements from the orthogonality relations, with the off-diagonal
/// relations and divisibility of `P_W` verified.
pub fn schur_elements(group: &WeylGroup, table: &CharacterTable) -> Result<SchurData> {
    let gram = orthogonality_matrix(group, table)?;
    let n = table.size();
    for i in 0..n {
        for j in 0..n {
            if i != j && !gram[i][j].is_zero() {
                return consistency(format!("{} and {} are not orthogonal", table.labels[i], table.labels[j]));
            }
        }
    }
    let poincare = crate::rootsys::poincare_laurent(&group.poincare_polynomial());
    let mut elements = Vec::with_capacity(n);
    for i in 0..n {
        let c = gram[i][i].scale(&BigRational::new(1.into(), (table.dims[i] as i64).into()));
        if c.is_zero() {
            return consistency(format!("Schur element of {} vanishes", table.labels[i]));
        }
        if poincare.div_exact(&c).is_none() {
            return consistency(format!("Schur element of {} does not divide P_W", table.labels[i]));
        }
        elements.push(c);
    }
    Ok(SchurData { labels: table.labels.clone(), elements })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StarEntry {
    pub label: String,
    pub valuation: u32,
    pub cofactor: LaurentPoly,
    pub nonvanishing: bool,
}

/// `c_V = Phi_2e(v)^{d_V} f_V(v)` and whether `f_V` survives `v -> v_image`.
pub fn star_factorization(schur: &SchurData, e: u64, v_image: &FFElem) -> Result<Vec<StarEntry>> {
    schur
        .labels
        .iter()
        .zip(&schur.elements)
        .map(|(label, c)| {
            let (valuation, cofactor) = phi_adic_valuation(c, 2 * e)?;
            let nonvanishing = cofactor.eval(v_image).is_some_and(|x| !x.is_zero());
            Ok(StarEntry { label: label.clone(), valuation, cofactor, nonvanishing })
        })
        .collect()
}

pub fn star_condition(entries: &[StarEntry]) -> bool {
    entries.iter().all(|e| e.nonvanishing)
}

/// `l != 2` and `e l` divides no degree.
pub fn degree_hypothesis(e: u64, ell: u64, degrees: &[u64]) -> bool {
    ell != 2 && degrees.iter().all(|d| d % (e * ell) != 0)
}
