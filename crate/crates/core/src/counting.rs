//! Specialisation points, the three ways of counting simple modules, and the
//! verification harness comparing modular counts with characteristic 0.

use crate::chartable::{schur_elements, star_condition, star_factorization, degree_hypothesis, CharacterTable, SchurData};
use crate::error::{consistency, input, Error, Result};
use crate::exactalg::ffield::element_of_order;
use crate::exactalg::linalg::Matrix;
use crate::exactalg::numtheory::is_prime;
use crate::exactalg::{cyclotomic_polynomial, min_extension_degree, CycloNum, EParam, FFElem, FField, Ring};
use crate::meataxe::{self, field::MAX_MTX_ORDER};
use crate::rootsys::{CartanType, CoxeterDatum, WeylGroup};
use num_integer::Integer;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// A finite specialisation `v -> v_image`, `u = v^2 -> q`.
#[derive(Clone, Debug)]
pub struct SpecPoint {
    pub e: u64,
    pub ell: u64,
    pub degree: u32,
    pub v: FFElem,
    pub q: FFElem,
}

impl SpecPoint {
    /// The point with the given square root of `q`.
    pub fn from_v(v: FFElem) -> Result<Self> {
        let q = v.times(&v);
        if q.is_zero() {
            return input("q must be non-zero");
        }
        let e = match q.multiplicative_e()? {
            EParam::Finite(e) => e,
            EParam::Infinity => return consistency("a finite field has no q with e = infinity"),
        };
        let ff = v.field();
        Ok(SpecPoint { e, ell: ff.characteristic(), degree: ff.degree(), v, q })
    }

    pub fn field(&self) -> &Arc<FField> {
        self.v.field()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "e": self.e,
            "ell": self.ell,
            "i": self.degree,
            "v": self.v.raw(),
            "q": self.q.raw(),
            "q_order": self.q.multiplicative_order(),
        })
    }
}

/// The point used for `(e, ell)`: `GF(ell^i)` with `v` of order `2e` when
/// `gcd(e, ell) = 1` and `ell` is odd; `v` of order `e` when `ell = 2` and `e`
/// is odd (there `Phi_2e = Phi_e` modulo 2); `q = 1` when `e = ell`.
pub fn make_spec_point(e: u64, ell: u64) -> Result<SpecPoint> {
    if e < 2 {
        return input(format!("e must be at least 2, got {e}"));
    }
    if !is_prime(ell) {
        return input(format!("{ell} is not prime"));
    }
    let point = if e.gcd(&ell) == 1 {
        let order = if ell == 2 { e } else { 2 * e };
        let degree = min_extension_degree(ell, order)?;
        let ff = FField::get(ell, degree)?;
        SpecPoint::from_v(element_of_order(&ff, order)?)?
    } else if e == ell {
        let ff = FField::get(ell, 1)?;
        let v = if ell == 2 { ff.elem(1) } else { ff.elem(ff.minus_one()) };
        SpecPoint::from_v(v)?
    } else {
        return Err(Error::Unreachable { e, ell });
    };
    if point.e != e {
        return consistency(format!("point for e = {e}, ell = {ell} has e = {}", point.e));
    }
    if e.gcd(&ell) == 1 {
        let phi = cyclotomic_polynomial(2 * e);
        if !phi.eval(&point.v).is_some_and(|x| x.is_zero()) {
            return consistency(format!("Phi_{}(v) != 0 at the point for e = {e}, ell = {ell}", 2 * e));
        }
    }
    Ok(point)
}

/// Rank of the character table after `v -> point.v`.
pub fn count_simples_rank(table: &CharacterTable, point: &SpecPoint) -> Result<usize> {
    let m = Matrix::from_fn(table.size(), table.size(), |i, j| table.values[i][j].eval(&point.v));
    match m.try_map(|x| x.clone()) {
        Some(m) => Ok(m.rank()),
        None => consistency("character value has no image at the point"),
    }
}

/// Rank of the character table over `Q(zeta_2e)` at `v -> zeta_2e`; the class
/// number for `e = infinity`.
pub fn count_simples_char0(group: &WeylGroup, table: &CharacterTable, e: EParam) -> Result<usize> {
    let e = match e {
        EParam::Infinity => return Ok(group.classes().len()),
        EParam::Finite(e) => e,
    };
    let z = CycloNum::zeta(2 * e);
    let m = Matrix::from_fn(table.size(), table.size(), |i, j| table.values[i][j].eval(&z));
    match m.try_map(|x| x.clone()) {
        Some(m) => Ok(m.rank()),
        None => consistency("character value has no cyclotomic image"),
    }
}

/// Partitions of `n` in which no part occurs `e` or more times.
pub fn count_eregular(n: usize, e: u64) -> usize {
    fn go(n: usize, max: usize, e: u64) -> usize {
        if n == 0 {
            return 1;
        }
        let mut total = 0;
        for part in 1..=n.min(max) {
            for reps in 1..e as usize {
                if part * reps > n {
                    break;
                }
                total += go(n - part * reps, part - 1, e);
            }
        }
        total
    }
    go(n, n, e)
}

/// Distinct composition factors of the regular module at the point.
pub fn count_simples_meataxe(group: &WeylGroup, point: &SpecPoint, seed: u64, cap: u64) -> Result<usize> {
    meataxe::count_simples_meataxe(group, &point.q, seed, cap)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Rank,
    Meataxe,
    Partitions,
    Auto,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Rank => "rank",
            Method::Meataxe => "meataxe",
            Method::Partitions => "partitions",
            Method::Auto => "auto",
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rank" => Ok(Method::Rank),
            "meataxe" => Ok(Method::Meataxe),
            "partitions" => Ok(Method::Partitions),
            "auto" => Ok(Method::Auto),
            _ => input(format!("unknown method {s:?} (expected rank, meataxe, partitions or auto)")),
        }
    }
}

pub fn has_table_model(datum: &CoxeterDatum) -> bool {
    matches!(datum.cartan_type(), CartanType::A(_) | CartanType::B(_) | CartanType::G2 | CartanType::I2(_))
}

fn type_a_rank(datum: &CoxeterDatum) -> Option<usize> {
    match datum.cartan_type() {
        CartanType::A(n) => Some(n),
        _ => None,
    }
}

/// Shared inputs for counting on one group.
pub struct Counter {
    pub group: Arc<WeylGroup>,
    pub table: Option<Arc<CharacterTable>>,
    pub seed: u64,
    pub cap: u64,
}

impl Counter {
    pub fn new(group: Arc<WeylGroup>, table: Option<Arc<CharacterTable>>, seed: u64, cap: u64) -> Self {
        Counter { group, table, seed, cap }
    }

    /// Builds the character table when the type has a model.
    pub fn for_group(group: Arc<WeylGroup>, seed: u64, cap: u64) -> Result<Self> {
        let table = if has_table_model(group.datum()) {
            Some(Arc::new(CharacterTable::for_group(&group)?))
        } else {
            None
        };
        Ok(Self::new(group, table, seed, cap))
    }

    pub fn resolve(&self, method: Method) -> Method {
        match method {
            Method::Auto if self.table.is_some() => Method::Rank,
            Method::Auto => Method::Meataxe,
            m => m,
        }
    }

    /// Methods that apply at this point, in a fixed order.
    pub fn applicable(&self, point: &SpecPoint) -> Vec<Method> {
        let mut out = Vec::new();
        if self.table.is_some() {
            out.push(Method::Rank);
        }
        if self.group.order() as u64 <= self.cap && point.field().order() <= MAX_MTX_ORDER {
            out.push(Method::Meataxe);
        }
        if type_a_rank(self.group.datum()).is_some() {
            out.push(Method::Partitions);
        }
        out
    }

    pub fn count(&self, point: &SpecPoint, method: Method) -> Result<usize> {
        match self.resolve(method) {
            Method::Rank => match &self.table {
                Some(t) => count_simples_rank(t, point),
                None => Err(Error::NoTableModel(self.group.datum().to_string())),
            },
            Method::Meataxe => {
                if point.field().order() > MAX_MTX_ORDER {
                    return Err(Error::UnsupportedScale {
                        what: format!("meataxe field GF({}^{})", point.ell, point.degree),
                        order: point.field().order(),
                        cap: MAX_MTX_ORDER,
                    });
                }
                count_simples_meataxe(&self.group, point, self.seed, self.cap)
            }
            Method::Partitions => match type_a_rank(self.group.datum()) {
                Some(n) => Ok(count_eregular(n + 1, point.e)),
                None => input(format!("the partition count applies to type A only, not {}", self.group.datum())),
            },
            Method::Auto => unreachable!(),
        }
    }

    /// Every applicable path; they must agree.
    pub fn count_all(&self, point: &SpecPoint) -> Result<BTreeMap<Method, usize>> {
        let methods = self.applicable(point);
        if methods.is_empty() {
            return input(format!("no counting path for {}", self.group.datum()));
        }
        let counts: BTreeMap<Method, usize> =
            methods.iter().map(|&m| Ok((m, self.count(point, m)?))).collect::<Result<_>>()?;
        let mut values = counts.values();
        let first = *values.next().unwrap();
        if values.any(|&c| c != first) {
            let detail: Vec<String> = counts.iter().map(|(m, c)| format!("{m}={c}")).collect();
            return Err(Error::PathDisagreement(format!(
                "{} at e = {}, ell = {}: {}",
                self.group.datum(),
                point.e,
                point.ell,
                detail.join(", ")
            )));
        }
        Ok(counts)
    }

    /// Characteristic-zero count and its provenance.
    pub fn char0(&self, e: EParam) -> Result<Char0> {
        if let Some(t) = &self.table {
            let count = count_simples_char0(&self.group, t, e)?;
            let provenance = if e == EParam::Infinity { "semisimple" } else { "character-table" };
            return Ok(Char0 { count, provenance, primes: Vec::new() });
        }
        let e = match e {
            EParam::Infinity => return Ok(Char0 { count: self.group.classes().len(), provenance: "semisimple", primes: Vec::new() }),
            EParam::Finite(e) => e,
        };
        let primes = stabilizing_primes(self.group.datum(), e)?;
        let counts: Vec<usize> = primes
            .par_iter()
            .map(|&ell| self.count(&make_spec_point(e, ell)?, Method::Meataxe))
            .collect::<Result<_>>()?;
        if counts.windows(2).any(|w| w[0] != w[1]) {
            return consistency(format!(
                "{} at e = {e}: modular counts {counts:?} at primes {primes:?} do not stabilise",
                self.group.datum()
            ));
        }
        Ok(Char0 { count: counts[0], provenance: "stabilized-modular", primes })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char0 {
    pub count: usize,
    pub provenance: &'static str,
    /// Primes used for a stabilised value.
    pub primes: Vec<u64>,
}

/// The three smallest good primes `ell` prime to `e` with `e ell` dividing no
/// degree and a field small enough for the meataxe kernels.
pub fn stabilizing_primes(datum: &CoxeterDatum, e: u64) -> Result<Vec<u64>> {
    let degrees = crate::rootsys::group_profile(datum, u64::MAX)?.degrees;
    let bad = datum.bad_primes();
    let mut out = Vec::new();
    let mut ell = 2;
    while out.len() < 3 && ell < 1000 {
        if is_prime(ell) && !bad.contains(&ell) && e % ell != 0 && degree_hypothesis(e, ell, &degrees) {
            let order = if ell == 2 { e } else { 2 * e };
            let degree = min_extension_degree(ell, order)?;
            if (ell as u128).pow(degree) <= MAX_MTX_ORDER as u128 {
                out.push(ell);
            }
        }
        ell += 1;
    }
    if out.len() < 3 {
        return input(format!("no three usable stabilising primes for {datum} at e = {e}"));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    #[serde(rename = "EQUAL")]
    Equal,
    #[serde(rename = "STRICTLY_LESS")]
    StrictlyLess,
    #[serde(rename = "ERROR")]
    Error,
}

#[derive(Clone, Debug)]
pub struct VerifyRow {
    pub ell: u64,
    pub point: Option<SpecPoint>,
    pub counts: BTreeMap<Method, usize>,
    pub status: Status,
    pub bad_prime: bool,
    pub degree_hypothesis: bool,
    pub star_condition: Option<bool>,
    /// Whether the status is one the theorem allows here.
    pub expected: bool,
    pub error: Option<String>,
}

impl VerifyRow {
    pub fn count(&self) -> Option<usize> {
        self.counts.values().next().copied()
    }

    fn to_json(&self) -> Value {
        let mut row = json!({
            "ell": self.ell,
            "counts": self.counts.iter().map(|(m, c)| (m.to_string(), json!(c))).collect::<serde_json::Map<_, _>>(),
            "status": self.status,
            "bad_prime": self.bad_prime,
            "degree_hypothesis": self.degree_hypothesis,
            "expected": self.expected,
        });
        let obj = row.as_object_mut().unwrap();
        if let Some(p) = &self.point {
            obj.insert("i".into(), json!(p.degree));
            obj.insert("q_order".into(), json!(p.q.multiplicative_order()));
            obj.insert("v".into(), json!(p.v.raw()));
        }
        if let Some(s) = self.star_condition {
            obj.insert("star_condition".into(), json!(s));
        }
        if let Some(e) = &self.error {
            obj.insert("error".into(), json!(e));
        }
        row
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub datum: CoxeterDatum,
    pub e: u64,
    pub char0: Char0,
    pub rows: Vec<VerifyRow>,
}

impl VerifyReport {
    /// All rows carry a status the theorem allows.
    pub fn ok(&self) -> bool {
        self.rows.iter().all(|r| r.expected)
    }

    pub fn to_json(&self) -> Value {
        let mut char0 = json!({"count": self.char0.count, "provenance": self.char0.provenance});
        if !self.char0.primes.is_empty() {
            char0["primes"] = json!(self.char0.primes);
        }
        json!({
            "schema": 1,
            "type": self.datum.to_string(),
            "e": self.e,
            "char0": char0,
            "rows": self.rows.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Require `STRICTLY_LESS` whenever `e = ell` is a bad prime.
    pub expect_bad_strict: bool,
}

/// Compare every modular count at `(e, ell)` with characteristic zero.
pub fn verify_theorem(
    counter: &Counter,
    e_list: &[u64],
    primes: &[u64],
    char0: &dyn Fn(u64) -> Result<Char0>,
    opts: VerifyOptions,
) -> Result<Vec<VerifyReport>> {
    let datum = counter.group.datum().clone();
    let degrees = counter.group.degrees()?;
    let bad = datum.bad_primes();
    let schur: Option<SchurData> = match &counter.table {
        Some(t) if counter.group.order() <= crate::chartable::SCHUR_MAX_ORDER => Some(schur_elements(&counter.group, t)?),
        _ => None,
    };
    let mut e_sorted = e_list.to_vec();
    e_sorted.sort_unstable();
    e_sorted.dedup();
    let mut p_sorted = primes.to_vec();
    p_sorted.sort_unstable();
    p_sorted.dedup();
    let mut reports = Vec::new();
    for e in e_sorted {
        let base = char0(e)?;
        let rows: Vec<VerifyRow> = p_sorted
            .par_iter()
            .map(|&ell| -> Result<VerifyRow> {
                let bad_prime = bad.contains(&ell);
                let degree_hyp = degree_hypothesis(e, ell, &degrees);
                let point = match make_spec_point(e, ell) {
                    Ok(p) => p,
                    Err(err @ Error::Unreachable { .. }) => {
                        return Ok(VerifyRow {
                            ell,
                            point: None,
                            counts: BTreeMap::new(),
                            status: Status::Error,
                            bad_prime,
                            degree_hypothesis: degree_hyp,
                            star_condition: None,
                            expected: true,
                            error: Some(err.to_string()),
                        })
                    }
                    Err(err) => return Err(err),
                };
                let counts = counter.count_all(&point)?;
                let count = *counts.values().next().unwrap();
                let status = match count.cmp(&base.count) {
                    std::cmp::Ordering::Equal => Status::Equal,
                    std::cmp::Ordering::Less => Status::StrictlyLess,
                    std::cmp::Ordering::Greater => Status::Error,
                };
                let star = match &schur {
                    Some(s) => Some(star_condition(&star_factorization(s, e, &point.v)?)),
                    None => None,
                };
                if degree_hyp && !bad_prime && (star == Some(false) || status != Status::Equal) {
                    return consistency(format!(
                        "{datum} at e = {e}, ell = {ell}: hypothesis holds but star = {star:?}, status = {status:?}"
                    ));
                }
                let expected = match status {
                    Status::Error => false,
                    Status::Equal => !(opts.expect_bad_strict && bad_prime && e == ell),
                    Status::StrictlyLess => bad_prime,
                };
                let error = (status == Status::Error)
                    .then(|| format!("count {count} exceeds the characteristic-zero count {}", base.count));
                Ok(VerifyRow {
                    ell,
                    point: Some(point),
                    counts,
                    status,
                    bad_prime,
                    degree_hypothesis: degree_hyp,
                    star_condition: star,
                    expected,
                    error,
                })
            })
            .collect::<Result<_>>()?;
        reports.push(VerifyReport { datum: datum.clone(), e, char0: base, rows });
    }
    Ok(reports)
}
