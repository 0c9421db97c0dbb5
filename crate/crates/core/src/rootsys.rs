//! Root systems and fully enumerated finite Weyl groups.

use crate::error::{consistency, input, Error, Result};
use crate::exactalg::LaurentPoly;
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

pub const DEFAULT_MAX_ORDER: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CartanType {
    A(usize),
    B(usize),
    D(usize),
    E(usize),
    F4,
    G2,
    /// Dihedral type with `m` in {3, 4, 6}.
    I2(u32),
}

/// A Coxeter datum: the Cartan type together with its Coxeter matrix.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CoxeterDatum {
    ctype: CartanType,
    coxeter: Vec<Vec<u32>>,
}

impl CoxeterDatum {
    pub fn new(ctype: CartanType) -> Result<Self> {
        match ctype {
            CartanType::A(n) if n >= 1 => {}
            CartanType::B(n) if n >= 2 => {}
            CartanType::D(n) if n >= 4 => {}
            CartanType::E(n) if (6..=8).contains(&n) => {}
            CartanType::F4 | CartanType::G2 => {}
            CartanType::I2(m) if [3, 4, 6].contains(&m) => {}
            _ => return input(format!("invalid Cartan type {ctype:?}")),
        }
        let cartan = cartan_matrix(ctype);
        let n = cartan.len();
        let coxeter = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            1
                        } else {
                            match cartan[i][j] * cartan[j][i] {
                                0 => 2,
                                1 => 3,
                                2 => 4,
                                3 => 6,
                                p => unreachable!("Cartan product {p}"),
                            }
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(CoxeterDatum { ctype, coxeter })
    }

    pub fn cartan_type(&self) -> CartanType {
        self.ctype
    }

    /// Family label: "A", "B", "D", "E", "F4", "G2" or "I2m".
    pub fn family(&self) -> &'static str {
        match self.ctype {
            CartanType::A(_) => "A",
            CartanType::B(_) => "B",
            CartanType::D(_) => "D",
            CartanType::E(_) => "E",
            CartanType::F4 => "F4",
            CartanType::G2 => "G2",
            CartanType::I2(_) => "I2m",
        }
    }

    pub fn rank(&self) -> usize {
        self.coxeter.len()
    }

    pub fn coxeter_matrix(&self) -> &[Vec<u32>] {
        &self.coxeter
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        cartan_matrix(self.ctype)
    }

    /// |W| from the closed formulas, without building anything.
    pub fn projected_order(&self) -> u64 {
        let fact = |n: usize| (1..=n as u64).product::<u64>();
        match self.ctype {
            CartanType::A(n) => fact(n + 1),
            CartanType::B(n) => (1u64 << n) * fact(n),
            CartanType::D(n) => (1u64 << (n - 1)) * fact(n),
            CartanType::E(_) | CartanType::F4 | CartanType::G2 => stored_degrees(self.ctype).unwrap().iter().product(),
            CartanType::I2(m) => 2 * m as u64,
        }
    }

    pub fn bad_primes(&self) -> Vec<u64> {
        match self.ctype {
            CartanType::A(_) | CartanType::I2(3) => vec![],
            CartanType::B(_) | CartanType::D(_) | CartanType::I2(4) => vec![2],
            CartanType::G2 | CartanType::F4 | CartanType::I2(_) => vec![2, 3],
            CartanType::E(8) => vec![2, 3, 5],
            CartanType::E(_) => vec![2, 3],
        }
    }

    /// Generator names: "s", "t" in rank at most 2, otherwise "s1", "s2", ...
    pub fn generator_names(&self) -> Vec<String> {
        let n = self.rank();
        if n <= 2 {
            ["s", "t"][..n].iter().map(|s| s.to_string()).collect()
        } else {
            (1..=n).map(|i| format!("s{i}")).collect()
        }
    }
}

impl fmt::Display for CoxeterDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.ctype {
            CartanType::A(n) => write!(f, "A{n}"),
            CartanType::B(n) => write!(f, "B{n}"),
            CartanType::D(n) => write!(f, "D{n}"),
            CartanType::E(n) => write!(f, "E{n}"),
            CartanType::F4 => write!(f, "F4"),
            CartanType::G2 => write!(f, "G2"),
            CartanType::I2(m) => write!(f, "I2({m})"),
        }
    }
}

impl FromStr for CoxeterDatum {
    type Err = Error;

    /// Accepts "A3", "B2", "D4", "E8", "F4", "G2", "I2(4)" (case-insensitive).
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().to_ascii_uppercase();
        let bad = || Error::Input(format!("unknown type {s:?}"));
        if let Some(rest) = t.strip_prefix("I2") {
            let m = rest
                .trim_start_matches(['(', '_'])
                .trim_end_matches(')')
                .parse::<u32>()
                .map_err(|_| bad())?;
            return CoxeterDatum::new(CartanType::I2(m)).map_err(|_| bad());
        }
        if t == "F4" {
            return CoxeterDatum::new(CartanType::F4);
        }
        if t == "G2" {
            return CoxeterDatum::new(CartanType::G2);
        }
        let mut chars = t.chars();
        let fam = chars.next().ok_or_else(bad)?;
        let n: usize = chars.as_str().parse().map_err(|_| bad())?;
        let ctype = match fam {
            'A' => CartanType::A(n),
            'B' => CartanType::B(n),
            'D' => CartanType::D(n),
            'E' => CartanType::E(n),
            _ => return Err(bad()),
        };
        CoxeterDatum::new(ctype).map_err(|_| bad())
    }
}

impl Serialize for CoxeterDatum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for CoxeterDatum {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Cartan matrix with `s_i(a_j) = a_j - A[i][j] a_i`.
fn cartan_matrix(ctype: CartanType) -> Vec<Vec<i64>> {
    let chain = |n: usize| {
        let mut a = vec![vec![0i64; n]; n];
        for i in 0..n {
            a[i][i] = 2;
            if i + 1 < n {
                a[i][i + 1] = -1;
                a[i + 1][i] = -1;
            }
        }
        a
    };
    match ctype {
        CartanType::A(n) => chain(n),
        CartanType::B(n) => {
            // node 1 is the short simple root
            let mut a = chain(n);
            a[0][1] = -2;
            a
        }
        CartanType::D(n) => {
            // nodes 1 and 2 both join node 3, then a chain 3-4-...-n
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                a[i][i] = 2;
            }
            let mut link = |i: usize, j: usize| {
                a[i][j] = -1;
                a[j][i] = -1;
            };
            link(0, 2);
            link(1, 2);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
            a
        }
        CartanType::E(n) => {
            // 1-3-4-5-6-7-8 with 2 attached to 4
            let mut a = vec![vec![0i64; n]; n];
            for i in 0..n {
                a[i][i] = 2;
            }
            let mut link = |i: usize, j: usize| {
                a[i][j] = -1;
                a[j][i] = -1;
            };
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
            a
        }
        CartanType::F4 => {
            let mut a = chain(4);
            a[1][2] = -2;
            a
        }
        CartanType::G2 | CartanType::I2(6) => vec![vec![2, -3], vec![-1, 2]],
        CartanType::I2(4) => vec![vec![2, -2], vec![-1, 2]],
        CartanType::I2(_) => chain(2),
    }
}

fn stored_degrees(ctype: CartanType) -> Option<Vec<u64>> {
    Some(match ctype {
        CartanType::G2 => vec![2, 6],
        CartanType::F4 => vec![2, 6, 8, 12],
        CartanType::E(6) => vec![2, 5, 6, 8, 9, 12],
        CartanType::E(7) => vec![2, 6, 8, 10, 12, 14, 18],
        CartanType::E(8) => vec![2, 8, 12, 14, 18, 20, 24, 30],
        _ => return None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjClass {
    pub id: usize,
    pub name: String,
    pub members: Vec<usize>,
    pub size: usize,
    pub rep: usize,
    pub rep_word: Vec<usize>,
}

/// A finite Weyl group with every element stored as a permutation of the
/// root set. Element 0 is the identity.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: CoxeterDatum,
    roots: Vec<Vec<i64>>,
    npos: usize,
    perms: Vec<u16>,
    lengths: Vec<usize>,
    words: Vec<Vec<usize>>,
    right: Vec<u32>,
    left: Vec<u32>,
    inverses: Vec<u32>,
    longest: usize,
    classes: Vec<ConjClass>,
    class_of: Vec<usize>,
}

impl WeylGroup {
    pub fn new(datum: &CoxeterDatum) -> Result<Self> {
        build_group(datum, DEFAULT_MAX_ORDER)
    }

    pub fn datum(&self) -> &CoxeterDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn order(&self) -> usize {
        self.lengths.len()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn longest(&self) -> usize {
        self.longest
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn num_positive_roots(&self) -> usize {
        self.npos
    }

    pub fn permutation(&self, w: usize) -> &[u16] {
        let nr = self.roots.len();
        &self.perms[w * nr..(w + 1) * nr]
    }

    pub fn length(&self, w: usize) -> usize {
        self.lengths[w]
    }

    pub fn lengths(&self) -> &[usize] {
        &self.lengths
    }

    pub fn word(&self, w: usize) -> &[usize] {
        &self.words[w]
    }

    /// `w * s`.
    pub fn right_mul(&self, w: usize, s: usize) -> usize {
        self.right[w * self.rank() + s] as usize
    }

    /// `s * w`.
    pub fn left_mul(&self, s: usize, w: usize) -> usize {
        self.left[s * self.order() + w] as usize
    }

    pub fn inverse(&self, w: usize) -> usize {
        self.inverses[w] as usize
    }

    pub fn multiply(&self, a: usize, b: usize) -> usize {
        self.words[b].iter().fold(a, |acc, &s| self.right_mul(acc, s))
    }

    /// The element represented by an arbitrary word in the generators.
    pub fn element_of_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &s in word {
            if s >= self.rank() {
                return input(format!("generator index {s} out of range"));
            }
            w = self.right_mul(w, s);
        }
        Ok(w)
    }

    pub fn word_string(&self, w: usize) -> String {
        let names = self.datum.generator_names();
        let word = self.word(w);
        if word.is_empty() {
            "1".to_string()
        } else {
            word.iter().map(|&s| names[s].as_str()).collect()
        }
    }

    /// Parses a word string such as "sts", "s1s2" or "1".
    pub fn parse_word(&self, text: &str) -> Result<usize> {
        let names = self.datum.generator_names();
        let mut rest = text.trim();
        if rest == "1" || rest.is_empty() {
            return Ok(0);
        }
        let mut word = Vec::new();
        while !rest.is_empty() {
            // longest match first, so "s12" style names never alias
            let (idx, name) = names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len())
                .ok_or_else(|| Error::Input(format!("cannot parse word {text:?}")))?;
            word.push(idx);
            rest = &rest[name.len()..];
        }
        self.element_of_word(&word)
    }

    pub fn classes(&self) -> &[ConjClass] {
        &self.classes
    }

    pub fn class_of(&self, w: usize) -> usize {
        self.class_of[w]
    }

    /// Coefficient list of `P_W = sum_w u^l(w)`.
    pub fn poincare_polynomial(&self) -> Vec<u64> {
        let mut p = vec![0u64; self.npos + 1];
        for &l in &self.lengths {
            p[l] += 1;
        }
        p
    }

    pub fn degrees(&self) -> Result<Vec<u64>> {
        degrees_from_poincare(&self.poincare_polynomial(), self.rank())
    }

    pub fn profile(&self) -> Result<GroupProfile> {
        Ok(GroupProfile {
            datum: self.datum.clone(),
            degrees: self.degrees()?,
            order: self.order() as u64,
            bad_primes: self.datum.bad_primes(),
            poincare: self.poincare_polynomial(),
            num_classes: Some(self.classes.len()),
            provenance: "computed",
        })
    }

    pub fn to_record(&self) -> GroupRecord {
        GroupRecord {
            version: GROUP_RECORD_VERSION,
            datum: self.datum.clone(),
            order: self.order(),
            degrees: self.degrees().unwrap_or_default(),
            lengths: self.lengths.clone(),
            words: self.words.clone(),
            classes: self.classes.clone(),
        }
    }

    /// Rebuilds the group and checks it against a stored record.
    pub fn from_record(record: &GroupRecord, max_order: u64) -> Result<Self> {
        if record.version != GROUP_RECORD_VERSION {
            return input("stale group record version");
        }
        let g = build_group(&record.datum, max_order)?;
        if g.lengths != record.lengths || g.words != record.words || g.classes != record.classes {
            return consistency("group record does not match a fresh construction");
        }
        Ok(g)
    }
}

pub const GROUP_RECORD_VERSION: u32 = 1;

/// Serialisable snapshot of a group.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GroupRecord {
    pub version: u32,
    pub datum: CoxeterDatum,
    pub order: usize,
    pub degrees: Vec<u64>,
    pub lengths: Vec<usize>,
    pub words: Vec<Vec<usize>>,
    pub classes: Vec<ConjClass>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GroupProfile {
    pub datum: CoxeterDatum,
    pub degrees: Vec<u64>,
    pub order: u64,
    pub bad_primes: Vec<u64>,
    pub poincare: Vec<u64>,
    pub num_classes: Option<usize>,
    pub provenance: &'static str,
}

impl GroupProfile {
    pub fn poincare_laurent(&self) -> LaurentPoly {
        poincare_laurent(&self.poincare)
    }
}

pub fn poincare_laurent(coeffs: &[u64]) -> LaurentPoly {
    let ints: Vec<i64> = coeffs.iter().map(|&c| c as i64).collect();
    LaurentPoly::from_u_ints(0, &ints)
}

/// Group profile; E-types come from stored data, everything else is built.
pub fn group_profile(datum: &CoxeterDatum, max_order: u64) -> Result<GroupProfile> {
    if let CartanType::E(_) = datum.cartan_type() {
        let degrees = stored_degrees(datum.cartan_type()).unwrap();
        return Ok(GroupProfile {
            datum: datum.clone(),
            order: degrees.iter().product(),
            poincare: poincare_from_degrees(&degrees),
            degrees,
            bad_primes: datum.bad_primes(),
            num_classes: None,
            provenance: "stored",
        });
    }
    build_group(datum, max_order)?.profile()
}

/// `prod_i (1 + u + ... + u^(d_i - 1))`.
pub fn poincare_from_degrees(degrees: &[u64]) -> Vec<u64> {
    let mut p = vec![1u64];
    for &d in degrees {
        let mut q = vec![0u64; p.len() + d as usize - 1];
        for (i, &c) in p.iter().enumerate() {
            for k in 0..d as usize {
                q[i + k] += c;
            }
        }
        p = q;
    }
    p
}

/// Recovers the degrees from `(u-1)^n P_W = prod (u^d_i - 1)` by repeatedly
/// splitting off the largest `u^k - 1` that divides what remains.
pub fn degrees_from_poincare(poincare: &[u64], rank: usize) -> Result<Vec<u64>> {
    let mut q: Vec<i128> = poincare.iter().map(|&c| c as i128).collect();
    for _ in 0..rank {
        let mut next = vec![0i128; q.len() + 1];
        for (i, &c) in q.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c;
        }
        q = next;
    }
    let mut degrees = Vec::new();
    while q.len() > 1 {
        let top = q.len() - 1;
        let k = (1..=top)
            .rev()
            .find(|&k| div_by_uk_minus_1(&q, k).is_some())
            .ok_or_else(|| Error::Consistency("Poincare polynomial does not factor into u^d - 1".into()))?;
        q = div_by_uk_minus_1(&q, k).unwrap();
        degrees.push(k as u64);
    }
    if q != [1] || degrees.len() != rank {
        return consistency("Poincare polynomial does not factor into u^d - 1");
    }
    degrees.sort_unstable();
    Ok(degrees)
}

fn div_by_uk_minus_1(p: &[i128], k: usize) -> Option<Vec<i128>> {
    // p = (u^k - 1) * r, solved from the top coefficient down
    let n = p.len() - 1;
    if n < k {
        return None;
    }
    let mut rem = p.to_vec();
    let mut r = vec![0i128; n - k + 1];
    for i in (0..=n - k).rev() {
        let c = rem[i + k];
        r[i] = c;
        rem[i + k] = 0;
        rem[i] += c;
    }
    rem.iter().all(|&c| c == 0).then_some(r)
}

/// Enumerates `W` by breadth-first search over right multiplication by the
/// simple reflections, so each recorded word is reduced.
pub fn build_group(datum: &CoxeterDatum, max_order: u64) -> Result<WeylGroup> {
    let projected = datum.projected_order();
    if projected > max_order {
        return Err(Error::UnsupportedScale { what: datum.to_string(), order: projected, cap: max_order });
    }
    let cartan = datum.cartan_matrix();
    let n = cartan.len();
    let reflect = |i: usize, beta: &[i64]| -> Vec<i64> {
        let pairing: i64 = (0..n).map(|j| cartan[i][j] * beta[j]).sum();
        let mut out = beta.to_vec();
        out[i] -= pairing;
        out
    };

    let mut found: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            let mut a = vec![0i64; n];
            a[i] = 1;
            a
        })
        .collect();
    let mut seen: HashMap<Vec<i64>, ()> = found.iter().map(|r| (r.clone(), ())).collect();
    let mut head = 0;
    while head < found.len() {
        let beta = found[head].clone();
        head += 1;
        for i in 0..n {
            let r = reflect(i, &beta);
            if seen.insert(r.clone(), ()).is_none() {
                found.push(r);
            }
        }
    }
    let mut positive: Vec<Vec<i64>> = found.into_iter().filter(|r| r.iter().all(|&c| c >= 0)).collect();
    positive.sort_by_key(|r| (r.iter().sum::<i64>(), std::cmp::Reverse(r.clone())));
    let npos = positive.len();
    let mut roots = positive.clone();
    roots.extend(positive.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
    let nr = roots.len();
    let index: HashMap<&[i64], usize> = roots.iter().enumerate().map(|(k, r)| (r.as_slice(), k)).collect();
    let simple_perms: Vec<Vec<u16>> = (0..n)
        .map(|i| roots.iter().map(|r| index[reflect(i, r).as_slice()] as u16).collect())
        .collect();

    // elements are keyed by the images of the simple roots
    let key_of = |perm: &[u16]| -> Vec<u16> { perm[..n].to_vec() };
    let simple_idx: Vec<usize> = (0..n).map(|i| index[roots[i].as_slice()]).collect();
    debug_assert!(simple_idx.iter().enumerate().all(|(i, &k)| i == k));

    let identity: Vec<u16> = (0..nr as u16).collect();
    let mut perms: Vec<u16> = identity.clone();
    let mut lengths = vec![0usize];
    let mut words: Vec<Vec<usize>> = vec![vec![]];
    let mut lookup: HashMap<Vec<u16>, u32> = HashMap::new();
    lookup.insert(key_of(&identity), 0);
    let mut right: Vec<u32> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(w) = queue.pop_front() {
        let pw: Vec<u16> = perms[w * nr..(w + 1) * nr].to_vec();
        for s in 0..n {
            let ps = &simple_perms[s];
            let prod: Vec<u16> = (0..nr).map(|b| pw[ps[b] as usize]).collect();
            let key = key_of(&prod);
            let idx = match lookup.get(&key) {
                Some(&k) => k,
                None => {
                    let k = lengths.len() as u32;
                    if k as u64 >= projected {
                        return consistency("group enumeration overran its projected order");
                    }
                    lookup.insert(key, k);
                    let len = prod[..npos].iter().filter(|&&b| b as usize >= npos).count();
                    if len != lengths[w] + 1 {
                        return consistency("breadth-first length disagrees with inversion count");
                    }
                    perms.extend_from_slice(&prod);
                    lengths.push(len);
                    let mut word = words[w].clone();
                    word.push(s);
                    words.push(word);
                    queue.push_back(k as usize);
                    k
                }
            };
            right.push(idx);
        }
    }
    let order = lengths.len();
    if order as u64 != projected {
        return consistency(format!("enumerated {order} elements, expected {projected}"));
    }
    let mut left = vec![0u32; n * order];
    for w in 0..order {
        let pw = &perms[w * nr..(w + 1) * nr];
        for s in 0..n {
            let key: Vec<u16> = (0..n).map(|j| simple_perms[s][pw[j] as usize]).collect();
            left[s * order + w] = lookup[&key];
        }
    }
    let mut inverses = vec![0u32; order];
    for w in 0..order {
        let inv = words[w].iter().rev().fold(0usize, |acc, &s| right[acc * n + s] as usize);
        inverses[w] = inv as u32;
    }
    let longest = (0..order).max_by_key(|&w| lengths[w]).unwrap();

    let mut g = WeylGroup {
        datum: datum.clone(),
        roots,
        npos,
        perms,
        lengths,
        words,
        right,
        left,
        inverses,
        longest,
        classes: Vec::new(),
        class_of: Vec::new(),
    };
    g.compute_classes();
    Ok(g)
}

impl WeylGroup {
    /// Orbits of `w -> s w s`; representatives have minimal length, then
    /// minimal index. Classes are ordered by representative (length, index).
    fn compute_classes(&mut self) {
        let order = self.order();
        let n = self.rank();
        let mut class_of = vec![usize::MAX; order];
        let mut raw: Vec<Vec<usize>> = Vec::new();
        for start in 0..order {
            if class_of[start] != usize::MAX {
                continue;
            }
            let id = raw.len();
            class_of[start] = id;
            let mut members = vec![start];
            let mut head = 0;
            while head < members.len() {
                let w = members[head];
                head += 1;
                for s in 0..n {
                    let c = self.left_mul(s, self.right_mul(w, s));
                    if class_of[c] == usize::MAX {
                        class_of[c] = id;
                        members.push(c);
                    }
                }
            }
            members.sort_unstable();
            raw.push(members);
        }
        let rep_of = |m: &[usize]| *m.iter().min_by_key(|&&w| (self.lengths[w], w)).unwrap();
        raw.sort_by_key(|m| {
            let r = rep_of(m);
            (self.lengths[r], r)
        });
        let names = self.datum.generator_names();
        let classes: Vec<ConjClass> = raw
            .into_iter()
            .enumerate()
            .map(|(id, members)| {
                let rep = rep_of(&members);
                let word = self.words[rep].clone();
                let name = if word.is_empty() {
                    "C1".to_string()
                } else {
                    format!("C{}", word.iter().map(|&s| names[s].as_str()).collect::<String>())
                };
                ConjClass { id, name, size: members.len(), members, rep, rep_word: word }
            })
            .collect();
        for c in &classes {
            for &w in &c.members {
                class_of[w] = c.id;
            }
        }
        self.classes = classes;
        self.class_of = class_of;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn group(s: &str) -> WeylGroup {
        WeylGroup::new(&s.parse().unwrap()).unwrap()
    }

    #[test]
    fn small_groups() {
        let a1 = group("A1");
        assert_eq!(a1.order(), 2);
        assert_eq!(a1.poincare_polynomial(), vec![1, 1]);
        let a2 = group("A2");
        assert_eq!(a2.poincare_polynomial(), vec![1, 2, 2, 1]);
        assert_eq!(a2.degrees().unwrap(), vec![2, 3]);
        let g2 = group("G2");
        assert_eq!(g2.poincare_polynomial(), vec![1, 2, 2, 2, 2, 2, 1]);
        assert_eq!(g2.degrees().unwrap(), vec![2, 6]);
        assert_eq!(g2.classes().len(), 6);
    }

    #[test]
    fn a2_classes() {
        let a2 = group("A2");
        let cl = a2.classes();
        let names: Vec<&str> = cl.iter().map(|c| c.name.as_str()).collect();
        assert_eq!(names, ["C1", "Cs", "Cst"]);
        assert_eq!(cl.iter().map(|c| c.size).collect::<Vec<_>>(), [1, 3, 2]);
        assert_eq!(a2.word_string(a2.longest()), "sts");
    }

    #[test]
    fn degrees_largest_first() {
        assert_eq!(group("B3").degrees().unwrap(), vec![2, 4, 6]);
        assert_eq!(group("F4").degrees().unwrap(), vec![2, 6, 8, 12]);
        assert_eq!(group("D4").degrees().unwrap(), vec![2, 4, 4, 6]);
    }

    #[test]
    fn parse_and_caps() {
        assert!("B1".parse::<CoxeterDatum>().is_err());
        assert!("D3".parse::<CoxeterDatum>().is_err());
        assert!("I2(5)".parse::<CoxeterDatum>().is_err());
        assert_eq!("i2(4)".parse::<CoxeterDatum>().unwrap().to_string(), "I2(4)");
        let e8: CoxeterDatum = "E8".parse().unwrap();
        assert!(matches!(WeylGroup::new(&e8), Err(Error::UnsupportedScale { .. })));
        let p = group_profile(&e8, DEFAULT_MAX_ORDER).unwrap();
        assert_eq!(p.order, 696_729_600);
        assert_eq!(p.bad_primes, vec![2, 3, 5]);
        assert_eq!(degrees_from_poincare(&p.poincare, 8).unwrap(), p.degrees);
    }

    #[test]
    fn words_round_trip() {
        let g = group("B3");
        for w in 0..g.order() {
            assert_eq!(g.parse_word(&g.word_string(w)).unwrap(), w);
            assert_eq!(g.multiply(w, g.inverse(w)), 0);
        }
    }
}
