//! Finite fields `GF(ell^i)`.
//!
//! Elements are encoded as integers `c_0 + c_1 ell + ... + c_{i-1} ell^(i-1)`
//! where `c_0 + c_1 x + ...` is the residue modulo the field's modulus. The
//! modulus is the lexicographically smallest monic irreducible polynomial of
//! degree `i`; the fixed generator is the smallest-encoded primitive element.
//! Multiplication goes through discrete log tables.

use super::numtheory::{is_prime, prime_divisors};
use super::{cyclotomic_polynomial, EParam, Field, RationalImage, Ring};
use crate::error::{consistency, input, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

/// Largest field order we build tables for.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const ADD_TABLE_LIMIT: u32 = 1024;

pub struct FField {
    ell: u32,
    degree: u32,
    order: u32,
    modulus: Vec<u32>,
    generator: u32,
    exp: Vec<u32>,
    log: Vec<u32>,
    add_table: Option<Vec<u16>>,
}

impl fmt::Debug for FField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{})", self.ell, self.degree)
    }
}

// --- dense polynomials over GF(ell), constant term first ---

fn ptrim(mut a: Vec<u32>) -> Vec<u32> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn pmulmod(a: &[u32], b: &[u32], f: &[u32], ell: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x as u64 * y as u64) % ell as u64;
        }
    }
    let out: Vec<u32> = out.into_iter().map(|x| x as u32).collect();
    prem(out, f, ell)
}

fn inv_mod(a: u32, ell: u32) -> u32 {
    super::numtheory::pow_mod(a as u64, ell as u64 - 2, ell as u64) as u32
}

/// Remainder modulo a monic-or-not non-zero polynomial.
fn prem(a: Vec<u32>, f: &[u32], ell: u32) -> Vec<u32> {
    let mut r = ptrim(a);
    let f = f.to_vec();
    let df = f.len() - 1;
    let lead_inv = inv_mod(f[df], ell);
    while r.len() > df {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % ell as u64) as u32;
        let shift = top - df;
        for (j, &fj) in f.iter().enumerate() {
            let sub = (c as u64 * fj as u64 % ell as u64) as u32;
            r[shift + j] = (r[shift + j] + ell - sub) % ell;
        }
        r = ptrim(r);
    }
    r
}

fn pgcd(a: Vec<u32>, b: Vec<u32>, ell: u32) -> Vec<u32> {
    let mut a = ptrim(a);
    let mut b = ptrim(b);
    while !b.is_empty() {
        let r = prem(a, &b, ell);
        a = b;
        b = r;
    }
    a
}

fn ppowmod(base: &[u32], mut e: u64, f: &[u32], ell: u32) -> Vec<u32> {
    let mut acc = vec![1u32];
    let mut b = prem(base.to_vec(), f, ell);
    while e > 0 {
        if e & 1 == 1 {
            acc = pmulmod(&acc, &b, f, ell);
        }
        b = pmulmod(&b, &b, f, ell);
        e >>= 1;
    }
    acc
}

/// Monic `f` of degree `i` is irreducible iff `gcd(f, x^(ell^j) - x) = 1`
/// for every `j <= i/2`.
fn is_irreducible(f: &[u32], ell: u32) -> bool {
    let deg = f.len() - 1;
    let x = vec![0u32, 1];
    let mut xp = x.clone();
    for _ in 1..=deg / 2 {
        xp = ppowmod(&xp, ell as u64, f, ell);
        let mut diff = xp.clone();
        diff.resize(2.max(diff.len()), 0);
        diff[1] = (diff[1] + ell - 1) % ell;
        let g = pgcd(f.to_vec(), diff, ell);
        if g.len() != 1 {
            return false;
        }
    }
    true
}

fn encode(c: &[u32], ell: u32) -> u32 {
    c.iter().rev().fold(0u32, |acc, &d| acc * ell + d)
}

fn decode(mut n: u32, ell: u32, degree: u32) -> Vec<u32> {
    (0..degree)
        .map(|_| {
            let d = n % ell;
            n /= ell;
            d
        })
        .collect()
}

impl FField {
    /// The canonical `GF(ell^degree)`; constructed once per process.
    pub fn get(ell: u64, degree: u32) -> Result<Arc<FField>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<FField>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
        if let Some(f) = cache.lock().unwrap().get(&(ell, degree)) {
            return Ok(f.clone());
        }
        let f = Arc::new(Self::construct(ell, degree)?);
        cache.lock().unwrap().insert((ell, degree), f.clone());
        Ok(f)
    }

    fn construct(ell: u64, degree: u32) -> Result<FField> {
        if !is_prime(ell) {
            return input(format!("field characteristic {ell} is not prime"));
        }
        if degree == 0 {
            return input("field extension degree must be positive");
        }
        let order = (ell as u128).checked_pow(degree).unwrap_or(u128::MAX);
        if order > MAX_FIELD_ORDER as u128 {
            return input(format!("GF({ell}^{degree}) exceeds the supported field order"));
        }
        let ell = ell as u32;
        let order = order as u32;
        let modulus = if degree == 1 {
            vec![0, 1]
        } else {
            let lower = order;
            (0..lower)
                .map(|n| {
                    let mut f = decode(n, ell, degree);
                    f.push(1);
                    f
                })
                .find(|f| f[0] != 0 && is_irreducible(f, ell))
                .ok_or_else(|| crate::error::Error::Consistency("no irreducible modulus".into()))?
        };
        let mul_slow = |a: u32, b: u32| -> u32 {
            if degree == 1 {
                return (a as u64 * b as u64 % ell as u64) as u32;
            }
            let pa = ptrim(decode(a, ell, degree));
            let pb = ptrim(decode(b, ell, degree));
            encode(&pmulmod(&pa, &pb, &modulus, ell), ell)
        };
        let n = order as u64 - 1;
        let primes = prime_divisors(n);
        let pow_slow = |g: u32, mut e: u64| {
            let mut acc = 1u32;
            let mut b = g;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mul_slow(acc, b);
                }
                b = mul_slow(b, b);
                e >>= 1;
            }
            acc
        };
        let generator = (1..order)
            .find(|&g| primes.iter().all(|&p| pow_slow(g, n / p) != 1))
            .ok_or_else(|| crate::error::Error::Consistency("no primitive element".into()))?;
        let mut exp = Vec::with_capacity(2 * n as usize);
        let mut log = vec![0u32; order as usize];
        let mut x = 1u32;
        for k in 0..n as u32 {
            exp.push(x);
            log[x as usize] = k;
            x = mul_slow(x, generator);
        }
        if x != 1 {
            return consistency("generator order mismatch");
        }
        let again = exp.clone();
        exp.extend(again);
        let mut field = FField { ell, degree, order, modulus, generator, exp, log, add_table: None };
        if degree > 1 && order <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (order * order) as usize];
            for a in 0..order {
                for b in 0..order {
                    t[(a * order + b) as usize] = field.add_digits(a, b) as u16;
                }
            }
            field.add_table = Some(t);
        }
        Ok(field)
    }

    pub fn characteristic(&self) -> u64 {
        self.ell as u64
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.order as u64
    }

    /// Modulus coefficients, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn generator_raw(&self) -> u32 {
        self.generator
    }

    pub fn is_prime_field(&self) -> bool {
        self.degree == 1
    }

    fn add_digits(&self, mut a: u32, mut b: u32) -> u32 {
        let mut out = 0;
        let mut place = 1;
        for _ in 0..self.degree {
            let d = (a % self.ell + b % self.ell) % self.ell;
            out += d * place;
            place *= self.ell;
            a /= self.ell;
            b /= self.ell;
        }
        out
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.degree == 1 {
            let s = a + b;
            if s >= self.ell {
                s - self.ell
            } else {
                s
            }
        } else if let Some(t) = &self.add_table {
            t[(a * self.order + b) as usize] as u32
        } else {
            self.add_digits(a, b)
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.degree == 1 {
            if a == 0 {
                0
            } else {
                self.ell - a
            }
        } else {
            // -1 is g^((order-1)/2) in odd characteristic, 1 in characteristic 2
            self.mul(a, self.minus_one())
        }
    }

    #[inline]
    pub fn minus_one(&self) -> u32 {
        if self.ell == 2 {
            1
        } else if self.degree == 1 {
            self.ell - 1
        } else {
            self.exp[((self.order - 1) / 2) as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        if self.degree == 1 {
            return (a as u64 * b as u64 % self.ell as u64) as u32;
        }
        self.exp[(self.log[a as usize] + self.log[b as usize]) as usize]
    }

    /// Inverse of a non-zero element.
    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "inverse of zero in {self:?}");
        let n = self.order - 1;
        self.exp[((n - self.log[a as usize]) % n) as usize]
    }

    pub fn pow(&self, a: u32, e: u64) -> u32 {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        let n = (self.order - 1) as u64;
        self.exp[((self.log[a as usize] as u64 * (e % n)) % n) as usize]
    }

    /// Multiplicative order of a non-zero element.
    pub fn order_of(&self, a: u32) -> u64 {
        assert!(a != 0);
        let n = (self.order - 1) as u64;
        let l = self.log[a as usize] as u64;
        n / l.gcd(&n)
    }

    /// Discrete log with respect to the fixed generator.
    pub fn log_of(&self, a: u32) -> u32 {
        self.log[a as usize]
    }

    /// Image of an integer.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.ell as i64) as u32
    }

    pub fn from_bigint(&self, n: &BigInt) -> u32 {
        let r = n.mod_floor(&BigInt::from(self.ell));
        r.to_u32().unwrap()
    }

    pub fn elem(self: &Arc<Self>, raw: u32) -> FFElem {
        assert!(raw < self.order);
        FFElem { field: self.clone(), value: raw }
    }

    pub fn generator(self: &Arc<Self>) -> FFElem {
        self.elem(self.generator)
    }

    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FFElem> + '_ {
        (0..self.order).map(move |v| self.elem(v))
    }
}

/// `generator^((ell^i - 1) / n)`, which has exact multiplicative order `n`.
pub fn element_of_order(field: &Arc<FField>, n: u64) -> Result<FFElem> {
    let total = field.order() - 1;
    if n == 0 || total % n != 0 {
        return input(format!("{n} does not divide |{field:?}^x| = {total}"));
    }
    let z = field.generator().pow(total / n);
    if field.order_of(z.value) != n {
        return consistency(format!("element of order {n} has wrong order"));
    }
    Ok(z)
}

/// Element of a finite field, tagged with its field.
#[derive(Clone)]
pub struct FFElem {
    field: Arc<FField>,
    value: u32,
}

impl PartialEq for FFElem {
    fn eq(&self, other: &Self) -> bool {
        self.value == other.value
            && self.field.ell == other.field.ell
            && self.field.degree == other.field.degree
    }
}
impl Eq for FFElem {}

impl FFElem {
    pub fn field(&self) -> &Arc<FField> {
        &self.field
    }

    pub fn raw(&self) -> u32 {
        self.value
    }

    pub fn same_field(&self, other: &FFElem) -> bool {
        self.field.ell == other.field.ell && self.field.degree == other.field.degree
    }

    pub fn multiplicative_order(&self) -> u64 {
        self.field.order_of(self.value)
    }

    /// Smallest `i >= 2` with `1 + q + ... + q^(i-1) = 0`: `ell` for `q = 1`,
    /// otherwise the multiplicative order of `q`.
    pub fn multiplicative_e(&self) -> Result<EParam> {
        if self.value == 0 {
            return input("multiplicative_e of zero");
        }
        if self.value == 1 {
            return Ok(EParam::Finite(self.field.characteristic()));
        }
        Ok(EParam::Finite(self.multiplicative_order()))
    }
}

/// Does `Phi_d(q) = 0`? The answer is checked against the vanishing law:
/// for `q = 1` exactly when `d = ell^n` with `n >= 1`; otherwise exactly when
/// `d = e ell^n` with `n >= 0` and `e` the order of `q`.
pub fn cyclotomic_vanishing(q: &FFElem, d: u64) -> Result<bool> {
    if q.value == 0 {
        return input("cyclotomic_vanishing needs q != 0");
    }
    if d < 2 {
        return input("cyclotomic_vanishing needs d >= 2");
    }
    let phi = cyclotomic_polynomial(d);
    let vanishes = phi.eval(q).map(|x| Ring::is_zero(&x)).unwrap_or(false);
    let predicted = vanishing_law(q, d);
    if vanishes != predicted {
        return consistency(format!(
            "Phi_{d}({q}) vanishing = {vanishes} disagrees with the predicted {predicted}"
        ));
    }
    Ok(vanishes)
}

/// The predicted answer of [`cyclotomic_vanishing`].
pub fn vanishing_law(q: &FFElem, d: u64) -> bool {
    let ell = q.field.characteristic();
    let strip = |mut m: u64| {
        let mut n = 0;
        while m % ell == 0 {
            m /= ell;
            n += 1;
        }
        (m, n)
    };
    let (rest, n) = strip(d);
    if q.value == 1 {
        rest == 1 && n >= 1
    } else {
        rest == q.multiplicative_order()
    }
}

impl Ring for FFElem {
    fn zero_like(&self) -> Self {
        self.field.elem(0)
    }
    fn one_like(&self) -> Self {
        self.field.elem(1)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn plus(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        self.field.elem(self.field.add(self.value, other.value))
    }
    fn minus(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        self.field.elem(self.field.sub(self.value, other.value))
    }
    fn times(&self, other: &Self) -> Self {
        debug_assert!(self.same_field(other));
        self.field.elem(self.field.mul(self.value, other.value))
    }
    fn negate(&self) -> Self {
        self.field.elem(self.field.neg(self.value))
    }
    fn pow(&self, exp: u64) -> Self {
        self.field.elem(self.field.pow(self.value, exp))
    }
}

impl Field for FFElem {
    fn inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.field.elem(self.field.inv(self.value)))
        }
    }
}

impl RationalImage for FFElem {
    fn from_rational(&self, q: &BigRational) -> Option<Self> {
        let d = self.field.from_bigint(q.denom());
        if d == 0 {
            return None;
        }
        let n = self.field.from_bigint(q.numer());
        Some(self.field.elem(self.field.mul(n, self.field.inv(d))))
    }
}

impl fmt::Display for FFElem {
    /// Prime-field elements print as integers, others as powers of the
    /// generator: `Z(7^2)^12`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.field.degree == 1 || self.value == 0 {
            write!(f, "{}", self.value)
        } else {
            write!(f, "Z({}^{})^{}", self.field.ell, self.field.degree, self.field.log_of(self.value))
        }
    }
}

impl fmt::Debug for FFElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} in {:?}", self.field)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_basics() {
        let f = FField::get(5, 1).unwrap();
        assert_eq!(f.generator_raw(), 2);
        let z = element_of_order(&f, 4).unwrap();
        assert!(z.raw() == 2 || z.raw() == 3);
        assert!(z.pow(4).is_one() && !z.pow(2).is_one());
        let f3 = FField::get(3, 1).unwrap();
        assert_eq!(element_of_order(&f3, 2).unwrap().raw(), 2);
        assert!(element_of_order(&f, 3).is_err());
    }

    #[test]
    fn extension_field() {
        let f = FField::get(7, 2).unwrap();
        assert_eq!(f.order(), 49);
        let z = element_of_order(&f, 16).unwrap();
        assert!(z.pow(16).is_one() && !z.pow(8).is_one());
        for a in 1..49 {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            assert_eq!(f.add(a, f.neg(a)), 0);
        }
        // lexicographically smallest irreducible quadratic over GF(7): x^2 + 1
        assert_eq!(f.modulus(), &[1, 0, 1]);
    }

    #[test]
    fn e_values() {
        let f3 = FField::get(3, 1).unwrap();
        assert_eq!(f3.elem(1).multiplicative_e().unwrap(), EParam::Finite(3));
        let f5 = FField::get(5, 1).unwrap();
        assert_eq!(f5.elem(4).multiplicative_e().unwrap(), EParam::Finite(2));
        assert_eq!(f5.elem(2).multiplicative_e().unwrap(), EParam::Finite(4));
        assert!(f5.elem(0).multiplicative_e().is_err());
    }

    #[test]
    fn vanishing_examples() {
        let f7 = FField::get(7, 1).unwrap();
        let q = f7.elem(2);
        assert!(cyclotomic_vanishing(&q, 3).unwrap());
        assert!(!cyclotomic_vanishing(&q, 6).unwrap());
        assert!(cyclotomic_vanishing(&q, 21).unwrap());
        let one = f7.elem(1);
        assert!(cyclotomic_vanishing(&one, 7).unwrap());
        assert!(cyclotomic_vanishing(&one, 49).unwrap());
        assert!(!cyclotomic_vanishing(&one, 2).unwrap());
    }
}
