//! Cyclotomic polynomials and the cyclotomic fields `Q(zeta_m) = Q[x]/Phi_m(x)`.

use super::laurent::poly_divmod;
use super::{EParam, Field, LaurentPoly, RationalImage, Ring};
use crate::error::{consistency, input, Result};
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

fn phi_cache() -> &'static Mutex<HashMap<u64, LaurentPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, LaurentPoly>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// `Phi_d(v)`, computed as `(v^d - 1) / prod_{d' | d, d' < d} Phi_{d'}(v)`.
pub fn cyclotomic_polynomial(d: u64) -> LaurentPoly {
    assert!(d >= 1, "cyclotomic polynomial index must be positive");
    if let Some(p) = phi_cache().lock().unwrap().get(&d) {
        return p.clone();
    }
    let mut num = &LaurentPoly::monomial(BigRational::one(), d as i64) - &LaurentPoly::one();
    for k in 1..d {
        if d % k == 0 {
            num = num
                .div_exact(&cyclotomic_polynomial(k))
                .expect("proper cyclotomic factors divide v^d - 1");
        }
    }
    phi_cache().lock().unwrap().insert(d, num.clone());
    num
}

/// Factors of `Phi_e(v^2)`: `[Phi_2e]` for even `e`, `[Phi_e, Phi_2e]` for odd
/// `e`. Fails if the product does not reproduce `Phi_e(v^2)`.
pub fn phi_split_check(e: u64) -> Result<Vec<LaurentPoly>> {
    if e < 2 {
        return input("phi_split_check needs e >= 2");
    }
    let lhs = cyclotomic_polynomial(e).substitute_square();
    let factors = if e % 2 == 0 {
        vec![cyclotomic_polynomial(2 * e)]
    } else {
        vec![cyclotomic_polynomial(e), cyclotomic_polynomial(2 * e)]
    };
    let prod = factors.iter().fold(LaurentPoly::one(), |acc, f| &acc * f);
    if prod != lhs {
        return consistency(format!("Phi_{e}(v^2) = {lhs} but factor product is {prod}"));
    }
    Ok(factors)
}

/// Largest `n` with `Phi_d(v)^n | p`, and the cofactor.
pub fn phi_adic_valuation(p: &LaurentPoly, d: u64) -> Result<(u32, LaurentPoly)> {
    if p.is_zero() {
        return input("phi-adic valuation of zero");
    }
    let phi = cyclotomic_polynomial(d);
    let mut n = 0;
    let mut cof = p.clone();
    while let Some(q) = cof.div_exact(&phi) {
        cof = q;
        n += 1;
    }
    Ok((n, cof))
}

/// Euler's totient, used for `deg Phi_m`.
pub fn totient(m: u64) -> u64 {
    super::numtheory::factorize(m)
        .into_iter()
        .fold(1, |acc, (p, k)| acc * (p - 1) * p.pow(k - 1))
}

fn modulus_for(m: u64) -> Arc<[BigRational]> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<[BigRational]>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(v) = cache.lock().unwrap().get(&m) {
        return v.clone();
    }
    let phi = cyclotomic_polynomial(m);
    let coeffs: Arc<[BigRational]> =
        (0..=phi.high_degree()).map(|k| phi.coeff(k)).collect::<Vec<_>>().into();
    cache.lock().unwrap().insert(m, coeffs.clone());
    coeffs
}

/// An element of `Q(zeta_m)`, as a coefficient vector (constant first) of
/// length `deg Phi_m` in the power basis of `zeta_m`.
#[derive(Clone)]
pub struct CycloNum {
    conductor: u64,
    coeffs: Vec<BigRational>,
    modulus: Arc<[BigRational]>,
}

impl PartialEq for CycloNum {
    fn eq(&self, other: &Self) -> bool {
        self.conductor == other.conductor && self.coeffs == other.coeffs
    }
}
impl Eq for CycloNum {}

impl CycloNum {
    fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    /// Reduce an arbitrary coefficient vector modulo `Phi_m`.
    pub fn from_coeffs(conductor: u64, coeffs: Vec<BigRational>) -> Self {
        let modulus = modulus_for(conductor);
        let deg = modulus.len() - 1;
        let mut c = coeffs;
        if c.len() > deg {
            let (_, r) = poly_divmod(&c, &modulus);
            c = r;
        }
        c.resize(deg, BigRational::zero());
        CycloNum { conductor, coeffs: c, modulus }
    }

    pub fn rational(conductor: u64, q: BigRational) -> Self {
        Self::from_coeffs(conductor, vec![q])
    }

    pub fn int(conductor: u64, n: i64) -> Self {
        Self::rational(conductor, BigRational::from_integer(n.into()))
    }

    /// The primitive root of unity `zeta_m = x mod Phi_m`.
    pub fn zeta(conductor: u64) -> Self {
        Self::from_coeffs(conductor, vec![BigRational::zero(), BigRational::one()])
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Smallest `i >= 2` with `1 + q + ... + q^(i-1) = 0`; for `q != 1` this
    /// is the multiplicative order of `q`. `q = 1` never qualifies in
    /// characteristic 0.
    pub fn multiplicative_e(&self) -> Result<EParam> {
        if Ring::is_zero(self) {
            return input("multiplicative_e of zero");
        }
        if self.is_one() {
            return Ok(EParam::Infinity);
        }
        // a root of unity in Q(zeta_m) has order dividing lcm(2, m)
        let bound = 2 * self.conductor;
        let mut acc = self.clone();
        for k in 1..=bound {
            if acc.is_one() {
                return Ok(EParam::Finite(k));
            }
            acc = acc.times(self);
        }
        Ok(EParam::Infinity)
    }
}

impl Ring for CycloNum {
    fn zero_like(&self) -> Self {
        CycloNum {
            conductor: self.conductor,
            coeffs: vec![BigRational::zero(); self.degree()],
            modulus: self.modulus.clone(),
        }
    }
    fn one_like(&self) -> Self {
        let mut z = self.zero_like();
        z.coeffs[0] = BigRational::one();
        z
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| Zero::is_zero(c))
    }
    fn plus(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductor mismatch");
        let coeffs = self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect();
        CycloNum { conductor: self.conductor, coeffs, modulus: self.modulus.clone() }
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        assert_eq!(self.conductor, other.conductor, "cyclotomic conductor mismatch");
        let deg = self.degree();
        let mut prod = vec![BigRational::zero(); 2 * deg - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    prod[i + j] += a * b;
                }
            }
        }
        // Phi_m is monic: fold high terms down
        for k in (deg..prod.len()).rev() {
            let c = std::mem::replace(&mut prod[k], BigRational::zero());
            if Zero::is_zero(&c) {
                continue;
            }
            for j in 0..deg {
                let mj = &self.modulus[j];
                if !Zero::is_zero(mj) {
                    prod[k - deg + j] -= &c * mj;
                }
            }
        }
        prod.truncate(deg);
        CycloNum { conductor: self.conductor, coeffs: prod, modulus: self.modulus.clone() }
    }
    fn negate(&self) -> Self {
        CycloNum {
            conductor: self.conductor,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
            modulus: self.modulus.clone(),
        }
    }
}

impl Field for CycloNum {
    /// Extended Euclid against `Phi_m`, irreducible over Q.
    fn inverse(&self) -> Option<Self> {
        if Ring::is_zero(self) {
            return None;
        }
        let trim = |mut v: Vec<BigRational>| {
            while v.last().is_some_and(|c| Zero::is_zero(c)) {
                v.pop();
            }
            v
        };
        let mut r0 = self.modulus.to_vec();
        let mut r1 = trim(self.coeffs.clone());
        let mut t0: Vec<BigRational> = Vec::new();
        let mut t1: Vec<BigRational> = vec![BigRational::one()];
        while !r1.is_empty() {
            let (q, r) = poly_divmod(&r0, &r1);
            let qt = poly_mul(&q, &t1);
            let t2 = trim(poly_sub(&t0, &qt));
            r0 = r1;
            r1 = r;
            t0 = t1;
            t1 = t2;
        }
        // r0 is a non-zero constant since Phi_m is irreducible
        debug_assert_eq!(r0.len(), 1);
        let c = r0[0].recip();
        Some(CycloNum::from_coeffs(self.conductor, t0.into_iter().map(|x| x * &c).collect()))
    }
}

impl RationalImage for CycloNum {
    fn from_rational(&self, q: &BigRational) -> Option<Self> {
        let mut z = self.zero_like();
        z.coeffs[0] = q.clone();
        Some(z)
    }
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    (0..n)
        .map(|k| {
            let x = a.get(k).cloned().unwrap_or_else(BigRational::zero);
            let y = b.get(k).cloned().unwrap_or_else(BigRational::zero);
            x - y
        })
        .collect()
}

impl fmt::Display for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let poly = LaurentPoly::from_parts(0, self.coeffs.clone());
        let s = poly.to_string().replace('v', &format!("z{}", self.conductor));
        write!(f, "{s}")
    }
}

impl fmt::Debug for CycloNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CycloNum({self})")
    }
}
