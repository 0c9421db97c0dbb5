//! Laurent polynomials in `v` with rational coefficients. The Hecke parameter
//! is `u = v^2`; a polynomial whose exponents are all even is printed in `u`.

use super::{Field, RationalImage, Ring};
use crate::error::{input, Result};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

/// Dense Laurent polynomial: `sum_k coeffs[k] * v^(low + k)`.
///
/// Canonical form: either `coeffs` is empty (zero, with `low == 0`) or both
/// its first and last entries are non-zero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigRational>,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { low: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_parts(0, vec![c])
    }

    pub fn int(c: i64) -> Self {
        Self::constant(rat(c))
    }

    pub fn monomial(c: BigRational, exp: i64) -> Self {
        Self::from_parts(exp, vec![c])
    }

    /// The indeterminate `v`.
    pub fn v() -> Self {
        Self::monomial(BigRational::one(), 1)
    }

    /// `u = v^2`.
    pub fn u() -> Self {
        Self::monomial(BigRational::one(), 2)
    }

    /// `u^k`, any integer `k`.
    pub fn u_pow(k: i64) -> Self {
        Self::monomial(BigRational::one(), 2 * k)
    }

    pub fn from_parts(low: i64, coeffs: Vec<BigRational>) -> Self {
        let mut p = LaurentPoly { low, coeffs };
        p.normalize();
        p
    }

    /// Integer coefficients of `v^low, v^(low+1), ...`.
    pub fn from_ints(low: i64, coeffs: &[i64]) -> Self {
        Self::from_parts(low, coeffs.iter().map(|&c| rat(c)).collect())
    }

    /// Integer coefficients of `u^low_u, u^(low_u+1), ...`.
    pub fn from_u_ints(low_u: i64, coeffs: &[i64]) -> Self {
        let mut out = Vec::with_capacity(2 * coeffs.len());
        for (k, &c) in coeffs.iter().enumerate() {
            if k > 0 {
                out.push(BigRational::zero());
            }
            out.push(rat(c));
        }
        Self::from_parts(2 * low_u, out)
    }

    fn normalize(&mut self) {
        while self.coeffs.last().is_some_and(|c| Zero::is_zero(c)) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| Zero::is_zero(*c)).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest exponent in `v` (0 for the zero polynomial).
    pub fn low_degree(&self) -> i64 {
        self.low
    }

    /// Highest exponent in `v` (`low - 1` for zero).
    pub fn high_degree(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        let k = exp - self.low;
        if k < 0 || k as usize >= self.coeffs.len() {
            BigRational::zero()
        } else {
            self.coeffs[k as usize].clone()
        }
    }

    /// Non-zero terms `(exponent, coefficient)` in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !Zero::is_zero(*c))
            .map(move |(k, c)| (self.low + k as i64, c))
    }

    pub fn leading_coeff(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    /// True if only even powers of `v` occur, i.e. this is a Laurent
    /// polynomial in `u`.
    pub fn is_in_u(&self) -> bool {
        self.terms().all(|(e, _)| e % 2 == 0)
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// True if no negative powers of `v` occur.
    pub fn is_polynomial(&self) -> bool {
        self.is_zero() || self.low >= 0
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        LaurentPoly { low: self.low + k, coeffs: self.coeffs.clone() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::from_parts(self.low, self.coeffs.iter().map(|x| x * c).collect())
    }

    /// `p(v) -> p(v^2)`; turns a polynomial in `u` written in `v` into itself
    /// evaluated at `u`.
    pub fn substitute_square(&self) -> Self {
        let mut out = vec![BigRational::zero(); 2 * self.coeffs.len().max(1) - 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[2 * k] = c.clone();
        }
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_parts(2 * self.low, out)
    }

    /// `p(v) -> p(-v)`.
    pub fn negate_variable(&self) -> Self {
        Self::from_parts(
            self.low,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if (self.low + k as i64) % 2 != 0 { -c } else { c.clone() })
                .collect(),
        )
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient in `Q[v, v^-1]`, or `None` if `d` does not divide.
    pub fn div_exact(&self, d: &LaurentPoly) -> Option<LaurentPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (q, r) = poly_divmod(&self.coeffs, &d.coeffs);
        if !r.is_empty() {
            return None;
        }
        Some(Self::from_parts(self.low - d.low, q))
    }

    /// Monic greatest common divisor in `Q[v, v^-1]`, normalised to have a
    /// non-zero constant term and no negative powers.
    pub fn gcd(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut a = self.coeffs.clone();
        let mut b = other.coeffs.clone();
        while !b.is_empty() {
            let (_, r) = poly_divmod(&a, &b);
            a = b;
            b = r;
        }
        if a.is_empty() {
            return Self::zero();
        }
        let lead = a.last().unwrap().clone();
        Self::from_parts(0, a.into_iter().map(|c| c / &lead).collect())
    }

    /// Evaluate at `x` in a field, mapping rational coefficients into it.
    /// `None` when a coefficient has no image or `x = 0` meets a negative power.
    pub fn eval<F: RationalImage>(&self, x: &F) -> Option<F> {
        let mut acc = x.zero_like();
        for c in self.coeffs.iter().rev() {
            acc = acc.times(x).plus(&x.from_rational(c)?);
        }
        if self.is_zero() {
            return Some(acc);
        }
        Some(acc.times(&x.pow_signed(self.low)?))
    }

    /// Evaluate at a rational number.
    pub fn eval_rational(&self, x: &BigRational) -> Option<BigRational> {
        self.eval(x)
    }

    pub fn to_canonical_string(&self) -> String {
        self.to_string()
    }
}

/// Long division of dense coefficient vectors (constant term first) over Q.
/// Returns (quotient, remainder) with the remainder stripped of trailing zeros.
pub(crate) fn poly_divmod(
    a: &[BigRational],
    b: &[BigRational],
) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r: Vec<BigRational> = a.to_vec();
    while r.last().is_some_and(|c| Zero::is_zero(c)) {
        r.pop();
    }
    let blen = b.len();
    assert!(blen > 0 && !Zero::is_zero(&b[blen - 1]), "division by zero polynomial");
    if r.len() < blen {
        return (Vec::new(), r);
    }
    let lead_inv = b[blen - 1].recip();
    let mut q = vec![BigRational::zero(); r.len() - blen + 1];
    for k in (0..q.len()).rev() {
        let c = &r[k + blen - 1] * &lead_inv;
        if Zero::is_zero(&c) {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if !Zero::is_zero(bj) {
                r[k + j] -= &c * bj;
            }
        }
        q[k] = c;
    }
    while r.last().is_some_and(|c| Zero::is_zero(c)) {
        r.pop();
    }
    (q, r)
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.high_degree().max(rhs.high_degree());
        let mut out = vec![BigRational::zero(); (high - low + 1) as usize];
        for (k, c) in self.coeffs.iter().enumerate() {
            out[(self.low - low) as usize + k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            out[(rhs.low - low) as usize + k] += c;
        }
        LaurentPoly::from_parts(low, out)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { low: self.low, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || rhs.is_zero() {
            return LaurentPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if Zero::is_zero(a) {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !Zero::is_zero(b) {
                    out[i + j] += a * b;
                }
            }
        }
        LaurentPoly::from_parts(self.low + rhs.low, out)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPoly {
            type Output = LaurentPoly;
            fn $m(self, rhs: LaurentPoly) -> LaurentPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}

impl Ring for LaurentPoly {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn plus(&self, other: &Self) -> Self {
        self + other
    }
    fn minus(&self, other: &Self) -> Self {
        self - other
    }
    fn times(&self, other: &Self) -> Self {
        self * other
    }
    fn negate(&self) -> Self {
        -self
    }
}

fn fmt_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("({}/{})", c.numer(), c.denom())
    }
}

impl fmt::Display for LaurentPoly {
    /// Terms are ordered by decreasing absolute exponent, positive before
    /// negative on ties: `u^3-2u+1`, `u^-1+1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_u = self.is_in_u();
        let (var, div) = if in_u { ("u", 2) } else { ("v", 1) };
        let mut terms: Vec<(i64, &BigRational)> =
            self.terms().map(|(e, c)| (e / div, c)).collect();
        terms.sort_by(|a, b| b.0.abs().cmp(&a.0.abs()).then(b.0.cmp(&a.0)));
        let mut out = String::new();
        for (idx, (e, c)) in terms.into_iter().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if neg {
                out.push('-');
            } else if idx > 0 {
                out.push('+');
            }
            let unit = One::is_one(&mag);
            if e == 0 {
                out.push_str(&fmt_coeff(&mag));
                continue;
            }
            if !unit {
                out.push_str(&fmt_coeff(&mag));
            }
            out.push_str(var);
            if e != 1 {
                out.push('^');
                out.push_str(&e.to_string());
            }
        }
        write!(f, "{out}")
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl FromStr for LaurentPoly {
    type Err = crate::error::Error;

    /// Parses the canonical strings produced by `Display` (in `u` or `v`),
    /// plus `*` between coefficient and variable.
    fn from_str(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return input("empty polynomial string");
        }
        let bytes = s.as_bytes();
        let mut pos = 0;
        let mut acc = LaurentPoly::zero();
        let mut first = true;
        while pos < bytes.len() {
            let mut sign = 1i64;
            if bytes[pos] == b'+' || bytes[pos] == b'-' {
                if bytes[pos] == b'-' {
                    sign = -1;
                }
                pos += 1;
            } else if !first {
                return input(format!("expected sign at byte {pos} in {s:?}"));
            }
            first = false;
            // coefficient
            let mut coeff: Option<BigRational> = None;
            if pos < bytes.len() && bytes[pos] == b'(' {
                let close = s[pos..]
                    .find(')')
                    .map(|k| k + pos)
                    .ok_or_else(|| crate::error::Error::Input(format!("unclosed ( in {s:?}")))?;
                coeff = Some(parse_rational(&s[pos + 1..close])?);
                pos = close + 1;
            } else {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == b'/') {
                    pos += 1;
                }
                if pos > start {
                    coeff = Some(parse_rational(&s[start..pos])?);
                }
            }
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
            }
            let mut exp = 0i64;
            if pos < bytes.len() && (bytes[pos] == b'u' || bytes[pos] == b'v') {
                let mult = if bytes[pos] == b'u' { 2 } else { 1 };
                pos += 1;
                let mut e = 1i64;
                if pos < bytes.len() && bytes[pos] == b'^' {
                    pos += 1;
                    let start = pos;
                    if pos < bytes.len() && bytes[pos] == b'-' {
                        pos += 1;
                    }
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    e = s[start..pos]
                        .parse()
                        .map_err(|_| crate::error::Error::Input(format!("bad exponent in {s:?}")))?;
                }
                exp = e * mult;
            } else if coeff.is_none() {
                return input(format!("expected term at byte {pos} in {s:?}"));
            }
            let c = coeff.unwrap_or_else(BigRational::one) * rat(sign);
            acc = &acc + &LaurentPoly::monomial(c, exp);
        }
        Ok(acc)
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || crate::error::Error::Input(format!("bad rational {s:?}"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.parse().map_err(|_| bad())?;
            let d: BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(BigRational::from_integer(s.parse().map_err(|_| bad())?)),
    }
}

impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Only used to give `LaurentPoly` entries a field-like interface inside
/// fraction-free elimination; inverses exist only for monomials.
impl Field for LaurentPoly {
    fn inverse(&self) -> Option<Self> {
        if self.coeffs.len() == 1 {
            Some(LaurentPoly::monomial(self.coeffs[0].recip(), -self.low))
        } else {
            None
        }
    }
}
