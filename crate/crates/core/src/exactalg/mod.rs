//! Exact arithmetic: Laurent polynomials and rational functions in `v`,
//! cyclotomic number fields, finite fields, and dense linear algebra over them.

pub mod cyclo;
pub mod ffield;
pub mod laurent;
pub mod linalg;
pub mod numtheory;
pub mod ratfunc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use std::fmt::{self, Debug};
use std::str::FromStr;

pub use cyclo::{cyclotomic_polynomial, phi_adic_valuation, phi_split_check, CycloNum};
pub use ffield::{FField, FFElem};
pub use laurent::LaurentPoly;
pub use linalg::{exact_rank, ExactMatrix, Matrix};
pub use numtheory::min_extension_degree;
pub use ratfunc::RatFunc;

/// Commutative ring operations. Elements of context-carrying domains (finite
/// fields, cyclotomic fields) produce their own zero and one.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, other: &Self) -> Self;
    fn minus(&self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    fn negate(&self) -> Self;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, mut exp: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one_like();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.times(&base);
            }
            base = base.times(&base);
            exp >>= 1;
        }
        acc
    }
}

pub trait Field: Ring {
    /// `None` exactly for zero.
    fn inverse(&self) -> Option<Self>;

    fn pow_signed(&self, exp: i64) -> Option<Self> {
        if exp >= 0 {
            Some(self.pow(exp as u64))
        } else {
            self.inverse().map(|x| x.pow(exp.unsigned_abs()))
        }
    }
}

/// A field into which rational numbers can be mapped (possibly failing when a
/// denominator vanishes in positive characteristic).
pub trait RationalImage: Field {
    fn from_rational(&self, q: &BigRational) -> Option<Self>;
}

impl Ring for BigRational {
    fn zero_like(&self) -> Self {
        BigRational::zero()
    }
    fn one_like(&self) -> Self {
        BigRational::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
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

impl Field for BigRational {
    fn inverse(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
}

impl RationalImage for BigRational {
    fn from_rational(&self, q: &BigRational) -> Option<Self> {
        Some(q.clone())
    }
}

/// The quantum characteristic `e`: smallest `i >= 2` with
/// `1 + q + ... + q^(i-1) = 0`, or infinity when there is none.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EParam {
    Finite(u64),
    Infinity,
}

impl EParam {
    pub fn finite(self) -> Option<u64> {
        match self {
            EParam::Finite(e) => Some(e),
            EParam::Infinity => None,
        }
    }
}

impl fmt::Display for EParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EParam::Finite(e) => write!(f, "{e}"),
            EParam::Infinity => write!(f, "inf"),
        }
    }
}

impl FromStr for EParam {
    type Err = crate::error::Error;
    fn from_str(s: &str) -> crate::error::Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("inf") || s.eq_ignore_ascii_case("infinity") {
            return Ok(EParam::Infinity);
        }
        match s.parse::<u64>() {
            Ok(e) if e >= 2 => Ok(EParam::Finite(e)),
            _ => Err(crate::error::Error::Input(format!("e must be an integer >= 2 or \"inf\", got {s:?}"))),
        }
    }
}

impl serde::Serialize for EParam {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            EParam::Finite(e) => s.serialize_u64(*e),
            EParam::Infinity => s.serialize_str("inf"),
        }
    }
}
