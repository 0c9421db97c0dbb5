//! Rational functions in `v` over Q, held as a reduced fraction of Laurent
//! polynomials.

use super::{Field, LaurentPoly, RationalImage, Ring};
use num_rational::BigRational;
use num_traits::One;
use std::fmt;

/// `num / den` with `den` a monic polynomial with non-zero constant term and
/// `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        // move v-powers of the denominator into the numerator
        let shift = den.low_degree();
        let num = num.shift(-shift);
        let den = den.shift(-shift);
        let g = num.gcd(&den);
        let mut num = num.div_exact(&g).expect("gcd divides");
        let mut den = den.div_exact(&g).expect("gcd divides");
        let lead = den.leading_coeff();
        if !One::is_one(&lead) {
            let inv = lead.recip();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(RatFunc { num, den })
    }

    pub fn zero() -> Self {
        RatFunc { num: LaurentPoly::zero(), den: LaurentPoly::one() }
    }

    pub fn one() -> Self {
        Self::from_laurent(LaurentPoly::one())
    }

    pub fn from_laurent(p: LaurentPoly) -> Self {
        RatFunc { num: p, den: LaurentPoly::one() }
    }

    pub fn int(c: i64) -> Self {
        Self::from_laurent(LaurentPoly::int(c))
    }

    pub fn numer(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denom(&self) -> &LaurentPoly {
        &self.den
    }

    /// The Laurent polynomial this equals, if the denominator is trivial.
    pub fn to_laurent(&self) -> Option<LaurentPoly> {
        if self.den == LaurentPoly::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn eval<F: RationalImage>(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x)?;
        let n = self.num.eval(x)?;
        Some(n.times(&d.inverse()?))
    }
}

impl Ring for RatFunc {
    fn zero_like(&self) -> Self {
        Self::zero()
    }
    fn one_like(&self) -> Self {
        Self::one()
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn plus(&self, other: &Self) -> Self {
        if self.den == other.den {
            return RatFunc::new(&self.num + &other.num, self.den.clone()).unwrap();
        }
        RatFunc::new(
            &(&self.num * &other.den) + &(&other.num * &self.den),
            &self.den * &other.den,
        )
        .unwrap()
    }
    fn minus(&self, other: &Self) -> Self {
        self.plus(&other.negate())
    }
    fn times(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        RatFunc::new(&self.num * &other.num, &self.den * &other.den).unwrap()
    }
    fn negate(&self) -> Self {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }
}

impl Field for RatFunc {
    fn inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            RatFunc::new(self.den.clone(), self.num.clone())
        }
    }
}

impl RationalImage for RatFunc {
    fn from_rational(&self, q: &BigRational) -> Option<Self> {
        Some(RatFunc::from_laurent(LaurentPoly::constant(q.clone())))
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}
