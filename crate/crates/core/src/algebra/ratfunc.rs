//! Reduced rational functions in ℚ(x, y).

use std::fmt;

use num_traits::{One, Zero};

use super::gcd::gcd;
use super::poly::BiPoly;
use super::rat::Rat;
use super::AlgebraError;

/// Quotient `num / den` with `gcd(num, den) = 1` and `den` monic in
/// graded-lex order; zero is `0 / 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: BiPoly,
    den: BiPoly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: BiPoly, den: BiPoly) -> Result<Self, AlgebraError> {
        if den.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        if num.is_zero() {
            return Ok(RatFunc::zero());
        }
        let g = gcd(&num, &den);
        let (num, den) =
            if g.is_constant() { (num, den) } else { (num.exact_div(&g).expect("gcd divides"), den.exact_div(&g).expect("gcd divides")) };
        let lc = den.leading_coeff().expect("nonzero").recip();
        Ok(RatFunc { num: num.scale(&lc), den: den.scale(&lc) })
    }

    pub fn zero() -> Self {
        RatFunc { num: BiPoly::zero(), den: BiPoly::one() }
    }

    pub fn from_poly(p: BiPoly) -> Self {
        RatFunc { num: p, den: BiPoly::one() }
    }

    pub fn constant(c: Rat) -> Self {
        RatFunc::from_poly(BiPoly::constant(c))
    }

    pub fn num(&self) -> &BiPoly {
        &self.num
    }

    pub fn den(&self) -> &BiPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// True when the denominator is one.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `max(deg num, deg den)`, with zero mapped to `0`.
    pub fn degree(&self) -> u32 {
        self.num.degree().unwrap_or(0).max(self.den.degree().unwrap_or(0))
    }

    pub fn add(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) + &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn sub(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&(&self.num * &o.den) - &(&o.num * &self.den), &self.den * &o.den).expect("nonzero")
    }

    pub fn mul(&self, o: &RatFunc) -> RatFunc {
        RatFunc::new(&self.num * &o.num, &self.den * &o.den).expect("nonzero")
    }

    pub fn div(&self, o: &RatFunc) -> Result<RatFunc, AlgebraError> {
        if o.is_zero() {
            return Err(AlgebraError::ZeroDenominator);
        }
        RatFunc::new(&self.num * &o.den, &self.den * &o.num)
    }

    pub fn scale(&self, c: &Rat) -> RatFunc {
        RatFunc { num: self.num.scale(c), den: if c.is_zero() { BiPoly::one() } else { self.den.clone() } }
    }

    pub fn neg(&self) -> RatFunc {
        RatFunc { num: -&self.num, den: self.den.clone() }
    }

    /// Value at a point where the denominator does not vanish.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Option<Rat> {
        let d = self.den.eval(x, y);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(x, y) / d)
        }
    }

    /// True when `self = c · other` for some nonzero rational `c`.
    pub fn proportional_to(&self, other: &RatFunc) -> bool {
        if self.is_zero() || other.is_zero() {
            return self.is_zero() && other.is_zero();
        }
        self.den == other.den && {
            let (a, b) = (self.num.leading_coeff().unwrap(), other.num.leading_coeff().unwrap());
            self.num.scale(&(b / a)) == other.num
        }
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_constant() && self.den.constant_term().is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn reduction_is_canonical() {
        let f = p(&[(1, 0, 1), (0, 1, -1)]);
        let g = p(&[(1, 1, 2), (0, 0, 3)]);
        let h = p(&[(0, 2, 5), (0, 0, -1)]);
        let a = RatFunc::new(&f * &h, &g * &h).unwrap();
        let b = RatFunc::new(f.scale(&rat(-4)), g.scale(&rat(-4))).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.den().leading_coeff().unwrap(), &rat(1));
        assert!(RatFunc::new(f, BiPoly::zero()).is_err());
    }
}
