//! Coefficient fields shared by the series, jet and linear-algebra layers.
//!
//! Every algorithm that only needs field operations is written once against
//! [`Scalar`] and instantiated with exact rationals ([`Rat`]) or with a prime
//! field ([`Fp`]). The prime-field instance is what makes multi-modular
//! kernel searches cheap; the rational instance is the exact reference.

use std::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::rat::Rat;

/// A field whose elements may need a runtime context (the modulus) to be created.
pub trait Scalar: Clone + PartialEq + Debug + Send + Sync {
    /// Data needed to create constants (unit for ℚ, the prime for 𝔽ₚ).
    type Ctx: Clone + Debug + PartialEq + Send + Sync;

    fn zero(ctx: &Self::Ctx) -> Self;
    fn one(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// Image of a rational; `None` when its denominator is not invertible.
    fn from_rat(ctx: &Self::Ctx, v: &Rat) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self += a * b`.
    fn add_mul(&mut self, a: &Self, b: &Self) {
        *self = self.add(&a.mul(b));
    }
}

impl Scalar for Rat {
    type Ctx = ();

    fn zero(_: &()) -> Self {
        <Rat as Zero>::zero()
    }
    fn one(_: &()) -> Self {
        <Rat as One>::one()
    }
    fn from_i64(_: &(), v: i64) -> Self {
        Rat::from_integer(BigInt::from(v))
    }
    fn from_rat(_: &(), v: &Rat) -> Option<Self> {
        Some(v.clone())
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        if !Zero::is_zero(a) && !Zero::is_zero(b) {
            *self += a * b;
        }
    }
}

/// Element of the prime field 𝔽ₚ with `p < 2^63`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp {
    pub v: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(v: u64, p: u64) -> Self {
        Fp { v: v % p, p }
    }

    pub fn pow(self, mut e: u64) -> Self {
        let mut base = self;
        let mut acc = Fp { v: 1 % self.p, p: self.p };
        while e > 0 {
            if e & 1 == 1 {
                acc = Scalar::mul(&acc, &base);
            }
            base = Scalar::mul(&base, &base);
            e >>= 1;
        }
        acc
    }
}

/// `a * b mod p`.
#[inline]
pub fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// `a + b mod p` for reduced operands.
#[inline]
pub fn addmod(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

/// `a - b mod p` for reduced operands.
#[inline]
pub fn submod(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

/// `a^e mod p`.
pub fn powmod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(acc, a, p);
        }
        a = mulmod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub fn invmod(a: u64, p: u64) -> Option<u64> {
    if a.is_multiple_of(p) {
        None
    } else {
        Some(powmod(a, p - 2, p))
    }
}

/// Reduces an arbitrary integer into `[0, p)`.
pub fn bigint_mod(a: &BigInt, p: u64) -> u64 {
    let r = a % BigInt::from(p);
    let r = if r.is_negative() { r + BigInt::from(p) } else { r };
    r.to_u64().expect("residue fits in u64")
}

/// Image of a rational modulo `p`, or `None` if `p` divides its denominator.
pub fn rat_mod(v: &Rat, p: u64) -> Option<u64> {
    let d = bigint_mod(v.denom(), p);
    let inv = invmod(d, p)?;
    Some(mulmod(bigint_mod(v.numer(), p), inv, p))
}

impl Scalar for Fp {
    type Ctx = u64;

    fn zero(p: &u64) -> Self {
        Fp { v: 0, p: *p }
    }
    fn one(p: &u64) -> Self {
        Fp { v: 1, p: *p }
    }
    fn from_i64(p: &u64, v: i64) -> Self {
        Fp { v: (v as i128).rem_euclid(*p as i128) as u64, p: *p }
    }
    fn from_rat(p: &u64, v: &Rat) -> Option<Self> {
        rat_mod(v, *p).map(|v| Fp { v, p: *p })
    }
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp { v: addmod(self.v, o.v, self.p), p: self.p }
    }
    fn sub(&self, o: &Self) -> Self {
        Fp { v: submod(self.v, o.v, self.p), p: self.p }
    }
    fn mul(&self, o: &Self) -> Self {
        Fp { v: mulmod(self.v, o.v, self.p), p: self.p }
    }
    fn neg(&self) -> Self {
        Fp { v: if self.v == 0 { 0 } else { self.p - self.v }, p: self.p }
    }
    fn inv(&self) -> Option<Self> {
        invmod(self.v, self.p).map(|v| Fp { v, p: self.p })
    }
    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.v = addmod(self.v, mulmod(a.v, b.v, self.p), self.p);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::ratio;

    #[test]
    fn prime_field_arithmetic() {
        let p = 1_000_000_007u64;
        let a = Fp::from_i64(&p, -3);
        assert_eq!(a.v, p - 3);
        let b = a.inv().unwrap();
        assert_eq!(Scalar::mul(&a, &b).v, 1);
        let h = Fp::from_rat(&p, &ratio(1, 2)).unwrap();
        assert_eq!(Scalar::add(&h, &h).v, 1);
        assert!(Fp::from_rat(&7, &ratio(1, 14)).is_none());
    }
}
