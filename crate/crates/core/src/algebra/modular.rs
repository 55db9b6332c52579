//! Multi-modular plumbing: prime generation, Chinese remaindering and
//! rational reconstruction.
//!
//! These are the pieces that let exact answers over ℚ be assembled from
//! images modulo word-size primes. Every caller verifies the reconstructed
//! value independently, so reconstruction failures only cost extra primes.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rat::Rat;
use super::scalar::{mulmod, powmod};

/// Deterministic Miller–Rabin primality test for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Iterator over primes strictly below a start value, in decreasing order.
#[derive(Clone, Debug)]
pub struct PrimeStream {
    next: u64,
}

impl PrimeStream {
    /// Primes just below 2^62: large enough that unlucky primes are rare.
    pub fn large() -> Self {
        PrimeStream { next: 1 << 62 }
    }

    /// Primes just below 2^31, convenient for polynomial factorization mod p.
    pub fn medium() -> Self {
        PrimeStream { next: 1 << 31 }
    }

    /// Primes below `start`.
    pub fn below(start: u64) -> Self {
        PrimeStream { next: start }
    }
}

impl Iterator for PrimeStream {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        while self.next > 2 {
            self.next -= 1;
            if is_prime_u64(self.next) {
                return Some(self.next);
            }
        }
        None
    }
}

/// Combines `x ≡ a (mod m)` and `x ≡ b (mod p)` into the residue modulo `m·p`
/// lying in `[0, m·p)`.
pub fn crt_pair(a: &BigInt, m: &BigInt, b: u64, p: u64) -> BigInt {
    let pb = BigInt::from(p);
    let a_mod_p = super::scalar::bigint_mod(a, p);
    let m_mod_p = super::scalar::bigint_mod(m, p);
    let m_inv = super::scalar::invmod(m_mod_p, p).expect("moduli must be coprime");
    let diff = super::scalar::submod(b % p, a_mod_p, p);
    let t = mulmod(diff, m_inv, p);
    let res = a + m * BigInt::from(t);
    res.mod_floor(&(m * &pb))
}

/// Symmetric representative of `a` modulo `m`, in `(-m/2, m/2]`.
pub fn symmetric_mod(a: &BigInt, m: &BigInt) -> BigInt {
    let r = a.mod_floor(m);
    if &r * 2 > *m {
        r - m
    } else {
        r
    }
}

/// Wang's rational reconstruction: finds `n/d ≡ a (mod m)` with
/// `|n|, d ≤ sqrt(m/2)`, if such a fraction exists.
pub fn rational_reconstruct(a: &BigInt, m: &BigInt) -> Option<Rat> {
    let a = a.mod_floor(m);
    if a.is_zero() {
        return Some(Rat::zero());
    }
    let bound = (m / 2u32).sqrt();
    let (mut r0, mut r1) = (m.clone(), a);
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound || !r1.gcd(&t1).is_one() {
        return None;
    }
    Some(Rat::new(r1, t1))
}

/// Incrementally reconstructs a vector of rationals from images modulo
/// successive primes.
#[derive(Clone, Debug)]
pub struct VectorLifter {
    modulus: BigInt,
    residues: Vec<BigInt>,
}

impl VectorLifter {
    pub fn new(len: usize) -> Self {
        VectorLifter { modulus: BigInt::one(), residues: vec![BigInt::zero(); len] }
    }

    pub fn len(&self) -> usize {
        self.residues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.residues.is_empty()
    }

    /// Folds in the image of the vector modulo a fresh prime `p`.
    pub fn add_image(&mut self, image: &[u64], p: u64) {
        assert_eq!(image.len(), self.residues.len());
        for (res, &b) in self.residues.iter_mut().zip(image) {
            *res = crt_pair(res, &self.modulus, b, p);
        }
        self.modulus *= BigInt::from(p);
    }

    /// Attempts rational reconstruction of every entry.
    pub fn reconstruct(&self) -> Option<Vec<Rat>> {
        self.residues.iter().map(|r| rational_reconstruct(r, &self.modulus)).collect()
    }

    /// Symmetric integer representatives of every entry.
    pub fn symmetric(&self) -> Vec<BigInt> {
        self.residues.iter().map(|r| symmetric_mod(r, &self.modulus)).collect()
    }

    pub fn modulus(&self) -> &BigInt {
        &self.modulus
    }
}
