//! Irreducible factorization in ℤ[t] by the Zassenhaus method: factor modulo
//! a small prime (distinct-degree then equal-degree splitting), lift the
//! modular factors p-adically past a coefficient bound, and recombine subsets
//! by trial division.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::modular::is_prime_u64;
use crate::algebra::scalar::{bigint_mod, invmod};
use crate::algebra::upoly::zp;

use super::combinations;

/// Integer polynomial, little-endian, trimmed.
pub type ZPoly = Vec<BigInt>;

fn trim(v: &mut ZPoly) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

/// Reduces coefficients into `[0, m)`.
fn reduce(a: &[BigInt], m: &BigInt) -> ZPoly {
    let mut out: ZPoly = a.iter().map(|c| c.mod_floor(m)).collect();
    trim(&mut out);
    out
}

/// Symmetric representatives in `(−m/2, m/2]`.
fn symmetric(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    let mut out: ZPoly = a
        .iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect();
    trim(&mut out);
    out
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(&mut out);
    out
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
    trim(&mut out);
    out
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    let mut out: ZPoly = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
    trim(&mut out);
    out
}

/// Division by a monic polynomial modulo `m`.
fn divrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = reduce(a, m);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let k = r.len() - 1 - db;
        let c = r[r.len() - 1].clone();
        for (j, bj) in b.iter().enumerate() {
            r[k + j] = (&r[k + j] - &c * bj).mod_floor(m);
        }
        q[k] = c;
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Exact division in ℤ[t]; `None` if `b` does not divide `a`.
pub fn exact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    if b.is_empty() {
        return None;
    }
    let mut r = a.to_vec();
    trim(&mut r);
    if r.is_empty() {
        return Some(Vec::new());
    }
    if r.len() < b.len() {
        return None;
    }
    let lb = b.last().expect("nonzero");
    let db = b.len() - 1;
    let mut q = vec![BigInt::zero(); r.len() - db];
    while !r.is_empty() && r.len() > db {
        let k = r.len() - 1 - db;
        let (c, rem) = r[r.len() - 1].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        for (j, bj) in b.iter().enumerate() {
            r[k + j] -= &c * bj;
        }
        q[k] = c;
        trim(&mut r);
    }
    if !r.is_empty() {
        return None;
    }
    trim(&mut q);
    Some(q)
}

/// Content (positive gcd of the coefficients).
pub fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Primitive part with positive leading coefficient.
pub fn primitive(a: &[BigInt]) -> ZPoly {
    let c = content(a);
    if c.is_zero() {
        return Vec::new();
    }
    let sign = if a.last().is_some_and(|l| l.is_negative()) { -BigInt::one() } else { BigInt::one() };
    let d = c * sign;
    a.iter().map(|v| v / &d).collect()
}

fn to_zp(a: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = a.iter().map(|c| bigint_mod(c, p)).collect();
    zp::trim(&mut v);
    v
}

fn from_zp(a: &[u64]) -> ZPoly {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Distinct-degree factorization of a monic squarefree polynomial mod `p`.
fn distinct_degree(f: &[u64], p: u64) -> Vec<(Vec<u64>, usize)> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let x = vec![0, 1];
    let mut h = x.clone();
    let mut i = 0;
    let pe = BigUint::from(p);
    while zp::deg(&f) >= 2 * (i as isize + 1) {
        i += 1;
        h = zp::powmod(&h, &pe, &f, p);
        let g = zp::gcd(&f, &zp::sub(&h, &x, p), p);
        if zp::deg(&g) > 0 {
            f = zp::divrem(&f, &g, p).0;
            h = zp::rem(&h, &f, p);
            out.push((g, i));
        }
    }
    if zp::deg(&f) > 0 {
        let d = zp::deg(&f) as usize;
        out.push((f, d));
    }
    out
}

/// Equal-degree splitting (Cantor–Zassenhaus, odd `p`).
fn equal_degree(f: &[u64], d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Vec<u64>>) {
    let n = zp::deg(f) as usize;
    if n == d {
        out.push(f.to_vec());
        return;
    }
    let e = (BigUint::from(p).pow(d as u32) - 1u32) / 2u32;
    loop {
        let mut a: Vec<u64> = (0..n).map(|_| rng.gen_range(0..p)).collect();
        zp::trim(&mut a);
        if zp::deg(&a) < 1 {
            continue;
        }
        let b = zp::sub(&zp::powmod(&a, &e, f, p), &[1], p);
        let g = zp::gcd(f, &b, p);
        let dg = zp::deg(&g);
        if dg > 0 && (dg as usize) < n {
            let h = zp::divrem(f, &g, p).0;
            equal_degree(&g, d, p, rng, out);
            equal_degree(&zp::monic(&h, p), d, p, rng, out);
            return;
        }
    }
}

/// Monic irreducible factors of a monic squarefree polynomial mod `p`.
fn factor_mod_p(f: &[u64], p: u64) -> Vec<Vec<u64>> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_f00d ^ p);
    let mut out = Vec::new();
    for (g, d) in distinct_degree(f, p) {
        equal_degree(&g, d, p, &mut rng, &mut out);
    }
    out.sort();
    out
}

/// `x^{-1} mod m` for `gcd(x, m) = 1`.
fn inv_mod_big(x: &BigInt, m: &BigInt) -> BigInt {
    let e = x.mod_floor(m).extended_gcd(m);
    assert!(e.gcd.is_one(), "not invertible");
    e.x.mod_floor(m)
}

/// Lifts `f ≡ g·h (mod p)` with `h` monic to modulus `p^k` (quadratic Hensel).
fn hensel_pair(f: &[BigInt], g: &[u64], h: &[u64], p: u64, target: &BigInt) -> (ZPoly, ZPoly) {
    let (d, s, t) = zp::xgcd(g, h, p);
    debug_assert!(d == vec![1]);
    let _ = d;
    let (mut g, mut h, mut s, mut t) = (from_zp(g), from_zp(h), from_zp(&s), from_zp(&t));
    let mut m = BigInt::from(p);
    while &m < target {
        let m2 = &m * &m;
        // e = f − g·h
        let e = reduce(&zsub(f, &zmul(&g, &h)), &m2);
        let (q, r) = divrem_monic(&zmul(&s, &e), &h, &m2);
        let g_new = reduce(&zadd(&zadd(&g, &zmul(&t, &e)), &zmul(&q, &g)), &m2);
        let h_new = reduce(&zadd(&h, &r), &m2);
        let b = reduce(&zsub(&zadd(&zmul(&s, &g_new), &zmul(&t, &h_new)), &[BigInt::one()]), &m2);
        let (c, dd) = divrem_monic(&zmul(&s, &b), &h_new, &m2);
        let s_new = reduce(&zsub(&s, &dd), &m2);
        let t_new = reduce(&zsub(&zsub(&t, &zmul(&t, &b)), &zmul(&c, &g_new)), &m2);
        g = g_new;
        h = h_new;
        s = s_new;
        t = t_new;
        m = m2;
    }
    (reduce(&g, target), reduce(&h, target))
}

/// Lifts all monic modular factors of `f` (leading coefficient `lc`) to `p^k`.
fn hensel_multi(f: &[BigInt], factors: &[Vec<u64>], p: u64, modulus: &BigInt) -> Vec<ZPoly> {
    if factors.len() == 1 {
        let lc = f.last().expect("nonzero").clone();
        let inv = inv_mod_big(&lc, modulus);
        return vec![reduce(&f.iter().map(|c| c * &inv).collect::<Vec<_>>(), modulus)];
    }
    let half = factors.len() / 2;
    let lc_p = bigint_mod(f.last().expect("nonzero"), p);
    let mut g = vec![lc_p];
    for u in &factors[..half] {
        g = zp::mul(&g, u, p);
    }
    let mut h = vec![1];
    for u in &factors[half..] {
        h = zp::mul(&h, u, p);
    }
    let (g_l, h_l) = hensel_pair(f, &g, &h, p, modulus);
    let mut out = hensel_multi(&g_l, &factors[..half], p, modulus);
    out.extend(hensel_multi(&h_l, &factors[half..], p, modulus));
    out
}

/// Bound on the coefficients of any factor of `f` times its leading coefficient.
fn factor_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f.last().expect("nonzero").abs();
    BigInt::from(2) * lc * (BigInt::one() << n) * norm
}

fn is_squarefree_mod(f: &[u64], p: u64) -> bool {
    let d = zp::derivative(f, p);
    !d.is_empty() && zp::deg(&zp::gcd(f, &d, p)) == 0
}

/// Irreducible factors of a squarefree primitive `f ∈ ℤ[t]` with positive
/// leading coefficient, each primitive with positive leading coefficient.
pub fn factor_squarefree_primitive(f: &[BigInt]) -> Vec<ZPoly> {
    let n = f.len().saturating_sub(1);
    if n <= 1 {
        return vec![f.to_vec()];
    }
    // Choose the prime with the fewest modular factors among a few candidates.
    let mut best: Option<(u64, Vec<Vec<u64>>)> = None;
    let mut tried = 0;
    for p in (101u64..).filter(|&p| is_prime_u64(p)) {
        let lc = bigint_mod(f.last().expect("nonzero"), p);
        if lc == 0 {
            continue;
        }
        let fp = to_zp(f, p);
        if !is_squarefree_mod(&fp, p) {
            continue;
        }
        let inv = invmod(lc, p).expect("nonzero");
        let facs = factor_mod_p(&zp::scale(&fp, inv, p), p);
        if facs.len() == 1 {
            return vec![f.to_vec()];
        }
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 {
            break;
        }
    }
    let (p, facs) = best.expect("a good prime exists for a squarefree polynomial");
    let bound = factor_bound(f);
    let mut modulus = BigInt::from(p);
    while modulus <= bound {
        modulus *= p;
    }
    let mut lifted = hensel_multi(f, &facs, p, &modulus);
    recombine(f.to_vec(), &mut lifted, &modulus)
}

/// Subset recombination of lifted monic factors by trial division.
fn recombine(mut f: ZPoly, lifted: &mut Vec<ZPoly>, modulus: &BigInt) -> Vec<ZPoly> {
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = false;
        for subset in combinations(lifted.len(), s) {
            let mut g = vec![f.last().expect("nonzero").clone()];
            for &i in &subset {
                g = reduce(&zmul(&g, &lifted[i]), modulus);
            }
            let g = primitive(&symmetric(&g, modulus));
            if let Some(q) = exact_div(&f, &g) {
                out.push(g);
                f = primitive(&q);
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
                found = true;
                break;
            }
        }
        if !found {
            s += 1;
        }
    }
    if f.len() > 1 {
        out.push(f);
    }
    out
}

/// Clears denominators and returns the primitive integer polynomial.
pub fn to_integer(f: &[crate::algebra::rat::Rat]) -> ZPoly {
    let l = crate::algebra::rat::lcm_denominators(f.iter());
    let v: ZPoly = f.iter().map(|c| (c * crate::algebra::rat::Rat::from_integer(l.clone())).to_integer()).collect();
    primitive(&v)
}
