//! Dense univariate polynomial kernels.
//!
//! Coefficient vectors are little-endian (`v[i]` multiplies `t^i`) and kept
//! trimmed (no trailing zeros; the zero polynomial is the empty vector).
//! [`zp`] works modulo a word-size prime, [`q`] over the rationals.

/// Polynomials over 𝔽ₚ with `u64` residues.
pub mod zp {
    use num_bigint::BigUint;

    use crate::algebra::scalar::{addmod, invmod, mulmod, submod};

    pub fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn deg(a: &[u64]) -> isize {
        a.len() as isize - 1
    }

    pub fn add(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n).map(|i| addmod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
        trim(&mut out);
        out
    }

    pub fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut out: Vec<u64> = (0..n).map(|i| submod(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0), p)).collect();
        trim(&mut out);
        out
    }

    pub fn scale(a: &[u64], c: u64, p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().map(|&v| mulmod(v, c, p)).collect();
        trim(&mut out);
        out
    }

    pub fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u128; a.len() + b.len() - 1];
        let p128 = p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                let s = out[i + j] + x as u128 * y as u128;
                out[i + j] = if s >= p128 * p128 { s % p128 } else { s };
            }
        }
        let mut out: Vec<u64> = out.into_iter().map(|v| (v % p128) as u64).collect();
        trim(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = invmod(*b.last().unwrap(), p).expect("leading coefficient invertible");
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let mut q = vec![0u64; a.len() - db];
        for k in (0..q.len()).rev() {
            let c = mulmod(r[k + db], inv, p);
            q[k] = c;
            if c != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    r[k + j] = submod(r[k + j], mulmod(c, bj, p), p);
                }
            }
        }
        r.truncate(db);
        trim(&mut r);
        trim(&mut q);
        (q, r)
    }

    pub fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        divrem(a, b, p).1
    }

    pub fn monic(a: &[u64], p: u64) -> Vec<u64> {
        match a.last() {
            None => Vec::new(),
            Some(&lc) => scale(a, invmod(lc, p).expect("nonzero"), p),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (a.to_vec(), b.to_vec());
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        monic(&a, p)
    }

    /// Extended gcd: returns `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn xgcd(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>, Vec<u64>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![1u64], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![1u64]);
        while !r1.is_empty() {
            let (q, r) = divrem(&r0, &r1, p);
            let s2 = sub(&s0, &mul(&q, &s1, p), p);
            let t2 = sub(&t0, &mul(&q, &t1, p), p);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(&lc) => {
                let inv = invmod(lc, p).expect("nonzero");
                (scale(&r0, inv, p), scale(&s0, inv, p), scale(&t0, inv, p))
            }
        }
    }

    /// `base^e mod modulus`.
    pub fn powmod(base: &[u64], e: &BigUint, modulus: &[u64], p: u64) -> Vec<u64> {
        let mut acc = rem(&[1], modulus, p);
        let base = rem(base, modulus, p);
        for i in (0..e.bits()).rev() {
            acc = rem(&mul(&acc, &acc, p), modulus, p);
            if e.bit(i) {
                acc = rem(&mul(&acc, &base, p), modulus, p);
            }
        }
        acc
    }

    pub fn eval(a: &[u64], x: u64, p: u64) -> u64 {
        a.iter().rev().fold(0, |acc, &c| addmod(mulmod(acc, x, p), c, p))
    }

    pub fn derivative(a: &[u64], p: u64) -> Vec<u64> {
        let mut out: Vec<u64> = a.iter().enumerate().skip(1).map(|(i, &c)| mulmod(c, i as u64 % p, p)).collect();
        trim(&mut out);
        out
    }

    /// Newton interpolation: the polynomial of degree `< xs.len()` through
    /// the points `(xs[k], ys[k])` (distinct abscissae).
    pub fn interpolate(xs: &[u64], ys: &[u64], p: u64) -> Vec<u64> {
        let n = xs.len();
        let mut coef = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let num = submod(coef[i], coef[i - 1], p);
                let den = submod(xs[i], xs[i - j], p);
                coef[i] = mulmod(num, invmod(den, p).expect("distinct points"), p);
            }
        }
        let mut out: Vec<u64> = vec![];
        for k in (0..n).rev() {
            out = mul(&out, &[submod(0, xs[k], p), 1], p);
            out = add(&out, &[coef[k]], p);
        }
        out
    }
}

/// Polynomials over ℚ.
pub mod q {
    use num_traits::{One, Zero};

    use crate::algebra::poly::trim_rat;
    use crate::algebra::rat::Rat;

    pub fn add(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let z = Rat::zero();
        let mut out: Vec<Rat> = (0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect();
        trim_rat(&mut out);
        out
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let z = Rat::zero();
        let mut out: Vec<Rat> = (0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect();
        trim_rat(&mut out);
        out
    }

    pub fn scale(a: &[Rat], c: &Rat) -> Vec<Rat> {
        let mut out: Vec<Rat> = a.iter().map(|v| v * c).collect();
        trim_rat(&mut out);
        out
    }

    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        trim_rat(&mut out);
        out
    }

    /// Quotient and remainder; `b` must be nonzero.
    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        assert!(!b.is_empty(), "division by zero polynomial");
        if a.len() < b.len() {
            return (Vec::new(), a.to_vec());
        }
        let inv = b.last().unwrap().recip();
        let mut r = a.to_vec();
        let db = b.len() - 1;
        let mut q = vec![Rat::zero(); a.len() - db];
        for k in (0..q.len()).rev() {
            let c = &r[k + db] * &inv;
            if !c.is_zero() {
                for (j, bj) in b.iter().enumerate() {
                    r[k + j] -= &c * bj;
                }
            }
            q[k] = c;
        }
        r.truncate(db);
        trim_rat(&mut r);
        trim_rat(&mut q);
        (q, r)
    }

    pub fn monic(a: &[Rat]) -> Vec<Rat> {
        match a.last() {
            None => Vec::new(),
            Some(lc) => scale(a, &lc.recip()),
        }
    }

    /// Extended gcd: `(g, s, t)` with `s·a + t·b = g`, `g` monic.
    pub fn xgcd(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>, Vec<Rat>) {
        let (mut r0, mut r1) = (a.to_vec(), b.to_vec());
        let (mut s0, mut s1) = (vec![Rat::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![Rat::one()]);
        while !r1.is_empty() {
            let (qq, r) = divrem(&r0, &r1);
            let s2 = sub(&s0, &mul(&qq, &s1));
            let t2 = sub(&t0, &mul(&qq, &t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.last() {
            None => (r0, s0, t0),
            Some(lc) => {
                let inv = lc.recip();
                (scale(&r0, &inv), scale(&s0, &inv), scale(&t0, &inv))
            }
        }
    }

    pub fn derivative(a: &[Rat]) -> Vec<Rat> {
        let mut out: Vec<Rat> = a.iter().enumerate().skip(1).map(|(i, c)| c * Rat::from_integer((i as i64).into())).collect();
        trim_rat(&mut out);
        out
    }

    pub fn eval(a: &[Rat], x: &Rat) -> Rat {
        a.iter().rev().fold(Rat::zero(), |acc, c| acc * x + c)
    }

    /// Taylor shift `a(t + c)`.
    pub fn shift(a: &[Rat], c: &Rat) -> Vec<Rat> {
        let mut out = a.to_vec();
        let n = out.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let add = &out[j + 1] * c;
                out[j] += add;
            }
        }
        trim_rat(&mut out);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, Rat};

    #[test]
    fn zp_gcd_and_interpolation() {
        let p = 101;
        let a = zp::mul(&[1, 1], &[3, 0, 1], p); // (t+1)(t²+3)
        let b = zp::mul(&[1, 1], &[5, 1], p); // (t+1)(t+5)
        assert_eq!(zp::gcd(&a, &b, p), vec![1, 1]);
        let (g, s, t) = zp::xgcd(&a, &b, p);
        assert_eq!(zp::add(&zp::mul(&s, &a, p), &zp::mul(&t, &b, p), p), g);
        let xs = [0, 1, 2, 3];
        let ys: Vec<u64> = xs.iter().map(|&x| zp::eval(&a, x, p)).collect();
        assert_eq!(zp::interpolate(&xs, &ys, p), a);
    }

    #[test]
    fn q_shift() {
        let a: Vec<Rat> = vec![rat(1), rat(0), rat(1)]; // 1 + t²
        assert_eq!(q::shift(&a, &rat(2)), vec![rat(5), rat(4), rat(1)]);
    }
}
