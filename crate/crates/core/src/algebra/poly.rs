//! Exact bivariate polynomials over ℚ.
//!
//! Terms are stored sparsely, keyed by the exponent pair `(i, j)` of
//! `x^i y^j`; zero coefficients are never stored. The fixed monomial order
//! is graded lexicographic with `x > y`, used for leading terms and every
//! normalization.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::rat::{format_rat, gcd_integers, lcm_denominators, Rat};

/// Exponent pair `(i, j)` of the monomial `x^i y^j`.
pub type Monomial = (u32, u32);

/// Compares monomials in graded lexicographic order with `x > y`.
pub fn grlex_cmp(a: &Monomial, b: &Monomial) -> Ordering {
    (a.0 + a.1, a.0).cmp(&(b.0 + b.1, b.0))
}

/// Bivariate polynomial with rational coefficients.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct BiPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl BiPoly {
    pub fn zero() -> Self {
        BiPoly::default()
    }

    pub fn one() -> Self {
        BiPoly::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        BiPoly::monomial(0, 0, c)
    }

    /// The polynomial `x`.
    pub fn x() -> Self {
        BiPoly::monomial(1, 0, Rat::one())
    }

    /// The polynomial `y`.
    pub fn y() -> Self {
        BiPoly::monomial(0, 1, Rat::one())
    }

    /// `c · x^i y^j`.
    pub fn monomial(i: u32, j: u32, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert((i, j), c);
        }
        BiPoly { terms }
    }

    /// Builds a polynomial from `(i, j, c)` triples, summing repeated monomials.
    pub fn from_terms(terms: impl IntoIterator<Item = (u32, u32, Rat)>) -> Self {
        let mut p = BiPoly::zero();
        for (i, j, c) in terms {
            p.add_term((i, j), c);
        }
        p
    }

    /// Builds a polynomial from integer-coefficient triples.
    pub fn from_int_terms(terms: &[(u32, u32, i64)]) -> Self {
        BiPoly::from_terms(terms.iter().map(|&(i, j, c)| (i, j, Rat::from_integer(c.into()))))
    }

    /// Adds `c · x^i y^j` in place.
    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v += c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for constants, including zero.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Total degree; `None` stands for the degree −∞ of the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, j)| i + j).max()
    }

    /// Total degree with the zero polynomial mapped to `-1`.
    pub fn degree_or_neg(&self) -> i64 {
        self.degree().map_or(-1, i64::from)
    }

    /// Degree in `x` (`None` for zero).
    pub fn deg_x(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.0).max()
    }

    /// Degree in `y` (`None` for zero).
    pub fn deg_y(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.1).max()
    }

    /// Coefficient of `x^i y^j`.
    pub fn coeff(&self, i: u32, j: u32) -> Rat {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rat::zero)
    }

    /// Iterates over `(monomial, coefficient)` in increasing `(i, j)` order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Terms sorted in decreasing graded-lex order.
    pub fn terms_grlex_desc(&self) -> Vec<(Monomial, Rat)> {
        let mut v: Vec<(Monomial, Rat)> = self.terms.iter().map(|(m, c)| (*m, c.clone())).collect();
        v.sort_by(|a, b| grlex_cmp(&b.0, &a.0));
        v
    }

    /// Leading monomial and coefficient in graded-lex order.
    pub fn leading_term(&self) -> Option<(Monomial, &Rat)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0)).map(|(m, c)| (*m, c))
    }

    pub fn leading_coeff(&self) -> Option<&Rat> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rat {
        self.coeff(0, 0)
    }

    pub fn scale(&self, c: &Rat) -> BiPoly {
        if c.is_zero() {
            return BiPoly::zero();
        }
        BiPoly { terms: self.terms.iter().map(|(m, v)| (*m, v * c)).collect() }
    }

    /// Multiplies by `x^i y^j`.
    pub fn shift_monomial(&self, i: u32, j: u32) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, v)| ((m.0 + i, m.1 + j), v.clone())).collect() }
    }

    /// Scales so that the graded-lex leading coefficient is one (zero stays zero).
    pub fn monic(&self) -> BiPoly {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.recip()),
            None => BiPoly::zero(),
        }
    }

    /// Writes `self = c · prim` with `prim` having coprime integer coefficients
    /// and a positive graded-lex leading coefficient. Zero maps to `(0, 0)`.
    pub fn primitive_integer(&self) -> (Rat, BiPoly) {
        if self.is_zero() {
            return (Rat::zero(), BiPoly::zero());
        }
        let den = lcm_denominators(self.terms.values());
        let ints: Vec<BigInt> = self.terms.values().map(|c| (c * Rat::from_integer(den.clone())).to_integer()).collect();
        let mut g = gcd_integers(ints.iter());
        if self.leading_coeff().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        let content = Rat::new(g.clone(), den);
        let terms = self.terms.keys().zip(ints).map(|(m, v)| (*m, Rat::from_integer(v / &g))).collect();
        (content, BiPoly { terms })
    }

    /// Primitive integer form (see [`BiPoly::primitive_integer`]).
    pub fn primitive(&self) -> BiPoly {
        self.primitive_integer().1
    }

    /// Partial derivative in `x`.
    pub fn dx(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.0 > 0).map(|(m, c)| ((m.0 - 1, m.1), c * Rat::from_integer(m.0.into()))).collect(),
        }
    }

    /// Partial derivative in `y`.
    pub fn dy(&self) -> BiPoly {
        BiPoly {
            terms: self.terms.iter().filter(|(m, _)| m.1 > 0).map(|(m, c)| ((m.0, m.1 - 1), c * Rat::from_integer(m.1.into()))).collect(),
        }
    }

    /// Non-negative integer power.
    pub fn pow(&self, e: u32) -> BiPoly {
        let mut acc = BiPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a rational point.
    pub fn eval(&self, x: &Rat, y: &Rat) -> Rat {
        let (dx, dy) = (self.deg_x().unwrap_or(0), self.deg_y().unwrap_or(0));
        let xp = powers(x, dx);
        let yp = powers(y, dy);
        self.terms.iter().fold(Rat::zero(), |acc, (m, c)| acc + c * &xp[m.0 as usize] * &yp[m.1 as usize])
    }

    /// Substitutes `x = x0` and returns the result as coefficients in `y`.
    pub fn eval_x(&self, x0: &Rat) -> Vec<Rat> {
        let dy = self.deg_y().map_or(0, |d| d as usize + 1);
        let xp = powers(x0, self.deg_x().unwrap_or(0));
        let mut out = vec![Rat::zero(); dy];
        for (m, c) in &self.terms {
            out[m.1 as usize] += c * &xp[m.0 as usize];
        }
        trim_rat(&mut out);
        out
    }

    /// Substitutes `y = y0` and returns the result as coefficients in `x`.
    pub fn eval_y(&self, y0: &Rat) -> Vec<Rat> {
        self.swap_xy().eval_x(y0)
    }

    /// Translation `p(x + x0, y + y0)`.
    pub fn translate(&self, x0: &Rat, y0: &Rat) -> BiPoly {
        let (dx, dy) = (self.deg_x().unwrap_or(0), self.deg_y().unwrap_or(0));
        let xp = powers(x0, dx);
        let yp = powers(y0, dy);
        let bx = binomials(dx);
        let by = binomials(dy);
        let mut out = BiPoly::zero();
        for (&(i, j), c) in &self.terms {
            for a in 0..=i {
                let cx = c * Rat::from_integer(bx[i as usize][a as usize].clone()) * &xp[(i - a) as usize];
                if cx.is_zero() {
                    continue;
                }
                for b in 0..=j {
                    let v = &cx * Rat::from_integer(by[j as usize][b as usize].clone()) * &yp[(j - b) as usize];
                    out.add_term((a, b), v);
                }
            }
        }
        out
    }

    /// Exchanges the roles of `x` and `y`.
    pub fn swap_xy(&self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, c)| ((m.1, m.0), c.clone())).collect() }
    }

    /// Univariate polynomial in `x` (coefficients listed from degree 0), or
    /// `None` when `y` occurs.
    pub fn as_univariate_x(&self) -> Option<Vec<Rat>> {
        if self.terms.keys().any(|m| m.1 != 0) {
            return None;
        }
        let mut v = vec![Rat::zero(); self.deg_x().map_or(0, |d| d as usize + 1)];
        for (m, c) in &self.terms {
            v[m.0 as usize] = c.clone();
        }
        Some(v)
    }

    /// Polynomial in `x` from its coefficient list.
    pub fn from_univariate_x(coeffs: &[Rat]) -> BiPoly {
        BiPoly::from_terms(coeffs.iter().enumerate().map(|(i, c)| (i as u32, 0, c.clone())))
    }

    /// Polynomial in `y` from its coefficient list.
    pub fn from_univariate_y(coeffs: &[Rat]) -> BiPoly {
        BiPoly::from_terms(coeffs.iter().enumerate().map(|(j, c)| (0, j as u32, c.clone())))
    }

    /// Coefficients with respect to `x`: entry `i` is the polynomial in `y`
    /// (as a coefficient list) multiplying `x^i`.
    pub fn coeffs_in_x(&self) -> Vec<Vec<Rat>> {
        let dx = self.deg_x().map_or(0, |d| d as usize + 1);
        let mut out: Vec<Vec<Rat>> = vec![Vec::new(); dx];
        for (m, c) in &self.terms {
            let row = &mut out[m.0 as usize];
            if row.len() <= m.1 as usize {
                row.resize(m.1 as usize + 1, Rat::zero());
            }
            row[m.1 as usize] = c.clone();
        }
        out
    }

    /// Inverse of [`BiPoly::coeffs_in_x`].
    pub fn from_coeffs_in_x(rows: &[Vec<Rat>]) -> BiPoly {
        let mut p = BiPoly::zero();
        for (i, row) in rows.iter().enumerate() {
            for (j, c) in row.iter().enumerate() {
                p.add_term((i as u32, j as u32), c.clone());
            }
        }
        p
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`.
    pub fn exact_div(&self, d: &BiPoly) -> Option<BiPoly> {
        let (lm, lc) = d.leading_term()?;
        let lc_inv = lc.recip();
        let mut rem = self.clone();
        let mut quo = BiPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            if m.0 < lm.0 || m.1 < lm.1 {
                return None;
            }
            let (qi, qj) = (m.0 - lm.0, m.1 - lm.1);
            let qc = c * &lc_inv;
            for (dm, dc) in &d.terms {
                rem.add_term((dm.0 + qi, dm.1 + qj), -(dc * &qc));
            }
            quo.add_term((qi, qj), qc);
        }
        Some(quo)
    }

    /// True when `d` divides `self` exactly.
    pub fn divisible_by(&self, d: &BiPoly) -> bool {
        self.exact_div(d).is_some()
    }

    /// Largest absolute numerator/denominator bit size among coefficients.
    pub fn max_coeff_bits(&self) -> u64 {
        self.terms.values().map(|c| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }
}

/// `[1, v, v², …, v^n]`.
pub fn powers(v: &Rat, n: u32) -> Vec<Rat> {
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(Rat::one());
    for k in 1..=n as usize {
        let next = &out[k - 1] * v;
        out.push(next);
    }
    out
}

/// Pascal triangle rows `0..=n`.
pub fn binomials(n: u32) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n as usize + 1);
    for i in 0..=n as usize {
        let mut row = vec![BigInt::one(); i + 1];
        for k in 1..i {
            row[k] = &rows[i - 1][k - 1] + &rows[i - 1][k];
        }
        rows.push(row);
    }
    rows
}

/// Drops trailing zeros of a coefficient list.
pub fn trim_rat(v: &mut Vec<Rat>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

impl<'a> Add<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let mut out = self.clone();
        for (m, c) in &o.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a BiPoly> for &'a BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let m = (m1.0 + m2.0, m1.1 + m2.1);
                let v = c1 * c2;
                match acc.get_mut(&m) {
                    Some(e) => *e += v,
                    None => {
                        acc.insert(m, v);
                    }
                }
            }
        }
        acc.retain(|_, c| !c.is_zero());
        BiPoly { terms: acc }
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly { terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect() }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr<BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $f(self, o: BiPoly) -> BiPoly {
                (&self).$f(&o)
            }
        }
        impl<'a> $tr<&'a BiPoly> for BiPoly {
            type Output = BiPoly;
            fn $f(self, o: &'a BiPoly) -> BiPoly {
                (&self).$f(o)
            }
        }
        impl<'a> $tr<BiPoly> for &'a BiPoly {
            type Output = BiPoly;
            fn $f(self, o: BiPoly) -> BiPoly {
                self.$f(&o)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        -&self
    }
}

impl fmt::Display for BiPoly {
    /// Prints in decreasing graded-lex order using the input grammar
    /// (`*` for products, `^` for powers, `p/q` for rational coefficients).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, ((i, j), c)) in self.terms_grlex_desc().into_iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || (i == 0 && j == 0) {
                factors.push(format_rat(&a));
            }
            for (var, e) in [("x", i), ("y", j)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BiPoly({self})")
    }
}
