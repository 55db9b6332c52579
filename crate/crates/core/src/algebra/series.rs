//! Truncated univariate power series in `t = x − x₀`.
//!
//! A [`Series`] stores exactly `order` coefficients; every operation
//! truncates at that order. The coefficient type is any [`Scalar`], so the
//! same code produces exact jets over ℚ and their images modulo a prime.

use thiserror::Error;

use super::poly::BiPoly;
use super::rat::Rat;
use super::scalar::Scalar;

/// Errors raised by series arithmetic.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("series are expanded about different centers")]
    CenterMismatch,
    #[error("series have different truncation orders ({0} vs {1})")]
    OrderMismatch(usize, usize),
    #[error("series is not invertible (zero constant term)")]
    NotInvertible,
    #[error("a coefficient is not representable in the target field")]
    NotRepresentable,
}

/// Power series `Σ c_i (x − center)^i` known modulo `(x − center)^order`.
#[derive(Clone, Debug, PartialEq)]
pub struct Series<F: Scalar> {
    pub center: Rat,
    pub coeffs: Vec<F>,
    pub ctx: F::Ctx,
}

impl<F: Scalar> Series<F> {
    /// The zero series of the given order.
    pub fn zero(center: Rat, order: usize, ctx: F::Ctx) -> Self {
        Series { center, coeffs: vec![F::zero(&ctx); order], ctx }
    }

    /// The constant series `c`.
    pub fn constant(center: Rat, order: usize, c: F, ctx: F::Ctx) -> Self {
        let mut s = Series::zero(center, order, ctx);
        if order > 0 {
            s.coeffs[0] = c;
        }
        s
    }

    /// Builds a series from its leading coefficients, padding with zeros.
    pub fn from_coeffs(center: Rat, order: usize, mut coeffs: Vec<F>, ctx: F::Ctx) -> Self {
        coeffs.resize(order, F::zero(&ctx));
        Series { center, coeffs, ctx }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeff(&self, i: usize) -> &F {
        &self.coeffs[i]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    fn check(&self, o: &Self) -> Result<(), SeriesError> {
        if self.center != o.center {
            return Err(SeriesError::CenterMismatch);
        }
        if self.order() != o.order() {
            return Err(SeriesError::OrderMismatch(self.order(), o.order()));
        }
        Ok(())
    }

    fn like(&self, coeffs: Vec<F>) -> Self {
        Series { center: self.center.clone(), coeffs, ctx: self.ctx.clone() }
    }

    pub fn add(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.add_unchecked(o))
    }

    pub fn sub(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.sub_unchecked(o))
    }

    pub fn mul(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.mul_unchecked(o))
    }

    /// Quotient `self / o`; the divisor needs an invertible constant term.
    pub fn div(&self, o: &Self) -> Result<Self, SeriesError> {
        self.check(o)?;
        Ok(self.mul_unchecked(&o.inverse()?))
    }

    pub(crate) fn add_unchecked(&self, o: &Self) -> Self {
        self.like(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.add(b)).collect())
    }

    pub(crate) fn sub_unchecked(&self, o: &Self) -> Self {
        self.like(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a.sub(b)).collect())
    }

    pub(crate) fn mul_unchecked(&self, o: &Self) -> Self {
        let n = self.order();
        let mut out = vec![F::zero(&self.ctx); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs[..n - i].iter().enumerate() {
                out[i + j].add_mul(a, b);
            }
        }
        self.like(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        self.like(self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn neg(&self) -> Self {
        self.like(self.coeffs.iter().map(|a| a.neg()).collect())
    }

    /// Multiplicative inverse (requires an invertible constant term).
    pub fn inverse(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        let mut out = vec![F::zero(&self.ctx); n];
        if n == 0 {
            return Ok(self.like(out));
        }
        let inv0 = self.coeffs[0].inv().ok_or(SeriesError::NotInvertible)?;
        out[0] = inv0.clone();
        for k in 1..n {
            let mut acc = F::zero(&self.ctx);
            for j in 1..=k {
                acc.add_mul(&self.coeffs[j], &out[k - j]);
            }
            out[k] = acc.mul(&inv0).neg();
        }
        Ok(self.like(out))
    }

    /// Antiderivative with zero constant term, truncated to the same order.
    pub fn integrate(&self) -> Result<Self, SeriesError> {
        let n = self.order();
        let mut out = vec![F::zero(&self.ctx); n];
        for k in 1..n {
            let inv = F::from_i64(&self.ctx, k as i64).inv().ok_or(SeriesError::NotRepresentable)?;
            out[k] = self.coeffs[k - 1].mul(&inv);
        }
        Ok(self.like(out))
    }

    /// Formal derivative; the top coefficient becomes unknown and is set to zero,
    /// so only the first `order − 1` coefficients are meaningful.
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = vec![F::zero(&self.ctx); n];
        for k in 1..n {
            out[k - 1] = self.coeffs[k].mul(&F::from_i64(&self.ctx, k as i64));
        }
        self.like(out)
    }

    /// `exp(∫ g)` with constant term one.
    pub fn exp_of_integral(g: &Self) -> Result<Self, SeriesError> {
        // e' = g·e, e(0) = 1  ⇒  k·e_k = Σ_{j<k} g_j e_{k-1-j}.
        let n = g.order();
        let mut e = vec![F::zero(&g.ctx); n];
        if n == 0 {
            return Ok(g.like(e));
        }
        e[0] = F::one(&g.ctx);
        for k in 1..n {
            let mut acc = F::zero(&g.ctx);
            for j in 0..k {
                acc.add_mul(&g.coeffs[j], &e[k - 1 - j]);
            }
            let inv = F::from_i64(&g.ctx, k as i64).inv().ok_or(SeriesError::NotRepresentable)?;
            e[k] = acc.mul(&inv);
        }
        Ok(g.like(e))
    }

    /// Truncation to a lower order.
    pub fn truncate(&self, order: usize) -> Self {
        self.like(self.coeffs[..order.min(self.order())].to_vec())
    }

    /// True when the series is constant modulo `t^order`.
    pub fn is_constant(&self) -> bool {
        self.coeffs.iter().skip(1).all(|c| c.is_zero())
    }
}

/// Substitutes a series for `y` in `p(x, y)`, with `x = center + t`.
pub fn series_eval<F: Scalar>(p: &BiPoly, y: &Series<F>) -> Result<Series<F>, SeriesError> {
    let powers = series_powers(y, p.deg_y().unwrap_or(0) as usize);
    eval_with_powers(p, &powers)
}

/// `[1, y, y², …, y^n]` truncated at the order of `y`.
pub fn series_powers<F: Scalar>(y: &Series<F>, n: usize) -> Vec<Series<F>> {
    let mut out = Vec::with_capacity(n + 1);
    out.push(Series::constant(y.center.clone(), y.order(), F::one(&y.ctx), y.ctx.clone()));
    for k in 1..=n {
        let next = out[k - 1].mul_unchecked(y);
        out.push(next);
    }
    out
}

/// Evaluates `p(center + t, y)` given precomputed powers of `y` (enough of them
/// to cover the `y`-degree of `p`).
pub fn eval_with_powers<F: Scalar>(p: &BiPoly, powers: &[Series<F>]) -> Result<Series<F>, SeriesError> {
    let y = &powers[0];
    let n = y.order();
    let shifted = p.translate(&y.center, &Rat::from_integer(0.into()));
    let mut out = vec![F::zero(&y.ctx); n];
    for (&(i, j), c) in shifted.terms() {
        let i = i as usize;
        if i >= n {
            continue;
        }
        let c = F::from_rat(&y.ctx, c).ok_or(SeriesError::NotRepresentable)?;
        let pw = &powers[j as usize];
        for k in 0..n - i {
            out[k + i].add_mul(&c, &pw.coeffs[k]);
        }
    }
    Ok(y.like(out))
}
