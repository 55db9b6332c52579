//! Truncated flow jets: the trajectory `y⋆(x)` through a base point together
//! with its first three variational derivatives `y₁⋆, y₂⋆, y₃⋆` with respect
//! to the initial value, normalized by `(y, y₁, y₂, y₃)(x₀) = (y₀, 1, 0, 0)`.
//!
//! The trajectory solves `A(x, y)·y′ = B(x, y)` and the variational series
//! solve, with `gₖ = ∂ᵧᵏ(B/A)(x, y⋆)`,
//!
//! ```text
//! y₁′ = y₁·g₁
//! y₂′ = y₂·g₁ + y₁²·g₂
//! y₃′ = y₃·g₁ + 3·y₂·y₁·g₂ + y₁³·g₃
//! ```
//!
//! The trajectory is produced by a term-by-term recurrence and the other
//! three by integrating-factor quadratures against `y₁ = exp(∫g₁)`. All
//! routines are generic over [`Scalar`], so the same code yields exact jets
//! over ℚ and their images modulo a prime.

use thiserror::Error;

use crate::algebra::poly::BiPoly;
use crate::algebra::rat::Rat;
use crate::algebra::ratfunc::RatFunc;
use crate::algebra::scalar::{Fp, Scalar};
use crate::algebra::series::{eval_with_powers, Series, SeriesError};
use crate::algebra::VectorField;
use crate::builders::IntegralClass;

/// Initial condition `(x₀, y₀)` of the trajectory.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BasePoint {
    pub x0: Rat,
    pub y0: Rat,
}

impl BasePoint {
    pub fn new(x0: Rat, y0: Rat) -> Self {
        BasePoint { x0, y0 }
    }

    /// Integer base point.
    pub fn int(x0: i64, y0: i64) -> Self {
        BasePoint { x0: Rat::from_integer(x0.into()), y0: Rat::from_integer(y0.into()) }
    }
}

impl std::fmt::Display for BasePoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}, {})", self.x0, self.y0)
    }
}

/// Failures of jet construction.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FlowError {
    #[error("A vanishes at the base point")]
    BasePointOnA,
    #[error("jet level {0} is outside 0..=3")]
    InvalidLevel(usize),
    /// Only for prime-field jets: the prime divides a denominator or `A(x₀, y₀)`.
    #[error("the prime is unlucky for this base point")]
    UnluckyPrime,
    #[error("a value along the jet is not representable: {0}")]
    Series(#[from] SeriesError),
}

/// Solution jet of the prolonged system at level `r`.
#[derive(Clone, Debug, PartialEq)]
pub struct FlowJet<F: Scalar> {
    pub base: BasePoint,
    /// Highest variational order present (`0..=3`).
    pub level: usize,
    pub y: Series<F>,
    pub y1: Option<Series<F>>,
    pub y2: Option<Series<F>>,
    pub y3: Option<Series<F>>,
    /// Truncation order shared by every series.
    pub sigma: usize,
}

impl<F: Scalar> FlowJet<F> {
    /// The jet truncated to a lower order.
    pub fn truncate(&self, sigma: usize) -> Self {
        let t = |s: &Option<Series<F>>| s.as_ref().map(|s| s.truncate(sigma));
        FlowJet {
            base: self.base.clone(),
            level: self.level,
            y: self.y.truncate(sigma),
            y1: t(&self.y1),
            y2: t(&self.y2),
            y3: t(&self.y3),
            sigma: sigma.min(self.sigma),
        }
    }

    pub fn ctx(&self) -> &F::Ctx {
        &self.y.ctx
    }
}

/// The truncation order `min(r+1, 3)·(N+1)(N+2)/2`: the dimension of the
/// search space at level `r`, and hence the contact order that forces an
/// invariant to vanish identically.
pub fn jet_order(n: u32, level: usize) -> usize {
    let n = n as usize;
    (level + 1).min(3) * (n + 1) * (n + 2) / 2
}

/// Exact jet over ℚ for degree bound `n` at level `r`.
pub fn flow_jet(vf: &VectorField, base: &BasePoint, n: u32, level: usize) -> Result<FlowJet<Rat>, FlowError> {
    flow_jet_to_order(vf, base, jet_order(n, level), level, &())
}

/// Image of the jet modulo the prime `p`.
pub fn flow_jet_mod(vf: &VectorField, base: &BasePoint, n: u32, level: usize, p: u64) -> Result<FlowJet<Fp>, FlowError> {
    flow_jet_to_order(vf, base, jet_order(n, level), level, &p)
}

/// Jet of an explicit truncation order over any coefficient field.
pub fn flow_jet_to_order<F: Scalar>(
    vf: &VectorField,
    base: &BasePoint,
    sigma: usize,
    level: usize,
    ctx: &F::Ctx,
) -> Result<FlowJet<F>, FlowError> {
    if level > 3 {
        return Err(FlowError::InvalidLevel(level));
    }
    if vf.a().eval(&base.x0, &base.y0).is_zero() {
        return Err(FlowError::BasePointOnA);
    }
    let unlucky = |e: SeriesError| match e {
        SeriesError::NotInvertible | SeriesError::NotRepresentable => FlowError::UnluckyPrime,
        other => FlowError::Series(other),
    };
    let (y, mut powers, alpha) = trajectory(vf, base, sigma, ctx)?;
    let mut jet = FlowJet { base: base.clone(), level, y, y1: None, y2: None, y3: None, sigma };
    if level == 0 {
        return Ok(jet);
    }
    let needed = (1..=level).map(|k| vf.dy_ba_numerator(k).deg_y().unwrap_or(0)).max().unwrap_or(0) as usize;
    while powers.len() <= needed {
        let next = powers[powers.len() - 1].mul_unchecked(&jet.y);
        powers.push(next);
    }
    let inv_alpha = alpha.inverse().map_err(unlucky)?;
    let inv_alpha2 = inv_alpha.mul_unchecked(&inv_alpha);

    let w1 = eval_with_powers(vf.dy_ba_numerator(1), &powers).map_err(unlucky)?;
    let g1 = w1.mul_unchecked(&inv_alpha2);
    let y1 = Series::exp_of_integral(&g1).map_err(unlucky)?;
    if level >= 2 {
        let inv_alpha3 = inv_alpha2.mul_unchecked(&inv_alpha);
        let w2 = eval_with_powers(vf.dy_ba_numerator(2), &powers).map_err(unlucky)?;
        let g2 = w2.mul_unchecked(&inv_alpha3);
        let u = y1.mul_unchecked(&g2).integrate().map_err(unlucky)?;
        let y2 = y1.mul_unchecked(&u);
        if level >= 3 {
            let inv_alpha4 = inv_alpha2.mul_unchecked(&inv_alpha2);
            let w3 = eval_with_powers(vf.dy_ba_numerator(3), &powers).map_err(unlucky)?;
            let g3 = w3.mul_unchecked(&inv_alpha4);
            let three = F::from_i64(ctx, 3);
            let integrand = y2.mul_unchecked(&g2).scale(&three).add_unchecked(&y1.mul_unchecked(&y1).mul_unchecked(&g3));
            let v = integrand.integrate().map_err(unlucky)?;
            jet.y3 = Some(y1.mul_unchecked(&v));
        }
        jet.y2 = Some(y2);
    }
    jet.y1 = Some(y1);
    Ok(jet)
}

/// Terms of `p(x₀ + t, y)` as `(i, j, c)` for `tⁱ yʲ`.
fn shifted_terms<F: Scalar>(p: &BiPoly, x0: &Rat, ctx: &F::Ctx) -> Result<Vec<(usize, usize, F)>, FlowError> {
    p.translate(x0, &Rat::from_integer(0.into()))
        .terms()
        .map(|(&(i, j), c)| Ok((i as usize, j as usize, F::from_rat(ctx, c).ok_or(FlowError::UnluckyPrime)?)))
        .collect()
}

/// Solves `A·y′ = B` term by term. Returns `y`, the powers `[1, y, …, y^e]`
/// with `e = max(deg_y A, deg_y B)`, and `α = A(x, y⋆)`.
#[allow(clippy::type_complexity)]
fn trajectory<F: Scalar>(
    vf: &VectorField,
    base: &BasePoint,
    sigma: usize,
    ctx: &F::Ctx,
) -> Result<(Series<F>, Vec<Series<F>>, Series<F>), FlowError> {
    let a_terms = shifted_terms::<F>(vf.a(), &base.x0, ctx)?;
    let b_terms = shifted_terms::<F>(vf.b(), &base.x0, ctx)?;
    let e = vf.a().deg_y().unwrap_or(0).max(vf.b().deg_y().unwrap_or(0)) as usize;
    let zero = F::zero(ctx);
    let mut y = vec![zero.clone(); sigma];
    let mut pw: Vec<Vec<F>> = vec![vec![zero.clone(); sigma]; e + 1];
    let mut alpha = vec![zero.clone(); sigma];
    let mut q = vec![zero.clone(); sigma];
    if sigma > 0 {
        y[0] = F::from_rat(ctx, &base.y0).ok_or(FlowError::UnluckyPrime)?;
        pw[0][0] = F::one(ctx);
    }
    let mut inv_a0 = None;
    for n in 0..sigma {
        // Coefficient n of every power, now that y_n is known.
        for j in 1..=e {
            let (lo, hi) = pw.split_at_mut(j);
            let prev = &lo[j - 1];
            let mut acc = zero.clone();
            for k in 0..=n {
                acc.add_mul(&y[k], &prev[n - k]);
            }
            hi[0][n] = acc;
        }
        let coeff_at = |terms: &[(usize, usize, F)]| {
            let mut acc = zero.clone();
            for (i, j, c) in terms {
                if *i <= n {
                    acc.add_mul(c, &pw[*j][n - i]);
                }
            }
            acc
        };
        alpha[n] = coeff_at(&a_terms);
        let beta_n = coeff_at(&b_terms);
        if n == 0 {
            inv_a0 = Some(alpha[0].inv().ok_or(FlowError::UnluckyPrime)?);
        }
        // q·α = β  ⇒  q_n = (β_n − Σ_{k≥1} α_k q_{n−k}) / α₀
        let mut acc = beta_n;
        for k in 1..=n {
            acc = acc.sub(&alpha[k].mul(&q[n - k]));
        }
        q[n] = acc.mul(inv_a0.as_ref().expect("set at n = 0"));
        if n + 1 < sigma {
            let inv = F::from_i64(ctx, (n + 1) as i64).inv().ok_or(FlowError::UnluckyPrime)?;
            y[n + 1] = q[n].mul(&inv);
        }
    }
    let center = base.x0.clone();
    let mk = |c: Vec<F>| Series { center: center.clone(), coeffs: c, ctx: ctx.clone() };
    let powers = pw.into_iter().map(&mk).collect();
    Ok((mk(y), powers, mk(alpha)))
}

/// True iff every equation of the prolonged system, cleared of the powers of
/// `A(x, y⋆)`, holds to order `σ − 1` and the initial conditions are
/// `(y₀, 1, 0, 0)`.
pub fn verify_jet<F: Scalar>(vf: &VectorField, jet: &FlowJet<F>) -> bool {
    verify_inner(vf, jet).unwrap_or(false)
}

fn verify_inner<F: Scalar>(vf: &VectorField, jet: &FlowJet<F>) -> Result<bool, SeriesError> {
    let ctx = jet.ctx().clone();
    let sigma = jet.sigma;
    if sigma == 0 {
        return Ok(true);
    }
    if jet.y.order() != sigma || F::from_rat(&ctx, &jet.base.y0).as_ref() != Some(jet.y.coeff(0)) {
        return Ok(false);
    }
    let vanishes = |s: &Series<F>| s.coeffs[..sigma - 1].iter().all(|c| c.is_zero());
    let mut need = vf.a().deg_y().unwrap_or(0).max(vf.b().deg_y().unwrap_or(0));
    for k in 1..=jet.level {
        need = need.max(vf.dy_ba_numerator(k).deg_y().unwrap_or(0));
    }
    let powers = crate::algebra::series::series_powers(&jet.y, need as usize);
    let a = eval_with_powers(vf.a(), &powers)?;
    let b = eval_with_powers(vf.b(), &powers)?;
    if !vanishes(&a.mul_unchecked(&jet.y.derivative()).sub_unchecked(&b)) {
        return Ok(false);
    }
    if jet.level == 0 {
        return Ok(true);
    }
    let (one, zero) = (F::one(&ctx), F::zero(&ctx));
    let Some(y1) = &jet.y1 else { return Ok(false) };
    if y1.order() != sigma || y1.coeff(0) != &one {
        return Ok(false);
    }
    let a2 = a.mul_unchecked(&a);
    let w1 = eval_with_powers(vf.dy_ba_numerator(1), &powers)?;
    if !vanishes(&a2.mul_unchecked(&y1.derivative()).sub_unchecked(&w1.mul_unchecked(y1))) {
        return Ok(false);
    }
    if jet.level == 1 {
        return Ok(true);
    }
    let Some(y2) = &jet.y2 else { return Ok(false) };
    if y2.order() != sigma || y2.coeff(0) != &zero {
        return Ok(false);
    }
    let a3 = a2.mul_unchecked(&a);
    let w2 = eval_with_powers(vf.dy_ba_numerator(2), &powers)?;
    let y1sq = y1.mul_unchecked(y1);
    let res2 =
        a3.mul_unchecked(&y2.derivative()).sub_unchecked(&a.mul_unchecked(&w1).mul_unchecked(y2)).sub_unchecked(&w2.mul_unchecked(&y1sq));
    if !vanishes(&res2) {
        return Ok(false);
    }
    if jet.level == 2 {
        return Ok(true);
    }
    let Some(y3) = &jet.y3 else { return Ok(false) };
    if y3.order() != sigma || y3.coeff(0) != &zero {
        return Ok(false);
    }
    let a4 = a2.mul_unchecked(&a2);
    let w3 = eval_with_powers(vf.dy_ba_numerator(3), &powers)?;
    let three = F::from_i64(&ctx, 3);
    let res3 = a4
        .mul_unchecked(&y3.derivative())
        .sub_unchecked(&a2.mul_unchecked(&w1).mul_unchecked(y3))
        .sub_unchecked(&a.mul_unchecked(&w2).mul_unchecked(y2).mul_unchecked(y1).scale(&three))
        .sub_unchecked(&w3.mul_unchecked(&y1sq).mul_unchecked(y1));
    Ok(vanishes(&res3))
}

/// The differential invariant attached to a canonical equation, evaluated
/// along the jet:
///
/// | class | invariant |
/// |---|---|
/// | rational | `F(x, y⋆)` |
/// | k-Darbouxian (`F = Gᵏ`-form) | `F(x, y⋆)·y₁⋆ᵏ` |
/// | Liouvillian | `F(x, y⋆)·y₁⋆ + y₂⋆/y₁⋆` |
/// | Riccati | `4F(x, y⋆)·y₁⋆² − 2y₃⋆/y₁⋆ + 3y₂⋆²/y₁⋆²` |
///
/// When `F` satisfies the class identity the result is a constant series.
pub fn casale_invariant<F: Scalar>(class: IntegralClass, f: &RatFunc, jet: &FlowJet<F>) -> Result<Series<F>, FlowError> {
    if jet.level < class.level() {
        return Err(FlowError::InvalidLevel(class.level()));
    }
    let deg = f.num().deg_y().unwrap_or(0).max(f.den().deg_y().unwrap_or(0));
    let powers = crate::algebra::series::series_powers(&jet.y, deg as usize);
    let num = eval_with_powers(f.num(), &powers)?;
    let den = eval_with_powers(f.den(), &powers)?;
    let fs = num.mul_unchecked(&den.inverse()?);
    let ctx = jet.ctx();
    let get = |s: &Option<Series<F>>| s.clone().ok_or(FlowError::InvalidLevel(class.level()));
    Ok(match class {
        IntegralClass::Rational => fs,
        IntegralClass::Darbouxian(k) => {
            let y1 = get(&jet.y1)?;
            let mut out = fs;
            for _ in 0..k {
                out = out.mul_unchecked(&y1);
            }
            out
        }
        IntegralClass::Liouvillian => {
            let (y1, y2) = (get(&jet.y1)?, get(&jet.y2)?);
            fs.mul_unchecked(&y1).add_unchecked(&y2.mul_unchecked(&y1.inverse()?))
        }
        IntegralClass::Riccati => {
            let (y1, y2, y3) = (get(&jet.y1)?, get(&jet.y2)?, get(&jet.y3)?);
            let inv1 = y1.inverse()?;
            let t1 = fs.mul_unchecked(&y1).mul_unchecked(&y1).scale(&F::from_i64(ctx, 4));
            let t2 = y3.mul_unchecked(&inv1).scale(&F::from_i64(ctx, 2));
            let t3 = y2.mul_unchecked(&y2).mul_unchecked(&inv1).mul_unchecked(&inv1).scale(&F::from_i64(ctx, 3));
            t1.sub_unchecked(&t2).add_unchecked(&t3)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::{rat, ratio};

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    #[test]
    fn constant_field_jet() {
        let vf = VectorField::new(BiPoly::one(), BiPoly::one()).unwrap();
        let jet = flow_jet(&vf, &BasePoint::int(0, 0), 2, 3).unwrap();
        assert_eq!(jet.sigma, 18);
        assert_eq!(jet.y.coeffs[1], rat(1));
        assert!(jet.y.coeffs.iter().enumerate().all(|(i, c)| i == 1 || c == &rat(0)));
        assert!(jet.y1.as_ref().unwrap().is_constant());
        assert!(jet.y2.as_ref().unwrap().is_zero() && jet.y3.as_ref().unwrap().is_zero());
        assert!(verify_jet(&vf, &jet));
    }

    #[test]
    fn exponential_jet() {
        let vf = VectorField::new(BiPoly::one(), BiPoly::y()).unwrap();
        let jet = flow_jet(&vf, &BasePoint::int(0, 1), 3, 1).unwrap();
        let mut fact = rat(1);
        for n in 0..jet.sigma {
            if n > 0 {
                fact *= rat(n as i64);
            }
            assert_eq!(jet.y.coeffs[n], fact.recip());
            assert_eq!(jet.y1.as_ref().unwrap().coeffs[n], fact.recip());
        }
    }

    #[test]
    fn first_coefficient_is_slope() {
        let a = p(&[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, -4), (0, 1, 4), (0, 0, -2)]);
        let b = p(&[(2, 0, 1), (1, 1, 2), (0, 2, 1), (1, 0, 4), (0, 1, -4), (0, 0, -2)]);
        let vf = VectorField::new(a, b).unwrap();
        let jet = flow_jet(&vf, &BasePoint::int(1, 8), 2, 3).unwrap();
        assert_eq!(jet.y.coeffs[0], rat(8));
        assert_eq!(jet.y.coeffs[1], ratio(51, 107));
        assert!(verify_jet(&vf, &jet));
        let mut bad = jet.clone();
        bad.y2.as_mut().unwrap().coeffs[3] += rat(1);
        assert!(!verify_jet(&vf, &bad));
        let mut bad = jet.clone();
        bad.y1.as_mut().unwrap().coeffs[0] = rat(2);
        assert!(!verify_jet(&vf, &bad));
    }

    #[test]
    fn modular_jet_is_reduction_of_exact_jet() {
        let vf = VectorField::new(p(&[(1, 0, 1), (0, 0, 2)]), p(&[(0, 2, 1), (1, 0, -1)])).unwrap();
        let base = BasePoint::int(1, 2);
        let exact = flow_jet(&vf, &base, 2, 3).unwrap();
        let prime = 1_000_000_007u64;
        let modular = flow_jet_mod(&vf, &base, 2, 3, prime).unwrap();
        for (e, m) in exact.y3.unwrap().coeffs.iter().zip(&modular.y3.as_ref().unwrap().coeffs) {
            assert_eq!(Fp::from_rat(&prime, e).unwrap(), *m);
        }
        assert!(verify_jet(&vf, &modular));
    }

    #[test]
    fn base_point_on_a_is_rejected() {
        let vf = VectorField::new(BiPoly::x(), BiPoly::y()).unwrap();
        assert_eq!(flow_jet(&vf, &BasePoint::int(0, 3), 1, 0).unwrap_err(), FlowError::BasePointOnA);
    }
}
