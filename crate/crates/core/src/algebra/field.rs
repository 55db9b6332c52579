//! Planar polynomial vector fields `ẋ = A(x, y)`, `ẏ = B(x, y)` and the
//! derivation `D₀ = A∂ₓ + B∂ᵧ`.

use std::fmt;

use num_traits::Zero;

use super::gcd::gcd;
use super::poly::BiPoly;
use super::rat::Rat;
use super::ratfunc::RatFunc;
use super::AlgebraError;

/// A planar polynomial vector field with coprime, nonzero components.
#[derive(Clone, PartialEq, Eq)]
pub struct VectorField {
    a: BiPoly,
    b: BiPoly,
    d: u32,
    /// Numerators `W_k` of `∂ᵧᵏ(B/A) = W_k / A^{k+1}` for `k = 1, 2, 3`.
    dy_numerators: [BiPoly; 3],
}

impl VectorField {
    /// Builds the field, rejecting zero components and non-coprime pairs.
    pub fn new(a: BiPoly, b: BiPoly) -> Result<Self, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::TrivialField);
        }
        let g = gcd(&a, &b);
        if !g.is_constant() {
            return Err(AlgebraError::NotCoprime(g.to_string()));
        }
        Ok(Self::build(a, b))
    }

    /// Builds the field after dividing both components by their gcd.
    ///
    /// The trajectories (and hence every first integral) are unchanged away
    /// from the common curve, which is what makes this reduction harmless.
    pub fn reduced(a: BiPoly, b: BiPoly) -> Result<Self, AlgebraError> {
        if a.is_zero() || b.is_zero() {
            return Err(AlgebraError::TrivialField);
        }
        let g = gcd(&a, &b);
        let (a, b) = if g.is_constant() { (a, b) } else { (a.exact_div(&g).expect("gcd divides"), b.exact_div(&g).expect("gcd divides")) };
        Ok(Self::build(a, b))
    }

    fn build(a: BiPoly, b: BiPoly) -> Self {
        let d = a.degree().unwrap_or(0).max(b.degree().unwrap_or(0));
        let (ay, by) = (a.dy(), b.dy());
        // ∂ᵧ(B/A) = (A·B_y − B·A_y)/A²
        let w1 = &(&a * &by) - &(&b * &ay);
        // ∂ᵧ(W/A^{k+1}) = (A·∂ᵧW − (k+1)·A_y·W)/A^{k+2}
        let next = |w: &BiPoly, k: i64| &(&a * &w.dy()) - &(&ay * w).scale(&Rat::from_integer((k + 1).into()));
        let w2 = next(&w1, 1);
        let w3 = next(&w2, 2);
        VectorField { a, b, d, dy_numerators: [w1, w2, w3] }
    }

    pub fn a(&self) -> &BiPoly {
        &self.a
    }

    pub fn b(&self) -> &BiPoly {
        &self.b
    }

    /// `max(deg A, deg B)`.
    pub fn d(&self) -> u32 {
        self.d
    }

    /// `D₀(f) = A·∂ₓf + B·∂ᵧf` on polynomials.
    pub fn apply_d0_poly(&self, f: &BiPoly) -> BiPoly {
        &(&self.a * &f.dx()) + &(&self.b * &f.dy())
    }

    /// `D₀(f)` on rational functions, in reduced form.
    pub fn apply_d0(&self, f: &RatFunc) -> RatFunc {
        let (n, d) = (f.num(), f.den());
        let top = &(d * &self.apply_d0_poly(n)) - &(n * &self.apply_d0_poly(d));
        RatFunc::new(top, d * d).expect("nonzero denominator")
    }

    /// Numerator `W_k` with `∂ᵧᵏ(B/A) = W_k / A^{k+1}` (not reduced), `k ∈ 1..=3`.
    pub fn dy_ba_numerator(&self, k: usize) -> &BiPoly {
        assert!((1..=3).contains(&k), "derivative order must be 1, 2 or 3");
        &self.dy_numerators[k - 1]
    }

    /// `∂ᵧᵏ(B/A)` in reduced form, `k ∈ 1..=3`.
    pub fn dy_ba(&self, k: usize) -> Result<RatFunc, AlgebraError> {
        if !(1..=3).contains(&k) {
            return Err(AlgebraError::InvalidOrder(k));
        }
        RatFunc::new(self.dy_numerators[k - 1].clone(), self.a.pow(k as u32 + 1))
    }

    /// True when `A` does not vanish at the point.
    pub fn admissible_at(&self, x: &Rat, y: &Rat) -> bool {
        !self.a.eval(x, y).is_zero()
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "A={}; B={}", self.a, self.b)
    }
}

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}
