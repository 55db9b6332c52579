//! Irreducible factorization over ℚ of univariate and bivariate polynomials.
//!
//! The rational-integral builder needs the irreducible factors of a
//! squarefree bivariate polynomial. The univariate case is Zassenhaus
//! (modular factorization, quadratic p-adic lifting, recombination); the
//! bivariate case reduces to it by specializing `y`, lifting the univariate
//! factors `T`-adically and recombining.

mod bivariate;
mod univariate;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::gcd::{content_in_y, primitive_part_x};
use crate::algebra::poly::BiPoly;
use crate::algebra::rat::Rat;

pub use univariate::{content as integer_content, exact_div as integer_exact_div, factor_squarefree_primitive};

/// Errors of the factorization routines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FactorError {
    #[error("cannot factor the zero polynomial")]
    ZeroPolynomial,
    #[error("no suitable specialization point was found")]
    SpecializationFailed,
}

/// `unit · ∏ factorᵐ` with each factor irreducible over ℚ, in primitive
/// integer form with a positive graded-lex leading coefficient, sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Rat,
    pub factors: Vec<(BiPoly, u32)>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn expand(&self) -> BiPoly {
        self.factors.iter().fold(BiPoly::constant(self.unit.clone()), |acc, (f, m)| &acc * &f.pow(*m))
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Irreducible factors of a squarefree polynomial in one variable (`x`).
fn factor_squarefree_x(coeffs: &[Rat]) -> Vec<BiPoly> {
    let ints: Vec<BigInt> = univariate::to_integer(coeffs);
    if ints.len() <= 1 {
        return Vec::new();
    }
    factor_squarefree_primitive(&ints)
        .into_iter()
        .map(|g| BiPoly::from_univariate_x(&g.into_iter().map(Rat::from_integer).collect::<Vec<_>>()))
        .collect()
}

/// Irreducible factors of a squarefree bivariate polynomial.
fn factor_squarefree(p: &BiPoly) -> Result<Vec<BiPoly>, FactorError> {
    let mut out = Vec::new();
    if p.deg_x().unwrap_or(0) == 0 {
        let y = p.swap_xy().as_univariate_x().expect("univariate");
        return Ok(factor_squarefree_x(&y).into_iter().map(|f| f.swap_xy()).collect());
    }
    // Content in ℚ[y].
    let content = content_in_y(p);
    if content.len() > 1 {
        out.extend(factor_squarefree_x(&content).into_iter().map(|f| f.swap_xy()));
    }
    let pp = primitive_part_x(p);
    if pp.deg_y().unwrap_or(0) == 0 {
        out.extend(factor_squarefree_x(&pp.as_univariate_x().expect("univariate")));
    } else {
        out.extend(bivariate::factor_primitive_squarefree(&pp)?);
    }
    Ok(out)
}

/// Irreducible factorization of a nonzero bivariate polynomial over ℚ.
pub fn factor_bivariate(p: &BiPoly) -> Result<Factorization, FactorError> {
    if p.is_zero() {
        return Err(FactorError::ZeroPolynomial);
    }
    let squarefree = crate::algebra::gcd::squarefree_part(p).ok_or(FactorError::ZeroPolynomial)?;
    let mut factors = Vec::new();
    let mut rest = p.clone();
    for f in factor_squarefree(&squarefree)? {
        let f = f.primitive();
        let mut m = 0;
        while let Some(q) = rest.exact_div(&f) {
            rest = q;
            m += 1;
        }
        debug_assert!(m > 0);
        factors.push((f, m));
    }
    debug_assert!(rest.is_constant());
    factors.sort_by_key(|a| a.0.to_string());
    Ok(Factorization { unit: rest.constant_term(), factors })
}

/// Irreducible factorization of a nonzero polynomial in one variable,
/// returned as polynomials in `x`.
pub fn factor_univariate(coeffs: &[Rat]) -> Result<Factorization, FactorError> {
    factor_bivariate(&BiPoly::from_univariate_x(coeffs))
}
