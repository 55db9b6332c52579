//! Degree bounds for the bad-point loci of the probabilistic algorithms.
//!
//! `𝓑ᵣ(d, N)` bounds the degree of any minor of the specialized extactic
//! matrix of level `r`; the per-class bounds add the contribution of the
//! escalation polynomials and of the spectrum of the rational first
//! integral. The values may be non-integral.

use num_bigint::BigInt;

use super::IntegralClass;
use crate::algebra::rat::Rat;

fn r(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// `(l − 1)·l / 2 · c`, the sum `Σ_{j<l} j·c`.
fn triangular(l: &Rat, c: i64) -> Rat {
    (l - r(1)) * l * r(c) / r(2)
}

/// Bound `𝓑ᵣ(d, N)` on the degree of a minor of the level-`r` extactic matrix.
pub fn minor_degree_bound(level: usize, d: u32, n: u32) -> Rat {
    let (d, n) = (d as i64, n as i64);
    let m = r((n + 1) * (n + 2));
    match level {
        0 => r(n) * &m / r(2) + r(d - 1) * (&m * &m - &m) / r(8),
        1 => r(n) * &m + triangular(&m, 2 * d - 1),
        2 => {
            let l2 = r(3) * &m / r(2);
            r(n) * &l2 + triangular(&l2, 3 * d - 1)
        }
        3 => {
            let l3 = r(3) * &m / r(2);
            r(n) * &l3 + triangular(&l3, 4 * d - 1)
        }
        _ => panic!("level must be in 0..=3"),
    }
}

/// Degree bound of the curve containing the base points on which the class
/// pipeline may answer "unknown" (`𝒟`, `𝓛` or `𝓡`; the rational class uses
/// the Darbouxian bound, which dominates it).
pub fn bad_point_bound(class: IntegralClass, d: u32, n: u32) -> Rat {
    let (di, ni) = (d as i64, n as i64);
    let spectrum = r(di * (di + 1) / 2 + 5);
    let base = r(di) + minor_degree_bound(0, d, n) + minor_degree_bound(1, d, n);
    match class {
        IntegralClass::Rational | IntegralClass::Darbouxian(_) => base + spectrum * r(2 * ni + 2 * di - 1),
        IntegralClass::Liouvillian => base + minor_degree_bound(2, d, n) + spectrum * r(4 * ni + 8 * di - 3),
        IntegralClass::Riccati => base + minor_degree_bound(3, d, n) + spectrum * r(4 * ni + 10 * di - 3),
    }
}
