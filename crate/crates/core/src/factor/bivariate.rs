//! Factorization of a squarefree bivariate polynomial that is primitive in
//! `x`, by specialization `y = a`, univariate factorization, linear Hensel
//! lifting in `T = y − a` and recombination of the lifted factors.

use num_traits::{One, Zero};

use super::univariate::{factor_squarefree_primitive, to_integer};
use super::{combinations, FactorError};
use crate::algebra::gcd::{gcd_univariate, primitive_part_x};
use crate::algebra::poly::{trim_rat, BiPoly};
use crate::algebra::rat::{rat, Rat};
use crate::algebra::upoly::q;

/// Number of specialization points tried before giving up.
const MAX_SPECIALIZATIONS: usize = 50;
/// Good specializations compared to keep the one with fewest factors.
const SPECIALIZATIONS_COMPARED: usize = 3;

/// Polynomial in `x` with power-series coefficients in `T`, stored as
/// `[T-degree][x-degree]`, truncated at a fixed precision.
type TSeries = Vec<Vec<Rat>>;

fn tmul(a: &TSeries, b: &TSeries, prec: usize) -> TSeries {
    let mut out: TSeries = vec![Vec::new(); prec];
    for (i, ai) in a.iter().enumerate() {
        if ai.is_empty() {
            continue;
        }
        for (j, bj) in b.iter().enumerate() {
            if i + j >= prec {
                break;
            }
            if bj.is_empty() {
                continue;
            }
            out[i + j] = q::add(&out[i + j], &q::mul(ai, bj));
        }
    }
    out
}

/// Candidate specialization points `0, 1, −1, 2, −2, …`.
fn specialization_points() -> impl Iterator<Item = Rat> {
    (0..).map(|i: i64| if i % 2 == 1 { rat((i + 1) / 2) } else { rat(-(i / 2)) })
}

/// Irreducible factors (primitive integer form) of `f`, which must be
/// squarefree, primitive with respect to `x`, and of positive degree in
/// both variables.
pub(super) fn factor_primitive_squarefree(f: &BiPoly) -> Result<Vec<BiPoly>, FactorError> {
    let n = f.deg_x().unwrap_or(0) as usize;
    let rows = f.coeffs_in_x();
    let lc: Vec<Rat> = rows[n].clone();
    let mut best: Option<(Rat, Vec<Vec<Rat>>)> = None;
    let mut good = 0;
    for a in specialization_points().take(MAX_SPECIALIZATIONS) {
        if q::eval(&lc, &a).is_zero() {
            continue;
        }
        let mut u: Vec<Rat> = rows.iter().map(|r| q::eval(r, &a)).collect();
        trim_rat(&mut u);
        if gcd_univariate(&u, &q::derivative(&u)).len() != 1 {
            continue;
        }
        let fac = factor_squarefree_primitive(&to_integer(&u));
        if fac.len() == 1 {
            return Ok(vec![f.primitive()]);
        }
        let monic: Vec<Vec<Rat>> =
            fac.iter().map(|g| q::monic(&g.iter().map(|c| Rat::from_integer(c.clone())).collect::<Vec<_>>())).collect();
        if best.as_ref().is_none_or(|(_, b)| monic.len() < b.len()) {
            best = Some((a, monic));
        }
        good += 1;
        if good >= SPECIALIZATIONS_COMPARED {
            break;
        }
    }
    let (a, images) = best.ok_or(FactorError::SpecializationFailed)?;
    Ok(lift_and_recombine(f, &a, &images))
}

fn lift_and_recombine(f: &BiPoly, a: &Rat, images: &[Vec<Rat>]) -> Vec<BiPoly> {
    let n = f.deg_x().unwrap_or(0) as usize;
    let shifted = f.translate(&Rat::zero(), a);
    let lc_deg = {
        let rows = f.coeffs_in_x();
        rows[n].len().saturating_sub(1)
    };
    let prec = f.deg_y().unwrap_or(0) as usize + lc_deg + 1;
    // Coefficients of T^j as polynomials in x.
    let by_t: Vec<Vec<Rat>> = {
        let swapped = shifted.swap_xy().coeffs_in_x();
        (0..prec).map(|j| swapped.get(j).cloned().unwrap_or_default()).collect()
    };
    // lc(a + T) and its inverse as a power series.
    let lc_t: Vec<Rat> = (0..prec).map(|j| by_t[j].get(n).cloned().unwrap_or_else(Rat::zero)).collect();
    let lc_inv = series_inverse(&lc_t, prec);
    let target: TSeries = (0..prec)
        .map(|k| {
            let mut acc: Vec<Rat> = Vec::new();
            for j in 0..=k {
                if !lc_inv[k - j].is_zero() && !by_t[j].is_empty() {
                    acc = q::add(&acc, &q::scale(&by_t[j], &lc_inv[k - j]));
                }
            }
            acc
        })
        .collect();
    let lifted = hensel_lift(&target, images, prec);
    recombine(f, a, &lc_t, lifted, prec)
}

fn series_inverse(a: &[Rat], prec: usize) -> Vec<Rat> {
    let inv0 = a[0].recip();
    let mut out = vec![Rat::zero(); prec];
    out[0] = inv0.clone();
    for k in 1..prec {
        let mut s = Rat::zero();
        for j in 1..=k {
            if j < a.len() {
                s += &a[j] * &out[k - j];
            }
        }
        out[k] = -(s * &inv0);
    }
    out
}

/// Linear lifting of `target ≡ ∏ images (mod T)` (all monic in `x`) to
/// precision `prec`.
fn hensel_lift(target: &TSeries, images: &[Vec<Rat>], prec: usize) -> Vec<TSeries> {
    let r = images.len();
    // Bézout multipliers: Σ s_i ∏_{j≠i} f_j = 1 with deg s_i < deg f_i.
    let cofactors: Vec<Vec<Rat>> =
        (0..r).map(|i| images.iter().enumerate().filter(|&(j, _)| j != i).fold(vec![Rat::one()], |acc, (_, g)| q::mul(&acc, g))).collect();
    let bezout: Vec<Vec<Rat>> = (0..r)
        .map(|i| {
            let (g, s, _) = q::xgcd(&q::divrem(&cofactors[i], &images[i]).1, &images[i]);
            debug_assert_eq!(g, vec![Rat::one()]);
            s
        })
        .collect();
    let mut factors: Vec<TSeries> = images
        .iter()
        .map(|g| {
            let mut s = vec![Vec::new(); prec];
            s[0] = g.clone();
            s
        })
        .collect();
    for k in 1..prec {
        let prod = factors.iter().skip(1).fold(factors[0].clone(), |acc, g| tmul(&acc, g, k + 1));
        let e = q::sub(&target[k], &prod[k]);
        if e.is_empty() {
            continue;
        }
        for i in 0..r {
            let delta = q::divrem(&q::mul(&bezout[i], &e), &images[i]).1;
            factors[i][k] = delta;
        }
    }
    factors
}

fn recombine(f: &BiPoly, a: &Rat, lc_t: &[Rat], mut lifted: Vec<TSeries>, prec: usize) -> Vec<BiPoly> {
    let lc_series: TSeries = lc_t.iter().map(|c| if c.is_zero() { Vec::new() } else { vec![c.clone()] }).collect();
    let mut rest = f.primitive();
    let mut out = Vec::new();
    let mut s = 1;
    while 2 * s <= lifted.len() {
        let mut found = None;
        for subset in combinations(lifted.len(), s) {
            let prod = subset.iter().fold(lc_series.clone(), |acc, &i| tmul(&acc, &lifted[i], prec));
            let mut cand = BiPoly::zero();
            for (j, row) in prod.iter().enumerate() {
                for (i, c) in row.iter().enumerate() {
                    cand.add_term((i as u32, j as u32), c.clone());
                }
            }
            let cand = cand.translate(&Rat::zero(), &-a);
            if cand.deg_x().unwrap_or(0) == 0 {
                continue;
            }
            let h = primitive_part_x(&cand);
            if let Some(qt) = rest.exact_div(&h) {
                found = Some((subset, h, qt));
                break;
            }
        }
        match found {
            Some((subset, h, qt)) => {
                out.push(h);
                rest = qt.primitive();
                for &i in subset.iter().rev() {
                    lifted.remove(i);
                }
            }
            None => s += 1,
        }
    }
    if !rest.is_constant() {
        out.push(rest);
    }
    out
}
