//! Polynomial solutions of `D₀(Q) = Ω·Q` with `deg Q ≤ bound`.
//!
//! Two solvers return the same canonical basis (reduced echelon form with
//! monomials in decreasing graded-lex order):
//!
//! * the dense solver writes the whole coefficient system at once;
//! * the slice solver splits `Q` into homogeneous components and solves the
//!   equation degree by degree from the top. The component of degree
//!   `deg Q + d − 1 − j` only involves the top `j + 1` slices of `Q`, so the
//!   system is triangular: each step adds one slice of unknowns and keeps the
//!   space of partial solutions found so far.

use std::collections::BTreeMap;

use crate::algebra::linalg::{nullspace, rref};
use crate::algebra::poly::{grlex_cmp, BiPoly, Monomial};
use crate::algebra::rat::Rat;
use crate::algebra::scalar::Scalar;
use crate::algebra::VectorField;

/// Linear-system strategy for [`cofactor_solve`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum CofactorMode {
    /// One dense system over all monomials of degree ≤ bound.
    #[default]
    Dense,
    /// Triangular solve by homogeneous slices.
    Slices,
}

/// Monomials of total degree ≤ `bound`, in decreasing graded-lex order.
fn monomials(bound: u32) -> Vec<Monomial> {
    let mut out: Vec<Monomial> = (0..=bound).flat_map(|s| (0..=s).map(move |i| (i, s - i))).collect();
    out.sort_by(|a, b| grlex_cmp(b, a));
    out
}

/// Image `D₀(m) − Ω·m` of a monomial.
fn image(vf: &VectorField, omega: &BiPoly, m: Monomial) -> BiPoly {
    let mono = BiPoly::monomial(m.0, m.1, Rat::from_integer(1.into()));
    &vf.apply_d0_poly(&mono) - &(omega * &mono)
}

/// Basis of `{Q : D₀(Q) = Ω·Q, deg Q ≤ bound}` in canonical form.
pub fn cofactor_solve(vf: &VectorField, omega: &BiPoly, bound: u32, mode: CofactorMode) -> Vec<BiPoly> {
    let monos = monomials(bound);
    let images: Vec<BiPoly> = monos.iter().map(|&m| image(vf, omega, m)).collect();
    let vectors = match mode {
        CofactorMode::Dense => dense(&images),
        CofactorMode::Slices => slices(&monos, &images, bound),
    };
    canonical(&monos, vectors)
}

fn dense(images: &[BiPoly]) -> Vec<Vec<Rat>> {
    let mut rows: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
    let zero = Rat::from_integer(0.into());
    for (col, img) in images.iter().enumerate() {
        for (m, c) in img.terms() {
            rows.entry(*m).or_insert_with(|| vec![zero.clone(); images.len()])[col] = c.clone();
        }
    }
    let rows: Vec<Vec<Rat>> = rows.into_values().collect();
    nullspace(&rows, images.len(), &())
}

fn slices(monos: &[Monomial], images: &[BiPoly], bound: u32) -> Vec<Vec<Rat>> {
    let zero = Rat::from_integer(0.into());
    let ncols = monos.len();
    // Current basis of partial solutions and their images.
    let mut basis: Vec<(Vec<Rat>, BiPoly)> = Vec::new();
    // Highest equation degree; the slice of degree `bound − j` has its image
    // in degrees ≤ `top − j`.
    let top = images.iter().filter_map(|p| p.degree()).max().unwrap_or(0).max(bound);
    for j in 0..=top {
        // Equation degree and the slice of unknowns entering at this step.
        let deg = top - j;
        let fresh: Vec<usize> = if j <= bound {
            let s = bound - j;
            (0..ncols).filter(|&c| monos[c].0 + monos[c].1 == s).collect()
        } else {
            Vec::new()
        };
        let width = basis.len() + fresh.len();
        if width == 0 {
            continue;
        }
        let restricted =
            |p: &BiPoly| -> Vec<(Monomial, Rat)> { p.terms().filter(|(m, _)| m.0 + m.1 == deg).map(|(m, c)| (*m, c.clone())).collect() };
        let mut rows: BTreeMap<Monomial, Vec<Rat>> = BTreeMap::new();
        let columns = basis.iter().map(|(_, img)| img).chain(fresh.iter().map(|&c| &images[c]));
        for (col, img) in columns.enumerate() {
            for (m, c) in restricted(img) {
                rows.entry(m).or_insert_with(|| vec![zero.clone(); width])[col] = c;
            }
        }
        let rows: Vec<Vec<Rat>> = rows.into_values().collect();
        let kernel = nullspace(&rows, width, &());
        let old = std::mem::take(&mut basis);
        for v in kernel {
            let mut vec = vec![zero.clone(); ncols];
            let mut img = BiPoly::zero();
            for (coef, (bv, bimg)) in v.iter().zip(&old) {
                if Scalar::is_zero(coef) {
                    continue;
                }
                for (t, s) in vec.iter_mut().zip(bv) {
                    *t += coef * s;
                }
                img = &img + &bimg.scale(coef);
            }
            for (coef, &c) in v[old.len()..].iter().zip(&fresh) {
                if Scalar::is_zero(coef) {
                    continue;
                }
                vec[c] += coef;
                img = &img + &images[c].scale(coef);
            }
            basis.push((vec, img));
        }
    }
    basis.into_iter().map(|(v, _)| v).collect()
}

/// Reduced echelon form of the solution vectors, as polynomials.
fn canonical(monos: &[Monomial], mut vectors: Vec<Vec<Rat>>) -> Vec<BiPoly> {
    rref(&mut vectors, monos.len());
    vectors.iter().map(|v| BiPoly::from_terms(monos.iter().zip(v).map(|(m, c)| (m.0, m.1, c.clone())))).collect()
}
