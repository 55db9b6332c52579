//! Shifted order basis by the iterative approximant-basis algorithm.
//!
//! For series `f_1, …, f_m` the solutions `(p_1, …, p_m)` of
//! `Σ p_i f_i ≡ 0 mod t^σ` form a free `K[t]`-module. The iterative
//! algorithm raises the order one coefficient at a time, keeping a basis
//! that is reduced for the shifted degree `max_i (deg p_i + s_i)`. With the
//! shift `s_i = i` inside each block (the power of `y`), a vector has shifted
//! degree ≤ N exactly when it lies in the degree-≤N search space, and the
//! predictable-degree property gives that subspace as
//! `{ tᵉ·P_j : e ≤ N − deg_s P_j }`. The selection rule of the dense path is
//! then applied to this spanning set.

use super::{HPInstance, KernelSolution};
use crate::algebra::linalg::trailing_echelon;
use crate::algebra::scalar::Scalar;

/// One basis row: polynomial entries, residual series, tracked shifted degree.
struct Row<F> {
    entries: Vec<Vec<F>>,
    residual: Vec<F>,
    degree: i64,
}

/// Order basis of `f` at order `sigma` for the shift `shifts`; rows are
/// returned with their shifted degrees.
pub(crate) fn order_basis<F: Scalar>(f: &[Vec<F>], shifts: &[i64], sigma: usize, ctx: &F::Ctx) -> Vec<(Vec<Vec<F>>, i64)> {
    let m = f.len();
    let one = F::one(ctx);
    let mut rows: Vec<Row<F>> = (0..m)
        .map(|j| {
            let mut entries = vec![Vec::new(); m];
            entries[j] = vec![one.clone()];
            let mut residual = f[j].clone();
            residual.resize(sigma, F::zero(ctx));
            Row { entries, residual, degree: shifts[j] }
        })
        .collect();
    for k in 0..sigma {
        let active: Vec<usize> = (0..m).filter(|&j| !rows[j].residual[k].is_zero()).collect();
        let Some(&piv) = active.iter().min_by_key(|&&j| (rows[j].degree, j)) else {
            continue;
        };
        let inv = rows[piv].residual[k].inv().expect("nonzero");
        let (pe, pr) = (rows[piv].entries.clone(), rows[piv].residual.clone());
        for &j in &active {
            if j == piv {
                continue;
            }
            let c = rows[j].residual[k].mul(&inv).neg();
            let row = &mut rows[j];
            for (t, s) in row.residual[k..].iter_mut().zip(&pr[k..]) {
                t.add_mul(&c, s);
            }
            for (dst, src) in row.entries.iter_mut().zip(&pe) {
                if src.len() > dst.len() {
                    dst.resize(src.len(), F::zero(ctx));
                }
                for (t, s) in dst.iter_mut().zip(src) {
                    t.add_mul(&c, s);
                }
            }
        }
        // Multiply the pivot row by t.
        let row = &mut rows[piv];
        for e in row.entries.iter_mut() {
            if !e.is_empty() {
                e.insert(0, F::zero(ctx));
            }
        }
        row.residual.insert(0, F::zero(ctx));
        row.residual.truncate(sigma);
        row.degree += 1;
    }
    rows.into_iter()
        .map(|mut r| {
            for e in r.entries.iter_mut() {
                while e.last().is_some_and(|c| c.is_zero()) {
                    e.pop();
                }
            }
            (r.entries, r.degree)
        })
        .collect()
}

pub(super) fn solve<F: Scalar>(inst: &HPInstance<F>) -> Option<KernelSolution<F>> {
    let ctx = inst.ctx().clone();
    let layout = &inst.layout;
    let n = layout.n as i64;
    let f: Vec<Vec<F>> = inst.f_list.iter().map(|s| s.coeffs.clone()).collect();
    let width = n as usize + 1;
    let shifts: Vec<i64> = (0..f.len()).map(|idx| (idx % width) as i64).collect();
    let basis = order_basis(&f, &shifts, inst.sigma, &ctx);
    let zero = F::zero(&ctx);
    let mut spanning = Vec::new();
    for (entries, _) in &basis {
        // Actual shifted degree of the row.
        let sdeg = entries.iter().zip(&shifts).filter(|(e, _)| !e.is_empty()).map(|(e, s)| e.len() as i64 - 1 + s).max();
        let Some(sdeg) = sdeg else { continue };
        if sdeg > n {
            continue;
        }
        for e in 0..=(n - sdeg) as usize {
            let v: Vec<F> = layout
                .columns
                .iter()
                .map(|c| {
                    let poly = &entries[layout.list_index(c)];
                    let a = c.a as usize;
                    if a >= e && a - e < poly.len() {
                        poly[a - e].clone()
                    } else {
                        zero.clone()
                    }
                })
                .collect();
            spanning.push(v);
        }
    }
    let echelon = trailing_echelon(&spanning, &ctx);
    let dim = echelon.len();
    let vector = echelon.into_iter().next()?;
    let lead = vector.iter().rposition(|c| !c.is_zero()).expect("nonzero basis vector");
    Some(KernelSolution { lead, vector, dim })
}
