//! Unstructured reference kernel used to certify the fast paths.
//!
//! The matrix is built directly in the monomial basis `xᵃ·yⁱ·(block)` from an
//! exact jet and its nullspace is computed by plain Gaussian elimination. The
//! basis is then put in echelon form with respect to weighted degree alone,
//! so the smallest weighted degree among the returned elements is the
//! smallest weighted degree of the whole kernel.

use super::{block_series, weighted_degree, ExtacticError, KernelElement, Layout, Slot};
use crate::algebra::linalg::{nullspace, trailing_echelon};
use crate::algebra::poly::BiPoly;
use crate::algebra::rat::Rat;
use crate::algebra::series::{series_powers, Series};
use crate::algebra::VectorField;
use crate::flow::{flow_jet, jet_order, BasePoint};

/// Full kernel basis for `(vf, base, N, level, k)`, intended for small `N`.
pub fn brute_force_kernel(vf: &VectorField, base: &BasePoint, n: u32, level: usize, k: u32) -> Result<Vec<KernelElement>, ExtacticError> {
    let layout = Layout::new(n, level, k)?;
    let sigma = jet_order(n, level);
    let jet = flow_jet(vf, base, n, level)?;
    let blocks = block_series(&jet, level, k, sigma)?;
    let y_pw = series_powers(&jet.y, n as usize);
    // x = x₀ + t as a series.
    let mut x = Series::zero(base.x0.clone(), sigma, ());
    if sigma > 0 {
        x.coeffs[0] = base.x0.clone();
    }
    if sigma > 1 {
        x.coeffs[1] = Rat::from_integer(1.into());
    }
    let x_pw = series_powers(&x, n as usize);
    // Columns in the unordered natural enumeration (block, i, a).
    let mut cols = Vec::new();
    for b in 0..layout.blocks.len() {
        for i in 0..=n {
            for a in 0..=n - i {
                cols.push((b, i, a));
            }
        }
    }
    let col_series: Vec<Series<Rat>> =
        cols.iter().map(|&(b, i, a)| blocks[b].mul_unchecked(&y_pw[i as usize]).mul_unchecked(&x_pw[a as usize])).collect();
    let rows: Vec<Vec<Rat>> = (0..sigma).map(|s| col_series.iter().map(|c| c.coeffs[s].clone()).collect()).collect();
    let basis = nullspace(&rows, cols.len(), &());
    // Echelonize by weighted degree: permute coordinates by increasing weight.
    let mut perm: Vec<usize> = (0..cols.len()).collect();
    perm.sort_by_key(|&j| {
        let (b, i, a) = cols[j];
        (a + i + layout.blocks[b].weight, j)
    });
    let permuted: Vec<Vec<Rat>> = basis.iter().map(|v| perm.iter().map(|&j| v[j].clone()).collect()).collect();
    let echelon = trailing_echelon(&permuted, &());
    let mut out = Vec::new();
    for v in echelon {
        let mut polys = [BiPoly::zero(), BiPoly::zero(), BiPoly::zero()];
        for (pos, &j) in perm.iter().enumerate() {
            let (b, i, a) = cols[j];
            let blk = &layout.blocks[b];
            let slot = match blk.slot {
                Slot::P => 0,
                Slot::Q => 1,
                Slot::R => 2,
            };
            polys[slot].add_term((a, i), &v[pos] / Rat::from_integer(blk.scale.into()));
        }
        let [p, q, r] = polys;
        let wdeg = weighted_degree(level, k, n, &p, &q, &r).unwrap_or(0);
        out.push(KernelElement { level, k: if level == 3 { 2 } else { k }, n, p, q, r, wdeg });
    }
    Ok(out)
}
