//! Column-by-column elimination of the dense coefficient matrix.
//!
//! Columns are inserted in the layout order; each is reduced against the
//! pivots found so far while the combination of original columns producing
//! it is tracked. The first column that reduces to zero yields the selected
//! element directly.

use super::{HPInstance, KernelSolution};
use crate::algebra::scalar::Scalar;

struct Pivot<F> {
    row: usize,
    reduced: Vec<F>,
    combo: Vec<F>,
}

pub(super) fn solve<F: Scalar>(inst: &HPInstance<F>) -> Option<KernelSolution<F>> {
    let ctx = inst.ctx().clone();
    let ncols = inst.layout.columns.len();
    let zero = F::zero(&ctx);
    let mut pivots: Vec<Pivot<F>> = Vec::new();
    let mut first: Option<(usize, Vec<F>)> = None;
    let mut dim = 0;
    for (idx, c) in inst.layout.columns.iter().enumerate() {
        let mut v = inst.column(c);
        let mut combo = vec![zero.clone(); ncols];
        combo[idx] = F::one(&ctx);
        for pv in &pivots {
            let f = v[pv.row].clone();
            if f.is_zero() {
                continue;
            }
            let nf = f.neg();
            for (t, s) in v.iter_mut().zip(&pv.reduced) {
                t.add_mul(&nf, s);
            }
            for (t, s) in combo[..idx].iter_mut().zip(&pv.combo[..idx]) {
                t.add_mul(&nf, s);
            }
        }
        match v.iter().position(|e| !e.is_zero()) {
            Some(row) => {
                let inv = v[row].inv().expect("nonzero pivot");
                let reduced = v.iter().map(|e| e.mul(&inv)).collect();
                let combo = combo.iter().map(|e| e.mul(&inv)).collect();
                pivots.push(Pivot { row, reduced, combo });
            }
            None => {
                dim += 1;
                if first.is_none() {
                    first = Some((idx, combo));
                }
            }
        }
    }
    first.map(|(lead, vector)| KernelSolution { lead, vector, dim })
}
