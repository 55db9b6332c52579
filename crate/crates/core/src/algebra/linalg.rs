//! Dense linear algebra over any [`Scalar`] field.

use super::scalar::Scalar;

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Scalar>(rows: &mut Vec<Vec<F>>, ncols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = rows[r][c].inv().expect("nonzero pivot");
        let pivot_row: Vec<F> = rows[r].iter().map(|v| v.mul(&inv)).collect();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (t, s) in row.iter_mut().zip(pivot_row.iter()).skip(c) {
                    *t = t.sub(&f.mul(s));
                }
            }
        }
        rows[r] = pivot_row;
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

/// Basis of `{v : M v = 0}` for the matrix given by `rows` (each of length `ncols`).
///
/// Each basis vector has a one in its own free column and zeros in the
/// other free columns.
pub fn nullspace<F: Scalar>(rows: &[Vec<F>], ncols: usize, ctx: &F::Ctx) -> Vec<Vec<F>> {
    let mut m = rows.to_vec();
    let pivots = rref(&mut m, ncols);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![F::zero(ctx); ncols];
        v[free] = F::one(ctx);
        for (row, &pc) in m.iter().zip(&pivots) {
            v[pc] = row[free].neg();
        }
        basis.push(v);
    }
    basis
}

/// Reduces a spanning set to a basis in reduced echelon form with respect to
/// the *last* nonzero position: every returned vector has a distinct trailing
/// position, holds a one there, and zeros at the trailing positions of the
/// others. Vectors are sorted by increasing trailing position.
pub fn trailing_echelon<F: Scalar>(vectors: &[Vec<F>], ctx: &F::Ctx) -> Vec<Vec<F>> {
    let n = vectors.first().map_or(0, |v| v.len());
    // Reverse coordinates so that trailing positions become leading ones.
    let mut rows: Vec<Vec<F>> = vectors.iter().map(|v| v.iter().rev().cloned().collect()).collect();
    let pivots = rref(&mut rows, n);
    let _ = ctx;
    let mut out: Vec<Vec<F>> = rows.into_iter().map(|r| r.into_iter().rev().collect()).collect();
    // Leading position c in reversed order is trailing position n-1-c.
    let mut order: Vec<usize> = (0..out.len()).collect();
    order.sort_by_key(|&i| n - 1 - pivots[i]);
    let sorted: Vec<Vec<F>> = order.iter().map(|&i| std::mem::take(&mut out[i])).collect();
    sorted
}
