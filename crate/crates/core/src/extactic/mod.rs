//! Specialized extactic kernels: find the element of minimal weighted degree
//! in the space of invariants `S ∈ V_r` (polynomial coefficients of total
//! degree ≤ N) that vanish along the flow jet to the full contact order.
//!
//! The search space at each level, written through its coefficient
//! polynomials `(P, Q, R)`:
//!
//! | level | semantic value | blocks (order of the Hermite–Padé list) |
//! |---|---|---|
//! | 0 | `P` | `yⁱ` |
//! | 1 | `y₁ᵏ·P + Q` | `yⁱ` (→ Q), `y₁ᵏ·yⁱ` (→ P) |
//! | 2 | `P·y₁² + Q·y₂ + R·y₁` | `y₁·yⁱ` (→ R), `y₁²·yⁱ` (→ P), `y₂·yⁱ` (→ Q) |
//! | 3 | `4P·y₁⁴ + Q·Ψ + R·y₁²` | `y₁⁴·yⁱ` (→ 4P), `Ψ·yⁱ` (→ Q), `y₁²·yⁱ` (→ R) |
//!
//! with `Ψ = 3y₂² − 2y₃y₁`. A candidate is a coefficient vector over the
//! columns `tᵃ·(block)·yⁱ`, `a + i ≤ N`, `t = x − x₀`.
//!
//! Columns are totally ordered by weighted degree, then by the block's
//! position in the list, then by increasing `x`-degree. The returned element
//! is the unique kernel vector supported on the columns up to the first
//! column that depends on its predecessors; it therefore has minimal weighted
//! degree, and among those the smallest leading column. Writing the
//! coefficients in powers of `x − x₀` instead of `x` does not change this
//! element, because translation preserves the top homogeneous part.

mod dense;
mod mbasis;
mod modular;
mod oracle;

use thiserror::Error;

use crate::algebra::poly::BiPoly;
use crate::algebra::rat::Rat;
use crate::algebra::scalar::Scalar;
use crate::algebra::series::{eval_with_powers, series_powers, Series, SeriesError};
use crate::flow::{jet_order, FlowError, FlowJet};

pub use modular::{search_kernel, KernelSearch};
pub use oracle::brute_force_kernel;

/// Errors of the kernel search.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ExtacticError {
    #[error("jet too shallow: need level {need_level} and order {need_order}, have level {level} and order {order}")]
    JetTooShallow { need_level: usize, need_order: usize, level: usize, order: usize },
    #[error("unsupported level {0}")]
    InvalidLevel(usize),
    #[error("Darbouxian exponent k must be positive")]
    InvalidExponent,
    #[error(transparent)]
    Flow(#[from] FlowError),
    #[error("series error: {0}")]
    Series(#[from] SeriesError),
    #[error("multi-modular reconstruction did not stabilize after {0} primes")]
    ReconstructionFailed(usize),
}

/// How the kernel of a Hermite–Padé instance is computed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KernelMode {
    /// Column-by-column elimination of the dense coefficient matrix.
    #[default]
    Dense,
    /// Shifted order basis (iterative approximant basis), then selection.
    Structured,
}

/// Which coefficient polynomial a block feeds.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Slot {
    P,
    Q,
    R,
}

/// One block of the Hermite–Padé list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub slot: Slot,
    /// The block's series is `scale · (coefficient of the slot)`; 4 for the
    /// `y₁⁴` block at level 3, 1 otherwise.
    pub scale: i64,
    /// Weighted degree of the block's jet monomial.
    pub weight: u32,
    /// First entry of the block in the instance's shift vector.
    pub shift: u32,
}

/// Column `tᵃ · block · yⁱ` of the coefficient matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Column {
    pub block: usize,
    pub i: u32,
    pub a: u32,
}

/// Blocks and ordered columns of the search space for `(N, r, k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub n: u32,
    pub level: usize,
    pub k: u32,
    pub blocks: Vec<Block>,
    pub columns: Vec<Column>,
}

impl Layout {
    pub fn new(n: u32, level: usize, k: u32) -> Result<Self, ExtacticError> {
        if level > 3 {
            return Err(ExtacticError::InvalidLevel(level));
        }
        if k == 0 {
            return Err(ExtacticError::InvalidExponent);
        }
        let w = n + 1;
        let blk = |slot, scale, weight, index: u32| Block { slot, scale, weight, shift: index * w };
        let blocks = match level {
            0 => vec![blk(Slot::P, 1, 0, 0)],
            1 => vec![blk(Slot::Q, 1, 0, 0), blk(Slot::P, 1, k * w, 1)],
            2 => vec![blk(Slot::R, 1, w, 0), blk(Slot::P, 1, 2 * w, 1), blk(Slot::Q, 1, 2 * w, 2)],
            _ => vec![blk(Slot::P, 4, 4 * w, 0), blk(Slot::Q, 1, 4 * w, 1), blk(Slot::R, 1, 2 * w, 2)],
        };
        let mut columns = Vec::new();
        for (b, _) in blocks.iter().enumerate() {
            for i in 0..=n {
                for a in 0..=n - i {
                    columns.push(Column { block: b, i, a });
                }
            }
        }
        columns.sort_by_key(|c| {
            let blk = &blocks[c.block];
            (c.a + c.i + blk.weight, blk.shift, c.a)
        });
        Ok(Layout { n, level, k, blocks, columns })
    }

    /// Weighted degree of a column's monomial.
    pub fn column_wdeg(&self, c: &Column) -> u32 {
        c.a + c.i + self.blocks[c.block].weight
    }

    /// Index of the series `block · yⁱ` in the instance list.
    pub fn list_index(&self, c: &Column) -> usize {
        c.block * (self.n as usize + 1) + c.i as usize
    }

    /// Position of a column in the flat block-major `(block, i, a)` layout
    /// used for coefficient vectors in the `x` basis.
    fn flat_index(&self, c: &Column) -> usize {
        let n = self.n as usize;
        let per_block = (n + 1) * (n + 2) / 2;
        // Entries before row i of a block: Σ_{i'<i} (n − i' + 1).
        let i = c.i as usize;
        c.block * per_block + i * (n + 1) - i * (i.saturating_sub(1)) / 2 + c.a as usize
    }
}

/// An element of the specialized extactic kernel.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelElement {
    pub level: usize,
    /// Exponent of `y₁` in the level-1 space (1 elsewhere, 2 by convention at level 3).
    pub k: u32,
    pub n: u32,
    pub p: BiPoly,
    pub q: BiPoly,
    pub r: BiPoly,
    pub wdeg: u32,
}

impl KernelElement {
    pub fn slot(&self, s: Slot) -> &BiPoly {
        match s {
            Slot::P => &self.p,
            Slot::Q => &self.q,
            Slot::R => &self.r,
        }
    }
}

/// Weighted degree of `(P, Q, R)` at a level, with `y₁, y₂, y₃` weighted
/// `N+1, 2N+2, 3N+3`; `None` when all three vanish.
pub fn weighted_degree(level: usize, k: u32, n: u32, p: &BiPoly, q: &BiPoly, r: &BiPoly) -> Option<u32> {
    let w = n + 1;
    let parts: Vec<(&BiPoly, u32)> = match level {
        0 => vec![(p, 0)],
        1 => vec![(q, 0), (p, k * w)],
        2 => vec![(r, w), (p, 2 * w), (q, 2 * w)],
        _ => vec![(p, 4 * w), (q, 4 * w), (r, 2 * w)],
    };
    parts.into_iter().filter_map(|(poly, wt)| poly.degree().map(|d| d + wt)).max()
}

/// Hermite–Padé instance: series `f_i` and shifts `s_i` such that the
/// kernel consists of the `(p_i)` with `Σ p_i f_i ≡ 0 mod t^σ`.
#[derive(Clone, Debug, PartialEq)]
pub struct HPInstance<F: Scalar> {
    pub f_list: Vec<Series<F>>,
    pub shifts: Vec<u32>,
    pub sigma: usize,
    pub layout: Layout,
    /// Expansion point `x₀`.
    pub center: Rat,
}

/// The series of each block at a level, in list order.
pub fn block_series<F: Scalar>(jet: &FlowJet<F>, level: usize, k: u32, sigma: usize) -> Result<Vec<Series<F>>, ExtacticError> {
    let shallow = || ExtacticError::JetTooShallow { need_level: level, need_order: sigma, level: jet.level, order: jet.sigma };
    let get = |s: &Option<Series<F>>| s.as_ref().map(|s| s.truncate(sigma)).ok_or_else(shallow);
    let one = Series::constant(jet.base.x0.clone(), sigma, F::one(jet.ctx()), jet.ctx().clone());
    Ok(match level {
        0 => vec![one],
        1 => {
            let y1 = get(&jet.y1)?;
            let mut y1k = one.clone();
            for _ in 0..k {
                y1k = y1k.mul_unchecked(&y1);
            }
            vec![one, y1k]
        }
        2 => {
            let (y1, y2) = (get(&jet.y1)?, get(&jet.y2)?);
            let y1sq = y1.mul_unchecked(&y1);
            vec![y1, y1sq, y2]
        }
        _ => {
            let (y1, y2, y3) = (get(&jet.y1)?, get(&jet.y2)?, get(&jet.y3)?);
            let y1sq = y1.mul_unchecked(&y1);
            let y1_4 = y1sq.mul_unchecked(&y1sq);
            let ctx = jet.ctx();
            let psi = y2.mul_unchecked(&y2).scale(&F::from_i64(ctx, 3)).sub_unchecked(&y3.mul_unchecked(&y1).scale(&F::from_i64(ctx, 2)));
            vec![y1_4, psi, y1sq]
        }
    })
}

/// Builds the instance `(block·yⁱ)` with shifts `block_index·(N+1) + i`.
pub fn build_hp_instance<F: Scalar>(jet: &FlowJet<F>, n: u32, level: usize, k: u32) -> Result<HPInstance<F>, ExtacticError> {
    let layout = Layout::new(n, level, k)?;
    let sigma = jet_order(n, level);
    if jet.level < level || jet.sigma < sigma {
        return Err(ExtacticError::JetTooShallow { need_level: level, need_order: sigma, level: jet.level, order: jet.sigma });
    }
    let blocks = block_series(jet, level, k, sigma)?;
    let y = jet.y.truncate(sigma);
    let powers = series_powers(&y, n as usize);
    let mut f_list = Vec::with_capacity(blocks.len() * (n as usize + 1));
    let mut shifts = Vec::with_capacity(f_list.capacity());
    for (b, series) in blocks.iter().enumerate() {
        for (i, pw) in powers.iter().enumerate() {
            f_list.push(series.mul_unchecked(pw));
            shifts.push(layout.blocks[b].shift + i as u32);
        }
    }
    Ok(HPInstance { f_list, shifts, sigma, layout, center: jet.base.x0.clone() })
}

impl<F: Scalar> HPInstance<F> {
    pub fn ctx(&self) -> &F::Ctx {
        &self.f_list[0].ctx
    }

    /// Coefficient of `t^row` in column `c` of the matrix.
    #[inline]
    pub(crate) fn entry(&self, c: &Column, row: usize) -> Option<&F> {
        let a = c.a as usize;
        (row >= a).then(|| &self.f_list[self.layout.list_index(c)].coeffs[row - a])
    }

    /// Dense column of the coefficient matrix.
    pub(crate) fn column(&self, c: &Column) -> Vec<F> {
        let zero = F::zero(self.ctx());
        (0..self.sigma).map(|row| self.entry(c, row).cloned().unwrap_or_else(|| zero.clone())).collect()
    }

    /// True when the vector (over the ordered columns) is in the kernel.
    pub fn annihilates(&self, v: &[F]) -> bool {
        let mut acc = vec![F::zero(self.ctx()); self.sigma];
        for (c, coef) in self.layout.columns.iter().zip(v) {
            if coef.is_zero() {
                continue;
            }
            for (row, slot) in acc.iter_mut().enumerate().skip(c.a as usize) {
                slot.add_mul(coef, self.entry(c, row).expect("row ≥ a"));
            }
        }
        acc.iter().all(|v| v.is_zero())
    }
}

/// Result of a kernel computation on one instance.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSolution<F: Scalar> {
    /// Index (in the column order) of the leading column of the selected element.
    pub lead: usize,
    /// Selected element over the ordered columns, with a one at `lead`.
    pub vector: Vec<F>,
    /// Dimension of the whole kernel.
    pub dim: usize,
}

/// Solves an instance; `None` when the kernel is trivial.
pub fn solve_instance<F: Scalar>(inst: &HPInstance<F>, mode: KernelMode) -> Option<KernelSolution<F>> {
    match mode {
        KernelMode::Dense => dense::solve(inst),
        KernelMode::Structured => mbasis::solve(inst),
    }
}

/// Exact kernel element of an instance over ℚ.
pub fn kernel_element(inst: &HPInstance<Rat>, mode: KernelMode) -> Option<KernelElement> {
    let sol = solve_instance(inst, mode)?;
    let flat = to_x_basis(&inst.layout, &sol.vector, &inst.center, &());
    Some(element_from_flat(&inst.layout, &flat))
}

/// Rewrites a column vector (coefficients of `tᵃyⁱ` per block) as the flat
/// block-major vector of `xᵃyⁱ` coefficients, normalized so that the
/// coefficient of the leading monomial of the slot polynomial is one.
pub(crate) fn to_x_basis<F: Scalar>(layout: &Layout, v: &[F], x0: &Rat, ctx: &F::Ctx) -> Vec<F> {
    let n = layout.n as usize;
    let per_block = (n + 1) * (n + 2) / 2;
    let zero = F::zero(ctx);
    let mut flat = vec![zero.clone(); layout.blocks.len() * per_block];
    let mut lead = None;
    for (c, coef) in layout.columns.iter().zip(v) {
        if !coef.is_zero() {
            lead = Some(*c);
        }
        flat[layout.flat_index(c)] = coef.clone();
    }
    let x0 = F::from_rat(ctx, x0).expect("base point representable");
    // Each (block, i) row is a polynomial in t; substitute t = x − x₀ by Horner.
    for b in 0..layout.blocks.len() {
        for i in 0..=layout.n {
            let start = layout.flat_index(&Column { block: b, i, a: 0 });
            let len = n + 1 - i as usize;
            let row = &mut flat[start..start + len];
            let mut out = vec![zero.clone(); len];
            for a in (0..len).rev() {
                // out ← out·(x − x₀) + row[a]
                for j in (0..len).rev() {
                    let below = if j > 0 { out[j - 1].clone() } else { zero.clone() };
                    out[j] = below.sub(&out[j].mul(&x0));
                }
                out[0] = out[0].add(&row[a]);
            }
            row.clone_from_slice(&out);
        }
    }
    if let Some(c) = lead {
        let idx = layout.flat_index(&c);
        let inv = flat[idx].inv().expect("leading coefficient survives translation");
        for v in flat.iter_mut() {
            *v = v.mul(&inv);
        }
    }
    flat
}

/// Assembles `(P, Q, R)` from a flat `x`-basis vector.
pub(crate) fn element_from_flat(layout: &Layout, flat: &[Rat]) -> KernelElement {
    let mut polys = [BiPoly::zero(), BiPoly::zero(), BiPoly::zero()];
    for (b, blk) in layout.blocks.iter().enumerate() {
        let slot = match blk.slot {
            Slot::P => 0,
            Slot::Q => 1,
            Slot::R => 2,
        };
        let scale = Rat::from_integer(blk.scale.into()).recip();
        for i in 0..=layout.n {
            for a in 0..=layout.n - i {
                let c = &flat[layout.flat_index(&Column { block: b, i, a })];
                if !Scalar::is_zero(c) {
                    polys[slot].add_term((a, i), c * &scale);
                }
            }
        }
    }
    let [p, q, r] = polys;
    let wdeg = weighted_degree(layout.level, layout.k, layout.n, &p, &q, &r).unwrap_or(0);
    let k = if layout.level == 3 { 2 } else { layout.k };
    KernelElement { level: layout.level, k, n: layout.n, p, q, r, wdeg }
}

/// `S(x, y⋆, y₁⋆, y₂⋆, y₃⋆)` for a kernel element along a jet; it vanishes
/// to the jet's order exactly when the element is in the kernel.
pub fn semantic_value<F: Scalar>(e: &KernelElement, jet: &FlowJet<F>) -> Result<Series<F>, ExtacticError> {
    let layout = Layout::new(e.n, e.level, if e.level == 1 { e.k } else { 1 })?;
    let sigma = jet.sigma;
    let blocks = block_series(jet, e.level, layout.k, sigma)?;
    let deg = [&e.p, &e.q, &e.r].iter().filter_map(|p| p.deg_y()).max().unwrap_or(0);
    let powers = series_powers(&jet.y, deg as usize);
    let mut acc = Series::zero(jet.base.x0.clone(), sigma, jet.ctx().clone());
    for (blk, series) in layout.blocks.iter().zip(&blocks) {
        let poly = e.slot(blk.slot);
        if poly.is_zero() {
            continue;
        }
        let scaled = poly.scale(&Rat::from_integer(blk.scale.into()));
        let value = eval_with_powers(&scaled, &powers)?;
        acc = acc.add_unchecked(&value.mul_unchecked(series));
    }
    Ok(acc)
}
