//! Multi-modular kernel search.
//!
//! The exact jet over ℚ has rapidly growing coefficients, so the driver
//! computes the jet, the instance and the selected kernel element modulo
//! word-size primes and reconstructs the rational element.
//!
//! Reduction modulo a prime can only lower the rank of the coefficient
//! matrix. Hence a full-rank image certifies a trivial kernel over ℚ, and the
//! leading column of every image is at most the rational one; images with a
//! smaller leading column come from unlucky primes and are discarded. A
//! reconstructed element is accepted once it annihilates the jet modulo a
//! fresh prime whose image has the same leading column, or — when requested —
//! the exact jet over ℚ.

use super::{
    build_hp_instance, element_from_flat, semantic_value, solve_instance, to_x_basis, ExtacticError, KernelElement, KernelMode, Layout,
};
use crate::algebra::modular::{PrimeStream, VectorLifter};
use crate::algebra::scalar::Fp;
use crate::algebra::VectorField;
use crate::flow::{flow_jet, flow_jet_mod, BasePoint, FlowError};

/// Upper limit on primes tried before giving up.
const MAX_PRIMES: usize = 64;

/// Outcome of a kernel search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KernelSearch {
    /// Selected element, `None` when the kernel is trivial.
    pub element: Option<KernelElement>,
    /// Kernel dimension (zero when trivial).
    pub dim: usize,
    /// Truncation order of the jet.
    pub sigma: usize,
    /// Number of primes used.
    pub primes: usize,
}

struct Image {
    lead: usize,
    dim: usize,
    flat: Vec<u64>,
}

/// Image of the kernel search modulo `p`; `Ok(None)` for a trivial kernel,
/// `Err(UnluckyPrime)` when the prime must be skipped.
fn image(vf: &VectorField, base: &BasePoint, layout: &Layout, mode: KernelMode, p: u64) -> Result<Option<Image>, ExtacticError> {
    let jet = flow_jet_mod(vf, base, layout.n, layout.level, p)?;
    let inst = build_hp_instance(&jet, layout.n, layout.level, layout.k)?;
    let Some(sol) = solve_instance(&inst, mode) else { return Ok(None) };
    let flat = to_x_basis(layout, &sol.vector, &base.x0, &p);
    Ok(Some(Image { lead: sol.lead, dim: sol.dim, flat: flat.iter().map(|f: &Fp| f.v).collect() }))
}

/// Kernel element of minimal weighted degree for `(vf, base, N, level, k)`.
///
/// With `exact_check`, the reconstructed element is additionally verified
/// against the exact jet over ℚ (costly for large `N`).
pub fn search_kernel(
    vf: &VectorField,
    base: &BasePoint,
    n: u32,
    level: usize,
    k: u32,
    mode: KernelMode,
    exact_check: bool,
) -> Result<KernelSearch, ExtacticError> {
    let layout = Layout::new(n, level, k)?;
    let sigma = crate::flow::jet_order(n, level);
    if vf.a().eval(&base.x0, &base.y0) == num_traits::Zero::zero() {
        return Err(FlowError::BasePointOnA.into());
    }
    let mut primes = PrimeStream::large();
    let mut used = 0;
    let mut best: Option<(usize, usize, VectorLifter)> = None;
    let mut pending: Option<KernelElement> = None;
    for _ in 0..MAX_PRIMES {
        let p = primes.next().expect("enough primes");
        used += 1;
        let img = match image(vf, &base.clone(), &layout, mode, p) {
            Err(ExtacticError::Flow(FlowError::UnluckyPrime)) => continue,
            Err(e) => return Err(e),
            Ok(None) => return Ok(KernelSearch { element: None, dim: 0, sigma, primes: used }),
            Ok(Some(img)) => img,
        };
        match &mut best {
            Some((lead, _, _)) if img.lead < *lead => continue,
            Some((lead, dim, lifter)) if img.lead == *lead => {
                // A pending candidate is confirmed by a fresh image that it matches.
                if let Some(cand) = pending.take() {
                    if candidate_matches(&cand, &layout, &img.flat, p) && (!exact_check || exact_confirms(vf, base, &cand)?) {
                        return Ok(KernelSearch { element: Some(cand), dim: img.dim, sigma, primes: used });
                    }
                }
                *dim = img.dim;
                lifter.add_image(&img.flat, p);
            }
            _ => {
                pending = None;
                let mut lifter = VectorLifter::new(img.flat.len());
                lifter.add_image(&img.flat, p);
                best = Some((img.lead, img.dim, lifter));
            }
        }
        let (_, _, lifter) = best.as_ref().expect("set above");
        if let Some(values) = lifter.reconstruct() {
            pending = Some(element_from_flat(&layout, &values));
        }
    }
    Err(ExtacticError::ReconstructionFailed(used))
}

/// True when the candidate's image modulo `p` equals the flat image.
fn candidate_matches(cand: &KernelElement, layout: &Layout, flat: &[u64], p: u64) -> bool {
    let mut expected = vec![0u64; flat.len()];
    let n = layout.n;
    let per_block = ((n + 1) * (n + 2) / 2) as usize;
    for (b, blk) in layout.blocks.iter().enumerate() {
        let poly = cand.slot(blk.slot);
        let scale = crate::algebra::rat::Rat::from_integer(blk.scale.into());
        let mut idx = b * per_block;
        for i in 0..=n {
            for a in 0..=n - i {
                let c = poly.coeff(a, i) * &scale;
                match crate::algebra::scalar::rat_mod(&c, p) {
                    Some(v) => expected[idx] = v,
                    None => return false,
                }
                idx += 1;
            }
        }
    }
    expected == flat
}

fn exact_confirms(vf: &VectorField, base: &BasePoint, cand: &KernelElement) -> Result<bool, ExtacticError> {
    let jet = flow_jet(vf, base, cand.n, cand.level)?;
    Ok(semantic_value(cand, &jet)?.is_zero())
}
