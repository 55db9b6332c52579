//! Top-level pipelines: base-point selection, flow jet, kernel search and the
//! class builder, plus the deterministic wrapper that scans enough points to
//! avoid the bad-point locus.

use std::time::Instant;

use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::algebra::rat::Rat;
use crate::algebra::VectorField;
use crate::builders::{
    bad_point_bound, build_darbouxian, build_liouvillian, build_rational, build_riccati, BuildOptions, Built, CofactorMode, IntegralClass,
    Outcome, UnknownReason,
};
use crate::extactic::{search_kernel, ExtacticError, KernelMode};
use crate::flow::{jet_order, BasePoint};

/// Default half-width of the sampling box `[−999, 999]²`.
pub const DEFAULT_BOX: i64 = 999;
/// Number of draws before giving up on finding an admissible point.
pub const MAX_DRAWS: usize = 1000;

/// Errors of the top-level pipelines.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DriverError {
    #[error("degree bound N must be at least 1")]
    InvalidDegree,
    #[error("no point with A ≠ 0 found after {0} draws")]
    NoAdmissiblePoint(usize),
    #[error(transparent)]
    Kernel(#[from] ExtacticError),
}

/// A first-integral request.
#[derive(Clone, Debug)]
pub struct Query {
    pub vf: VectorField,
    pub n: u32,
    pub class: IntegralClass,
    /// Explicit base point; when absent a point is drawn from `seed`.
    pub base: Option<BasePoint>,
    pub seed: Option<u64>,
    pub deterministic: bool,
    /// Widen the sampling box beyond the bad-point bound.
    pub strict: bool,
    pub kernel_mode: KernelMode,
    pub cofactor_mode: CofactorMode,
}

impl Query {
    pub fn new(vf: VectorField, n: u32, class: IntegralClass) -> Self {
        Query {
            vf,
            n,
            class,
            base: None,
            seed: None,
            deterministic: false,
            strict: false,
            kernel_mode: KernelMode::default(),
            cofactor_mode: CofactorMode::default(),
        }
    }

    pub fn at(mut self, base: BasePoint) -> Self {
        self.base = Some(base);
        self
    }

    pub fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

/// Wall-clock split of a run, in milliseconds.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Timings {
    pub kernel_ms: f64,
    pub build_ms: f64,
    pub total_ms: f64,
}

/// What happened during a run.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Diagnostics {
    /// Base point of the run that produced the outcome.
    pub base: Option<BasePoint>,
    pub sigma: usize,
    pub kernel_dim: usize,
    /// Weighted degree of the selected kernel element.
    pub wdeg: Option<u32>,
    /// Builders visited, outermost first.
    pub chain: Vec<IntegralClass>,
    pub primes: usize,
    /// Base points tried (more than one only in deterministic mode).
    pub points_tried: usize,
    pub timings: Timings,
}

/// Outcome with diagnostics.
#[derive(Clone, Debug, PartialEq)]
pub struct Computation {
    pub outcome: Outcome,
    pub diagnostics: Diagnostics,
}

fn ms(t: Instant) -> f64 {
    t.elapsed().as_secs_f64() * 1e3
}

/// Half-width of the sampling box: the default, or one exceeding the
/// bad-point bound in strict mode.
pub fn sampling_box(vf: &VectorField, class: IntegralClass, n: u32, strict: bool) -> i64 {
    if !strict {
        return DEFAULT_BOX;
    }
    let bound = bad_point_bound(class, vf.d(), n);
    let half = (bound.ceil().to_integer() / 2u32).to_i64().unwrap_or(i64::MAX / 4);
    (half + 1).max(DEFAULT_BOX)
}

/// Draws integer points from `[−half, half]²` until `A` does not vanish.
pub fn choose_base_point(vf: &VectorField, seed: u64, half: i64) -> Result<BasePoint, DriverError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_DRAWS {
        let x = rng.gen_range(-half..=half);
        let y = rng.gen_range(-half..=half);
        let base = BasePoint::int(x, y);
        if vf.admissible_at(&base.x0, &base.y0) {
            return Ok(base);
        }
    }
    Err(DriverError::NoAdmissiblePoint(MAX_DRAWS))
}

/// Runs the class pipeline at one base point.
pub fn compute_at(q: &Query, base: &BasePoint) -> Result<Computation, DriverError> {
    if q.n == 0 {
        return Err(DriverError::InvalidDegree);
    }
    let start = Instant::now();
    let level = q.class.level();
    let mut diag = Diagnostics { base: Some(base.clone()), points_tried: 1, ..Diagnostics::default() };
    diag.sigma = jet_order(q.n, level);
    if !q.vf.admissible_at(&base.x0, &base.y0) {
        diag.chain = vec![q.class];
        diag.timings.total_ms = ms(start);
        return Ok(Computation { outcome: Outcome::Unknown(UnknownReason::PointOnA), diagnostics: diag });
    }
    let search = search_kernel(&q.vf, base, q.n, level, q.class.k(), q.kernel_mode, false)?;
    diag.timings.kernel_ms = ms(start);
    diag.kernel_dim = search.dim;
    diag.primes = search.primes;
    let Some(element) = search.element else {
        diag.chain = vec![q.class];
        diag.timings.total_ms = ms(start);
        return Ok(Computation { outcome: Outcome::NoneFound, diagnostics: diag });
    };
    diag.wdeg = Some(element.wdeg);
    let build_start = Instant::now();
    let opts = BuildOptions { cofactor: q.cofactor_mode };
    let built: Built = match q.class {
        IntegralClass::Rational => build_rational(&q.vf, &element.p, base, opts),
        IntegralClass::Darbouxian(k) => build_darbouxian(&q.vf, &element.p, &element.q, base, k, opts),
        IntegralClass::Liouvillian => build_liouvillian(&q.vf, &element.p, &element.q, &element.r, base, opts),
        IntegralClass::Riccati => build_riccati(&q.vf, &element.p, &element.q, &element.r, base, opts),
    };
    diag.timings.build_ms = ms(build_start);
    diag.chain = built.chain;
    diag.timings.total_ms = ms(start);
    Ok(Computation { outcome: built.outcome, diagnostics: diag })
}

/// The probabilistic pipeline (or the deterministic wrapper when requested).
pub fn compute_first_integral(q: &Query) -> Result<Computation, DriverError> {
    if q.deterministic {
        return compute_deterministic(q);
    }
    let base = match &q.base {
        Some(b) => b.clone(),
        None => {
            let half = sampling_box(&q.vf, q.class, q.n, q.strict);
            choose_base_point(&q.vf, q.seed.unwrap_or(0), half)?
        }
    };
    compute_at(q, &base)
}

/// Integers `0, 1, −1, 2, −2, …`.
fn zigzag() -> impl Iterator<Item = i64> {
    (0..).map(|i: i64| if i % 2 == 1 { (i + 1) / 2 } else { -(i / 2) })
}

/// Deterministic wrapper: scans `M + 1` values of `x₀` and, for each, `M + 1`
/// values of `y₀` with `A(x₀, y₀) ≠ 0`, where `M` is the class's bad-point
/// bound. A point outside the bad locus always exists among them, so the
/// first decided outcome is returned; a trivial kernel at any point settles
/// the answer immediately.
pub fn compute_deterministic(q: &Query) -> Result<Computation, DriverError> {
    let start = Instant::now();
    let bound = bad_point_bound(q.class, q.vf.d(), q.n);
    let count = bound.floor().to_integer().to_u64().unwrap_or(u64::MAX).saturating_add(1);
    let d = q.vf.d() as u64;
    let mut tried = 0usize;
    let mut last: Option<Computation> = None;
    for x0 in zigzag().take(count.min(usize::MAX as u64) as usize) {
        let mut admissible = 0u64;
        // A(x₀, ·) has at most d roots unless it vanishes identically.
        for y0 in zigzag().take(count.saturating_add(d).min(usize::MAX as u64) as usize) {
            if admissible >= count {
                break;
            }
            let base = BasePoint::new(Rat::from_integer(x0.into()), Rat::from_integer(y0.into()));
            if !q.vf.admissible_at(&base.x0, &base.y0) {
                continue;
            }
            admissible += 1;
            tried += 1;
            let mut run = compute_at(q, &base)?;
            run.diagnostics.points_tried = tried;
            if !matches!(run.outcome, Outcome::Unknown(_)) {
                run.diagnostics.timings.total_ms = ms(start);
                return Ok(run);
            }
            last = Some(run);
        }
    }
    // Unreachable when the bound holds; report the last answer rather than guess.
    let mut run = last.ok_or(DriverError::NoAdmissiblePoint(tried))?;
    run.diagnostics.points_tried = tried;
    run.diagnostics.timings.total_ms = ms(start);
    Ok(run)
}
