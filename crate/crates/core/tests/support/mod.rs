//! Shared generators and checks for the integration and acceptance tests.
//!
//! Planted fields are built backwards from a known first integral `I`, as the
//! field `A = M·∂ᵧI`, `B = −M·∂ₓI` for a multiplier `M` that makes both
//! components polynomial:
//!
//! * rational: `I = P/Q`, `M = Q²`;
//! * Darbouxian: `I = λ₁ log f₁ + λ₂ log f₂`, `M = f₁f₂`, so `∂ᵧI` is a
//!   rational function of degree at most `deg f₁ + deg f₂`;
//! * Liouvillian: `ẋ = h_y`, `ẏ = a(x)·h + b(x) − h_x` makes `z = h(x, y)`
//!   satisfy the linear equation `ż = a·z + b` along `ẋ = 1` (after the time
//!   change), whose first integral has `∂ᵧI = h_y·e^{−∫a}` and therefore
//!   `∂ᵧ² I = (h_yy / h_y)·∂ᵧI`.

#![allow(dead_code)]

use first_integrals::algebra::modular::PrimeStream;
use first_integrals::builders::Outcome;
use first_integrals::builders::{bad_point_bound, cofactor_solve, minor_degree_bound};
use first_integrals::builders::{condition_check, CanonicalEquation, CofactorMode, IntegralClass};
use first_integrals::driver::{choose_base_point, compute_first_integral, Query};
use first_integrals::extactic::{brute_force_kernel, search_kernel, semantic_value, KernelMode};
use first_integrals::flow::flow_jet;
use first_integrals::flow::{casale_invariant, flow_jet_mod, jet_order, BasePoint, FlowError};
use first_integrals::{BiPoly, Rat, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

/// Dense random polynomial of total degree ≤ `deg`, coefficients in `[−c, c]`.
pub fn random_poly(rng: &mut ChaCha8Rng, deg: u32, c: i64) -> BiPoly {
    let terms: Vec<(u32, u32, Rat)> =
        (0..=deg).flat_map(|s| (0..=s).map(move |i| (i, s - i))).map(|(i, j)| (i, j, rat(rng.gen_range(-c..=c)))).collect();
    BiPoly::from_terms(terms)
}

/// Random polynomial of exact total degree `deg`.
pub fn random_poly_exact(rng: &mut ChaCha8Rng, deg: u32, c: i64) -> BiPoly {
    loop {
        let p = random_poly(rng, deg, c);
        if p.degree() == Some(deg) {
            return p;
        }
    }
}

/// A field with a planted first integral of a known class.
#[derive(Clone, Debug)]
pub struct Planted {
    pub name: String,
    pub vf: VectorField,
    pub class: IntegralClass,
    /// Degree bound guaranteed to admit an equation of `class`.
    pub degree: u32,
}

fn field(a: BiPoly, b: BiPoly) -> Option<VectorField> {
    if a.is_constant() && b.is_constant() {
        return None;
    }
    VectorField::reduced(a, b).ok()
}

/// Field with the rational first integral `P/Q`, `deg P, deg Q ≤ 2`.
pub fn planted_rational(seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let (dp, dq) = (rng.gen_range(1..=2), rng.gen_range(0..=2));
        let p = random_poly_exact(&mut rng, dp, 3);
        let q = random_poly(&mut rng, dq, 3);
        if q.is_zero() {
            continue;
        }
        let a = &(&p.dy() * &q) - &(&p * &q.dy());
        let b = &(&p * &q.dx()) - &(&p.dx() * &q);
        let degree = p.degree().unwrap_or(0).max(q.degree().unwrap_or(0));
        if let Some(vf) = field(a, b) {
            return Planted { name: format!("rational-{seed}"), vf, class: IntegralClass::Rational, degree };
        }
    }
}

/// Field with the Darbouxian first integral `log f₁ + λ log f₂`.
pub fn planted_darbouxian(seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let f1 = random_poly_exact(&mut rng, 1, 3);
        let d2 = rng.gen_range(1..=2);
        let f2 = random_poly_exact(&mut rng, d2, 3);
        let lambda = Rat::new(rng.gen_range(1..=9i64).into(), rng.gen_range(2..=9i64).into());
        let a = &(&f1.dy() * &f2) + &(&f1 * &f2.dy()).scale(&lambda);
        let b = -(&(&f1.dx() * &f2) + &(&f1 * &f2.dx()).scale(&lambda));
        let degree = f1.degree().unwrap_or(0) + f2.degree().unwrap_or(0);
        if let Some(vf) = field(a, b) {
            return Planted { name: format!("darboux-{seed}"), vf, class: IntegralClass::Darbouxian(1), degree };
        }
    }
}

/// Field whose first integral satisfies `∂ᵧ² I = (h_yy/h_y)·∂ᵧI`.
pub fn planted_liouvillian(seed: u64) -> Planted {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        // h = c·y² + (linear)·y + (linear in x): quadratic in y.
        let c = rat(rng.gen_range(1..=3));
        let lin = random_poly(&mut rng, 1, 3);
        let h = &(&BiPoly::monomial(0, 2, c) + &(&lin * &BiPoly::y()))
            + &BiPoly::from_univariate_x(&[rat(rng.gen_range(-3..=3)), rat(rng.gen_range(-3..=3))]);
        let ax = BiPoly::from_univariate_x(&[rat(rng.gen_range(-3..=3)), rat(rng.gen_range(1..=3))]);
        let bx = BiPoly::from_univariate_x(&[rat(rng.gen_range(-3..=3)), rat(rng.gen_range(-3..=3))]);
        let a = h.dy();
        let b = &(&(&ax * &h) + &bx) - &h.dx();
        let degree = h.dy().degree().unwrap_or(0).max(h.dy().dy().degree().unwrap_or(0)).max(1);
        if let Some(vf) = field(a, b) {
            return Planted { name: format!("liouville-{seed}"), vf, class: IntegralClass::Liouvillian, degree };
        }
    }
}

/// `count` planted fields cycling through the three constructions.
pub fn planted_fields(count: usize, seed: u64) -> Vec<Planted> {
    (0..count as u64)
        .map(|i| match i % 3 {
            0 => planted_rational(seed.wrapping_add(i)),
            1 => planted_darbouxian(seed.wrapping_add(i)),
            _ => planted_liouvillian(seed.wrapping_add(i)),
        })
        .collect()
}

/// Ordering of the classes by generality.
pub fn class_rank(c: IntegralClass) -> u32 {
    match c {
        IntegralClass::Rational => 0,
        IntegralClass::Darbouxian(_) => 1,
        IntegralClass::Liouvillian => 2,
        IntegralClass::Riccati => 3,
    }
}

/// Checks the defining identity exactly and the constancy of the
/// differential invariant along a modular jet of order `σ`.
pub fn check_equation(vf: &VectorField, eq: &CanonicalEquation, seed: u64) -> Result<(), String> {
    if !condition_check(vf, eq) {
        return Err(format!("identity fails for {eq:?}"));
    }
    let level = eq.class.level();
    let n = eq.degree.max(1);
    let sigma = jet_order(n, level);
    let mut primes = PrimeStream::large();
    for attempt in 0..20u64 {
        // A base point away from A = 0 and from the poles of F.
        let base = choose_base_point(vf, seed.wrapping_add(attempt), 999).map_err(|e| e.to_string())?;
        if eq.f.den().eval(&base.x0, &base.y0) == rat(0) {
            continue;
        }
        let p = primes.next().expect("prime");
        let jet = match flow_jet_mod(vf, &base, n, level, p) {
            Ok(j) => j,
            Err(FlowError::UnluckyPrime) => continue,
            Err(e) => return Err(e.to_string()),
        };
        let Ok(inv) = casale_invariant(eq.class, &eq.f, &jet) else { continue };
        if inv.order() < sigma {
            return Err(format!("invariant truncated at {} < {sigma}", inv.order()));
        }
        return if inv.is_constant() { Ok(()) } else { Err(format!("invariant of {eq:?} is not constant at {base}")) };
    }
    Err("no usable base point for the invariant check".into())
}

/// A random cofactor problem `(vf, Ω, bound)`; odd seeds plant an invariant
/// curve `f` so that the solution space is nontrivial.
pub fn random_cofactor_instance(seed: u64) -> (VectorField, BiPoly, u32) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let bound = rng.gen_range(1..=6);
        let (a, b, omega) = if seed % 2 == 1 {
            // D₀f = f·(a₁f_x + b₁f_y) for A = a₁f + c·f_y, B = b₁f − c·f_x.
            let df = rng.gen_range(1..=2);
            let f = random_poly_exact(&mut rng, df, 2);
            let (a1, b1, c) = (random_poly(&mut rng, 1, 2), random_poly(&mut rng, 1, 2), random_poly(&mut rng, 0, 2));
            let a = &(&a1 * &f) + &(&c * &f.dy());
            let b = &(&b1 * &f) - &(&c * &f.dx());
            (a, b, &(&a1 * &f.dx()) + &(&b1 * &f.dy()))
        } else {
            let d = rng.gen_range(1..=3);
            let (a, b) = (random_poly(&mut rng, d, 3), random_poly(&mut rng, d, 3));
            (a, b, random_poly(&mut rng, d - 1, 2))
        };
        if let Ok(vf) = VectorField::new(a, b) {
            return (vf, omega, bound);
        }
    }
}

/// Dense and slice cofactor solvers agree on an instance.
pub fn cofactor_modes_agree(seed: u64) -> Result<usize, String> {
    let (vf, omega, bound) = random_cofactor_instance(seed);
    let dense = cofactor_solve(&vf, &omega, bound, CofactorMode::Dense);
    let slices = cofactor_solve(&vf, &omega, bound, CofactorMode::Slices);
    if dense != slices {
        return Err(format!("seed {seed}: dense {dense:?} vs slices {slices:?}"));
    }
    for q in &dense {
        if vf.apply_d0_poly(q) != &omega * q {
            return Err(format!("seed {seed}: {q} is not a solution"));
        }
    }
    Ok(dense.len())
}

/// Spot values and monotonicity of the bad-point bounds over `[1, 10]²`.
pub fn bounds_are_consistent() -> Result<(), String> {
    if minor_degree_bound(0, 1, 1) != rat(3) {
        return Err("B0(1,1) != 3".into());
    }
    if bad_point_bound(IntegralClass::Darbouxian(1), 1, 1) != rat(43) {
        return Err("D(1,1) != 43".into());
    }
    for level in 0..=3 {
        for d in 1..=10u32 {
            for n in 1..=10u32 {
                let v = minor_degree_bound(level, d, n);
                if n < 10 && minor_degree_bound(level, d, n + 1) <= v {
                    return Err(format!("B{level} not increasing in N at d={d}, N={n}"));
                }
                if d < 10 && minor_degree_bound(level, d + 1, n) <= v {
                    return Err(format!("B{level} not increasing in d at d={d}, N={n}"));
                }
            }
        }
    }
    Ok(())
}

/// An admissible integer base point drawn from `seed` in `[−5, 5]²`; small
/// coordinates keep exact jets cheap.
pub fn base_point(vf: &VectorField, seed: u64) -> BasePoint {
    choose_base_point(vf, seed, 5).expect("admissible point")
}

/// Runs the planted class pipeline at the planted degree and checks that the
/// equation found is valid and no more general than the planted class.
pub fn recover(p: &Planted, seed: u64) -> Result<CanonicalEquation, String> {
    let mut q = Query::new(p.vf.clone(), p.degree, p.class);
    q.seed = Some(seed);
    let out = compute_first_integral(&q).map_err(|e| e.to_string())?;
    match out.outcome {
        Outcome::Equation(e) => {
            if class_rank(e.class) > class_rank(p.class) {
                return Err(format!("{}: class {} above planted {}", p.name, e.class, p.class));
            }
            check_equation(&p.vf, &e, seed).map_err(|m| format!("{}: {m}", p.name))?;
            Ok(e)
        }
        other => Err(format!("{}: expected an equation, got {other:?} for {}", p.name, p.vf)),
    }
}

/// The kernel search (both modes) returns an element of the smallest
/// weighted degree in the kernel, with the kernel dimension of the
/// reference solver, and the element annihilates the exact jet.
pub fn kernel_is_minimal(name: &str, vf: &VectorField, n: u32, level: usize, base: &BasePoint) -> Result<(), String> {
    let k = if level == 3 { 2 } else { 1 };
    let reference = brute_force_kernel(vf, base, n, level, k).map_err(|e| e.to_string())?;
    for mode in [KernelMode::Dense, KernelMode::Structured] {
        let found = search_kernel(vf, base, n, level, k, mode, true).map_err(|e| e.to_string())?;
        if found.dim != reference.len() {
            return Err(format!("{name} N={n} r={level} {mode:?}: dim {} vs {}", found.dim, reference.len()));
        }
        match (found.element, reference.iter().map(|e| e.wdeg).min()) {
            (None, None) => {}
            (Some(e), Some(w)) if e.wdeg == w => {
                let jet = flow_jet(vf, base, n, level).map_err(|e| e.to_string())?;
                if !semantic_value(&e, &jet).map_err(|e| e.to_string())?.is_zero() {
                    return Err(format!("{name}: returned element does not annihilate the jet"));
                }
            }
            (e, w) => return Err(format!("{name} N={n} r={level} {mode:?}: {:?} vs minimal {w:?}", e.map(|e| e.wdeg))),
        }
    }
    Ok(())
}
