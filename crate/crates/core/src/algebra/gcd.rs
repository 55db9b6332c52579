//! Greatest common divisors in ℚ[y] and ℚ[x, y].
//!
//! Both are dense modular algorithms: images are computed modulo 62-bit
//! primes (with evaluation/interpolation in `y` for the bivariate case),
//! combined by Chinese remaindering and rational reconstruction, and the
//! candidate is accepted only after exact trial division. Unlucky primes
//! or evaluation points show up as images of too high a degree and are
//! discarded.

use num_traits::One;

use super::modular::{PrimeStream, VectorLifter};
use super::poly::{trim_rat, BiPoly};
use super::rat::Rat;
use super::scalar::rat_mod;
use super::upoly::{q, zp};

/// Reduces a rational coefficient list modulo `p` (`None` if a denominator vanishes).
fn reduce(v: &[Rat], p: u64) -> Option<Vec<u64>> {
    let mut out = v.iter().map(|c| rat_mod(c, p)).collect::<Option<Vec<u64>>>()?;
    zp::trim(&mut out);
    Some(out)
}

/// Normalizes a univariate rational polynomial to be monic.
fn monic_q(v: &[Rat]) -> Vec<Rat> {
    let mut v = v.to_vec();
    trim_rat(&mut v);
    q::monic(&v)
}

/// Monic gcd of two univariate polynomials over ℚ (the gcd of two zero
/// polynomials is zero).
pub fn gcd_univariate(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let (a, b) = (monic_q(a), monic_q(b));
    if a.is_empty() {
        return b;
    }
    if b.is_empty() {
        return a;
    }
    if a.len() == 1 || b.len() == 1 {
        return vec![Rat::one()];
    }
    let mut best_deg = usize::MAX;
    let mut lifter: Option<VectorLifter> = None;
    let mut previous: Option<Vec<Rat>> = None;
    for p in PrimeStream::large() {
        let (Some(ap), Some(bp)) = (reduce(&a, p), reduce(&b, p)) else {
            continue;
        };
        if ap.len() != a.len() || bp.len() != b.len() {
            continue;
        }
        let g = zp::gcd(&ap, &bp, p);
        let d = g.len() - 1;
        if d == 0 {
            return vec![Rat::one()];
        }
        if d > best_deg {
            continue;
        }
        if d < best_deg {
            best_deg = d;
            lifter = Some(VectorLifter::new(d + 1));
            previous = None;
        }
        let lift = lifter.as_mut().expect("initialized");
        lift.add_image(&g, p);
        let Some(cand) = lift.reconstruct() else {
            continue;
        };
        if previous.as_ref() != Some(&cand) {
            previous = Some(cand);
            continue;
        }
        if q::divrem(&a, &cand).1.is_empty() && q::divrem(&b, &cand).1.is_empty() {
            return cand;
        }
    }
    unreachable!("prime stream exhausted")
}

/// Gcd of a list of univariate polynomials over ℚ (monic; zero for an empty list).
pub fn gcd_univariate_many<'a>(polys: impl IntoIterator<Item = &'a Vec<Rat>>) -> Vec<Rat> {
    let mut g: Vec<Rat> = Vec::new();
    for p in polys {
        g = gcd_univariate(&g, p);
        if g.len() == 1 {
            break;
        }
    }
    g
}

/// Content of `p` with respect to `x`: the monic gcd in ℚ[y] of its coefficients.
pub fn content_in_y(p: &BiPoly) -> Vec<Rat> {
    let rows = p.coeffs_in_x();
    gcd_univariate_many(rows.iter().filter(|r| !r.is_empty()))
}

/// Greatest common divisor in ℚ[x, y], normalized to the primitive integer
/// form of [`BiPoly::primitive`] (positive graded-lex leading coefficient).
pub fn gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    if a.is_zero() {
        return b.primitive();
    }
    if b.is_zero() {
        return a.primitive();
    }
    if a.is_constant() || b.is_constant() {
        return BiPoly::one();
    }
    if a.deg_x() == Some(0) && b.deg_x() == Some(0) {
        return gcd(&a.swap_xy(), &b.swap_xy()).swap_xy();
    }
    let ca = content_in_y(a);
    let cb = content_in_y(b);
    let cg = BiPoly::from_univariate_y(&gcd_univariate(&ca, &cb));
    let pa = a.exact_div(&BiPoly::from_univariate_y(&ca)).expect("content divides");
    let pb = b.exact_div(&BiPoly::from_univariate_y(&cb)).expect("content divides");
    let pg = if pa.deg_x() == Some(0) || pb.deg_x() == Some(0) { BiPoly::one() } else { primitive_gcd(&pa, &pb) };
    (&cg * &pg).primitive()
}

/// Gcd of many bivariate polynomials.
pub fn gcd_many<'a>(polys: impl IntoIterator<Item = &'a BiPoly>) -> BiPoly {
    let mut g = BiPoly::zero();
    for p in polys {
        g = gcd(&g, p);
        if g.is_constant() && !g.is_zero() {
            break;
        }
    }
    g
}

/// Removes the content in ℚ[y] and returns the primitive integer form.
pub fn primitive_part_x(p: &BiPoly) -> BiPoly {
    let c = content_in_y(p);
    p.exact_div(&BiPoly::from_univariate_y(&c)).expect("content divides").primitive()
}

/// Image of `p` modulo a prime as rows `[i][j]` for `x^i y^j`.
fn reduce_bi(p: &BiPoly, p_mod: u64) -> Option<Vec<Vec<u64>>> {
    p.coeffs_in_x().iter().map(|row| reduce(row, p_mod)).collect()
}

/// Brown's dense modular gcd for polynomials primitive with respect to `x`
/// and of positive `x`-degree.
fn primitive_gcd(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let rows_a = a.coeffs_in_x();
    let rows_b = b.coeffs_in_x();
    let lc_a = rows_a.last().expect("nonzero").clone();
    let lc_b = rows_b.last().expect("nonzero").clone();
    let gamma = gcd_univariate(&lc_a, &lc_b);
    let y_bound = gamma.len() - 1 + (a.deg_y().unwrap().min(b.deg_y().unwrap()) as usize);
    let npts = y_bound + 1;

    let mut best_deg = usize::MAX;
    let mut lifter: Option<VectorLifter> = None;
    let mut previous: Option<Vec<Rat>> = None;

    for p in PrimeStream::large() {
        let (Some(ap), Some(bp), Some(gp)) = (reduce_bi(a, p), reduce_bi(b, p), reduce(&gamma, p)) else {
            continue;
        };
        let (la, lb) = (ap.last().unwrap(), bp.last().unwrap());
        if la.is_empty() || lb.is_empty() || gp.is_empty() {
            continue;
        }
        // Collect images at evaluation points with the minimal gcd degree.
        let mut deg_p = usize::MAX;
        let mut pts: Vec<u64> = Vec::new();
        let mut vals: Vec<Vec<u64>> = Vec::new();
        // The starting point varies with the prime so that a point that is
        // unlucky for every prime (such as y = 0 for gcd(x⁴ + y⁴, x³)) cannot
        // be selected forever.
        let start = (p >> 11) % p;
        let mut step = 0u64;
        while pts.len() < npts && step < p {
            let b0 = (start + step) % p;
            step += 1;
            if zp::eval(la, b0, p) == 0 || zp::eval(lb, b0, p) == 0 {
                continue;
            }
            let ea: Vec<u64> = {
                let mut v: Vec<u64> = ap.iter().map(|r| zp::eval(r, b0, p)).collect();
                zp::trim(&mut v);
                v
            };
            let eb: Vec<u64> = {
                let mut v: Vec<u64> = bp.iter().map(|r| zp::eval(r, b0, p)).collect();
                zp::trim(&mut v);
                v
            };
            let g = zp::gcd(&ea, &eb, p);
            let d = g.len() - 1;
            if d > deg_p {
                continue;
            }
            if d < deg_p {
                deg_p = d;
                pts.clear();
                vals.clear();
            }
            let scale = zp::eval(&gp, b0, p);
            let mut g = zp::scale(&g, scale, p);
            g.resize(d + 1, 0);
            pts.push(b0);
            vals.push(g);
        }
        if deg_p == 0 {
            return BiPoly::one();
        }
        if deg_p > best_deg {
            continue;
        }
        // Interpolate each x-coefficient in y.
        let mut image: Vec<u64> = Vec::with_capacity((deg_p + 1) * npts);
        for i in 0..=deg_p {
            let ys: Vec<u64> = vals.iter().map(|v| v[i]).collect();
            let mut poly = zp::interpolate(&pts, &ys, p);
            poly.resize(npts, 0);
            image.extend(poly);
        }
        if deg_p < best_deg {
            best_deg = deg_p;
            lifter = Some(VectorLifter::new(image.len()));
            previous = None;
        }
        let lift = lifter.as_mut().expect("initialized");
        lift.add_image(&image, p);
        let Some(cand) = lift.reconstruct() else {
            continue;
        };
        if previous.as_ref() != Some(&cand) {
            previous = Some(cand);
            continue;
        }
        let rows: Vec<Vec<Rat>> = cand.chunks(npts).map(|c| c.to_vec()).collect();
        let h = primitive_part_x(&BiPoly::from_coeffs_in_x(&rows));
        if a.divisible_by(&h) && b.divisible_by(&h) {
            return h;
        }
    }
    unreachable!("prime stream exhausted")
}

/// Squarefree part `p / gcd(p, ∂ₓp, ∂ᵧp)` in primitive integer form.
pub fn squarefree_part(p: &BiPoly) -> Option<BiPoly> {
    if p.is_zero() {
        return None;
    }
    let g = gcd(&gcd(p, &p.dx()), &p.dy());
    let g = if g.is_zero() { BiPoly::one() } else { g };
    Some(p.exact_div(&g).expect("gcd divides").primitive())
}
