//! From kernel elements to canonical first-integral equations.
//!
//! A kernel element of level `r` is turned into one of the four canonical
//! equations. When the element does not satisfy the class identity, an
//! escalation polynomial is formed and the builder of the next simpler class
//! is invoked on it; the chain ends in the rational builder, which looks for
//! two independent Darboux polynomials with the same cofactor.
//!
//! All formulas are evaluated in cleared-denominator polynomial form, so the
//! identities below are exact polynomial identities over ℚ.

mod bounds;
mod cofactor;

use std::fmt;
use std::str::FromStr;

use crate::algebra::gcd::{gcd, squarefree_part};
use crate::algebra::poly::{grlex_cmp, BiPoly};
use crate::algebra::rat::Rat;
use crate::algebra::{RatFunc, VectorField};
use crate::factor::factor_bivariate;
use crate::flow::BasePoint;

pub use bounds::{bad_point_bound, minor_degree_bound};
pub use cofactor::{cofactor_solve, CofactorMode};

/// The four classes of first integrals, ordered by generality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IntegralClass {
    Rational,
    /// `k`-Darbouxian: `∂ᵧ𝓕 = F` with `Fᵏ` rational.
    Darbouxian(u32),
    Liouvillian,
    Riccati,
}

impl IntegralClass {
    /// Level `r` of the prolonged system used to search for this class.
    pub fn level(self) -> usize {
        match self {
            IntegralClass::Rational => 0,
            IntegralClass::Darbouxian(_) => 1,
            IntegralClass::Liouvillian => 2,
            IntegralClass::Riccati => 3,
        }
    }

    /// Exponent `k` of the kernel's `y₁ᵏ` block (2 for Riccati's fallback).
    pub fn k(self) -> u32 {
        match self {
            IntegralClass::Darbouxian(k) => k,
            IntegralClass::Riccati => 2,
            _ => 1,
        }
    }

    /// Command-line name of the class.
    pub fn name(self) -> &'static str {
        match self {
            IntegralClass::Rational => "rational",
            IntegralClass::Darbouxian(_) => "darboux",
            IntegralClass::Liouvillian => "liouville",
            IntegralClass::Riccati => "riccati",
        }
    }

    /// Parses a command-line class name; `k` applies to the Darbouxian class.
    pub fn parse(name: &str, k: u32) -> Option<IntegralClass> {
        match name {
            "rational" => Some(IntegralClass::Rational),
            "darboux" | "darbouxian" if k >= 1 => Some(IntegralClass::Darbouxian(k)),
            "liouville" | "liouvillian" => Some(IntegralClass::Liouvillian),
            "riccati" => Some(IntegralClass::Riccati),
            _ => None,
        }
    }
}

impl fmt::Display for IntegralClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IntegralClass::Rational => write!(f, "rational"),
            IntegralClass::Darbouxian(k) => write!(f, "darboux(k={k})"),
            IntegralClass::Liouvillian => write!(f, "liouville"),
            IntegralClass::Riccati => write!(f, "riccati"),
        }
    }
}

impl FromStr for IntegralClass {
    type Err = String;

    /// Accepts the [`Display`](fmt::Display) forms, plus `darboux` for `k = 1`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if let Some(rest) = s.strip_prefix("darboux(k=").and_then(|r| r.strip_suffix(')')) {
            let k: u32 = rest.parse().map_err(|_| format!("bad exponent in {s:?}"))?;
            return IntegralClass::parse("darboux", k).ok_or_else(|| format!("bad exponent in {s:?}"));
        }
        IntegralClass::parse(s, 1).ok_or_else(|| format!("unknown class {s:?}"))
    }
}

/// A canonical equation: `𝓕 = F` (rational), `∂ᵧ𝓕 = F^{1/k}` (Darbouxian,
/// `F` stores `G = Fᵏ`), `∂ᵧ²𝓕 = F·∂ᵧ𝓕` (Liouvillian) or `𝓕` a quotient of
/// solutions of `∂ᵧ²𝓕 = F·𝓕` (Riccati).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalEquation {
    pub class: IntegralClass,
    pub f: RatFunc,
    /// `max(deg num F, deg den F)`.
    pub degree: u32,
}

impl CanonicalEquation {
    pub fn new(class: IntegralClass, f: RatFunc) -> Self {
        let degree = f.degree();
        CanonicalEquation { class, f, degree }
    }
}

/// Why a pipeline could not decide.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum UnknownReason {
    /// `A` vanishes at the base point.
    PointOnA,
    /// No irreducible Darboux factor passes through the base point.
    NoVanishingFactor,
    /// The cofactor system has a one-dimensional solution space.
    SingletonBasis,
}

impl UnknownReason {
    /// Machine-readable code.
    pub fn code(self) -> &'static str {
        match self {
            UnknownReason::PointOnA => "point-on-A",
            UnknownReason::NoVanishingFactor => "no-vanishing-factor",
            UnknownReason::SingletonBasis => "singleton-basis",
        }
    }

    pub fn from_code(code: &str) -> Option<Self> {
        [UnknownReason::PointOnA, UnknownReason::NoVanishingFactor, UnknownReason::SingletonBasis].into_iter().find(|r| r.code() == code)
    }
}

impl fmt::Display for UnknownReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// Result of a pipeline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Equation(CanonicalEquation),
    /// No first integral of the requested class (or simpler) of degree ≤ N.
    NoneFound,
    Unknown(UnknownReason),
}

/// An outcome together with the builders visited to produce it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Built {
    pub outcome: Outcome,
    pub chain: Vec<IntegralClass>,
}

impl Built {
    fn push_front(mut self, class: IntegralClass) -> Self {
        self.chain.insert(0, class);
        self
    }

    fn leaf(class: IntegralClass, outcome: Outcome) -> Self {
        Built { outcome, chain: vec![class] }
    }
}

/// Options for the builders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct BuildOptions {
    pub cofactor: CofactorMode,
}

/// `Q·D₀(P) − P·D₀(Q)`, the numerator of `Q²·D₀(P/Q)`.
fn wronskian(vf: &VectorField, p: &BiPoly, q: &BiPoly) -> BiPoly {
    &(q * &vf.apply_d0_poly(p)) - &(p * &vf.apply_d0_poly(q))
}

fn degree(p: &BiPoly) -> i64 {
    p.degree_or_neg()
}

/// Cleared Darbouxian identity `A(Q·D₀P − P·D₀Q) + k·P·Q·W₁` for `G = P/Q`.
fn darbouxian_residual(vf: &VectorField, p: &BiPoly, q: &BiPoly, k: u32) -> BiPoly {
    let kk = Rat::from_integer(k.into());
    &(vf.a() * &wronskian(vf, p, q)) + &(&(p * q) * vf.dy_ba_numerator(1)).scale(&kk)
}

/// Cleared Liouvillian identity `A²(Q·D₀P − P·D₀Q) + A·P·Q·W₁ + Q²·W₂`.
fn liouvillian_residual(vf: &VectorField, p: &BiPoly, q: &BiPoly) -> BiPoly {
    let a = vf.a();
    let t1 = &(a * a) * &wronskian(vf, p, q);
    let t2 = &(a * &(p * q)) * vf.dy_ba_numerator(1);
    let t3 = &(q * q) * vf.dy_ba_numerator(2);
    &(&t1 + &t2) + &t3
}

/// Cleared Riccati identity `4A³(Q·D₀P − P·D₀Q) + 8A²·P·Q·W₁ − 2Q²·W₃`.
fn riccati_residual(vf: &VectorField, p: &BiPoly, q: &BiPoly) -> BiPoly {
    let a = vf.a();
    let a2 = a * a;
    let t1 = (&(&a2 * a) * &wronskian(vf, p, q)).scale(&Rat::from_integer(4.into()));
    let t2 = (&(&a2 * &(p * q)) * vf.dy_ba_numerator(1)).scale(&Rat::from_integer(8.into()));
    let t3 = (&(q * q) * vf.dy_ba_numerator(3)).scale(&Rat::from_integer(2.into()));
    &(&t1 + &t2) - &t3
}

/// Exact check of the class identity satisfied by the equation's `F`:
/// rational `D₀F = 0` with `F ∉ ℚ`; Darbouxian `D₀G = −k·A·G·∂ᵧ(B/A)` with
/// `G ≠ 0`; Liouvillian `D₀F = −A∂ᵧ(B/A)F − A∂ᵧ²(B/A)`; Riccati
/// `D₀F = −2A∂ᵧ(B/A)F + ½A∂ᵧ³(B/A)`.
pub fn condition_check(vf: &VectorField, eq: &CanonicalEquation) -> bool {
    let (p, q) = (eq.f.num(), eq.f.den());
    match eq.class {
        IntegralClass::Rational => !eq.f.is_constant() && wronskian(vf, p, q).is_zero(),
        IntegralClass::Darbouxian(k) => k >= 1 && !p.is_zero() && darbouxian_residual(vf, p, q, k).is_zero(),
        IntegralClass::Liouvillian => liouvillian_residual(vf, p, q).is_zero(),
        IntegralClass::Riccati => riccati_residual(vf, p, q).is_zero(),
    }
}

/// Rational builder: Darboux factors of `P` through the base point and two
/// independent polynomials with the same cofactor.
pub fn build_rational(vf: &VectorField, p: &BiPoly, base: &BasePoint, opts: BuildOptions) -> Built {
    let unknown = |r| Built::leaf(IntegralClass::Rational, Outcome::Unknown(r));
    let Some(p_red) = squarefree_part(p) else {
        return unknown(UnknownReason::NoVanishingFactor);
    };
    let darboux = gcd(&p_red, &vf.apply_d0_poly(&p_red));
    if darboux.is_constant() {
        return unknown(UnknownReason::NoVanishingFactor);
    }
    let factors = factor_bivariate(&darboux).expect("nonzero polynomial").factors;
    let Some((l, _)) = factors.iter().find(|(l, _)| l.eval(&base.x0, &base.y0) == Rat::from_integer(0.into())) else {
        return unknown(UnknownReason::NoVanishingFactor);
    };
    let omega = vf.apply_d0_poly(l).exact_div(l).expect("Darboux factor divides its derivative");
    let basis = cofactor_solve(vf, &omega, l.degree().unwrap_or(0), opts.cofactor);
    if basis.len() < 2 {
        return unknown(UnknownReason::SingletonBasis);
    }
    let lead = |b: &BiPoly| b.leading_term().map(|(m, _)| m).expect("nonzero basis element");
    let b1 = basis.iter().max_by(|a, b| grlex_cmp(&lead(a), &lead(b))).expect("nonempty");
    let b2 = basis.iter().min_by(|a, b| grlex_cmp(&lead(a), &lead(b))).expect("nonempty");
    let f = RatFunc::new(b1.clone(), b2.clone()).expect("nonzero basis element");
    Built::leaf(IntegralClass::Rational, Outcome::Equation(CanonicalEquation::new(IntegralClass::Rational, f)))
}

/// Darbouxian builder for the kernel element `y₁ᵏ·P + Q`.
pub fn build_darbouxian(vf: &VectorField, p: &BiPoly, q: &BiPoly, base: &BasePoint, k: u32, opts: BuildOptions) -> Built {
    let class = IntegralClass::Darbouxian(k);
    assert!(!(p.is_zero() && q.is_zero()), "Darbouxian builder needs (P, Q) ≠ 0");
    if p.is_zero() {
        return build_rational(vf, q, base, opts).push_front(class);
    }
    if q.is_zero() {
        return build_rational(vf, p, base, opts).push_front(class);
    }
    let r1 = darbouxian_residual(vf, p, q, k);
    let n = degree(p).max(degree(q));
    let d = vf.d() as i64;
    assert!(degree(&r1) <= 2 * n + 2 * d - 1, "escalation polynomial exceeds its degree bound");
    if r1.is_zero() {
        let f = RatFunc::new(p.clone(), q.clone()).expect("Q ≠ 0");
        return Built::leaf(class, Outcome::Equation(CanonicalEquation::new(class, f)));
    }
    build_rational(vf, &r1, base, opts).push_front(class)
}

/// Liouvillian builder for the kernel element `P·y₁² + Q·y₂ + R·y₁`.
pub fn build_liouvillian(vf: &VectorField, p: &BiPoly, q: &BiPoly, r: &BiPoly, base: &BasePoint, opts: BuildOptions) -> Built {
    let class = IntegralClass::Liouvillian;
    if q.is_zero() {
        return build_darbouxian(vf, p, r, base, 1, opts).push_front(class);
    }
    let a = vf.a();
    let p1 = liouvillian_residual(vf, p, q);
    let q1 = &(a * a) * &wronskian(vf, r, q);
    let n = degree(p).max(degree(q)).max(degree(r));
    let d = vf.d() as i64;
    assert!(degree(&p1) <= 2 * n + 3 * d - 1 && degree(&q1) <= 2 * n + 3 * d - 1, "escalation polynomials exceed their degree bound");
    if p1.is_zero() {
        let f = RatFunc::new(p.clone(), q.clone()).expect("Q ≠ 0");
        return Built::leaf(class, Outcome::Equation(CanonicalEquation::new(class, f)));
    }
    build_darbouxian(vf, &p1, &q1, base, 1, opts).push_front(class)
}

/// Riccati builder for the kernel element `4P·y₁⁴ + Q·(3y₂² − 2y₃y₁) + R·y₁²`.
pub fn build_riccati(vf: &VectorField, p: &BiPoly, q: &BiPoly, r: &BiPoly, base: &BasePoint, opts: BuildOptions) -> Built {
    let class = IntegralClass::Riccati;
    if q.is_zero() {
        let four_p = p.scale(&Rat::from_integer(4.into()));
        return build_darbouxian(vf, &four_p, r, base, 2, opts).push_front(class);
    }
    let a = vf.a();
    let p1 = riccati_residual(vf, p, q);
    let q1 = &(&(a * a) * a) * &wronskian(vf, r, q);
    let n = degree(p).max(degree(q)).max(degree(r));
    let d = vf.d() as i64;
    assert!(degree(&p1) <= 2 * n + 4 * d - 1 && degree(&q1) <= 2 * n + 4 * d - 1, "escalation polynomials exceed their degree bound");
    if p1.is_zero() {
        let f = RatFunc::new(p.clone(), q.clone()).expect("Q ≠ 0");
        return Built::leaf(class, Outcome::Equation(CanonicalEquation::new(class, f)));
    }
    build_darbouxian(vf, &p1, &q1, base, 2, opts).push_front(class)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat::rat;

    fn p(t: &[(u32, u32, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn field(a: &[(u32, u32, i64)], b: &[(u32, u32, i64)]) -> VectorField {
        VectorField::new(p(a), p(b)).unwrap()
    }

    fn eq(class: IntegralClass, num: BiPoly, den: BiPoly) -> CanonicalEquation {
        CanonicalEquation::new(class, RatFunc::new(num, den).unwrap())
    }

    #[test]
    fn class_names_round_trip() {
        for c in [
            IntegralClass::Rational,
            IntegralClass::Darbouxian(1),
            IntegralClass::Darbouxian(3),
            IntegralClass::Liouvillian,
            IntegralClass::Riccati,
        ] {
            assert_eq!(c.to_string().parse::<IntegralClass>(), Ok(c));
        }
        assert_eq!(IntegralClass::parse("darboux", 0), None);
    }

    #[test]
    fn liouvillian_identity_of_the_quadratic_field() {
        let vf = field(&[(2, 0, 2), (0, 2, -2), (0, 0, -1)], &[(2, 0, 2), (0, 2, -2), (0, 0, -3)]);
        // 2(x+y)(2x² − 4xy + 2y² − 1) / (2x² − 2y² − 1)
        let num = &p(&[(1, 0, 2), (0, 1, 2)]) * &p(&[(2, 0, 2), (1, 1, -4), (0, 2, 2), (0, 0, -1)]);
        let den = p(&[(2, 0, 2), (0, 2, -2), (0, 0, -1)]);
        assert!(condition_check(&vf, &eq(IntegralClass::Liouvillian, num.clone(), den.clone())));
        assert!(!condition_check(&vf, &eq(IntegralClass::Liouvillian, num.scale(&rat(2)), den)));
    }

    #[test]
    fn constants_are_not_rational_integrals() {
        let vf = field(&[(1, 0, 1)], &[(0, 1, -1)]);
        assert!(!condition_check(&vf, &eq(IntegralClass::Rational, BiPoly::constant(rat(5)), BiPoly::one())));
        assert!(condition_check(&vf, &eq(IntegralClass::Rational, p(&[(1, 1, 1)]), BiPoly::one())));
    }

    #[test]
    fn kamke_43_riccati_identity() {
        // A = 1, B = −(9x² + 36x + 17)y³ − 3xy²
        let vf = field(&[(0, 0, 1)], &[(2, 3, -9), (1, 3, -36), (0, 3, -17), (1, 2, -3)]);
        let num = p(&[
            (4, 3, 81),
            (3, 3, 648),
            (3, 2, -18),
            (2, 3, 1602),
            (2, 2, -180),
            (1, 3, 1224),
            (2, 1, 3),
            (1, 2, -466),
            (0, 3, 289),
            (1, 1, 24),
            (0, 2, -204),
            (0, 1, 36),
            (0, 0, -2),
        ])
        .scale(&rat(3));
        let inner = p(&[(2, 1, 9), (1, 1, 36), (0, 1, 17), (0, 0, -6)]);
        let den = (&(&inner * &inner) * &p(&[(0, 3, 1)])).scale(&rat(4));
        assert!(condition_check(&vf, &eq(IntegralClass::Riccati, num, den)));
    }

    #[test]
    fn rational_builder_on_the_saddle() {
        let vf = field(&[(1, 0, 1)], &[(0, 1, -1)]);
        let base = BasePoint::int(1, 2);
        let built = build_rational(&vf, &p(&[(1, 1, 1), (0, 0, -2)]), &base, BuildOptions::default());
        let Outcome::Equation(e) = &built.outcome else { panic!("{built:?}") };
        assert!(condition_check(&vf, e));
        assert_eq!(e.degree, 2);
    }

    #[test]
    fn darbouxian_delegates_when_one_side_vanishes() {
        let vf = field(&[(1, 0, 1)], &[(0, 1, -1)]);
        let base = BasePoint::int(1, 2);
        let built = build_darbouxian(&vf, &BiPoly::zero(), &p(&[(1, 1, 1), (0, 0, -2)]), &base, 1, BuildOptions::default());
        assert_eq!(built.chain, vec![IntegralClass::Darbouxian(1), IntegralClass::Rational]);
        assert!(matches!(built.outcome, Outcome::Equation(ref e) if e.class == IntegralClass::Rational));
    }

    #[test]
    fn darbouxian_identity_holds_for_planted_integral() {
        // 𝓕 = log(x) + y has ∂ᵧ𝓕 = 1 and D₀𝓕 = 0 for A = x, B = −1.
        let vf = field(&[(1, 0, 1)], &[(0, 0, -1)]);
        let built = build_darbouxian(&vf, &BiPoly::one(), &BiPoly::one(), &BasePoint::int(1, 0), 1, BuildOptions::default());
        let Outcome::Equation(e) = &built.outcome else { panic!("{built:?}") };
        assert_eq!(e.class, IntegralClass::Darbouxian(1));
        assert!(condition_check(&vf, e));
    }
}
