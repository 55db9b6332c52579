//! End-to-end pipelines on reference systems with known answers.

mod support;

use first_integrals::algebra::parse_poly;
use first_integrals::builders::{IntegralClass, Outcome, UnknownReason};
use first_integrals::driver::{compute_first_integral, Computation, Query};
use first_integrals::extactic::KernelMode;
use first_integrals::flow::BasePoint;
use first_integrals::{RatFunc, VectorField};

use support::check_equation;

fn field(a: &str, b: &str) -> VectorField {
    VectorField::new(parse_poly(a).unwrap(), parse_poly(b).unwrap()).unwrap()
}

fn ratfunc(num: &str, den: &str) -> RatFunc {
    RatFunc::new(parse_poly(num).unwrap(), parse_poly(den).unwrap()).unwrap()
}

fn darboux_quadratic() -> VectorField {
    field("x^2+2*x*y+y^2-4*x+4*y-2", "x^2+2*x*y+y^2+4*x-4*y-2")
}

fn generic_quadratic() -> VectorField {
    field("2*x^2+x*y-2*y^2-1", "2*x^2-2*y^2+y-3")
}

fn run(vf: &VectorField, n: u32, class: IntegralClass, base: Option<BasePoint>) -> Computation {
    let mut q = Query::new(vf.clone(), n, class);
    q.base = base;
    q.seed = Some(11);
    compute_first_integral(&q).expect("pipeline runs")
}

/// The equation of an outcome, after checking it.
fn equation(vf: &VectorField, run: &Computation) -> (IntegralClass, RatFunc, u32) {
    let Outcome::Equation(e) = &run.outcome else { panic!("expected an equation, got {:?}", run.outcome) };
    check_equation(vf, e, 5).expect("equation is valid");
    (e.class, e.f.clone(), e.degree)
}

#[test]
fn darbouxian_quadratic_at_degree_three() {
    let vf = darboux_quadratic();
    let out = run(&vf, 3, IntegralClass::Darbouxian(1), Some(BasePoint::int(1, 8)));
    let (class, f, degree) = equation(&vf, &out);
    assert_eq!(class, IntegralClass::Darbouxian(1));
    assert_eq!(degree, 3);
    assert!(f.proportional_to(&ratfunc("-14*(x^2+2*x*y+y^2-4*x+4*y-2)", "11*(x-y)*(x^2+2*x*y+y^2-2)")), "{f}");
    assert_eq!(out.diagnostics.kernel_dim, 1);
    assert_eq!(out.diagnostics.chain, vec![IntegralClass::Darbouxian(1)]);
}

#[test]
fn darbouxian_quadratic_below_its_degree() {
    let out = run(&darboux_quadratic(), 2, IntegralClass::Darbouxian(1), Some(BasePoint::int(1, 8)));
    assert_eq!(out.outcome, Outcome::NoneFound);
    assert_eq!(out.diagnostics.kernel_dim, 0);
}

#[test]
fn base_point_on_an_invariant_line_is_unknown() {
    // (1, 1) lies on x = y, one of the curves of the integral.
    let out = run(&darboux_quadratic(), 3, IntegralClass::Darbouxian(1), Some(BasePoint::int(1, 1)));
    assert_eq!(out.outcome, Outcome::Unknown(UnknownReason::SingletonBasis));
}

#[test]
fn base_point_on_a_zero_of_a_is_unknown() {
    // With u = x + y, v = x − y, A = u² − 4v − 2 vanishes at u = 0, v = −1/2.
    let vf = darboux_quadratic();
    let quarter = |n: i64| first_integrals::Rat::new(n.into(), 4.into());
    let zero = BasePoint::new(quarter(-1), quarter(1));
    assert!(!vf.admissible_at(&zero.x0, &zero.y0));
    let out = run(&vf, 3, IntegralClass::Darbouxian(1), Some(zero));
    assert_eq!(out.outcome, Outcome::Unknown(UnknownReason::PointOnA));
}

#[test]
fn deterministic_wrapper_agrees_with_a_random_point() {
    let vf = darboux_quadratic();
    let mut q = Query::new(vf.clone(), 3, IntegralClass::Darbouxian(1));
    q.deterministic = true;
    let det = compute_first_integral(&q).unwrap();
    let (_, f_det, _) = equation(&vf, &det);
    let (_, f_rand, _) = equation(&vf, &run(&vf, 3, IntegralClass::Darbouxian(1), None));
    assert!(f_det.proportional_to(&f_rand));
}

#[test]
fn darbouxian_family_with_large_parameter() {
    let vf = field("2*100^2*x-2*100^2*y+100^2-(x+y)^2", "2*100^2*y-2*100^2*x+100^2-(x+y)^2");
    let (class, f, _) = equation(&vf, &run(&vf, 3, IntegralClass::Darbouxian(1), None));
    assert_eq!(class, IntegralClass::Darbouxian(1));
    assert_eq!(f.den(), ratfunc("1", "(x-y)*(x+y+100)*(x+y-100)").den());
}

#[test]
fn liouvillian_quadratic() {
    let vf = field("2*x^2-2*y^2-1", "2*x^2-2*y^2-3");
    let (class, f, degree) = equation(&vf, &run(&vf, 3, IntegralClass::Liouvillian, None));
    assert_eq!((class, degree), (IntegralClass::Liouvillian, 3));
    assert_eq!(f, ratfunc("2*(x+y)*(2*x^2-4*x*y+2*y^2-1)", "2*x^2-2*y^2-1"));
}

#[test]
fn kamke_185_is_liouvillian() {
    let vf = field("-x^7", "y^2*(5*x^3+2*x^2*y+2*y)");
    let (class, f, _) = equation(&vf, &run(&vf, 7, IntegralClass::Liouvillian, None));
    assert_eq!(class, IntegralClass::Liouvillian);
    assert_eq!(f, ratfunc("-(x^6+7*x^3*y+6*x^2*y^2+6*y^2)", "2*y*(x^6+2*x^3*y+x^2*y^2+y^2)"));
}

#[test]
fn kamke_43_is_riccati() {
    let vf = field("1", "-(9*x^2+36*x+17)*y^3-3*x*y^2");
    let (class, f, _) = equation(&vf, &run(&vf, 9, IntegralClass::Riccati, None));
    assert_eq!(class, IntegralClass::Riccati);
    let p = "81*x^4*y^3+648*x^3*y^3-18*x^3*y^2+1602*x^2*y^3-180*x^2*y^2+1224*x*y^3+3*x^2*y-466*x*y^2+289*y^3+24*x*y-204*y^2+36*y-2";
    assert_eq!(f, ratfunc(&format!("3*({p})"), "4*(9*x^2*y+36*x*y+17*y-6)^2*y^3"));
}

#[test]
fn generic_quadratic_has_no_small_integrals() {
    let vf = generic_quadratic();
    for n in 1..=5 {
        for class in [IntegralClass::Liouvillian, IntegralClass::Riccati] {
            assert_eq!(run(&vf, n, class, None).outcome, Outcome::NoneFound, "{class} at N = {n}");
        }
    }
}

#[test]
fn early_none_in_the_deterministic_wrapper() {
    let mut q = Query::new(generic_quadratic(), 1, IntegralClass::Riccati);
    q.deterministic = true;
    let out = compute_first_integral(&q).unwrap();
    assert_eq!(out.outcome, Outcome::NoneFound);
    assert_eq!(out.diagnostics.points_tried, 1);
}

#[test]
fn translation_field_rational_integral() {
    let vf = field("1", "1");
    let mut q = Query::new(vf.clone(), 1, IntegralClass::Rational);
    q.deterministic = true;
    let (class, f, degree) = equation(&vf, &compute_first_integral(&q).unwrap());
    assert_eq!((class, degree), (IntegralClass::Rational, 1));
    assert!(f.proportional_to(&ratfunc("x-y", "1")));
}

#[test]
fn identical_queries_give_identical_results() {
    let vf = darboux_quadratic();
    let mut a = run(&vf, 3, IntegralClass::Darbouxian(1), None);
    let mut b = run(&vf, 3, IntegralClass::Darbouxian(1), None);
    a.diagnostics.timings = Default::default();
    b.diagnostics.timings = Default::default();
    assert_eq!(a, b);
}

#[test]
fn outcome_is_independent_of_the_base_point() {
    let vf = darboux_quadratic();
    let reference = run(&vf, 3, IntegralClass::Darbouxian(1), Some(BasePoint::int(1, 8)));
    let Outcome::Equation(expected) = reference.outcome else { panic!() };
    let mut agree = 0;
    for seed in 0..100 {
        let mut q = Query::new(vf.clone(), 3, IntegralClass::Darbouxian(1));
        q.seed = Some(seed);
        if let Outcome::Equation(e) = compute_first_integral(&q).unwrap().outcome {
            agree += usize::from(e.class == expected.class && e.degree == expected.degree);
        }
    }
    assert!(agree >= 95, "only {agree} of 100 base points agree");
}

#[test]
fn a_trivial_kernel_is_trivial_everywhere() {
    let vf = generic_quadratic();
    for seed in 0..10 {
        let mut q = Query::new(vf.clone(), 2, IntegralClass::Liouvillian);
        q.seed = Some(seed);
        assert_eq!(compute_first_integral(&q).unwrap().outcome, Outcome::NoneFound);
    }
}

#[test]
fn structured_kernel_mode_gives_the_same_answers() {
    let vf = field("2*x^2-2*y^2-1", "2*x^2-2*y^2-3");
    let mut q = Query::new(vf.clone(), 3, IntegralClass::Liouvillian);
    q.seed = Some(2);
    let dense = compute_first_integral(&q).unwrap().outcome;
    q.kernel_mode = KernelMode::Structured;
    assert_eq!(compute_first_integral(&q).unwrap().outcome, dense);
}

#[test]
fn riccati_pipeline_falls_back_to_a_darbouxian_square() {
    // A rational-in-x family member whose Riccati kernel has no Q part.
    let vf = VectorField::reduced(parse_poly("x^3-x*y^2-x").unwrap(), parse_poly("x^2*y-y^3-y").unwrap()).unwrap();
    let out = run(&vf, 1, IntegralClass::Riccati, None);
    let Outcome::Equation(e) = &out.outcome else { panic!("{:?}", out.outcome) };
    check_equation(&vf, e, 1).unwrap();
    assert_eq!(out.diagnostics.chain[0], IntegralClass::Riccati);
}
