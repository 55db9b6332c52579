//! Bundled reference systems with expected outcomes.
//!
//! Two data files are compiled in: `systems.toml` (individual cases) and
//! `mu_lambda.toml` (a two-parameter family with the minimal degree bound per
//! class). The family expands into one case at the minimal `N` (expecting an
//! equation) and one at `N − 1` (expecting none).

use std::time::Instant;

use first_integrals::algebra::parse_poly;
use first_integrals::algebra::rat::parse_rat;
use first_integrals::builders::{condition_check, IntegralClass, Outcome};
use first_integrals::driver::{compute_first_integral, Query};
use first_integrals::flow::BasePoint;
use first_integrals::{BiPoly, RatFunc, VectorField};
use serde::Deserialize;

use crate::field::{FieldError, FieldSpec, Provenance};
use crate::report::Report;

const SYSTEMS: &str = include_str!("../corpus/systems.toml");
const MU_LAMBDA: &str = include_str!("../corpus/mu_lambda.toml");

/// Seed used when a case specifies neither a point nor a seed.
pub const DEFAULT_SEED: u64 = 0;

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct CaseDef {
    id: String,
    a: String,
    b: String,
    class: String,
    #[serde(default = "one")]
    k: u32,
    n: u32,
    point: Option<String>,
    seed: Option<u64>,
    #[serde(default)]
    deterministic: bool,
    expect: String,
    degree: Option<u32>,
    num: Option<String>,
    den: Option<String>,
}

fn one() -> u32 {
    1
}

#[derive(Debug, Deserialize)]
struct SystemsFile {
    case: Vec<CaseDef>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyRow {
    lambda: i64,
    mu: i64,
    rational: u32,
    darboux: u32,
    liouville: u32,
    riccati: u32,
}

#[derive(Debug, Deserialize)]
struct FamilyFile {
    a: String,
    b: String,
    row: Vec<FamilyRow>,
}

/// A member of the two-parameter family with its minimal degree bounds
/// (rational, Darbouxian, Liouvillian, Riccati).
#[derive(Clone, Debug)]
pub struct FamilyMember {
    pub id: String,
    pub lambda: i64,
    pub mu: i64,
    pub a: String,
    pub b: String,
    pub minimal: [u32; 4],
}

impl FamilyMember {
    /// The field with common factors of `A` and `B` divided out.
    pub fn field(&self) -> VectorField {
        VectorField::reduced(parse_poly(&self.a).expect("family A parses"), parse_poly(&self.b).expect("family B parses"))
            .expect("family member is a valid field")
    }

    /// Minimal degree bound for `class` (`None` for `k > 1` Darbouxian).
    pub fn minimal_n(&self, class: IntegralClass) -> Option<u32> {
        match class {
            IntegralClass::Rational => Some(self.minimal[0]),
            IntegralClass::Darbouxian(1) => Some(self.minimal[1]),
            IntegralClass::Liouvillian => Some(self.minimal[2]),
            IntegralClass::Riccati => Some(self.minimal[3]),
            IntegralClass::Darbouxian(_) => None,
        }
    }
}

/// The four classes compared in the family table.
pub const TABLE_CLASSES: [IntegralClass; 4] =
    [IntegralClass::Rational, IntegralClass::Darbouxian(1), IntegralClass::Liouvillian, IntegralClass::Riccati];

/// The two-parameter cubic family.
pub fn mu_lambda_family() -> Vec<FamilyMember> {
    let file: FamilyFile = toml::from_str(MU_LAMBDA).expect("bundled family file is valid");
    let fill = |t: &str, l: i64, m: i64| t.replace("{l}", &format!("({l})")).replace("{m}", &format!("({m})"));
    file.row
        .iter()
        .map(|r| FamilyMember {
            id: format!("mu-lambda-{}-{}", r.lambda, r.mu),
            lambda: r.lambda,
            mu: r.mu,
            a: fill(&file.a, r.lambda, r.mu),
            b: fill(&file.b, r.lambda, r.mu),
            minimal: [r.rational, r.darboux, r.liouville, r.riccati],
        })
        .collect()
}

/// Expected result of a case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expectation {
    pub status: String,
    pub degree: Option<u32>,
    pub num: Option<String>,
    pub den: Option<String>,
}

/// A runnable corpus case.
#[derive(Clone, Debug)]
pub struct Case {
    pub id: String,
    pub a: String,
    pub b: String,
    /// Divide out a common factor of `A` and `B` instead of rejecting it.
    pub reduce: bool,
    pub class: IntegralClass,
    pub n: u32,
    pub point: Option<BasePoint>,
    pub seed: Option<u64>,
    pub deterministic: bool,
    pub expect: Expectation,
}

/// Result of running one case.
#[derive(Clone, Debug)]
pub struct CaseResult {
    pub id: String,
    pub report: Option<Report>,
    pub passed: bool,
    /// Why the case failed, or a short summary when it passed.
    pub detail: String,
    pub time_ms: f64,
}

/// Parses `"X,Y"` with integer or `p/q` coordinates.
pub fn parse_point(s: &str) -> Option<BasePoint> {
    let (x, y) = s.split_once(',')?;
    Some(BasePoint::new(parse_rat(x)?, parse_rat(y)?))
}

impl Case {
    pub fn field(&self) -> Result<VectorField, FieldError> {
        if self.reduce {
            let a = parse_poly(&self.a).map_err(|source| FieldError::Parse { component: 'A', source })?;
            let b = parse_poly(&self.b).map_err(|source| FieldError::Parse { component: 'B', source })?;
            return Ok(VectorField::reduced(a, b)?);
        }
        Ok(FieldSpec::from_components(&self.a, &self.b, Provenance::Corpus(self.id.clone()))?.vf)
    }

    pub fn query(&self) -> Result<Query, FieldError> {
        let mut q = Query::new(self.field()?, self.n, self.class);
        q.base = self.point.clone();
        q.seed = match (&self.point, self.seed) {
            (Some(_), s) => s,
            (None, s) => Some(s.unwrap_or(DEFAULT_SEED)),
        };
        q.deterministic = self.deterministic;
        Ok(q)
    }

    /// Runs the case and compares against the expectation.
    pub fn run(&self) -> CaseResult {
        let start = Instant::now();
        let fail = |detail: String| CaseResult {
            id: self.id.clone(),
            report: None,
            passed: false,
            detail,
            time_ms: start.elapsed().as_secs_f64() * 1e3,
        };
        let q = match self.query() {
            Ok(q) => q,
            Err(e) => return fail(e.to_string()),
        };
        let run = match compute_first_integral(&q) {
            Ok(run) => run,
            Err(e) => return fail(e.to_string()),
        };
        let report = Report::new(self.class, self.n, q.seed, &run);
        let verdict = self.check(&q.vf, &run.outcome, &report);
        CaseResult {
            id: self.id.clone(),
            passed: verdict.is_ok(),
            detail: verdict.unwrap_or_else(|e| e),
            report: Some(report),
            time_ms: start.elapsed().as_secs_f64() * 1e3,
        }
    }

    fn check(&self, vf: &VectorField, outcome: &Outcome, report: &Report) -> Result<String, String> {
        if report.status != self.expect.status {
            return Err(format!("expected {}, got {}", self.expect.status, describe(outcome)));
        }
        let Outcome::Equation(e) = outcome else {
            return Ok(describe(outcome));
        };
        if !condition_check(vf, e) {
            return Err("returned equation fails its defining identity".into());
        }
        if let Some(d) = self.expect.degree {
            if e.degree != d {
                return Err(format!("expected degree {d}, got {}", e.degree));
            }
        }
        let expected_num = self.expect.num.as_deref().map(parse_poly).transpose().map_err(|e| e.to_string())?;
        let expected_den = self.expect.den.as_deref().map(parse_poly).transpose().map_err(|e| e.to_string())?;
        match (expected_num, expected_den) {
            (Some(num), Some(den)) => {
                let f = RatFunc::new(num, den).map_err(|e| e.to_string())?;
                let same = match e.class {
                    IntegralClass::Rational | IntegralClass::Darbouxian(_) => e.f.proportional_to(&f),
                    IntegralClass::Liouvillian | IntegralClass::Riccati => e.f == f,
                };
                if !same {
                    return Err(format!("expected F = {f}, got {}", e.f));
                }
            }
            (None, Some(den)) => {
                // Normalized (monic) form of the expected denominator.
                let expected = RatFunc::new(BiPoly::one(), den).map_err(|e| e.to_string())?;
                if e.f.den() != expected.den() {
                    return Err(format!("expected denominator {}, got {}", expected.den(), e.f.den()));
                }
            }
            _ => {}
        }
        Ok(describe(outcome))
    }
}

/// Short description of an outcome.
pub fn describe(outcome: &Outcome) -> String {
    match outcome {
        Outcome::Equation(e) => format!("equation {} of degree {}", e.class, e.degree),
        Outcome::NoneFound => "none".to_string(),
        Outcome::Unknown(r) => format!("unknown ({r})"),
    }
}

/// All bundled cases, in file order followed by the expanded family.
pub fn cases() -> Vec<Case> {
    let file: SystemsFile = toml::from_str(SYSTEMS).expect("bundled corpus is valid");
    let mut out: Vec<Case> = file
        .case
        .into_iter()
        .map(|c| Case {
            class: IntegralClass::parse(&c.class, c.k).unwrap_or_else(|| panic!("bad class in corpus case {}", c.id)),
            point: c.point.as_deref().map(|p| parse_point(p).unwrap_or_else(|| panic!("bad point in corpus case {}", c.id))),
            id: c.id,
            a: c.a,
            b: c.b,
            reduce: false,
            n: c.n,
            seed: c.seed,
            deterministic: c.deterministic,
            expect: Expectation { status: c.expect, degree: c.degree, num: c.num, den: c.den },
        })
        .collect();
    for m in mu_lambda_family() {
        for class in TABLE_CLASSES {
            let n = m.minimal_n(class).expect("table class");
            let mut push = |n: u32, status: &str| {
                out.push(Case {
                    id: format!("{}-{}-n{n}", m.id, class.name()),
                    a: m.a.clone(),
                    b: m.b.clone(),
                    reduce: true,
                    class,
                    n,
                    point: None,
                    seed: None,
                    deterministic: false,
                    expect: Expectation { status: status.to_string(), degree: None, num: None, den: None },
                });
            };
            push(n, "equation");
            if n > 1 {
                push(n - 1, "none");
            }
        }
    }
    out
}
