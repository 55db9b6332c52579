//! Versioned, exact JSON report of a computation and its text rendering.
//!
//! Schema `first-integrals/report/v1`:
//!
//! * `status`: `"equation"`, `"none"` or `"unknown"`;
//! * `class` (`rational`, `darboux`, `liouville`, `riccati`), `k`, `n`;
//! * `equation`: for status `equation`, `{ "class": ..., "num": [...],
//!   "den": [...], "degree": d }`. The class may be simpler than the
//!   requested one after delegation. Each polynomial is a list of
//!   `{ "x": i, "y": j, "c": "p/q" }` terms in decreasing graded-lex order
//!   (total degree first, then the power of `x`); coefficients are exact
//!   `p/q` (or `p`) strings;
//! * `reason`: the code of an `unknown` outcome;
//! * `diagnostics`: base point (exact strings), `sigma`, `kernel_dim`,
//!   `wdeg`, the builder chain, prime count, points tried and `time_ms`;
//! * `tool_version`, `seed`.

use std::fmt::Write as _;

use first_integrals::algebra::rat::{format_rat, parse_rat};
use first_integrals::builders::{CanonicalEquation, IntegralClass, Outcome, UnknownReason};
use first_integrals::driver::Computation;
use first_integrals::{BiPoly, RatFunc};
use serde::{Deserialize, Serialize};

/// Identifier of the JSON layout.
pub const SCHEMA: &str = "first-integrals/report/v1";

/// One term `c·xⁱyʲ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Term {
    pub x: u32,
    pub y: u32,
    pub c: String,
}

/// `F = num / den` with its degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationReport {
    /// Class of the returned equation (after any delegation).
    pub class: String,
    pub num: Vec<Term>,
    pub den: Vec<Term>,
    pub degree: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DiagnosticsReport {
    /// `[x₀, y₀]` as exact strings.
    pub base: Option<[String; 2]>,
    pub sigma: usize,
    pub kernel_dim: usize,
    pub wdeg: Option<u32>,
    pub chain: Vec<String>,
    pub primes: usize,
    pub points_tried: usize,
    pub time_ms: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub tool_version: String,
    pub status: String,
    pub class: String,
    pub k: u32,
    pub n: u32,
    pub equation: Option<EquationReport>,
    pub reason: Option<String>,
    pub seed: Option<u64>,
    pub diagnostics: DiagnosticsReport,
}

fn terms(p: &BiPoly) -> Vec<Term> {
    p.terms_grlex_desc().into_iter().map(|((x, y), c)| Term { x, y, c: format_rat(&c) }).collect()
}

fn poly(terms: &[Term]) -> Option<BiPoly> {
    let mut out = Vec::with_capacity(terms.len());
    for t in terms {
        out.push((t.x, t.y, parse_rat(&t.c)?));
    }
    Some(BiPoly::from_terms(out))
}

impl Report {
    pub fn new(class: IntegralClass, n: u32, seed: Option<u64>, run: &Computation) -> Self {
        let d = &run.diagnostics;
        let (status, equation, reason) = match &run.outcome {
            Outcome::Equation(e) => (
                "equation",
                Some(EquationReport { class: e.class.to_string(), num: terms(e.f.num()), den: terms(e.f.den()), degree: e.degree }),
                None,
            ),
            Outcome::NoneFound => ("none", None, None),
            Outcome::Unknown(r) => ("unknown", None, Some(r.code().to_string())),
        };
        Report {
            schema: SCHEMA.to_string(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            status: status.to_string(),
            class: class.name().to_string(),
            k: class.k(),
            n,
            equation,
            reason,
            seed,
            diagnostics: DiagnosticsReport {
                base: d.base.as_ref().map(|b| [format_rat(&b.x0), format_rat(&b.y0)]),
                sigma: d.sigma,
                kernel_dim: d.kernel_dim,
                wdeg: d.wdeg,
                chain: d.chain.iter().map(|c| c.to_string()).collect(),
                primes: d.primes,
                points_tried: d.points_tried,
                time_ms: d.timings.total_ms,
            },
        }
    }

    /// The requested class.
    pub fn integral_class(&self) -> Option<IntegralClass> {
        IntegralClass::parse(&self.class, self.k)
    }

    /// Rebuilds the mathematical outcome from the exact strings.
    pub fn outcome(&self) -> Option<Outcome> {
        match self.status.as_str() {
            "none" => Some(Outcome::NoneFound),
            "unknown" => Some(Outcome::Unknown(UnknownReason::from_code(self.reason.as_deref()?)?)),
            "equation" => {
                let e = self.equation.as_ref()?;
                let f = RatFunc::new(poly(&e.num)?, poly(&e.den)?).ok()?;
                let class = e.class.parse().ok()?;
                Some(Outcome::Equation(CanonicalEquation::new(class, f)))
            }
            _ => None,
        }
    }

    /// Exit code of the `compute` command: 2 for `unknown`, else 0.
    pub fn exit_code(&self) -> i32 {
        if self.status == "unknown" {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(s: &str) -> serde_json::Result<Self> {
        serde_json::from_str(s)
    }

    /// Human-readable rendering with the same mathematical content as the
    /// JSON form.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let class = self.integral_class().map(|c| c.to_string()).unwrap_or_else(|| self.class.clone());
        let _ = writeln!(s, "status: {}", self.status);
        let _ = writeln!(s, "class: {class}  N: {}", self.n);
        if let Some(Outcome::Equation(e)) = self.outcome() {
            let _ = writeln!(s, "equation: {}", equation_text(&e));
            let _ = writeln!(s, "  F = {}", e.f);
            let _ = writeln!(s, "degree: {}", e.degree);
        }
        if let Some(r) = &self.reason {
            let _ = writeln!(s, "reason: {r}");
        }
        let d = &self.diagnostics;
        if let Some([x, y]) = &d.base {
            let _ = writeln!(s, "base point: ({x}, {y})");
        }
        let wdeg = d.wdeg.map(|w| w.to_string()).unwrap_or_else(|| "-".into());
        let _ = writeln!(s, "sigma: {}  kernel dim: {}  weighted degree: {wdeg}", d.sigma, d.kernel_dim);
        let _ = writeln!(s, "chain: {}", d.chain.join(" -> "));
        let _ = writeln!(s, "points tried: {}  primes: {}", d.points_tried, d.primes);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        let _ = writeln!(s, "time: {:.3} ms", d.time_ms);
        s
    }
}

/// The defining equation of the first integral `I` in words.
pub fn equation_text(e: &CanonicalEquation) -> String {
    match e.class {
        IntegralClass::Rational => "I = F".to_string(),
        IntegralClass::Darbouxian(1) => "dI/dy = F".to_string(),
        IntegralClass::Darbouxian(k) => format!("(dI/dy)^{k} = F"),
        IntegralClass::Liouvillian => "d2I/dy2 = F * dI/dy".to_string(),
        IntegralClass::Riccati => "I = u1/u2 with d2u/dy2 = F * u".to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use first_integrals::algebra::parse_poly;
    use first_integrals::driver::Diagnostics;
    use first_integrals::flow::BasePoint;

    fn sample(outcome: Outcome) -> Computation {
        Computation {
            outcome,
            diagnostics: Diagnostics {
                base: Some(BasePoint::new(parse_rat("1/3").unwrap(), parse_rat("-8").unwrap())),
                sigma: 30,
                kernel_dim: 1,
                wdeg: Some(4),
                chain: vec![IntegralClass::Liouvillian],
                primes: 2,
                points_tried: 1,
                timings: Default::default(),
            },
        }
    }

    #[test]
    fn json_round_trip() {
        let f = RatFunc::new(parse_poly("2*x^3 - x - y").unwrap(), parse_poly("x^2-y^2-1/2").unwrap()).unwrap();
        let eq = CanonicalEquation::new(IntegralClass::Liouvillian, f);
        for outcome in [Outcome::Equation(eq), Outcome::NoneFound, Outcome::Unknown(UnknownReason::SingletonBasis)] {
            let r = Report::new(IntegralClass::Liouvillian, 3, Some(7), &sample(outcome.clone()));
            let back = Report::from_json(&r.to_json()).unwrap();
            assert_eq!(back, r);
            assert_eq!(back.outcome(), Some(outcome));
        }
    }

    #[test]
    fn coefficients_are_exact_strings() {
        let f = RatFunc::new(parse_poly("x + 1/3").unwrap(), BiPoly::one()).unwrap();
        let r =
            Report::new(IntegralClass::Rational, 1, None, &sample(Outcome::Equation(CanonicalEquation::new(IntegralClass::Rational, f))));
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["equation"]["num"][1]["c"], "1/3");
        assert_eq!(json["schema"], SCHEMA);
    }
}
