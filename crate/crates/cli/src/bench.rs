//! Minimal-degree scans: for each case, increase `N` until the pipeline
//! stops answering "none" (or `n_max` is reached) and record timings.

use std::io::Write;
use std::str::FromStr;
use std::time::Instant;

use first_integrals::algebra::parse_poly;
use first_integrals::builders::{IntegralClass, Outcome};
use first_integrals::driver::{compute_first_integral, Query};
use first_integrals::{BiPoly, Rat, VectorField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{cases, mu_lambda_family, DEFAULT_SEED};

/// Case families of `bench scan`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// The two-parameter cubic family.
    MuLambda,
    /// A fixed quadratic system plus seeded random quadratic systems.
    Generic,
    /// The distinct systems of the bundled corpus.
    Corpus,
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "mu-lambda" => Ok(Family::MuLambda),
            "generic" => Ok(Family::Generic),
            "corpus" => Ok(Family::Corpus),
            _ => Err(format!("unknown family {s:?} (expected mu-lambda, generic or corpus)")),
        }
    }
}

/// A named field to scan.
#[derive(Clone, Debug)]
pub struct BenchCase {
    pub id: String,
    pub vf: VectorField,
}

/// Number of random quadratic systems in the generic family.
pub const GENERIC_RANDOM: usize = 4;

/// Quadratic field with integer coefficients in `[−5, 5]` drawn from `seed`.
pub fn random_quadratic(seed: u64) -> VectorField {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut draw = || {
            let terms: Vec<(u32, u32, Rat)> = (0..=2u32)
                .flat_map(|s| (0..=s).map(move |i| (i, s - i)))
                .map(|(i, j)| (i, j, Rat::from_integer(rng.gen_range(-5i64..=5).into())))
                .collect();
            BiPoly::from_terms(terms)
        };
        let (a, b) = (draw(), draw());
        if a.degree() == Some(2) && b.degree() == Some(2) {
            if let Ok(vf) = VectorField::new(a, b) {
                return vf;
            }
        }
    }
}

/// The cases of a family.
pub fn family_cases(family: Family) -> Vec<BenchCase> {
    match family {
        Family::MuLambda => mu_lambda_family().into_iter().map(|m| BenchCase { vf: m.field(), id: m.id }).collect(),
        Family::Generic => {
            let fixed = VectorField::new(parse_poly("2*x^2+x*y-2*y^2-1").expect("valid"), parse_poly("2*x^2-2*y^2+y-3").expect("valid"))
                .expect("valid field");
            let mut out = vec![BenchCase { id: "generic-quadratic".into(), vf: fixed }];
            out.extend((0..GENERIC_RANDOM as u64).map(|s| BenchCase { id: format!("random-quadratic-{s}"), vf: random_quadratic(s) }));
            out
        }
        Family::Corpus => {
            let mut out: Vec<BenchCase> = Vec::new();
            for c in cases() {
                let Ok(vf) = c.field() else { continue };
                if out.iter().all(|b| b.vf != vf) {
                    // Name the system after the first case using it.
                    let id = c.id.rsplit_once("-n").map(|(s, _)| s.to_string()).unwrap_or(c.id);
                    out.push(BenchCase { id, vf });
                }
            }
            out
        }
    }
}

/// One CSV row.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScanRow {
    pub case: String,
    pub class: String,
    /// Smallest `N` with a non-"none" outcome, empty if none up to `n_max`.
    pub minimal_n: Option<u32>,
    /// Outcome at the last `N` tried.
    pub status: String,
    /// Wall time of each `N` tried, in ms, `;`-separated.
    pub time_ms_per_n: String,
}

/// Scans one case.
pub fn scan_case(case: &BenchCase, class: IntegralClass, n_max: u32) -> ScanRow {
    let mut times = Vec::new();
    let mut status = "none".to_string();
    let mut minimal_n = None;
    for n in 1..=n_max {
        let mut q = Query::new(case.vf.clone(), n, class);
        q.seed = Some(DEFAULT_SEED);
        let start = Instant::now();
        let outcome = compute_first_integral(&q).map(|c| c.outcome);
        times.push(format!("{:.3}", start.elapsed().as_secs_f64() * 1e3));
        match outcome {
            Ok(Outcome::NoneFound) => continue,
            Ok(Outcome::Equation(_)) => status = "equation".into(),
            Ok(Outcome::Unknown(_)) => status = "unknown".into(),
            Err(e) => status = format!("error: {e}"),
        }
        minimal_n = Some(n);
        break;
    }
    ScanRow { case: case.id.clone(), class: class.to_string(), minimal_n, status, time_ms_per_n: times.join(";") }
}

/// Scans every case of a family in parallel; rows are ordered by case id.
pub fn scan(family: Family, class: IntegralClass, n_max: u32) -> Vec<ScanRow> {
    let mut rows: Vec<ScanRow> = family_cases(family).par_iter().map(|c| scan_case(c, class, n_max)).collect();
    rows.sort_by(|a, b| a.case.cmp(&b.case));
    rows
}

/// Writes rows as CSV with the header
/// `case,class,minimal_N,status,time_ms_per_N`.
pub fn write_csv<W: Write>(rows: &[ScanRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(["case", "class", "minimal_N", "status", "time_ms_per_N"])?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
