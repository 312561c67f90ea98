//! Cross-checks of the engine against closed forms and independent counts.
//!
//! Each runner sweeps a parameter box, records every disagreement, and
//! returns a [`VerifyReport`]. A report passes iff it has no mismatches.

use std::fmt;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::character::{dimension, full_character, morse_index_direct, reduced_character, reduced_character_direct};
use crate::error::Result;
use crate::fixed_locus::{
    admissible_discriminants, enumerate_components, enumerate_full_fixed_points, minimal_discriminant, ChernData,
    SurfaceParams,
};
use crate::oracle::{hilbert_series_oracle, q_binomial, theta_eta_series};
use crate::poincare::{euler_generating_function, morse_index_closed_form, poincare_polynomial};
use crate::rational::{int, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub input: String,
    pub expected: String,
    pub actual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub oracle: String,
    pub cases: usize,
    pub mismatches: Vec<Mismatch>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        writeln!(
            f,
            "{status} {}: {} cases, {} mismatches",
            self.oracle,
            self.cases,
            self.mismatches.len()
        )?;
        for m in &self.mismatches {
            writeln!(
                f,
                "  {}\n    expected: {}\n    actual:   {}",
                m.input, m.expected, m.actual
            )?;
        }
        Ok(())
    }
}

/// Parameter box for a sweep.
#[derive(Clone, Copy, Debug)]
pub struct Ranges {
    pub max_n: i64,
    pub max_r: usize,
    pub max_p: i64,
    pub max_order: Rational,
}

impl Default for Ranges {
    fn default() -> Self {
        Ranges {
            max_n: 4,
            max_r: 3,
            max_p: 3,
            max_order: int(5),
        }
    }
}

struct Recorder {
    oracle: &'static str,
    start: Instant,
    cases: usize,
    mismatches: Vec<Mismatch>,
}

impl Recorder {
    fn new(oracle: &'static str) -> Self {
        Recorder {
            oracle,
            start: Instant::now(),
            cases: 0,
            mismatches: Vec::new(),
        }
    }

    fn check<T: PartialEq + fmt::Display>(&mut self, input: impl FnOnce() -> String, expected: T, actual: T) {
        self.cases += 1;
        if expected != actual {
            self.mismatches.push(Mismatch {
                input: input(),
                expected: expected.to_string(),
                actual: actual.to_string(),
            });
        }
    }

    fn finish(self) -> VerifyReport {
        VerifyReport {
            oracle: self.oracle.to_string(),
            cases: self.cases,
            mismatches: self.mismatches,
            elapsed: self.start.elapsed(),
        }
    }
}

/// Ordinary mode for every `p`, plus stacky mode for `p >= 2`.
fn surfaces(max_p: i64, include_stacky: bool) -> Vec<SurfaceParams> {
    let mut out = Vec::new();
    for p in 1..=max_p {
        out.push(SurfaceParams::ordinary(p).expect("p >= 1"));
        if include_stacky && p >= 2 {
            out.push(SurfaceParams::stacky(p).expect("p >= 2"));
        }
    }
    out
}

/// Normalized first Chern classes `k ∈ [0, r)` on the mode's lattice.
fn normalized_c1(params: &SurfaceParams, r: usize) -> Vec<Rational> {
    let d = params.denominator();
    (0..r as i64 * d).map(|m| Rational::new(m, d)).collect()
}

fn mode(params: &SurfaceParams) -> &'static str {
    if params.is_stacky() {
        "stacky"
    } else {
        "ordinary"
    }
}

/// Every admissible `(params, r, k, n)` in the box.
fn sweep(ranges: &Ranges, include_stacky: bool) -> Vec<(SurfaceParams, ChernData)> {
    let mut out = Vec::new();
    for params in surfaces(ranges.max_p, include_stacky) {
        for r in 1..=ranges.max_r {
            for k in normalized_c1(&params, r) {
                for n in admissible_discriminants(&params, r, k, int(ranges.max_n)) {
                    out.push((params, ChernData::new(r, k, n)));
                }
            }
        }
    }
    out
}

fn describe(params: &SurfaceParams, chern: &ChernData) -> String {
    format!(
        "p={} ({}) r={} c1={} n={}",
        params.p(),
        mode(params),
        chern.r,
        chern.k,
        chern.n
    )
}

/// Rank one against the product formula for Hilbert schemes of points.
pub fn hilbert(max_n: usize, max_p: i64) -> Result<VerifyReport> {
    let mut rec = Recorder::new("hilbert");
    let expected = hilbert_series_oracle(max_n);
    for p in 1..=max_p {
        let params = SurfaceParams::ordinary(p)?;
        for (n, want) in expected.iter().enumerate() {
            let got = poincare_polynomial(&params, &ChernData::new(1, int(0), int(n as i64)))?;
            rec.check(|| format!("p={p} r=1 c1=0 n={n}"), want.clone(), got);
        }
    }
    Ok(rec.finish())
}

/// Rank-one polynomials are the same for every `p`.
pub fn p_independence(max_n: usize, max_p: i64) -> Result<VerifyReport> {
    let mut rec = Recorder::new("p-independence");
    let base = SurfaceParams::ordinary(1)?;
    for n in 0..=max_n {
        let chern = ChernData::new(1, int(0), int(n as i64));
        let reference = poincare_polynomial(&base, &chern)?;
        for p in 2..=max_p {
            let got = poincare_polynomial(&SurfaceParams::ordinary(p)?, &chern)?;
            rec.check(|| format!("p={p} vs p=1, r=1 n={n}"), reference.clone(), got);
        }
    }
    Ok(rec.finish())
}

/// Minimal discriminant against the Gaussian binomial in `q = t^2`.
pub fn grassmannian(max_r: usize, max_p: i64) -> Result<VerifyReport> {
    let mut rec = Recorder::new("grassmannian");
    for p in 1..=max_p {
        let params = SurfaceParams::ordinary(p)?;
        for r in 1..=max_r {
            for k in 0..r as i64 {
                let n = minimal_discriminant(p, r, int(k));
                let want = q_binomial(r as i64, k)?.scale_exponents(2);
                let got = poincare_polynomial(&params, &ChernData::new(r, int(k), n))?;
                rec.check(|| format!("p={p} r={r} c1={k} n={n}"), want, got);
            }
        }
    }
    Ok(rec.finish())
}

fn compare_series(rec: &mut Recorder, label: &str, want: &crate::series::BiSeries, got: &crate::series::BiSeries) {
    let mut keys: Vec<(i64, i64)> = want
        .raw_terms()
        .map(|(k, _)| k)
        .chain(got.raw_terms().map(|(k, _)| k))
        .collect();
    keys.sort();
    keys.dedup();
    let coeff = |s: &crate::series::BiSeries, (qn, zn): (i64, i64)| {
        s.coefficient(Rational::new(qn, s.dq()), Rational::new(zn, s.dz()))
    };
    for key in keys {
        let (w, g): (BigInt, BigInt) = (coeff(want, key), coeff(got, key));
        rec.check(
            || {
                format!(
                    "{label} coefficient q^{} z^{}",
                    Rational::new(key.0, want.dq()),
                    Rational::new(key.1, want.dz())
                )
            },
            w,
            g,
        );
    }
}

/// Euler-characteristic generating function against `(θ_3 / η̂^2)^r`.
pub fn theta(max_r: usize, max_p: i64, max_order: Rational) -> Result<VerifyReport> {
    let mut rec = Recorder::new("theta");
    for params in surfaces(max_p, true) {
        for r in 1..=max_r {
            let want = theta_eta_series(&params, r, max_order)?;
            let got = euler_generating_function(&params, r, max_order)?;
            let label = format!("p={} ({}) r={r}", params.p(), mode(&params));
            compare_series(&mut rec, &label, &want, &got);
        }
    }
    Ok(rec.finish())
}

/// Morse index by weight counting versus the closed form, the tangent
/// directions along the component versus column counts, and the two
/// evaluations of the reduced character.
pub fn index_consistency(ranges: &Ranges) -> Result<VerifyReport> {
    let mut rec = Recorder::new("index-consistency");
    for (params, chern) in sweep(ranges, true) {
        for comp in enumerate_components(&params, &chern)? {
            let reduced = reduced_character(&params, &comp);
            let direct = morse_index_direct(&reduced);
            let label = || {
                format!(
                    "{} component {}",
                    describe(&params, &chern),
                    serde_json::to_string(&comp).unwrap()
                )
            };
            rec.check(label, morse_index_closed_form(&params, &comp), direct.negative_count);
            let columns: usize = comp.tableaux.iter().map(|y| y.num_columns()).sum();
            rec.check(label, columns as u64, direct.zero_diagonal_count);
            rec.check(
                label,
                serde_json::to_string(&reduced_character_direct(&params, &comp)).unwrap(),
                serde_json::to_string(&reduced).unwrap(),
            );
        }
    }
    Ok(rec.finish())
}

/// Tangent dimension `2rn` at every full-torus fixed point with integral `k`.
pub fn dimension_check(ranges: &Ranges) -> Result<VerifyReport> {
    let mut rec = Recorder::new("dimension");
    for (params, chern) in sweep(ranges, false) {
        let want = chern.n * int(2 * chern.r as i64);
        for point in enumerate_full_fixed_points(&params, &chern)? {
            let got = int(dimension(&full_character(&params, &point)) as i64);
            rec.check(
                || {
                    format!(
                        "{} point {}",
                        describe(&params, &chern),
                        serde_json::to_string(&point).unwrap()
                    )
                },
                want,
                got,
            );
        }
    }
    Ok(rec.finish())
}

/// Constant term 1 for every nonzero Poincaré polynomial.
///
/// Stacky moduli are not connected in general: for `p = 2, r = 2,
/// c1 = 1/2, n = 1/8` the fixed locus is two isolated points, both of
/// index 0. Pass `include_stacky` to sweep them anyway.
pub fn connectedness(ranges: &Ranges, include_stacky: bool) -> Result<VerifyReport> {
    let mut rec = Recorder::new("connectedness");
    for (params, chern) in sweep(ranges, include_stacky) {
        let poly = poincare_polynomial(&params, &chern)?;
        if poly.is_zero() {
            continue;
        }
        rec.check(|| describe(&params, &chern), BigInt::from(1), poly.coeff(0));
    }
    Ok(rec.finish())
}
