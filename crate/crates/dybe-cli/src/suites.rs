//! `dybe verify`: named suites of checks and the full claim grid.

use std::time::Instant;

use clap::ValueEnum;
use dybe_core::builders::{Boundary, CoeffTable, Descendant, FzWeights, LOperator, Params, SixVertex, TwoParam};
use dybe_core::verify::controls::{asymmetric_boundary, imaginary_boundary, squared_h, Perturbed};
use dybe_core::verify::*;
use dybe_core::{Cyclo, CycloField, MpComplex, Precision, RootOfUnity, SpectralOperator};
use serde::Serialize;

use crate::fz_compare::{fz_compare, FzOptions};
use crate::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Ybe,
    GIdentity,
    Rll,
    Llr,
    Properties,
    Projectors,
    Str,
    TwoParam,
    FConstraints,
    All,
}

impl Suite {
    pub fn name(self) -> &'static str {
        match self {
            Self::Ybe => "ybe",
            Self::GIdentity => "g-identity",
            Self::Rll => "rll",
            Self::Llr => "llr",
            Self::Properties => "properties",
            Self::Projectors => "projectors",
            Self::Str => "str",
            Self::TwoParam => "two-param",
            Self::FConstraints => "f-constraints",
            Self::All => "all",
        }
    }
}

/// Everything shared by the checks of one run.
#[derive(Clone, Debug)]
pub struct Settings {
    pub samples: usize,
    pub seed: u64,
    pub precision: Precision,
    pub tolerance: f64,
    /// Shift one coefficient of every descendant under test by this amount.
    pub perturb: Option<f64>,
    /// Lift the `d ≤ 7` cap on full-matrix YBE checks.
    pub uncapped: bool,
}

impl Settings {
    pub fn new(samples: usize, seed: u64, precision: Precision) -> Self {
        Self { samples, seed, precision, tolerance: precision.default_tolerance(), perturb: None, uncapped: false }
    }

    fn plan(&self) -> SamplePlan {
        self.plan_of(self.samples)
    }

    fn plan_of(&self, count: usize) -> SamplePlan {
        SamplePlan::new(count, self.seed, self.tolerance)
    }
}

/// One line of the report stream.
#[derive(Clone, Debug, Serialize)]
pub struct Line {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub claim: Option<u32>,
    #[serde(flatten)]
    pub report: VerificationReport,
}

fn timed(f: impl FnOnce() -> dybe_core::Result<VerificationReport>) -> Result<VerificationReport, CliError> {
    let start = Instant::now();
    Ok(f()?.timed(start.elapsed()))
}

fn timed_all(
    f: impl FnOnce() -> dybe_core::Result<Vec<VerificationReport>>,
) -> Result<Vec<VerificationReport>, CliError> {
    let start = Instant::now();
    let mut out = f()?;
    let per = start.elapsed() / out.len().max(1) as u32;
    for r in &mut out {
        r.wall = per;
    }
    Ok(out)
}

fn params(n: u64) -> Result<Params, CliError> {
    let p = Params::from_n(n, 1, 1)?;
    p.check_coprime()?;
    Ok(p)
}

fn descendant(s: &Settings, n: u64, braided: bool) -> Result<Box<dyn SpectralOperator<MpComplex>>, CliError> {
    let mut r = Descendant::<MpComplex>::standard(&s.precision, params(n)?)?;
    if braided {
        r = r.braided();
    }
    Ok(match s.perturb {
        Some(eps) => Box::new(Perturbed::new(r, eps)),
        None => Box::new(r),
    })
}

fn no_perturb(s: &Settings, suite: Suite) -> Result<(), CliError> {
    if s.perturb.is_some() {
        return Err(CliError::Input(format!("--perturb applies to ybe, llr and properties, not {}", suite.name())));
    }
    Ok(())
}

/// The descendant (plain and braided) under every YBE form it solves, and
/// the six-vertex matrix for the same `n`.
pub fn ybe(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    let p = s.precision;
    let plan = s.plan();
    let cap = if s.uncapped { usize::MAX } else { YBE_MAX_LEG };
    let mut out = vec![timed(|| {
        check_ybe::<MpComplex>(&p, &SixVertex { params: Params::from_n(n, 1, 1)? }, &plan, YbeForm::Plain)
    })?];
    for (braided, form) in [(false, YbeForm::Plain), (true, YbeForm::Braided)] {
        let r = descendant(s, n, braided)?;
        out.push(timed(|| check_ybe_capped(&p, r.as_ref(), &plan, form, cap))?);
    }
    Ok(out)
}

pub fn g_identity(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::GIdentity)?;
    let t = CoeffTable::<MpComplex>::new(&s.precision, params(n)?, Boundary::One)?;
    Ok(vec![timed(|| check_g_identity(&s.precision, &t, &s.plan()))?])
}

pub fn rll(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::Rll)?;
    let p = params(n)?;
    Ok(vec![timed(|| check_rll::<MpComplex>(&s.precision, &SixVertex { params: p }, &LOperator::new(p), &s.plan()))?])
}

pub fn llr(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    let p = params(n)?;
    let l = LOperator::<MpComplex>::new(p);
    [(false, LlrForm::Plain), (true, LlrForm::Braided)]
        .into_iter()
        .map(|(braided, form)| {
            let r = descendant(s, n, braided)?;
            timed(|| check_llr(&s.precision, &l, r.as_ref(), &s.plan(), form))
        })
        .collect()
}

/// The four sampled properties of `R(z)`, then `R(0)` and `R(1)` in the
/// exact backend, then self-adjointness of `Ř` with the default and the
/// `f_{(0,±1)} = i` boundary. `R(1) = P` is expected to fail for even `d`.
pub fn properties(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    let p = params(n)?;
    let prec = s.precision;
    let r = descendant(s, n, false)?;
    let sampled = [Property::ConjSymmetry, Property::Transpose, Property::Involution, Property::Unitarity];
    let mut out = sampled
        .iter()
        .map(|&prop| timed(|| check_property(&prec, r.as_ref(), prop, &s.plan(), &PropertyOptions::default())))
        .collect::<Result<Vec<_>, _>>()?;
    out.extend(limits(s, n)?);
    let plan = s.plan_of(10);
    let rb = descendant(s, n, true)?;
    out.push(timed(|| check_adjoint_symmetry(&prec, rb.as_ref(), &plan))?);
    let t = CoeffTable::<MpComplex>::new(&prec, p, imaginary_boundary(p.d() as i64))?;
    let bad = Descendant::new(t, true, "Ř");
    out.push(timed(|| check_adjoint_symmetry(&prec, &bad, &plan))?.expect(Verdict::Fail));
    Ok(out)
}

/// `R(0) = ±(π ⊗ π)𝓡` and `R(1) = P` with exact coefficients.
pub fn limits(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    let p = params(n)?;
    let f = CycloField::new(2 * p.d());
    let r = Descendant::<Cyclo>::standard(&f, p)?;
    let plan = SamplePlan::new(1, s.seed, EXACT_TOL);
    let opts = PropertyOptions { canonical: Some(canonical_for(&f, &p)?), projective: false };
    let zero = timed(|| check_property(&f, &r, Property::Limit0, &plan, &opts))?;
    let one = timed(|| check_property(&f, &r, Property::Limit1, &plan, &opts))?;
    let one = if p.d() % 2 == 0 { one.expect(Verdict::Fail) } else { one };
    Ok(vec![zero, one])
}

pub fn projectors(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::Projectors)?;
    let f = CycloField::new(n);
    timed_all(|| check_projectors::<Cyclo>(&f, n))
}

/// The STR for `N` states with `λ = exp(iπ/N)`, and the inverse relation.
pub fn star_triangle(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::Str)?;
    let w = FzWeights::<MpComplex>::new(&s.precision, n, RootOfUnity::new(2 * n, 1)?)?;
    Ok(vec![
        timed(|| check_str(&s.precision, &w, &s.plan()))?,
        timed(|| check_inverse_relation(&s.precision, &w, &s.plan()))?,
    ])
}

pub fn two_param(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::TwoParam)?;
    let fam = TwoParam::<MpComplex>::new(&s.precision, params(n)?)?;
    Ok(vec![timed(|| check_two_param(&s.precision, &fam, &s.plan(), None))?])
}

/// The coefficient constraints with the default boundary and, as a control,
/// with `f_{(0,1)} = 2`.
pub fn f_constraints(s: &Settings, n: u64) -> Result<Vec<VerificationReport>, CliError> {
    no_perturb(s, Suite::FConstraints)?;
    let p = params(n)?;
    let good = CoeffTable::<MpComplex>::new(&s.precision, p, Boundary::One)?;
    let mut out = vec![timed(|| check_f_constraints(&s.precision, &good, &s.plan()))?];
    if p.d() > 2 {
        let bad = CoeffTable::<MpComplex>::new(&s.precision, p, asymmetric_boundary())?;
        out.push(timed(|| check_f_constraints(&s.precision, &bad, &s.plan()))?.expect(Verdict::Fail));
    }
    Ok(out)
}

/// Runs one suite at group order `n`.
pub fn run_suite(suite: Suite, s: &Settings, n: u64) -> Result<Vec<Line>, CliError> {
    let reports = match suite {
        Suite::Ybe => ybe(s, n)?,
        Suite::GIdentity => g_identity(s, n)?,
        Suite::Rll => rll(s, n)?,
        Suite::Llr => llr(s, n)?,
        Suite::Properties => properties(s, n)?,
        Suite::Projectors => projectors(s, n)?,
        Suite::Str => star_triangle(s, n)?,
        Suite::TwoParam => two_param(s, n)?,
        Suite::FConstraints => f_constraints(s, n)?,
        Suite::All => {
            let mut out = Vec::new();
            let odd_d = params(n)?.d() % 2 == 1;
            for suite in SUITES.into_iter().filter(|&x| !(odd_d && x == Suite::TwoParam)) {
                out.extend(run_suite(suite, s, n)?);
            }
            return Ok(out);
        }
    };
    Ok(reports.into_iter().map(|report| Line { suite: suite.name().into(), claim: None, report }).collect())
}

const SUITES: [Suite; 9] = [
    Suite::Ybe,
    Suite::GIdentity,
    Suite::Rll,
    Suite::Llr,
    Suite::Properties,
    Suite::Projectors,
    Suite::Str,
    Suite::TwoParam,
    Suite::FConstraints,
];

/// One row of the claims table.
#[derive(Clone, Debug)]
pub struct Claim {
    pub id: u32,
    pub text: &'static str,
}

pub const CLAIMS: [Claim; 11] = [
    Claim { id: 1, text: "six-vertex r(z) solves the YBE, n = 3, 5, 8" },
    Claim { id: 2, text: "odd descendants: g-identity n = 3, 5, 7, 9, 17; full YBE n = 3, 5" },
    Claim { id: 3, text: "even descendants: g-identity m = 2, 4, 6, 16; two-parameter YBE m = 2, 4, 6" },
    Claim { id: 4, text: "rLL and LLR (both forms), n = 3, 5, 7 and m = 2, 4" },
    Claim { id: 5, text: "projectors exact, n = 3, 5, 7, 9 and m = 2, 3, 4" },
    Claim { id: 6, text: "R(0) = canonical, R(1) = P exactly for odd n ≤ 9; R(1) ≠ P for m = 2" },
    Claim { id: 7, text: "Ř self-adjoint for the default boundary, not for f(0,±1) = i" },
    Claim { id: 8, text: "FZ star-triangle relation up to a constant, N = 3, 5, 7" },
    Claim { id: 9, text: "FZ limit equivalent to the descendant, N = 3 (transform) and N = 5" },
    Claim { id: 10, text: "negative controls rejected" },
    Claim { id: 11, text: "reports reproducible from the seed" },
];

fn tag(suite: &str, claim: u32, reports: Vec<VerificationReport>) -> impl Iterator<Item = Line> + '_ {
    reports.into_iter().map(move |report| Line { suite: suite.into(), claim: Some(claim), report })
}

/// The parameter grid of every claim, in claim order. Claim 11 is the
/// byte-identity of two runs of this function's output.
pub fn paper_claims(s: &Settings) -> Result<Vec<Line>, CliError> {
    let prec = s.precision;
    let mut out: Vec<Line> = Vec::new();
    for (n, l, k) in [(3, 1, 1), (5, 2, 3), (8, 3, 1)] {
        let r6 = SixVertex { params: Params::from_n(n, l, k)? };
        out.extend(tag("ybe", 1, vec![timed(|| check_ybe::<MpComplex>(&prec, &r6, &s.plan(), YbeForm::Plain))?]));
    }
    for n in [3, 5, 7, 9, 17] {
        out.extend(tag("g-identity", 2, g_identity(s, n)?));
    }
    for n in [3, 5] {
        let r = descendant(s, n, false)?;
        out.extend(tag("ybe", 2, vec![timed(|| check_ybe(&prec, r.as_ref(), &s.plan(), YbeForm::Plain))?]));
    }
    for m in [2, 4, 6, 16] {
        out.extend(tag("g-identity", 3, g_identity(s, 2 * m)?));
    }
    for m in [2, 4, 6] {
        out.extend(tag("two-param", 3, two_param(s, 2 * m)?));
    }
    for n in [3, 5, 7, 4, 8] {
        out.extend(tag("rll", 4, rll(s, n)?));
        out.extend(tag("llr", 4, llr(s, n)?));
    }
    for n in [3, 5, 7, 9, 4, 6, 8] {
        out.extend(tag("projectors", 5, projectors(s, n)?));
    }
    for n in [3, 5, 7, 9, 4] {
        out.extend(tag("properties", 6, limits(s, n)?));
    }
    for n in [3, 5, 7] {
        let plan = s.plan_of(10);
        let r = descendant(s, n, true)?;
        let p = params(n)?;
        let bad = Descendant::new(CoeffTable::<MpComplex>::new(&prec, p, imaginary_boundary(p.d() as i64))?, true, "Ř");
        let reports = vec![
            timed(|| check_adjoint_symmetry(&prec, r.as_ref(), &plan))?,
            timed(|| check_adjoint_symmetry(&prec, &bad, &plan))?.expect(Verdict::Fail),
        ];
        out.extend(tag("properties", 7, reports));
    }
    for n in [3, 5, 7] {
        let w = FzWeights::<MpComplex>::new(&prec, n, RootOfUnity::new(2 * n, 1)?)?;
        out.extend(tag("str", 8, vec![timed(|| check_str(&prec, &w, &s.plan()))?]));
    }
    for (n, transform) in [(3, true), (5, false)] {
        let opts = FzOptions {
            n,
            z_samples: 5,
            schedule: vec![1e4, 1e6, 1e8],
            seed: s.seed,
            precision: prec,
            require_transform: transform,
        };
        out.extend(tag("fz-compare", 9, fz_compare(&opts)?.reports));
    }
    out.extend(tag("controls", 10, controls(s)?));
    Ok(out)
}

/// A perturbed descendant under the YBE and the LLR relation, the `h = z²`
/// L-operator under rLL, and the asymmetric boundary under the coefficient
/// constraints; every one is expected to fail.
pub fn controls(s: &Settings) -> Result<Vec<VerificationReport>, CliError> {
    let prec = s.precision;
    let plan = s.plan();
    let p = params(3)?;
    let eps = s.perturb.unwrap_or(1e-2);
    let bad = Perturbed::new(Descendant::<MpComplex>::standard(&prec, p)?, eps);
    let reports = vec![
        timed(|| check_ybe(&prec, &bad, &plan, YbeForm::Plain))?,
        timed(|| check_llr(&prec, &LOperator::new(p), &bad, &plan, LlrForm::Plain))?,
        timed(|| check_rll::<MpComplex>(&prec, &SixVertex { params: p }, &squared_h(p), &plan))?,
        timed(|| check_f_constraints(&prec, &CoeffTable::<MpComplex>::new(&prec, p, asymmetric_boundary())?, &plan))?,
    ];
    Ok(reports.into_iter().map(|r| r.expect(Verdict::Fail)).collect())
}
