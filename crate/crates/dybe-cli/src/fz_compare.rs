//! `dybe fz-compare`: the Fateev–Zamolodchikov limit against the descendant.

use std::time::Instant;

use dybe_core::builders::{normalize, Descendant, FzLimitOp, FzWeights, Params};
use dybe_core::verify::{
    canonical_for, find_equivalence_ops, residual, Equivalence, Sample, SamplePlan, Verdict, VerificationReport,
};
use dybe_core::{Error, MpComplex, Precision, Scalar, SpectralOperator};

use crate::CliError;

/// Largest projective max-norm change between the last two iterates of
/// `R(zy, y)` accepted as converged.
pub const CONVERGENCE_TOL: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct FzOptions {
    /// Number of states `N`, odd.
    pub n: u64,
    pub z_samples: usize,
    /// Values of `y` in `x = zy`, increasing.
    pub schedule: Vec<f64>,
    pub seed: u64,
    pub precision: Precision,
    /// Count a spectral-only match as a failure.
    pub require_transform: bool,
}

#[derive(Clone, Debug)]
pub struct FzOutcome {
    /// Convergence of the limit, the equivalence on the unit circle, and the
    /// equivalence of `R(0)` with the canonical element.
    pub reports: Vec<VerificationReport>,
    pub equivalence: Equivalence,
    pub at_zero: Equivalence,
}

impl FzOutcome {
    pub fn succeeded(&self) -> bool {
        self.reports.iter().all(|r| r.as_expected())
    }
}

/// With `λ = −ω⁻¹`: checks that `R(zy, y)` converges along `schedule` to the
/// closed-form limit at `z_samples` unit-circle points, then searches for a
/// basis change to the descendant at those points and at `z = 0`.
pub fn fz_compare(o: &FzOptions) -> Result<FzOutcome, CliError> {
    if o.n % 2 == 0 {
        return Err(CliError::Input(format!("the FZ comparison needs odd N, got N = {}", o.n)));
    }
    let prec = o.precision;
    let tol = prec.default_tolerance();
    let p = Params::from_n(o.n, 1, 1)?;
    let weights = FzWeights::<MpComplex>::matching(&prec, o.n, p.omega)?;
    let desc = Descendant::<MpComplex>::standard(&prec, p)?;
    let lim = FzLimitOp { weights: weights.clone() };
    let plan = SamplePlan::new(o.z_samples, o.seed, tol);
    let points = plan.singles::<MpComplex>(&prec, &lim.poles().union(&desc.poles()).union(&weights.poles()))?;

    let start = Instant::now();
    let mut samples = Vec::with_capacity(points.len());
    let mut traces = Vec::with_capacity(points.len());
    let mut pairs = Vec::with_capacity(points.len());
    for (index, pt) in points.iter().enumerate() {
        let z = &pt.values[0];
        let along = weights.limit_along(z, &o.schedule, CONVERGENCE_TOL).map_err(|e| match e {
            Error::NoConvergence(what, trace) => {
                CliError::Failed(format!("{what} at z = {:?} does not converge: {trace}", pt.display[0]))
            }
            e => e.into(),
        })?;
        let closed = weights.limit_closed(z)?;
        let gap = residual(&along.matrix, &normalize(&closed));
        samples.push(Sample {
            index,
            point: pt.display.clone(),
            residual: gap.max(*along.diffs.last().expect("two iterates")),
        });
        traces.push(along.diffs.iter().map(|d| format!("{d:.2e}")).collect::<Vec<_>>().join(" → "));
        pairs.push((closed, desc.at(z)?));
    }
    let convergence = VerificationReport::with_tolerance("fz-limit", lim.describe(), o.seed, CONVERGENCE_TOL, samples)
        .note(format!("schedule y = {:?}", o.schedule))
        .note(format!("successive differences per sample: {}", traces.join("; ")))
        .timed(start.elapsed());
    let start = Instant::now();

    let display: Vec<Vec<[f64; 2]>> = points.iter().map(|p| p.display.clone()).collect();
    let (equivalence, mut report) =
        find_equivalence_ops(&prec, &pairs, &display, (&lim.describe(), &desc.describe()), &plan)?;
    if o.require_transform && !equivalence.is_transform() {
        report.verdict = Verdict::Fail;
        report = report.note("an explicit transform is required for this N");
    }
    let report = report
        .note(format!("equivalence {}", serde_json::to_string(&equivalence).expect("serializes")))
        .timed(start.elapsed());
    let start = Instant::now();

    let zero = MpComplex::zero(&prec);
    let origin = vec![(weights.limit_closed(&zero)?, canonical_for(&prec, &p)?)];
    let one = SamplePlan::new(1, o.seed, tol);
    let (at_zero, zero_report) =
        find_equivalence_ops(&prec, &origin, &[vec![[0.0, 0.0]]], ("FZ limit at z = 0", "(π ⊗ π)𝓡"), &one)?;
    let zero_report = zero_report
        .note(format!("equivalence {}", serde_json::to_string(&at_zero).expect("serializes")))
        .timed(start.elapsed());
    Ok(FzOutcome { reports: vec![convergence, report, zero_report], equivalence, at_zero })
}
