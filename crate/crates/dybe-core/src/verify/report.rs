use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::SamplePlan;
use crate::operator::Operator;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    pub index: usize,
    pub point: Vec<[f64; 2]>,
    pub residual: f64,
}

/// The outcome of one identity check. `wall` is not serialized so that
/// reports are reproducible byte for byte.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub params: String,
    pub seed: u64,
    pub tolerance: f64,
    pub samples: Vec<Sample>,
    pub max_residual: f64,
    pub verdict: Verdict,
    pub expected: Verdict,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    #[serde(skip)]
    pub wall: Duration,
}

impl VerificationReport {
    pub fn new(
        identity: impl Into<String>,
        params: impl Into<String>,
        plan: &SamplePlan,
        samples: Vec<Sample>,
    ) -> Self {
        Self::with_tolerance(identity, params, plan.seed, plan.tolerance, samples)
    }

    pub fn with_tolerance(
        identity: impl Into<String>,
        params: impl Into<String>,
        seed: u64,
        tolerance: f64,
        samples: Vec<Sample>,
    ) -> Self {
        let max_residual =
            samples.iter().map(|s| s.residual).fold(0.0, |a: f64, r| if r.is_nan() { f64::NAN } else { a.max(r) });
        let verdict = if !samples.is_empty() && samples.iter().all(|s| s.residual < tolerance) {
            Verdict::Pass
        } else {
            Verdict::Fail
        };
        Self {
            identity: identity.into(),
            params: params.into(),
            seed,
            tolerance,
            samples,
            max_residual,
            verdict,
            expected: Verdict::Pass,
            notes: Vec::new(),
            wall: Duration::ZERO,
        }
    }

    pub fn expect(mut self, v: Verdict) -> Self {
        self.expected = v;
        self
    }

    pub fn note(mut self, s: impl Into<String>) -> Self {
        self.notes.push(s.into());
        self
    }

    pub fn timed(mut self, wall: Duration) -> Self {
        self.wall = wall;
        self
    }

    pub fn as_expected(&self) -> bool {
        self.verdict == self.expected
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

/// `‖L − R‖ / max(1, ‖L‖, ‖R‖)` in the max-norm.
pub fn residual<S: Scalar>(lhs: &Operator<S>, rhs: &Operator<S>) -> f64 {
    lhs.max_abs_diff(rhs) / 1f64.max(lhs.max_abs()).max(rhs.max_abs())
}

/// The scalar version of [`residual`].
pub fn scalar_residual<S: Scalar>(lhs: &S, rhs: &S) -> f64 {
    lhs.sub(rhs).abs() / 1f64.max(lhs.abs()).max(rhs.abs())
}
