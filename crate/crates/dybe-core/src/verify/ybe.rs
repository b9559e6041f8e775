use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::Point;
use super::report::{residual, Sample, VerificationReport};
use super::SamplePlan;
use crate::builders::TwoParam;
use crate::error::{Error, Result};
use crate::operator::{Operator, Slot};
use crate::scalar::Scalar;
use crate::spectral::{PoleSet, SpectralOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum YbeForm {
    /// `R₁₂(x)R₁₃(xy)R₂₃(y) = R₂₃(y)R₁₃(xy)R₁₂(x)`.
    Plain,
    /// `Ř₁₂(x)Ř₂₃(xy)Ř₁₂(y) = Ř₂₃(y)Ř₁₂(xy)Ř₂₃(x)`.
    Braided,
    /// `R₁₂R₁₃R₂₃ = R₂₃R₁₃R₁₂` with `R` evaluated once per sample.
    Constant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LlrForm {
    /// `L₁₂(x)L₁₃(y)R₂₃(y/x) = R₂₃(y/x)L₁₃(y)L₁₂(x)`.
    Plain,
    /// `L₁₃(y)L₁₂(x)Ř₂₃(x/y) = Ř₂₃(x/y)L₁₃(x)L₁₂(y)`.
    Braided,
}

/// Largest leg dimension the full-matrix YBE check accepts by default.
pub const YBE_MAX_LEG: usize = 7;

pub(crate) fn leg_dim(dim: usize) -> Result<usize> {
    let d = (dim as f64).sqrt().round() as usize;
    if d * d != dim {
        return Err(Error::Dimension(format!("{dim} is not the dimension of V ⊗ V")));
    }
    Ok(d)
}

fn run<S: Scalar>(
    points: Vec<Point<S>>,
    f: impl Fn(&[S]) -> Result<(Operator<S>, Operator<S>)> + Sync,
) -> Result<Vec<Sample>> {
    points
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| {
            let (l, r) = f(&p.values)?;
            Ok(Sample { index, point: p.display, residual: residual(&l, &r) })
        })
        .collect()
}

fn ratio<S: Scalar>(x: &S, y: &S) -> Result<S> {
    x.div(y).ok_or_else(|| Error::Pole("spectral parameter 0".into()))
}

pub fn check_ybe<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
    form: YbeForm,
) -> Result<VerificationReport> {
    check_ybe_capped(ctx, r, plan, form, YBE_MAX_LEG)
}

pub fn check_ybe_capped<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
    form: YbeForm,
    max_leg: usize,
) -> Result<VerificationReport> {
    let d = leg_dim(r.dim())?;
    if d > max_leg {
        return Err(Error::Invalid(format!("full-matrix YBE with leg dimension {d} exceeds the cap {max_leg}")));
    }
    let dims = (d, d, d);
    let e = |m: &Operator<S>, s| m.embed(s, dims);
    let samples = run(plan.pairs(ctx, &r.poles())?, |v| {
        let (x, y) = (&v[0], &v[1]);
        Ok(match form {
            YbeForm::Plain => {
                let (a, b, c) = (r.eval(x)?, r.eval(&x.mul(y))?, r.eval(y)?);
                let (a12, b13, c23) = (e(&a, Slot::S12)?, e(&b, Slot::S13)?, e(&c, Slot::S23)?);
                (a12.mul(&b13).mul(&c23), c23.mul(&b13).mul(&a12))
            }
            YbeForm::Braided => {
                let (a, b, c) = (r.eval(x)?, r.eval(&x.mul(y))?, r.eval(y)?);
                let lhs = e(&a, Slot::S12)?.mul(&e(&b, Slot::S23)?).mul(&e(&c, Slot::S12)?);
                let rhs = e(&c, Slot::S23)?.mul(&e(&b, Slot::S12)?).mul(&e(&a, Slot::S23)?);
                (lhs, rhs)
            }
            YbeForm::Constant => {
                let a = r.eval(x)?;
                let (a12, a13, a23) = (e(&a, Slot::S12)?, e(&a, Slot::S13)?, e(&a, Slot::S23)?);
                (a12.mul(&a13).mul(&a23), a23.mul(&a13).mul(&a12))
            }
        })
    })?;
    Ok(VerificationReport::new(format!("ybe-{form:?}").to_lowercase(), r.describe(), plan, samples))
}

/// `r₁₂(x/y)L₁₃(x)L₂₃(y) = L₂₃(y)L₁₃(x)r₁₂(x/y)` on `C² ⊗ C² ⊗ V`.
pub fn check_rll<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    l: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    if r.dim() != 4 || l.dim() % 2 != 0 {
        return Err(Error::Dimension("rLL needs a 4×4 r and an L on C² ⊗ V".into()));
    }
    let dims = (2, 2, l.dim() / 2);
    let poles = ratio_poles(&r.poles());
    let samples = run(plan.pairs(ctx, &poles)?, |v| {
        let (x, y) = (&v[0], &v[1]);
        let r12 = r.eval(&ratio(x, y)?)?.embed(Slot::S12, dims)?;
        let l13 = l.eval(x)?.embed(Slot::S13, dims)?;
        let l23 = l.eval(y)?.embed(Slot::S23, dims)?;
        Ok((r12.mul(&l13).mul(&l23), l23.mul(&l13).mul(&r12)))
    })?;
    Ok(VerificationReport::new("rll", format!("{} / {}", r.describe(), l.describe()), plan, samples))
}

/// The LLR relation on `C² ⊗ V ⊗ V`.
pub fn check_llr<S: Scalar>(
    ctx: &S::Ctx,
    l: &dyn SpectralOperator<S>,
    r: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
    form: LlrForm,
) -> Result<VerificationReport> {
    let d = leg_dim(r.dim())?;
    if l.dim() != 2 * d {
        return Err(Error::Dimension(format!("L of dim {} does not act on C² ⊗ C^{d}", l.dim())));
    }
    let dims = (2, d, d);
    let samples = run(plan.pairs(ctx, &r.poles())?, |v| {
        let (x, y) = (&v[0], &v[1]);
        Ok(match form {
            LlrForm::Plain => {
                let l12 = l.eval(x)?.embed(Slot::S12, dims)?;
                let l13 = l.eval(y)?.embed(Slot::S13, dims)?;
                let r23 = r.eval(&ratio(y, x)?)?.embed(Slot::S23, dims)?;
                (l12.mul(&l13).mul(&r23), r23.mul(&l13).mul(&l12))
            }
            LlrForm::Braided => {
                let r23 = r.eval(&ratio(x, y)?)?.embed(Slot::S23, dims)?;
                let lhs = l.eval(y)?.embed(Slot::S13, dims)?.mul(&l.eval(x)?.embed(Slot::S12, dims)?).mul(&r23);
                let rhs = r23.mul(&l.eval(x)?.embed(Slot::S13, dims)?).mul(&l.eval(y)?.embed(Slot::S12, dims)?);
                (lhs, rhs)
            }
        })
    })?;
    let name = format!("llr-{form:?}").to_lowercase();
    Ok(VerificationReport::new(name, format!("{} / {}", l.describe(), r.describe()), plan, samples))
}

/// `r(z)` has its only pole at `z = 0`, which `x/y` never reaches on the circle.
fn ratio_poles(p: &PoleSet) -> PoleSet {
    PoleSet { zero: false, circle: p.circle.clone() }
}

/// `Ř₁₂(x,λ)Ř₂₃(xy,μ)Ř₁₂(y,ν) = Ř₂₃(y,ν)Ř₁₂(xy,μ)Ř₂₃(x,λ)` with `λ, μ, ν`
/// sampled on the unit circle away from `±1`, or fixed.
pub fn check_two_param<S: Scalar>(
    ctx: &S::Ctx,
    family: &TwoParam<S>,
    plan: &SamplePlan,
    fixed: Option<[S; 3]>,
) -> Result<VerificationReport> {
    let d = family.d();
    let dims = (d, d, d);
    let pairs = plan.pairs::<S>(ctx, &family.poles())?;
    let params = match &fixed {
        Some(p) => vec![p.to_vec(); pairs.len()],
        None => plan.away_from_signs::<S>(ctx, 3, 3)?.into_iter().map(|p| p.values).collect(),
    };
    let points: Vec<Point<S>> = pairs
        .into_iter()
        .zip(params)
        .map(|(mut p, q)| {
            p.display.extend(q.iter().map(|v| {
                let c = v.to_c64();
                [c.re, c.im]
            }));
            p.values.extend(q);
            p
        })
        .collect();
    let samples = run(points, |v| {
        let (x, y, lam, mu, nu) = (&v[0], &v[1], &v[2], &v[3], &v[4]);
        let a = family.at(x, lam)?;
        let b = family.at(&x.mul(y), mu)?;
        let c = family.at(y, nu)?;
        let lhs = a.embed(Slot::S12, dims)?.mul(&b.embed(Slot::S23, dims)?).mul(&c.embed(Slot::S12, dims)?);
        let rhs = c.embed(Slot::S23, dims)?.mul(&b.embed(Slot::S12, dims)?).mul(&a.embed(Slot::S23, dims)?);
        Ok((lhs, rhs))
    })?;
    let params = format!("Ř⁺ + μŘ⁻, m = {d}{}", if fixed.is_some() { ", fixed (λ, μ, ν)" } else { "" });
    Ok(VerificationReport::new("two-param-ybe", params, plan, samples))
}
