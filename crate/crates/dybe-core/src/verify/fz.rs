use rayon::prelude::*;

use super::plan::point;
use super::properties::projective_residual;
use super::report::{Sample, VerificationReport};
use super::SamplePlan;
use crate::builders::{FzWeights, WeightKind};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Reading of the middle weight in the star-triangle relation.
pub const STR_READING: &str = "middle weight read as W(xy|d − c)";

/// The star-triangle relation in proportionality form: at each `(x, y)` the
/// ratio `Σ_d W̄(x|a−d)W(xy|d−c)W̄(y|d−b) / W(x|b−c)W̄(xy|a−b)W(y|a−c)` must
/// not depend on `(a, b, c)`. The residual is the relative spread of the ratio.
pub fn check_str<S: Scalar>(ctx: &S::Ctx, wts: &FzWeights<S>, plan: &SamplePlan) -> Result<VerificationReport> {
    let n = wts.n() as i64;
    let results = plan
        .pairs::<S>(ctx, &wts.poles())?
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| {
            let (x, y) = (&p.values[0], &p.values[1]);
            let xy = x.mul(y);
            let table = |kind, z: &S| (0..n).map(|l| wts.weight(kind, z, l)).collect::<Result<Vec<S>>>();
            let (wx, wbx) = (table(WeightKind::W, x)?, table(WeightKind::WBar, x)?);
            let (wxy, wbxy) = (table(WeightKind::W, &xy)?, table(WeightKind::WBar, &xy)?);
            let (wy, wby) = (table(WeightKind::W, y)?, table(WeightKind::WBar, y)?);
            let at = |t: &[S], l: i64| t[l.rem_euclid(n) as usize].clone();
            let mut ratios = Vec::new();
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let lhs = (0..n).fold(S::zero(ctx), |acc, d| {
                            acc.add(&at(&wbx, a - d).mul(&at(&wxy, d - c)).mul(&at(&wby, d - b)))
                        });
                        let rhs = at(&wx, b - c).mul(&at(&wbxy, a - b)).mul(&at(&wy, a - c));
                        if rhs.abs() < 1e-40 * 1f64.max(lhs.abs()) {
                            continue;
                        }
                        ratios.push(lhs.div(&rhs).expect("nonzero right-hand side"));
                    }
                }
            }
            let Some(first) = ratios.first().cloned() else {
                return Err(Error::Pole("every right-hand side of the STR vanishes".into()));
            };
            let scale = first.abs().max(f64::MIN_POSITIVE);
            let spread = ratios.iter().map(|r| r.sub(&first).abs() / scale).fold(0.0, f64::max);
            let c = first.to_c64();
            Ok((Sample { index, point: p.display, residual: spread }, [c.re, c.im], ratios.len()))
        })
        .collect::<Result<Vec<_>>>()?;
    let ratios: Vec<[f64; 2]> = results.iter().map(|r| r.1).collect();
    let used: Vec<usize> = results.iter().map(|r| r.2).collect();
    let samples = results.into_iter().map(|r| r.0).collect();
    let params = format!("N = {}, λ = exp(2πi·{}/{})", wts.n(), wts.lambda().power(), wts.lambda().order());
    Ok(VerificationReport::new("str", params, plan, samples)
        .note(STR_READING)
        .note(format!("ratio LHS/RHS per sample: {ratios:?}"))
        .note(format!("triples used per sample: {used:?}")))
}

/// `R(x̃, ỹ)·R(x̃^{−T}, ỹ^{−T}) ∝ I ⊗ I` with `x̃^{−T} = (x₂⁻¹, x₁⁻¹)`; the
/// scalar is reported, not asserted.
pub fn check_inverse_relation<S: Scalar>(
    ctx: &S::Ctx,
    wts: &FzWeights<S>,
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    let poles = wts.poles();
    let m = plan.margin;
    let angles = plan.angles(3, 4, |t| {
        let (x1, x2, y1, y2) = (t[0], t[1], t[2], t[3]);
        [x1 - y1, x2 - y1, x2 - y2, x1 - y2, y2 - x2, y1 - x2, y1 - x1, y2 - x1].iter().all(|&a| !poles.near(a, m))
    })?;
    let dim = (wts.n() * wts.n()) as usize;
    let results = angles
        .par_iter()
        .enumerate()
        .map(|(index, t)| {
            let p = point::<S>(ctx, t)?;
            let v = &p.values;
            let inv = |z: &S| z.inv().ok_or_else(|| Error::Pole("0".into()));
            let a = wts.rmatrix_full((&v[0], &v[1]), (&v[2], &v[3]))?;
            let (x1i, x2i, y1i, y2i) = (inv(&v[0])?, inv(&v[1])?, inv(&v[2])?, inv(&v[3])?);
            let b = wts.rmatrix_full((&x2i, &x1i), (&y2i, &y1i))?;
            let (res, c) = projective_residual(&a.mul(&b), &Operator::identity(ctx, dim));
            let c = c.map(|c| c.to_c64()).map(|c| [c.re, c.im]).unwrap_or([f64::NAN; 2]);
            Ok((Sample { index, point: p.display, residual: res }, c))
        })
        .collect::<Result<Vec<_>>>()?;
    let scalars: Vec<[f64; 2]> = results.iter().map(|r| r.1).collect();
    let samples = results.into_iter().map(|r| r.0).collect();
    let params = format!("N = {}, λ = exp(2πi·{}/{})", wts.n(), wts.lambda().power(), wts.lambda().order());
    Ok(VerificationReport::new("fz-inverse-relation", params, plan, samples).note(format!("scalars: {scalars:?}")))
}
