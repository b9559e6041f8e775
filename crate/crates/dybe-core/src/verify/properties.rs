use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::plan::Point;
use super::report::{residual, Sample, VerificationReport};
use super::ybe::leg_dim;
use super::SamplePlan;
use crate::builders::Params;
use crate::dihedral::{canonical_element, DoubleRep, IrrepLabel};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{RootOfUnity, Scalar};
use crate::spectral::SpectralOperator;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Property {
    /// `R(z)* = R(z)` for real `z`.
    ConjSymmetry,
    /// `Rᵗ(z) = R(z)`.
    Transpose,
    /// `R(z)² = I`.
    Involution,
    /// `R₁₂(z)R₂₁(z⁻¹) = I`.
    Unitarity,
    /// `R(0) = ±` the canonical element.
    Limit0,
    /// `R(1) = P`.
    Limit1,
}

impl Property {
    pub const ALL: [Property; 6] =
        [Self::ConjSymmetry, Self::Transpose, Self::Involution, Self::Unitarity, Self::Limit0, Self::Limit1];

    pub fn name(self) -> &'static str {
        match self {
            Self::ConjSymmetry => "conj-symmetry",
            Self::Transpose => "transpose",
            Self::Involution => "involution",
            Self::Unitarity => "unitarity",
            Self::Limit0 => "limit0",
            Self::Limit1 => "limit1",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// How the sides of a property are compared.
#[derive(Clone, Debug)]
pub struct PropertyOptions<S: Scalar> {
    /// Target of [`Property::Limit0`].
    pub canonical: Option<Operator<S>>,
    /// Compare up to an overall scalar (reported in the notes).
    pub projective: bool,
}

impl<S: Scalar> Default for PropertyOptions<S> {
    fn default() -> Self {
        Self { canonical: None, projective: false }
    }
}

/// `(π ⊗ π)𝓡` for the irrep whose tensor square a descendant with these
/// parameters decomposes: `π_n^+` for odd `n`, `π_{m,τ}^{(0,0)}` for `n = 2m`.
pub fn canonical_for<S: Scalar>(ctx: &S::Ctx, p: &Params) -> Result<Operator<S>> {
    let d = p.d() as i64;
    let power = p.omega.power() as i64;
    if p.n % 2 == 0 && p.n as i64 == 2 * d {
        let t = if num_integer::Integer::gcd(&power, &(2 * d)) == 1 { power } else { power + d };
        let rep = DoubleRep::<S>::with_root(ctx, RootOfUnity::new(p.n, t)?)?;
        return canonical_element(&rep, &IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 });
    }
    if d % 2 == 1 {
        let t = power * (d + 1) / 2 % d;
        let rep = DoubleRep::<S>::with_root(ctx, RootOfUnity::new(d as u64, t)?)?;
        return canonical_element(&rep, &IrrepLabel::NDimOdd { plus: true });
    }
    Err(Error::Invalid(format!("no canonical element for ω of even order {d} without the group order 2·{d}")))
}

/// Residual of `a ∝ b`, the scalar read off at the largest entry of `b`.
pub fn projective_residual<S: Scalar>(a: &Operator<S>, b: &Operator<S>) -> (f64, Option<S>) {
    let best = b.entries().into_iter().fold(None::<(f64, S, usize, usize)>, |acc, (i, j, v)| {
        let m = v.abs();
        match acc {
            Some((bm, ..)) if m <= bm * (1.0 + 1e-6) => acc,
            _ => Some((m, v, i, j)),
        }
    });
    let Some((_, v, i, j)) = best else {
        return (if a.max_abs() == 0.0 { 0.0 } else { f64::INFINITY }, None);
    };
    let Some(c) = a.get(i, j).div(&v) else {
        return (f64::INFINITY, None);
    };
    (residual(a, &b.scale(&c)), Some(c))
}

fn compare<S: Scalar>(a: &Operator<S>, b: &Operator<S>, projective: bool) -> (f64, Option<S>) {
    if projective {
        projective_residual(a, b)
    } else {
        (residual(a, b), None)
    }
}

fn scalar_note<S: Scalar>(c: &Option<S>) -> Option<[f64; 2]> {
    c.as_ref().map(|c| {
        let v = c.to_c64();
        [v.re, v.im]
    })
}

/// One property of `r` over the points the property ranges over: real samples
/// for conjugation symmetry, the unit circle for transpose, involution and
/// unitarity, and the single points `z = 0` or `z = 1` for the limits.
pub fn check_property<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    prop: Property,
    plan: &SamplePlan,
    opts: &PropertyOptions<S>,
) -> Result<VerificationReport> {
    let d = leg_dim(r.dim())?;
    let perm = Operator::permutation(ctx, d, d);
    let points: Vec<Point<S>> = match prop {
        Property::ConjSymmetry => plan.reals(ctx)?,
        Property::Transpose | Property::Involution | Property::Unitarity => plan.singles(ctx, &r.poles())?,
        Property::Limit0 => vec![Point { values: vec![S::zero(ctx)], display: vec![[0.0, 0.0]] }],
        Property::Limit1 => vec![Point { values: vec![S::one(ctx)], display: vec![[1.0, 0.0]] }],
    };
    let canonical = match (prop, &opts.canonical) {
        (Property::Limit0, None) => return Err(Error::Invalid("limit0 needs the canonical element".into())),
        (_, c) => c.clone(),
    };
    let results = points
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| {
            let z = &p.values[0];
            let a = r.eval(z)?;
            let (res, c) = match prop {
                Property::ConjSymmetry => compare(&a.conj(), &a, opts.projective),
                Property::Transpose => compare(&a.transpose(), &a, opts.projective),
                Property::Involution => compare(&a.mul(&a), &Operator::identity(ctx, a.dim()), opts.projective),
                Property::Unitarity => {
                    let inv = z.inv().ok_or_else(|| Error::Pole("z = 0".into()))?;
                    let b = r.eval(&inv)?.swap_legs(d);
                    compare(&a.mul(&b), &Operator::identity(ctx, a.dim()), opts.projective)
                }
                Property::Limit0 => {
                    let c = canonical.as_ref().expect("checked above");
                    let (plus, minus) = (compare(&a, c, opts.projective), compare(&a, &c.neg(), opts.projective));
                    if minus.0 < plus.0 {
                        minus
                    } else {
                        plus
                    }
                }
                Property::Limit1 => compare(&a, &perm, opts.projective),
            };
            Ok((Sample { index, point: p.display, residual: res }, scalar_note(&c)))
        })
        .collect::<Result<Vec<_>>>()?;
    let scalars: Vec<[f64; 2]> = results.iter().filter_map(|(_, c)| *c).collect();
    let samples = results.into_iter().map(|(s, _)| s).collect();
    let mut report = VerificationReport::new(prop.name(), r.describe(), plan, samples);
    if opts.projective {
        report = report.note(format!("compared up to a scalar; scalars {scalars:?}"));
    }
    Ok(report)
}

pub fn check_properties<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    props: &[Property],
    plan: &SamplePlan,
    opts: &PropertyOptions<S>,
) -> Result<Vec<VerificationReport>> {
    props.iter().map(|&p| check_property(ctx, r, p, plan, opts)).collect()
}

/// `Ř₁₂(z) = Ř₂₁(z)^†` on real samples, for a braided operator `Ř`.
pub fn check_adjoint_symmetry<S: Scalar>(
    ctx: &S::Ctx,
    r: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    let d = leg_dim(r.dim())?;
    let samples = plan
        .reals(ctx)?
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| {
            let a = r.eval(&p.values[0])?;
            Ok(Sample { index, residual: residual(&a, &a.swap_legs(d).adjoint()), point: p.display })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("adjoint-symmetry", r.describe(), plan, samples))
}
