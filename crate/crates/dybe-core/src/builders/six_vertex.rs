use std::sync::Arc;

use super::Params;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Powers, Scalar};
use crate::spectral::{PoleSet, SpectralOperator};

/// The zero-field six-vertex matrix with `q = ω^{kl}`:
/// corners `q/z − z/q`, middle block `[[1/z − z, q − 1/q], [q − 1/q, 1/z − z]]`.
pub fn six_vertex_r<S: Scalar>(p: &Params, z: &S) -> Result<Operator<S>> {
    let ctx = z.ctx();
    let zi = z.inv().filter(|_| !z.is_tiny()).ok_or_else(|| Error::Pole("r(z) at z = 0".into()))?;
    let (num, den) = p.q_turns();
    let q = S::unit(&ctx, num, den)?;
    let qi = S::unit(&ctx, -num, den)?;
    let a = q.mul(&zi).sub(&z.mul(&qi));
    let b = zi.sub(z);
    let c = q.sub(&qi);
    Ok(Operator::from_entries(
        &ctx,
        4,
        [(0, 0, a.clone()), (1, 1, b.clone()), (1, 2, c.clone()), (2, 1, c), (2, 2, b), (3, 3, a)],
    ))
}

/// `L(z) = Σ_i (ω^{ik} e₀₁ + ω^{−ik} e₁₀) ⊗ e_{ii} + h [e₀₀ ⊗ e_{i−l,i} + e₁₁ ⊗ e_{i+l,i}]`
/// with `h = z`.
pub fn l_operator<S: Scalar>(p: &Params, z: &S) -> Result<Operator<S>> {
    l_operator_with_h(p, z)
}

/// The L-operator ansatz with an arbitrary value `h` in place of `z`.
pub fn l_operator_with_h<S: Scalar>(p: &Params, h: &S) -> Result<Operator<S>> {
    let ctx = h.ctx();
    let d = p.d() as i64;
    let w = Powers::<S>::new(&ctx, p.omega)?;
    let at = |s: i64, i: i64| (s * d + i.rem_euclid(d)) as usize;
    let mut entries = Vec::with_capacity(4 * d as usize);
    for i in 0..d {
        entries.push((at(0, i), at(1, i), w.get(i * p.k).clone()));
        entries.push((at(1, i), at(0, i), w.get(-i * p.k).clone()));
        entries.push((at(0, i - p.l), at(0, i), h.clone()));
        entries.push((at(1, i + p.l), at(1, i), h.clone()));
    }
    Ok(Operator::from_entries(&ctx, 2 * d as usize, entries))
}

/// `r(z)` as a spectral operator.
#[derive(Clone, Debug)]
pub struct SixVertex {
    pub params: Params,
}

impl<S: Scalar> SpectralOperator<S> for SixVertex {
    fn dim(&self) -> usize {
        4
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        six_vertex_r(&self.params, z)
    }

    fn poles(&self) -> PoleSet {
        PoleSet::at_zero()
    }

    fn describe(&self) -> String {
        let (num, den) = self.params.q_turns();
        format!("six-vertex r(z), q = exp(2πi·{num}/{den})")
    }
}

type HFn<S> = Arc<dyn Fn(&S) -> S + Send + Sync>;

/// `L(z)`, optionally with `z` replaced by `h(z)` in the ansatz.
#[derive(Clone)]
pub struct LOperator<S: Scalar> {
    pub params: Params,
    h: Option<(String, HFn<S>)>,
}

impl<S: Scalar> LOperator<S> {
    pub fn new(params: Params) -> Self {
        Self { params, h: None }
    }

    pub fn with_h(params: Params, name: impl Into<String>, h: impl Fn(&S) -> S + Send + Sync + 'static) -> Self {
        Self { params, h: Some((name.into(), Arc::new(h))) }
    }
}

impl<S: Scalar> SpectralOperator<S> for LOperator<S> {
    fn dim(&self) -> usize {
        2 * self.params.d() as usize
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        match &self.h {
            None => l_operator(&self.params, z),
            Some((_, h)) => l_operator_with_h(&self.params, &h(z)),
        }
    }

    fn poles(&self) -> PoleSet {
        PoleSet::none()
    }

    fn describe(&self) -> String {
        let h = self.h.as_ref().map_or("z", |(name, _)| name.as_str());
        format!("L-operator, d = {}, (l, k) = ({}, {}), h = {h}", self.params.d(), self.params.l, self.params.k)
    }
}
