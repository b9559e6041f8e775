use num_integer::Integer;

use super::params::mod_inverse;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{RootOfUnity, Scalar};

/// An invertible single-leg basis change with its inverse.
#[derive(Clone, Debug)]
pub struct Basis<S: Scalar> {
    pub t: Operator<S>,
    pub t_inv: Operator<S>,
}

impl<S: Scalar> Basis<S> {
    pub fn identity(ctx: &S::Ctx, d: usize) -> Self {
        Self { t: Operator::identity(ctx, d), t_inv: Operator::identity(ctx, d) }
    }

    /// `self ∘ o`: apply `o` first.
    pub fn then(&self, o: &Self) -> Self {
        Self { t: self.t.mul(&o.t), t_inv: o.t_inv.mul(&self.t_inv) }
    }

    /// `(T ⊗ T) A (T ⊗ T)⁻¹`.
    pub fn conjugate(&self, a: &Operator<S>) -> Operator<S> {
        self.t.kron(&self.t).mul(a).mul(&self.t_inv.kron(&self.t_inv))
    }
}

/// `S(c) = Σ_i e_{ci,i}`, relabelling `i → ci mod d`.
pub fn index_scale<S: Scalar>(ctx: &S::Ctx, d: usize, c: i64) -> Result<Basis<S>> {
    let di = d as i64;
    if c.gcd(&di) != 1 {
        return Err(Error::Invalid(format!("index scaling needs gcd(c, d) = 1; got c = {c}, d = {d}")));
    }
    let perm = |c: i64| {
        Operator::from_entries(ctx, d, (0..di).map(|i| ((c * i).rem_euclid(di) as usize, i as usize, S::one(ctx))))
    };
    Ok(Basis { t: perm(c), t_inv: perm(mod_inverse(c, di)) })
}

/// `diag(ζ^{e(0)}, …, ζ^{e(d−1)})` for `ζ = exp(2πi/den)`.
pub fn diagonal<S: Scalar>(ctx: &S::Ctx, d: usize, den: u64, e: impl Fn(i64) -> i64) -> Result<Basis<S>> {
    let mut t = Vec::with_capacity(d);
    let mut t_inv = Vec::with_capacity(d);
    for k in 0..d {
        let ek = e(k as i64);
        t.push((k, k, S::unit(ctx, ek, den)?));
        t_inv.push((k, k, S::unit(ctx, -ek, den)?));
    }
    Ok(Basis { t: Operator::from_entries(ctx, d, t), t_inv: Operator::from_entries(ctx, d, t_inv) })
}

/// The grading `e_{ij} → λ₀^{i−j} e_{ij}`, i.e. conjugation by `diag(λ₀^k)`.
pub fn grading<S: Scalar>(ctx: &S::Ctx, d: usize, lambda0: RootOfUnity) -> Result<Basis<S>> {
    let (p, den) = (lambda0.power() as i64, lambda0.order());
    diagonal(ctx, d, den, |k| p * k)
}

/// `diag(ω^{α k(k−1)/2})`.
pub fn chirp<S: Scalar>(ctx: &S::Ctx, omega: RootOfUnity, alpha: i64) -> Result<Basis<S>> {
    let (p, den) = (omega.power() as i64, omega.order());
    diagonal(ctx, den as usize, den, |k| alpha * p * (k * (k - 1) / 2))
}

/// `F_{jk} = ω^{jk}` and `F⁻¹ = F*/d`.
pub fn fourier<S: Scalar>(ctx: &S::Ctx, omega: RootOfUnity) -> Result<Basis<S>> {
    let d = omega.order() as usize;
    let inv_d = S::from_ratio(ctx, 1, d as i64);
    let mut t = Vec::with_capacity(d * d);
    let mut t_inv = Vec::with_capacity(d * d);
    for j in 0..d as i64 {
        for k in 0..d as i64 {
            let v = omega.pow_value::<S>(ctx, j * k)?;
            t_inv.push((j as usize, k as usize, v.conj().mul(&inv_d)));
            t.push((j as usize, k as usize, v));
        }
    }
    Ok(Basis { t: Operator::from_entries(ctx, d, t), t_inv: Operator::from_entries(ctx, d, t_inv) })
}
