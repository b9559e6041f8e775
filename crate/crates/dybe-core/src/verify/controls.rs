//! Deliberately broken inputs that the checkers must reject.

use crate::builders::{Boundary, Descendant, LOperator, Params};
use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::Scalar;
use crate::spectral::{FnSpectral, PoleSet, SpectralOperator};

/// A descendant with `g_{(a,j)}` shifted by `eps` at every `z`.
#[derive(Clone, Debug)]
pub struct Perturbed<S: Scalar> {
    pub inner: Descendant<S>,
    pub a: usize,
    pub j: usize,
    pub eps: f64,
}

impl<S: Scalar> Perturbed<S> {
    pub fn new(inner: Descendant<S>, eps: f64) -> Self {
        let d = inner.d();
        Self { inner, a: 1 % d, j: 0, eps }
    }
}

impl<S: Scalar> SpectralOperator<S> for Perturbed<S> {
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        let ctx = z.ctx();
        let mut g = self.inner.table().g_table(z)?;
        let k = self.a * self.inner.d() + self.j;
        let eps = S::from_f64_parts(&ctx, self.eps, 0.0).unwrap_or_else(|| S::from_ratio(&ctx, 1, 100));
        g[k] = g[k].add(&eps);
        Ok(self.inner.from_g(&ctx, &g))
    }

    fn poles(&self) -> PoleSet {
        self.inner.poles()
    }

    fn describe(&self) -> String {
        format!("{} with g_({},{}) + {:e}", self.inner.describe(), self.a, self.j, self.eps)
    }
}

/// `diag(1, z, 1, z²)`. Diagonal operators commute and its entries are
/// monomials, so it solves every YBE form despite looking arbitrary.
pub fn broken_diagonal<S: Scalar>() -> impl SpectralOperator<S> {
    FnSpectral::new("diag(1, z, 1, z²)", 4, PoleSet::none(), |z: &S| {
        let ctx = z.ctx();
        Ok(Operator::from_entries(
            &ctx,
            4,
            [(0, 0, S::one(&ctx)), (1, 1, z.clone()), (2, 2, S::one(&ctx)), (3, 3, z.mul(z))],
        ))
    })
}

/// The L-operator with `h(z) = z²`, violating `h(x)y = h(y)x`.
pub fn squared_h<S: Scalar>(params: Params) -> LOperator<S> {
    LOperator::with_h(params, "h(z) = z²", |z: &S| z.mul(z))
}

/// `f_{(0,1)} = 2`, every other boundary value 1, so `f_{(0,1)} ≠ f_{(0,−1)}`.
pub fn asymmetric_boundary<S: Scalar>() -> Boundary<S> {
    Boundary::custom("f(0,1) = 2", |b, z: &S| S::from_i64(&z.ctx(), if b == 1 { 2 } else { 1 }))
}

/// `f_{(0,±1)} = i`, every other boundary value 1: still solves the YBE but
/// breaks `Ř₁₂(z) = Ř₂₁(z)^†`.
pub fn imaginary_boundary<S: Scalar>(d: i64) -> Boundary<S> {
    Boundary::custom("f(0,±1) = i", move |b, z: &S| {
        let ctx = z.ctx();
        if b.rem_euclid(d) == 1 || b.rem_euclid(d) == d - 1 {
            S::unit(&ctx, 1, 4).expect("i is available in every float backend")
        } else {
            S::one(&ctx)
        }
    })
}
