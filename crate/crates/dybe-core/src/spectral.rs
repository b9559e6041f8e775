//! Operator-valued functions of a spectral parameter.

use std::fmt;

use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Excluded spectral points: possibly `z = 0`, plus points
/// `exp(2πi·num/den)` on the unit circle.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PoleSet {
    pub zero: bool,
    pub circle: Vec<(i64, u64)>,
}

impl PoleSet {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn at_zero() -> Self {
        Self { zero: true, circle: Vec::new() }
    }

    /// All `den`-th roots of unity multiplied by `exp(2πi·shift/den)`.
    pub fn roots(den: u64, shift: i64) -> Self {
        let mut circle: Vec<(i64, u64)> = (0..den as i64).map(|k| ((k + shift).rem_euclid(den as i64), den)).collect();
        circle.sort_unstable();
        circle.dedup();
        Self { zero: false, circle }
    }

    pub fn union(mut self, o: &PoleSet) -> Self {
        self.zero |= o.zero;
        self.circle.extend_from_slice(&o.circle);
        self.circle.sort_unstable_by(|a, b| (a.0 as f64 / a.1 as f64).total_cmp(&(b.0 as f64 / b.1 as f64)));
        self.circle.dedup_by(|a, b| a.0 * b.1 as i64 == b.0 * a.1 as i64);
        self
    }

    pub fn angles(&self) -> Vec<f64> {
        self.circle.iter().map(|&(n, d)| std::f64::consts::TAU * n as f64 / d as f64).collect()
    }

    /// Whether the unit-circle point at `angle` is within chord distance
    /// `margin` of a pole.
    pub fn near(&self, angle: f64, margin: f64) -> bool {
        self.angles().iter().any(|p| 2.0 * ((angle - p) / 2.0).sin().abs() < margin)
    }
}

/// A map `z ↦ R(z)` into square operators of a fixed dimension.
pub trait SpectralOperator<S: Scalar>: Send + Sync {
    fn dim(&self) -> usize;
    fn eval(&self, z: &S) -> Result<Operator<S>>;
    fn poles(&self) -> PoleSet;
    fn describe(&self) -> String;
}

impl<S: Scalar> fmt::Debug for dyn SpectralOperator<S> + '_ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (dim {})", self.describe(), self.dim())
    }
}

/// A spectral operator given by a closure.
pub struct FnSpectral<S: Scalar, F> {
    dim: usize,
    poles: PoleSet,
    name: String,
    f: F,
    _s: std::marker::PhantomData<fn() -> S>,
}

impl<S: Scalar, F> FnSpectral<S, F>
where
    F: Fn(&S) -> Result<Operator<S>> + Send + Sync,
{
    pub fn new(name: impl Into<String>, dim: usize, poles: PoleSet, f: F) -> Self {
        Self { dim, poles, name: name.into(), f, _s: std::marker::PhantomData }
    }
}

impl<S: Scalar, F> SpectralOperator<S> for FnSpectral<S, F>
where
    F: Fn(&S) -> Result<Operator<S>> + Send + Sync,
{
    fn dim(&self) -> usize {
        self.dim
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        (self.f)(z)
    }

    fn poles(&self) -> PoleSet {
        self.poles.clone()
    }

    fn describe(&self) -> String {
        self.name.clone()
    }
}
