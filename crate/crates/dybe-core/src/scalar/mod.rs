//! Scalar backends and roots of unity.
//!
//! Two backends implement [`Scalar`]: [`Cyclo`], exact arithmetic in a
//! cyclotomic field, and [`MpComplex`], complex floats at a fixed binary
//! precision. Generic code never mixes them; a value carries its own context
//! (the field, or the precision), and constructors take that context.

mod cyclo;
mod mpc;
mod root;

use std::fmt::Debug;

use num_complex::Complex64;

pub use cyclo::{Cyclo, CycloField};
pub use mpc::{MpComplex, Precision};
pub use root::{root_of_unity, RootOfUnity};

use crate::error::Result;

pub trait Scalar: Clone + Debug + Send + Sync + 'static {
    type Ctx: Clone + Debug + Send + Sync;

    fn ctx(&self) -> Self::Ctx;
    fn zero(ctx: &Self::Ctx) -> Self;
    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self;
    /// `num / den`; `den` must be nonzero.
    fn from_ratio(ctx: &Self::Ctx, num: i64, den: i64) -> Self;
    /// `re + i·im` when the backend can hold it exactly.
    fn from_f64_parts(ctx: &Self::Ctx, re: f64, im: f64) -> Option<Self>;
    /// `exp(2πi·num/den)`.
    fn unit(ctx: &Self::Ctx, num: i64, den: u64) -> Result<Self>;

    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
    fn conj(&self) -> Self;

    /// True only for an exact zero.
    fn is_zero(&self) -> bool;
    /// Zero for the exact backend; below `2^(-p/2)` in modulus for floats.
    /// Used to detect poles before dividing.
    fn is_tiny(&self) -> bool;
    fn to_c64(&self) -> Complex64;

    fn one(ctx: &Self::Ctx) -> Self {
        Self::from_i64(ctx, 1)
    }

    fn abs(&self) -> f64 {
        self.to_c64().norm()
    }

    fn div(&self, o: &Self) -> Option<Self> {
        o.inv().map(|i| self.mul(&i))
    }

    fn pow(&self, e: i64) -> Option<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Self::one(&self.ctx());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    fn scale(&self, v: i64) -> Self {
        self.mul(&Self::from_i64(&self.ctx(), v))
    }
}

/// The powers `ω^0, …, ω^(d−1)` of a root of unity, indexed mod `d`.
#[derive(Clone, Debug)]
pub struct Powers<S> {
    table: Vec<S>,
}

impl<S: Scalar> Powers<S> {
    pub fn new(ctx: &S::Ctx, w: RootOfUnity) -> Result<Self> {
        let d = w.order();
        let table = (0..d).map(|k| S::unit(ctx, (w.power() * k % d) as i64, d)).collect::<Result<Vec<_>>>()?;
        Ok(Self { table })
    }

    pub fn order(&self) -> u64 {
        self.table.len() as u64
    }

    pub fn get(&self, e: i64) -> &S {
        &self.table[e.rem_euclid(self.table.len() as i64) as usize]
    }
}
