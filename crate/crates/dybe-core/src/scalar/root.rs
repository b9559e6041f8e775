use num_integer::Integer;

use super::Scalar;
use crate::error::{Error, Result};

/// A primitive root `exp(2πi·t/N)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct RootOfUnity {
    order: u64,
    power: u64,
}

pub fn root_of_unity(order: u64, t: i64) -> Result<RootOfUnity> {
    RootOfUnity::new(order, t)
}

impl RootOfUnity {
    pub fn new(order: u64, t: i64) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("root order must be positive".into()));
        }
        let power = t.rem_euclid(order as i64) as u64;
        if power.gcd(&order) != 1 && order != 1 {
            return Err(Error::NotPrimitive { order, power: t });
        }
        Ok(Self { order, power: power % order })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn power(&self) -> u64 {
        self.power
    }

    /// `w^e` as a fraction of a turn, `(num, order)`.
    pub fn turns(&self, e: i64) -> (i64, u64) {
        let n = self.order as i64;
        ((self.power as i64 * e.rem_euclid(n)).rem_euclid(n), self.order)
    }

    pub fn inverse(&self) -> Self {
        Self { order: self.order, power: (self.order - self.power) % self.order }
    }

    /// `w^e` for `e` coprime to the order.
    pub fn pow_primitive(&self, e: i64) -> Result<Self> {
        Self::new(self.order, self.power as i64 * e)
    }

    pub fn value<S: Scalar>(&self, ctx: &S::Ctx) -> Result<S> {
        S::unit(ctx, self.power as i64, self.order)
    }

    pub fn pow_value<S: Scalar>(&self, ctx: &S::Ctx, e: i64) -> Result<S> {
        let (num, den) = self.turns(e);
        S::unit(ctx, num, den)
    }

    pub fn angle(&self) -> f64 {
        std::f64::consts::TAU * self.power as f64 / self.order as f64
    }
}
