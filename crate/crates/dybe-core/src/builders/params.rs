use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::RootOfUnity;

/// Parameters shared by `r(z)`, `L(z)` and the descendants.
///
/// Internally there is one primitive root `ω` of order `d` with single
/// exponents. For odd `n` this is `ω = w²` with `w` primitive `n`-th
/// (`d = n`); for `n = 2m` it is `ω = w²` with `w` primitive `2m`-th, so
/// `ω` is primitive `m`-th and `d = m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    pub n: u64,
    pub omega: RootOfUnity,
    pub l: i64,
    pub k: i64,
}

impl Params {
    /// `n` odd or even, `w = exp(2πi/n)`.
    pub fn from_n(n: u64, l: i64, k: i64) -> Result<Self> {
        Self::from_n_with_power(n, 1, l, k)
    }

    /// As [`Params::from_n`] with `w = exp(2πi·t/n)`.
    pub fn from_n_with_power(n: u64, t: i64, l: i64, k: i64) -> Result<Self> {
        if n < 2 {
            return Err(Error::Invalid(format!("n = {n}: need n ≥ 2")));
        }
        let w = RootOfUnity::new(n, t)?;
        let omega = if n % 2 == 1 {
            RootOfUnity::new(n, 2 * w.power() as i64)?
        } else {
            RootOfUnity::new(n / 2, w.power() as i64)?
        };
        Ok(Self { n, omega, l, k })
    }

    /// Parameters given directly by the single-power root `ω`.
    pub fn from_omega(omega: RootOfUnity, l: i64, k: i64) -> Self {
        Self { n: omega.order(), omega, l, k }
    }

    /// Dimension of the descendant's vector space.
    pub fn d(&self) -> u64 {
        self.omega.order()
    }

    /// `q = ω^{kl}`, the six-vertex deformation parameter, as turns.
    pub fn q_turns(&self) -> (i64, u64) {
        self.omega.turns(self.k * self.l)
    }

    /// `gcd(l, d) = gcd(k, d) = 1`, needed for every coefficient function.
    pub fn check_coprime(&self) -> Result<()> {
        let d = self.d() as i64;
        let (gl, gk) = (self.l.gcd(&d), self.k.gcd(&d));
        if gl != 1 || gk != 1 {
            return Err(Error::Invalid(format!(
                "descendants need gcd(l, d) = gcd(k, d) = 1 with d = {d}; got gcd(l, d) = {gl}, gcd(k, d) = {gk}"
            )));
        }
        Ok(())
    }

    /// `l⁻¹ mod d`.
    pub fn l_inv(&self) -> Result<i64> {
        self.check_coprime()?;
        Ok(mod_inverse(self.l, self.d() as i64))
    }
}

pub(crate) fn mod_inverse(a: i64, m: i64) -> i64 {
    if m == 1 {
        return 0;
    }
    let e = i64::extended_gcd(&a.rem_euclid(m), &m);
    e.x.rem_euclid(m)
}
