use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::{MpComplex, Precision, Scalar};
use crate::error::{Error, Result};

/// The cyclotomic field `Q(ζ_N)`, stored as `Q[x]/Φ_N(x)`.
#[derive(Debug, PartialEq, Eq)]
pub struct CycloField {
    order: u64,
    /// Monic `Φ_N`, lowest degree first.
    phi: Vec<BigRational>,
}

impl CycloField {
    pub fn new(order: u64) -> Arc<Self> {
        assert!(order >= 1, "cyclotomic order must be positive");
        let phi = cyclotomic_poly(order).into_iter().map(BigRational::from_integer).collect();
        Arc::new(Self { order, phi })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn degree(&self) -> usize {
        self.phi.len() - 1
    }

    fn reduce(&self, mut p: Vec<BigRational>) -> Vec<BigRational> {
        let deg = self.degree();
        for k in (deg..p.len()).rev() {
            if p[k].is_zero() {
                continue;
            }
            let t = std::mem::take(&mut p[k]);
            for i in 0..deg {
                if !self.phi[i].is_zero() {
                    let v = &t * &self.phi[i];
                    p[k - deg + i] -= v;
                }
            }
        }
        p.resize(deg, BigRational::zero());
        p
    }

    fn monomial(&self, e: u64) -> Vec<BigRational> {
        let mut p = vec![BigRational::zero(); (e % self.order) as usize + 1];
        p[(e % self.order) as usize] = BigRational::one();
        self.reduce(p)
    }
}

/// Integer coefficients of the `n`-th cyclotomic polynomial.
fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    let mut p = vec![BigInt::zero(); n as usize + 1];
    p[0] = BigInt::from(-1);
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = exact_div(&p, &cyclotomic_poly(d));
        }
    }
    p
}

/// Quotient of `num` by the monic `den`; the division must be exact.
fn exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let mut q = vec![BigInt::zero(); num.len() - dd];
    for k in (0..q.len()).rev() {
        let t = rem[k + dd].clone();
        for (i, c) in den.iter().enumerate() {
            rem[k + i] -= &t * c;
        }
        q[k] = t;
    }
    debug_assert!(rem.iter().all(Zero::is_zero));
    q
}

/// An element of `Q(ζ_N)`.
#[derive(Clone, PartialEq, Eq)]
pub struct Cyclo {
    field: Arc<CycloField>,
    coeffs: Vec<BigRational>,
}

impl Cyclo {
    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn field(&self) -> &Arc<CycloField> {
        &self.field
    }

    fn with(&self, coeffs: Vec<BigRational>) -> Self {
        Self { field: self.field.clone(), coeffs }
    }

    fn check(&self, o: &Self) {
        assert!(
            Arc::ptr_eq(&self.field, &o.field) || self.field == o.field,
            "mixing elements of Q(ζ_{}) and Q(ζ_{})",
            self.field.order,
            o.field.order
        );
    }

    /// Embeds into the float backend at the given precision.
    pub fn to_mpc(&self, prec: Precision) -> MpComplex {
        let n = self.field.order;
        let mut acc = MpComplex::zero(&prec);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let z = MpComplex::unit(&prec, k as i64, n).expect("float roots always exist");
            acc = acc.add(&z.mul(&MpComplex::from_rational(&prec, c)));
        }
        acc
    }

    /// The rational value, when the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        if self.coeffs.iter().skip(1).all(Zero::is_zero) {
            self.coeffs.first()
        } else {
            None
        }
    }
}

impl fmt::Debug for Cyclo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| if k == 0 { format!("{c}") } else { format!("{c}·ζ^{k}") })
            .collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl Scalar for Cyclo {
    type Ctx = Arc<CycloField>;

    fn ctx(&self) -> Self::Ctx {
        self.field.clone()
    }

    fn zero(ctx: &Self::Ctx) -> Self {
        Self { field: ctx.clone(), coeffs: vec![BigRational::zero(); ctx.degree()] }
    }

    fn from_i64(ctx: &Self::Ctx, v: i64) -> Self {
        Self::from_ratio(ctx, v, 1)
    }

    fn from_ratio(ctx: &Self::Ctx, num: i64, den: i64) -> Self {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigRational::new(num.into(), den.into());
        z
    }

    fn from_f64_parts(ctx: &Self::Ctx, re: f64, im: f64) -> Option<Self> {
        let mut z = Self::zero(ctx);
        z.coeffs[0] = BigRational::from_float(re)?;
        if im != 0.0 {
            if ctx.order % 4 != 0 {
                return None;
            }
            let i = z.with(ctx.monomial(ctx.order / 4));
            let s = BigRational::from_float(im)?;
            z = z.add(&i.mul(&z.with(vec_const(ctx.degree(), s))));
        }
        Some(z)
    }

    fn unit(ctx: &Self::Ctx, num: i64, den: u64) -> Result<Self> {
        let g = (num.unsigned_abs()).gcd(&den).max(1);
        let den_r = den / g;
        if ctx.order % den_r != 0 {
            return Err(Error::RootOutsideField { order: den_r, field: ctx.order });
        }
        let num_r = num / g as i64;
        let e = (num_r * (ctx.order / den_r) as i64).rem_euclid(ctx.order as i64) as u64;
        Ok(Self { field: ctx.clone(), coeffs: ctx.monomial(e) })
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect())
    }

    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        self.with(self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a - b).collect())
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let deg = self.field.degree();
        let mut p = vec![BigRational::zero(); 2 * deg.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    p[i + j] += a * b;
                }
            }
        }
        self.with(self.field.reduce(p))
    }

    fn neg(&self) -> Self {
        self.with(self.coeffs.iter().map(|a| -a).collect())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let deg = self.field.degree();
        // Column j of the multiplication-by-self matrix is self·x^j.
        let cols: Vec<Vec<BigRational>> =
            (0..deg as u64).map(|j| self.mul(&self.with(self.field.monomial(j))).coeffs).collect();
        let mut m: Vec<Vec<BigRational>> = (0..deg)
            .map(|r| {
                let mut row: Vec<BigRational> = (0..deg).map(|c| cols[c][r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        for col in 0..deg {
            let piv = (col..deg).find(|&r| !m[r][col].is_zero())?;
            m.swap(col, piv);
            let p = m[col][col].clone();
            for v in m[col].iter_mut() {
                *v /= &p;
            }
            let pivot = m[col].clone();
            for (r, row) in m.iter_mut().enumerate() {
                if r != col && !row[col].is_zero() {
                    let f = row[col].clone();
                    for (v, p) in row[col..].iter_mut().zip(&pivot[col..]) {
                        *v -= &f * p;
                    }
                }
            }
        }
        Some(self.with(m.into_iter().map(|row| row[deg].clone()).collect()))
    }

    fn conj(&self) -> Self {
        let n = self.field.order as usize;
        let mut p = vec![BigRational::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            p[(n - k) % n] += c;
        }
        self.with(self.field.reduce(p))
    }

    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn is_tiny(&self) -> bool {
        self.is_zero()
    }

    fn to_c64(&self) -> Complex64 {
        let n = self.field.order as f64;
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(k, c)| {
                let v = c.numer().to_f64().unwrap_or(f64::NAN) / c.denom().to_f64().unwrap_or(f64::NAN);
                Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n) * v
            })
            .sum()
    }
}

fn vec_const(deg: usize, c: BigRational) -> Vec<BigRational> {
    let mut v = vec![BigRational::zero(); deg];
    v[0] = c;
    v
}
