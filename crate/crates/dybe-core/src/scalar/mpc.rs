use std::cell::RefCell;
use std::fmt;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;

use super::Scalar;
use crate::error::{Error, Result};

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("astro-float constant cache"));
}

/// Binary precision of the float backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub struct Precision {
    bits: usize,
}

impl Precision {
    pub const VERIFY: Precision = Precision { bits: 256 };
    pub const QUICK: Precision = Precision { bits: 53 };

    pub fn new(bits: usize) -> Self {
        assert!(bits >= 53, "precision below 53 bits is not supported");
        Self { bits }
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    /// Mantissa bits actually carried: at least one 64-bit word, the
    /// smallest precision the float library represents.
    pub fn work(&self) -> usize {
        self.bits.max(64)
    }

    /// The default residual tolerance for this precision.
    pub fn default_tolerance(&self) -> f64 {
        if self.bits >= 256 {
            1e-30
        } else if self.bits >= 128 {
            1e-20
        } else {
            1e-9
        }
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self::VERIFY
    }
}

/// A complex number with real and imaginary parts at `prec` bits.
#[derive(Clone)]
pub struct MpComplex {
    re: BigFloat,
    im: BigFloat,
    prec: Precision,
}

fn big_to_f64(x: &BigFloat) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    match x.as_raw_parts() {
        Some((m, _, s, e, _)) => {
            let top = *m.last().expect("nonzero mantissa") as f64;
            let v = top / 18_446_744_073_709_551_616.0 * 2f64.powi(e);
            if s == Sign::Neg {
                -v
            } else {
                v
            }
        }
        None => f64::NAN,
    }
}

fn bigint_to_float(v: &BigInt) -> BigFloat {
    let (sign, digits) = v.to_u64_digits();
    let pw = 64 * (digits.len() + 1);
    let two64 = BigFloat::from_f64(18_446_744_073_709_551_616.0, pw);
    let mut acc = BigFloat::from_u64(0, pw);
    for d in digits.iter().rev() {
        acc = acc.mul(&two64, pw, RM).add(&BigFloat::from_u64(*d, pw), pw, RM);
    }
    if sign == num_bigint::Sign::Minus {
        acc.neg()
    } else {
        acc
    }
}

impl MpComplex {
    pub fn precision(&self) -> Precision {
        self.prec
    }

    pub fn from_rational(prec: &Precision, v: &BigRational) -> Self {
        let p = prec.work();
        let re = bigint_to_float(v.numer()).div(&bigint_to_float(v.denom()), p, RM);
        Self { re, im: BigFloat::from_u64(0, p), prec: *prec }
    }

    pub fn re(&self) -> &BigFloat {
        &self.re
    }

    pub fn im(&self) -> &BigFloat {
        &self.im
    }

    /// `(re, im)` as exact hexadecimal strings.
    pub fn to_hex(&self) -> (String, String) {
        CONSTS.with(|cc| {
            let cc = &mut cc.borrow_mut();
            let mut f = |x: &BigFloat| x.format(Radix::Hex, RM, cc).expect("finite value formats");
            (f(&self.re), f(&self.im))
        })
    }

    pub fn from_hex(prec: &Precision, re: &str, im: &str) -> Option<Self> {
        CONSTS.with(|cc| {
            let cc = &mut cc.borrow_mut();
            let re = BigFloat::parse(re, Radix::Hex, prec.work(), RM, cc);
            let im = BigFloat::parse(im, Radix::Hex, prec.work(), RM, cc);
            if re.is_nan() || im.is_nan() {
                None
            } else {
                Some(Self { re, im, prec: *prec })
            }
        })
    }

    /// Bitwise equality of both parts.
    pub fn identical(&self, o: &Self) -> bool {
        self.prec == o.prec && self.re.cmp(&o.re) == Some(0) && self.im.cmp(&o.im) == Some(0)
    }

    fn check(&self, o: &Self) {
        assert_eq!(self.prec, o.prec, "mixed-precision arithmetic ({} vs {} bits)", self.prec.bits, o.prec.bits);
    }

    fn of(&self, re: BigFloat, im: BigFloat) -> Self {
        Self { re, im, prec: self.prec }
    }

    fn exponent(x: &BigFloat) -> Option<i32> {
        if x.is_zero() {
            None
        } else {
            x.exponent()
        }
    }
}

impl fmt::Debug for MpComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = self.to_c64();
        write!(f, "({:e}{:+e}i @{})", c.re, c.im, self.prec.bits)
    }
}

impl Scalar for MpComplex {
    type Ctx = Precision;

    fn ctx(&self) -> Precision {
        self.prec
    }

    fn zero(ctx: &Precision) -> Self {
        Self { re: BigFloat::from_u64(0, ctx.work()), im: BigFloat::from_u64(0, ctx.work()), prec: *ctx }
    }

    fn from_i64(ctx: &Precision, v: i64) -> Self {
        Self { re: BigFloat::from_i64(v, ctx.work()), im: BigFloat::from_u64(0, ctx.work()), prec: *ctx }
    }

    fn from_ratio(ctx: &Precision, num: i64, den: i64) -> Self {
        let p = ctx.work();
        let re = BigFloat::from_i64(num, p).div(&BigFloat::from_i64(den, p), p, RM);
        Self { re, im: BigFloat::from_u64(0, p), prec: *ctx }
    }

    fn from_f64_parts(ctx: &Precision, re: f64, im: f64) -> Option<Self> {
        if !re.is_finite() || !im.is_finite() {
            return None;
        }
        let p = ctx.work();
        Some(Self { re: BigFloat::from_f64(re, p), im: BigFloat::from_f64(im, p), prec: *ctx })
    }

    fn unit(ctx: &Precision, num: i64, den: u64) -> Result<Self> {
        if den == 0 {
            return Err(Error::Invalid("root of unity of order 0".into()));
        }
        let g = num.unsigned_abs().gcd(&den).max(1);
        let den = den / g;
        let num = (num / g as i64).rem_euclid(den as i64);
        let exact = |re: i64, im: i64| Ok(Self::from_i64(ctx, re).add(&Self::from_i64(ctx, im).mul_i()));
        match (num, den) {
            (0, 1) => return exact(1, 0),
            (1, 2) => return exact(-1, 0),
            (1, 4) => return exact(0, 1),
            (3, 4) => return exact(0, -1),
            _ => {}
        }
        let p = ctx.work();
        let wp = p + 64;
        let (re, im) = CONSTS.with(|cc| {
            let cc = &mut cc.borrow_mut();
            let pi = cc.pi(wp, RM);
            let t = pi.mul(&BigFloat::from_i64(2 * num, wp), wp, RM).div(&BigFloat::from_u64(den, wp), wp, RM);
            (t.cos(wp, RM, cc), t.sin(wp, RM, cc))
        });
        let round = |mut x: BigFloat| {
            x.set_precision(p, RM).expect("rounding to a smaller precision");
            x
        };
        Ok(Self { re: round(re), im: round(im), prec: *ctx })
    }

    fn add(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prec.work();
        self.of(self.re.add(&o.re, p, RM), self.im.add(&o.im, p, RM))
    }

    fn sub(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prec.work();
        self.of(self.re.sub(&o.re, p, RM), self.im.sub(&o.im, p, RM))
    }

    fn mul(&self, o: &Self) -> Self {
        self.check(o);
        let p = self.prec.work();
        if self.im.is_zero() && o.im.is_zero() {
            return self.of(self.re.mul(&o.re, p, RM), BigFloat::from_u64(0, p));
        }
        let rr = self.re.mul(&o.re, p, RM);
        let ii = self.im.mul(&o.im, p, RM);
        let ri = self.re.mul(&o.im, p, RM);
        let ir = self.im.mul(&o.re, p, RM);
        self.of(rr.sub(&ii, p, RM), ri.add(&ir, p, RM))
    }

    fn neg(&self) -> Self {
        self.of(self.re.neg(), self.im.neg())
    }

    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let p = self.prec.work();
        let n = self.re.mul(&self.re, p, RM).add(&self.im.mul(&self.im, p, RM), p, RM);
        Some(self.of(self.re.div(&n, p, RM), self.im.neg().div(&n, p, RM)))
    }

    fn conj(&self) -> Self {
        self.of(self.re.clone(), self.im.neg())
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn is_tiny(&self) -> bool {
        let limit = -((self.prec.bits / 2) as i32);
        [&self.re, &self.im].iter().all(|x| Self::exponent(x).map_or(true, |e| e <= limit))
    }

    fn to_c64(&self) -> Complex64 {
        Complex64::new(big_to_f64(&self.re), big_to_f64(&self.im))
    }
}

impl MpComplex {
    fn mul_i(&self) -> Self {
        self.of(self.im.neg(), self.re.clone())
    }

    /// Real part is exactly zero.
    pub fn is_imaginary(&self) -> bool {
        self.re.is_zero()
    }

    /// Imaginary part is exactly zero.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
}

impl PartialEq for MpComplex {
    fn eq(&self, o: &Self) -> bool {
        self.identical(o)
    }
}
