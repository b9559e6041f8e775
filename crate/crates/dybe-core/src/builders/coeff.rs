use std::fmt;
use std::sync::Arc;

use super::Params;
use crate::error::{Error, Result};
use crate::scalar::{Powers, Scalar};

type BoundaryFn<S> = Arc<dyn Fn(i64, &S) -> S + Send + Sync>;

/// The free functions `f_{(0,b)}(z)`, indexed by `b mod d`.
#[derive(Clone)]
pub enum Boundary<S: Scalar> {
    /// `f_{(0,b)} = 1`.
    One,
    /// `f_{(0,b)} = (−1)^b`; `d` must be even.
    Alternating,
    /// `f_{(0,b)} = even` for even `b`, `odd` for odd `b`; `d` must be even.
    Pair {
        even: S,
        odd: S,
    },
    Custom {
        name: String,
        f: BoundaryFn<S>,
    },
}

impl<S: Scalar> Boundary<S> {
    pub fn custom(name: impl Into<String>, f: impl Fn(i64, &S) -> S + Send + Sync + 'static) -> Self {
        Self::Custom { name: name.into(), f: Arc::new(f) }
    }

    /// `f_{(0,even)} = 1 + μ`, `f_{(0,odd)} = 1 − μ`, which gives `Ř⁺ + μŘ⁻`.
    pub fn mixed(mu: &S) -> Self {
        let one = S::one(&mu.ctx());
        Self::Pair { even: one.add(mu), odd: one.sub(mu) }
    }

    fn value(&self, b: i64, z: &S) -> S {
        match self {
            Self::One => S::one(&z.ctx()),
            Self::Alternating => S::from_i64(&z.ctx(), if b % 2 == 0 { 1 } else { -1 }),
            Self::Pair { even, odd } => if b % 2 == 0 { even } else { odd }.clone(),
            Self::Custom { f, .. } => f(b, z),
        }
    }

    fn needs_even(&self) -> bool {
        matches!(self, Self::Alternating | Self::Pair { .. })
    }
}

impl<S: Scalar> fmt::Debug for Boundary<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::One => write!(f, "1"),
            Self::Alternating => write!(f, "(-1)^b"),
            Self::Pair { even, odd } => write!(f, "even {:?}, odd {:?}", even.to_c64(), odd.to_c64()),
            Self::Custom { name, .. } => write!(f, "{name}"),
        }
    }
}

/// The coefficient functions
/// `f_{(a,b)}(z) = Π_{j=1}^{a l⁻¹ mod d} (z + ω^θ)/(1 + zω^θ) · f_{(0, b − akl⁻¹)}(z)`
/// with `θ = l((2j−1)k + b) − ak`, and their Fourier transforms `g`.
#[derive(Clone)]
pub struct CoeffTable<S: Scalar> {
    params: Params,
    boundary: Boundary<S>,
    w: Powers<S>,
    l_inv: i64,
    a_shift: i64,
}

impl<S: Scalar> fmt::Debug for CoeffTable<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CoeffTable")
            .field("params", &self.params)
            .field("boundary", &self.boundary)
            .field("a_shift", &self.a_shift)
            .finish()
    }
}

impl<S: Scalar> CoeffTable<S> {
    pub fn new(ctx: &S::Ctx, params: Params, boundary: Boundary<S>) -> Result<Self> {
        let l_inv = params.l_inv()?;
        if boundary.needs_even() && params.d() % 2 == 1 {
            return Err(Error::Invalid(format!("boundary {boundary:?} needs even d, got d = {}", params.d())));
        }
        let w = Powers::new(ctx, params.omega)?;
        Ok(Self { params, boundary, w, l_inv, a_shift: 0 })
    }

    /// Shifts the first index: `f_{(a,b)}` is replaced by `f_{(a+s,b)}`.
    pub fn shifted(mut self, s: i64) -> Self {
        self.a_shift = s;
        self
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn boundary(&self) -> &Boundary<S> {
        &self.boundary
    }

    pub fn d(&self) -> usize {
        self.params.d() as usize
    }

    pub fn omega(&self) -> &Powers<S> {
        &self.w
    }

    /// `(z + ω^θ)/(1 + zω^θ)`, the constant `−1` when `ω^θ = −1`.
    pub fn factor(&self, theta: i64, z: &S) -> Result<S> {
        let d = self.params.d() as i64;
        if d % 2 == 0 && theta.rem_euclid(d) == d / 2 {
            return Ok(S::from_i64(&z.ctx(), -1));
        }
        let c = self.w.get(theta);
        let den = S::one(&z.ctx()).add(&z.mul(c));
        if den.is_tiny() {
            return Err(Error::Pole(format!("1 + z·ω^{} = 0", theta.rem_euclid(d))));
        }
        Ok(z.add(c).div(&den).expect("nonzero denominator"))
    }

    pub fn f(&self, a: i64, b: i64, z: &S) -> Result<S> {
        let a = a + self.a_shift;
        if a < 0 {
            return Err(Error::Invalid(format!("f_(a,b) needs a ≥ 0, got a = {a}")));
        }
        let d = self.params.d() as i64;
        let (l, k) = (self.params.l, self.params.k);
        let count = (a % d * self.l_inv).rem_euclid(d);
        let mut acc = self.boundary.value((b - (a % d) * k % d * self.l_inv).rem_euclid(d), z);
        for j in 1..=count {
            acc = acc.mul(&self.factor(l * ((2 * j - 1) * k + b) - a % d * k, z)?);
        }
        Ok(acc)
    }

    /// `Π_{j=1}^{a} (z + ω^{l((2j−1)k+b)})/(1 + zω^{l((2j−1)k+b)})`, with no reduction of `a`.
    pub fn lemma_product(&self, a: i64, b: i64, z: &S) -> Result<S> {
        let (l, k) = (self.params.l, self.params.k);
        (1..=a).try_fold(S::one(&z.ctx()), |acc, j| Ok(acc.mul(&self.factor(l * ((2 * j - 1) * k + b), z)?)))
    }

    /// `f_{(a,b)}(z)` for `a, b ∈ [0, d)`, row-major in `a`.
    pub fn f_table(&self, z: &S) -> Result<Vec<S>> {
        let d = self.d() as i64;
        (0..d).flat_map(|a| (0..d).map(move |b| (a, b))).map(|(a, b)| self.f(a, b, z)).collect()
    }

    /// `g_{(a,j)}(z) = (1/d) Σ_b ω^{bj} f_{(a,b)}(z)` for `a, j ∈ [0, d)`, row-major in `a`.
    pub fn g_table(&self, z: &S) -> Result<Vec<S>> {
        let f = self.f_table(z)?;
        Ok(self.fourier(&f, &z.ctx()))
    }

    fn fourier(&self, f: &[S], ctx: &S::Ctx) -> Vec<S> {
        let d = self.d();
        let inv_d = S::from_ratio(ctx, 1, d as i64);
        let mut g = Vec::with_capacity(d * d);
        for a in 0..d {
            let row = &f[a * d..(a + 1) * d];
            for j in 0..d {
                let s = row
                    .iter()
                    .enumerate()
                    .fold(S::zero(ctx), |acc, (b, fb)| acc.add(&self.w.get((b * j) as i64).mul(fb)));
                g.push(s.mul(&inv_d));
            }
        }
        g
    }

    pub fn g(&self, a: i64, j: i64, z: &S) -> Result<S> {
        let d = self.d() as i64;
        let ctx = z.ctx();
        let s = (0..d)
            .try_fold(S::zero(&ctx), |acc, b| Ok::<_, Error>(acc.add(&self.w.get(b * j).mul(&self.f(a, b, z)?))))?;
        Ok(s.mul(&S::from_ratio(&ctx, 1, d)))
    }
}
