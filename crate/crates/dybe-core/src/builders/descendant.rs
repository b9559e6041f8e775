use super::coeff::{Boundary, CoeffTable};
use super::Params;
use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::Scalar;
use crate::spectral::{PoleSet, SpectralOperator};

/// A descendant of `r(z)` built from a coefficient table:
/// `R(z) = Σ_{i,j,a} g_{(a,j)}(z) e_{i+j,i+a} ⊗ e_{i+a+j,i}`, or the braided
/// `Ř(z) = P·R(z) = Σ g_{(a,j)}(z) e_{i+a+j,i+a} ⊗ e_{i+j,i}`.
#[derive(Clone, Debug)]
pub struct Descendant<S: Scalar> {
    table: CoeffTable<S>,
    braided: bool,
    name: String,
}

impl<S: Scalar> Descendant<S> {
    pub fn new(table: CoeffTable<S>, braided: bool, name: impl Into<String>) -> Self {
        Self { table, braided, name: name.into() }
    }

    /// `R(z)` with all boundary functions equal to 1.
    pub fn standard(ctx: &S::Ctx, params: Params) -> Result<Self> {
        Ok(Self::new(CoeffTable::new(ctx, params, Boundary::One)?, false, "R"))
    }

    /// `Ř⁺(z)`: the braided form with boundary 1.
    pub fn plus(ctx: &S::Ctx, params: Params) -> Result<Self> {
        Ok(Self::new(CoeffTable::new(ctx, params, Boundary::One)?, true, "Ř⁺"))
    }

    /// `Ř⁻(z)`: boundary `f_{(0,b)} = (−1)^b`, so the coefficient carries `(−1)^{a+b}`.
    pub fn minus(ctx: &S::Ctx, params: Params) -> Result<Self> {
        Ok(Self::new(CoeffTable::new(ctx, params, Boundary::Alternating)?, true, "Ř⁻"))
    }

    /// `Ř(z, μ) = Ř⁺(z) + μŘ⁻(z)` for a fixed `μ`.
    pub fn mixed(ctx: &S::Ctx, params: Params, mu: &S) -> Result<Self> {
        let name = format!("Ř⁺ + μŘ⁻, μ = {:?}", mu.to_c64());
        Ok(Self::new(CoeffTable::new(ctx, params, Boundary::mixed(mu))?, true, name))
    }

    pub fn table(&self) -> &CoeffTable<S> {
        &self.table
    }

    pub fn is_braided(&self) -> bool {
        self.braided
    }

    pub fn braided(mut self) -> Self {
        self.braided = true;
        if self.name == "R" {
            self.name = "Ř".into();
        }
        self
    }

    pub fn d(&self) -> usize {
        self.table.d()
    }

    /// The operator with the given `g` values (row-major in `a`).
    pub fn from_g(&self, ctx: &S::Ctx, g: &[S]) -> Operator<S> {
        assemble(ctx, self.d(), g, self.braided)
    }

    pub fn at(&self, z: &S) -> Result<Operator<S>> {
        Ok(self.from_g(&z.ctx(), &self.table.g_table(z)?))
    }
}

pub(crate) fn assemble<S: Scalar>(ctx: &S::Ctx, d: usize, g: &[S], braided: bool) -> Operator<S> {
    let mut entries = Vec::with_capacity(d * d * d);
    for a in 0..d {
        for j in 0..d {
            let v = &g[a * d + j];
            for i in 0..d {
                let (ij, ia, iaj) = ((i + j) % d, (i + a) % d, (i + a + j) % d);
                let (row, col) = if braided { (iaj * d + ij, ia * d + i) } else { (ij * d + iaj, ia * d + i) };
                entries.push((row, col, v.clone()));
            }
        }
    }
    Operator::from_entries(ctx, d * d, entries)
}

/// The points `−ω^k`, where a factor `1 + zω^θ` can vanish.
pub fn descendant_poles(d: u64) -> PoleSet {
    let mut circle: Vec<(i64, u64)> = (0..d as i64).map(|k| ((2 * k + d as i64) % (2 * d as i64), 2 * d)).collect();
    circle.sort_unstable();
    PoleSet { zero: false, circle }
}

impl<S: Scalar> SpectralOperator<S> for Descendant<S> {
    fn dim(&self) -> usize {
        self.d() * self.d()
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        self.at(z)
    }

    fn poles(&self) -> PoleSet {
        descendant_poles(self.d() as u64)
    }

    fn describe(&self) -> String {
        let p = self.table.params();
        format!("{} d = {} (l, k) = ({}, {}) boundary {:?}", self.name, p.d(), p.l, p.k, self.table.boundary())
    }
}

/// The family `Ř(z, μ) = Ř⁺(z) + μŘ⁻(z)`.
#[derive(Clone, Debug)]
pub struct TwoParam<S: Scalar> {
    plus: CoeffTable<S>,
    minus: CoeffTable<S>,
}

impl<S: Scalar> TwoParam<S> {
    pub fn new(ctx: &S::Ctx, params: Params) -> Result<Self> {
        Ok(Self {
            plus: CoeffTable::new(ctx, params, Boundary::One)?,
            minus: CoeffTable::new(ctx, params, Boundary::Alternating)?,
        })
    }

    pub fn d(&self) -> usize {
        self.plus.d()
    }

    pub fn at(&self, z: &S, mu: &S) -> Result<Operator<S>> {
        let (gp, gm) = (self.plus.g_table(z)?, self.minus.g_table(z)?);
        let g: Vec<S> = gp.iter().zip(&gm).map(|(p, m)| p.add(&mu.mul(m))).collect();
        Ok(assemble(&z.ctx(), self.d(), &g, true))
    }

    pub fn poles(&self) -> PoleSet {
        descendant_poles(self.d() as u64)
    }
}

/// `s (D ⊗ D) Ř_shift(z) (D ⊗ D)⁻¹` with `D = diag(i^k)`, `s = (−1)^{d/2}` and
/// `Ř_shift` built from `g_{(a+d/2, j)}`. This equals `Ř⁻(z)` when `d ≡ 0 mod 4` or `d = 2`.
pub fn minus_via_shift<S: Scalar>(ctx: &S::Ctx, params: Params, z: &S) -> Result<crate::operator::Operator<S>> {
    let d = params.d();
    if d % 2 == 1 {
        return Err(crate::error::Error::Invalid(format!("Ř⁻ needs even d, got {d}")));
    }
    let table = CoeffTable::new(ctx, params, Boundary::One)?.shifted(d as i64 / 2);
    let shifted = Descendant::new(table, true, "Ř_shift").at(z)?;
    let grade = super::transform::diagonal::<S>(ctx, d as usize, 4, |k| k)?;
    let s = S::from_i64(ctx, if (d / 2) % 2 == 0 { 1 } else { -1 });
    Ok(grade.conjugate(&shifted).scale(&s))
}
