use super::group::GroupElement;
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Powers, RootOfUnity, Scalar};

/// Irreducible representations of D(D_n), Tables 1 (n odd) and 3 (n = 2m).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IrrepLabel {
    /// `π_1^±`, n odd.
    OneDimOdd { plus: bool },
    /// `π_2^{(l,k)}`, either parity.
    TwoDim { l: i64, k: i64 },
    /// `π_n^±`, n odd.
    NDimOdd { plus: bool },
    /// `π_{1,e}^{(a,b)}` or `π_{1,σ^m}^{(a,b)}`, n = 2m.
    OneDimEven { sigma_m: bool, a: u8, b: u8 },
    /// `π_{m,τ}^{(a,b)}` or `π_{m,στ}^{(a,b)}`, n = 2m.
    MDimEven { sigma_tau: bool, a: u8, b: u8 },
}

impl IrrepLabel {
    pub fn dimension(&self, n: u64) -> usize {
        match self {
            Self::OneDimOdd { .. } | Self::OneDimEven { .. } => 1,
            Self::TwoDim { .. } => 2,
            Self::NDimOdd { .. } => n as usize,
            Self::MDimEven { .. } => (n / 2) as usize,
        }
    }

    pub fn validate(&self, n: u64) -> Result<()> {
        let bad = |why: &str| Err(Error::Invalid(format!("{self:?} is not an irrep of D(D_{n}): {why}")));
        let n_i = n as i64;
        let bit = |v: u8| v <= 1;
        if n < 3 {
            return bad("n must be at least 3");
        }
        match (*self, n % 2 == 1) {
            (Self::OneDimOdd { .. } | Self::NDimOdd { .. }, true) => Ok(()),
            (Self::OneDimEven { a, b, .. } | Self::MDimEven { a, b, .. }, false) if bit(a) && bit(b) => Ok(()),
            (Self::TwoDim { l, k }, true) => {
                let h = (n_i - 1) / 2;
                match l {
                    0 if (1..=h).contains(&k) => Ok(()),
                    l if (1..=h).contains(&l) && (0..n_i).contains(&k) => Ok(()),
                    _ => bad("needs l = 0 with 1 ≤ k ≤ (n−1)/2, or 1 ≤ l ≤ (n−1)/2 with 0 ≤ k ≤ n−1"),
                }
            }
            (Self::TwoDim { l, k }, false) => {
                let m = n_i / 2;
                let edge = (l == 0 || l == m) && (1..m).contains(&k);
                if edge || ((1..m).contains(&l) && (0..n_i).contains(&k)) {
                    Ok(())
                } else {
                    bad("needs l ∈ {0, m} with 1 ≤ k < m, or 1 ≤ l ≤ m−1 with 0 ≤ k ≤ 2m−1")
                }
            }
            _ => bad("label belongs to the other parity or has bits outside {0,1}"),
        }
    }
}

/// The data shared by every representation matrix of D(D_n): the group
/// parameter `n` and the primitive `n`-th root `w` of the tables.
#[derive(Clone, Debug)]
pub struct DoubleRep<S: Scalar> {
    n: u64,
    w: RootOfUnity,
    ctx: S::Ctx,
    wp: Powers<S>,
}

impl<S: Scalar> DoubleRep<S> {
    /// Uses `w = exp(2πi/n)`.
    pub fn new(ctx: &S::Ctx, n: u64) -> Result<Self> {
        Self::with_root(ctx, RootOfUnity::new(n, 1)?)
    }

    pub fn with_root(ctx: &S::Ctx, w: RootOfUnity) -> Result<Self> {
        let n = w.order();
        if n < 3 {
            return Err(Error::Invalid(format!("D(D_n) needs n ≥ 3, got {n}")));
        }
        Ok(Self { n, w, ctx: ctx.clone(), wp: Powers::new(ctx, w)? })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn w(&self) -> RootOfUnity {
        self.w
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    /// `d = n` for odd n, `m = n/2` for even n.
    pub fn d(&self) -> usize {
        if self.n % 2 == 1 {
            self.n as usize
        } else {
            (self.n / 2) as usize
        }
    }

    /// The root `ω = w²` of order `d` used by projectors and descendants.
    pub fn omega(&self) -> RootOfUnity {
        let t = self.w.power() as i64;
        let w2 = if self.n % 2 == 1 { RootOfUnity::new(self.n, 2 * t) } else { RootOfUnity::new(self.n / 2, t) };
        w2.expect("w² is primitive of order d")
    }

    fn sign(&self, negative: bool) -> S {
        S::from_i64(&self.ctx, if negative { -1 } else { 1 })
    }

    fn scalar_op(&self, v: S) -> Operator<S> {
        Operator::from_entries(&self.ctx, 1, [(0, 0, v)])
    }

    fn diag2(&self, a: S, b: S) -> Operator<S> {
        Operator::from_entries(&self.ctx, 2, [(0, 0, a), (1, 1, b)])
    }

    fn sigma(&self, label: &IrrepLabel) -> Operator<S> {
        let d = label.dimension(self.n);
        let di = d as i64;
        match *label {
            IrrepLabel::OneDimOdd { .. } => self.scalar_op(S::one(&self.ctx)),
            IrrepLabel::OneDimEven { b, .. } => self.scalar_op(self.sign(b == 1)),
            IrrepLabel::TwoDim { k, .. } => self.diag2(self.wp.get(k).clone(), self.wp.get(-k).clone()),
            IrrepLabel::NDimOdd { .. } => Operator::from_entries(
                &self.ctx,
                d,
                (0..di).map(|i| (((i + 1) % di) as usize, i as usize, S::one(&self.ctx))),
            ),
            IrrepLabel::MDimEven { a, .. } => Operator::from_entries(
                &self.ctx,
                d,
                (1..=di).map(|i| {
                    let flip = a == 1 && i.rem_euclid(di) == 1 % di;
                    ((i % di) as usize, ((i - 1) % di) as usize, self.sign(flip))
                }),
            ),
        }
    }

    fn tau(&self, label: &IrrepLabel) -> Operator<S> {
        let d = label.dimension(self.n);
        let di = d as i64;
        match *label {
            IrrepLabel::OneDimOdd { plus } => self.scalar_op(self.sign(!plus)),
            IrrepLabel::OneDimEven { a, .. } => self.scalar_op(self.sign(a == 1)),
            IrrepLabel::TwoDim { .. } => {
                Operator::from_entries(&self.ctx, 2, [(0, 1, S::one(&self.ctx)), (1, 0, S::one(&self.ctx))])
            }
            IrrepLabel::NDimOdd { plus } => Operator::from_entries(
                &self.ctx,
                d,
                (0..di).map(|i| (i as usize, (2 - i).rem_euclid(di) as usize, self.sign(!plus))),
            ),
            IrrepLabel::MDimEven { sigma_tau: false, a, b } => Operator::from_entries(
                &self.ctx,
                d,
                (1..=di).map(|i| {
                    let flips = u8::from(a == 1 && i.rem_euclid(di) == 1 % di) + b;
                    ((i % di) as usize, (2 - i).rem_euclid(di) as usize, self.sign(flips % 2 == 1))
                }),
            ),
            IrrepLabel::MDimEven { sigma_tau: true, b, .. } => Operator::from_entries(
                &self.ctx,
                d,
                (1..=di).map(|i| ((i % di) as usize, (1 - i).rem_euclid(di) as usize, self.sign(b == 1))),
            ),
        }
    }
}

fn check<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel, g: &GroupElement) -> Result<()> {
    label.validate(rep.n)?;
    if g.n() != rep.n {
        return Err(Error::Invalid(format!("{g:?} is an element of D_{}, not D_{}", g.n(), rep.n)));
    }
    Ok(())
}

/// `π(g)` from the tables, as `π(σ)^r π(τ)^s`.
pub fn irrep_matrix<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel, g: GroupElement) -> Result<Operator<S>> {
    check(rep, label, &g)?;
    let s = rep.sigma(label);
    let rot = s.pow(g.r() as u32);
    Ok(if g.s() == 1 { rot.mul(&rep.tau(label)) } else { rot })
}

/// `π(g*)`, the dual-basis element `g*` of the function algebra.
pub fn dual_irrep_matrix<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel, g: GroupElement) -> Result<Operator<S>> {
    check(rep, label, &g)?;
    let n = rep.n as i64;
    let ctx = &rep.ctx;
    let d = label.dimension(rep.n);
    let one = || S::one(ctx);
    let is = |r: i64, s: u8| g == GroupElement::new(rep.n, r, s);
    Ok(match *label {
        IrrepLabel::OneDimOdd { .. } => Operator::from_entries(ctx, 1, is(0, 0).then(|| (0, 0, one()))),
        IrrepLabel::OneDimEven { sigma_m, .. } => {
            let r = if sigma_m { n / 2 } else { 0 };
            Operator::from_entries(ctx, 1, is(r, 0).then(|| (0, 0, one())))
        }
        IrrepLabel::TwoDim { l, .. } => Operator::from_entries(
            ctx,
            2,
            [is(l, 0).then(|| (0, 0, one())), is(-l, 0).then(|| (1, 1, one()))].into_iter().flatten(),
        ),
        IrrepLabel::NDimOdd { .. } => {
            // δ^{σ^{2j}τ}_g e_{j+1,j+1}: a reflection σ^r τ selects j = r/2 mod n.
            let entry = (g.s() == 1).then(|| {
                let j = (g.r() as i64 * (n + 1) / 2).rem_euclid(n);
                (((j + 1) % n) as usize, ((j + 1) % n) as usize, one())
            });
            Operator::from_entries(ctx, d, entry)
        }
        IrrepLabel::MDimEven { sigma_tau, .. } => {
            let parity = u64::from(sigma_tau);
            let entry = (g.s() == 1 && g.r() % 2 == parity).then(|| {
                let k = ((g.r() - parity) / 2) as usize;
                ((k + 1) % d, (k + 1) % d, one())
            });
            Operator::from_entries(ctx, d, entry)
        }
    })
}

/// `χ(h*·g⁻¹) = tr(π(h*)·π(g⁻¹))`.
pub fn character<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel, h: GroupElement, g: GroupElement) -> Result<S> {
    Ok(dual_irrep_matrix(rep, label, h)?.mul(&irrep_matrix(rep, label, g.inv())?).trace())
}

/// `(π ⊗ π)𝓡 = Σ_g π(g) ⊗ π(g*)`.
pub fn canonical_element<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel) -> Result<Operator<S>> {
    let d = label.dimension(rep.n);
    let mut acc = Operator::zeros(&rep.ctx, d * d);
    for g in GroupElement::all(rep.n) {
        let dual = dual_irrep_matrix(rep, label, g)?;
        if dual.nnz() > 0 {
            acc = acc.add(&irrep_matrix(rep, label, g)?.kron(&dual));
        }
    }
    Ok(acc)
}
