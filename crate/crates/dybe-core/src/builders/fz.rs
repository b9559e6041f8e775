use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Powers, RootOfUnity, Scalar};
use crate::spectral::{PoleSet, SpectralOperator};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum WeightKind {
    W,
    WBar,
}

/// A weight argument, possibly the point at infinity.
#[derive(Clone, Debug)]
pub enum Arg<S> {
    Finite(S),
    Infinity,
}

/// Fateev–Zamolodchikov weights for `N` states,
/// `W(z|l) = Π_{j=1}^{l} (λ^{2j−1}z − 1)/(λ^{2j−1} − z)` and
/// `W̄(z|l) = Π_{j=1}^{l} (λ^{2j−1} − λz)/(λ^{2j}z − 1)`, with `l` taken mod `N`.
#[derive(Clone, Debug)]
pub struct FzWeights<S: Scalar> {
    n: u64,
    lambda: RootOfUnity,
    pw: Powers<S>,
}

impl<S: Scalar> FzWeights<S> {
    pub fn new(ctx: &S::Ctx, n: u64, lambda: RootOfUnity) -> Result<Self> {
        if lambda.order() != 2 * n {
            return Err(Error::Invalid(format!("λ must be a primitive {}-th root of unity", 2 * n)));
        }
        Ok(Self { n, lambda, pw: Powers::new(ctx, lambda)? })
    }

    /// `λ = −ω⁻¹` with `ω = exp(2πi·t/N)`; needs `N` odd.
    pub fn matching(ctx: &S::Ctx, n: u64, omega: RootOfUnity) -> Result<Self> {
        if n % 2 == 0 || omega.order() != n {
            return Err(Error::Invalid(format!("λ = −ω⁻¹ is a primitive 2N-th root only for odd N; got N = {n}")));
        }
        let lambda = RootOfUnity::new(2 * n, n as i64 - 2 * omega.power() as i64)?;
        Self::new(ctx, n, lambda)
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn lambda(&self) -> RootOfUnity {
        self.lambda
    }

    /// Poles of `W` (odd powers of `λ`) and `W̄` (even powers), together all
    /// `2N`-th roots of unity.
    pub fn poles(&self) -> PoleSet {
        PoleSet::roots(2 * self.n, 0)
    }

    pub fn weight(&self, kind: WeightKind, z: &S, l: i64) -> Result<S> {
        self.weight_at(kind, &Arg::Finite(z.clone()), l)
    }

    pub fn weight_at(&self, kind: WeightKind, z: &Arg<S>, l: i64) -> Result<S> {
        let l = l.rem_euclid(self.n as i64);
        let ctx = match z {
            Arg::Finite(z) => z.ctx(),
            Arg::Infinity => self.pw.get(0).ctx(),
        };
        let mut acc = S::one(&ctx);
        for j in 1..=l {
            let f = match (kind, z) {
                (WeightKind::W, Arg::Infinity) => self.pw.get(2 * j - 1).neg(),
                (WeightKind::WBar, Arg::Infinity) => self.pw.get(1 - 2 * j).neg(),
                (WeightKind::W, Arg::Finite(z)) => {
                    let c = self.pw.get(2 * j - 1);
                    ratio(c.mul(z).sub(&S::one(&ctx)), c.sub(z), || format!("W: z = λ^{}", 2 * j - 1))?
                }
                (WeightKind::WBar, Arg::Finite(z)) => {
                    let num = self.pw.get(2 * j - 1).sub(&self.pw.get(1).mul(z));
                    ratio(num, self.pw.get(2 * j).mul(z).sub(&S::one(&ctx)), || format!("W̄: z = λ^{}", -2 * j))?
                }
            };
            acc = acc.mul(&f);
        }
        Ok(acc)
    }

    /// The two-vector form
    /// `R^{b₁b₂}_{a₁a₂} = W̄(x₁/y₁|a₁−b₂) W(x₂/y₁|a₁−a₂) W̄(x₂/y₂|a₂−b₁) W(x₁/y₂|b₂−b₁)`.
    pub fn rmatrix_full(&self, x: (&S, &S), y: (&S, &S)) -> Result<Operator<S>> {
        let inv =
            |v: &S| v.inv().filter(|_| !v.is_tiny()).ok_or_else(|| Error::Pole("zero spectral vector entry".into()));
        let (y1i, y2i) = (inv(y.0)?, inv(y.1)?);
        let args = [
            Arg::Finite(x.0.mul(&y1i)),
            Arg::Finite(x.1.mul(&y1i)),
            Arg::Finite(x.1.mul(&y2i)),
            Arg::Finite(x.0.mul(&y2i)),
        ];
        self.assemble(&x.0.ctx(), &args)
    }

    /// The reduced form with `x̃ = (x, x⁻¹)`, `ỹ = (y, y⁻¹)`.
    pub fn rmatrix(&self, x: &S, y: &S) -> Result<Operator<S>> {
        let inv = |v: &S| v.inv().filter(|_| !v.is_tiny()).ok_or_else(|| Error::Pole("x or y is 0".into()));
        self.rmatrix_full((x, &inv(x)?), (y, &inv(y)?))
    }

    /// `lim_{y→∞} R(zy, y)`, which has entries
    /// `W̄(z|a₁−b₂) W(0|a₁−a₂) W̄(1/z|a₂−b₁) W(∞|b₂−b₁)`.
    pub fn limit_closed(&self, z: &S) -> Result<Operator<S>> {
        let ctx = z.ctx();
        let zi = if z.is_zero() { Arg::Infinity } else { Arg::Finite(z.inv().ok_or_else(|| Error::Pole("z".into()))?) };
        let args = [Arg::Finite(z.clone()), Arg::Finite(S::zero(&ctx)), zi, Arg::Infinity];
        self.assemble(&ctx, &args)
    }

    fn assemble(&self, ctx: &S::Ctx, args: &[Arg<S>; 4]) -> Result<Operator<S>> {
        let n = self.n as i64;
        let kinds = [WeightKind::WBar, WeightKind::W, WeightKind::WBar, WeightKind::W];
        let tables = kinds
            .iter()
            .zip(args)
            .map(|(&kind, arg)| (0..n).map(|l| self.weight_at(kind, arg, l)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        let w = |t: usize, l: i64| &tables[t][l.rem_euclid(n) as usize];
        let nn = (n * n) as usize;
        let mut entries = Vec::with_capacity(nn * nn);
        for a1 in 0..n {
            for a2 in 0..n {
                for b1 in 0..n {
                    for b2 in 0..n {
                        let v = w(0, a1 - b2).mul(w(1, a1 - a2)).mul(w(2, a2 - b1)).mul(w(3, b2 - b1));
                        entries.push(((b1 * n + b2) as usize, (a1 * n + a2) as usize, v));
                    }
                }
            }
        }
        Ok(Operator::from_entries(ctx, nn, entries))
    }

    /// The limit along `x = zy`, `y` through `schedule`, each iterate
    /// divided by its largest entry. Fails if the last two iterates differ
    /// by `tol` or more in max-norm.
    pub fn limit_along(&self, z: &S, schedule: &[f64], tol: f64) -> Result<FzLimit<S>> {
        if schedule.len() < 2 {
            return Err(Error::Invalid("the y schedule needs at least two points".into()));
        }
        let ctx = z.ctx();
        let mut iterates = Vec::with_capacity(schedule.len());
        for &y in schedule {
            let y = S::from_f64_parts(&ctx, y, 0.0).ok_or_else(|| Error::Invalid(format!("y = {y}")))?;
            iterates.push(normalize(&self.rmatrix(&z.mul(&y), &y)?));
        }
        let diffs: Vec<f64> = iterates.windows(2).map(|w| w[1].max_abs_diff(&w[0])).collect();
        let last = *diffs.last().expect("two iterates");
        if last.is_nan() || last >= tol {
            let trace = diffs.iter().map(|d| format!("{d:.3e}")).collect::<Vec<_>>().join(", ");
            return Err(Error::NoConvergence(
                "FZ limit".into(),
                format!("successive differences [{trace}], tolerance {tol:e}"),
            ));
        }
        Ok(FzLimit { matrix: iterates.pop().expect("nonempty"), diffs })
    }
}

fn ratio<S: Scalar>(num: S, den: S, what: impl Fn() -> String) -> Result<S> {
    if den.is_tiny() {
        return Err(Error::Pole(what()));
    }
    Ok(num.div(&den).expect("nonzero denominator"))
}

/// A converged limit and the max-norm differences between successive iterates.
#[derive(Clone, Debug)]
pub struct FzLimit<S: Scalar> {
    pub matrix: Operator<S>,
    pub diffs: Vec<f64>,
}

/// Divides by the entry of largest modulus; among entries within relative
/// `1e-6` of the maximum the first in row-major order is used.
pub fn normalize<S: Scalar>(a: &Operator<S>) -> Operator<S> {
    let entries = a.entries();
    let max = entries.iter().map(|e| e.2.abs()).fold(0.0, f64::max);
    if max == 0.0 {
        return a.clone();
    }
    let pivot = entries.iter().find(|e| e.2.abs() >= max * (1.0 - 1e-6)).expect("maximum exists");
    a.scale(&pivot.2.inv().expect("nonzero pivot"))
}

/// `z ↦ lim R(zy, y)` in closed form.
#[derive(Clone, Debug)]
pub struct FzLimitOp<S: Scalar> {
    pub weights: FzWeights<S>,
}

impl<S: Scalar> SpectralOperator<S> for FzLimitOp<S> {
    fn dim(&self) -> usize {
        (self.weights.n * self.weights.n) as usize
    }

    fn eval(&self, z: &S) -> Result<Operator<S>> {
        self.weights.limit_closed(z)
    }

    /// `W̄(z)` and `W̄(1/z)` blow up at the `N`-th roots of unity.
    fn poles(&self) -> PoleSet {
        PoleSet::roots(self.weights.n, 0)
    }

    fn describe(&self) -> String {
        format!(
            "FZ limit, N = {}, λ = exp(2πi·{}/{})",
            self.weights.n,
            self.weights.lambda.power(),
            self.weights.lambda.order()
        )
    }
}
