use rayon::prelude::*;

use super::report::{scalar_residual, Sample, VerificationReport};
use super::SamplePlan;
use crate::builders::{descendant_poles, CoeffTable};
use crate::dihedral::catalog;
use crate::error::Result;
use crate::scalar::Scalar;

fn at<S>(t: &[S], n: usize, a: usize, j: usize) -> &S {
    &t[a * n + j % n]
}

/// Largest relative residual of the g-identity over all `(a, b, c, d) ∈ [0, d)⁴`:
/// `Σ_k g_(a,k−d)(x) g_(k,a−b)(xy) g_(b,c−k)(y) = Σ_k g_(c,k−b)(x) g_(k,c−d)(xy) g_(d,a−k)(y)`.
pub fn g_identity_at<S: Scalar>(table: &CoeffTable<S>, x: &S, y: &S) -> Result<f64> {
    let n = table.d();
    let gx = table.g_table(x)?;
    let gxy = table.g_table(&x.mul(y))?;
    let gy = table.g_table(y)?;
    let ctx = x.ctx();
    // Both sides have the shape Σ_k gx[p][k−q]·gxy[k][r]·gy[s][t−k] with the
    // middle index fixed by the outer pair, so v[k][t] = gxy[k][r]·gy[s][t−k]
    // is shared by a whole row of quadruples.
    let side = |p: usize, s: usize, r: usize| -> Vec<S> {
        let v: Vec<S> = (0..n * n).map(|kt| at(&gxy, n, kt / n, r).mul(at(&gy, n, s, kt % n + n - kt / n))).collect();
        (0..n * n)
            .map(|qt| {
                let (q, t) = (qt / n, qt % n);
                (0..n).fold(S::zero(&ctx), |acc, k| acc.add(&at(&gx, n, p, k + n - q).mul(&v[k * n + t])))
            })
            .collect()
    };
    // lhs[a][b][c][d] with (p, s, r) = (a, b, a − b), (q, t) = (d, c).
    let lhs: Vec<Vec<S>> =
        (0..n * n).into_par_iter().map(|ab| side(ab / n, ab % n, (ab / n + n - ab % n) % n)).collect();
    // rhs[c][d][a][b] with (p, s, r) = (c, d, c − d), (q, t) = (b, a).
    let rhs: Vec<Vec<S>> =
        (0..n * n).into_par_iter().map(|cd| side(cd / n, cd % n, (cd / n + n - cd % n) % n)).collect();
    let mut worst = 0f64;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                for d in 0..n {
                    let r = scalar_residual(&lhs[a * n + b][d * n + c], &rhs[c * n + d][b * n + a]);
                    worst = if r.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(r) };
                }
            }
        }
    }
    Ok(worst)
}

/// The g-identity, equivalent to the YBE for descendants assembled from `table`.
pub fn check_g_identity<S: Scalar>(
    ctx: &S::Ctx,
    table: &CoeffTable<S>,
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    let points = plan.pairs::<S>(ctx, &descendant_poles(table.d() as u64))?;
    let samples = points
        .into_iter()
        .enumerate()
        .map(|(index, p)| {
            Ok(Sample { index, residual: g_identity_at(table, &p.values[0], &p.values[1])?, point: p.display })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("g-identity", describe(table), plan, samples))
}

pub(crate) fn describe<S: Scalar>(t: &CoeffTable<S>) -> String {
    let p = t.params();
    format!(
        "d = {}, ω = exp(2πi·{}/{}), (l, k) = ({}, {}), boundary {:?}",
        t.d(),
        p.omega.power(),
        p.omega.order(),
        p.l,
        p.k,
        t.boundary()
    )
}

/// The coefficient pairs `S` for a table of dimension `d`.
pub fn constraint_pairs(d: usize) -> Result<Vec<(i64, i64)>> {
    let n = if d % 2 == 1 { d } else { 2 * d };
    Ok(catalog(n as u64)?.into_iter().map(|p| (p.a, p.b)).collect())
}

/// Largest residual of the four delta-gated constraints on `f` at `z` over `S × S`.
pub fn f_constraints_at<S: Scalar>(table: &CoeffTable<S>, z: &S) -> Result<f64> {
    let n = table.d() as i64;
    let (l, k) = (table.params().l, table.params().k);
    let f = table.f_table(z)?;
    let fv = |a: i64, b: i64| &f[(a.rem_euclid(n) * n + b.rem_euclid(n)) as usize];
    let pairs = constraint_pairs(table.d())?;
    let eq = |u: i64, v: i64| (u - v).rem_euclid(n) == 0;
    let one = S::one(&z.ctx());
    let mut worst = 0f64;
    for &(a, b) in &pairs {
        let t1 = (-l - a) * k - b * l;
        let t2 = (-l + a) * k + b * l;
        for &(c, d) in &pairs {
            let gates = [
                (eq(k + b, d) && eq(a + l, c), t1),
                (eq(k - b, d) && eq(c, l - a), t2),
                (eq(k + b, -d) && eq(-c, l + a), t1),
                (eq(k - b, -d) && eq(c, a - l), t2),
            ];
            for (on, t) in gates {
                if !on {
                    continue;
                }
                let w = table.omega().get(t);
                let lhs = fv(a, b).mul(&z.mul(w).add(&one));
                let rhs = fv(c, d).mul(&w.add(z));
                let r = scalar_residual(&lhs, &rhs);
                worst = if r.is_nan() || worst.is_nan() { f64::NAN } else { worst.max(r) };
            }
        }
    }
    Ok(worst)
}

/// The LLR constraints on the coefficient functions at sampled `z`.
pub fn check_f_constraints<S: Scalar>(
    ctx: &S::Ctx,
    table: &CoeffTable<S>,
    plan: &SamplePlan,
) -> Result<VerificationReport> {
    let points = plan.singles::<S>(ctx, &descendant_poles(table.d() as u64))?;
    let samples = points
        .into_par_iter()
        .enumerate()
        .map(|(index, p)| Ok(Sample { index, residual: f_constraints_at(table, &p.values[0])?, point: p.display }))
        .collect::<Result<Vec<_>>>()?;
    Ok(VerificationReport::new("f-constraints", describe(table), plan, samples))
}
