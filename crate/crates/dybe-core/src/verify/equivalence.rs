use std::f64::consts::TAU;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::plan::Point;
use super::properties::projective_residual;
use super::report::{Sample, VerificationReport};
use super::ybe::leg_dim;
use super::SamplePlan;
use crate::builders::transform::{chirp, diagonal, fourier, index_scale, Basis};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{RootOfUnity, Scalar};
use crate::spectral::SpectralOperator;

/// Tolerance of the f64 screen and of the eigenvalue comparison.
pub const SCREEN_TOL: f64 = 1e-8;

/// Either a basis change `T = F^{−ε}·Chirp(α)·Geo(β)·S(c)·F^ε` with
/// `(T⊗T)A(T⊗T)⁻¹ ∝ B`, or only a comparison of spectra up to a scalar.
/// `F` is the Fourier matrix of `ζ_d`, `Chirp(α) = diag(ζ_d^{αk(k−1)/2})`,
/// `Geo(β) = diag(ζ_{4d}^{βk})` and `S(c)` the index scaling `k ↦ ck`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Equivalence {
    Transform { fourier: bool, alpha: i64, beta: i64, c: i64, scalars: Vec<[f64; 2]> },
    Spectral { matches: bool, scalars: Vec<[f64; 2]> },
}

impl Equivalence {
    pub fn is_transform(&self) -> bool {
        matches!(self, Self::Transform { .. })
    }

    pub fn spectra_match(&self) -> bool {
        match self {
            Self::Transform { .. } => true,
            Self::Spectral { matches, .. } => *matches,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Candidate {
    fourier: bool,
    alpha: i64,
    beta: i64,
    c: i64,
}

type Dense = Vec<Complex64>;

fn matmul(a: &Dense, b: &Dense, n: usize) -> Dense {
    let mut out = vec![Complex64::new(0.0, 0.0); n * n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i * n + k];
            if aik == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += aik * b[k * n + j];
            }
        }
    }
    out
}

/// `(F⊗F) A (F⊗F)⁻¹` in f64.
fn fourier_conjugate(a: &Dense, d: usize) -> Dense {
    let n = d * d;
    let w = |e: usize| Complex64::from_polar(1.0, TAU * (e % d) as f64 / d as f64);
    let ff = |inv: bool| -> Dense {
        let mut m = vec![Complex64::new(0.0, 0.0); n * n];
        for r in 0..n {
            for c in 0..n {
                let (r1, r2, c1, c2) = (r / d, r % d, c / d, c % d);
                let v = w(r1 * c1) * w(r2 * c2);
                m[r * n + c] = if inv { v.conj() / (n as f64) } else { v };
            }
        }
        m
    };
    matmul(&matmul(&ff(false), a, n), &ff(true), n)
}

fn phase(d: usize, cand: Candidate, j: i64) -> Complex64 {
    let di = d as f64;
    let chirp = (cand.alpha * (j * (j - 1) / 2)).rem_euclid(d as i64) as f64 / di;
    let geo = (cand.beta * j).rem_euclid(4 * d as i64) as f64 / (4.0 * di);
    Complex64::from_polar(1.0, TAU * (chirp + geo))
}

fn proportional(x: &Dense, b: &Dense) -> (f64, Complex64) {
    let (p, _) =
        b.iter()
            .enumerate()
            .fold((0, 0.0), |(bi, bm), (i, v)| if v.norm() > bm * (1.0 + 1e-6) { (i, v.norm()) } else { (bi, bm) });
    if b[p].norm() == 0.0 {
        return (f64::INFINITY, Complex64::new(0.0, 0.0));
    }
    let s = x[p] / b[p];
    let scale = x.iter().map(|v| v.norm()).fold(1f64, f64::max);
    let res = x.iter().zip(b).map(|(xv, bv)| (xv - s * bv).norm()).fold(0.0, f64::max) / scale;
    (res, s)
}

/// Candidates passing the f64 screen at one pair `(A, B)`, in search order.
fn screen(a: &Dense, b: &Dense, d: usize) -> Vec<Candidate> {
    let di = d as i64;
    let n = d * d;
    let mut out = Vec::new();
    for fourier in [false, true] {
        let (ah, bh) =
            if fourier { (fourier_conjugate(a, d), fourier_conjugate(b, d)) } else { (a.clone(), b.clone()) };
        for alpha in 0..di {
            for beta in 0..4 * di {
                for c in (1..di.max(2)).filter(|c| c.gcd(&di) == 1) {
                    let cand = Candidate { fourier, alpha, beta, c };
                    let ph: Vec<Complex64> = (0..di).map(|j| phase(d, cand, j)).collect();
                    let mut x = vec![Complex64::new(0.0, 0.0); n * n];
                    for (idx, v) in ah.iter().enumerate() {
                        if *v == Complex64::new(0.0, 0.0) {
                            continue;
                        }
                        let (r, col) = (idx / n, idx % n);
                        let [i1, i2, j1, j2] =
                            [r / d, r % d, col / d, col % d].map(|k| (c * k as i64).rem_euclid(di) as usize);
                        let f = ph[i1] * ph[i2] / (ph[j1] * ph[j2]);
                        x[(i1 * d + i2) * n + j1 * d + j2] = f * v;
                    }
                    if proportional(&x, &bh).0 < SCREEN_TOL {
                        out.push(cand);
                    }
                }
            }
        }
    }
    out
}

fn basis<S: Scalar>(ctx: &S::Ctx, d: usize, cand: Candidate) -> Result<Basis<S>> {
    let zeta = RootOfUnity::new(d as u64, 1)?;
    let core = chirp(ctx, zeta, cand.alpha)?
        .then(&diagonal(ctx, d, 4 * d as u64, |k| cand.beta * k)?)
        .then(&index_scale(ctx, d, cand.c)?);
    if !cand.fourier {
        return Ok(core);
    }
    let f = fourier(ctx, zeta)?;
    let f_inv = Basis { t: f.t_inv.clone(), t_inv: f.t.clone() };
    Ok(f_inv.then(&core).then(&f))
}

fn eigenvalues(a: &Dense, n: usize) -> Vec<Complex64> {
    let m = DMatrix::from_row_slice(n, n, a);
    Schur::try_new(m, 1e-14, 100_000).map(|s| s.unpack().1.diagonal().iter().copied().collect()).unwrap_or_default()
}

/// Residual of `spec(A) = s·spec(B)` as multisets for the best `s` among the
/// ratios `λ_A[0]/μ` with `μ ∈ spec(B)`, and that `s`.
fn spectral_residual(ea: &[Complex64], eb: &[Complex64]) -> (f64, Complex64) {
    if ea.len() != eb.len() || ea.is_empty() {
        return (f64::INFINITY, Complex64::new(0.0, 0.0));
    }
    let scale = ea.iter().map(|v| v.norm()).fold(1f64, f64::max);
    let mut best = (f64::INFINITY, Complex64::new(0.0, 0.0));
    for mu in eb.iter().filter(|m| m.norm() > 1e-12) {
        let s = ea[0] / mu;
        let mut used = vec![false; eb.len()];
        let mut worst = 0f64;
        for x in ea {
            let (k, dist) = eb
                .iter()
                .enumerate()
                .filter(|(k, _)| !used[*k])
                .map(|(k, y)| (k, (x - s * y).norm()))
                .fold((usize::MAX, f64::INFINITY), |acc, v| if v.1 < acc.1 { v } else { acc });
            used[k] = true;
            worst = worst.max(dist / scale);
        }
        if worst < best.0 {
            best = (worst, s);
        }
    }
    best
}

fn c2(v: Complex64) -> [f64; 2] {
    [v.re, v.im]
}

/// The search on pairs `(A_i, B_i)` already evaluated at common points.
pub fn find_equivalence_ops<S: Scalar>(
    ctx: &S::Ctx,
    pairs: &[(Operator<S>, Operator<S>)],
    points: &[Vec<[f64; 2]>],
    names: (&str, &str),
    plan: &SamplePlan,
) -> Result<(Equivalence, VerificationReport)> {
    let Some((a0, b0)) = pairs.first() else {
        return Err(Error::Invalid("equivalence search needs at least one point".into()));
    };
    if a0.dim() != b0.dim() {
        return Err(Error::Dimension(format!("{} has dimension {}, {} has {}", names.0, a0.dim(), names.1, b0.dim())));
    }
    let d = leg_dim(a0.dim())?;
    let params = format!("{} vs {}", names.0, names.1);
    for cand in screen(&a0.to_c64(), &b0.to_c64(), d) {
        let t = basis::<S>(ctx, d, cand)?;
        let checked: Vec<(f64, Option<S>)> =
            pairs.iter().map(|(a, b)| projective_residual(&t.conjugate(a), b)).collect();
        if checked.iter().all(|(r, _)| *r < plan.tolerance) {
            let scalars: Vec<[f64; 2]> =
                checked.iter().map(|(_, s)| s.as_ref().map(|s| c2(s.to_c64())).unwrap_or([f64::NAN; 2])).collect();
            let samples = samples(points, checked.iter().map(|c| c.0));
            let e = Equivalence::Transform {
                fourier: cand.fourier,
                alpha: cand.alpha,
                beta: cand.beta,
                c: cand.c,
                scalars,
            };
            let report = VerificationReport::new("equivalence-transform", params, plan, samples).note(format!(
                "T = F^-{0}·Chirp({1})·Geo({2})·S({3})·F^{0}",
                cand.fourier as u8, cand.alpha, cand.beta, cand.c
            ));
            return Ok((e, report));
        }
    }
    let n = a0.dim();
    let spectral: Vec<(f64, Complex64)> = pairs
        .iter()
        .map(|(a, b)| spectral_residual(&eigenvalues(&a.to_c64(), n), &eigenvalues(&b.to_c64(), n)))
        .collect();
    let scalars = spectral.iter().map(|s| c2(s.1)).collect();
    let samples = samples(points, spectral.iter().map(|s| s.0));
    let report = VerificationReport::with_tolerance("equivalence-spectral", params, plan.seed, SCREEN_TOL, samples)
        .note("no transform in the searched family; eigenvalue multisets compared up to a scalar");
    let matches = report.passed();
    Ok((Equivalence::Spectral { matches, scalars }, report))
}

fn samples(points: &[Vec<[f64; 2]>], res: impl Iterator<Item = f64>) -> Vec<Sample> {
    res.enumerate()
        .map(|(index, residual)| Sample { index, point: points.get(index).cloned().unwrap_or_default(), residual })
        .collect()
}

/// Searches for `T` with `(T⊗T)A(z)(T⊗T)⁻¹ ∝ B(z)` at every plan point,
/// falling back to a comparison of spectra.
pub fn find_equivalence<S: Scalar>(
    ctx: &S::Ctx,
    a: &dyn SpectralOperator<S>,
    b: &dyn SpectralOperator<S>,
    plan: &SamplePlan,
) -> Result<(Equivalence, VerificationReport)> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension(format!(
            "{} has dimension {}, {} has {}",
            a.describe(),
            a.dim(),
            b.describe(),
            b.dim()
        )));
    }
    let points: Vec<Point<S>> = plan.singles(ctx, &a.poles().union(&b.poles()))?;
    let pairs =
        points.iter().map(|p| Ok((a.eval(&p.values[0])?, b.eval(&p.values[0])?))).collect::<Result<Vec<_>>>()?;
    let display: Vec<Vec<[f64; 2]>> = points.into_iter().map(|p| p.display).collect();
    find_equivalence_ops(ctx, &pairs, &display, (&a.describe(), &b.describe()), plan)
}
