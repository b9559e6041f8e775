use super::report::{residual, Sample, VerificationReport};
use crate::dihedral::{
    catalog, irrep_matrix, label_for, projector_algebraic, projector_closed, DoubleRep, GroupElement, IrrepLabel,
    MVariant,
};
use crate::error::Result;
use crate::operator::Operator;
use crate::scalar::Scalar;

/// Tolerance of exact comparisons: equal operators record residual 0, any
/// other pair at least this value.
pub const EXACT_TOL: f64 = f64::MIN_POSITIVE;

fn exact_residual<S: Scalar>(a: &Operator<S>, b: &Operator<S>) -> f64 {
    if a.exactly_equals(b) {
        0.0
    } else {
        residual(a, b).max(EXACT_TOL)
    }
}

/// The projector identities for `D(D_n)`, one report per identity with one
/// sample per catalog pair: idempotency, orthogonality, completeness, the
/// closed form against the character sum, trace against the irrep dimension,
/// and commutation with `π(σ) ⊗ π(σ)`, `π(τ) ⊗ π(τ)`.
pub fn check_projectors<S: Scalar>(ctx: &S::Ctx, n: u64) -> Result<Vec<VerificationReport>> {
    let rep = DoubleRep::<S>::new(ctx, n)?;
    let d = rep.d();
    let cat = catalog(n)?;
    let ps = cat.iter().map(|&a| Ok(projector_closed(&rep, a, false)?.matrix)).collect::<Result<Vec<Operator<S>>>>()?;
    let pi = if n % 2 == 1 {
        IrrepLabel::NDimOdd { plus: true }
    } else {
        IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 }
    };
    let gens = [GroupElement::sigma(n), GroupElement::tau(n)]
        .iter()
        .map(|&g| irrep_matrix(&rep, &pi, g).map(|m| m.kron(&m)))
        .collect::<Result<Vec<_>>>()?;
    let at = |index: usize, residual: f64| Sample { index, point: Vec::new(), residual };
    let (mut idem, mut orth, mut closed, mut trace, mut inter) = (vec![], vec![], vec![], vec![], vec![]);
    let zero = Operator::zeros(ctx, d * d);
    for (i, (alpha, p)) in cat.iter().zip(&ps).enumerate() {
        idem.push(at(i, exact_residual(&p.mul(p), p)));
        let worst = ps
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| exact_residual(&p.mul(q), &zero))
            .fold(0.0, f64::max);
        orth.push(at(i, worst));
        closed.push(at(i, exact_residual(p, &projector_algebraic(&rep, *alpha)?.matrix)));
        let dim = label_for(n, *alpha, MVariant::Tau)?.dimension(n) as i64;
        let t = p.trace();
        let want = S::from_i64(ctx, dim);
        trace.push(at(i, if t.sub(&want).is_zero() { 0.0 } else { t.sub(&want).abs().max(EXACT_TOL) }));
        let worst = gens.iter().map(|g| exact_residual(&p.mul(g), &g.mul(p))).fold(0.0, f64::max);
        inter.push(at(i, worst));
    }
    let total = ps.iter().fold(zero.clone(), |acc, p| acc.add(p));
    let complete = vec![at(0, exact_residual(&total, &Operator::identity(ctx, d * d)))];
    let params = format!("n = {n}, {} projectors", cat.len());
    let report = |name: &str, samples| VerificationReport::with_tolerance(name, params.clone(), 0, EXACT_TOL, samples);
    Ok(vec![
        report("projector-idempotent", idem),
        report("projector-orthogonal", orth),
        report("projector-completeness", complete),
        report("projector-closed-vs-algebraic", closed),
        report("projector-trace", trace),
        report("projector-intertwining", inter),
    ])
}
