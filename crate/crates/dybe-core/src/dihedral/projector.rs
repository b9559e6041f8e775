use super::catalog::{catalog, label_for, AlphaPair, MVariant};
use super::group::GroupElement;
use super::irrep::{character, dual_irrep_matrix, irrep_matrix, DoubleRep, IrrepLabel};
use crate::error::{Error, Result};
use crate::operator::Operator;
use crate::scalar::{Powers, Scalar};

/// A projection operator on `V_d ⊗ V_d`.
#[derive(Clone, Debug)]
pub struct Projector<S: Scalar> {
    pub alpha: AlphaPair,
    pub matrix: Operator<S>,
    /// True for `p̃^α`, the closed form without its `c^α/d` prefactor.
    pub scaled: bool,
}

fn tensor_irrep<S: Scalar>(rep: &DoubleRep<S>, variant: MVariant) -> IrrepLabel {
    if rep.n() % 2 == 1 {
        IrrepLabel::NDimOdd { plus: true }
    } else {
        IrrepLabel::MDimEven { sigma_tau: variant == MVariant::SigmaTau, a: 0, b: 0 }
    }
}

fn check_alpha<S: Scalar>(rep: &DoubleRep<S>, alpha: &AlphaPair) -> Result<()> {
    if alpha.d != rep.d() || !catalog(rep.n())?.contains(alpha) {
        return Err(Error::Invalid(format!("{alpha:?} is not in the catalog for n = {}", rep.n())));
    }
    Ok(())
}

/// `(c^α/d) Σ_{i,j} [ω^{bj} e_{i+a+j,i+a} ⊗ e_{i+j,i} + ω^{−bj} e_{i−a+j,i−a} ⊗ e_{i+j,i}]`
/// with `ω = w²`; `scaled` drops the prefactor.
pub fn projector_closed<S: Scalar>(rep: &DoubleRep<S>, alpha: AlphaPair, scaled: bool) -> Result<Projector<S>> {
    check_alpha(rep, &alpha)?;
    let d = rep.d() as i64;
    let ctx = rep.ctx();
    let om = Powers::<S>::new(ctx, rep.omega())?;
    let idx = |x: i64, u: i64| (x.rem_euclid(d) * d + u.rem_euclid(d)) as usize;
    let (a, b) = (alpha.a, alpha.b);
    let mut entries = Vec::with_capacity(2 * (d * d) as usize);
    for i in 0..d {
        for j in 0..d {
            entries.push((idx(i + a + j, i + j), idx(i + a, i), om.get(b * j).clone()));
            entries.push((idx(i - a + j, i + j), idx(i - a, i), om.get(-b * j).clone()));
        }
    }
    let mut matrix = Operator::from_entries(ctx, (d * d) as usize, entries);
    if !scaled {
        matrix = matrix.scale(&S::from_ratio(ctx, 1, alpha.c_denominator() * d));
    }
    Ok(Projector { alpha, matrix, scaled })
}

/// The character-sum form
/// `(d[α]/|G|) Σ_g Σ_{i,j} χ_α((σ^{2j})* g⁻¹) π(g)e_{i−j,i−j} ⊗ π(g)e_{i,i}`
/// for the irrep a catalog pair stands for.
pub fn projector_algebraic<S: Scalar>(rep: &DoubleRep<S>, alpha: AlphaPair) -> Result<Projector<S>> {
    check_alpha(rep, &alpha)?;
    let label = label_for(rep.n(), alpha, MVariant::Tau)?;
    Ok(Projector { alpha, matrix: projector_algebraic_label(rep, &label)?, scaled: false })
}

/// The character-sum form for any irrep label; irreps absent from the
/// tensor square give the zero matrix.
pub fn projector_algebraic_label<S: Scalar>(rep: &DoubleRep<S>, label: &IrrepLabel) -> Result<Operator<S>> {
    label.validate(rep.n())?;
    let n = rep.n();
    let d = rep.d() as i64;
    let ctx = rep.ctx();
    let pi = tensor_irrep(rep, MVariant::Tau);
    let mut acc = Operator::zeros(ctx, (d * d) as usize);
    for g in GroupElement::all(n) {
        let chis =
            (0..d).map(|j| character(rep, label, GroupElement::rotation(n, 2 * j), g)).collect::<Result<Vec<S>>>()?;
        if chis.iter().all(S::is_zero) {
            continue;
        }
        // Σ_{i,j} χ_j e_{i−j,i−j} ⊗ e_{i,i} is diagonal.
        let diag = Operator::from_entries(
            ctx,
            (d * d) as usize,
            (0..d).flat_map(|i| {
                let chis = &chis;
                (0..d).map(move |j| {
                    let r = ((i - j).rem_euclid(d) * d + i) as usize;
                    (r, r, chis[j as usize].clone())
                })
            }),
        );
        let pg = irrep_matrix(rep, &pi, g)?;
        acc = acc.add(&pg.kron(&pg).mul(&diag));
    }
    let dim = label.dimension(n) as i64;
    Ok(acc.scale(&S::from_ratio(ctx, dim, 2 * n as i64)))
}

/// `(π ⊗ π)Δ(E_α)` straight from the definition
/// `E_α = (d[α]/|G|) Σ_{g,h} χ_α(h* g⁻¹) g h*`, with `Δ(g) = g ⊗ g` and
/// `Δ(h*) = Σ_k (k⁻¹h)* ⊗ k*`, the ordering under which `𝓡 = Σ g ⊗ g*` intertwines
/// `Δ` and `Δᵒᵖ` for the tabulated dual matrices.
pub fn projector_from_idempotent<S: Scalar>(
    rep: &DoubleRep<S>,
    label: &IrrepLabel,
    variant: MVariant,
) -> Result<Operator<S>> {
    label.validate(rep.n())?;
    let n = rep.n();
    let ctx = rep.ctx();
    let pi = tensor_irrep(rep, variant);
    let dd = pi.dimension(n);
    let all = GroupElement::all(n);
    let duals = all.iter().map(|&k| dual_irrep_matrix(rep, &pi, k)).collect::<Result<Vec<_>>>()?;
    let delta_dual = |h: GroupElement| -> Operator<S> {
        all.iter().enumerate().filter(|(i, _)| duals[*i].nnz() > 0).fold(
            Operator::zeros(ctx, dd * dd),
            |acc, (i, k)| {
                let rest = dual_irrep_matrix(rep, &pi, k.inv().mul(&h)).expect("valid element");
                if rest.nnz() == 0 {
                    acc
                } else {
                    acc.add(&rest.kron(&duals[i]))
                }
            },
        )
    };
    let mut acc = Operator::zeros(ctx, dd * dd);
    for &h in &all {
        let dh = delta_dual(h);
        if dh.nnz() == 0 {
            continue;
        }
        for &g in &all {
            let chi = character(rep, label, h, g)?;
            if chi.is_zero() {
                continue;
            }
            let pg = irrep_matrix(rep, &pi, g)?;
            acc = acc.add(&pg.kron(&pg).mul(&dh).scale(&chi));
        }
    }
    let dim = label.dimension(n) as i64;
    Ok(acc.scale(&S::from_ratio(ctx, dim, 2 * n as i64)))
}
