use dybe_core::dihedral::*;
use dybe_core::operator::Slot;
use dybe_core::{Cyclo, CycloField, Operator, Scalar};

type Op = Operator<Cyclo>;

fn rep(n: u64) -> DoubleRep<Cyclo> {
    DoubleRep::new(&CycloField::new(n), n).unwrap()
}

fn labels(n: u64) -> Vec<IrrepLabel> {
    let n_i = n as i64;
    let mut out = Vec::new();
    if n % 2 == 1 {
        out.push(IrrepLabel::OneDimOdd { plus: true });
        out.push(IrrepLabel::OneDimOdd { plus: false });
        out.push(IrrepLabel::NDimOdd { plus: true });
        out.push(IrrepLabel::NDimOdd { plus: false });
    } else {
        for sigma in [false, true] {
            for a in 0..2 {
                for b in 0..2 {
                    out.push(IrrepLabel::OneDimEven { sigma_m: sigma, a, b });
                    out.push(IrrepLabel::MDimEven { sigma_tau: sigma, a, b });
                }
            }
        }
    }
    for l in 0..n_i {
        for k in 0..n_i {
            let t = IrrepLabel::TwoDim { l, k };
            if t.validate(n).is_ok() {
                out.push(t);
            }
        }
    }
    out
}

fn closed_canonical(f: &std::sync::Arc<CycloField>, d: i64, sign: i64) -> Op {
    let e = |i: i64, j: i64| Op::elementary(f, d as usize, i, j);
    (0..d)
        .flat_map(|i| (0..d).map(move |j| (i, j)))
        .fold(Op::zeros(f, (d * d) as usize), |acc, (i, j)| acc.add(&e(i + j, i - j).kron(&e(i, i))))
        .scale(&Cyclo::from_i64(f, sign))
}

#[test]
fn table_entries() {
    let r3 = rep(3);
    let f = r3.ctx().clone();
    let w = Cyclo::unit(&f, 1, 3).unwrap();
    let s = irrep_matrix(&r3, &IrrepLabel::TwoDim { l: 1, k: 1 }, GroupElement::sigma(3)).unwrap();
    let expect = Op::from_entries(&f, 2, [(0, 0, w.clone()), (1, 1, w.inv().unwrap())]);
    assert!(s.exactly_equals(&expect));
    let e = irrep_matrix(&r3, &IrrepLabel::NDimOdd { plus: true }, GroupElement::identity(3)).unwrap();
    assert!(e.exactly_equals(&Op::identity(&f, 3)));

    let r5 = rep(5);
    let pi = IrrepLabel::NDimOdd { plus: true };
    let m = |g| irrep_matrix(&r5, &pi, g).unwrap();
    let (s5, t5) = (m(GroupElement::sigma(5)), m(GroupElement::tau(5)));
    assert!(s5.mul(&t5).mul(&s5).exactly_equals(&t5));
}

#[test]
fn dual_table_entries() {
    let r3 = rep(3);
    let f = r3.ctx().clone();
    let one = IrrepLabel::OneDimOdd { plus: true };
    assert_eq!(dual_irrep_matrix(&r3, &one, GroupElement::sigma(3)).unwrap().nnz(), 0);
    let pi = IrrepLabel::NDimOdd { plus: true };
    // δ^{σ^{2j}τ}_g e_{j+1,j+1}: τ is j = 0, the residue-1 diagonal unit.
    let tau_star = dual_irrep_matrix(&r3, &pi, GroupElement::tau(3)).unwrap();
    assert!(tau_star.exactly_equals(&Op::elementary(&f, 3, 1, 1)));
    let sum = GroupElement::all(3)
        .into_iter()
        .fold(Op::zeros(&f, 3), |acc, g| acc.add(&dual_irrep_matrix(&r3, &pi, g).unwrap()));
    assert!(sum.exactly_equals(&Op::identity(&f, 3)));
}

#[test]
fn characters() {
    let r3 = rep(3);
    let f = r3.ctx().clone();
    let (e, t) = (GroupElement::identity(3), GroupElement::tau(3));
    assert_eq!(character(&r3, &IrrepLabel::OneDimOdd { plus: true }, e, e).unwrap(), Cyclo::one(&f));
    let pi = IrrepLabel::NDimOdd { plus: false };
    assert_eq!(character(&r3, &pi, t, t).unwrap(), Cyclo::from_i64(&f, -1));
    assert!(character(&r3, &pi, GroupElement::rotation(3, 2), t).unwrap().is_zero());

    let r5 = rep(5);
    let c = character(&r5, &IrrepLabel::TwoDim { l: 1, k: 0 }, GroupElement::sigma(5), GroupElement::identity(5));
    assert_eq!(c.unwrap(), Cyclo::one(r5.ctx()));
    assert!(character(
        &r5,
        &IrrepLabel::TwoDim { l: 1, k: 0 },
        GroupElement::rotation(5, 2),
        GroupElement::identity(5)
    )
    .unwrap()
    .is_zero());
}

#[test]
fn representations_are_multiplicative() {
    for n in [3u64, 4, 5, 6, 8] {
        let r = rep(n);
        let all = GroupElement::all(n);
        for label in labels(n) {
            let mats: Vec<Op> = all.iter().map(|&g| irrep_matrix(&r, &label, g).unwrap()).collect();
            let duals: Vec<Op> = all.iter().map(|&g| dual_irrep_matrix(&r, &label, g).unwrap()).collect();
            let idx = |g: GroupElement| all.iter().position(|&x| x == g).unwrap();
            for (i, g) in all.iter().enumerate() {
                for (j, h) in all.iter().enumerate() {
                    let gh = g.mul(h);
                    assert!(mats[i].mul(&mats[j]).exactly_equals(&mats[idx(gh)]), "n={n} {label:?} {g:?}·{h:?}");
                    let conj = g.mul(h).mul(&g.inv());
                    let lhs = mats[i].mul(&duals[j]).mul(&mats[idx(g.inv())]);
                    assert!(lhs.exactly_equals(&duals[idx(conj)]), "n={n} {label:?} g h* g⁻¹");
                    let prod = duals[i].mul(&duals[j]);
                    if i == j {
                        assert!(prod.exactly_equals(&duals[i]));
                    } else {
                        assert_eq!(prod.nnz(), 0);
                    }
                }
            }
            let sum = duals.iter().fold(Op::zeros(r.ctx(), label.dimension(n)), |acc, d| acc.add(d));
            assert!(sum.exactly_equals(&Op::identity(r.ctx(), label.dimension(n))), "n={n} {label:?}");
        }
    }
}

#[test]
fn out_of_table_labels_are_rejected() {
    let r5 = rep(5);
    let g = GroupElement::sigma(5);
    assert!(irrep_matrix(&r5, &IrrepLabel::TwoDim { l: 3, k: 0 }, g).is_err());
    assert!(irrep_matrix(&r5, &IrrepLabel::TwoDim { l: 0, k: 0 }, g).is_err());
    assert!(irrep_matrix(&r5, &IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 }, g).is_err());
    let r6 = rep(6);
    assert!(irrep_matrix(&r6, &IrrepLabel::NDimOdd { plus: true }, GroupElement::sigma(6)).is_err());
    assert!(irrep_matrix(&r6, &IrrepLabel::TwoDim { l: 3, k: 3 }, GroupElement::sigma(6)).is_err());
    assert!(irrep_matrix(&r6, &IrrepLabel::TwoDim { l: 3, k: 2 }, GroupElement::sigma(6)).is_ok());
}

#[test]
fn canonical_elements() {
    let r3 = rep(3);
    let f = r3.ctx().clone();
    for (l, k) in [(1i64, 0i64), (1, 1), (1, 2), (0, 1)] {
        let c = canonical_element(&r3, &IrrepLabel::TwoDim { l, k }).unwrap();
        let p = Cyclo::unit(&f, k * l, 3).unwrap();
        let q = p.inv().unwrap();
        let want = Op::from_entries(&f, 4, [(0, 0, p.clone()), (1, 1, q.clone()), (2, 2, q), (3, 3, p)]);
        assert!(c.exactly_equals(&want), "({l},{k})");
    }
    let c = canonical_element(&r3, &IrrepLabel::NDimOdd { plus: true }).unwrap();
    assert_eq!(c.nnz(), 9);
    assert!(c.exactly_equals(&closed_canonical(&f, 3, 1)));
    assert!(c.mul(&c.transpose()).exactly_equals(&Op::identity(&f, 9)));

    for n in [5u64, 7] {
        let r = rep(n);
        for plus in [true, false] {
            let c = canonical_element(&r, &IrrepLabel::NDimOdd { plus }).unwrap();
            assert!(c.exactly_equals(&closed_canonical(r.ctx(), n as i64, if plus { 1 } else { -1 })));
        }
    }
    for n in [4u64, 6, 8] {
        let r = rep(n);
        let m = (n / 2) as i64;
        for sigma_tau in [false, true] {
            for b in 0..2u8 {
                let c = canonical_element(&r, &IrrepLabel::MDimEven { sigma_tau, a: 0, b }).unwrap();
                let want = closed_canonical(r.ctx(), m, if b == 1 { -1 } else { 1 });
                assert!(c.exactly_equals(&want), "n={n} στ={sigma_tau} b={b}");
            }
        }
    }
}

#[test]
fn canonical_elements_solve_the_constant_ybe() {
    for n in [3u64, 4, 5, 6] {
        let r = rep(n);
        for label in labels(n) {
            let d = label.dimension(n);
            let c = canonical_element(&r, &label).unwrap();
            let e = |s| c.embed(s, (d, d, d)).unwrap();
            let (r12, r13, r23) = (e(Slot::S12), e(Slot::S13), e(Slot::S23));
            let lhs = r12.mul(&r13).mul(&r23);
            let rhs = r23.mul(&r13).mul(&r12);
            assert!(lhs.exactly_equals(&rhs), "n={n} {label:?}");
        }
    }
}

fn projector_suite(n: u64) {
    let r = rep(n);
    let f = r.ctx().clone();
    let d = r.d();
    let cat = catalog(n).unwrap();
    let ps: Vec<Op> = cat.iter().map(|&a| projector_closed(&r, a, false).unwrap().matrix).collect();
    let mut total = Op::zeros(&f, d * d);
    let pi = if n % 2 == 1 {
        IrrepLabel::NDimOdd { plus: true }
    } else {
        IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 }
    };
    let gens: Vec<Op> = [GroupElement::sigma(n), GroupElement::tau(n)]
        .iter()
        .map(|&g| {
            let m = irrep_matrix(&r, &pi, g).unwrap();
            m.kron(&m)
        })
        .collect();
    for (i, (alpha, p)) in cat.iter().zip(&ps).enumerate() {
        let alg = projector_algebraic(&r, *alpha).unwrap().matrix;
        assert!(alg.exactly_equals(p), "n={n} {alpha:?}: closed form differs from character sum");
        let label = label_for(n, *alpha, MVariant::Tau).unwrap();
        assert_eq!(p.trace(), Cyclo::from_i64(&f, label.dimension(n) as i64), "n={n} {alpha:?}");
        for g in &gens {
            assert!(p.mul(g).exactly_equals(&g.mul(p)), "n={n} {alpha:?} does not intertwine");
        }
        for (j, q) in ps.iter().enumerate() {
            let prod = p.mul(q);
            if i == j {
                assert!(prod.exactly_equals(p), "n={n} {alpha:?} not idempotent");
            } else {
                assert_eq!(prod.nnz(), 0, "n={n} {alpha:?}·{:?} ≠ 0", cat[j]);
            }
        }
        total = total.add(p);
    }
    assert!(total.exactly_equals(&Op::identity(&f, d * d)), "n={n}: projectors do not sum to I");
}

#[test]
fn projectors_odd() {
    for n in [3, 5, 7, 9] {
        projector_suite(n);
    }
}

#[test]
fn projectors_even() {
    for m in [2, 3, 4] {
        projector_suite(2 * m);
    }
}

#[test]
fn projector_examples() {
    let r3 = rep(3);
    let f = r3.ctx().clone();
    let p00 = projector_closed(&r3, AlphaPair::new(0, 0, 3), false).unwrap().matrix;
    let e = |i: i64, j: i64| Op::elementary(&f, 3, i, j);
    let direct = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .fold(Op::zeros(&f, 9), |acc, (i, j)| acc.add(&e(i + j, i).kron(&e(i + j, i))))
        .scale(&Cyclo::from_ratio(&f, 1, 3));
    assert!(p00.exactly_equals(&direct));
    assert_eq!(p00.trace(), Cyclo::one(&f));

    let r5 = rep(5);
    let p11 = projector_closed(&r5, AlphaPair::new(1, 1, 5), false).unwrap();
    assert_eq!(p11.matrix.trace(), Cyclo::from_i64(r5.ctx(), 2));
    let scaled = projector_closed(&r5, AlphaPair::new(1, 1, 5), true).unwrap();
    assert!(scaled.scaled);
    assert!(scaled.matrix.exactly_equals(&p11.matrix.scale(&Cyclo::from_i64(r5.ctx(), 5))));
    assert!(projector_closed(&r5, AlphaPair::new(0, 3, 5), false).is_err());
}

#[test]
fn irreps_outside_the_tensor_square_project_to_zero() {
    for n in [3u64, 5] {
        let r = rep(n);
        for label in [
            IrrepLabel::OneDimOdd { plus: false },
            IrrepLabel::NDimOdd { plus: true },
            IrrepLabel::NDimOdd { plus: false },
        ] {
            assert_eq!(projector_algebraic_label(&r, &label).unwrap().nnz(), 0, "n={n} {label:?}");
        }
    }
    let r6 = rep(6);
    let m = IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 };
    assert_eq!(projector_algebraic_label(&r6, &m).unwrap().nnz(), 0);
}

#[test]
fn character_sum_matches_the_hopf_algebra_definition() {
    for n in [3u64, 4, 5, 6, 8] {
        let r = rep(n);
        for variant in [MVariant::Tau, MVariant::SigmaTau] {
            if n % 2 == 1 && variant == MVariant::SigmaTau {
                continue;
            }
            for alpha in catalog(n).unwrap() {
                let label = label_for(n, alpha, variant).unwrap();
                let from_def = projector_from_idempotent(&r, &label, variant).unwrap();
                let closed = projector_closed(&r, alpha, false).unwrap().matrix;
                assert!(from_def.exactly_equals(&closed), "n={n} {variant:?} {alpha:?}");
            }
        }
    }
}

#[test]
fn canonical_element_intertwines_the_dual_coproduct() {
    // 𝓡 Δ(h*) = Δᵒᵖ(h*) 𝓡 with Δ(h*) = Σ_k (k⁻¹h)* ⊗ k*.
    for n in [3u64, 4, 5] {
        let r = rep(n);
        let all = GroupElement::all(n);
        for label in labels(n) {
            let rr = canonical_element(&r, &label).unwrap();
            let dual = |g| dual_irrep_matrix(&r, &label, g).unwrap();
            for &h in &all {
                let (mut delta, mut op) = (Op::zeros(r.ctx(), rr.dim()), Op::zeros(r.ctx(), rr.dim()));
                for &k in &all {
                    delta = delta.add(&dual(k.inv().mul(&h)).kron(&dual(k)));
                    op = op.add(&dual(k).kron(&dual(k.inv().mul(&h))));
                }
                assert!(rr.mul(&delta).exactly_equals(&op.mul(&rr)), "n={n} {label:?} {h:?}");
            }
        }
    }
}
