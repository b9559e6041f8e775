use std::sync::Arc;

use dybe_core::builders::*;
use dybe_core::dihedral::{canonical_element, DoubleRep, IrrepLabel};
use dybe_core::verify::controls::*;
use dybe_core::verify::*;
use dybe_core::{Cyclo, CycloField, MpComplex, Precision, RootOfUnity, Scalar};
use proptest::prelude::*;

const P: Precision = Precision::VERIFY;

fn plan(count: usize) -> SamplePlan {
    SamplePlan::new(count, 1, 1e-30)
}

fn standard(n: u64) -> Descendant<MpComplex> {
    Descendant::standard(&P, Params::from_n(n, 1, 1).unwrap()).unwrap()
}

fn i_boundary(d: i64) -> Boundary<MpComplex> {
    Boundary::custom("f(0,±1) = i", move |b, z: &MpComplex| {
        if b == 1 || b == d - 1 {
            MpComplex::unit(&z.ctx(), 1, 4).unwrap()
        } else {
            MpComplex::one(&z.ctx())
        }
    })
}

#[test]
fn six_vertex_ybe() {
    for (n, l, k) in [(3, 1, 1), (5, 2, 3), (8, 3, 5)] {
        let r6 = SixVertex { params: Params::from_n(n, l, k).unwrap() };
        let r = check_ybe::<MpComplex>(&P, &r6, &plan(4), YbeForm::Plain).unwrap();
        assert!(r.passed(), "n={n}: {}", r.max_residual);
    }
}

#[test]
fn descendants_solve_every_ybe_form() {
    for n in [3u64, 5, 4, 8] {
        let r = standard(n);
        assert!(check_ybe(&P, &r, &plan(2), YbeForm::Plain).unwrap().passed(), "n={n}");
        assert!(check_ybe(&P, &r.clone().braided(), &plan(2), YbeForm::Braided).unwrap().passed(), "n={n}");
        assert!(check_g_identity(&P, r.table(), &plan(2)).unwrap().passed(), "n={n}");
    }
    let canonical = canonical_for::<MpComplex>(&P, &Params::from_n(5, 1, 1).unwrap()).unwrap();
    let constant =
        dybe_core::spectral::FnSpectral::new("R(0)", 25, dybe_core::PoleSet::none(), move |_: &MpComplex| {
            Ok(canonical.clone())
        });
    assert!(check_ybe(&P, &constant, &plan(1), YbeForm::Constant).unwrap().passed());
}

#[test]
fn full_matrix_cap() {
    let r = standard(9);
    assert!(check_ybe(&P, &r, &plan(1), YbeForm::Plain).is_err());
    assert!(check_ybe_capped(&P, &Perturbed::new(standard(3), 1e-2), &plan(1), YbeForm::Plain, 3).is_ok());
}

#[test]
fn g_identity_agrees_with_the_ybe() {
    let cases = [(3u64, Boundary::One), (5, Boundary::One), (4, Boundary::One), (3, i_boundary(3)), (5, i_boundary(5))];
    for (n, t) in cases {
        let table = CoeffTable::new(&P, Params::from_n(n, 1, 1).unwrap(), t).unwrap();
        let r = Descendant::new(table.clone(), false, "R");
        let g = check_g_identity(&P, &table, &plan(2)).unwrap();
        let y = check_ybe(&P, &r, &plan(2), YbeForm::Plain).unwrap();
        assert_eq!(g.passed(), y.passed(), "n={n}: g {} vs ybe {}", g.max_residual, y.max_residual);
    }
    let bad = CoeffTable::<MpComplex>::new(&P, Params::from_n(5, 1, 1).unwrap(), asymmetric_boundary()).unwrap();
    let g = check_g_identity(&P, &bad, &plan(2)).unwrap();
    let y = check_ybe(&P, &Descendant::new(bad, false, "R"), &plan(2), YbeForm::Plain).unwrap();
    assert!(!g.passed() && !y.passed());
}

#[test]
fn g_identity_at_degenerate_points() {
    for n in [3u64, 5, 7] {
        let p = Params::from_n(n, 1, 1).unwrap();
        let f = CycloField::new(p.d());
        let t = CoeffTable::new(&f, p, Boundary::One).unwrap();
        assert_eq!(g_identity_at(&t, &Cyclo::one(&f), &Cyclo::one(&f)).unwrap(), 0.0);
    }
    for m in [2u64, 4, 6] {
        let p = Params::from_n(2 * m, 1, 1).unwrap();
        let f: Arc<CycloField> = CycloField::new(2 * m);
        let t = CoeffTable::new(&f, p, Boundary::One).unwrap();
        assert_eq!(g_identity_at(&t, &Cyclo::zero(&f), &Cyclo::zero(&f)).unwrap(), 0.0, "m={m}");
    }
}

#[test]
fn odd_and_doubled_constructions_give_the_same_profile() {
    for n in [3u64, 5, 7] {
        let odd = CoeffTable::<MpComplex>::new(&P, Params::from_n(n, 1, 1).unwrap(), Boundary::One).unwrap();
        let doubled = CoeffTable::<MpComplex>::new(
            &P,
            Params::from_n_with_power(2 * n, n as i64 + 2, 1, 1).unwrap(),
            Boundary::One,
        )
        .unwrap();
        let a = check_g_identity(&P, &odd, &plan(2)).unwrap();
        let b = check_g_identity(&P, &doubled, &plan(2)).unwrap();
        assert_eq!(a.samples, b.samples, "n={n}");
        assert!(a.passed());
    }
}

#[test]
fn coefficient_constraints() {
    for n in [3u64, 5, 7, 4, 8] {
        let t = CoeffTable::<MpComplex>::new(&P, Params::from_n(n, 1, 1).unwrap(), Boundary::One).unwrap();
        assert!(check_f_constraints(&P, &t, &plan(5)).unwrap().passed(), "n={n}");
    }
    let t = CoeffTable::<MpComplex>::new(&P, Params::from_n(7, 2, 3).unwrap(), Boundary::One).unwrap();
    assert!(check_f_constraints(&P, &t, &plan(3)).unwrap().passed());
    let t = CoeffTable::<MpComplex>::new(&P, Params::from_n(5, 1, 1).unwrap(), asymmetric_boundary()).unwrap();
    let r = check_f_constraints(&P, &t, &plan(3)).unwrap();
    assert!(!r.passed() && r.max_residual > 1e-3);
    assert_eq!(constraint_pairs(5).unwrap().len(), 13);
}

#[test]
fn intertwining() {
    for (n, l, k) in [(3u64, 1, 1), (5, 1, 1), (7, 2, 3), (4, 1, 1), (8, 1, 1)] {
        let p = Params::from_n(n, l, k).unwrap();
        let r = Descendant::<MpComplex>::standard(&P, p).unwrap();
        let lop = LOperator::<MpComplex>::new(p);
        assert!(check_rll(&P, &SixVertex { params: p }, &lop, &plan(2)).unwrap().passed(), "rll n={n}");
        assert!(check_llr(&P, &lop, &r, &plan(2), LlrForm::Plain).unwrap().passed(), "llr n={n}");
        assert!(
            check_llr(&P, &lop, &r.clone().braided(), &plan(2), LlrForm::Braided).unwrap().passed(),
            "llr braided n={n}"
        );
    }
    let p = Params::from_n(4, 1, 1).unwrap();
    let mu = MpComplex::from_f64_parts(&P, 0.3, -0.7).unwrap();
    let mixed = Descendant::mixed(&P, p, &mu).unwrap();
    let plain = Descendant::new(mixed.table().clone(), false, "R(z, μ)");
    assert!(check_llr(&P, &LOperator::new(p), &plain, &plan(2), LlrForm::Plain).unwrap().passed());
}

#[test]
fn negative_controls() {
    let p = Params::from_n(3, 1, 1).unwrap();
    let lop = LOperator::<MpComplex>::new(p);
    let pert = Perturbed::new(standard(3), 1e-2);
    let r = check_llr(&P, &lop, &pert, &plan(3), LlrForm::Plain).unwrap();
    assert!(!r.passed() && r.max_residual > 1e-3, "{}", r.max_residual);
    assert!(check_ybe(&P, &pert, &plan(3), YbeForm::Plain).unwrap().max_residual > 1e-3);
    let r = check_rll(&P, &SixVertex { params: p }, &squared_h::<MpComplex>(p), &plan(3)).unwrap();
    assert!(!r.passed() && r.max_residual > 1e-3);
    let r =
        check_rll(&P, &SixVertex { params: p }, &squared_h::<MpComplex>(Params::from_n(7, 2, 3).unwrap()), &plan(3));
    assert!(r.is_ok());
}

#[test]
fn diagonal_monomial_r_matrices_solve_the_ybe() {
    // Diagonal operators commute and monomial entries satisfy D(x)D(y) = D(xy).
    let r = broken_diagonal::<MpComplex>();
    for form in [YbeForm::Plain, YbeForm::Braided, YbeForm::Constant] {
        assert!(check_ybe(&P, &r, &plan(3), form).unwrap().passed());
    }
}

#[test]
fn descendant_properties() {
    let p = Params::from_n(5, 1, 1).unwrap();
    let opts = PropertyOptions { canonical: Some(canonical_for(&P, &p).unwrap()), projective: false };
    for r in check_properties(&P, &standard(5), &Property::ALL, &plan(3), &opts).unwrap() {
        assert!(r.passed(), "{}: {}", r.identity, r.max_residual);
    }
    let p = Params::from_n(4, 1, 1).unwrap();
    let opts = PropertyOptions { canonical: Some(canonical_for(&P, &p).unwrap()), projective: false };
    for r in check_properties(&P, &standard(4), &Property::ALL, &plan(3), &opts).unwrap() {
        assert_eq!(r.passed(), r.identity != "limit1", "{}: {}", r.identity, r.max_residual);
    }
    let r6 = SixVertex { params: Params::from_n(3, 1, 1).unwrap() };
    let exact = PropertyOptions::<MpComplex>::default();
    let projective = PropertyOptions::<MpComplex> { canonical: None, projective: true };
    assert!(!check_property(&P, &r6, Property::Unitarity, &plan(3), &exact).unwrap().passed());
    assert!(check_property(&P, &r6, Property::Unitarity, &plan(3), &projective).unwrap().passed());
    assert!(check_property(&P, &r6, Property::Limit0, &plan(1), &exact).is_err());
}

#[test]
fn canonical_targets() {
    let f = CycloField::new(8);
    let p = Params::from_n(8, 1, 1).unwrap();
    let rep = DoubleRep::<Cyclo>::new(&f, 8).unwrap();
    let c = canonical_element(&rep, &IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 }).unwrap();
    assert!(canonical_for(&f, &p).unwrap().exactly_equals(&c));
    assert!(canonical_for::<MpComplex>(&P, &Params::from_omega(RootOfUnity::new(4, 1).unwrap(), 1, 1)).is_err());
}

#[test]
fn adjoint_symmetry() {
    for n in [3u64, 5, 7] {
        let ok = check_adjoint_symmetry(&P, &standard(n).braided(), &plan(10)).unwrap();
        assert!(ok.passed(), "n={n}");
        let t = CoeffTable::new(&P, Params::from_n(n, 1, 1).unwrap(), i_boundary(n as i64)).unwrap();
        let bad = check_adjoint_symmetry(&P, &Descendant::new(t, true, "Ř"), &plan(10)).unwrap();
        assert!(!bad.passed() && bad.max_residual > 1e-3, "n={n}");
    }
}

#[test]
fn two_parameter_family() {
    let fam = TwoParam::<MpComplex>::new(&P, Params::from_n(4, 1, 1).unwrap()).unwrap();
    assert!(check_two_param(&P, &fam, &plan(3), None).unwrap().passed());
    let zero = MpComplex::zero(&P);
    let fixed = check_two_param(&P, &fam, &plan(3), Some([zero.clone(), zero.clone(), zero])).unwrap();
    let plus = check_ybe(
        &P,
        &Descendant::<MpComplex>::plus(&P, Params::from_omega(RootOfUnity::new(2, 1).unwrap(), 1, 1)).unwrap(),
        &plan(3),
        YbeForm::Braided,
    )
    .unwrap();
    assert!(fixed.passed() && plus.passed());
    let xs: Vec<f64> = fixed.samples.iter().map(|s| s.point[0][0]).collect();
    let ys: Vec<f64> = plus.samples.iter().map(|s| s.point[0][0]).collect();
    assert_eq!(xs, ys);
}

#[test]
fn star_triangle_relation() {
    for n in [1u64, 3, 5] {
        let w = FzWeights::<MpComplex>::new(&P, n, RootOfUnity::new(2 * n, 1).unwrap()).unwrap();
        let r = check_str(&P, &w, &plan(3)).unwrap();
        assert!(r.max_residual < 1e-20, "N={n}: {}", r.max_residual);
        assert!(r.notes.iter().any(|s| s == STR_READING));
    }
    let w = FzWeights::<MpComplex>::new(&P, 3, RootOfUnity::new(6, 1).unwrap()).unwrap();
    assert!(check_inverse_relation(&P, &w, &plan(3)).unwrap().passed());
}

#[test]
fn equivalence_search() {
    let r = standard(3);
    let (e, rep) = find_equivalence(&P, &r, &r, &plan(2)).unwrap();
    assert_eq!(e, Equivalence::Transform { fourier: false, alpha: 0, beta: 0, c: 1, scalars: vec![[1.0, 0.0]; 2] });
    assert!(rep.passed());

    for n in [3u64, 5] {
        let p = Params::from_n(n, 1, 1).unwrap();
        let fz = FzLimitOp { weights: FzWeights::matching(&P, n, p.omega).unwrap() };
        let (e, rep) = find_equivalence(&P, &fz, &standard(n), &plan(3)).unwrap();
        assert!(e.is_transform() && rep.passed(), "N={n}: {e:?}");
    }

    let p = Params::from_omega(RootOfUnity::new(2, 1).unwrap(), 1, 1);
    let fz = FzLimitOp { weights: FzWeights::<MpComplex>::new(&P, 2, RootOfUnity::new(4, 1).unwrap()).unwrap() };
    for r in [Descendant::plus(&P, p).unwrap(), Descendant::minus(&P, p).unwrap()] {
        let plain = Descendant::new(r.table().clone(), false, "R±");
        let (e, rep) = find_equivalence(&P, &fz, &plain, &plan(3)).unwrap();
        assert!(!e.spectra_match() && !rep.passed());
    }

    let w = FzWeights::<MpComplex>::matching(&P, 5, Params::from_n(5, 1, 1).unwrap().omega).unwrap();
    let at0 = w.limit_closed(&MpComplex::zero(&P)).unwrap();
    let c = canonical_for(&P, &Params::from_n(5, 1, 1).unwrap()).unwrap();
    let (e, _) =
        find_equivalence_ops(&P, &[(at0, c)], &[vec![[0.0, 0.0]]], ("FZ R(0)", "canonical"), &plan(1)).unwrap();
    assert!(e.is_transform());

    assert!(find_equivalence(&P, &standard(3), &standard(5), &plan(1)).is_err());
}

#[test]
fn reports_are_reproducible() {
    let run = || {
        let a = check_g_identity(&P, standard(5).table(), &plan(3)).unwrap();
        let b = check_ybe(&P, &standard(3), &plan(3), YbeForm::Plain).unwrap();
        serde_json::to_string(&[a, b]).unwrap()
    };
    assert_eq!(run(), run());
    let other = check_g_identity(&P, standard(5).table(), &SamplePlan::new(3, 2, 1e-30)).unwrap();
    assert_ne!(
        serde_json::to_string(&other).unwrap(),
        serde_json::to_string(&check_g_identity(&P, standard(5).table(), &plan(3)).unwrap()).unwrap()
    );
}

#[test]
fn sample_points_avoid_poles() {
    let poles = descendant_poles(5);
    let plan = SamplePlan::new(50, 9, 1e-30);
    for p in plan.pairs::<MpComplex>(&P, &poles).unwrap() {
        let [x, y] = [p.display[0], p.display[1]].map(|v| v[1].atan2(v[0]));
        for a in [x, y, x + y, x - y] {
            assert!(!poles.near(a, plan.margin));
        }
        for v in &p.values {
            assert!((v.abs() - 1.0).abs() < 1e-60);
        }
    }
    assert_eq!(plan.reals::<MpComplex>(&P).unwrap().len(), 50);
    let tight = SamplePlan { margin: 10.0, ..plan };
    assert!(tight.singles::<MpComplex>(&P, &poles).is_err());
}

proptest! {
    #[test]
    fn verdict_matches_residuals(res in prop::collection::vec(0.0f64..1.0, 1..20), tol in 1e-3f64..1.0) {
        let samples = res.iter().enumerate().map(|(index, &residual)| Sample { index, point: vec![], residual }).collect();
        let r = VerificationReport::with_tolerance("x", "", 0, tol, samples);
        prop_assert_eq!(r.passed(), res.iter().all(|&v| v < tol));
        prop_assert_eq!(r.max_residual, res.iter().cloned().fold(0.0, f64::max));
    }
}

#[test]
fn nan_residuals_fail() {
    let samples = vec![Sample { index: 0, point: vec![], residual: f64::NAN }];
    let r = VerificationReport::with_tolerance("x", "", 0, 1.0, samples);
    assert!(!r.passed() && r.max_residual.is_nan());
    assert!(!VerificationReport::with_tolerance("x", "", 0, 1.0, vec![]).passed());
}

#[test]
fn quick_mode_runs_at_53_bits() {
    let q = Precision::QUICK;
    let half = MpComplex::from_ratio(&q, 1, 2);
    assert_eq!(half.add(&half).to_c64().re, 1.0);
    let plan = SamplePlan::new(3, 1, q.default_tolerance());
    let r = Descendant::<MpComplex>::standard(&q, Params::from_n(5, 1, 1).unwrap()).unwrap();
    let ybe = check_ybe(&q, &r, &plan, YbeForm::Plain).unwrap();
    assert!(ybe.passed() && ybe.max_residual > 0.0, "{}", ybe.max_residual);
    assert!(check_g_identity(&q, r.table(), &plan).unwrap().passed());
    let bad = check_ybe(&q, &Perturbed::new(standard_at(&q, 5), 1e-6), &plan, YbeForm::Plain).unwrap();
    assert!(!bad.passed());
}

fn standard_at(p: &Precision, n: u64) -> Descendant<MpComplex> {
    Descendant::standard(p, Params::from_n(n, 1, 1).unwrap()).unwrap()
}
