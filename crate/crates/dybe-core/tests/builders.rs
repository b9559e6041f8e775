use std::sync::Arc;

use dybe_core::builders::transform::{index_scale, Basis};
use dybe_core::builders::*;
use dybe_core::dihedral::{canonical_element, DoubleRep, IrrepLabel};
use dybe_core::{Cyclo, CycloField, MpComplex, Operator, Precision, RootOfUnity, Scalar};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: Precision = Precision::VERIFY;

fn field_for(p: &Params) -> Arc<CycloField> {
    CycloField::new(p.d())
}

fn q(f: &Arc<CycloField>, num: i64, den: i64) -> Cyclo {
    Cyclo::from_ratio(f, num, den)
}

fn mp(re: f64, im: f64) -> MpComplex {
    MpComplex::from_f64_parts(&P, re, im).unwrap()
}

fn unit_point(rng: &mut ChaCha8Rng) -> MpComplex {
    let t: f64 = rng.gen_range(0.05..6.2);
    let s = (t / 2.0).tan();
    let den = mp(1.0 + s * s, 0.0);
    mp(1.0 - s * s, 2.0 * s).div(&den).unwrap()
}

fn close(a: &Operator<MpComplex>, b: &Operator<MpComplex>) -> bool {
    a.max_abs_diff(b) < 1e-60 * (1.0 + a.max_abs())
}

#[test]
fn six_vertex_at_one_is_a_multiple_of_p() {
    let p = Params::from_n(3, 1, 1).unwrap();
    let f = field_for(&p);
    let r = six_vertex_r(&p, &Cyclo::one(&f)).unwrap();
    let qv = Cyclo::unit(&f, 2, 3).unwrap();
    let c = qv.sub(&qv.inv().unwrap());
    assert!(r.exactly_equals(&Operator::permutation(&f, 2, 2).scale(&c)));
    assert!(six_vertex_r(&p, &Cyclo::zero(&f)).is_err());
}

#[test]
fn six_vertex_depends_on_kl_only() {
    let a = Params::from_n(5, 1, 2).unwrap();
    let b = Params::from_n(5, 2, 1).unwrap();
    let f = field_for(&a);
    let z = q(&f, 3, 7).add(&Cyclo::unit(&f, 1, 5).unwrap());
    assert!(six_vertex_r(&a, &z).unwrap().exactly_equals(&six_vertex_r(&b, &z).unwrap()));
}

#[test]
fn l_operator_at_zero_and_the_h_ansatz() {
    let p = Params::from_n(3, 1, 1).unwrap();
    let f = field_for(&p);
    let l0 = l_operator(&p, &Cyclo::zero(&f)).unwrap();
    let w = |e| Cyclo::unit(&f, e, 3).unwrap();
    let mut want = Operator::zeros(&f, 6);
    for i in 0..3i64 {
        let e01 = Operator::elementary(&f, 2, 0, 1).scale(&w(2 * i));
        let e10 = Operator::elementary(&f, 2, 1, 0).scale(&w(-2 * i));
        want = want.add(&e01.add(&e10).kron(&Operator::elementary(&f, 3, i, i)));
    }
    assert!(l0.exactly_equals(&want));
    let z = q(&f, 5, 3);
    assert!(l_operator_with_h(&p, &z).unwrap().exactly_equals(&l_operator(&p, &z).unwrap()));
}

#[test]
fn coefficient_examples() {
    for n in [3u64, 5, 7] {
        let p = Params::from_n(n, 1, 1).unwrap();
        let f = field_for(&p);
        let t = CoeffTable::new(&f, p, Boundary::One).unwrap();
        let (zero, one) = (Cyclo::zero(&f), Cyclo::one(&f));
        let z = q(&f, -2, 9);
        let d = n as i64;
        for a in 0..d {
            for b in 0..d {
                assert_eq!(t.f(0, b, &z).unwrap(), one);
                assert_eq!(t.f(a, b, &one).unwrap(), one);
                // f(0) telescopes to ω^{Σ_j (2j−1+b−a)} = ω^{ab}.
                assert_eq!(t.f(a, b, &zero).unwrap(), Cyclo::unit(&f, 2 * a * b, n).unwrap(), "n={n} ({a},{b})");
            }
        }
        let delta = |v: i64| if v.rem_euclid(d) == 0 { one.clone() } else { zero.clone() };
        for a in 0..d {
            for j in 0..d {
                assert_eq!(t.g(0, j, &z).unwrap(), delta(j));
                assert_eq!(t.g(a, j, &one).unwrap(), delta(j));
                assert_eq!(t.g(a, j, &zero).unwrap(), delta(j + a));
            }
        }
    }
}

#[test]
fn poles_are_reported() {
    let p = Params::from_n(5, 1, 1).unwrap();
    let t = CoeffTable::new(&P, p, Boundary::One).unwrap();
    // θ = 0 for (a, b) = (1, 0), so z = −1 is a pole.
    let z = MpComplex::from_i64(&P, -1);
    assert!(matches!(t.f(1, 0, &z), Err(dybe_core::Error::Pole(_))));
    assert!(Params::from_n(9, 3, 1).unwrap().check_coprime().is_err());
    assert!(CoeffTable::<MpComplex>::new(&P, Params::from_n(9, 3, 1).unwrap(), Boundary::One).is_err());
}

#[test]
fn even_display_matches_the_odd_factor() {
    // (1 + zω^x)/(z + ω^x) with x = a − b + 1 − 2k against (z + ω^θ)/(1 + zω^θ) with θ = −x.
    let z = mp(0.3, -1.1);
    for m in 2..=8u64 {
        let p = Params::from_n(2 * m, 1, 1).unwrap();
        let t = CoeffTable::new(&P, p, Boundary::One).unwrap();
        let w = |e: i64| MpComplex::unit(&P, e, m).unwrap();
        let one = MpComplex::one(&P);
        for x in 0..m as i64 {
            let even = one.add(&z.mul(&w(x))).div(&z.add(&w(x))).unwrap();
            let odd = t.factor(-x, &z).unwrap();
            assert!(even.sub(&odd).abs() < 1e-70, "m={m} x={x}");
        }
    }
}

fn odd_coprime() -> impl Strategy<Value = (u64, i64, i64)> {
    prop::sample::select(vec![3u64, 5, 7, 9, 11, 13, 15, 17]).prop_flat_map(|n| {
        let units: Vec<i64> = (1..n as i64).filter(|&c| num_integer::gcd(c, n as i64) == 1).collect();
        (Just(n), prop::sample::select(units.clone()), prop::sample::select(units))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn lemma_products_reduce_mod_n((n, l, k) in odd_coprime(), a in 0i64..52, b in -40i64..40, zn in 1i64..9, zd in 1i64..9) {
        let a = a % (3 * n as i64 + 1);
        let p = Params::from_n(n, l, k).unwrap();
        let f = field_for(&p);
        let t = CoeffTable::new(&f, p, Boundary::One).unwrap();
        let z = q(&f, zn, zd);
        prop_assert_eq!(t.lemma_product(a, b, &z).unwrap(), t.lemma_product(a % n as i64, b, &z).unwrap());
    }

    #[test]
    fn coefficient_recursion((n, l, k) in odd_coprime(), a in 0i64..40, b in -40i64..40, zn in -9i64..9, zd in 1i64..9) {
        prop_assume!(zn != 0 && zn != -zd);
        let p = Params::from_n(n, l, k).unwrap();
        let f = field_for(&p);
        let t = CoeffTable::new(&f, p, Boundary::One).unwrap();
        let z = q(&f, zn, zd);
        let d = n as i64;
        let c = Cyclo::unit(&f, 2 * ((a + l) * k + b * l), n).unwrap();
        let one = Cyclo::one(&f);
        let lhs = t.f(a + l, b + k, &z).unwrap().mul(&one.add(&z.mul(&c)));
        let rhs = z.add(&c).mul(&t.f(a, b, &z).unwrap());
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(t.f(a, b, &z).unwrap(), t.f(a + d, b, &z).unwrap());
        prop_assert_eq!(t.f(a, b, &z).unwrap(), t.f(a, b + d, &z).unwrap());
        let ab = a.rem_euclid(d);
        prop_assert_eq!(t.f(ab, b, &z).unwrap(), t.f(d - ab, -b, &z).unwrap());
    }
}

#[test]
fn odd_descendant_limits_are_exact() {
    for n in [3u64, 5, 7, 9] {
        let p = Params::from_n(n, 1, 1).unwrap();
        let f = field_for(&p);
        let r = Descendant::standard(&f, p).unwrap();
        let d = n as usize;
        assert!(r.at(&Cyclo::one(&f)).unwrap().exactly_equals(&Operator::permutation(&f, d, d)), "n={n}");
        let rep = DoubleRep::<Cyclo>::new(&f, n).unwrap();
        let c = canonical_element(&rep, &IrrepLabel::NDimOdd { plus: true }).unwrap();
        assert!(r.at(&Cyclo::zero(&f)).unwrap().exactly_equals(&c), "n={n}");
    }
}

#[test]
fn even_descendant_limits() {
    let p = Params::from_n(4, 1, 1).unwrap();
    let f = field_for(&p);
    let r1 = Descendant::standard(&f, p).unwrap().at(&Cyclo::one(&f)).unwrap();
    assert!(!r1.exactly_equals(&Operator::permutation(&f, 2, 2)));
    assert!(r1.sub(&Operator::permutation(&f, 2, 2)).nnz() > 0);

    let p = Params::from_n(8, 1, 1).unwrap();
    let f = CycloField::new(8);
    let r0 = Descendant::standard(&f, p).unwrap().at(&Cyclo::zero(&f)).unwrap();
    let rep = DoubleRep::<Cyclo>::new(&f, 8).unwrap();
    let c = canonical_element(&rep, &IrrepLabel::MDimEven { sigma_tau: false, a: 0, b: 0 }).unwrap();
    assert!(r0.exactly_equals(&c));
}

#[test]
fn descendants_are_involutions() {
    for n in [3u64, 4, 5, 8] {
        let p = Params::from_n(n, 1, 1).unwrap();
        let f = field_for(&p);
        let r = Descendant::standard(&f, p).unwrap().at(&q(&f, 2, 1)).unwrap();
        let id = Operator::identity(&f, r.dim());
        assert!(r.mul(&r).exactly_equals(&id), "n={n}");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..5 {
        let z = unit_point(&mut rng);
        let r = Descendant::standard(&P, Params::from_n(3, 1, 1).unwrap()).unwrap().at(&z).unwrap();
        assert!(close(&r.mul(&r), &Operator::identity(&P, 9)));
    }
}

#[test]
fn plus_and_minus() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for m in [2u64, 4] {
        let p = Params::from_omega(RootOfUnity::new(m, 1).unwrap(), 1, 1);
        let z = unit_point(&mut rng);
        let plus = Descendant::plus(&P, p).unwrap().at(&z).unwrap();
        let minus = Descendant::minus(&P, p).unwrap().at(&z).unwrap();
        let r = Descendant::standard(&P, Params::from_n(2 * m, 1, 1).unwrap()).unwrap().at(&z).unwrap();
        let perm = Operator::permutation(&P, m as usize, m as usize);
        assert!(close(&plus, &perm.mul(&r)), "m={m}: Ř⁺ ≠ P·R");
        let id = Operator::identity(&P, (m * m) as usize);
        let (rp, rm) = (perm.mul(&plus), perm.mul(&minus));
        assert!(close(&rp.mul(&rp), &id));
        assert!(close(&rm.mul(&rm), &id));
        assert!(close(&minus_via_shift(&P, p, &z).unwrap(), &minus), "m={m}");
    }
}

#[test]
fn shift_identity_fails_for_m_6() {
    let p = Params::from_omega(RootOfUnity::new(6, 1).unwrap(), 1, 1);
    let z = mp(0.6, 0.8);
    let minus = Descendant::minus(&P, p).unwrap().at(&z).unwrap();
    let shifted = minus_via_shift(&P, p, &z).unwrap();
    assert!(minus.max_abs_diff(&shifted) > 1e-3);
    assert!(minus.max_abs_diff(&shifted.neg()) > 1e-3);
}

fn det(a: &Operator<Cyclo>) -> Cyclo {
    let n = a.dim();
    let f = a.ctx().clone();
    let mut m: Vec<Vec<Cyclo>> = (0..n).map(|i| (0..n).map(|j| a.get(i, j)).collect()).collect();
    let mut acc = Cyclo::one(&f);
    for c in 0..n {
        let Some(r) = (c..n).find(|&r| !m[r][c].is_zero()) else { return Cyclo::zero(&f) };
        if r != c {
            m.swap(r, c);
            acc = acc.neg();
        }
        let piv = m[c][c].clone();
        acc = acc.mul(&piv);
        let pinv = piv.inv().unwrap();
        for r in c + 1..n {
            let factor = m[r][c].mul(&pinv);
            let pivot = m[c].clone();
            for (v, p) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                *v = v.sub(&factor.mul(p));
            }
        }
    }
    acc
}

#[test]
fn two_parameter_family() {
    let p = Params::from_omega(RootOfUnity::new(2, 1).unwrap(), 1, 1);
    let f = CycloField::new(4);
    let fam = TwoParam::new(&f, p).unwrap();
    let z = q(&f, 3, 5);
    let plus = Descendant::plus(&f, p).unwrap().at(&z).unwrap();
    assert!(fam.at(&z, &Cyclo::zero(&f)).unwrap().exactly_equals(&plus));
    for mu in [1, -1] {
        assert!(det(&fam.at(&z, &Cyclo::from_i64(&f, mu)).unwrap()).is_zero(), "μ = {mu}");
    }
    assert!(!det(&fam.at(&z, &q(&f, 1, 3)).unwrap()).is_zero());
    let mu = q(&f, 2, 7);
    assert!(fam.at(&z, &mu).unwrap().exactly_equals(&Descendant::mixed(&f, p, &mu).unwrap().at(&z).unwrap()));
}

#[test]
fn index_scaling() {
    let f = CycloField::new(5);
    let id = index_scale::<Cyclo>(&f, 5, 1).unwrap();
    assert!(id.t.exactly_equals(&Operator::identity(&f, 5)));
    let two = index_scale::<Cyclo>(&f, 5, 2).unwrap();
    let four = index_scale::<Cyclo>(&f, 5, 4).unwrap();
    assert!(two.t.mul(&two.t).exactly_equals(&four.t));
    assert!(index_scale::<Cyclo>(&f, 6, 3).is_err());

    // (l, k) = (2, 3) against (1, lk) under i → l⁻¹ i.
    let general = Descendant::standard(&f, Params::from_n(5, 2, 3).unwrap()).unwrap();
    let scaled = Descendant::standard(&f, Params::from_n(5, 1, 6).unwrap()).unwrap();
    let s: Basis<Cyclo> = index_scale(&f, 5, 3).unwrap();
    for z in [q(&f, 2, 3), q(&f, -7, 2)] {
        assert!(s.conjugate(&general.at(&z).unwrap()).exactly_equals(&scaled.at(&z).unwrap()));
    }
}

#[test]
fn fz_weights() {
    let w = FzWeights::<MpComplex>::new(&P, 5, RootOfUnity::new(10, 3).unwrap()).unwrap();
    let z = mp(0.4, 0.7);
    let one = MpComplex::one(&P);
    let lam = MpComplex::unit(&P, 3, 10).unwrap();
    for kind in [WeightKind::W, WeightKind::WBar] {
        assert!(w.weight(kind, &z, 0).unwrap().sub(&one).abs() < 1e-70);
        let base = w.weight(kind, &z, 2).unwrap();
        for l in [7, -3, 3, 12] {
            assert!(w.weight(kind, &z, l).unwrap().sub(&base).abs() < 1e-60, "{kind:?} l={l}");
        }
    }
    let w1 = lam.mul(&z).sub(&one).div(&lam.sub(&z)).unwrap();
    assert!(w.weight(WeightKind::W, &z, 1).unwrap().sub(&w1).abs() < 1e-70);
    assert!(w.weight(WeightKind::W, &lam, 1).is_err());
}

#[test]
fn fz_rmatrix_forms() {
    let one_state = FzWeights::<MpComplex>::new(&P, 1, RootOfUnity::new(2, 1).unwrap()).unwrap();
    let m = one_state.rmatrix(&mp(0.3, 0.2), &mp(1.5, -0.4)).unwrap();
    assert!(close(&m, &Operator::identity(&P, 1)));
    assert!(close(&one_state.limit_closed(&mp(0.5, 0.5)).unwrap(), &Operator::identity(&P, 1)));

    let w = FzWeights::<MpComplex>::matching(&P, 3, RootOfUnity::new(3, 1).unwrap()).unwrap();
    let (x, y) = (mp(0.8, 0.3), mp(-0.2, 1.1));
    let reduced = w.rmatrix(&x, &y).unwrap();
    let full = w.rmatrix_full((&x, &x.inv().unwrap()), (&y, &y.inv().unwrap())).unwrap();
    assert!(close(&reduced, &full));

    // R(x̃, ỹ) R(x̃^{−T}, ỹ^{−T}) ∝ I with x̃^{−T} = (1/x₂, 1/x₁).
    let (x1, x2, y1, y2) = (mp(0.8, 0.3), mp(1.2, -0.5), mp(-0.2, 1.1), mp(0.9, 0.9));
    let inv = |v: &MpComplex| v.inv().unwrap();
    let a = w.rmatrix_full((&x1, &x2), (&y1, &y2)).unwrap();
    let b = w.rmatrix_full((&inv(&x2), &inv(&x1)), (&inv(&y2), &inv(&y1))).unwrap();
    let c = a.mul(&b);
    let s = c.get(0, 0);
    assert!(s.abs() > 1e-3);
    assert!(close(&c, &Operator::identity(&P, 9).scale(&s)));
}

#[test]
fn fz_limit_matches_closed_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for n in [3u64, 5] {
        let w = FzWeights::<MpComplex>::matching(&P, n, RootOfUnity::new(n, 1).unwrap()).unwrap();
        for _ in 0..2 {
            let z = unit_point(&mut rng).mul(&mp(0.7, 0.0));
            let lim = w.limit_along(&z, &[1e4, 1e6, 1e8], 1e-6).unwrap();
            let closed = normalize(&w.limit_closed(&z).unwrap());
            assert!(lim.matrix.max_abs_diff(&closed) < 1e-10, "N={n}");
            assert!(lim.diffs.last().unwrap() < &1e-6);
        }
    }
    let w = FzWeights::<MpComplex>::matching(&P, 3, RootOfUnity::new(3, 1).unwrap()).unwrap();
    assert!(w.limit_along(&mp(0.0, 0.0), &[1e4, 1e6], 1e-6).is_err());
    assert!(matches!(w.limit_along(&mp(0.5, 0.1), &[1.0, 2.0], 1e-6), Err(dybe_core::Error::NoConvergence(..))));
    assert!(FzWeights::<MpComplex>::matching(&P, 4, RootOfUnity::new(4, 1).unwrap()).is_err());
}
