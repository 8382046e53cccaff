use std::collections::BTreeMap;

use flexcert_core::flex::{
    self, build_f, build_h, det3_scalar, hessian_det, substitute_linear, transport_witness,
    verify_certificate, verify_certificate_with, witness, CertificateInput, FlexSystem, Matrix3,
    MultiIndex, X,
};
use flexcert_core::{
    parse, MultiDegree, PointAssignment, Polynomial, Scalar, Universe, VariableGrouping,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn flex_poly(s: &str) -> Polynomial {
    parse(s, &Universe::flex()).unwrap()
}

fn random_invertible(rng: &mut ChaCha8Rng, bound: i64) -> Matrix3 {
    loop {
        let a: Matrix3 =
            core::array::from_fn(|_| core::array::from_fn(|_| Scalar::from(rng.gen_range(-bound..=bound))));
        if !det3_scalar(&a).is_zero() {
            return a;
        }
    }
}

#[test]
fn h_matches_independent_expansion() {
    let text = include_str!("fixtures/hessian_generic_cubic.txt");
    let body: String = text.lines().filter(|l| !l.starts_with('#')).collect();
    let oracle = flex_poly(&body);
    let h = build_h();
    assert_eq!(h.len(), 73);
    assert_eq!(h, oracle);
}

#[test]
fn h_matches_cofactor_expansion_in_second_partials() {
    let sys = FlexSystem::new();
    assert_eq!(&sys.hessian_expansion(), sys.h());
}

#[test]
fn h_partial_expansion_equals_direct_derivative() {
    let sys = FlexSystem::new();
    for i in 0..3u8 {
        assert_eq!(&sys.h_partial_expansion(i), sys.h_partial(usize::from(i)), "h_({i})");
    }
}

#[test]
fn bidegrees() {
    let g = VariableGrouping::flex();
    assert_eq!(build_f().multidegree(&g).unwrap(), MultiDegree(vec![3, 1]));
    assert_eq!(build_h().multidegree(&g).unwrap(), MultiDegree(vec![3, 3]));
    let sum = &build_f() + &build_h();
    let parts = sum.isotypic_decompose(&g).unwrap();
    assert_eq!(
        parts,
        vec![(MultiDegree(vec![3, 1]), build_f()), (MultiDegree(vec![3, 3]), build_h())]
    );
}

#[test]
fn derivative_tables_at_witness() {
    let sys = FlexSystem::new();
    let values = sys.evaluate_tables(&witness()).unwrap();
    let expect: BTreeMap<MultiIndex, Scalar> = flex::EXPECTED_FIRST
        .iter()
        .map(|(i, v)| (MultiIndex::new(i), Scalar::from(*v)))
        .chain(flex::EXPECTED_SECOND.iter().map(|(i, v)| (MultiIndex::new(i), Scalar::from(*v))))
        .chain(flex::EXPECTED_THIRD.iter().map(|(i, v)| (MultiIndex::new(i), Scalar::from(*v))))
        .collect();
    assert_eq!(values, expect);
    for order in 1..=3 {
        assert!(sys.derivative_table(order).keys().all(|k| k.order() == order));
    }
    // third partials no longer involve x
    let g = sys.grouping();
    for (_, p) in sys.derivative_table(3) {
        assert_eq!(p.multidegree(g).unwrap(), MultiDegree(vec![0, 1]));
    }
}

#[test]
fn witness_values_and_minor() {
    let sys = FlexSystem::new();
    let c = witness();
    assert_eq!(build_f().evaluate(&c).unwrap(), Scalar::ZERO);
    assert_eq!(build_h().evaluate(&c).unwrap(), Scalar::ZERO);
    assert_eq!(sys.f_partial(&[1]).evaluate(&c).unwrap(), Scalar::from(3));
    assert_eq!(sys.f_partial(&[1, 1]).evaluate(&c).unwrap(), Scalar::from(-6));
    let h_vals: Vec<Scalar> = (0..3).map(|i| sys.h_partial(i).evaluate(&c).unwrap()).collect();
    assert_eq!(h_vals, vec![Scalar::from(-218), Scalar::from(-18), Scalar::from(-18)]);
    for i in 0..3u8 {
        assert_eq!(sys.h_partial_expansion(i).evaluate(&c).unwrap(), h_vals[usize::from(i)]);
    }
    // (-1)(-18) - 3(-218)
    assert_eq!(sys.jacobian_minor(&c).unwrap(), Scalar::from(672));
    let minors: Vec<(String, Scalar)> = sys
        .jacobian_minors(&c)
        .unwrap()
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect();
    assert_eq!(
        minors,
        vec![
            ("(01)".to_string(), Scalar::from(672)),
            ("(02)".to_string(), Scalar::from(672)),
            ("(12)".to_string(), Scalar::from(0)),
        ]
    );
}

#[test]
fn minor_vanishes_when_point_block_is_zero() {
    let sys = FlexSystem::new();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let u = Universe::flex();
    for _ in 0..10 {
        let mut values: Vec<Scalar> = (0..13).map(|_| Scalar::from(rng.gen_range(-5i64..=5))).collect();
        values[..3].fill(Scalar::ZERO);
        let pt = PointAssignment::new(u.clone(), values).unwrap();
        assert_eq!(sys.jacobian_minor(&pt).unwrap(), Scalar::ZERO);
    }
}

#[test]
fn fermat_point_is_a_second_smooth_witness() {
    let sys = FlexSystem::new();
    let fermat = flex_poly("x0^3+x1^3+x2^3");
    let pt = flex::point_on_cubic([0, -1, 1].map(Scalar::from), &fermat).unwrap();
    assert_eq!(sys.f().evaluate(&pt).unwrap(), Scalar::ZERO);
    assert_eq!(sys.h().evaluate(&pt).unwrap(), Scalar::ZERO);
    assert_eq!(sys.h_partial(0).evaluate(&pt).unwrap(), Scalar::from(-216));
    assert_eq!(sys.h_partial(1).evaluate(&pt).unwrap(), Scalar::ZERO);
    assert_eq!(sys.jacobian_minor(&pt).unwrap(), Scalar::from(648));
}

#[test]
fn euler_identities() {
    let sys = FlexSystem::new();
    let u = sys.universe().clone();
    let mut ef = Polynomial::zero_in(&u);
    let mut eh = Polynomial::zero_in(&u);
    for (j, &xj) in X.iter().enumerate() {
        let x = Polynomial::var_in(&u, xj);
        ef = &ef + &(&x * sys.f_partial(&[j as u8]));
        eh = &eh + &(&x * sys.h_partial(j));
    }
    assert_eq!(ef, sys.f().scale(&Scalar::from(3)));
    assert_eq!(eh, sys.h().scale(&Scalar::from(3)));
}

#[test]
fn uniform_scaling_of_x_multiplies_f_by_t_cubed() {
    let f = build_f();
    let big = f.universe().extended(["t"]).unwrap();
    let t = Polynomial::named(&big, "t").unwrap();
    let fe = f.embed(&big).unwrap();
    let map: BTreeMap<_, _> = (0..3)
        .map(|i| {
            let v = big.lookup(&format!("x{i}")).unwrap();
            (v, &t * &Polynomial::var_in(&big, v))
        })
        .collect();
    assert_eq!(fe.substitute(&map).unwrap(), &t.pow(3) * &fe);
    let zero: BTreeMap<_, _> = X.iter().map(|&v| (v, Polynomial::zero_in(f.universe()))).collect();
    assert!(f.substitute(&zero).unwrap().is_zero());
}

#[test]
fn hessian_covariance_under_linear_substitution() {
    let f = build_f();
    let h = build_h();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..50 {
        let a = random_invertible(&mut rng, 3);
        let det = det3_scalar(&a);
        let lhs = hessian_det(&substitute_linear(&f, &a).unwrap()).unwrap();
        let rhs = substitute_linear(&h, &a).unwrap().scale(&(&det * &det));
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn transported_witnesses_stay_on_the_cone() {
    let f = build_f();
    let h = build_h();
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..50 {
        let a = random_invertible(&mut rng, 4);
        let p = transport_witness(&a).unwrap();
        assert_eq!(f.evaluate(&p).unwrap(), Scalar::ZERO);
        assert_eq!(h.evaluate(&p).unwrap(), Scalar::ZERO);
    }
}

#[test]
fn certificate_passes_on_standard_input() {
    let report = verify_certificate();
    let failed: Vec<_> = report.checks.iter().filter(|c| !c.pass).collect();
    assert!(failed.is_empty(), "failed checks: {failed:#?}");
    assert!(report.passed());
    assert_eq!(report.check("minor.(01)").unwrap().computed, "672");
    assert_eq!(report.check("value.h_(0)").unwrap().computed, "-218");
    assert_eq!(report.check("value.h_(1)").unwrap().computed, "-18");
    // 2 degrees, 2 positivity, 3 membership, 19 table entries, 3 expansions, 2 values, 1 minor
    assert_eq!(report.checks.len(), 32);
}

#[test]
fn certificate_flags_corrupted_witness() {
    let report = verify_certificate_with(&CertificateInput::corrupted_witness());
    assert!(!report.passed());
    let wf = report.check("witness.f").unwrap();
    assert!(!wf.pass);
    assert_eq!(wf.computed, "2");
}

#[test]
fn certificate_fails_when_h_is_replaced_by_f() {
    let input = CertificateInput::h_replaced_by_f();
    assert_eq!(input.system.jacobian_minor(&input.witness).unwrap(), Scalar::ZERO);
    let report = verify_certificate_with(&input);
    assert!(!report.passed());
    let minor = report.check("minor.(01)").unwrap();
    assert!(!minor.pass);
    assert!(minor.computed.starts_with("0 (direct)"), "{}", minor.computed);
}
