use std::sync::Arc;

use flexcert_core::ff_lab::{
    contains_full_line, cubic_coefficients, reduce_mod_p, reduce_point, witness_x, FieldError,
    FlexLab, PrimeField, ProjectivePoint2,
};
use flexcert_core::flex::{self, build_f, build_h, witness};
use flexcert_core::{parse, Monomial, Polynomial, Rationals, Ring, Scalar, Universe, VariableId};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn field(p: u32) -> PrimeField {
    PrimeField::new(p).unwrap()
}

fn flex_poly(s: &str) -> Polynomial {
    parse(s, &Universe::flex()).unwrap()
}

#[test]
fn reduced_generators_vanish_at_reduced_witness() {
    for p in [7, 13, 101, 10007] {
        let k = field(p);
        let c = reduce_point(&witness(), k).unwrap();
        assert_eq!(reduce_mod_p(&build_f(), k).unwrap().eval_values(&c), 0, "f mod {p}");
        assert_eq!(reduce_mod_p(&build_h(), k).unwrap().eval_values(&c), 0, "h mod {p}");
    }
}

#[test]
fn reduction_rejects_bad_denominators_and_small_primes() {
    assert_eq!(PrimeField::new(2), Err(FieldError::OutOfRange(2)));
    let half = flex_poly("1/7*a300");
    assert_eq!(reduce_mod_p(&half, field(7)), Err(FieldError::NotIntegral));
    // 1/2 ≡ 4 mod 7
    let r = reduce_mod_p(&flex_poly("1/2*a300"), field(7)).unwrap();
    assert_eq!(r.terms()[0].1, 4);
}

#[test]
fn fermat_cubic_flexes_mod_7() {
    let k = field(7);
    let lab = FlexLab::new(k);
    let fermat = cubic_coefficients(&flex_poly("x0^3+x1^3+x2^3"), k).unwrap();
    let flexes = lab.flexes_of_cubic(&fermat).unwrap();
    // Over F_7 every cube is 0 or ±1, and the Hessian is 216·x0·x1·x2, so
    // the rational flexes are the points with one zero coordinate and the
    // other two cubes summing to zero.
    let expected: Vec<[u32; 3]> = ProjectivePoint2::all(k)
        .into_iter()
        .map(|q| q.coords())
        .filter(|c| {
            let cube = |a: u32| k.pow(&a, 3);
            let s = k.add(&k.add(&cube(c[0]), &cube(c[1])), &cube(c[2]));
            s == 0 && c.contains(&0)
        })
        .collect();
    assert_eq!(flexes.iter().map(|q| q.coords()).collect::<Vec<_>>(), expected);
    assert_eq!(flexes.len(), 9);
    let minus_one_one = ProjectivePoint2::normalize(k, witness_x(k)).unwrap();
    assert!(flexes.contains(&minus_one_one));
    assert!(!contains_full_line(k, &flexes));
}

#[test]
fn witness_cubic_mod_13_has_flex_at_witness() {
    let k = field(13);
    let lab = FlexLab::new(k);
    let cubic = cubic_coefficients(&flex::witness_cubic(), k).unwrap();
    let flexes = lab.flexes_of_cubic(&cubic).unwrap();
    assert!(flexes.contains(&ProjectivePoint2::normalize(k, witness_x(k)).unwrap()));
    assert_eq!(lab.flexes_of_cubic(&[0; 10]), Err(FieldError::ZeroCubic));
}

#[test]
fn every_scanned_flex_lies_on_the_cone() {
    let k = field(13);
    let lab = FlexLab::new(k);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let cubic: [u32; 10] = std::array::from_fn(|_| rng.gen_range(0..13));
        if cubic.iter().all(|&c| c == 0) {
            continue;
        }
        for q in lab.flexes_of_cubic(&cubic).unwrap() {
            let mut values = vec![0u32; 13];
            values[..3].copy_from_slice(&q.coords());
            values[3..].copy_from_slice(&cubic);
            assert!(lab.on_cone(&values));
        }
    }
}

#[test]
fn smooth_looking_cubics_have_at_most_nine_rational_flexes() {
    for (p, seed) in [(7u32, 1u64), (13, 2)] {
        let k = field(p);
        let lab = FlexLab::new(k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut checked = 0;
        for _ in 0..60 {
            let cubic: [u32; 10] = std::array::from_fn(|_| rng.gen_range(0..p));
            if cubic.iter().all(|&c| c == 0) {
                continue;
            }
            let flexes = lab.flexes_of_cubic(&cubic).unwrap();
            if !contains_full_line(k, &flexes) {
                checked += 1;
                assert!(flexes.len() <= 9, "p={p} cubic={cubic:?} has {} flexes", flexes.len());
            }
        }
        assert!(checked > 40);
    }
}

#[test]
fn surjectivity_onto_the_point_plane() {
    for (p, total) in [(7u32, 57usize), (13, 183)] {
        let report = FlexLab::new(field(p)).surjectivity_onto_plane().unwrap();
        assert_eq!(report.total, total);
        assert_eq!(report.covered, total);
        assert!(report.complete());
    }
    assert_eq!(
        FlexLab::new(field(101)).surjectivity_onto_plane(),
        Err(FieldError::EnumerationTooLarge(101))
    );
}

#[test]
fn explicit_cubic_with_flex_at_first_unit_point() {
    let k = field(7);
    let lab = FlexLab::new(k);
    let e = ProjectivePoint2::normalize(k, [1, 0, 0]).unwrap();
    let w = lab.transport_to(e).unwrap();
    assert_eq!(w.point, e);
    let mut values = vec![0u32; 13];
    values[..3].copy_from_slice(&e.coords());
    values[3..].copy_from_slice(&w.cubic);
    assert!(lab.on_cone(&values));
    assert!(lab.flexes_of_cubic(&w.cubic).unwrap().contains(&e));
}

#[test]
fn rational_flex_survey_mod_101() {
    let lab = FlexLab::new(field(101));
    let survey = lab.rational_flex_survey(200, 101);
    assert_eq!(survey.cubics, 200);
    assert_eq!(survey.histogram.values().sum::<usize>(), 200);
    assert_eq!(survey.histogram.get(&0).copied().unwrap_or(0), survey.empty);
    assert!(survey.empty < 200);
    assert_eq!(lab.rational_flex_survey(200, 101), survey);
}

#[test]
fn sampled_cone_points() {
    for p in [13u32, 101, 10007] {
        let k = field(p);
        let lab = FlexLab::new(k);
        let pts = lab.sample_cone_points(20, 42).unwrap();
        assert_eq!(pts.len(), 20);
        assert_eq!(pts[0], lab.witness_point());
        for pt in &pts {
            assert!(lab.on_cone(pt.values()));
            assert!(pt.in_u());
        }
        assert_eq!(lab.sample_cone_points(20, 42).unwrap(), pts);
        assert_ne!(lab.sample_cone_points(20, 43).unwrap(), pts);
    }
}

fn small_universe() -> Arc<Universe> {
    Universe::new(["u", "v", "w"]).unwrap()
}

fn integral_poly() -> impl Strategy<Value = Polynomial> {
    let u = small_universe();
    prop::collection::vec(
        (prop::collection::vec(0u16..=3, 3), -50i64..=50, 1i64..=5),
        0..6,
    )
    .prop_map(move |terms| {
        Polynomial::from_terms(
            Rationals,
            u.clone(),
            terms.into_iter().map(|(e, n, d)| {
                (Monomial::from_exponents(&e).unwrap(), Scalar::ratio(n, d).unwrap())
            }),
        )
    })
}

fn check_homomorphism(p: u32, a: &Polynomial, b: &Polynomial, v: u8) -> Result<(), TestCaseError> {
    let k = field(p);
    let r = |x: &Polynomial| reduce_mod_p(x, k).unwrap();
    prop_assert_eq!(r(&(a + b)), r(a).checked_add(&r(b)).unwrap());
    prop_assert_eq!(r(&(a * b)), r(a).checked_mul(&r(b)).unwrap());
    prop_assert_eq!(r(&a.diff(VariableId(v))), r(a).diff(VariableId(v)));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduction_is_a_homomorphism_mod_7(a in integral_poly(), b in integral_poly(), v in 0u8..3) {
        check_homomorphism(7, &a, &b, v)?;
    }

    #[test]
    fn reduction_is_a_homomorphism_mod_13(a in integral_poly(), b in integral_poly(), v in 0u8..3) {
        check_homomorphism(13, &a, &b, v)?;
    }

    #[test]
    fn reduction_is_a_homomorphism_mod_101(a in integral_poly(), b in integral_poly(), v in 0u8..3) {
        check_homomorphism(101, &a, &b, v)?;
    }

    #[test]
    fn reduction_is_a_homomorphism_mod_10007(a in integral_poly(), b in integral_poly(), v in 0u8..3) {
        check_homomorphism(10007, &a, &b, v)?;
    }
}

#[test]
fn field_ring_laws_spot_check() {
    let k = field(10007);
    assert_eq!(k.mul(&k.inv(1234).unwrap(), &1234), 1);
    assert_eq!(k.add(&10006, &1), 0);
    assert_eq!(k.sub(&0, &1), 10006);
}
