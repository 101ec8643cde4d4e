//! Homomorphism validation and application.

use std::sync::Arc;

use axtight_core::error::AlgebraError;
use axtight_core::field::FieldSpec;
use axtight_core::parse;
use axtight_core::poly::Ambient;
use axtight_core::ring::{identity_hom, validate_hom, RingHom, RingPresentation};
use axtight_core::{GroebnerConfig, Ideal, MonomialOrder, Polynomial};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn ambient(vars: &[&str], field: FieldSpec) -> Arc<Ambient> {
    Ambient::new(vars.iter().map(|s| s.to_string()).collect(), field)
}

fn poly(src: &str, a: &Arc<Ambient>) -> Polynomial {
    parse::polynomial(src, a).unwrap()
}

fn quotient(a: &Arc<Ambient>, relations: &[&str], cfg: &GroebnerConfig) -> RingPresentation {
    let gens = relations.iter().map(|r| poly(r, a)).collect();
    RingPresentation::new(a, Ideal::new(a, gens).unwrap(), cfg).unwrap()
}

/// The map from K[X,Y,Z]/(X^2 - Y*Z^2) onto K[X,Z]/(X^2 - Z^2) sending Y to 1.
fn cusp_to_two_lines(p: u64, cfg: &GroebnerConfig) -> RingHom {
    let src = ambient(&["X", "Y", "Z"], FieldSpec::prime(p).unwrap());
    let tgt = ambient(&["X", "Z"], FieldSpec::prime(p).unwrap());
    RingHom {
        source: quotient(&src, &["X^2 - Y*Z^2"], cfg),
        target: quotient(&tgt, &["X^2 - Z^2"], cfg),
        images: vec![poly("X", &tgt), poly("1", &tgt), poly("Z", &tgt)],
    }
}

#[test]
fn y_to_one_map_is_valid() {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let hom = validate_hom(cusp_to_two_lines(5, &cfg), &order, &cfg).unwrap();
    // the defining relation maps to zero, and its image is X^2 - Z^2 upstairs
    assert_eq!(hom.checks().len(), 1);
    assert!(hom.checks()[0].normal_form.is_zero());
    let relation = poly("X^2 - Y*Z^2", hom.source().ambient());
    assert!(hom.apply(&relation, &order, &cfg).unwrap().is_zero());
}

#[test]
fn roots_of_unity_map_into_axes_ring_is_valid() {
    // over F_7 the cube roots of -1 are 3, 5, 6; with xi1 = 6 and xi2 = 5 the
    // factorization X^3 + Z^3 = prod (X - xi_i Z) gives the map below
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let src = ambient(&["X", "Y", "Z"], FieldSpec::prime(7).unwrap());
    let tgt = ambient(&["U", "V"], FieldSpec::prime(7).unwrap());
    let hom = RingHom {
        source: quotient(&src, &["X^3 + Y^3 + Z^3"], &cfg),
        target: quotient(&tgt, &["U*V"], &cfg),
        images: vec![
            poly("2*U + 6*V", &tgt),
            poly("0", &tgt),
            poly("6*U + V", &tgt),
        ],
    };
    validate_hom(hom, &order, &cfg).unwrap();
}

#[test]
fn identity_map_is_valid_and_applies_as_normal_form() {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let a = ambient(&["X", "Z"], FieldSpec::prime(5).unwrap());
    let ring = quotient(&a, &["X^2 - Z^2"], &cfg);
    let id = validate_hom(identity_hom(&ring), &order, &cfg).unwrap();
    let f = poly("X^2 + X", &a);
    let applied = id.apply(&f, &order, &cfg).unwrap();
    assert_eq!(applied, ring.normal_form(&f, &order, &cfg).unwrap());
}

#[test]
fn failed_validation_names_the_relation() {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let mut hom = cusp_to_two_lines(7, &cfg);
    // sending Y to 0 breaks the relation: X^2 - 0 has nonzero normal form
    hom.images[1] = Polynomial::zero(hom.target.ambient());
    match validate_hom(hom, &order, &cfg) {
        Err(AlgebraError::HomRelationNotPreserved {
            relation,
            normal_form,
        }) => {
            assert!(relation.contains("X^2"));
            assert!(!normal_form.is_empty());
        }
        other => panic!("expected a relation failure, got {other:?}"),
    }
}

#[test]
fn image_count_mismatch_is_rejected() {
    let cfg = GroebnerConfig::default();
    let mut hom = cusp_to_two_lines(7, &cfg);
    hom.images.pop();
    assert!(matches!(
        validate_hom(hom, &MonomialOrder::default(), &cfg),
        Err(AlgebraError::HomImageCount { .. })
    ));
}

#[test]
fn application_is_a_ring_map_on_random_inputs() {
    let cfg = GroebnerConfig::default();
    let order = MonomialOrder::default();
    let hom = validate_hom(cusp_to_two_lines(5, &cfg), &order, &cfg).unwrap();
    let src = hom.source().ambient().clone();
    // 1 maps to 1
    let one = Polynomial::one(&src);
    assert_eq!(
        hom.apply(&one, &order, &cfg).unwrap(),
        Polynomial::one(hom.target().ambient())
    );
    let mut rng = StdRng::seed_from_u64(11);
    for _ in 0..40 {
        let f = axtight_testkit::random_poly(&mut rng, &src, 4, 4);
        let g = axtight_testkit::random_poly(&mut rng, &src, 4, 4);
        let fg = hom.apply(&f.mul(&g).unwrap(), &order, &cfg).unwrap();
        let f_g = hom
            .apply(&f, &order, &cfg)
            .unwrap()
            .mul(&hom.apply(&g, &order, &cfg).unwrap())
            .unwrap();
        let difference = fg.sub(&f_g).unwrap();
        assert!(hom
            .target()
            .is_zero_in_quotient(&difference, &order, &cfg)
            .unwrap());
        let sum = hom.apply(&f.add(&g).unwrap(), &order, &cfg).unwrap();
        let f_plus_g = hom
            .apply(&f, &order, &cfg)
            .unwrap()
            .add(&hom.apply(&g, &order, &cfg).unwrap())
            .unwrap();
        assert_eq!(sum, f_plus_g);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]
    #[test]
    fn substitution_respects_products_of_monomials(ex in 0u32..4, ey in 0u32..4, ez in 0u32..4) {
        let cfg = GroebnerConfig::default();
        let order = MonomialOrder::default();
        let hom = validate_hom(cusp_to_two_lines(5, &cfg), &order, &cfg).unwrap();
        let src = hom.source().ambient().clone();
        let m = poly("X", &src).pow(ex as u64)
            .mul(&poly("Y", &src).pow(ey as u64)).unwrap()
            .mul(&poly("Z", &src).pow(ez as u64)).unwrap();
        let split = hom.apply(&poly("X", &src).pow(ex as u64), &order, &cfg).unwrap()
            .mul(&hom.apply(&poly("Y", &src).pow(ey as u64), &order, &cfg).unwrap()).unwrap()
            .mul(&hom.apply(&poly("Z", &src).pow(ez as u64), &order, &cfg).unwrap()).unwrap();
        let direct = hom.apply(&m, &order, &cfg).unwrap();
        let difference = direct.sub(&split).unwrap();
        prop_assert!(hom.target().is_zero_in_quotient(&difference, &order, &cfg).unwrap());
    }
}
