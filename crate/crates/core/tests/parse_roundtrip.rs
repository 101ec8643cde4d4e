//! Printing and re-parsing a polynomial is the identity.

use std::sync::Arc;

use axtight_core::field::FieldSpec;
use axtight_core::parse;
use axtight_core::poly::Ambient;
use rand::rngs::StdRng;
use rand::SeedableRng;

fn ambient(field: FieldSpec) -> Arc<Ambient> {
    Ambient::new(vec!["X".into(), "Y".into(), "Z".into()], field)
}

#[test]
fn print_parse_round_trip_on_random_polynomials() {
    let mut rng = StdRng::seed_from_u64(4040);
    for field in [
        FieldSpec::prime(2).unwrap(),
        FieldSpec::prime(7).unwrap(),
        FieldSpec::prime(1_000_003).unwrap(),
        FieldSpec::Rationals,
    ] {
        let a = ambient(field);
        for _ in 0..80 {
            let f = axtight_testkit::random_poly(&mut rng, &a, 6, 6);
            let printed = f.to_string();
            let reparsed = parse::polynomial(&printed, &a)
                .unwrap_or_else(|e| panic!("failed to reparse `{printed}`: {e}"));
            assert_eq!(reparsed, f, "round trip changed `{printed}`");
        }
    }
}

#[test]
fn zero_prints_and_parses() {
    let a = ambient(FieldSpec::Rationals);
    let zero = axtight_core::Polynomial::zero(&a);
    assert_eq!(zero.to_string(), "0");
    assert_eq!(parse::polynomial("0", &a).unwrap(), zero);
    assert_eq!(parse::polynomial("X - X", &a).unwrap(), zero);
}
