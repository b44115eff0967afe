use ncforms::expr::parse_scalar;
use ncforms::{Param, Scalar, Signature};
use proptest::prelude::*;

fn sc(text: &str) -> Scalar {
    parse_scalar(text, &Signature::free_even(3)).unwrap()
}

#[test]
fn additive_inverse_and_rational_sums() {
    assert!((Scalar::h() + -Scalar::h()).is_zero());
    assert_eq!(Scalar::frac(1, 2) + Scalar::frac(1, 3), Scalar::frac(5, 6));
    assert_eq!(&Scalar::q(0, 1) + &Scalar::q(0, 1), Scalar::q(0, 1).scale(&ncforms::scalar::rat(2, 1)));
}

#[test]
fn laurent_products() {
    assert!((Scalar::q(0, 1) * Scalar::q(1, 0)).is_one());
    assert!((Scalar::h() * Scalar::h().inverse().unwrap()).is_one());
    assert_eq!(Scalar::h().scale(&ncforms::scalar::rat(1, 2)) * Scalar::h().scale(&ncforms::scalar::rat(2, 1)), Scalar::h().pow(2).unwrap());
}

#[test]
fn only_monomials_invert() {
    assert!((Scalar::h() + Scalar::one()).inverse().is_err());
    assert!(Scalar::zero().inverse().is_err());
    assert_eq!(Scalar::frac(-2, 3).inverse().unwrap(), Scalar::frac(-3, 2));
}

#[test]
fn parsed_literals_match_constructors() {
    assert_eq!(sc("1/2*h^2"), Scalar::h().pow(2).unwrap().scale(&ncforms::scalar::rat(1, 2)));
    assert_eq!(sc("Q[2,1]"), Scalar::q(0, 1).inverse().unwrap());
    assert_eq!(sc("h^-1"), Scalar::h().inverse().unwrap());
}

#[test]
fn substitution_evaluates() {
    let k = Scalar::sym("k");
    let s = &(&k * &k) + &Scalar::int(3);
    assert_eq!(s.substitute(Param::sym("k"), &Scalar::int(2)).unwrap(), Scalar::int(7));
}

fn scalar_strategy() -> impl Strategy<Value = Scalar> {
    let atom = prop_oneof![
        (-3i64..=3, 1i64..=3).prop_map(|(n, d)| Scalar::frac(n, d)),
        (-2i32..=2).prop_map(|e| Scalar::h().pow(e).unwrap()),
        (-2i32..=2).prop_map(|e| Scalar::q(0, 1).pow(e).unwrap()),
        Just(Scalar::sym("k")),
    ];
    proptest::collection::vec((atom.clone(), atom), 1..4)
        .prop_map(|ts| ts.into_iter().fold(Scalar::zero(), |acc, (a, b)| acc + a * b))
}

proptest! {
    #[test]
    fn ring_axioms(a in scalar_strategy(), b in scalar_strategy(), c in scalar_strategy()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert!((&a - &a).is_zero());
    }

    #[test]
    fn display_round_trips(a in scalar_strategy()) {
        prop_assert_eq!(sc(&a.to_string()), a);
    }
}
