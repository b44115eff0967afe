use ncforms::{bigrade, parse, print, Form, Signature, Word};
use proptest::prelude::*;

fn sig3() -> Signature {
    Signature::free_even(3)
}

fn f(text: &str) -> Form {
    parse(text, &sig3()).unwrap()
}

#[test]
fn products_concatenate() {
    let s = sig3();
    let (x1, y1) = (s.by_name("x1").unwrap(), s.by_name("y1").unwrap());
    assert_eq!(&f("x1") * &f("y1"), Form::term(Word::from_slice(&[x1, y1]), ncforms::Scalar::one()));
    assert_eq!(&f("x1 + x2") * &f("y1"), f("x1*y1 + x2*y1"));
    assert_eq!(f("dx1"), f("y1"));
}

#[test]
fn powers_expand() {
    assert_eq!(f("x1*x1"), f("x1^2"));
    assert_eq!(f("x1*y2 + 3*x1^2").len(), 2);
}

#[test]
fn bigrade_splits_components() {
    let s = sig3();
    let g = bigrade(&f("x1*y2*y3"), &s);
    assert_eq!(g.len(), 1);
    assert_eq!(g[&(1, 2)], f("x1*y2*y3"));
    let g = bigrade(&f("x1 + y1"), &s);
    assert_eq!(g[&(1, 0)], f("x1"));
    assert_eq!(g[&(0, 1)], f("y1"));
    assert!(bigrade(&Form::zero(), &s).is_empty());
}

#[test]
fn parse_errors_carry_positions() {
    let s = sig3();
    assert!(matches!(parse("x1 * z9", &s), Err(ncforms::Error::UnknownGenerator { .. })));
    assert!(matches!(parse("x1 +* x2", &s), Err(ncforms::Error::Syntax { .. })));
    assert!(parse("x4", &s).is_err());
}

fn form_strategy() -> impl Strategy<Value = Form> {
    let s = sig3();
    let letters: Vec<_> = s.gens().collect();
    let term = (proptest::collection::vec(proptest::sample::select(letters), 0..5), -4i64..=4, 1i64..=3)
        .prop_map(|(w, n, d)| Form::term(Word::from_slice(&w), ncforms::Scalar::frac(n, d)));
    proptest::collection::vec(term, 0..5).prop_map(|ts| ts.into_iter().fold(Form::zero(), |a, t| a + t))
}

proptest! {
    #[test]
    fn print_parse_fixed_point(a in form_strategy()) {
        let s = sig3();
        let text = print(&a, &s);
        let back = parse(&text, &s).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert_eq!(print(&back, &s), text);
    }

    #[test]
    fn multiplication_associates_and_distributes(a in form_strategy(), b in form_strategy(), c in form_strategy()) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
    }

    #[test]
    fn bigrade_reassembles(a in form_strategy()) {
        let parts = bigrade(&a, &sig3());
        let sum = parts.values().fold(Form::zero(), |acc, p| acc + p.clone());
        prop_assert_eq!(sum, a);
    }
}
