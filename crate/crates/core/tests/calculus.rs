use std::collections::BTreeMap;

use ncforms::calculus::homotopy_check_in;
use ncforms::sample::{self, case_rng, Pool, Shape};
use ncforms::{
    a_t, differential, ext_differential, ext_mul, homotopy_check, homotopy_i, parse, poincare_primitive, ExtendedForm,
    Form, Scalar, Signature, Word,
};

fn f(text: &str, sig: &Signature) -> Form {
    parse(text, sig).unwrap()
}

/// Word-level graded Leibniz expansion, written out directly.
fn leibniz_d(a: &Form, sig: &Signature) -> Form {
    let mut out = Form::zero();
    for (w, c) in a.terms() {
        let l = w.letters();
        let mut odd = false;
        for (i, &g) in l.iter().enumerate() {
            let img = sig.d_image(g);
            let left = Form::term(Word::from_slice(&l[..i]), if odd { -c } else { c.clone() });
            let right = Form::word(&l[i + 1..]);
            out += &(&left * img) * &right;
            odd ^= sig.parity(g);
        }
    }
    out
}

/// `A_t` on words: `x ↦ t x`, `y ↦ t y + τ x`, with `τ` moved to the front.
fn at_oracle(a: &Form, sig: &Signature) -> ExtendedForm {
    let mut plus: BTreeMap<u32, Form> = BTreeMap::new();
    let mut minus: BTreeMap<u32, Form> = BTreeMap::new();
    for (w, c) in a.terms() {
        let l = w.letters();
        let n = l.len() as u32;
        *plus.entry(n).or_default() += Form::term(w.clone(), c.clone());
        let mut odd = false;
        for (i, &g) in l.iter().enumerate() {
            if let ncforms::GenKind::Differential(x) = sig.kind(g) {
                let coeff = if odd { -c } else { c.clone() };
                *minus.entry(n - 1).or_default() += Form::term(w.splice(i, 1, &[x]), coeff);
            }
            odd ^= sig.parity(g);
        }
    }
    plus.retain(|_, f| !f.is_zero());
    minus.retain(|_, f| !f.is_zero());
    ExtendedForm { plus, minus }
}

#[test]
fn differential_examples() {
    let even = Signature::free_even(2);
    assert_eq!(differential(&f("x1*x2", &even), &even), f("y1*x2 + x1*y2", &even));
    assert_eq!(differential(&f("y1*x1", &even), &even), f("-y1*y1", &even));
    assert_eq!(differential(&f("y1*x1", &even), &even), leibniz_d(&f("y1*x1", &even), &even));
    let odd = Signature::free(&[true]);
    assert_eq!(differential(&f("x1^2", &odd), &odd), f("y1*x1 - x1*y1", &odd));
    assert_eq!(differential(&f("x1^2", &odd), &odd), leibniz_d(&f("x1^2", &odd), &odd));
}

#[test]
fn d_squared_on_words() {
    for sig in [Signature::free_even(3), Signature::free(&[true, false, true])] {
        let letters: Vec<_> = sig.gens().collect();
        let mut rng = case_rng(11, 0);
        for _ in 0..200 {
            let w = Form::term(sample::word(&mut rng, &letters, 6), Scalar::one());
            assert!(differential(&differential(&w, &sig), &sig).is_zero());
        }
    }
}

#[test]
fn tau_products() {
    let sig = Signature::free_even(1);
    let tau = ExtendedForm::tau();
    assert!(ext_mul(&tau, &tau, &sig).is_zero());
    let x1 = ExtendedForm::from_form(f("x1", &sig));
    assert_eq!(ext_mul(&tau, &x1, &sig), ext_mul(&x1, &tau, &sig));
    assert_eq!(ext_mul(&tau, &x1, &sig), ExtendedForm::minus_term(0, f("x1", &sig)));
    let y1 = ExtendedForm::from_form(f("y1", &sig));
    assert_eq!(ext_mul(&y1, &tau, &sig), ExtendedForm::minus_term(0, f("-y1", &sig)));
}

#[test]
fn at_examples() {
    let sig = Signature::free_even(2);
    assert_eq!(a_t(&f("x1", &sig), &sig).unwrap(), ExtendedForm::plus_term(1, f("x1", &sig)));
    let y1 = a_t(&f("y1", &sig), &sig).unwrap();
    assert_eq!(y1, ExtendedForm::plus_term(1, f("y1", &sig)).add(&ExtendedForm::minus_term(0, f("x1", &sig))));
    let xy = a_t(&f("x1*y1", &sig), &sig).unwrap();
    let expect = ExtendedForm::plus_term(2, f("x1*y1", &sig)).add(&ExtendedForm::minus_term(1, f("x1^2", &sig)));
    assert_eq!(xy, expect);
    assert_eq!(xy, at_oracle(&f("x1*y1", &sig), &sig));
}

#[test]
fn at_matches_oracle_on_random_forms() {
    for sig in [Signature::free_even(3), Signature::free(&[false, true, true])] {
        for case in 0..100 {
            let mut rng = case_rng(5, case);
            let a = sample::any_form(&mut rng, &sig, &Shape::new(5, 4), &Pool::rational());
            assert_eq!(a_t(&a, &sig).unwrap(), at_oracle(&a, &sig), "case {}", case);
        }
    }
}

#[test]
fn homotopy_integrates_tau_part() {
    let sig = Signature::free_even(1);
    assert!(homotopy_i(&ExtendedForm::plus_term(3, f("x1*y1", &sig))).is_zero());
    assert_eq!(homotopy_i(&ExtendedForm::minus_term(2, f("x1", &sig))), f("1/3*x1", &sig));
    for m in 0..5 {
        let e = ExtendedForm::minus_term(m, f("x1*y1 - y1", &sig));
        let r = differential(&homotopy_i(&e), &sig) + homotopy_i(&ext_differential(&e, &sig));
        assert!(r.is_zero(), "m = {}", m);
    }
}

#[test]
fn homotopy_formula_examples() {
    let sig = Signature::free_even(2);
    assert!(homotopy_check(&ExtendedForm::minus_term(1, f("x1", &sig)), &sig).is_zero());
    assert!(homotopy_check(&ExtendedForm::plus_term(3, f("y1*y2", &sig)), &sig).is_zero());
}

#[test]
fn homotopy_formula_in_free_quotient_matches_free() {
    let sig = Signature::free(&[false, true]);
    let sys = ncforms::RewriteSystem::free("free", sig.clone());
    let letters: Vec<_> = sig.gens().collect();
    for case in 0..50 {
        let mut rng = case_rng(3, case);
        let e = sample::extended(&mut rng, &letters, &Shape::new(4, 3), &Pool::rational(), 3);
        assert!(homotopy_check_in(&e, &sys).is_zero());
    }
}

#[test]
fn poincare_examples() {
    let sig = Signature::free_even(1);
    assert_eq!(poincare_primitive(&f("y1", &sig), &sig, None).unwrap(), (f("x1", &sig), Scalar::zero()));
    let (p, r) = poincare_primitive(&f("x1*y1 + y1*x1", &sig), &sig, None).unwrap();
    assert_eq!((p, r), (f("x1^2", &sig), Scalar::zero()));
    assert_eq!(differential(&f("x1^2", &sig), &sig), f("x1*y1 + y1*x1", &sig));
    assert_eq!(poincare_primitive(&f("5", &sig), &sig, None).unwrap(), (Form::zero(), Scalar::int(5)));
}

#[test]
fn poincare_rejects_open_forms() {
    let sig = Signature::free_even(2);
    let err = poincare_primitive(&f("x1*y2", &sig), &sig, None).unwrap_err();
    assert!(matches!(err, ncforms::Error::NotClosed(_)));
}

#[test]
fn differential_matches_leibniz_oracle() {
    for sig in [Signature::free_even(3), Signature::free(&[true, true, false])] {
        for case in 0..100 {
            let mut rng = case_rng(9, case);
            let a = sample::any_form(&mut rng, &sig, &Shape::new(5, 4), &Pool::rational());
            assert_eq!(differential(&a, &sig), leibniz_d(&a, &sig));
        }
    }
}
