use ncforms::liecomplex::{aff1_complex, gl_complex, GlVariant};
use ncforms::qspace::{q_algebra, QMatrix};
use ncforms::quantum::weyl_algebra;
use ncforms::rewrite::Presentation;
use ncforms::sample::{self, case_rng};
use ncforms::suites::nonconfluent_example;
use ncforms::{check_d_compatibility, check_local_confluence, parse, Form, RewriteSystem, Scalar, Signature, Strategy};

fn nf(sys: &RewriteSystem, text: &str) -> Form {
    sys.normalize(&parse(text, sys.sig()).unwrap())
}

fn f(sys: &RewriteSystem, text: &str) -> Form {
    parse(text, sys.sig()).unwrap()
}

#[test]
fn rules_as_normal_forms() {
    let weyl = weyl_algebra(1);
    assert_eq!(nf(&weyl, "p1*q1"), f(&weyl, "q1*p1 + h"));
    let q = q_algebra(&QMatrix::symbolic(2));
    assert_eq!(nf(&q, "x2*x1"), f(&q, "Q[2,1]*x1*x2"));
    let aff = aff1_complex();
    assert_eq!(nf(&aff, "e2*e1"), f(&aff, "e1*e2 - e2"));
}

#[test]
fn confluence_reports() {
    assert!(check_local_confluence(&weyl_algebra(2), 3).is_ok());
    let free = RewriteSystem::free("free", Signature::free_even(2));
    assert!(check_local_confluence(&free, 3).is_ok());
    let broken = nonconfluent_example();
    let report = check_local_confluence(&broken, 3);
    assert!(!report.is_ok());
    let first = &report.mismatches[0];
    assert_eq!(ncforms::print(&Form::term(first.word.clone(), Scalar::one()), broken.sig()), "y^2*x");
}

#[test]
fn cyclic_rules_are_rejected() {
    let mut sig = Signature::new(ncforms::ParamTable::standard());
    let x = sig.add("x", false, 0, ncforms::GenKind::Other);
    let y = sig.add("y", false, 0, ncforms::GenKind::Other);
    let mut rules = std::collections::BTreeMap::new();
    rules.insert((x, y), Form::word(&[y, x]) + Form::one());
    rules.insert((y, x), Form::word(&[x, y]));
    assert!(RewriteSystem::new("cyclic", sig, vec![x, y], rules).is_err());
}

#[test]
fn d_compatibility_reports() {
    assert!(check_d_compatibility(&aff1_complex()).is_ok());
    assert!(check_d_compatibility(&q_algebra(&QMatrix::symbolic(3))).is_ok());

    let gl = gl_complex(2, GlVariant::Left).unwrap();
    let mut p: Presentation = gl.to_presentation();
    let is_de = |s: &str| s.starts_with("de[");
    p.rules.retain(|r| !(is_de(&r.left[0]) && is_de(&r.left[1]) && r.left[0] != r.left[1]));
    let crippled = RewriteSystem::from_presentation(&p).unwrap();
    let report = check_d_compatibility(&crippled);
    assert!(!report.is_ok());
}

#[test]
fn presentation_round_trip() {
    for sys in [weyl_algebra(1), aff1_complex(), ncforms::liecomplex::preset("general-sl2-fin").unwrap()] {
        let p = sys.to_presentation();
        let json = serde_json::to_string(&p).unwrap();
        let back = RewriteSystem::from_json(&json).unwrap();
        assert_eq!(back.to_presentation(), p);
        assert_eq!(back.annihilators().len(), sys.annihilators().len());
    }
}

#[test]
fn annihilated_words_vanish_anywhere() {
    let sys = ncforms::liecomplex::preset("general-sl2-fin").unwrap();
    assert_eq!(nf(&sys, "w[1,1]*w[1,2]"), Form::zero());
    assert_eq!(nf(&sys, "w[1,1]*rho[2,1]*w[1,2]"), Form::zero());
    assert!(!nf(&sys, "w[1,1]*w[2,2]").is_zero());
}

#[test]
fn strategies_agree_and_normalization_is_idempotent() {
    let sys = weyl_algebra(2);
    let letters: Vec<_> = sys.sig().gens().collect();
    for case in 0..200 {
        let mut rng = case_rng(8, case);
        let w = Form::term(sample::word(&mut rng, &letters, 6), Scalar::one());
        let l = sys.normalize_with(&w, Strategy::Leftmost);
        assert_eq!(l, sys.normalize_with(&w, Strategy::Rightmost));
        assert_eq!(sys.normalize(&l), l);
        assert!(l.terms().all(|(w, _)| sys.is_normal(w)));
    }
}
