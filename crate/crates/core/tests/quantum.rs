use ncforms::quantum::{
    clebsch_algebra, clebsch_build, clebsch_verify, normal_words, quantum_poincare, weyl_algebra, weyl_partial, LieData,
};
use ncforms::{parse, Form, RewriteSystem, Scalar};

fn f(sys: &RewriteSystem, text: &str) -> Form {
    parse(text, sys.sig()).unwrap()
}

fn nf(sys: &RewriteSystem, text: &str) -> Form {
    sys.normalize(&f(sys, text))
}

#[test]
fn weyl_normal_forms() {
    let sys = weyl_algebra(1);
    assert_eq!(nf(&sys, "p1*q1"), f(&sys, "q1*p1 + h"));
    assert_eq!(nf(&sys, "dp1*q1"), f(&sys, "dp1*q1"));
    assert_eq!(nf(&sys, "q1*dp1"), f(&sys, "dp1*q1"));
    assert!(nf(&sys, "dp1*dp1").is_zero());
    assert_eq!(sys.d(&f(&sys, "p1*q1")), sys.normalize(&f(&sys, "dp1*q1 + p1*dq1")));
}

#[test]
fn weyl_partials() {
    let sys = weyl_algebra(1);
    let (q1, p1) = (sys.sig().by_name("q1").unwrap(), sys.sig().by_name("p1").unwrap());
    let h = f(&sys, "p1*q1");
    assert_eq!(weyl_partial(&h, p1, &sys), f(&sys, "q1"));
    assert_eq!(weyl_partial(&h, q1, &sys), f(&sys, "p1"));
    assert!(weyl_partial(&f(&sys, "q1^2"), p1, &sys).is_zero());
}

#[test]
fn quantum_poincare_examples() {
    let sys = weyl_algebra(1);
    let (p, r) = quantum_poincare(&f(&sys, "dq1*p1 + dp1*q1"), &sys).unwrap();
    assert_eq!((p, r), (f(&sys, "q1*p1"), Scalar::zero()));
    assert_eq!(quantum_poincare(&f(&sys, "h"), &sys).unwrap(), (Form::zero(), Scalar::h()));
    assert_eq!(quantum_poincare(&f(&sys, "dq1*q1"), &sys).unwrap().0, f(&sys, "1/2*q1^2"));
    assert!(quantum_poincare(&f(&sys, "dq1*p1"), &sys).is_err());
}

#[test]
fn symbol_transfer_on_normal_words() {
    for n in 1..=2 {
        let sys = weyl_algebra(n);
        let symbol = sys.symbol_system();
        let words = normal_words(&sys, 4);
        assert!(words.len() > 10);
        for w in words {
            let a = Form::term(w, Scalar::one());
            assert_eq!(sys.d(&a), symbol.d(&a));
        }
    }
}

#[test]
fn clebsch_examples() {
    let k = Scalar::sym("k");
    let cl = clebsch_build(&LieData::gl(2), &k, None).unwrap();
    assert_eq!(cl.e[0], f(&cl.sys, "h^-1*F1*G1"));

    let sys = clebsch_algebra(&[false, false]);
    let lhs = sys.bracket(&f(&sys, "F1*G2"), &f(&sys, "F2*G1"));
    assert_eq!(lhs, sys.normalize(&f(&sys, "h*(-F1*G1) + h*F2*G2")));

    let odd = clebsch_algebra(&[true]);
    assert_eq!(nf(&odd, "F1*G1 + G1*F1"), f(&odd, "-h"));
}

#[test]
fn clebsch_presets_verify() {
    let k = Scalar::sym("k");
    for name in LieData::PRESETS {
        let cl = clebsch_build(&LieData::preset(name).unwrap(), &k, None).unwrap();
        for rescaled in [false, true] {
            let r = clebsch_verify(&cl, rescaled);
            assert!(r.checked > 0);
            assert!(r.is_ok(), "{} rescaled={}: {:?}", name, rescaled, r.failures.first().map(|x| &x.0));
        }
    }
}

#[test]
fn lie_data_rejects_bad_structure_constants() {
    let bad = r#"{"name":"bad","dim":2,"repdim":1,"c":[[1,2,"1"],[2,1,"1"]],"a":[]}"#;
    assert!(LieData::from_json(bad).is_err());
}
