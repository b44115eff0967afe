use ncforms::qspace::{
    equivariant_primitive, group_algebra, q_algebra, q_d_check, q_ideal_residual, q_partial, q_partial_free,
    q_partials_commute, GroupIndex, QMatrix,
};
use ncforms::sample::{self, case_rng, Pool, Shape};
use ncforms::{parse, Form, RewriteSystem, Scalar};

fn f(sys: &RewriteSystem, text: &str) -> Form {
    parse(text, sys.sig()).unwrap()
}

fn nf(sys: &RewriteSystem, text: &str) -> Form {
    sys.normalize(&f(sys, text))
}

#[test]
fn relations() {
    let sys = q_algebra(&QMatrix::symbolic(2));
    assert_eq!(nf(&sys, "x2*x1"), f(&sys, "Q[1,2]^-1*x1*x2"));
    assert!(nf(&sys, "dx1*dx1").is_zero());
    assert_eq!(nf(&sys, "x1*dx2"), f(&sys, "Q[1,2]*dx2*x1"));
}

#[test]
fn partial_examples() {
    let qm = QMatrix::symbolic(2);
    let sys = q_algebra(&qm);
    let h = f(&sys, "x1*x2");
    assert_eq!(q_partial(&h, 0, &qm, &sys).unwrap(), f(&sys, "x2"));
    assert_eq!(q_partial(&h, 1, &qm, &sys).unwrap(), f(&sys, "Q[1,2]*x1"));
    assert!(q_partial(&f(&sys, "Q[1,2] + 3"), 0, &qm, &sys).unwrap().is_zero());
    assert!(q_partial(&h, 2, &qm, &sys).is_err());
}

#[test]
fn d_expands_through_partials() {
    let qm = QMatrix::symbolic(2);
    let sys = q_algebra(&qm);
    assert!(q_d_check(&f(&sys, "x1*x2"), &qm, &sys).unwrap().is_zero());
    assert_eq!(sys.d(&f(&sys, "x1*x2")), nf(&sys, "dx1*x2 + Q[1,2]*dx2*x1"));
    for m in 1..6 {
        let h = f(&sys, &format!("x1^{}", m));
        assert!(q_d_check(&h, &qm, &sys).unwrap().is_zero());
        assert_eq!(q_partial(&h, 0, &qm, &sys).unwrap(), f(&sys, &format!("{}*x1^{}", m, m - 1)));
    }
}

#[test]
fn random_h_up_to_four_variables() {
    for n in 2..=4 {
        let qm = QMatrix::symbolic(n);
        let sys = q_algebra(&qm);
        let xs = sys.sig().points().to_vec();
        for case in 0..25 {
            let mut rng = case_rng(n as u64, case);
            let h = sample::form(&mut rng, &xs, &Shape::new(5, 3), &Pool::with_q(n));
            assert!(q_d_check(&h, &qm, &sys).unwrap().is_zero());
            assert!(q_partials_commute(&h, 0, n - 1, &qm, &sys).unwrap().is_zero());
        }
    }
}

#[test]
fn partials_preserve_the_ideal() {
    let qm = QMatrix::symbolic(3);
    let sys = q_algebra(&qm);
    let xs = sys.sig().points().to_vec();
    for case in 0..30 {
        let w = Form::term(sample::word(&mut case_rng(2, case), &xs, 4), Scalar::one());
        assert!(q_ideal_residual(0, 2, 1, &w, &qm, sys.sig()).unwrap().is_zero());
        assert!(q_ideal_residual(1, 0, 0, &w, &qm, sys.sig()).unwrap().is_zero());
    }
    let p = &f(&sys, "x1*x2") - &f(&sys, "Q[1,2]*x2*x1");
    assert!(sys.normalize(&q_partial_free(&p, 0, &qm, sys.sig()).unwrap()).is_zero());
}

#[test]
fn json_configuration() {
    let cfg = QMatrix::from_json(r#"{"n": 2, "entries": [[1, 2, "q^2"]]}"#).unwrap();
    let sys = q_algebra(&cfg.matrix);
    assert_eq!(nf(&sys, "x2*x1"), f(&sys, "q^-2*x1*x2"));
    assert!(QMatrix::from_json(r#"{"n": 2, "entries": [[1, 2, "q"], [2, 1, "q"]]}"#).is_err());
    assert!(QMatrix::from_json(r#"{"n": 2, "entries": [[1, 1, "2"]]}"#).is_err());
    assert!(QMatrix::from_json(r#"{"n": 2, "entries": [[1, 2, "1 + q"]]}"#).is_err());
}

#[test]
fn group_action_relabels() {
    let ga = group_algebra(&QMatrix::symbolic(2), &GroupIndex::cyclic(2), &[]).unwrap();
    let sys = &ga.sys;
    assert_eq!(ga.act(1, &f(sys, "x1@0")), f(sys, "x1@1"));
    assert_eq!(ga.act(1, &f(sys, "x2@1*dx1@0")), f(sys, "x2@0*dx1@1"));
    for (a, b, r) in sys.rules() {
        let rel = &Form::word(&[*a, *b]) - r;
        assert!(sys.normalize(&ga.act(1, &rel)).is_zero());
    }
}

#[test]
fn group_q_family_consistency() {
    let z2 = GroupIndex::cyclic(2);
    assert!(group_algebra(&QMatrix::symbolic(2), &z2, &[(0, 0, 1, Scalar::int(2))]).is_err());
    assert!(group_algebra(&QMatrix::symbolic(2), &z2, &[(0, 0, 1, Scalar::int(-1))]).is_ok());
    let z3 = GroupIndex::cyclic(3);
    let bad = [(0, 1, 1, Scalar::int(2)), (1, 0, 2, Scalar::int(3))];
    assert!(group_algebra(&QMatrix::symbolic(2), &z3, &bad).is_err());
}

#[test]
fn equivariant_decomposition() {
    for m in [2, 3] {
        let ga = group_algebra(&QMatrix::symbolic(2), &GroupIndex::cyclic(m), &[]).unwrap();
        let sys = &ga.sys;
        let sig = sys.sig();
        for case in 0..40 {
            let mut rng = case_rng(m as u64, case);
            let w = sys.normalize(&sample::of_degree(&mut rng, sig, 1 + (case % 2) as u32, &Shape::new(4, 3), &Pool::with_q(2)));
            let nu = equivariant_primitive(&w, &ga).unwrap();
            let rest = equivariant_primitive(&sys.d(&w), &ga).unwrap();
            assert!(sys.normalize(&(&w - &sys.d(&nu) - rest)).is_zero());
            let closed = sys.d(&nu);
            assert_eq!(sys.normalize(&(&closed - &sys.d(&equivariant_primitive(&closed, &ga).unwrap()))), Form::zero());
        }
    }
}
