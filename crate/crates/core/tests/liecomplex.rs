use ncforms::liecomplex::{
    aff1_complex, antidifference, audit, check_cartan_involution, det3, discrete_d, discrete_poincare, discrete_system,
    ehrenfest_complex, eval_x, general_complex, gl_complex, preset, sl2_ghostless_matrix, so_complex, DiscreteVariant,
    GlVariant, PRESETS,
};
use ncforms::quantum::LieData;
use ncforms::{parse, Form, Param, RewriteSystem, Scalar};

fn f(sys: &RewriteSystem, text: &str) -> Form {
    parse(text, sys.sig()).unwrap()
}

fn nf(sys: &RewriteSystem, text: &str) -> Form {
    sys.normalize(&f(sys, text))
}

#[test]
fn every_preset_passes_its_audit() {
    for name in PRESETS {
        let sys = preset(name).unwrap();
        let a = audit(&sys);
        assert!(a.is_ok(), "{}: {} mismatches, {} d-compat failures", name, a.confluence.mismatches.len(), a.d_compat.failures.len());
        assert!(a.d_compat.checked > 0, "{}", name);
    }
}

#[test]
fn general_complex_examples() {
    let sys = general_complex(&LieData::sl2(), false).unwrap();
    for g in sys.sig().gens() {
        assert!(sys.d(&sys.d(&Form::gen(g))).is_zero(), "{}", sys.sig().name(g));
    }
    let fin = general_complex(&LieData::sl2(), true).unwrap();
    assert!(nf(&fin, "w[1,1]*w[1,2]").is_zero());
    assert!(nf(&fin, "W[1,2]*W[2,2]").is_zero());
}

#[test]
fn aff1_examples() {
    let sys = aff1_complex();
    assert_eq!(nf(&sys, "e2*e1"), f(&sys, "e1*e2 - e2"));
    for (n, m) in [(1, 1), (2, 1), (2, 3), (3, 2)] {
        let w = f(&sys, &format!("e1^{}*e2^{}", n, m));
        let expect = f(&sys, &format!("{n}*e1^{}*e2^{m}*de1 + {m}*e1^{n}*e2^{}*de2", n - 1, m - 1, n = n, m = m));
        assert_eq!(sys.d(&w), sys.normalize(&expect), "n={}, m={}", n, m);
    }
}

#[test]
fn ehrenfest_with_random_matrices() {
    let vals = [Scalar::int(0), Scalar::int(1), Scalar::frac(-1, 2), Scalar::int(3)];
    for seed in 0..6usize {
        let a: Vec<Vec<Scalar>> =
            (0..3).map(|i| (0..3).map(|j| vals[(seed * 7 + i * 3 + j * 5) % 4].clone()).collect()).collect();
        let sys = ehrenfest_complex(&a).unwrap();
        assert!(audit(&sys).is_ok(), "seed {}", seed);
    }
}

#[test]
fn gl_commutator_instance() {
    let sys = gl_complex(2, GlVariant::Left).unwrap();
    let r = &nf(&sys, "e[1,1]*de[1,2]") - &nf(&sys, "de[1,2]*e[1,1]");
    assert_eq!(r, f(&sys, "de[1,2]"));
}

#[test]
fn cartan_involution_matches_rule_sets() {
    assert!(check_cartan_involution(2).unwrap());
    assert!(check_cartan_involution(3).unwrap());
}

#[test]
fn discrete_differentials() {
    let v = DiscreteVariant::Forward;
    let sys = discrete_system(v);
    assert_eq!(discrete_d(&f(&sys, "x^2"), v, &sys).unwrap(), nf(&sys, "2*dx*x + dx"));
    assert_eq!(discrete_d(&f(&sys, "y*x"), v, &sys).unwrap(), nf(&sys, "dy*x + dx*y"));
    assert!(discrete_d(&f(&sys, "7"), v, &sys).unwrap().is_zero());
}

#[test]
fn discrete_primitives() {
    let v = DiscreteVariant::Forward;
    let sys = discrete_system(v);
    assert_eq!(discrete_poincare(&f(&sys, "dx*x"), v, &sys).unwrap(), nf(&sys, "1/2*x^2 - 1/2*x"));
    assert_eq!(discrete_poincare(&f(&sys, "dy*x + dx*y"), v, &sys).unwrap(), nf(&sys, "y*x"));
    assert_eq!(discrete_poincare(&f(&sys, "dy"), v, &sys).unwrap(), f(&sys, "y"));
    assert!(discrete_poincare(&f(&sys, "dy*x"), v, &sys).is_err());
}

#[test]
fn antidifference_by_substitution() {
    let g = [Scalar::int(1), Scalar::int(-2), Scalar::frac(1, 2), Scalar::int(3)];
    let t = antidifference(&g);
    assert!(eval_x(&t, 0).is_zero());
    for x in -5..=5 {
        assert_eq!(&eval_x(&t, x + 1) - &eval_x(&t, x), eval_x(&g, x), "x = {}", x);
    }
}

#[test]
fn so_complex_examples() {
    let sys = so_complex(3).unwrap();
    assert_eq!(sys.d(&f(&sys, "th[1,2]")), f(&sys, "rho[1,2]"));
    assert!(sys.d(&f(&sys, "rho[1,2]")).is_zero());
    assert_eq!(nf(&sys, "th[1,2]*th[2,2] + th[2,2]*th[1,2]"), f(&sys, "rho[1,2]"));
    assert!(nf(&sys, "th[1,2]*th[2,1] + th[2,1]*th[1,2]").is_zero());
    assert_eq!(nf(&sys, "M[2,1]"), f(&sys, "-M[1,2]"));
}

#[test]
fn ghostless_sl2_determinant_vanishes() {
    let m = sl2_ghostless_matrix();
    assert!(det3(&m).is_zero());
    let at = |s: &Scalar, l: i64, mu: i64, nu: i64| {
        s.substitute(Param::sym("lambda"), &Scalar::int(l))
            .and_then(|s| s.substitute(Param::sym("mu"), &Scalar::int(mu)))
            .and_then(|s| s.substitute(Param::sym("nu"), &Scalar::int(nu)))
            .unwrap()
    };
    let numeric = m.clone().map(|row| row.map(|s| at(&s, 1, 1, 1)));
    assert!(det3(&numeric).is_zero());
    let no_mu = m.map(|row| row.map(|s| at(&s, 2, 0, 5)));
    assert!(det3(&no_mu).is_zero());
}
