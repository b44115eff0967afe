use ncforms::cartan::{contract_chain, jacobi_residual, permutation_sign};
use ncforms::sample::{self, case_rng, Pool, Shape};
use ncforms::{apply, bracket, cartan_residual, contract, d_contract, differential, parse, Derivation, Form, Signature, Word};

fn f(text: &str, sig: &Signature) -> Form {
    parse(text, sig).unwrap()
}

/// Even derivation applied letter by letter, `X(y_i) = d(X_i)`.
fn apply_oracle(x: &Derivation, a: &Form, sig: &Signature) -> Form {
    let mut out = Form::zero();
    for (w, c) in a.terms() {
        let l = w.letters();
        for (i, &g) in l.iter().enumerate() {
            let img = match sig.kind(g) {
                ncforms::GenKind::Point => x.values[sig.point_index(g).unwrap()].clone(),
                ncforms::GenKind::Differential(p) => differential(&x.values[sig.point_index(p).unwrap()], sig),
                ncforms::GenKind::Other => unreachable!(),
            };
            let left = Form::term(Word::from_slice(&l[..i]), c.clone());
            out += &(&left * &img) * &Form::word(&l[i + 1..]);
        }
    }
    out
}

#[test]
fn apply_examples() {
    let sig = Signature::free_even(1);
    let x = Derivation::new(false, vec![f("x1^2", &sig)]);
    assert_eq!(apply(&x, &f("x1", &sig), &sig), f("x1^2", &sig));
    assert_eq!(apply(&x, &f("y1", &sig), &sig), f("y1*x1 + x1*y1", &sig));
    assert_eq!(apply(&x, &f("x1*x1", &sig), &sig), f("x1^2*x1 + x1*x1^2", &sig));
}

#[test]
fn apply_matches_oracle() {
    let sig = Signature::free_even(3);
    for case in 0..100 {
        let mut rng = case_rng(21, case);
        let x = sample::derivation(&mut rng, &sig, false, &Shape::new(2, 2), &Pool::rational());
        let a = sample::any_form(&mut rng, &sig, &Shape::new(4, 3), &Pool::rational());
        assert_eq!(apply(&x, &a, &sig), apply_oracle(&x, &a, &sig));
    }
}

#[test]
fn bracket_examples() {
    let sig = Signature::free_even(1);
    let x = Derivation::new(false, vec![f("x1", &sig)]);
    let z = Derivation::new(false, vec![f("1", &sig)]);
    assert_eq!(bracket(&x, &z, &sig).values, vec![f("-1", &sig)]);
    assert!(bracket(&x, &x, &sig).values[0].is_zero());
}

#[test]
fn graded_jacobi() {
    let sig = Signature::free(&[false, true]);
    for case in 0..60 {
        let mut rng = case_rng(4, case);
        let zs: Vec<Derivation> = (0..3)
            .map(|k| sample::derivation(&mut rng, &sig, (case >> k) & 1 == 1, &Shape::new(2, 2), &Pool::rational()))
            .collect();
        assert!(jacobi_residual(&zs[0], &zs[1], &zs[2], &sig).iter().all(Form::is_zero));
    }
}

#[test]
fn contraction_of_y_powers() {
    let sig = Signature::free_even(1);
    let (fx, gx) = (f("x1^2 + 1", &sig), f("3*x1", &sig));
    let fd = Derivation::new(false, vec![fx.clone()]);
    let gd = Derivation::new(false, vec![gx.clone()]);
    assert_eq!(contract(&fd, &f("y1", &sig), &sig), fx);
    let two = contract(&fd, &contract(&gd, &f("y1^2", &sig), &sig), &sig);
    assert_eq!(two, &(&gx * &fx) - &(&fx * &gx));
    assert_eq!(contract_chain(&[&gd, &fd], &f("y1^2", &sig), &sig), two);
    let dd = Derivation::new(false, vec![f("1", &sig)]);
    for l in 0..=3u32 {
        let even = f(&format!("y1^{}", 2 * l), &sig);
        let odd = f(&format!("y1^{}", 2 * l + 1), &sig);
        assert!(contract(&dd, &even, &sig).is_zero(), "l = {}", l);
        assert_eq!(contract(&dd, &odd, &sig), even, "l = {}", l);
    }
}

#[test]
fn d_contract_weights_by_y_degree() {
    let sig = Signature::free_even(3);
    assert_eq!(d_contract(&f("y1*y2", &sig), &sig), f("2*y1*y2", &sig));
    assert!(d_contract(&f("x1", &sig), &sig).is_zero());
    assert_eq!(d_contract(&f("x1*y1 + y1*y2*y3", &sig), &sig), f("x1*y1 + 3*y1*y2*y3", &sig));
}

#[test]
fn cartan_formula_low_orders() {
    let sig = Signature::free_even(2);
    let shape = Shape::new(2, 2);
    for l in 1..=3 {
        for case in 0..40 {
            let mut rng = case_rng(l as u64, case);
            let zs: Vec<Derivation> = (0..l).map(|_| sample::derivation(&mut rng, &sig, false, &shape, &Pool::rational())).collect();
            let refs: Vec<&Derivation> = zs.iter().collect();
            let a = sample::any_form(&mut rng, &sig, &Shape::new(4, 3), &Pool::rational());
            assert!(cartan_residual(&refs, &a, &sig).is_zero(), "l = {}, case {}", l, case);
        }
    }
    let graded = Signature::free(&[true, false]);
    for case in 0..40 {
        let mut rng = case_rng(99, case);
        let zs = [
            sample::derivation(&mut rng, &graded, true, &shape, &Pool::rational()),
            sample::derivation(&mut rng, &graded, false, &shape, &Pool::rational()),
            sample::derivation(&mut rng, &graded, false, &shape, &Pool::rational()),
        ];
        let a = sample::any_form(&mut rng, &graded, &Shape::new(4, 3), &Pool::rational());
        assert!(cartan_residual(&[&zs[0], &zs[1], &zs[2]], &a, &graded).is_zero(), "case {}", case);
    }
}

#[test]
fn permutation_signs() {
    assert!(!permutation_sign(&[0, 1, 2]));
    assert!(permutation_sign(&[1, 0, 2]));
    assert!(!permutation_sign(&[1, 2, 0]));
    assert!(!permutation_sign(&[3, 2, 1, 0]));
}
