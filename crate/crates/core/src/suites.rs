//! Seeded property suites. Each check runs its cases in parallel and keeps
//! the failing case with the smallest index as the counterexample.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::calculus::{
    a_t, differential, ext_differential, homotopy_check, homotopy_check_in, homotopy_i, poincare_primitive,
    ExtendedForm,
};
use crate::cartan::{
    cartan_residual, commutes_with_d_residual, contract_exact_residual, contract_leibniz_residual,
    contract_lie_residual, contract_permutation_residual, contract_swap_residual, d_contract,
    d_contract_leibniz_residual, jacobi_residual, leibniz_residual, lie_derivative_residual, lie_exchange_residual,
    y_prefix_residual, Derivation,
};
use crate::error::{Error, Result};
use crate::expr::print;
use crate::forms::{bigrade, Form, Gen, GenKind, Signature};
use crate::liecomplex::{self, DiscreteVariant, Poly};
use crate::qspace::{self, GroupIndex, QMatrix};
use crate::quantum::{self, LieData};
use crate::rewrite::{check_local_confluence, RewriteSystem, Strategy};
use crate::sample::{self, case_rng, Pool, Shape};
use crate::scalar::Scalar;

pub const SUITES: [&str; 9] =
    ["free-calculus", "graded-calculus", "cartan", "weyl", "clebsch", "complexes", "qspace", "discrete", "confluence"];

#[derive(Clone, Debug)]
pub struct Config {
    pub seed: u64,
    pub cases: usize,
    pub max_deg: usize,
}

impl Default for Config {
    fn default() -> Config {
        Config { seed: 0, cases: 100, max_deg: 4 }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct Counterexample {
    pub check: String,
    pub case: u64,
    pub input: String,
    pub residual: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub cases: usize,
    pub failed: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
}

impl CheckResult {
    pub fn is_ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    pub fn is_ok(&self) -> bool {
        self.checks.iter().all(CheckResult::is_ok)
    }

    pub fn counterexample(&self) -> Option<&Counterexample> {
        self.checks.iter().find_map(|c| c.counterexample.as_ref())
    }

    /// `{ok, residuals, counterexample?}`.
    pub fn to_json(&self) -> serde_json::Value {
        let residuals: Vec<_> = self
            .checks
            .iter()
            .map(|c| json!({"check": c.check, "cases": c.cases, "failed": c.failed}))
            .collect();
        let mut v = json!({"ok": self.is_ok(), "suite": self.suite, "seed": self.seed, "residuals": residuals});
        if let Some(ce) = self.counterexample() {
            v["counterexample"] = serde_json::to_value(ce).expect("serializable");
        }
        v
    }

    pub fn find(&self, check: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check == check)
    }
}

/// What a failing case reports.
pub struct Fail {
    pub input: String,
    pub residual: String,
}

fn fail_if(input: impl FnOnce() -> String, residual: &Form, sig: &Signature) -> Option<Fail> {
    (!residual.is_zero()).then(|| Fail { input: input(), residual: print(residual, sig) })
}

fn fail_msg(input: impl FnOnce() -> String, msg: impl Into<String>) -> Option<Fail> {
    Some(Fail { input: input(), residual: msg.into() })
}

fn fail_ext(input: impl FnOnce() -> String, e: &ExtendedForm, sig: &Signature) -> Option<Fail> {
    if e.is_zero() {
        return None;
    }
    let parts: Vec<String> = e
        .plus
        .iter()
        .map(|(m, f)| format!("t^{}: {}", m, print(f, sig)))
        .chain(e.minus.iter().map(|(m, f)| format!("tau t^{}: {}", m, print(f, sig))))
        .collect();
    Some(Fail { input: input(), residual: parts.join("; ") })
}

fn name_salt(name: &str) -> u64 {
    name.bytes().fold(0xcbf2_9ce4_8422_2325u64, |h, b| (h ^ b as u64).wrapping_mul(0x0100_0000_01b3))
}

/// Run `cases` seeded cases of a property.
pub fn random_check(
    name: &str,
    cfg: &Config,
    cases: usize,
    f: impl Fn(&mut ChaCha8Rng) -> Option<Fail> + Sync,
) -> CheckResult {
    let seed = cfg.seed ^ name_salt(name);
    let fails: Vec<(u64, Fail)> = (0..cases as u64)
        .into_par_iter()
        .filter_map(|c| f(&mut case_rng(seed, c)).map(|x| (c, x)))
        .collect();
    finish(name, cases, fails)
}

/// Run a property over a fixed list of inputs.
pub fn exhaustive_check<T: Sync>(name: &str, items: &[T], f: impl Fn(&T) -> Option<Fail> + Sync) -> CheckResult {
    let fails: Vec<(u64, Fail)> =
        items.par_iter().enumerate().filter_map(|(i, t)| f(t).map(|x| (i as u64, x))).collect();
    finish(name, items.len(), fails)
}

fn finish(name: &str, cases: usize, fails: Vec<(u64, Fail)>) -> CheckResult {
    let failed = fails.len();
    let counterexample = fails.into_iter().min_by_key(|(c, _)| *c).map(|(case, f)| Counterexample {
        check: name.to_owned(),
        case,
        input: f.input,
        residual: f.residual,
    });
    CheckResult { check: name.to_owned(), cases, failed, counterexample }
}

pub fn run(suite: &str, cfg: &Config) -> Result<SuiteReport> {
    let checks = match suite {
        "free-calculus" => calculus_suite(&Signature::free_even(3), cfg),
        "graded-calculus" => calculus_suite(&Signature::free(&[false, true, true]), cfg),
        "cartan" => cartan_suite(cfg),
        "weyl" => weyl_suite(cfg),
        "clebsch" => clebsch_suite(cfg)?,
        "complexes" => complexes_suite(cfg)?,
        "qspace" => qspace_suite(cfg)?,
        "discrete" => discrete_suite(cfg)?,
        "confluence" => confluence_suite(&shipped_presets()?, cfg),
        _ => return Err(Error::Invalid(format!("unknown suite `{}`; known: {}", suite, SUITES.join(", ")))),
    };
    Ok(SuiteReport { suite: suite.to_owned(), seed: cfg.seed, checks })
}

fn form_shape(cfg: &Config) -> Shape {
    Shape::new(cfg.max_deg, 4)
}

fn show<'a>(f: &'a Form, sig: &'a Signature) -> impl FnOnce() -> String + 'a {
    move || print(f, sig)
}

fn homogeneous_pair(rng: &mut ChaCha8Rng, sig: &Signature, shape: &Shape, pool: &Pool) -> (Form, Form) {
    let letters: Vec<Gen> = sig.gens().collect();
    let pa = rng.gen_bool(0.5);
    let pb = rng.gen_bool(0.5);
    (
        sample::homogeneous(rng, &letters, sig, pa, shape, pool),
        sample::homogeneous(rng, &letters, sig, pb, shape, pool),
    )
}

fn calculus_suite(sig: &Signature, cfg: &Config) -> Vec<CheckResult> {
    let shape = form_shape(cfg);
    let pool = Pool::rational();
    let letters: Vec<Gen> = sig.gens().collect();
    vec![
        random_check("d-squared", cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            fail_if(show(&a, sig), &differential(&differential(&a, sig), sig), sig)
        }),
        random_check("leibniz", cfg, cfg.cases, |rng| {
            let (a, b) = homogeneous_pair(rng, sig, &shape, &pool);
            let odd = sig.form_parity(&a).unwrap_or(false);
            let tail = &a * &differential(&b, sig);
            let r = differential(&(&a * &b), sig) - &differential(&a, sig) * &b - if odd { -tail } else { tail };
            fail_if(|| format!("{} ; {}", print(&a, sig), print(&b, sig)), &r, sig)
        }),
        random_check("bidegree", cfg, cfg.cases, |rng| {
            let py = rng.gen_range(0..=3);
            let a = sample::of_degree(rng, sig, py, &shape, &pool);
            let da = differential(&a, sig);
            let ok = bigrade(&a, sig).into_iter().all(|((px, py), part)| {
                let dpart = differential(&part, sig);
                let ok = dpart.terms().all(|(w, _)| {
                    let (qx, qy) = sig.bidegree(w);
                    qy == py + 1 && qx + 1 == px
                });
                ok
            });
            if ok {
                None
            } else {
                fail_msg(show(&a, sig), format!("d(a) = {}", print(&da, sig)))
            }
        }),
        random_check("at-commutes-d", cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            let lhs = ext_differential(&a_t(&a, sig).unwrap(), sig);
            let rhs = a_t(&differential(&a, sig), sig).unwrap();
            fail_ext(show(&a, sig), &lhs.sub(&rhs), sig)
        }),
        random_check("homotopy", cfg, cfg.cases, |rng| {
            let e = sample::extended(rng, &letters, &shape, &pool, 3);
            fail_if(|| format!("{:?}", e), &homotopy_check(&e, sig), sig)
        }),
        random_check("poincare", cfg, cfg.cases, |rng| {
            let py = rng.gen_range(0..=3);
            let nu = sample::of_degree(rng, sig, py, &shape, &pool);
            let c = pool.draw(rng);
            poincare_round_trip(&nu, &c, sig, None)
        }),
    ]
}

/// `a = dν + c` must come back as `(ν', c)` with `dν' = dν`.
fn poincare_round_trip(nu: &Form, c: &Scalar, sig: &Signature, sys: Option<&RewriteSystem>) -> Option<Fail> {
    let norm = |f: &Form| sys.map_or_else(|| f.clone(), |s| s.normalize(f));
    let dnu = norm(&differential(nu, sig));
    let a = &dnu + &Form::scalar(c.clone());
    let input = || format!("nu = {}, c = {}", print(nu, sig), c);
    match poincare_primitive(&a, sig, sys) {
        Err(e) => fail_msg(input, e.to_string()),
        Ok((p, r)) => {
            if r != *c || r != a.constant() {
                return fail_msg(input, format!("remainder {} != {}", r, c));
            }
            fail_if(input, &(norm(&differential(&p, sig)) - dnu), sig)
        }
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for at in 0..=p.len() {
            let mut q = p.clone();
            q.insert(at, n - 1);
            out.push(q);
        }
    }
    out
}

fn cartan_suite(cfg: &Config) -> Vec<CheckResult> {
    let even = Signature::free_even(3);
    let graded = Signature::free(&[false, true, true]);
    let fshape = Shape::new(cfg.max_deg.min(4), 3);
    let vshape = Shape::new(2, 2);
    let pool = Pool::rational();
    let cases = cfg.cases.max(50);
    let field = |rng: &mut ChaCha8Rng, sig: &Signature, graded: bool| {
        let parity = graded && rng.gen_bool(0.5);
        sample::derivation(rng, sig, parity, &vshape, &pool)
    };
    let fields = |rng: &mut ChaCha8Rng, sig: &Signature, graded: bool, l: usize| -> Vec<Derivation> {
        (0..l).map(|_| field(rng, sig, graded)).collect()
    };
    let any = |rng: &mut ChaCha8Rng, sig: &Signature| sample::any_form(rng, sig, &fshape, &pool);
    let fmt_fields = |zs: &[Derivation], sig: &Signature| -> String {
        zs.iter()
            .map(|z| {
                let v: Vec<String> = z.values.iter().map(|f| print(f, sig)).collect();
                format!("{}[{}]", if z.parity { "odd" } else { "even" }, v.join(", "))
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let input = |zs: &[Derivation], a: &Form, sig: &Signature| format!("fields {} ; form {}", fmt_fields(zs, sig), print(a, sig));

    let mut out = Vec::new();
    for (tag, sig, is_graded) in [("", &even, false), ("graded-", &graded, true)] {
        let name = |s: &str| format!("{}{}", tag, s);
        out.push(random_check(&name("leibniz"), cfg, cases, |rng| {
            let x = field(rng, sig, is_graded);
            let (a, b) = homogeneous_pair(rng, sig, &fshape, &pool);
            fail_if(|| input(std::slice::from_ref(&x), &(&a * &b), sig), &leibniz_residual(&x, &a, &b, sig), sig)
        }));
        out.push(random_check(&name("jacobi"), cfg, cases, |rng| {
            let zs = fields(rng, sig, is_graded, 3);
            let r = jacobi_residual(&zs[0], &zs[1], &zs[2], sig);
            let bad = r.into_iter().find(|f| !f.is_zero()).unwrap_or_default();
            fail_if(|| fmt_fields(&zs, sig), &bad, sig)
        }));
        out.push(random_check(&name("commutes-with-d"), cfg, cases, |rng| {
            let x = field(rng, sig, is_graded);
            let a = any(rng, sig);
            fail_if(|| input(std::slice::from_ref(&x), &a, sig), &commutes_with_d_residual(&x, &a, sig), sig)
        }));
        out.push(random_check(&name("contract-leibniz"), cfg, cases, |rng| {
            let x = field(rng, sig, is_graded);
            let (a, b) = homogeneous_pair(rng, sig, &fshape, &pool);
            fail_if(|| input(std::slice::from_ref(&x), &(&a * &b), sig), &contract_leibniz_residual(&x, &a, &b, sig), sig)
        }));
        out.push(random_check(&name("contract-exact"), cfg, cases, |rng| {
            let x = field(rng, sig, is_graded);
            let f = sample::of_degree(rng, sig, 0, &fshape, &pool);
            fail_if(|| input(std::slice::from_ref(&x), &f, sig), &contract_exact_residual(&x, &f, sig), sig)
        }));
        out.push(random_check(&name("lie-derivative"), cfg, cases, |rng| {
            let x = field(rng, sig, is_graded);
            let a = any(rng, sig);
            fail_if(|| input(std::slice::from_ref(&x), &a, sig), &lie_derivative_residual(&x, &a, sig), sig)
        }));
        out.push(random_check(&name("contract-swap"), cfg, cases, |rng| {
            let zs = fields(rng, sig, is_graded, 2);
            let a = any(rng, sig);
            fail_if(|| input(&zs, &a, sig), &contract_swap_residual(&zs[0], &zs[1], &a, sig), sig)
        }));
        out.push(random_check(&name("contract-lie"), cfg, cases, |rng| {
            let zs = fields(rng, sig, is_graded, 2);
            let a = any(rng, sig);
            fail_if(|| input(&zs, &a, sig), &contract_lie_residual(&zs[0], &zs[1], &a, sig), sig)
        }));
        out.push(random_check(&name("lie-exchange"), cfg, cases, |rng| {
            let l = rng.gen_range(1..=3);
            let zs = fields(rng, sig, is_graded, l + 1);
            let a = any(rng, sig);
            let refs: Vec<&Derivation> = zs[1..].iter().collect();
            fail_if(|| input(&zs, &a, sig), &lie_exchange_residual(&zs[0], &refs, &a, sig), sig)
        }));
        for l in 1..=4 {
            out.push(random_check(&name(&format!("cartan-{}", l)), cfg, cases, |rng| {
                let zs = fields(rng, sig, is_graded, l);
                let a = any(rng, sig);
                let refs: Vec<&Derivation> = zs.iter().collect();
                fail_if(|| input(&zs, &a, sig), &cartan_residual(&refs, &a, sig), sig)
            }));
        }
    }
    out.push(random_check("contract-permutations", cfg, cases, |rng| {
        let l = rng.gen_range(2..=4);
        let zs = fields(rng, &even, false, l);
        let a = sample::of_degree(rng, &even, l as u32, &Shape::new(cfg.max_deg.max(l), 3), &pool);
        let refs: Vec<&Derivation> = zs.iter().collect();
        permutations(l).into_iter().find_map(|p| {
            let r = contract_permutation_residual(&refs, &p, &a, &even);
            fail_if(|| format!("{:?} ; {}", p, input(&zs, &a, &even)), &r, &even)
        })
    }));
    out.push(random_check("y-prefix", cfg, cases, |rng| {
        let l = rng.gen_range(1..=3);
        let zs = fields(rng, &even, false, l);
        let a = any(rng, &even);
        let i = rng.gen_range(0..3);
        let refs: Vec<&Derivation> = zs.iter().collect();
        fail_if(|| format!("y{} ; {}", i + 1, input(&zs, &a, &even)), &y_prefix_residual(&refs, i, &a, &even), &even)
    }));
    out.push(random_check("graded-d-contract-leibniz", cfg, cases, |rng| {
        let (a, b) = homogeneous_pair(rng, &graded, &fshape, &pool);
        fail_if(|| format!("{} ; {}", print(&a, &graded), print(&b, &graded)), &d_contract_leibniz_residual(&a, &b, &graded), &graded)
    }));
    out.push(random_check("graded-d-contract-degree", cfg, cases, |rng| {
        let mut a = Form::zero();
        let mut weighted = Form::zero();
        for k in 0..=3u32 {
            let part = sample::of_degree(rng, &graded, k, &fshape, &pool);
            weighted += part.scale_int(k as i64);
            a += part;
        }
        fail_if(show(&a, &graded), &(d_contract(&a, &graded) - weighted), &graded)
    }));
    out
}

fn weyl_suite(cfg: &Config) -> Vec<CheckResult> {
    let pool = Pool::with_h();
    let shape = form_shape(cfg);
    let sys2 = quantum::weyl_algebra(2);
    let sig = sys2.sig();
    let mut out = Vec::new();
    let pq: Vec<(RewriteSystem, usize)> = (1..=3).flat_map(|n| (0..n).map(move |i| (quantum::weyl_algebra(n), i))).collect();
    out.push(exhaustive_check("normal-form", &pq, |(sys, i)| {
        let s = sys.sig();
        let (p, q) = (s.by_name(&format!("p{}", i + 1)).unwrap(), s.by_name(&format!("q{}", i + 1)).unwrap());
        let expect = Form::word(&[q, p]) + Form::scalar(Scalar::h());
        fail_if(|| format!("p{0}*q{0}", i + 1), &(sys.normalize(&Form::word(&[p, q])) - expect), s)
    }));
    out.push(random_check("d-squared", cfg, cfg.cases, |rng| {
        let a = sample::any_form(rng, sig, &shape, &pool);
        fail_if(show(&a, sig), &sys2.d(&sys2.d(&a)), sig)
    }));
    out.push(random_check("mixed-partials", cfg, cfg.cases, |rng| {
        let h = sample::of_degree(rng, sig, 0, &shape, &pool);
        let pts = sig.points();
        for &u in pts {
            for &v in pts {
                let uv = quantum::weyl_partial(&quantum::weyl_partial(&h, u, &sys2), v, &sys2);
                let vu = quantum::weyl_partial(&quantum::weyl_partial(&h, v, &sys2), u, &sys2);
                let r = uv - vu;
                if !r.is_zero() {
                    return fail_if(|| format!("{} ; {}, {}", print(&h, sig), sig.name(u), sig.name(v)), &r, sig);
                }
            }
        }
        None
    }));
    out.push(random_check("partials-reassemble", cfg, cfg.cases, |rng| {
        let h = sample::of_degree(rng, sig, 0, &shape, &pool);
        let mut sum = Form::zero();
        for &u in sig.points() {
            sum += &sig.d_image(u).clone() * &quantum::weyl_partial(&h, u, &sys2);
        }
        fail_if(show(&h, sig), &(sys2.d(&h) - sys2.normalize(&sum)), sig)
    }));
    for n in 1..=2 {
        let sys = quantum::weyl_algebra(n);
        let symbol = sys.symbol_system();
        let words = quantum::normal_words(&sys, 5);
        out.push(exhaustive_check(&format!("transfer-n{}", n), &words, |w| {
            let f = Form::term(w.clone(), Scalar::one());
            let s = sys.sig();
            if sys.normalize(&f) != f {
                return fail_msg(|| print(&f, s), "not a normal form");
            }
            fail_if(|| print(&f, s), &(sys.d(&f) - symbol.d(&f)), s)
        }));
    }
    out.push(random_check("quantum-poincare", cfg, cfg.cases, |rng| {
        let py = rng.gen_range(0..=3);
        let nu = sys2.normalize(&sample::of_degree(rng, sig, py, &shape, &pool));
        let c = pool.draw(rng);
        let dnu = sys2.d(&nu);
        let a = &dnu + &Form::scalar(c.clone());
        let input = || format!("nu = {}, c = {}", print(&nu, sig), c);
        match quantum::quantum_poincare(&a, &sys2) {
            Err(e) => fail_msg(input, e.to_string()),
            Ok((p, r)) if r == c => fail_if(input, &(sys2.d(&p) - dnu), sig),
            Ok((_, r)) => fail_msg(input, format!("remainder {} != {}", r, c)),
        }
    }));
    out
}

fn clebsch_suite(_cfg: &Config) -> Result<Vec<CheckResult>> {
    let k = Scalar::sym("k");
    let mut out = Vec::new();
    for name in LieData::PRESETS {
        let data = LieData::preset(name)?;
        let cl = quantum::clebsch_build(&data, &k, None)?;
        for rescaled in [false, true] {
            let label = format!("{}{}", name, if rescaled { "-rescaled" } else { "" });
            out.push(exhaustive_check(&label, &[()], |_| {
                let r = quantum::clebsch_verify(&cl, rescaled);
                r.failures
                    .first()
                    .and_then(|(what, f)| fail_if(|| what.clone(), f, cl.sys.sig()))
            }));
        }
    }
    Ok(out)
}

/// A random square matrix over small rationals.
pub fn random_matrix(rng: &mut ChaCha8Rng, m: usize) -> Vec<Vec<Scalar>> {
    let vals = [Scalar::int(0), Scalar::int(1), Scalar::int(-1), Scalar::int(2), Scalar::frac(1, 2), Scalar::frac(-3, 2)];
    (0..m).map(|_| (0..m).map(|_| vals.choose(rng).unwrap().clone()).collect()).collect()
}

fn audit_check(name: &str, sys: &RewriteSystem) -> CheckResult {
    exhaustive_check(name, &[()], |_| audit_failure(sys))
}

fn audit_failure(sys: &RewriteSystem) -> Option<Fail> {
    let a = liecomplex::audit(sys);
    let s = sys.sig();
    if let Some(f) = a.d_compat.failures.first() {
        return fail_if(|| format!("d of relation {}*{}", s.name(f.left.0), s.name(f.left.1)), &f.residual, s);
    }
    if let Some((g, f)) = a.d_squared.first() {
        return fail_if(|| format!("d(d({}))", s.name(*g)), f, s);
    }
    if let Some(o) = a.confluence.mismatches.first() {
        return fail_if(|| print(&Form::term(o.word.clone(), Scalar::one()), s), &(&o.via_left - &o.via_right), s);
    }
    None
}

fn complexes_suite(cfg: &Config) -> Result<Vec<CheckResult>> {
    let mut out = Vec::new();
    let shape = Shape::new(cfg.max_deg.min(4), 3);
    let pool = Pool::rational();
    for name in liecomplex::PRESETS {
        let sys = liecomplex::preset(name)?;
        out.push(audit_check(&format!("{}-audit", name), &sys));
        let sig = sys.sig();
        out.push(random_check(&format!("{}-d-squared", name), cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            fail_if(show(&a, sig), &sys.d(&sys.d(&a)), sig)
        }));
    }
    for part in [liecomplex::GlPart::Lower, liecomplex::GlPart::UpperNilpotent, liecomplex::GlPart::LowerNilpotent] {
        for v in [liecomplex::GlVariant::Left, liecomplex::GlVariant::Right] {
            let sys = liecomplex::gl_subcomplex(3, v, part)?;
            out.push(audit_check(&format!("{}-audit", sys.name()), &sys));
        }
    }
    out.push(random_check("ehrenfest3-random-audit", cfg, cfg.cases.min(20), |rng| {
        let a = random_matrix(rng, 3);
        match liecomplex::ehrenfest_complex(&a) {
            Err(e) => fail_msg(|| format!("{:?}", a), e.to_string()),
            Ok(sys) => audit_failure(&sys).map(|f| Fail { input: format!("A = {:?}: {}", a, f.input), residual: f.residual }),
        }
    }));
    let ns = [2usize, 3];
    out.push(exhaustive_check("cartan-involution", &ns, |&n| match liecomplex::check_cartan_involution(n) {
        Ok(true) => None,
        Ok(false) => fail_msg(|| format!("gl{}", n), "transformed rule sets differ"),
        Err(e) => fail_msg(|| format!("gl{}", n), e.to_string()),
    }));
    out.push(exhaustive_check("sl2-ghostless-det", &[()], |_| {
        let det = liecomplex::sl2_ghostless_check();
        (!det.is_zero()).then(|| Fail { input: "det".into(), residual: det.to_string() })
    }));
    Ok(out)
}

fn q_input(h: &Form, sig: &Signature) -> String {
    print(h, sig)
}

fn qspace_suite(cfg: &Config) -> Result<Vec<CheckResult>> {
    let n = 3;
    let qm = QMatrix::symbolic(n);
    let sys = qspace::q_algebra(&qm);
    let sig = sys.sig();
    let pool = Pool::with_q(n);
    let shape = form_shape(cfg);
    let letters: Vec<Gen> = sig.gens().collect();
    let xs: Vec<Gen> = sig.points().to_vec();
    let mut out = vec![
        exhaustive_check("at-compatible", &[()], |_| {
            crate::calculus::check_at_compatible(&sys).err().and_then(|e| fail_msg(|| "relations".into(), e.to_string()))
        }),
        audit_check("audit", &sys),
        random_check("d-squared", cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            fail_if(show(&a, sig), &sys.d(&sys.d(&a)), sig)
        }),
        random_check("homotopy", cfg, cfg.cases, |rng| {
            let e = sample::extended(rng, &letters, &shape, &pool, 3);
            fail_if(|| format!("{:?}", e), &homotopy_check_in(&e, &sys), sig)
        }),
        random_check("poincare", cfg, cfg.cases, |rng| {
            let py = rng.gen_range(0..=3);
            let nu = sys.normalize(&sample::of_degree(rng, sig, py, &shape, &pool));
            let c = pool.draw(rng);
            poincare_round_trip(&nu, &c, sig, Some(&sys))
        }),
        random_check("d-via-partials", cfg, cfg.cases, |rng| {
            let h = sample::form(rng, &xs, &Shape::new(cfg.max_deg.max(5), 4), &pool);
            match qspace::q_d_check(&h, &qm, &sys) {
                Ok(r) => fail_if(|| q_input(&h, sig), &r, sig),
                Err(e) => fail_msg(|| q_input(&h, sig), e.to_string()),
            }
        }),
        random_check("partials-commute", cfg, cfg.cases, |rng| {
            let h = sample::form(rng, &xs, &shape, &pool);
            for k in 0..n {
                for l in 0..n {
                    match qspace::q_partials_commute(&h, k, l, &qm, &sys) {
                        Ok(r) if r.is_zero() => {}
                        Ok(r) => return fail_if(|| format!("{} ; k={}, l={}", print(&h, sig), k + 1, l + 1), &r, sig),
                        Err(e) => return fail_msg(|| q_input(&h, sig), e.to_string()),
                    }
                }
            }
            None
        }),
        random_check("partial-ideal", cfg, cfg.cases, |rng| {
            let w = Form::term(sample::word(rng, &xs, cfg.max_deg), Scalar::one());
            for i in 0..n {
                for j in 0..n {
                    if i == j {
                        continue;
                    }
                    for k in 0..n {
                        match qspace::q_ideal_residual(i, j, k, &w, &qm, sig) {
                            Ok(r) if r.is_zero() => {}
                            Ok(r) => {
                                return fail_if(|| format!("{} ; i={}, j={}, k={}", print(&w, sig), i + 1, j + 1, k + 1), &r, sig)
                            }
                            Err(e) => return fail_msg(|| q_input(&w, sig), e.to_string()),
                        }
                    }
                }
            }
            None
        }),
    ];
    for m in [2u32, 3] {
        out.extend(equivariance_checks(&GroupIndex::cyclic(m), &format!("Z{}-", m), cfg)?);
    }
    Ok(out)
}

fn equivariance_checks(group: &GroupIndex, tag: &str, cfg: &Config) -> Result<Vec<CheckResult>> {
    let ga = qspace::group_algebra(&QMatrix::symbolic(2), group, &[])?;
    let sys = &ga.sys;
    let sig = sys.sig();
    let pool = Pool::with_q(2);
    let shape = Shape::new(cfg.max_deg.min(4), 3);
    let letters: Vec<Gen> = sig.gens().collect();
    let name = |s: &str| format!("{}{}", tag, s);
    let ga = &ga;
    let each_g = |a: &Form, f: &dyn Fn(usize) -> Form| -> Option<Fail> {
        group.elements().find_map(|g| fail_if(|| format!("g={} ; {}", group.name(g), print(a, sig)), &f(g), sig))
    };
    Ok(vec![
        audit_check(&name("audit"), sys),
        exhaustive_check(&name("rules-invariant"), &group.elements().collect::<Vec<_>>(), |&g| {
            sys.rules().iter().find_map(|(a, b, r)| {
                let rel = &Form::word(&[*a, *b]) - r;
                fail_if(|| format!("g={} ; {}*{}", group.name(g), sig.name(*a), sig.name(*b)), &sys.normalize(&ga.act(g, &rel)), sig)
            })
        }),
        random_check(&name("d-squared"), cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            fail_if(show(&a, sig), &sys.d(&sys.d(&a)), sig)
        }),
        random_check(&name("commutes-with-d"), cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            each_g(&a, &|g| sys.normalize(&(ga.act(g, &sys.d(&a)) - sys.d(&ga.act(g, &a)))))
        }),
        random_check(&name("commutes-with-at"), cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            group.elements().find_map(|g| {
                let lhs = ga.act_ext(g, &a_t(&a, sig).unwrap()).normalize(sys);
                let rhs = a_t(&ga.act(g, &a), sig).unwrap().normalize(sys);
                fail_ext(|| format!("g={} ; {}", group.name(g), print(&a, sig)), &lhs.sub(&rhs), sig)
            })
        }),
        random_check(&name("commutes-with-i"), cfg, cfg.cases, |rng| {
            let e = sample::extended(rng, &letters, &shape, &pool, 3);
            group.elements().find_map(|g| {
                let r = sys.normalize(&(ga.act(g, &homotopy_i(&e)) - homotopy_i(&ga.act_ext(g, &e))));
                fail_if(|| format!("g={} ; {:?}", group.name(g), e), &r, sig)
            })
        }),
        random_check(&name("primitive-equivariant"), cfg, cfg.cases, |rng| {
            let py = rng.gen_range(1..=3);
            let w = sample::of_degree(rng, sig, py, &shape, &pool);
            each_g(&w, &|g| {
                let lhs = ga.act(g, &qspace::equivariant_primitive(&w, ga).unwrap());
                let rhs = qspace::equivariant_primitive(&ga.act(g, &w), ga).unwrap();
                sys.normalize(&(lhs - rhs))
            })
        }),
        random_check(&name("decomposition"), cfg, cfg.cases, |rng| {
            let py = rng.gen_range(1..=3);
            let w = sys.normalize(&sample::of_degree(rng, sig, py, &shape, &pool));
            let nu = qspace::equivariant_primitive(&w, ga).unwrap();
            let rest = qspace::equivariant_primitive(&sys.d(&w), ga).unwrap();
            fail_if(show(&w, sig), &sys.normalize(&(&w - &sys.d(&nu) - rest)), sig)
        }),
        random_check(&name("orbit-equivalence"), cfg, cfg.cases, |rng| {
            let a = sample::any_form(rng, sig, &shape, &pool);
            let g = rng.gen_range(0..group.order());
            if qspace::equivalent(&a, &ga.act(g, &a), ga) {
                None
            } else {
                fail_msg(|| format!("g={} ; {}", group.name(g), print(&a, sig)), "translate not equivalent")
            }
        }),
    ])
}

fn random_poly(rng: &mut ChaCha8Rng, max_deg: usize, pool: &Pool) -> Poly {
    let mut p = Poly::new();
    for _ in 0..rng.gen_range(1..=4) {
        let e = (rng.gen_range(0..=max_deg as u32), rng.gen_range(0..=max_deg as u32));
        let c = pool.draw(rng);
        let s = p.remove(&e).unwrap_or_default() + c;
        if !s.is_zero() {
            p.insert(e, s);
        }
    }
    p
}

fn discrete_suite(cfg: &Config) -> Result<Vec<CheckResult>> {
    let pool = Pool::rational();
    let mut out = Vec::new();
    for (tag, v) in [("forward", DiscreteVariant::Forward), ("backward", DiscreteVariant::Backward)] {
        let sys = liecomplex::discrete_system(v);
        let sig = sys.sig();
        out.push(random_check(&format!("{}-matches-complex", tag), cfg, cfg.cases, |rng| {
            let f = liecomplex::from_poly(&random_poly(rng, cfg.max_deg, &pool), v, &sys);
            match liecomplex::discrete_d(&f, v, &sys) {
                Ok(df) => fail_if(show(&f, sig), &(df - sys.d(&f)), sig),
                Err(e) => fail_msg(show(&f, sig), e.to_string()),
            }
        }));
        out.push(random_check(&format!("{}-exactness", tag), cfg, cfg.cases, |rng| {
            let f = liecomplex::from_poly(&random_poly(rng, cfg.max_deg, &pool), v, &sys);
            let w = liecomplex::discrete_d(&f, v, &sys).unwrap();
            match liecomplex::discrete_poincare(&w, v, &sys) {
                Err(e) => fail_msg(show(&w, sig), e.to_string()),
                Ok(p) => {
                    let dp = liecomplex::discrete_d(&p, v, &sys).unwrap();
                    let r = sys.normalize(&(dp - w.clone()));
                    if !r.is_zero() {
                        return fail_if(show(&w, sig), &r, sig);
                    }
                    let diff = sys.normalize(&(p - f));
                    if diff.terms().any(|(w, _)| !w.is_empty()) {
                        return fail_msg(show(&w, sig), format!("primitive differs by {}", print(&diff, sig)));
                    }
                    None
                }
            }
        }));
        out.push(random_check(&format!("{}-rejects-open", tag), cfg, cfg.cases, |rng| {
            let [dx, dy] = ["dx", "dy"].map(|s| sig.by_name(s).unwrap());
            let a = liecomplex::from_poly(&random_poly(rng, cfg.max_deg, &pool), v, &sys);
            let b = liecomplex::from_poly(&random_poly(rng, cfg.max_deg, &pool), v, &sys);
            let w = sys.normalize(&(&Form::gen(dy) * &a + &Form::gen(dx) * &b));
            let closed = sys.d(&w).is_zero();
            match (liecomplex::discrete_poincare(&w, v, &sys), closed) {
                (Ok(_), true) | (Err(Error::NotClosed(_)), false) => None,
                (Ok(_), false) => fail_msg(show(&w, sig), "primitive returned for a non-closed form"),
                (Err(e), _) => fail_msg(show(&w, sig), e.to_string()),
            }
        }));
    }
    out.push(random_check("antidifference", cfg, cfg.cases, |rng| {
        let deg = rng.gen_range(0..=cfg.max_deg + 2);
        let g: Vec<Scalar> = (0..=deg).map(|_| pool.draw(rng)).collect();
        let t = liecomplex::antidifference(&g);
        let input = || format!("{:?}", g);
        if !liecomplex::eval_x(&t, 0).is_zero() {
            return fail_msg(input, "nonzero at 0");
        }
        (-4..=6).find_map(|x| {
            let lhs = &liecomplex::eval_x(&t, x + 1) - &liecomplex::eval_x(&t, x);
            let rhs = liecomplex::eval_x(&g, x);
            (lhs != rhs).then(|| Fail { input: input(), residual: format!("at x={}: {} != {}", x, lhs, rhs) })
        })
    }));
    Ok(out)
}

/// `x < y` with `yx → xy + x` and `yy → 0`: the overlap `yyx` does not resolve.
pub fn nonconfluent_example() -> RewriteSystem {
    let mut sig = Signature::new(crate::scalar::ParamTable::standard());
    let x = sig.add("x", false, 0, GenKind::Other);
    let y = sig.add("y", false, 0, GenKind::Other);
    let mut rules = BTreeMap::new();
    rules.insert((y, x), Form::word(&[x, y]) + Form::gen(x));
    rules.insert((y, y), Form::zero());
    RewriteSystem::new("nonconfluent", sig, vec![x, y], rules).expect("engineered presentation")
}

/// Every rewrite system the library ships.
pub fn shipped_presets() -> Result<Vec<RewriteSystem>> {
    let mut out = vec![
        quantum::weyl_algebra(1),
        quantum::weyl_algebra(2),
        qspace::q_algebra(&QMatrix::symbolic(3)),
        qspace::group_algebra(&QMatrix::symbolic(2), &GroupIndex::cyclic(2), &[])?.sys,
        qspace::group_algebra(&QMatrix::symbolic(2), &GroupIndex::cyclic(3), &[])?.sys,
        qspace::group_algebra(&QMatrix::symbolic(1), &GroupIndex::new(vec![2, 2])?, &[])?.sys,
    ];
    for name in LieData::PRESETS {
        let data = LieData::preset(name)?;
        let mut sys = quantum::clebsch_algebra(&data.parities);
        sys.rename(&format!("clebsch-{}", name));
        out.push(sys);
    }
    for name in liecomplex::PRESETS {
        out.push(liecomplex::preset(name)?);
    }
    Ok(out)
}

/// Local confluence, strategy independence and idempotence per system.
pub fn confluence_suite(systems: &[RewriteSystem], cfg: &Config) -> Vec<CheckResult> {
    let mut out = Vec::new();
    for sys in systems {
        let sig = sys.sig();
        let letters: Vec<Gen> = sig.gens().collect();
        let name = sys.name();
        out.push(exhaustive_check(&format!("{}-local-confluence", name), &[()], |_| {
            let r = check_local_confluence(sys, 3);
            r.mismatches.first().and_then(|o| {
                fail_if(|| print(&Form::term(o.word.clone(), Scalar::one()), sig), &(&o.via_left - &o.via_right), sig)
            })
        }));
        let word_form = |rng: &mut ChaCha8Rng| Form::term(sample::word(rng, &letters, cfg.max_deg + 1), Scalar::one());
        out.push(random_check(&format!("{}-strategy-independence", name), cfg, 2 * cfg.cases, |rng| {
            let w = word_form(rng);
            let r = sys.normalize_with(&w, Strategy::Leftmost) - sys.normalize_with(&w, Strategy::Rightmost);
            fail_if(show(&w, sig), &r, sig)
        }));
        out.push(random_check(&format!("{}-idempotence", name), cfg, 2 * cfg.cases, |rng| {
            let w = word_form(rng);
            let n1 = sys.normalize(&w);
            fail_if(show(&w, sig), &(sys.normalize(&n1) - n1.clone()), sig)
        }));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn permutations_are_distinct_and_complete() {
        for n in 0..=4 {
            let mut ps = permutations(n);
            let count = ps.len();
            ps.sort();
            ps.dedup();
            assert_eq!(ps.len(), count);
            assert_eq!(count, (1..=n).product::<usize>());
        }
    }

    #[test]
    fn smallest_failing_case_wins() {
        let cfg = Config::default();
        let r = random_check("probe", &cfg, 50, |rng| {
            let v: u32 = rng.gen_range(0..4);
            (v == 0).then(|| Fail { input: "v".into(), residual: "0".into() })
        });
        let first = (0..50u64).find(|&c| case_rng(cfg.seed ^ name_salt("probe"), c).gen_range(0..4u32) == 0);
        assert_eq!(r.counterexample.map(|c| c.case), first);
    }
}
