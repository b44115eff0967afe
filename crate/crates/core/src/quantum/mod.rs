//! h-quantum spaces: Weyl algebras with differentials, quantum partial
//! derivatives and the quantum Poincaré solver; Clebsch representations.

mod clebsch;
mod lie;

pub use clebsch::{clebsch_algebra, clebsch_build, clebsch_verify, Clebsch};
pub use lie::{LieData, Matrix};

use std::collections::BTreeMap;

use crate::calculus::poincare_primitive;
use crate::error::{Error, Result};
use crate::expr::print;
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// Even variables `u` with `[u_a, u_b] = h c_ab` and differentials `du`
/// commuting with every `u` and anticommuting among themselves.
/// Normal order: differentials, then variables, each in the given order.
pub fn heisenberg(name: &str, vars: &[String], c: &[Vec<Scalar>]) -> Result<RewriteSystem> {
    let m = vars.len();
    if c.len() != m || c.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidPresentation("commutator matrix must be square".into()));
    }
    for a in 0..m {
        for b in 0..m {
            if !(&c[a][b] + &c[b][a]).is_zero() {
                return Err(Error::InvalidPresentation("commutator matrix must be antisymmetric".into()));
            }
        }
    }
    let mut sig = Signature::new(ParamTable::standard());
    let xs: Vec<Gen> = vars.iter().map(|v| sig.add(v, false, 0, GenKind::Point)).collect();
    let dxs: Vec<Gen> = vars
        .iter()
        .zip(&xs)
        .map(|(v, &x)| {
            let d = sig.add(&format!("d{}", v), true, 1, GenKind::Differential(x));
            sig.set_d(x, Form::gen(d));
            d
        })
        .collect();
    let mut rules = BTreeMap::new();
    let h = Scalar::h();
    for a in 0..m {
        for b in 0..a {
            let mut r = Form::word(&[xs[b], xs[a]]);
            r.add_term(Word::empty(), &h * &c[a][b]);
            rules.insert((xs[a], xs[b]), r);
            rules.insert((dxs[a], dxs[b]), -Form::word(&[dxs[b], dxs[a]]));
        }
        rules.insert((dxs[a], dxs[a]), Form::zero());
        for b in 0..m {
            rules.insert((xs[a], dxs[b]), Form::word(&[dxs[b], xs[a]]));
        }
    }
    let order = dxs.iter().chain(&xs).copied().collect();
    RewriteSystem::new(name, sig, order, rules)
}

/// `q1..qn, p1..pn` with `[p_i, q_j] = h δ_ij`.
pub fn weyl_algebra(n: usize) -> RewriteSystem {
    let vars: Vec<String> = (1..=n).map(|i| format!("q{}", i)).chain((1..=n).map(|i| format!("p{}", i))).collect();
    let mut c = vec![vec![Scalar::zero(); 2 * n]; 2 * n];
    for i in 0..n {
        c[n + i][i] = Scalar::one();
        c[i][n + i] = -Scalar::one();
    }
    heisenberg(&format!("weyl{}", n), &vars, &c).expect("weyl presentation")
}

/// `u1..um` with `[u_a, u_b] = h c_ab` for a constant antisymmetric `c`.
pub fn weyl_general(c: &[Vec<Scalar>]) -> Result<RewriteSystem> {
    let vars: Vec<String> = (1..=c.len()).map(|i| format!("u{}", i)).collect();
    heisenberg(&format!("weyl-general{}", c.len()), &vars, c)
}

/// Coefficient of `du` in the normal form of `dH`.
pub fn weyl_partial(h: &Form, u: Gen, sys: &RewriteSystem) -> Form {
    let du = match sys.sig().kind(u) {
        GenKind::Point => sys.sig().d_image(u).terms().next().map(|(w, _)| w.letters()[0]),
        _ => None,
    };
    let Some(du) = du else { return Form::zero() };
    let mut out = Form::zero();
    for (w, c) in sys.d(h).terms() {
        if w.letters().first() == Some(&du) {
            out.add_term(w.splice(0, 1, &[]), c.clone());
        }
    }
    out
}

/// Closed `a` ↦ `(ν, r)` with `normalize(dν) + r = normalize(a)`, through
/// the graded-commutative symbol of the normal form.
pub fn quantum_poincare(a: &Form, sys: &RewriteSystem) -> Result<(Form, Scalar)> {
    let a = sys.normalize(a);
    let da = sys.d(&a);
    if !da.is_zero() {
        return Err(Error::NotClosed(print(&da, sys.sig())));
    }
    let symbol = sys.symbol_system();
    poincare_primitive(&a, symbol.sig(), Some(&symbol))
}

/// All normal words of length at most `max_len`.
pub fn normal_words(sys: &RewriteSystem, max_len: usize) -> Vec<Word> {
    let gens: Vec<Gen> = sys.sig().gens().collect();
    let mut out = vec![Word::empty()];
    let mut frontier = vec![Word::empty()];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &g in &gens {
                if let Some(&last) = w.letters().last() {
                    if sys.rule(last, g).is_some() {
                        continue;
                    }
                }
                next.push(w.concat(&Word::letter(g)));
            }
        }
        out.extend(next.iter().cloned());
        frontier = next;
    }
    out
}
