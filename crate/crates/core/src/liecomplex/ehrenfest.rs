use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{Form, Gen, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// The Ehrenfest algebra `[e_i, ē_j] = A_ji ē_j` with its ghost-free complex.
///
/// For an `m×m` matrix the letters are `e1..em` (the `e_i`), `e(m+1)..e(2m)`
/// (the `ē_j`) and their differentials `de1..`. Normal order puts points
/// first and differentials on the right.
pub fn ehrenfest_complex(a: &[Vec<Scalar>]) -> Result<RewriteSystem> {
    let m = a.len();
    if m == 0 || a.iter().any(|r| r.len() != m) {
        return Err(Error::InvalidPresentation("Ehrenfest matrix must be square and nonempty".into()));
    }
    let mut sig = Signature::new(ParamTable::standard());
    let pairs: Vec<(Gen, Gen)> =
        (1..=2 * m).map(|i| sig.add_pair(&format!("e{}", i), &format!("de{}", i), false)).collect();
    let es: Vec<Gen> = pairs.iter().map(|p| p.0).collect();
    let des: Vec<Gen> = pairs.iter().map(|p| p.1).collect();
    let mut rules = BTreeMap::new();
    for b in 0..2 * m {
        for x in 0..b {
            let mut r = Form::word(&[es[x], es[b]]);
            if x < m && b >= m {
                r.add_term(Word::letter(es[b]), -&a[b - m][x]);
            }
            rules.insert((es[b], es[x]), r);
            rules.insert((des[b], des[x]), -Form::word(&[des[x], des[b]]));
        }
        rules.insert((des[b], des[b]), Form::zero());
        for x in 0..2 * m {
            let mut r = Form::word(&[es[x], des[b]]);
            if x < m && b >= m {
                r.add_term(Word::letter(des[b]), -&a[b - m][x]);
            }
            rules.insert((des[b], es[x]), r);
        }
    }
    let order = es.iter().chain(&des).copied().collect();
    RewriteSystem::new(&format!("ehrenfest{}", m), sig, order, rules)
}

/// `[e1, e2] = e2`.
pub fn aff1_complex() -> RewriteSystem {
    let mut sys = ehrenfest_complex(&[vec![Scalar::one()]]).expect("aff1");
    sys.rename("aff1");
    sys
}
