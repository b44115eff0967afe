//! Q-quantum spaces `x_i x_j = Q_ij x_j x_i` with their differential forms,
//! Q-partial derivatives, and group-indexed families of them.

mod group;

pub use group::{equivalent, equivariant_primitive, group_algebra, GroupAlgebra, GroupIndex};

use std::collections::BTreeMap;

use serde::Deserialize;

use crate::error::{Error, Result};
use crate::expr::parse_scalar;
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// Deformation constants `Q_ij` with `Q_ji = Q_ij^{-1}` and `Q_ii = 1`.
#[derive(Clone, Debug)]
pub struct QMatrix {
    pub n: usize,
    q: Vec<Vec<Scalar>>,
    /// Parameter names used by the entries.
    pub params: ParamTable,
}

#[derive(Deserialize)]
struct QSpec {
    n: usize,
    #[serde(default)]
    entries: Vec<Vec<serde_json::Value>>,
    #[serde(default)]
    group: Option<Vec<u32>>,
}

/// A parsed `Q.json`: plain entries `[i, j, "expr"]`, and for a group family
/// entries `[i, j, "g", "expr"]` keyed by a group element.
#[derive(Clone, Debug)]
pub struct QConfig {
    pub matrix: QMatrix,
    pub group: Option<GroupIndex>,
    pub group_entries: Vec<(usize, usize, usize, Scalar)>,
}

impl QMatrix {
    /// Independent symbols `Q[i,j]`, `i < j`.
    pub fn symbolic(n: usize) -> QMatrix {
        let q = (0..n).map(|i| (0..n).map(|j| Scalar::q(i, j)).collect()).collect();
        QMatrix { n, q, params: ParamTable::with_q(n) }
    }

    /// Unspecified entries stay symbolic.
    pub fn from_entries(n: usize, entries: &[(usize, usize, Scalar)], params: ParamTable) -> Result<QMatrix> {
        let mut m = QMatrix::symbolic(n);
        m.params = params;
        let mut set = BTreeMap::new();
        for (i, j, v) in entries {
            let (i, j) = (*i, *j);
            if i >= n || j >= n {
                return Err(Error::InconsistentQ(format!("index ({},{}) out of range", i + 1, j + 1)));
            }
            if i == j {
                if !v.is_one() {
                    return Err(Error::InconsistentQ(format!("Q[{},{}] must be 1", i + 1, i + 1)));
                }
                continue;
            }
            let inv = v.inverse().map_err(|_| Error::InconsistentQ(format!("Q[{},{}] = {} is not invertible", i + 1, j + 1, v)))?;
            for (a, b, val) in [(i, j, v.clone()), (j, i, inv)] {
                if let Some(old) = set.insert((a, b), val.clone()) {
                    if old != val {
                        return Err(Error::InconsistentQ(format!("Q[{},{}] given twice with different values", a + 1, b + 1)));
                    }
                }
                m.q[a][b] = val;
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.q[i][j]
    }

    pub fn from_json(text: &str) -> Result<QConfig> {
        let spec: QSpec = serde_json::from_str(text)?;
        let mut params = ParamTable::with_q(spec.n);
        let mut raw = Vec::new();
        for e in &spec.entries {
            let idx = |v: &serde_json::Value| -> Result<usize> {
                v.as_u64()
                    .filter(|&k| k >= 1 && (k as usize) <= spec.n)
                    .map(|k| k as usize - 1)
                    .ok_or_else(|| Error::InconsistentQ(format!("bad index {} in Q entry", v)))
            };
            let text = |v: &serde_json::Value| match v {
                serde_json::Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            match e.as_slice() {
                [i, j, v] => raw.push((idx(i)?, idx(j)?, None, text(v))),
                [i, j, g, v] => raw.push((idx(i)?, idx(j)?, Some(text(g)), text(v))),
                _ => return Err(Error::InconsistentQ("Q entries are [i, j, expr] or [i, j, g, expr]".into())),
            }
        }
        for (.., v) in &raw {
            declare_identifiers(&mut params, v);
        }
        let sig = Signature::new(params.clone());
        let group = spec.group.map(GroupIndex::new).transpose()?;
        let mut plain = Vec::new();
        let mut group_entries = Vec::new();
        for (i, j, g, v) in raw {
            let val = parse_scalar(&v, &sig)?;
            match (g, &group) {
                (None, _) => plain.push((i, j, val)),
                (Some(g), Some(grp)) => group_entries.push((i, j, grp.parse(&g)?, val)),
                (Some(_), None) => return Err(Error::InconsistentQ("group entry without a `group` field".into())),
            }
        }
        Ok(QConfig { matrix: QMatrix::from_entries(spec.n, &plain, params)?, group, group_entries })
    }
}

/// Declare bare identifiers (other than `Q[...]`) as symbols.
fn declare_identifiers(params: &mut ParamTable, text: &str) {
    let bytes = text.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        if bytes[i].is_ascii_alphabetic() || bytes[i] == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            let name = &text[start..i];
            if i < bytes.len() && bytes[i] == b'[' {
                let end = text[i..].find(']').map_or(bytes.len(), |k| i + k + 1);
                let full: String = text[start..end].chars().filter(|c| !c.is_whitespace()).collect();
                params.declare_name(&full);
                i = end;
            } else if params.lookup(name).is_none() {
                params.declare(name);
            }
        } else {
            i += 1;
        }
    }
}

/// Letters `x1..xn`, `y1..yn` (alias `dx_i`); normal order puts every `y`
/// before every `x`, each by ascending index.
pub fn q_algebra(qm: &QMatrix) -> RewriteSystem {
    let n = qm.n;
    let mut sig = Signature::free_even(n);
    sig.params = qm.params.clone();
    let xs: Vec<Gen> = (0..n).map(|i| sig.points()[i]).collect();
    let ys: Vec<Gen> = (0..n).map(|i| sig.differential(i).unwrap()).collect();
    let mut rules = BTreeMap::new();
    for j in 0..n {
        for i in 0..n {
            rules.insert((xs[j], ys[i]), Form::term(Word::from_slice(&[ys[i], xs[j]]), qm.get(j, i).clone()));
            if j > i {
                rules.insert((xs[j], xs[i]), Form::term(Word::from_slice(&[xs[i], xs[j]]), qm.get(j, i).clone()));
                rules.insert((ys[j], ys[i]), Form::term(Word::from_slice(&[ys[i], ys[j]]), -qm.get(j, i)));
            }
        }
        rules.insert((ys[j], ys[j]), Form::zero());
    }
    let order = ys.iter().chain(&xs).copied().collect();
    RewriteSystem::new(&format!("qspace{}", n), sig, order, rules).expect("Q-space presentation")
}

/// `∂_k` applied word by word: `∂_k x_i = δ_ik + Q_ik x_i ∂_k`, `∂_k(r) = 0`.
/// No rewriting is done, so this is the operator on the free algebra.
pub fn q_partial_free(h: &Form, k: usize, qm: &QMatrix, sig: &Signature) -> Result<Form> {
    let mut out = Form::zero();
    for (w, c) in h.terms() {
        let l = w.letters();
        let mut coeff = c.clone();
        for (j, &g) in l.iter().enumerate() {
            let i = match (sig.kind(g), sig.point_index(g)) {
                (GenKind::Point, Some(i)) => i,
                _ => return Err(Error::Invalid(format!("Q-partials act on functions; found `{}`", sig.name(g)))),
            };
            if i == k {
                out.add_term(w.splice(j, 1, &[]), coeff.clone());
            }
            coeff = &coeff * qm.get(i, k);
        }
    }
    Ok(out)
}

/// `∂_k` on the normal form of `h`.
pub fn q_partial(h: &Form, k: usize, qm: &QMatrix, sys: &RewriteSystem) -> Result<Form> {
    if k >= qm.n {
        return Err(Error::Invalid(format!("partial index {} out of range 1..={}", k + 1, qm.n)));
    }
    let p = q_partial_free(&sys.normalize(h), k, qm, sys.sig())?;
    Ok(sys.normalize(&p))
}

/// `d(H) − Σ_k dx_k ∂_k(H)`, normalized.
pub fn q_d_check(h: &Form, qm: &QMatrix, sys: &RewriteSystem) -> Result<Form> {
    let sig = sys.sig();
    let mut rhs = Form::zero();
    for k in 0..qm.n {
        rhs += &Form::gen(sig.differential(k).unwrap()) * &q_partial(h, k, qm, sys)?;
    }
    Ok(sys.normalize(&(sys.d(h) - rhs)))
}

/// `∂_k ∂_l H − Q_kl ∂_l ∂_k H`.
pub fn q_partials_commute(h: &Form, k: usize, l: usize, qm: &QMatrix, sys: &RewriteSystem) -> Result<Form> {
    let kl = q_partial(&q_partial(h, l, qm, sys)?, k, qm, sys)?;
    let lk = q_partial(&q_partial(h, k, qm, sys)?, l, qm, sys)?;
    Ok(sys.normalize(&(kl - lk.scale(qm.get(k, l)))))
}

/// `P_ij = x_i x_j − Q_ij x_j x_i`.
pub fn q_relation(i: usize, j: usize, qm: &QMatrix, sig: &Signature) -> Form {
    let (xi, xj) = (sig.points()[i], sig.points()[j]);
    Form::word(&[xi, xj]) - Form::term(Word::from_slice(&[xj, xi]), qm.get(i, j).clone())
}

/// `∂_k(P_ij w) − Q_ik Q_jk P_ij ∂_k(w)` in the free algebra.
pub fn q_ideal_residual(i: usize, j: usize, k: usize, w: &Form, qm: &QMatrix, sig: &Signature) -> Result<Form> {
    let p = q_relation(i, j, qm, sig);
    let lhs = q_partial_free(&(&p * w), k, qm, sig)?;
    let rhs = (&p * &q_partial_free(w, k, qm, sig)?).scale(&(qm.get(i, k) * qm.get(j, k)));
    Ok(lhs - rhs)
}
