//! Adjacent-pair rewriting to normal form, with confluence and
//! d-compatibility audits.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::calculus::differential;
use crate::error::{Error, Result};
use crate::expr::{parse, print};
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::scalar::{ParamTable, Scalar};


/// Which reducible pair to rewrite first.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Default)]
pub enum Strategy {
    #[default]
    Leftmost,
    Rightmost,
}

const NONE: u32 = u32::MAX;

/// An oriented, terminating set of pair rules over a signature.
#[derive(Clone, Debug)]
pub struct RewriteSystem {
    sig: Arc<Signature>,
    order: Vec<Gen>,
    rank: Vec<u32>,
    table: Vec<u32>,
    rules: Vec<(Gen, Gen, Form)>,
    name: String,
    /// Unordered letter pairs whose co-occurrence anywhere in a word kills it.
    kill: Vec<(Gen, Gen)>,
    kill_table: Vec<bool>,
}

impl RewriteSystem {
    /// Rules are keyed by their left pair. Every word on a right side must be
    /// shorter than two letters, or the swapped pair of an out-of-order left side.
    pub fn new(
        name: &str,
        sig: Signature,
        order: Vec<Gen>,
        rules: BTreeMap<(Gen, Gen), Form>,
    ) -> Result<RewriteSystem> {
        let n = sig.len();
        if order.len() != n || order.iter().collect::<HashSet<_>>().len() != n {
            return Err(Error::InvalidPresentation("order must list every generator exactly once".into()));
        }
        let mut rank = vec![0u32; n];
        for (r, g) in order.iter().enumerate() {
            rank[g.idx()] = r as u32;
        }
        let mut table = vec![NONE; n * n];
        let mut list = Vec::with_capacity(rules.len());
        for ((a, b), rhs) in rules {
            for (w, _) in rhs.terms() {
                let ok = w.len() < 2
                    || (w.len() == 2
                        && w.letters() == [b, a]
                        && rank[a.idx()] > rank[b.idx()]);
                if !ok {
                    return Err(Error::InvalidPresentation(format!(
                        "rule {}*{} -> {} does not decrease the termination measure",
                        sig.name(a),
                        sig.name(b),
                        print(&rhs, &sig)
                    )));
                }
            }
            table[a.idx() * n + b.idx()] = list.len() as u32;
            list.push((a, b, rhs));
        }
        Ok(RewriteSystem {
            sig: Arc::new(sig),
            order,
            rank,
            table,
            rules: list,
            name: name.to_owned(),
            kill: Vec::new(),
            kill_table: Vec::new(),
        })
    }

    /// Quotient by the monomial ideal generated by `ab` for every listed pair.
    ///
    /// Words containing both letters of a pair are dropped. This is a normal
    /// form only when every rule maps such words to combinations of such words.
    pub fn with_annihilators(mut self, pairs: &[(Gen, Gen)]) -> RewriteSystem {
        let n = self.sig.len();
        self.kill_table = vec![false; n * n];
        for &(a, b) in pairs {
            self.kill_table[a.idx() * n + b.idx()] = true;
            self.kill_table[b.idx() * n + a.idx()] = true;
        }
        self.kill = pairs.to_vec();
        self.kill.sort();
        self.kill.dedup();
        self
    }

    pub fn annihilators(&self) -> &[(Gen, Gen)] {
        &self.kill
    }

    /// The word lies in the annihilator ideal.
    pub fn is_killed(&self, w: &Word) -> bool {
        if self.kill.is_empty() {
            return false;
        }
        let n = self.sig.len();
        let l = w.letters();
        (0..l.len()).any(|i| l[i + 1..].iter().any(|b| self.kill_table[l[i].idx() * n + b.idx()]))
    }

    /// No relations; the order is the generator id order.
    pub fn free(name: &str, sig: Signature) -> RewriteSystem {
        let order = sig.gens().collect();
        RewriteSystem::new(name, sig, order, BTreeMap::new()).expect("free system")
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn rename(&mut self, name: &str) {
        self.name = name.to_owned();
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn sig_arc(&self) -> Arc<Signature> {
        self.sig.clone()
    }

    pub fn order(&self) -> &[Gen] {
        &self.order
    }

    pub fn rank(&self, g: Gen) -> u32 {
        self.rank[g.idx()]
    }

    pub fn rules(&self) -> &[(Gen, Gen, Form)] {
        &self.rules
    }

    pub fn rule(&self, a: Gen, b: Gen) -> Option<&Form> {
        let k = self.table[a.idx() * self.sig.len() + b.idx()];
        (k != NONE).then(|| &self.rules[k as usize].2)
    }

    /// (length, order inversions, rank sum).
    pub fn measure(&self, w: &Word) -> (usize, usize, u64) {
        let l = w.letters();
        let mut inv = 0;
        for i in 0..l.len() {
            for j in i + 1..l.len() {
                if self.rank(l[i]) > self.rank(l[j]) {
                    inv += 1;
                }
            }
        }
        (l.len(), inv, l.iter().map(|&g| self.rank(g) as u64).sum())
    }

    fn redex(&self, w: &Word, strategy: Strategy) -> Option<usize> {
        let l = w.letters();
        if l.len() < 2 {
            return None;
        }
        let n = self.sig.len();
        let hit = |i: usize| self.table[l[i].idx() * n + l[i + 1].idx()] != NONE;
        match strategy {
            Strategy::Leftmost => (0..l.len() - 1).find(|&i| hit(i)),
            Strategy::Rightmost => (0..l.len() - 1).rev().find(|&i| hit(i)),
        }
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        self.redex(w, Strategy::Leftmost).is_none()
    }

    pub fn normalize(&self, a: &Form) -> Form {
        self.normalize_with(a, Strategy::Leftmost)
    }

    /// Exhaustive rewriting. Terms are processed in decreasing measure so that
    /// every word is expanded once, after all its contributions have merged.
    pub fn normalize_with(&self, a: &Form, strategy: Strategy) -> Form {
        type Key = ((usize, usize, u64), Word);
        let mut pending: BTreeMap<Key, Scalar> = BTreeMap::new();
        let mut out = Form::zero();
        let push = |pending: &mut BTreeMap<Key, Scalar>, w: Word, c: Scalar| {
            let key = (self.measure(&w), w);
            match pending.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let s = e.get() + &c;
                    if s.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = s;
                    }
                }
            }
        };
        for (w, c) in a.terms() {
            if self.is_killed(w) {
                continue;
            }
            if self.is_normal(w) {
                out.add_term(w.clone(), c.clone());
            } else {
                push(&mut pending, w.clone(), c.clone());
            }
        }
        while let Some(((_, w), c)) = pending.pop_last() {
            match self.redex(&w, strategy) {
                None => out.add_term(w, c),
                Some(i) => {
                    let l = w.letters();
                    let rhs = self.rule(l[i], l[i + 1]).unwrap();
                    for (rw, rc) in rhs.terms() {
                        let nw = w.splice(i, 2, rw.letters());
                        if !self.is_killed(&nw) {
                            push(&mut pending, nw, &c * rc);
                        }
                    }
                }
            }
        }
        out
    }

    /// Normal form of a product.
    pub fn mul(&self, a: &Form, b: &Form) -> Form {
        self.normalize(&(a * b))
    }

    /// Graded commutator `ab − (−1)^{p(a)p(b)} ba`, normalized (parities from the first terms).
    pub fn bracket(&self, a: &Form, b: &Form) -> Form {
        let pa = self.sig.form_parity(a).unwrap_or(false);
        let pb = self.sig.form_parity(b).unwrap_or(false);
        let ba = b * a;
        let ab = a * b;
        self.normalize(&if pa && pb { &ab + &ba } else { &ab - &ba })
    }

    /// Normalized differential.
    pub fn d(&self, a: &Form) -> Form {
        self.normalize(&differential(a, &self.sig))
    }

    /// Out-of-order adjacent pairs that have no rule.
    pub fn missing_rules(&self) -> Vec<(Gen, Gen)> {
        let mut out = Vec::new();
        for a in self.sig.gens() {
            for b in self.sig.gens() {
                if self.rank(a) > self.rank(b) && self.rule(a, b).is_none() {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The graded-commutative system with the same letters and order.
    pub fn symbol_system(&self) -> RewriteSystem {
        let mut rules = BTreeMap::new();
        for a in self.sig.gens() {
            for b in self.sig.gens() {
                let (pa, pb) = (self.sig.parity(a), self.sig.parity(b));
                if self.rank(a) > self.rank(b) {
                    let sign = if pa && pb { -1 } else { 1 };
                    rules.insert((a, b), Form::word(&[b, a]).scale_int(sign));
                } else if a == b && pa {
                    rules.insert((a, b), Form::zero());
                }
            }
        }
        let name = format!("{}-symbol", self.name);
        RewriteSystem::new(&name, (*self.sig).clone(), self.order.clone(), rules)
            .expect("symbol system")
            .with_annihilators(&self.kill)
    }

    /// JSON-serializable description.
    pub fn to_presentation(&self) -> Presentation {
        let sig = &*self.sig;
        let generators = sig
            .gens()
            .map(|g| GenSpec {
                name: sig.name(g).to_owned(),
                parity: sig.parity(g) as u8,
                degree: sig.py(g),
                differential_of: match sig.kind(g) {
                    GenKind::Differential(x) => Some(sig.name(x).to_owned()),
                    _ => None,
                },
                point: sig.kind(g) == GenKind::Point,
            })
            .collect();
        let rules = self
            .rules
            .iter()
            .map(|(a, b, r)| RuleSpec { left: [sig.name(*a).to_owned(), sig.name(*b).to_owned()], right: print(r, sig) })
            .collect();
        let d_images = sig
            .gens()
            .filter(|&g| !sig.d_image(g).is_zero() && !matches!(sig.kind(g), GenKind::Point))
            .map(|g| (sig.name(g).to_owned(), print(sig.d_image(g), sig)))
            .collect();
        Presentation {
            name: self.name.clone(),
            params: sig.params.canonical().iter().map(|p| p.to_string()).collect(),
            generators,
            order: self.order.iter().map(|&g| sig.name(g).to_owned()).collect(),
            rules,
            d_images,
            annihilate: self.kill.iter().map(|&(a, b)| [sig.name(a).to_owned(), sig.name(b).to_owned()]).collect(),
        }
    }

    pub fn from_presentation(p: &Presentation) -> Result<RewriteSystem> {
        let mut params = ParamTable::standard();
        for name in &p.params {
            params.declare_name(name);
        }
        let mut sig = Signature::new(params);
        for g in &p.generators {
            if sig.by_name(&g.name).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate generator {}", g.name)));
            }
            let has_differential = p.generators.iter().any(|h| h.differential_of.as_deref() == Some(g.name.as_str()));
            let kind = if g.differential_of.is_none() && (g.point || has_differential) {
                GenKind::Point
            } else {
                GenKind::Other
            };
            sig.add(&g.name, g.parity % 2 == 1, g.degree, kind);
        }
        for g in &p.generators {
            if let Some(x) = &g.differential_of {
                let xg = sig
                    .by_name(x)
                    .ok_or_else(|| Error::InvalidPresentation(format!("unknown generator {}", x)))?;
                let dg = sig.by_name(&g.name).unwrap();
                sig.retag(dg, GenKind::Differential(xg));
                sig.set_d(xg, Form::gen(dg));
                if let Some(rest) = g.name.strip_prefix('d') {
                    if rest != x && sig.lookup(&format!("d{}", x)).is_none() {
                        sig.alias(&format!("d{}", x), Form::gen(dg));
                    }
                }
            }
        }
        let lookup = |sig: &Signature, name: &str| {
            sig.by_name(name).ok_or_else(|| Error::InvalidPresentation(format!("unknown generator {}", name)))
        };
        let mut images = Vec::new();
        for (name, expr) in &p.d_images {
            let g = lookup(&sig, name)?;
            images.push((g, parse(expr, &sig)?));
        }
        for (g, f) in images {
            sig.set_d(g, f);
        }
        let order = if p.order.is_empty() {
            sig.gens().collect()
        } else {
            p.order.iter().map(|n| lookup(&sig, n)).collect::<Result<Vec<_>>>()?
        };
        let mut rules = BTreeMap::new();
        for r in &p.rules {
            let a = lookup(&sig, &r.left[0])?;
            let b = lookup(&sig, &r.left[1])?;
            let rhs = parse(&r.right, &sig)?;
            if rules.insert((a, b), rhs).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate rule for {}*{}", r.left[0], r.left[1])));
            }
        }
        let kill = p
            .annihilate
            .iter()
            .map(|[a, b]| Ok((lookup(&sig, a)?, lookup(&sig, b)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(RewriteSystem::new(&p.name, sig, order, rules)?.with_annihilators(&kill))
    }

    pub fn from_json(text: &str) -> Result<RewriteSystem> {
        let p: Presentation = serde_json::from_str(text)?;
        RewriteSystem::from_presentation(&p)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct GenSpec {
    pub name: String,
    #[serde(default)]
    pub parity: u8,
    #[serde(default)]
    pub degree: u8,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub differential_of: Option<String>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub point: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct RuleSpec {
    pub left: [String; 2],
    pub right: String,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct Presentation {
    #[serde(default)]
    pub name: String,
    #[serde(default)]
    pub params: Vec<String>,
    pub generators: Vec<GenSpec>,
    #[serde(default)]
    pub order: Vec<String>,
    #[serde(default)]
    pub rules: Vec<RuleSpec>,
    #[serde(default)]
    pub d_images: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub annihilate: Vec<[String; 2]>,
}

/// A length-3 word whose two first reductions disagree.
#[derive(Clone, Debug)]
pub struct Overlap {
    pub word: Word,
    pub via_left: Form,
    pub via_right: Form,
}

#[derive(Clone, Debug, Default)]
pub struct ConfluenceReport {
    pub checked: usize,
    pub mismatches: Vec<Overlap>,
}

impl ConfluenceReport {
    pub fn is_ok(&self) -> bool {
        self.mismatches.is_empty()
    }
}

/// Compare both first reductions of every overlapping triple `abc`.
///
/// Rules have two-letter left sides, so triples are the only ambiguities;
/// `max_degree` is accepted for interface symmetry and must be at least 3.
pub fn check_local_confluence(sys: &RewriteSystem, max_degree: usize) -> ConfluenceReport {
    assert!(max_degree >= 3, "local confluence needs words of length 3");
    let gens: Vec<Gen> = sys.sig().gens().collect();
    let results: Vec<(usize, Vec<Overlap>)> = gens
        .par_iter()
        .map(|&b| {
            let mut checked = 0;
            let mut bad = Vec::new();
            for &a in &gens {
                let Some(left) = sys.rule(a, b) else { continue };
                for &c in &gens {
                    let Some(right) = sys.rule(b, c) else { continue };
                    checked += 1;
                    let via_left = sys.normalize(&(left * &Form::gen(c)));
                    let via_right = sys.normalize(&(&Form::gen(a) * right));
                    if via_left != via_right {
                        bad.push(Overlap { word: Word::from_slice(&[a, b, c]), via_left, via_right });
                    }
                }
            }
            (checked, bad)
        })
        .collect();
    let mut report = ConfluenceReport::default();
    for (n, bad) in results {
        report.checked += n;
        report.mismatches.extend(bad);
    }
    report.mismatches.sort_by(|x, y| x.word.cmp(&y.word));
    report
}

/// A rule whose differential does not vanish modulo the relations.
#[derive(Clone, Debug)]
pub struct DFailure {
    pub left: (Gen, Gen),
    pub residual: Form,
}

#[derive(Clone, Debug, Default)]
pub struct DCompatReport {
    pub checked: usize,
    pub failures: Vec<DFailure>,
}

impl DCompatReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For each rule `ab → r`, normalize `d(ab) − d(r)`; annihilated pairs must
/// have annihilated differentials.
pub fn check_d_compatibility(sys: &RewriteSystem) -> DCompatReport {
    let sig = sys.sig();
    let mut relations: Vec<(Gen, Gen, Form)> =
        sys.rules().iter().map(|(a, b, r)| (*a, *b, &Form::word(&[*a, *b]) - r)).collect();
    for &(a, b) in sys.annihilators() {
        relations.push((a, b, Form::word(&[a, b])));
        relations.push((b, a, Form::word(&[b, a])));
    }
    let failures: Vec<DFailure> = relations
        .par_iter()
        .filter_map(|(a, b, rel)| {
            let residual = sys.normalize(&differential(rel, sig));
            (!residual.is_zero()).then(|| DFailure { left: (*a, *b), residual })
        })
        .collect();
    DCompatReport { checked: relations.len(), failures }
}

/// Generators whose d-image has nonzero differential in the quotient.
pub fn check_d_squared(sys: &RewriteSystem) -> Vec<(Gen, Form)> {
    sys.sig()
        .gens()
        .filter_map(|g| {
            let dd = sys.d(&sys.d(&Form::gen(g)));
            (!dd.is_zero()).then_some((g, dd))
        })
        .collect()
}
