use std::collections::BTreeMap;

use super::QMatrix;
use crate::calculus::{a_t, homotopy_i, ExtendedForm};
use crate::error::{Error, Result};
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{Param, Scalar};

/// `ℤ_{N₁} × … × ℤ_{N_r}`, elements stored as flat indices with the identity at 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupIndex {
    moduli: Vec<u32>,
}

impl GroupIndex {
    pub fn new(moduli: Vec<u32>) -> Result<GroupIndex> {
        if moduli.is_empty() || moduli.contains(&0) {
            return Err(Error::Invalid("group moduli must be a nonempty list of positive integers".into()));
        }
        Ok(GroupIndex { moduli })
    }

    pub fn cyclic(n: u32) -> GroupIndex {
        GroupIndex::new(vec![n]).expect("cyclic group")
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().map(|&m| m as usize).product()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn decode(&self, g: usize) -> Vec<u32> {
        let mut rest = g;
        let mut out = vec![0; self.moduli.len()];
        for (k, &m) in self.moduli.iter().enumerate().rev() {
            out[k] = (rest % m as usize) as u32;
            rest /= m as usize;
        }
        out
    }

    pub fn encode(&self, c: &[u32]) -> usize {
        c.iter().zip(&self.moduli).fold(0, |acc, (&x, &m)| acc * m as usize + (x % m) as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        let (a, b) = (self.decode(a), self.decode(b));
        let c: Vec<u32> = a.iter().zip(&b).zip(&self.moduli).map(|((x, y), m)| (x + y) % m).collect();
        self.encode(&c)
    }

    pub fn inv(&self, a: usize) -> usize {
        let c: Vec<u32> = self.decode(a).iter().zip(&self.moduli).map(|(x, m)| (m - x) % m).collect();
        self.encode(&c)
    }

    pub fn elements(&self) -> impl Iterator<Item = usize> {
        0..self.order()
    }

    /// `k` for a cyclic group, `(a,b,…)` for a product.
    pub fn name(&self, g: usize) -> String {
        let c = self.decode(g);
        if c.len() == 1 {
            c[0].to_string()
        } else {
            format!("({})", c.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        }
    }

    pub fn parse(&self, text: &str) -> Result<usize> {
        let inner = text.trim().trim_start_matches('(').trim_end_matches(')');
        let c: Vec<u32> = inner
            .split(',')
            .map(|t| t.trim().parse::<u32>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Invalid(format!("bad group element `{}`", text)))?;
        if c.len() != self.moduli.len() || c.iter().zip(&self.moduli).any(|(x, m)| x >= m) {
            return Err(Error::Invalid(format!("group element `{}` out of range", text)));
        }
        Ok(self.encode(&c))
    }
}

/// A group-indexed Q-space together with its relabeling action.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    pub sys: RewriteSystem,
    pub group: GroupIndex,
    pub n: usize,
    /// `x[g][i]`, `y[g][i]`.
    pub x: Vec<Vec<Gen>>,
    pub y: Vec<Vec<Gen>>,
    /// `(i, g, is_differential)` per generator id.
    label: Vec<(usize, usize, bool)>,
}

impl GroupAlgebra {
    /// `ĥ`: `x_i^{(g)} ↦ x_i^{(hg)}`, likewise for differentials.
    pub fn act(&self, h: usize, f: &Form) -> Form {
        f.substitute(|g| Form::gen(self.relabel(h, g)))
    }

    pub fn act_ext(&self, h: usize, f: &ExtendedForm) -> ExtendedForm {
        f.map(|a| self.act(h, a))
    }

    fn relabel(&self, h: usize, g: Gen) -> Gen {
        let (i, k, dif) = self.label[g.idx()];
        let hk = self.group.mul(h, k);
        if dif {
            self.y[hk][i]
        } else {
            self.x[hk][i]
        }
    }
}

/// Letters `x{i}@{g}` and `y{i}@{g}` (alias `dx{i}@{g}`), relations
/// `x_i^{(g)} x_j^{(h)} = Q_ij^{(g⁻¹h)} x_j^{(h)} x_i^{(g)}` and their
/// differential analogues.
///
/// Identity-slot constants come from `qm`; other slots are symbolic
/// `Q[i,j;f]` (with `f` the flat group index) unless overridden in
/// `entries` (`(i, j, f, value)`, 0-based). A slot and its reverse
/// `Q_ji^{(f⁻¹)}` are inverse; slots equal to their reverse must be ±1.
pub fn group_algebra(qm: &QMatrix, group: &GroupIndex, entries: &[(usize, usize, usize, Scalar)]) -> Result<GroupAlgebra> {
    let n = qm.n;
    let canon = |i: usize, j: usize, f: usize| -> (usize, usize, usize, bool) {
        let rev = (j, i, group.inv(f));
        if (i, j, f) <= rev {
            (i, j, f, false)
        } else {
            (rev.0, rev.1, rev.2, true)
        }
    };
    let mut fixed: BTreeMap<(usize, usize, usize), Scalar> = BTreeMap::new();
    for &(i, j, f, ref v) in entries {
        if i >= n || j >= n || f >= group.order() {
            return Err(Error::InconsistentQ(format!("slot ({},{};{}) out of range", i + 1, j + 1, f)));
        }
        let (a, b, c, flipped) = canon(i, j, f);
        let v = if flipped { v.inverse().map_err(|_| Error::InconsistentQ(format!("{} is not invertible", v)))? } else { v.clone() };
        if a == b && c == group.inv(c) {
            let ok = v.is_one() || (c != 0 && (-&v).is_one());
            if !ok {
                return Err(Error::InconsistentQ(format!(
                    "Q[{},{};{}] equals its own inverse and must be {}",
                    a + 1,
                    b + 1,
                    c,
                    if c == 0 { "1" } else { "±1" }
                )));
            }
        }
        if let Some(old) = fixed.insert((a, b, c), v.clone()) {
            if old != v {
                return Err(Error::InconsistentQ(format!("Q[{},{};{}] given twice with different values", a + 1, b + 1, c)));
            }
        }
    }
    let mut params = qm.params.clone();
    let mut slot_value = |i: usize, j: usize, f: usize| -> Scalar {
        let (a, b, c, flipped) = canon(i, j, f);
        let base = if let Some(v) = fixed.get(&(a, b, c)) {
            v.clone()
        } else if c == 0 {
            qm.get(a, b).clone()
        } else if a == b && c == group.inv(c) {
            Scalar::one()
        } else {
            let p = Param::Q { i: a as u16, j: b as u16, g: c as u32 };
            params.declare_pair(p, format!("Q[{},{};{}]", b + 1, a + 1, group.inv(c)));
            Scalar::param(p)
        };
        if flipped {
            base.inverse().expect("Q slots are monomials")
        } else {
            base
        }
    };
    let order_g = group.order();
    let mut coeff = vec![vec![vec![Scalar::zero(); order_g]; n]; n];
    for (i, row) in coeff.iter_mut().enumerate() {
        for (j, slots) in row.iter_mut().enumerate() {
            for (f, s) in slots.iter_mut().enumerate() {
                *s = slot_value(i, j, f);
            }
        }
    }
    for (&(a, b, c), v) in &fixed {
        if c != 0 && !(a == b && c == group.inv(c)) {
            let p = Param::Q { i: a as u16, j: b as u16, g: c as u32 };
            params.bind(p.to_string(), v.clone());
        }
    }

    let mut sig = Signature::new(params);
    let mut label = Vec::new();
    let mut x = vec![Vec::new(); order_g];
    let mut y = vec![Vec::new(); order_g];
    for g in group.elements() {
        for i in 0..n {
            x[g].push(sig.add(&format!("x{}@{}", i + 1, group.name(g)), false, 0, GenKind::Point));
            label.push((i, g, false));
        }
    }
    for g in group.elements() {
        for i in 0..n {
            let xg = x[g][i];
            let d = sig.add(&format!("y{}@{}", i + 1, group.name(g)), true, 1, GenKind::Differential(xg));
            sig.alias(&format!("dx{}@{}", i + 1, group.name(g)), Form::gen(d));
            sig.set_d(xg, Form::gen(d));
            y[g].push(d);
            label.push((i, g, true));
        }
    }
    let q = |(i, g): (usize, usize), (j, h): (usize, usize)| coeff[i][j][group.mul(group.inv(g), h)].clone();
    let xs: Vec<(usize, usize, Gen)> = group.elements().flat_map(|g| (0..n).map(move |i| (i, g))).map(|(i, g)| (i, g, x[g][i])).collect();
    let ys: Vec<(usize, usize, Gen)> = group.elements().flat_map(|g| (0..n).map(move |i| (i, g))).map(|(i, g)| (i, g, y[g][i])).collect();
    let mut rules = BTreeMap::new();
    for (a, &(i, g, u)) in xs.iter().enumerate() {
        for &(j, h, v) in &xs[..a] {
            rules.insert((u, v), Form::term(Word::from_slice(&[v, u]), q((i, g), (j, h))));
        }
        for &(j, h, v) in &ys {
            rules.insert((u, v), Form::term(Word::from_slice(&[v, u]), q((i, g), (j, h))));
        }
    }
    for (a, &(i, g, u)) in ys.iter().enumerate() {
        for &(j, h, v) in &ys[..a] {
            rules.insert((u, v), Form::term(Word::from_slice(&[v, u]), -q((i, g), (j, h))));
        }
        rules.insert((u, u), Form::zero());
    }
    let order = ys.iter().chain(&xs).map(|t| t.2).collect();
    let name = format!("qspace{}-Z{}", n, group.moduli().iter().map(|m| m.to_string()).collect::<Vec<_>>().join("xZ"));
    let sys = RewriteSystem::new(&name, sig, order, rules)?;
    Ok(GroupAlgebra { sys, group: group.clone(), n, x, y, label })
}

/// `ν = I A_t(ω)`, normalized.
pub fn equivariant_primitive(w: &Form, ga: &GroupAlgebra) -> Result<Form> {
    let sys = &ga.sys;
    let at = a_t(&sys.normalize(w), sys.sig())?.normalize(sys);
    Ok(sys.normalize(&homotopy_i(&at)))
}

/// Orbit equality: `ĝ(a) = b` for some `g`.
pub fn equivalent(a: &Form, b: &Form, ga: &GroupAlgebra) -> bool {
    let b = ga.sys.normalize(b);
    ga.group.elements().any(|g| ga.sys.normalize(&ga.act(g, a)) == b)
}
