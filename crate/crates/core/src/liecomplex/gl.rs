use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::expr::print;
use crate::forms::{Form, Gen, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::ParamTable;

/// How `e_iα` acts on the differentials.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlVariant {
    /// `[e_iα, de_jβ] = δ_jα de_iβ`.
    Left,
    /// `[e_iα, de_jβ] = −δ_iβ de_jα`.
    Right,
}

/// Which matrix units span the (sub)algebra.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GlPart {
    Full,
    Upper,
    Lower,
    UpperNilpotent,
    LowerNilpotent,
}

impl GlPart {
    fn keeps(self, i: usize, a: usize) -> bool {
        match self {
            GlPart::Full => true,
            GlPart::Upper => i <= a,
            GlPart::Lower => i >= a,
            GlPart::UpperNilpotent => i < a,
            GlPart::LowerNilpotent => i > a,
        }
    }
}

pub fn gl_complex(n: usize, variant: GlVariant) -> Result<RewriteSystem> {
    gl_subcomplex(n, variant, GlPart::Full)
}

/// Letters `e[i,a]`, `de[i,a]`; differentials first, both row-major.
pub fn gl_subcomplex(n: usize, variant: GlVariant, part: GlPart) -> Result<RewriteSystem> {
    if n < 2 {
        return Err(Error::InvalidPresentation("gl(n) needs n >= 2".into()));
    }
    let mut sig = Signature::new(ParamTable::standard());
    let mut e = vec![vec![None; n]; n];
    let mut de = vec![vec![None; n]; n];
    let mut idx = Vec::new();
    for i in 0..n {
        for a in 0..n {
            if part.keeps(i, a) {
                let (x, dx) = sig.add_pair(&format!("e[{},{}]", i + 1, a + 1), &format!("de[{},{}]", i + 1, a + 1), false);
                e[i][a] = Some(x);
                de[i][a] = Some(dx);
                idx.push((i, a));
            }
        }
    }
    let get = |t: &Vec<Vec<Option<Gen>>>, i: usize, a: usize| -> Result<Gen> {
        t[i][a].ok_or_else(|| Error::InvalidPresentation("subalgebra is not closed".into()))
    };
    let mut rules = BTreeMap::new();
    for (y, &(j, b)) in idx.iter().enumerate() {
        for &(i, a) in &idx[..y] {
            // e_jβ e_iα = e_iα e_jβ − δ_jα e_iβ + δ_iβ e_jα
            let mut r = Form::word(&[get(&e, i, a)?, get(&e, j, b)?]);
            if j == a {
                r.add_term(Word::letter(get(&e, i, b)?), -crate::scalar::Scalar::one());
            }
            if i == b {
                r.add_term(Word::letter(get(&e, j, a)?), crate::scalar::Scalar::one());
            }
            rules.insert((get(&e, j, b)?, get(&e, i, a)?), r);
            let (dj, di) = (get(&de, j, b)?, get(&de, i, a)?);
            rules.insert((dj, di), -Form::word(&[di, dj]));
        }
        let d = get(&de, j, b)?;
        rules.insert((d, d), Form::zero());
    }
    for &(i, a) in &idx {
        for &(j, b) in &idx {
            let (x, dy) = (get(&e, i, a)?, get(&de, j, b)?);
            let mut r = Form::word(&[dy, x]);
            match variant {
                GlVariant::Left if j == a => r.add_term(Word::letter(get(&de, i, b)?), crate::scalar::Scalar::one()),
                GlVariant::Right if i == b => r.add_term(Word::letter(get(&de, j, a)?), -crate::scalar::Scalar::one()),
                _ => {}
            }
            rules.insert((x, dy), r);
        }
    }
    let order = idx.iter().map(|&(i, a)| de[i][a].unwrap()).chain(idx.iter().map(|&(i, a)| e[i][a].unwrap())).collect();
    let tag = match variant {
        GlVariant::Left => "left",
        GlVariant::Right => "right",
    };
    let sub = match part {
        GlPart::Full => "",
        GlPart::Upper => "-upper",
        GlPart::Lower => "-lower",
        GlPart::UpperNilpotent => "-upper-nil",
        GlPart::LowerNilpotent => "-lower-nil",
    };
    RewriteSystem::new(&format!("gl{}-{}{}", n, tag, sub), sig, order, rules)
}

/// Image of every rule of `src` under a signed letter map into `dst`, each
/// re-oriented as a rule of `dst` (keyed by its highest two-letter word).
pub fn transform_rules(
    src: &RewriteSystem,
    dst: &RewriteSystem,
    map: impl Fn(Gen) -> Form,
) -> Result<BTreeMap<(Gen, Gen), Form>> {
    let mut out = BTreeMap::new();
    for (a, b, r) in src.rules() {
        let rel = &(&map(*a) * &map(*b)) - &r.substitute(&map);
        let key = rel
            .terms()
            .filter(|(w, _)| w.len() == 2)
            .max_by_key(|(w, _)| dst.measure(w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .ok_or_else(|| Error::Invalid(format!("image of rule {} has no quadratic term", print(r, src.sig()))))?;
        let (w, c) = key;
        let rest = &rel - &Form::term(w.clone(), c.clone());
        let rhs = (-rest).scale(&c.inverse()?);
        out.insert((w.letters()[0], w.letters()[1]), rhs);
    }
    Ok(out)
}

/// `θ(e_iα) = −e_αi`, `θ(de_iα) = −de_αi`, by name.
pub fn cartan_involution<'a>(src: &'a RewriteSystem, dst: &'a RewriteSystem) -> impl Fn(Gen) -> Form + 'a {
    move |g| {
        let name = src.sig().name(g);
        let (stem, rest) = name.split_once('[').expect("indexed letter");
        let (i, a) = rest.trim_end_matches(']').split_once(',').expect("two indices");
        let target = format!("{}[{},{}]", stem, a, i);
        -dst.sig().lookup(&target).expect("transposed letter")
    }
}

/// Rule-set equality of `θ(left)` with `right` and of `θ(right)` with `left`.
pub fn check_cartan_involution(n: usize) -> Result<bool> {
    let left = gl_complex(n, GlVariant::Left)?;
    let right = gl_complex(n, GlVariant::Right)?;
    let as_map = |s: &RewriteSystem| -> BTreeMap<(Gen, Gen), Form> {
        s.rules().iter().map(|(a, b, r)| ((*a, *b), r.clone())).collect()
    };
    let lr = transform_rules(&left, &right, cartan_involution(&left, &right))?;
    let rl = transform_rules(&right, &left, cartan_involution(&right, &left))?;
    Ok(lr == as_map(&right) && rl == as_map(&left))
}

/// The ideal of `src` maps into the ideal of `dst`: every transformed relation
/// normalizes to zero.
pub fn maps_ideal(src: &RewriteSystem, dst: &RewriteSystem, map: impl Fn(Gen) -> Form) -> bool {
    src.rules().iter().all(|(a, b, r)| {
        let rel = &(&map(*a) * &map(*b)) - &r.substitute(&map);
        dst.normalize(&rel).is_zero()
    })
}
