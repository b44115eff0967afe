//! The free bigraded algebra of words in point and differential letters.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_rational::BigRational;
use smallvec::SmallVec;

use crate::scalar::{ParamTable, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Gen(pub u16);

impl Gen {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A letter sequence; ordered by length, then lexicographically by id.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Word(pub SmallVec<[Gen; 8]>);

impl Word {
    pub fn empty() -> Word {
        Word(SmallVec::new())
    }

    pub fn from_slice(gs: &[Gen]) -> Word {
        Word(SmallVec::from_slice(gs))
    }

    pub fn letter(g: Gen) -> Word {
        Word::from_slice(&[g])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Gen] {
        &self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = SmallVec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    /// `prefix · middle · suffix` around position `at` (dropping `drop` letters).
    pub fn splice(&self, at: usize, drop: usize, middle: &[Gen]) -> Word {
        let mut v = SmallVec::with_capacity(self.len() - drop + middle.len());
        v.extend_from_slice(&self.0[..at]);
        v.extend_from_slice(middle);
        v.extend_from_slice(&self.0[at + drop..]);
        Word(v)
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Word) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Word) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A finite scalar-weighted sum of words.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Form {
    terms: BTreeMap<Word, Scalar>,
}

impl Form {
    pub fn zero() -> Form {
        Form::default()
    }

    pub fn one() -> Form {
        Form::scalar(Scalar::one())
    }

    pub fn scalar(s: Scalar) -> Form {
        Form::term(Word::empty(), s)
    }

    pub fn int(n: i64) -> Form {
        Form::scalar(Scalar::int(n))
    }

    pub fn gen(g: Gen) -> Form {
        Form::term(Word::letter(g), Scalar::one())
    }

    pub fn word(gs: &[Gen]) -> Form {
        Form::term(Word::from_slice(gs), Scalar::one())
    }

    pub fn term(w: Word, s: Scalar) -> Form {
        let mut f = Form::zero();
        f.add_term(w, s);
        f
    }

    pub fn add_term(&mut self, w: Word, s: Scalar) {
        if s.is_zero() {
            return;
        }
        match self.terms.entry(w) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(s);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get() + &s;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> impl Iterator<Item = (Word, Scalar)> {
        self.terms.into_iter()
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_default()
    }

    /// The (0,0) component.
    pub fn constant(&self) -> Scalar {
        self.coefficient(&Word::empty())
    }

    pub fn max_len(&self) -> usize {
        self.terms.keys().map(Word::len).max().unwrap_or(0)
    }

    pub fn scale(&self, s: &Scalar) -> Form {
        let mut out = Form::zero();
        if s.is_zero() {
            return out;
        }
        for (w, c) in &self.terms {
            out.add_term(w.clone(), c * s);
        }
        out
    }

    pub fn scale_rational(&self, c: &BigRational) -> Form {
        let mut out = Form::zero();
        for (w, s) in &self.terms {
            out.add_term(w.clone(), s.scale(c));
        }
        out
    }

    pub fn scale_int(&self, n: i64) -> Form {
        self.scale(&Scalar::int(n))
    }

    /// Apply a letter substitution; each letter maps to a form.
    pub fn substitute(&self, image: impl Fn(Gen) -> Form) -> Form {
        let mut out = Form::zero();
        for (w, c) in &self.terms {
            let mut acc = Form::scalar(c.clone());
            for &g in w.letters() {
                acc = &acc * &image(g);
                if acc.is_zero() {
                    break;
                }
            }
            out += &acc;
        }
        out
    }

    /// Keep only terms whose word satisfies `keep`.
    pub fn filter(&self, keep: impl Fn(&Word) -> bool) -> Form {
        Form { terms: self.terms.iter().filter(|(w, _)| keep(w)).map(|(w, c)| (w.clone(), c.clone())).collect() }
    }
}

impl AddAssign<&Form> for Form {
    fn add_assign(&mut self, rhs: &Form) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), c.clone());
        }
    }
}

impl AddAssign<Form> for Form {
    fn add_assign(&mut self, rhs: Form) {
        for (w, c) in rhs.terms {
            self.add_term(w, c);
        }
    }
}

impl SubAssign<&Form> for Form {
    fn sub_assign(&mut self, rhs: &Form) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), -c);
        }
    }
}

impl Add for &Form {
    type Output = Form;
    fn add(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Form {
    type Output = Form;
    fn add(mut self, rhs: Form) -> Form {
        self += rhs;
        self
    }
}

impl Sub for &Form {
    type Output = Form;
    fn sub(self, rhs: &Form) -> Form {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Form {
    type Output = Form;
    fn sub(mut self, rhs: Form) -> Form {
        self -= &rhs;
        self
    }
}

impl Neg for &Form {
    type Output = Form;
    fn neg(self) -> Form {
        Form { terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect() }
    }
}

impl Neg for Form {
    type Output = Form;
    fn neg(self) -> Form {
        -&self
    }
}

impl Mul for &Form {
    type Output = Form;
    fn mul(self, rhs: &Form) -> Form {
        let mut out = Form::zero();
        for (wa, ca) in &self.terms {
            for (wb, cb) in &rhs.terms {
                out.add_term(wa.concat(wb), ca * cb);
            }
        }
        out
    }
}

impl Mul for Form {
    type Output = Form;
    fn mul(self, rhs: Form) -> Form {
        &self * &rhs
    }
}

pub fn form_mul(a: &Form, b: &Form) -> Form {
    a * b
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum GenKind {
    /// An x-type letter.
    Point,
    /// The differential of the given point letter.
    Differential(Gen),
    /// Any other letter (ghosts, Lie-algebra generators of a complex).
    Other,
}

#[derive(Clone, Debug)]
pub struct GenInfo {
    pub name: String,
    pub parity: bool,
    /// Form degree.
    pub py: u8,
    pub kind: GenKind,
    pub d_image: Form,
}

/// Letters of an algebra with their gradings and differential images.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    gens: Vec<GenInfo>,
    names: HashMap<String, Gen>,
    aliases: HashMap<String, Form>,
    points: Vec<Gen>,
    point_of: Vec<Option<usize>>,
    pub params: ParamTable,
}

impl Signature {
    pub fn new(params: ParamTable) -> Signature {
        Signature { params, ..Default::default() }
    }

    /// x₁..x_n and y₁..y_n = dx₁..dx_n with `p(x_i) = parities[i]`.
    pub fn free(parities: &[bool]) -> Signature {
        let n = parities.len();
        let mut s = Signature::new(ParamTable::with_q(n));
        let xs: Vec<Gen> = (0..n).map(|i| s.add(&format!("x{}", i + 1), parities[i], 0, GenKind::Point)).collect();
        for i in 0..n {
            let y = s.add(&format!("y{}", i + 1), !parities[i], 1, GenKind::Differential(xs[i]));
            s.alias(&format!("dx{}", i + 1), Form::gen(y));
            s.set_d(xs[i], Form::gen(y));
        }
        s
    }

    pub fn free_even(n: usize) -> Signature {
        Signature::free(&vec![false; n])
    }

    pub fn add(&mut self, name: &str, parity: bool, py: u8, kind: GenKind) -> Gen {
        let g = Gen(self.gens.len() as u16);
        self.gens.push(GenInfo { name: name.to_owned(), parity, py, kind, d_image: Form::zero() });
        self.names.insert(name.to_owned(), g);
        if kind == GenKind::Point {
            self.point_of.push(Some(self.points.len()));
            self.points.push(g);
        } else {
            self.point_of.push(None);
        }
        g
    }

    /// A point letter together with its differential, named `name` and `dname`.
    pub fn add_pair(&mut self, name: &str, dname: &str, parity: bool) -> (Gen, Gen) {
        let x = self.add(name, parity, 0, GenKind::Point);
        let dx = self.add(dname, !parity, 1, GenKind::Differential(x));
        self.set_d(x, Form::gen(dx));
        (x, dx)
    }

    /// Change the kind of a non-point letter.
    pub fn retag(&mut self, g: Gen, kind: GenKind) {
        assert!(self.gens[g.idx()].kind != GenKind::Point && kind != GenKind::Point);
        self.gens[g.idx()].kind = kind;
    }

    pub fn alias(&mut self, name: &str, f: Form) {
        self.aliases.insert(name.to_owned(), f);
    }

    pub fn set_d(&mut self, g: Gen, f: Form) {
        self.gens[g.idx()].d_image = f;
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn gens(&self) -> impl Iterator<Item = Gen> {
        (0..self.gens.len() as u16).map(Gen)
    }

    pub fn info(&self, g: Gen) -> &GenInfo {
        &self.gens[g.idx()]
    }

    pub fn name(&self, g: Gen) -> &str {
        &self.gens[g.idx()].name
    }

    pub fn parity(&self, g: Gen) -> bool {
        self.gens[g.idx()].parity
    }

    pub fn py(&self, g: Gen) -> u8 {
        self.gens[g.idx()].py
    }

    pub fn kind(&self, g: Gen) -> GenKind {
        self.gens[g.idx()].kind
    }

    pub fn d_image(&self, g: Gen) -> &Form {
        &self.gens[g.idx()].d_image
    }

    pub fn by_name(&self, name: &str) -> Option<Gen> {
        self.names.get(name).copied()
    }

    /// Generator or alias lookup.
    pub fn lookup(&self, name: &str) -> Option<Form> {
        if let Some(&g) = self.names.get(name) {
            return Some(Form::gen(g));
        }
        self.aliases.get(name).cloned()
    }

    /// Does any generator or alias start with the alphabetic stem of `name`?
    pub fn has_family(&self, name: &str) -> bool {
        let stem: String = name.chars().take_while(|c| c.is_ascii_alphabetic()).collect();
        !stem.is_empty()
            && self
                .names
                .keys()
                .chain(self.aliases.keys())
                .any(|k| k.chars().take_while(|c| c.is_ascii_alphabetic()).collect::<String>() == stem)
    }

    /// Point letters in index order.
    pub fn points(&self) -> &[Gen] {
        &self.points
    }

    pub fn point_index(&self, g: Gen) -> Option<usize> {
        self.point_of[g.idx()]
    }

    /// The differential letter of the i-th point, if it has one.
    pub fn differential(&self, i: usize) -> Option<Gen> {
        let x = self.points[i];
        self.gens().find(|&g| self.kind(g) == GenKind::Differential(x))
    }

    pub fn word_parity(&self, w: &Word) -> bool {
        w.letters().iter().fold(false, |p, &g| p ^ self.parity(g))
    }

    /// (p_x, p_y) of a word.
    pub fn bidegree(&self, w: &Word) -> (u32, u32) {
        let mut px = 0;
        let mut py = 0;
        for &g in w.letters() {
            let d = self.py(g) as u32;
            if d == 0 {
                px += 1;
            }
            py += d;
        }
        (px, py)
    }

    pub fn py_word(&self, w: &Word) -> u32 {
        w.letters().iter().map(|&g| self.py(g) as u32).sum()
    }

    /// The parity of a form if all its words agree.
    pub fn form_parity(&self, a: &Form) -> Option<bool> {
        let mut it = a.terms().map(|(w, _)| self.word_parity(w));
        let first = it.next()?;
        if it.all(|p| p == first) {
            Some(first)
        } else {
            None
        }
    }

    /// Σ (−1)^{p(w)} w.
    pub fn parity_twist(&self, a: &Form) -> Form {
        let mut out = Form::zero();
        for (w, c) in a.terms() {
            out.add_term(w.clone(), if self.word_parity(w) { -c } else { c.clone() });
        }
        out
    }

    pub fn is_graded(&self) -> bool {
        self.points.iter().any(|&g| self.parity(g))
    }
}

/// Partition of a form by (x-degree, y-degree).
pub fn bigrade(a: &Form, sig: &Signature) -> BTreeMap<(u32, u32), Form> {
    let mut out: BTreeMap<(u32, u32), Form> = BTreeMap::new();
    for (w, c) in a.terms() {
        out.entry(sig.bidegree(w)).or_default().add_term(w.clone(), c.clone());
    }
    out
}
