//! Laurent polynomials over the rationals in commuting, even parameters.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

use crate::error::{Error, Result};

/// Interned parameter name.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Sym(&'static str);

impl Sym {
    pub fn new(name: &str) -> Sym {
        static POOL: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();
        let mut pool = POOL.get_or_init(Default::default).lock().unwrap();
        if let Some(s) = pool.get(name) {
            return Sym(s);
        }
        let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
        pool.insert(leaked);
        Sym(leaked)
    }

    pub fn as_str(&self) -> &'static str {
        self.0
    }
}

impl fmt::Debug for Sym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.0)
    }
}

/// A commuting parameter of the coefficient ring.
///
/// `Q { i, j, g }` is a deformation constant `Q_ij^{(g)}` with 0-based
/// indices; `g` is a flat group-element index (0 for plain Q-spaces).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Param {
    Sym(Sym),
    Q { i: u16, j: u16, g: u32 },
}

impl Param {
    pub fn sym(name: &str) -> Param {
        Param::Sym(Sym::new(name))
    }
}

impl fmt::Display for Param {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Param::Sym(s) => f.write_str(s.as_str()),
            Param::Q { i, j, g: 0 } => write!(f, "Q[{},{}]", i + 1, j + 1),
            Param::Q { i, j, g } => write!(f, "Q[{},{};{}]", i + 1, j + 1, g),
        }
    }
}

/// Sorted parameter powers with nonzero exponents.
pub type Monomial = SmallVec<[(Param, i32); 2]>;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Monomial::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// Exact element of the coefficient ring.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    terms: Vec<(Monomial, BigRational)>,
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Scalar {
    pub fn zero() -> Scalar {
        Scalar { terms: Vec::new() }
    }

    pub fn one() -> Scalar {
        Scalar::from_rational(BigRational::one())
    }

    pub fn int(n: i64) -> Scalar {
        Scalar::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn frac(n: i64, d: i64) -> Scalar {
        Scalar::from_rational(rat(n, d))
    }

    pub fn from_rational(c: BigRational) -> Scalar {
        Scalar::monomial(c, Monomial::new())
    }

    pub fn monomial(c: BigRational, m: Monomial) -> Scalar {
        if c.is_zero() {
            Scalar::zero()
        } else {
            Scalar { terms: vec![(m, c)] }
        }
    }

    pub fn param(p: Param) -> Scalar {
        Scalar::param_pow(p, 1)
    }

    pub fn param_pow(p: Param, e: i32) -> Scalar {
        let mut m = Monomial::new();
        if e != 0 {
            m.push((p, e));
        }
        Scalar::monomial(BigRational::one(), m)
    }

    pub fn sym(name: &str) -> Scalar {
        Scalar::param(Param::sym(name))
    }

    /// The formal Planck constant.
    pub fn h() -> Scalar {
        Scalar::sym("h")
    }

    /// `Q_ij` (0-based) with `Q_ji = Q_ij^{-1}` and `Q_ii = 1`.
    pub fn q(i: usize, j: usize) -> Scalar {
        match i.cmp(&j) {
            std::cmp::Ordering::Equal => Scalar::one(),
            std::cmp::Ordering::Less => Scalar::param(Param::Q { i: i as u16, j: j as u16, g: 0 }),
            std::cmp::Ordering::Greater => {
                Scalar::param_pow(Param::Q { i: j as u16, j: i as u16, g: 0 }, -1)
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_empty() && self.terms[0].1.is_one()
    }

    pub fn terms(&self) -> &[(Monomial, BigRational)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The rational value if no parameter occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        match self.terms.as_slice() {
            [] => Some(BigRational::zero()),
            [(m, c)] if m.is_empty() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn params(&self) -> impl Iterator<Item = Param> + '_ {
        self.terms.iter().flat_map(|(m, _)| m.iter().map(|&(p, _)| p))
    }

    pub fn scale(&self, c: &BigRational) -> Scalar {
        if c.is_zero() {
            return Scalar::zero();
        }
        Scalar {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), x * c)).collect(),
        }
    }

    /// Inverse of a single-term scalar.
    pub fn inverse(&self) -> Result<Scalar> {
        match self.terms.as_slice() {
            [(m, c)] => {
                let m: Monomial = m.iter().map(|&(p, e)| (p, -e)).collect();
                Ok(Scalar::monomial(c.recip(), m))
            }
            _ => Err(Error::NotInvertible(self.to_string())),
        }
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let (base, n) = if e < 0 { (self.inverse()?, -e) } else { (self.clone(), e) };
        let mut acc = Scalar::one();
        for _ in 0..n {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Substitute `value` for every occurrence of `p`.
    pub fn substitute(&self, p: Param, value: &Scalar) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (m, c) in &self.terms {
            let mut rest = Monomial::new();
            let mut factor = Scalar::one();
            for &(q, e) in m {
                if q == p {
                    factor = value.pow(e)?;
                } else {
                    rest.push((q, e));
                }
            }
            acc += &(&Scalar::monomial(c.clone(), rest) * &factor);
        }
        Ok(acc)
    }

    fn from_map(map: BTreeMap<Monomial, BigRational>) -> Scalar {
        Scalar {
            terms: map.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Scalar {
        Scalar::int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(c: BigRational) -> Scalar {
        Scalar::from_rational(c)
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &Scalar) -> Scalar {
        let mut out = Vec::with_capacity(self.terms.len() + rhs.terms.len());
        let (a, b) = (&self.terms, &rhs.terms);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Less => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(b[j].clone());
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = &a[i].1 + &b[j].1;
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Scalar { terms: out }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        &self + &rhs
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        *self = &*self + rhs;
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &Scalar) -> Scalar {
        self + &(-rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        &self - &rhs
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &Scalar) -> Scalar {
        if self.terms.len() == 1 && rhs.terms.len() == 1 {
            let (ma, ca) = &self.terms[0];
            let (mb, cb) = &rhs.terms[0];
            return Scalar::monomial(ca * cb, mono_mul(ma, mb));
        }
        let mut map: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *map.entry(mono_mul(ma, mb)).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        Scalar::from_map(map)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        &self * &rhs
    }
}

fn fmt_rational(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_mono(m: &Monomial) -> String {
    m.iter()
        .map(|(p, e)| if *e == 1 { p.to_string() } else { format!("{}^{}", p, e) })
        .collect::<Vec<_>>()
        .join("*")
}

/// Prints one term with its sign folded into the leading position.
pub(crate) fn fmt_term(m: &Monomial, c: &BigRational) -> String {
    let neg = c.is_negative();
    let a = c.abs();
    let body = if m.is_empty() {
        fmt_rational(&a)
    } else if a.is_one() {
        fmt_mono(m)
    } else {
        format!("{}*{}", fmt_rational(&a), fmt_mono(m))
    };
    if neg {
        format!("-{}", body)
    } else {
        body
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let t = fmt_term(m, c);
            if k == 0 {
                f.write_str(&t)?;
            } else if let Some(rest) = t.strip_prefix('-') {
                write!(f, " - {}", rest)?;
            } else {
                write!(f, " + {}", t)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Scalar({})", self)
    }
}

/// Declared parameters, by surface name.
///
/// Each deformation pair is stored once under its canonical orientation;
/// the reversed name resolves to the inverse power.
#[derive(Clone, Debug, Default)]
pub struct ParamTable {
    entries: Vec<ParamEntry>,
    by_name: HashMap<String, Scalar>,
}

#[derive(Clone, Debug)]
pub struct ParamEntry {
    pub name: String,
    pub param: Param,
    pub inverse_of: Option<String>,
}

impl ParamTable {
    pub fn new() -> ParamTable {
        ParamTable::default()
    }

    /// h, k, lambda, mu, nu.
    pub fn standard() -> ParamTable {
        let mut t = ParamTable::new();
        for name in ["h", "k", "lambda", "mu", "nu"] {
            t.declare(name);
        }
        t
    }

    /// Standard names plus `Q[i,j]` for all `i != j < n`.
    pub fn with_q(n: usize) -> ParamTable {
        let mut t = ParamTable::standard();
        for i in 0..n {
            for j in i + 1..n {
                t.declare_pair(Param::Q { i: i as u16, j: j as u16, g: 0 }, format!("Q[{},{}]", j + 1, i + 1));
            }
        }
        t
    }

    pub fn declare(&mut self, name: &str) -> Param {
        let p = Param::sym(name);
        if !self.by_name.contains_key(name) {
            self.entries.push(ParamEntry { name: name.to_owned(), param: p, inverse_of: None });
            self.by_name.insert(name.to_owned(), Scalar::param(p));
        }
        p
    }

    /// Declare `p` under its display name and `inverse_name` as `p^{-1}`.
    pub fn declare_pair(&mut self, p: Param, inverse_name: String) {
        let name = p.to_string();
        if self.by_name.contains_key(&name) {
            return;
        }
        self.entries.push(ParamEntry { name: name.clone(), param: p, inverse_of: None });
        self.by_name.insert(name.clone(), Scalar::param(p));
        self.entries.push(ParamEntry { name: inverse_name.clone(), param: p, inverse_of: Some(name) });
        self.by_name.insert(inverse_name, Scalar::param_pow(p, -1));
    }

    /// Declare a surface name: `Q[i,j]` as a deformation pair, `Q[i,j;g]` as a
    /// group-indexed constant, anything else as a plain symbol.
    pub fn declare_name(&mut self, name: &str) {
        if let Some(inner) = name.strip_prefix("Q[").and_then(|r| r.strip_suffix(']')) {
            let (ij, g) = match inner.split_once(';') {
                Some((a, b)) => (a, b.trim().parse::<u32>().ok()),
                None => (inner, Some(0)),
            };
            let idx: Vec<Option<u16>> = ij.split(',').map(|t| t.trim().parse::<u16>().ok()).collect();
            if let ([Some(i), Some(j)], Some(g)) = (idx.as_slice(), g) {
                if *i >= 1 && *j >= 1 && i != j {
                    let (a, b) = if i < j { (i - 1, j - 1) } else { (j - 1, i - 1) };
                    let p = Param::Q { i: a, j: b, g };
                    if g == 0 {
                        self.declare_pair(p, format!("Q[{},{}]", b + 1, a + 1));
                    } else {
                        let p = Param::Q { i: i - 1, j: j - 1, g };
                        self.entries.push(ParamEntry { name: p.to_string(), param: p, inverse_of: None });
                        self.by_name.insert(p.to_string(), Scalar::param(p));
                    }
                    return;
                }
            }
        }
        self.declare(name);
    }

    /// Bind a name to a fixed value (e.g. a self-inverse slot equal to 1).
    pub fn bind(&mut self, name: String, value: Scalar) {
        self.by_name.insert(name, value);
    }

    pub fn lookup(&self, name: &str) -> Option<&Scalar> {
        self.by_name.get(name)
    }

    pub fn entries(&self) -> &[ParamEntry] {
        &self.entries
    }

    pub fn contains(&self, p: Param) -> bool {
        self.entries.iter().any(|e| e.param == p)
    }

    /// Every parameter of `s` must be declared here.
    pub fn validate(&self, s: &Scalar) -> Result<()> {
        for p in s.params() {
            if !self.contains(p) {
                return Err(Error::ParamMismatch(p.to_string()));
            }
        }
        Ok(())
    }

    /// Canonical (non-inverse) parameters, in declaration order.
    pub fn canonical(&self) -> Vec<Param> {
        self.entries.iter().filter(|e| e.inverse_of.is_none()).map(|e| e.param).collect()
    }
}
