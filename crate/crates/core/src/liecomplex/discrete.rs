//! The two aff(1)-subcomplexes of the gl(2) complexes, where `d` acts on
//! one variable as a finite difference.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::expr::print;
use crate::forms::{Form, Gen, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum DiscreteVariant {
    /// Normal form `y^a x^b`; `d f = dy f_y + dx (f(x+1) − f(x))`.
    Forward,
    /// Normal form `x^a y^b`; `d f = dx (f(x) − f(x−1)) + dy f_y`.
    Backward,
}

/// Commutative polynomial in `x, y`, keyed by `(deg_x, deg_y)`.
pub type Poly = BTreeMap<(u32, u32), Scalar>;

fn letters(sys: &RewriteSystem) -> [Gen; 4] {
    let s = sys.sig();
    ["x", "y", "dx", "dy"].map(|n| s.by_name(n).expect("discrete letter"))
}

/// `x = e11`, `y = e12` inside the left (`Forward`) or right (`Backward`) gl(2) complex.
pub fn discrete_system(variant: DiscreteVariant) -> RewriteSystem {
    let mut sig = Signature::new(ParamTable::standard());
    let (x, dx) = sig.add_pair("x", "dx", false);
    let (y, dy) = sig.add_pair("y", "dy", false);
    let w = |a: &[Gen]| Form::word(a);
    let mut rules = BTreeMap::new();
    let (order, name) = match variant {
        DiscreteVariant::Forward => {
            rules.insert((x, y), w(&[y, x]) + Form::gen(y));
            rules.insert((x, dx), w(&[dx, x]) + Form::gen(dx));
            rules.insert((x, dy), w(&[dy, x]) + Form::gen(dy));
            rules.insert((y, dx), w(&[dx, y]));
            rules.insert((y, dy), w(&[dy, y]));
            rules.insert((dx, dy), -w(&[dy, dx]));
            (vec![dy, dx, y, x], "discrete-forward")
        }
        DiscreteVariant::Backward => {
            rules.insert((y, x), w(&[x, y]) - Form::gen(y));
            rules.insert((x, dx), w(&[dx, x]) - Form::gen(dx));
            rules.insert((y, dx), w(&[dx, y]) - Form::gen(dy));
            rules.insert((x, dy), w(&[dy, x]));
            rules.insert((y, dy), w(&[dy, y]));
            rules.insert((dy, dx), -w(&[dx, dy]));
            (vec![dx, dy, x, y], "discrete-backward")
        }
    };
    rules.insert((dx, dx), Form::zero());
    rules.insert((dy, dy), Form::zero());
    RewriteSystem::new(name, sig, order, rules).expect("discrete presentation")
}

/// Read a normal-form function as a commutative polynomial.
pub fn to_poly(f: &Form, sys: &RewriteSystem) -> Result<Poly> {
    let [x, y, _, _] = letters(sys);
    let mut p = Poly::new();
    for (w, c) in sys.normalize(f).terms() {
        let mut e = (0, 0);
        for &g in w.letters() {
            if g == x {
                e.0 += 1;
            } else if g == y {
                e.1 += 1;
            } else {
                return Err(Error::Invalid(format!("`{}` is not a function", print(f, sys.sig()))));
            }
        }
        add(&mut p, e, c.clone());
    }
    Ok(p)
}

/// The normal-form word for `x^a y^b` in the given variant.
pub fn from_poly(p: &Poly, variant: DiscreteVariant, sys: &RewriteSystem) -> Form {
    let [x, y, _, _] = letters(sys);
    let mut f = Form::zero();
    for (&(a, b), c) in p {
        let xs = std::iter::repeat_n(x, a as usize);
        let ys = std::iter::repeat_n(y, b as usize);
        let w: Vec<Gen> = match variant {
            DiscreteVariant::Forward => ys.chain(xs).collect(),
            DiscreteVariant::Backward => xs.chain(ys).collect(),
        };
        f.add_term(Word::from_slice(&w), c.clone());
    }
    f
}

fn add(p: &mut Poly, e: (u32, u32), c: Scalar) {
    let s = p.remove(&e).unwrap_or_default() + c;
    if !s.is_zero() {
        p.insert(e, s);
    }
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// `p(x + s, y)`.
pub fn shift_x(p: &Poly, s: i64) -> Poly {
    let mut out = Poly::new();
    for (&(a, b), c) in p {
        for k in 0..=a {
            let coeff = BigRational::from_integer(binomial(a, k) * BigInt::from(s).pow(a - k));
            add(&mut out, (k, b), c.scale(&coeff));
        }
    }
    out
}

pub fn sub(p: &Poly, q: &Poly) -> Poly {
    let mut out = p.clone();
    for (&e, c) in q {
        add(&mut out, e, -c);
    }
    out
}

pub fn d_dy(p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a, b), c) in p {
        if b > 0 {
            add(&mut out, (a, b - 1), c.scale(&BigRational::from_integer(BigInt::from(b))));
        }
    }
    out
}

/// `∫ p dy` with no constant term in `y`.
pub fn integrate_y(p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (&(a, b), c) in p {
        add(&mut out, (a, b + 1), c.scale(&BigRational::new(BigInt::one(), BigInt::from(b + 1))));
    }
    out
}

/// Coefficients of `x(x−1)…(x−m+1)`.
fn falling(m: u32) -> Vec<BigRational> {
    let mut c = vec![BigRational::one()];
    for i in 0..m {
        let mut next = vec![BigRational::zero(); c.len() + 1];
        for (k, v) in c.iter().enumerate() {
            next[k + 1] += v;
            next[k] -= v * BigRational::from_integer(BigInt::from(i));
        }
        c = next;
    }
    c
}

/// `G̃` with `G̃(x+1) − G̃(x) = G(x)` and `G̃(0) = 0`, for `G` in `x` alone
/// (`g[k]` is the coefficient of `x^k`).
pub fn antidifference(g: &[Scalar]) -> Vec<Scalar> {
    // x^k = Σ_j S(k, j) x^(j), via the falling-factorial triangle.
    let deg = g.len();
    let mut in_falling = vec![Scalar::zero(); deg];
    let mut rest: Vec<Scalar> = g.to_vec();
    for j in (0..deg).rev() {
        let lead = rest[j].clone();
        if lead.is_zero() {
            continue;
        }
        in_falling[j] = lead.clone();
        for (k, v) in falling(j as u32).iter().enumerate() {
            rest[k] = &rest[k] - &lead.scale(v);
        }
    }
    let mut out = vec![Scalar::zero(); deg + 1];
    for (j, b) in in_falling.iter().enumerate() {
        if b.is_zero() {
            continue;
        }
        let b = b.scale(&BigRational::new(BigInt::one(), BigInt::from(j as u64 + 1)));
        for (k, v) in falling(j as u32 + 1).iter().enumerate() {
            out[k] = &out[k] + &b.scale(v);
        }
    }
    while out.last().is_some_and(|c| c.is_zero()) {
        out.pop();
    }
    out
}

/// The pair `(a, b)` of `d f = dy a + dx b` as polynomials.
pub fn discrete_d_poly(p: &Poly, variant: DiscreteVariant) -> (Poly, Poly) {
    let diff = match variant {
        DiscreteVariant::Forward => sub(&shift_x(p, 1), p),
        DiscreteVariant::Backward => sub(p, &shift_x(p, -1)),
    };
    (d_dy(p), diff)
}

fn one_form(a: &Poly, b: &Poly, variant: DiscreteVariant, sys: &RewriteSystem) -> Form {
    let [_, _, dx, dy] = letters(sys);
    &Form::gen(dy) * &from_poly(a, variant, sys) + &Form::gen(dx) * &from_poly(b, variant, sys)
}

/// The mixed continuous/difference differential of a function.
pub fn discrete_d(f: &Form, variant: DiscreteVariant, sys: &RewriteSystem) -> Result<Form> {
    let (a, b) = discrete_d_poly(&to_poly(f, sys)?, variant);
    Ok(sys.normalize(&one_form(&a, &b, variant, sys)))
}

/// Split a normal-form 1-form into its `dy` and `dx` coefficients.
pub fn split_one_form(w: &Form, sys: &RewriteSystem) -> Result<(Poly, Poly)> {
    let [_, _, dx, dy] = letters(sys);
    let w = sys.normalize(w);
    let (mut a, mut b) = (Form::zero(), Form::zero());
    for (word, c) in w.terms() {
        let (head, tail) = word.letters().split_first().ok_or_else(|| not_one_form(&w, sys))?;
        let tail = Word::from_slice(tail);
        if *head == dy {
            a.add_term(tail, c.clone());
        } else if *head == dx {
            b.add_term(tail, c.clone());
        } else {
            return Err(not_one_form(&w, sys));
        }
    }
    let bad = |_| not_one_form(&w, sys);
    Ok((to_poly(&a, sys).map_err(bad)?, to_poly(&b, sys).map_err(bad)?))
}

fn not_one_form(w: &Form, sys: &RewriteSystem) -> Error {
    Error::Invalid(format!("`{}` is not a 1-form", print(w, sys.sig())))
}

/// A function `F` with `d F = ω` for a closed 1-form `ω`.
pub fn discrete_poincare(w: &Form, variant: DiscreteVariant, sys: &RewriteSystem) -> Result<Form> {
    let (a, b) = split_one_form(w, sys)?;
    // ω = dy a + dx b; in the backward variant the roles of the shift are mirrored.
    let (diff_a, b_y) = match variant {
        DiscreteVariant::Forward => (sub(&shift_x(&a, 1), &a), d_dy(&b)),
        DiscreteVariant::Backward => (sub(&a, &shift_x(&a, -1)), d_dy(&b)),
    };
    let obstruction = sub(&diff_a, &b_y);
    if !obstruction.is_empty() {
        let [_, _, dx, dy] = letters(sys);
        let dw = &Form::gen(dy) * &Form::gen(dx) * from_poly(&obstruction, variant, sys);
        return Err(Error::NotClosed(print(&sys.normalize(&dw), sys.sig())));
    }
    let f = integrate_y(&a);
    let (_, df_x) = discrete_d_poly(&f, variant);
    let g = sub(&b, &df_x);
    let mut gx = Vec::new();
    for (&(ea, eb), c) in &g {
        debug_assert_eq!(eb, 0);
        if gx.len() <= ea as usize {
            gx.resize(ea as usize + 1, Scalar::zero());
        }
        gx[ea as usize] = c.clone();
    }
    let tilde = match variant {
        DiscreteVariant::Forward => antidifference(&gx),
        DiscreteVariant::Backward => {
            // K(x+1) − K(x) = G(x+1) gives K(x) − K(x−1) = G(x).
            let gp: Poly = gx.iter().enumerate().map(|(k, c)| ((k as u32, 0), c.clone())).collect();
            let shifted = shift_x(&gp, 1);
            let mut h = vec![Scalar::zero(); gx.len()];
            for (&(k, _), c) in &shifted {
                h[k as usize] = c.clone();
            }
            antidifference(&h)
        }
    };
    let mut prim = f;
    for (k, c) in tilde.into_iter().enumerate() {
        add(&mut prim, (k as u32, 0), c);
    }
    Ok(from_poly(&prim, variant, sys))
}

/// Evaluate a polynomial in `x` at an integer.
pub fn eval_x(g: &[Scalar], x: i64) -> Scalar {
    let mut acc = Scalar::zero();
    for c in g.iter().rev() {
        acc = acc * Scalar::int(x) + c.clone();
    }
    acc
}
