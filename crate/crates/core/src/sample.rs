//! Seeded random forms, derivations and extended forms for property suites.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::ExtendedForm;
use crate::cartan::Derivation;
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::scalar::Scalar;

/// Independent stream for case `case` of a run seeded with `seed`.
pub fn case_rng(seed: u64, case: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(case);
    rng
}

/// Coefficients drawn from `{±1, ±1/2, 2}`, optionally `h` and Q-monomials.
#[derive(Clone, Debug)]
pub struct Pool {
    pub h: bool,
    /// Number of indices available for `Q_ij` factors (0 disables them).
    pub q: usize,
}

impl Pool {
    pub fn rational() -> Pool {
        Pool { h: false, q: 0 }
    }

    pub fn with_h() -> Pool {
        Pool { h: true, q: 0 }
    }

    pub fn with_q(n: usize) -> Pool {
        Pool { h: false, q: n }
    }

    pub fn draw(&self, rng: &mut impl Rng) -> Scalar {
        let base = [Scalar::one(), -Scalar::one(), Scalar::frac(1, 2), Scalar::frac(-1, 2), Scalar::int(2)];
        let mut c = base.choose(rng).unwrap().clone();
        if self.h && rng.gen_bool(0.3) {
            c = c * Scalar::h();
        }
        if self.q >= 2 && rng.gen_bool(0.3) {
            let i = rng.gen_range(0..self.q);
            let mut j = rng.gen_range(0..self.q - 1);
            if j >= i {
                j += 1;
            }
            c = c * Scalar::q(i, j);
        }
        c
    }
}

/// Shape of random forms.
#[derive(Clone, Debug)]
pub struct Shape {
    pub max_len: usize,
    pub max_terms: usize,
}

impl Shape {
    pub fn new(max_len: usize, max_terms: usize) -> Shape {
        Shape { max_len, max_terms }
    }
}

pub fn word(rng: &mut impl Rng, letters: &[Gen], max_len: usize) -> Word {
    let len = rng.gen_range(0..=max_len);
    Word::from_slice(&(0..len).map(|_| *letters.choose(rng).unwrap()).collect::<Vec<_>>())
}

pub fn form(rng: &mut impl Rng, letters: &[Gen], shape: &Shape, pool: &Pool) -> Form {
    let terms = rng.gen_range(1..=shape.max_terms);
    let mut f = Form::zero();
    for _ in 0..terms {
        let w = word(rng, letters, shape.max_len);
        f.add_term(w, pool.draw(rng));
    }
    f
}

/// A random form over every letter of `sig`.
pub fn any_form(rng: &mut impl Rng, sig: &Signature, shape: &Shape, pool: &Pool) -> Form {
    let letters: Vec<Gen> = sig.gens().collect();
    form(rng, &letters, shape, pool)
}

/// A random form all of whose words have parity `parity`.
pub fn homogeneous(rng: &mut impl Rng, letters: &[Gen], sig: &Signature, parity: bool, shape: &Shape, pool: &Pool) -> Form {
    let terms = rng.gen_range(1..=shape.max_terms);
    let mut f = Form::zero();
    for _ in 0..terms {
        for _ in 0..32 {
            let w = word(rng, letters, shape.max_len);
            if sig.word_parity(&w) == parity {
                f.add_term(w, pool.draw(rng));
                break;
            }
        }
    }
    f
}

/// A random form of fixed y-degree `py` over points and differentials.
pub fn of_degree(rng: &mut impl Rng, sig: &Signature, py: u32, shape: &Shape, pool: &Pool) -> Form {
    let xs: Vec<Gen> = sig.points().to_vec();
    let ys: Vec<Gen> = sig.gens().filter(|&g| matches!(sig.kind(g), GenKind::Differential(_))).collect();
    let terms = rng.gen_range(1..=shape.max_terms);
    let mut f = Form::zero();
    for _ in 0..terms {
        let extra = rng.gen_range(0..=shape.max_len.saturating_sub(py as usize));
        let mut letters: Vec<Gen> = (0..extra).map(|_| *xs.choose(rng).unwrap()).collect();
        for _ in 0..py {
            let at = rng.gen_range(0..=letters.len());
            letters.insert(at, *ys.choose(rng).unwrap());
        }
        f.add_term(Word::from_slice(&letters), pool.draw(rng));
    }
    f
}

/// A homogeneous derivation with values in the point subalgebra.
pub fn derivation(rng: &mut impl Rng, sig: &Signature, parity: bool, shape: &Shape, pool: &Pool) -> Derivation {
    let xs = sig.points().to_vec();
    let values = xs
        .iter()
        .map(|&x| {
            if rng.gen_bool(0.2) {
                return Form::zero();
            }
            homogeneous(rng, &xs, sig, parity ^ sig.parity(x), shape, pool)
        })
        .collect();
    Derivation::new(parity, values)
}

/// A random element of the t/τ-extended algebra.
pub fn extended(rng: &mut impl Rng, letters: &[Gen], shape: &Shape, pool: &Pool, max_t: u32) -> ExtendedForm {
    let mut e = ExtendedForm::zero();
    for _ in 0..rng.gen_range(1..=3) {
        let m = rng.gen_range(0..=max_t);
        let f = form(rng, letters, shape, pool);
        let part = if rng.gen_bool(0.5) { ExtendedForm::plus_term(m, f) } else { ExtendedForm::minus_term(m, f) };
        e = e.add(&part);
    }
    e
}
