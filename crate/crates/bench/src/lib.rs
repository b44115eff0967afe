//! Fixed inputs shared by the benchmarks.

use ncforms::sample::{self, case_rng, Pool, Shape};
use ncforms::{Form, RewriteSystem, Scalar, Signature};

/// Random words over every letter of `sys`, seeded.
pub fn words(sys: &RewriteSystem, count: usize, len: usize, seed: u64) -> Vec<Form> {
    let letters: Vec<_> = sys.sig().gens().collect();
    (0..count as u64)
        .map(|c| Form::term(sample::word(&mut case_rng(seed, c), &letters, len), Scalar::one()))
        .collect()
}

/// Random forms of y-degree `py`.
pub fn forms(sig: &Signature, count: usize, py: u32, seed: u64) -> Vec<Form> {
    (0..count as u64)
        .map(|c| sample::of_degree(&mut case_rng(seed, c), sig, py, &Shape::new(6, 4), &Pool::rational()))
        .collect()
}
