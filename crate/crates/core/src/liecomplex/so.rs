use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// The so(n) complex: `M[i,j]` (`i < j`, `M[j,i] = −M[i,j]`), odd `th[i,j]`
/// and central symmetric `rho[i,j]`, with `d M_iα = θ_iα − θ_αi`,
/// `d θ_iα = ρ_iα`. Normal order `ρ < θ < M`.
pub fn so_complex(n: usize) -> Result<RewriteSystem> {
    if n < 2 {
        return Err(Error::InvalidPresentation("so(n) needs n >= 2".into()));
    }
    let mut sig = Signature::new(ParamTable::standard());
    let mut rho = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i..n {
            let g = sig.add(&format!("rho[{},{}]", i + 1, j + 1), false, 2, GenKind::Other);
            rho[i][j] = Some(g);
            rho[j][i] = Some(g);
            if i != j {
                sig.alias(&format!("rho[{},{}]", j + 1, i + 1), Form::gen(g));
            }
        }
    }
    let rho: Vec<Vec<Gen>> = rho.into_iter().map(|r| r.into_iter().map(Option::unwrap).collect()).collect();
    let th: Vec<Vec<Gen>> = (0..n)
        .map(|i| (0..n).map(|j| sig.add(&format!("th[{},{}]", i + 1, j + 1), true, 1, GenKind::Other)).collect())
        .collect();
    let mut ms = Vec::new();
    let mut m_gen = vec![vec![None; n]; n];
    for i in 0..n {
        for j in i + 1..n {
            let g = sig.add(&format!("M[{},{}]", i + 1, j + 1), false, 0, GenKind::Other);
            sig.alias(&format!("M[{},{}]", j + 1, i + 1), -Form::gen(g));
            m_gen[i][j] = Some(g);
            ms.push((i, j, g));
        }
    }
    let m = |k: usize, l: usize| -> Form {
        match k.cmp(&l) {
            std::cmp::Ordering::Less => Form::gen(m_gen[k][l].unwrap()),
            std::cmp::Ordering::Equal => Form::zero(),
            std::cmp::Ordering::Greater => -Form::gen(m_gen[l][k].unwrap()),
        }
    };
    for &(i, a, g) in &ms {
        sig.set_d(g, Form::gen(th[i][a]) - Form::gen(th[a][i]));
    }
    for i in 0..n {
        for a in 0..n {
            sig.set_d(th[i][a], Form::gen(rho[i][a]));
        }
    }

    let rhos: Vec<Gen> = (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).map(|(i, j)| rho[i][j]).collect();
    let ths: Vec<Gen> = th.iter().flatten().copied().collect();
    let swap = |a: Gen, b: Gen| Form::word(&[b, a]);
    let delta = |a: usize, b: usize| a == b;
    let mut rules = BTreeMap::new();

    // [M_iα, M_jβ] = δ_jα M_iβ − δ_iβ M_jα − δ_αβ M_ij − δ_ij M_αβ
    let m_bracket = |i: usize, a: usize, j: usize, b: usize| -> Form {
        let mut f = Form::zero();
        if delta(j, a) {
            f += m(i, b);
        }
        if delta(i, b) {
            f -= &m(j, a);
        }
        if delta(a, b) {
            f -= &m(i, j);
        }
        if delta(i, j) {
            f -= &m(a, b);
        }
        f
    };
    for (y, &(j, b, mb)) in ms.iter().enumerate() {
        for &(i, a, ma) in &ms[..y] {
            rules.insert((mb, ma), swap(mb, ma) - m_bracket(i, a, j, b));
        }
    }
    // M_iα θ_jβ = θ_jβ M_iα + δ_αβ θ_ji − δ_iβ θ_jα
    for &(i, a, mg) in &ms {
        for j in 0..n {
            for b in 0..n {
                let mut r = swap(mg, th[j][b]);
                if delta(a, b) {
                    r.add_term(Word::letter(th[j][i]), Scalar::one());
                }
                if delta(i, b) {
                    r.add_term(Word::letter(th[j][a]), -Scalar::one());
                }
                rules.insert((mg, th[j][b]), r);
            }
        }
        for &p in &rhos {
            rules.insert((mg, p), swap(mg, p));
        }
    }
    // θ_jβ θ_iα + θ_iα θ_jβ = δ_αβ ρ_ij
    let pos = |g: Gen| ths.iter().position(|&t| t == g).unwrap();
    for j in 0..n {
        for b in 0..n {
            for i in 0..n {
                for a in 0..n {
                    let (hi, lo) = (th[j][b], th[i][a]);
                    match pos(hi).cmp(&pos(lo)) {
                        std::cmp::Ordering::Greater => {
                            let mut r = -swap(hi, lo);
                            if delta(a, b) {
                                r.add_term(Word::letter(rho[i][j]), Scalar::one());
                            }
                            rules.insert((hi, lo), r);
                        }
                        std::cmp::Ordering::Equal if delta(a, b) => {
                            rules.insert((hi, lo), Form::term(Word::letter(rho[i][i]), Scalar::frac(1, 2)));
                        }
                        _ => {}
                    }
                }
            }
        }
        for b in 0..n {
            for &p in &rhos {
                rules.insert((th[j][b], p), swap(th[j][b], p));
            }
        }
    }
    for (x, &p) in rhos.iter().enumerate() {
        for &q in &rhos[..x] {
            rules.insert((p, q), swap(p, q));
        }
    }
    let order = rhos.iter().chain(&ths).copied().chain(ms.iter().map(|t| t.2)).collect();
    RewriteSystem::new(&format!("so{}", n), sig, order, rules)
}

/// Ghost-free sl(2) matrix whose rank must not exceed 2.
pub fn sl2_ghostless_matrix() -> [[Scalar; 3]; 3] {
    let (l, m, v) = (Scalar::sym("lambda"), Scalar::sym("mu"), Scalar::sym("nu"));
    [
        [l.clone(), Scalar::zero(), -&v],
        [Scalar::zero(), -&l, m.clone()],
        [m.scale(&crate::scalar::rat(-2, 1)), v.scale(&crate::scalar::rat(2, 1)), Scalar::zero()],
    ]
}

pub fn det3(a: &[[Scalar; 3]; 3]) -> Scalar {
    let minor = |r1: &[Scalar; 3], r2: &[Scalar; 3], c1: usize, c2: usize| &(&r1[c1] * &r2[c2]) - &(&r1[c2] * &r2[c1]);
    let t0 = &a[0][0] * &minor(&a[1], &a[2], 1, 2);
    let t1 = &a[0][1] * &minor(&a[1], &a[2], 0, 2);
    let t2 = &a[0][2] * &minor(&a[1], &a[2], 0, 1);
    &(&t0 - &t1) + &t2
}

/// The determinant of the ghost-free sl(2) matrix vanishes identically.
pub fn sl2_ghostless_check() -> Scalar {
    det3(&sl2_ghostless_matrix())
}
