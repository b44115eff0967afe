use std::collections::BTreeMap;

use crate::error::Result;
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::quantum::LieData;
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// The ghost complex on `U(𝒢)`: letters `e_i`, `ω^α_β = w[α,β]`,
/// `Ω^α_β = W[α,β]`, `ρ^α_β = rho[α,β]`, normal order `ρ < ω < Ω < e`.
///
/// With `finite`, products sharing the upper index of `ω`/`ρ` or the lower
/// index of `Ω`/`ρ` vanish; words containing such a pair anywhere are dropped.
pub fn general_complex(data: &LieData, finite: bool) -> Result<RewriteSystem> {
    let (n, r) = (data.dim, data.repdim);
    let mut sig = Signature::new(ParamTable::standard());
    let e: Vec<Gen> = (0..n).map(|i| sig.add(&format!("e{}", i + 1), false, 0, GenKind::Other)).collect();
    let grid = |sig: &mut Signature, stem: &str, parity: bool, py: u8| -> Vec<Vec<Gen>> {
        (0..r)
            .map(|a| (0..r).map(|b| sig.add(&format!("{}[{},{}]", stem, a + 1, b + 1), parity, py, GenKind::Other)).collect())
            .collect()
    };
    let w = grid(&mut sig, "w", true, 1);
    let big = grid(&mut sig, "W", true, 1);
    let rho = grid(&mut sig, "rho", false, 2);

    for i in 0..n {
        let mut de = Form::zero();
        for al in 0..r {
            for be in 0..r {
                let c = data.a(i, al, be);
                if !c.is_zero() {
                    de.add_term(Word::letter(w[al][be]), c.clone());
                    de.add_term(Word::letter(big[al][be]), c.clone());
                }
            }
        }
        sig.set_d(e[i], de);
    }
    for al in 0..r {
        for be in 0..r {
            sig.set_d(w[al][be], -Form::gen(rho[al][be]));
            sig.set_d(big[al][be], Form::gen(rho[al][be]));
        }
    }

    let flat = |g: &Vec<Vec<Gen>>| g.iter().flatten().copied().collect::<Vec<_>>();
    let (ws, bigs, rhos) = (flat(&w), flat(&big), flat(&rho));
    let order: Vec<Gen> = rhos.iter().chain(&ws).chain(&bigs).chain(&e).copied().collect();
    let swap = |a: Gen, b: Gen| Form::word(&[b, a]);
    let mut rules = BTreeMap::new();

    for i in 0..n {
        for j in 0..i {
            let mut rhs = swap(e[i], e[j]);
            for k in 0..n {
                rhs.add_term(Word::letter(e[k]), -data.c(j, i, k));
            }
            rules.insert((e[i], e[j]), rhs);
        }
        for al in 0..r {
            for be in 0..r {
                let mut rw = swap(e[i], w[al][be]);
                for nu in 0..r {
                    rw.add_term(Word::letter(w[al][nu]), data.a(i, be, nu).clone());
                }
                rules.insert((e[i], w[al][be]), rw);
                let mut rb = swap(e[i], big[al][be]);
                for mu in 0..r {
                    rb.add_term(Word::letter(big[mu][be]), -data.a(i, mu, al));
                }
                rules.insert((e[i], big[al][be]), rb);
            }
        }
        for &p in &rhos {
            rules.insert((e[i], p), swap(e[i], p));
        }
    }
    for (x, &a) in rhos.iter().enumerate() {
        for &b in &rhos[..x] {
            rules.insert((a, b), swap(a, b));
        }
        for &g in ws.iter().chain(&bigs) {
            rules.insert((g, a), swap(g, a));
        }
    }
    for family in [&ws, &bigs] {
        for (x, &a) in family.iter().enumerate() {
            rules.insert((a, a), Form::zero());
            for &b in &family[..x] {
                rules.insert((a, b), -swap(a, b));
            }
        }
    }
    // Ω^μ_ν ω^α_β = −ω^α_β Ω^μ_ν − δ^μ_β ρ^α_ν
    for mu in 0..r {
        for nu in 0..r {
            for al in 0..r {
                for be in 0..r {
                    let mut rhs = -swap(big[mu][nu], w[al][be]);
                    if mu == be {
                        rhs.add_term(Word::letter(rho[al][nu]), -Scalar::one());
                    }
                    rules.insert((big[mu][nu], w[al][be]), rhs);
                }
            }
        }
    }

    let mut kill = Vec::new();
    if finite {
        for al in 0..r {
            for mu in 0..r {
                for nu in 0..r {
                    kill.extend([
                        (w[al][mu], w[al][nu]),
                        (big[mu][al], big[nu][al]),
                        (w[al][mu], rho[al][nu]),
                        (big[mu][al], rho[nu][al]),
                        (rho[al][mu], rho[al][nu]),
                        (rho[mu][al], rho[nu][al]),
                    ]);
                }
            }
        }
    }
    let name = format!("complex-{}{}", data.name, if finite { "-fin" } else { "" });
    Ok(RewriteSystem::new(&name, sig, order, rules)?.with_annihilators(&kill))
}
