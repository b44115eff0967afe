use std::collections::BTreeMap;

use super::LieData;
use crate::error::{Error, Result};
use crate::forms::{Form, Gen, GenKind, Signature, Word};
use crate::report::Residuals;
use crate::rewrite::RewriteSystem;
use crate::scalar::{ParamTable, Scalar};

/// `F^1..F^N, G_1..G_N` with `F^α G_β − (−1)^{p(α)p(β)} G_β F^α = (−1)^{p(α)} δ h`
/// and graded-commuting `F`'s and `G`'s. Normal order puts every `F` first.
pub fn clebsch_algebra(parities: &[bool]) -> RewriteSystem {
    let n = parities.len();
    let mut sig = Signature::new(ParamTable::standard());
    let fs: Vec<Gen> = (0..n).map(|a| sig.add(&format!("F{}", a + 1), parities[a], 0, GenKind::Other)).collect();
    let gs: Vec<Gen> = (0..n).map(|a| sig.add(&format!("G{}", a + 1), parities[a], 0, GenKind::Other)).collect();
    let mut rules = BTreeMap::new();
    let swap = |x: Gen, y: Gen, odd: bool| {
        let w = Form::word(&[y, x]);
        if odd {
            -w
        } else {
            w
        }
    };
    for a in 0..n {
        for b in 0..n {
            let both = parities[a] && parities[b];
            if b < a {
                rules.insert((fs[a], fs[b]), swap(fs[a], fs[b], both));
                rules.insert((gs[a], gs[b]), swap(gs[a], gs[b], both));
            }
            // G_b F^a
            let mut r = swap(gs[b], fs[a], both);
            if a == b {
                let c = if parities[a] { Scalar::h() } else { -Scalar::h() };
                let c = if both { -c } else { c };
                r.add_term(Word::empty(), c);
            }
            rules.insert((gs[b], fs[a]), r);
        }
        if parities[a] {
            rules.insert((fs[a], fs[a]), Form::zero());
            rules.insert((gs[a], gs[a]), Form::zero());
        }
    }
    let order = fs.iter().chain(&gs).copied().collect();
    RewriteSystem::new("clebsch", sig, order, rules).expect("clebsch presentation")
}

/// Images of a Lie algebra and its representation space.
#[derive(Clone, Debug)]
pub struct Clebsch {
    pub sys: RewriteSystem,
    pub data: LieData,
    pub k: Scalar,
    /// `e_i = Σ A^β_iα F^α G_β h^{-1}`.
    pub e: Vec<Form>,
    /// `f_α = k G_α h^{-1}`.
    pub f: Vec<Form>,
    /// `ē_i = h e_i`.
    pub e_bar: Vec<Form>,
    /// `f̄_α = h f_α`.
    pub f_bar: Vec<Form>,
}

pub fn clebsch_build(data: &LieData, k: &Scalar, gradings: Option<&[bool]>) -> Result<Clebsch> {
    let data = match gradings {
        Some(p) => data.with_parities(p.to_vec())?,
        None => data.clone(),
    };
    let sys = clebsch_algebra(&data.parities);
    let sig = sys.sig();
    let r = data.repdim;
    let gen = |name: String| sig.by_name(&name).ok_or(Error::Invalid(name));
    let fs = (1..=r).map(|a| gen(format!("F{}", a))).collect::<Result<Vec<_>>>()?;
    let gs = (1..=r).map(|a| gen(format!("G{}", a))).collect::<Result<Vec<_>>>()?;
    let hinv = Scalar::h().inverse()?;
    let mut e_bar = Vec::new();
    for i in 0..data.dim {
        let mut e = Form::zero();
        for al in 0..r {
            for be in 0..r {
                let c = data.a(i, al, be);
                if !c.is_zero() {
                    e.add_term(Word::from_slice(&[fs[al], gs[be]]), c.clone());
                }
            }
        }
        e_bar.push(e);
    }
    let f_bar: Vec<Form> = gs.iter().map(|&g| Form::gen(g).scale(k)).collect();
    Ok(Clebsch {
        e: e_bar.iter().map(|e| e.scale(&hinv)).collect(),
        f: f_bar.iter().map(|f| f.scale(&hinv)).collect(),
        e_bar,
        f_bar,
        k: k.clone(),
        data,
        sys,
    })
}

/// Residuals of the bracket relations of `𝒢 ⋉ V`, plain or rescaled by `h`.
pub fn clebsch_verify(cl: &Clebsch, rescaled: bool) -> Residuals {
    let (e, f, unit) = if rescaled { (&cl.e_bar, &cl.f_bar, Scalar::h()) } else { (&cl.e, &cl.f, Scalar::one()) };
    let d = &cl.data;
    let sys = &cl.sys;
    let mut out = Residuals::new();
    let tag = if rescaled { "rescaled " } else { "" };
    for i in 0..d.dim {
        for j in 0..d.dim {
            let mut rhs = Form::zero();
            for k in 0..d.dim {
                rhs += e[k].scale(&(d.c(i, j, k) * &unit));
            }
            let res = sys.bracket(&e[i], &e[j]) - sys.normalize(&rhs);
            out.check(|| format!("{}[e{}, e{}]", tag, i + 1, j + 1), res);
        }
        for al in 0..d.repdim {
            let mut rhs = Form::zero();
            for be in 0..d.repdim {
                rhs += f[be].scale(&(d.a(i, al, be) * &unit));
            }
            let res = sys.bracket(&e[i], &f[al]) - sys.normalize(&rhs);
            out.check(|| format!("{}[e{}, f{}]", tag, i + 1, al + 1), res);
        }
    }
    for al in 0..d.repdim {
        for be in 0..d.repdim {
            out.check(|| format!("{}[f{}, f{}]", tag, al + 1, be + 1), sys.bracket(&f[al], &f[be]));
        }
    }
    out
}
