//! Vector fields on the free forms algebra: Lie derivatives, brackets,
//! contractions and the Cartan identities.

use crate::calculus::differential;
use crate::forms::{Form, Gen, GenKind, Signature};

/// A homogeneous vector field determined by its values on the points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub parity: bool,
    /// `values[i] = X(x_i)`, indexed like `Signature::points`.
    pub values: Vec<Form>,
}

impl Derivation {
    pub fn new(parity: bool, values: Vec<Form>) -> Derivation {
        Derivation { parity, values }
    }

    pub fn zero(n: usize, parity: bool) -> Derivation {
        Derivation { parity, values: vec![Form::zero(); n] }
    }

    /// `f ∂_i`.
    pub fn single(n: usize, i: usize, f: Form, parity: bool) -> Derivation {
        let mut d = Derivation::zero(n, parity);
        d.values[i] = f;
        d
    }

    /// The differential seen as the odd field `x_i ↦ y_i`.
    pub fn d_field(sig: &Signature) -> Derivation {
        let values = sig.points().iter().map(|&x| sig.d_image(x).clone()).collect();
        Derivation { parity: true, values }
    }

    pub fn value(&self, i: usize) -> &Form {
        &self.values[i]
    }

    fn sign(&self, odd_prefix: bool) -> bool {
        self.parity && odd_prefix
    }
}

fn letter_image(x: &Derivation, g: Gen, sig: &Signature) -> Form {
    match sig.kind(g) {
        GenKind::Point => x.values[sig.point_index(g).unwrap()].clone(),
        GenKind::Differential(p) => {
            let dv = differential(&x.values[sig.point_index(p).unwrap()], sig);
            if x.parity {
                -dv
            } else {
                dv
            }
        }
        GenKind::Other => Form::zero(),
    }
}

/// Graded-derivation extension of `X` to all forms.
pub fn apply(x: &Derivation, a: &Form, sig: &Signature) -> Form {
    let images: Vec<Form> = sig.gens().map(|g| letter_image(x, g, sig)).collect();
    let mut out = Form::zero();
    for (w, c) in a.terms() {
        let mut odd = false;
        for (j, &g) in w.letters().iter().enumerate() {
            let img = &images[g.idx()];
            if !img.is_zero() {
                let c = if x.sign(odd) { -c } else { c.clone() };
                for (iw, ic) in img.terms() {
                    out.add_term(w.splice(j, 1, iw.letters()), &c * ic);
                }
            }
            odd ^= sig.parity(g);
        }
    }
    out
}

/// `[X,Z](x_i) = X(Z_i) − (−1)^{p(X)p(Z)} Z(X_i)`.
pub fn bracket(x: &Derivation, z: &Derivation, sig: &Signature) -> Derivation {
    let values = (0..x.values.len())
        .map(|i| {
            let a = apply(x, &z.values[i], sig);
            let b = apply(z, &x.values[i], sig);
            if x.parity && z.parity {
                a + b
            } else {
                a - b
            }
        })
        .collect();
    Derivation { parity: x.parity ^ z.parity, values }
}

/// Interior product: each `y_i` is replaced by `X_i`, with sign
/// `(−1)^{(p(X)+1)·p(prefix)}`.
pub fn contract(x: &Derivation, a: &Form, sig: &Signature) -> Form {
    let mut out = Form::zero();
    let flip = !x.parity;
    for (w, c) in a.terms() {
        let mut odd = false;
        for (j, &g) in w.letters().iter().enumerate() {
            if let GenKind::Differential(p) = sig.kind(g) {
                let img = &x.values[sig.point_index(p).unwrap()];
                let c = if flip && odd { -c } else { c.clone() };
                for (iw, ic) in img.terms() {
                    out.add_term(w.splice(j, 1, iw.letters()), &c * ic);
                }
            }
            odd ^= sig.parity(g);
        }
    }
    out
}

/// `d⌟ω`: multiplies each component by its y-degree.
pub fn d_contract(a: &Form, sig: &Signature) -> Form {
    contract(&Derivation::d_field(sig), a, sig)
}

/// `Z_ℓ⌟…⌟Z_1⌟ω` for `zs = [Z_1, …, Z_ℓ]` (innermost first).
pub fn contract_chain(zs: &[&Derivation], a: &Form, sig: &Signature) -> Form {
    zs.iter().fold(a.clone(), |acc, z| contract(z, &acc, sig))
}

fn without<'a>(zs: &[&'a Derivation], skip: &[usize]) -> Vec<&'a Derivation> {
    zs.iter().enumerate().filter(|(i, _)| !skip.contains(i)).map(|(_, z)| *z).collect()
}

fn signed(f: Form, negative: bool) -> Form {
    if negative {
        -f
    } else {
        f
    }
}

/// Multi-contraction of `dω`, even fields: bracket terms sit innermost.
pub fn cartan_residual_ungraded(zs: &[&Derivation], a: &Form, sig: &Signature) -> Form {
    let l = zs.len();
    let lhs = contract_chain(zs, &differential(a, sig), sig);
    let mut rhs = signed(differential(&contract_chain(zs, a, sig), sig), l % 2 == 1);
    for al in 0..l {
        let inner = contract_chain(&without(zs, &[al]), a, sig);
        // (−1)^{α+1} with 1-based α
        rhs += signed(apply(zs[al], &inner, sig), al % 2 == 1);
    }
    for al in 0..l {
        for be in al + 1..l {
            let br = bracket(zs[al], zs[be], sig);
            let mut chain = vec![&br];
            chain.extend(without(zs, &[al, be]));
            rhs += signed(contract_chain(&chain, a, sig), (al + be) % 2 == 1);
        }
    }
    lhs - rhs
}

/// Multi-contraction of `dω` with parity signs; `[Z_β, Z_α]` replaces `Z_β`.
pub fn cartan_residual_graded(zs: &[&Derivation], a: &Form, sig: &Signature) -> Form {
    let l = zs.len();
    let s: Vec<u32> = zs.iter().map(|z| z.parity as u32 + 1).collect();
    let p: Vec<u32> = zs.iter().map(|z| z.parity as u32).collect();
    let lhs = contract_chain(zs, &differential(a, sig), sig);
    let total: u32 = s.iter().sum();
    let mut rhs = signed(differential(&contract_chain(zs, a, sig), sig), total % 2 == 1);
    for al in 0..l {
        let u: u32 = s[..al].iter().sum::<u32>() + p[al] * s[al + 1..].iter().sum::<u32>();
        let inner = contract_chain(&without(zs, &[al]), a, sig);
        rhs += signed(apply(zs[al], &inner, sig), u % 2 == 1);
    }
    for al in 0..l {
        for be in al + 1..l {
            let v: u32 = s[..al].iter().sum::<u32>() + p[al] * (1 + s[al + 1..be].iter().sum::<u32>());
            let br = bracket(zs[be], zs[al], sig);
            let chain: Vec<&Derivation> = (0..l)
                .filter(|&j| j != al)
                .map(|j| if j == be { &br } else { zs[j] })
                .collect();
            rhs += signed(contract_chain(&chain, a, sig), v % 2 == 1);
        }
    }
    lhs - rhs
}

/// LHS − RHS of the Cartan formula for `Z_ℓ⌟…⌟Z_1⌟dω`.
pub fn cartan_residual(zs: &[&Derivation], a: &Form, sig: &Signature) -> Form {
    if zs.iter().all(|z| !z.parity) && !sig.is_graded() {
        cartan_residual_ungraded(zs, a, sig)
    } else {
        cartan_residual_graded(zs, a, sig)
    }
}

/// `X(ab) − X(a)b − (−1)^{p(X)p(a)} a X(b)` for homogeneous `a`.
pub fn leibniz_residual(x: &Derivation, a: &Form, b: &Form, sig: &Signature) -> Form {
    let pa = sig.form_parity(a).unwrap_or(false);
    let lhs = apply(x, &(a * b), sig);
    lhs - &apply(x, a, sig) * b - signed(a * &apply(x, b, sig), x.parity && pa)
}

/// `X(dω) − (−1)^{p(X)} d(Xω)`.
pub fn commutes_with_d_residual(x: &Derivation, a: &Form, sig: &Signature) -> Form {
    apply(x, &differential(a, sig), sig) - signed(differential(&apply(x, a, sig), sig), x.parity)
}

/// `X⌟df − X(f)`.
pub fn contract_exact_residual(x: &Derivation, f: &Form, sig: &Signature) -> Form {
    contract(x, &differential(f, sig), sig) - apply(x, f, sig)
}

/// `X(ω) − (−1)^{p(X)} d(X⌟ω) − X⌟dω`.
pub fn lie_derivative_residual(x: &Derivation, a: &Form, sig: &Signature) -> Form {
    apply(x, a, sig)
        - signed(differential(&contract(x, a, sig), sig), x.parity)
        - contract(x, &differential(a, sig), sig)
}

/// `X⌟(ab) − (X⌟a)b − (−1)^{p(a)(p(X)+1)} a (X⌟b)` for homogeneous `a`.
pub fn contract_leibniz_residual(x: &Derivation, a: &Form, b: &Form, sig: &Signature) -> Form {
    let pa = sig.form_parity(a).unwrap_or(false);
    contract(x, &(a * b), sig) - &contract(x, a, sig) * b - signed(a * &contract(x, b, sig), pa && !x.parity)
}

/// `Z₁⌟Z₂⌟ω − (−1)^{(p(Z₁)+1)(p(Z₂)+1)} Z₂⌟Z₁⌟ω`.
pub fn contract_swap_residual(z1: &Derivation, z2: &Derivation, a: &Form, sig: &Signature) -> Form {
    let lhs = contract(z1, &contract(z2, a, sig), sig);
    let rhs = contract(z2, &contract(z1, a, sig), sig);
    lhs - signed(rhs, !z1.parity && !z2.parity)
}

/// Sign of a permutation given as images of `0..n`.
pub fn permutation_sign(perm: &[usize]) -> bool {
    let mut odd = false;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                odd = !odd;
            }
        }
    }
    odd
}

/// `chain(σ·zs) − sgn(σ) chain(zs)` for even fields.
pub fn contract_permutation_residual(zs: &[&Derivation], perm: &[usize], a: &Form, sig: &Signature) -> Form {
    let permuted: Vec<&Derivation> = perm.iter().map(|&i| zs[i]).collect();
    contract_chain(&permuted, a, sig) - signed(contract_chain(zs, a, sig), permutation_sign(perm))
}

/// `Z⌟X(ω) − (−1)^{p(X)(p(Z)+1)} X(Z⌟ω) − (−1)^{p(X)} [Z,X]⌟ω`.
pub fn contract_lie_residual(z: &Derivation, x: &Derivation, a: &Form, sig: &Signature) -> Form {
    let lhs = contract(z, &apply(x, a, sig), sig);
    let t1 = signed(apply(x, &contract(z, a, sig), sig), x.parity && !z.parity);
    let t2 = signed(contract(&bracket(z, x, sig), a, sig), x.parity);
    lhs - t1 - t2
}

/// Exchange of a Lie derivative with a multi-contraction, `zs = [Z_1, …, Z_ℓ]`
/// innermost first:
/// `(−1)^{p(X)(ℓ+Σp(Z))} Z_ℓ⌟…⌟Z_1⌟X(ω) − X(Z_ℓ⌟…⌟Z_1⌟ω)
///  − Σ_α (−1)^{p(X)(ℓ−α+Σ_{j≥α} p(Z_j))} (…⌟[Z_α,X]⌟…⌟ω)`.
pub fn lie_exchange_residual(x: &Derivation, zs: &[&Derivation], a: &Form, sig: &Signature) -> Form {
    let l = zs.len();
    let px = x.parity as usize;
    let psum: usize = zs.iter().map(|z| z.parity as usize).sum();
    let lhs = signed(contract_chain(zs, &apply(x, a, sig), sig), px * (l + psum) % 2 == 1);
    let mut rhs = apply(x, &contract_chain(zs, a, sig), sig);
    for al in 0..l {
        let tail: usize = zs[al..].iter().map(|z| z.parity as usize).sum();
        let e = px * (l - (al + 1) + tail);
        let br = bracket(zs[al], x, sig);
        let chain: Vec<&Derivation> = (0..l).map(|j| if j == al { &br } else { zs[j] }).collect();
        rhs += signed(contract_chain(&chain, a, sig), e % 2 == 1);
    }
    lhs - rhs
}

/// Multi-contraction of `y_i ω` for even fields, `zs = [Z_1, …, Z_ℓ]` with
/// `Z_1` outermost:
/// `Z_1⌟…⌟Z_ℓ⌟y_iω − (−1)^ℓ y_i(Z_1⌟…⌟Z_ℓ⌟ω) − Σ_α (−1)^{ℓ−α} (Z_α)_i (…Ẑ_α…⌟ω)`.
pub fn y_prefix_residual(zs: &[&Derivation], i: usize, a: &Form, sig: &Signature) -> Form {
    let l = zs.len();
    let y = sig.differential(i).expect("point with a differential");
    let inner_first: Vec<&Derivation> = zs.iter().rev().copied().collect();
    let lhs = contract_chain(&inner_first, &(&Form::gen(y) * a), sig);
    let mut rhs = signed(&Form::gen(y) * &contract_chain(&inner_first, a, sig), l % 2 == 1);
    for al in 0..l {
        let rest: Vec<&Derivation> = (0..l).rev().filter(|&j| j != al).map(|j| zs[j]).collect();
        let term = zs[al].values[i].clone() * contract_chain(&rest, a, sig);
        rhs += signed(term, (l - (al + 1)) % 2 == 1);
    }
    lhs - rhs
}

/// `d⌟(ab) − (d⌟a)b − a(d⌟b)`.
pub fn d_contract_leibniz_residual(a: &Form, b: &Form, sig: &Signature) -> Form {
    d_contract(&(a * b), sig) - &d_contract(a, sig) * b - a * &d_contract(b, sig)
}

/// Graded Jacobi identity on the values of three fields.
pub fn jacobi_residual(x: &Derivation, y: &Derivation, z: &Derivation, sig: &Signature) -> Vec<Form> {
    let lhs = bracket(x, &bracket(y, z, sig), sig);
    let t1 = bracket(&bracket(x, y, sig), z, sig);
    let t2 = bracket(y, &bracket(x, z, sig), sig);
    let flip = x.parity && y.parity;
    (0..x.values.len())
        .map(|i| &lhs.values[i] - &t1.values[i] - signed(t2.values[i].clone(), flip))
        .collect()
}
