//! The differential, the t/τ extension, A_t, the homotopy operator and
//! the Poincaré primitive.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::expr::print;
use crate::forms::{Form, GenKind, Signature};
use crate::rewrite::RewriteSystem;
use crate::scalar::Scalar;

/// Graded Leibniz extension of the signature's generator images.
pub fn differential(a: &Form, sig: &Signature) -> Form {
    let mut out = Form::zero();
    for (w, c) in a.terms() {
        let l = w.letters();
        let mut odd = false;
        for (j, &g) in l.iter().enumerate() {
            let img = sig.d_image(g);
            if !img.is_zero() {
                let c = if odd { -c } else { c.clone() };
                for (iw, ic) in img.terms() {
                    out.add_term(w.splice(j, 1, iw.letters()), &c * ic);
                }
            }
            odd ^= sig.parity(g);
        }
    }
    out
}

/// `ω = Σ_m t^m plus[m] + τ Σ_m t^m minus[m]`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ExtendedForm {
    pub plus: BTreeMap<u32, Form>,
    pub minus: BTreeMap<u32, Form>,
}

fn put(map: &mut BTreeMap<u32, Form>, m: u32, f: Form) {
    if f.is_zero() {
        return;
    }
    let e = map.entry(m).or_default();
    *e += f;
    if e.is_zero() {
        map.remove(&m);
    }
}

impl ExtendedForm {
    pub fn zero() -> ExtendedForm {
        ExtendedForm::default()
    }

    pub fn from_form(a: Form) -> ExtendedForm {
        ExtendedForm::plus_term(0, a)
    }

    /// `t^m a`.
    pub fn plus_term(m: u32, a: Form) -> ExtendedForm {
        let mut e = ExtendedForm::zero();
        put(&mut e.plus, m, a);
        e
    }

    /// `τ t^m a`.
    pub fn minus_term(m: u32, a: Form) -> ExtendedForm {
        let mut e = ExtendedForm::zero();
        put(&mut e.minus, m, a);
        e
    }

    pub fn t() -> ExtendedForm {
        ExtendedForm::plus_term(1, Form::one())
    }

    pub fn tau() -> ExtendedForm {
        ExtendedForm::minus_term(0, Form::one())
    }

    pub fn is_zero(&self) -> bool {
        self.plus.is_empty() && self.minus.is_empty()
    }

    pub fn add(&self, other: &ExtendedForm) -> ExtendedForm {
        let mut out = self.clone();
        for (&m, f) in &other.plus {
            put(&mut out.plus, m, f.clone());
        }
        for (&m, f) in &other.minus {
            put(&mut out.minus, m, f.clone());
        }
        out
    }

    pub fn neg(&self) -> ExtendedForm {
        self.map(|f| -f)
    }

    pub fn sub(&self, other: &ExtendedForm) -> ExtendedForm {
        self.add(&other.neg())
    }

    /// Apply `f` to every component.
    pub fn map(&self, f: impl Fn(&Form) -> Form) -> ExtendedForm {
        let mut out = ExtendedForm::zero();
        for (&m, a) in &self.plus {
            put(&mut out.plus, m, f(a));
        }
        for (&m, a) in &self.minus {
            put(&mut out.minus, m, f(a));
        }
        out
    }

    /// Componentwise normal form (t central, τ graded-central).
    pub fn normalize(&self, sys: &RewriteSystem) -> ExtendedForm {
        self.map(|a| sys.normalize(a))
    }

    /// `ω₊|_{t=1}`.
    pub fn plus_at_one(&self) -> Form {
        let mut out = Form::zero();
        for f in self.plus.values() {
            out += f;
        }
        out
    }

    /// `ω₊|_{t=0}`.
    pub fn plus_at_zero(&self) -> Form {
        self.plus.get(&0).cloned().unwrap_or_default()
    }
}

/// Product in the extended algebra.
pub fn ext_mul(a: &ExtendedForm, b: &ExtendedForm, sig: &Signature) -> ExtendedForm {
    let mut out = ExtendedForm::zero();
    for (&m, ap) in &a.plus {
        for (&n, bp) in &b.plus {
            put(&mut out.plus, m + n, ap * bp);
        }
        if !b.minus.is_empty() {
            // a₊ τ b₋ = τ σ(a₊) b₋
            let twisted = sig.parity_twist(ap);
            for (&n, bm) in &b.minus {
                put(&mut out.minus, m + n, &twisted * bm);
            }
        }
    }
    for (&m, am) in &a.minus {
        for (&n, bp) in &b.plus {
            put(&mut out.minus, m + n, am * bp);
        }
    }
    out
}

/// The homomorphism `x ↦ t x`, `dx ↦ t dx + τ x`.
pub fn a_t(a: &Form, sig: &Signature) -> Result<ExtendedForm> {
    let mut out = ExtendedForm::zero();
    for (w, c) in a.terms() {
        let mut acc = ExtendedForm::from_form(Form::scalar(c.clone()));
        for &g in w.letters() {
            let img = match sig.kind(g) {
                GenKind::Point => ExtendedForm::plus_term(1, Form::gen(g)),
                GenKind::Differential(x) => {
                    ExtendedForm::plus_term(1, Form::gen(g)).add(&ExtendedForm::minus_term(0, Form::gen(x)))
                }
                GenKind::Other => return Err(Error::NoHomotopy(sig.name(g).to_owned())),
            };
            acc = ext_mul(&acc, &img, sig);
        }
        out = out.add(&acc);
    }
    Ok(out)
}

/// `d(t^m ν) = t^m dν + m t^{m−1} τ ν`, `d(τ t^m ν) = −τ t^m dν`.
pub fn ext_differential(a: &ExtendedForm, sig: &Signature) -> ExtendedForm {
    let mut out = ExtendedForm::zero();
    for (&m, f) in &a.plus {
        put(&mut out.plus, m, differential(f, sig));
        if m > 0 {
            put(&mut out.minus, m - 1, f.scale_int(m as i64));
        }
    }
    for (&m, f) in &a.minus {
        put(&mut out.minus, m, -differential(f, sig));
    }
    out
}

/// `Σ_m minus[m] / (m+1)`.
pub fn homotopy_i(a: &ExtendedForm) -> Form {
    let mut out = Form::zero();
    for (&m, f) in &a.minus {
        out += f.scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(m as i64 + 1)));
    }
    out
}

/// `dI(ω) + Id(ω) − (ω₊|_{t=1} − ω₊|_{t=0})`.
pub fn homotopy_check(a: &ExtendedForm, sig: &Signature) -> Form {
    let lhs = differential(&homotopy_i(a), sig) + homotopy_i(&ext_differential(a, sig));
    let rhs = a.plus_at_one() - a.plus_at_zero();
    lhs - rhs
}

/// The homotopy residual computed with every intermediate normalized in `sys`.
pub fn homotopy_check_in(a: &ExtendedForm, sys: &RewriteSystem) -> Form {
    let a = a.normalize(sys);
    let sig = sys.sig();
    let di = sys.d(&homotopy_i(&a));
    let id = sys.normalize(&homotopy_i(&ext_differential(&a, sig).normalize(sys)));
    let rhs = a.plus_at_one() - a.plus_at_zero();
    sys.normalize(&(di + id - rhs))
}

/// Checks that `A_t` maps every relation of `sys` into the extended ideal.
pub fn check_at_compatible(sys: &RewriteSystem) -> Result<()> {
    let sig = sys.sig();
    for (a, b, r) in sys.rules() {
        let rel = &Form::word(&[*a, *b]) - r;
        let img = a_t(&rel, sig)?.normalize(sys);
        if !img.is_zero() {
            return Err(Error::IncompatibleRelations(format!(
                "{}*{} -> {}",
                sig.name(*a),
                sig.name(*b),
                print(r, sig)
            )));
        }
    }
    Ok(())
}

/// `ν = I A_t(a)` and the (0,0) component, for closed `a`.
pub fn poincare_primitive(a: &Form, sig: &Signature, rewrite: Option<&RewriteSystem>) -> Result<(Form, Scalar)> {
    let norm = |f: &Form| match rewrite {
        Some(sys) => sys.normalize(f),
        None => f.clone(),
    };
    let a = norm(a);
    let da = norm(&differential(&a, sig));
    if !da.is_zero() {
        return Err(Error::NotClosed(print(&da, sig)));
    }
    if let Some(sys) = rewrite {
        check_at_compatible(sys)?;
    }
    let nu = norm(&homotopy_i(&a_t(&a, sig)?));
    Ok((nu, a.constant()))
}
