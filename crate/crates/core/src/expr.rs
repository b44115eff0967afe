//! Surface syntax for forms: parsing and canonical printing.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := ('+' | '-')* factor ('*' factor)*
//! factor := atom ('^' '-'? int)?
//! atom   := int ('/' int)? | name | 'd' '(' expr ')' | '(' expr ')'
//! name   := ident ('[' ... ']')? ('@' (int | '(' ... ')'))?
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use crate::calculus::differential;
use crate::error::{Error, Result};
use crate::forms::{Form, Signature};
use crate::scalar::{fmt_term, Scalar};

/// Parse `text` into a form over `sig`. `d(...)` is the free differential.
pub fn parse(text: &str, sig: &Signature) -> Result<Form> {
    let mut p = Parser { s: text.as_bytes(), pos: 0, sig };
    let f = p.expr()?;
    p.skip_ws();
    if p.pos != p.s.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(f)
}

/// Parse a coefficient (a form with no letters).
pub fn parse_scalar(text: &str, sig: &Signature) -> Result<Scalar> {
    let f = parse(text, sig)?;
    if f.terms().any(|(w, _)| !w.is_empty()) {
        return Err(Error::Syntax { pos: 0, msg: format!("`{}` is not a scalar", text) });
    }
    Ok(f.constant())
}

struct Parser<'a> {
    s: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_owned() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.s.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Form> {
        let mut acc = self.term()?;
        loop {
            if self.eat(b'+') {
                acc += self.term()?;
            } else if self.eat(b'-') {
                acc -= &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Form> {
        let mut neg = false;
        loop {
            if self.eat(b'-') {
                neg = !neg;
            } else if !self.eat(b'+') {
                break;
            }
        }
        let mut acc = self.factor()?;
        while self.eat(b'*') {
            acc = &acc * &self.factor()?;
        }
        Ok(if neg { -acc } else { acc })
    }

    fn int(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected an integer"));
        }
        Ok(std::str::from_utf8(&self.s[start..self.pos]).unwrap().parse().unwrap())
    }

    fn factor(&mut self) -> Result<Form> {
        let base = self.atom()?;
        if !self.eat(b'^') {
            return Ok(base);
        }
        let neg = self.eat(b'-');
        let at = self.pos;
        let e: i32 = self.int()?.try_into().map_err(|_| Error::Syntax { pos: at, msg: "exponent too large".into() })?;
        if neg {
            let scalar_only = base.terms().all(|(w, _)| w.is_empty());
            if !scalar_only {
                return Err(Error::Syntax { pos: at, msg: "negative power of a non-scalar".into() });
            }
            return Ok(Form::scalar(base.constant().pow(-e)?));
        }
        let mut acc = Form::one();
        for _ in 0..e {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Form> {
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let f = self.expr()?;
                if !self.eat(b')') {
                    return Err(self.err("expected `)`"));
                }
                Ok(f)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.int()?;
                let save = self.pos;
                if self.eat(b'/') {
                    if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                        let d = self.int()?;
                        if d == BigInt::from(0) {
                            return Err(self.err("zero denominator"));
                        }
                        return Ok(Form::scalar(Scalar::from_rational(BigRational::new(n, d))));
                    }
                    self.pos = save;
                }
                Ok(Form::scalar(Scalar::from_rational(BigRational::from_integer(n))))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                let name = self.name()?;
                if name == "d" && self.peek() == Some(b'(') {
                    self.pos += 1;
                    let f = self.expr()?;
                    if !self.eat(b')') {
                        return Err(self.err("expected `)`"));
                    }
                    return Ok(differential(&f, self.sig));
                }
                self.resolve(&name, start)
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }

    fn name(&mut self) -> Result<String> {
        let mut out = String::new();
        while self.pos < self.s.len() && (self.s[self.pos].is_ascii_alphanumeric() || self.s[self.pos] == b'_') {
            out.push(self.s[self.pos] as char);
            self.pos += 1;
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'[' {
            out.push_str(&self.bracketed(b'[', b']')?);
        }
        if self.pos < self.s.len() && self.s[self.pos] == b'@' {
            out.push('@');
            self.pos += 1;
            if self.pos < self.s.len() && self.s[self.pos] == b'(' {
                out.push_str(&self.bracketed(b'(', b')')?);
            } else {
                let start = self.pos;
                while self.pos < self.s.len() && self.s[self.pos].is_ascii_digit() {
                    out.push(self.s[self.pos] as char);
                    self.pos += 1;
                }
                if start == self.pos {
                    return Err(self.err("expected a group element after `@`"));
                }
            }
        }
        Ok(out)
    }

    fn bracketed(&mut self, open: u8, close: u8) -> Result<String> {
        let mut out = String::new();
        out.push(open as char);
        self.pos += 1;
        loop {
            match self.s.get(self.pos) {
                None => return Err(self.err("unclosed bracket")),
                Some(&c) if c == close => {
                    out.push(c as char);
                    self.pos += 1;
                    return Ok(out);
                }
                Some(c) if c.is_ascii_whitespace() => self.pos += 1,
                Some(&c) => {
                    out.push(c as char);
                    self.pos += 1;
                }
            }
        }
    }

    fn resolve(&self, name: &str, pos: usize) -> Result<Form> {
        if let Some(f) = self.sig.lookup(name) {
            return Ok(f);
        }
        if let Some(s) = self.sig.params.lookup(name) {
            return Ok(Form::scalar(s.clone()));
        }
        if self.sig.has_family(name) || name.starts_with("Q[") {
            return Err(Error::IndexOutOfRange { name: name.to_owned(), pos });
        }
        Err(Error::UnknownGenerator { name: name.to_owned(), pos })
    }
}

fn print_word(w: &crate::forms::Word, sig: &Signature) -> String {
    let l = w.letters();
    let mut parts = Vec::new();
    let mut i = 0;
    while i < l.len() {
        let mut j = i;
        while j < l.len() && l[j] == l[i] {
            j += 1;
        }
        let name = sig.name(l[i]);
        parts.push(if j - i == 1 { name.to_owned() } else { format!("{}^{}", name, j - i) });
        i = j;
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing word order.
pub fn print(f: &Form, sig: &Signature) -> String {
    if f.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (w, c)) in f.terms().rev().enumerate() {
        let word = print_word(w, sig);
        let t = match c.terms() {
            [(m, r)] => {
                let head = fmt_term(m, r);
                if w.is_empty() {
                    head
                } else if m.is_empty() && r.abs().is_one() {
                    if head.starts_with('-') {
                        format!("-{}", word)
                    } else {
                        word
                    }
                } else {
                    format!("{}*{}", head, word)
                }
            }
            _ if w.is_empty() => format!("({})", c),
            _ => format!("({})*{}", c, word),
        };
        if k == 0 {
            out.push_str(&t);
        } else if let Some(rest) = t.strip_prefix('-') {
            out.push_str(" - ");
            out.push_str(rest);
        } else {
            out.push_str(" + ");
            out.push_str(&t);
        }
    }
    out
}
