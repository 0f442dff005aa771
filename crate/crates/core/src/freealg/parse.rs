//! Parser for the textual form produced by `MLPoly`'s `Display`:
//!
//! ```text
//! poly   := sign? term (('+' | '-') term)*
//! term   := (coeff '*')? ident ('*' ident)*
//! coeff  := digits ('/' digits)?
//! ident  := [A-Za-z][A-Za-z0-9_]*
//! ```
//!
//! Variable kinds follow the naming convention (`y…` symmetric, `z…` skew,
//! anything else general). Every term must use every variable exactly once.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::error::{Error, Result};

use super::poly::{MLPoly, Var};

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        Ok(text.parse().expect("digits parse"))
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        match self.src.get(self.pos) {
            Some(c) if c.is_ascii_alphabetic() => self.pos += 1,
            _ => return self.err("expected a variable name"),
        }
        while self.pos < self.src.len() && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_') {
            self.pos += 1;
        }
        Ok(std::str::from_utf8(&self.src[start..self.pos])
            .expect("ascii")
            .to_string())
    }
}

fn parse_poly(text: &str) -> Result<MLPoly> {
    let mut lx = Lexer {
        src: text.as_bytes(),
        pos: 0,
    };
    let mut raw_terms: Vec<(BigRational, Vec<String>)> = Vec::new();
    let mut negative = if lx.eat(b'-') {
        true
    } else {
        lx.eat(b'+');
        false
    };
    loop {
        let mut coeff = BigRational::one();
        if matches!(lx.peek(), Some(c) if c.is_ascii_digit()) {
            let num = lx.digits()?;
            let den = if lx.eat(b'/') { lx.digits()? } else { BigInt::one() };
            if den == BigInt::from(0) {
                return lx.err("zero denominator");
            }
            coeff = BigRational::new(num, den);
            if !lx.eat(b'*') {
                if lx.peek().is_none() || matches!(lx.peek(), Some(b'+' | b'-')) {
                    return lx.err("constant terms are not multilinear in any variable");
                }
                return lx.err("expected `*` after coefficient");
            }
        }
        let mut word = vec![lx.ident()?];
        while lx.eat(b'*') {
            word.push(lx.ident()?);
        }
        if negative {
            coeff = -coeff;
        }
        raw_terms.push((coeff, word));
        match lx.peek() {
            None => break,
            Some(b'+') => {
                lx.pos += 1;
                negative = false;
            }
            Some(b'-') => {
                lx.pos += 1;
                negative = true;
            }
            Some(c) => return lx.err(format!("unexpected `{}`", c as char)),
        }
    }

    let mut index: BTreeMap<String, usize> = BTreeMap::new();
    let mut vars = Vec::new();
    for (_, word) in &raw_terms {
        for name in word {
            if !index.contains_key(name) {
                index.insert(name.clone(), vars.len());
                vars.push(Var::named(name.clone()));
            }
        }
    }
    let n = vars.len();
    let mut terms = Vec::with_capacity(raw_terms.len());
    for (coeff, word) in raw_terms {
        let w: Vec<usize> = word.iter().map(|name| index[name]).collect();
        let mut seen = vec![false; n];
        for &i in &w {
            if std::mem::replace(&mut seen[i], true) {
                return Err(Error::NotMultilinear(format!(
                    "variable `{}` repeated in `{}`",
                    vars[i].name,
                    word.join("*")
                )));
            }
        }
        if w.len() != n {
            return Err(Error::NotMultilinear(format!(
                "term `{}` does not use all {n} variables",
                word.join("*")
            )));
        }
        terms.push((w, coeff));
    }
    MLPoly::new(vars, terms)
}

impl FromStr for MLPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<MLPoly> {
        parse_poly(s)
    }
}
