//! Raw notation terms, their text grammar and their numeric codes.
//!
//! Grammar (whitespace-insensitive):
//!
//! ```text
//! t ::= 0 | C[n] | C[bot] | G'[n] | (+ t t ...) | (w t) | (g t) | (phi s t)
//! ```
//!
//! `C[..]` and `G'[..]` both denote the constant of the system's top layer
//! at a base element; `bot` is the distinguished least element adjoined
//! below the base order.

use std::fmt;

use crate::error::{Error, Result};
use crate::order::{pair, unpair};

/// An element of `{0} ∪ X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BaseElt {
    Bottom,
    Elt(u64),
}

impl fmt::Display for BaseElt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseElt::Bottom => write!(f, "bot"),
            BaseElt::Elt(n) => write!(f, "{n}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Zero,
    Const(BaseElt),
    Sum(Vec<Term>),
    OmegaPow(Box<Term>),
    GApp(Box<Term>),
    /// `Phi(index, arg)`; the index is a constant-free exponential term.
    Phi(Box<Term>, Box<Term>),
}

impl Term {
    pub fn one() -> Term {
        Term::OmegaPow(Box::new(Term::Zero))
    }

    pub fn omega() -> Term {
        Term::w(Term::one())
    }

    /// The finite ordinal `n` as a pure term.
    pub fn nat(n: usize) -> Term {
        match n {
            0 => Term::Zero,
            1 => Term::one(),
            _ => Term::Sum(vec![Term::one(); n]),
        }
    }

    pub fn w(t: Term) -> Term {
        Term::OmegaPow(Box::new(t))
    }

    pub fn g(t: Term) -> Term {
        Term::GApp(Box::new(t))
    }

    pub fn phi(idx: Term, t: Term) -> Term {
        Term::Phi(Box::new(idx), Box::new(t))
    }

    pub fn c(n: u64) -> Term {
        Term::Const(BaseElt::Elt(n))
    }

    pub fn c_bot() -> Term {
        Term::Const(BaseElt::Bottom)
    }

    /// Node count.
    pub fn size(&self) -> usize {
        match self {
            Term::Zero | Term::Const(_) => 1,
            Term::Sum(v) => 1 + v.iter().map(Term::size).sum::<usize>(),
            Term::OmegaPow(t) | Term::GApp(t) => 1 + t.size(),
            Term::Phi(i, t) => 1 + i.size() + t.size(),
        }
    }

    /// Base elements of constants occurring in the term (index terms excluded).
    pub fn constants(&self) -> Vec<BaseElt> {
        let mut out = Vec::new();
        self.collect_constants(&mut out);
        out
    }

    fn collect_constants(&self, out: &mut Vec<BaseElt>) {
        match self {
            Term::Zero => {}
            Term::Const(c) => out.push(*c),
            Term::Sum(v) => v.iter().for_each(|t| t.collect_constants(out)),
            Term::OmegaPow(t) | Term::GApp(t) | Term::Phi(_, t) => t.collect_constants(out),
        }
    }

    /// Replaces every constant's base element through `f`.
    pub fn map_constants(&self, f: &mut impl FnMut(BaseElt) -> Result<BaseElt>) -> Result<Term> {
        Ok(match self {
            Term::Zero => Term::Zero,
            Term::Const(c) => Term::Const(f(*c)?),
            Term::Sum(v) => Term::Sum(
                v.iter()
                    .map(|t| t.map_constants(f))
                    .collect::<Result<_>>()?,
            ),
            Term::OmegaPow(t) => Term::w(t.map_constants(f)?),
            Term::GApp(t) => Term::g(t.map_constants(f)?),
            Term::Phi(i, t) => Term::phi((**i).clone(), t.map_constants(f)?),
        })
    }

    /// Components of a sum, or the term itself as a singleton; empty for 0.
    pub fn components(&self) -> &[Term] {
        match self {
            Term::Zero => &[],
            Term::Sum(v) => v,
            t => std::slice::from_ref(t),
        }
    }

    pub fn from_components(mut v: Vec<Term>) -> Term {
        match v.len() {
            0 => Term::Zero,
            1 => v.pop().unwrap(),
            _ => Term::Sum(v),
        }
    }

    pub fn parse(src: &str) -> Result<Term> {
        let mut p = Parser { src, pos: 0 };
        let t = p.term()?;
        p.skip_ws();
        if p.pos != src.len() {
            return Err(p.err("trailing input"));
        }
        Ok(t)
    }

    /// Prints with a given spelling for constants (`C` or `G'`).
    pub fn display_with(&self, const_prefix: &'static str) -> TermDisplay<'_> {
        TermDisplay {
            term: self,
            prefix: const_prefix,
        }
    }

    /// Numeric code used when terms serve as field elements of a coded
    /// relation `<_{g(X)}`: `0 ↦ Zero`, otherwise `1 + 5·payload + tag`.
    pub fn encode(&self) -> Result<u64> {
        let over = || Error::Overflow(self.to_string());
        let wrap = |payload: u64, tag: u64| -> Result<u64> {
            payload
                .checked_mul(5)
                .and_then(|x| x.checked_add(1 + tag))
                .ok_or_else(over)
        };
        match self {
            Term::Zero => Ok(0),
            Term::Const(BaseElt::Bottom) => wrap(0, 0),
            Term::Const(BaseElt::Elt(n)) => wrap(n.checked_add(1).ok_or_else(over)?, 0),
            Term::OmegaPow(t) => wrap(t.encode()?, 1),
            Term::GApp(t) => wrap(t.encode()?, 2),
            Term::Phi(i, t) => wrap(pair(i.encode()?, t.encode()?).ok_or_else(over)?, 3),
            Term::Sum(v) => {
                if v.len() < 2 {
                    return Err(Error::IllFormed(
                        "sum with fewer than two components".into(),
                    ));
                }
                let tail = Term::from_components(v[1..].to_vec()).encode()?;
                wrap(pair(v[0].encode()?, tail).ok_or_else(over)?, 4)
            }
        }
    }

    /// Inverse of [`encode`](Self::encode) on raw terms. Every natural
    /// decodes to some raw term; nested sums are flattened only by
    /// normalization.
    pub fn decode(code: u64) -> Term {
        if code == 0 {
            return Term::Zero;
        }
        let x = code - 1;
        let (payload, tag) = (x / 5, x % 5);
        match tag {
            0 => {
                if payload == 0 {
                    Term::Const(BaseElt::Bottom)
                } else {
                    Term::Const(BaseElt::Elt(payload - 1))
                }
            }
            1 => Term::w(Term::decode(payload)),
            2 => Term::g(Term::decode(payload)),
            3 => {
                let (i, t) = unpair(payload);
                Term::phi(Term::decode(i), Term::decode(t))
            }
            _ => {
                let (h, rest) = unpair(payload);
                let head = Term::decode(h);
                match Term::decode(rest) {
                    Term::Sum(mut tail) if is_sum_code(rest) => {
                        tail.insert(0, head);
                        Term::Sum(tail)
                    }
                    other => Term::Sum(vec![head, other]),
                }
            }
        }
    }
}

fn is_sum_code(code: u64) -> bool {
    code > 0 && (code - 1) % 5 == 4
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with("C"))
    }
}

pub struct TermDisplay<'a> {
    term: &'a Term,
    prefix: &'static str,
}

impl fmt::Display for TermDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.prefix;
        match self.term {
            Term::Zero => write!(f, "0"),
            Term::Const(c) => write!(f, "{p}[{c}]"),
            Term::Sum(v) => {
                write!(f, "(+")?;
                for t in v {
                    write!(f, " {}", t.display_with(p))?;
                }
                write!(f, ")")
            }
            Term::OmegaPow(t) => write!(f, "(w {})", t.display_with(p)),
            Term::GApp(t) => write!(f, "(g {})", t.display_with(p)),
            Term::Phi(i, t) => write!(f, "(phi {} {})", i, t.display_with(p)),
        }
    }
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl Parser<'_> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src.as_bytes()[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn eat(&mut self, s: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(s) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn word(&mut self) -> &str {
        self.skip_ws();
        let start = self.pos;
        while self.pos < self.src.len() {
            let b = self.src.as_bytes()[self.pos];
            if b.is_ascii_whitespace() || b == b'(' || b == b')' {
                break;
            }
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn term(&mut self) -> Result<Term> {
        self.skip_ws();
        if self.eat("(") {
            let head = self.word().to_string();
            let t = match head.as_str() {
                "+" => {
                    let mut v = Vec::new();
                    loop {
                        self.skip_ws();
                        if self.rest().starts_with(')') || self.rest().is_empty() {
                            break;
                        }
                        v.push(self.term()?);
                    }
                    if v.len() < 2 {
                        return Err(self.err("`+` needs at least two arguments"));
                    }
                    Term::Sum(v)
                }
                "w" => Term::w(self.term()?),
                "g" => Term::g(self.term()?),
                "phi" => {
                    let i = self.term()?;
                    Term::phi(i, self.term()?)
                }
                other => return Err(self.err(&format!("unknown head `{other}`"))),
            };
            if !self.eat(")") {
                return Err(self.err("expected `)`"));
            }
            return Ok(t);
        }
        let w = self.word().to_string();
        if w == "0" {
            return Ok(Term::Zero);
        }
        for prefix in ["C[", "G''[", "G'[", "V["] {
            if let Some(inner) = w.strip_prefix(prefix).and_then(|r| r.strip_suffix(']')) {
                return Ok(Term::Const(if inner == "bot" {
                    BaseElt::Bottom
                } else {
                    BaseElt::Elt(
                        inner
                            .parse()
                            .map_err(|_| self.err(&format!("bad base element `{inner}`")))?,
                    )
                }));
            }
        }
        Err(self.err(&format!("unexpected token `{w}`")))
    }
}
