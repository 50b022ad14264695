//! Term structures `g(X)`: normal forms, comparison and the additive
//! operations shared by every layer of the hierarchy.
//!
//! Every principal term is read as `φ_β(x)` for an index ordinal `β`
//! below the system's top index `τ`: `(w x)` is `φ_0(x)`, `(g x)` is the
//! layer's designated `g`, `(phi β x)` is explicit, and the constant `C[c]`
//! is `φ_τ(c)` applied to an *atom* `c ∈ {0} ∪ X`. Atoms only meet terms
//! in the exponential layer (`τ = 0`), where `c ∈ X` sits above every term
//! whose constants lie below `c`, and the bottom atom is `0` itself.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::order::CodedOrder;
use crate::term::{BaseElt, Term};

/// Outcome of [`NotationSystem::compare`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Comparison {
    Less,
    Equal,
    Greater,
}

impl From<Ordering> for Comparison {
    fn from(o: Ordering) -> Self {
        match o {
            Ordering::Less => Comparison::Less,
            Ordering::Equal => Comparison::Equal,
            Ordering::Greater => Comparison::Greater,
        }
    }
}

impl From<Comparison> for Ordering {
    fn from(c: Comparison) -> Self {
        match c {
            Comparison::Less => Ordering::Less,
            Comparison::Equal => Ordering::Equal,
            Comparison::Greater => Ordering::Greater,
        }
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Less => "Less",
            Comparison::Equal => "Equal",
            Comparison::Greater => "Greater",
        })
    }
}

/// How the system was built.
#[derive(Debug, Clone)]
pub enum Layer {
    Exponential,
    Derivative(Arc<NotationSystem>),
    Veblen {
        g0: Arc<NotationSystem>,
        alpha: Term,
    },
}

/// Admitted term shapes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Signature {
    pub gapp: bool,
    pub phi: bool,
}

#[derive(Debug, Clone)]
pub struct NotationSystem {
    pub(crate) name: String,
    pub(crate) base: Arc<CodedOrder>,
    pub(crate) layer: Layer,
    /// Index of the top-layer constants, a pure term.
    pub(crate) top: Term,
    /// Index denoted by `(g ·)`, when admitted.
    pub(crate) gapp: Option<Term>,
    pub(crate) phi: bool,
    pub(crate) const_prefix: &'static str,
}

/// Constant-free exponential terms: the index ordinals below `ε_0`.
pub fn pure() -> &'static NotationSystem {
    static PURE: OnceLock<NotationSystem> = OnceLock::new();
    PURE.get_or_init(|| NotationSystem {
        name: "pure".into(),
        base: Arc::new(CodedOrder::empty("empty")),
        layer: Layer::Exponential,
        top: Term::Zero,
        gapp: None,
        phi: false,
        const_prefix: "C",
    })
}

enum Arg<'a> {
    Term(&'a Term),
    Atom(BaseElt),
}

impl NotationSystem {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn base(&self) -> &CodedOrder {
        &self.base
    }

    pub fn layer(&self) -> &Layer {
        &self.layer
    }

    pub fn top_index(&self) -> &Term {
        &self.top
    }

    pub fn gapp_index(&self) -> Option<&Term> {
        self.gapp.as_ref()
    }

    pub fn signature(&self) -> Signature {
        Signature {
            gapp: self.gapp.is_some(),
            phi: self.phi,
        }
    }

    pub fn is_exponential(&self) -> bool {
        matches!(self.layer, Layer::Exponential)
    }

    pub fn const_prefix(&self) -> &'static str {
        self.const_prefix
    }

    /// Canonical printing of a term in this system's spelling.
    pub fn show(&self, t: &Term) -> String {
        t.display_with(self.const_prefix).to_string()
    }

    pub fn parse(&self, src: &str) -> Result<Term> {
        let t = Term::parse(src)?;
        if !self.belongs(&t) {
            return Err(Error::CrossSystem(src.to_string(), self.name.clone()));
        }
        Ok(t)
    }

    pub fn base_less(&self, a: BaseElt, b: BaseElt) -> bool {
        match (a, b) {
            (BaseElt::Bottom, BaseElt::Elt(_)) => true,
            (BaseElt::Elt(x), BaseElt::Elt(y)) => x != y && self.base.less_unchecked(x, y),
            _ => false,
        }
    }

    fn base_cmp(&self, a: BaseElt, b: BaseElt) -> Ordering {
        if a == b {
            Ordering::Equal
        } else if self.base_less(a, b) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Legal term of this system: admitted shapes, constants in range.
    pub fn belongs(&self, t: &Term) -> bool {
        match t {
            Term::Zero => true,
            Term::Const(BaseElt::Bottom) => true,
            Term::Const(BaseElt::Elt(n)) => self.base.contains(*n),
            Term::Sum(v) => v.len() >= 2 && v.iter().all(|x| self.belongs(x)),
            Term::OmegaPow(x) => self.belongs(x),
            Term::GApp(x) => self.gapp.is_some() && self.belongs(x),
            Term::Phi(i, x) => {
                self.phi
                    && is_pure(i)
                    && pure()
                        .normalize_unchecked(i)
                        .is_ok_and(|i| pure().cmp_nf(&i, &self.top) == Ordering::Less)
                    && self.belongs(x)
            }
        }
    }

    fn require(&self, t: &Term) -> Result<()> {
        if self.belongs(t) {
            Ok(())
        } else {
            Err(Error::CrossSystem(self.show(t), self.name.clone()))
        }
    }

    /// Canonical representative of the `=`-class of `t`.
    pub fn normalize(&self, t: &Term) -> Result<Term> {
        self.require(t)?;
        self.normalize_unchecked(t)
    }

    pub(crate) fn normalize_unchecked(&self, t: &Term) -> Result<Term> {
        Ok(match t {
            Term::Zero => Term::Zero,
            Term::Const(BaseElt::Bottom) if self.is_exponential() => Term::one(),
            Term::Const(c) => Term::Const(*c),
            Term::Sum(v) => {
                let mut acc = Term::Zero;
                for x in v {
                    let x = self.normalize_unchecked(x)?;
                    acc = self.add_nf(&acc, &x);
                }
                acc
            }
            Term::OmegaPow(x) => self.principal(&Term::Zero, self.normalize_unchecked(x)?),
            Term::GApp(x) => {
                let idx = self.gapp.clone().ok_or_else(|| {
                    Error::IllFormed(format!("`g` not admitted in {}", self.name))
                })?;
                self.principal(&idx, self.normalize_unchecked(x)?)
            }
            Term::Phi(i, x) => {
                if !is_pure(i) {
                    return Err(Error::IllFormed(format!("index {i} is not pure")));
                }
                let idx = pure().normalize_unchecked(i)?;
                if pure().cmp_nf(&idx, &self.top) != Ordering::Less {
                    return Err(Error::IllFormed(format!(
                        "index {idx} not below {} in {}",
                        self.top, self.name
                    )));
                }
                self.principal(&idx, self.normalize_unchecked(x)?)
            }
        })
    }

    /// `φ_idx(x)` for normalized `x`, collapsing fixed points.
    fn principal(&self, idx: &Term, x: Term) -> Term {
        if let [p] = x.components() {
            let (pi, _) = self.head(p);
            if pure().cmp_nf(&pi, idx) == Ordering::Greater {
                return x;
            }
        }
        if self.gapp.as_ref() == Some(idx) {
            Term::g(x)
        } else if *idx == Term::Zero {
            Term::w(x)
        } else {
            Term::phi(idx.clone(), x)
        }
    }

    fn head<'a>(&self, p: &'a Term) -> (Term, Arg<'a>) {
        match p {
            Term::OmegaPow(x) => (Term::Zero, Arg::Term(x)),
            Term::GApp(x) => (
                self.gapp.clone().expect("g admitted in normal form"),
                Arg::Term(x),
            ),
            Term::Phi(i, x) => ((**i).clone(), Arg::Term(x)),
            Term::Const(c) => (self.top.clone(), Arg::Atom(*c)),
            Term::Zero | Term::Sum(_) => unreachable!("not principal: {p}"),
        }
    }

    /// Comparison of normalized terms: lexicographic on CNF components,
    /// then length.
    pub(crate) fn cmp_nf(&self, a: &Term, b: &Term) -> Ordering {
        let (ac, bc) = (a.components(), b.components());
        for (x, y) in ac.iter().zip(bc) {
            match self.cmp_principal(x, y) {
                Ordering::Equal => {}
                o => return o,
            }
        }
        ac.len().cmp(&bc.len())
    }

    fn cmp_principal(&self, a: &Term, b: &Term) -> Ordering {
        if a == b {
            return Ordering::Equal;
        }
        let (ia, xa) = self.head(a);
        let (ib, xb) = self.head(b);
        match pure().cmp_nf(&ia, &ib) {
            Ordering::Less => match xa {
                Arg::Term(x) if self.cmp_nf(x, b) == Ordering::Less => Ordering::Less,
                _ => Ordering::Greater,
            },
            Ordering::Greater => match xb {
                Arg::Term(y) if self.cmp_nf(a, y) == Ordering::Less => Ordering::Less,
                _ => Ordering::Greater,
            },
            Ordering::Equal => match (xa, xb) {
                (Arg::Term(x), Arg::Term(y)) => self.cmp_nf(x, y),
                (Arg::Atom(c), Arg::Atom(d)) => self.base_cmp(c, d),
                (Arg::Term(x), Arg::Atom(c)) => self.cmp_term_atom(x, c),
                (Arg::Atom(c), Arg::Term(y)) => self.cmp_term_atom(y, c).reverse(),
            },
        }
    }

    fn cmp_term_atom(&self, t: &Term, c: BaseElt) -> Ordering {
        if c == BaseElt::Bottom {
            return if *t == Term::Zero {
                Ordering::Equal
            } else {
                Ordering::Greater
            };
        }
        if t.constants().into_iter().all(|d| self.base_less(d, c)) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    pub fn compare(&self, a: &Term, b: &Term) -> Result<Comparison> {
        let a = self.normalize(a)?;
        let b = self.normalize(b)?;
        Ok(self.cmp_nf(&a, &b).into())
    }

    pub fn lt(&self, a: &Term, b: &Term) -> Result<bool> {
        Ok(self.compare(a, b)? == Comparison::Less)
    }

    fn add_nf(&self, a: &Term, b: &Term) -> Term {
        let Some(first) = b.components().first() else {
            return a.clone();
        };
        let mut out: Vec<Term> = a.components().to_vec();
        while let Some(last) = out.last() {
            if self.cmp_principal(last, first) == Ordering::Less {
                out.pop();
            } else {
                break;
            }
        }
        out.extend(b.components().iter().cloned());
        Term::from_components(out)
    }

    /// Ordinal sum, normalized.
    pub fn add(&self, a: &Term, b: &Term) -> Result<Term> {
        let a = self.normalize(a)?;
        let b = self.normalize(b)?;
        Ok(self.add_nf(&a, &b))
    }

    /// Natural (Hessenberg) sum: merge of CNF components.
    pub fn natural_sum(&self, a: &Term, b: &Term) -> Result<Term> {
        let a = self.normalize(a)?;
        let b = self.normalize(b)?;
        let mut out: Vec<Term> = a
            .components()
            .iter()
            .chain(b.components())
            .cloned()
            .collect();
        out.sort_by(|x, y| self.cmp_principal(y, x));
        Ok(Term::from_components(out))
    }

    pub fn omega_pow(&self, t: &Term) -> Result<Term> {
        self.normalize(&Term::w(t.clone()))
    }

    pub fn successor(&self, t: &Term) -> Result<Term> {
        self.add(t, &Term::one())
    }

    pub fn is_limit(&self, t: &Term) -> Result<bool> {
        let t = self.normalize(t)?;
        let one = self.normalize_unchecked(&Term::one())?;
        Ok(t.components().last().is_some_and(|p| *p != one))
    }

    /// `γ` with `a + γ = b` for `a ≤ b`: the tail of `b` after the longest
    /// common CNF prefix.
    pub fn subtract_witness(&self, a: &Term, b: &Term) -> Result<Term> {
        let a = self.normalize(a)?;
        let b = self.normalize(b)?;
        if self.cmp_nf(&a, &b) == Ordering::Greater {
            return Err(Error::Precondition(format!(
                "{} is above {}",
                self.show(&a),
                self.show(&b)
            )));
        }
        let common = a
            .components()
            .iter()
            .zip(b.components())
            .take_while(|(x, y)| x == y)
            .count();
        Ok(Term::from_components(b.components()[common..].to_vec()))
    }

    /// `n·t` for a natural `n` (left multiplication): infinite components
    /// are unchanged and the finite tail is multiplied.
    pub fn mul_nat_left(&self, n: usize, t: &Term) -> Result<Term> {
        let t = self.normalize(t)?;
        if n == 0 {
            return Ok(Term::Zero);
        }
        let one = self.normalize_unchecked(&Term::one())?;
        let comps = t.components();
        let finite = comps.iter().rev().take_while(|p| **p == one).count();
        let mut out: Vec<Term> = comps[..comps.len() - finite].to_vec();
        out.extend(std::iter::repeat_n(one, finite * n));
        Ok(Term::from_components(out))
    }

    /// Given `a < C[c]` for a limit element `c` of the base, finds `d < c`
    /// with `a < C[d]`, scanning the first `bound` field elements upward.
    pub fn continuity_witness(&self, a: &Term, c: u64, bound: usize) -> Result<u64> {
        let cc = Term::c(c);
        if !self.base.is_limit_element(c, bound)? {
            return Err(Error::Precondition(format!("{c} is not a limit element")));
        }
        if !self.lt(a, &cc)? {
            return Err(Error::Precondition(format!(
                "{} is not below {}",
                self.show(a),
                self.show(&cc)
            )));
        }
        let mut below: Vec<u64> = self
            .base
            .field_prefix(bound)
            .into_iter()
            .filter(|&d| self.base.less_unchecked(d, c))
            .collect();
        below.sort_by(|&x, &y| self.base_cmp(BaseElt::Elt(x), BaseElt::Elt(y)));
        for d in below {
            if self.lt(a, &Term::c(d))? {
                return Ok(d);
            }
        }
        Err(Error::WitnessNotFound { bound })
    }
}

/// No constants anywhere, including index positions.
pub fn is_pure(t: &Term) -> bool {
    match t {
        Term::Zero => true,
        Term::Const(_) | Term::GApp(_) | Term::Phi(..) => false,
        Term::Sum(v) => v.iter().all(is_pure),
        Term::OmegaPow(x) => is_pure(x),
    }
}

/// Compares two index ordinals.
pub fn index_cmp(a: &Term, b: &Term) -> Result<Ordering> {
    let a = pure().normalize(a)?;
    let b = pure().normalize(b)?;
    Ok(pure().cmp_nf(&a, &b))
}
