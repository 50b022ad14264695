//! Concrete layers: `ω^X`, derivatives `g'(X)` and Veblen systems
//! `φ[g]_α(X)`, plus term enumeration and ω-towers.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::notation::{index_cmp, is_pure, pure, Layer, NotationSystem};
use crate::order::CodedOrder;
use crate::term::{BaseElt, Term};

pub fn make_exponential(base: CodedOrder) -> NotationSystem {
    let name = format!("exp({})", base.name());
    NotationSystem {
        name,
        base: Arc::new(base),
        layer: Layer::Exponential,
        top: Term::Zero,
        gapp: None,
        phi: false,
        const_prefix: "C",
    }
}

/// `g'(X)` for `g` the layer `inner` (its constants become the `g` head).
pub fn make_derivative(inner: &NotationSystem) -> NotationSystem {
    let gapp = inner.top.clone();
    let top = pure()
        .add(&gapp, &Term::one())
        .expect("pure index arithmetic");
    let phi = pure().cmp_nf(&gapp, &Term::one()) == std::cmp::Ordering::Greater;
    NotationSystem {
        name: format!("deriv({})", inner.name),
        base: inner.base.clone(),
        layer: Layer::Derivative(Arc::new(inner.clone())),
        top,
        gapp: Some(gapp),
        phi,
        const_prefix: "G'",
    }
}

/// `φ[g0]_α(X)`. The index system must be constant-free exponential.
pub fn make_veblen(
    g0: &NotationSystem,
    alpha_index: &NotationSystem,
    alpha: &Term,
) -> Result<NotationSystem> {
    if !alpha_index.is_exponential()
        || alpha_index.base().is_finite() && !alpha_index.base().field()?.is_empty()
    {
        return Err(Error::Precondition(format!(
            "index system {} must be exponential over the empty order",
            alpha_index.name()
        )));
    }
    if !is_pure(alpha) || !alpha_index.belongs(alpha) {
        return Err(Error::CrossSystem(
            alpha.to_string(),
            alpha_index.name().into(),
        ));
    }
    if !g0.is_exponential() {
        return Err(Error::Unsupported(format!(
            "Veblen layers over {} (only exponential g)",
            g0.name()
        )));
    }
    let alpha = pure().normalize(alpha)?;
    if alpha == Term::Zero {
        return Err(Error::Precondition("Veblen index must be nonzero".into()));
    }
    Ok(NotationSystem {
        name: format!("veblen({},{})", g0.name, alpha),
        base: g0.base.clone(),
        layer: Layer::Veblen {
            g0: Arc::new(g0.clone()),
            alpha: alpha.clone(),
        },
        top: alpha,
        gapp: None,
        phi: true,
        const_prefix: "C",
    })
}

/// The function iterated by the sup law of the top constants.
fn g_of(s: &NotationSystem, t: Term) -> Result<Term> {
    match s.layer() {
        Layer::Exponential => Err(Error::Unsupported(format!(
            "{} has no iterable g",
            s.name()
        ))),
        Layer::Derivative(_) => Ok(Term::g(t)),
        Layer::Veblen { alpha, .. } => {
            let comps = alpha.components();
            if comps.last() == Some(&Term::one()) {
                let pred = Term::from_components(comps[..comps.len() - 1].to_vec());
                Ok(Term::phi(pred, t))
            } else {
                Ok(Term::w(t))
            }
        }
    }
}

/// `g^n(seed)`, normalized.
pub fn iterate_g(s: &NotationSystem, n: usize, seed: &Term) -> Result<Term> {
    let mut t = s.normalize(seed)?;
    for _ in 0..n {
        let next = g_of(s, t)?;
        if !s.belongs(&next) {
            return Err(Error::IllFormed(format!("{} leaves {}", next, s.name())));
        }
        t = s.normalize(&next)?;
    }
    Ok(t)
}

/// `ω_0(t) = t`, `ω_{k+1}(t) = ω^{ω_k(t)}`.
pub fn omega_tower(s: &NotationSystem, k: usize, t: &Term) -> Result<Term> {
    let mut out = s.normalize(t)?;
    for _ in 0..k {
        out = s.omega_pow(&out)?;
    }
    Ok(out)
}

/// Constants usable when enumerating terms of `s` over the given base
/// elements.
fn enum_constants(s: &NotationSystem, elems: &[u64]) -> Vec<Term> {
    let mut out: Vec<Term> = elems.iter().map(|&e| Term::c(e)).collect();
    if !s.is_exponential() {
        out.insert(0, Term::c_bot());
    }
    out
}

/// All normalized terms of node count at most `max_size` whose constants
/// come from `elems`, sorted increasingly by `compare`.
pub fn enumerate_with(s: &NotationSystem, max_size: usize, elems: &[u64]) -> Result<Vec<Term>> {
    let consts = enum_constants(s, elems);
    // principal normal forms by exact size, and all normal forms by exact size
    let mut principal: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    let mut all: Vec<Vec<Term>> = vec![Vec::new(); max_size + 1];
    let idx_terms: Vec<Vec<Term>> = if s.signature().phi {
        let mut v = vec![Vec::new(); max_size + 1];
        for t in enumerate_with(pure(), max_size.saturating_sub(2), &[])? {
            let below = index_cmp(&t, s.top_index())? == std::cmp::Ordering::Less;
            let special = t == Term::Zero || Some(&t) == s.gapp_index();
            if below && !special {
                v[t.size()].push(t);
            }
        }
        v
    } else {
        vec![Vec::new(); max_size + 1]
    };
    for size in 1..=max_size {
        let mut cands: BTreeSet<Term> = BTreeSet::new();
        if size == 1 {
            cands.extend(consts.iter().cloned());
        }
        if size >= 2 {
            for x in &all[size - 1] {
                cands.insert(Term::w(x.clone()));
                if s.signature().gapp {
                    cands.insert(Term::g(x.clone()));
                }
            }
            for (is, idxs) in idx_terms.iter().enumerate().take(size - 1).skip(1) {
                for i in idxs {
                    for x in &all[size - 1 - is] {
                        cands.insert(Term::phi(i.clone(), x.clone()));
                    }
                }
            }
        }
        for c in cands {
            if s.normalize_unchecked(&c)? == c {
                principal[size].push(c);
            }
        }
        let mut sums = Vec::new();
        if size >= 3 {
            sums_of(s, &principal, size - 1, None, &mut Vec::new(), &mut sums);
        }
        let mut level: Vec<Term> = principal[size].clone();
        if size == 1 {
            level.push(Term::Zero);
        }
        level.extend(sums);
        all[size] = level;
    }
    let mut out: Vec<Term> = all.into_iter().flatten().collect();
    out.sort_by(|a, b| s.cmp_nf(a, b));
    Ok(out)
}

/// Weakly decreasing sequences of at least two principal normal forms with
/// total size `budget`.
fn sums_of(
    s: &NotationSystem,
    principal: &[Vec<Term>],
    budget: usize,
    prev: Option<&Term>,
    acc: &mut Vec<Term>,
    out: &mut Vec<Term>,
) {
    if budget == 0 {
        if acc.len() >= 2 {
            out.push(Term::Sum(acc.clone()));
        }
        return;
    }
    for size in 1..=budget.min(principal.len() - 1) {
        for p in &principal[size] {
            if prev.is_some_and(|q| s.cmp_nf(p, q) == std::cmp::Ordering::Greater) {
                continue;
            }
            acc.push(p.clone());
            sums_of(s, principal, budget - size, Some(p), acc, out);
            acc.pop();
        }
    }
}

/// Enumeration over the whole finite field (or a `bound`-prefix of an
/// infinite one).
pub fn enumerate(s: &NotationSystem, max_size: usize, bound: usize) -> Result<Vec<Term>> {
    let elems = s.base().field_prefix(bound);
    enumerate_with(s, max_size, &elems)
}

/// Layer recipe parsed from a `system` descriptor line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Recipe {
    Exponential,
    Derivative(Box<Recipe>),
    Veblen(Box<Recipe>, Term),
}

impl Recipe {
    pub fn build(&self, base: &CodedOrder) -> Result<NotationSystem> {
        Ok(match self {
            Recipe::Exponential => make_exponential(base.clone()),
            Recipe::Derivative(inner) => make_derivative(&inner.build(base)?),
            Recipe::Veblen(inner, alpha) => {
                let idx = make_exponential(CodedOrder::empty("empty"));
                make_veblen(&inner.build(base)?, &idx, alpha)?
            }
        })
    }

    /// `exp`, `deriv:<inner>`, `veblen:<inner>:<alpha>`; inner recipes
    /// nest with further colons (alpha last).
    pub fn parse(src: &str) -> Result<Recipe> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("bad layer `{src}`"),
        };
        if src == "exp" {
            return Ok(Recipe::Exponential);
        }
        if let Some(rest) = src.strip_prefix("deriv:") {
            return Ok(Recipe::Derivative(Box::new(Recipe::parse(rest)?)));
        }
        if let Some(rest) = src.strip_prefix("veblen:") {
            let (inner, alpha) = rest.rsplit_once(':').ok_or_else(bad)?;
            return Ok(Recipe::Veblen(
                Box::new(Recipe::parse(inner)?),
                Term::parse(alpha)?,
            ));
        }
        Err(bad())
    }
}

impl std::fmt::Display for Recipe {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Recipe::Exponential => write!(f, "exp"),
            Recipe::Derivative(i) => write!(f, "deriv:{i}"),
            Recipe::Veblen(i, a) => write!(f, "veblen:{i}:{a}"),
        }
    }
}

/// The recipe that rebuilds `s` from its base.
pub fn recipe_of(s: &NotationSystem) -> Recipe {
    match s.layer() {
        Layer::Exponential => Recipe::Exponential,
        Layer::Derivative(inner) => Recipe::Derivative(Box::new(recipe_of(inner))),
        Layer::Veblen { g0, alpha } => Recipe::Veblen(Box::new(recipe_of(g0)), alpha.clone()),
    }
}

/// One parsed `system <name> layer=<recipe> base=<order>` line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemDescriptor {
    pub name: String,
    pub recipe: Recipe,
    pub base: String,
}

impl SystemDescriptor {
    pub fn parse(line: &str) -> Result<Self> {
        let err = |msg: &str| Error::Parse {
            pos: 0,
            msg: format!("{msg} in `{line}`"),
        };
        let mut words = line.split_whitespace();
        if words.next() != Some("system") {
            return Err(err("expected `system`"));
        }
        let name = words.next().ok_or_else(|| err("missing name"))?.to_string();
        let (mut recipe, mut base) = (None, None);
        // the layer value may contain spaces inside an alpha term
        let rest: Vec<&str> = words.collect();
        let joined = rest.join(" ");
        let (layer_part, base_part) = match joined.rfind(" base=") {
            Some(i) => (&joined[..i], &joined[i + 1..]),
            None => (joined.as_str(), ""),
        };
        if let Some(l) = layer_part.strip_prefix("layer=") {
            recipe = Some(Recipe::parse(l)?);
        }
        if let Some(b) = base_part.strip_prefix("base=") {
            base = Some(b.trim().to_string());
        }
        Ok(SystemDescriptor {
            name,
            recipe: recipe.ok_or_else(|| err("missing layer="))?,
            base: base.ok_or_else(|| err("missing base="))?,
        })
    }

    pub fn build(&self, orders: &[CodedOrder]) -> Result<NotationSystem> {
        let base = orders
            .iter()
            .find(|o| o.name() == self.base)
            .ok_or_else(|| Error::Unknown {
                kind: "order",
                name: self.base.clone(),
            })?;
        Ok(self.recipe.build(base)?.with_name(self.name.clone()))
    }
}

impl std::fmt::Display for SystemDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "system {} layer={} base={}",
            self.name, self.recipe, self.base
        )
    }
}

/// Base element of a top-layer constant, if the term is one.
pub fn const_elt(t: &Term) -> Option<BaseElt> {
    match t {
        Term::Const(c) => Some(*c),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::notation::Comparison;

    fn t(s: &str) -> Term {
        Term::parse(s).unwrap()
    }

    #[test]
    fn empty_base_small_terms() {
        let s = make_exponential(CodedOrder::empty("e"));
        assert_eq!(enumerate(&s, 2, 8).unwrap(), vec![Term::Zero, Term::one()]);
        let three = enumerate(&s, 3, 8).unwrap();
        assert_eq!(three.len(), 3);
    }

    #[test]
    fn derivative_fixed_points() {
        let d = make_derivative(&make_exponential(CodedOrder::chain("c", 2)));
        assert_eq!(d.normalize(&t("(w G'[1])")).unwrap(), t("G'[1]"));
        assert_eq!(d.normalize(&t("(g G'[1])")).unwrap(), t("G'[1]"));
        assert_eq!(
            d.compare(&t("(g (+ G'[0] (w 0)))"), &t("G'[1]")).unwrap(),
            Comparison::Less
        );
        assert_eq!(d.show(&t("G'[0]")), "G'[0]");
    }

    #[test]
    fn veblen_fixed_points() {
        let idx = make_exponential(CodedOrder::empty("e"));
        let g0 = make_exponential(CodedOrder::chain("c", 2));
        let two = t("(+ (w 0) (w 0))");
        let v = make_veblen(&g0, &idx, &two).unwrap();
        assert_eq!(v.normalize(&t("(phi (w 0) C[0])")).unwrap(), t("C[0]"));
        assert_eq!(v.normalize(&t("(w C[0])")).unwrap(), t("C[0]"));
        assert!(!v.belongs(&t("(phi (+ (w 0) (w 0)) 0)")));
        assert!(make_veblen(&g0, &idx, &Term::Zero).is_err());
    }

    #[test]
    fn iteration() {
        let d = make_derivative(&make_exponential(CodedOrder::chain("c", 2)));
        assert_eq!(iterate_g(&d, 0, &t("C[0]")).unwrap(), t("G'[0]"));
        assert_eq!(
            iterate_g(&d, 2, &Term::Zero).unwrap(),
            d.normalize(&t("(g (g 0))")).unwrap()
        );
        let seed = d.successor(&t("G'[0]")).unwrap();
        for n in 0..=5 {
            let x = iterate_g(&d, n, &seed).unwrap();
            assert!(d.lt(&x, &t("G'[1]")).unwrap());
        }
        let e = make_exponential(CodedOrder::chain("c", 2));
        assert!(iterate_g(&e, 1, &Term::Zero).is_err());
    }

    #[test]
    fn descriptors_round_trip() {
        let line = "system v2 layer=veblen:exp:(+ (w 0) (w 0)) base=c3";
        let d = SystemDescriptor::parse(line).unwrap();
        assert_eq!(d.to_string(), line);
        let s = d.build(&[CodedOrder::chain("c3", 3)]).unwrap();
        assert_eq!(s.name(), "v2");
        let d2 = SystemDescriptor::parse("system g layer=deriv:deriv:exp base=c3").unwrap();
        let s2 = d2.build(&[CodedOrder::chain("c3", 3)]).unwrap();
        assert!(s2.signature().gapp);
    }

    #[test]
    fn towers_increase() {
        let s = make_exponential(CodedOrder::empty("e"));
        let a = omega_tower(&s, 0, &Term::one()).unwrap();
        let b = omega_tower(&s, 2, &Term::one()).unwrap();
        assert_eq!(a, Term::one());
        assert!(s.lt(&a, &b).unwrap());
    }
}
