//! Order-preserving base maps, their lifts to term maps, and the
//! extendibility checks (indiscernibility, suborder agreement).

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::hierarchy::enumerate_with;
use crate::laws::Violations;
use crate::notation::NotationSystem;
use crate::order::CodedOrder;
use crate::term::{BaseElt, Term};

/// Graph of a map `{0} ∪ X → {0} ∪ Y`; the bottom always maps to bottom.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BaseMap {
    graph: BTreeMap<u64, u64>,
}

impl BaseMap {
    pub fn new(pairs: impl IntoIterator<Item = (u64, u64)>) -> Self {
        BaseMap {
            graph: pairs.into_iter().collect(),
        }
    }

    pub fn identity(elems: &[u64]) -> Self {
        Self::new(elems.iter().map(|&e| (e, e)))
    }

    pub fn apply(&self, c: BaseElt) -> Result<BaseElt> {
        match c {
            BaseElt::Bottom => Ok(BaseElt::Bottom),
            BaseElt::Elt(n) => {
                self.graph
                    .get(&n)
                    .map(|&m| BaseElt::Elt(m))
                    .ok_or_else(|| Error::Domain {
                        order: "map domain".into(),
                        elem: n,
                    })
            }
        }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &BaseMap) -> Result<BaseMap> {
        let mut graph = BTreeMap::new();
        for (&a, &b) in &other.graph {
            if let BaseElt::Elt(c) = self.apply(BaseElt::Elt(b))? {
                graph.insert(a, c);
            }
        }
        Ok(BaseMap { graph })
    }

    pub fn graph(&self) -> &BTreeMap<u64, u64> {
        &self.graph
    }

    /// Checks `n <_X m ⇒ f(n) <_Y f(m)` on the mapped elements.
    pub fn check_order_preserving(&self, source: &CodedOrder, target: &CodedOrder) -> Result<()> {
        for (&a, &fa) in &self.graph {
            source.less(a, a)?;
            target.less(fa, fa)?;
            for (&b, &fb) in &self.graph {
                if source.less(a, b)? && !target.less(fa, fb)? {
                    return Err(Error::NotOrderPreserving(format!(
                        "{a} < {b} but {fa} -> {fb} is not increasing"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Map file: one `n -> m` per line; blank lines and `#` comments skipped.
    pub fn parse(src: &str) -> Result<BaseMap> {
        let mut graph = BTreeMap::new();
        for (lineno, line) in src.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = || Error::Parse {
                pos: lineno + 1,
                msg: format!("expected `n -> m`, got `{line}`"),
            };
            let (a, b) = line.split_once("->").ok_or_else(err)?;
            let a: u64 = a.trim().parse().map_err(|_| err())?;
            let b: u64 = b.trim().parse().map_err(|_| err())?;
            graph.insert(a, b);
        }
        Ok(BaseMap { graph })
    }
}

impl fmt::Display for BaseMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (a, b) in &self.graph {
            writeln!(f, "{a} -> {b}")?;
        }
        Ok(())
    }
}

/// `F(α[g(c₁),…]) = α[g(f(c₁)),…]`: constants renamed, shapes kept.
pub fn lift(f: &BaseMap, t: &Term) -> Result<Term> {
    t.map_constants(&mut |c| f.apply(c))
}

/// Checks that `lift(f)` preserves `<` and `=` between `s` and `s2` on
/// all pairs of `terms`.
pub fn check_lift(
    f: &BaseMap,
    s: &NotationSystem,
    s2: &NotationSystem,
    terms: &[Term],
) -> Result<Violations> {
    let images: Vec<Term> = terms
        .iter()
        .map(|t| s2.normalize(&lift(f, t)?))
        .collect::<Result<_>>()?;
    let mut out = Vec::new();
    for (i, a) in terms.iter().enumerate() {
        for (j, b) in terms.iter().enumerate() {
            let before = s.compare(a, b)?;
            let after = s2.compare(&images[i], &images[j])?;
            if before != after {
                out.push(format!(
                    "{} {} {} but images {} {} {}",
                    s.show(a),
                    before,
                    s.show(b),
                    s2.show(&images[i]),
                    after,
                    s2.show(&images[j])
                ));
            }
        }
    }
    Ok(out)
}

fn increasing_tuples(sorted: &[u64], width: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    fn go(sorted: &[u64], start: usize, width: usize, acc: &mut Vec<u64>, out: &mut Vec<Vec<u64>>) {
        if acc.len() == width {
            out.push(acc.clone());
            return;
        }
        for i in start..sorted.len() {
            acc.push(sorted[i]);
            go(sorted, i + 1, width, acc, out);
            acc.pop();
        }
    }
    go(sorted, 0, width, &mut Vec::new(), &mut out);
    out
}

/// Indiscernibility with the system's own comparison.
pub fn check_indiscernibility(
    s: &NotationSystem,
    width: usize,
    max_size: usize,
    bound: usize,
) -> Result<Violations> {
    check_indiscernibility_with(s, width, max_size, bound, |a, b| {
        s.compare(a, b).map(Ordering::from)
    })
}

/// For skeletons `α, β` over `width` placeholder constants and every pair
/// of increasing tuples `c⃗, d⃗` from the base, the comparison of
/// `α[c⃗], β[c⃗]` must equal that of `α[d⃗], β[d⃗]`.
pub fn check_indiscernibility_with(
    s: &NotationSystem,
    width: usize,
    max_size: usize,
    bound: usize,
    cmp: impl Fn(&Term, &Term) -> Result<Ordering>,
) -> Result<Violations> {
    let mut sorted = s.base().field_prefix(bound);
    sorted.sort_by(|&a, &b| {
        if a == b {
            Ordering::Equal
        } else if s.base_less(BaseElt::Elt(a), BaseElt::Elt(b)) {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    });
    if sorted.len() < width {
        return Err(Error::Precondition(format!(
            "base has {} elements, width {width}",
            sorted.len()
        )));
    }
    let placeholders = &sorted[..width];
    let skeletons = enumerate_with(s, max_size, placeholders)?;
    let tuples = increasing_tuples(&sorted, width);
    let maps: Vec<BaseMap> = tuples
        .iter()
        .map(|tu| BaseMap::new(placeholders.iter().copied().zip(tu.iter().copied())))
        .collect();
    let mut out = Vec::new();
    for a in &skeletons {
        for b in &skeletons {
            let mut seen: Option<(Ordering, &Vec<u64>)> = None;
            for (m, tu) in maps.iter().zip(&tuples) {
                let r = cmp(&lift(m, a)?, &lift(m, b)?)?;
                match seen {
                    None => seen = Some((r, tu)),
                    Some((r0, tu0)) if r0 != r => {
                        out.push(format!(
                            "{} vs {}: {:?} at {:?} but {:?} at {:?}",
                            s.show(a),
                            s.show(b),
                            r0,
                            tu0,
                            r,
                            tu
                        ));
                        break;
                    }
                    _ => {}
                }
            }
        }
    }
    Ok(out)
}

/// `sub` sits inside `sup`: terms of `sub` belong to `sup` and compare
/// identically.
pub fn check_suborder(
    sub: &NotationSystem,
    sup: &NotationSystem,
    max_size: usize,
    bound: usize,
) -> Result<Violations> {
    let elems = sub.base().field_prefix(bound);
    for &a in &elems {
        if !sup.base().contains(a) {
            return Err(Error::Precondition(format!(
                "{a} of {} is not in {}",
                sub.base().name(),
                sup.base().name()
            )));
        }
        for &b in &elems {
            if sub.base().less(a, b)? != sup.base().less(a, b)? {
                return Err(Error::Precondition(format!(
                    "{} is not an induced suborder of {}",
                    sub.base().name(),
                    sup.base().name()
                )));
            }
        }
    }
    let terms = enumerate_with(sub, max_size, &elems)?;
    let mut out = Vec::new();
    for a in &terms {
        if !sup.belongs(a) {
            out.push(format!("{} is not a term of {}", sub.show(a), sup.name()));
            continue;
        }
        for b in &terms {
            if sup.belongs(b) && sub.compare(a, b)? != sup.compare(a, b)? {
                out.push(format!("{} vs {} disagrees", sub.show(a), sub.show(b)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hierarchy::make_exponential;

    #[test]
    fn map_file_round_trip() {
        let f = BaseMap::parse("0 -> 0\n1 -> 2\n# note\n2 -> 4\n").unwrap();
        assert_eq!(BaseMap::parse(&f.to_string()).unwrap(), f);
        assert!(BaseMap::parse("0 => 1").is_err());
    }

    #[test]
    fn lifting_renames_constants() {
        let f = BaseMap::new([(0, 0), (1, 2), (2, 4)]);
        let t = Term::parse("(+ C[2] C[0])").unwrap();
        assert_eq!(lift(&f, &t).unwrap(), Term::parse("(+ C[4] C[0])").unwrap());
        assert!(lift(&f, &Term::c(9)).is_err());
        assert_eq!(lift(&f, &Term::c_bot()).unwrap(), Term::c_bot());
    }

    #[test]
    fn non_monotone_map_rejected() {
        let f = BaseMap::new([(0, 1), (1, 0)]);
        let c = CodedOrder::chain("c", 2);
        assert!(f.check_order_preserving(&c, &c).is_err());
    }

    #[test]
    fn width_one_small() {
        let s = make_exponential(CodedOrder::chain("c", 4));
        assert!(check_indiscernibility(&s, 1, 3, 8).unwrap().is_empty());
    }
}
