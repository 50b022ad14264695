//! Order embeddings read off derivations of `∀x E(x)` in the
//! `(prg) + Rep` calculus, and a ladder derivation to feed them.

use std::collections::BTreeMap;

use crate::calculus::{Ctx, Rule};
use crate::derivation::{child, root_node, DNode, Derivation};
use crate::error::{Error, Result};
use crate::formula::{ETerm, Formula, Sequent, SetVar};
use crate::notation::{Comparison, NotationSystem};
use crate::order::CodedOrder;
use crate::search::{show_addr, Addr};
use crate::term::Term;

/// Longest run of `Rep` nodes followed before giving up.
const REP_BUDGET: usize = 256;

/// `f` on the checked fragment, plus the `β_m` it was built from.
#[derive(Debug, Clone)]
pub struct Embedding {
    pub prec: CodedOrder,
    pub bound: NotationSystem,
    pub graph: BTreeMap<u64, Term>,
    pub beta: BTreeMap<u64, Term>,
}

impl Embedding {
    /// Pairs `n ≺ m` in the domain with `f(n) ≮ f(m)`.
    pub fn violations(&self) -> Result<Vec<(u64, u64)>> {
        let mut out = Vec::new();
        for (&n, fnn) in &self.graph {
            for (&m, fm) in &self.graph {
                if self.prec.less(n, m)? && !self.bound.lt(fnn, fm)? {
                    out.push((n, m));
                }
            }
        }
        Ok(out)
    }
}

pub fn forall_e(i: u64) -> Formula {
    Formula::all("x", Formula::set(true, SetVar::E(i), ETerm::var("x")))
}

fn xerr(a: &[u64], msg: impl Into<String>) -> Error {
    Error::Extraction {
        addr: show_addr(a),
        msg: msg.into(),
    }
}

fn present(d: &dyn Derivation, a: &[u64]) -> Result<DNode> {
    d.node_at(a)?.ok_or_else(|| xerr(a, "node is absent"))
}

/// Descends through `Rep` from `a` to the first node whose rule matches.
fn through_rep(
    d: &dyn Derivation,
    mut a: Addr,
    want: impl Fn(&Rule) -> bool,
    what: &str,
) -> Result<(Addr, DNode)> {
    for _ in 0..REP_BUDGET {
        let node = present(d, &a)?;
        if want(&node.rule) {
            return Ok((a, node));
        }
        if node.rule != Rule::Rep {
            return Err(xerr(&a, format!("expected {what}, found {}", node.rule)));
        }
        a.push(0);
    }
    Err(Error::Budget {
        addr: show_addr(&a),
        msg: format!("no {what} within {REP_BUDGET} repetitions"),
    })
}

/// Reads `f` off a derivation of `∀x E_i(x)`, where `≺` is `(Q)_i`, for
/// the first `limit` field elements. The root ord must not exceed
/// `bound_alpha`.
pub fn takeuti_extract(
    d: &dyn Derivation,
    i: u64,
    bound_alpha: &Term,
    limit: usize,
) -> Result<Embedding> {
    let ctx = d.ctx();
    let bound = d.bound();
    let prec = ctx.q.order(i);
    let root = root_node(d)?;
    if bound.compare(&root.ord, bound_alpha)? == Comparison::Greater {
        return Err(Error::Precondition(format!(
            "root ord {} exceeds {}",
            bound.show(&root.ord),
            bound.show(bound_alpha)
        )));
    }
    if !root.seq.contains(&forall_e(i)) {
        return Err(xerr(&[], format!("root does not derive {}", forall_e(i))));
    }
    let mut dom = prec.field_prefix(limit);
    dom.sort_unstable();
    if let Some(&first) = dom.first() {
        if first != 0 || dom.iter().any(|&x| prec.less_unchecked(x, 0)) {
            return Err(Error::Precondition(
                "0 is not the least element of ≺".into(),
            ));
        }
    }
    let (top, _) = through_rep(d, Vec::new(), |r| *r == Rule::ForallOmega, "(∀ω)")?;

    let mut rho: BTreeMap<u64, Addr> = BTreeMap::new();
    let mut beta: BTreeMap<u64, Term> = BTreeMap::new();
    let mut graph: BTreeMap<u64, Term> = BTreeMap::new();
    for (k, &m) in dom.iter().enumerate() {
        let mut seen = dom[..=k].to_vec();
        seen.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if prec.less_unchecked(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        let j = seen.iter().position(|&x| x == m).expect("m is in seen");
        let (addr, node) = if j + 1 == seen.len() {
            let a = child(&top, m);
            let n = present(d, &a)?;
            (a, n)
        } else {
            let next = seen[j + 1];
            let (pa, _) = through_rep(d, rho[&next].clone(), |r| *r == Rule::Prg(i), "(prg)")?;
            let a = child(&pa, m);
            let n = present(d, &a)?;
            if bound.compare(&n.ord, &beta[&next])? != Comparison::Less {
                return Err(xerr(&a, "β does not descend"));
            }
            (a, n)
        };
        if !node.seq.contains(&Formula::e(i, m)) {
            return Err(xerr(&addr, format!("sequent lacks {}", Formula::e(i, m))));
        }
        let pow = bound.omega_pow(&node.ord)?;
        let f = if j == 0 {
            pow
        } else {
            bound.add(&graph[&seen[j - 1]], &pow)?
        };
        rho.insert(m, addr);
        beta.insert(m, node.ord);
        graph.insert(m, f);
    }
    Ok(Embedding {
        prec,
        bound: bound.clone(),
        graph,
        beta,
    })
}

/// Derivation of `∀x E_i(x)` over a finite `(Q)_i`: `(∀ω)` at the root,
/// then `(prg)` at every `E_i(m)` with ord the rank of `m`. With
/// `rep_root` a `Rep` sits below the `(∀ω)`.
#[derive(Debug, Clone)]
pub struct PrgLadder {
    pub ctx: Ctx,
    pub i: u64,
    pub bound: NotationSystem,
    pub rep_root: bool,
    rank: BTreeMap<u64, usize>,
}

impl PrgLadder {
    pub fn new(ctx: Ctx, i: u64, bound: NotationSystem, rep_root: bool) -> Result<Self> {
        let rank = ctx
            .q
            .order(i)
            .sorted_field()?
            .into_iter()
            .enumerate()
            .map(|(r, x)| (x, r))
            .collect();
        Ok(PrgLadder {
            ctx,
            i,
            bound,
            rep_root,
            rank,
        })
    }

    pub fn root_ord(&self) -> Term {
        Term::nat(self.rank.len() + 1)
    }

    fn e_node(&self, m: u64) -> DNode {
        DNode {
            seq: Sequent::from([Formula::e(self.i, m)]),
            rule: Rule::Prg(self.i),
            mfml: Some(Formula::e(self.i, m)),
            ord: Term::nat(self.rank.get(&m).copied().unwrap_or(0)),
        }
    }
}

impl Derivation for PrgLadder {
    fn name(&self) -> String {
        format!("prg-ladder-{}", self.i)
    }

    fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn bound(&self) -> &NotationSystem {
        &self.bound
    }

    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>> {
        let top = Sequent::from([forall_e(self.i)]);
        let skip = usize::from(self.rep_root);
        if self.rep_root && a.is_empty() {
            return Ok(Some(DNode {
                seq: top,
                rule: Rule::Rep,
                mfml: None,
                ord: self.root_ord(),
            }));
        }
        if a[..skip].iter().any(|&x| x != 0) {
            return Ok(None);
        }
        let rest = &a[skip..];
        let Some((&m, path)) = rest.split_first() else {
            return Ok(Some(DNode {
                seq: top,
                rule: Rule::ForallOmega,
                mfml: Some(forall_e(self.i)),
                ord: self.root_ord(),
            }));
        };
        let mut cur = m;
        for &n in path {
            if !(self.rank.contains_key(&n)
                && self.rank.contains_key(&cur)
                && self.ctx.q.less(self.i, n, cur)?)
            {
                return Ok(None);
            }
            cur = n;
        }
        Ok(Some(self.e_node(cur)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CodedFamily;
    use crate::derivation::local_check;
    use crate::hierarchy::make_exponential;

    fn ladder(seq: &[u64], rep: bool) -> PrgLadder {
        let q = CodedFamily::new().with_order(0, CodedOrder::from_sequence("p", seq));
        let bound = make_exponential(CodedOrder::empty("e"));
        PrgLadder::new(Ctx::new(q), 0, bound, rep).unwrap()
    }

    #[test]
    fn ladders_are_locally_correct() {
        for rep in [false, true] {
            let d = ladder(&[0, 2, 1], rep);
            assert!(
                local_check(&d, 6, 4).is_empty(),
                "{:?}",
                local_check(&d, 6, 4)
            );
        }
    }

    #[test]
    fn chain_gives_powers() {
        let d = ladder(&[0, 1, 2], false);
        let e = takeuti_extract(&d, 0, &d.root_ord(), 10).unwrap();
        let b = &e.bound;
        let want = [Term::one(), Term::omega(), Term::w(Term::nat(2))];
        for (got, w) in e.graph.values().zip(want) {
            assert_eq!(*got, b.normalize(&w).unwrap());
        }
    }

    #[test]
    fn twisted_order_reverses_values() {
        let d = ladder(&[0, 2, 1], true);
        let e = takeuti_extract(&d, 0, &d.root_ord(), 10).unwrap();
        assert!(e.bound.lt(&e.graph[&2], &e.graph[&1]).unwrap());
        assert!(e.violations().unwrap().is_empty());
    }

    #[test]
    fn missing_forall_is_named() {
        let mut d = ladder(&[0], false);
        d.i = 3;
        let err = takeuti_extract(&d, 0, &Term::nat(9), 5).unwrap_err();
        assert!(matches!(err, Error::Extraction { .. }), "{err}");
    }
}
