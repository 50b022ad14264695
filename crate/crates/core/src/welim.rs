//! Elimination of `(W)` on checked fragments, with ords moved from `Λ`
//! into `g′(ω + Λ)`, and the cut bound that closes Case 3.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::calculus::{formula_lo, formula_ti_all, Ctx, Rule};
use crate::derivation::{child, probe_count, Certificate, DNode, Derivation};
use crate::error::{Error, Result};
use crate::formula::{Formula, Sequent};
use crate::hierarchy::omega_tower;
use crate::notation::NotationSystem;
use crate::order::pair;
use crate::search::{show_addr, Addr};
use crate::takeuti::{forall_e, takeuti_extract};
use crate::term::{BaseElt, Term};
use crate::ti::{build_ti_derivation, ti_bound, Dilation};

/// Quantifier range used when evaluating closed `LO` instances.
const TRUTH_SPAN: u64 = 64;

/// `g′` on ords of the input: `C[λ] ↦ G′[pair(1, λ)]`, `0 ↦ 0`.
#[derive(Debug, Clone)]
pub struct GPrime {
    pub bound: NotationSystem,
}

impl GPrime {
    pub fn for_input(ctx: &Ctx, input: &NotationSystem) -> Result<GPrime> {
        Ok(GPrime {
            bound: ti_bound(ctx, None, input.base())?,
        })
    }

    pub fn apply(&self, t: &Term) -> Result<Term> {
        match t {
            Term::Zero => Ok(Term::Zero),
            Term::Const(BaseElt::Elt(l)) => pair(1, *l)
                .map(Term::c)
                .ok_or_else(|| Error::Overflow(format!("Λ element {l}"))),
            _ => Err(Error::Precondition(format!(
                "ord {t} is not an element of Λ"
            ))),
        }
    }
}

/// `ω_k(g(ω^{β₀}) # 3 # g′(d))`, with `β₀` already in the bound system.
pub fn cut_bound(k: usize, beta0: &Term, d: &Term, gp: &GPrime) -> Result<Term> {
    let b = &gp.bound;
    let top = b.normalize(&Term::g(Term::w(beta0.clone())))?;
    let x = b.natural_sum(&b.natural_sum(&top, &Term::nat(3))?, &gp.apply(d)?)?;
    omega_tower(b, k, &x)
}

/// Truth of a closed formula built from decidable literals, with
/// quantifiers read over `0..span`.
pub fn holds(ctx: &Ctx, f: &Formula, span: u64) -> Result<bool> {
    Ok(match f {
        Formula::And(a, b) => holds(ctx, a, span)? && holds(ctx, b, span)?,
        Formula::Or(a, b) => holds(ctx, a, span)? || holds(ctx, b, span)?,
        Formula::All(x, a) => {
            for n in 0..span {
                if !holds(ctx, &a.subst(x, n), span)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Ex(x, a) => {
            for n in 0..span {
                if holds(ctx, &a.subst(x, n), span)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Ex2(_) | Formula::All2(_) => {
            return Err(Error::Unsupported(format!("truth of {f}")));
        }
        lit => ctx
            .literal_value(lit)?
            .ok_or_else(|| Error::Unsupported(format!("truth of {lit}")))?,
    })
}

fn absent_err(a: &[u64]) -> Error {
    Error::Extraction {
        addr: show_addr(a),
        msg: "node is absent".into(),
    }
}

/// The claim branch: the subtree at `root` read as a derivation of
/// `∀x E_i(x)`. Inferences on other formulas become `Rep` over their
/// first premise that keeps the tracked formula.
struct ClaimView<'a> {
    d: &'a dyn Derivation,
    root: Addr,
    i: u64,
    width: u64,
}

impl ClaimView<'_> {
    /// Input address and tracked formula for claim address `a`.
    fn locate(&self, a: &[u64]) -> Result<Option<(Addr, DNode, Formula)>> {
        let mut at = self.root.clone();
        let mut cur = forall_e(self.i);
        let Some(mut node) = self.d.node_at(&at)? else {
            return Ok(None);
        };
        for &x in a {
            let next = if node.mfml.as_ref() == Some(&cur)
                && (node.rule == Rule::ForallOmega || node.rule == Rule::Prg(self.i))
            {
                cur = Formula::e(self.i, x);
                x
            } else if x == 0 {
                self.kept_premise(&at, &node, &cur)?
            } else {
                return Ok(None);
            };
            at.push(next);
            match self.d.node_at(&at)? {
                Some(n) => node = n,
                None => return Ok(None),
            }
        }
        Ok(Some((at, node, cur)))
    }

    fn kept_premise(&self, at: &[u64], node: &DNode, cur: &Formula) -> Result<u64> {
        if node.rule == Rule::Axiom {
            return Err(Error::Extraction {
                addr: show_addr(at),
                msg: "claim branch reaches an axiom of the side formulas".into(),
            });
        }
        for idx in 0..probe_count(self.d.ctx(), &node.rule, self.width) {
            if let Some(c) = self.d.node_at(&child(at, idx))? {
                if c.seq.contains(cur) {
                    return Ok(idx);
                }
            }
        }
        Err(Error::Budget {
            addr: show_addr(at),
            msg: format!("no premise keeps {cur} within width {}", self.width),
        })
    }
}

impl Derivation for ClaimView<'_> {
    fn name(&self) -> String {
        "claim".into()
    }

    fn ctx(&self) -> &Ctx {
        self.d.ctx()
    }

    fn bound(&self) -> &NotationSystem {
        self.d.bound()
    }

    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>> {
        let Some((_, node, cur)) = self.locate(a)? else {
            return Ok(None);
        };
        let keep = node.mfml.as_ref() == Some(&cur)
            && (node.rule == Rule::ForallOmega || node.rule == Rule::Prg(self.i));
        Ok(Some(DNode {
            seq: Sequent::from([cur.clone()]),
            rule: if keep { node.rule } else { Rule::Rep },
            mfml: keep.then_some(cur),
            ord: node.ord,
        }))
    }
}

struct Elim<'a> {
    d: &'a dyn Derivation,
    gp: GPrime,
    depth: usize,
    width: u64,
    nodes: BTreeMap<Addr, DNode>,
    absent: BTreeSet<Addr>,
}

impl Elim<'_> {
    fn put(&mut self, a: Addr, seq: Sequent, rule: Rule, mfml: Option<Formula>, ord: Term) {
        self.nodes.insert(
            a,
            DNode {
                seq,
                rule,
                mfml,
                ord,
            },
        );
    }

    /// Emits the input subtree at `a_in` (minus `erased`) at `a_out`.
    /// `ord` overrides the ord of the emitted top node.
    fn emit(
        &mut self,
        a_in: Addr,
        erased: BTreeSet<Formula>,
        a_out: Addr,
        ord: Option<Term>,
    ) -> Result<()> {
        if a_out.len() >= self.depth {
            return Ok(());
        }
        let node = self.d.node_at(&a_in)?.ok_or_else(|| absent_err(&a_in))?;
        let own = self.gp.apply(&node.ord)?;
        let ord = ord.unwrap_or(own);
        let seq: Sequent = node.seq.difference(&erased).cloned().collect();
        if node.rule.is_w() {
            return self.case3(a_in, node, erased, a_out, seq, ord);
        }
        if node.rule != Rule::Axiom && node.mfml.as_ref().is_some_and(|p| erased.contains(p)) {
            let idx = self.false_premise(&a_in, &node)?;
            let c_in = child(&a_in, idx);
            let c = self.d.node_at(&c_in)?.ok_or_else(|| absent_err(&c_in))?;
            let mut more = erased;
            more.extend(c.seq.difference(&node.seq).cloned());
            return self.emit(c_in, more, a_out, Some(ord));
        }
        let leaf = node.rule == Rule::Axiom || a_out.len() + 1 >= self.depth;
        let rule = node.rule.clone();
        self.put(a_out.clone(), seq, node.rule, node.mfml, ord);
        if leaf {
            return Ok(());
        }
        for idx in 0..probe_count(self.d.ctx(), &rule, self.width) {
            let c_in = child(&a_in, idx);
            if self.d.node_at(&c_in)?.is_some() {
                self.emit(c_in, erased.clone(), child(&a_out, idx), None)?;
            } else {
                self.absent.insert(child(&a_out, idx));
            }
        }
        Ok(())
    }

    /// Premise through which an erased (false) principal formula stays false.
    fn false_premise(&self, a: &[u64], node: &DNode) -> Result<u64> {
        let ctx = self.d.ctx();
        let p = node.mfml.as_ref().expect("erased principal");
        match (&node.rule, p) {
            (Rule::And, Formula::And(l, _)) => Ok(u64::from(holds(ctx, l, TRUTH_SPAN)?)),
            (Rule::ForallOmega, Formula::All(x, body)) => {
                for n in 0..TRUTH_SPAN {
                    if !holds(ctx, &body.subst(x, n), TRUTH_SPAN)? {
                        return Ok(n);
                    }
                }
                Err(Error::Budget {
                    addr: show_addr(a),
                    msg: format!("no false instance of {p} below {TRUTH_SPAN}"),
                })
            }
            (Rule::Or(_) | Rule::Exists(_), _) => Ok(0),
            _ => Err(Error::Unsupported(format!(
                "erasing {p} through {} at {}",
                node.rule,
                show_addr(a)
            ))),
        }
    }

    fn case3(
        &mut self,
        a_in: Addr,
        node: DNode,
        erased: BTreeSet<Formula>,
        a_out: Addr,
        seq: Sequent,
        ord: Term,
    ) -> Result<()> {
        let Rule::W(i) = node.rule else {
            return Err(Error::Unsupported(format!(
                "{} at {}: only (W) without a Veblen index is eliminated",
                node.rule,
                show_addr(&a_in)
            )));
        };
        let ctx = self.d.ctx();
        let prem = |k: u64| -> Result<(Addr, DNode)> {
            let a = child(&a_in, k);
            let n = self.d.node_at(&a)?.ok_or_else(|| absent_err(&a))?;
            Ok((a, n))
        };
        let lo = formula_lo(i);
        let span = ctx
            .q
            .order(i)
            .field_prefix(TRUTH_SPAN as usize)
            .iter()
            .max()
            .map_or(1, |m| m + 2);
        if !holds(ctx, &lo, span.min(TRUTH_SPAN))? {
            let mut more = erased;
            if !node.seq.contains(&lo) {
                more.insert(lo);
            }
            return self.emit(prem(0)?.0, more, a_out, Some(ord));
        }
        let all_e = forall_e(i);
        let (p1, n1) = prem(1)?;
        if node.seq.contains(&all_e) {
            return self.emit(p1, erased, a_out, Some(ord));
        }
        if !self.principal_within(&p1, &all_e, self.depth - a_out.len())? {
            let mut more = erased;
            more.insert(all_e);
            return self.emit(p1, more, a_out, Some(ord));
        }

        let claim = ClaimView {
            d: self.d,
            root: p1,
            i,
            width: self.width,
        };
        let limit = match ctx.q.order(i).field() {
            Ok(f) => f.len().max(self.width as usize),
            Err(_) => self.width as usize,
        };
        let f = takeuti_extract(&claim, i, &n1.ord, limit)?;
        let beta0 = self.gp.apply(&n1.ord)?;
        let dil = Dilation::new(ctx.system(i, None)?, self.gp.bound.clone(), &f)?;
        let ti = build_ti_derivation(ctx, i, None, dil, &beta0, seq.clone())?;
        let (p2, n2) = prem(2)?;
        let k = formula_ti_all(i, None).complexity();
        let beta1 = cut_bound(k, &beta0, &n2.ord, &self.gp)?;
        if !self.gp.bound.lt(&beta1, &ord)? {
            return Err(Error::Precondition(format!(
                "cut bound {} is not below {} at {}",
                self.gp.bound.show(&beta1),
                self.gp.bound.show(&ord),
                show_addr(&a_in)
            )));
        }
        self.put(
            a_out.clone(),
            seq,
            Rule::Cut(formula_ti_all(i, None)),
            None,
            ord,
        );
        if a_out.len() + 1 >= self.depth {
            return Ok(());
        }
        let graft = child(&a_out, 0);
        let part = Certificate::truncate(&ti, self.depth - graft.len(), self.width)?;
        for (a, n) in part.nodes {
            let mut full = graft.clone();
            full.extend(a);
            self.nodes.insert(full, n);
        }
        for a in part.absent {
            let mut full = graft.clone();
            full.extend(a);
            self.absent.insert(full);
        }
        self.emit(p2, erased, child(&a_out, 1), None)
    }

    /// Whether `f` is the principal formula of some `(∀ω)` within `span`
    /// levels of `a`.
    fn principal_within(&self, a: &[u64], f: &Formula, span: usize) -> Result<bool> {
        let mut queue = VecDeque::from([(a.to_vec(), 0usize)]);
        while let Some((at, lvl)) = queue.pop_front() {
            let Some(n) = self.d.node_at(&at)? else {
                continue;
            };
            if n.rule == Rule::ForallOmega && n.mfml.as_ref() == Some(f) {
                return Ok(true);
            }
            if lvl + 1 < span && n.rule != Rule::Axiom {
                for idx in 0..probe_count(self.d.ctx(), &n.rule, self.width) {
                    queue.push_back((child(&at, idx), lvl + 1));
                }
            }
        }
        Ok(false)
    }
}

/// Removes every `(W)` from `d` down to `depth` (ω-rules probed to
/// `width`). Input ords must be elements of `Λ`, the base of `d`'s bound
/// system; the output lives in `g′(ω + Λ)` with root ord `g′(b)`.
pub fn w_eliminate(d: &dyn Derivation, depth: usize, width: u64) -> Result<Certificate> {
    let gp = GPrime::for_input(d.ctx(), d.bound())?;
    let mut e = Elim {
        d,
        gp,
        depth,
        width,
        nodes: BTreeMap::new(),
        absent: BTreeSet::new(),
    };
    e.emit(Vec::new(), BTreeSet::new(), Vec::new(), None)?;
    Ok(Certificate {
        name: format!("{}-wfree", d.name()),
        ctx: d.ctx().clone(),
        bound: e.gp.bound,
        nodes: e.nodes,
        absent: e.absent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::derivation::local_check;
    use crate::samples::toy_w;

    #[test]
    fn toys_are_locally_correct() {
        for cyclic in [false, true] {
            let d = toy_w(cyclic, 4).unwrap();
            assert!(
                local_check(&d, 6, 4).is_empty(),
                "{:?}",
                local_check(&d, 6, 4)
            );
        }
    }

    #[test]
    fn w_free_input_is_reannotated() {
        let d = toy_w(false, 4).unwrap().subtree(&[1]);
        let out = w_eliminate(&d, 6, 4).unwrap();
        assert_eq!(out.nodes.len(), d.nodes.len());
        for (a, n) in &d.nodes {
            assert_eq!(
                out.nodes[a].ord,
                GPrime::for_input(&d.ctx, &d.bound)
                    .unwrap()
                    .apply(&n.ord)
                    .unwrap()
            );
            assert_eq!(out.nodes[a].rule, n.rule);
        }
        assert!(local_check(&out, 6, 4).is_empty());
    }

    #[test]
    fn case_three_runs_end_to_end() {
        for cyclic in [false, true] {
            let d = toy_w(cyclic, 4).unwrap();
            let out = w_eliminate(&d, 6, 4).unwrap();
            assert!(out.nodes.values().all(|n| !n.rule.is_w()));
            assert_eq!(out.root().unwrap().ord, Term::c(pair(1, 5).unwrap()));
            let report = local_check(&out, 6, 4);
            assert!(report.is_empty(), "cyclic={cyclic}: {report:?}");
            assert_eq!(matches!(out.root().unwrap().rule, Rule::Cut(_)), !cyclic);
            let again = Certificate::parse(&out.to_string()).unwrap();
            assert_eq!(again.nodes, out.nodes);
            assert!(local_check(&again, 6, 4).is_empty());
        }
    }
}
