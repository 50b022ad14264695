//! Cut elimination on finite fragments: propositional cuts are reduced
//! by inversion, literal cuts by erasing the false side.

use std::collections::BTreeMap;

use crate::calculus::{Ctx, Rule};
use crate::derivation::{Certificate, DNode};
use crate::error::{Error, Result};
use crate::formula::{Formula, Sequent};
use crate::notation::NotationSystem;
use crate::search::Addr;
use crate::term::Term;

/// An owned finite derivation; children keyed by premise index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tree {
    pub seq: Sequent,
    pub rule: Rule,
    pub mfml: Option<Formula>,
    pub kids: BTreeMap<u64, Tree>,
}

impl Tree {
    pub fn leaf(seq: Sequent, rule: Rule) -> Tree {
        Tree {
            seq,
            rule,
            mfml: None,
            kids: BTreeMap::new(),
        }
    }

    pub fn from_certificate(c: &Certificate) -> Result<Tree> {
        fn build(c: &Certificate, a: &mut Addr) -> Tree {
            let n = &c.nodes[a.as_slice()];
            let mut kids = BTreeMap::new();
            let next: Vec<u64> = c
                .nodes
                .range(a.clone()..)
                .take_while(|(x, _)| x.starts_with(a))
                .filter(|(x, _)| x.len() == a.len() + 1)
                .map(|(x, _)| x[a.len()])
                .collect();
            for i in next {
                a.push(i);
                kids.insert(i, build(c, a));
                a.pop();
            }
            Tree {
                seq: n.seq.clone(),
                rule: n.rule.clone(),
                mfml: n.mfml.clone(),
                kids,
            }
        }
        c.root()?;
        Ok(build(c, &mut Vec::new()))
    }

    /// Nodes on the longest branch.
    pub fn depth(&self) -> usize {
        1 + self.kids.values().map(Tree::depth).max().unwrap_or(0)
    }

    pub fn size(&self) -> usize {
        1 + self.kids.values().map(Tree::size).sum::<usize>()
    }

    pub fn has_cut(&self) -> bool {
        matches!(self.rule, Rule::Cut(_)) || self.kids.values().any(Tree::has_cut)
    }

    /// Certificate with ords the subtree heights.
    pub fn to_certificate(&self, name: &str, ctx: &Ctx, bound: &NotationSystem) -> Certificate {
        fn walk(t: &Tree, a: &mut Addr, out: &mut BTreeMap<Addr, DNode>) -> usize {
            let mut h = 0;
            for (&i, k) in &t.kids {
                a.push(i);
                h = h.max(1 + walk(k, a, out));
                a.pop();
            }
            out.insert(
                a.clone(),
                DNode {
                    seq: t.seq.clone(),
                    rule: t.rule.clone(),
                    mfml: t.mfml.clone(),
                    ord: Term::nat(h),
                },
            );
            h
        }
        let mut nodes = BTreeMap::new();
        walk(self, &mut Vec::new(), &mut nodes);
        Certificate {
            name: name.to_string(),
            ctx: ctx.clone(),
            bound: bound.clone(),
            nodes,
            absent: Default::default(),
        }
    }

    fn map_seqs(&mut self, f: &impl Fn(&mut Sequent)) {
        f(&mut self.seq);
        self.kids.values_mut().for_each(|k| k.map_seqs(f));
    }

    fn principal_anywhere(&self, x: &Formula) -> bool {
        self.mfml.as_ref() == Some(x) || self.kids.values().any(|k| k.principal_anywhere(x))
    }
}

/// `2_k(n)`: `2_0(n) = n`, `2_{k+1}(n) = 2^{2_k(n)}` (saturating).
pub fn tower2(k: usize, n: usize) -> usize {
    (0..k).fold(n, |x, _| {
        if x >= usize::BITS as usize - 1 {
            usize::MAX
        } else {
            1usize << x
        }
    })
}

/// A cut-free derivation of `seq` obtained by taking apart the true
/// formula `f ∈ seq` (decidable literals, `∧`, `∨` only).
pub fn prove_true(ctx: &Ctx, seq: &Sequent, f: &Formula) -> Result<Tree> {
    let fail = || Error::Precondition(format!("{f} is not a true propositional formula"));
    let with = |x: &Formula| {
        let mut s = seq.clone();
        s.insert(x.clone());
        s
    };
    let without = |x: &Formula| {
        let mut s = seq.clone();
        s.remove(f);
        s.insert(x.clone());
        s
    };
    match f {
        Formula::And(a, b) => {
            let l = prove_true(ctx, &without(a), a)?;
            let r = prove_true(ctx, &without(b), b)?;
            Ok(Tree {
                seq: seq.clone(),
                rule: Rule::And,
                mfml: Some(f.clone()),
                kids: BTreeMap::from([(0, l), (1, r)]),
            })
        }
        Formula::Or(a, b) => {
            let side = if truth(ctx, a)? {
                0
            } else if truth(ctx, b)? {
                1
            } else {
                return Err(fail());
            };
            let part = if side == 0 { a } else { b };
            let k = prove_true(ctx, &with(part), part)?;
            Ok(Tree {
                seq: seq.clone(),
                rule: Rule::Or(side),
                mfml: Some(f.clone()),
                kids: BTreeMap::from([(0, k)]),
            })
        }
        lit if lit.is_literal() && ctx.is_true_literal(lit)? => {
            Ok(Tree::leaf(seq.clone(), Rule::Axiom))
        }
        _ => Err(fail()),
    }
}

fn truth(ctx: &Ctx, f: &Formula) -> Result<bool> {
    Ok(match f {
        Formula::And(a, b) => truth(ctx, a)? && truth(ctx, b)?,
        Formula::Or(a, b) => truth(ctx, a)? || truth(ctx, b)?,
        lit if lit.is_literal() => ctx
            .literal_value(lit)?
            .ok_or_else(|| Error::Unsupported(format!("truth of {lit}")))?,
        _ => return Err(Error::Unsupported(format!("truth of {f}"))),
    })
}

fn erase(mut t: Tree, x: &Formula) -> Tree {
    t.map_seqs(&|s| {
        s.remove(x);
    });
    t
}

fn weaken(mut t: Tree, x: &Formula) -> Result<Tree> {
    if t.principal_anywhere(x) {
        return Err(Error::Unsupported(format!(
            "weakening by the principal formula {x}"
        )));
    }
    t.map_seqs(&|s| {
        s.insert(x.clone());
    });
    Ok(t)
}

/// From a derivation of `S, K` with `K = B ∧ C`, one of `S, B` (`j = 0`)
/// or `S, C`.
fn invert_and(t: Tree, k: &Formula, j: u64) -> Tree {
    if t.rule == Rule::And && t.mfml.as_ref() == Some(k) {
        if let Some(kid) = t.kids.get(&j) {
            return kid.clone();
        }
    }
    let Formula::And(b, c) = k else {
        unreachable!("conjunction expected")
    };
    let part = if j == 0 { b } else { c };
    let mut t = t;
    if t.seq.remove(k) {
        t.seq.insert((**part).clone());
    }
    t.kids = t
        .kids
        .into_iter()
        .map(|(i, kid)| (i, invert_and(kid, k, j)))
        .collect();
    t
}

/// From a derivation of `S, B ∨ C`, one of `S, B, C`.
fn invert_or(t: Tree, d: &Formula) -> Tree {
    let Formula::Or(b, c) = d else {
        unreachable!("disjunction expected")
    };
    let mut t = t;
    if matches!(t.rule, Rule::Or(_)) && t.mfml.as_ref() == Some(d) {
        t.rule = Rule::Rep;
        t.mfml = None;
    }
    if t.seq.remove(d) {
        t.seq.insert((**b).clone());
        t.seq.insert((**c).clone());
    }
    t.kids = t
        .kids
        .into_iter()
        .map(|(i, kid)| (i, invert_or(kid, d)))
        .collect();
    t
}

/// Cut-free derivation of `s` from cut-free `d0 ⊢ s, a` and `d1 ⊢ s, ā`.
fn reduce(ctx: &Ctx, s: &Sequent, a: &Formula, d0: Tree, d1: Tree) -> Result<Tree> {
    let na = a.dual();
    if s.contains(a) {
        return Ok(d0);
    }
    if s.contains(&na) {
        return Ok(d1);
    }
    match a {
        Formula::And(..) => reduce_conj(ctx, s, a, d0, d1),
        Formula::Or(..) => reduce_conj(ctx, s, &na, d1, d0),
        lit if lit.is_literal() => match ctx.literal_value(lit)? {
            Some(true) => Ok(erase(d1, &na)),
            Some(false) => Ok(erase(d0, a)),
            None => Err(Error::Unsupported(format!(
                "cut on the undecided literal {lit}"
            ))),
        },
        _ => Err(Error::Unsupported(format!(
            "cut on {a} needs the premises of an ω-rule"
        ))),
    }
}

fn reduce_conj(ctx: &Ctx, s: &Sequent, k: &Formula, dk: Tree, dd: Tree) -> Result<Tree> {
    let Formula::And(b, c) = k else {
        unreachable!("conjunction expected")
    };
    let on_b = invert_and(dk.clone(), k, 0);
    let on_c = invert_and(dk, k, 1);
    let both_dual = invert_or(dd, &k.dual());
    let nb = b.dual();
    let mut s_nb = s.clone();
    s_nb.insert(nb.clone());
    let g = reduce(ctx, &s_nb, c, weaken(on_c, &nb)?, both_dual)?;
    reduce(ctx, s, b, on_b, g)
}

fn eliminate(ctx: &Ctx, t: Tree, rank: usize) -> Result<Tree> {
    let mut t = t;
    t.kids = t
        .kids
        .into_iter()
        .map(|(i, k)| Ok((i, eliminate(ctx, k, rank)?)))
        .collect::<Result<_>>()?;
    let Rule::Cut(a) = &t.rule else {
        return Ok(t);
    };
    if a.complexity() > rank {
        return Err(Error::Precondition(format!(
            "cut formula {a} exceeds rank {rank}"
        )));
    }
    let (Some(d0), Some(d1)) = (t.kids.get(&0), t.kids.get(&1)) else {
        return Err(Error::Budget {
            addr: "cut".into(),
            msg: format!("a premise of the cut on {a} is truncated"),
        });
    };
    reduce(ctx, &t.seq, a, d0.clone(), d1.clone())
}

/// Removes every cut of `d` (complexity at most `rank`). Output ords are
/// subtree heights.
pub fn cut_eliminate_truncated(d: &Certificate, rank: usize) -> Result<Certificate> {
    let t = eliminate(&d.ctx, Tree::from_certificate(d)?, rank)?;
    Ok(t.to_certificate(&format!("{}-cutfree", d.name), &d.ctx, &d.bound))
}

/// `Cut(a)` over two trees.
pub fn cut_on(s: &Sequent, a: &Formula, d0: Tree, d1: Tree) -> Tree {
    Tree {
        seq: s.clone(),
        rule: Rule::Cut(a.clone()),
        mfml: None,
        kids: BTreeMap::from([(0, d0), (1, d1)]),
    }
}
