//! Small hand-built certificates used by the tests and the CLI.

use std::collections::{BTreeMap, BTreeSet};

use crate::calculus::{formula_lo, formula_ti_all, CodedFamily, Ctx, Rule};
use crate::derivation::{Certificate, DNode};
use crate::error::Result;
use crate::formula::{Formula, Sequent};
use crate::hierarchy::make_exponential;
use crate::order::CodedOrder;
use crate::search::Addr;
use crate::takeuti::forall_e;
use crate::term::Term;

/// Size of the chain `Λ` the toy ords are drawn from.
pub const TOY_LAMBDA: u64 = 6;

fn with(s: &Sequent, f: Formula) -> Sequent {
    let mut t = s.clone();
    t.insert(f);
    t
}

fn node(seq: Sequent, rule: Rule, mfml: Option<Formula>, lam: u64) -> DNode {
    DNode {
        seq,
        rule,
        mfml,
        ord: Term::c(lam),
    }
}

/// A `(W)_0` over `{0 = 0}`. With `cyclic` false, `(Q)_0` is the chain
/// `0 < 1` and the middle premise derives `∀x E_0(x)` by `(∀ω)` and
/// `(prg)`; with `cyclic` true, `(Q)_0` is the 2-cycle and the `LO`
/// premise is split by `(∧)`. Ords are `C[λ]` over the chain `Λ`.
pub fn toy_w(cyclic: bool, width: u64) -> Result<Certificate> {
    let order = if cyclic {
        CodedOrder::explicit("cycle", [0, 1], [(0, 1), (1, 0)])
    } else {
        CodedOrder::chain("c2", 2)
    };
    let ctx = Ctx::new(CodedFamily::new().with_order(0, order));
    let s: Sequent = Sequent::from([Formula::parse("(= 0 0)")?]);
    let mut nodes: BTreeMap<Addr, DNode> = BTreeMap::new();
    let mut absent = BTreeSet::new();
    nodes.insert(vec![], node(s.clone(), Rule::W(0), None, 5));

    let lo = formula_lo(0);
    if cyclic {
        let Formula::And(irr, rest) = &lo else {
            unreachable!("LO is a conjunction")
        };
        nodes.insert(
            vec![0],
            node(with(&s, lo.clone()), Rule::And, Some(lo.clone()), 4),
        );
        nodes.insert(
            vec![0, 0],
            node(with(&s, (**irr).clone()), Rule::Axiom, None, 0),
        );
        nodes.insert(
            vec![0, 1],
            node(with(&s, (**rest).clone()), Rule::Axiom, None, 0),
        );
        nodes.insert(vec![1], node(with(&s, forall_e(0)), Rule::Axiom, None, 0));
    } else {
        nodes.insert(vec![0], node(with(&s, lo), Rule::Axiom, None, 0));
        let all = forall_e(0);
        nodes.insert(
            vec![1],
            node(with(&s, all.clone()), Rule::ForallOmega, Some(all), 3),
        );
        for m in 0..width {
            let e = Formula::e(0, m);
            let lam = if m < 2 { m + 1 } else { 0 };
            nodes.insert(
                vec![1, m],
                node(with(&s, e.clone()), Rule::Prg(0), Some(e), lam),
            );
            for n in 0..width {
                if m == 1 && n == 0 {
                    let e0 = Formula::e(0, 0);
                    nodes.insert(
                        vec![1, 1, 0],
                        node(with(&s, e0.clone()), Rule::Prg(0), Some(e0), 1),
                    );
                    for k in 0..width {
                        absent.insert(vec![1, 1, 0, k]);
                    }
                } else {
                    absent.insert(vec![1, m, n]);
                }
            }
        }
    }
    let dual = formula_ti_all(0, None).dual();
    nodes.insert(vec![2], node(with(&s, dual), Rule::Axiom, None, 0));

    let lam = CodedOrder::chain("lam", TOY_LAMBDA);
    Ok(Certificate {
        name: if cyclic { "toy-w-cyclic" } else { "toy-w" }.into(),
        ctx,
        bound: make_exponential(lam),
        nodes,
        absent,
    })
}
