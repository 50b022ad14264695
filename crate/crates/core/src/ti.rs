//! The explicit derivation of `∀Y TI(<_{g_i}, Y)` from an order
//! embedding, and the dilation carrying `g((Q)_i)` into its bound system.
//!
//! The bound system is `g′` over `ω + Λ`. Tier 0 (`pair(0, k)`) holds the
//! images of the base elements of `(Q)_i`, ranked by the embedding; tier 1
//! (`pair(1, c)`) holds the elements of `Λ`.

use std::collections::BTreeMap;

use crate::calculus::{formula_prg, formula_ti, formula_ti_all, Ctx, Rule};
use crate::derivation::{DNode, Derivation};
use crate::error::{Error, Result};
use crate::formula::{Formula, Sequent, SetVar};
use crate::hierarchy::make_derivative;
use crate::notation::NotationSystem;
use crate::order::{pair, CodedOrder};
use crate::takeuti::Embedding;
use crate::term::{BaseElt, Term};

pub fn tier0(k: u64) -> Term {
    Term::c(pair(0, k).expect("small tier index"))
}

pub fn tier1(c: u64) -> Result<Term> {
    pair(1, c)
        .map(Term::c)
        .ok_or_else(|| Error::Overflow(format!("tier-1 element {c}")))
}

/// `g′` (or `φ[g]_β′`) over `ω + Λ`.
pub fn ti_bound(ctx: &Ctx, beta: Option<&Term>, lam: &CodedOrder) -> Result<NotationSystem> {
    let base = CodedOrder::sum_orders(&CodedOrder::omega(), lam);
    let g = ctx.system_over(&base, beta)?;
    Ok(make_derivative(&g).with_name("ti"))
}

/// `F : g((Q)_i) → bound`, lifted from the ranks of an embedding of `<_i`.
#[derive(Debug, Clone)]
pub struct Dilation {
    pub src: NotationSystem,
    pub bound: NotationSystem,
    rank: BTreeMap<u64, u64>,
}

impl Dilation {
    pub fn new(src: NotationSystem, bound: NotationSystem, f: &Embedding) -> Result<Self> {
        if let Some((n, m)) = f.violations()?.first() {
            return Err(Error::NotOrderPreserving(format!("f({n}) ≮ f({m})")));
        }
        let mut dom: Vec<u64> = f.graph.keys().copied().collect();
        let mut err = None;
        dom.sort_by(|a, b| {
            f.bound
                .compare(&f.graph[a], &f.graph[b])
                .map(std::cmp::Ordering::from)
                .unwrap_or_else(|e| {
                    err = Some(e);
                    std::cmp::Ordering::Equal
                })
        });
        if let Some(e) = err {
            return Err(e);
        }
        let rank = dom.into_iter().zip(0..).collect();
        Ok(Dilation { src, bound, rank })
    }

    fn raw(&self, t: &Term) -> Result<Term> {
        Ok(match t {
            Term::Zero => Term::Zero,
            Term::Const(BaseElt::Bottom) => Term::g(Term::Zero),
            Term::Const(BaseElt::Elt(x)) => {
                let r = self.rank.get(x).ok_or_else(|| {
                    Error::Precondition(format!("{x} is outside the embedding's domain"))
                })?;
                Term::g(Term::Sum(vec![tier0(*r), Term::one()]))
            }
            Term::Sum(v) => Term::Sum(v.iter().map(|x| self.raw(x)).collect::<Result<_>>()?),
            Term::OmegaPow(x) => Term::w(self.raw(x)?),
            Term::GApp(x) => match self.src.gapp_index() {
                Some(Term::Zero) | None => Term::w(self.raw(x)?),
                Some(gamma) => Term::phi(gamma.clone(), self.raw(x)?),
            },
            Term::Phi(gamma, x) => Term::phi((**gamma).clone(), self.raw(x)?),
        })
    }

    /// `F(t)` for a normal form `t` of the source.
    pub fn apply(&self, t: &Term) -> Result<Term> {
        self.bound.normalize(&self.raw(t)?)
    }

    /// `F` on codes; codes of non-normal forms go to `0`.
    pub fn at_code(&self, m: u64) -> Result<Term> {
        let t = Term::decode(m);
        let nf = self.src.belongs(&t) && self.src.normalize(&t).is_ok_and(|x| x == t);
        if nf {
            self.apply(&t)
        } else {
            Ok(Term::Zero)
        }
    }
}

/// Position in the displayed derivation; `m`, `n` are codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum St {
    Root,
    Or0,
    Or1,
    AllX,
    Block(u64),
    And(u64),
    Ax1(u64),
    AllN(u64),
    OrN(u64, u64),
    AxLt(u64, u64),
}

/// `∀Y TI(<_{g_i}, Y)` (with a side context) as a lazy derivation. Each
/// `Z(m)` block sits at ord `G(m)+3`, `G(m) = ω+1+4F(m)`; the root at
/// `g(ω^{β₀})+3`.
#[derive(Debug, Clone)]
pub struct TiDerivation {
    pub ctx: Ctx,
    pub i: u64,
    pub beta: Option<Term>,
    pub dil: Dilation,
    pub context: Sequent,
    /// `g(ω^{β₀})`.
    pub top: Term,
    eig: u64,
    ti_z: Formula,
    nprg: Formula,
}

pub fn build_ti_derivation(
    ctx: &Ctx,
    i: u64,
    beta: Option<Term>,
    dil: Dilation,
    beta0: &Term,
    context: Sequent,
) -> Result<TiDerivation> {
    let b = &dil.bound;
    if !b.belongs(beta0) {
        return Err(Error::CrossSystem(b.show(beta0), b.name().into()));
    }
    let top = b.normalize(&Term::g(Term::w(beta0.clone())))?;
    let mut used = std::collections::BTreeSet::new();
    context.iter().for_each(|f| f.eigenvariables(&mut used));
    let eig = used.last().map_or(0, |j| j + 1);
    let z = SetVar::Z(eig);
    Ok(TiDerivation {
        ctx: ctx.clone(),
        i,
        ti_z: formula_ti(i, beta.clone(), z),
        nprg: formula_prg(i, beta.clone(), z).dual(),
        beta,
        dil,
        context,
        top,
        eig,
    })
}

fn binder(f: &Formula) -> (&str, &Formula) {
    match f {
        Formula::Ex(x, a) | Formula::All(x, a) => (x, a),
        _ => unreachable!("quantifier expected in the TI formula"),
    }
}

fn conj(f: &Formula) -> (&Formula, &Formula) {
    match f {
        Formula::And(a, b) => (a, b),
        _ => unreachable!("conjunction expected in the TI formula"),
    }
}

impl TiDerivation {
    pub fn root_formula(&self) -> Formula {
        formula_ti_all(self.i, self.beta.clone())
    }

    pub fn root_sequent(&self) -> Sequent {
        let mut s = self.context.clone();
        s.insert(self.root_formula());
        s
    }

    /// `G(m) = ω+1+4F(m)`.
    pub fn g_of(&self, m: u64) -> Result<Term> {
        let b = &self.dil.bound;
        let four = b.mul_nat_left(4, &self.dil.at_code(m)?)?;
        b.add(&Term::Sum(vec![Term::omega(), Term::one()]), &four)
    }

    fn plus(&self, t: &Term, k: usize) -> Result<Term> {
        self.dil.bound.add(t, &Term::nat(k))
    }

    /// `∀n(n ≮ m ∨ Z(n)) ∧ Z̄(m)`.
    fn body(&self, m: u64) -> Formula {
        let (x, a) = binder(&self.nprg);
        a.subst(x, m)
    }

    fn all_below(&self, m: u64) -> Formula {
        conj(&self.body(m)).0.clone()
    }

    fn lt(&self, n: u64, m: u64) -> Result<bool> {
        let yes = self.ctx.lt_g(self.i, self.beta.as_ref(), n, m)?;
        if yes {
            let (fnn, fm) = (self.dil.at_code(n)?, self.dil.at_code(m)?);
            if !self.dil.bound.lt(&fnn, &fm)? {
                return Err(Error::NotOrderPreserving(format!(
                    "{n} <_g {m} but F({n}) ≮ F({m})"
                )));
            }
        }
        Ok(yes)
    }

    fn step(&self, st: St, x: u64) -> Result<Option<St>> {
        Ok(match (st, x) {
            (St::Root, 0) => Some(St::Or0),
            (St::Or0, 0) => Some(St::Or1),
            (St::Or1, 0) => Some(St::AllX),
            (St::AllX, m) => Some(St::Block(m)),
            (St::Block(m), 0) => Some(St::And(m)),
            (St::And(m), 0) => Some(St::AllN(m)),
            (St::And(m), 1) => Some(St::Ax1(m)),
            (St::AllN(m), n) => Some(St::OrN(m, n)),
            (St::OrN(m, n), 0) => Some(if self.lt(n, m)? {
                St::Block(n)
            } else {
                St::AxLt(m, n)
            }),
            _ => None,
        })
    }

    fn shape(&self, st: St) -> Result<(Rule, Option<Formula>, Term)> {
        let t = &self.top;
        Ok(match st {
            St::Root => (
                Rule::Forall2(self.eig),
                Some(self.root_formula()),
                self.plus(t, 3)?,
            ),
            St::Or0 => (Rule::Or(0), Some(self.ti_z.clone()), self.plus(t, 2)?),
            St::Or1 => (Rule::Or(1), Some(self.ti_z.clone()), self.plus(t, 1)?),
            St::AllX => {
                let Formula::Or(_, all_z) = &self.ti_z else {
                    unreachable!("TI is a disjunction")
                };
                (Rule::ForallOmega, Some((**all_z).clone()), t.clone())
            }
            St::Block(m) => (Rule::Exists(m), Some(self.nprg.clone()), self.z_ord(m)?),
            St::And(m) => (Rule::And, Some(self.body(m)), self.plus(&self.g_of(m)?, 2)?),
            St::Ax1(_) => (Rule::Axiom, None, Term::Zero),
            St::AllN(m) => (
                Rule::ForallOmega,
                Some(self.all_below(m)),
                self.plus(&self.g_of(m)?, 1)?,
            ),
            St::OrN(m, n) => {
                let f = self.all_below(m);
                let (y, a) = binder(&f);
                let side = u8::from(self.lt(n, m)?);
                (Rule::Or(side), Some(a.subst(y, n)), self.g_of(m)?)
            }
            St::AxLt(..) => (Rule::Axiom, None, Term::omega()),
        })
    }

    /// The ord at the `Z(m)` block, `G(m)+3`.
    pub fn z_ord(&self, m: u64) -> Result<Term> {
        self.plus(&self.g_of(m)?, 3)
    }

    /// Address of the block for `Z(m)` directly above the `(∀ω)`.
    pub fn block_addr(m: u64) -> Vec<u64> {
        vec![0, 0, 0, m]
    }
}

impl Derivation for TiDerivation {
    fn name(&self) -> String {
        format!("ti-{}", self.i)
    }

    fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn bound(&self) -> &NotationSystem {
        &self.dil.bound
    }

    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>> {
        let mut st = St::Root;
        let mut seq = self.root_sequent();
        for &x in a {
            let (rule, mfml, _) = self.shape(st)?;
            let Some(next) = self.step(st, x)? else {
                return Ok(None);
            };
            seq = self
                .ctx
                .premise(&seq, &rule, mfml.as_ref(), x)?
                .ok_or_else(|| Error::IllFormed(format!("{rule} has no premise {x}")))?;
            st = next;
        }
        let (rule, mfml, ord) = self.shape(st)?;
        Ok(Some(DNode {
            seq,
            rule,
            mfml,
            ord,
        }))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CodedFamily;
    use crate::derivation::{local_check, Derivation};
    use crate::hierarchy::make_exponential;
    use crate::takeuti::{takeuti_extract, PrgLadder};

    fn ti_for(seq: &[u64]) -> TiDerivation {
        let q = CodedFamily::new().with_order(0, CodedOrder::from_sequence("p", seq));
        let ctx = Ctx::new(q);
        let ladder = PrgLadder::new(
            ctx.clone(),
            0,
            make_exponential(CodedOrder::empty("e")),
            false,
        )
        .unwrap();
        let f = takeuti_extract(&ladder, 0, &ladder.root_ord(), 16).unwrap();
        let bound = ti_bound(&ctx, None, &CodedOrder::chain("lam", 1)).unwrap();
        let dil = Dilation::new(ctx.system(0, None).unwrap(), bound.clone(), &f).unwrap();
        let beta0 = bound.normalize(&tier1(0).unwrap()).unwrap();
        build_ti_derivation(&ctx, 0, None, dil, &beta0, Sequent::new()).unwrap()
    }

    #[test]
    fn small_orders_check_clean() {
        for seq in [&[][..], &[0], &[0, 1], &[0, 2, 1]] {
            let d = ti_for(seq);
            let report = local_check(&d, 8, 8);
            assert!(report.is_empty(), "{seq:?}: {report:?}");
        }
    }

    #[test]
    fn root_sits_three_above_top() {
        let d = ti_for(&[0, 1]);
        let b = d.bound();
        let want = b.add(
            &b.normalize(&Term::g(Term::w(tier1(0).unwrap()))).unwrap(),
            &Term::nat(3),
        );
        assert_eq!(d.node_at(&[]).unwrap().unwrap().ord, want.unwrap());
    }
}
