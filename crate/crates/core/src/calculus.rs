//! The calculus `G(Q) + (prg) + (W)`: coded families, true literals,
//! axioms, rule tags and backward premise generation.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::formula::{ETerm, Formula, Sequent, SetVar};
use crate::hierarchy::{make_exponential, make_veblen, Recipe};
use crate::notation::NotationSystem;
use crate::order::{parse_order_file, unpair, CodedOrder, SetSpec};
use crate::term::Term;

/// One slot `(Q)_i`: either a coded order (the set of its pairs) or a
/// plain decidable set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Slot {
    Order(CodedOrder),
    Set(SetSpec),
}

/// `Q = {(Q)_i : i < ω}`; slots not listed are empty.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CodedFamily {
    slots: BTreeMap<u64, Slot>,
    /// Largest natural a membership query may touch; `None` = unbounded.
    bound: Option<u64>,
}

impl CodedFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_order(mut self, i: u64, o: CodedOrder) -> Self {
        self.slots.insert(i, Slot::Order(o));
        self
    }

    pub fn with_set(mut self, i: u64, s: SetSpec) -> Self {
        self.slots.insert(i, Slot::Set(s));
        self
    }

    pub fn with_bound(mut self, bound: u64) -> Self {
        self.bound = Some(bound);
        self
    }

    pub fn slots(&self) -> &BTreeMap<u64, Slot> {
        &self.slots
    }

    pub fn max_slot(&self) -> u64 {
        self.slots.keys().next_back().copied().unwrap_or(0)
    }

    /// `n ∈ (Q)_i`.
    pub fn member(&self, i: u64, n: u64) -> Result<bool> {
        if let Some(b) = self.bound {
            if n > b {
                return Err(Error::BoundExceeded(format!("({i}, {n}) beyond {b}")));
            }
        }
        Ok(match self.slots.get(&i) {
            None => false,
            Some(Slot::Set(s)) => s.contains(n),
            Some(Slot::Order(o)) => {
                let (a, b) = unpair(n);
                o.contains(a) && o.contains(b) && a != b && o.less_unchecked(a, b)
            }
        })
    }

    /// The relation `<_i` as an order object.
    pub fn order(&self, i: u64) -> CodedOrder {
        match self.slots.get(&i) {
            None => CodedOrder::empty(format!("Q{i}")),
            Some(Slot::Order(o)) => o.clone(),
            Some(Slot::Set(s)) => CodedOrder::coded(format!("Q{i}"), s.clone()),
        }
    }

    /// `n <_i m`.
    pub fn less(&self, i: u64, n: u64, m: u64) -> Result<bool> {
        let z = crate::order::pair(n, m).ok_or_else(|| Error::Overflow(format!("<{n},{m}>")))?;
        self.member(i, z)
    }

    pub fn in_field(&self, i: u64, n: u64) -> bool {
        match self.slots.get(&i) {
            None => false,
            Some(Slot::Order(o)) => o.contains(n),
            Some(Slot::Set(_)) => true,
        }
    }

    /// Family file: order blocks as in order files, then
    /// `slot <i> order <name>` or `slot <i> set <empty|all|evens|odds|mod m r|finite a,b,..>`.
    pub fn parse(src: &str) -> Result<CodedFamily> {
        let (mut order_part, mut slot_lines) = (String::new(), Vec::new());
        for (ln, line) in src.lines().enumerate() {
            let t = line.trim_start();
            if t.starts_with("slot ") || t.starts_with("bound ") {
                slot_lines.push((ln, line.trim().to_string()));
            } else {
                order_part.push_str(line);
                order_part.push('\n');
            }
        }
        let orders = parse_order_file(&order_part)?;
        let mut fam = CodedFamily::new();
        for (ln, line) in slot_lines {
            let err = |m: &str| Error::Parse {
                pos: ln + 1,
                msg: format!("{m}: `{line}`"),
            };
            let toks: Vec<&str> = line.split_whitespace().collect();
            match toks.as_slice() {
                ["bound", b] => fam.bound = Some(b.parse().map_err(|_| err("bad bound"))?),
                ["slot", i, "order", name] => {
                    let i: u64 = i.parse().map_err(|_| err("bad slot"))?;
                    let o = orders.iter().find(|o| o.name() == *name).ok_or_else(|| {
                        Error::Unknown {
                            kind: "order",
                            name: name.to_string(),
                        }
                    })?;
                    fam.slots.insert(i, Slot::Order(o.clone()));
                }
                ["slot", i, "set", spec @ ..] => {
                    let i: u64 = i.parse().map_err(|_| err("bad slot"))?;
                    fam.slots.insert(
                        i,
                        Slot::Set(parse_set_spec(spec).ok_or_else(|| err("bad set"))?),
                    );
                }
                _ => return Err(err("unrecognized family line")),
            }
        }
        Ok(fam)
    }

    pub fn to_file_string(&self) -> String {
        let mut out = String::new();
        for (i, s) in &self.slots {
            if let Slot::Order(o) = s {
                let mut o = o.clone();
                if o.summands().is_some() {
                    let (a, b) = o.summands().unwrap();
                    out.push_str(&a.to_file_string());
                    out.push_str(&b.to_file_string());
                }
                o = o.with_name(format!("q{i}"));
                out.push_str(&o.to_file_string());
            }
        }
        if let Some(b) = self.bound {
            out.push_str(&format!("bound {b}\n"));
        }
        for (i, s) in &self.slots {
            match s {
                Slot::Order(_) => out.push_str(&format!("slot {i} order q{i}\n")),
                Slot::Set(spec) => out.push_str(&format!("slot {i} set {}\n", show_set_spec(spec))),
            }
        }
        out
    }
}

fn parse_set_spec(toks: &[&str]) -> Option<SetSpec> {
    Some(match toks {
        ["empty"] => SetSpec::Empty,
        ["all"] => SetSpec::All,
        ["evens"] => SetSpec::Residue {
            modulus: 2,
            residue: 0,
        },
        ["odds"] => SetSpec::Residue {
            modulus: 2,
            residue: 1,
        },
        ["mod", m, r] => {
            let modulus: u64 = m.parse().ok()?;
            if modulus == 0 {
                return None;
            }
            SetSpec::Residue {
                modulus,
                residue: r.parse().ok()?,
            }
        }
        ["finite"] => SetSpec::Finite(Default::default()),
        ["finite", list] => SetSpec::Finite(
            list.split(',')
                .map(|x| x.trim().parse().ok())
                .collect::<Option<_>>()?,
        ),
        _ => return None,
    })
}

fn show_set_spec(s: &SetSpec) -> String {
    match s {
        SetSpec::Empty => "empty".into(),
        SetSpec::All => "all".into(),
        SetSpec::Residue { modulus, residue } => format!("mod {modulus} {residue}"),
        SetSpec::Finite(v) if v.is_empty() => "finite".into(),
        SetSpec::Finite(v) => format!(
            "finite {}",
            v.iter()
                .map(|x| x.to_string())
                .collect::<Vec<_>>()
                .join(",")
        ),
    }
}

/// Everything needed to decide literals: the family and the functional
/// `g` (as a layer recipe applied to each slot's order).
#[derive(Debug, Clone)]
pub struct Ctx {
    pub q: CodedFamily,
    pub g: Recipe,
}

impl Ctx {
    pub fn new(q: CodedFamily) -> Self {
        Ctx {
            q,
            g: Recipe::Exponential,
        }
    }

    pub fn with_g(mut self, g: Recipe) -> Self {
        self.g = g;
        self
    }

    /// `g((Q)_i)`, or `φ[g]_β((Q)_i)` for `β > 0`.
    pub fn system(&self, slot: u64, beta: Option<&Term>) -> Result<NotationSystem> {
        self.system_over(&self.q.order(slot), beta)
    }

    /// `g` (or `φ[g]_β`) applied to an arbitrary base.
    pub fn system_over(&self, base: &CodedOrder, beta: Option<&Term>) -> Result<NotationSystem> {
        let g = self.g.build(base)?;
        match beta {
            Some(b) if *b != Term::Zero => {
                let idx = make_exponential(CodedOrder::empty("index"));
                make_veblen(&g, &idx, b)
            }
            _ => Ok(g),
        }
    }

    /// `n <_{g_i} m` on codes: both decode to normal forms of the system
    /// and compare `Less`.
    pub fn lt_g(&self, slot: u64, beta: Option<&Term>, n: u64, m: u64) -> Result<bool> {
        let s = self.system(slot, beta)?;
        let (a, b) = (Term::decode(n), Term::decode(m));
        let nf = |t: &Term| s.belongs(t) && s.normalize(t).is_ok_and(|x| x == *t);
        Ok(nf(&a) && nf(&b) && s.lt(&a, &b)?)
    }

    /// `D_Q(i, n)`.
    pub fn diag(&self, i: u64, n: u64) -> Result<Formula> {
        let pos = self.q.member(i, n)?;
        Ok(Formula::set(pos, SetVar::X(i), ETerm::Num(n)))
    }

    /// Truth of a decidable literal; `None` for E-, Z- and Y-literals,
    /// which are never true literals.
    pub fn literal_value(&self, l: &Formula) -> Result<Option<bool>> {
        Ok(match l {
            Formula::Eq(a, b) => Some(a.eval()? == b.eval()?),
            Formula::Neq(a, b) => Some(a.eval()? != b.eval()?),
            Formula::Set {
                pos,
                var: SetVar::X(i),
                arg,
            } => Some(self.q.member(*i, arg.eval()?)? == *pos),
            Formula::Set { .. } => None,
            Formula::LtG {
                pos,
                slot,
                beta,
                lhs,
                rhs,
            } => Some(self.lt_g(*slot, beta.as_ref(), lhs.eval()?, rhs.eval()?)? == *pos),
            Formula::Fld { pos, slot, arg } => Some(self.q.in_field(*slot, arg.eval()?) == *pos),
            _ => {
                return Err(Error::Precondition(format!("{l} is not a literal")));
            }
        })
    }

    pub fn is_true_literal(&self, l: &Formula) -> Result<bool> {
        Ok(self.literal_value(l)? == Some(true))
    }

    /// A true literal, or a complementary pair of `E`/`Z` literals.
    pub fn is_axiom(&self, s: &Sequent) -> bool {
        s.iter().any(|f| {
            f.is_literal()
                && (self.is_true_literal(f).unwrap_or(false)
                    || matches!(
                        f,
                        Formula::Set {
                            pos: true,
                            var: SetVar::E(_) | SetVar::Z(_),
                            ..
                        }
                    ) && s.contains(&f.dual()))
        })
    }

    /// Backward application of `rule` with principal formula `principal`
    /// to `s`, premise number `idx`. `Ok(None)` means the premise index is
    /// absent (beyond a finite arity, or `n ≮_i m` for `(prg)`).
    pub fn premise(
        &self,
        s: &Sequent,
        rule: &Rule,
        principal: Option<&Formula>,
        idx: u64,
    ) -> Result<Option<Sequent>> {
        let mismatch = || Error::RuleMismatch {
            rule: rule.to_string(),
            principal: principal.map_or("-".into(), |p| p.to_string()),
        };
        let need = |p: Option<&Formula>| -> Result<Formula> {
            let p = p.ok_or_else(mismatch)?;
            if !s.contains(p) {
                return Err(mismatch());
            }
            Ok(p.clone())
        };
        let without = |p: &Formula| {
            let mut t = s.clone();
            t.remove(p);
            t
        };
        let with = |base: &Sequent, extra: Formula| {
            let mut t = base.clone();
            t.insert(extra);
            t
        };
        match rule {
            Rule::Axiom => {
                if !self.is_axiom(s) {
                    return Err(mismatch());
                }
                Ok(None)
            }
            Rule::Rep => Ok((idx == 0).then(|| s.clone())),
            Rule::Or(i) => {
                let p = need(principal)?;
                let Formula::Or(a, b) = &p else {
                    return Err(mismatch());
                };
                let part = if *i == 0 { a } else { b };
                Ok((idx == 0).then(|| with(s, (**part).clone())))
            }
            Rule::And => {
                let p = need(principal)?;
                let Formula::And(a, b) = &p else {
                    return Err(mismatch());
                };
                Ok(match idx {
                    0 => Some(with(&without(&p), (**a).clone())),
                    1 => Some(with(&without(&p), (**b).clone())),
                    _ => None,
                })
            }
            Rule::Exists(n) => {
                let p = need(principal)?;
                let Formula::Ex(x, a) = &p else {
                    return Err(mismatch());
                };
                Ok((idx == 0).then(|| with(s, a.subst(x, *n))))
            }
            Rule::ForallOmega => {
                let p = need(principal)?;
                let Formula::All(x, a) = &p else {
                    return Err(mismatch());
                };
                Ok(Some(with(&without(&p), a.subst(x, idx))))
            }
            Rule::Exists2(i) => {
                let p = need(principal)?;
                let Formula::Ex2(a) = &p else {
                    return Err(mismatch());
                };
                Ok((idx == 0).then(|| with(s, a.subst2(SetVar::X(*i)))))
            }
            Rule::Forall2(j) => {
                let p = need(principal)?;
                let Formula::All2(a) = &p else {
                    return Err(mismatch());
                };
                let rest = without(&p);
                let mut used = std::collections::BTreeSet::new();
                rest.iter().for_each(|f| f.eigenvariables(&mut used));
                if used.contains(j) {
                    return Err(Error::Precondition(format!(
                        "eigenvariable Z{j} is not fresh"
                    )));
                }
                Ok((idx == 0).then(|| with(&rest, a.subst2(SetVar::Z(*j)))))
            }
            Rule::Prg(i) => {
                let p = need(principal)?;
                let Formula::Set {
                    pos: true,
                    var: SetVar::E(k),
                    arg,
                } = &p
                else {
                    return Err(mismatch());
                };
                if k != i {
                    return Err(mismatch());
                }
                let m = arg.eval()?;
                if !self.q.less(*i, idx, m)? {
                    return Ok(None);
                }
                Ok(Some(with(&without(&p), Formula::e(*i, idx))))
            }
            Rule::W(i) | Rule::WBeta(i, _) => {
                let beta = match rule {
                    Rule::WBeta(_, b) => Some(b.clone()),
                    _ => None,
                };
                Ok(match idx {
                    0 => Some(with(s, formula_lo(*i))),
                    1 => Some(with(
                        s,
                        Formula::all("x", Formula::set(true, SetVar::E(*i), ETerm::var("x"))),
                    )),
                    2 => Some(with(s, formula_ti_all(*i, beta).dual())),
                    _ => None,
                })
            }
            Rule::Cut(a) => Ok(match idx {
                0 => Some(with(s, a.clone())),
                1 => Some(with(s, a.dual())),
                _ => None,
            }),
        }
    }

    /// Premise count for finite rules, `None` for ω-indexed ones.
    pub fn arity(&self, rule: &Rule) -> Option<u64> {
        match rule {
            Rule::Axiom => Some(0),
            Rule::Rep | Rule::Or(_) | Rule::Exists(_) | Rule::Exists2(_) | Rule::Forall2(_) => {
                Some(1)
            }
            Rule::And | Rule::Cut(_) => Some(2),
            Rule::W(_) | Rule::WBeta(..) => Some(3),
            Rule::ForallOmega | Rule::Prg(_) => None,
        }
    }

    /// The `n` with `n <_i m`, when the slot's order has a finite field.
    pub fn prg_predecessors(&self, i: u64, m: u64) -> Result<Option<Vec<u64>>> {
        let o = self.q.order(i);
        if !o.is_finite() {
            return Ok(None);
        }
        let mut out = Vec::new();
        for n in o.field()? {
            if self.q.less(i, n, m)? {
                out.push(n);
            }
        }
        out.sort_unstable();
        Ok(Some(out))
    }
}

/// Inference rules. The parameter of `Or` selects the disjunct, of
/// `Exists`/`Exists2` the witness, of `Forall2` the eigenvariable.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Axiom,
    Rep,
    Or(u8),
    And,
    Exists(u64),
    ForallOmega,
    Exists2(u64),
    Forall2(u64),
    Prg(u64),
    W(u64),
    WBeta(u64, Term),
    Cut(Formula),
}

impl Rule {
    pub fn is_w(&self) -> bool {
        matches!(self, Rule::W(_) | Rule::WBeta(..))
    }

    /// Rules whose premises keep the principal formula.
    pub fn retains_principal(&self) -> bool {
        matches!(self, Rule::Or(_) | Rule::Exists(_) | Rule::Exists2(_))
    }

    pub fn parse(src: &str) -> Result<Rule> {
        let bad = || Error::Parse {
            pos: 0,
            msg: format!("unknown rule `{src}`"),
        };
        let num = |s: &str| s.parse::<u64>().map_err(|_| bad());
        let parts: Vec<&str> = src.splitn(3, ':').collect();
        Ok(match parts.as_slice() {
            ["ax"] => Rule::Axiom,
            ["rep"] => Rule::Rep,
            ["or", i] => Rule::Or(num(i)?.min(1) as u8),
            ["and"] => Rule::And,
            ["ex", n] => Rule::Exists(num(n)?),
            ["allw"] => Rule::ForallOmega,
            ["ex2", i] => Rule::Exists2(num(i)?),
            ["all2", j] => Rule::Forall2(num(j)?),
            ["prg", i] => Rule::Prg(num(i)?),
            ["W", i] => Rule::W(num(i)?),
            ["W", i, b] => Rule::WBeta(num(i)?, Term::parse(b)?),
            ["cut", a] => Rule::Cut(Formula::parse(a)?),
            _ => return Err(bad()),
        })
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rule::Axiom => write!(f, "ax"),
            Rule::Rep => write!(f, "rep"),
            Rule::Or(i) => write!(f, "or:{i}"),
            Rule::And => write!(f, "and"),
            Rule::Exists(n) => write!(f, "ex:{n}"),
            Rule::ForallOmega => write!(f, "allw"),
            Rule::Exists2(i) => write!(f, "ex2:{i}"),
            Rule::Forall2(j) => write!(f, "all2:{j}"),
            Rule::Prg(i) => write!(f, "prg:{i}"),
            Rule::W(i) => write!(f, "W:{i}"),
            Rule::WBeta(i, b) => write!(f, "W:{i}:{b}"),
            Rule::Cut(a) => write!(f, "cut:{a}"),
        }
    }
}

fn x_lit(pos: bool, i: u64, a: &str, b: &str) -> Formula {
    Formula::set(pos, SetVar::X(i), ETerm::pair(ETerm::var(a), ETerm::var(b)))
}

fn nfld(i: u64, a: &str) -> Formula {
    Formula::Fld {
        pos: false,
        slot: i,
        arg: ETerm::var(a),
    }
}

/// `LO(<_i)`, relativized to the field of `<_i`:
/// irreflexivity, transitivity and trichotomy as a conjunction.
pub fn formula_lo(i: u64) -> Formula {
    let irr = Formula::all("n", Formula::or(nfld(i, "n"), x_lit(false, i, "n", "n")));
    let trans = Formula::all(
        "n",
        Formula::all(
            "m",
            Formula::all(
                "k",
                Formula::or_all(vec![
                    nfld(i, "n"),
                    nfld(i, "m"),
                    nfld(i, "k"),
                    x_lit(false, i, "n", "m"),
                    x_lit(false, i, "m", "k"),
                    x_lit(true, i, "n", "k"),
                ]),
            ),
        ),
    );
    let tri = Formula::all(
        "n",
        Formula::all(
            "m",
            Formula::or_all(vec![
                nfld(i, "n"),
                nfld(i, "m"),
                x_lit(true, i, "n", "m"),
                Formula::Eq(ETerm::var("n"), ETerm::var("m")),
                x_lit(true, i, "m", "n"),
            ]),
        ),
    );
    Formula::and(irr, Formula::and(trans, tri))
}

fn lt_g(pos: bool, i: u64, beta: &Option<Term>, a: &str, b: &str) -> Formula {
    Formula::LtG {
        pos,
        slot: i,
        beta: beta.clone(),
        lhs: ETerm::var(a),
        rhs: ETerm::var(b),
    }
}

/// `Prg[<_{g_i}, V] = ∀m(∃n(n <_{g_i} m ∧ V̄(n)) ∨ V(m))`.
pub fn formula_prg(i: u64, beta: Option<Term>, v: SetVar) -> Formula {
    Formula::all(
        "m",
        Formula::or(
            Formula::ex(
                "n",
                Formula::and(
                    lt_g(true, i, &beta, "n", "m"),
                    Formula::set(false, v, ETerm::var("n")),
                ),
            ),
            Formula::set(true, v, ETerm::var("m")),
        ),
    )
}

/// `TI(<_{g_i}, V) = ¬Prg[<_{g_i}, V] ∨ ∀x V(x)`.
pub fn formula_ti(i: u64, beta: Option<Term>, v: SetVar) -> Formula {
    Formula::or(
        formula_prg(i, beta, v).dual(),
        Formula::all("x", Formula::set(true, v, ETerm::var("x"))),
    )
}

/// `∀Y TI(<_{g_i}, Y)`.
pub fn formula_ti_all(i: u64, beta: Option<Term>) -> Formula {
    Formula::All2(Box::new(formula_ti(i, beta, SetVar::Y(0))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse_sequent;

    fn evens() -> SetSpec {
        SetSpec::Residue {
            modulus: 2,
            residue: 0,
        }
    }

    #[test]
    fn diag_examples() {
        let ctx = Ctx::new(CodedFamily::new().with_set(1, evens()));
        assert_eq!(ctx.diag(0, 5).unwrap().to_string(), "(nX 0 5)");
        assert_eq!(ctx.diag(1, 4).unwrap().to_string(), "(X 1 4)");
        assert!(ctx
            .is_true_literal(&Formula::parse("(X 1 4)").unwrap())
            .unwrap());
        assert!(!ctx
            .is_true_literal(&Formula::parse("(E 0 3)").unwrap())
            .unwrap());
        assert!(ctx
            .is_true_literal(&Formula::parse("(= (+ 2 3) 5)").unwrap())
            .unwrap());
        assert!(ctx
            .is_true_literal(&Formula::parse("(= x 5)").unwrap())
            .is_err());
    }

    #[test]
    fn axioms() {
        let ctx = Ctx::new(CodedFamily::new());
        let ax = |s: &str| ctx.is_axiom(&parse_sequent(s).unwrap());
        assert!(ax("{(E 0 2), (nE 0 2)}"));
        assert!(ax("{(= 0 0)}"));
        assert!(!ax("{(E 0 2), (nE 0 3)}"));
        assert!(!ax("{}"));
        assert!(ax("{(Z 1 2), (nZ 1 2)}"));
    }

    #[test]
    fn rule_premises() {
        let ctx = Ctx::new(CodedFamily::new().with_order(0, CodedOrder::chain("c", 3)));
        let p = Formula::parse("(or (E 0 1) (X 0 2))").unwrap();
        let s: Sequent = [p.clone()].into();
        let prem = ctx.premise(&s, &Rule::Or(0), Some(&p), 0).unwrap().unwrap();
        assert!(prem.contains(&p) && prem.contains(&Formula::e(0, 1)));

        let e2 = Formula::e(0, 2);
        let s: Sequent = [e2.clone()].into();
        let kids: Vec<u64> = (0..5)
            .filter(|&n| {
                ctx.premise(&s, &Rule::Prg(0), Some(&e2), n)
                    .unwrap()
                    .is_some()
            })
            .collect();
        assert_eq!(kids, vec![0, 1]);
        let e0 = Formula::e(0, 0);
        let s0: Sequent = [e0.clone()].into();
        assert!((0..5).all(|n| ctx
            .premise(&s0, &Rule::Prg(0), Some(&e0), n)
            .unwrap()
            .is_none()));

        let empty = Sequent::new();
        let w: Vec<_> = (0..4)
            .map(|k| ctx.premise(&empty, &Rule::W(0), None, k).unwrap())
            .collect();
        assert!(w[..3].iter().all(Option::is_some) && w[3].is_none());

        assert!(ctx.premise(&s, &Rule::And, Some(&e2), 0).is_err());
    }

    #[test]
    fn lo_decided_on_finite_orders() {
        let q = CodedFamily::new().with_order(0, CodedOrder::chain("c", 2));
        let ctx = Ctx::new(q);
        assert_eq!(formula_lo(0).complexity(), 18);
        assert!(ctx.q.less(0, 0, 1).unwrap());
        assert!(!ctx.q.less(0, 1, 0).unwrap());
    }

    #[test]
    fn g_relation_on_codes() {
        let ctx = Ctx::new(CodedFamily::new().with_order(0, CodedOrder::chain("c", 2)));
        let c0 = Term::c(0).encode().unwrap();
        let c1 = Term::c(1).encode().unwrap();
        assert!(ctx.lt_g(0, None, c0, c1).unwrap());
        assert!(!ctx.lt_g(0, None, c1, c0).unwrap());
        // C[5] is not a term over a 2-chain
        let c5 = Term::c(5).encode().unwrap();
        assert!(!ctx.lt_g(0, None, c0, c5).unwrap());
    }

    #[test]
    fn family_file_round_trip() {
        let src = "order c kind=finite\nchain 0 1 2\nend\nslot 0 order c\nslot 1 set evens\n";
        let q = CodedFamily::parse(src).unwrap();
        assert!(q.member(1, 4).unwrap());
        assert!(q.less(0, 0, 2).unwrap());
        let again = CodedFamily::parse(&q.to_file_string()).unwrap();
        assert!(again.member(1, 4).unwrap());
        assert!(again.less(0, 0, 2).unwrap());
    }
}
