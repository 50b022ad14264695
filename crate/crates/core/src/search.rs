//! The canonical proof-search tree for the empty sequent, open paths and
//! the models read off them, and the Kleene–Brouwer ordering.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::calculus::{Ctx, Rule};
use crate::error::{Error, Result};
use crate::formula::{sequent_hash, show_sequent, ETerm, Formula, Sequent, SetVar};
use crate::hierarchy::enumerate_with;
use crate::notation::{index_cmp, pure};
use crate::order::unpair;
use crate::term::Term;

pub type Addr = Vec<u64>;

pub fn show_addr(a: &[u64]) -> String {
    if a.is_empty() {
        ".".into()
    } else {
        a.iter()
            .map(|x| x.to_string())
            .collect::<Vec<_>>()
            .join(".")
    }
}

pub fn parse_addr(s: &str) -> Result<Addr> {
    let s = s.trim();
    if s == "." {
        return Ok(Vec::new());
    }
    s.split('.')
        .map(|x| {
            x.parse().map_err(|_| Error::Parse {
                pos: 0,
                msg: format!("bad address `{s}`"),
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    /// Closed by an axiom.
    Axiom,
    /// Unexpanded: the depth budget ends here.
    Open,
    Expanded,
    /// Expanded, but ω-many premises were cut to the width budget.
    BudgetCut,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Axiom => "axiom",
            Status::Open => "open",
            Status::Expanded => "expanded",
            Status::BudgetCut => "budget-cut",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchNode {
    pub seq: Sequent,
    pub rule: Option<Rule>,
    pub principal: Option<Formula>,
    pub status: Status,
    /// Present child indices, increasing.
    pub children: Vec<u64>,
    /// Case-1 schedule at this node (front first).
    pub queue: Vec<Formula>,
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub depth: usize,
    pub width: u64,
    /// Veblen mode: `(W)_{i,β}` for `β` below this index.
    pub veblen: Option<Term>,
}

impl SearchConfig {
    pub fn new(depth: usize, width: u64) -> Self {
        SearchConfig {
            depth,
            width,
            veblen: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SearchTree {
    pub ctx: Ctx,
    pub config: SearchConfig,
    pub nodes: BTreeMap<Addr, SearchNode>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Entry {
    f: Formula,
    /// Disjunct for `∨`, next witness for `∃`/`∃²`.
    stage: u64,
}

#[derive(Debug, Clone, Default)]
struct Sched {
    queue: VecDeque<Entry>,
    /// Positive `E` literals in order of introduction.
    e_order: Vec<Formula>,
    next_eigen: u64,
}

impl Sched {
    fn admit(&mut self, seq: &Sequent, f: &Formula) {
        if f.is_literal() {
            if matches!(
                f,
                Formula::Set {
                    pos: true,
                    var: SetVar::E(_),
                    ..
                }
            ) && !self.e_order.contains(f)
            {
                self.e_order.push(f.clone());
            }
        } else if !seq.contains(f) && !self.queue.iter().any(|e| &e.f == f) {
            self.queue.push_back(Entry {
                f: f.clone(),
                stage: 0,
            });
        }
    }
}

struct Builder<'a> {
    ctx: &'a Ctx,
    config: &'a SearchConfig,
    betas: Vec<Term>,
    nodes: BTreeMap<Addr, SearchNode>,
}

/// Builds the search tree to the given budgets.
pub fn build_search_tree(ctx: &Ctx, config: &SearchConfig) -> Result<SearchTree> {
    if config.depth == 0 || config.width == 0 {
        return Err(Error::Precondition("budgets must be positive".into()));
    }
    let betas = match &config.veblen {
        None => Vec::new(),
        Some(alpha) => {
            let mut v = Vec::new();
            for b in enumerate_with(pure(), 4, &[])? {
                if index_cmp(&b, alpha)? == Ordering::Less {
                    v.push(b);
                }
            }
            v
        }
    };
    let mut b = Builder {
        ctx,
        config,
        betas,
        nodes: BTreeMap::new(),
    };
    b.expand(Vec::new(), Sequent::new(), Sched::default())?;
    Ok(SearchTree {
        ctx: ctx.clone(),
        config: config.clone(),
        nodes: b.nodes,
    })
}

impl Builder<'_> {
    fn expand(&mut self, addr: Addr, seq: Sequent, sched: Sched) -> Result<()> {
        let lh = addr.len();
        let queue: Vec<Formula> = sched.queue.iter().map(|e| e.f.clone()).collect();
        let mut node = SearchNode {
            seq: seq.clone(),
            rule: None,
            principal: None,
            status: Status::Open,
            children: Vec::new(),
            queue,
        };
        if self.ctx.is_axiom(&seq) {
            node.status = Status::Axiom;
            node.rule = Some(Rule::Axiom);
            self.nodes.insert(addr, node);
            return Ok(());
        }
        if lh + 1 >= self.config.depth {
            self.nodes.insert(addr, node);
            return Ok(());
        }
        let (rule, principal, kids, truncated, child_sched) = self.step(lh, &seq, sched)?;
        node.rule = Some(rule.clone());
        node.principal = principal.clone();
        node.status = if truncated {
            Status::BudgetCut
        } else {
            Status::Expanded
        };
        node.children = kids.iter().map(|(i, _)| *i).collect();
        self.nodes.insert(addr.clone(), node);
        for (i, child) in kids {
            let mut sched = child_sched.clone();
            for f in child.difference(&seq) {
                sched.admit(&seq, f);
            }
            let mut a = addr.clone();
            a.push(i);
            self.expand(a, child, sched)?;
        }
        Ok(())
    }

    #[allow(clippy::type_complexity)]
    fn step(
        &self,
        lh: usize,
        seq: &Sequent,
        mut sched: Sched,
    ) -> Result<(Rule, Option<Formula>, Vec<(u64, Sequent)>, bool, Sched)> {
        let width = self.config.width;
        let finite = |rule: &Rule, p: Option<&Formula>, n: u64| -> Result<Vec<(u64, Sequent)>> {
            let mut out = Vec::new();
            for i in 0..n {
                if let Some(s) = self.ctx.premise(seq, rule, p, i)? {
                    out.push((i, s));
                }
            }
            Ok(out)
        };
        match lh % 3 {
            0 => {
                let k = (lh / 3) as u64;
                let rule = if self.betas.is_empty() {
                    Rule::W(k)
                } else {
                    let (i, j) = unpair(k);
                    Rule::WBeta(i, self.betas[j as usize % self.betas.len()].clone())
                };
                let kids = finite(&rule, None, 3)?;
                Ok((rule, None, kids, false, sched))
            }
            1 => {
                let Some(entry) = sched.queue.pop_front() else {
                    return Ok((Rule::Rep, None, finite(&Rule::Rep, None, 1)?, false, sched));
                };
                let f = entry.f.clone();
                let (rule, requeue) = match &f {
                    Formula::Or(..) => (Rule::Or(entry.stage as u8), entry.stage == 0),
                    Formula::Ex(..) => (Rule::Exists(entry.stage), true),
                    Formula::Ex2(..) => (Rule::Exists2(entry.stage), true),
                    Formula::And(..) => (Rule::And, false),
                    Formula::All(..) => (Rule::ForallOmega, false),
                    Formula::All2(..) => {
                        let mut used = BTreeSet::new();
                        seq.iter().for_each(|g| g.eigenvariables(&mut used));
                        let mut j = sched.next_eigen;
                        while used.contains(&j) {
                            j += 1;
                        }
                        sched.next_eigen = j + 1;
                        (Rule::Forall2(j), false)
                    }
                    _ => unreachable!("literals are never scheduled"),
                };
                if requeue {
                    sched.queue.push_back(Entry {
                        f: f.clone(),
                        stage: entry.stage + 1,
                    });
                }
                let omega = self.ctx.arity(&rule).is_none();
                let n = self.ctx.arity(&rule).unwrap_or(width);
                let kids = finite(&rule, Some(&f), n)?;
                Ok((rule, Some(f), kids, omega, sched))
            }
            _ => {
                let (_, i) = unpair(((lh - 2) / 3) as u64);
                let pos = sched.e_order.iter().position(|e| {
                    seq.contains(e)
                        && matches!(e, Formula::Set { var: SetVar::E(k), .. } if *k == i)
                });
                let Some(pos) = pos else {
                    return Ok((Rule::Rep, None, finite(&Rule::Rep, None, 1)?, false, sched));
                };
                let e = sched.e_order.remove(pos);
                let rule = Rule::Prg(i);
                let m = match &e {
                    Formula::Set { arg, .. } => arg.eval()?,
                    _ => unreachable!(),
                };
                let kids = finite(&rule, Some(&e), width)?;
                let truncated = match self.ctx.prg_predecessors(i, m)? {
                    Some(preds) => preds.iter().any(|&n| n >= width),
                    None => true,
                };
                Ok((rule, Some(e), kids, truncated, sched))
            }
        }
    }
}

impl SearchTree {
    pub fn root(&self) -> &SearchNode {
        &self.nodes[&Vec::new()]
    }

    pub fn get(&self, a: &[u64]) -> Result<&SearchNode> {
        self.nodes.get(a).ok_or_else(|| Error::Unknown {
            kind: "address",
            name: show_addr(a),
        })
    }

    pub fn kb_compare(&self, a: &[u64], b: &[u64]) -> Result<Ordering> {
        self.get(a)?;
        self.get(b)?;
        Ok(kb_compare(a, b))
    }

    /// All addresses in increasing Kleene–Brouwer order.
    pub fn kb_sort(&self) -> Vec<Addr> {
        kb_sort(self.nodes.keys().cloned().collect())
    }

    /// Every expanded node's children are exactly the premises of its
    /// rule (to the width budget); axiom leaves are axioms.
    pub fn local_violations(&self) -> Result<Vec<String>> {
        let mut out = Vec::new();
        for (a, node) in &self.nodes {
            match node.status {
                Status::Axiom => {
                    if !self.ctx.is_axiom(&node.seq) {
                        out.push(format!("{}: not an axiom", show_addr(a)));
                    }
                }
                Status::Open => {}
                Status::Expanded | Status::BudgetCut => {
                    let rule = node.rule.as_ref().expect("expanded nodes carry a rule");
                    let n = self.ctx.arity(rule).unwrap_or(self.config.width);
                    for i in 0..n {
                        let want = self
                            .ctx
                            .premise(&node.seq, rule, node.principal.as_ref(), i)?;
                        let mut c = a.clone();
                        c.push(i);
                        let got = self.nodes.get(&c).map(|x| &x.seq);
                        if want.as_ref() != got {
                            out.push(format!("{}: premise {i} mismatch", show_addr(a)));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// Formulas scheduled at a Case-1 node that are not principal within
    /// as many Case-1 steps as there are scheduled formulas there, on
    /// some branch that continues that far.
    pub fn fairness_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        for (a, node) in &self.nodes {
            if a.len() % 3 != 1 || node.status == Status::Axiom || node.status == Status::Open {
                continue;
            }
            let pending: Vec<&Formula> = node
                .seq
                .iter()
                .filter(|f| !f.is_literal() && !exhausted(f, &node.seq))
                .collect();
            let horizon = pending.len();
            for f in pending {
                if let Some(b) = self.starving_branch(a, f, horizon) {
                    out.push(format!(
                        "{}: {f} not principal by {}",
                        show_addr(a),
                        show_addr(&b)
                    ));
                }
            }
        }
        out
    }

    /// A descendant of `a` reached after `steps` Case-1 levels without `f`
    /// ever being principal at a Case-1 node, if one exists.
    fn starving_branch(&self, a: &Addr, f: &Formula, steps: usize) -> Option<Addr> {
        let node = self.nodes.get(a)?;
        if a.len() % 3 == 1 {
            if node.principal.as_ref() == Some(f) {
                return None;
            }
            if steps == 0 {
                return Some(a.clone());
            }
        }
        let steps = if a.len() % 3 == 1 { steps - 1 } else { steps };
        for &i in &node.children {
            let mut c = a.clone();
            c.push(i);
            if let Some(b) = self.starving_branch(&c, f, steps) {
                return Some(b);
            }
        }
        None
    }

    /// The first path (leftmost) from the root through non-axiom nodes
    /// that reaches the depth frontier; such a path is potentially
    /// infinite. `None` when every branch closes within the budgets.
    pub fn find_open_path(&self) -> Option<Vec<Addr>> {
        let mut path = Vec::new();
        if self.open_from(&Vec::new(), &mut path) {
            Some(path)
        } else {
            None
        }
    }

    fn open_from(&self, a: &Addr, path: &mut Vec<Addr>) -> bool {
        let Some(node) = self.nodes.get(a) else {
            return false;
        };
        path.push(a.clone());
        let found = match node.status {
            Status::Axiom => false,
            Status::Open => true,
            Status::Expanded | Status::BudgetCut => node.children.iter().any(|&i| {
                let mut c = a.clone();
                c.push(i);
                self.open_from(&c, path)
            }),
        };
        if !found {
            path.pop();
        }
        found
    }

    /// Certificate: `addr | status | rule | principal | sequent-hash`.
    pub fn certificate(&self) -> String {
        let mut s = format!(
            "search depth={} width={}\n",
            self.config.depth, self.config.width
        );
        for (a, n) in &self.nodes {
            s.push_str(&format!(
                "{} | {} | {} | {} | {}\n",
                show_addr(a),
                n.status.as_str(),
                n.rule.as_ref().map_or("-".into(), |r| r.to_string()),
                n.principal.as_ref().map_or("-".into(), |p| p.to_string()),
                sequent_hash(&n.seq)
            ));
        }
        s
    }

    /// Sidecar with the full sequents: `addr | {A, B, ...}`.
    pub fn sidecar(&self) -> String {
        let mut s = String::new();
        for (a, n) in &self.nodes {
            s.push_str(&format!("{} | {}\n", show_addr(a), show_sequent(&n.seq)));
        }
        s
    }
}

/// `A₀ ∨ A₁` with both disjuncts already present needs no more work.
fn exhausted(f: &Formula, seq: &Sequent) -> bool {
    match f {
        Formula::Or(a, b) => seq.contains(a) && seq.contains(b),
        _ => false,
    }
}

/// `a <_KB b` iff `a` properly extends `b`, or `a` is smaller at the first
/// difference.
pub fn kb_compare(a: &[u64], b: &[u64]) -> Ordering {
    for (x, y) in a.iter().zip(b) {
        if x != y {
            return x.cmp(y);
        }
    }
    b.len().cmp(&a.len())
}

pub fn kb_sort(mut addrs: Vec<Addr>) -> Vec<Addr> {
    addrs.sort_by(|a, b| kb_compare(a, b));
    addrs
}

/// Memberships forced by the set literals on a path: `X_i(n)` on the path
/// forces `n ∉ (M)_i`, `X̄_i(n)` forces `n ∈ (M)_i`. Slot 0 is `(Q)_0`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathModel {
    pub x: BTreeMap<u64, BTreeMap<u64, bool>>,
    pub e: BTreeMap<u64, BTreeMap<u64, bool>>,
}

impl PathModel {
    /// `Some(b)` when membership of `n` in `(M)_i` is determined.
    pub fn member(&self, ctx: &Ctx, i: u64, n: u64) -> Option<bool> {
        if i == 0 {
            return ctx.q.member(0, n).ok();
        }
        self.x.get(&i).and_then(|m| m.get(&n)).copied()
    }

    pub fn e_member(&self, i: u64, n: u64) -> Option<bool> {
        self.e.get(&i).and_then(|m| m.get(&n)).copied()
    }
}

pub fn extract_path_model(tree: &SearchTree, path: &[Addr]) -> Result<PathModel> {
    let mut model = PathModel::default();
    for a in path {
        for f in &tree.get(a)?.seq {
            let Formula::Set { pos, var, arg } = f else {
                continue;
            };
            let Ok(n) = arg.eval() else { continue };
            let (map, i) = match var {
                SetVar::X(i) => (&mut model.x, *i),
                SetVar::E(i) => (&mut model.e, *i),
                _ => continue,
            };
            let forced = !pos;
            let slot = map.entry(i).or_default();
            match slot.insert(n, forced) {
                Some(prev) if prev != forced => {
                    return Err(Error::ForcingConflict { slot: i, elem: n });
                }
                _ => {}
            }
            if i == 0 && matches!(var, SetVar::X(_)) && tree.ctx.q.member(0, n)? != forced {
                return Err(Error::ForcingConflict { slot: 0, elem: n });
            }
        }
    }
    Ok(model)
}

/// Bounded check that `a` is false in the path model: `true` only when
/// falsity is established; `false` means undetermined.
pub fn falsify_on_path(ctx: &Ctx, a: &Formula, model: &PathModel, fuel: u64) -> bool {
    value(ctx, a, model, fuel) == Some(false)
}

fn value(ctx: &Ctx, a: &Formula, model: &PathModel, fuel: u64) -> Option<bool> {
    match a {
        Formula::Eq(..) | Formula::Neq(..) => ctx.literal_value(a).ok().flatten(),
        Formula::Set { pos, var, arg } => {
            let n = arg.eval().ok()?;
            let m = match var {
                SetVar::X(i) => model.member(ctx, *i, n)?,
                SetVar::E(i) => model.e_member(*i, n)?,
                _ => return None,
            };
            Some(m == *pos)
        }
        Formula::LtG { slot: 0, .. } | Formula::Fld { slot: 0, .. } => {
            ctx.literal_value(a).ok().flatten()
        }
        Formula::LtG { .. } | Formula::Fld { .. } => None,
        Formula::And(x, y) => match (value(ctx, x, model, fuel), value(ctx, y, model, fuel)) {
            (Some(false), _) | (_, Some(false)) => Some(false),
            (Some(true), Some(true)) => Some(true),
            _ => None,
        },
        Formula::Or(x, y) => match (value(ctx, x, model, fuel), value(ctx, y, model, fuel)) {
            (Some(true), _) | (_, Some(true)) => Some(true),
            (Some(false), Some(false)) => Some(false),
            _ => None,
        },
        Formula::All(x, b) => {
            for n in 0..fuel {
                if value(ctx, &b.subst(x, n), model, fuel) == Some(false) {
                    return Some(false);
                }
            }
            None
        }
        Formula::Ex(x, b) => {
            for n in 0..fuel {
                if value(ctx, &b.subst(x, n), model, fuel) == Some(true) {
                    return Some(true);
                }
            }
            None
        }
        Formula::All2(b) => {
            for i in 0..fuel {
                if value(ctx, &b.subst2(SetVar::X(i)), model, fuel) == Some(false) {
                    return Some(false);
                }
            }
            None
        }
        Formula::Ex2(b) => {
            for i in 0..fuel {
                if value(ctx, &b.subst2(SetVar::X(i)), model, fuel) == Some(true) {
                    return Some(true);
                }
            }
            None
        }
    }
}

impl fmt::Display for PathModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, map) in [("X", &self.x), ("E", &self.e)] {
            for (i, m) in map {
                let ins: Vec<String> = m.iter().filter(|e| *e.1).map(|e| e.0.to_string()).collect();
                let outs: Vec<String> = m
                    .iter()
                    .filter(|e| !*e.1)
                    .map(|e| e.0.to_string())
                    .collect();
                writeln!(
                    f,
                    "{name}{i} in {{{}}} out {{{}}}",
                    ins.join(","),
                    outs.join(",")
                )?;
            }
        }
        Ok(())
    }
}

/// `E_i(n)` literal with a numeral argument.
pub fn e_lit(pos: bool, i: u64, n: u64) -> Formula {
    Formula::set(pos, SetVar::E(i), ETerm::Num(n))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::CodedFamily;
    use crate::order::CodedOrder;

    #[test]
    fn kb_examples() {
        assert_eq!(kb_compare(&[0], &[]), Ordering::Less);
        assert_eq!(kb_compare(&[0, 1], &[0, 2]), Ordering::Less);
        assert_eq!(kb_compare(&[1], &[0, 5]), Ordering::Greater);
        assert_eq!(kb_compare(&[3, 1], &[3, 1]), Ordering::Equal);
    }

    #[test]
    fn root_only_at_depth_one() {
        let ctx = Ctx::new(CodedFamily::new());
        let t = build_search_tree(&ctx, &SearchConfig::new(1, 2)).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(t.root().status, Status::Open);
        assert!(t.root().seq.is_empty());
    }

    #[test]
    fn small_tree_is_locally_correct() {
        let ctx = Ctx::new(CodedFamily::new().with_order(0, CodedOrder::chain("one", 1)));
        let t = build_search_tree(&ctx, &SearchConfig::new(6, 2)).unwrap();
        assert!(t.local_violations().unwrap().is_empty());
        assert_eq!(t.root().rule, Some(Rule::W(0)));
        assert_eq!(t.root().children, vec![0, 1, 2]);
    }

    #[test]
    fn addresses_round_trip() {
        for a in [vec![], vec![0], vec![3, 1, 4]] {
            assert_eq!(parse_addr(&show_addr(&a)).unwrap(), a);
        }
    }
}
