//! Infinitary derivations as address-indexed node data, their finite
//! truncations (certificates) and the local checker.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::calculus::{CodedFamily, Ctx, Rule};
use crate::catalog::resolve_system;
use crate::error::{Error, Result};
use crate::formula::{parse_sequent, show_sequent, Formula, Sequent};
use crate::hierarchy::{recipe_of, Recipe};
use crate::notation::{Comparison, NotationSystem};
use crate::order::{parse_order_file, CodedOrder};
use crate::search::{parse_addr, show_addr, Addr};
use crate::term::Term;

/// `π(a) = (Seq, Rule, Mfml, ord)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DNode {
    pub seq: Sequent,
    pub rule: Rule,
    pub mfml: Option<Formula>,
    pub ord: Term,
}

/// A possibly infinite derivation, queried one address at a time.
pub trait Derivation {
    fn name(&self) -> String;
    fn ctx(&self) -> &Ctx;
    /// The system the `ord` annotations live in.
    fn bound(&self) -> &NotationSystem;
    /// `None` when `a` is not a node (`π(a) = *`).
    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>>;
}

pub fn root_node(d: &dyn Derivation) -> Result<DNode> {
    d.node_at(&[])?.ok_or_else(|| Error::Extraction {
        addr: ".".into(),
        msg: "derivation has no root".into(),
    })
}

pub(crate) fn child(a: &[u64], i: u64) -> Addr {
    let mut c = a.to_vec();
    c.push(i);
    c
}

/// Premises probed at a node: all of a finite rule, the first `width`
/// of an ω-rule.
pub(crate) fn probe_count(ctx: &Ctx, rule: &Rule, width: u64) -> u64 {
    ctx.arity(rule).unwrap_or(width)
}

/// Checks every node above `depth`: the rule applies, children are
/// exactly its premises, and ords descend (strictly, except at `Rep`,
/// which only may not increase). An empty sequent is only allowed below
/// `(W)` or a cut. The report is empty iff everything passes.
pub fn local_check(d: &dyn Derivation, depth: usize, width: u64) -> Vec<String> {
    let mut out = Vec::new();
    let ctx = d.ctx();
    let bound = d.bound();
    let root = match d.node_at(&[]) {
        Ok(Some(r)) => r,
        Ok(None) => return vec![". : no root".into()],
        Err(e) => return vec![format!(". : {e}")],
    };
    let mut queue = VecDeque::from([(Vec::<u64>::new(), root)]);
    while let Some((a, node)) = queue.pop_front() {
        if a.len() >= depth {
            continue;
        }
        let at = show_addr(&a);
        if node.seq.is_empty() && !(node.rule.is_w() || matches!(node.rule, Rule::Cut(_))) {
            out.push(format!("{at}: empty sequent derived by {}", node.rule));
        }
        if !bound.belongs(&node.ord) {
            out.push(format!(
                "{at}: ord {} is not a term of {}",
                node.ord,
                bound.name()
            ));
            continue;
        }
        if node.rule == Rule::Axiom {
            if !ctx.is_axiom(&node.seq) {
                out.push(format!("{at}: {} is not an axiom", show_sequent(&node.seq)));
            }
            continue;
        }
        if a.len() + 1 >= depth {
            continue;
        }
        for i in 0..probe_count(ctx, &node.rule, width) {
            let want = match ctx.premise(&node.seq, &node.rule, node.mfml.as_ref(), i) {
                Ok(w) => w,
                Err(e) => {
                    out.push(format!("{at}: {e}"));
                    break;
                }
            };
            let c = child(&a, i);
            let got = match d.node_at(&c) {
                Ok(g) => g,
                Err(e) => {
                    out.push(format!("{}: {e}", show_addr(&c)));
                    continue;
                }
            };
            match (want, got) {
                (None, None) => {}
                (Some(_), None) => out.push(format!("{at}: premise {i} missing")),
                (None, Some(_)) => out.push(format!("{at}: child {i} is not a premise")),
                (Some(s), Some(cn)) => {
                    if s != cn.seq {
                        out.push(format!(
                            "{at}: child {i} has {} but {} needs {}",
                            show_sequent(&cn.seq),
                            node.rule,
                            show_sequent(&s)
                        ));
                    }
                    match bound.compare(&cn.ord, &node.ord) {
                        Ok(Comparison::Less) => {}
                        Ok(Comparison::Equal) if node.rule == Rule::Rep => {}
                        Ok(_) => out.push(format!(
                            "{at}: ord {} of child {i} does not descend from {}",
                            bound.show(&cn.ord),
                            bound.show(&node.ord)
                        )),
                        Err(e) => out.push(format!("{}: {e}", show_addr(&c))),
                    }
                    queue.push_back((c, cn));
                }
            }
        }
    }
    out
}

/// A finite truncation: listed nodes plus explicitly probed absences.
#[derive(Debug, Clone)]
pub struct Certificate {
    pub name: String,
    pub ctx: Ctx,
    pub bound: NotationSystem,
    pub nodes: BTreeMap<Addr, DNode>,
    pub absent: BTreeSet<Addr>,
}

impl Derivation for Certificate {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn ctx(&self) -> &Ctx {
        &self.ctx
    }

    fn bound(&self) -> &NotationSystem {
        &self.bound
    }

    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>> {
        Ok(self.nodes.get(a).cloned())
    }
}

impl Certificate {
    /// Nodes above `depth`, with ω-rules probed to `width`.
    pub fn truncate(d: &dyn Derivation, depth: usize, width: u64) -> Result<Certificate> {
        let mut nodes = BTreeMap::new();
        let mut absent = BTreeSet::new();
        let mut queue = VecDeque::from([(Vec::new(), root_node(d)?)]);
        while let Some((a, node)) = queue.pop_front() {
            if a.len() >= depth {
                continue;
            }
            if node.rule != Rule::Axiom && a.len() + 1 < depth {
                for i in 0..probe_count(d.ctx(), &node.rule, width) {
                    let c = child(&a, i);
                    match d.node_at(&c)? {
                        Some(n) => queue.push_back((c, n)),
                        None => {
                            absent.insert(c);
                        }
                    }
                }
            }
            nodes.insert(a, node);
        }
        Ok(Certificate {
            name: d.name(),
            ctx: d.ctx().clone(),
            bound: d.bound().clone(),
            nodes,
            absent,
        })
    }

    /// The fragment rooted at `a`, re-addressed from the root.
    pub fn subtree(&self, a: &[u64]) -> Certificate {
        let rebase = |m: &BTreeSet<Addr>| -> BTreeSet<Addr> {
            m.iter()
                .filter_map(|x| x.strip_prefix(a).map(<[u64]>::to_vec))
                .collect()
        };
        Certificate {
            name: format!("{}@{}", self.name, show_addr(a)),
            ctx: self.ctx.clone(),
            bound: self.bound.clone(),
            nodes: self
                .nodes
                .iter()
                .filter_map(|(x, n)| x.strip_prefix(a).map(|r| (r.to_vec(), n.clone())))
                .collect(),
            absent: rebase(&self.absent),
        }
    }

    pub fn root(&self) -> Result<&DNode> {
        self.nodes
            .get(&Vec::new())
            .ok_or_else(|| Error::Extraction {
                addr: ".".into(),
                msg: "certificate has no root".into(),
            })
    }

    pub fn parse(src: &str) -> Result<Certificate> {
        let lines: Vec<&str> = src.lines().collect();
        let head = lines
            .iter()
            .position(|l| l.starts_with("deriv "))
            .ok_or_else(|| perr(0, "missing `deriv` header"))?;
        let mut g = Recipe::Exponential;
        let mut prelude = String::new();
        let mut order_text = String::new();
        for l in &lines[..head] {
            let t = l.trim();
            if let Some(r) = t.strip_prefix("g ") {
                g = Recipe::parse(r.trim())?;
                continue;
            }
            prelude.push_str(l);
            prelude.push('\n');
            if !(t.starts_with("slot ") || t.starts_with("bound ")) {
                order_text.push_str(l);
                order_text.push('\n');
            }
        }
        let q = CodedFamily::parse(&prelude)?;
        let orders = parse_order_file(&order_text)?;
        let header = lines[head];
        let (before, root_ord) = header
            .split_once(" root-ord=")
            .ok_or_else(|| perr(head, "missing root-ord="))?;
        let mut words = before.split_whitespace().skip(1);
        let name = words
            .next()
            .ok_or_else(|| perr(head, "missing name"))?
            .to_string();
        let sys = words
            .next()
            .and_then(|w| w.strip_prefix("bound-system="))
            .ok_or_else(|| perr(head, "missing bound-system="))?;
        let bound = resolve_system(sys, &orders)?;
        let root_ord = Term::parse(root_ord.trim())?;
        let mut nodes = BTreeMap::new();
        let mut absent = BTreeSet::new();
        for (k, l) in lines.iter().enumerate().skip(head + 1) {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            if let Some(a) = l.strip_prefix("* ") {
                absent.insert(parse_addr(a)?);
                continue;
            }
            let parts: Vec<&str> = l.splitn(5, " | ").collect();
            let [addr, rule, ord, mfml, seq] = parts.as_slice() else {
                return Err(perr(k, "expected `addr | rule | ord | mfml | seq`"));
            };
            let node = DNode {
                seq: parse_sequent(seq)?,
                rule: Rule::parse(rule.trim())?,
                mfml: match mfml.trim() {
                    "-" => None,
                    f => Some(Formula::parse(f)?),
                },
                ord: Term::parse(ord.trim())?,
            };
            nodes.insert(parse_addr(addr)?, node);
        }
        let cert = Certificate {
            name,
            ctx: Ctx::new(q).with_g(g),
            bound,
            nodes,
            absent,
        };
        if cert.root()?.ord != root_ord {
            return Err(Error::IllFormed(format!(
                "header root-ord {root_ord} differs from the root node's {}",
                cert.root()?.ord
            )));
        }
        Ok(cert)
    }
}

fn perr(line: usize, msg: &str) -> Error {
    Error::Parse {
        pos: line + 1,
        msg: msg.to_string(),
    }
}

/// Order blocks defining `o` under `name`, summands first.
fn order_blocks(o: &CodedOrder, name: &str) -> String {
    match o.summands() {
        Some((l, r)) => {
            let (ln, rn) = (format!("{name}_l"), format!("{name}_r"));
            let mut s = order_blocks(l, &ln);
            s.push_str(&order_blocks(r, &rn));
            let renamed = CodedOrder::sum_orders(
                &l.clone().with_name(ln.clone()),
                &r.clone().with_name(rn.clone()),
            );
            s.push_str(&renamed.with_name(name).to_file_string());
            s
        }
        None => o.clone().with_name(name).to_file_string(),
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ctx.q.to_file_string())?;
        writeln!(f, "g {}", self.ctx.g)?;
        f.write_str(&order_blocks(self.bound.base(), "bound"))?;
        let root = self.nodes.get(&Vec::new());
        writeln!(
            f,
            "deriv {} bound-system={}@bound root-ord={}",
            self.name,
            recipe_of(&self.bound),
            root.map_or("0".into(), |r| self.bound.show(&r.ord))
        )?;
        for (a, n) in &self.nodes {
            writeln!(
                f,
                "{} | {} | {} | {} | {}",
                show_addr(a),
                n.rule,
                self.bound.show(&n.ord),
                n.mfml.as_ref().map_or("-".into(), |m| m.to_string()),
                show_sequent(&n.seq)
            )?;
        }
        for a in &self.absent {
            writeln!(f, "* {}", show_addr(a))?;
        }
        Ok(())
    }
}
