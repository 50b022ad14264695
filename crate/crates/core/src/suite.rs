//! Named acceptance suites. Each runs with fixed seeds and budgets and
//! returns a report of labelled checks with their violations.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::calculus::{formula_ti_all, CodedFamily, Ctx, Rule};
use crate::cut::{cut_eliminate_truncated, cut_on, prove_true, tower2, Tree};
use crate::derivation::{local_check, Certificate, DNode, Derivation};
use crate::error::{Error, Result};
use crate::fixtures;
use crate::formula::{ETerm, Formula, Sequent};
use crate::hierarchy::{enumerate_with, iterate_g, make_derivative, make_exponential, make_veblen};
use crate::laws;
use crate::lifting::{check_indiscernibility, check_lift, BaseMap};
use crate::notation::NotationSystem;
use crate::order::CodedOrder;
use crate::samples::toy_w;
use crate::search::{
    build_search_tree, extract_path_model, kb_compare, Addr, SearchConfig, Status,
};
use crate::takeuti::{takeuti_extract, Embedding, PrgLadder};
use crate::term::{BaseElt, Term};
use crate::ti::{build_ti_derivation, ti_bound, tier1, Dilation, TiDerivation};
use crate::welim::{cut_bound, holds, w_eliminate, GPrime};

pub const NAMES: &[&str] = &[
    "order-laws",
    "lex-oracle",
    "additive-axioms",
    "fixed-points",
    "lifting",
    "indiscernibility",
    "kb-order",
    "takeuti",
    "ti-builder",
    "w-elimination",
    "search",
    "empty-sequent",
];

#[derive(Debug, Clone)]
pub struct Check {
    pub label: String,
    pub violations: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Report {
    fn new(name: &str) -> Self {
        Report {
            name: name.to_string(),
            checks: Vec::new(),
        }
    }

    fn push(&mut self, label: impl Into<String>, violations: Vec<String>) {
        self.checks.push(Check {
            label: label.into(),
            violations,
        });
    }

    fn expect(&mut self, label: impl Into<String>, ok: bool, why: impl FnOnce() -> String) {
        let v = if ok { Vec::new() } else { vec![why()] };
        self.push(label, v);
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.violations.is_empty())
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            if c.violations.is_empty() {
                writeln!(f, "ok   {}", c.label)?;
            } else {
                writeln!(f, "FAIL {} ({} violations)", c.label, c.violations.len())?;
                for v in c.violations.iter().take(3) {
                    writeln!(f, "     {v}")?;
                }
            }
        }
        let verdict = if self.passed() { "pass" } else { "fail" };
        write!(f, "suite {}: {verdict}", self.name)
    }
}

pub fn run(name: &str) -> Result<Report> {
    let mut r = Report::new(name);
    match name {
        "order-laws" => order_laws(&mut r)?,
        "lex-oracle" => lex_oracle(&mut r)?,
        "additive-axioms" => additive_axioms(&mut r)?,
        "fixed-points" => fixed_points(&mut r)?,
        "lifting" => lifting(&mut r)?,
        "indiscernibility" => indiscernibility(&mut r)?,
        "kb-order" => kb_order(&mut r),
        "takeuti" => takeuti(&mut r)?,
        "ti-builder" => ti_builder(&mut r)?,
        "w-elimination" => w_elimination(&mut r)?,
        "search" => search(&mut r)?,
        "empty-sequent" => empty_sequent(&mut r)?,
        _ => {
            return Err(Error::Unknown {
                kind: "suite",
                name: name.to_string(),
            })
        }
    }
    Ok(r)
}

fn elems(n: u64) -> Vec<u64> {
    (0..n).collect()
}

/// Up to isomorphism the linear orders of size n are the n-chain; a
/// permuted coding is added to exercise non-numeric orders.
fn base_orders() -> Vec<CodedOrder> {
    let mut out: Vec<CodedOrder> = (0..=4).map(|n| CodedOrder::chain("c", n)).collect();
    out.push(CodedOrder::from_sequence("p", &[3, 1, 0, 2]));
    out
}

fn order_laws(r: &mut Report) -> Result<()> {
    for o in base_orders() {
        let label = format!(
            "linear order, base {} size {}, terms <= 5",
            o.name(),
            o.sorted_field()?.len()
        );
        let field = o.sorted_field()?;
        let s = make_exponential(o);
        let terms = enumerate_with(&s, 5, &field)?;
        r.push(label, laws::linear_order(&s, &terms));
    }
    Ok(())
}

// Sums of constants read as descending rank sequences, compared
// lexicographically with proper extensions larger.
fn lex_key(t: &Term) -> Option<Vec<u64>> {
    let mut v = Vec::new();
    for p in t.components() {
        match p {
            Term::Const(BaseElt::Elt(n)) => v.push(*n),
            _ => return None,
        }
    }
    v.sort_unstable_by(|a, b| b.cmp(a));
    Some(v)
}

fn lex_oracle(r: &mut Report) -> Result<()> {
    for n in 1..=4 {
        let s = make_exponential(CodedOrder::chain("c", n));
        let terms: Vec<Term> = enumerate_with(&s, 5, &elems(n))?
            .into_iter()
            .filter(|x| lex_key(x).is_some())
            .collect();
        let mut bad = Vec::new();
        for a in &terms {
            for b in &terms {
                let want = lex_key(a).cmp(&lex_key(b));
                if Ordering::from(s.compare(a, b)?) != want {
                    bad.push(format!("{a} vs {b}"));
                }
            }
        }
        r.push(
            format!("sums of constants over {n}-chain ({} terms)", terms.len()),
            bad,
        );
    }
    Ok(())
}

fn additive_axioms(r: &mut Report) -> Result<()> {
    for n in 0..=3 {
        let s = make_exponential(CodedOrder::chain("c", n));
        let terms = enumerate_with(&s, 4, &elems(n))?;
        r.push(
            format!("additive axioms, {n}-chain, size <= 4"),
            laws::additive_axioms(&s, &terms)?,
        );
    }
    let d = make_derivative(&make_exponential(CodedOrder::chain("c", 1)));
    let terms = enumerate_with(&d, 4, &elems(1))?;
    r.push(
        "additive axioms, derivative layer, size <= 4",
        laws::additive_axioms(&d, &terms)?,
    );
    Ok(())
}

fn consts(n: u64) -> Vec<BaseElt> {
    std::iter::once(BaseElt::Bottom)
        .chain((0..n).map(BaseElt::Elt))
        .collect()
}

fn fixed_points(r: &mut Report) -> Result<()> {
    let e = make_exponential(CodedOrder::chain("c", 3));
    let d = make_derivative(&e);
    let idx = make_exponential(CodedOrder::empty("e"));
    let v = make_veblen(&e, &idx, &Term::parse("(+ (w 0) (w 0))")?)?;
    let indices = enumerate_with(&idx, 5, &[])?
        .into_iter()
        .filter(|i| {
            v.gapp_index()
                .is_some_and(|g| idx.lt(i, g).unwrap_or(false))
        })
        .collect::<Vec<_>>();
    r.push(
        "ω^K and g(K) collapse in the derivative",
        laws::fixed_points(&d, &consts(3), &[])?,
    );
    r.push(
        "φ_b(K) collapses in the Veblen layer",
        laws::fixed_points(&v, &consts(3), &indices)?,
    );
    let mut bad = Vec::new();
    for c in consts(3) {
        let k = Term::Const(c);
        for a in &indices {
            for b in &indices {
                let t = Term::phi(b.clone(), Term::phi(a.clone(), k.clone()));
                if v.normalize(&t)? != k {
                    bad.push(v.show(&t));
                }
            }
        }
    }
    r.push("φ_b(φ_a(K)) collapses in the Veblen layer", bad);
    r.push(
        "g^n(K[c]+1) < K[d], n <= 5, derivative",
        laws::cofinality(&d, &elems(3), 5)?,
    );
    r.push(
        "g^n(K[c]+1) < K[d], n <= 5, Veblen",
        laws::cofinality(&v, &elems(3), 5)?,
    );
    let mut bad = Vec::new();
    for c in consts(3) {
        let k = Term::Const(c);
        for t in enumerate_with(&d, 5, &elems(3))? {
            if t == k || !d.lt(&t, &k)? {
                continue;
            }
            let gt = d.normalize(&Term::g(k.clone()))?;
            if gt != k {
                bad.push(format!("g({k}) = {gt}"));
            }
            if !d.lt(&iterate_g(&d, 1, &t)?, &k)? {
                bad.push(format!("g({t}) escapes {k}"));
            }
        }
    }
    r.push("g stays below each constant on enumerated terms", bad);
    Ok(())
}

/// Strictly increasing maps from an n-chain into an m-chain.
fn monotone_maps(n: u64, m: u64) -> Vec<BaseMap> {
    fn go(i: u64, n: u64, m: u64, from: u64, acc: &mut Vec<(u64, u64)>, out: &mut Vec<BaseMap>) {
        if i == n {
            out.push(BaseMap::new(acc.clone()));
            return;
        }
        for v in from..m {
            acc.push((i, v));
            go(i + 1, n, m, v + 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, m, 0, &mut Vec::new(), &mut out);
    out
}

fn lifting(r: &mut Report) -> Result<()> {
    for n in 1..=3 {
        for m in n..=3 {
            let src = make_exponential(CodedOrder::chain("a", n));
            let dst = make_exponential(CodedOrder::chain("b", m));
            let dsrc = make_derivative(&src);
            let ddst = make_derivative(&dst);
            let terms = enumerate_with(&src, 4, &elems(n))?;
            let dterms = enumerate_with(&dsrc, 4, &elems(n))?;
            let mut bad = Vec::new();
            for f in monotone_maps(n, m) {
                f.check_order_preserving(src.base(), dst.base())?;
                bad.extend(check_lift(&f, &src, &dst, &terms)?);
                bad.extend(check_lift(&f, &dsrc, &ddst, &dterms)?);
            }
            r.push(format!("lifts {n}-chain into {m}-chain, size <= 4"), bad);
        }
    }
    Ok(())
}

fn indiscernibility(r: &mut Report) -> Result<()> {
    let e = make_exponential(CodedOrder::chain("c5", 5));
    let d = make_derivative(&e);
    let idx = make_exponential(CodedOrder::empty("e"));
    let v = make_veblen(&e, &idx, &Term::parse("(+ (w 0) (w 0))")?)?;
    for s in [&e, &d, &v] {
        for width in 1..=2 {
            let label = format!("{} width {width}, size <= 4, base 5", s.name());
            r.push(label, check_indiscernibility(s, width, 4, 5)?);
        }
    }
    Ok(())
}

/// `a` below `b` iff `a` properly extends `b` or is smaller at the first
/// place they differ.
fn kb_less(a: &[u64], b: &[u64]) -> bool {
    if a.len() > b.len() && a[..b.len()] == *b {
        return true;
    }
    let n = a.len().min(b.len());
    (0..n).find(|&i| a[i] != b[i]).is_some_and(|i| a[i] < b[i])
}

fn random_tree(rng: &mut ChaCha8Rng, max_nodes: usize) -> Vec<Addr> {
    let mut nodes: BTreeSet<Addr> = [Vec::new()].into();
    let target = rng.gen_range(1..=max_nodes);
    while nodes.len() < target {
        let v: Vec<&Addr> = nodes.iter().collect();
        let mut child = v[rng.gen_range(0..v.len())].clone();
        child.push(rng.gen_range(0..4));
        nodes.insert(child);
    }
    nodes.into_iter().collect()
}

fn kb_order(r: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut bad = Vec::new();
    for _ in 0..50 {
        let t = random_tree(&mut rng, 30);
        for a in &t {
            for b in &t {
                let want = if a == b {
                    Ordering::Equal
                } else if kb_less(a, b) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                if kb_compare(a, b) != want || (a != b && kb_less(a, b) == kb_less(b, a)) {
                    bad.push(format!("{a:?} vs {b:?}"));
                }
            }
        }
    }
    r.push(
        "50 random trees of <= 30 nodes against first-difference",
        bad,
    );
}

fn family(seq: &[u64]) -> Ctx {
    Ctx::new(CodedFamily::new().with_order(0, CodedOrder::from_sequence("p", seq)))
}

fn ladder(seq: &[u64], rep: bool) -> Result<PrgLadder> {
    PrgLadder::new(
        family(seq),
        0,
        make_exponential(CodedOrder::empty("e")),
        rep,
    )
}

/// A ladder with every ord replaced by `ω^ord`.
struct Lifted(PrgLadder);

impl Derivation for Lifted {
    fn name(&self) -> String {
        "lifted".into()
    }
    fn ctx(&self) -> &Ctx {
        self.0.ctx()
    }
    fn bound(&self) -> &NotationSystem {
        self.0.bound()
    }
    fn node_at(&self, a: &[u64]) -> Result<Option<DNode>> {
        match self.0.node_at(a)? {
            Some(mut n) => {
                n.ord = self.0.bound().omega_pow(&n.ord)?;
                Ok(Some(n))
            }
            None => Ok(None),
        }
    }
}

fn telescoping(e: &Embedding) -> Result<Vec<String>> {
    let mut bad = Vec::new();
    for w in e.prec.sorted_field()?.windows(2) {
        let raw = Term::Sum(vec![e.graph[&w[0]].clone(), Term::w(e.beta[&w[1]].clone())]);
        if e.bound.normalize(&raw)? != e.graph[&w[1]] {
            bad.push(format!("f({}) + ω^β({}) != f({})", w[0], w[1], w[1]));
        }
    }
    Ok(bad)
}

fn takeuti(r: &mut Report) -> Result<()> {
    let cases: Vec<(&str, Box<dyn Derivation>, Term)> = vec![
        ("1-chain", Box::new(ladder(&[0], false)?), Term::nat(2)),
        ("2-chain", Box::new(ladder(&[0, 1], false)?), Term::nat(3)),
        (
            "3-chain behind rep",
            Box::new(ladder(&[0, 1, 2], true)?),
            Term::nat(4),
        ),
        (
            "twisted 3-order",
            Box::new(ladder(&[0, 2, 1], false)?),
            Term::nat(4),
        ),
        (
            "lifted 3-chain",
            Box::new(Lifted(ladder(&[0, 1, 2], false)?)),
            Term::w(Term::nat(4)),
        ),
    ];
    for (label, d, root) in cases {
        let e = takeuti_extract(d.as_ref(), 0, &root, 16)?;
        let mut bad: Vec<String> = e
            .violations()?
            .into_iter()
            .map(|(a, b)| format!("{a} ≺ {b} but f({a}) >= f({b})"))
            .collect();
        let cap = e.bound.omega_pow(&root)?;
        for (n, v) in &e.graph {
            if !e.bound.lt(v, &cap)? {
                bad.push(format!("f({n}) = {v} not below ω^root"));
            }
        }
        bad.extend(telescoping(&e)?);
        r.push(format!("extraction on {label}"), bad);
    }
    Ok(())
}

fn ti_for(seq: &[u64]) -> Result<TiDerivation> {
    let ctx = family(seq);
    let lad = ladder(seq, false)?;
    let f = takeuti_extract(&lad, 0, &lad.root_ord(), 16)?;
    let bound = ti_bound(&ctx, None, &CodedOrder::chain("lam", 1))?;
    let dil = Dilation::new(ctx.system(0, None)?, bound.clone(), &f)?;
    let beta0 = bound.normalize(&tier1(0)?)?;
    build_ti_derivation(&ctx, 0, None, dil, &beta0, Sequent::new())
}

/// `ω+1+4·F+3` as one raw sum, with `4·F` spelled out on CNF components.
fn z_ord(b: &NotationSystem, f: &Term) -> Result<Term> {
    let one = b.normalize(&Term::one())?;
    let comps = f.components().to_vec();
    let fin = comps.iter().filter(|c| **c == one).count();
    let mut raw = vec![Term::omega(), Term::one()];
    raw.extend(comps.into_iter().filter(|c| *c != one));
    raw.extend(std::iter::repeat_n(Term::one(), 4 * fin + 3));
    b.normalize(&Term::Sum(raw))
}

fn ti_builder(r: &mut Report) -> Result<()> {
    for seq in [&[][..], &[0], &[0, 1], &[0, 2, 1]] {
        let d = ti_for(seq)?;
        let b = d.bound().clone();
        r.push(
            format!("local check 8/8, order {seq:?}"),
            local_check(&d, 8, 8),
        );
        let cert = Certificate::truncate(&d, 8, 8)?;
        let mut bad = Vec::new();
        for (a, n) in &cert.nodes {
            if let Rule::Exists(m) = n.rule {
                let want = z_ord(&b, &d.dil.at_code(m)?)?;
                if n.ord != want {
                    bad.push(format!("{a:?}: {} != {}", b.show(&n.ord), b.show(&want)));
                }
            }
        }
        r.push(format!("Z(m) ords, order {seq:?}"), bad);
        let root = cert.root()?.ord.clone();
        let want = b.normalize(&Term::Sum(vec![d.top.clone(), Term::nat(3)]))?;
        r.expect(format!("root ord, order {seq:?}"), root == want, || {
            b.show(&root)
        });
    }
    Ok(())
}

fn w_elimination(r: &mut Report) -> Result<()> {
    for cyclic in [false, true] {
        let d = toy_w(cyclic, 4)?;
        let out = w_eliminate(&d, 6, 4)?;
        let gp = GPrime::for_input(&d.ctx, &d.bound)?;
        let tag = if cyclic {
            "cyclic toy"
        } else {
            "well-ordered toy"
        };
        let ws = out.nodes.values().filter(|n| n.rule.is_w()).count();
        r.expect(format!("{tag}: no (W) nodes to depth 6"), ws == 0, || {
            format!("{ws} left")
        });
        let want = gp.apply(&d.root()?.ord)?;
        let got = out.root()?.ord.clone();
        r.expect(format!("{tag}: root ord is g′(b)"), got == want, || {
            gp.bound.show(&got)
        });
        r.push(format!("{tag}: local check 6/4"), local_check(&out, 6, 4));
    }
    let lam = CodedOrder::chain("lam", 3);
    let gp = GPrime::for_input(&family(&[0, 1]), &make_exponential(lam))?;
    let k = formula_ti_all(0, None).complexity();
    let mut bad = Vec::new();
    for b in 0..3u64 {
        for c in 0..b {
            for d in 0..b {
                let beta0 = gp.apply(&Term::c(c))?;
                let v = cut_bound(k, &beta0, &Term::c(d), &gp)?;
                if !gp.bound.lt(&v, &gp.apply(&Term::c(b))?)? {
                    bad.push(format!("b={b} c={c} d={d}"));
                }
            }
        }
    }
    r.push(format!("closing inequality over a 3-chain, k = {k}"), bad);
    Ok(())
}

fn random_family(rng: &mut ChaCha8Rng) -> CodedFamily {
    let n = rng.gen_range(0..4u64);
    let o = match rng.gen_range(0..3) {
        0 => CodedOrder::chain("c", n),
        1 => {
            let mut seq: Vec<u64> = (0..n).collect();
            for i in (1..seq.len()).rev() {
                seq.swap(i, rng.gen_range(0..=i));
            }
            CodedOrder::from_sequence("p", &seq)
        }
        _ => {
            let pairs: Vec<(u64, u64)> = (0..rng.gen_range(0..4))
                .map(|_| (rng.gen_range(0..3), rng.gen_range(0..3)))
                .collect();
            CodedOrder::explicit("r", 0..n, pairs)
        }
    };
    CodedFamily::new().with_order(0, o)
}

fn search(r: &mut Report) -> Result<()> {
    for name in fixtures::names() {
        let ctx = Ctx::new(fixtures::family(name)?);
        let cfg = SearchConfig::new(12, 2);
        let a = build_search_tree(&ctx, &cfg)?;
        let b = build_search_tree(&ctx, &cfg)?;
        let same = a.certificate() == b.certificate() && a.sidecar() == b.sidecar();
        r.expect(format!("{name}: identical certificates"), same, || {
            "differ".into()
        });
        r.push(
            format!("{name}: fairness at depth 12"),
            a.fairness_violations(),
        );
    }
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut bad = Vec::new();
    for round in 0..100 {
        let q = random_family(&mut rng);
        let cfg = SearchConfig::new(rng.gen_range(3..9), rng.gen_range(1..3));
        let t = build_search_tree(&Ctx::new(q), &cfg)?;
        bad.extend(
            t.local_violations()?
                .into_iter()
                .map(|v| format!("round {round}: {v}")),
        );
        let mut stack = vec![(Vec::new(), vec![Vec::new()])];
        let mut paths = 0;
        while let Some((a, path)) = stack.pop() {
            let n = t.get(&a)?;
            if n.status == Status::Axiom || paths >= 20 {
                continue;
            }
            if n.children.is_empty() {
                paths += 1;
                if let Err(e) = extract_path_model(&t, &path) {
                    bad.push(format!("round {round}: {e}"));
                }
            }
            for &i in n.children.iter().rev() {
                let mut c = a.clone();
                c.push(i);
                let mut p = path.clone();
                p.push(c.clone());
                stack.push((c, p));
            }
        }
    }
    r.push("no forcing conflicts on 100 random fixtures", bad);
    Ok(())
}

fn random_formula(rng: &mut ChaCha8Rng, budget: usize) -> Formula {
    if budget == 0 || rng.gen_bool(0.3) {
        let (a, b) = (
            ETerm::Num(rng.gen_range(0..3)),
            ETerm::Num(rng.gen_range(0..3)),
        );
        return if rng.gen() {
            Formula::Eq(a, b)
        } else {
            Formula::Neq(a, b)
        };
    }
    let split = rng.gen_range(0..budget);
    let l = random_formula(rng, split);
    let r = random_formula(rng, budget - 1 - split);
    if rng.gen() {
        Formula::and(l, r)
    } else {
        Formula::or(l, r)
    }
}

fn with(s: &Sequent, f: &Formula) -> Sequent {
    let mut t = s.clone();
    t.insert(f.clone());
    t
}

fn prove(ctx: &Ctx, s: &Sequent, a: &Formula, t: &Formula) -> Result<Tree> {
    let main = if holds(ctx, a, 4)? { a } else { t };
    prove_true(ctx, &with(s, a), main)
}

/// A cut of rank `rank` over a context holding one true formula, possibly
/// with a second cut nested in the left premise.
fn random_fragment(rng: &mut ChaCha8Rng, ctx: &Ctx, rank: usize) -> Result<(Tree, Sequent)> {
    let t = loop {
        let f = random_formula(rng, 3);
        if holds(ctx, &f, 4)? {
            break f;
        }
    };
    let s = Sequent::from([t.clone()]);
    let a = random_formula(rng, rank);
    let mut d0 = prove(ctx, &s, &a, &t)?;
    if rng.gen_bool(0.5) {
        let inner = random_formula(rng, rank);
        let sa = with(&s, &a);
        d0 = cut_on(
            &sa,
            &inner,
            prove(ctx, &sa, &inner, &t)?,
            prove(ctx, &sa, &inner.dual(), &t)?,
        );
    }
    let d1 = prove(ctx, &s, &a.dual(), &t)?;
    Ok((cut_on(&s, &a, d0, d1), s))
}

fn mutate(rng: &mut ChaCha8Rng, base: &Certificate) -> Certificate {
    let mut c = base.clone();
    let rules = [
        Rule::Axiom,
        Rule::Rep,
        Rule::Or(0),
        Rule::And,
        Rule::Exists(1),
        Rule::ForallOmega,
        Rule::Prg(0),
        Rule::Forall2(0),
    ];
    if let Some(root) = c.nodes.get_mut(&Vec::new()) {
        root.seq.clear();
        root.rule = rules[rng.gen_range(0..rules.len())].clone();
        if rng.gen() {
            root.mfml = None;
        }
    }
    for n in c.nodes.values_mut() {
        if n.rule.is_w() || matches!(n.rule, Rule::Cut(_)) {
            n.rule = Rule::Rep;
        }
        if rng.gen_bool(0.3) {
            let keep: Sequent = n
                .seq
                .iter()
                .filter(|_| rng.gen_bool(0.5))
                .cloned()
                .collect();
            n.seq = keep;
        }
        if rng.gen_bool(0.2) {
            n.ord = Term::nat(rng.gen_range(0..6));
        }
    }
    c
}

fn empty_sequent(r: &mut Report) -> Result<()> {
    let ctx = Ctx::new(CodedFamily::new());
    let bound = make_exponential(CodedOrder::empty("e"));
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let mut bases = vec![
        Certificate::truncate(&ti_for(&[0, 1])?, 5, 3)?,
        toy_w(false, 3)?,
        toy_w(true, 3)?,
    ];
    for _ in 0..3 {
        let (tree, _) = random_fragment(&mut rng, &ctx, 2)?;
        bases.push(tree.to_certificate("frag", &ctx, &bound));
    }
    let mut bad = Vec::new();
    for k in 0..100 {
        let c = Certificate::parse(&mutate(&mut rng, &bases[k % bases.len()]).to_string())?;
        if local_check(&c, 8, 3).is_empty() {
            bad.push(format!("mutant {k} accepted"));
        }
    }
    r.push(
        "100 mutated (W)-free cut-free certificates of ∅ rejected",
        bad,
    );

    let mut bad = Vec::new();
    for round in 0..20 {
        let rank = 1 + round % 3;
        let (tree, s) = random_fragment(&mut rng, &ctx, rank)?;
        let out = cut_eliminate_truncated(&tree.to_certificate("frag", &ctx, &bound), rank)?;
        let t = Tree::from_certificate(&out)?;
        if t.has_cut() || t.seq != s || t.depth() > tower2(rank, tree.depth()) {
            bad.push(format!(
                "round {round}: depth {} from {}",
                t.depth(),
                tree.depth()
            ));
        }
        bad.extend(
            local_check(&out, 64, 2)
                .into_iter()
                .map(|v| format!("round {round}: {v}")),
        );
    }
    r.push("truncated cut elimination on 20 fragments", bad);
    Ok(())
}
