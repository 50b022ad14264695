use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use ordforge::calculus::{formula_lo, CodedFamily, Ctx, Rule};
use ordforge::fixtures;
use ordforge::formula::{ETerm, Formula, SetVar};
use ordforge::order::SetSpec;
use ordforge::search::{
    build_search_tree, extract_path_model, falsify_on_path, kb_compare, kb_sort, Addr, PathModel,
    SearchConfig, SearchNode, SearchTree, Status,
};
use ordforge::CodedOrder;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Definition straight from the textbook: `a` below `b` iff `a` properly
/// extends `b` or is smaller at the first place they differ.
fn kb_less_oracle(a: &[u64], b: &[u64]) -> bool {
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
        let parent = v[rng.gen_range(0..v.len())].clone();
        let mut child = parent;
        child.push(rng.gen_range(0..4));
        nodes.insert(child);
    }
    nodes.into_iter().collect()
}

#[test]
fn kb_matches_brute_force_on_random_trees() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..50 {
        let t = random_tree(&mut rng, 30);
        for a in &t {
            for b in &t {
                let want = if a == b {
                    Ordering::Equal
                } else if kb_less_oracle(a, b) {
                    Ordering::Less
                } else {
                    Ordering::Greater
                };
                assert_eq!(kb_compare(a, b), want, "{a:?} vs {b:?}");
                assert_eq!(kb_less_oracle(a, b), !kb_less_oracle(b, a) && a != b);
            }
        }
        let sorted = kb_sort(t.clone());
        assert_eq!(sorted.last(), Some(&Vec::new()), "root is the maximum");
        for w in sorted.windows(2) {
            assert!(kb_less_oracle(&w[0], &w[1]));
        }
        for i in 0..sorted.len() {
            for j in i + 1..sorted.len() {
                assert!(kb_less_oracle(&sorted[i], &sorted[j]));
            }
        }
    }
}

fn ctx(name: &str) -> Ctx {
    Ctx::new(fixtures::family(name).unwrap())
}

#[test]
fn identical_inputs_give_identical_certificates() {
    for name in fixtures::names() {
        let cfg = SearchConfig::new(8, 2);
        let a = build_search_tree(&ctx(name), &cfg).unwrap();
        let b = build_search_tree(&ctx(name), &cfg).unwrap();
        assert_eq!(a.certificate(), b.certificate(), "{name}");
        assert_eq!(a.sidecar(), b.sidecar(), "{name}");
    }
}

#[test]
fn one_point_order_is_locally_correct() {
    let t = build_search_tree(&ctx("one"), &SearchConfig::new(6, 2)).unwrap();
    assert!(t.local_violations().unwrap().is_empty());
    for (a, n) in &t.nodes {
        match n.status {
            Status::Expanded | Status::BudgetCut => {
                assert!(
                    !n.children.is_empty() || n.rule == Some(Rule::Prg(0)),
                    "{a:?}"
                )
            }
            Status::Axiom | Status::Open => assert!(n.children.is_empty()),
        }
    }
}

#[test]
fn fixtures_are_fair_at_depth_twelve() {
    for name in fixtures::names() {
        let t = build_search_tree(&ctx(name), &SearchConfig::new(12, 2)).unwrap();
        assert!(t.local_violations().unwrap().is_empty(), "{name}");
        let starved = t.fairness_violations();
        assert!(
            starved.is_empty(),
            "{name}: {:?}",
            &starved[..starved.len().min(5)]
        );
    }
}

#[test]
fn cyclic_order_falsifies_lo_on_the_lo_branch() {
    let c = ctx("cycle2");
    let t = build_search_tree(&c, &SearchConfig::new(9, 2)).unwrap();
    let lo = formula_lo(0);
    assert!(t.get(&[0]).unwrap().seq.contains(&lo));
    // follow the LO premise to the frontier
    let mut a: Addr = vec![0];
    loop {
        let n = t.get(&a).unwrap();
        assert_ne!(n.status, Status::Axiom, "LO of a cycle cannot close");
        match n.children.first() {
            Some(&i) => a.push(i),
            None => break,
        }
    }
    let path: Vec<Addr> = (0..=a.len()).map(|k| a[..k].to_vec()).collect();
    let m = extract_path_model(&t, &path).unwrap();
    assert!(falsify_on_path(&c, &lo, &m, 3));
    // a genuine linear order is not refuted
    let c3 = ctx("chain3");
    assert!(!falsify_on_path(&c3, &lo, &PathModel::default(), 4));
}

#[test]
fn depth_one_is_root_only() {
    let t = build_search_tree(&ctx("chain2"), &SearchConfig::new(1, 1)).unwrap();
    assert_eq!(t.nodes.len(), 1);
    assert_eq!(t.root().status, Status::Open);
    assert!(t.find_open_path().is_some());
}

#[test]
fn open_path_reaches_the_frontier() {
    let t = build_search_tree(&ctx("empty"), &SearchConfig::new(6, 2)).unwrap();
    let p = t.find_open_path().expect("unprovable empty sequent");
    let last = t.get(p.last().unwrap()).unwrap();
    assert_eq!(last.status, Status::Open);
    for w in p.windows(2) {
        assert_eq!(w[1][..w[0].len()], w[0][..]);
        assert_eq!(w[1].len(), w[0].len() + 1);
    }
}

fn single_node(ctx: Ctx, fs: &[&str]) -> SearchTree {
    let node = SearchNode {
        seq: fs.iter().map(|s| Formula::parse(s).unwrap()).collect(),
        rule: None,
        principal: None,
        status: Status::Axiom,
        children: Vec::new(),
        queue: Vec::new(),
    };
    SearchTree {
        ctx,
        config: SearchConfig::new(1, 1),
        nodes: BTreeMap::from([(Vec::new(), node)]),
    }
}

#[test]
fn fully_closed_tree_has_no_open_path() {
    let t = single_node(ctx("one"), &["(= 0 0)"]);
    assert!(t.find_open_path().is_none());
}

#[test]
fn path_models_force_membership() {
    let c = Ctx::new(CodedFamily::new().with_order(0, CodedOrder::chain("c", 2)));
    let t = single_node(c.clone(), &["(nX 1 7)", "(X 1 3)", "(E 0 4)"]);
    let m = extract_path_model(&t, &[Vec::new()]).unwrap();
    assert_eq!(m.member(&c, 1, 7), Some(true));
    assert_eq!(m.member(&c, 1, 3), Some(false));
    assert_eq!(m.member(&c, 1, 5), None);
    assert_eq!(m.e_member(0, 4), Some(false));
    // slot 0 is (Q)_0 itself
    let one = ordforge::pair(0, 1).unwrap();
    assert_eq!(m.member(&c, 0, one), Some(true));

    let bare = single_node(c.clone(), &["(= 0 1)"]);
    let m = extract_path_model(&bare, &[Vec::new()]).unwrap();
    assert!(m.x.is_empty() && m.e.is_empty());

    let clash = single_node(c.clone(), &["(nX 1 7)", "(X 1 7)"]);
    assert!(extract_path_model(&clash, &[Vec::new()]).is_err());
    // X_0 literals disagreeing with (Q)_0 are conflicts too
    let wrong = single_node(c, &[&format!("(X 0 {one})")]);
    assert!(extract_path_model(&wrong, &[Vec::new()]).is_err());
}

#[test]
fn falsification_examples() {
    let c = Ctx::new(CodedFamily::new());
    let mut m = PathModel::default();
    m.x.entry(1).or_default().insert(7, false);
    assert!(falsify_on_path(
        &c,
        &Formula::parse("(X 1 7)").unwrap(),
        &m,
        10
    ));
    assert!(!falsify_on_path(
        &c,
        &Formula::parse("(= 0 0)").unwrap(),
        &m,
        10
    ));
    for n in 0..10 {
        m.x.entry(1).or_default().insert(n, false);
    }
    let ex = Formula::ex("x", Formula::set(true, SetVar::X(1), ETerm::var("x")));
    assert!(
        !falsify_on_path(&c, &ex, &m, 10),
        "unbounded search stays undetermined"
    );
}

fn random_family(rng: &mut ChaCha8Rng) -> CodedFamily {
    let mut q = CodedFamily::new();
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
    q = q.with_order(0, o);
    if rng.gen_bool(0.5) {
        let modulus = rng.gen_range(1..4);
        q = q.with_set(
            1,
            SetSpec::Residue {
                modulus,
                residue: rng.gen_range(0..modulus),
            },
        );
    }
    q
}

/// Every maximal root path through non-axiom nodes.
fn open_paths(t: &SearchTree, a: &Addr, acc: &mut Vec<Addr>, out: &mut Vec<Vec<Addr>>) {
    let n = t.get(a).unwrap();
    if n.status == Status::Axiom || out.len() >= 20 {
        return;
    }
    acc.push(a.clone());
    if n.children.is_empty() {
        out.push(acc.clone());
    }
    for &i in &n.children {
        let mut c = a.clone();
        c.push(i);
        open_paths(t, &c, acc, out);
    }
    acc.pop();
}

#[test]
fn no_forcing_conflicts_on_random_fixtures() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for round in 0..100 {
        let q = random_family(&mut rng);
        let cfg = SearchConfig::new(rng.gen_range(3..9), rng.gen_range(1..3));
        let t = build_search_tree(&Ctx::new(q), &cfg).unwrap();
        assert!(t.local_violations().unwrap().is_empty(), "round {round}");
        let mut paths = Vec::new();
        open_paths(&t, &Vec::new(), &mut Vec::new(), &mut paths);
        for p in paths {
            extract_path_model(&t, &p).unwrap_or_else(|e| panic!("round {round}: {e}"));
        }
    }
}

#[test]
fn veblen_mode_interleaves_indices() {
    use ordforge::Term;
    let mut cfg = SearchConfig::new(10, 1);
    cfg.veblen = Some(Term::nat(2));
    let t = build_search_tree(&ctx("one"), &cfg).unwrap();
    assert!(t.local_violations().unwrap().is_empty());
    let betas: BTreeSet<String> = t
        .nodes
        .values()
        .filter_map(|n| match &n.rule {
            Some(Rule::WBeta(_, b)) => Some(b.to_string()),
            Some(Rule::W(_)) => panic!("plain (W) in Veblen mode"),
            _ => None,
        })
        .collect();
    assert!(betas.len() >= 2, "{betas:?}");
}

#[test]
fn fairness_auditor_catches_a_starved_formula() {
    let mut t = build_search_tree(&ctx("chain2"), &SearchConfig::new(12, 2)).unwrap();
    // the root's (W) premise 1 schedules LO at address 0; pretend it is never analyzed
    let lo = formula_lo(0);
    assert!(t.get(&[0]).unwrap().seq.contains(&lo));
    for (a, n) in t.nodes.iter_mut() {
        if a.first() == Some(&0) && n.principal.as_ref() == Some(&lo) {
            n.principal = None;
        }
    }
    let starved = t.fairness_violations();
    assert!(starved.iter().any(|s| s.starts_with("0: ")), "{starved:?}");
}
