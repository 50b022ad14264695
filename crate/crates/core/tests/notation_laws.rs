use std::cmp::Ordering;

use ordforge::hierarchy::{enumerate_with, make_derivative, make_exponential, make_veblen};
use ordforge::laws;
use ordforge::{BaseElt, CodedOrder, NotationSystem, Term};

fn t(s: &str) -> Term {
    Term::parse(s).unwrap()
}

fn chain_exp(n: u64) -> NotationSystem {
    make_exponential(CodedOrder::chain("c", n))
}

fn elems(n: u64) -> Vec<u64> {
    (0..n).collect()
}

#[test]
fn exponential_linear_order_laws() {
    for n in 0..=4 {
        let s = chain_exp(n);
        let terms = enumerate_with(&s, 5, &elems(n)).unwrap();
        assert!(laws::linear_order(&s, &terms).is_empty(), "base size {n}");
    }
}

#[test]
fn non_numeric_base_order() {
    // 2 < 0 < 1
    let s = make_exponential(CodedOrder::from_sequence("p", &[2, 0, 1]));
    let terms = enumerate_with(&s, 4, &[0, 1, 2]).unwrap();
    assert!(laws::linear_order(&s, &terms).is_empty());
    assert!(s.lt(&t("C[2]"), &t("C[0]")).unwrap());
}

#[test]
fn derived_layers_linear() {
    let e = chain_exp(2);
    let d = make_derivative(&e);
    let terms = enumerate_with(&d, 5, &elems(2)).unwrap();
    assert!(laws::linear_order(&d, &terms).is_empty());
    let dd = make_derivative(&d);
    let terms = enumerate_with(&dd, 5, &elems(2)).unwrap();
    assert!(laws::linear_order(&dd, &terms).is_empty());
    let idx = make_exponential(CodedOrder::empty("e"));
    let v = make_veblen(&e, &idx, &t("(+ (w 0) (w 0))")).unwrap();
    let terms = enumerate_with(&v, 5, &elems(2)).unwrap();
    assert!(laws::linear_order(&v, &terms).is_empty());
}

#[test]
fn normalization_idempotent_and_congruent() {
    let d = make_derivative(&chain_exp(2));
    let mut raw = Vec::new();
    for code in 0..3000u64 {
        let r = Term::decode(code);
        if d.belongs(&r) && r.size() <= 6 {
            raw.push(r);
        }
    }
    assert!(laws::idempotence(&d, &raw).unwrap().is_empty());
    for a in raw.iter().take(150) {
        for b in raw.iter().take(150) {
            let same = d.normalize(a).unwrap() == d.normalize(b).unwrap();
            assert_eq!(
                same,
                d.compare(a, b).unwrap() == ordforge::Comparison::Equal
            );
        }
    }
}

#[test]
fn additive_axioms_hold() {
    let s = chain_exp(2);
    let terms = enumerate_with(&s, 4, &elems(2)).unwrap();
    assert!(laws::additive_axioms(&s, &terms).unwrap().is_empty());
    let d = make_derivative(&s);
    let terms = enumerate_with(&d, 4, &elems(1)).unwrap();
    let v = laws::additive_axioms(&d, &terms).unwrap();
    assert!(v.is_empty(), "{:?}", &v[..v.len().min(5)]);
}

#[test]
fn fixed_point_laws() {
    let e = chain_exp(3);
    let d = make_derivative(&e);
    let consts: Vec<BaseElt> = std::iter::once(BaseElt::Bottom)
        .chain((0..3).map(BaseElt::Elt))
        .collect();
    assert!(laws::fixed_points(&d, &consts, &[]).unwrap().is_empty());
    let idx = make_exponential(CodedOrder::empty("e"));
    let two = t("(+ (w 0) (w 0))");
    let v = make_veblen(&e, &idx, &two).unwrap();
    assert!(laws::fixed_points(&v, &consts, &[Term::one()])
        .unwrap()
        .is_empty());
    assert!(laws::cofinality(&d, &elems(3), 5).unwrap().is_empty());
    assert!(laws::cofinality(&v, &elems(3), 5).unwrap().is_empty());
    let terms = enumerate_with(&d, 4, &elems(3)).unwrap();
    assert!(laws::closure_below_constants(&d, &terms, &consts)
        .unwrap()
        .is_empty());
    assert!(laws::layer_embedding(&e, &d, 4).unwrap().is_empty());
    assert!(laws::layer_embedding(&e, &v, 4).unwrap().is_empty());
}

// Sums of constants over ω^X, read as sorted rank sequences compared
// lexicographically with proper extensions larger.
fn sorted_lex_key(t: &Term) -> Option<Vec<u64>> {
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

#[test]
fn sorted_lex_oracle() {
    for n in 1..=4 {
        let s = chain_exp(n);
        let terms: Vec<Term> = enumerate_with(&s, 5, &elems(n))
            .unwrap()
            .into_iter()
            .filter(|x| sorted_lex_key(x).is_some())
            .collect();
        assert!(terms.len() > n as usize);
        for a in &terms {
            for b in &terms {
                let want = sorted_lex_key(a).unwrap().cmp(&sorted_lex_key(b).unwrap());
                assert_eq!(s.compare(a, b).unwrap(), want.into(), "{a} {b}");
            }
        }
    }
}

// Binary Veblen φ(a, b) with a in {0, 1, 2}, on raw terms, following the
// textbook equality and order clauses directly.
#[derive(Clone, Debug)]
enum V {
    Phi(u8, Box<V>),
    Sum(Vec<V>),
}

fn to_v(t: &Term) -> V {
    match t {
        Term::Zero => V::Sum(vec![]),
        Term::OmegaPow(x) => V::Phi(0, Box::new(to_v(x))),
        Term::Phi(i, x) => V::Phi(finite_index(i), Box::new(to_v(x))),
        Term::Sum(v) => V::Sum(v.iter().map(to_v).collect()),
        // the bottom constant of the top layer is φ(2, 0)
        Term::Const(BaseElt::Bottom) => V::Phi(2, Box::new(V::Sum(vec![]))),
        other => panic!("unexpected {other}"),
    }
}

fn finite_index(t: &Term) -> u8 {
    match t {
        Term::Zero => 0,
        Term::OmegaPow(x) if **x == Term::Zero => 1,
        Term::Sum(v) => v.iter().map(finite_index).sum(),
        other => panic!("index {other} is not finite"),
    }
}

fn parts(v: &V) -> Vec<V> {
    let mut flat = Vec::new();
    fn go(v: &V, out: &mut Vec<V>) {
        match v {
            V::Sum(xs) => xs.iter().for_each(|x| go(x, out)),
            p => out.push(p.clone()),
        }
    }
    go(v, &mut flat);
    let mut kept: Vec<V> = Vec::new();
    for p in flat {
        while kept.last().is_some_and(|q| vcmp(q, &p) == Ordering::Less) {
            kept.pop();
        }
        kept.push(p);
    }
    kept
}

fn vcmp(a: &V, b: &V) -> Ordering {
    match (a, b) {
        (V::Phi(a1, b1), V::Phi(a2, b2)) => {
            if a1 == a2 {
                vcmp(b1, b2)
            } else if a1 < a2 {
                // φ(a1,b1) < φ(a2,b2) iff b1 < φ(a2,b2); equal iff b1 = φ(a2,b2)
                vcmp(b1, b)
            } else {
                vcmp(a, b2)
            }
        }
        _ => {
            let (x, y) = (parts(a), parts(b));
            for (p, q) in x.iter().zip(&y) {
                match vcmp(p, q) {
                    Ordering::Equal => {}
                    o => return o,
                }
            }
            x.len().cmp(&y.len())
        }
    }
}

#[test]
fn binary_veblen_oracle() {
    let e = make_exponential(CodedOrder::empty("e"));
    let v = make_veblen(&e, &e, &t("(+ (w 0) (w 0))")).unwrap();
    let mut raw = Vec::new();
    for code in 0..20000u64 {
        let r = Term::decode(code);
        if v.belongs(&r) && r.size() <= 5 {
            raw.push(r);
        }
    }
    raw.extend(enumerate_with(&v, 5, &[]).unwrap());
    assert!(raw.len() > 50);
    for a in &raw {
        for b in &raw {
            let want = vcmp(&to_v(a), &to_v(b));
            assert_eq!(v.compare(a, b).unwrap(), want.into(), "{a} vs {b}");
        }
    }
}

// Count of normal forms in ω^X over k constants by node count: principals
// of size n are the k constants (n = 1) or ω-powers of any normal form of
// size n-1; sums are multisets of at least two principals.
fn count_oracle(k: u64, max: usize) -> u64 {
    let mut p = vec![0u64; max + 1];
    let mut all = vec![0u64; max + 1];
    for n in 1..=max {
        p[n] = if n == 1 { k } else { all[n - 1] };
        // multisets of principals of total weight n-1, any cardinality
        let w = n - 1;
        let mut m = vec![0u64; w + 1];
        m[0] = 1;
        for s in 1..=w {
            for _ in 0..p[s] {
                for tot in s..=w {
                    m[tot] += m[tot - s];
                }
            }
        }
        let sums = if w >= 1 { m[w] - p[w] } else { 0 };
        all[n] = p[n] + sums + u64::from(n == 1);
    }
    all.iter().sum()
}

#[test]
fn enumeration_count_oracle() {
    for k in 0..=3 {
        for size in 1..=6 {
            let s = chain_exp(k);
            let got = enumerate_with(&s, size, &elems(k)).unwrap().len() as u64;
            assert_eq!(got, count_oracle(k, size), "k={k} size={size}");
        }
    }
}
