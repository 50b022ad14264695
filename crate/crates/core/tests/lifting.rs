use std::cmp::Ordering;

use ordforge::hierarchy::{enumerate_with, make_derivative, make_exponential, make_veblen};
use ordforge::lifting::{
    check_indiscernibility, check_indiscernibility_with, check_lift, check_suborder, lift, BaseMap,
};
use ordforge::{BaseElt, CodedOrder, Term};

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

#[test]
fn lifts_preserve_order_between_chains() {
    for n in 1..=3 {
        for m in n..=3 {
            let src = make_exponential(CodedOrder::chain("a", n));
            let dst = make_exponential(CodedOrder::chain("b", m));
            let terms = enumerate_with(&src, 4, &(0..n).collect::<Vec<_>>()).unwrap();
            for f in monotone_maps(n, m) {
                f.check_order_preserving(src.base(), dst.base()).unwrap();
                assert!(check_lift(&f, &src, &dst, &terms).unwrap().is_empty());
            }
            let dsrc = make_derivative(&src);
            let ddst = make_derivative(&dst);
            let terms = enumerate_with(&dsrc, 4, &(0..n).collect::<Vec<_>>()).unwrap();
            for f in monotone_maps(n, m) {
                assert!(check_lift(&f, &dsrc, &ddst, &terms).unwrap().is_empty());
            }
        }
    }
}

#[test]
fn identity_and_functoriality() {
    let s = make_exponential(CodedOrder::chain("c", 3));
    let terms = enumerate_with(&s, 4, &[0, 1, 2]).unwrap();
    let id = BaseMap::identity(&[0, 1, 2]);
    let f = BaseMap::new([(0, 1), (1, 2), (2, 4), (3, 5)]);
    let g = BaseMap::new([(0, 0), (1, 2), (2, 3)]);
    let fg = f.compose(&g).unwrap();
    for t in &terms {
        assert_eq!(&lift(&id, t).unwrap(), t);
        assert_eq!(
            lift(&fg, t).unwrap(),
            lift(&f, &lift(&g, t).unwrap()).unwrap()
        );
    }
}

#[test]
fn indiscernibility_of_shipped_systems() {
    let base = CodedOrder::chain("c5", 5);
    let e = make_exponential(base);
    let d = make_derivative(&e);
    let idx = make_exponential(CodedOrder::empty("e"));
    let v = make_veblen(&e, &idx, &Term::parse("(+ (w 0) (w 0))").unwrap()).unwrap();
    for s in [&e, &d, &v] {
        for width in 1..=2 {
            let found = check_indiscernibility(s, width, 4, 5).unwrap();
            assert!(found.is_empty(), "{}: {:?}", s.name(), found);
        }
    }
}

#[test]
fn broken_comparator_is_caught() {
    let s = make_exponential(CodedOrder::chain("c4", 4));
    // orders constants by numeric parity first: depends on the actual tuple
    let broken = |a: &Term, b: &Term| -> ordforge::Result<Ordering> {
        let key = |t: &Term| {
            t.constants()
                .iter()
                .map(|c| match c {
                    BaseElt::Elt(n) => n % 2,
                    BaseElt::Bottom => 0,
                })
                .sum::<u64>()
        };
        Ok(key(a).cmp(&key(b)))
    };
    assert!(!check_indiscernibility_with(&s, 1, 3, 4, broken)
        .unwrap()
        .is_empty());
}

#[test]
fn suborders_agree() {
    let two = make_exponential(CodedOrder::chain("c", 2));
    let three = make_exponential(CodedOrder::chain("c", 3));
    assert!(check_suborder(&two, &two, 4, 8).unwrap().is_empty());
    assert!(check_suborder(&two, &three, 4, 8).unwrap().is_empty());
    let d2 = make_derivative(&two);
    let d3 = make_derivative(&three);
    assert!(check_suborder(&d2, &d3, 4, 8).unwrap().is_empty());
    let rev = make_exponential(CodedOrder::from_sequence("r", &[1, 0]));
    assert!(check_suborder(&rev, &three, 3, 8).is_err());
}
