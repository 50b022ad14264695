use std::cmp::Ordering;

use ordforge::catalog::resolve_system;
use ordforge::formula::{ETerm, Formula};
use ordforge::search::kb_compare;
use ordforge::{NotationSystem, Term};
use proptest::prelude::*;

fn deriv() -> NotationSystem {
    resolve_system("derivX2", &[]).unwrap()
}

/// Raw terms of the system, drawn from the code space.
fn raw_term() -> impl Strategy<Value = Term> {
    (0u64..40_000)
        .prop_map(Term::decode)
        .prop_filter("outside the system", |t| {
            t.size() <= 7 && deriv().belongs(t)
        })
}

fn formula() -> impl Strategy<Value = Formula> {
    let lit = (0u64..4, 0u64..4, any::<bool>()).prop_map(|(a, b, pos)| {
        let (a, b) = (ETerm::Num(a), ETerm::Num(b));
        if pos {
            Formula::Eq(a, b)
        } else {
            Formula::Neq(a, b)
        }
    });
    lit.prop_recursive(4, 16, 2, |inner| {
        (inner.clone(), inner, any::<bool>()).prop_map(|(l, r, conj)| {
            if conj {
                Formula::and(l, r)
            } else {
                Formula::or(l, r)
            }
        })
    })
}

proptest! {
    #[test]
    fn normalize_is_idempotent(t in raw_term()) {
        let s = deriv();
        let n = s.normalize(&t).unwrap();
        prop_assert_eq!(s.normalize(&n).unwrap(), n);
    }

    #[test]
    fn compare_is_antisymmetric_and_matches_normal_forms(a in raw_term(), b in raw_term()) {
        let s = deriv();
        let ab = Ordering::from(s.compare(&a, &b).unwrap());
        let ba = Ordering::from(s.compare(&b, &a).unwrap());
        prop_assert_eq!(ab, ba.reverse());
        let same = s.normalize(&a).unwrap() == s.normalize(&b).unwrap();
        prop_assert_eq!(ab == Ordering::Equal, same);
    }

    #[test]
    fn addition_laws(a in raw_term(), b in raw_term(), c in raw_term()) {
        let s = deriv();
        let (a, b, c) = (s.normalize(&a).unwrap(), s.normalize(&b).unwrap(), s.normalize(&c).unwrap());
        let l = s.add(&s.add(&a, &b).unwrap(), &c).unwrap();
        let r = s.add(&a, &s.add(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
        prop_assert_eq!(s.natural_sum(&a, &b).unwrap(), s.natural_sum(&b, &a).unwrap());
        prop_assert!(!s.lt(&s.add(&a, &b).unwrap(), &b).unwrap());
    }

    #[test]
    fn codes_round_trip(t in raw_term()) {
        let n = deriv().normalize(&t).unwrap();
        prop_assert_eq!(Term::decode(n.encode().unwrap()), n);
    }

    #[test]
    fn formulas_print_and_parse_back(f in formula()) {
        prop_assert_eq!(Formula::parse(&f.to_string()).unwrap(), f.clone());
        prop_assert_eq!(f.dual().dual(), f);
    }

    #[test]
    fn kb_is_a_strict_order(a in prop::collection::vec(0u64..3, 0..5),
                            b in prop::collection::vec(0u64..3, 0..5),
                            c in prop::collection::vec(0u64..3, 0..5)) {
        prop_assert_eq!(kb_compare(&a, &b), kb_compare(&b, &a).reverse());
        prop_assert_eq!(kb_compare(&a, &b) == Ordering::Equal, a == b);
        if kb_compare(&a, &b) == Ordering::Less && kb_compare(&b, &c) == Ordering::Less {
            prop_assert_eq!(kb_compare(&a, &c), Ordering::Less);
        }
    }
}
