//! Exhaustive law checkers over enumerated fragments. Each returns the
//! list of violations; an empty list means the law holds on the fragment.

use std::cmp::Ordering;

use crate::error::Result;
use crate::hierarchy::{enumerate_with, iterate_g};
use crate::notation::NotationSystem;
use crate::term::{BaseElt, Term};

pub type Violations = Vec<String>;

fn leq(s: &NotationSystem, a: &Term, b: &Term) -> bool {
    s.cmp_nf(a, b) != Ordering::Greater
}

/// Irreflexivity, trichotomy (Equal iff identical) and transitivity.
pub fn linear_order(s: &NotationSystem, terms: &[Term]) -> Violations {
    let mut out = Vec::new();
    let n = terms.len();
    let mut table = vec![Ordering::Equal; n * n];
    for i in 0..n {
        for j in 0..n {
            let c = s.cmp_nf(&terms[i], &terms[j]);
            table[i * n + j] = c;
            if (c == Ordering::Equal) != (i == j) {
                out.push(format!("{} vs {}: {:?}", terms[i], terms[j], c));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i * n + j] != table[j * n + i].reverse() {
                out.push(format!("asymmetric: {} {}", terms[i], terms[j]));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            if table[i * n + j] != Ordering::Less {
                continue;
            }
            for k in 0..n {
                if table[j * n + k] == Ordering::Less && table[i * n + k] != Ordering::Less {
                    out.push(format!(
                        "intransitive: {} < {} < {}",
                        terms[i], terms[j], terms[k]
                    ));
                }
            }
        }
    }
    out
}

/// Normalization is idempotent and fixes every enumerated normal form.
pub fn idempotence(s: &NotationSystem, raw: &[Term]) -> Result<Violations> {
    let mut out = Vec::new();
    for t in raw {
        let n = s.normalize(t)?;
        if s.normalize(&n)? != n {
            out.push(format!("not idempotent at {t}"));
        }
    }
    Ok(out)
}

/// The additive axioms on normal forms: left absorption, associativity,
/// strict right and weak left monotonicity, subtraction witnesses,
/// closure of principal terms, natural-sum commutativity and monotonicity,
/// and successors never being limits.
pub fn additive_axioms(s: &NotationSystem, terms: &[Term]) -> Result<Violations> {
    let mut out = Vec::new();
    let principal: Vec<&Term> = terms.iter().filter(|t| t.components().len() == 1).collect();
    for p in &principal {
        for q in &principal {
            if s.cmp_nf(p, q) == Ordering::Less && s.add(p, q)? != **q {
                out.push(format!("absorption fails: {p} + {q}"));
            }
        }
    }
    for a in terms {
        if s.is_limit(&s.successor(a)?)? {
            out.push(format!("successor of {a} is a limit"));
        }
        for b in terms {
            let ab = s.add(a, b)?;
            for c in terms {
                if s.add(&ab, c)? != s.add(a, &s.add(b, c)?)? {
                    out.push(format!("associativity fails: {a} {b} {c}"));
                }
                if s.cmp_nf(b, c) == Ordering::Less {
                    if s.cmp_nf(&ab, &s.add(a, c)?) != Ordering::Less {
                        out.push(format!("right monotonicity fails: {a} + ({b} < {c})"));
                    }
                    if !leq(s, &s.add(b, a)?, &s.add(c, a)?) {
                        out.push(format!("left monotonicity fails: ({b} < {c}) + {a}"));
                    }
                    let nb = s.natural_sum(b, a)?;
                    let nc = s.natural_sum(c, a)?;
                    if s.cmp_nf(&nb, &nc) != Ordering::Less {
                        out.push(format!("natural sum not monotone: {b} < {c} # {a}"));
                    }
                }
            }
            if s.natural_sum(a, b)? != s.natural_sum(b, a)? {
                out.push(format!("natural sum not commutative: {a} {b}"));
            }
            if leq(s, a, b) {
                let g = s.subtract_witness(a, b)?;
                if s.add(a, &g)? != *b || !leq(s, &g, b) {
                    out.push(format!("bad subtraction witness {g} for {a} <= {b}"));
                }
            }
        }
    }
    for p in &principal {
        for a in terms {
            if s.cmp_nf(a, p) != Ordering::Less {
                continue;
            }
            for b in terms {
                if s.cmp_nf(b, p) == Ordering::Less && s.cmp_nf(&s.add(a, b)?, p) != Ordering::Less
                {
                    out.push(format!("{p} not additively closed: {a} + {b}"));
                }
            }
        }
    }
    Ok(out)
}

/// Applications of each admitted function to terms below a top constant
/// stay below it (`f(β⃗) < C[c]`).
pub fn closure_below_constants(
    s: &NotationSystem,
    terms: &[Term],
    consts: &[BaseElt],
) -> Result<Violations> {
    let mut out = Vec::new();
    for &c in consts {
        let k = s.normalize(&Term::Const(c))?;
        let below: Vec<&Term> = terms
            .iter()
            .filter(|t| s.cmp_nf(t, &k) == Ordering::Less)
            .collect();
        for a in &below {
            let mut apps = vec![Term::w((*a).clone())];
            if s.signature().gapp {
                apps.push(Term::g((*a).clone()));
            }
            for b in &below {
                apps.push(Term::Sum(vec![(*a).clone(), (*b).clone()]));
            }
            for f in apps {
                if s.cmp_nf(&s.normalize(&f)?, &k) != Ordering::Less {
                    out.push(format!("{f} not below {}", s.show(&k)));
                }
            }
        }
    }
    Ok(out)
}

/// Every principal term of the form `f(K)` for a top constant `K` and an
/// admitted function `f` below the top layer normalizes to `K`.
pub fn fixed_points(
    s: &NotationSystem,
    consts: &[BaseElt],
    indices: &[Term],
) -> Result<Violations> {
    let mut out = Vec::new();
    for &c in consts {
        let k = Term::Const(c);
        let mut apps = vec![Term::w(k.clone())];
        if s.signature().gapp {
            apps.push(Term::g(k.clone()));
        }
        for i in indices {
            apps.push(Term::phi(i.clone(), k.clone()));
        }
        for f in apps {
            if s.normalize(&f)? != k {
                out.push(format!("{} does not collapse", s.show(&f)));
            }
        }
    }
    Ok(out)
}

/// `g^n(K[c] + 1) < K[d]` whenever `c < d`, for `n <= max_n`.
pub fn cofinality(s: &NotationSystem, elems: &[u64], max_n: usize) -> Result<Violations> {
    let mut out = Vec::new();
    let mut consts = vec![BaseElt::Bottom];
    consts.extend(elems.iter().map(|&e| BaseElt::Elt(e)));
    for &c in &consts {
        for &d in &consts {
            if !s.base_less(c, d) {
                continue;
            }
            let seed = s.successor(&Term::Const(c))?;
            for n in 0..=max_n {
                let x = iterate_g(s, n, &seed)?;
                if !s.lt(&x, &Term::Const(d))? {
                    out.push(format!("g^{n}({}+1) not below {}", c, d));
                }
            }
        }
    }
    Ok(out)
}

/// Constant-free terms of `inner` compare the same in `outer`.
pub fn layer_embedding(
    inner: &NotationSystem,
    outer: &NotationSystem,
    max_size: usize,
) -> Result<Violations> {
    let mut out = Vec::new();
    let terms = enumerate_with(inner, max_size, &[])?;
    for a in &terms {
        for b in &terms {
            if inner.compare(a, b)? != outer.compare(a, b)? {
                out.push(format!("{a} vs {b} differs between layers"));
            }
        }
    }
    Ok(out)
}
