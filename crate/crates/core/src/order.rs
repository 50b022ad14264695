//! Coded linear orders on the naturals.
//!
//! A set `X ⊆ ℕ` codes the relation `n <_X m :⇔ ⟨n,m⟩ ∈ X`, with `⟨·,·⟩`
//! the Cantor pairing function. Finite orders are stored as explicit pair
//! sets; infinite ones are named generators with a decidable `less`.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Default size of the checked fragment for infinite orders.
pub const DEFAULT_BOUND: usize = 64;

/// Cantor pairing `⟨a,b⟩ = (a+b)(a+b+1)/2 + b`.
pub fn pair(a: u64, b: u64) -> Option<u64> {
    let s = a.checked_add(b)?;
    let t = s.checked_mul(s.checked_add(1)?)? / 2;
    t.checked_add(b)
}

/// Inverse of [`pair`].
pub fn unpair(z: u64) -> (u64, u64) {
    let z128 = z as u128;
    // w = floor((sqrt(8z+1)-1)/2)
    let mut w = (((8 * z128 + 1) as f64).sqrt() as u128).saturating_sub(1) / 2;
    while (w + 1) * (w + 2) / 2 <= z128 {
        w += 1;
    }
    while w * (w + 1) / 2 > z128 {
        w -= 1;
    }
    let t = w * (w + 1) / 2;
    let b = z128 - t;
    let a = w - b;
    (a as u64, b as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    Finite,
    Omega,
    OmegaStar,
    Sum,
    Explicit,
}

impl OrderKind {
    pub fn as_str(self) -> &'static str {
        match self {
            OrderKind::Finite => "finite",
            OrderKind::Omega => "omega",
            OrderKind::OmegaStar => "omega_star",
            OrderKind::Sum => "sum",
            OrderKind::Explicit => "explicit",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "finite" => OrderKind::Finite,
            "omega" => OrderKind::Omega,
            "omega_star" => OrderKind::OmegaStar,
            "sum" => OrderKind::Sum,
            "explicit" => OrderKind::Explicit,
            _ => return None,
        })
    }
}

/// Infinite or finite sets of naturals given by a decidable rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetSpec {
    Empty,
    All,
    Finite(BTreeSet<u64>),
    /// `{ n : n mod modulus = residue }`
    Residue {
        modulus: u64,
        residue: u64,
    },
}

impl SetSpec {
    pub fn contains(&self, n: u64) -> bool {
        match self {
            SetSpec::Empty => false,
            SetSpec::All => true,
            SetSpec::Finite(s) => s.contains(&n),
            SetSpec::Residue { modulus, residue } => n % modulus == *residue,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Repr {
    /// Explicit finite relation. `field` lists elements in insertion order.
    Pairs {
        field: Vec<u64>,
        less: BTreeSet<(u64, u64)>,
    },
    Omega,
    OmegaStar,
    /// Elements are `⟨0,a⟩` for `a` in the left summand and `⟨1,b⟩` on the right.
    Sum(Arc<CodedOrder>, Arc<CodedOrder>),
    /// The relation coded by an arbitrary decidable set; the field is all of ℕ.
    Coded(SetSpec),
}

/// A binary relation on a set of naturals, intended to be a linear order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodedOrder {
    name: String,
    kind: OrderKind,
    repr: Repr,
}

impl CodedOrder {
    fn from_parts(name: impl Into<String>, kind: OrderKind, repr: Repr) -> Self {
        CodedOrder {
            name: name.into(),
            kind,
            repr,
        }
    }

    /// The chain `0 < 1 < … < n-1`.
    pub fn chain(name: impl Into<String>, n: u64) -> Self {
        Self::from_sequence(name, &(0..n).collect::<Vec<_>>())
    }

    /// Finite chain listing elements from least to greatest.
    pub fn from_sequence(name: impl Into<String>, seq: &[u64]) -> Self {
        let mut less = BTreeSet::new();
        for (i, &a) in seq.iter().enumerate() {
            for &b in &seq[i + 1..] {
                less.insert((a, b));
            }
        }
        Self::from_parts(
            name,
            OrderKind::Finite,
            Repr::Pairs {
                field: dedup(seq.iter().copied()),
                less,
            },
        )
    }

    /// Arbitrary finite relation; the field is the listed elements plus
    /// everything occurring in a pair.
    pub fn explicit(
        name: impl Into<String>,
        elems: impl IntoIterator<Item = u64>,
        pairs: impl IntoIterator<Item = (u64, u64)>,
    ) -> Self {
        let less: BTreeSet<(u64, u64)> = pairs.into_iter().collect();
        let mut field: Vec<u64> = elems.into_iter().collect();
        for &(a, b) in &less {
            field.push(a);
            field.push(b);
        }
        Self::from_parts(
            name,
            OrderKind::Explicit,
            Repr::Pairs {
                field: dedup(field),
                less,
            },
        )
    }

    pub fn empty(name: impl Into<String>) -> Self {
        Self::chain(name, 0)
    }

    pub fn omega() -> Self {
        Self::from_parts("omega", OrderKind::Omega, Repr::Omega)
    }

    pub fn omega_star() -> Self {
        Self::from_parts("omega_star", OrderKind::OmegaStar, Repr::OmegaStar)
    }

    /// The relation `{(n,m) : ⟨n,m⟩ ∈ set}`.
    pub fn coded(name: impl Into<String>, set: SetSpec) -> Self {
        Self::from_parts(name, OrderKind::Explicit, Repr::Coded(set))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn is_finite(&self) -> bool {
        match &self.repr {
            Repr::Pairs { .. } => true,
            Repr::Sum(a, b) => a.is_finite() && b.is_finite(),
            _ => false,
        }
    }

    pub fn contains(&self, n: u64) -> bool {
        match &self.repr {
            Repr::Pairs { field, .. } => field.contains(&n),
            Repr::Omega | Repr::OmegaStar | Repr::Coded(_) => true,
            Repr::Sum(a, b) => match unpair(n) {
                (0, x) => a.contains(x),
                (1, y) => b.contains(y),
                _ => false,
            },
        }
    }

    fn check(&self, n: u64) -> Result<()> {
        if self.contains(n) {
            Ok(())
        } else {
            Err(Error::Domain {
                order: self.name.clone(),
                elem: n,
            })
        }
    }

    /// Decides `a <_X b`; both must lie in the field.
    pub fn less(&self, a: u64, b: u64) -> Result<bool> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.less_unchecked(a, b))
    }

    pub(crate) fn less_unchecked(&self, a: u64, b: u64) -> bool {
        match &self.repr {
            Repr::Pairs { less, .. } => less.contains(&(a, b)),
            Repr::Omega => a < b,
            Repr::OmegaStar => a > b,
            Repr::Coded(set) => pair(a, b).is_some_and(|z| set.contains(z)),
            Repr::Sum(x, y) => match (unpair(a), unpair(b)) {
                ((0, p), (0, q)) => x.less_unchecked(p, q),
                ((1, p), (1, q)) => y.less_unchecked(p, q),
                ((0, _), (1, _)) => true,
                _ => false,
            },
        }
    }

    /// The first `bound` field elements in enumeration order (all of them
    /// for finite orders when `bound` is large enough).
    pub fn field_prefix(&self, bound: usize) -> Vec<u64> {
        match &self.repr {
            Repr::Pairs { field, .. } => field.iter().copied().take(bound).collect(),
            Repr::Omega | Repr::OmegaStar | Repr::Coded(_) => (0..bound as u64).collect(),
            Repr::Sum(a, b) => {
                let left = a.field_prefix(bound);
                let right = b.field_prefix(bound);
                let mut out = Vec::new();
                let (mut i, mut j) = (0, 0);
                while out.len() < bound && (i < left.len() || j < right.len()) {
                    if i < left.len() && (i <= j || j >= right.len()) {
                        if let Some(z) = pair(0, left[i]) {
                            out.push(z);
                        }
                        i += 1;
                    } else {
                        if let Some(z) = pair(1, right[j]) {
                            out.push(z);
                        }
                        j += 1;
                    }
                }
                out
            }
        }
    }

    /// Full field of a finite order.
    pub fn field(&self) -> Result<Vec<u64>> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!(
                "field of infinite order `{}`",
                self.name
            )));
        }
        Ok(self.field_prefix(usize::MAX))
    }

    /// The fragment checked by bounded predicates.
    fn fragment(&self, bound: usize) -> Vec<u64> {
        if self.is_finite() {
            self.field_prefix(usize::MAX)
                .into_iter()
                .take(bound)
                .collect()
        } else {
            self.field_prefix(bound)
        }
    }

    /// The pairs of a finite order, as a set.
    pub fn pairs(&self) -> Result<BTreeSet<(u64, u64)>> {
        let field = self.field()?;
        let mut out = BTreeSet::new();
        for &a in &field {
            for &b in &field {
                if self.less_unchecked(a, b) {
                    out.insert((a, b));
                }
            }
        }
        Ok(out)
    }

    /// Field elements of a finite linear order listed from least to greatest.
    pub fn sorted_field(&self) -> Result<Vec<u64>> {
        let mut field = self.field()?;
        if !self.is_linear(field.len())? {
            return Err(Error::NotLinear(self.name.clone()));
        }
        field.sort_by(|&a, &b| {
            if a == b {
                std::cmp::Ordering::Equal
            } else if self.less_unchecked(a, b) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        Ok(field)
    }

    /// Irreflexivity, transitivity and trichotomy on the first `bound`
    /// field elements.
    pub fn is_linear(&self, bound: usize) -> Result<bool> {
        let frag = self.fragment(bound);
        for &a in &frag {
            self.check(a)?;
        }
        for &a in &frag {
            if self.less_unchecked(a, a) {
                return Ok(false);
            }
            for &b in &frag {
                if a != b && self.less_unchecked(a, b) == self.less_unchecked(b, a) {
                    return Ok(false);
                }
                if !self.less_unchecked(a, b) {
                    continue;
                }
                for &c in &frag {
                    if self.less_unchecked(b, c) && !self.less_unchecked(a, c) {
                        return Ok(false);
                    }
                }
            }
        }
        Ok(true)
    }

    /// Finite linear orders are well orders; infinite ones are not decided.
    pub fn is_well_order_finite(&self) -> Result<bool> {
        if !self.is_finite() {
            return Err(Error::Unsupported(format!(
                "well-foundedness of infinite order `{}`",
                self.name
            )));
        }
        let n = self.field()?.len();
        self.is_linear(n)
    }

    pub fn order_type_finite(&self) -> Result<u64> {
        let field = self.field()?;
        if !self.is_linear(field.len())? {
            return Err(Error::NotLinear(self.name.clone()));
        }
        Ok(field.len() as u64)
    }

    /// Adjoins a fresh greatest element. Finite orders get `max+1`;
    /// infinite orders become `X + 1` as a sum.
    pub fn add_top(&self) -> CodedOrder {
        match &self.repr {
            Repr::Pairs { field, less } => {
                let top = field.iter().max().map_or(0, |m| m + 1);
                let mut less = less.clone();
                for &a in field {
                    less.insert((a, top));
                }
                let mut field = field.clone();
                field.push(top);
                Self::from_parts(
                    format!("{}+1", self.name),
                    self.kind,
                    Repr::Pairs { field, less },
                )
            }
            _ => Self::sum_orders(self, &CodedOrder::chain("1", 1)),
        }
    }

    /// The greatest element adjoined by [`add_top`](Self::add_top).
    pub fn top_of_add_top(&self) -> u64 {
        match &self.repr {
            Repr::Pairs { field, .. } => field.iter().max().map_or(0, |m| m + 1),
            _ => pair(1, 0).expect("small"),
        }
    }

    /// Ordered sum: every element of `a` precedes every element of `b`.
    pub fn sum_orders(a: &CodedOrder, b: &CodedOrder) -> CodedOrder {
        Self::from_parts(
            format!("({}+{})", a.name, b.name),
            OrderKind::Sum,
            Repr::Sum(Arc::new(a.clone()), Arc::new(b.clone())),
        )
    }

    /// Tag of a sum element: `(0, a)` for the left summand, `(1, b)` right.
    pub fn sum_tag(elem: u64) -> (u64, u64) {
        unpair(elem)
    }

    pub fn summands(&self) -> Option<(&CodedOrder, &CodedOrder)> {
        match &self.repr {
            Repr::Sum(a, b) => Some((a, b)),
            _ => None,
        }
    }

    /// Restriction of a finite order to the elements satisfying `keep`.
    pub fn restrict(&self, keep: impl Fn(u64) -> bool) -> Result<CodedOrder> {
        let field: Vec<u64> = self.field()?.into_iter().filter(|&x| keep(x)).collect();
        let mut less = BTreeSet::new();
        for &a in &field {
            for &b in &field {
                if self.less_unchecked(a, b) {
                    less.insert((a, b));
                }
            }
        }
        Ok(Self::from_parts(
            self.name.clone(),
            OrderKind::Explicit,
            Repr::Pairs { field, less },
        ))
    }

    /// Relabels a finite linear order by rank, giving a canonical
    /// representative of its isomorphism class.
    pub fn canonical_relabel(&self) -> Result<BTreeSet<(u64, u64)>> {
        let sorted = self.sorted_field()?;
        let rank = |x: u64| sorted.iter().position(|&y| y == x).unwrap() as u64;
        Ok(self
            .pairs()?
            .into_iter()
            .map(|(a, b)| (rank(a), rank(b)))
            .collect())
    }

    /// A field element `c` is a limit if it is not least and has no
    /// immediate predecessor on the checked fragment.
    pub fn is_limit_element(&self, c: u64, bound: usize) -> Result<bool> {
        self.check(c)?;
        let below: Vec<u64> = self
            .fragment(bound)
            .into_iter()
            .filter(|&d| self.less_unchecked(d, c))
            .collect();
        if below.is_empty() {
            return Ok(false);
        }
        // an immediate predecessor has nothing strictly between it and c,
        // even on a fragment twice as large
        let wider: Vec<u64> = self
            .fragment(bound.saturating_mul(2))
            .into_iter()
            .filter(|&d| self.less_unchecked(d, c))
            .collect();
        let has_pred = below
            .iter()
            .any(|&d| !wider.iter().any(|&e| self.less_unchecked(d, e)));
        Ok(!has_pred)
    }

    /// Writes the order in the line-oriented order file format.
    pub fn to_file_string(&self) -> String {
        let mut s = format!("order {} kind={}\n", self.name, self.kind.as_str());
        match &self.repr {
            Repr::Pairs { field, less } => {
                for &e in field {
                    s.push_str(&format!("elem {e}\n"));
                }
                for &(a, b) in less {
                    s.push_str(&format!("{a} {b}\n"));
                }
            }
            Repr::Sum(a, b) => {
                s.push_str(&format!("left {}\nright {}\n", a.name, b.name));
            }
            _ => {}
        }
        s.push_str("end\n");
        s
    }
}

impl fmt::Display for CodedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name)
    }
}

fn dedup(it: impl IntoIterator<Item = u64>) -> Vec<u64> {
    let mut seen = BTreeSet::new();
    it.into_iter().filter(|x| seen.insert(*x)).collect()
}

/// Parses every order block in an order file. `sum` orders may reference
/// orders defined earlier in the same file.
pub fn parse_order_file(src: &str) -> Result<Vec<CodedOrder>> {
    let mut out: Vec<CodedOrder> = Vec::new();
    let mut lines = src.lines().enumerate().peekable();
    while let Some((ln, line)) = lines.next() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut words = line.split_whitespace();
        if words.next() != Some("order") {
            return Err(perr(ln, "expected `order <name> kind=<kind>`"));
        }
        let name = words.next().ok_or_else(|| perr(ln, "missing order name"))?;
        let kind = words
            .next()
            .and_then(|w| w.strip_prefix("kind="))
            .and_then(OrderKind::parse)
            .ok_or_else(|| perr(ln, "missing or unknown kind"))?;
        let mut elems = Vec::new();
        let mut pairs = Vec::new();
        let mut chain: Option<Vec<u64>> = None;
        let mut left = None;
        let mut right = None;
        let mut closed = false;
        for (ln, body) in lines.by_ref() {
            let body = body.trim();
            if body.is_empty() || body.starts_with('#') {
                continue;
            }
            if body == "end" {
                closed = true;
                break;
            }
            let toks: Vec<&str> = body.split_whitespace().collect();
            match toks.as_slice() {
                ["elem", n] => elems.push(num(ln, n)?),
                ["chain", rest @ ..] => {
                    chain = Some(rest.iter().map(|t| num(ln, t)).collect::<Result<_>>()?)
                }
                ["left", n] => left = Some(n.to_string()),
                ["right", n] => right = Some(n.to_string()),
                [a, b] => pairs.push((num(ln, a)?, num(ln, b)?)),
                _ => return Err(perr(ln, "unrecognized order line")),
            }
        }
        if !closed {
            return Err(perr(ln, "missing `end`"));
        }
        let order = match kind {
            OrderKind::Omega => CodedOrder::omega().with_name(name),
            OrderKind::OmegaStar => CodedOrder::omega_star().with_name(name),
            OrderKind::Sum => {
                let find = |n: &Option<String>| -> Result<CodedOrder> {
                    let n = n.as_ref().ok_or_else(|| perr(ln, "sum needs left/right"))?;
                    out.iter()
                        .find(|o| &o.name == n)
                        .cloned()
                        .ok_or_else(|| Error::Unknown {
                            kind: "order",
                            name: n.clone(),
                        })
                };
                CodedOrder::sum_orders(&find(&left)?, &find(&right)?).with_name(name)
            }
            OrderKind::Finite | OrderKind::Explicit => {
                if let Some(seq) = chain {
                    let mut o = CodedOrder::from_sequence(name, &seq);
                    if let Repr::Pairs { field, less } = &mut o.repr {
                        field.extend(elems.iter().copied());
                        *field = dedup(field.iter().copied());
                        less.extend(pairs.iter().copied());
                    }
                    o.kind = kind;
                    o
                } else {
                    let mut o = CodedOrder::explicit(name, elems, pairs);
                    o.kind = kind;
                    o
                }
            }
        };
        out.push(order);
    }
    Ok(out)
}

fn num(ln: usize, s: &str) -> Result<u64> {
    s.parse()
        .map_err(|_| perr(ln, &format!("bad natural `{s}`")))
}

fn perr(ln: usize, msg: &str) -> Error {
    Error::Parse {
        pos: ln + 1,
        msg: msg.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_round_trips() {
        for a in 0..40 {
            for b in 0..40 {
                assert_eq!(unpair(pair(a, b).unwrap()), (a, b));
            }
        }
        assert_eq!(pair(0, 0), Some(0));
        assert_eq!(pair(1, 0), Some(1));
        assert_eq!(pair(0, 1), Some(2));
    }

    #[test]
    fn linearity_examples() {
        assert!(CodedOrder::chain("c3", 3).is_linear(3).unwrap());
        let cyc = CodedOrder::explicit("cyc", [], [(0, 1), (1, 0)]);
        assert!(!cyc.is_linear(2).unwrap());
        assert!(CodedOrder::omega_star().is_linear(10).unwrap());
    }

    #[test]
    fn omega_star_exhaustive_pairs() {
        let o = CodedOrder::omega_star();
        for a in 0..10u64 {
            for b in 0..10u64 {
                assert_eq!(o.less(a, b).unwrap(), b < a);
            }
        }
    }

    #[test]
    fn outside_field_is_domain_error() {
        let c = CodedOrder::chain("c2", 2);
        assert!(matches!(c.less(0, 7), Err(Error::Domain { .. })));
    }

    #[test]
    fn well_order_finite() {
        assert!(CodedOrder::chain("c4", 4).is_well_order_finite().unwrap());
        let cyc = CodedOrder::explicit("cyc", [], [(0, 1), (1, 2), (2, 0)]);
        assert!(!cyc.is_well_order_finite().unwrap());
        let e = CodedOrder::explicit("e", [], [(2, 0), (0, 1), (2, 1)]);
        assert!(e.is_well_order_finite().unwrap());
        assert_eq!(e.order_type_finite().unwrap(), 3);
        assert!(matches!(
            CodedOrder::omega().is_well_order_finite(),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn add_top_examples() {
        let e = CodedOrder::empty("e").add_top();
        assert_eq!(e.order_type_finite().unwrap(), 1);
        let c = CodedOrder::chain("c2", 2).add_top();
        assert_eq!(c.sorted_field().unwrap(), vec![0, 1, 2]);
        let w1 = CodedOrder::omega().add_top();
        let t = CodedOrder::omega().top_of_add_top();
        for x in w1.field_prefix(20) {
            if x != t {
                assert!(w1.less(x, t).unwrap());
            }
        }
        assert!(w1.is_linear(20).unwrap());
    }

    #[test]
    fn sum_examples() {
        let s = CodedOrder::sum_orders(&CodedOrder::empty("e"), &CodedOrder::chain("c2", 2));
        assert_eq!(s.order_type_finite().unwrap(), 2);
        let s = CodedOrder::sum_orders(&CodedOrder::chain("a", 2), &CodedOrder::chain("b", 3));
        assert_eq!(s.order_type_finite().unwrap(), 5);
        let s = CodedOrder::sum_orders(&CodedOrder::chain("a", 1), &CodedOrder::omega());
        let frag = s.field_prefix(12);
        assert!(s.is_linear(12).unwrap());
        let head = pair(0, 0).unwrap();
        for &x in &frag {
            if x != head {
                assert!(s.less(head, x).unwrap());
            }
        }
        for &x in &frag {
            let (tag, v) = CodedOrder::sum_tag(x);
            assert_eq!(pair(tag, v), Some(x));
        }
    }

    #[test]
    fn limit_elements() {
        let w1 = CodedOrder::omega().add_top();
        let t = CodedOrder::omega().top_of_add_top();
        assert!(w1.is_limit_element(t, 30).unwrap());
        assert!(!w1.is_limit_element(pair(0, 3).unwrap(), 30).unwrap());
        assert!(!w1.is_limit_element(pair(0, 0).unwrap(), 30).unwrap());
    }

    #[test]
    fn order_file_round_trip() {
        let src = "order a kind=finite\nchain 0 1 2\nend\n\
                   order b kind=explicit\n2 0\n0 1\n2 1\nend\n\
                   order w kind=omega\nend\n\
                   order s kind=sum\nleft a\nright w\nend\n";
        let orders = parse_order_file(src).unwrap();
        assert_eq!(orders.len(), 4);
        assert_eq!(orders[0].order_type_finite().unwrap(), 3);
        assert_eq!(orders[1].sorted_field().unwrap(), vec![2, 0, 1]);
        assert_eq!(orders[3].kind(), OrderKind::Sum);
        let again = parse_order_file(&orders[1].to_file_string()).unwrap();
        assert_eq!(again[0].pairs().unwrap(), orders[1].pairs().unwrap());
        let single = parse_order_file("order one kind=finite\nelem 0\nend\n").unwrap();
        assert_eq!(single[0].order_type_finite().unwrap(), 1);
    }
}
