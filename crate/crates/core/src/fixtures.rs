//! The coded families shipped under `fixtures/`, compiled in.

use crate::calculus::CodedFamily;
use crate::error::{Error, Result};

const FILES: &[(&str, &str)] = &[
    ("empty", include_str!("../../../fixtures/empty.fam")),
    ("one", include_str!("../../../fixtures/one.fam")),
    ("chain2", include_str!("../../../fixtures/chain2.fam")),
    ("chain3", include_str!("../../../fixtures/chain3.fam")),
    ("cycle2", include_str!("../../../fixtures/cycle2.fam")),
];

pub fn names() -> Vec<&'static str> {
    FILES.iter().map(|(n, _)| *n).collect()
}

pub fn family(name: &str) -> Result<CodedFamily> {
    let (_, src) = FILES
        .iter()
        .find(|(n, _)| *n == name)
        .ok_or_else(|| Error::Unknown {
            kind: "fixture",
            name: name.to_string(),
        })?;
    CodedFamily::parse(src)
}

/// All shipped families, in a fixed order.
pub fn all() -> Result<Vec<(&'static str, CodedFamily)>> {
    FILES.iter().map(|(n, _)| Ok((*n, family(n)?))).collect()
}
