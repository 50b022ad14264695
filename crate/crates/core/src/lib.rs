//! Relativized ordinal notation systems over coded linear orders, and the
//! ω-logic machinery (proof search, infinitary derivations, Takeuti
//! embeddings) that consumes them.

pub mod calculus;
pub mod catalog;
pub mod cut;
pub mod derivation;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod hierarchy;
pub mod laws;
pub mod lifting;
pub mod notation;
pub mod order;
pub mod samples;
pub mod search;
pub mod suite;
pub mod takeuti;
pub mod term;
pub mod ti;
pub mod welim;

pub use derivation::{local_check, Certificate, DNode, Derivation};
pub use error::{Error, Result};
pub use hierarchy::{
    enumerate, iterate_g, make_derivative, make_exponential, make_veblen, omega_tower,
};
pub use notation::{Comparison, NotationSystem};
pub use order::{pair, unpair, CodedOrder};
pub use term::{BaseElt, Term};
