//! Whittaker Kazhdan-Lusztig polynomials and character formulas.
//!
//! The pipeline runs root system → Weyl group → right `W_Θ`-cosets and
//! integral models → Kazhdan-Lusztig bases → character formulas, all in exact
//! arithmetic. [`oracle`] holds slow, independent re-derivations used for
//! verification.

pub mod charformula;
pub mod cosetlab;
pub mod hecke;
pub mod klengine;
pub mod laurent;
pub mod oracle;
pub mod rootsystem;
pub mod weylgroup;

pub use laurent::LaurentPoly;
pub use rootsystem::{CorootValue, RootSystem, Weight};
pub use weylgroup::{WeylElt, WeylGroup};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid root system: {0}")]
    InvalidType(String),
    #[error("rank mismatch: expected {expected}, got {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("Weyl group exceeds the cap of {0} elements")]
    GroupTooLarge(usize),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("cannot combine elements of different module spaces ({0} vs {1})")]
    SpaceMismatch(String, String),
    #[error("invariant violated: {0}")]
    Invariant(String),
}
