//! Linear groupoids `(Z_n, a + b·x + c·y)`: arithmetic, identity checking
//! and a catalog of identities with their coefficient conditions.
//!
//! The core is generic over the unsigned scalar width; the aliases below fix
//! it to `u64`, which is what the CLI and most callers want.

pub mod catalog;
pub mod engine;
pub mod groupoid;
pub mod modring;
pub mod termlang;

pub use engine::{CheckOptions, CheckOutcome, EngineError, Verdict};
pub use groupoid::{GroupoidError, LocalKind, Triple, Undefined};
pub use modring::{ModError, Scalar};
pub use termlang::{parse, parse_term, Eval, Identity, NaReason, ParseError, Term};

pub type Modulus = modring::Modulus<u64>;
pub type Residue = modring::Residue<u64>;
pub type LinearGroupoid = groupoid::LinearGroupoid<u64>;
pub type CayleyTable = groupoid::CayleyTable<u64>;
pub type AffineForm = termlang::AffineForm<u64>;
pub type Env = termlang::Env<u64>;
