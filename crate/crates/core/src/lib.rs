//! Anyon model of the quantum double 𝒟(Q₈).
//!
//! Group tables and irreps ([`group`]), modular data and fusion ([`double`]),
//! Clebsch–Gordan and F/R data ([`recoupling`]), the printed braid generators
//! in exact arithmetic ([`braid`]), gate compilation ([`compiler`]) and the
//! noisy Shor-15 simulation ([`shor`]).

pub mod braid;
pub mod compiler;
pub mod double;
pub mod exact;
pub mod group;
pub mod matrix;
pub mod recoupling;
pub mod shor;

pub use exact::ExactScalar;
pub use matrix::ExactMatrix;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("Verlinde sum for {a} ⊗ {b} → {c} is not a non-negative integer: {value}")]
    Verlinde { a: String, b: String, c: String, value: f64 },
    #[error("{0} ⊗ {1} does not contain {2}")]
    NotAdmissible(String, String, String),
    #[error("negative projector weight {0} in Clebsch–Gordan diagonal")]
    NegativeRadicand(f64),
    #[error("unknown pairing {0}")]
    UnknownPairing(String),
    #[error("generator index {index} out of range for arity {arity}")]
    UnknownGenerator { arity: usize, index: usize },
    #[error("braid word mixes arities")]
    ArityMismatch,
    #[error("cannot parse braid word token {0:?}")]
    WordSyntax(String),
    #[error("generator σ{0} is singular; its inverse is undefined")]
    Singular(usize),
    #[error("state lost all weight at projection step {0}")]
    TotalLeakage(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}
