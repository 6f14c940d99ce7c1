//! Exact, desk-scale verification engine for power-set simplicial sets of
//! cosimplicial finite sets.
//!
//! The central pipeline: take a truncated cosimplicial finite set `X`, form the
//! levelwise power set `P(X)` (a truncated simplicial set), and certify that its
//! realization is discrete with `pi_0 = P(lim X)`. Everything is exact: finite
//! sets are canonical index ranges with explicit map tables, chain complexes run
//! over arbitrary-precision integers or prime fields, and every verdict is
//! backed by a checkable certificate (SNF transforms, coset tables, explicit
//! bijections).
//!
//! Module layout:
//! - [`fincat`]: finite sets/maps and their (co)limits, retracts of powers
//! - [`cosimplicial`] / [`simplicial`]: truncated diagram types and validators
//! - [`module`]: simplicial F_p-modules (linear shadows of the power set)
//! - [`matrix`], [`ring`], [`chains`]: exact linear algebra, SNF, homology, Moore complexes
//! - [`pi1`]: edge-path presentations, abelianization, coset-enumeration certificates
//! - [`boolean`]: p-Boolean rings, Stone duality, reflexive coequalizers, clopen algebras
//! - [`harness`]: the end-to-end discreteness verifier, corpus generator, reports

pub mod boolean;
pub mod chains;
pub mod cosimplicial;
pub mod fincat;
pub mod harness;
pub mod matrix;
pub mod module;
pub mod pi1;
pub mod ring;
pub mod simplicial;

/// Exact integer scalar used throughout integral homology.
pub type Int = num_bigint::BigInt;
/// Prime fields actually instantiated by the engine.
pub type F2 = ring::Fp<2>;
pub type F3 = ring::Fp<3>;
pub type F5 = ring::Fp<5>;
pub type F7 = ring::Fp<7>;
/// Integer matrices as consumed by the SNF layer.
pub type IntMat = matrix::SparseMat<Int>;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    /// Domain/codomain shapes do not line up.
    #[error("signature mismatch: {0}")]
    Signature(String),
    /// Data fails a construction precondition (bad table entry, non-prime modulus, ...).
    #[error("invalid input: {0}")]
    Invalid(String),
    /// Table sizes inconsistent with the declared levels; distinct from identity violations.
    #[error("structural error: {0}")]
    Structural(String),
    /// A level is too large to materialize its power set.
    #[error("level cap exceeded: level {level} has {size} elements (cap {cap})")]
    CapExceeded { level: usize, size: usize, cap: usize },
    /// Degree outside the reliable range of a truncated object.
    #[error("degree {degree} out of range for truncation {truncation}")]
    DegreeOutOfRange { degree: usize, truncation: usize },
    /// An enumeration would exceed its documented bound.
    #[error("enumeration bound exceeded: {0}")]
    BoundExceeded(String),
    #[error("unsupported prime: {0}")]
    UnsupportedPrime(u64),
}

pub type Result<T> = std::result::Result<T, Error>;
