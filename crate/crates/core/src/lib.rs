//! Exact computational machinery for matrix groups over finite fields.
//!
//! The crate is organized around five subsystems:
//!
//! * [`ff`] — arithmetic in prime fields and their extensions, with Frobenius
//!   and subfield embeddings;
//! * [`matgrp`] — dense exact linear algebra, the truncated exp/log dictionary
//!   between nilpotents and unipotents, t-power maps, and finite matrix-group
//!   closure;
//! * [`envelope`] — Nori envelopes, acceptable pairs, point-level saturation
//!   closure, and Burnside irreducibility;
//! * [`rootdata`] — split root systems, Dynkin heights, Coxeter numbers and
//!   the related weight-condition checks;
//! * [`weilres`] — Weil-restriction embeddings from an extension field down to
//!   a base field;
//! * [`frobenius`] — exact checkers for Frobenius characteristic-polynomial
//!   tables (plainness, purity, mod-ell compatibility).

pub mod echelon;
pub mod envelope;
pub mod ff;
pub mod frobenius;
pub mod json;
pub mod matgrp;
pub mod poly;
pub mod rootdata;
pub mod weilres;

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus is reducible over F_{0}")]
    ReducibleModulus(u64),
    #[error("modulus degree {got} does not match requested degree {want}")]
    DegreeMismatch { want: usize, got: usize },
    #[error("field with {0} elements exceeds the supported maximum of 2^20")]
    FieldTooLarge(u128),
    #[error("no embedding: source degree {src} does not divide target degree {dst}")]
    NoEmbedding { src: usize, dst: usize },
    #[error("characteristic {ell} too small for dimension {n} (need ell > {bound})")]
    CharTooSmall { ell: u64, n: usize, bound: usize },
    #[error("matrix is not nilpotent")]
    NotNilpotent,
    #[error("matrix is not unipotent")]
    NotUnipotent,
    #[error("generator is singular")]
    SingularGenerator,
    #[error("group closure exceeded the cap of {0} elements")]
    OrderCapExceeded(usize),
    #[error("field mismatch between operands")]
    FieldMismatch,
    #[error("dimension mismatch between operands")]
    DimensionMismatch,
    #[error("nilpotent enumeration budget exceeded")]
    EnumerationBudgetExceeded,
    #[error("invalid root-system type/rank: {0}")]
    InvalidType(String),
    #[error("weight is not dominant")]
    NotDominant,
    #[error("weight does not live in the system's weight lattice: {0}")]
    WeightLatticeMismatch(String),
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("operation requires a polynomial over the rationals")]
    WrongField,
    #[error("number-field minimal polynomial is not squarefree")]
    DegenerateField,
    #[error("coefficient denominator divisible by ell = {0}")]
    BadDenominator(u64),
    #[error("ell equals the characteristic p = {0}")]
    EllEqualsP(u64),
    #[error("root finding did not converge within tolerance: {0}")]
    RootFindingFailure(String),
    #[error("malformed input: {0}")]
    MalformedInput(String),
    #[error("unknown table entry: {0}")]
    UnknownEntry(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub use ff::{embedding, field_create, Embedding, Field, FieldElem, FieldSpec};
pub use matgrp::{FiniteMatrixGroup, SquareMatrix};
pub use poly::FieldPoly;
