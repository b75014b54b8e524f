//! Exact-arithmetic toolkit for polynomial realizations of dynamical portraits.
//!
//! A *portrait* is a set-map `P : {1,…,n} -> {1,…,n}`. A configuration of n
//! distinct affine points realizes `P` in degree d when some degree-d
//! polynomial sends each point to its image point. This crate decides which
//! portraits (and pairs of portraits) are realizable, computes the dimension
//! and degree of the associated moduli spaces, detects the combinatorial
//! obstructions that explain most empty ones, and counts the polynomial
//! endomorphisms of explicit configurations such as roots of unity.
//!
//! Everything is computed over Q with exact arithmetic: big rationals,
//! cyclotomic field elements, sparse multivariate polynomials, and a small
//! Buchberger engine with saturation, Krull dimension, and degree counts.

pub mod census;
pub mod combinat;
pub mod error;
pub mod exact;
pub mod gb;
pub mod interp;
pub mod moduli;
pub mod poly;
pub mod survey;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
