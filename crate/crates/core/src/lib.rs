//! Exact constructions of mutually unbiased bases (MUBs) and generalized Bell
//! bases, with the finite-field, Galois-ring and projective-geometry machinery
//! behind them.
//!
//! All arithmetic is exact: amplitudes live in the cyclotomic integers
//! [`CyclotomicInt`] with a symbolic `1/√s` normalization, so every check
//! (orthonormality, unbiasedness, maximal entanglement, incidence axioms) is an
//! identity between integers or cyclotomic integers with no tolerance.

pub mod arith;
pub mod cli;
pub mod cyclotomic;
pub mod entangle;
pub mod error;
pub mod finite_field;
pub mod format;
pub mod galois_ring;
pub mod geometry;
pub mod matrix;
pub mod mub;
pub mod pauli;
mod render;

pub use cyclotomic::{cyclotomic_polynomial, CyclotomicInt, IntPolynomial};
pub use error::{Error, Result};
pub use finite_field::{find_modulus, FieldContext, FieldElement};
pub use galois_ring::{hensel_lift, QuotientRing, RingContext, RingElement};
pub use matrix::ExactMatrix;
pub use mub::{Basis, MubSet, StateVector};
