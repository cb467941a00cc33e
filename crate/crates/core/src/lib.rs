//! Verification suite for an arithmetic Chern character identity on the
//! projective line over the integers.
//!
//! The library computes, by independent routes, the four terms of the
//! identity
//!
//! ```text
//! deg f_*(c2^(E1) ∩ [X]) = deg f_*(c1^(E0) c1^(E2) ∩ [X]) − ∫_{X(C)} c2~ + log #Γ
//! ```
//!
//! for a short sequence of hermitian bundles O(e) → O(a) ⊕ O(b) → O(a+b−e)
//! that is exact away from a zero-dimensional degeneracy scheme on finite
//! fibers, and checks the identity numerically:
//!
//! * exact integer layer: Smith normal form, Macaulay-truncation quotient
//!   orders, Koszul complexes, resultants (`exact`, `poly`, `scheme`);
//! * archimedean layer: Chern-Weil forms, second fundamental forms and
//!   Bott-Chern transgressions on the Riemann sphere (`forms`);
//! * arithmetic intersection numbers pairing the two (`arith`);
//! * orchestration, instance files, reports and selftests (`verify`).

pub mod arith;
pub mod error;
pub mod exact;
pub mod forms;
pub mod num;
pub mod poly;
pub mod scheme;
pub mod tolerances;
pub mod verify;

pub use error::Error;

/// Scalar used by the shipped binaries and fixtures. The numeric layer is
/// generic over [`num::Real`]; this alias is the concrete instantiation.
pub type Scalar = f64;

/// Complex scalar matching [`Scalar`].
pub type CScalar = num_complex::Complex<f64>;
