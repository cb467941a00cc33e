//! Exact integer linear algebra and factorization: the layer every
//! finite-fiber quantity is computed in, with no floating point anywhere.

pub mod factor;
pub mod intmat;

pub use factor::{
    factorize, factorize_with_bound, log_of_factorization, p_length, PrimeFactorization,
};
pub use intmat::{
    bareiss_det, cokernel_order, rank_over_q, snf, CokernelOrder, IntMatrix, SnfResult,
};
