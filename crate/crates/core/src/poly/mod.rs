//! Exact polynomial layer: sparse multivariate arithmetic over Z, binary
//! forms with formal degrees, Sylvester resultants, and truncated Macaulay
//! presentations used to compute orders of zero-dimensional quotients.

pub mod binary;
pub mod macaulay;
pub mod multipoly;
pub mod resultant;

pub use binary::{form_resultant, BinaryForm, FORM_VARS};
pub use macaulay::{macaulay_presentation, quotient_order, MacaulayPresentation};
pub use multipoly::{monomials_below, Monomial, MultiPoly};
pub use resultant::{resultant_bivariate, resultant_forms};
