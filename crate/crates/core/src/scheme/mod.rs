//! Finite schemes over Spec Z: Koszul complexes, chart-by-chart orders of
//! the intersection scheme on P¹_Z, and zero cycles with their log degree.

pub mod cycle;
pub mod gamma;
pub mod koszul;

pub use cycle::{degree_log, Rat, ZeroCycleOnS};
pub use gamma::{gamma_order, Chart, FiniteSchemeData};
pub use koszul::{koszul, localized_chern_pushforward, KoszulComplex, PolyMatrix};
