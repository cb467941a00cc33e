//! Arithmetic intersection theory on the projective line over Z.
//!
//! Finite fibers are handled exactly: intersection multiplicities come
//! from resultant valuations, never from floating point. The archimedean
//! fiber pairs Green currents of rational sections against curvature,
//! reduced to smooth quadratures plus closed-form Fubini-Study constants.

pub mod finite;
pub mod pairing;
pub mod roots;
pub mod sections;

pub use finite::{div_finite_intersection, rational_finite_part};
pub use pairing::{arith_c1c1, arith_c2_split, HermLineBundleArith, IntersectionLedger};
pub use roots::{durand_kerner, poly_gcd, roots_with_multiplicity, squarefree_decomposition};
pub use sections::{infinity, locate_z, RationalSection, SpherePoint};
