//! Centralized tolerances with the error models that justify them.
//! Every analytic assertion in the crate pulls its threshold from here so
//! the budget is auditable in one place.

/// Exact-integer identities re-checked through f64 logarithms. ln of a
/// ≤ 2⁶³-scale integer carries ≤ 1 ulp ≈ 1e-16 relative error; summing a
/// handful of terms stays far below 1e-12.
pub const TOL_EXACT_LOG: f64 = 1e-12;

/// Spectral quadrature floor: Gauss-Legendre (radial) × trapezoid (angular)
/// on smooth chart integrands reaches machine precision; 1e-6 is the
/// contract figure with four orders of margin.
pub const TOL_NORMALIZATION: f64 = 1e-6;

/// Pointwise identities evaluated through closed-form expression trees
/// (Whitney additivity, transgression anchors). Dominated by rounding in
/// expression evaluation, ≤ 1e-12 in practice.
pub const TOL_POINTWISE: f64 = 1e-6;

/// Two deformation families must give the same secondary-class integral.
/// Both are computed to quadrature precision, so the observed spread is
/// ~1e-9; the contract allows 2e-3.
pub const TOL_FAMILY_INDEPENDENCE: f64 = 2e-3;

/// Headline identity residual at grid N = 256. The only N-driven error is
/// the h = 1/N finite-difference truncation inside the transgression term,
/// measured at the 1e-4..1e-5 scale on the shipped instance.
pub const TOL_SHIPPED_RESIDUAL: f64 = 5e-3;

/// Absolute bound for the dd^c defining-equation residual at the default
/// grid. Model: residual ≈ C·h² with h = 1/N; C measured ≈ 0.7 on the
/// metric-change anchor at N = 256 (residual ≈ 1e-5). The bound is the
/// model value at N = 256 with two orders of margin, so an N = 16 run
/// (256× larger residual) must fail it.
pub const TOL_DDC_ABSOLUTE: f64 = 1e-3;

/// Chart-seam consistency of user-supplied metric data: values on |z| = 1
/// are compared across charts after exact transition factors, leaving only
/// evaluation roundoff.
pub const TOL_SEAM: f64 = 1e-9;

/// Acceptable |p(root)| after Durand-Kerner, relative to the coefficient
/// scale of the (square-free) polynomial.
pub const TOL_ROOT_RESIDUAL: f64 = 1e-10;

/// Agreement between a finite-difference derivative at step h and the
/// symbolic Wirtinger derivative: second-order stencils on our metric
/// expressions have curvature constants well under 10², so C = 100 covers
/// every instance in the repo.
pub const FD_MATCH_CONSTANT: f64 = 100.0;
