//! Crate-wide error surface. Variant names follow the failure modes the
//! public operations are contracted to report.

use num_bigint::BigUint;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Trial division ran out of candidates below the configured bound and
    /// the remaining cofactor is too large to be certified prime.
    #[error("factorization bound {bound} exceeded for {n}")]
    FactorBoundExceeded { n: BigUint, bound: u64 },

    /// Resultant elimination asked for a variable neither polynomial uses.
    #[error("both polynomials are constant in {var}")]
    BothConstantInVar { var: String },

    /// The rational rank certificate failed at the maximal Macaulay degree:
    /// the quotient is infinite over the rationals.
    #[error("quotient ring is not zero-dimensional over the rationals")]
    NotZeroDimensional,

    /// Macaulay orders never stabilized below the degree cap.
    #[error("quotient order did not stabilize below degree bound {cap}")]
    BoundExceeded { cap: usize },

    /// Two divisors share a component on the generic fiber (zero resultant).
    #[error("improper intersection: resultant of the two forms vanishes")]
    ImproperIntersection,

    /// Chart supports could not be certified disjoint.
    #[error("chart overlap ambiguous: {0}")]
    OverlapAmbiguous(String),

    /// A metric stopped being positive definite at a sample point.
    #[error("metric not positive definite at chart {chart} point ({re}, {im}): value {value}")]
    SingularMetric {
        chart: usize,
        re: f64,
        im: f64,
        value: f64,
    },

    /// The deformation metric on the total space lost positivity.
    #[error("family metric degenerates at chart {chart} z=({re}, {im}), |t|={tmod}")]
    FamilyDegenerate {
        chart: usize,
        re: f64,
        im: f64,
        tmod: f64,
    },

    /// Integration of a form whose degree does not match the space.
    #[error("form bidegree ({0}, {1}) is not top degree for this space")]
    DegreeMismatch(u8, u8),

    /// A direct-sum operation received data that is not block diagonal.
    #[error("bundle metric is not an orthogonal direct sum in the given frame")]
    NotSplit,

    /// Instance file malformed or violating an eagerly checked invariant.
    #[error("schema error: {0}")]
    Schema(String),

    /// Metric expression failed to parse or evaluate.
    #[error("expression error: {0}")]
    Expr(String),

    /// Complex root finder failed to converge to the requested residual.
    #[error("root finder did not converge: {0}")]
    RootsFailed(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
