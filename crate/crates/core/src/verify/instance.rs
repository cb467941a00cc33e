//! Instance files: JSON descriptions of a metrized short sequence on the
//! projective line over Z, validated eagerly so that every later stage
//! works with coherent data.
//!
//! Schema (version 1), integers that can grow live inside strings:
//!
//! ```text
//! {
//!   "schema": 1,
//!   "base": "P1_Z",
//!   "label": "x0-2x1",
//!   "e1": {
//!     "twists": [a, b],
//!     "metrics": [<metric>, <metric>],
//!     "off_diagonal": null | "<expression in z>"
//!   },
//!   "e0": { "twist": e, "injection": ["<form of degree a-e>", "<form of degree b-e>"] },
//!   "grid": { "resolution": N, "tolerance": t, "transgression_cutoff": R }
//! }
//! ```
//!
//! A metric is `"fs"`, `"flat"` (twist 0 only), or
//! `{"fs_scaled": {"factor_z": "<expr in z>", "factor_w": "<expr in w>"}}`
//! with smooth positive factors satisfying factor_w(w) = factor_z(1/w).
//! Absent `off_diagonal` declares the middle metric an orthogonal sum; a
//! nonzero entry is carried through and makes the second-class computation
//! refuse, it is never silently dropped.

use crate::error::{Error, Result};
use crate::forms::bundle::{ChartId, HermBundle};
use crate::forms::expr::CExpr;
use crate::forms::sequence::ExactSeqData;
use crate::num::Cx;
use crate::poly::BinaryForm;
use crate::scheme::FiniteSchemeData;
use crate::tolerances::TOL_SEAM;
use serde::Deserialize;

pub const SCHEMA_VERSION: u64 = 1;
pub const BASE_TAG: &str = "P1_Z";

/// Numerical resolution block; absent fields take the shipped defaults.
#[derive(Clone, Copy, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridSpec {
    #[serde(default = "default_resolution")]
    pub resolution: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default = "default_cutoff")]
    pub transgression_cutoff: f64,
}

fn default_resolution() -> usize {
    256
}

fn default_tolerance() -> f64 {
    5e-3
}

fn default_cutoff() -> f64 {
    12.0
}

impl Default for GridSpec {
    fn default() -> Self {
        GridSpec {
            resolution: default_resolution(),
            tolerance: default_tolerance(),
            transgression_cutoff: default_cutoff(),
        }
    }
}

/// A validated instance: the sequence with its middle metrics, the exact
/// degeneracy scheme, and the resolution parameters.
#[derive(Clone, Debug)]
pub struct InstanceSpec {
    pub label: String,
    /// Provenance tag for generated instances; never consumed.
    pub seed: Option<u64>,
    pub seq: ExactSeqData,
    pub phi: FiniteSchemeData,
    /// Off-diagonal entry of the declared middle metric, if any.
    pub off_diagonal: Option<CExpr>,
    pub grid: GridSpec,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    schema: u64,
    base: String,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    seed: Option<u64>,
    e1: RawMiddle,
    e0: RawSub,
    #[serde(default)]
    grid: Option<GridSpec>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMiddle {
    twists: [i32; 2],
    metrics: [RawMetric; 2],
    #[serde(default)]
    off_diagonal: Option<String>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawMetric {
    Named(String),
    Scaled { fs_scaled: RawFactors },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawFactors {
    factor_z: String,
    factor_w: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSub {
    twist: i32,
    injection: [String; 2],
}

fn build_metric(twist: i32, raw: &RawMetric) -> Result<HermBundle> {
    let bundle = match raw {
        RawMetric::Named(name) => match name.as_str() {
            "fs" => HermBundle::fubini_study(twist),
            "flat" => {
                if twist != 0 {
                    return Err(Error::Schema(format!(
                        "flat metric glues only on O(0), not O({twist})"
                    )));
                }
                HermBundle::flat()
            }
            other => {
                return Err(Error::Schema(format!(
                    "unknown metric \"{other}\"; use \"fs\", \"flat\" or fs_scaled"
                )))
            }
        },
        RawMetric::Scaled { fs_scaled } => {
            let fz = CExpr::parse(&fs_scaled.factor_z, "z")
                .map_err(|e| Error::Schema(format!("factor_z: {e}")))?;
            let fw = CExpr::parse(&fs_scaled.factor_w, "w")
                .map_err(|e| Error::Schema(format!("factor_w: {e}")))?;
            HermBundle::fs_scaled(twist, fz, fw)
        }
    };
    for chart in ChartId::BOTH {
        for p in [Cx::new(0.0, 0.0), Cx::new(0.5, 0.0), Cx::new(-0.3, 0.7)] {
            bundle.weight(chart, p)?;
        }
    }
    let seam = bundle.seam_mismatch();
    // NaN must land on the error branch, so keep the comparison positive
    let glued = seam < TOL_SEAM;
    if !glued {
        return Err(Error::Schema(format!(
            "metric charts disagree on the overlap (relative defect {seam:.3e})"
        )));
    }
    Ok(bundle)
}

/// Parse and validate an instance document. Every declared invariant is
/// checked here: schema tag, degree bookkeeping, metric gluing and
/// positivity probes, nonzero resultant, coprime contents.
pub fn parse_instance(text: &str) -> Result<InstanceSpec> {
    let raw: RawInstance =
        serde_json::from_str(text).map_err(|e| Error::Schema(format!("instance JSON: {e}")))?;
    if raw.schema != SCHEMA_VERSION {
        return Err(Error::Schema(format!(
            "schema version {} (this build reads {SCHEMA_VERSION})",
            raw.schema
        )));
    }
    if raw.base != BASE_TAG {
        return Err(Error::Schema(format!(
            "base \"{}\" (this suite computes on {BASE_TAG})",
            raw.base
        )));
    }

    let grid = raw.grid.unwrap_or_default();
    if !(8..=4096).contains(&grid.resolution) {
        return Err(Error::Schema(format!(
            "grid resolution {} outside 8..=4096",
            grid.resolution
        )));
    }
    if !(grid.tolerance.is_finite() && grid.tolerance > 0.0) {
        return Err(Error::Schema(format!(
            "tolerance {} is not a positive real",
            grid.tolerance
        )));
    }
    if !(4.0..=40.0).contains(&grid.transgression_cutoff) {
        return Err(Error::Schema(format!(
            "transgression cutoff {} outside 4..=40",
            grid.transgression_cutoff
        )));
    }

    let e = raw.e0.twist;
    let mut mids = Vec::with_capacity(2);
    let mut sections = Vec::with_capacity(2);
    for i in 0..2 {
        let a = raw.e1.twists[i];
        let want = i64::from(a) - i64::from(e);
        if want < 0 {
            return Err(Error::Schema(format!(
                "no nonzero maps O({e}) -> O({a}): injection degree would be {want}"
            )));
        }
        mids.push(build_metric(a, &raw.e1.metrics[i])?);
        sections.push(BinaryForm::parse(&raw.e0.injection[i], want as usize)?);
    }
    let seq = ExactSeqData::new(
        e,
        [mids[0].clone(), mids[1].clone()],
        [sections[0].clone(), sections[1].clone()],
    )?;
    let phi = FiniteSchemeData::from_sections(&seq.sections[0], &seq.sections[1])?;

    let off_diagonal = match &raw.e1.off_diagonal {
        Some(text) => {
            Some(CExpr::parse(text, "z").map_err(|e| Error::Schema(format!("off_diagonal: {e}")))?)
        }
        None => None,
    };

    Ok(InstanceSpec {
        label: raw.label.unwrap_or_else(|| "unnamed".to_string()),
        seed: raw.seed,
        seq,
        phi,
        off_diagonal,
        grid,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    const SHIPPED: &str = r#"{
        "schema": 1,
        "base": "P1_Z",
        "label": "x0-2x1",
        "e1": {"twists": [0, 0], "metrics": ["flat", "flat"]},
        "e0": {"twist": -1, "injection": ["X0", "2*X1"]},
        "grid": {"resolution": 64, "tolerance": 0.005, "transgression_cutoff": 12.0}
    }"#;

    #[test]
    fn shipped_text_parses_and_validates() {
        let spec = parse_instance(SHIPPED).unwrap();
        assert_eq!(spec.label, "x0-2x1");
        assert_eq!(spec.seq.sub_twist, -1);
        assert_eq!(spec.seq.quotient_twist(), 1);
        assert_eq!(spec.grid.resolution, 64);
        assert_eq!(spec.phi.resultant_magnitude, Some(BigUint::from(2u32)));
        assert!(spec.off_diagonal.is_none());
    }

    #[test]
    fn defaults_fill_missing_grid_and_label() {
        let text = r#"{
            "schema": 1, "base": "P1_Z",
            "e1": {"twists": [1, 1], "metrics": ["fs", "fs"]},
            "e0": {"twist": 0, "injection": ["X0 - 2*X1", "X0 + 2*X1"]}
        }"#;
        let spec = parse_instance(text).unwrap();
        assert_eq!(spec.label, "unnamed");
        assert_eq!(spec.grid.resolution, 256);
        assert_eq!(spec.grid.tolerance, 5e-3);
        assert_eq!(spec.grid.transgression_cutoff, 12.0);
    }

    #[test]
    fn common_zero_on_the_generic_fiber_is_improper() {
        let text = SHIPPED.replace("2*X1", "X0");
        assert!(matches!(
            parse_instance(&text),
            Err(Error::ImproperIntersection)
        ));
    }

    #[test]
    fn shared_content_is_a_vertical_component() {
        let text = SHIPPED.replace("\"X0\"", "\"2*X0\"");
        assert!(matches!(
            parse_instance(&text),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn malformed_documents_are_schema_errors() {
        for text in [
            "",
            "{}",
            "{\"schema\": 2}",
            &SHIPPED.replace("P1_Z", "P2_Z"),
            &SHIPPED.replace("\"schema\": 1", "\"schema\": 7"),
            &SHIPPED.replace("\"resolution\": 64", "\"resolution\": 4"),
            &SHIPPED.replace("0.005", "-1.0"),
            &SHIPPED.replace("12.0", "100.0"),
            &SHIPPED.replace("[\"flat\", \"flat\"]", "[\"fancy\", \"flat\"]"),
            &SHIPPED.replace("\"twist\": -1", "\"twist\": 1"),
        ] {
            assert!(
                matches!(parse_instance(text), Err(Error::Schema(_))),
                "accepted: {text}"
            );
        }
    }

    #[test]
    fn flat_metric_requires_twist_zero() {
        let text = r#"{
            "schema": 1, "base": "P1_Z",
            "e1": {"twists": [1, 0], "metrics": ["flat", "flat"]},
            "e0": {"twist": 0, "injection": ["X0", "1"]}
        }"#;
        assert!(matches!(parse_instance(text), Err(Error::Schema(_))));
    }

    #[test]
    fn scaled_factors_must_glue_across_the_seam() {
        let good = r#"{
            "schema": 1, "base": "P1_Z",
            "e1": {"twists": [1, 1], "metrics": [
                {"fs_scaled": {"factor_z": "exp(re(z) * (1 + abs2(z))^-1)",
                                "factor_w": "exp(re(conj(w)) * (1 + abs2(w))^-1)"}},
                "fs"]},
            "e0": {"twist": 0, "injection": ["X0", "X1"]}
        }"#;
        let spec = parse_instance(good).unwrap();
        assert_eq!(spec.seq.mid[0].twist, 1);

        let bad = good.replace("exp(re(conj(w)) * (1 + abs2(w))^-1)", "1");
        assert!(matches!(parse_instance(&bad), Err(Error::Schema(_))));

        let unparsable = good.replace("abs2(z)", "abs2(z");
        assert!(parse_instance(&unparsable).is_err());
    }

    #[test]
    fn off_diagonal_entry_is_kept() {
        let text = SHIPPED.replace(
            "\"metrics\": [\"flat\", \"flat\"]",
            "\"metrics\": [\"flat\", \"flat\"], \"off_diagonal\": \"re(z)\"",
        );
        let spec = parse_instance(&text).unwrap();
        assert!(spec.off_diagonal.is_some());
    }

    #[test]
    fn negative_probe_weight_is_singular() {
        let text = r#"{
            "schema": 1, "base": "P1_Z",
            "e1": {"twists": [0, 0], "metrics": [
                {"fs_scaled": {"factor_z": "re(z)", "factor_w": "re(conj(w)^-1)"}},
                "flat"]},
            "e0": {"twist": -1, "injection": ["X0", "2*X1"]}
        }"#;
        assert!(matches!(
            parse_instance(text),
            Err(Error::SingularMetric { .. })
        ));
    }
}
