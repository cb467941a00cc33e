//! Orchestration: the four terms of the identity for one validated
//! instance, each by its own route, assembled into a report.
//!
//! The exact side (#Γ and the resultant cross-check) runs first and
//! survives any archimedean failure; numeric stages that fail leave their
//! term null and record the first failure. Stages run sequentially in a
//! fixed order and sum in a fixed order, so identical instances produce
//! identical numeric fields.

use crate::arith::{arith_c1c1, arith_c2_split, HermLineBundleArith, IntersectionLedger};
use crate::error::{Error, Result};
use crate::forms::bott_chern::{bott_chern_with_cutoff, BottChernResult, FamilyChoice};
use crate::forms::grid::ChartGrid;
use crate::forms::sequence::induced_metrics;
use crate::scheme::gamma_order;
use crate::verify::instance::InstanceSpec;
use crate::verify::report::{Diagnostics, RuntimesMs, VerificationReport};
use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::time::Instant;

/// Natural log of a positive integer of any size.
fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 53 {
        return x.to_f64().expect("fits in a double").ln();
    }
    let shift = (bits - 53) as usize;
    let top = (x >> shift).to_f64().expect("53-bit mantissa");
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

fn ms(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

/// ĉ₂ of the middle bundle through its orthogonal splitting, with the
/// summand sections chosen on disjoint divisors.
fn second_class(spec: &InstanceSpec, grid: &ChartGrid) -> Result<f64> {
    let la = HermLineBundleArith::with_canonical_section(spec.seq.mid[0].clone());
    let lb = HermLineBundleArith::with_marked_section(spec.seq.mid[1].clone());
    arith_c2_split(&la, &lb, spec.off_diagonal.as_ref(), grid)
}

/// ĉ₁(Ē₀)·ĉ₁(Ē₂) with the metrics induced by the sequence.
fn pairing_term(spec: &InstanceSpec, grid: &ChartGrid) -> Result<IntersectionLedger> {
    let (sub, quot) = induced_metrics(&spec.seq, grid)?;
    let l0 = HermLineBundleArith::with_canonical_section(sub);
    let l2 = HermLineBundleArith::with_marked_section(quot);
    arith_c1c1(&l0, &l2, grid)
}

/// Run the verification. Errors are returned only when the exact side
/// cannot be computed; archimedean failures yield a partial report.
pub fn verify(spec: &InstanceSpec) -> Result<VerificationReport> {
    let t_total = Instant::now();
    let mut times = RuntimesMs::default();
    let mut first_error: Option<Error> = None;

    let t = Instant::now();
    let gamma = gamma_order(&spec.phi)?;
    let res_mag =
        spec.phi.resultant_magnitude.clone().ok_or_else(|| {
            Error::Schema("instance scheme lost its resultant record".to_string())
        })?;
    let resultant_matches_gamma = gamma == res_mag;
    let rhs_log_gamma = ln_biguint(&gamma);
    times.exact = ms(t);

    let grid = ChartGrid::new(spec.grid.resolution);
    let half = ChartGrid::new(spec.grid.resolution / 2);

    let t = Instant::now();
    let lhs = second_class(spec, &grid).and_then(|v| {
        let vh = second_class(spec, &half)?;
        Ok((v, (v - vh).abs()))
    });
    let (lhs_c2, lhs_half_grid_delta) = match lhs {
        Ok((v, d)) => (Some(v), Some(d)),
        Err(e) => {
            first_error.get_or_insert(e);
            (None, None)
        }
    };
    times.second_class = ms(t);

    let t = Instant::now();
    let pairing = pairing_term(spec, &grid).and_then(|led| {
        let half_led = pairing_term(spec, &half)?;
        Ok((led, half_led))
    });
    let (rhs_c1c1, rhs_half_grid_delta, rhs_ledger) = match pairing {
        Ok((led, half_led)) => (
            Some(led.total),
            Some((led.total - half_led.total).abs()),
            Some(led),
        ),
        Err(e) => {
            first_error.get_or_insert(e);
            (None, None, None)
        }
    };
    times.pairing = ms(t);

    let t = Instant::now();
    let run = |family| -> Result<BottChernResult> {
        bott_chern_with_cutoff(&spec.seq, &grid, family, spec.grid.transgression_cutoff)
    };
    let transgression = run(FamilyChoice::A).and_then(|a| Ok((a, run(FamilyChoice::B)?)));
    let (rhs_bott_chern_integral, family_a, family_b, family_spread, ddc_residual, ch1_sup) =
        match transgression {
            Ok((a, b)) => (
                Some(a.reported_integral),
                Some(a.reported_integral),
                Some(b.reported_integral),
                Some((a.reported_integral - b.reported_integral).abs()),
                Some(a.ddc_residual.max(b.ddc_residual)),
                Some(a.ch1_sup.max(b.ch1_sup)),
            ),
            Err(e) => {
                first_error.get_or_insert(e);
                (None, None, None, None, None, None)
            }
        };
    times.transgression = ms(t);
    times.total = ms(t_total);

    let residual = match (lhs_c2, rhs_c1c1, rhs_bott_chern_integral) {
        (Some(lhs), Some(c1c1), Some(bc)) => Some(lhs - (c1c1 - bc + rhs_log_gamma)),
        _ => None,
    };
    let within_tolerance = residual.map(|r| r.abs() <= spec.grid.tolerance);

    Ok(VerificationReport {
        schema: crate::verify::instance::SCHEMA_VERSION,
        label: spec.label.clone(),
        seed: spec.seed,
        grid_resolution: spec.grid.resolution,
        tolerance: spec.grid.tolerance,
        lhs_c2,
        rhs_c1c1,
        rhs_bott_chern_integral,
        rhs_log_gamma,
        residual,
        within_tolerance,
        error: first_error.map(|e| e.to_string()),
        diagnostics: Diagnostics {
            gamma_order: gamma.to_string(),
            resultant_magnitude: res_mag.to_string(),
            resultant_matches_gamma,
            rhs_ledger,
            lhs_half_grid_delta,
            rhs_half_grid_delta,
            ddc_residual,
            ch1_sup,
            bott_chern_family_a: family_a,
            bott_chern_family_b: family_b,
            family_spread,
            runtimes_ms: times,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::instance::parse_instance;
    use std::f64::consts::LN_2;

    const SHIPPED: &str = r#"{
        "schema": 1,
        "base": "P1_Z",
        "label": "x0-2x1",
        "e1": {"twists": [0, 0], "metrics": ["flat", "flat"]},
        "e0": {"twist": -1, "injection": ["X0", "2*X1"]},
        "grid": {"resolution": 48}
    }"#;

    #[test]
    fn shipped_instance_closes_the_identity() {
        let spec = parse_instance(SHIPPED).unwrap();
        let r = verify(&spec).unwrap();
        assert!(r.error.is_none(), "{:?}", r.error);
        assert_eq!(r.diagnostics.gamma_order, "2");
        assert_eq!(r.diagnostics.resultant_magnitude, "2");
        assert!(r.diagnostics.resultant_matches_gamma);
        assert!((r.rhs_log_gamma - LN_2).abs() < 1e-15);
        assert_eq!(r.lhs_c2, Some(0.0));
        assert!((r.rhs_c1c1.unwrap() - (-0.5 - LN_2)).abs() < 1e-8);
        assert!((r.rhs_bott_chern_integral.unwrap() + 0.5).abs() < 1e-3);
        let res = r.residual.unwrap();
        assert!(res.abs() < 1e-3, "residual {res}");
        assert_eq!(r.residual, r.residual_recomputed());
        assert!(r.within_tolerance.unwrap());
        assert!(r.diagnostics.family_spread.unwrap() < 1e-12);
        assert!(r.diagnostics.ddc_residual.unwrap() < 1e-10);
        let led = r.diagnostics.rhs_ledger.as_ref().unwrap();
        assert!(led.finite_part.is_zero());
    }

    #[test]
    fn split_instance_vanishes_termwise() {
        let text = r#"{
            "schema": 1, "base": "P1_Z", "label": "split",
            "e1": {"twists": [0, 1], "metrics": ["flat", "fs"]},
            "e0": {"twist": 0, "injection": ["1", "0"]},
            "grid": {"resolution": 32}
        }"#;
        let spec = parse_instance(text).unwrap();
        let r = verify(&spec).unwrap();
        assert!(r.error.is_none(), "{:?}", r.error);
        assert_eq!(r.diagnostics.gamma_order, "1");
        assert_eq!(r.rhs_log_gamma, 0.0);
        assert_eq!(r.lhs_c2, Some(0.0));
        assert!(r.rhs_c1c1.unwrap().abs() < 1e-12);
        assert!(r.rhs_bott_chern_integral.unwrap().abs() < 1e-6);
        assert!(r.residual.unwrap().abs() < 1e-6);
    }

    #[test]
    fn declared_off_diagonal_blocks_only_the_second_class() {
        let text = SHIPPED.replace(
            "\"metrics\": [\"flat\", \"flat\"]",
            "\"metrics\": [\"flat\", \"flat\"], \"off_diagonal\": \"re(z)\"",
        );
        let spec = parse_instance(&text).unwrap();
        let r = verify(&spec).unwrap();
        assert!(r.error.unwrap().contains("orthogonal"));
        assert_eq!(r.lhs_c2, None);
        assert!(r.rhs_c1c1.is_some());
        assert!(r.rhs_bott_chern_integral.is_some());
        assert_eq!(r.residual, None);
        assert_eq!(r.within_tolerance, None);
        assert_eq!(r.diagnostics.gamma_order, "2");
    }

    #[test]
    fn node_level_metric_degeneracy_keeps_exact_fields() {
        // positive at the parse probes, negative near the real axis seam
        let text = r#"{
            "schema": 1, "base": "P1_Z", "label": "dented",
            "e1": {"twists": [0, 0], "metrics": [
                {"fs_scaled": {
                    "factor_z": "1 - 4.9 * (re(z) * (1 + abs2(z))^-1)^2",
                    "factor_w": "1 - 4.9 * (re(conj(w)) * (1 + abs2(w))^-1)^2"}},
                "flat"]},
            "e0": {"twist": -1, "injection": ["X0", "2*X1"]},
            "grid": {"resolution": 48}
        }"#;
        let spec = parse_instance(text).unwrap();
        let r = verify(&spec).unwrap();
        assert!(r.error.unwrap().contains("positive definite"));
        assert_eq!(r.lhs_c2, None);
        assert_eq!(r.rhs_c1c1, None);
        assert_eq!(r.rhs_bott_chern_integral, None);
        assert_eq!(r.diagnostics.gamma_order, "2");
        assert!(r.diagnostics.resultant_matches_gamma);
    }

    #[test]
    fn reports_are_deterministic_up_to_runtimes() {
        let spec = parse_instance(&SHIPPED.replace("48", "16")).unwrap();
        let strip = |r: &VerificationReport| {
            let mut v: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
            v["diagnostics"]["runtimes_ms"] = serde_json::Value::Null;
            v.to_string()
        };
        let a = strip(&verify(&spec).unwrap());
        let b = strip(&verify(&spec).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn big_gamma_logs_stay_accurate() {
        use num_bigint::BigUint;
        let g = BigUint::from(3u32).pow(200);
        let want = 200.0 * 3.0_f64.ln();
        assert!((ln_biguint(&g) - want).abs() < 1e-9 * want);
        assert_eq!(ln_biguint(&BigUint::from(1u32)), 0.0);
        assert_eq!(ln_biguint(&BigUint::from(2u32)), LN_2);
    }
}
