//! Verification reports: the four terms of the identity, the residual
//! recomputable from them, and diagnostics. Serialization is deterministic
//! except for the measured runtimes, which are data about the run, not
//! about the instance.

use crate::arith::IntersectionLedger;
use serde::Serialize;

/// Wall-clock milliseconds per stage; excluded from determinism claims.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct RuntimesMs {
    pub exact: u64,
    pub second_class: u64,
    pub pairing: u64,
    pub transgression: u64,
    pub total: u64,
}

/// Everything measured alongside the four terms. The transgression is
/// reported from family A; family B enters through the spread.
#[derive(Serialize)]
pub struct Diagnostics {
    /// #Γ as a decimal string, exact.
    pub gamma_order: String,
    /// |Res(s₁, s₂)| as a decimal string, exact.
    pub resultant_magnitude: String,
    /// The independent order computation agrees with the resultant.
    pub resultant_matches_gamma: bool,
    /// Full place-by-place decomposition of the ĉ₁ĉ₁ term.
    pub rhs_ledger: Option<IntersectionLedger>,
    /// |value(N) − value(N/2)| for the second-class term.
    pub lhs_half_grid_delta: Option<f64>,
    /// |value(N) − value(N/2)| for the ĉ₁ĉ₁ term.
    pub rhs_half_grid_delta: Option<f64>,
    /// Sup-norm residual of dd^c ch̃ against the curvature alternating sum.
    pub ddc_residual: Option<f64>,
    /// Sup norm of the degree-1 transgression, identically zero in exact
    /// arithmetic for induced metrics.
    pub ch1_sup: Option<f64>,
    pub bott_chern_family_a: Option<f64>,
    pub bott_chern_family_b: Option<f64>,
    /// |family A − family B| of the reported transgression integral.
    pub family_spread: Option<f64>,
    pub runtimes_ms: RuntimesMs,
}

/// Report of one verification run. Term fields are null when their stage
/// failed; the exact fields survive any archimedean failure.
#[derive(Serialize)]
pub struct VerificationReport {
    pub schema: u64,
    pub label: String,
    pub seed: Option<u64>,
    pub grid_resolution: usize,
    pub tolerance: f64,
    /// Second arithmetic Chern class of the split middle bundle.
    pub lhs_c2: Option<f64>,
    /// ĉ₁(Ē₀)·ĉ₁(Ē₂) with the induced metrics.
    pub rhs_c1c1: Option<f64>,
    /// Transgression integral entering the identity.
    pub rhs_bott_chern_integral: Option<f64>,
    /// log #Γ of the degeneracy scheme.
    pub rhs_log_gamma: f64,
    /// lhs_c2 − (rhs_c1c1 − rhs_bott_chern_integral + rhs_log_gamma).
    pub residual: Option<f64>,
    pub within_tolerance: Option<bool>,
    /// Display form of the first stage failure, if any.
    pub error: Option<String>,
    pub diagnostics: Diagnostics,
}

impl VerificationReport {
    /// The identity residual rebuilt from the four term fields; must equal
    /// the stored residual bitwise.
    pub fn residual_recomputed(&self) -> Option<f64> {
        match (self.lhs_c2, self.rhs_c1c1, self.rhs_bott_chern_integral) {
            (Some(lhs), Some(c1c1), Some(bc)) => Some(lhs - (c1c1 - bc + self.rhs_log_gamma)),
            _ => None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }

    /// Human-readable rendering, one line per term with its provenance.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let d = &self.diagnostics;
        let fmt = |v: Option<f64>| match v {
            Some(x) => format!("{x:+.12e}"),
            None => "failed".to_string(),
        };
        let est = |v: Option<f64>| match v {
            Some(x) => format!("{x:.2e}"),
            None => "n/a".to_string(),
        };
        out.push_str(&format!(
            "instance {}  (grid N={}, tolerance {:.1e})\n",
            self.label, self.grid_resolution, self.tolerance
        ));
        out.push_str(&format!(
            "  lhs_c2                  = {}  [quadrature, half-grid delta {}]\n",
            fmt(self.lhs_c2),
            est(d.lhs_half_grid_delta)
        ));
        let finite = d
            .rhs_ledger
            .as_ref()
            .map(|l| l.finite_part.degree_log())
            .unwrap_or(f64::NAN);
        out.push_str(&format!(
            "  rhs_c1c1                = {}  [quadrature + exact finite part {finite:.6e}, half-grid delta {}]\n",
            fmt(self.rhs_c1c1),
            est(d.rhs_half_grid_delta)
        ));
        out.push_str(&format!(
            "  rhs_bott_chern_integral = {}  [quadrature, family A; spread vs B {}]\n",
            fmt(self.rhs_bott_chern_integral),
            est(d.family_spread)
        ));
        out.push_str(&format!(
            "  rhs_log_gamma           = {:+.12e}  [exact, #Gamma = {}]\n",
            self.rhs_log_gamma, d.gamma_order
        ));
        out.push_str(&format!(
            "  residual                = {}",
            fmt(self.residual)
        ));
        match self.within_tolerance {
            Some(true) => out.push_str("  (within tolerance)\n"),
            Some(false) => out.push_str("  (EXCEEDS tolerance)\n"),
            None => out.push('\n'),
        }
        out.push_str(&format!(
            "  resultant cross-check   = |Res| {} {} #Gamma\n",
            d.resultant_magnitude,
            if d.resultant_matches_gamma {
                "=="
            } else {
                "!="
            }
        ));
        if let Some(err) = &self.error {
            out.push_str(&format!("  error: {err}\n"));
        }
        out
    }
}
