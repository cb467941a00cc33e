//! Arithmetic intersection numbers of metrized line bundles on the
//! projective line over Z: exact finite-fiber lengths plus archimedean
//! Green-current terms, decomposed in a ledger.
//!
//! The archimedean part is evaluated against the Fubini-Study reference.
//! With ψ = log(φ·(1+|z|²)^n), a smooth global function for every smooth
//! metric φ on O(n), the Green function of div σ₂ splits into FS point
//! Green functions plus ψ₂ and a constant, and the singular integrals
//! reduce to the closed forms ∫ log|z−a|² ω_FS = log(1+|a|²) and
//! ∫ g_x ω_FS = 1. Everything left for quadrature is smooth:
//! Q₁ = ∫ ψ₀ ω_FS and Q₂ = ∫ ψ₂ c₁(L̄₀).

use crate::arith::finite::rational_finite_part;
use crate::arith::sections::{RationalSection, SpherePoint};
use crate::error::{Error, Result};
use crate::forms::bundle::{ChartId, HermBundle};
use crate::forms::expr::CExpr;
use crate::forms::grid::{p1_integral, ChartGrid};
use crate::num::Cx;
use crate::scheme::ZeroCycleOnS;
use serde::Serialize;
use std::f64::consts::PI;

/// A metrized twisting sheaf with a designated rational section whose
/// divisor anchors the intersection.
pub struct HermLineBundleArith {
    pub twist: i32,
    pub metric: HermBundle,
    pub section: RationalSection,
}

impl HermLineBundleArith {
    pub fn new(metric: HermBundle, section: RationalSection) -> Result<Self> {
        if metric.twist != section.twist() {
            return Err(Error::Schema(format!(
                "section of degree {} on O({})",
                section.twist(),
                metric.twist
            )));
        }
        Ok(HermLineBundleArith {
            twist: metric.twist,
            metric,
            section,
        })
    }

    /// X₀-power section.
    pub fn with_canonical_section(metric: HermBundle) -> Self {
        let section = RationalSection::canonical(metric.twist);
        Self::new(metric, section).expect("canonical section matches any twist")
    }

    /// (X₀−X₁)-power section, divisor disjoint from the canonical one.
    pub fn with_marked_section(metric: HermBundle) -> Self {
        let section = RationalSection::canonical_alt(metric.twist);
        Self::new(metric, section).expect("marked section matches any twist")
    }

    /// log ‖σ(x)‖ in x's chart.
    fn log_norm_at(&self, pt: SpherePoint) -> Result<f64> {
        let a = self.section.log_abs_at(pt)?;
        let w = self.metric.weight(pt.0, pt.1)?;
        Ok(a + 0.5 * w.ln())
    }

    /// ψ(x) = log(φ(x)·(1+|x|²)^twist), smooth and chart-independent.
    fn psi_at(&self, pt: SpherePoint) -> Result<f64> {
        let w = self.metric.weight(pt.0, pt.1)?;
        Ok(w.ln() + f64::from(self.twist) * (1.0 + pt.1.norm_sqr()).ln())
    }
}

/// f_*(ĉ₁·ĉ₁ ∩ [X]) decomposed by place: exact finite lengths, point
/// evaluations on the complex fiber, and the smooth integral remainder.
#[derive(Serialize)]
pub struct IntersectionLedger {
    pub finite_part: ZeroCycleOnS,
    pub archimedean_point_part: f64,
    pub archimedean_integral_part: f64,
    pub total: f64,
}

fn fs_density(p: Cx<f64>) -> f64 {
    let s = 1.0 + p.norm_sqr();
    1.0 / (PI * s * s)
}

pub fn arith_c1c1(
    l0: &HermLineBundleArith,
    l2: &HermLineBundleArith,
    grid: &ChartGrid,
) -> Result<IntersectionLedger> {
    // generic-fiber disjointness of all four divisor pairs, then exact lengths
    let finite_part = rational_finite_part(&l0.section, &l2.section)?;
    for chart in ChartId::BOTH {
        for (p, _) in grid.nodes() {
            l0.metric.weight(chart, p)?;
            l2.metric.weight(chart, p)?;
        }
    }

    let div2 = l2.section.divisor()?;
    let mut archimedean_point_part = 0.0;
    let mut psi0_on_div2 = 0.0;
    for &(pt, m) in &div2 {
        archimedean_point_part += m as f64 * -l0.log_norm_at(pt)?;
        psi0_on_div2 += m as f64 * l0.psi_at(pt)?;
    }

    let n0 = f64::from(l0.twist);
    let n2 = f64::from(l2.twist);
    let psi = |b: &HermLineBundleArith, chart: ChartId| {
        let n = f64::from(b.twist);
        let metric = b.metric.clone();
        move |p: Cx<f64>| {
            let w = metric.weight(chart, p).expect("validated on grid nodes");
            w.ln() + n * (1.0 + p.norm_sqr()).ln()
        }
    };
    let q1 = {
        let (fz, fw) = (psi(l0, ChartId::Z), psi(l0, ChartId::W));
        p1_integral(
            grid,
            move |p| fz(p) * fs_density(p),
            move |p| fw(p) * fs_density(p),
        )
    };
    let q2 = {
        let (fz, fw) = (psi(l2, ChartId::Z), psi(l2, ChartId::W));
        let (m0z, m0w) = (l0.metric.clone(), l0.metric.clone());
        p1_integral(
            grid,
            move |p| fz(p) * m0z.curvature_density(ChartId::Z, p),
            move |p| fw(p) * m0w.curvature_density(ChartId::W, p),
        )
    };

    let lc = l2.section.leading_log_ratio();
    let phi_sum: f64 = l2
        .section
        .z_roots_signed()?
        .iter()
        .map(|(r, m)| *m as f64 * 0.5 * (1.0 + r.norm_sqr()).ln())
        .sum();
    let archimedean_integral_part =
        0.5 * (n0 * n2 - n2 * q1 + psi0_on_div2 - q2) + n0 * (-lc - phi_sum);

    let total = finite_part.degree_log() + archimedean_point_part + archimedean_integral_part;
    Ok(IntersectionLedger {
        finite_part,
        archimedean_point_part,
        archimedean_integral_part,
        total,
    })
}

/// ĉ₂ of an orthogonal sum of two metrized lines: the Whitney identity
/// collapses it to the mixed ĉ₁·ĉ₁ pairing. The off-diagonal metric entry
/// of the ambient rank-2 frame must vanish identically.
pub fn arith_c2_split(
    l: &HermLineBundleArith,
    m: &HermLineBundleArith,
    off_diag: Option<&CExpr>,
    grid: &ChartGrid,
) -> Result<f64> {
    if let Some(e) = off_diag {
        let sup = grid
            .nodes()
            .iter()
            .map(|(p, _)| e.eval(*p).norm())
            .fold(0.0, f64::max);
        if sup > 0.0 {
            return Err(Error::NotSplit);
        }
    }
    Ok(arith_c1c1(l, m, grid)?.total)
}
