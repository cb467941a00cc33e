//! Metrized bundles on P¹ described by positive chart weights, their
//! Chern-Weil curvature, and forms sampled on the covering grids.

use crate::error::{Error, Result};
use crate::forms::expr::CExpr;
use crate::forms::grid::ChartGrid;
use crate::num::{pairwise_sum, Cx};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use std::f64::consts::PI;

/// The two standard affine charts: z = X0/X1 and w = X1/X0.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ChartId {
    Z,
    W,
}

impl ChartId {
    pub const BOTH: [ChartId; 2] = [ChartId::Z, ChartId::W];

    pub fn index(self) -> usize {
        match self {
            ChartId::Z => 0,
            ChartId::W => 1,
        }
    }

    pub fn var(self) -> &'static str {
        match self {
            ChartId::Z => "z",
            ChartId::W => "w",
        }
    }
}

/// Metric on O(n) as a pair of weights: ‖s‖² = |f_chart|² φ_chart for a
/// section with chart polynomials f_chart. The transition cocycle of O(n)
/// makes the weights glue by φ_w(w) = |w|^(−2n) φ_z(1/w) on the overlap.
/// Higher rank enters only as orthogonal sums of these.
#[derive(Clone, Debug)]
pub struct HermBundle {
    pub twist: i32,
    weights: [CExpr; 2],
    /// Cached symbolic ∂∂̄ log φ per chart.
    lap_log: [CExpr; 2],
}

impl HermBundle {
    pub fn new(twist: i32, weight_z: CExpr, weight_w: CExpr) -> HermBundle {
        let lap = |e: &CExpr| e.ln().d_zbar().d_z();
        HermBundle {
            twist,
            lap_log: [lap(&weight_z), lap(&weight_w)],
            weights: [weight_z, weight_w],
        }
    }

    /// Fubini-Study power: weight (1 + |ζ|²)^(−n) in both charts.
    pub fn fubini_study(twist: i32) -> HermBundle {
        let w = CExpr::real(1.0).add(&CExpr::var().abs2()).intpow(-twist);
        HermBundle::new(twist, w.clone(), w)
    }

    /// Trivial bundle with the flat metric.
    pub fn flat() -> HermBundle {
        HermBundle::new(0, CExpr::real(1.0), CExpr::real(1.0))
    }

    /// Fubini-Study power rescaled by smooth positive conformal factors,
    /// one expression per chart so nothing is ever evaluated at 1/w with
    /// w = 0. Gluing requires factor_w(w) = factor_z(1/w); see
    /// [`HermBundle::seam_mismatch`].
    pub fn fs_scaled(twist: i32, factor_z: CExpr, factor_w: CExpr) -> HermBundle {
        let fs = |e: CExpr| {
            CExpr::real(1.0)
                .add(&CExpr::var().abs2())
                .intpow(-twist)
                .mul(&e)
        };
        HermBundle::new(twist, fs(factor_z), fs(factor_w))
    }

    pub fn weight_expr(&self, chart: ChartId) -> &CExpr {
        &self.weights[chart.index()]
    }

    /// Weight value, required finite, real, and strictly positive.
    pub fn weight(&self, chart: ChartId, p: Cx<f64>) -> Result<f64> {
        let v = self.weights[chart.index()].eval(p);
        let ok = v.re.is_finite() && v.re > 0.0 && v.im.abs() <= 1e-9 * (1.0 + v.re.abs());
        if ok {
            Ok(v.re)
        } else {
            Err(Error::SingularMetric {
                chart: chart.index(),
                re: p.re,
                im: p.im,
                value: v.re,
            })
        }
    }

    /// c₁ density against dA of the chart: −(1/π) ∂z∂z̄ log φ, from the
    /// symbolic Laplacian.
    pub fn curvature_density(&self, chart: ChartId, p: Cx<f64>) -> f64 {
        -self.lap_log[chart.index()].eval(p).re / PI
    }

    /// Largest relative defect of the gluing law φ_w(1/z) = |z|^(2n) φ_z(z)
    /// sampled on an annulus around the seam.
    pub fn seam_mismatch(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for &r in &[0.8_f64, 1.0, 1.25] {
            for k in 0..16 {
                let th = 2.0 * PI * k as f64 / 16.0;
                let z = Cx::from_polar(r, th);
                let w = z.inv();
                let lhs = self.weights[1].eval(w).re;
                let rhs = z.norm_sqr().powi(self.twist) * self.weights[0].eval(z).re;
                let defect = if rhs.is_finite() && rhs != 0.0 {
                    (lhs / rhs - 1.0).abs()
                } else {
                    f64::INFINITY
                };
                worst = worst.max(defect);
            }
        }
        worst
    }
}

/// Horner form of Σ c_i ζ^i as an expression in the chart variable.
pub fn poly_to_expr(coeffs: &[BigInt]) -> CExpr {
    let mut acc = CExpr::real(0.0);
    for c in coeffs.iter().rev() {
        let c = c.to_f64().expect("coefficient out of float range");
        acc = acc.mul(&CExpr::var()).add(&CExpr::real(c));
    }
    acc
}

/// A form sampled on the covering grids, tagged with its bidegree:
/// (0,0) for functions, (1,1) for densities against chart dA, (2,2) kept
/// for bookkeeping (identically zero on a curve).
#[derive(Clone, Debug)]
pub struct FormGrid {
    pub bidegree: (u8, u8),
    /// Values per chart, aligned with [`ChartGrid::nodes`].
    pub values: [Vec<f64>; 2],
}

impl FormGrid {
    pub fn sample<FZ, FW>(grid: &ChartGrid, bidegree: (u8, u8), fz: FZ, fw: FW) -> FormGrid
    where
        FZ: Fn(Cx<f64>) -> f64 + Sync,
        FW: Fn(Cx<f64>) -> f64 + Sync,
    {
        let nodes = grid.nodes();
        let vz: Vec<f64> = nodes.par_iter().map(|&(p, _)| fz(p)).collect();
        let vw: Vec<f64> = nodes.par_iter().map(|&(p, _)| fw(p)).collect();
        FormGrid {
            bidegree,
            values: [vz, vw],
        }
    }

    pub fn zero(grid: &ChartGrid, bidegree: (u8, u8)) -> FormGrid {
        let n = grid.nodes().len();
        FormGrid {
            bidegree,
            values: [vec![0.0; n], vec![0.0; n]],
        }
    }

    pub fn zero_like(&self, bidegree: (u8, u8)) -> FormGrid {
        FormGrid {
            bidegree,
            values: [
                vec![0.0; self.values[0].len()],
                vec![0.0; self.values[1].len()],
            ],
        }
    }

    pub fn sup(&self) -> f64 {
        self.values
            .iter()
            .flatten()
            .fold(0.0_f64, |m, v| m.max(v.abs()))
    }

    /// Defect of invariance under the antiholomorphic involution z ↦ z̄,
    /// which permutes the polar nodes angle-wise. Real (p,p)-densities of
    /// instances with integer data must be fixed by it.
    pub fn conjugation_parity_defect(&self, grid: &ChartGrid) -> f64 {
        let m = grid.theta_count();
        let mut worst: f64 = 0.0;
        for vals in &self.values {
            assert_eq!(vals.len() % m, 0, "form sampled on another grid");
            for row in vals.chunks(m) {
                for k in 0..m {
                    worst = worst.max((row[k] - row[(m - k) % m]).abs());
                }
            }
        }
        worst
    }
}

/// Curvature of a metrized bundle sampled on the grid: the c₁ (1,1)-density
/// (the trace; rank one blocks carry all curvature here), which integrates
/// to the twist. Fails on any sample where the metric degenerates.
pub fn curvature(e: &HermBundle, grid: &ChartGrid) -> Result<FormGrid> {
    for chart in ChartId::BOTH {
        for (p, _) in grid.nodes() {
            e.weight(chart, p)?;
        }
    }
    Ok(FormGrid::sample(
        grid,
        (1, 1),
        |p| e.curvature_density(ChartId::Z, p),
        |p| e.curvature_density(ChartId::W, p),
    ))
}

/// Character forms derived from a sampled curvature trace. On a curve every
/// 4-form vanishes identically, so ch₂ and c₂ = c₁²/2 − ch₂ are the zero
/// (2,2)-grids, kept so the degree bookkeeping stays visible; nonzero
/// (2,2)-data only arises on the two-dimensional total space of the
/// transgression family.
pub struct ChernForms {
    pub c1: FormGrid,
    pub ch2: FormGrid,
    pub c2: FormGrid,
}

pub fn chern_forms(theta: &FormGrid) -> Result<ChernForms> {
    if theta.bidegree != (1, 1) {
        return Err(Error::DegreeMismatch(theta.bidegree.0, theta.bidegree.1));
    }
    Ok(ChernForms {
        c1: theta.clone(),
        ch2: theta.zero_like((2, 2)),
        c2: theta.zero_like((2, 2)),
    })
}

/// ∫ over P¹(C) of a sampled (1,1)-density; any other bidegree has no well
/// defined integral against the surface.
pub fn integrate(grid: &ChartGrid, form: &FormGrid) -> Result<f64> {
    if form.bidegree != (1, 1) {
        return Err(Error::DegreeMismatch(form.bidegree.0, form.bidegree.1));
    }
    let nodes = grid.nodes();
    let mut total = 0.0;
    for vals in &form.values {
        assert_eq!(vals.len(), nodes.len(), "form sampled on another grid");
        let parts: Vec<f64> = nodes.iter().zip(vals).map(|(&(_, w), &v)| w * v).collect();
        total += pairwise_sum(&parts);
    }
    Ok(total)
}
