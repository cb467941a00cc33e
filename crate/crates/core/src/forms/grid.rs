//! Quadrature and finite differences on the Riemann sphere: the two closed
//! unit disks of the z- and w-charts cover P¹(C) overlapping only on the
//! unit circle, a radial-log rule handles transgression integrals over the
//! t-plane, and the stencils below differentiate metric potentials that are
//! only available pointwise.

use crate::num::{gauss_legendre_on, pairwise_sum, Cx};
use rayon::prelude::*;
use std::f64::consts::PI;

/// Polar quadrature on the closed unit disk plus the finite-difference step
/// tied to the resolution parameter n.
#[derive(Clone, Debug)]
pub struct ChartGrid {
    pub n: usize,
    /// Gauss-Legendre radial rule on [0, 1].
    radial: Vec<(f64, f64)>,
    /// Uniform angles with the trapezoid weight 2π/m (spectral accuracy on
    /// periodic integrands).
    thetas: Vec<f64>,
    theta_weight: f64,
    pub fd_step: f64,
}

impl ChartGrid {
    pub fn new(n: usize) -> ChartGrid {
        assert!(n >= 4, "grid resolution too small");
        let m = (n / 4).clamp(16, 96);
        let thetas = (0..m).map(|k| 2.0 * PI * k as f64 / m as f64).collect();
        ChartGrid {
            n,
            radial: gauss_legendre_on(0.0, 1.0, n),
            thetas,
            theta_weight: 2.0 * PI / m as f64,
            fd_step: 1.0 / n as f64,
        }
    }

    /// Angular node count; node layout is radial-major with this period.
    pub fn theta_count(&self) -> usize {
        self.thetas.len()
    }

    /// Quadrature points with weights that already include the polar
    /// Jacobian r, deterministic order.
    pub fn nodes(&self) -> Vec<(Cx<f64>, f64)> {
        let mut out = Vec::with_capacity(self.radial.len() * self.thetas.len());
        for &(r, wr) in &self.radial {
            for &th in &self.thetas {
                out.push((Cx::from_polar(r, th), wr * self.theta_weight * r));
            }
        }
        out
    }

    /// ∫ over the closed unit disk against Lebesgue measure dA.
    pub fn integrate_disk<F>(&self, f: F) -> f64
    where
        F: Fn(Cx<f64>) -> f64 + Sync,
    {
        let nodes = self.nodes();
        let vals: Vec<f64> = nodes.par_iter().map(|&(p, w)| w * f(p)).collect();
        pairwise_sum(&vals)
    }
}

/// ∫ over P¹(C) of a (1,1)-density given per chart against dA of that
/// chart; the two unit disks overlap in measure zero.
pub fn p1_integral<F, G>(grid: &ChartGrid, density_z: F, density_w: G) -> f64
where
    F: Fn(Cx<f64>) -> f64 + Sync,
    G: Fn(Cx<f64>) -> f64 + Sync,
{
    grid.integrate_disk(density_z) + grid.integrate_disk(density_w)
}

/// Composite Gauss-Legendre rule in ρ = log|t| on [−r, r]. The kernel decays
/// like e^(−2|ρ|)·|ρ| at both ends, so r = 12 leaves a tail below 1e-8 and
/// the panels resolve the smooth middle to machine precision.
#[derive(Clone, Debug)]
pub struct RadialLogQuad {
    nodes: Vec<(f64, f64)>,
}

impl RadialLogQuad {
    pub fn new(panels: usize, nodes_per_panel: usize, r: f64) -> RadialLogQuad {
        let mut nodes = Vec::with_capacity(panels * nodes_per_panel);
        for k in 0..panels {
            let a = -r + 2.0 * r * k as f64 / panels as f64;
            let b = -r + 2.0 * r * (k + 1) as f64 / panels as f64;
            nodes.extend(gauss_legendre_on(a, b, nodes_per_panel));
        }
        RadialLogQuad { nodes }
    }

    pub fn transgression_default() -> RadialLogQuad {
        RadialLogQuad::new(24, 8, 12.0)
    }

    /// ∫_C f(|t|²) · log|t|² dA_t, equal to π ∫₀^∞ f(u) log u du.
    pub fn integrate_log_kernel<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        let vals: Vec<f64> = self
            .nodes
            .iter()
            .map(|&(rho, w)| {
                let u = (2.0 * rho).exp();
                w * 2.0 * rho * u * f(u)
            })
            .collect();
        2.0 * PI * pairwise_sum(&vals)
    }

    /// Positivity scan of a t-dependent quantity over the quadrature
    /// points; used to reject degenerate family metrics early.
    pub fn min_over_nodes<F>(&self, f: F) -> f64
    where
        F: Fn(f64) -> f64,
    {
        self.nodes
            .iter()
            .map(|&(rho, _)| f((2.0 * rho).exp()))
            .fold(f64::INFINITY, f64::min)
    }

    /// Minimum together with the u = |t|² achieving it.
    pub fn argmin_over_nodes<F>(&self, f: F) -> (f64, f64)
    where
        F: Fn(f64) -> f64,
    {
        let mut best = (f64::NAN, f64::INFINITY);
        for &(rho, _) in &self.nodes {
            let u = (2.0 * rho).exp();
            let v = f(u);
            if v < best.1 {
                best = (u, v);
            }
        }
        best
    }
}

/// ∂z∂z̄ f = Δf/4 by the 5-point stencil; O(h²), works at off-grid points.
pub fn laplacian_zzbar<F>(f: F, p: Cx<f64>, h: f64) -> f64
where
    F: Fn(Cx<f64>) -> f64,
{
    let (ex, ey) = (Cx::new(h, 0.0), Cx::new(0.0, h));
    (f(p + ex) + f(p - ex) + f(p + ey) + f(p - ey) - 4.0 * f(p)) / (4.0 * h * h)
}

/// ∂f/∂z̄ = (∂x f + i ∂y f)/2 by central differences; O(h²).
pub fn d_zbar_fd<F>(f: F, p: Cx<f64>, h: f64) -> Cx<f64>
where
    F: Fn(Cx<f64>) -> Cx<f64>,
{
    let (ex, ey) = (Cx::new(h, 0.0), Cx::new(0.0, h));
    let dx = f(p + ex) - f(p - ex);
    let dy = f(p + ey) - f(p - ey);
    (dx + Cx::new(0.0, 1.0) * dy) / Cx::new(4.0 * h, 0.0)
}

/// ∂f/∂z = (∂x f − i ∂y f)/2 by central differences; O(h²).
pub fn d_z_fd<F>(f: F, p: Cx<f64>, h: f64) -> Cx<f64>
where
    F: Fn(Cx<f64>) -> Cx<f64>,
{
    let (ex, ey) = (Cx::new(h, 0.0), Cx::new(0.0, h));
    let dx = f(p + ex) - f(p - ex);
    let dy = f(p + ey) - f(p - ey);
    (dx - Cx::new(0.0, 1.0) * dy) / Cx::new(4.0 * h, 0.0)
}

/// Interior sample points for distributional-identity checks: a 33×33
/// lattice over [−0.95, 0.95]² masked to the open disk, away from the seam
/// so one-sided effects cannot leak in.
pub fn ddc_subsample() -> Vec<Cx<f64>> {
    let m = 33;
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            let x = -0.95 + 1.9 * i as f64 / (m - 1) as f64;
            let y = -0.95 + 1.9 * j as f64 / (m - 1) as f64;
            let p = Cx::new(x, y);
            if p.norm() <= 0.95 {
                out.push(p);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_moments() {
        let g = ChartGrid::new(256);
        let area = g.integrate_disk(|_| 1.0);
        assert!((area - PI).abs() < 1e-12, "{area}");
        let second = g.integrate_disk(|z| z.norm_sqr());
        assert!((second - PI / 2.0).abs() < 1e-12, "{second}");
    }

    #[test]
    fn fubini_study_has_unit_mass() {
        // c₁ density (1/π)(1+|z|²)^(−2) in both charts sums to 1
        let g = ChartGrid::new(256);
        let d = |z: Cx<f64>| (1.0 + z.norm_sqr()).powi(-2) / PI;
        let total = p1_integral(&g, d, d);
        assert!((total - 1.0).abs() < 1e-12, "{total}");
    }

    #[test]
    fn radial_log_quadrature_hits_closed_forms() {
        // π ∫₀^∞ f(u) log u du for the rational kernels of the families
        type Case = (fn(f64) -> f64, f64);
        let q = RadialLogQuad::transgression_default();
        let cases: Vec<Case> = vec![
            (|u| (1.0 + u).powi(-2), 0.0),
            (|u| (1.0 + u).powi(-3), -0.5),
            (|u| u * (1.0 + u).powi(-3), 0.5),
            (|u| (1.0 + u).powi(-4), -0.5),
            (|u| u * (1.0 + u).powi(-4), 0.0),
            (|u| u * u * (1.0 + u).powi(-4), 0.5),
            (|u| u * (1.0 - u) * (1.0 + u).powi(-4), -0.5),
            (|u| (1.0 - u) * (1.0 + u).powi(-3), -1.0),
        ];
        for (i, (f, expect)) in cases.iter().enumerate() {
            let got = q.integrate_log_kernel(f);
            assert!(
                (got - PI * expect).abs() < 1e-8,
                "case {i}: got {got}, want {}",
                PI * expect
            );
        }
    }

    #[test]
    fn stencils_are_second_order() {
        let logw = |z: Cx<f64>| -(1.0 + z.norm_sqr()).ln();
        let p: Cx<f64> = Cx::new(0.4, -0.3);
        let exact = -(1.0 + p.norm_sqr()).powi(-2);
        let coarse = laplacian_zzbar(logw, p, 1.0 / 64.0) - exact;
        let fine = laplacian_zzbar(logw, p, 1.0 / 128.0) - exact;
        assert!(coarse.abs() < 1e-4);
        // halving h quarters the truncation error
        let ratio = coarse / fine;
        assert!((3.0..5.0).contains(&ratio), "ratio {ratio}");

        // cubics whose third-derivative terms cancel in the respective stencil
        let f = |z: Cx<f64>| z * z * z.conj();
        let want = p * p; // ∂z̄ (z² z̄) = z²
        let got = d_zbar_fd(f, p, 1.0 / 128.0);
        assert!((got - want).norm() < 1e-9);
        let g = |z: Cx<f64>| z.conj() * z.conj() * z;
        let want_z = p.conj() * p.conj(); // ∂z (z̄² z) = z̄²
        let got_z = d_z_fd(g, p, 1.0 / 128.0);
        assert!((got_z - want_z).norm() < 1e-9);
    }

    #[test]
    fn subsample_avoids_seam() {
        let pts = ddc_subsample();
        assert!(!pts.is_empty());
        assert!(pts.iter().all(|p| p.norm() <= 0.95));
        assert!(pts.contains(&Cx::new(0.0, 0.0)));
    }
}
