//! Short sequences 0 -> O(e) -> O(a) ⊕ O(b) -> O(a+b-e) -> 0 on P¹, exact
//! on the generic fiber, with the metrics induced on the ends and the
//! second fundamental form of the inclusion.

use crate::error::{Error, Result};
use crate::forms::bundle::{poly_to_expr, ChartId, FormGrid, HermBundle};
use crate::forms::expr::CExpr;
use crate::forms::grid::{d_zbar_fd, ChartGrid};
use crate::num::Cx;
use crate::poly::{form_resultant, BinaryForm};
use num_traits::Zero;

/// The middle bundle O(a) ⊕ O(b) with its metric, and the inclusion of
/// O(e) given by a pair of forms (s1, s2) of degrees a-e, b-e without a
/// common projective zero. Sub and quotient carry the induced metrics.
#[derive(Clone, Debug)]
pub struct ExactSeqData {
    pub sub_twist: i32,
    pub mid: [HermBundle; 2],
    pub sections: [BinaryForm; 2],
}

impl ExactSeqData {
    pub fn new(sub_twist: i32, mid: [HermBundle; 2], sections: [BinaryForm; 2]) -> Result<Self> {
        for (line, s) in mid.iter().zip(&sections) {
            let want = line.twist as i64 - sub_twist as i64;
            if want < 0 || s.degree() as i64 != want {
                return Err(Error::Schema(format!(
                    "section of degree {} does not map O({}) into O({})",
                    s.degree(),
                    sub_twist,
                    line.twist
                )));
            }
        }
        if form_resultant(&sections[0], &sections[1]).is_zero() {
            return Err(Error::ImproperIntersection);
        }
        Ok(ExactSeqData {
            sub_twist,
            mid,
            sections,
        })
    }

    pub fn quotient_twist(&self) -> i32 {
        self.mid[0].twist + self.mid[1].twist - self.sub_twist
    }

    /// Chart polynomial of section i as an expression: S(z,1) on the z
    /// chart, S(1,w) on the w chart.
    pub fn section_expr(&self, i: usize, chart: ChartId) -> CExpr {
        let poly = match chart {
            ChartId::Z => self.sections[i].chart_u(),
            ChartId::W => self.sections[i].chart_v(),
        };
        poly_to_expr(&poly.dense_univariate())
    }

    fn chart_data(&self, chart: ChartId) -> (CExpr, CExpr, CExpr, CExpr) {
        let pa = self.mid[0].weight_expr(chart).clone();
        let pb = self.mid[1].weight_expr(chart).clone();
        (
            pa,
            pb,
            self.section_expr(0, chart),
            self.section_expr(1, chart),
        )
    }
}

/// Metrics induced on the sub and the quotient: φ₀ = |s1|²φ_a + |s2|²φ_b
/// on O(e), and φ₂ = φ_a φ_b / φ₀ on O(a+b-e), validated positive on the
/// sampling set.
pub fn induced_metrics(seq: &ExactSeqData, grid: &ChartGrid) -> Result<(HermBundle, HermBundle)> {
    let mut phi0 = Vec::with_capacity(2);
    let mut phi2 = Vec::with_capacity(2);
    for chart in ChartId::BOTH {
        let (pa, pb, s1, s2) = seq.chart_data(chart);
        let p0 = s1.abs2().mul(&pa).add(&s2.abs2().mul(&pb));
        phi2.push(pa.mul(&pb).div(&p0));
        phi0.push(p0);
    }
    let sub = HermBundle::new(seq.sub_twist, phi0[0].clone(), phi0[1].clone());
    let quot = HermBundle::new(seq.quotient_twist(), phi2[0].clone(), phi2[1].clone());
    for chart in ChartId::BOTH {
        for (p, _) in grid.nodes() {
            sub.weight(chart, p)?;
            quot.weight(chart, p)?;
        }
    }
    Ok((sub, quot))
}

/// Evaluator for the second fundamental form of O(e) ⊂ O(a) ⊕ O(b) and the
/// norm-square density M = (φ₀/φ₂)|b|² it contributes to the curvature
/// terms. The ∂̄ derivative is taken by central differences on the
/// analytically evaluated orthogonal projection, matching the order of the
/// surrounding quadrature.
pub struct SecondFundamentalForm {
    /// Per chart: the two components of v = h₁⁻¹ q† φ₂.
    v: [[CExpr; 2]; 2],
    /// Per chart: the prefactors s̄ᵢ φᵢ multiplying ∂̄vᵢ.
    pre: [[CExpr; 2]; 2],
    phi0: [CExpr; 2],
    /// φ₀/φ₂ = φ₀²/(φ_a φ_b).
    ratio: [CExpr; 2],
    pub fd_step: f64,
}

impl SecondFundamentalForm {
    pub fn new(seq: &ExactSeqData, fd_step: f64) -> SecondFundamentalForm {
        let mut v = Vec::with_capacity(2);
        let mut pre = Vec::with_capacity(2);
        let mut phi0 = Vec::with_capacity(2);
        let mut ratio = Vec::with_capacity(2);
        for chart in ChartId::BOTH {
            let (pa, pb, s1, s2) = seq.chart_data(chart);
            let p0 = s1.abs2().mul(&pa).add(&s2.abs2().mul(&pb));
            let p2 = pa.mul(&pb).div(&p0);
            v.push([
                s2.conj().neg().mul(&p2).div(&pa),
                s1.conj().mul(&p2).div(&pb),
            ]);
            pre.push([s1.conj().mul(&pa), s2.conj().mul(&pb)]);
            ratio.push(p0.intpow(2).div(&pa.mul(&pb)));
            phi0.push(p0);
        }
        SecondFundamentalForm {
            v: [v.remove(0), v.remove(0)],
            pre: [pre.remove(0), pre.remove(0)],
            phi0: [phi0.remove(0), phi0.remove(0)],
            ratio: [ratio.remove(0), ratio.remove(0)],
            fd_step,
        }
    }

    /// b = φ₀⁻¹ (s̄₁ φ_a ∂̄v₁ + s̄₂ φ_b ∂̄v₂), a (0,1)-coefficient.
    pub fn b(&self, chart: ChartId, p: Cx<f64>) -> Cx<f64> {
        let i = chart.index();
        let mut acc = Cx::new(0.0, 0.0);
        for k in 0..2 {
            let dv = d_zbar_fd(|q| self.v[i][k].eval(q), p, self.fd_step);
            acc += self.pre[i][k].eval(p) * dv;
        }
        acc / self.phi0[i].eval(p)
    }

    /// M = (φ₀/φ₂)|b|² against chart dA; always >= 0, and ≡ 0 exactly
    /// when the sequence splits isometrically.
    pub fn m_density(&self, chart: ChartId, p: Cx<f64>) -> f64 {
        let b = self.b(chart, p);
        self.ratio[chart.index()].eval(p).re * b.norm_sqr()
    }
}

/// The norm-square ‖β‖² of the second fundamental form sampled as a
/// (1,1)-density; identically zero iff the sequence splits isometrically.
pub fn second_fundamental_form(seq: &ExactSeqData, grid: &ChartGrid) -> FormGrid {
    let sff = SecondFundamentalForm::new(seq, grid.fd_step);
    FormGrid::sample(
        grid,
        (1, 1),
        |p| sff.m_density(ChartId::Z, p),
        |p| sff.m_density(ChartId::W, p),
    )
}
