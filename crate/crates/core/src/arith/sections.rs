//! Rational sections of the twisting sheaves as ratios of integer binary
//! forms, with divisor enumeration on the complex fiber and the chart rule
//! for point evaluation.

use crate::arith::roots::roots_with_multiplicity;
use crate::error::{Error, Result};
use crate::forms::bundle::ChartId;
use crate::num::Cx;
use crate::poly::{form_resultant, BinaryForm};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// A point of the projective line over C, in whichever chart holds it
/// inside the closed unit disk.
pub type SpherePoint = (ChartId, Cx<f64>);

/// Chart rule for a z-chart coordinate; ties at |z| = 1 stay in the z-chart.
pub fn locate_z(r: Cx<f64>) -> SpherePoint {
    if r.norm_sqr() <= 1.0 {
        (ChartId::Z, r)
    } else {
        (ChartId::W, r.inv())
    }
}

pub fn infinity() -> SpherePoint {
    (ChartId::W, Cx::new(0.0, 0.0))
}

/// num/den with content-one integer forms; the divisor is the signed
/// difference of the two form divisors and has no vertical components.
#[derive(Clone, Debug)]
pub struct RationalSection {
    pub num: BinaryForm,
    pub den: BinaryForm,
}

impl RationalSection {
    pub fn new(num: BinaryForm, den: BinaryForm) -> Result<Self> {
        if num.is_zero() || den.is_zero() {
            return Err(Error::Schema(
                "a rational section needs nonzero numerator and denominator".into(),
            ));
        }
        for f in [&num, &den] {
            if !f.content().is_one() {
                return Err(Error::Schema(format!(
                    "section factor {} has content {} > 1, its divisor would have a vertical component",
                    f.poly(),
                    f.content()
                )));
            }
        }
        if num.degree() > 0 && den.degree() > 0 && form_resultant(&num, &den).is_zero() {
            return Err(Error::Schema(
                "section is not in lowest terms: numerator and denominator share a zero".into(),
            ));
        }
        Ok(RationalSection { num, den })
    }

    /// The section 1 of the trivial twist.
    pub fn one() -> Self {
        let unit = BinaryForm::parse("1", 0).expect("constant form");
        RationalSection {
            num: unit.clone(),
            den: unit,
        }
    }

    fn power_pattern(base: &BinaryForm, twist: i32) -> Self {
        let unit = BinaryForm::parse("1", 0).expect("constant form");
        let k = twist.unsigned_abs();
        let pow = BinaryForm::new(base.poly().pow(k), base.degree() * k as usize)
            .expect("power of a form");
        if twist >= 0 {
            RationalSection {
                num: pow,
                den: unit,
            }
        } else {
            RationalSection {
                num: unit,
                den: pow,
            }
        }
    }

    /// X₀-power section of O(twist); divisor supported at 0 (or ∞ for
    /// negative twists... the pole sits at the same point with sign).
    pub fn canonical(twist: i32) -> Self {
        let x0 = BinaryForm::parse("X0", 1).expect("linear form");
        Self::power_pattern(&x0, twist)
    }

    /// (X₀−X₁)-power section of O(twist); divisor supported at z = 1,
    /// disjoint from the canonical pattern's.
    pub fn canonical_alt(twist: i32) -> Self {
        let d = BinaryForm::parse("X0 - X1", 1).expect("linear form");
        Self::power_pattern(&d, twist)
    }

    pub fn twist(&self) -> i32 {
        self.num.degree() as i32 - self.den.degree() as i32
    }

    /// Ascending chart coefficients of one form: F(z,1) in the z-chart,
    /// F(1,w) in the w-chart, trailing zeros trimmed.
    fn chart_coeffs(form: &BinaryForm, chart: ChartId) -> Vec<BigInt> {
        let mut v = form.coefficient_vector();
        if chart == ChartId::W {
            v.reverse();
        }
        while v.last().is_some_and(Zero::is_zero) {
            v.pop();
        }
        v
    }

    /// log |section(pt)| in pt's chart trivialization. Errors if the point
    /// lies on the divisor, where the pairing integrand is undefined.
    pub fn log_abs_at(&self, pt: SpherePoint) -> Result<f64> {
        let nv = eval_ascending(&Self::chart_coeffs(&self.num, pt.0), pt.1);
        let dv = eval_ascending(&Self::chart_coeffs(&self.den, pt.0), pt.1);
        if nv.norm() == 0.0 || dv.norm() == 0.0 {
            return Err(Error::ImproperIntersection);
        }
        Ok(nv.norm().ln() - dv.norm().ln())
    }

    /// Finite z-chart roots with signed multiplicities: numerator roots
    /// count positively, denominator roots negatively.
    pub fn z_roots_signed(&self) -> Result<Vec<(Cx<f64>, i64)>> {
        let mut out = Vec::new();
        for (form, sign) in [(&self.num, 1i64), (&self.den, -1i64)] {
            let coeffs = Self::chart_coeffs(form, ChartId::Z);
            for (r, m) in roots_with_multiplicity(&coeffs)? {
                out.push((r, sign * m as i64));
            }
        }
        Ok(out)
    }

    /// Signed multiplicity of the divisor at (1:0).
    pub fn infinity_multiplicity(&self) -> i64 {
        let ord = |f: &BinaryForm| {
            f.degree() as i64 - (Self::chart_coeffs(f, ChartId::Z).len() as i64 - 1)
        };
        ord(&self.num) - ord(&self.den)
    }

    /// log |lc(num)/lc(den)| of the z-chart polynomials.
    pub fn leading_log_ratio(&self) -> f64 {
        let lc = |f: &BinaryForm| {
            Self::chart_coeffs(f, ChartId::Z)
                .last()
                .expect("nonzero form")
                .magnitude()
                .to_f64()
                .expect("leading coefficient out of f64 range")
                .ln()
        };
        lc(&self.num) - lc(&self.den)
    }

    /// The full divisor as located points with signed multiplicities.
    pub fn divisor(&self) -> Result<Vec<(SpherePoint, i64)>> {
        let mut out: Vec<(SpherePoint, i64)> = self
            .z_roots_signed()?
            .into_iter()
            .map(|(r, m)| (locate_z(r), m))
            .collect();
        let at_inf = self.infinity_multiplicity();
        if at_inf != 0 {
            out.push((infinity(), at_inf));
        }
        debug_assert_eq!(
            out.iter().map(|(_, m)| m).sum::<i64>(),
            i64::from(self.twist())
        );
        Ok(out)
    }
}

fn eval_ascending(coeffs: &[BigInt], x: Cx<f64>) -> Cx<f64> {
    coeffs.iter().rev().fold(Cx::new(0.0, 0.0), |acc, c| {
        acc * x + Cx::new(c.to_f64().expect("coefficient out of f64 range"), 0.0)
    })
}
