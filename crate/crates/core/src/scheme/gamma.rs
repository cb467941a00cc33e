//! Order of the finite scheme cut out on P¹_Z by two sections in general
//! position. Two affine charts cover the scheme; points on the section at
//! infinity live in the second chart localized at its origin, so the two
//! contributions are disjoint by construction and the total order is their
//! product.

use crate::error::{Error, Result};
use crate::poly::{form_resultant, quotient_order, BinaryForm, MultiPoly};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::One;

/// Truncation exponents tried when isolating the component at the chart
/// origin; orders stabilize at the v-adic multiplicity, which is tiny for
/// desk-scale sections.
const MAX_LOCALIZATION_POWER: u32 = 16;

#[derive(Clone, Debug)]
pub struct Chart {
    /// Univariate generators of the chart ideal.
    pub gens: Vec<MultiPoly>,
    /// Count only the component supported where the chart variable
    /// vanishes, instead of the whole affine chart.
    pub localized_at_origin: bool,
}

#[derive(Clone, Debug)]
pub struct FiniteSchemeData {
    pub charts: Vec<Chart>,
    /// |Res| of the defining forms when built from sections; recorded for
    /// cross-checks, never consumed by the order computation.
    pub resultant_magnitude: Option<BigUint>,
}

impl FiniteSchemeData {
    /// Scheme of common zeros of two binary forms. Proper intersection
    /// needs a nonzero resultant (no common zero on the generic fiber) and
    /// coprime contents (no common vertical fiber).
    pub fn from_sections(s1: &BinaryForm, s2: &BinaryForm) -> Result<Self> {
        let res = form_resultant(s1, s2);
        if num_traits::Zero::is_zero(&res) {
            return Err(Error::ImproperIntersection);
        }
        if s1.content().gcd(&s2.content()) > BigUint::one() {
            return Err(Error::NotZeroDimensional);
        }
        Ok(FiniteSchemeData {
            charts: vec![
                Chart {
                    gens: vec![s1.chart_u(), s2.chart_u()],
                    localized_at_origin: false,
                },
                Chart {
                    gens: vec![s1.chart_v(), s2.chart_v()],
                    localized_at_origin: true,
                },
            ],
            resultant_magnitude: Some(res.magnitude().clone()),
        })
    }

    /// A single affine chart, no points at infinity.
    pub fn from_affine(gens: Vec<MultiPoly>) -> Self {
        FiniteSchemeData {
            charts: vec![Chart {
                gens,
                localized_at_origin: false,
            }],
            resultant_magnitude: None,
        }
    }
}

/// Order of the chart component supported at the chart origin: the orders
/// of Z[v]/(gens, v^N) are nonincreasing contributions per point, and two
/// equal consecutive values certify (v^(N+1)) = (v^N) inside the quotient,
/// which persists for all larger exponents.
fn localized_order(gens: &[MultiPoly], var: &str) -> Result<BigUint> {
    let vpoly = MultiPoly::var(&[var], 0);
    let mut prev: Option<BigUint> = None;
    for n in 1..=MAX_LOCALIZATION_POWER {
        let mut gs = gens.to_vec();
        gs.push(vpoly.pow(n));
        let order = quotient_order(&gs)?;
        if prev.as_ref() == Some(&order) {
            return Ok(order);
        }
        prev = Some(order);
    }
    Err(Error::OverlapAmbiguous(format!(
        "localization at ({var}) did not stabilize below exponent {MAX_LOCALIZATION_POWER}"
    )))
}

/// Total order #Γ(φ, O_φ): product of the chart contributions.
pub fn gamma_order(phi: &FiniteSchemeData) -> Result<BigUint> {
    let unlocalized = phi.charts.iter().filter(|c| !c.localized_at_origin).count();
    if unlocalized > 1 {
        return Err(Error::OverlapAmbiguous(
            "more than one full affine chart; supports may overlap".to_string(),
        ));
    }
    let mut total = BigUint::one();
    for chart in &phi.charts {
        let order = if chart.localized_at_origin {
            let var = chart
                .gens
                .first()
                .and_then(|g| g.vars().first())
                .cloned()
                .ok_or_else(|| Error::OverlapAmbiguous("empty chart".to_string()))?;
            localized_order(&chart.gens, &var)?
        } else {
            quotient_order(&chart.gens)?
        };
        total *= order;
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn order_of(s1: &str, d1: usize, s2: &str, d2: usize) -> Result<BigUint> {
        let f = BinaryForm::parse(s1, d1).unwrap();
        let g = BinaryForm::parse(s2, d2).unwrap();
        gamma_order(&FiniteSchemeData::from_sections(&f, &g)?)
    }

    #[test]
    fn point_at_origin_and_at_infinity() {
        // common zero of (X0, 2X1) sits at (0:1) over F_2: order 2
        assert_eq!(order_of("X0", 1, "2*X1", 1).unwrap(), BigUint::from(2u32));
        // mirrored pair puts the point at (1:0): the localized chart sees it
        assert_eq!(order_of("2*X0", 1, "X1", 1).unwrap(), BigUint::from(2u32));
    }

    #[test]
    fn split_points_multiply() {
        assert_eq!(order_of("2*X0", 1, "3*X1", 1).unwrap(), BigUint::from(6u32));
    }

    #[test]
    fn thick_point_on_one_fiber() {
        // u = ±2 collide mod 2: Z[u]/(u-2, u+2) = Z/4
        let total = order_of("X0 - 2*X1", 1, "X0 + 2*X1", 1).unwrap();
        assert_eq!(total, BigUint::from(4u32));
    }

    #[test]
    fn unit_and_zero_section_give_trivial_scheme() {
        let one = BinaryForm::parse("1", 0).unwrap();
        let zero = BinaryForm::zero(1);
        let phi = FiniteSchemeData::from_sections(&one, &zero).unwrap();
        assert_eq!(gamma_order(&phi).unwrap(), BigUint::one());
        assert_eq!(phi.resultant_magnitude, Some(BigUint::one()));
    }

    #[test]
    fn order_matches_resultant_on_samples() {
        for (s1, d1, s2, d2) in [
            ("X0 - 2*X1", 1, "X0 + 2*X1", 1),
            ("X0^2 + X1^2", 2, "X0 - 3*X1", 1),
            ("2*X0 + X1", 1, "3*X0 - X1", 1),
            ("X0^2 - 2*X0*X1", 2, "X1^2 + X0*X1 + X0^2", 2),
        ] {
            let f = BinaryForm::parse(s1, d1).unwrap();
            let g = BinaryForm::parse(s2, d2).unwrap();
            let phi = FiniteSchemeData::from_sections(&f, &g).unwrap();
            let order = gamma_order(&phi).unwrap();
            assert_eq!(Some(order), phi.resultant_magnitude, "pair ({s1}, {s2})");
        }
    }

    #[test]
    fn order_survives_leading_coefficient_drop_on_a_fiber() {
        // the X0^3 coefficient is divisible by 7, so over F_7 the first
        // section degenerates to X1 * (quadratic) and the scheme picks up a
        // point at infinity next to two overlap points; the order must still
        // match |Res| = 7^3
        let f = BinaryForm::new(
            MultiPoly::from_terms(
                &["X0", "X1"],
                &[
                    (vec![0, 3], -5),
                    (vec![1, 2], -2),
                    (vec![2, 1], 9),
                    (vec![3, 0], -7),
                ],
            ),
            3,
        )
        .unwrap();
        let g = BinaryForm::parse("7", 0).unwrap();
        let phi = FiniteSchemeData::from_sections(&f, &g).unwrap();
        let order = gamma_order(&phi).unwrap();
        assert_eq!(order, BigUint::from(343u32));
        assert_eq!(phi.resultant_magnitude, Some(order));
    }

    #[test]
    fn improper_and_vertical_intersections_are_refused() {
        let f = BinaryForm::parse("X0", 1).unwrap();
        assert!(matches!(
            FiniteSchemeData::from_sections(&f, &f),
            Err(Error::ImproperIntersection)
        ));
        let a = BinaryForm::parse("2*X0", 1).unwrap();
        let b = BinaryForm::parse("2*X1", 1).unwrap();
        assert!(matches!(
            FiniteSchemeData::from_sections(&a, &b),
            Err(Error::NotZeroDimensional)
        ));
    }

    #[test]
    fn two_full_charts_cannot_certify_disjointness() {
        let g = MultiPoly::parse("u", &["u"]).unwrap();
        let two = MultiPoly::parse("2", &["u"]).unwrap();
        let chart = Chart {
            gens: vec![g, two],
            localized_at_origin: false,
        };
        let phi = FiniteSchemeData {
            charts: vec![chart.clone(), chart],
            resultant_magnitude: None,
        };
        assert!(matches!(gamma_order(&phi), Err(Error::OverlapAmbiguous(_))));
    }
}
