//! Binary forms in X0, X1 carried with a formal degree. The formal degree
//! matters: the zero section of a twist and sections vanishing at (1:0) both
//! need padded coefficient vectors for resultants and chart restrictions.

use crate::error::{Error, Result};
use crate::poly::multipoly::MultiPoly;
use crate::poly::resultant::resultant_forms;
use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

pub const FORM_VARS: [&str; 2] = ["X0", "X1"];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    poly: MultiPoly,
    degree: usize,
}

impl BinaryForm {
    pub fn new(poly: MultiPoly, degree: usize) -> Result<Self> {
        if poly.vars() != FORM_VARS {
            return Err(Error::Schema(format!(
                "binary form must use variables X0, X1, got {:?}",
                poly.vars()
            )));
        }
        if !poly.is_homogeneous_of_degree(degree as u32) {
            return Err(Error::Schema(format!(
                "form {poly} is not homogeneous of degree {degree}"
            )));
        }
        Ok(BinaryForm { poly, degree })
    }

    pub fn parse(text: &str, degree: usize) -> Result<Self> {
        let poly = MultiPoly::parse(text, &FORM_VARS).map_err(Error::Schema)?;
        BinaryForm::new(poly, degree)
    }

    pub fn zero(degree: usize) -> Self {
        BinaryForm {
            poly: MultiPoly::zero(&FORM_VARS),
            degree,
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn poly(&self) -> &MultiPoly {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn content(&self) -> BigUint {
        self.poly.content()
    }

    /// c_i = coefficient of X0^i X1^(degree−i); length degree+1.
    pub fn coefficient_vector(&self) -> Vec<BigInt> {
        let mut out = vec![BigInt::zero(); self.degree + 1];
        for (m, c) in self.poly.terms() {
            out[m.0[0] as usize] = c.clone();
        }
        out
    }

    /// Restriction to the chart u = X0/X1 (X1 = 1).
    pub fn chart_u(&self) -> MultiPoly {
        self.poly.set_var_to_one(1).rename_vars(&["u"])
    }

    /// Restriction to the chart v = X1/X0 (X0 = 1).
    pub fn chart_v(&self) -> MultiPoly {
        self.poly.set_var_to_one(0).rename_vars(&["v"])
    }

    /// True when the form vanishes at the point (1:0).
    pub fn vanishes_at_infinity(&self) -> bool {
        self.coefficient_vector()[self.degree].is_zero()
    }
}

/// Resultant of the two forms at their formal degrees. Vanishes exactly when
/// the forms share a projective zero over Q-bar, including one at infinity
/// that only the degree padding sees.
pub fn form_resultant(f: &BinaryForm, g: &BinaryForm) -> BigInt {
    resultant_forms(&f.coefficient_vector(), &g.coefficient_vector())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn charts_and_coefficients() {
        let f = BinaryForm::parse("X0 - 2*X1", 1).unwrap();
        assert_eq!(
            f.coefficient_vector(),
            vec![BigInt::from(-2), BigInt::from(1)]
        );
        assert_eq!(f.chart_u(), MultiPoly::parse("u - 2", &["u"]).unwrap());
        assert_eq!(f.chart_v(), MultiPoly::parse("1 - 2*v", &["v"]).unwrap());
        assert!(!f.vanishes_at_infinity());
        let g = BinaryForm::parse("X1", 1).unwrap();
        assert!(g.vanishes_at_infinity());
    }

    #[test]
    fn rejects_inhomogeneous_and_wrong_degree() {
        assert!(BinaryForm::parse("X0^2 + X1", 2).is_err());
        assert!(BinaryForm::parse("X0", 2).is_err());
        // constants are valid degree-0 forms, and 0 is a form of any degree
        assert!(BinaryForm::parse("1", 0).is_ok());
        assert!(BinaryForm::zero(3).chart_u().is_zero());
    }

    #[test]
    fn resultants_of_small_pairs() {
        let x0 = BinaryForm::parse("X0", 1).unwrap();
        let x1 = BinaryForm::parse("X1", 1).unwrap();
        let two_x1 = BinaryForm::parse("2*X1", 1).unwrap();
        assert_eq!(form_resultant(&x0, &x1).magnitude().to_string(), "1");
        assert_eq!(form_resultant(&x0, &two_x1).magnitude().to_string(), "2");
        let f = BinaryForm::parse("X0 - 2*X1", 1).unwrap();
        let g = BinaryForm::parse("X0 + 2*X1", 1).unwrap();
        assert_eq!(form_resultant(&f, &g).magnitude().to_string(), "4");
    }

    #[test]
    fn resultant_sees_zero_at_infinity() {
        // both forms vanish at (1:0) once padded to formal degree 2
        let f = BinaryForm::parse("X0*X1", 2).unwrap();
        let g = BinaryForm::parse("X1^2", 2).unwrap();
        assert!(form_resultant(&f, &g).is_zero());
        // the same underlying polynomials at exact degrees would not both
        // vanish there; padding is what encodes the section of the twist
        let unit = BinaryForm::parse("1", 0).unwrap();
        let zero1 = BinaryForm::zero(1);
        assert_eq!(form_resultant(&unit, &zero1), BigInt::from(1));
    }

    #[test]
    fn resultant_scaling_law() {
        let f = BinaryForm::parse("X0^2 - X1^2", 2).unwrap();
        let g = BinaryForm::parse("X0 + 3*X1", 1).unwrap();
        let cf = BinaryForm::parse("3*X0^2 - 3*X1^2", 2).unwrap();
        let r = form_resultant(&f, &g);
        let rc = form_resultant(&cf, &g);
        // Res(cF, G) = c^(deg G) Res(F, G)
        assert_eq!(rc, r * BigInt::from(3));
    }
}
