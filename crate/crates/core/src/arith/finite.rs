//! Finite-fiber intersection of section divisors on the arithmetic
//! projective line. For content-one forms with no common projective zero
//! the local lengths at a prime add up to v_p of the resultant, so the whole
//! zero-cycle on Spec Z is read off one integer exactly.

use crate::arith::sections::RationalSection;
use crate::error::{Error, Result};
use crate::exact::factorize;
use crate::poly::{form_resultant, BinaryForm};
use crate::scheme::{Rat, ZeroCycleOnS};
use num_traits::Zero;

pub fn div_finite_intersection(f: &BinaryForm, g: &BinaryForm) -> Result<ZeroCycleOnS> {
    let r = form_resultant(f, g);
    if r.is_zero() {
        return Err(Error::ImproperIntersection);
    }
    let fac = factorize(r.magnitude())?;
    Ok(ZeroCycleOnS::from_factorization(&fac))
}

/// Bilinear extension to rational sections: numerators count positively,
/// denominators negatively. Errors if any of the four divisor pairs shares
/// a zero on the generic fiber.
pub fn rational_finite_part(s0: &RationalSection, s2: &RationalSection) -> Result<ZeroCycleOnS> {
    let mut out = ZeroCycleOnS::zero();
    for (f, sf) in [(&s0.num, 1i64), (&s0.den, -1i64)] {
        for (g, sg) in [(&s2.num, 1i64), (&s2.den, -1i64)] {
            let r = form_resultant(f, g);
            if r.is_zero() {
                return Err(Error::ImproperIntersection);
            }
            for (p, e) in factorize(r.magnitude())? {
                out.add_at(p, Rat::from_int(sf * sg * i64::from(e)));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(text: &str, d: usize) -> BinaryForm {
        BinaryForm::parse(text, d).unwrap()
    }

    #[test]
    fn lengths_match_resultant_valuations() {
        let c = div_finite_intersection(&form("X0", 1), &form("2*X1", 1)).unwrap();
        assert_eq!(c.multiplicity(2), Rat::from_int(1));
        assert_eq!(c.iter().count(), 1);

        let c = div_finite_intersection(&form("X0", 1), &form("X1", 1)).unwrap();
        assert!(c.is_zero());

        // common zero mod 2 of length two
        let c = div_finite_intersection(&form("X0 - 2*X1", 1), &form("X0 + 2*X1", 1)).unwrap();
        assert_eq!(c.multiplicity(2), Rat::from_int(2));
        assert_eq!(c.iter().count(), 1);
    }

    #[test]
    fn constant_pairs_are_empty() {
        let c = div_finite_intersection(&form("1", 0), &form("1", 0)).unwrap();
        assert!(c.is_zero());
    }

    #[test]
    fn vanishing_resultant_is_improper() {
        assert!(matches!(
            div_finite_intersection(&form("X0", 1), &form("3*X0", 1)),
            Err(Error::ImproperIntersection)
        ));
    }

    #[test]
    fn rational_parts_subtract_denominators() {
        // (X0 / X1) paired with (X0 - 2X1): Res(X0, X0-2X1) = -2 counts +1
        // at 2, Res(X1, X0-2X1) = ... the denominator zero sits at infinity
        // where the other divisor has |Res| = 1, so nothing cancels here;
        // swap in (2X0 - X1)/(X0 - 2X1) for a genuine signed mix.
        let s0 = RationalSection::new(form("X0", 1), form("X1", 1)).unwrap();
        let s2 = RationalSection::new(form("X0 - 2*X1", 1), form("1", 0)).unwrap();
        let c = rational_finite_part(&s0, &s2).unwrap();
        assert_eq!(c.multiplicity(2), Rat::from_int(1));

        let s2 = RationalSection::new(form("2*X0 - X1", 1), form("X0 - 2*X1", 1)).unwrap();
        let s0 = RationalSection::new(form("X0", 1), form("1", 0)).unwrap();
        let c = rational_finite_part(&s0, &s2).unwrap();
        // Res(X0, 2X0-X1) = ±1, Res(X0, X0-2X1) = ∓2: net -1 at p = 2
        assert_eq!(c.multiplicity(2), Rat::from_int(-1));
        assert!((c.degree_log() + std::f64::consts::LN_2).abs() < 1e-15);
    }

    #[test]
    fn improper_rational_pairs_are_refused() {
        let s0 = RationalSection::new(form("X0", 1), form("1", 0)).unwrap();
        let s2 = RationalSection::new(form("X1", 1), form("X0", 1)).unwrap();
        assert!(matches!(
            rational_finite_part(&s0, &s2),
            Err(Error::ImproperIntersection)
        ));
    }
}
