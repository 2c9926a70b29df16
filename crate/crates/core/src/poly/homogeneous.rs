use std::fmt;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};

use super::{BivariatePolynomial, MPoly, VAR_Z};

/// A homogeneous polynomial in `X, Y, Z` with a declared degree. The zero
/// polynomial is allowed and is homogeneous of every degree.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomogeneousPolynomial3 {
    degree: u32,
    poly: MPoly<3>,
}

impl HomogeneousPolynomial3 {
    pub fn new(poly: MPoly<3>, degree: u32) -> Result<Self> {
        if poly.support().any(|e| e.iter().sum::<u32>() != degree) {
            return Err(Error::NotHomogeneous(degree));
        }
        Ok(HomogeneousPolynomial3 { degree, poly })
    }

    /// `Z^d f(X/Z, Y/Z)`.
    pub fn homogenize(f: &BivariatePolynomial, degree: u32) -> Result<Self> {
        if let Some(deg) = f.total_degree() {
            if deg > degree {
                return Err(Error::DegreeTooSmall {
                    target: degree,
                    degree: deg,
                });
            }
        }
        let poly = MPoly::from_terms(
            f.field(),
            f.terms().map(|(e, c)| ([e[0], e[1], degree - e[0] - e[1]], c.clone())),
        );
        Ok(HomogeneousPolynomial3 { degree, poly })
    }

    pub fn parse(text: &str, field: CoefficientField, degree: u32) -> Result<Self> {
        Self::new(MPoly::<3>::parse(text, field)?, degree)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn field(&self) -> CoefficientField {
        self.poly.field()
    }

    pub fn poly(&self) -> &MPoly<3> {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    /// `F(X, Y, 1)`.
    pub fn dehomogenize(&self) -> BivariatePolynomial {
        self.poly.dehomogenize()
    }

    /// Largest `k` with `Z^k | F`.
    pub fn z_valuation(&self) -> Result<u32> {
        self.poly.support().map(|e| e[VAR_Z]).min().ok_or(Error::ZeroPolynomial)
    }

    pub fn derivative(&self, var: usize) -> Self {
        HomogeneousPolynomial3 {
            degree: self.degree.saturating_sub(1),
            poly: self.poly.derivative(var),
        }
    }

    /// `a*F + b*G` for two forms of the same degree.
    pub fn combine(a: &FieldElement, f: &Self, b: &FieldElement, g: &Self) -> Self {
        assert_eq!(f.degree, g.degree, "forms of different degrees");
        HomogeneousPolynomial3 {
            degree: f.degree,
            poly: &f.poly.scale(a) + &g.poly.scale(b),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        HomogeneousPolynomial3 {
            degree: self.degree,
            poly: self.poly.scale(c),
        }
    }
}

impl fmt::Display for HomogeneousPolynomial3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.poly.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::*;
    use proptest::prelude::*;

    #[test]
    fn homogenize_examples() {
        assert_eq!(bq("X + Y").homogenize(2).unwrap().to_string(), "X*Z + Y*Z");
        assert_eq!(bq("X*Y").homogenize(2).unwrap().to_string(), "X*Y");
        assert_eq!(bq("Y - X^2").homogenize(2).unwrap().to_string(), "-X^2 + Y*Z");
        assert_eq!(
            bq("X^3").homogenize(2),
            Err(Error::DegreeTooSmall { target: 2, degree: 3 })
        );
    }

    #[test]
    fn z_valuations() {
        let h = |s: &str, d| HomogeneousPolynomial3::parse(s, q(), d).unwrap();
        assert_eq!(h("X*Z + Y*Z", 2).z_valuation(), Ok(1));
        assert_eq!(h("X*Y", 2).z_valuation(), Ok(0));
        assert_eq!(h("Z^2", 2).z_valuation(), Ok(2));
        assert_eq!(h("0", 2).z_valuation(), Err(Error::ZeroPolynomial));
        assert_eq!(
            HomogeneousPolynomial3::parse("X + Z^2", q(), 2),
            Err(Error::NotHomogeneous(2))
        );
    }

    proptest! {
        #[test]
        fn homogenize_round_trip(f in arb_bivariate(CoefficientField::Rationals, 5, 8), extra in 0u32..3) {
            let d = f.total_degree().unwrap_or(0) + extra;
            let h = f.homogenize(d).unwrap();
            prop_assert_eq!(h.dehomogenize(), f.clone());
            if !f.is_zero() {
                prop_assert_eq!(h.z_valuation().unwrap() >= extra, true);
            }
        }
    }
}
