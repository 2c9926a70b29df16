//! Pencils `mu f# + lambda g#`: the spectrum polynomial, spectral points,
//! per-member statistics, bound verdicts and the reduction of `n`-variate
//! inputs to two variables.
//!
//! Points of the parameter line are written `(mu : lambda)` and normalized to
//! `(t : 1)` or `(1 : 0)`; the member at `(1 : 0)` is `f#`, the one at
//! `(0 : 1)` is `g#`.

mod analyze;
mod bertini;
mod spect;
mod stats;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};
use crate::matrix::Matrix;
use crate::poly::univariate::ProjectivePoint;
use crate::poly::{BivariatePolynomial, HomogeneousPolynomial3};
use crate::ruppert::build_matrix_r_hom;

pub use analyze::{
    analyze, compute_kappa, AnalyzeOptions, FieldRecord, Kappa, Mode, PencilReport, PolygonChoice, SparseRecord,
    SpectFactor, SpectRecord, Verdict, REPORT_SCHEMA_VERSION,
};
pub use bertini::{bertini_reduce, bertini_reduce_pair, BertiniReduction};
pub use spect::{spect_polynomial, SpectComputation};
pub use stats::{member_statistics, MemberStatistics, Provenance};

/// A reduced pair `(f, g)` of degree `d = max(deg f, deg g) >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pencil {
    f: BivariatePolynomial,
    g: BivariatePolynomial,
    d: u32,
    f_sharp: HomogeneousPolynomial3,
    g_sharp: HomogeneousPolynomial3,
}

impl Pencil {
    pub fn new(f: BivariatePolynomial, g: BivariatePolynomial) -> Result<Self> {
        if f.field() != g.field() {
            return Err(Error::FieldMismatch);
        }
        if f.is_zero() || g.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let d = f.total_degree().max(g.total_degree()).unwrap_or(0);
        if d < 2 {
            return Err(Error::DegreeTooLow(d));
        }
        if !f.gcd(&g).is_constant() {
            return Err(Error::CompositeOrNonReduced);
        }
        let f_sharp = f.homogenize(d)?;
        let g_sharp = g.homogenize(d)?;
        Ok(Pencil {
            f,
            g,
            d,
            f_sharp,
            g_sharp,
        })
    }

    pub fn f(&self) -> &BivariatePolynomial {
        &self.f
    }

    pub fn g(&self) -> &BivariatePolynomial {
        &self.g
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn field(&self) -> CoefficientField {
        self.f.field()
    }

    pub fn f_sharp(&self) -> &HomogeneousPolynomial3 {
        &self.f_sharp
    }

    pub fn g_sharp(&self) -> &HomogeneousPolynomial3 {
        &self.g_sharp
    }

    /// `mu f# + lambda g#`.
    pub fn member(&self, point: &ProjectivePoint) -> HomogeneousPolynomial3 {
        let (mu, lambda) = point.coordinates(self.field());
        HomogeneousPolynomial3::combine(&mu, &self.f_sharp, &lambda, &self.g_sharp)
    }

    /// `mu f + lambda g`.
    pub fn affine_member(&self, point: &ProjectivePoint) -> BivariatePolynomial {
        let (mu, lambda) = point.coordinates(self.field());
        &self.f.scale(&mu) + &self.g.scale(&lambda)
    }

    /// The matrices of `R(f#)` and `R(g#)` on a common basis.
    pub fn matrices(&self) -> Result<PencilMatrices> {
        let mf = build_matrix_r_hom(&self.f_sharp)?.matrix;
        let mg = build_matrix_r_hom(&self.g_sharp)?.matrix;
        Ok(PencilMatrices { mf, mg })
    }
}

/// `M(f#)` and `M(g#)`; the matrix of any member is `mu M(f#) + lambda M(g#)`.
#[derive(Clone, Debug)]
pub struct PencilMatrices {
    pub mf: Matrix,
    pub mg: Matrix,
}

impl PencilMatrices {
    pub fn columns(&self) -> usize {
        self.mf.cols()
    }

    pub fn at(&self, mu: &FieldElement, lambda: &FieldElement) -> Matrix {
        Matrix::linear_combination(mu, &self.mf, lambda, &self.mg)
    }

    pub fn kernel_dim(&self, point: &ProjectivePoint) -> u64 {
        let (mu, lambda) = point.coordinates(self.mf.field());
        (self.columns() - self.at(&mu, &lambda).rank()) as u64
    }
}

/// A member with a nontrivial kernel.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralPoint {
    pub point: ProjectivePoint,
    pub kernel_dim: u64,
    /// Multiplicity of the point as a root of the spectrum polynomial.
    pub spect_multiplicity: Option<u32>,
    pub member_is_degree_deficient: bool,
    pub z_multiplicity: u32,
    pub stats: Option<MemberStatistics>,
}

impl SpectralPoint {
    fn new(pencil: &Pencil, point: ProjectivePoint, kernel_dim: u64) -> Result<Self> {
        let z = pencil.member(&point).z_valuation()?;
        Ok(SpectralPoint {
            point,
            kernel_dim,
            spect_multiplicity: None,
            member_is_degree_deficient: z > 0,
            z_multiplicity: z,
            stats: None,
        })
    }
}

/// Every point of the projective line over `F_p` whose member has a
/// nontrivial kernel, in the order `(0:1), (1:1), ..., (p-1:1), (1:0)`.
/// Points defined only over extensions of `F_p` are not visited.
pub fn spectrum_bruteforce(pencil: &Pencil) -> Result<Vec<SpectralPoint>> {
    let field = pencil.field();
    let p = match field {
        CoefficientField::Prime(p) => p,
        CoefficientField::Rationals => return Err(Error::FieldMismatch),
    };
    let d = pencil.degree() as u64;
    let required = d * (d - 1);
    if p <= required {
        return Err(Error::CharacteristicTooSmall {
            characteristic: p,
            required,
        });
    }
    let mats = pencil.matrices()?;
    let dims: Vec<(ProjectivePoint, u64)> = (0..=p)
        .into_par_iter()
        .map(|i| {
            let point = if i == p {
                ProjectivePoint::Infinity
            } else {
                ProjectivePoint::Affine(field.from_i64(i as i64))
            };
            let k = mats.kernel_dim(&point);
            (point, k)
        })
        .collect();
    let spectral: Vec<(ProjectivePoint, u64)> = dims.into_iter().filter(|(_, k)| *k > 0).collect();
    if spectral.len() as u64 == p + 1 {
        return Err(Error::CompositeOrNonReduced);
    }
    spectral
        .into_iter()
        .map(|(pt, k)| SpectralPoint::new(pencil, pt, k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::*;

    fn fp(p: u64) -> CoefficientField {
        CoefficientField::prime(p).unwrap()
    }

    fn bp(s: &str, p: u64) -> BivariatePolynomial {
        BivariatePolynomial::parse(s, fp(p)).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(Pencil::new(bq("X"), bq("Y")).unwrap_err(), Error::DegreeTooLow(1));
        assert_eq!(
            Pencil::new(bq("X*(X+Y)"), bq("X*Y - X")).unwrap_err(),
            Error::CompositeOrNonReduced
        );
        let f = bq("Y^2 - X^3 - 1");
        assert_eq!(Pencil::new(f.clone(), f).unwrap_err(), Error::CompositeOrNonReduced);
        let p = Pencil::new(bq("X*Y"), bq("X + Y")).unwrap();
        assert_eq!(p.degree(), 2);
        assert_eq!(p.member(&ProjectivePoint::Infinity), p.f_sharp().clone());
    }

    #[test]
    fn bruteforce_planted_conics() {
        let p = Pencil::new(bp("(X+Y)*(X-Y+1)", 101), bp("X^2 + Y^2 + 1", 101)).unwrap();
        let pts = spectrum_bruteforce(&p).unwrap();
        let inf = pts.iter().find(|s| s.point == ProjectivePoint::Infinity).unwrap();
        assert_eq!(inf.kernel_dim, 1);
    }

    #[test]
    fn bruteforce_double_line_at_infinity() {
        let p = Pencil::new(bp("Y - X^2", 101), bp("1", 101)).unwrap();
        let pts = spectrum_bruteforce(&p).unwrap();
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].point, ProjectivePoint::Affine(fp(101).zero()));
        assert_eq!(pts[0].kernel_dim, 2);
        assert_eq!(pts[0].z_multiplicity, 2);
    }

    #[test]
    fn bruteforce_small_prime() {
        let p = Pencil::new(bp("X^3 + Y", 5), bp("1", 5)).unwrap();
        assert!(matches!(
            spectrum_bruteforce(&p),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }
}
