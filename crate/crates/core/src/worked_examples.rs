//! Reference computations for three families of pencils: the dense
//! triangle, the rectangle family `f = X(X+1)...(X+d-2)Y + X, g = 1`, and a
//! five-term sparse pencil of degree 5. Each result carries the computed
//! values next to the published ones and lists every disagreement.

use serde::Serialize;

use crate::error::Result;
use crate::field::CoefficientField;
use crate::newton::{basis_e_n, newton_polygon, superior_envelope, LatticePolygon, Point};
use crate::poly::univariate::ProjectivePoint;
use crate::poly::{BivariatePolynomial, MPoly, VAR_X, VAR_Y};
use crate::spectrum::{analyze, AnalyzeOptions, Mode, Pencil, PolygonChoice};

/// Lattice counts of a polygon with its preferred good edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolygonCounts {
    pub vertices: Vec<Point>,
    pub n: u64,
    pub n_x: u64,
    pub n_y: u64,
    pub n_e: u64,
    pub edge_normal: Option<(i64, i64)>,
    /// `2N - N_X - N_Y - N_E`.
    pub dimension: i64,
}

impl PolygonCounts {
    pub fn of(p: &LatticePolygon) -> Self {
        let e = p.preferred_good_edge();
        PolygonCounts {
            vertices: p.vertices().to_vec(),
            n: p.n_total(),
            n_x: p.n_x(),
            n_y: p.n_y(),
            n_e: e.as_ref().map_or(0, |e| e.n_e),
            edge_normal: e.as_ref().map(|e| (e.a, e.b)),
            dimension: p.sparse_dimension(e.as_ref()),
        }
    }

    pub fn tuple(&self) -> (u64, u64, u64, u64) {
        (self.n, self.n_x, self.n_y, self.n_e)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DenseExample {
    pub d: i64,
    pub counts: PolygonCounts,
    /// Dimension of the constrained domain built explicitly.
    pub basis_dimension: usize,
    pub expected_dimension: i64,
    pub stated: (u64, u64, u64, u64),
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RectangleExample {
    pub d: u32,
    pub f: String,
    pub counts: PolygonCounts,
    pub basis_dimension: usize,
    pub kappa: u64,
    pub e_infinity: u32,
    /// `dimension + kappa` from the computed counts.
    pub bound: i64,
    /// Bound obtained with the stated reading `N_Y = d`.
    pub stated_bound: i64,
    pub stated_n_y: u64,
    pub m: u64,
    pub m_lower: u64,
    pub rho: u64,
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseFiveTermExample {
    pub f: String,
    pub g: String,
    pub d: u32,
    pub superior: PolygonCounts,
    pub newton: PolygonCounts,
    pub dense_bound: i64,
    pub kappa: u64,
    pub stated_superior: (u64, u64, u64, u64, i64),
    pub stated_newton: (u64, u64, u64, u64, i64),
    pub origin_point: Option<ProjectivePoint>,
    pub origin_spectral: bool,
    pub m: u64,
    pub rho: u64,
    pub discrepancies: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleBundle {
    pub dense: Vec<DenseExample>,
    pub rectangle: Vec<RectangleExample>,
    pub five_term: SparseFiveTermExample,
}

impl ExampleBundle {
    pub fn discrepancies(&self) -> Vec<String> {
        let mut out = Vec::new();
        out.extend(self.dense.iter().flat_map(|e| e.discrepancies.clone()));
        out.extend(self.rectangle.iter().flat_map(|e| e.discrepancies.clone()));
        out.extend(self.five_term.discrepancies.clone());
        out
    }
}

fn q() -> CoefficientField {
    CoefficientField::Rationals
}

pub fn dense_example(d: i64) -> Result<DenseExample> {
    let t = LatticePolygon::dense_triangle(d);
    let counts = PolygonCounts::of(&t);
    let edge = t.preferred_good_edge();
    let basis_dimension = basis_e_n(q(), &t, edge.as_ref(), d)?.dimension();
    let expected_dimension = d * d - 1;
    let k = (d + 1) as u64;
    let stated = ((d as u64 + 2) * (d as u64 + 1) / 2, k, k, k);
    let mut discrepancies = Vec::new();
    if counts.tuple() != stated {
        discrepancies.push(format!("dense d={d}: counts {:?}, stated {:?}", counts.tuple(), stated));
    }
    if counts.dimension != expected_dimension || basis_dimension as i64 != expected_dimension {
        discrepancies.push(format!(
            "dense d={d}: dimension {} (basis {basis_dimension}), expected {expected_dimension}",
            counts.dimension
        ));
    }
    Ok(DenseExample {
        d,
        counts,
        basis_dimension,
        expected_dimension,
        stated,
        discrepancies,
    })
}

/// `X (X + 1) ... (X + d - 2) Y + X`.
pub fn rectangle_polynomial(d: u32) -> BivariatePolynomial {
    let x = MPoly::var(q(), VAR_X);
    let y = MPoly::var(q(), VAR_Y);
    let prod = (1..=d as i64 - 2).fold(x.clone(), |acc, k| &acc * &(&x + &MPoly::constant(q().from_i64(k))));
    &(&prod * &y) + &x
}

pub fn rectangle_example(d: u32, seed: u64) -> Result<RectangleExample> {
    let f = rectangle_polynomial(d);
    let pencil = Pencil::new(f.clone(), MPoly::one(q()))?;
    let report = analyze(
        &pencil,
        &AnalyzeOptions {
            mode: Mode::Sparse,
            polygon: PolygonChoice::Auto,
            seed,
        },
    )?;
    let sparse = report.sparse.as_ref().expect("sparse mode");
    let polygon = LatticePolygon::from_points(&sparse.vertices);
    let counts = PolygonCounts::of(&polygon);
    let edge = polygon.preferred_good_edge();
    let level = edge.as_ref().map_or(0, |e| e.c);
    let basis_dimension = basis_e_n(q(), &polygon, edge.as_ref(), level)?.dimension();
    let di = d as i64;
    let stated_n_y = d as u64;
    let stated_bound = 2 * di - 1;
    let bound = counts.dimension + report.kappa as i64;
    let m_lower = 2 * d as u64 - 2;
    let mut discrepancies = Vec::new();
    if counts.n_y != stated_n_y {
        discrepancies.push(format!(
            "rectangle d={d}: N_Y = {} (closed region), stated {stated_n_y}; bound {bound} vs stated {stated_bound}",
            counts.n_y
        ));
    }
    if (counts.n, counts.n_x, counts.n_e) != (2 * d as u64, d as u64, d as u64) || report.kappa != d as u64 - 1 {
        discrepancies.push(format!(
            "rectangle d={d}: N={}, N_X={}, N_E={}, kappa={}",
            counts.n, counts.n_x, counts.n_e, report.kappa
        ));
    }
    if report.m < m_lower {
        discrepancies.push(format!("rectangle d={d}: m = {} below {m_lower}", report.m));
    }
    Ok(RectangleExample {
        d,
        f: f.to_string(),
        counts,
        basis_dimension,
        kappa: report.kappa,
        e_infinity: report.kappa_detail.e_infinity,
        bound,
        stated_bound,
        stated_n_y,
        m: report.m,
        m_lower,
        rho: report.rho,
        discrepancies,
    })
}

/// `f = 1 + 2XY + 3X^2Y^2 + 5X^3Y^2 + 7X^2Y^3`,
/// `g = 2 - XY + X^2Y^2 + 4X^3Y^2 - 3X^2Y^3`.
pub fn five_term_pencil() -> Result<Pencil> {
    let f = BivariatePolynomial::parse("1 + 2*X*Y + 3*X^2*Y^2 + 5*X^3*Y^2 + 7*X^2*Y^3", q())?;
    let g = BivariatePolynomial::parse("2 - X*Y + X^2*Y^2 + 4*X^3*Y^2 - 3*X^2*Y^3", q())?;
    Pencil::new(f, g)
}

pub fn five_term_example(seed: u64) -> Result<SparseFiveTermExample> {
    let pencil = five_term_pencil()?;
    let nf = newton_polygon(pencil.f())?;
    let superior = PolygonCounts::of(&superior_envelope(&nf)?);
    let newton = PolygonCounts::of(&nf);
    let report = analyze(
        &pencil,
        &AnalyzeOptions {
            mode: Mode::Sparse,
            polygon: PolygonChoice::Newton,
            seed,
        },
    )?;
    let sparse = report.sparse.as_ref().expect("sparse mode");
    let d = pencil.degree() as i64;
    let stated_superior = (15, 4, 4, 3, 19);
    let stated_newton = (5, 1, 1, 2, 10);
    let mut discrepancies = Vec::new();
    let sup = (superior.n, superior.n_x, superior.n_y, superior.n_e, superior.dimension);
    if sup != stated_superior {
        discrepancies.push(format!(
            "five-term superior envelope: {sup:?}, stated {stated_superior:?}"
        ));
    }
    let new = (newton.n, newton.n_x, newton.n_y, newton.n_e, newton.dimension);
    if new != stated_newton {
        discrepancies.push(format!(
            "five-term Newton polygon: {new:?}, stated {stated_newton:?} (2N - N_X - N_Y - N_E = {})",
            newton.dimension
        ));
    }
    let origin_spectral = sparse.origin_kernel_dim.is_some_and(|k| k > 0);
    Ok(SparseFiveTermExample {
        f: pencil.f().to_string(),
        g: pencil.g().to_string(),
        d: pencil.degree(),
        superior,
        newton,
        dense_bound: d * d - 1,
        kappa: report.kappa,
        stated_superior,
        stated_newton,
        origin_point: sparse.origin_point.clone(),
        origin_spectral,
        m: report.m,
        rho: report.rho,
        discrepancies,
    })
}

/// Dense `d = 2..6`, rectangles `d = 3, 4, 5` and the five-term pencil.
pub fn all_examples(seed: u64) -> Result<ExampleBundle> {
    Ok(ExampleBundle {
        dense: (2..=6).map(dense_example).collect::<Result<_>>()?,
        rectangle: (3..=5).map(|d| rectangle_example(d, seed)).collect::<Result<_>>()?,
        five_term: five_term_example(seed)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dense_three() {
        let e = dense_example(3).unwrap();
        assert_eq!(e.counts.tuple(), (10, 4, 4, 4));
        assert_eq!(e.counts.dimension, 8);
        assert_eq!(e.basis_dimension, 8);
        assert!(e.discrepancies.is_empty());
    }

    #[test]
    fn rectangle_polynomial_shape() {
        assert_eq!(
            rectangle_polynomial(3),
            crate::poly::test_support::bq("X^2*Y + X*Y + X")
        );
        assert_eq!(rectangle_polynomial(2), crate::poly::test_support::bq("X*Y + X"));
    }

    #[test]
    fn rectangle_four() {
        let e = rectangle_example(4, 0).unwrap();
        assert_eq!((e.counts.n, e.counts.n_x, e.counts.n_y, e.counts.n_e), (8, 4, 2, 4));
        assert_eq!(e.kappa, 3);
        assert_eq!(e.m, 6);
        assert_eq!(e.bound, 9);
        assert_eq!(e.stated_bound, 7);
        assert_eq!(e.basis_dimension as i64, e.counts.dimension);
        assert_eq!(e.discrepancies.len(), 1);
    }
}
