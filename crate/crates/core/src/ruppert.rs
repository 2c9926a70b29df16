//! Ruppert's linear maps and their kernel-dimension formulas.
//!
//! All maps send a pair `(G, H)` to
//! `f*dG/dY - G*df/dY - f*dH/dX + H*df/dX`, i.e. `f^2 (d(G/f)/dY - d(H/f)/dX)`.
//! They differ in their domain ([`DomainBasis`]) and codomain:
//!
//! | map | domain | codomain |
//! |-----|--------|----------|
//! | `G_nu(f)` | all pairs of degree `<= nu-1` | degree `<= nu+d-2` |
//! | `R_nu(f)` | `E_nu`: `deg(XG+YH) <= nu-1` | degree `<= 2d-3` if `nu = d`, else `<= nu+d-2` |
//! | `R(F)` | homogeneous pairs of degree `d-1` with `Z | XG+YH` | forms of degree `2d-3` (image divided by `Z`) |
//!
//! Codomain monomials are listed in ascending graded-lex order and the
//! matrix columns follow the domain basis order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};
use crate::matrix::Matrix;
use crate::poly::{
    grlex_cmp, monomials_of_degree, monomials_up_to, BivariatePolynomial, HomogeneousPolynomial3, MPoly, VAR_X, VAR_Y,
    VAR_Z,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MapKind {
    GNu,
    RNu,
    RHomogeneous,
    SrSparse,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DomainKind {
    FullPairs {
        nu: u32,
    },
    ConstrainedPairs {
        nu: u32,
    },
    HomogeneousConstrained {
        degree: u32,
    },
    SparseConstrained {
        vertices: Vec<(i64, i64)>,
        edge: Option<(i64, i64, i64)>,
        level: i64,
    },
}

/// An ordered basis of pairs `(G, H)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DomainBasis<const N: usize> {
    pub kind: DomainKind,
    pub elements: Vec<(MPoly<N>, MPoly<N>)>,
}

impl<const N: usize> DomainBasis<N> {
    pub fn dimension(&self) -> usize {
        self.elements.len()
    }

    /// Coordinates of `(g, h)` in this basis, if it lies in the span.
    pub fn coordinates(&self, g: &MPoly<N>, h: &MPoly<N>) -> Option<Vec<FieldElement>> {
        let field = g.field();
        let monos = pair_monomials(self.elements.iter().chain(std::iter::once(&(g.clone(), h.clone()))));
        let columns: Vec<Vec<FieldElement>> = self.elements.iter().map(|(a, b)| stack(a, b, &monos)).collect();
        let m = Matrix::from_columns(field, 2 * monos.len(), &columns);
        m.solve(&stack(g, h, &monos))
    }

    /// The pair with the given coordinates.
    pub fn combine(&self, field: CoefficientField, coords: &[FieldElement]) -> (MPoly<N>, MPoly<N>) {
        let mut g = MPoly::zero(field);
        let mut h = MPoly::zero(field);
        for ((a, b), c) in self.elements.iter().zip(coords) {
            if !c.is_zero() {
                g = &g + &a.scale(c);
                h = &h + &b.scale(c);
            }
        }
        (g, h)
    }

    /// Rank of the basis vectors (an independent check of the dimension).
    pub fn rank(&self, field: CoefficientField) -> usize {
        let monos = pair_monomials(self.elements.iter());
        let columns: Vec<Vec<FieldElement>> = self.elements.iter().map(|(a, b)| stack(a, b, &monos)).collect();
        Matrix::from_columns(field, 2 * monos.len(), &columns).rank()
    }
}

fn pair_monomials<'a, const N: usize, I>(pairs: I) -> Vec<[u32; N]>
where
    I: Iterator<Item = &'a (MPoly<N>, MPoly<N>)>,
{
    let mut monos: Vec<[u32; N]> = pairs
        .flat_map(|(a, b)| a.support().chain(b.support()).copied())
        .collect();
    monos.sort_by(|a, b| grlex_cmp(a, b));
    monos.dedup();
    monos
}

fn stack<const N: usize>(g: &MPoly<N>, h: &MPoly<N>, monos: &[[u32; N]]) -> Vec<FieldElement> {
    let mut v = g.coefficient_vector(monos).expect("monomial list covers support");
    v.extend(h.coefficient_vector(monos).expect("monomial list covers support"));
    v
}

/// The matrix of one Ruppert-type map with explicit bases.
#[derive(Clone, Debug)]
pub struct RuppertMatrix<const N: usize> {
    pub kind: MapKind,
    pub domain: DomainBasis<N>,
    pub codomain: Vec<[u32; N]>,
    pub matrix: Matrix,
    pub source: String,
}

/// A kernel: its dimension and a basis of pairs.
#[derive(Clone, Debug)]
pub struct Kernel<const N: usize> {
    pub dimension: usize,
    pub basis: Vec<(MPoly<N>, MPoly<N>)>,
    pub coordinates: Vec<Vec<FieldElement>>,
}

impl<const N: usize> RuppertMatrix<N> {
    pub fn field(&self) -> CoefficientField {
        self.matrix.field()
    }

    pub fn kernel(&self) -> Kernel<N> {
        let coords = self.matrix.nullspace();
        let basis = coords.iter().map(|c| self.domain.combine(self.field(), c)).collect();
        Kernel {
            dimension: coords.len(),
            basis,
            coordinates: coords,
        }
    }

    pub fn kernel_dimension(&self) -> usize {
        self.matrix.cols() - self.matrix.rank()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }

    /// True when the domain vector with these coordinates maps to zero.
    pub fn annihilates(&self, coords: &[FieldElement]) -> bool {
        self.matrix.mul_vec(coords).iter().all(|v| v.is_zero())
    }

    /// `a*M(f) + b*M(g)` for two matrices over the same domain.
    pub fn combine(a: &FieldElement, ma: &Self, b: &FieldElement, mb: &Self) -> Self {
        assert_eq!(ma.codomain, mb.codomain, "codomain mismatch");
        assert_eq!(ma.domain.dimension(), mb.domain.dimension(), "domain mismatch");
        RuppertMatrix {
            kind: ma.kind,
            domain: ma.domain.clone(),
            codomain: ma.codomain.clone(),
            matrix: Matrix::linear_combination(a, &ma.matrix, b, &mb.matrix),
            source: format!("({a})*[{}] + ({b})*[{}]", ma.source, mb.source),
        }
    }
}

/// `f*dG/dY - G*df/dY - f*dH/dX + H*df/dX`.
pub fn ruppert_image<const N: usize>(f: &MPoly<N>, g: &MPoly<N>, h: &MPoly<N>) -> MPoly<N> {
    let fx = f.derivative(VAR_X);
    let fy = f.derivative(VAR_Y);
    let a = f * &g.derivative(VAR_Y);
    let b = g * &fy;
    let c = f * &h.derivative(VAR_X);
    let d = h * &fx;
    &(&(&a - &b) - &c) + &d
}

/// Columns of the map on `domain` with images post-processed by `image`.
/// An image term outside the codomain is reported as leakage at its degree.
pub(crate) fn assemble<const N: usize, F>(
    kind: MapKind,
    domain: DomainBasis<N>,
    codomain: Vec<[u32; N]>,
    field: CoefficientField,
    source: String,
    image: F,
) -> Result<RuppertMatrix<N>>
where
    F: Fn(&MPoly<N>, &MPoly<N>) -> Result<MPoly<N>>,
{
    let mut columns = Vec::with_capacity(domain.dimension());
    for (g, h) in &domain.elements {
        let img = image(g, h)?;
        match img.coefficient_vector(&codomain) {
            Some(v) => columns.push(v),
            None => {
                let bad = img
                    .support()
                    .filter(|e| codomain.binary_search_by(|m| grlex_cmp(m, *e)).is_err())
                    .map(|e| e.iter().sum::<u32>() as i64)
                    .max()
                    .unwrap_or(-1);
                return Err(Error::DegreeLeakage(bad));
            }
        }
    }
    Ok(RuppertMatrix {
        kind,
        matrix: Matrix::from_columns(field, codomain.len(), &columns),
        domain,
        codomain,
        source,
    })
}

fn degree_of(f: &BivariatePolynomial) -> Result<u32> {
    f.total_degree().ok_or(Error::ZeroPolynomial)
}

/// All pairs of polynomials of degree `<= nu - 1`: first `(m, 0)`, then `(0, m)`.
pub fn basis_full(field: CoefficientField, nu: u32) -> DomainBasis<2> {
    let monos = monomials_up_to::<2>(nu as i64 - 1);
    let one = field.one();
    let mut elements: Vec<_> = monos
        .iter()
        .map(|m| (MPoly::monomial(*m, one.clone()), MPoly::zero(field)))
        .collect();
    elements.extend(
        monos
            .iter()
            .map(|m| (MPoly::zero(field), MPoly::monomial(*m, one.clone()))),
    );
    DomainBasis {
        kind: DomainKind::FullPairs { nu },
        elements,
    }
}

/// Basis of `E_nu = { (G, H) : deg G, deg H <= nu-1, deg(XG + YH) <= nu-1 }`:
/// `(m, 0)` and `(0, m)` for `deg m <= nu-2`, then `(Y Q, -X Q)` for the
/// monomials `Q` of degree `nu-2`. Dimension `nu^2 - 1`.
pub fn basis_e(field: CoefficientField, nu: u32) -> DomainBasis<2> {
    let low = monomials_up_to::<2>(nu as i64 - 2);
    let one = field.one();
    let mut elements: Vec<_> = low
        .iter()
        .map(|m| (MPoly::monomial(*m, one.clone()), MPoly::zero(field)))
        .collect();
    elements.extend(
        low.iter()
            .map(|m| (MPoly::zero(field), MPoly::monomial(*m, one.clone()))),
    );
    for q in monomials_of_degree::<2>(nu as i64 - 2) {
        elements.push((
            MPoly::monomial([q[0], q[1] + 1], one.clone()),
            MPoly::monomial([q[0] + 1, q[1]], -&one),
        ));
    }
    DomainBasis {
        kind: DomainKind::ConstrainedPairs { nu },
        elements,
    }
}

/// The homogeneous domain `E`: the elements of [`basis_e`] for `nu = d`
/// homogenized to degree `d - 1`.
pub fn basis_e_homogeneous(field: CoefficientField, degree: u32) -> DomainBasis<3> {
    let affine = basis_e(field, degree);
    let lift = |p: &BivariatePolynomial| -> MPoly<3> {
        HomogeneousPolynomial3::homogenize(p, degree - 1)
            .expect("basis elements have degree <= d-1")
            .poly()
            .clone()
    };
    DomainBasis {
        kind: DomainKind::HomogeneousConstrained { degree },
        elements: affine.elements.iter().map(|(g, h)| (lift(g), lift(h))).collect(),
    }
}

/// Matrix of `G_nu(f)`.
pub fn build_matrix_g(f: &BivariatePolynomial, nu: u32) -> Result<RuppertMatrix<2>> {
    let d = degree_of(f)?;
    if nu < d {
        return Err(Error::NuTooSmall { nu, degree: d });
    }
    let codomain = monomials_up_to::<2>(nu as i64 + d as i64 - 2);
    assemble(
        MapKind::GNu,
        basis_full(f.field(), nu),
        codomain,
        f.field(),
        f.to_string(),
        |g, h| Ok(ruppert_image(f, g, h)),
    )
}

/// Matrix of `R_nu(f)` on `E_nu`. For `nu = deg f` the top component of
/// every image must vanish and the codomain stops at degree `2d - 3`; for
/// larger `nu` that component can be nonzero and is kept.
pub fn build_matrix_r(f: &BivariatePolynomial, nu: u32) -> Result<RuppertMatrix<2>> {
    let d = degree_of(f)?;
    if nu < d {
        return Err(Error::NuTooSmall { nu, degree: d });
    }
    let top = nu as i64 + d as i64 - 2;
    let max = if nu == d { top - 1 } else { top };
    build_r_with_codomain(f, nu, max)
}

fn build_r_with_codomain(f: &BivariatePolynomial, nu: u32, max_degree: i64) -> Result<RuppertMatrix<2>> {
    let codomain = monomials_up_to::<2>(max_degree);
    assemble(
        MapKind::RNu,
        basis_e(f.field(), nu),
        codomain,
        f.field(),
        f.to_string(),
        |g, h| Ok(ruppert_image(f, g, h)),
    )
}

/// Matrix of `R_d(1): (G, H) -> dG/dY - dH/dX` on `E_d`, codomain degree `<= d-2`.
pub fn build_matrix_r_of_one(field: CoefficientField, d: u32) -> Result<RuppertMatrix<2>> {
    build_r_with_codomain(&MPoly::one(field), d, d as i64 - 2)
}

/// Matrix of the homogeneous map `R(F)`: images divided by `Z`, codomain
/// the forms of degree `2d - 3`.
pub fn build_matrix_r_hom(f: &HomogeneousPolynomial3) -> Result<RuppertMatrix<3>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = f.degree();
    if d == 0 {
        return Err(Error::DegreeTooLow(0));
    }
    let field = f.field();
    let codomain = monomials_of_degree::<3>(2 * d as i64 - 3);
    let z = MPoly::<3>::var(field, VAR_Z);
    let poly = f.poly();
    assemble(
        MapKind::RHomogeneous,
        basis_e_homogeneous(field, d),
        codomain,
        field,
        f.to_string(),
        |g, h| {
            let img = ruppert_image(poly, g, h);
            img.div_exact(&z).ok_or(Error::DegreeLeakage(2 * d as i64 - 2))
        },
    )
}

/// `dim ker R(f#)` for `f` of degree `d >= 1`: the number of absolutely
/// irreducible factors minus one when `f` is squarefree, and 0 exactly when
/// `f` is absolutely irreducible. Needs characteristic 0 or `> d(d-1)`.
pub fn irreducibility_kernel(f: &BivariatePolynomial) -> Result<usize> {
    let d = degree_of(f)?;
    if d == 0 {
        return Err(Error::DegreeTooLow(0));
    }
    let required = d as u64 * (d as u64 - 1);
    if !f.field().characteristic_exceeds(required) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: f.field().characteristic(),
            required,
        });
    }
    if d == 1 {
        return Ok(0);
    }
    Ok(build_matrix_r_hom(&f.homogenize(d)?)?.kernel_dimension())
}

fn check_profile(pairs: &[(u32, u32)]) -> Result<()> {
    if pairs.is_empty() {
        return Err(Error::InconsistentDegrees("empty factor profile".into()));
    }
    if pairs.iter().any(|&(di, ei)| di == 0 || ei == 0) {
        return Err(Error::InconsistentDegrees(
            "factor degrees and multiplicities must be positive".into(),
        ));
    }
    Ok(())
}

fn excess(pairs: &[(u32, u32)]) -> u64 {
    pairs.iter().map(|&(di, ei)| di as u64 * (ei as u64 - 1)).sum()
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `dim ker G_nu(f) = r - 1 + C(2 + nu - d + sum d_i (e_i - 1), 2)`.
pub fn dim_ker_g_formula(r: u32, d: u32, nu: u32, pairs: &[(u32, u32)]) -> Result<u64> {
    check_profile(pairs)?;
    if r as usize != pairs.len() {
        return Err(Error::InconsistentDegrees(format!(
            "r = {r} but {} factors given",
            pairs.len()
        )));
    }
    let total: u64 = pairs.iter().map(|&(di, ei)| di as u64 * ei as u64).sum();
    if total != d as u64 {
        return Err(Error::InconsistentDegrees(format!("sum d_i e_i = {total} but d = {d}")));
    }
    if nu < d {
        return Err(Error::InconsistentDegrees(format!("nu = {nu} < d = {d}")));
    }
    Ok(r as u64 - 1 + binom2(2 + (nu - d) as u64 + excess(pairs)))
}

/// `dim ker R(F) = dim ker R_d(f) = r - 2 + C(2 + sum d_i (e_i - 1), 2)`.
pub fn dim_ker_r_hom_formula(r: u32, pairs: &[(u32, u32)]) -> Result<u64> {
    check_profile(pairs)?;
    if r as usize != pairs.len() {
        return Err(Error::InconsistentDegrees(format!(
            "r = {r} but {} factors given",
            pairs.len()
        )));
    }
    Ok(r as u64 + binom2(2 + excess(pairs)) - 2)
}

/// `m - 1 + omega + theta` of a factor profile, with `m = sum e_i`,
/// `omega = sum d_i (e_i - 1)`, `theta = C(omega + 1, 2) - sum (e_i - 1)`.
pub fn key_equation_value(pairs: &[(u32, u32)]) -> i64 {
    let m: i64 = pairs.iter().map(|&(_, e)| e as i64).sum();
    let omega = excess(pairs) as i64;
    let theta = binom2(omega as u64 + 1) as i64 - (m - pairs.len() as i64);
    m - 1 + omega + theta
}

/// Kernel witnesses of `R_d(f_1 ... f_r)` for a squarefree product:
/// `-d_i (f/f_1) grad f_1 + d_1 (f/f_i) grad f_i`, `i = 2..r`. Each one is
/// checked against the matrix of `R_d(f)`.
pub fn squarefree_r_kernel_witnesses(
    factors: &[BivariatePolynomial],
    degrees: &[u32],
) -> Result<Vec<(BivariatePolynomial, BivariatePolynomial)>> {
    if factors.len() != degrees.len() || factors.is_empty() {
        return Err(Error::InconsistentDegrees("one degree per factor required".into()));
    }
    for (i, (fi, &di)) in factors.iter().zip(degrees).enumerate() {
        if fi.total_degree() != Some(di) || di == 0 {
            return Err(Error::InconsistentDegrees(format!(
                "factor {i} does not have degree {di}"
            )));
        }
    }
    for i in 0..factors.len() {
        for j in i + 1..factors.len() {
            if !factors[i].gcd(&factors[j]).is_constant() {
                return Err(Error::FactorsNotCoprime(i, j));
            }
        }
    }
    let field = factors[0].field();
    let f = factors.iter().fold(MPoly::one(field), |acc, p| &acc * p);
    let d = degree_of(&f)?;
    let cof: Vec<BivariatePolynomial> = factors
        .iter()
        .map(|p| f.div_exact(p).expect("factor divides"))
        .collect();
    let grad = |k: usize, var: usize| &cof[k] * &factors[k].derivative(var);
    let d1 = field.from_i64(degrees[0] as i64);
    let mut out = Vec::new();
    for (i, &deg) in degrees.iter().enumerate().skip(1) {
        let di = field.from_i64(deg as i64);
        let g = &grad(0, VAR_X).scale(&-&di) + &grad(i, VAR_X).scale(&d1);
        let h = &grad(0, VAR_Y).scale(&-&di) + &grad(i, VAR_Y).scale(&d1);
        out.push((g, h));
    }
    let m = build_matrix_r(&f, d)?;
    for (k, (g, h)) in out.iter().enumerate() {
        let ok = m.domain.coordinates(g, h).is_some_and(|c| m.annihilates(&c));
        if !ok {
            return Err(Error::InconsistentDegrees(format!(
                "witness {} is not in the kernel",
                k + 2
            )));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::*;
    use proptest::prelude::*;

    fn hq(s: &str, d: u32) -> HomogeneousPolynomial3 {
        HomogeneousPolynomial3::parse(s, q(), d).unwrap()
    }

    #[test]
    fn basis_sizes() {
        assert_eq!(basis_e(q(), 1).dimension(), 0);
        let b2 = basis_e(q(), 2);
        assert_eq!(b2.dimension(), 3);
        assert_eq!(b2.elements[2], (bq("Y"), bq("-X")));
        for nu in 1..7 {
            let b = basis_e(q(), nu);
            assert_eq!(b.dimension() as u32, nu * nu - 1);
            assert_eq!(b.rank(q()), b.dimension());
            assert_eq!(basis_full(q(), nu).dimension() as u32, nu * (nu + 1));
        }
    }

    #[test]
    fn g_kernel_examples() {
        assert_eq!(build_matrix_g(&bq("X^2+Y^2+1"), 2).unwrap().kernel_dimension(), 1);
        assert_eq!(build_matrix_g(&bq("(X+Y)*(X-Y)"), 2).unwrap().kernel_dimension(), 2);
        assert_eq!(build_matrix_g(&bq("(X+Y)^2"), 2).unwrap().kernel_dimension(), 3);
        assert_eq!(build_matrix_g(&bq("(X+Y)^2"), 3).unwrap().kernel_dimension(), 6);
        assert_eq!(
            build_matrix_g(&bq("(X+1)^2*(X^2+Y+1)"), 4).unwrap().kernel_dimension(),
            4
        );
        assert!(matches!(
            build_matrix_g(&bq("X^3"), 2),
            Err(Error::NuTooSmall { nu: 2, degree: 3 })
        ));
        assert!(matches!(build_matrix_g(&bq("0"), 2), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn r_kernel_examples() {
        let m = build_matrix_r(&bq("(X+Y)^2"), 2).unwrap();
        let ker = m.kernel();
        assert_eq!(ker.dimension, 2);
        for (g, h) in [(bq("1"), bq("1")), (bq("Y"), bq("-X"))] {
            assert!(m.domain.coordinates(&g, &h).is_some_and(|c| m.annihilates(&c)));
        }
        assert_eq!(build_matrix_r(&bq("Y^2 - X^3 - X"), 3).unwrap().kernel_dimension(), 0);
        assert_eq!(build_matrix_r(&bq("X*Y*(X+Y+1)"), 3).unwrap().kernel_dimension(), 2);
    }

    #[test]
    fn leakage_beyond_nu_equal_d() {
        // f = X, nu = 2: (Y, -X) maps to X, of degree nu + d - 2
        let img = ruppert_image(&bq("X"), &bq("Y"), &bq("-X"));
        assert_eq!(img, bq("X"));
        let m = build_matrix_r(&bq("X"), 2).unwrap();
        assert_eq!(m.codomain.len(), 3);
    }

    #[test]
    fn rank_of_r_one() {
        for d in 2..=8u32 {
            let m = build_matrix_r_of_one(q(), d).unwrap();
            assert_eq!(m.rank() as u32, d * (d - 1) / 2, "d = {d}");
        }
        let m = build_matrix_r_of_one(q(), 2).unwrap();
        let images: Vec<_> = (0..3).map(|j| m.matrix.column(j)).collect();
        assert_eq!(images, vec![vec![q().zero()], vec![q().zero()], vec![q().from_i64(2)]]);
    }

    #[test]
    fn homogeneous_kernel_examples() {
        assert_eq!(build_matrix_r_hom(&hq("Z^2", 2)).unwrap().kernel_dimension(), 2);
        assert_eq!(build_matrix_r_hom(&hq("X*Y", 2)).unwrap().kernel_dimension(), 1);
        let cubic = bq("Y^2 - X^3 - X").homogenize(3).unwrap();
        let m = build_matrix_r_hom(&cubic).unwrap();
        assert_eq!(m.codomain.len(), 10);
        let ker = m.kernel();
        assert_eq!(ker.dimension, 0);
        assert!(ker.basis.is_empty());
        let f = hq("Z^3*(X^2 + Y*Z + Z^2)", 5);
        assert_eq!(
            build_matrix_r_hom(&f).unwrap().kernel_dimension() as u64,
            dim_ker_r_hom_formula(2, &[(1, 3), (2, 1)]).unwrap()
        );
    }

    #[test]
    fn formulas() {
        assert_eq!(dim_ker_g_formula(1, 3, 3, &[(3, 1)]), Ok(1));
        assert_eq!(dim_ker_g_formula(2, 4, 4, &[(1, 2), (2, 1)]), Ok(4));
        assert_eq!(dim_ker_g_formula(1, 2, 3, &[(1, 2)]), Ok(6));
        assert!(dim_ker_g_formula(1, 3, 3, &[(1, 2)]).is_err());
        assert!(dim_ker_g_formula(2, 2, 2, &[(1, 2)]).is_err());
        assert_eq!(dim_ker_r_hom_formula(3, &[(1, 1), (1, 1), (2, 1)]), Ok(2));
        assert_eq!(dim_ker_r_hom_formula(1, &[(1, 2)]), Ok(2));
        assert_eq!(dim_ker_r_hom_formula(2, &[(1, 3), (2, 1)]), Ok(6));
    }

    #[test]
    fn witnesses() {
        let w = squarefree_r_kernel_witnesses(&[bq("X+Y"), bq("X-Y")], &[1, 1]).unwrap();
        // -(X-Y)(1,1) + (X+Y)(1,-1)
        assert_eq!(w, vec![(bq("2*Y"), bq("-2*X"))]);
        assert!(squarefree_r_kernel_witnesses(&[bq("X^2+Y")], &[2]).unwrap().is_empty());
        let w = squarefree_r_kernel_witnesses(&[bq("X"), bq("Y"), bq("X+Y+1")], &[1, 1, 1]).unwrap();
        assert_eq!(w.len(), 2);
        let b = DomainBasis {
            kind: DomainKind::FullPairs { nu: 3 },
            elements: w,
        };
        assert_eq!(b.rank(q()), 2);
        assert_eq!(
            squarefree_r_kernel_witnesses(&[bq("X+Y"), bq("2*X+2*Y")], &[1, 1]),
            Err(Error::FactorsNotCoprime(0, 1))
        );
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]
        #[test]
        fn map_is_linear_in_f(
            f in arb_bivariate(CoefficientField::Rationals, 3, 5),
            g in arb_bivariate(CoefficientField::Rationals, 3, 5),
            u in -4i64..4, v in -4i64..4,
        ) {
            let field = q();
            let comb = &f.scale(&field.from_i64(u)) + &g.scale(&field.from_i64(v));
            let map = |p: &BivariatePolynomial| {
                let codomain = monomials_up_to::<2>(4);
                assemble(MapKind::RNu, basis_e(field, 3), codomain, field, String::new(), |a, b| Ok(ruppert_image(p, a, b))).unwrap()
            };
            let lhs = map(&comb);
            let rhs = RuppertMatrix::combine(&field.from_i64(u), &map(&f), &field.from_i64(v), &map(&g));
            prop_assert_eq!(lhs.matrix, rhs.matrix);
        }

        #[test]
        fn key_equation_matches_formula(profile in prop::collection::vec((1u32..5, 1u32..5), 1..5)) {
            let r = profile.len() as u32;
            prop_assert_eq!(key_equation_value(&profile), dim_ker_r_hom_formula(r, &profile).unwrap() as i64);
        }
    }
}
