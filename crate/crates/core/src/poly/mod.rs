//! Sparse exact polynomials.
//!
//! [`MPoly<N>`] is a sparse polynomial in `N` variables keyed by exponent
//! arrays. The bivariate case is the workhorse ([`BivariatePolynomial`]);
//! [`HomogeneousPolynomial3`] wraps the trivariate case with a fixed degree.
//!
//! Monomial order everywhere is graded lexicographic: total degree first,
//! then the exponent of `X`, then `Y` (then `Z`).

mod gcd;
mod homogeneous;
mod multi;
mod parse;
pub mod univariate;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};

pub use gcd::SquarefreeDecomposition;
pub use homogeneous::HomogeneousPolynomial3;
pub use multi::MultiPoly;
pub use parse::parse_multi;

pub type BivariatePolynomial = MPoly<2>;
pub type TrivariatePolynomial = MPoly<3>;

/// Variable names used for printing and parsing.
pub const VARIABLE_NAMES: [&str; 3] = ["X", "Y", "Z"];

/// Graded lexicographic comparison of exponent vectors.
pub fn grlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    da.cmp(&db).then_with(|| a.cmp(b))
}

/// All exponent vectors in `N` variables with total degree `<= max_degree`,
/// in ascending graded-lex order. Negative bounds give an empty list.
pub fn monomials_up_to<const N: usize>(max_degree: i64) -> Vec<[u32; N]> {
    let mut out = Vec::new();
    for deg in 0..=max_degree {
        out.extend(monomials_of_degree::<N>(deg));
    }
    out
}

/// Exponent vectors of total degree exactly `degree`, ascending graded-lex.
pub fn monomials_of_degree<const N: usize>(degree: i64) -> Vec<[u32; N]> {
    let mut out = Vec::new();
    if degree < 0 || N == 0 {
        return out;
    }
    let mut current = [0u32; N];
    fill_exponents(&mut current, 0, degree as u32, &mut out);
    out.sort_by(|a, b| grlex_cmp(a, b));
    out
}

fn fill_exponents<const N: usize>(cur: &mut [u32; N], idx: usize, remaining: u32, out: &mut Vec<[u32; N]>) {
    if idx == N - 1 {
        cur[idx] = remaining;
        out.push(*cur);
        return;
    }
    for e in 0..=remaining {
        cur[idx] = e;
        fill_exponents(cur, idx + 1, remaining - e, out);
    }
}

/// A sparse polynomial in `N` variables. No stored coefficient is zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MPoly<const N: usize> {
    field: CoefficientField,
    terms: BTreeMap<[u32; N], FieldElement>,
}

impl<const N: usize> MPoly<N> {
    pub fn zero(field: CoefficientField) -> Self {
        MPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: CoefficientField) -> Self {
        Self::constant(field.one())
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::monomial([0; N], c)
    }

    pub fn monomial(exponent: [u32; N], coeff: FieldElement) -> Self {
        let field = coeff.field();
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(exponent, coeff);
        }
        MPoly { field, terms }
    }

    /// The variable with index `var`.
    pub fn var(field: CoefficientField, var: usize) -> Self {
        let mut e = [0; N];
        e[var] = 1;
        Self::monomial(e, field.one())
    }

    /// Builds a polynomial from (possibly repeated, possibly zero) terms.
    pub fn from_terms<I>(field: CoefficientField, terms: I) -> Self
    where
        I: IntoIterator<Item = ([u32; N], FieldElement)>,
    {
        let mut p = Self::zero(field);
        for (e, c) in terms {
            p.add_term(e, &c);
        }
        p
    }

    /// Integer-coefficient convenience constructor.
    pub fn from_int_terms(field: CoefficientField, terms: &[([u32; N], i64)]) -> Self {
        Self::from_terms(field, terms.iter().map(|(e, c)| (*e, field.from_i64(*c))))
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x == 0))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32; N], &FieldElement)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &[u32; N]> {
        self.terms.keys()
    }

    pub fn coeff(&self, exponent: &[u32; N]) -> FieldElement {
        self.terms.get(exponent).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn constant_term(&self) -> FieldElement {
        self.coeff(&[0; N])
    }

    pub(crate) fn add_term(&mut self, exponent: [u32; N], coeff: &FieldElement) {
        if coeff.is_zero() {
            return;
        }
        debug_assert_eq!(coeff.field(), self.field, "field mismatch");
        match self.terms.get_mut(&exponent) {
            Some(c) => {
                *c = &*c + coeff;
                if c.is_zero() {
                    self.terms.remove(&exponent);
                }
            }
            None => {
                self.terms.insert(exponent, coeff.clone());
            }
        }
    }

    /// Total degree; `None` marks the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Degree in one variable; `None` for the zero polynomial.
    pub fn degree_in(&self, var: usize) -> Option<u32> {
        self.terms.keys().map(|e| e[var]).max()
    }

    /// Leading term under graded lex.
    pub fn leading_term(&self) -> Option<(&[u32; N], &FieldElement)> {
        self.terms.iter().max_by(|a, b| grlex_cmp(a.0, b.0))
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.leading_term().map(|(_, c)| c)
    }

    /// Divides by the graded-lex leading coefficient (zero stays zero).
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => {
                let inv = lc.inv().expect("nonzero leading coefficient");
                self.scale(&inv)
            }
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        MPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, a)| (*e, a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, exponent: &[u32; N]) -> Self {
        MPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut s = *e;
                    for i in 0..N {
                        s[i] += exponent[i];
                    }
                    (s, c.clone())
                })
                .collect(),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(self.field);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn derivative(&self, var: usize) -> Self {
        let mut out = Self::zero(self.field);
        for (e, c) in &self.terms {
            if e[var] == 0 {
                continue;
            }
            let mut d = *e;
            d[var] -= 1;
            out.add_term(d, &c.scale_int(e[var] as i64));
        }
        out
    }

    /// The sum of terms of total degree exactly `degree`.
    pub fn homogeneous_component(&self, degree: u32) -> Self {
        MPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e.iter().sum::<u32>() == degree)
                .map(|(e, c)| (*e, c.clone()))
                .collect(),
        }
    }

    /// Exact division; `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (lt_e, lt_c) = divisor.leading_term()?;
        let lt_e = *lt_e;
        let lt_inv = lt_c.inv().ok()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.field);
        while let Some((re, rc)) = rem.leading_term() {
            let mut qe = [0u32; N];
            for i in 0..N {
                if re[i] < lt_e[i] {
                    return None;
                }
                qe[i] = re[i] - lt_e[i];
            }
            let qc = rc * &lt_inv;
            rem = &rem - &divisor.mul_monomial(&qe).scale(&qc);
            quot.add_term(qe, &qc);
        }
        Some(quot)
    }

    /// Substitutes field values for every variable.
    pub fn evaluate(&self, point: &[FieldElement; N]) -> FieldElement {
        let mut acc = self.field.zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for i in 0..N {
                if e[i] > 0 {
                    t = &t * &point[i].pow(e[i] as u64);
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Coefficient vector against an ordered monomial list; `None` if the
    /// polynomial has a term outside the list.
    pub fn coefficient_vector(&self, monomials: &[[u32; N]]) -> Option<Vec<FieldElement>> {
        let index: BTreeMap<&[u32; N], usize> = monomials.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![self.field.zero(); monomials.len()];
        for (e, c) in &self.terms {
            v[*index.get(e)?] = c.clone();
        }
        Some(v)
    }

    pub fn from_coefficient_vector(field: CoefficientField, monomials: &[[u32; N]], coeffs: &[FieldElement]) -> Self {
        Self::from_terms(field, monomials.iter().copied().zip(coeffs.iter().cloned()))
    }
}

impl<const N: usize> Add<&MPoly<N>> for &MPoly<N> {
    type Output = MPoly<N>;
    fn add(self, rhs: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, c);
        }
        out
    }
}

impl<const N: usize> Sub<&MPoly<N>> for &MPoly<N> {
    type Output = MPoly<N>;
    fn sub(self, rhs: &MPoly<N>) -> MPoly<N> {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(*e, &-c);
        }
        out
    }
}

impl<const N: usize> Mul<&MPoly<N>> for &MPoly<N> {
    type Output = MPoly<N>;
    fn mul(self, rhs: &MPoly<N>) -> MPoly<N> {
        let mut out = MPoly::zero(self.field);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                let mut e = *ea;
                for i in 0..N {
                    e[i] += eb[i];
                }
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }
}

impl<const N: usize> Neg for &MPoly<N> {
    type Output = MPoly<N>;
    fn neg(self) -> MPoly<N> {
        MPoly {
            field: self.field,
            terms: self.terms.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($trait:ident $method:ident),*) => {$(
        impl<const N: usize> $trait<MPoly<N>> for MPoly<N> {
            type Output = MPoly<N>;
            fn $method(self, rhs: MPoly<N>) -> MPoly<N> { (&self).$method(&rhs) }
        }
        impl<const N: usize> $trait<&MPoly<N>> for MPoly<N> {
            type Output = MPoly<N>;
            fn $method(self, rhs: &MPoly<N>) -> MPoly<N> { (&self).$method(rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl<const N: usize> fmt::Display for MPoly<N> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| grlex_cmp(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative_literal();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors: Vec<String> = Vec::new();
            let is_const = e.iter().all(|&x| x == 0);
            if !abs.is_one() || is_const {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                let name = if N <= 3 {
                    VARIABLE_NAMES[i].to_string()
                } else {
                    format!("X{}", i + 1)
                };
                match x {
                    0 => {}
                    1 => factors.push(name),
                    _ => factors.push(format!("{name}^{x}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

pub const VAR_X: usize = 0;
pub const VAR_Y: usize = 1;
pub const VAR_Z: usize = 2;

impl MPoly<2> {
    /// Parses the shared polynomial grammar in the variables `X`, `Y`.
    pub fn parse(text: &str, field: CoefficientField) -> Result<Self> {
        let multi = parse_multi(text, field, &["X", "Y"])?;
        Ok(multi.to_fixed::<2>())
    }

    /// `d_{a,b}(f) = max { a*i + b*j }` over the support.
    pub fn weighted_degree(&self, a: i64, b: i64) -> Result<i64> {
        self.terms
            .keys()
            .map(|e| a * e[0] as i64 + b * e[1] as i64)
            .max()
            .ok_or(Error::ZeroPolynomial)
    }

    /// `Z^d f(X/Z, Y/Z)`.
    pub fn homogenize(&self, degree: u32) -> Result<HomogeneousPolynomial3> {
        HomogeneousPolynomial3::homogenize(self, degree)
    }

    /// The same polynomial viewed in three variables (no `Z`).
    pub fn lift3(&self) -> MPoly<3> {
        MPoly::from_terms(self.field, self.terms.iter().map(|(e, c)| ([e[0], e[1], 0], c.clone())))
    }
}

impl MPoly<3> {
    pub fn parse(text: &str, field: CoefficientField) -> Result<Self> {
        let multi = parse_multi(text, field, &VARIABLE_NAMES)?;
        Ok(multi.to_fixed::<3>())
    }

    /// Substitutes `Z = 1`.
    pub fn dehomogenize(&self) -> MPoly<2> {
        MPoly::from_terms(self.field, self.terms.iter().map(|(e, c)| ([e[0], e[1]], c.clone())))
    }
}

#[cfg(test)]
pub(crate) mod test_support {
    use super::*;
    use proptest::prelude::*;

    pub fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    pub fn bq(s: &str) -> BivariatePolynomial {
        BivariatePolynomial::parse(s, q()).unwrap()
    }

    /// Random sparse bivariate polynomial with small integer coefficients.
    pub fn arb_bivariate(
        field: CoefficientField,
        max_deg: u32,
        max_terms: usize,
    ) -> impl Strategy<Value = BivariatePolynomial> {
        prop::collection::vec(((0..=max_deg), (0..=max_deg), -5i64..=5), 0..=max_terms).prop_map(move |ts| {
            MPoly::from_terms(
                field,
                ts.into_iter()
                    .filter(|(i, j, _)| i + j <= max_deg)
                    .map(|(i, j, c)| ([i, j], field.from_i64(c))),
            )
        })
    }
}

#[cfg(test)]
mod tests {
    use super::test_support::*;
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn monomial_enumeration() {
        assert_eq!(
            monomials_up_to::<2>(2),
            vec![[0, 0], [0, 1], [1, 0], [0, 2], [1, 1], [2, 0]]
        );
        assert_eq!(monomials_of_degree::<3>(3).len(), 10);
        assert!(monomials_up_to::<2>(-1).is_empty());
    }

    #[test]
    fn derivatives() {
        assert_eq!(bq("X^3*Y").derivative(VAR_X), bq("3*X^2*Y"));
        assert!(bq("X").derivative(VAR_Y).is_zero());
        let f3 = CoefficientField::prime(3).unwrap();
        let cube = BivariatePolynomial::parse("X^3", f3).unwrap();
        assert!(cube.derivative(VAR_X).is_zero());
    }

    #[test]
    fn weighted_degrees() {
        assert_eq!(bq("X^2*Y").weighted_degree(1, 1).unwrap(), 3);
        assert_eq!(bq("X^2*Y + Y^5").weighted_degree(1, 0).unwrap(), 2);
        assert_eq!(bq("X^2*Y + Y^5").weighted_degree(0, 1).unwrap(), 5);
        assert_eq!(
            BivariatePolynomial::zero(q()).weighted_degree(1, 1),
            Err(Error::ZeroPolynomial)
        );
    }

    #[test]
    fn zero_has_no_degree() {
        assert_eq!(BivariatePolynomial::zero(q()).total_degree(), None);
        assert_eq!(bq("7").total_degree(), Some(0));
    }

    #[test]
    fn display_round_trips() {
        for s in ["X^3*Y + 3*X^2*Y + 2*X*Y + X", "-1/2*X*Y - Y + 7", "0", "-3"] {
            let p = bq(s);
            assert_eq!(bq(&p.to_string()), p, "{s}");
        }
        assert_eq!(bq("Y - X^2").to_string(), "-X^2 + Y");
    }

    #[test]
    fn exact_division() {
        let a = bq("X^2 + Y");
        let b = bq("X - 3*Y + 1");
        let prod = &a * &b;
        assert_eq!(prod.div_exact(&b), Some(a.clone()));
        assert_eq!((&prod + &bq("1")).div_exact(&b), None);
    }

    proptest! {
        #[test]
        fn ring_axioms(
            a in arb_bivariate(CoefficientField::Rationals, 4, 6),
            b in arb_bivariate(CoefficientField::Rationals, 4, 6),
            c in arb_bivariate(CoefficientField::Rationals, 4, 6),
        ) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
            if !b.is_zero() {
                prop_assert_eq!((&a * &b).div_exact(&b), Some(a.clone()));
            }
        }
    }
}
