use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::poly::{BivariatePolynomial, MPoly, MultiPoly, VAR_X, VAR_Y};

const MAX_ATTEMPTS: u32 = 5;

/// `X_i = U_i X + V_i Y + W_i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Substitution {
    pub u: i64,
    pub v: i64,
    pub w: i64,
}

/// Bivariate images of `n`-variate inputs under one random plane
/// substitution.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BertiniReduction {
    #[serde(serialize_with = "serialize_polys")]
    pub images: Vec<BivariatePolynomial>,
    pub substitution: Vec<Substitution>,
    pub bound: i64,
    pub attempts: u32,
    pub seed: u64,
}

fn serialize_polys<S: serde::Serializer>(polys: &[BivariatePolynomial], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(polys.iter().map(|p| p.to_string()))
}

fn reduce(inputs: &[&MultiPoly], seed: u64) -> Result<BertiniReduction> {
    let first = inputs[0];
    let field = first.field();
    if field != CoefficientField::Rationals {
        return Err(Error::Unsupported("the plane substitution works over Q".into()));
    }
    let n = first.nvars();
    if inputs.iter().any(|p| p.nvars() != n || p.field() != field) {
        return Err(Error::FieldMismatch);
    }
    if n < 3 {
        return Err(Error::Unsupported(format!("{n} variables; at least 3 expected")));
    }
    let degrees: Vec<Option<u32>> = inputs.iter().map(|p| p.total_degree()).collect();
    let d = degrees.iter().flatten().copied().max().ok_or(Error::ZeroPolynomial)?;
    if d < 2 {
        return Err(Error::DegreeTooLow(d));
    }
    let bound = 10 * d as i64 * n as i64;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let x = MPoly::var(field, VAR_X);
    let y = MPoly::var(field, VAR_Y);
    for attempt in 1..=MAX_ATTEMPTS {
        let substitution: Vec<Substitution> = (0..n)
            .map(|_| Substitution {
                u: rng.random_range(-bound..=bound),
                v: rng.random_range(-bound..=bound),
                w: rng.random_range(-bound..=bound),
            })
            .collect();
        let planes: Vec<BivariatePolynomial> = substitution
            .iter()
            .map(|s| {
                &(&x.scale(&field.from_i64(s.u)) + &y.scale(&field.from_i64(s.v)))
                    + &MPoly::constant(field.from_i64(s.w))
            })
            .collect();
        let images: Vec<BivariatePolynomial> = inputs.iter().map(|p| p.substitute(&planes)).collect();
        if images.iter().zip(&degrees).all(|(img, deg)| img.total_degree() == *deg) {
            return Ok(BertiniReduction {
                images,
                substitution,
                bound,
                attempts: attempt,
                seed,
            });
        }
    }
    Err(Error::DegreeDropPersistent)
}

/// `F(U_1 X + V_1 Y + W_1, ..., U_n X + V_n Y + W_n)` with integer
/// parameters uniform in `[-B, B]`, `B = 10 d n`, redrawn (at most five
/// times in total) until the degree is preserved.
pub fn bertini_reduce(f: &MultiPoly, seed: u64) -> Result<BertiniReduction> {
    reduce(&[f], seed)
}

/// The same substitution applied to both `f` and `g`.
pub fn bertini_reduce_pair(f: &MultiPoly, g: &MultiPoly, seed: u64) -> Result<BertiniReduction> {
    reduce(&[f, g], seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_multi;
    use crate::poly::test_support::q;
    use crate::ruppert::build_matrix_r_hom;

    const VARS: [&str; 3] = ["X1", "X2", "X3"];

    fn kernel_dim(p: &BivariatePolynomial) -> usize {
        let d = p.total_degree().unwrap();
        build_matrix_r_hom(&p.homogenize(d).unwrap())
            .unwrap()
            .kernel_dimension()
    }

    #[test]
    fn product_of_three_variables() {
        let f = parse_multi("X1*X2*X3", q(), &VARS).unwrap();
        let r = bertini_reduce(&f, 11).unwrap();
        assert_eq!(r.images[0].total_degree(), Some(3));
        assert_eq!(kernel_dim(&r.images[0]), 2);
        assert_eq!(r.bound, 90);
        assert!(r
            .substitution
            .iter()
            .all(|s| s.u.abs() <= 90 && s.v.abs() <= 90 && s.w.abs() <= 90));
        assert_eq!(r, bertini_reduce(&f, 11).unwrap());
    }

    #[test]
    fn sum_of_squares_stays_irreducible() {
        let f = parse_multi("X1^2 + X2^2 + X3^2", q(), &VARS).unwrap();
        let r = bertini_reduce(&f, 5).unwrap();
        assert_eq!(kernel_dim(&r.images[0]), 0);
    }

    #[test]
    fn rejects_linear_and_few_variables() {
        let f = parse_multi("X1 + X2 + X3", q(), &VARS).unwrap();
        assert_eq!(bertini_reduce(&f, 0).unwrap_err(), Error::DegreeTooLow(1));
        let g = parse_multi("X1*X2", q(), &VARS[..2]).unwrap();
        assert!(matches!(bertini_reduce(&g, 0), Err(Error::Unsupported(_))));
    }
}
