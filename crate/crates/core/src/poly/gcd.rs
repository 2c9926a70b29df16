//! Bivariate gcd by primitive pseudo-remainder sequences over `K[X][Y]`,
//! and squarefree decomposition built on it.

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};

use super::univariate::UniPoly;
use super::{BivariatePolynomial, MPoly, VAR_X, VAR_Y};

/// `f` as a polynomial in `Y` with coefficients in `K[X]`, lowest power first.
type YPoly = Vec<UniPoly>;

fn to_ypoly(f: &BivariatePolynomial) -> YPoly {
    let field = f.field();
    let dy = f.degree_in(VAR_Y).map_or(0, |d| d as usize + 1);
    let dx = f.degree_in(VAR_X).map_or(0, |d| d as usize + 1);
    let mut rows = vec![vec![field.zero(); dx]; dy];
    for (e, c) in f.terms() {
        rows[e[1] as usize][e[0] as usize] = c.clone();
    }
    rows.into_iter().map(|r| UniPoly::new(field, r)).collect()
}

fn from_ypoly(field: CoefficientField, p: &YPoly) -> BivariatePolynomial {
    let mut out = MPoly::zero(field);
    for (j, cx) in p.iter().enumerate() {
        for (i, c) in cx.coeffs().iter().enumerate() {
            out.add_term([i as u32, j as u32], c);
        }
    }
    out
}

fn trim(p: &mut YPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

fn content(p: &YPoly, field: CoefficientField) -> UniPoly {
    p.iter().fold(UniPoly::zero(field), |acc, c| acc.gcd(c))
}

fn primitive_part(p: &YPoly, field: CoefficientField) -> YPoly {
    let c = content(p, field);
    if c.is_zero() {
        return p.clone();
    }
    p.iter().map(|a| a.div_exact(&c).expect("content divides")).collect()
}

/// Pseudo-remainder of `a` by `b` in `Y`.
fn prem(a: &YPoly, b: &YPoly) -> YPoly {
    let db = b.len() - 1;
    let lb = &b[db];
    let mut r = a.clone();
    trim(&mut r);
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        let shift = dr - db;
        for c in r.iter_mut() {
            *c = c.mul(lb);
        }
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] = r[i + shift].sub(&bc.mul(&lr));
        }
        trim(&mut r);
    }
    r
}

impl BivariatePolynomial {
    /// A gcd of `self` and `other`, monic under graded lex.
    /// `gcd(0, 0)` is `0`.
    pub fn gcd(&self, other: &Self) -> Self {
        let field = self.field();
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let (a, b) = (to_ypoly(self), to_ypoly(other));
        let cont = content(&a, field).gcd(&content(&b, field));
        let (mut a, mut b) = (primitive_part(&a, field), primitive_part(&b, field));
        if a.len() < b.len() {
            std::mem::swap(&mut a, &mut b);
        }
        while b.len() > 1 {
            let r = prem(&a, &b);
            a = b;
            b = if r.is_empty() { r } else { primitive_part(&r, field) };
        }
        // b is now zero (a is the primitive gcd) or a nonzero constant in Y
        // (the primitive parts are coprime)
        let g = if b.is_empty() { a } else { vec![UniPoly::one(field)] };
        let g = primitive_part(&g, field);
        let g: YPoly = g.iter().map(|c| c.mul(&cont)).collect();
        from_ypoly(field, &g).monic()
    }

    /// `gcd(f, df/dX, df/dY)`, the repeated part of `f`.
    pub fn gcd_with_derivatives(&self) -> Self {
        self.gcd(&self.derivative(VAR_X)).gcd(&self.derivative(VAR_Y))
    }

    /// Squarefree decomposition `f = c * prod g_k^k`.
    pub fn squarefree_decompose(&self) -> Result<SquarefreeDecomposition> {
        let deg = self.total_degree().ok_or(Error::ZeroPolynomial)?;
        let field = self.field();
        if !field.characteristic_exceeds(deg as u64) {
            return Err(Error::CharacteristicTooSmall {
                characteristic: field.characteristic(),
                required: deg as u64,
            });
        }
        let mut factors = Vec::new();
        let mut g = self.gcd_with_derivatives();
        let mut w = self.div_exact(&g).expect("gcd divides");
        let mut k = 1;
        while !w.is_constant() {
            let y = w.gcd(&g);
            let a = w.div_exact(&y).expect("gcd divides");
            if !a.is_constant() {
                factors.push((a.monic(), k));
            }
            g = g.div_exact(&y).expect("gcd divides");
            w = y;
            k += 1;
        }
        let product = factors
            .iter()
            .fold(MPoly::one(field), |acc, (p, k): &(BivariatePolynomial, u32)| {
                &acc * &p.pow(*k)
            });
        let constant = self.div_exact(&product).expect("factors divide").constant_term();
        let dec = SquarefreeDecomposition { constant, factors };
        debug_assert_eq!(&dec.reconstruct(), self);
        Ok(dec)
    }
}

/// `f = constant * prod g_k^k` with squarefree, pairwise coprime, monic `g_k`
/// listed by increasing multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeDecomposition {
    pub constant: FieldElement,
    pub factors: Vec<(BivariatePolynomial, u32)>,
}

impl SquarefreeDecomposition {
    pub fn reconstruct(&self) -> BivariatePolynomial {
        self.factors
            .iter()
            .fold(MPoly::constant(self.constant.clone()), |acc, (p, k)| &acc * &p.pow(*k))
    }
}

#[cfg(test)]
mod tests {
    use crate::field::CoefficientField;
    use crate::poly::test_support::*;
    use crate::poly::BivariatePolynomial;
    use proptest::prelude::*;

    #[test]
    fn gcd_examples() {
        assert_eq!(bq("(X+Y)^2").gcd(&bq("(X+Y)*X")), bq("X+Y"));
        assert_eq!(bq("X^2*Y + 3").gcd(&bq("1")), bq("1"));
        assert_eq!(bq("2*X + 4").gcd(&bq("0")), bq("X + 2"));
        assert_eq!(bq("X*Y").gcd(&bq("X*Y^2 + X")), bq("X"));
        assert_eq!(
            bq("(X^2 - 1)*(Y + 1)").gcd(&bq("(X - 1)*(Y + 1)^2")),
            bq("X*Y + X - Y - 1")
        );
    }

    #[test]
    fn repeated_part() {
        let f = bq("(X^2+Y)^3*(X+1)");
        let g = f.gcd_with_derivatives();
        assert_eq!(g, bq("(X^2+Y)^2"));
        assert_eq!(g.total_degree(), Some(4));
        // brute-force oracle: g divides f, f/g is squarefree
        let rest = f.div_exact(&g).unwrap();
        assert!(rest.gcd_with_derivatives().is_constant());
    }

    #[test]
    fn squarefree_examples() {
        let d = bq("(X+Y)^2").squarefree_decompose().unwrap();
        assert_eq!(d.factors, vec![(bq("X+Y"), 2)]);
        let d = bq("X*Y").squarefree_decompose().unwrap();
        assert_eq!(d.factors, vec![(bq("X*Y"), 1)]);
        let f = bq("(X^2+Y)^3*(X+1)");
        let d = f.squarefree_decompose().unwrap();
        assert_eq!(d.factors, vec![(bq("X+1"), 1), (bq("X^2+Y"), 3)]);
        assert_eq!(d.reconstruct(), f);
        let f = bq("-3*Y^2*(X*Y-1)^2");
        let d = f.squarefree_decompose().unwrap();
        assert_eq!(d.factors.len(), 1);
        assert_eq!(d.reconstruct(), f);
        let f5 = CoefficientField::prime(5).unwrap();
        let p = BivariatePolynomial::parse("X^5 + Y", f5).unwrap();
        assert!(p.squarefree_decompose().is_err());
    }

    #[test]
    fn gcd_over_prime_field() {
        let f = CoefficientField::prime(101).unwrap();
        let a = BivariatePolynomial::parse("(X*Y + 3)*(X + Y^2)", f).unwrap();
        let b = BivariatePolynomial::parse("(X*Y + 3)*(X - Y)", f).unwrap();
        assert_eq!(a.gcd(&b), BivariatePolynomial::parse("X*Y + 3", f).unwrap());
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]
        #[test]
        fn gcd_associate_property(
            f in arb_bivariate(CoefficientField::Rationals, 3, 4),
            g in arb_bivariate(CoefficientField::Rationals, 3, 4),
            h in arb_bivariate(CoefficientField::Rationals, 2, 3),
        ) {
            prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
            let lhs = (&f * &h).gcd(&(&g * &h));
            let rhs = (&h * &f.gcd(&g)).monic();
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn squarefree_reconstructs(
            a in arb_bivariate(CoefficientField::Rationals, 2, 3),
            b in arb_bivariate(CoefficientField::Rationals, 2, 3),
        ) {
            let f = &a * &b.pow(2);
            prop_assume!(!f.is_zero());
            let dec = f.squarefree_decompose().unwrap();
            prop_assert_eq!(dec.reconstruct(), f);
            for (p, _) in &dec.factors {
                prop_assert!(p.gcd_with_derivatives().is_constant());
            }
            for i in 0..dec.factors.len() {
                for j in i + 1..dec.factors.len() {
                    prop_assert!(dec.factors[i].0.gcd(&dec.factors[j].0).is_constant());
                }
            }
        }
    }
}
