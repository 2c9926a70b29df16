//! Planted test corpora: products of factors that are absolutely
//! irreducible by construction, with known degrees and multiplicities.

#![allow(dead_code)]

use pencil_core::poly::{MPoly, VAR_X, VAR_Y};
use pencil_core::{BivariatePolynomial, CoefficientField};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn nonzero(rng: &mut ChaCha8Rng, bound: i64) -> i64 {
    loop {
        let c = rng.random_range(-bound..=bound);
        if c != 0 {
            return c;
        }
    }
}

fn univariate(field: CoefficientField, var: usize, coeffs: &[i64]) -> BivariatePolynomial {
    let v = MPoly::var(field, var);
    coeffs.iter().enumerate().fold(MPoly::zero(field), |acc, (k, &c)| {
        &acc + &v.pow(k as u32).scale(&field.from_i64(c))
    })
}

/// A random absolutely irreducible polynomial of degree `deg` (1..=4):
/// lines, graphs `Y - p(X)` / `X - p(Y)`, hyperbolas `XY - c`, smooth
/// conics `X^2 + Y^2 + c`, and curves `Y^2 - p(X)` with `deg p = 3`.
pub fn irreducible_factor(rng: &mut ChaCha8Rng, field: CoefficientField, deg: u32) -> BivariatePolynomial {
    let x = MPoly::var(field, VAR_X);
    let y = MPoly::var(field, VAR_Y);
    let c = |v: i64| MPoly::constant(field.from_i64(v));
    let kind = rng.random_range(0..4);
    match deg {
        1 => {
            let (a, b) = (rng.random_range(-5..=5), nonzero(rng, 5));
            &(&x.scale(&field.from_i64(a)) + &y.scale(&field.from_i64(b))) + &c(rng.random_range(-6..=6))
        }
        2 if kind == 0 => &(&x * &y) - &c(nonzero(rng, 6)),
        2 if kind == 1 => &(&(&x * &x) + &(&y * &y)) + &c(nonzero(rng, 6)),
        3 if kind == 0 => {
            let p: Vec<i64> = vec![
                rng.random_range(-4..=4),
                rng.random_range(-4..=4),
                rng.random_range(-3..=3),
                nonzero(rng, 3),
            ];
            &(&y * &y) - &univariate(field, VAR_X, &p)
        }
        _ => {
            let mut p: Vec<i64> = (0..deg).map(|_| rng.random_range(-4..=4)).collect();
            p.push(nonzero(rng, 3));
            if rng.random_bool(0.5) {
                &y - &univariate(field, VAR_X, &p)
            } else {
                &x - &univariate(field, VAR_Y, &p)
            }
        }
    }
}

/// `f = prod f_i^e_i` with its profile `[(d_i, e_i)]`.
#[derive(Clone, Debug)]
pub struct Planted {
    pub factors: Vec<(BivariatePolynomial, u32)>,
    pub profile: Vec<(u32, u32)>,
    pub poly: BivariatePolynomial,
}

impl Planted {
    pub fn degree(&self) -> u32 {
        self.profile.iter().map(|(d, e)| d * e).sum()
    }

    pub fn r(&self) -> u32 {
        self.profile.len() as u32
    }
}

/// A planted product of total degree in `min_deg..=max_deg` with pairwise
/// coprime factors.
pub fn planted(rng: &mut ChaCha8Rng, field: CoefficientField, min_deg: u32, max_deg: u32, max_mult: u32) -> Planted {
    loop {
        let r = rng.random_range(1..=3);
        let mut factors: Vec<(BivariatePolynomial, u32)> = Vec::new();
        let mut total = 0;
        for _ in 0..r {
            let room = max_deg.saturating_sub(total);
            if room == 0 {
                break;
            }
            let d = rng.random_range(1..=room.min(4));
            let e = rng.random_range(1..=max_mult.min(room / d).max(1));
            factors.push((irreducible_factor(rng, field, d), e));
            total += d * e;
        }
        if total < min_deg || total > max_deg {
            continue;
        }
        let coprime =
            (0..factors.len()).all(|i| (i + 1..factors.len()).all(|j| factors[i].0.gcd(&factors[j].0).is_constant()));
        if !coprime {
            continue;
        }
        let profile = factors
            .iter()
            .map(|(f, e)| (f.total_degree().expect("nonzero"), *e))
            .collect();
        let poly = factors.iter().fold(MPoly::one(field), |acc, (f, e)| &acc * &f.pow(*e));
        return Planted { factors, profile, poly };
    }
}

/// A random dense polynomial of degree exactly `deg`.
pub fn random_dense(rng: &mut ChaCha8Rng, field: CoefficientField, deg: u32) -> BivariatePolynomial {
    loop {
        let mut p = MPoly::zero(field);
        for e in pencil_core::poly::monomials_up_to::<2>(deg as i64) {
            if rng.random_bool(0.6) {
                p = &p + &MPoly::monomial(e, field.from_i64(rng.random_range(-9..=9)));
            }
        }
        if p.total_degree() == Some(deg) {
            return p;
        }
    }
}

/// A random polynomial with at most `terms` terms and exponents `<= max_exp`.
pub fn random_sparse(rng: &mut ChaCha8Rng, field: CoefficientField, terms: usize, max_exp: u32) -> BivariatePolynomial {
    loop {
        let mut p = MPoly::zero(field);
        for _ in 0..terms {
            let e = [rng.random_range(0..=max_exp), rng.random_range(0..=max_exp)];
            p = &p + &MPoly::monomial(e, field.from_i64(nonzero(rng, 20)));
        }
        if !p.is_zero() {
            return p;
        }
    }
}
