use std::collections::BTreeMap;
use std::fmt;

use crate::field::{CoefficientField, FieldElement};

use super::MPoly;

/// Sparse polynomial with a variable count chosen at runtime. Used by the
/// parser and by the `n`-variate Bertini reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    field: CoefficientField,
    nvars: usize,
    terms: BTreeMap<Vec<u32>, FieldElement>,
}

impl MultiPoly {
    pub fn zero(field: CoefficientField, nvars: usize) -> Self {
        MultiPoly {
            field,
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: FieldElement, nvars: usize) -> Self {
        let mut p = Self::zero(c.field(), nvars);
        p.add_term(vec![0; nvars], &c);
        p
    }

    pub fn var(field: CoefficientField, nvars: usize, index: usize) -> Self {
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = Self::zero(field, nvars);
        p.add_term(e, &field.one());
        p
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &FieldElement)> {
        self.terms.iter()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn add_term(&mut self, exponent: Vec<u32>, coeff: &FieldElement) {
        assert_eq!(exponent.len(), self.nvars);
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent);
        match entry {
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + coeff;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.field, self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, &(ca * cb));
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.field.one(), self.nvars);
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Converts to a fixed-arity polynomial. Panics if a term uses a
    /// variable index `>= N`.
    pub fn to_fixed<const N: usize>(&self) -> MPoly<N> {
        MPoly::from_terms(
            self.field,
            self.terms.iter().map(|(e, c)| {
                let mut a = [0u32; N];
                for (i, &x) in e.iter().enumerate() {
                    if i < N {
                        a[i] = x;
                    } else {
                        assert_eq!(x, 0, "variable index out of range");
                    }
                }
                (a, c.clone())
            }),
        )
    }

    /// Substitutes a bivariate polynomial for every variable.
    pub fn substitute(&self, images: &[MPoly<2>]) -> MPoly<2> {
        assert_eq!(images.len(), self.nvars);
        let maxdeg = self.terms.keys().flat_map(|e| e.iter().copied()).max().unwrap_or(0);
        let powers: Vec<Vec<MPoly<2>>> = images
            .iter()
            .map(|img| {
                let mut v = vec![MPoly::one(self.field)];
                for k in 1..=maxdeg as usize {
                    let next = &v[k - 1] * img;
                    v.push(next);
                }
                v
            })
            .collect();
        let mut out = MPoly::zero(self.field);
        for (e, c) in &self.terms {
            let mut t = MPoly::constant(c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x > 0 {
                    t = &t * &powers[i][x as usize];
                }
            }
            out = &out + &t;
        }
        out
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|a, b| super::grlex_cmp(b.0, a.0));
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative_literal();
            let abs = if negative { -c } else { c.clone() };
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            if !abs.is_one() || e.iter().all(|&x| x == 0) {
                factors.push(abs.to_string());
            }
            for (i, &x) in e.iter().enumerate() {
                match x {
                    0 => {}
                    1 => factors.push(format!("X{}", i + 1)),
                    _ => factors.push(format!("X{}^{x}", i + 1)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}
