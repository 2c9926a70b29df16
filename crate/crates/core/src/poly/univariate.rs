//! Dense univariate polynomials, binary forms and rational root extraction.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, CoefficientField, FieldElement};

/// Dense univariate polynomial, coefficients from degree 0 upwards with no
/// trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UniPoly {
    field: CoefficientField,
    coeffs: Vec<FieldElement>,
}

impl UniPoly {
    pub fn new(field: CoefficientField, mut coeffs: Vec<FieldElement>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { field, coeffs }
    }

    pub fn from_i64(field: CoefficientField, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: CoefficientField) -> Self {
        UniPoly { field, coeffs: vec![] }
    }

    pub fn constant(c: FieldElement) -> Self {
        Self::new(c.field(), vec![c])
    }

    pub fn one(field: CoefficientField) -> Self {
        Self::constant(field.one())
    }

    /// `t - r`.
    pub fn linear_root(r: &FieldElement) -> Self {
        Self::new(r.field(), vec![-r, r.field().one()])
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coefficient(&self) -> Option<&FieldElement> {
        self.coeffs.last()
    }

    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(lc) if !lc.is_one() => self.scale(&lc.inv().expect("nonzero")),
            _ => self.clone(),
        }
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        Self::new(self.field, self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(self.field, (0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.field);
        }
        let mut out = vec![self.field.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Self::new(self.field, out)
    }

    pub fn pow(&self, k: u32) -> Self {
        (0..k).fold(Self::one(self.field), |acc, _| acc.mul(self))
    }

    /// Quotient and remainder; panics on a zero divisor.
    pub fn divrem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].inv().expect("nonzero");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (i, b) in divisor.coeffs.iter().enumerate() {
                    rem[k + i] = &rem[k + i] - &(&c * b);
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(self.field, quot), Self::new(self.field, rem))
    }

    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.divrem(divisor);
        r.is_zero().then_some(q)
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.field == CoefficientField::Rationals
            && self.degree().is_some_and(|d| d >= MODULAR_GCD_DEGREE)
            && other.degree().is_some_and(|d| d >= MODULAR_GCD_DEGREE)
        {
            return modular_gcd(self, other);
        }
        self.euclid_gcd(other)
    }

    fn euclid_gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.divrem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.field,
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.scale_int(i as i64))
                .collect(),
        )
    }

    pub fn evaluate(&self, x: &FieldElement) -> FieldElement {
        self.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| &(&acc * x) + c)
    }

    /// Number of times `t - r` divides a nonzero polynomial.
    pub fn root_multiplicity(&self, r: &FieldElement) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = Self::linear_root(r);
        let mut p = self.clone();
        let mut k = 0;
        while let Some(q) = p.div_exact(&lin) {
            p = q;
            k += 1;
        }
        k
    }

    /// Newton interpolation through distinct nodes.
    pub fn interpolate(field: CoefficientField, xs: &[FieldElement], ys: &[FieldElement]) -> Result<Self> {
        assert_eq!(xs.len(), ys.len());
        let n = xs.len();
        let mut dd = ys.to_vec();
        for j in 1..n {
            for i in (j..n).rev() {
                let den = &xs[i] - &xs[i - j];
                dd[i] = (&dd[i] - &dd[i - 1]).try_div(&den)?;
            }
        }
        let mut acc = Self::zero(field);
        for i in (0..n).rev() {
            acc = acc.mul(&Self::linear_root(&xs[i])).add(&Self::constant(dd[i].clone()));
        }
        Ok(acc)
    }

    /// Yun's squarefree decomposition `[(a_k, k)]` of the monic associate,
    /// valid when the characteristic is 0 or exceeds the degree.
    pub fn squarefree_decompose(&self) -> Result<Vec<(UniPoly, u32)>> {
        let deg = self.degree().ok_or(Error::ZeroPolynomial)?;
        if !self.field.characteristic_exceeds(deg as u64) {
            return Err(Error::CharacteristicTooSmall {
                characteristic: self.field.characteristic(),
                required: deg as u64,
            });
        }
        let mut out = Vec::new();
        if deg == 0 {
            return Ok(out);
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_exact(&a0).expect("gcd divides");
        let mut c = fp.div_exact(&a0).expect("gcd divides");
        let mut d = c.sub(&b.derivative());
        let mut k = 1;
        while !b.is_constant() {
            let a = b.gcd(&d);
            if !a.is_constant() {
                out.push((a.clone(), k));
            }
            b = b.div_exact(&a).expect("gcd divides");
            c = d.div_exact(&a).expect("gcd divides");
            d = c.sub(&b.derivative());
            k += 1;
        }
        Ok(out)
    }

    pub fn fmt_in(&self, var: &str) -> String {
        if self.coeffs.is_empty() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, i) in (0..self.coeffs.len())
            .rev()
            .filter(|&i| !self.coeffs[i].is_zero())
            .enumerate()
        {
            let c = &self.coeffs[i];
            let neg = c.is_negative_literal();
            let abs = if neg { -c } else { c.clone() };
            s.push_str(match (k, neg) {
                (0, true) => "-",
                (0, false) => "",
                (_, true) => " - ",
                (_, false) => " + ",
            });
            let mut parts = Vec::new();
            if !abs.is_one() || i == 0 {
                parts.push(abs.to_string());
            }
            match i {
                0 => {}
                1 => parts.push(var.to_string()),
                _ => parts.push(format!("{var}^{i}")),
            }
            s.push_str(&parts.join("*"));
        }
        s
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_in("t"))
    }
}

/// A point `(mu : lambda)` of the projective line, normalized to
/// `lambda = 1` or `(1 : 0)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum ProjectivePoint {
    Affine(FieldElement),
    Infinity,
}

impl ProjectivePoint {
    pub fn from_pair(mu: &FieldElement, lambda: &FieldElement) -> Result<Self> {
        if lambda.is_zero() {
            if mu.is_zero() {
                return Err(Error::DivisionByZero);
            }
            Ok(ProjectivePoint::Infinity)
        } else {
            Ok(ProjectivePoint::Affine(mu.try_div(lambda)?))
        }
    }

    /// `(mu, lambda)` with the normalization above.
    pub fn coordinates(&self, field: CoefficientField) -> (FieldElement, FieldElement) {
        match self {
            ProjectivePoint::Affine(t) => (t.clone(), field.one()),
            ProjectivePoint::Infinity => (field.one(), field.zero()),
        }
    }
}

impl Serialize for ProjectivePoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl fmt::Display for ProjectivePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjectivePoint::Affine(t) => write!(f, "({t}:1)"),
            ProjectivePoint::Infinity => write!(f, "(1:0)"),
        }
    }
}

/// A binary form `B(U, V)` of a fixed degree, stored through its affine
/// part `b(t) = B(t, 1)`. The root `(1:0)` has multiplicity
/// `degree - deg b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BinaryForm {
    degree: u32,
    affine: UniPoly,
}

impl BinaryForm {
    pub fn new(affine: UniPoly, degree: u32) -> Self {
        if let Some(d) = affine.degree() {
            assert!(d as u32 <= degree, "affine part exceeds form degree");
        }
        BinaryForm { degree, affine }
    }

    pub fn zero(field: CoefficientField) -> Self {
        BinaryForm {
            degree: 0,
            affine: UniPoly::zero(field),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.affine.is_zero()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn affine(&self) -> &UniPoly {
        &self.affine
    }

    pub fn infinity_multiplicity(&self) -> u32 {
        match self.affine.degree() {
            Some(d) => self.degree - d as u32,
            None => 0,
        }
    }

    pub fn monic(&self) -> Self {
        BinaryForm {
            degree: self.degree,
            affine: self.affine.monic(),
        }
    }

    /// Monic gcd; the zero form is the identity.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        let g = self.affine.gcd(&other.affine);
        let inf = self.infinity_multiplicity().min(other.infinity_multiplicity());
        let deg = g.degree().unwrap_or(0) as u32 + inf;
        BinaryForm { degree: deg, affine: g }
    }

    pub fn multiplicity(&self, point: &ProjectivePoint) -> u32 {
        match point {
            ProjectivePoint::Infinity => self.infinity_multiplicity(),
            ProjectivePoint::Affine(t) => self.affine.root_multiplicity(t),
        }
    }

    pub fn evaluate(&self, mu: &FieldElement, lambda: &FieldElement) -> FieldElement {
        let mut acc = mu.field().zero();
        for (i, c) in self.affine.coeffs().iter().enumerate() {
            let term = c * &mu.pow(i as u64) * lambda.pow((self.degree as usize - i) as u64);
            acc = &acc + &term;
        }
        acc
    }
}

impl fmt::Display for BinaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.affine.is_zero() {
            return write!(f, "0");
        }
        let mut s = String::new();
        let coeffs = self.affine.coeffs();
        let mut first = true;
        for i in (0..coeffs.len()).rev() {
            let c = &coeffs[i];
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative_literal();
            let abs = if neg { -c } else { c.clone() };
            s.push_str(match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            });
            first = false;
            let v = self.degree as usize - i;
            let mut parts = Vec::new();
            if !abs.is_one() || (i == 0 && v == 0) {
                parts.push(abs.to_string());
            }
            for (name, e) in [("U", i), ("V", v)] {
                match e {
                    0 => {}
                    1 => parts.push(name.to_string()),
                    _ => parts.push(format!("{name}^{e}")),
                }
            }
            s.push_str(&parts.join("*"));
        }
        write!(f, "{s}")
    }
}

/// Factor data of a rational univariate polynomial: its rational roots with
/// multiplicities and the squarefree classes of what remains.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidualFactor {
    pub degree: u32,
    pub multiplicity: u32,
    pub polynomial: String,
}

/// All rational roots of a nonzero polynomial over `Q`, with multiplicities,
/// sorted ascending.
pub fn rational_roots(p: &UniPoly) -> Result<Vec<(BigRational, u32)>> {
    if p.field() != CoefficientField::Rationals {
        return Err(Error::FieldMismatch);
    }
    if p.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let sqf = p.div_exact(&p.gcd(&p.derivative())).expect("gcd divides");
    let mut ints = integer_primitive(&sqf);
    let mut roots = Vec::new();
    if ints.first().is_some_and(|c| c.is_zero()) {
        roots.push(BigRational::zero());
        ints.remove(0);
    }
    roots.extend(nonzero_rational_roots(&ints));
    roots.sort();
    Ok(roots
        .into_iter()
        .map(|r| {
            let m = p.root_multiplicity(&FieldElement::Rational(r.clone()));
            (r, m)
        })
        .collect())
}

/// Removes the rational roots of `p` and returns the squarefree classes of
/// the cofactor (degree, multiplicity, monic polynomial).
pub fn residual_factors(p: &UniPoly, roots: &[(BigRational, u32)], var: &str) -> Result<Vec<ResidualFactor>> {
    let mut rest = p.clone();
    for (r, m) in roots {
        let lin = UniPoly::linear_root(&FieldElement::Rational(r.clone())).pow(*m);
        rest = rest
            .div_exact(&lin)
            .ok_or_else(|| Error::Unsupported("root does not divide".into()))?;
    }
    Ok(rest
        .squarefree_decompose()?
        .into_iter()
        .map(|(a, k)| ResidualFactor {
            degree: a.degree().unwrap_or(0) as u32,
            multiplicity: k,
            polynomial: a.fmt_in(var),
        })
        .collect())
}

fn integer_primitive(p: &UniPoly) -> Vec<BigInt> {
    let rats: Vec<BigRational> = p
        .coeffs()
        .iter()
        .map(|c| c.as_rational().expect("rational").clone())
        .collect();
    let lcm = rats.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = rats
        .iter()
        .map(|r| (r * BigRational::from_integer(lcm.clone())).to_integer())
        .collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn eval_mod(p: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| (acc * x + c).mod_floor(m))
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Rational roots of a squarefree integer polynomial with nonzero constant
/// term: roots modulo a good prime, Newton-Hensel lifting, rational
/// reconstruction and exact verification.
fn nonzero_rational_roots(p: &[BigInt]) -> Vec<BigRational> {
    if p.len() <= 1 {
        return vec![];
    }
    let lead = p.last().expect("nonempty").clone();
    let deriv: Vec<BigInt> = p.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect();
    let bound = p[0].abs().max(lead.abs());
    let target = BigInt::from(2) * &bound * &bound;

    let prime = (3u64..)
        .filter(|&q| is_prime(q))
        .find(|&q| {
            let qb = BigInt::from(q);
            if (&lead % &qb).is_zero() {
                return false;
            }
            let f = CoefficientField::Prime(q);
            let red = |v: &[BigInt]| UniPoly::new(f, v.iter().map(|c| f.from_bigint(c)).collect());
            let pr = red(p);
            pr.gcd(&pr.derivative()).is_constant()
        })
        .expect("a good prime exists for a squarefree polynomial");
    let pb = BigInt::from(prime);

    let mut roots = Vec::new();
    for r0 in 0..prime {
        let mut r = BigInt::from(r0);
        if !eval_mod(p, &r, &pb).is_zero() {
            continue;
        }
        let mut m = pb.clone();
        while m <= target {
            m = &m * &m;
            let fx = eval_mod(p, &r, &m);
            let inv = mod_inverse(&eval_mod(&deriv, &r, &m), &m).expect("simple root");
            r = (&r - fx * inv).mod_floor(&m);
        }
        if let Some(q) = reconstruct(&r, &m) {
            let val = p.iter().rev().fold(BigRational::zero(), |acc, c| {
                acc * &q + BigRational::from_integer(c.clone())
            });
            if val.is_zero() {
                roots.push(q);
            }
        }
    }
    roots
}

const MODULAR_GCD_DEGREE: usize = 4;

/// Monic gcd over `Q` from gcds modulo word-sized primes: images of the
/// minimal degree are combined by CRT, coefficients rebuilt by rational
/// reconstruction, and the candidate accepted once it divides both inputs.
fn modular_gcd(a: &UniPoly, b: &UniPoly) -> UniPoly {
    let q = CoefficientField::Rationals;
    let ia = integer_primitive(a);
    let ib = integer_primitive(b);
    let la = ia.last().expect("nonzero").clone();
    let lb = ib.last().expect("nonzero").clone();
    let mut p: u64 = (1 << 31) - 1;
    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = Vec::new();
    let mut deg = usize::MAX;
    let mut last: Option<Vec<BigRational>> = None;
    loop {
        p -= 2;
        while !is_prime(p) {
            p -= 2;
        }
        let pb = BigInt::from(p);
        if (&la % &pb).is_zero() || (&lb % &pb).is_zero() {
            continue;
        }
        let fp = CoefficientField::Prime(p);
        let image = |v: &[BigInt]| UniPoly::new(fp, v.iter().map(|c| fp.from_bigint(c)).collect());
        let g = image(&ia).euclid_gcd(&image(&ib));
        let dg = g.degree().expect("nonzero gcd");
        if dg == 0 {
            return UniPoly::one(q);
        }
        if dg > deg {
            continue;
        }
        let residues: Vec<BigInt> = g
            .coeffs()
            .iter()
            .map(|c| BigInt::from(c.as_residue().expect("residue")))
            .collect();
        if dg < deg {
            deg = dg;
            modulus = pb;
            acc = residues;
            last = None;
        } else {
            let inv = mod_inverse(&(&modulus % &pb), &pb).expect("distinct primes");
            for (x, r) in acc.iter_mut().zip(&residues) {
                let k = ((r - &*x) * &inv).mod_floor(&pb);
                *x += &modulus * k;
            }
            modulus *= &pb;
        }
        let Some(coeffs) = acc
            .iter()
            .map(|c| reconstruct(c, &modulus))
            .collect::<Option<Vec<BigRational>>>()
        else {
            continue;
        };
        if last.as_ref() == Some(&coeffs) {
            let cand = UniPoly::new(q, coeffs.iter().cloned().map(FieldElement::Rational).collect());
            if a.div_exact(&cand).is_some() && b.div_exact(&cand).is_some() {
                return cand;
            }
        }
        last = Some(coeffs);
    }
}

/// Wang's rational reconstruction: `a/b ≡ r (mod m)` with `|a|, |b| < sqrt(m/2)`.
fn reconstruct(r: &BigInt, m: &BigInt) -> Option<BigRational> {
    let (mut r0, mut r1) = (m.clone(), r.clone());
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while BigInt::from(2) * &r1 * &r1 >= *m {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
        if r1.is_zero() {
            return None;
        }
    }
    if t1.is_zero() || BigInt::from(2) * &t1 * &t1 >= *m {
        return None;
    }
    Some(BigRational::new(r1, t1))
}
