//! Dense exact matrices.
//!
//! Over `Q` every row is first scaled to an integer row and reduced with
//! Bareiss' fraction-free elimination; back substitution for kernels happens
//! in rationals. Over `F_p` plain Gauss-Jordan on machine words is used.
//! Pivoting is deterministic: columns left to right, the first row (in
//! current order) with a nonzero entry.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::field::{mul_mod, pow_mod, CoefficientField, FieldElement};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    field: CoefficientField,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl Matrix {
    pub fn zeros(field: CoefficientField, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn from_rows(field: CoefficientField, rows: Vec<Vec<FieldElement>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        let mut m = Self::zeros(field, r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_i64_rows(field: CoefficientField, rows: &[&[i64]]) -> Self {
        Self::from_rows(
            field,
            rows.iter()
                .map(|r| r.iter().map(|&v| field.from_i64(v)).collect())
                .collect(),
        )
    }

    /// Builds a matrix from column vectors of length `rows`.
    pub fn from_columns(field: CoefficientField, rows: usize, columns: &[Vec<FieldElement>]) -> Self {
        let mut m = Self::zeros(field, rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows);
            for (i, v) in col.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn field(&self) -> CoefficientField {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElement) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<FieldElement> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Vec<FieldElement> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(self.field.zero(), |acc, (a, b)| &acc + &(a * b))
            })
            .collect()
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows);
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j) + &(a * b);
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// `a*A + b*B` for matrices of equal shape.
    pub fn linear_combination(a: &FieldElement, ma: &Matrix, b: &FieldElement, mb: &Matrix) -> Matrix {
        assert_eq!((ma.rows, ma.cols), (mb.rows, mb.cols), "shape mismatch");
        Matrix {
            field: ma.field,
            rows: ma.rows,
            cols: ma.cols,
            data: ma.data.iter().zip(&mb.data).map(|(x, y)| &(a * x) + &(b * y)).collect(),
        }
    }

    /// Rows selected (in the given order) from `self`.
    pub fn select_rows(&self, indices: &[usize]) -> Matrix {
        Matrix::from_rows(self.field, indices.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{ x : A x = 0 }`. Each vector has a 1 in its free
    /// column and 0 in the other free columns.
    pub fn nullspace(&self) -> Vec<Vec<FieldElement>> {
        let ech = self.echelon();
        let free: Vec<usize> = (0..self.cols).filter(|c| !ech.pivots.contains(c)).collect();
        free.iter().map(|&f| ech.kernel_vector(f, self.field)).collect()
    }

    /// Some `x` with `A x = b`, or `None` when the system is inconsistent.
    pub fn solve(&self, b: &[FieldElement]) -> Option<Vec<FieldElement>> {
        assert_eq!(b.len(), self.rows);
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for (i, bi) in b.iter().enumerate() {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, bi.clone());
        }
        let ech = aug.echelon();
        if ech.pivots.contains(&self.cols) {
            return None;
        }
        let v = ech.kernel_vector(self.cols, self.field);
        Some(v[..self.cols].iter().map(|x| -x).collect())
    }

    /// Determinant of a square matrix.
    pub fn determinant(&self) -> FieldElement {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        if self.rows == 0 {
            return self.field.one();
        }
        match self.field {
            CoefficientField::Rationals => {
                let (rows, scale) = self.integer_rows();
                let (ech, pivots, sign) = bareiss(rows);
                if pivots.len() < self.rows {
                    return self.field.zero();
                }
                let det = &ech[self.rows - 1][self.cols - 1] * BigInt::from(sign);
                FieldElement::Rational(BigRational::new(det, scale))
            }
            CoefficientField::Prime(p) => {
                let (rows, pivots, sign) = gauss_mod(self.residue_rows(p), p, false);
                if pivots.len() < self.rows {
                    return self.field.zero();
                }
                let mut det = if sign < 0 { p - 1 } else { 1 };
                for (k, &c) in pivots.iter().enumerate() {
                    det = mul_mod(det, rows[k][c], p);
                }
                FieldElement::Residue { value: det, modulus: p }
            }
        }
    }

    /// Rows scaled by the lcm of their denominators, and the product of all
    /// scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut total = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .map(|v| v.as_rational().expect("rational entry").denom().clone())
                    .fold(BigInt::one(), |acc, d| acc.lcm(&d));
                total *= &lcm;
                row.iter()
                    .map(|v| {
                        let q = v.as_rational().expect("rational entry");
                        q.numer() * (&lcm / q.denom())
                    })
                    .collect()
            })
            .collect();
        (rows, total)
    }

    fn residue_rows(&self, _p: u64) -> Vec<Vec<u64>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| v.as_residue().expect("residue entry"))
                    .collect()
            })
            .collect()
    }

    fn echelon(&self) -> Echelon {
        match self.field {
            CoefficientField::Rationals => {
                let (rows, _) = self.integer_rows();
                let (rows, pivots, _) = bareiss(rows);
                Echelon {
                    rows: EchelonRows::Integer(rows),
                    pivots,
                }
            }
            CoefficientField::Prime(p) => {
                let (rows, pivots, _) = gauss_mod(self.residue_rows(p), p, true);
                Echelon {
                    rows: EchelonRows::Residue(rows, p),
                    pivots,
                }
            }
        }
    }
}

enum EchelonRows {
    Integer(Vec<Vec<BigInt>>),
    Residue(Vec<Vec<u64>>, u64),
}

struct Echelon {
    rows: EchelonRows,
    pivots: Vec<usize>,
}

impl Echelon {
    /// Kernel vector with `x[free] = 1` and the other non-pivot entries 0.
    fn kernel_vector(&self, free: usize, field: CoefficientField) -> Vec<FieldElement> {
        match &self.rows {
            EchelonRows::Integer(rows) => {
                let cols = rows.first().map_or(free + 1, |r| r.len());
                let mut x = vec![BigRational::zero(); cols];
                x[free] = BigRational::one();
                for (k, &pc) in self.pivots.iter().enumerate().rev() {
                    let row = &rows[k];
                    let mut s = BigRational::zero();
                    for j in pc + 1..cols {
                        if !row[j].is_zero() && !x[j].is_zero() {
                            s += &x[j] * BigRational::from_integer(row[j].clone());
                        }
                    }
                    x[pc] = -s / BigRational::from_integer(row[pc].clone());
                }
                x.into_iter().map(FieldElement::Rational).collect()
            }
            EchelonRows::Residue(rows, p) => {
                let p = *p;
                let cols = rows.first().map_or(free + 1, |r| r.len());
                let mut x = vec![0u64; cols];
                x[free] = 1;
                // rows are fully reduced with unit pivots
                for (k, &pc) in self.pivots.iter().enumerate() {
                    x[pc] = (p - rows[k][free]) % p;
                }
                x.into_iter().map(|v| field_residue(field, v)).collect()
            }
        }
    }
}

fn field_residue(field: CoefficientField, v: u64) -> FieldElement {
    FieldElement::Residue {
        value: v,
        modulus: field.characteristic(),
    }
}

/// Bareiss elimination to row echelon form. Returns the reduced rows, the
/// pivot columns and the sign of the row permutation.
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (Vec<Vec<BigInt>>, Vec<usize>, i32) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if i != r {
            a.swap(i, r);
            sign = -sign;
        }
        let (top, bottom) = a.split_at_mut(r + 1);
        let prow = &top[r];
        let pv = &prow[c];
        for row in bottom.iter_mut() {
            let lead = std::mem::take(&mut row[c]);
            for j in c + 1..ncols {
                let v = pv * &row[j] - &lead * &prow[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = a[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    (a, pivots, sign)
}

/// Gaussian elimination mod `p`. With `reduce` the result is the reduced
/// row echelon form with unit pivots; otherwise a plain echelon form.
fn gauss_mod(mut a: Vec<Vec<u64>>, p: u64, reduce: bool) -> (Vec<Vec<u64>>, Vec<usize>, i32) {
    let nrows = a.len();
    let ncols = a.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut sign = 1;
    let mut r = 0;
    for c in 0..ncols {
        if r == nrows {
            break;
        }
        let Some(i) = (r..nrows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        if i != r {
            a.swap(i, r);
            sign = -sign;
        }
        if reduce {
            let inv = pow_mod(a[r][c], p - 2, p);
            for v in a[r].iter_mut() {
                *v = mul_mod(*v, inv, p);
            }
        }
        let prow = a[r].clone();
        let pinv = pow_mod(prow[c], p - 2, p);
        let targets: Vec<usize> = if reduce {
            (0..nrows).filter(|&k| k != r).collect()
        } else {
            (r + 1..nrows).collect()
        };
        for k in targets {
            if a[k][c] == 0 {
                continue;
            }
            let factor = mul_mod(a[k][c], pinv, p);
            for j in c..ncols {
                if prow[j] != 0 {
                    a[k][j] = (a[k][j] + p - mul_mod(factor, prow[j], p)) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots, sign)
}

/// Rank of a matrix given by integer rows (test helper for oracles).
pub fn integer_rank(rows: &[Vec<BigInt>]) -> usize {
    bareiss(rows.to_vec()).1.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q() -> CoefficientField {
        CoefficientField::Rationals
    }

    /// Plain rational Gauss-Jordan, used as an oracle.
    fn rref_rank(m: &Matrix) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..m.rows())
            .map(|i| m.row(i).iter().map(|v| v.as_rational().unwrap().clone()).collect())
            .collect();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(i) = (r..m.rows()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(i, r);
            let pv = a[r][c].clone();
            for v in a[r].iter_mut() {
                *v = &*v / &pv;
            }
            let prow = a[r].clone();
            for (k, row) in a.iter_mut().enumerate() {
                if k != r && !row[c].is_zero() {
                    let f = row[c].clone();
                    for (x, y) in row.iter_mut().zip(&prow) {
                        *x = &*x - &f * y;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn zero_matrix_kernel() {
        let m = Matrix::zeros(q(), 3, 4);
        assert_eq!(m.nullspace().len(), 4);
        assert_eq!(m.rank(), 0);
    }

    #[test]
    fn small_kernel_and_det() {
        let m = Matrix::from_i64_rows(q(), &[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let ker = m.nullspace();
        assert_eq!(ker.len(), 1);
        assert!(m.mul_vec(&ker[0]).iter().all(|v| v.is_zero()));
        assert!(m.determinant().is_zero());
        let m = Matrix::from_i64_rows(q(), &[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        assert_eq!(m.determinant(), q().from_i64(-4));
    }

    #[test]
    fn prime_field_det_and_solve() {
        let f = CoefficientField::prime(7).unwrap();
        let m = Matrix::from_i64_rows(f, &[&[0, 2, 1], &[3, 1, 0], &[1, 1, 1]]);
        assert_eq!(m.determinant(), f.from_i64(-4));
        let b = vec![f.from_i64(1), f.from_i64(2), f.from_i64(3)];
        let x = m.solve(&b).unwrap();
        assert_eq!(m.mul_vec(&x), b);
    }

    #[test]
    fn inconsistent_system() {
        let m = Matrix::from_i64_rows(q(), &[&[1, 1], &[2, 2]]);
        assert!(m.solve(&[q().from_i64(1), q().from_i64(3)]).is_none());
        let x = m.solve(&[q().from_i64(1), q().from_i64(2)]).unwrap();
        assert_eq!(m.mul_vec(&x), vec![q().from_i64(1), q().from_i64(2)]);
    }

    fn arb_matrix() -> impl Strategy<Value = Matrix> {
        (1usize..7, 1usize..7).prop_flat_map(|(r, c)| {
            prop::collection::vec((-4i64..=4, 1i64..4), r * c).prop_map(move |vals| {
                let rows = vals
                    .chunks(c)
                    .map(|ch| {
                        ch.iter()
                            .map(|&(n, d)| q().from_ratio(&n.into(), &d.into()).unwrap())
                            .collect()
                    })
                    .collect();
                Matrix::from_rows(q(), rows)
            })
        })
    }

    proptest! {
        #[test]
        fn bareiss_matches_rational_oracle(m in arb_matrix()) {
            let rank = m.rank();
            prop_assert_eq!(rank, rref_rank(&m));
            let ker = m.nullspace();
            prop_assert_eq!(ker.len() + rank, m.cols());
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
            if m.rows() == m.cols() {
                prop_assert_eq!(m.determinant().is_zero(), rank < m.rows());
            }
        }

        #[test]
        fn determinant_is_multiplicative(n in 1usize..5, seed in prop::collection::vec(-5i64..=5, 32)) {
            let a = Matrix::from_rows(q(), (0..n).map(|i| (0..n).map(|j| q().from_i64(seed[i * n + j])).collect()).collect());
            let b = Matrix::from_rows(q(), (0..n).map(|i| (0..n).map(|j| q().from_i64(seed[16 + i * n + j])).collect()).collect());
            prop_assert_eq!(a.mul(&b).determinant(), &a.determinant() * &b.determinant());
        }

        #[test]
        fn prime_field_kernel(vals in prop::collection::vec(0u64..13, 20)) {
            let f = CoefficientField::prime(13).unwrap();
            let m = Matrix::from_rows(f, vals.chunks(5).map(|c| c.iter().map(|&v| f.from_i64(v as i64)).collect()).collect());
            let ker = m.nullspace();
            prop_assert_eq!(ker.len() + m.rank(), 5);
            for v in &ker {
                prop_assert!(m.mul_vec(v).iter().all(|x| x.is_zero()));
            }
        }
    }
}
