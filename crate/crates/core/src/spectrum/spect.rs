use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};
use crate::matrix::Matrix;
use crate::poly::univariate::{BinaryForm, UniPoly};

use super::{Pencil, PencilMatrices};

const MAX_DRAWS: u32 = 40;
const STABLE_DRAWS: u32 = 3;
const COMPRESSION_RANGE: i64 = 64;

/// The spectrum polynomial together with the number of random
/// compressions it took to stabilize.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpectComputation {
    pub form: BinaryForm,
    pub draws: u32,
}

fn random_compression(field: CoefficientField, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Matrix {
    let data = (0..rows)
        .map(|_| {
            (0..cols)
                .map(|_| match field {
                    CoefficientField::Rationals => {
                        field.from_i64(rng.random_range(-COMPRESSION_RANGE..=COMPRESSION_RANGE))
                    }
                    CoefficientField::Prime(p) => field.from_i64(rng.random_range(0..p) as i64),
                })
                .collect()
        })
        .collect();
    Matrix::from_rows(field, data)
}

/// Full column rank somewhere on the line; false means every maximal minor
/// vanishes identically (a form of degree `c` vanishing at `c + 1` points).
fn generically_injective(mats: &PencilMatrices) -> bool {
    let field = mats.mf.field();
    let c = mats.columns();
    let one = field.one();
    (0..=c as i64).any(|t| mats.at(&field.from_i64(t), &one).rank() == c)
}

/// `det(t S M(f#) + S M(g#))` interpolated at `t = 0..c` as a form of
/// degree `c`.
fn compressed_determinant(mats: &PencilMatrices, s: &Matrix, xs: &[FieldElement]) -> Result<BinaryForm> {
    let field = mats.mf.field();
    let sa = s.mul(&mats.mf);
    let sb = s.mul(&mats.mg);
    let one = field.one();
    let ys: Vec<FieldElement> = xs
        .iter()
        .map(|t| Matrix::linear_combination(t, &sa, &one, &sb).determinant())
        .collect();
    let affine = UniPoly::interpolate(field, xs, &ys)?;
    let c = mats.columns();
    debug_assert_eq!(affine.coeff(c), sa.determinant());
    Ok(BinaryForm::new(affine, c as u32))
}

/// `Spect(U, V)`: the gcd of the maximal minors of `U M(f#) + V M(g#)`,
/// as the stabilized gcd of random square compressions. Monic in its
/// affine part.
pub fn spect_polynomial(pencil: &Pencil, seed: u64) -> Result<SpectComputation> {
    let field = pencil.field();
    let d = pencil.degree() as u64;
    if let CoefficientField::Prime(p) = field {
        if p <= d * d {
            return Err(Error::InsufficientSamplePoints(p));
        }
    }
    let mats = pencil.matrices()?;
    if !generically_injective(&mats) {
        return Err(Error::CompositeOrNonReduced);
    }
    let c = mats.columns();
    let rows = mats.mf.rows();
    let xs: Vec<FieldElement> = (0..=c as i64).map(|t| field.from_i64(t)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut acc: Option<BinaryForm> = None;
    let mut stable = 0;
    let mut draws = 0;
    while draws < MAX_DRAWS {
        draws += 1;
        let s = random_compression(field, c, rows, &mut rng);
        let form = compressed_determinant(&mats, &s, &xs)?;
        if form.is_zero() {
            continue;
        }
        let next = match &acc {
            None => form.monic(),
            Some(a) => a.gcd(&form),
        };
        if acc.as_ref() == Some(&next) {
            stable += 1;
        } else {
            stable = 0;
        }
        acc = Some(next);
        if stable >= STABLE_DRAWS {
            break;
        }
    }
    let form = acc.ok_or(Error::CompositeOrNonReduced)?;
    Ok(SpectComputation { form, draws })
}
