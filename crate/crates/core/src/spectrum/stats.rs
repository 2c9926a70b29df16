use serde::Serialize;

use crate::error::{Error, Result};
use crate::poly::HomogeneousPolynomial3;
use crate::ruppert::build_matrix_r_hom;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Computed,
    Planted,
}

/// Factor statistics of one member `F = Z^e_inf * prod P_i^e_i`:
/// `n` distinct absolutely irreducible factors, `m` counted with
/// multiplicity, `omega = sum deg P_i (e_i - 1)` and
/// `theta = C(omega + 1, 2) - (m - n)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MemberStatistics {
    pub n: u64,
    pub m: u64,
    pub omega: u64,
    pub theta: u64,
    pub e_infinity: u32,
    pub kernel_dim: u64,
    /// Number of absolutely irreducible factors of `F(X, Y, 1)`.
    pub affine_components: u64,
    /// Largest multiplicity among the factors of `F(X, Y, 1)`.
    pub affine_max_multiplicity: u32,
    pub provenance: Provenance,
}

impl MemberStatistics {
    /// `F = P^e` with `e >= 2`, `P` irreducible and not `Z`.
    pub fn is_pure_power(&self) -> bool {
        self.n == 1 && self.m >= 2 && self.e_infinity == 0
    }

    /// `F = Z^e_inf P^e` with `e >= 2` and `P` irreducible.
    pub fn is_nonreduced_affine_irreducible(&self) -> bool {
        self.affine_components == 1 && self.affine_max_multiplicity >= 2
    }
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// Statistics of a nonzero form from its squarefree decomposition: each
/// squarefree part `g_k` of `F(X, Y, 1)` has `dim ker R(g_k#) + 1`
/// absolutely irreducible factors. The result is cross-checked against
/// `m - 1 + omega + theta = dim ker R(F)`.
pub fn member_statistics(form: &HomogeneousPolynomial3) -> Result<MemberStatistics> {
    if form.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = form.degree() as u64;
    if d == 0 {
        return Err(Error::DegreeTooLow(0));
    }
    let field = form.field();
    let required = d * (d - 1);
    if !field.characteristic_exceeds(required) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            required,
        });
    }
    let e_inf = form.z_valuation()?;
    let mut n = u64::from(e_inf > 0);
    let mut m = e_inf as u64;
    let mut omega = (e_inf as u64).saturating_sub(1);
    let mut components = 0u64;
    let mut max_k = 0u32;
    let affine = form.dehomogenize();
    if !affine.is_constant() {
        for (gk, k) in affine.squarefree_decompose()?.factors {
            let deg = gk.total_degree().expect("nonconstant factor");
            let rk = if deg == 1 {
                1
            } else {
                build_matrix_r_hom(&gk.homogenize(deg)?)?.kernel_dimension() as u64 + 1
            };
            n += rk;
            m += k as u64 * rk;
            omega += (k as u64 - 1) * deg as u64;
            components += rk;
            max_k = max_k.max(k);
        }
    }
    let kernel_dim = if d >= 2 {
        build_matrix_r_hom(form)?.kernel_dimension() as u64
    } else {
        0
    };
    let theta = binom2(omega + 1) as i64 - (m - n) as i64;
    let lhs = m as i64 - 1 + omega as i64 + theta;
    if theta < 0 || lhs != kernel_dim as i64 {
        return Err(Error::KeyEquationMismatch {
            lhs: lhs.max(0) as u64,
            kernel: kernel_dim,
        });
    }
    Ok(MemberStatistics {
        n,
        m,
        omega,
        theta: theta as u64,
        e_infinity: e_inf,
        kernel_dim,
        affine_components: components,
        affine_max_multiplicity: max_k,
        provenance: Provenance::Computed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::CoefficientField;
    use crate::poly::test_support::*;
    use proptest::prelude::*;

    fn hom(s: &str, d: u32) -> HomogeneousPolynomial3 {
        HomogeneousPolynomial3::parse(s, q(), d).unwrap()
    }

    fn nmwt(s: &MemberStatistics) -> (u64, u64, u64, u64) {
        (s.n, s.m, s.omega, s.theta)
    }

    #[test]
    fn examples() {
        let s = member_statistics(&hom("X*Y", 2)).unwrap();
        assert_eq!(nmwt(&s), (2, 2, 0, 0));
        assert_eq!(s.kernel_dim, 1);
        let s = member_statistics(&hom("Z^2", 2)).unwrap();
        assert_eq!(nmwt(&s), (1, 2, 1, 0));
        assert_eq!(s.kernel_dim, 2);
        assert_eq!(s.e_infinity, 2);
        assert!(!s.is_nonreduced_affine_irreducible());
        let s = member_statistics(&hom("Y^2*Z - X^3 - X*Z^2", 3)).unwrap();
        assert_eq!(nmwt(&s), (1, 1, 0, 0));
        let s = member_statistics(&hom("X^2 + Y^2", 2)).unwrap();
        assert_eq!(nmwt(&s), (2, 2, 0, 0));
        let s = member_statistics(&hom("(X^2 + Y*Z)^2", 4)).unwrap();
        assert_eq!(nmwt(&s), (1, 2, 2, 2));
        assert!(s.is_pure_power());
        let s = member_statistics(&hom("Z*(X - Y)^3", 4)).unwrap();
        assert_eq!(nmwt(&s), (2, 4, 2, 1));
        assert!(s.is_nonreduced_affine_irreducible());
        assert!(!s.is_pure_power());
    }

    #[test]
    fn small_characteristic() {
        let f5 = CoefficientField::prime(5).unwrap();
        let f = HomogeneousPolynomial3::parse("X^3 + Y^2*Z", f5, 3).unwrap();
        assert!(matches!(
            member_statistics(&f),
            Err(Error::CharacteristicTooSmall { .. })
        ));
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn scaling_invariance(c in 1i64..50, neg in any::<bool>(), idx in 0usize..5) {
            let forms = [
                hom("X*Y*(X + Y + Z)", 3),
                hom("Z^2*(X - 2*Y)", 3),
                hom("(X + Z)^2*(Y - Z)", 3),
                hom("X^3 - Y^2*Z", 3),
                hom("(X*Y + Z^2)*(X - Y)^2", 4),
            ];
            let f = &forms[idx];
            let k = q().from_i64(if neg { -c } else { c });
            let a = member_statistics(f).unwrap();
            let b = member_statistics(&f.scale(&k)).unwrap();
            prop_assert_eq!(a, b);
        }
    }
}
