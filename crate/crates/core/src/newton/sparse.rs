//! The Newton-polygon-constrained domain `E_N`, the sparse map `SR(h)` and
//! the explicit kernel witnesses built from a factorization.

use crate::error::{Error, Result};
use crate::field::CoefficientField;
use crate::poly::{monomials_up_to, BivariatePolynomial, MPoly, VAR_X, VAR_Y};
use crate::ruppert::{assemble, ruppert_image, DomainBasis, DomainKind, MapKind, RuppertMatrix};

use super::{newton_polygon, superior_envelope, GoodEdge, LatticePolygon};

/// Basis of `E_N = { (G, H) : N(XG) ⊂ N, N(YH) ⊂ N, d_ab(aXG + bYH) <= level - 1 }`.
///
/// Coordinates are indexed by the lattice points `m` of the polygon: `G`
/// owns `X^(m - (1,0))` when `m_x >= 1`, `H` owns `Y^(m - (0,1))` when
/// `m_y >= 1`. At points with `a m_x + b m_y >= level` the coefficients are
/// tied by `a g_m + b h_m = 0`.
pub fn basis_e_n(
    field: CoefficientField,
    polygon: &LatticePolygon,
    edge: Option<&GoodEdge>,
    level: i64,
) -> Result<DomainBasis<2>> {
    if let Some(e) = edge {
        if !polygon.good_edges().contains(e) {
            return Err(Error::EdgeNotGood(e.to_string()));
        }
    }
    let mut points = polygon.lattice_points();
    points.sort_by_key(|&(x, y)| (x + y, x));
    let one = field.one();
    let mut elements = Vec::new();
    for (x, y) in points {
        let g = (x >= 1).then(|| MPoly::monomial([x as u32 - 1, y as u32], one.clone()));
        let h = (y >= 1).then(|| MPoly::monomial([x as u32, y as u32 - 1], one.clone()));
        let zero = || MPoly::zero(field);
        let constrained = edge.map(|e| (e.a, e.b)).filter(|(a, b)| a * x + b * y >= level);
        match (g, h, constrained) {
            (Some(g), Some(h), Some((a, b))) => {
                if a == 0 {
                    elements.push((g, zero()));
                } else if b == 0 {
                    elements.push((zero(), h));
                } else {
                    let (fa, fb) = (field.from_i64(a), field.from_i64(b));
                    elements.push((g.scale(&fb), h.scale(&-fa)));
                }
            }
            (Some(g), Some(h), None) => {
                elements.push((g, zero()));
                elements.push((zero(), h));
            }
            (Some(g), None, c) => {
                if c.is_none_or(|(a, _)| a == 0) {
                    elements.push((g, zero()));
                }
            }
            (None, Some(h), c) => {
                if c.is_none_or(|(_, b)| b == 0) {
                    elements.push((zero(), h));
                }
            }
            (None, None, _) => {}
        }
    }
    Ok(DomainBasis {
        kind: DomainKind::SparseConstrained {
            vertices: polygon.vertices().to_vec(),
            edge: edge.map(|e| (e.a, e.b, e.c)),
            level,
        },
        elements,
    })
}

fn check_sparse_inputs(h: &BivariatePolynomial, polygon: &LatticePolygon) -> Result<u32> {
    if h.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if !polygon.contains_polygon(&newton_polygon(h)?) {
        return Err(Error::PolygonMismatch);
    }
    let d = polygon.max_total_degree().max(0) as u64;
    let required = d * d.saturating_sub(1);
    if !h.field().characteristic_exceeds(required) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: h.field().characteristic(),
            required,
        });
    }
    Ok(d as u32)
}

/// Matrix of `SR(h)` on `E_N` with the constraint level `d_ab(h)`;
/// codomain the monomials of degree `<= 2d - 2`, `d` the largest total
/// degree on the polygon.
pub fn build_matrix_sr(
    h: &BivariatePolynomial,
    polygon: &LatticePolygon,
    edge: Option<&GoodEdge>,
) -> Result<RuppertMatrix<2>> {
    check_sparse_inputs(h, polygon)?;
    let level = match edge {
        Some(e) => h.weighted_degree(e.a, e.b)?,
        None => 0,
    };
    let domain = basis_e_n(h.field(), polygon, edge, level)?;
    build_matrix_sr_on(h, polygon, domain)
}

/// Matrix of `SR(h)` on a prebuilt domain (used for whole pencils, where
/// every member shares one domain).
pub fn build_matrix_sr_on(
    h: &BivariatePolynomial,
    polygon: &LatticePolygon,
    domain: DomainBasis<2>,
) -> Result<RuppertMatrix<2>> {
    let d = check_sparse_inputs(h, polygon)?;
    let codomain = monomials_up_to::<2>(2 * d as i64 - 2);
    assemble(
        MapKind::SrSparse,
        domain,
        codomain,
        h.field(),
        h.to_string(),
        |g, hh| Ok(ruppert_image(h, g, hh)),
    )
}

/// One pair `(G_i^(k), H_i^(k))` together with its containment status.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KerdefWitness {
    pub factor: usize,
    pub k: u32,
    pub g: BivariatePolynomial,
    pub h: BivariatePolynomial,
    /// `N(XG)` and `N(YH)` lie in `N(f)` (always within `N⁺(f)`).
    pub within_newton: bool,
}

/// The `(sum e_i) - 1` witnesses for `f = prod f_i^e_i` and the weight
/// `(a, b)`:
/// `G_i^(1) = -d_ab(f_i) (f/f_1) df_1/dX + d_ab(f_1) (f/f_i) df_i/dX` for
/// `i >= 2`, and `G_i^(k) = (f/f_i^k) df_i/dX` for `k = 2..e_i` (same with
/// `d/dY` for `H`).
///
/// Each witness is checked against: `N(XG), N(YH) ⊂ N(f)` for `k = 1`;
/// `⊂ N⁺(f)` always; `⊂ N(f)` for `k >= 2` whenever `f(0,0) != 0`; and
/// `d_ab(aXG + bYH) <= d_ab(f) - 1`.
pub fn kerdef_witnesses(factors: &[(BivariatePolynomial, u32)], edge_normal: (i64, i64)) -> Result<Vec<KerdefWitness>> {
    if factors.is_empty() {
        return Err(Error::InconsistentDegrees("no factors".into()));
    }
    let field = factors[0].0.field();
    let f = factors.iter().fold(MPoly::one(field), |acc, (p, e)| &acc * &p.pow(*e));
    let d = f.total_degree().ok_or(Error::ZeroPolynomial)?;
    if !field.characteristic_exceeds(d as u64) {
        return Err(Error::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            required: d as u64,
        });
    }
    let (a, b) = edge_normal;
    let nf = newton_polygon(&f)?;
    let nplus = superior_envelope(&nf)?;
    let f00 = !f.constant_term().is_zero();
    let x = MPoly::var(field, VAR_X);
    let y = MPoly::var(field, VAR_Y);
    let cofactor = |i: usize, k: u32| f.div_exact(&factors[i].0.pow(k)).expect("factor divides f");
    let grad = |i: usize, k: u32| {
        let c = cofactor(i, k);
        (
            &c * &factors[i].0.derivative(VAR_X),
            &c * &factors[i].0.derivative(VAR_Y),
        )
    };
    let wdeg = |p: &BivariatePolynomial| p.weighted_degree(a, b);

    let mut out = Vec::new();
    let (g1, h1) = grad(0, 1);
    let w1 = field.from_i64(wdeg(&factors[0].0)?);
    for (i, (fi, _)) in factors.iter().enumerate().skip(1) {
        let (gi, hi) = grad(i, 1);
        let wi = field.from_i64(wdeg(fi)?);
        out.push((
            i,
            1,
            &g1.scale(&-&wi) + &gi.scale(&w1),
            &h1.scale(&-&wi) + &hi.scale(&w1),
        ));
    }
    for (i, (_, e)) in factors.iter().enumerate() {
        for k in 2..=*e {
            let (g, h) = grad(i, k);
            out.push((i, k, g, h));
        }
    }

    let top = wdeg(&f)?;
    let fa = field.from_i64(a);
    let fb = field.from_i64(b);
    let mut witnesses = Vec::new();
    for (i, k, g, h) in out {
        let label = format!("G_{}^({k})", i + 1);
        let xg = &x * &g;
        let yh = &y * &h;
        let inside = |poly: &LatticePolygon| {
            [&xg, &yh]
                .iter()
                .all(|p| p.is_zero() || poly.contains_polygon(&newton_polygon(p).expect("nonzero")))
        };
        let in_n = inside(&nf);
        if !inside(&nplus) || (k == 1 && !in_n) || (k >= 2 && f00 && !in_n) {
            return Err(Error::WitnessContainmentFailed(label));
        }
        let combo = &xg.scale(&fa) + &yh.scale(&fb);
        if !combo.is_zero() && combo.weighted_degree(a, b)? > top - 1 {
            return Err(Error::WitnessContainmentFailed(label));
        }
        witnesses.push(KerdefWitness {
            factor: i,
            k,
            g,
            h,
            within_newton: in_n,
        });
    }
    Ok(witnesses)
}
