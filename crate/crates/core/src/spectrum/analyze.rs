use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{CoefficientField, FieldElement};
use crate::newton::{joint_newton_polygon, newton_polygon, superior_envelope, GoodEdge, LatticePolygon, Point};
use crate::poly::univariate::{rational_roots, residual_factors, BinaryForm, ProjectivePoint, ResidualFactor, UniPoly};

use super::spect::spect_polynomial;
use super::stats::member_statistics;
use super::{spectrum_bruteforce, Pencil, SpectralPoint};

pub const REPORT_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    #[default]
    Dense,
    Sparse,
}

/// Which polygon plays the role of `N` in sparse mode: the joint Newton
/// polygon `conv(supp f ∪ supp g)`, its superior envelope, or `auto`
/// (the superior envelope).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolygonChoice {
    #[default]
    Auto,
    Newton,
    Superior,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub mode: Mode,
    pub polygon: PolygonChoice,
    pub seed: u64,
}

/// One checked inequality `lhs <= rhs`. `conditional` marks verdicts whose
/// left side may be incomplete because part of the spectrum lies outside
/// the base field.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub name: String,
    pub statement: String,
    pub lhs: i64,
    pub rhs: i64,
    pub holds: bool,
    pub conditional: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FieldRecord {
    #[serde(flatten)]
    pub field: CoefficientField,
    /// The characteristic must be 0 or exceed this value.
    pub required_above: u64,
    pub satisfied: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectFactor {
    pub factor: String,
    pub multiplicity: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectRecord {
    pub form: String,
    pub degree: u32,
    pub draws: u32,
    pub squarefree: Vec<SpectFactor>,
    pub roots: Vec<SpectFactor>,
    /// What remains after removing the roots found in the base field.
    pub residual: Vec<ResidualFactor>,
}

/// `kappa = max(e_inf - 1, 0)` where `e_inf` is the multiplicity of `Z` in
/// the unique member divisible by `Z`, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Kappa {
    pub kappa: u64,
    pub e_infinity: u32,
    pub member: Option<ProjectivePoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SparseRecord {
    pub choice: PolygonChoice,
    pub vertices: Vec<Point>,
    pub n: u64,
    pub n_x: u64,
    pub n_y: u64,
    pub good_edge: Option<GoodEdge>,
    pub n_e: u64,
    pub dimension: i64,
    pub bound: i64,
    pub within_dense_triangle: bool,
    pub newton_contained: bool,
    pub superior_contained: bool,
    pub origin_point: Option<ProjectivePoint>,
    pub origin_kernel_dim: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PencilReport {
    pub schema_version: u32,
    pub f: String,
    pub g: String,
    pub d: u32,
    pub mode: Mode,
    pub field: FieldRecord,
    pub seed: u64,
    pub spect: Option<SpectRecord>,
    pub spectral_points: Vec<SpectralPoint>,
    pub rho: u64,
    pub m: u64,
    pub omega: u64,
    pub theta: u64,
    pub kappa: u64,
    pub kappa_detail: Kappa,
    pub sparse: Option<SparseRecord>,
    pub bounds: Vec<Verdict>,
    pub warnings: Vec<String>,
}

impl PencilReport {
    pub fn all_bounds_hold(&self) -> bool {
        self.bounds.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, name: &str) -> Option<&Verdict> {
        self.bounds.iter().find(|v| v.name == name)
    }
}

/// Finds the member whose degree-`d` parts cancel, if there is one.
pub fn compute_kappa(pencil: &Pencil) -> Result<Kappa> {
    let d = pencil.degree();
    let field = pencil.field();
    let fd = pencil.f().homogeneous_component(d);
    let gd = pencil.g().homogeneous_component(d);
    let member = if fd.is_zero() {
        Some(ProjectivePoint::Infinity)
    } else if gd.is_zero() {
        Some(ProjectivePoint::Affine(field.zero()))
    } else {
        let (e, lead) = gd.leading_term().expect("nonzero");
        let c = fd.coeff(e).try_div(lead)?;
        if fd == gd.scale(&c) {
            Some(ProjectivePoint::from_pair(&field.one(), &-c)?)
        } else {
            None
        }
    };
    let e_infinity = match &member {
        Some(pt) => pencil.member(pt).z_valuation()?,
        None => 0,
    };
    Ok(Kappa {
        kappa: (e_infinity as u64).saturating_sub(1),
        e_infinity,
        member,
    })
}

fn verdict(name: &str, statement: &str, lhs: i64, rhs: i64, conditional: bool) -> Verdict {
    Verdict {
        name: name.into(),
        statement: statement.into(),
        lhs,
        rhs,
        holds: lhs <= rhs,
        conditional,
    }
}

fn point_root_factor(point: &ProjectivePoint) -> String {
    match point {
        ProjectivePoint::Infinity => "V".into(),
        ProjectivePoint::Affine(t) if t.is_zero() => "U".into(),
        ProjectivePoint::Affine(t) => format!("U - ({t})*V"),
    }
}

fn squarefree_record(form: &BinaryForm) -> Result<Vec<SpectFactor>> {
    let mut out = Vec::new();
    if !form.affine().is_constant() {
        for (a, k) in form.affine().squarefree_decompose()? {
            out.push(SpectFactor {
                factor: BinaryForm::new(a.clone(), a.degree().unwrap_or(0) as u32).to_string(),
                multiplicity: k,
            });
        }
    }
    if form.infinity_multiplicity() > 0 {
        out.push(SpectFactor {
            factor: "V".into(),
            multiplicity: form.infinity_multiplicity(),
        });
    }
    Ok(out)
}

/// Removes `(t - r)^k` for each affine root found and decomposes the rest.
fn residual_over_field(affine: &UniPoly, roots: &[(FieldElement, u32)]) -> Result<Vec<ResidualFactor>> {
    let mut rest = affine.clone();
    for (r, k) in roots {
        rest = rest
            .div_exact(&UniPoly::linear_root(r).pow(*k))
            .ok_or_else(|| Error::Unsupported("root does not divide".into()))?;
    }
    if rest.is_constant() {
        return Ok(vec![]);
    }
    Ok(rest
        .squarefree_decompose()?
        .into_iter()
        .map(|(a, k)| ResidualFactor {
            degree: a.degree().unwrap_or(0) as u32,
            multiplicity: k,
            polynomial: a.fmt_in("t"),
        })
        .collect())
}

struct Spectrum {
    points: Vec<SpectralPoint>,
    spect: Option<SpectRecord>,
    incomplete: bool,
    warnings: Vec<String>,
}

fn spectrum_over_q(pencil: &Pencil, seed: u64) -> Result<Spectrum> {
    let comp = spect_polynomial(pencil, seed)?;
    let form = comp.form;
    let mats = pencil.matrices()?;
    let mut warnings = Vec::new();
    let roots: Vec<(BigRational, u32)> = if form.affine().is_constant() {
        vec![]
    } else {
        rational_roots(form.affine())?
    };
    let mut candidates: Vec<(ProjectivePoint, u32)> = roots
        .iter()
        .map(|(r, k)| (ProjectivePoint::Affine(FieldElement::Rational(r.clone())), *k))
        .collect();
    if form.infinity_multiplicity() > 0 {
        candidates.push((ProjectivePoint::Infinity, form.infinity_multiplicity()));
    }
    let mut points = Vec::new();
    let mut root_record = Vec::new();
    for (pt, k) in candidates {
        root_record.push(SpectFactor {
            factor: point_root_factor(&pt),
            multiplicity: k,
        });
        let dim = mats.kernel_dim(&pt);
        if dim == 0 {
            warnings.push(format!("root {pt} of the spectrum polynomial has a trivial kernel"));
            continue;
        }
        let mut sp = SpectralPoint::new(pencil, pt, dim)?;
        sp.spect_multiplicity = Some(k);
        points.push(sp);
    }
    let residual = residual_factors(form.affine(), &roots, "t")?;
    let incomplete = !residual.is_empty();
    if incomplete {
        warnings.push(format!(
            "the spectrum polynomial has {} irrational root class(es); their members carry no statistics",
            residual.len()
        ));
    }
    let spect = SpectRecord {
        form: form.to_string(),
        degree: form.degree(),
        draws: comp.draws,
        squarefree: squarefree_record(&form)?,
        roots: root_record,
        residual,
    };
    Ok(Spectrum {
        points,
        spect: Some(spect),
        incomplete,
        warnings,
    })
}

fn spectrum_over_fp(pencil: &Pencil, seed: u64) -> Result<Spectrum> {
    let mut points = spectrum_bruteforce(pencil)?;
    let mut warnings = Vec::new();
    let d = pencil.degree() as u64;
    let spect = match spect_polynomial(pencil, seed) {
        Ok(comp) => {
            let form = comp.form;
            let mut affine_roots = Vec::new();
            let mut root_record = Vec::new();
            for sp in points.iter_mut() {
                let k = form.multiplicity(&sp.point);
                sp.spect_multiplicity = Some(k);
                root_record.push(SpectFactor {
                    factor: point_root_factor(&sp.point),
                    multiplicity: k,
                });
                if let ProjectivePoint::Affine(t) = &sp.point {
                    affine_roots.push((t.clone(), k));
                }
            }
            let residual = residual_over_field(form.affine(), &affine_roots)?;
            Some(SpectRecord {
                form: form.to_string(),
                degree: form.degree(),
                draws: comp.draws,
                squarefree: squarefree_record(&form)?,
                roots: root_record,
                residual,
            })
        }
        Err(Error::InsufficientSamplePoints(p)) => {
            warnings.push(format!("p = {p} <= d^2 = {}: spectrum polynomial not computed", d * d));
            None
        }
        Err(e) => return Err(e),
    };
    let incomplete = match &spect {
        Some(s) => !s.residual.is_empty(),
        None => true,
    };
    if incomplete {
        warnings.push("points defined only over extensions of F_p may be spectral and are not enumerated".into());
    }
    Ok(Spectrum {
        points,
        spect,
        incomplete,
        warnings,
    })
}

fn containment(n: &LatticePolygon, pencil: &Pencil) -> Result<(bool, bool)> {
    let nf = newton_polygon(pencil.f())?;
    let ng = newton_polygon(pencil.g())?;
    let plain = n.contains_polygon(&nf) && n.contains_polygon(&ng);
    let sup = n.contains_polygon(&superior_envelope(&nf)?) && n.contains_polygon(&superior_envelope(&ng)?);
    Ok((plain, sup))
}

/// Spectrum, per-point statistics, aggregates and every applicable bound
/// verdict. A violated bound is reported, not raised.
pub fn analyze(pencil: &Pencil, options: &AnalyzeOptions) -> Result<PencilReport> {
    let field = pencil.field();
    let d = pencil.degree() as u64;
    let required = d * (d - 1);
    let satisfied = field.characteristic_exceeds(required);
    if !satisfied {
        return Err(Error::CharacteristicTooSmall {
            characteristic: field.characteristic(),
            required,
        });
    }
    let Spectrum {
        mut points,
        spect,
        incomplete,
        mut warnings,
    } = match field {
        CoefficientField::Rationals => spectrum_over_q(pencil, options.seed)?,
        CoefficientField::Prime(_) => spectrum_over_fp(pencil, options.seed)?,
    };
    if points.is_empty() {
        warnings.push("no spectral point over the base field".into());
    }

    for sp in points.iter_mut() {
        sp.stats = Some(member_statistics(&pencil.member(&sp.point))?);
    }
    let stats = || points.iter().filter_map(|p| p.stats.as_ref());
    let rho: u64 = stats().map(|s| s.n - 1).sum();
    let m: u64 = stats().map(|s| s.m - 1).sum();
    let omega: u64 = stats().map(|s| s.omega).sum();
    let theta: u64 = stats().map(|s| s.theta).sum();
    if matches!(field, CoefficientField::Prime(_)) && stats().any(|s| s.omega > 0) {
        warnings
            .push("over F_p the kernel formula for non-squarefree members is checked per point, not guaranteed".into());
    }
    let kappa = compute_kappa(pencil)?;

    let di = d as i64;
    let total = (m + omega + theta) as i64;
    let mut bounds = vec![
        verdict("rho_le_m", "rho <= m", rho as i64, m as i64, false),
        verdict(
            "total_order",
            "m + omega + theta <= d^2 - 1",
            total,
            di * di - 1,
            incomplete,
        ),
        verdict("omega", "omega <= 2d - 2", omega as i64, 2 * di - 2, incomplete),
        verdict(
            "pure_powers",
            "#{members P^e, e >= 2, P irreducible} <= 3",
            stats().filter(|s| s.is_pure_power()).count() as i64,
            3,
            incomplete,
        ),
        verdict(
            "nonreduced_affine_fibers",
            "#{members Z^k P^e, e >= 2, P irreducible} <= 4",
            stats().filter(|s| s.is_nonreduced_affine_irreducible()).count() as i64,
            4,
            incomplete,
        ),
    ];
    if let Some(s) = &spect {
        let sum_k: u64 = points.iter().map(|p| p.kernel_dim).sum();
        bounds.push(verdict(
            "spect_degree",
            "deg Spect <= d^2 - 1",
            s.degree as i64,
            di * di - 1,
            false,
        ));
        bounds.push(verdict(
            "kernel_within_spect",
            "sum of kernel dimensions <= deg Spect",
            sum_k as i64,
            s.degree as i64,
            false,
        ));
        let short = points
            .iter()
            .filter(|p| p.spect_multiplicity.is_some_and(|k| (k as u64) < p.kernel_dim))
            .count();
        bounds.push(verdict(
            "root_multiplicity",
            "#{points whose root multiplicity is below the kernel dimension} <= 0",
            short as i64,
            0,
            false,
        ));
    }
    if pencil.g().is_constant() {
        let at_g = ProjectivePoint::Affine(field.zero());
        let finite: i64 = points
            .iter()
            .filter(|p| p.point != at_g)
            .filter_map(|p| p.stats.as_ref())
            .map(|s| (s.m - 1 + s.omega + s.theta) as i64)
            .sum();
        bounds.push(verdict(
            "polynomial_case",
            "m + omega + theta over the fibers f = c <= d(d-1)/2",
            finite,
            di * (di - 1) / 2,
            incomplete,
        ));
    }
    if rho as i64 == di * di - 1 {
        bounds.push(verdict(
            "maximal_rho_reduced",
            "rho = d^2 - 1 implies omega = 0",
            omega as i64,
            0,
            incomplete,
        ));
    }

    let sparse = match options.mode {
        Mode::Dense => None,
        Mode::Sparse => Some(sparse_section(
            pencil,
            options.polygon,
            &kappa,
            rho,
            m,
            incomplete,
            &mut bounds,
            &mut warnings,
        )?),
    };

    Ok(PencilReport {
        schema_version: REPORT_SCHEMA_VERSION,
        f: pencil.f().to_string(),
        g: pencil.g().to_string(),
        d: pencil.degree(),
        mode: options.mode,
        field: FieldRecord {
            field,
            required_above: required,
            satisfied,
        },
        seed: options.seed,
        spect,
        spectral_points: points,
        rho,
        m,
        omega,
        theta,
        kappa: kappa.kappa,
        kappa_detail: kappa,
        sparse,
        bounds,
        warnings,
    })
}

#[allow(clippy::too_many_arguments)]
fn sparse_section(
    pencil: &Pencil,
    choice: PolygonChoice,
    kappa: &Kappa,
    rho: u64,
    m: u64,
    incomplete: bool,
    bounds: &mut Vec<Verdict>,
    warnings: &mut Vec<String>,
) -> Result<SparseRecord> {
    let joint = joint_newton_polygon(pencil.f(), pencil.g())?;
    let polygon = match choice {
        PolygonChoice::Newton => joint,
        PolygonChoice::Superior | PolygonChoice::Auto => superior_envelope(&joint)?,
    };
    let d = pencil.degree() as i64;
    let within = LatticePolygon::dense_triangle(d).contains_polygon(&polygon);
    let edge = polygon.preferred_good_edge();
    let dimension = polygon.sparse_dimension(edge.as_ref());
    let bound = dimension + kappa.kappa as i64;
    let (newton_contained, superior_contained) = containment(&polygon, pencil)?;
    if !within {
        warnings.push("the chosen polygon is not inside the dense triangle".into());
    }
    if newton_contained && within {
        bounds.push(verdict(
            "sparse_rho",
            "rho <= 2N - N_X - N_Y - N_E + kappa",
            rho as i64,
            bound,
            incomplete,
        ));
    }
    if superior_contained && within {
        bounds.push(verdict(
            "sparse_m_superior",
            "m <= 2N - N_X - N_Y - N_E + kappa (superior envelopes inside N)",
            m as i64,
            bound,
            incomplete,
        ));
    }
    let f00 = pencil.f().constant_term();
    let g00 = pencil.g().constant_term();
    let (origin_point, origin_kernel_dim) = if f00.is_zero() && g00.is_zero() {
        (None, None)
    } else {
        let pt = ProjectivePoint::from_pair(&-&g00, &f00)?;
        let dim = pencil.matrices()?.kernel_dim(&pt);
        (Some(pt), Some(dim))
    };
    if newton_contained && within {
        match (&origin_point, origin_kernel_dim) {
            (Some(_), Some(0)) => bounds.push(verdict(
                "sparse_m_origin",
                "m <= 2N - N_X - N_Y - N_E + kappa ((-g(0,0):f(0,0)) not spectral)",
                m as i64,
                bound,
                incomplete,
            )),
            (Some(pt), _) => warnings.push(format!(
                "the origin member {pt} is spectral; the bound on m for Newton polygons inside N does not apply"
            )),
            _ => warnings.push("f(0,0) = g(0,0) = 0: the origin member is undefined".into()),
        }
    }
    Ok(SparseRecord {
        choice,
        vertices: polygon.vertices().to_vec(),
        n: polygon.n_total(),
        n_x: polygon.n_x(),
        n_y: polygon.n_y(),
        n_e: edge.as_ref().map_or(0, |e| e.n_e),
        good_edge: edge,
        dimension,
        bound,
        within_dense_triangle: within,
        newton_contained,
        superior_contained,
        origin_point,
        origin_kernel_dim,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::test_support::*;

    fn dense(f: &str, g: &str) -> PencilReport {
        let p = Pencil::new(bq(f), bq(g)).unwrap();
        analyze(&p, &AnalyzeOptions::default()).unwrap()
    }

    #[test]
    fn conic_pencil() {
        let r = dense("X*Y", "X + Y");
        assert_eq!((r.rho, r.m, r.omega, r.theta), (2, 2, 0, 0));
        assert!(r.all_bounds_hold());
        let v = r.verdict("total_order").unwrap();
        assert_eq!((v.lhs, v.rhs), (2, 3));
        assert_eq!(r.kappa_detail.e_infinity, 1);
        assert_eq!(r.kappa, 0);
    }

    #[test]
    fn parabola() {
        let r = dense("Y - X^2", "1");
        assert_eq!(r.spectral_points.len(), 1);
        assert_eq!(r.spectral_points[0].kernel_dim, 2);
        assert_eq!(r.kappa, 1);
        let v = r.verdict("polynomial_case").unwrap();
        assert_eq!((v.lhs, v.rhs), (0, 1));
        assert!(r.all_bounds_hold());
    }

    #[test]
    fn kappa_cases() {
        let p = Pencil::new(bq("X^2 + Y"), bq("2*X^2 + X")).unwrap();
        let k = compute_kappa(&p).unwrap();
        assert_eq!(k.member, Some(ProjectivePoint::Affine(q().from_i64(-2))));
        assert_eq!(k.e_infinity, 1);
        let p = Pencil::new(bq("X^2 + Y^2 + 1"), bq("X*Y")).unwrap();
        assert_eq!(compute_kappa(&p).unwrap().kappa, 0);
        assert_eq!(compute_kappa(&p).unwrap().member, None);
    }

    #[test]
    fn sparse_lo_three() {
        let p = Pencil::new(bq("X*(X + 1)*Y + X"), bq("1")).unwrap();
        let r = analyze(
            &p,
            &AnalyzeOptions {
                mode: Mode::Sparse,
                ..Default::default()
            },
        )
        .unwrap();
        let s = r.sparse.as_ref().unwrap();
        assert_eq!((s.n, s.n_x, s.n_y, s.n_e), (6, 3, 2, 3));
        assert_eq!(r.kappa, 2);
        assert_eq!(r.m, 4);
        assert!(r.all_bounds_hold());
    }
}
