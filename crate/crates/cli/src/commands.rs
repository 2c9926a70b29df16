use std::path::Path;
use std::process::ExitCode;

use anyhow::{Context, Result};
use pencil_core::newton::{joint_newton_polygon, newton_polygon, render_ascii, render_svg, superior_envelope, Point};
use pencil_core::poly::parse_multi;
use pencil_core::ruppert::irreducibility_kernel;
use pencil_core::spectrum::{
    analyze, bertini_reduce, bertini_reduce_pair, member_statistics, spectrum_bruteforce, AnalyzeOptions, Pencil,
    PencilReport, PolygonChoice, SpectralPoint, REPORT_SCHEMA_VERSION,
};
use pencil_core::worked_examples::{all_examples, PolygonCounts};
use pencil_core::{BivariatePolynomial, CoefficientField};
use serde::Serialize;

use crate::{AnalyzeArgs, BertiniArgs, Command, ExamplesArgs, IrreducibleArgs, NewtonArgs, Output, SpectrumBfArgs};

const VERDICT_FAILED: u8 = 2;

pub fn run(command: Command) -> Result<ExitCode> {
    match command {
        Command::Analyze(a) => analyze_cmd(a),
        Command::Irreducible(a) => irreducible_cmd(a),
        Command::Newton(a) => newton_cmd(a),
        Command::SpectrumBf(a) => spectrum_bf_cmd(a),
        Command::Bertini(a) => bertini_cmd(a),
        Command::PaperExamples(a) => examples_cmd(a),
    }
}

fn parse(flag: &str, text: &str, field: CoefficientField) -> Result<BivariatePolynomial> {
    BivariatePolynomial::parse(text, field).with_context(|| format!("--{flag} {text:?}"))
}

fn emit<T: Serialize>(out: &Output, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)? + "\n";
    match &out.report {
        Some(path) => write(path, &text),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn write(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

fn note(out: &Output, line: impl AsRef<str>) {
    if !out.quiet {
        eprintln!("{}", line.as_ref());
    }
}

fn analyze_cmd(a: AnalyzeArgs) -> Result<ExitCode> {
    let pencil = Pencil::new(parse("f", &a.f, a.field)?, parse("g", &a.g, a.field)?)?;
    let options = AnalyzeOptions {
        mode: a.mode.into(),
        polygon: a.polygon.into(),
        seed: a.seed.seed,
    };
    let report = analyze(&pencil, &options)?;
    emit(&a.out, &report)?;
    note(
        &a.out,
        format!(
            "d = {}, {} spectral points, rho = {}, m = {}, omega = {}, theta = {}, kappa = {}",
            report.d,
            report.spectral_points.len(),
            report.rho,
            report.m,
            report.omega,
            report.theta,
            report.kappa
        ),
    );
    for v in &report.bounds {
        let tag = if v.holds { "ok" } else { "VIOLATED" };
        let cond = if v.conditional { " (conditional)" } else { "" };
        note(
            &a.out,
            format!("{tag:>8} {}: {} <= {}{cond}", v.statement, v.lhs, v.rhs),
        );
    }
    for w in &report.warnings {
        note(&a.out, format!("warning: {w}"));
    }
    Ok(ExitCode::from(verdict_status(&report)))
}

fn verdict_status(report: &PencilReport) -> u8 {
    if report.all_bounds_hold() {
        0
    } else {
        VERDICT_FAILED
    }
}

#[derive(Serialize)]
struct IrreducibleReport {
    schema_version: u32,
    f: String,
    field: CoefficientField,
    degree: u32,
    kernel_dim: usize,
    irreducible: bool,
}

fn irreducible_cmd(a: IrreducibleArgs) -> Result<ExitCode> {
    let f = parse("f", &a.f, a.field)?;
    let kernel_dim = irreducibility_kernel(&f)?;
    let report = IrreducibleReport {
        schema_version: REPORT_SCHEMA_VERSION,
        f: f.to_string(),
        field: a.field,
        degree: f.total_degree().unwrap_or(0),
        kernel_dim,
        irreducible: kernel_dim == 0,
    };
    println!("irreducible: {}", report.irreducible);
    println!("kernel_dim: {kernel_dim}");
    if let Some(path) = &a.out.report {
        write(path, &(serde_json::to_string_pretty(&report)? + "\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

fn support(p: &BivariatePolynomial) -> Vec<Point> {
    p.support().map(|e| (e[0] as i64, e[1] as i64)).collect()
}

fn newton_cmd(a: NewtonArgs) -> Result<ExitCode> {
    let f = parse("f", &a.f, a.field)?;
    let mut points = support(&f);
    let polygon = match &a.g {
        Some(g) => {
            let g = parse("g", g, a.field)?;
            points.extend(support(&g));
            joint_newton_polygon(&f, &g)?
        }
        None => newton_polygon(&f)?,
    };
    let polygon = match PolygonChoice::from(a.polygon) {
        PolygonChoice::Newton => polygon,
        PolygonChoice::Superior | PolygonChoice::Auto => superior_envelope(&polygon)?,
    };
    points.sort_unstable();
    points.dedup();
    print!("{}", render_ascii(&polygon, &points));
    let counts = PolygonCounts::of(&polygon);
    println!("vertices: {:?}", counts.vertices);
    println!(
        "N = {}, N_X = {}, N_Y = {}, N_E = {}",
        counts.n, counts.n_x, counts.n_y, counts.n_e
    );
    match counts.edge_normal {
        Some((x, y)) => println!("good edge normal: ({x}, {y})"),
        None => println!("good edge: none"),
    }
    println!("2N - N_X - N_Y - N_E = {}", counts.dimension);
    if let Some(path) = &a.svg {
        write(path, &render_svg(&polygon, &points))?;
    }
    if let Some(path) = &a.out.report {
        write(path, &(serde_json::to_string_pretty(&counts)? + "\n"))?;
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BruteForceReport {
    schema_version: u32,
    f: String,
    g: String,
    field: CoefficientField,
    spectral_points: Vec<SpectralPoint>,
}

fn spectrum_bf_cmd(a: SpectrumBfArgs) -> Result<ExitCode> {
    let field = CoefficientField::prime(a.prime).with_context(|| format!("--prime {}", a.prime))?;
    let pencil = Pencil::new(parse("f", &a.f, field)?, parse("g", &a.g, field)?)?;
    let mut points = spectrum_bruteforce(&pencil)?;
    for sp in &mut points {
        sp.stats = Some(member_statistics(&pencil.member(&sp.point))?);
    }
    for sp in &points {
        note(&a.out, format!("{} kernel_dim {}", sp.point, sp.kernel_dim));
    }
    emit(
        &a.out,
        &BruteForceReport {
            schema_version: REPORT_SCHEMA_VERSION,
            f: pencil.f().to_string(),
            g: pencil.g().to_string(),
            field,
            spectral_points: points,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct BertiniReport {
    schema_version: u32,
    #[serde(flatten)]
    reduction: pencil_core::spectrum::BertiniReduction,
    /// `dim ker R` of each image; 0 means absolutely irreducible.
    kernel_dims: Vec<usize>,
}

fn bertini_cmd(a: BertiniArgs) -> Result<ExitCode> {
    let names: Vec<String> = (1..=a.vars).map(|i| format!("X{i}")).collect();
    let names: Vec<&str> = names.iter().map(String::as_str).collect();
    let field = CoefficientField::Rationals;
    let f = parse_multi(&a.poly, field, &names).with_context(|| format!("--poly {:?}", a.poly))?;
    let reduction = match &a.g {
        Some(g) => {
            let g = parse_multi(g, field, &names).with_context(|| format!("--g {g:?}"))?;
            bertini_reduce_pair(&f, &g, a.seed.seed)?
        }
        None => bertini_reduce(&f, a.seed.seed)?,
    };
    let kernel_dims = reduction
        .images
        .iter()
        .map(irreducibility_kernel)
        .collect::<pencil_core::Result<Vec<_>>>()?;
    for (img, k) in reduction.images.iter().zip(&kernel_dims) {
        note(&a.out, format!("{img}  (kernel_dim {k})"));
    }
    emit(
        &a.out,
        &BertiniReport {
            schema_version: REPORT_SCHEMA_VERSION,
            reduction,
            kernel_dims,
        },
    )?;
    Ok(ExitCode::SUCCESS)
}

fn examples_cmd(a: ExamplesArgs) -> Result<ExitCode> {
    let bundle = all_examples(a.seed.seed)?;
    emit(&a.out, &bundle)?;
    for d in bundle.discrepancies() {
        note(&a.out, format!("discrepancy: {d}"));
    }
    Ok(ExitCode::SUCCESS)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn failed_verdict_maps_to_two() {
        let q = CoefficientField::Rationals;
        let pencil = Pencil::new(
            BivariatePolynomial::parse("X*Y", q).unwrap(),
            BivariatePolynomial::parse("X + Y", q).unwrap(),
        )
        .unwrap();
        let mut report = analyze(&pencil, &AnalyzeOptions::default()).unwrap();
        assert_eq!(verdict_status(&report), 0);
        report.bounds[1].holds = false;
        assert_eq!(verdict_status(&report), 2);
    }
}
