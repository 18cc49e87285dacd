use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use rayon::prelude::*;
use serde::Serialize;

use kcsc_core::balancing::{gluing_scales, BalancingReport, GluingScales, PointCoefficients};
use kcsc_core::biharmonic::{dtn_inverse, dtn_mode_matrix, ModeMatrix, ModeOptions};
use kcsc_core::corpus::{corpus_files, embedded_examples};
use kcsc_core::format::{parse_input, InputFile};
use kcsc_core::linalg::{format_rational, parse_rational};
use kcsc_core::report::{
    analyze_fan, analyze_orbifold, build_report, BalancingSection, BatchSummary, ClassificationRow, PolytopeSummary,
    Report, ReportOptions, SummaryRow, Verdict,
};
use kcsc_core::spectral::{
    eigenvalue, first_invariant_index, harmonic_dimension, indicial_roots, invariant_harmonic_dimension,
    is_admissible_weight, GroupPresentation, WeightContext,
};
use kcsc_core::toric::{Classification, CyclicFactor, ResolutionStatus};
use kcsc_core::RationalMatrix;

use crate::{Cli, Command, Format};

pub fn run(cli: &Cli) -> Result<u8> {
    match &cli.command {
        Command::Classify { input } => classify(cli, input),
        Command::Polytope { input, k } => polytope(cli, input, *k),
        Command::Balance { input, k } => balance(cli, input, *k),
        Command::Coeffs { input, epsilon } => coeffs(cli, input, epsilon.as_deref()),
        Command::Spectral { m, order, weights, j, delta, context } => {
            spectral(cli, *m, *order, weights, *j, delta.as_deref(), context.as_deref())
        }
        Command::Dtn { m, gamma, nontrivial } => dtn(cli, *m, *gamma, *nontrivial),
        Command::Report { input, batch, k } => match (input, batch) {
            (_, Some(dir)) => report_batch(cli, dir, *k),
            (Some(path), None) => report_one(cli, path, *k),
            (None, None) => bail!("report needs an input file or --batch <dir>"),
        },
        Command::Examples { write } => examples(cli, write.as_deref()),
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable");
    s.push('\n');
    s
}

/// Prints text or JSON and writes JSON to `--out` when given.
fn emit<T: Serialize>(cli: &Cli, text: &str, value: &T) -> Result<()> {
    let json = to_json(value);
    match cli.format {
        Format::Text => print!("{text}"),
        Format::Structured => print!("{json}"),
    }
    if let Some(path) = &cli.out {
        fs::write(path, &json).with_context(|| format!("writing {}", path.display()))?;
    }
    Ok(())
}

fn load(path: &Path) -> Result<InputFile> {
    parse_input(path).with_context(|| format!("reading {}", path.display()))
}

fn factors_text(factors: &[CyclicFactor]) -> String {
    if factors.is_empty() {
        return "-".into();
    }
    factors
        .iter()
        .map(|f| {
            let w: Vec<String> = f.weights.iter().map(ToString::to_string).collect();
            format!("Z{}({})", f.order, w.join(","))
        })
        .collect::<Vec<_>>()
        .join(" x ")
}

fn classification_table(rows: &[ClassificationRow]) -> String {
    let mut out = format!(
        "{:<8} {:<12} {:>5}  {:<16} {:<8} {:<10} {}\n",
        "point", "class", "order", "action", "isolated", "resolution", "first-j"
    );
    for r in rows {
        let class = r.classification.map_or("-".to_string(), |c| c.to_string());
        let resolution = match &r.resolution {
            ResolutionStatus::NotNeeded => "none",
            ResolutionStatus::Known { .. } => "known",
            ResolutionStatus::ExternalInput => "external",
        };
        let _ = writeln!(
            out,
            "{:<8} {:<12} {:>5}  {:<16} {:<8} {:<10} {}",
            r.label,
            class,
            r.order.map_or("-".into(), |o| o.to_string()),
            factors_text(&r.cyclic_factors),
            r.isolated.map_or("-", |b| if b { "yes" } else { "no" }),
            resolution,
            r.first_invariant_index.map_or("-".into(), |j| j.to_string()),
        );
        if let Some(p) = &r.problem {
            let _ = writeln!(out, "         problem: {p}");
        }
    }
    let su = rows.iter().filter(|r| r.classification == Some(Classification::Su)).count();
    let _ = writeln!(out, "{} points, {su} in SU", rows.len());
    out
}

fn classify(cli: &Cli, input: &Path) -> Result<u8> {
    let rows = match load(input)? {
        InputFile::Fan(f) => analyze_fan(&f, ReportOptions::default())?.rows,
        InputFile::Orbifold(o) => analyze_orbifold(&o)?.0,
    };
    emit(cli, &classification_table(&rows), &rows)?;
    let unsupported = rows.iter().any(|r| r.classification == Some(Classification::Unsupported));
    Ok(u8::from(unsupported))
}

fn polytope_text(p: &PolytopeSummary) -> String {
    let mut out = format!("P_(-{}K): {} vertices, f-vector {:?}\n", p.k, p.vertices.len(), p.f_vector);
    for (i, v) in p.vertices.iter().enumerate() {
        let _ = writeln!(out, "  v{:<3} ({})", i + 1, v.join(", "));
    }
    out.push_str("facets (vertex indices):\n");
    for (i, f) in p.facets.iter().enumerate() {
        let idx: Vec<String> = f.iter().map(|v| format!("v{v}")).collect();
        let _ = writeln!(out, "  F{:<3} {}", i + 1, idx.join(" "));
    }
    let _ = writeln!(out, "barycenter ({})", p.barycenter.join(", "));
    out.push_str("cone -> vertex:\n");
    for cv in &p.cone_vertices {
        let _ = writeln!(out, "  {:<5} v{:<3} ({})", cv.cone, cv.vertex, cv.point.join(", "));
    }
    out
}

fn polytope(cli: &Cli, input: &Path, k: Option<u64>) -> Result<u8> {
    let InputFile::Fan(f) = load(input)? else {
        bail!("polytope needs a fan file");
    };
    let analysis = analyze_fan(&f, ReportOptions { k })?;
    let Some(summary) = analysis.summary else {
        bail!("{}", analysis.notes.join("; "));
    };
    emit(cli, &polytope_text(&summary), &summary)?;
    Ok(0)
}

fn vector_text(v: &[kcsc_core::Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

fn balancing_text(section: &BalancingSection) -> String {
    let r: &BalancingReport = &section.result;
    let mut out = String::new();
    let regime = serde_json::to_value(r.regime).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default();
    let _ = writeln!(out, "regime {regime}, d = {}, points {}", r.d, section.points.join(" "));
    for (name, w) in [("a", &r.witness_a), ("b", &r.witness_b), ("c", &r.witness_c)] {
        if let Some(w) = w {
            let _ = writeln!(out, "witness {name} = {}", vector_text(w));
        }
    }
    if !r.kernel_basis.is_empty() {
        let basis: Vec<String> = r.kernel_basis.iter().map(|v| vector_text(v)).collect();
        let _ = writeln!(out, "kernel basis {}", basis.join(" "));
    }
    for (name, rank) in [("rank Xi", r.xi_rank), ("rank Theta", r.theta_rank), ("joint rank", r.joint_rank)] {
        if let Some(rank) = rank {
            let _ = writeln!(out, "{name} = {rank}");
        }
    }
    let _ = writeln!(out, "verdict: {}", if r.feasible { "feasible" } else { "infeasible" });
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn balancing_section(input: &InputFile, k: Option<u64>) -> Result<(Option<BalancingSection>, Vec<String>)> {
    Ok(match input {
        InputFile::Fan(f) => {
            let a = analyze_fan(f, ReportOptions { k })?;
            (a.balancing, a.notes)
        }
        InputFile::Orbifold(o) => {
            let (_, section, notes) = analyze_orbifold(o)?;
            (Some(section), notes)
        }
    })
}

fn balance(cli: &Cli, input: &Path, k: Option<u64>) -> Result<u8> {
    let (section, notes) = balancing_section(&load(input)?, k)?;
    let mut text = match &section {
        Some(s) => balancing_text(s),
        None => "nothing to balance\n".to_string(),
    };
    for n in &notes {
        let _ = writeln!(text, "note: {n}");
    }
    emit(cli, &text, &section)?;
    Ok(match &section {
        Some(s) if !s.result.feasible => 1,
        _ => 0,
    })
}

#[derive(Serialize)]
struct CoefficientOutput<'a> {
    feasible: bool,
    coefficients: &'a [PointCoefficients],
    scales: Option<GluingScales>,
}

fn coeffs(cli: &Cli, input: &Path, epsilon: Option<&str>) -> Result<u8> {
    let (section, _) = balancing_section(&load(input)?, None)?;
    let Some(section) = section else {
        bail!("no points to compute coefficients for");
    };
    let m = section.result.d.max(1);
    let m = match load(input)? {
        InputFile::Orbifold(o) => o.m,
        InputFile::Fan(f) => {
            let _ = m;
            f.dim as u32
        }
    };
    let scales = match epsilon {
        Some(e) => {
            let eps = parse_rational(e).with_context(|| format!("`{e}` is not an exact rational"))?;
            Some(gluing_scales(&eps, m)?)
        }
        None => None,
    };
    let r = &section.result;
    let mut text = String::new();
    if !r.feasible {
        text.push_str("balancing is infeasible: coefficients are not defined\n");
    }
    for c in &r.coefficients {
        let _ = write!(text, "{:<8}", c.label);
        if let Some(l) = &c.leading {
            let _ = write!(text, " leading {l}");
        }
        if let Some(b) = &c.b_constant {
            let _ = write!(text, "  B = ({})^({})", b.radicand, format_rational(&b.exponent));
        }
        if let Some(cc) = &c.c_constant {
            let _ = write!(text, "  C = {}", format_rational(cc));
        }
        if let Some(n) = &c.note {
            let _ = write!(text, "  [{n}]");
        }
        text.push('\n');
    }
    if let Some(s) = &scales {
        let _ = writeln!(
            text,
            "r_eps = eps^({}), R_eps = eps^({}) at eps = {}",
            format_rational(&s.r_exponent),
            format_rational(&s.big_r_exponent),
            format_rational(&s.epsilon)
        );
    }
    let out = CoefficientOutput { feasible: r.feasible, coefficients: &r.coefficients, scales };
    emit(cli, &text, &out)?;
    Ok(u8::from(!r.feasible))
}

#[derive(Serialize)]
struct SpectralRow {
    j: u32,
    eigenvalue: i64,
    multiplicity: u64,
    invariant_multiplicity: u64,
}

#[derive(Serialize)]
struct SpectralOutput {
    m: u32,
    group: GroupPresentation,
    rows: Vec<SpectralRow>,
    first_invariant_index: Option<u32>,
    indicial_roots: String,
    admissible: Option<bool>,
}

fn spectral(
    cli: &Cli,
    m: u32,
    order: Option<u64>,
    weights: &[u64],
    j_max: u32,
    delta: Option<&str>,
    context: Option<&str>,
) -> Result<u8> {
    let group = match order {
        Some(order) => {
            if weights.len() != m as usize {
                bail!("--weights needs {m} entries");
            }
            GroupPresentation::cyclic(order, weights.to_vec())?
        }
        None if weights.is_empty() => GroupPresentation::trivial(m as usize),
        None => bail!("--weights needs --order"),
    };
    let mut rows = Vec::new();
    for j in 0..=j_max {
        rows.push(SpectralRow {
            j,
            eigenvalue: eigenvalue(j, m),
            multiplicity: harmonic_dimension(j, m),
            invariant_multiplicity: invariant_harmonic_dimension(&group, j, m)?,
        });
    }
    let first = if group.is_trivial() { None } else { Some(first_invariant_index(&group, m)?.index) };
    let roots = indicial_roots(m)?;
    let admissible = match delta {
        Some(d) => {
            let d = parse_rational(d).with_context(|| format!("`{d}` is not an exact rational"))?;
            let ctx: WeightContext = context.context("--delta needs --context")?.parse()?;
            Some(is_admissible_weight(&d, m, ctx)?)
        }
        None => None,
    };
    let mut text = format!("{:>3} {:>8} {:>8} {:>10}\n", "j", "Lambda_j", "mult", "invariant");
    for r in &rows {
        let _ = writeln!(text, "{:>3} {:>8} {:>8} {:>10}", r.j, r.eigenvalue, r.multiplicity, r.invariant_multiplicity);
    }
    if let Some(f) = first {
        let _ = writeln!(text, "first invariant index {f}");
    }
    let _ = writeln!(text, "indicial roots {roots}");
    if let Some(a) = admissible {
        let _ = writeln!(text, "weight {}", if a { "admissible" } else { "not admissible" });
    }
    let out = SpectralOutput { m, group, rows, first_invariant_index: first, indicial_roots: roots.to_string(), admissible };
    emit(cli, &text, &out)?;
    Ok(u8::from(admissible == Some(false)))
}

#[derive(Serialize)]
struct DtnOutput {
    p: ModeMatrix,
    q: ModeMatrix,
    identity_check: bool,
}

fn matrix_text(m: &RationalMatrix) -> String {
    let rows: Vec<String> = (0..m.rows())
        .map(|i| {
            let entries: Vec<String> = m.row(i).iter().map(format_rational).collect();
            format!("[{}]", entries.join(", "))
        })
        .collect();
    format!("[{}]", rows.join(", "))
}

fn dtn(cli: &Cli, m: u32, gamma: u32, nontrivial: bool) -> Result<u8> {
    let opts = ModeOptions { nontrivial_group: nontrivial, log_mode: m == 2 && gamma == 0 };
    let p = dtn_mode_matrix(m, gamma, opts)?;
    let q = dtn_inverse(m, gamma, opts)?;
    let identity_check = p.entries.mul(&q.entries)? == RationalMatrix::identity(2);
    let text = format!(
        "P = {}  det {}\nQ = {}  det {}\nP*Q = I: {identity_check}\n",
        matrix_text(&p.entries),
        format_rational(&p.determinant),
        matrix_text(&q.entries),
        format_rational(&q.determinant),
    );
    emit(cli, &text, &DtnOutput { p, q, identity_check })?;
    Ok(0)
}

fn report_text(r: &Report) -> String {
    let mut out = format!(
        "{} ({}) sha256 {}\n",
        r.input.file_name, r.input.kind, r.input.sha256
    );
    out.push_str(&classification_table(&r.classification));
    if let Some(p) = &r.polytope {
        out.push_str(&polytope_text(p));
    }
    if let Some(b) = &r.balancing {
        out.push_str(&balancing_text(b));
    }
    let _ = writeln!(out, "indicial roots {}, Lambda_1 = {}", r.spectral.indicial_roots, r.spectral.lambda_1);
    for n in &r.notes {
        let _ = writeln!(out, "note: {n}");
    }
    out
}

fn file_name(path: &Path) -> String {
    path.file_name().map_or_else(|| path.display().to_string(), |n| n.to_string_lossy().into_owned())
}

fn report_one(cli: &Cli, path: &Path, k: Option<u64>) -> Result<u8> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let report = build_report(&file_name(path), &text, ReportOptions { k })?;
    let json = report.to_json();
    match cli.format {
        Format::Text => print!("{}", report_text(&report)),
        Format::Structured => print!("{json}"),
    }
    if let Some(out) = &cli.out {
        fs::write(out, &json).with_context(|| format!("writing {}", out.display()))?;
    }
    Ok(report.verdict.exit_code() as u8)
}

fn batch_inputs(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut paths: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.is_file() && matches!(p.extension().and_then(|e| e.to_str()), Some("fan" | "orb")))
        .collect();
    paths.sort();
    Ok(paths)
}

fn report_batch(cli: &Cli, dir: &Path, k: Option<u64>) -> Result<u8> {
    let paths = batch_inputs(dir)?;
    if paths.is_empty() {
        bail!("no .fan or .orb files in {}", dir.display());
    }
    let options = ReportOptions { k };
    let outcomes: Vec<(String, String, kcsc_core::Result<Report>)> = paths
        .par_iter()
        .map(|p| {
            let name = file_name(p);
            match fs::read_to_string(p) {
                Ok(text) => {
                    let r = build_report(&name, &text, options);
                    (name, text, r)
                }
                Err(e) => (name, String::new(), Err(kcsc_core::Error::Io(e.to_string()))),
            }
        })
        .collect();
    let rows: Vec<SummaryRow> = outcomes.iter().map(|(n, t, r)| SummaryRow::from_outcome(n, t, r)).collect();
    let summary = BatchSummary::new(rows);
    if let Some(out) = &cli.out {
        fs::create_dir_all(out).with_context(|| format!("creating {}", out.display()))?;
        for (name, _, r) in &outcomes {
            if let Ok(report) = r {
                let path = out.join(format!("{name}.json"));
                fs::write(&path, report.to_json()).with_context(|| format!("writing {}", path.display()))?;
            }
        }
        fs::write(out.join("summary.json"), summary.to_json())?;
        fs::write(out.join("summary.txt"), summary.to_text())?;
    }
    match cli.format {
        Format::Text => print!("{}", summary.to_text()),
        Format::Structured => print!("{}", summary.to_json()),
    }
    let any_error = outcomes.iter().any(|(_, _, r)| r.is_err());
    let any_infeasible = outcomes
        .iter()
        .any(|(_, _, r)| matches!(r, Ok(rep) if rep.verdict == Verdict::Infeasible));
    Ok(if any_error {
        2
    } else {
        u8::from(any_infeasible)
    })
}

fn examples(cli: &Cli, write: Option<&Path>) -> Result<u8> {
    let all = embedded_examples();
    if let Some(dir) = write {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for f in corpus_files() {
            fs::write(dir.join(f.file_name), f.text)?;
        }
    }
    let mut text = String::new();
    for e in &all {
        let files: Vec<&str> = e.inputs.iter().map(|i| i.file_name).collect();
        let _ = writeln!(text, "{:<10} {}  [{}]", e.name, e.description, files.join(", "));
        let _ = writeln!(
            text,
            "           expect: {} points of order {}, SU {}, {} vertices{}",
            e.expected.singular_points,
            e.expected.group_order,
            e.expected.su_cones.join(","),
            e.expected.vertex_count,
            e.expected.kernel_family.map_or(String::new(), |f| format!(", kernel family {f}")),
        );
    }
    emit(cli, &text, &all)?;
    Ok(0)
}
