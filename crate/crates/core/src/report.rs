//! End-to-end analysis of one input file and its structured report.
//!
//! Reports contain no timestamps, paths or hash-ordered maps, so identical
//! input always serializes to identical bytes.

use num_traits::Zero;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::balancing::{solve_balancing, BalancingReport, ScalarCurvature, SingularPointRecord};
use crate::error::{Error, Result};
use crate::format::{parse_input_str, FanFile, InputFile, OrbifoldFile};
use crate::linalg::{format_rational, Rational};
use crate::polytope::{anticanonical_polytope, moment_assignment, polytope_barycenter, LatticePolytope};
use crate::spectral::{
    eigenvalue, first_invariant_index, indicial_roots, invariant_harmonic_dimension, GroupPresentation,
    WeightContext, WeightInterval,
};
use crate::toric::{classify_fan, resolution_status, Classification, CyclicFactor, ResolutionStatus};

pub const TOOL_NAME: &str = "kcsc";
pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    /// Overrides the anticanonical multiple given in a fan file.
    pub k: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ToolInfo {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputEcho {
    pub file_name: String,
    pub kind: &'static str,
    pub name: Option<String>,
    pub sha256: String,
    pub canonical: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationRow {
    pub label: String,
    pub classification: Option<Classification>,
    pub order: Option<u64>,
    pub cyclic_factors: Vec<CyclicFactor>,
    pub isolated: Option<bool>,
    pub resolution: ResolutionStatus,
    /// Smallest `j ≥ 1` with a Γ-invariant `Λ_j` eigenfunction.
    pub first_invariant_index: Option<u32>,
    pub invariant_degree_one: Option<u64>,
    pub problem: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeVertex {
    pub cone: String,
    /// 1-based index into `vertices`.
    pub vertex: usize,
    pub point: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PolytopeSummary {
    pub k: u64,
    pub vertices: Vec<Vec<String>>,
    /// Number of faces of each dimension `0 … m`.
    pub f_vector: Vec<usize>,
    /// Facets as 1-based vertex indices.
    pub facets: Vec<Vec<usize>>,
    pub barycenter: Vec<String>,
    pub cone_vertices: Vec<ConeVertex>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancingSection {
    pub points: Vec<String>,
    pub result: BalancingReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectralNotes {
    pub m: u32,
    pub lambda_1: i64,
    pub indicial_roots: String,
    pub weight_intervals: Vec<WeightInterval>,
    pub ale_exclusions: String,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Feasible,
    Infeasible,
    /// Valid input with nothing to balance.
    NoCondition,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Self::Feasible | Self::NoCondition => 0,
            Self::Infeasible => 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub tool: ToolInfo,
    pub input: InputEcho,
    pub classification: Vec<ClassificationRow>,
    pub polytope: Option<PolytopeSummary>,
    pub balancing: Option<BalancingSection>,
    pub spectral: SpectralNotes,
    pub verdict: Verdict,
    pub notes: Vec<String>,
}

impl Report {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

fn strings(v: &[Rational]) -> Vec<String> {
    v.iter().map(format_rational).collect()
}

/// Row for a diagonal action given directly by weights.
pub fn classify_action(label: &str, g: &GroupPresentation) -> ClassificationRow {
    let m = g.m;
    let classification = if g.is_trivial() {
        Classification::Smooth
    } else if g
        .cyclic_factors
        .iter()
        .all(|f| f.weights.iter().sum::<u64>() % f.order == 0)
    {
        Classification::Su
    } else {
        Classification::UNonSu
    };
    let isolated = g.is_fixed_point_free();
    let (classification, problem) = if isolated || classification == Classification::Smooth {
        (classification, None)
    } else {
        (Classification::Unsupported, Some(format!("{classification} action is not free away from 0")))
    };
    let mut row = ClassificationRow {
        label: label.to_string(),
        classification: Some(classification),
        order: Some(g.order()),
        cyclic_factors: g.cyclic_factors.clone(),
        isolated: Some(isolated),
        resolution: resolution_status(classification, m),
        first_invariant_index: None,
        invariant_degree_one: None,
        problem,
    };
    add_spectral(&mut row, g);
    row
}

fn add_spectral(row: &mut ClassificationRow, g: &GroupPresentation) {
    if g.is_trivial() || !g.is_fixed_point_free() {
        return;
    }
    let m = g.m as u32;
    match (first_invariant_index(g, m), invariant_harmonic_dimension(g, 1, m)) {
        (Ok(first), Ok(deg1)) => {
            row.first_invariant_index = Some(first.index);
            row.invariant_degree_one = Some(deg1);
        }
        (Err(e), _) | (_, Err(e)) => row.problem = Some(e.to_string()),
    }
}

fn spectral_notes(m: u32) -> Result<SpectralNotes> {
    let contexts = [WeightContext::BaseOrbifoldM3, WeightContext::BaseOrbifoldM2, WeightContext::Nonlinear];
    let weight_intervals = contexts.iter().filter_map(|c| c.interval(m).ok().flatten()).collect();
    Ok(SpectralNotes {
        m,
        lambda_1: eigenvalue(1, m),
        indicial_roots: indicial_roots(m)?.to_string(),
        weight_intervals,
        ale_exclusions: format!("delta != l + {m} and delta != {} - l for integers l >= 0", 4 - i64::from(m)),
    })
}

/// Everything derived from a fan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FanAnalysis {
    pub rows: Vec<ClassificationRow>,
    pub polytope: Option<LatticePolytope>,
    pub summary: Option<PolytopeSummary>,
    pub balancing: Option<BalancingSection>,
    pub notes: Vec<String>,
}

/// Classification, `P_{−kK}` and the tuned balancing over the SU points,
/// whose kernel potentials are the cone vertices measured from the barycenter.
pub fn analyze_fan(file: &FanFile, options: ReportOptions) -> Result<FanAnalysis> {
    let fan = file.fan();
    let mut notes = Vec::new();
    let rows: Vec<ClassificationRow> = classify_fan(&fan)
        .into_iter()
        .map(|c| {
            let mut row = ClassificationRow {
                label: file.cone_labels[c.index].clone(),
                classification: Some(c.classification),
                order: c.order,
                cyclic_factors: c.quotient.as_ref().map(|q| q.cyclic_factors.clone()).unwrap_or_default(),
                isolated: c.isolated,
                resolution: c.resolution,
                first_invariant_index: None,
                invariant_degree_one: None,
                problem: c.problem,
            };
            if let Some(q) = &c.quotient {
                if let Ok(g) = GroupPresentation::from_quotient(q, fan.dim) {
                    add_spectral(&mut row, &g);
                }
            }
            row
        })
        .collect();
    let k = options.k.or(file.k).unwrap_or(1);
    let polytope = match anticanonical_polytope(&fan, k) {
        Ok(p) => Some(p),
        Err(e) => {
            notes.push(format!("no polytope: {e}"));
            None
        }
    };
    let mut summary = None;
    let mut balancing = None;
    if let Some(p) = &polytope {
        let barycenter = polytope_barycenter(p)?;
        let assignment = moment_assignment(&fan, p)?;
        if !p.normal_fan_matches {
            notes.push("some cone vertices fall outside the polytope; the fan is not its normal fan".into());
        }
        if !barycenter.iter().all(Zero::is_zero) {
            notes.push("barycenter is not the origin: the polarization is not Kahler-Einstein".into());
        }
        let cone_vertices = assignment
            .vertex_of_cone
            .iter()
            .enumerate()
            .map(|(i, &v)| ConeVertex {
                cone: file.cone_labels[i].clone(),
                vertex: v + 1,
                point: strings(&p.vertices[v]),
            })
            .collect();
        summary = Some(PolytopeSummary {
            k,
            vertices: p.vertices.iter().map(|v| strings(v)).collect(),
            f_vector: p.f_vector(),
            facets: p
                .faces(p.dim.saturating_sub(1))
                .iter()
                .map(|f| f.vertices.iter().map(|v| v + 1).collect())
                .collect(),
            barycenter: strings(&barycenter),
            cone_vertices,
        });
        let mut points = Vec::new();
        for (i, row) in rows.iter().enumerate() {
            if row.classification != Some(Classification::Su) {
                continue;
            }
            let u = &p.vertices[assignment.vertex_of_cone[i]];
            let phi: Vec<Rational> = u.iter().zip(&barycenter).map(|(a, b)| a - b).collect();
            points.push(SingularPointRecord::einstein(row.label.clone(), row.order.unwrap_or(1), phi));
        }
        let others = rows
            .iter()
            .filter(|r| matches!(r.classification, Some(Classification::UNonSu)))
            .count();
        if others > 0 {
            notes.push(format!("{others} non-SU points are left as orbifold points"));
        }
        if points.is_empty() {
            notes.push("no SU points to glue".into());
        } else {
            let labels = points.iter().map(|p| p.label.clone()).collect();
            let result = solve_balancing(&points, &ScalarCurvature::Positive, fan.dim as u32)?;
            balancing = Some(BalancingSection { points: labels, result });
        }
    }
    if rows.iter().any(|r| r.classification == Some(Classification::Unsupported)) {
        notes.push("some cones are unsupported; see their problem field".into());
    }
    Ok(FanAnalysis { rows, polytope, summary, balancing, notes })
}

/// Group rows and balancing for an orbifold file.
pub fn analyze_orbifold(file: &OrbifoldFile) -> Result<(Vec<ClassificationRow>, BalancingSection, Vec<String>)> {
    let m = file.m as usize;
    let mut notes = Vec::new();
    let mut rows = Vec::with_capacity(file.points.len());
    for p in &file.points {
        match p.group(m) {
            Some(g) => {
                let row = classify_action(&p.record.label, &g?);
                if p.record.group_order != row.order.unwrap_or(1) && row.order != Some(1) {
                    notes.push(format!("point {}: weights reduce the order", p.record.label));
                }
                if p.record.kind == crate::balancing::PointKind::RicciFlat
                    && !matches!(row.classification, Some(Classification::Su))
                {
                    notes.push(format!("point {} is Ricci-flat but its group is not in SU(m)", p.record.label));
                }
                rows.push(row);
            }
            None => rows.push(ClassificationRow {
                label: p.record.label.clone(),
                classification: None,
                order: Some(p.record.group_order),
                cyclic_factors: Vec::new(),
                isolated: None,
                resolution: ResolutionStatus::ExternalInput,
                first_invariant_index: None,
                invariant_degree_one: None,
                problem: Some("no action weights given".into()),
            }),
        }
    }
    let records = file.records();
    let result = solve_balancing(&records, &file.s, file.m)?;
    if result.d != file.d {
        return Err(Error::Dimension(format!("d = {} but potentials have {} entries", file.d, result.d)));
    }
    let section = BalancingSection { points: records.iter().map(|r| r.label.clone()).collect(), result };
    Ok((rows, section, notes))
}

fn verdict_of(balancing: Option<&BalancingSection>) -> Verdict {
    match balancing {
        Some(b) if b.result.feasible => Verdict::Feasible,
        Some(_) => Verdict::Infeasible,
        None => Verdict::NoCondition,
    }
}

/// Parses and analyses one input; `file_name` is echoed, never resolved.
pub fn build_report(file_name: &str, text: &str, options: ReportOptions) -> Result<Report> {
    let input = parse_input_str(text)?;
    let echo = InputEcho {
        file_name: file_name.to_string(),
        kind: match input {
            InputFile::Fan(_) => "fan",
            InputFile::Orbifold(_) => "orbifold",
        },
        name: input.name().map(str::to_string),
        sha256: sha256_hex(text.as_bytes()),
        canonical: input.serialize(),
    };
    let tool = ToolInfo { name: TOOL_NAME, version: TOOL_VERSION };
    match &input {
        InputFile::Fan(f) => {
            let analysis = analyze_fan(f, options)?;
            Ok(Report {
                tool,
                input: echo,
                verdict: verdict_of(analysis.balancing.as_ref()),
                classification: analysis.rows,
                polytope: analysis.summary,
                balancing: analysis.balancing,
                spectral: spectral_notes(f.dim as u32)?,
                notes: analysis.notes,
            })
        }
        InputFile::Orbifold(o) => {
            let (rows, section, notes) = analyze_orbifold(o)?;
            Ok(Report {
                tool,
                input: echo,
                verdict: verdict_of(Some(&section)),
                classification: rows,
                polytope: None,
                balancing: Some(section),
                spectral: spectral_notes(o.m)?,
                notes,
            })
        }
    }
}

/// One line of a batch summary.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SummaryRow {
    pub file_name: String,
    pub kind: Option<&'static str>,
    pub verdict: Option<Verdict>,
    pub su_points: usize,
    pub sha256: String,
    pub error: Option<String>,
}

impl SummaryRow {
    pub fn from_outcome(file_name: &str, text: &str, outcome: &Result<Report>) -> Self {
        match outcome {
            Ok(r) => Self {
                file_name: file_name.to_string(),
                kind: Some(r.input.kind),
                verdict: Some(r.verdict),
                su_points: r
                    .classification
                    .iter()
                    .filter(|c| c.classification == Some(Classification::Su))
                    .count(),
                sha256: r.input.sha256.clone(),
                error: None,
            },
            Err(e) => Self {
                file_name: file_name.to_string(),
                kind: None,
                verdict: None,
                su_points: 0,
                sha256: sha256_hex(text.as_bytes()),
                error: Some(e.to_string()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BatchSummary {
    pub tool: ToolInfo,
    pub files: Vec<SummaryRow>,
}

impl BatchSummary {
    pub fn new(files: Vec<SummaryRow>) -> Self {
        Self { tool: ToolInfo { name: TOOL_NAME, version: TOOL_VERSION }, files }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("summary serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{:<20} {:<9} {:<12} {:>3}  sha256\n", "file", "kind", "verdict", "SU");
        for row in &self.files {
            let verdict = match (&row.verdict, &row.error) {
                (Some(v), _) => serde_json::to_value(v).ok().and_then(|v| v.as_str().map(str::to_string)).unwrap_or_default(),
                (None, Some(_)) => "error".to_string(),
                _ => String::new(),
            };
            out.push_str(&format!(
                "{:<20} {:<9} {:<12} {:>3}  {}\n",
                row.file_name,
                row.kind.unwrap_or("-"),
                verdict,
                row.su_points,
                &row.sha256[..16]
            ));
        }
        out
    }
}
