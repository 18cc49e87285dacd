//! Balancing and nondegeneracy conditions for gluing ALE models at the
//! singular points, plus the closed-form gluing constants.
//!
//! A Ricci-flat point `p_j` enters the matrix `Θ` through
//! `b_j Δφ_i(p_j) + c_j φ_i(p_j)`; a scalar-flat point `q_l` enters `Ξ`
//! through `a_l · sign(e_l) · φ_i(q_l) / |Γ_l|`. A configuration is
//! balanced when positive weights put `0` in the image and the resulting
//! matrix has full rank `d`.

mod constants;

pub use constants::{
    b_constant, c_constant, gluing_scales, leading_a_with, leading_coefficients, model_constants,
    sphere_volume, AFormula, GluingScales, LeadingKind, ModelConstants, PiRational, RootExpression,
};

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{
    format_rational, nullspace_basis, positive_kernel_witness, rank, rat, Rational, RationalMatrix,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    /// Glued with a Ricci-flat ALE model (a `p`-point).
    RicciFlat,
    /// Glued with a scalar-flat ALE model (a `q`-point).
    ScalarFlat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LaplacianData {
    /// `Δφ_i = −(s/m) φ_i` for every `i`.
    Einstein,
    Explicit(#[serde(serialize_with = "crate::linalg::ser_rational_vec")] Vec<Rational>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Sign {
    pub fn as_rational(self) -> Rational {
        match self {
            Self::Plus => Rational::one(),
            Self::Minus => -Rational::one(),
        }
    }
}

/// Data attached to one singular point.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SingularPointRecord {
    pub label: String,
    pub kind: PointKind,
    pub group_order: u64,
    #[serde(serialize_with = "crate::linalg::ser_rational_vec")]
    pub phi: Vec<Rational>,
    pub laplacian: LaplacianData,
    pub e_sign: Option<Sign>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub e_magnitude: Option<Rational>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub c_gamma: Option<Rational>,
}

fn ser_opt_rational<S: serde::Serializer>(v: &Option<Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(q) => s.serialize_str(&format_rational(q)),
        None => s.serialize_none(),
    }
}

impl SingularPointRecord {
    /// A Ricci-flat point on an Einstein orbifold.
    pub fn einstein(label: impl Into<String>, group_order: u64, phi: Vec<Rational>) -> Self {
        Self {
            label: label.into(),
            kind: PointKind::RicciFlat,
            group_order,
            phi,
            laplacian: LaplacianData::Einstein,
            e_sign: None,
            e_magnitude: None,
            c_gamma: None,
        }
    }

    pub fn scalar_flat(label: impl Into<String>, group_order: u64, phi: Vec<Rational>, e_sign: Sign) -> Self {
        Self {
            label: label.into(),
            kind: PointKind::ScalarFlat,
            group_order,
            phi,
            laplacian: LaplacianData::Einstein,
            e_sign: Some(e_sign),
            e_magnitude: None,
            c_gamma: None,
        }
    }
}

/// Scalar curvature: exact, or only known to be positive. In the symbolic
/// case every `s`-dependent quantity is computed per unit `s`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarCurvature {
    Exact(Rational),
    Positive,
}

impl ScalarCurvature {
    pub fn value_or_unit(&self) -> Rational {
        match self {
            Self::Exact(s) => s.clone(),
            Self::Positive => Rational::one(),
        }
    }

    pub fn is_symbolic(&self) -> bool {
        matches!(self, Self::Positive)
    }
}

impl Serialize for ScalarCurvature {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Exact(q) => s.serialize_str(&format_rational(q)),
            Self::Positive => s.serialize_str("positive"),
        }
    }
}

fn common_dim(points: &[SingularPointRecord]) -> Result<usize> {
    let Some(first) = points.first() else {
        return Ok(0);
    };
    let d = first.phi.len();
    for p in points {
        if p.phi.len() != d {
            return Err(Error::Dimension(format!("point {} has {} potentials, expected {d}", p.label, p.phi.len())));
        }
        if let LaplacianData::Explicit(v) = &p.laplacian {
            if v.len() != d {
                return Err(Error::Dimension(format!("point {} has {} Laplacian values, expected {d}", p.label, v.len())));
            }
        }
    }
    Ok(d)
}

fn columns_to_matrix(d: usize, columns: &[Vec<Rational>]) -> Result<RationalMatrix> {
    RationalMatrix::from_columns(d, columns)
}

/// `Ξ` with entries `a_l · sign(e_l) · φ_i(q_l) / |Γ_l|`.
pub fn build_xi(points_q: &[SingularPointRecord], a: &[Rational]) -> Result<RationalMatrix> {
    if points_q.len() != a.len() {
        return Err(Error::Dimension("one weight per scalar-flat point".into()));
    }
    let d = common_dim(points_q)?;
    let mut columns = Vec::with_capacity(a.len());
    for (p, a_l) in points_q.iter().zip(a) {
        if p.kind != PointKind::ScalarFlat {
            return Err(Error::Parameter(format!("point {} is not scalar-flat", p.label)));
        }
        let sign = p.e_sign.ok_or_else(|| Error::Missing(format!("e-sign of point {}", p.label)))?;
        let factor = a_l * sign.as_rational() / rat(p.group_order as i64);
        columns.push(p.phi.iter().map(|x| x * &factor).collect());
    }
    columns_to_matrix(d, &columns)
}

/// `Θ` with entries `b_j Δφ_i(p_j) + c_j φ_i(p_j)`. A symbolic `s` is
/// evaluated at `s = 1`, so Einstein entries come out per unit `s` when `c`
/// is also given per unit `s`.
pub fn build_theta(
    points_p: &[SingularPointRecord],
    b: &[Rational],
    c: &[Rational],
    s: &ScalarCurvature,
    m: u32,
) -> Result<RationalMatrix> {
    if points_p.len() != b.len() || b.len() != c.len() {
        return Err(Error::Dimension("one (b, c) pair per Ricci-flat point".into()));
    }
    if m == 0 {
        return Err(Error::Parameter("m must be positive".into()));
    }
    let d = common_dim(points_p)?;
    let s_val = s.value_or_unit();
    let mut columns = Vec::with_capacity(b.len());
    for ((p, b_j), c_j) in points_p.iter().zip(b).zip(c) {
        if p.kind != PointKind::RicciFlat {
            return Err(Error::Parameter(format!("point {} is not Ricci-flat", p.label)));
        }
        let column = match &p.laplacian {
            LaplacianData::Einstein => {
                let factor = c_j - b_j * &s_val / rat(i64::from(m));
                p.phi.iter().map(|x| x * &factor).collect()
            }
            LaplacianData::Explicit(lap) => {
                if s.is_symbolic() {
                    return Err(Error::Parameter("explicit Laplacian values need an exact s".into()));
                }
                lap.iter().zip(&p.phi).map(|(l, x)| b_j * l + c_j * x).collect()
            }
        };
        columns.push(column);
    }
    columns_to_matrix(d, &columns)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Nondegeneracy {
    pub full_rank: bool,
    pub joint_rank: usize,
}

/// Full-rank test of `[Ξ | Θ]`.
pub fn check_nondegeneracy(xi: &RationalMatrix, theta: &RationalMatrix) -> Result<Nondegeneracy> {
    if xi.rows() != theta.rows() {
        return Err(Error::Dimension("Ξ and Θ need the same number of rows".into()));
    }
    let joint = xi.hconcat(theta)?;
    let joint_rank = rank(&joint);
    Ok(Nondegeneracy { full_rank: joint_rank == xi.rows(), joint_rank })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Regime {
    /// Only Ricci-flat points: the tuned condition `c = s·b`.
    RicciFlat,
    /// At least one scalar-flat point: Ricci-flat points impose nothing.
    ScalarFlat,
}

/// Leading coefficients attached to one point of a verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointCoefficients {
    pub label: String,
    pub kind: PointKind,
    /// `𝔞` or `𝔟`; `None` when the needed magnitude is missing.
    pub leading: Option<PiRational>,
    pub b_constant: Option<RootExpression>,
    #[serde(serialize_with = "ser_opt_rational")]
    pub c_constant: Option<Rational>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BalancingReport {
    pub regime: Regime,
    pub d: usize,
    pub s: ScalarCurvature,
    pub xi_matrix: Option<RationalMatrix>,
    pub theta_matrix: Option<RationalMatrix>,
    pub xi_rank: Option<usize>,
    pub theta_rank: Option<usize>,
    pub joint_rank: Option<usize>,
    pub feasible: bool,
    #[serde(serialize_with = "crate::linalg::ser_opt_rational_vec")]
    pub witness_a: Option<Vec<Rational>>,
    #[serde(serialize_with = "crate::linalg::ser_opt_rational_vec")]
    pub witness_b: Option<Vec<Rational>>,
    #[serde(serialize_with = "crate::linalg::ser_opt_rational_vec")]
    pub witness_c: Option<Vec<Rational>>,
    /// Kernel of the homogeneous system whose positive vectors are the weights.
    #[serde(serialize_with = "crate::linalg::ser_rational_vecs")]
    pub kernel_basis: Vec<Vec<Rational>>,
    pub coefficients: Vec<PointCoefficients>,
    pub notes: Vec<String>,
}

impl BalancingReport {
    /// Re-checks every witness against its defining system.
    pub fn verify(&self, points: &[SingularPointRecord], m: u32) -> Result<()> {
        if !self.feasible {
            return Ok(());
        }
        let fail = |what: &str| Err(Error::Invariant(format!("witness check failed: {what}")));
        match self.regime {
            Regime::ScalarFlat => {
                let a = self.witness_a.as_ref().ok_or_else(|| Error::Invariant("missing a".into()))?;
                let q: Vec<_> = points.iter().filter(|p| p.kind == PointKind::ScalarFlat).cloned().collect();
                let xi = build_xi(&q, a)?;
                let sum = xi.mul_vec(&vec![Rational::one(); a.len()])?;
                if !sum.iter().all(Zero::is_zero) || !a.iter().all(Signed::is_positive) {
                    return fail("Ξ·1 ≠ 0");
                }
                if rank(&xi) != self.d {
                    return fail("rank of Ξ");
                }
            }
            Regime::RicciFlat => {
                let b = self.witness_b.as_ref().ok_or_else(|| Error::Invariant("missing b".into()))?;
                let c = self.witness_c.as_ref().ok_or_else(|| Error::Invariant("missing c".into()))?;
                let s = self.s.value_or_unit();
                if c.iter().zip(b).any(|(c, b)| *c != b * &s) {
                    return fail("c = s·b");
                }
                let theta = build_theta(points, b, c, &self.s, m)?;
                let sum = theta.mul_vec(&vec![Rational::one(); b.len()])?;
                if !sum.iter().all(Zero::is_zero) || !b.iter().all(Signed::is_positive) {
                    return fail("Θ·1 ≠ 0");
                }
                if rank(&theta) != self.d {
                    return fail("rank of Θ");
                }
            }
        }
        Ok(())
    }
}

/// Homogeneous system whose positive kernel vectors are the admissible `b`,
/// after `c = s·b`. In the Einstein case the column is `((m−1)/m)s·φ` and
/// the nonzero factor is dropped.
fn tuned_system(points_p: &[SingularPointRecord], s: &ScalarCurvature, d: usize) -> Result<RationalMatrix> {
    let s_val = s.value_or_unit();
    let mut columns = Vec::with_capacity(points_p.len());
    for p in points_p {
        let column = match &p.laplacian {
            LaplacianData::Einstein => p.phi.clone(),
            LaplacianData::Explicit(lap) => {
                if s.is_symbolic() {
                    return Err(Error::Parameter("explicit Laplacian values need an exact s".into()));
                }
                lap.iter().zip(&p.phi).map(|(l, x)| l + &s_val * x).collect()
            }
        };
        columns.push(column);
    }
    columns_to_matrix(d, &columns)
}

fn check_s(s: &ScalarCurvature) -> Result<()> {
    if let ScalarCurvature::Exact(v) = s {
        if !v.is_positive() {
            return Err(Error::Parameter("scalar curvature must be positive".into()));
        }
    }
    Ok(())
}

/// Tuned balancing `∑ b_j Δφ_i(p_j) + s b_j φ_i(p_j) = 0` over Ricci-flat points.
pub fn solve_ricci_flat_balancing(points_p: &[SingularPointRecord], s: &ScalarCurvature, m: u32) -> Result<BalancingReport> {
    if m < 2 {
        return Err(Error::Parameter("balancing needs m ≥ 2".into()));
    }
    check_s(s)?;
    if points_p.is_empty() {
        return Err(Error::Empty("Ricci-flat points"));
    }
    if let Some(p) = points_p.iter().find(|p| p.kind != PointKind::RicciFlat) {
        return Err(Error::Parameter(format!("point {} is not Ricci-flat", p.label)));
    }
    let d = common_dim(points_p)?;
    let system = tuned_system(points_p, s, d)?;
    let kernel_basis = nullspace_basis(&system);
    let mut notes = Vec::new();
    if s.is_symbolic() {
        notes.push("s is symbolic: c, Θ and C are given per unit s".to_string());
    }
    let mut report = BalancingReport {
        regime: Regime::RicciFlat,
        d,
        s: s.clone(),
        xi_matrix: None,
        theta_matrix: None,
        xi_rank: None,
        theta_rank: None,
        joint_rank: None,
        feasible: false,
        witness_a: None,
        witness_b: None,
        witness_c: None,
        kernel_basis,
        coefficients: Vec::new(),
        notes,
    };
    let Some(b) = positive_kernel_witness(&system) else {
        report.notes.push("no positive b balances the potentials".into());
        return Ok(report);
    };
    let s_val = s.value_or_unit();
    let c: Vec<Rational> = b.iter().map(|x| x * &s_val).collect();
    let theta = build_theta(points_p, &b, &c, s, m)?;
    let theta_rank = rank(&theta);
    report.feasible = theta_rank == d;
    if !report.feasible {
        report.notes.push(format!("Θ has rank {theta_rank} < {d}"));
    }
    report.coefficients = points_p
        .iter()
        .zip(&b)
        .zip(&c)
        .map(|((p, b_j), c_j)| ricci_flat_coefficients(p, m, b_j, &s_val, c_j))
        .collect::<Result<_>>()?;
    report.theta_rank = Some(theta_rank);
    report.joint_rank = Some(theta_rank);
    report.theta_matrix = Some(theta);
    report.witness_b = Some(b);
    report.witness_c = Some(c);
    report.notes.push("the bound |c| ≤ C(ω)|a| is analytic and not checked".into());
    Ok(report)
}

fn ricci_flat_coefficients(p: &SingularPointRecord, m: u32, b: &Rational, s: &Rational, c: &Rational) -> Result<PointCoefficients> {
    let leading = leading_coefficients(LeadingKind::RicciFlat, m, p.group_order, b, None)?;
    let b_const = match &p.c_gamma {
        Some(cg) => Some(b_constant(m, b, p.group_order, cg)?),
        None => None,
    };
    let c_const = if m >= 3 { Some(c_constant(m, b, p.group_order, s, c)?) } else { None };
    let note = match (&p.c_gamma, m) {
        (None, _) => Some("B needs c(Γ)".to_string()),
        (Some(_), 2) => Some("C is undefined for m = 2".to_string()),
        _ => None,
    };
    Ok(PointCoefficients {
        label: p.label.clone(),
        kind: p.kind,
        leading: Some(leading),
        b_constant: b_const,
        c_constant: c_const,
        note,
    })
}

/// Balancing `∑ a_l sign(e_l) φ_i(q_l)/|Γ_l| = 0` over scalar-flat points.
pub fn solve_scalar_flat_balancing(points_q: &[SingularPointRecord], m: u32) -> Result<BalancingReport> {
    if m < 2 {
        return Err(Error::Parameter("balancing needs m ≥ 2".into()));
    }
    if points_q.is_empty() {
        return Err(Error::Empty("scalar-flat points"));
    }
    let d = common_dim(points_q)?;
    let ones = vec![Rational::one(); points_q.len()];
    let system = build_xi(points_q, &ones)?;
    let kernel_basis = nullspace_basis(&system);
    let mut report = BalancingReport {
        regime: Regime::ScalarFlat,
        d,
        s: ScalarCurvature::Positive,
        xi_matrix: None,
        theta_matrix: None,
        xi_rank: None,
        theta_rank: None,
        joint_rank: None,
        feasible: false,
        witness_a: None,
        witness_b: None,
        witness_c: None,
        kernel_basis,
        coefficients: Vec::new(),
        notes: vec!["Ricci-flat points impose no condition in this regime".into()],
    };
    let Some(a) = positive_kernel_witness(&system) else {
        report.notes.push("no positive a balances the potentials".into());
        return Ok(report);
    };
    let xi = build_xi(points_q, &a)?;
    let xi_rank = rank(&xi);
    report.feasible = xi_rank == d;
    if !report.feasible {
        report.notes.push(format!("Ξ has rank {xi_rank} < {d}"));
    }
    report.coefficients = points_q
        .iter()
        .zip(&a)
        .map(|(p, a_l)| {
            let (leading, note) = match &p.e_magnitude {
                Some(e) => (Some(leading_coefficients(LeadingKind::ScalarFlat, m, p.group_order, a_l, Some(e))?), None),
                None => (
                    Some(leading_coefficients(LeadingKind::ScalarFlat, m, p.group_order, a_l, Some(&Rational::one()))?),
                    Some("per unit |e(Γ)|: divide by |e(Γ)|".to_string()),
                ),
            };
            Ok(PointCoefficients { label: p.label.clone(), kind: p.kind, leading, b_constant: None, c_constant: None, note })
        })
        .collect::<Result<_>>()?;
    report.xi_rank = Some(xi_rank);
    report.joint_rank = Some(xi_rank);
    report.xi_matrix = Some(xi);
    report.witness_a = Some(a);
    Ok(report)
}

/// Picks the regime: scalar-flat as soon as one scalar-flat point exists.
pub fn solve_balancing(points: &[SingularPointRecord], s: &ScalarCurvature, m: u32) -> Result<BalancingReport> {
    let q: Vec<SingularPointRecord> = points.iter().filter(|p| p.kind == PointKind::ScalarFlat).cloned().collect();
    if q.is_empty() {
        solve_ricci_flat_balancing(points, s, m)
    } else {
        let mut report = solve_scalar_flat_balancing(&q, m)?;
        report.s = s.clone();
        Ok(report)
    }
}
