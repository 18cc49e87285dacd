use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::fan::{validate_fan, Cone, Fan};
use crate::error::{Error, Result};
use crate::linalg::{format_rational, rat, smith_normal_form, Rational};

/// Where a maximal cone's singularity sits in the gluing picture.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Classification {
    Smooth,
    /// Gamma inside SU(m): candidate for a Ricci-flat ALE model.
    #[serde(rename = "SU")]
    Su,
    /// Gamma inside U(m) but not SU(m): candidate for a scalar-flat model.
    #[serde(rename = "U_nonSU")]
    UNonSu,
    /// Non-simplicial, degenerate or non-isolated cone.
    Unsupported,
}

impl std::fmt::Display for Classification {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Self::Smooth => "smooth",
            Self::Su => "SU",
            Self::UNonSu => "U_nonSU",
            Self::Unsupported => "unsupported",
        })
    }
}

/// Generator `diag(ζ^{w_1}, …, ζ^{w_m})` of a cyclic factor, `ζ = e^{2πi/order}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CyclicFactor {
    pub order: u64,
    pub weights: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotientData {
    pub order: u64,
    pub cyclic_factors: Vec<CyclicFactor>,
    pub classification: Classification,
    pub isolated: bool,
}

impl QuotientData {
    pub fn dim(&self) -> usize {
        self.cyclic_factors.first().map_or(0, |f| f.weights.len())
    }

    /// Least common multiple of the factor orders.
    pub fn exponent(&self) -> u64 {
        self.cyclic_factors.iter().fold(1, |acc, f| acc.lcm(&f.order))
    }

    /// Every group element as exponents mod [`exponent`](Self::exponent):
    /// the element acts on coordinate `i` by `ζ_N^{e_i}`.
    pub fn elements(&self, m: usize) -> Vec<Vec<u64>> {
        let n = self.exponent();
        let mut out = vec![vec![0u64; m]];
        for factor in &self.cyclic_factors {
            let scale = n / factor.order;
            let mut next = Vec::with_capacity(out.len() * factor.order as usize);
            for base in &out {
                for c in 0..factor.order {
                    let e: Vec<u64> = base
                        .iter()
                        .zip(&factor.weights)
                        .map(|(&b, &w)| (b + c * scale % n * w) % n)
                        .collect();
                    next.push(e);
                }
            }
            out = next;
        }
        out
    }

    /// Whether `x^a` is fixed by every generator.
    pub fn is_invariant_monomial(&self, exponents: &[u64]) -> bool {
        self.cyclic_factors.iter().all(|f| {
            let s: u64 = f.weights.iter().zip(exponents).map(|(w, a)| w * a % f.order).sum();
            s.is_multiple_of(f.order)
        })
    }

    fn weight_sums_vanish(&self) -> bool {
        self.cyclic_factors
            .iter()
            .all(|f| f.weights.iter().sum::<u64>() % f.order == 0)
    }

    /// Only the identity fixes a nonzero vector.
    fn acts_freely(&self, m: usize) -> bool {
        self.elements(m)
            .iter()
            .all(|e| e.iter().all(|&x| x == 0) || e.iter().all(|&x| x != 0))
    }
}

fn to_u64(x: &BigInt, what: &str) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Parameter(format!("{what} {x} does not fit in 64 bits")))
}

fn require_maximal(cone: &Cone) -> Result<()> {
    if cone.is_full_simplicial() {
        Ok(())
    } else {
        Err(Error::Dimension(format!(
            "maximal simplicial cone in Z^{} needs {} generators, got {}",
            cone.ambient_dim(),
            cone.ambient_dim(),
            cone.generators().len()
        )))
    }
}

/// `|Γ| = |det(generators)|`.
pub fn cone_index(cone: &Cone) -> Result<u64> {
    require_maximal(cone)?;
    let det = cone.generator_matrix().determinant()?;
    if det.is_zero() {
        return Err(Error::DegenerateCone);
    }
    to_u64(&det.abs(), "cone index")
}

/// `Γ = Z^m / (lattice of the generators)` with its diagonal action on the
/// coordinates dual to the generators.
///
/// With `G = U·D·V`, the class of `U·e_k` has order `d_k` and acts by
/// `G⁻¹·U·e_k = V⁻¹·e_k / d_k`, so the weights are read from the columns of
/// `V⁻¹`.
pub fn quotient_action(cone: &Cone) -> Result<QuotientData> {
    let order = cone_index(cone)?;
    let m = cone.ambient_dim();
    let snf = smith_normal_form(&cone.generator_matrix());
    let mut cyclic_factors = Vec::new();
    for (k, d) in snf.diagonal().iter().enumerate() {
        if d.is_one() {
            continue;
        }
        let weights = snf
            .v_inv
            .column(k)
            .iter()
            .map(|w| to_u64(&w.mod_floor(d), "weight"))
            .collect::<Result<Vec<_>>>()?;
        cyclic_factors.push(CyclicFactor { order: to_u64(d, "factor order")?, weights });
    }
    let mut q = QuotientData {
        order,
        cyclic_factors,
        classification: Classification::Smooth,
        isolated: true,
    };
    let product: u64 = q.cyclic_factors.iter().map(|f| f.order).product();
    if product != order {
        return Err(Error::Invariant(format!("factor orders multiply to {product}, |det| = {order}")));
    }
    q.classification = if order == 1 {
        Classification::Smooth
    } else if q.weight_sums_vanish() {
        Classification::Su
    } else {
        Classification::UNonSu
    };
    q.isolated = q.acts_freely(m);
    check_invariant_monomials(cone, &q, order.min(6))?;
    Ok(q)
}

/// Monomials invariant under the weights must be exactly the ones coming from
/// the dual lattice: `x^a` with `G^{-T}·a` integral.
fn check_invariant_monomials(cone: &Cone, q: &QuotientData, max_degree: u64) -> Result<()> {
    let m = cone.ambient_dim();
    let gt_inv = cone.generator_matrix().to_rational().transpose().inverse()?;
    let mut a = vec![0u64; m];
    loop {
        let total: u64 = a.iter().sum();
        if total <= max_degree {
            let ar: Vec<Rational> = a.iter().map(|&x| rat(x as i64)).collect();
            let u = gt_inv.mul_vec(&ar)?;
            let dual = u.iter().all(|x| x.is_integer());
            if dual != q.is_invariant_monomial(&a) {
                return Err(Error::Invariant(format!(
                    "weights disagree with the dual lattice on monomial {a:?}"
                )));
            }
        }
        // odometer over the box [0, max_degree]^m
        let mut i = 0;
        loop {
            if i == m {
                return Ok(());
            }
            a[i] += 1;
            if a[i] <= max_degree {
                break;
            }
            a[i] = 0;
            i += 1;
        }
    }
}

/// The covector `u` with `⟨u, v_i⟩ = 1` for every generator (rational in general).
pub fn gorenstein_covector(cone: &Cone) -> Result<Vec<Rational>> {
    require_maximal(cone)?;
    let gt = cone.generator_matrix().to_rational().transpose();
    let ones = vec![Rational::one(); cone.ambient_dim()];
    gt.solve(&ones).map_err(|e| match e {
        Error::Singular => Error::DegenerateCone,
        other => other,
    })
}

/// Gorenstein iff the covector [`gorenstein_covector`] is integral.
pub fn is_gorenstein(cone: &Cone) -> Result<bool> {
    Ok(gorenstein_covector(cone)?.iter().all(Rational::is_integer))
}

/// Smooth / SU / U-non-SU, cross-checked between the Gorenstein test and the
/// weight-sum criterion.
pub fn classify(cone: &Cone) -> Result<Classification> {
    let q = quotient_action(cone)?;
    let by_covector = if q.order == 1 {
        Classification::Smooth
    } else if is_gorenstein(cone)? {
        Classification::Su
    } else {
        Classification::UNonSu
    };
    if by_covector != q.classification {
        return Err(Error::Invariant(format!(
            "Gorenstein test says {by_covector}, weights say {}",
            q.classification
        )));
    }
    Ok(by_covector)
}

fn faces_are_smooth(cone: &Cone) -> bool {
    let n = cone.generators().len();
    (1u32..(1 << n) - 1).all(|mask| {
        let indices: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        let face = cone.face(&indices);
        smith_normal_form(&face.generator_matrix()).diagonal().iter().all(One::is_one)
    })
}

/// Isolated iff every proper face is smooth, iff Γ acts freely off the origin.
pub fn is_isolated(cone: &Cone) -> Result<bool> {
    let q = quotient_action(cone)?;
    let by_faces = faces_are_smooth(cone);
    if by_faces != q.isolated {
        return Err(Error::Invariant(format!(
            "face test says isolated = {by_faces}, group action says {}",
            q.isolated
        )));
    }
    Ok(by_faces)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum ResolutionStatus {
    /// Nothing to resolve.
    NotNeeded,
    /// A Ricci-flat ALE resolution is known to exist.
    Known { reason: String },
    /// Existence of the ALE model has to be supplied by the user.
    ExternalInput,
}

/// One row of a fan's classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeClassification {
    pub index: usize,
    pub generators: Vec<Vec<i64>>,
    pub classification: Classification,
    pub order: Option<u64>,
    pub quotient: Option<QuotientData>,
    pub gorenstein_covector: Option<Vec<String>>,
    pub isolated: Option<bool>,
    pub resolution: ResolutionStatus,
    pub problem: Option<String>,
}

/// Whether an ALE model for this singularity type is known to exist.
pub fn resolution_status(class: Classification, m: usize) -> ResolutionStatus {
    match (class, m) {
        (Classification::Smooth, _) => ResolutionStatus::NotNeeded,
        (Classification::Su, 2) => ResolutionStatus::Known {
            reason: "every finite subgroup of SU(2) has a Ricci-flat ALE resolution (Kronheimer)".into(),
        },
        (Classification::Su, 3) => ResolutionStatus::Known {
            reason: "every SU(3) singularity admits a Kahler crepant resolution".into(),
        },
        _ => ResolutionStatus::ExternalInput,
    }
}

/// Classifies every maximal cone, in input order. Cones that are malformed
/// or non-isolated come back as [`Classification::Unsupported`] with the
/// reason attached instead of aborting the whole fan.
pub fn classify_fan(fan: &Fan) -> Vec<ConeClassification> {
    let validation = validate_fan(fan);
    (0..fan.max_cones.len())
        .map(|index| {
            let generators: Vec<Vec<i64>> = fan.max_cones[index]
                .iter()
                .filter_map(|&i| fan.rays.get(i).cloned())
                .collect();
            let unsupported = |problem: String| ConeClassification {
                index,
                generators: generators.clone(),
                classification: Classification::Unsupported,
                order: None,
                quotient: None,
                gorenstein_covector: None,
                isolated: None,
                resolution: ResolutionStatus::ExternalInput,
                problem: Some(problem),
            };
            if !validation.cone_is_usable(index) {
                return unsupported("cone is not a full-dimensional simplicial cone".into());
            }
            let analysed = fan.cone(index).and_then(|cone| {
                let class = classify(&cone)?;
                let isolated = is_isolated(&cone)?;
                let q = quotient_action(&cone)?;
                let cov = gorenstein_covector(&cone)?;
                Ok((class, isolated, q, cov))
            });
            match analysed {
                Err(e) => unsupported(e.to_string()),
                Ok((class, isolated, q, cov)) => {
                    let (classification, problem) = if isolated {
                        (class, None)
                    } else {
                        (Classification::Unsupported, Some(format!("{class} singularity is not isolated")))
                    };
                    ConeClassification {
                        index,
                        generators: generators.clone(),
                        classification,
                        order: Some(q.order),
                        quotient: Some(q),
                        gorenstein_covector: Some(cov.iter().map(format_rational).collect()),
                        isolated: Some(isolated),
                        resolution: resolution_status(classification, fan.dim),
                        problem,
                    }
                }
            }
        })
        .collect()
}
