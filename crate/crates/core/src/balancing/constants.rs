use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{format_rational, rat, ratio, Rational};

/// `coeff · π^pi_power`, exact.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PiRational {
    pub coeff: Rational,
    pub pi_power: i32,
}

impl PiRational {
    pub fn new(coeff: Rational, pi_power: i32) -> Self {
        let pi_power = if coeff.is_zero() { 0 } else { pi_power };
        Self { coeff, pi_power }
    }

    pub fn rational(coeff: Rational) -> Self {
        Self::new(coeff, 0)
    }

    pub fn scale(&self, factor: &Rational) -> Self {
        Self::new(&self.coeff * factor, self.pi_power)
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(&self.coeff * &other.coeff, self.pi_power + other.pi_power)
    }

    pub fn recip(&self) -> Result<Self> {
        if self.coeff.is_zero() {
            return Err(Error::Singular);
        }
        Ok(Self::new(self.coeff.recip(), -self.pi_power))
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }
}

impl fmt::Display for PiRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = format_rational(&self.coeff);
        match self.pi_power {
            0 => write!(f, "{c}"),
            1 => write!(f, "{c}·π"),
            p => write!(f, "{c}·π^{p}"),
        }
    }
}

impl Serialize for PiRational {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut s = serializer.serialize_struct("PiRational", 2)?;
        s.serialize_field("coeff", &format_rational(&self.coeff))?;
        s.serialize_field("pi_power", &self.pi_power)?;
        s.end()
    }
}

fn factorial(n: u32) -> Rational {
    (1..=n).fold(Rational::one(), |acc, i| acc * rat(i64::from(i)))
}

fn small(m: u32) -> i64 {
    i64::from(m)
}

/// `|𝕊^{2m−1}| = 2π^m/(m−1)!`.
pub fn sphere_volume(m: u32) -> Result<PiRational> {
    if m == 0 {
        return Err(Error::Parameter("sphere volume needs m ≥ 1".into()));
    }
    Ok(PiRational::new(rat(2) / factorial(m - 1), m as i32))
}

/// Which leading coefficient to evaluate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LeadingKind {
    /// `𝔞_l^{2m−2}` of a scalar-flat point, weighted by `a_l`.
    ScalarFlat,
    /// `𝔟_j^{2m}` of a Ricci-flat point, weighted by `b_j`.
    RicciFlat,
}

/// Explicit choice between the complex-surface and higher-dimensional
/// `𝔞` formulas; [`leading_coefficients`] picks it from `m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AFormula {
    Surface,
    Higher,
}

fn check_weight(weight: &Rational) -> Result<()> {
    if weight.is_negative() {
        return Err(Error::Parameter("weights must be nonnegative".into()));
    }
    Ok(())
}

/// Leading value of `𝔞` under an explicitly chosen formula.
pub fn leading_a_with(formula: AFormula, m: u32, order: u64, a: &Rational, e_magnitude: &Rational) -> Result<PiRational> {
    check_weight(a)?;
    if !e_magnitude.is_positive() {
        return Err(Error::Parameter("|e(Γ)| must be positive".into()));
    }
    let sphere = sphere_volume(m)?;
    let numerator = rat(order as i64) * a;
    let denominator = match (formula, m) {
        (AFormula::Surface, 2) => sphere.scale(&(rat(4) * e_magnitude)),
        (AFormula::Higher, m) if m >= 3 => {
            sphere.scale(&(rat(8 * (small(m) - 2) * (small(m) - 1)) * e_magnitude))
        }
        (AFormula::Surface, _) => return Err(Error::Formula("the surface formula needs m = 2".into())),
        (AFormula::Higher, _) => return Err(Error::Formula("the higher formula needs m ≥ 3".into())),
    };
    Ok(denominator.recip()?.scale(&numerator))
}

/// Leading value of `𝔞_l^{2m−2}` or `𝔟_j^{2m}`; `e_magnitude` is required for the former.
pub fn leading_coefficients(
    kind: LeadingKind,
    m: u32,
    order: u64,
    weight: &Rational,
    e_magnitude: Option<&Rational>,
) -> Result<PiRational> {
    if m < 2 {
        return Err(Error::Parameter("leading coefficients need m ≥ 2".into()));
    }
    check_weight(weight)?;
    match kind {
        LeadingKind::RicciFlat => Ok(PiRational::rational(
            rat(order as i64) * weight / rat(2 * (small(m) - 1)),
        )),
        LeadingKind::ScalarFlat => {
            let e = e_magnitude.ok_or_else(|| Error::Missing("e-magnitude".into()))?;
            let formula = if m == 2 { AFormula::Surface } else { AFormula::Higher };
            leading_a_with(formula, m, order, weight, e)
        }
    }
}

/// `B_j = radicand^exponent`, kept unevaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RootExpression {
    pub radicand: PiRational,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub exponent: Rational,
}

/// Radicand `b|Γ| / (2c(Γ)(m−1)|𝕊^{2m−1}|)` with exponent `1/(2m)`.
pub fn b_constant(m: u32, b: &Rational, order: u64, c_gamma: &Rational) -> Result<RootExpression> {
    if m < 2 {
        return Err(Error::Parameter("B needs m ≥ 2".into()));
    }
    check_weight(b)?;
    if !c_gamma.is_positive() {
        return Err(Error::Parameter("c(Γ) must be positive".into()));
    }
    let denominator = sphere_volume(m)?.scale(&(rat(2) * c_gamma * rat(small(m) - 1)));
    let radicand = denominator.recip()?.scale(&(b * rat(order as i64)));
    Ok(RootExpression { radicand, exponent: ratio(1, 2 * small(m)) })
}

/// `C_j = |Γ|/(8(m−2)(m−1)) · [ (b s/m)(1 + (m−1)²/(m+1)) − c_j ]`, the π
/// factors of `B_j^{2m}` and `|𝕊^{2m−1}|` having cancelled.
pub fn c_constant(m: u32, b: &Rational, order: u64, s: &Rational, c_j: &Rational) -> Result<Rational> {
    if m < 3 {
        return Err(Error::Formula("C carries 1/(m−2) and needs m ≥ 3".into()));
    }
    check_weight(b)?;
    let mi = small(m);
    let shape = Rational::one() + ratio((mi - 1) * (mi - 1), mi + 1);
    let bracket = b * s / rat(mi) * shape - c_j;
    Ok(rat(order as i64) / rat(8 * (mi - 2) * (mi - 1)) * bracket)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelConstants {
    pub b: RootExpression,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub c: Rational,
}

/// `(B_j, C_j)` for a Ricci-flat point; `m ≥ 3`.
pub fn model_constants(m: u32, b: &Rational, order: u64, c_gamma: &Rational, s: &Rational, c_j: &Rational) -> Result<ModelConstants> {
    let c = c_constant(m, b, order, s, c_j)?;
    Ok(ModelConstants { b: b_constant(m, b, order, c_gamma)?, c })
}

/// `r_ε = ε^{r_exponent}` and `R_ε = ε^{big_r_exponent}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GluingScales {
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub epsilon: Rational,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub r_exponent: Rational,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub big_r_exponent: Rational,
}

pub fn gluing_scales(epsilon: &Rational, m: u32) -> Result<GluingScales> {
    if !epsilon.is_positive() || *epsilon >= Rational::one() {
        return Err(Error::Parameter("gluing scales need 0 < ε < 1".into()));
    }
    if m < 1 {
        return Err(Error::Parameter("gluing scales need m ≥ 1".into()));
    }
    let mi = small(m);
    Ok(GluingScales {
        epsilon: epsilon.clone(),
        r_exponent: ratio(2 * mi - 1, 2 * mi + 1),
        big_r_exponent: ratio(-2, 2 * mi + 1),
    })
}
