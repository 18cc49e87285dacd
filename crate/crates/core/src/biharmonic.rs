//! Mode-wise biharmonic extensions on the unit ball and its exterior, and
//! the Dirichlet-to-Neumann map between them.
//!
//! A mode is a finite sum of terms `c · r^a · Φ_γ` (optionally `· log r`)
//! with `Φ_γ` an eigenfunction of `Δ_{𝕊^{2m−1}}` of eigenvalue `Λ_γ`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{format_rational, rat, Rational, RationalMatrix};
use crate::spectral::eigenvalue;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadialTerm {
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub coefficient: Rational,
    pub exponent: i64,
    /// Multiplied by `log r`; only meaningful for `m = 2`, `γ = 0`.
    pub log: bool,
    pub mode: u32,
}

impl RadialTerm {
    pub fn power(coefficient: Rational, exponent: i64, mode: u32) -> Self {
        Self { coefficient, exponent, log: false, mode }
    }

    pub fn log_power(coefficient: Rational, exponent: i64, mode: u32) -> Self {
        Self { coefficient, exponent, log: true, mode }
    }
}

impl std::fmt::Display for RadialTerm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}·r^{}", format_rational(&self.coefficient), self.exponent)?;
        if self.log {
            write!(f, "·log r")?;
        }
        Ok(())
    }
}

/// Merges like terms, drops zeros, sorts by `(mode, log, exponent)`.
pub fn normalize(terms: Vec<RadialTerm>) -> Vec<RadialTerm> {
    let mut acc: BTreeMap<(u32, bool, i64), Rational> = BTreeMap::new();
    for t in terms {
        *acc.entry((t.mode, t.log, t.exponent)).or_insert_with(Rational::zero) += t.coefficient;
    }
    acc.into_iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|((mode, log, exponent), coefficient)| RadialTerm { coefficient, exponent, log, mode })
        .collect()
}

/// Switches for the extension builders.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct ModeOptions {
    /// Γ is nontrivial, so the `γ = 1` mode does not occur.
    pub nontrivial_group: bool,
    /// Allow the `log r` term of the `m = 2`, `γ = 0` outer extension.
    pub log_mode: bool,
}

impl ModeOptions {
    pub fn with_log() -> Self {
        Self { nontrivial_group: false, log_mode: true }
    }
}

fn check_mode(m: u32, gamma: u32, opts: ModeOptions) -> Result<()> {
    if m < 2 {
        return Err(Error::Parameter("biharmonic modes need m ≥ 2".into()));
    }
    if gamma == 1 && opts.nontrivial_group {
        return Err(Error::Parameter("no γ = 1 mode for a nontrivial group".into()));
    }
    Ok(())
}

/// Exterior solution of `Δ²H = 0` with `H = h`, `ΔH = k` on `r = 1`, decaying at infinity.
pub fn outer_extension(m: u32, gamma: u32, h: &Rational, k: &Rational, opts: ModeOptions) -> Result<Vec<RadialTerm>> {
    check_mode(m, gamma, opts)?;
    let (mi, g) = (i64::from(m), i64::from(gamma));
    if m == 2 && gamma == 0 {
        if !opts.log_mode {
            return Err(Error::LogTerm("m = 2, γ = 0 needs log handling enabled".into()));
        }
        let terms = vec![
            RadialTerm::power(h.clone(), -2, 0),
            RadialTerm::log_power(k / rat(2), 0, 0),
        ];
        return Ok(normalize(terms));
    }
    let q = k / rat(4 * (mi + g - 2));
    let terms = vec![
        RadialTerm::power(h + &q, 2 - 2 * mi - g, gamma),
        RadialTerm::power(-q, 4 - 2 * mi - g, gamma),
    ];
    Ok(normalize(terms))
}

/// Interior solution, smooth at the origin, with the same boundary data.
pub fn inner_extension(m: u32, gamma: u32, h: &Rational, k: &Rational, opts: ModeOptions) -> Result<Vec<RadialTerm>> {
    check_mode(m, gamma, opts)?;
    let (mi, g) = (i64::from(m), i64::from(gamma));
    let q = k / rat(4 * (mi + g));
    let terms = vec![
        RadialTerm::power(h - &q, g, gamma),
        RadialTerm::power(q, g + 2, gamma),
    ];
    Ok(normalize(terms))
}

/// `Δ(r^a Φ_γ) = (a(a+2m−2) + Λ_γ) r^{a−2} Φ_γ`, with the product rule for
/// `r^a log r` in the one slot where it occurs.
pub fn radial_laplacian(terms: &[RadialTerm], m: u32) -> Result<Vec<RadialTerm>> {
    let mi = i64::from(m);
    let mut out = Vec::new();
    for t in terms {
        let a = t.exponent;
        let factor = rat(a * (a + 2 * mi - 2) + eigenvalue(t.mode, m));
        if t.log {
            if m != 2 || t.mode != 0 {
                return Err(Error::LogTerm(format!("log term in mode {} for m = {m}", t.mode)));
            }
            out.push(RadialTerm::log_power(&t.coefficient * &factor, a - 2, t.mode));
            out.push(RadialTerm::power(&t.coefficient * rat(2 * a + 2 * mi - 2), a - 2, t.mode));
        } else {
            out.push(RadialTerm::power(&t.coefficient * factor, a - 2, t.mode));
        }
    }
    Ok(normalize(out))
}

pub fn radial_bilaplacian(terms: &[RadialTerm], m: u32) -> Result<Vec<RadialTerm>> {
    radial_laplacian(&radial_laplacian(terms, m)?, m)
}

/// `∂_r` of the radial profile.
pub fn derivative(terms: &[RadialTerm]) -> Vec<RadialTerm> {
    let mut out = Vec::new();
    for t in terms {
        let a = t.exponent;
        if t.log {
            out.push(RadialTerm::log_power(&t.coefficient * rat(a), a - 1, t.mode));
            out.push(RadialTerm::power(t.coefficient.clone(), a - 1, t.mode));
        } else {
            out.push(RadialTerm::power(&t.coefficient * rat(a), a - 1, t.mode));
        }
    }
    normalize(out)
}

fn pow(r: &Rational, e: i64) -> Rational {
    let base = if e < 0 { r.recip() } else { r.clone() };
    let mut acc = Rational::one();
    for _ in 0..e.unsigned_abs() {
        acc *= &base;
    }
    acc
}

/// Radial profile at `r`; log terms are only exact at `r = 1`, where they vanish.
pub fn evaluate(terms: &[RadialTerm], r: &Rational) -> Result<Rational> {
    if *r <= Rational::zero() {
        return Err(Error::Parameter("radius must be positive".into()));
    }
    let mut total = Rational::zero();
    for t in terms {
        if t.log {
            if !r.is_one() {
                return Err(Error::LogTerm("log r is not rational away from r = 1".into()));
            }
            continue;
        }
        total += &t.coefficient * pow(r, t.exponent);
    }
    Ok(total)
}

/// A 2×2 map on `(h, k)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModeMatrix {
    pub m: u32,
    pub gamma: u32,
    pub entries: RationalMatrix,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub determinant: Rational,
}

impl ModeMatrix {
    fn new(m: u32, gamma: u32, entries: RationalMatrix) -> Result<Self> {
        let determinant = entries.determinant()?;
        Ok(Self { m, gamma, entries, determinant })
    }

    pub fn apply(&self, h: &Rational, k: &Rational) -> Result<(Rational, Rational)> {
        let v = self.entries.mul_vec(&[h.clone(), k.clone()])?;
        Ok((v[0].clone(), v[1].clone()))
    }
}

fn negate(terms: &[RadialTerm]) -> Vec<RadialTerm> {
    terms
        .iter()
        .map(|t| RadialTerm { coefficient: -t.coefficient.clone(), ..t.clone() })
        .collect()
}

/// `(∂_r(H^o−H^I), ∂_r Δ(H^o−H^I))` at `r = 1` for unit boundary data.
fn jump_column(m: u32, gamma: u32, h: &Rational, k: &Rational, opts: ModeOptions) -> Result<[Rational; 2]> {
    let mut diff = outer_extension(m, gamma, h, k, opts)?;
    diff.extend(negate(&inner_extension(m, gamma, h, k, opts)?));
    let diff = normalize(diff);
    let one = Rational::one();
    let first = evaluate(&derivative(&diff), &one)?;
    let second = evaluate(&derivative(&radial_laplacian(&diff, m)?), &one)?;
    Ok([first, second])
}

/// The Dirichlet-to-Neumann map of mode `γ`, by exact differentiation.
pub fn dtn_mode_matrix(m: u32, gamma: u32, opts: ModeOptions) -> Result<ModeMatrix> {
    let (zero, one) = (Rational::zero(), Rational::one());
    let c_h = jump_column(m, gamma, &one, &zero, opts)?;
    let c_k = jump_column(m, gamma, &zero, &one, opts)?;
    let entries = RationalMatrix::new(2, 2, vec![c_h[0].clone(), c_k[0].clone(), c_h[1].clone(), c_k[1].clone()])?;
    let matrix = ModeMatrix::new(m, gamma, entries)?;
    if matrix.determinant.is_zero() {
        return Err(Error::Invariant(format!("Dirichlet-to-Neumann mode m = {m}, γ = {gamma} is singular")));
    }
    Ok(matrix)
}

/// Exact inverse of [`dtn_mode_matrix`].
pub fn dtn_inverse(m: u32, gamma: u32, opts: ModeOptions) -> Result<ModeMatrix> {
    let p = dtn_mode_matrix(m, gamma, opts)?;
    ModeMatrix::new(m, gamma, p.entries.inverse()?)
}
