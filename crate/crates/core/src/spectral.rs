//! Spectral bookkeeping on `𝕊^{2m−1}`: eigenvalues, multiplicities, Γ-invariant
//! multiplicities, indicial roots and admissible weights.

use std::fmt;
use std::str::FromStr;

use num_integer::{binomial, Integer};
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rat, Rational};
use crate::toric::{CyclicFactor, QuotientData};

/// A finite abelian subgroup of `U(m)` as a product of diagonal cyclic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GroupPresentation {
    pub m: usize,
    pub cyclic_factors: Vec<CyclicFactor>,
}

impl GroupPresentation {
    pub fn new(m: usize, factors: Vec<CyclicFactor>) -> Result<Self> {
        let mut cyclic_factors = Vec::with_capacity(factors.len());
        for f in factors {
            if f.order == 0 {
                return Err(Error::Parameter("cyclic factor of order 0".into()));
            }
            if f.weights.len() != m {
                return Err(Error::Dimension(format!("factor weights need {m} entries")));
            }
            if f.order == 1 {
                continue;
            }
            let weights = f.weights.iter().map(|w| w % f.order).collect();
            cyclic_factors.push(CyclicFactor { order: f.order, weights });
        }
        Ok(Self { m, cyclic_factors })
    }

    pub fn trivial(m: usize) -> Self {
        Self { m, cyclic_factors: Vec::new() }
    }

    pub fn cyclic(order: u64, weights: Vec<u64>) -> Result<Self> {
        let m = weights.len();
        Self::new(m, vec![CyclicFactor { order, weights }])
    }

    pub fn from_quotient(q: &QuotientData, m: usize) -> Result<Self> {
        Self::new(m, q.cyclic_factors.clone())
    }

    pub fn order(&self) -> u64 {
        self.cyclic_factors.iter().map(|f| f.order).product()
    }

    /// Acts as the identity (possibly through a non-faithful presentation).
    pub fn is_trivial(&self) -> bool {
        self.cyclic_factors.iter().all(|f| f.weights.iter().all(Zero::is_zero))
    }

    /// Common exponent `N`: every element is `diag(ζ_N^{e_i})`.
    pub fn exponent(&self) -> u64 {
        self.cyclic_factors.iter().fold(1, |acc, f| acc.lcm(&f.order))
    }

    /// All elements as exponent vectors mod [`exponent`](Self::exponent).
    pub fn elements(&self) -> Vec<Vec<u64>> {
        let n = self.exponent();
        let mut out = vec![vec![0u64; self.m]];
        for f in &self.cyclic_factors {
            let scale = n / f.order;
            out = out
                .iter()
                .flat_map(|base| {
                    (0..f.order).map(move |c| {
                        base.iter()
                            .zip(&f.weights)
                            .map(|(&b, &w)| (b + c * w % f.order * scale) % n)
                            .collect()
                    })
                })
                .collect();
        }
        out
    }

    /// Faithful, and no nonidentity element fixes a nonzero vector.
    pub fn is_fixed_point_free(&self) -> bool {
        let elements = self.elements();
        let identities = elements.iter().filter(|e| e.iter().all(Zero::is_zero)).count();
        identities == 1 && elements.iter().all(|e| e.iter().all(Zero::is_zero) || e.iter().all(|&x| x != 0))
    }
}

/// `Λ_j = −j(2m−2+j)`.
pub fn eigenvalue(j: u32, m: u32) -> i64 {
    let (j, m) = (i64::from(j), i64::from(m));
    -j * (2 * m - 2 + j)
}

/// Multiplicity of `Λ_j`: harmonic polynomials of degree `j` in `2m` variables.
pub fn harmonic_dimension(j: u32, m: u32) -> u64 {
    let n = 2 * u64::from(m);
    let j = u64::from(j);
    let all = binomial(n + j - 1, j);
    let lower = if j >= 2 { binomial(n + j - 3, j - 2) } else { 0 };
    all - lower
}

/// Polynomials in `ℤ[x]`, low degree first.
type Poly = Vec<i128>;

fn trim(mut p: Poly) -> Poly {
    while p.last() == Some(&0) {
        p.pop();
    }
    p
}

/// Remainder and quotient of `a / b` for monic `b`.
fn divide_monic(a: &[i128], b: &[i128]) -> (Poly, Poly) {
    let b = trim(b.to_vec());
    let mut r = trim(a.to_vec());
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![0i128; r.len() - db];
    while r.len() > db {
        let shift = r.len() - 1 - db;
        let coef = *r.last().expect("nonempty");
        q[shift] = coef;
        for (i, &bi) in b.iter().enumerate() {
            r[shift + i] -= coef * bi;
        }
        r = trim(r);
    }
    (trim(q), r)
}

/// `Φ_N`, from `x^N − 1 = ∏_{d | N} Φ_d`.
pub(crate) fn cyclotomic(n: u64) -> Poly {
    let n_us = n as usize;
    let mut p = vec![0i128; n_us + 1];
    p[0] = -1;
    p[n_us] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            let (q, r) = divide_monic(&p, &cyclotomic(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

/// Graded character `p_0 … p_j` of `γ = diag(ζ^{e_i})` acting on real
/// polynomials of `2m` variables, each as a vector in `ℤ[x]/(x^N − 1)`.
fn polynomial_characters(e: &[u64], n: u64, j: usize) -> Vec<Vec<i128>> {
    let n_us = n as usize;
    let mut acc = vec![vec![0i128; n_us]; j + 1];
    acc[0][0] = 1;
    for &w in e {
        // 1/((1 − t x^w)(1 − t x^{−w})): t^k coefficient is ∑_{a+b=k} x^{(a−b)w}
        let factor: Vec<Vec<i128>> = (0..=j)
            .map(|k| {
                let mut c = vec![0i128; n_us];
                for a in 0..=k {
                    let shift = ((a as i128 - (k - a) as i128) * w as i128).rem_euclid(n as i128);
                    c[shift as usize] += 1;
                }
                c
            })
            .collect();
        let mut next = vec![vec![0i128; n_us]; j + 1];
        for (deg, row) in acc.iter().enumerate() {
            for (k, fk) in factor.iter().enumerate().take(j + 1 - deg) {
                for (r1, &x) in row.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (r2, &y) in fk.iter().enumerate() {
                        if y != 0 {
                            next[deg + k][(r1 + r2) % n_us] += x * y;
                        }
                    }
                }
            }
        }
        acc = next;
    }
    acc
}

/// Dimension of the Γ-invariant part of the `Λ_j` eigenspace, by character
/// averaging over exact cyclotomic integers.
pub fn invariant_harmonic_dimension(g: &GroupPresentation, j: u32, m: u32) -> Result<u64> {
    if g.m != m as usize {
        return Err(Error::Dimension(format!("presentation acts on C^{}, not C^{m}", g.m)));
    }
    let n = g.exponent();
    let ju = j as usize;
    let mut total = vec![0i128; n as usize];
    for e in g.elements() {
        let p = polynomial_characters(&e, n, ju);
        for (r, slot) in total.iter_mut().enumerate() {
            *slot += p[ju][r] - if ju >= 2 { p[ju - 2][r] } else { 0 };
        }
    }
    let (_, rem) = divide_monic(&total, &cyclotomic(n));
    if rem.len() > 1 {
        return Err(Error::Invariant("character sum is not a rational integer".into()));
    }
    let c = rem.first().copied().unwrap_or(0);
    let order = i128::from(g.order());
    if c < 0 || c % order != 0 {
        return Err(Error::Invariant(format!("character average {c}/{order} is not a nonnegative integer")));
    }
    Ok((c / order) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FirstInvariant {
    pub index: u32,
    /// Set for the trivial group, where the answer 1 is a convention.
    pub trivial_group: bool,
}

/// Smallest `j ≥ 1` with a Γ-invariant eigenfunction of `Λ_j`.
pub fn first_invariant_index(g: &GroupPresentation, m: u32) -> Result<FirstInvariant> {
    if g.is_trivial() {
        return Ok(FirstInvariant { index: 1, trivial_group: true });
    }
    let bound = 2 * g.cyclic_factors.iter().map(|f| f.order).max().unwrap_or(1);
    for j in 1..=bound as u32 {
        if invariant_harmonic_dimension(g, j, m)? > 0 {
            if j == 1 && g.is_fixed_point_free() {
                return Err(Error::Invariant("fixed-point-free group with invariant linear functions".into()));
            }
            return Ok(FirstInvariant { index: j, trivial_group: false });
        }
    }
    Err(Error::Invariant(format!("no invariant eigenfunction up to degree {bound}")))
}

/// `ℤ ∖ {5−2m, …, −1}`: the indicial roots of `Δ²` on `ℂ^m/Γ`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct IndicialRoots {
    pub m: u32,
    /// Inclusive excluded range, when nonempty.
    pub excluded: Option<(i64, i64)>,
}

impl IndicialRoots {
    pub fn contains(&self, delta: &Rational) -> bool {
        if !delta.is_integer() {
            return false;
        }
        let Some(n) = delta.to_integer().to_i64() else {
            return true;
        };
        !matches!(self.excluded, Some((lo, hi)) if lo <= n && n <= hi)
    }
}

impl fmt::Display for IndicialRoots {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.excluded {
            None => write!(f, "Z"),
            Some((lo, hi)) => {
                let parts: Vec<String> = (lo..=hi).map(|x| x.to_string()).collect();
                write!(f, "Z \\ {{{}}}", parts.join(", "))
            }
        }
    }
}

pub fn indicial_roots(m: u32) -> Result<IndicialRoots> {
    if m < 2 {
        return Err(Error::Parameter("indicial roots need m ≥ 2".into()));
    }
    let lo = 5 - 2 * i64::from(m);
    let excluded = (lo <= -1).then_some((lo, -1));
    Ok(IndicialRoots { m, excluded })
}

/// Where a weight `δ` is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum WeightContext {
    /// Linear analysis on the punctured orbifold, `m ≥ 3`: `δ ∈ (4−2m, 0)`.
    #[serde(rename = "BaseOrbifold_m3")]
    BaseOrbifoldM3,
    /// Same for `m = 2`: `δ ∈ (0, 1)`.
    #[serde(rename = "BaseOrbifold_m2")]
    BaseOrbifoldM2,
    /// Fredholm range on an ALE space: `δ ∉ {l+m, 4−m−l : l ≥ 0}`.
    #[serde(rename = "ALE_m3")]
    Ale,
    /// The nonlinear fixed-point argument: `δ ∈ (4−2m, 5−2m)`.
    Nonlinear,
}

impl FromStr for WeightContext {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().replace('-', "_").as_str() {
            "baseorbifold_m3" | "base_m3" | "base" => Ok(Self::BaseOrbifoldM3),
            "baseorbifold_m2" | "base_m2" => Ok(Self::BaseOrbifoldM2),
            "ale_m3" | "ale" => Ok(Self::Ale),
            "nonlinear" => Ok(Self::Nonlinear),
            _ => Err(Error::UnknownContext(s.to_string())),
        }
    }
}

impl fmt::Display for WeightContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::BaseOrbifoldM3 => "BaseOrbifold_m3",
            Self::BaseOrbifoldM2 => "BaseOrbifold_m2",
            Self::Ale => "ALE_m3",
            Self::Nonlinear => "Nonlinear",
        })
    }
}

/// Open interval of admissible weights.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightInterval {
    pub context: WeightContext,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub lower: Rational,
    #[serde(serialize_with = "crate::linalg::ser_rational")]
    pub upper: Rational,
}

impl WeightContext {
    /// The open interval, or `None` for the ALE context, which only excludes points.
    pub fn interval(self, m: u32) -> Result<Option<WeightInterval>> {
        let mi = i64::from(m);
        let (lower, upper) = match self {
            Self::BaseOrbifoldM3 if m >= 3 => (rat(4 - 2 * mi), rat(0)),
            Self::BaseOrbifoldM2 if m == 2 => (rat(0), rat(1)),
            Self::Nonlinear if m >= 2 => (rat(4 - 2 * mi), rat(5 - 2 * mi)),
            Self::Ale if m >= 2 => return Ok(None),
            _ => return Err(Error::Parameter(format!("context {self} does not apply for m = {m}"))),
        };
        Ok(Some(WeightInterval { context: self, lower, upper }))
    }
}

pub fn is_admissible_weight(delta: &Rational, m: u32, context: WeightContext) -> Result<bool> {
    match context.interval(m)? {
        Some(iv) => Ok(iv.lower < *delta && *delta < iv.upper),
        None => {
            if !delta.is_integer() {
                return Ok(true);
            }
            let mi = rat(i64::from(m));
            let above = delta - &mi;
            let below = rat(4) - &mi - delta;
            Ok(above.is_negative() && below.is_negative())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::ratio;

    #[test]
    fn eigenvalues_and_multiplicities() {
        assert_eq!(eigenvalue(0, 4), 0);
        assert_eq!(eigenvalue(1, 2), -3);
        assert_eq!(eigenvalue(2, 3), -12);
        assert_eq!(harmonic_dimension(0, 3), 1);
        assert_eq!(harmonic_dimension(1, 2), 4);
        assert_eq!(harmonic_dimension(2, 2), 9);
    }

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic(1), vec![-1, 1]);
        assert_eq!(cyclotomic(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn invariant_dimensions() {
        let trivial = GroupPresentation::trivial(2);
        for j in 0..6 {
            assert_eq!(invariant_harmonic_dimension(&trivial, j, 2).unwrap(), harmonic_dimension(j, 2));
        }
        let minus = GroupPresentation::cyclic(2, vec![1, 1]).unwrap();
        assert_eq!(invariant_harmonic_dimension(&minus, 1, 2).unwrap(), 0);
        assert_eq!(invariant_harmonic_dimension(&minus, 2, 2).unwrap(), 9);
        let z3 = GroupPresentation::cyclic(3, vec![1, 2]).unwrap();
        assert_eq!(invariant_harmonic_dimension(&z3, 1, 2).unwrap(), 0);
        assert_eq!(first_invariant_index(&minus, 2).unwrap().index, 2);
        assert_eq!(first_invariant_index(&z3, 2).unwrap().index, 2);
        assert!(first_invariant_index(&trivial, 2).unwrap().trivial_group);
    }

    #[test]
    fn roots_and_weights() {
        assert_eq!(indicial_roots(3).unwrap().to_string(), "Z \\ {-1}");
        assert_eq!(indicial_roots(2).unwrap().to_string(), "Z");
        let r4 = indicial_roots(4).unwrap();
        assert_eq!(r4.excluded, Some((-3, -1)));
        assert!(!r4.contains(&rat(-2)) && r4.contains(&rat(0)) && !r4.contains(&ratio(1, 2)));

        assert!(is_admissible_weight(&ratio(-1, 2), 3, WeightContext::BaseOrbifoldM3).unwrap());
        assert!(is_admissible_weight(&ratio(1, 2), 2, WeightContext::BaseOrbifoldM2).unwrap());
        for m in 2..6 {
            assert!(!is_admissible_weight(&rat(i64::from(m)), m, WeightContext::Ale).unwrap());
        }
        assert!(is_admissible_weight(&rat(2), 3, WeightContext::Ale).unwrap());
        assert!(!is_admissible_weight(&rat(1), 3, WeightContext::Ale).unwrap());
        assert!(!is_admissible_weight(&rat(0), 4, WeightContext::Ale).unwrap());
        assert!("sideways".parse::<WeightContext>().is_err());
        assert_eq!("ALE_m3".parse::<WeightContext>().unwrap(), WeightContext::Ale);
        assert!(is_admissible_weight(&rat(0), 2, WeightContext::BaseOrbifoldM3).is_err());
    }
}
