use std::collections::HashMap;

use num_integer::Integer;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{rank, IntMatrix, RationalMatrix};

/// A simplicial cone given by its integer generators in `Z^m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Cone {
    generators: Vec<Vec<i64>>,
}

impl Cone {
    pub fn new(generators: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = generators.first() else {
            return Err(Error::Empty("cone generators"));
        };
        let m = first.len();
        if generators.iter().any(|g| g.len() != m) {
            return Err(Error::Dimension("cone generators of different lengths".into()));
        }
        Ok(Self { generators })
    }

    /// The cone spanned by the standard basis of `Z^m`.
    pub fn standard(m: usize) -> Self {
        let generators = (0..m)
            .map(|i| (0..m).map(|j| i64::from(i == j)).collect())
            .collect();
        Self { generators }
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Dimension of the ambient lattice.
    pub fn ambient_dim(&self) -> usize {
        self.generators[0].len()
    }

    pub fn is_full_simplicial(&self) -> bool {
        self.generators.len() == self.ambient_dim()
    }

    /// `m × n` matrix whose columns are the generators.
    pub fn generator_matrix(&self) -> IntMatrix {
        IntMatrix::from_columns(self.ambient_dim(), &self.generators).expect("uniform lengths")
    }

    /// The face spanned by the generators at `indices`.
    pub fn face(&self, indices: &[usize]) -> Cone {
        Cone { generators: indices.iter().map(|&i| self.generators[i].clone()).collect() }
    }
}

/// Rays plus maximal cones (index sets into `rays`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fan {
    pub dim: usize,
    pub rays: Vec<Vec<i64>>,
    pub max_cones: Vec<Vec<usize>>,
}

impl Fan {
    pub fn new(dim: usize, rays: Vec<Vec<i64>>, max_cones: Vec<Vec<usize>>) -> Self {
        Self { dim, rays, max_cones }
    }

    pub fn cone(&self, index: usize) -> Result<Cone> {
        let indices = self
            .max_cones
            .get(index)
            .ok_or_else(|| Error::Parameter(format!("no maximal cone {index}")))?;
        let mut generators = Vec::with_capacity(indices.len());
        for &i in indices {
            let ray = self
                .rays
                .get(i)
                .ok_or_else(|| Error::Parameter(format!("ray index {i} out of range")))?;
            generators.push(ray.clone());
        }
        Cone::new(generators)
    }

    pub fn cones(&self) -> Result<Vec<Cone>> {
        (0..self.max_cones.len()).map(|i| self.cone(i)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FanViolation {
    RayLength { ray: usize, len: usize },
    ZeroRay { ray: usize },
    NonPrimitive { ray: usize, gcd: i64 },
    DuplicateRay { first: usize, second: usize },
    RayIndex { cone: usize, index: usize },
    RepeatedIndex { cone: usize, index: usize },
    /// More than `dim` generators: outside the isolated-singularity setting.
    NonSimplicial { cone: usize, size: usize },
    /// Fewer than `dim` generators, or linearly dependent ones.
    NotFullDimensional { cone: usize },
}

impl std::fmt::Display for FanViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::RayLength { ray, len } => write!(f, "ray {} has {len} coordinates", ray + 1),
            Self::ZeroRay { ray } => write!(f, "ray {} is zero", ray + 1),
            Self::NonPrimitive { ray, gcd } => {
                write!(f, "ray {} is not primitive (gcd {gcd})", ray + 1)
            }
            Self::DuplicateRay { first, second } => {
                write!(f, "rays {} and {} coincide", first + 1, second + 1)
            }
            Self::RayIndex { cone, index } => {
                write!(f, "cone {} refers to missing ray {}", cone + 1, index + 1)
            }
            Self::RepeatedIndex { cone, index } => {
                write!(f, "cone {} repeats ray {}", cone + 1, index + 1)
            }
            Self::NonSimplicial { cone, size } => {
                write!(f, "cone {} has {size} generators (not simplicial)", cone + 1)
            }
            Self::NotFullDimensional { cone } => {
                write!(f, "cone {} is not full-dimensional", cone + 1)
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct FanValidation {
    pub violations: Vec<FanViolation>,
}

impl FanValidation {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// True when the only problems are per-cone shape problems, so the
    /// remaining cones can still be classified.
    pub fn cone_is_usable(&self, cone: usize) -> bool {
        !self.violations.iter().any(|v| match v {
            FanViolation::RayIndex { cone: c, .. }
            | FanViolation::RepeatedIndex { cone: c, .. }
            | FanViolation::NonSimplicial { cone: c, .. }
            | FanViolation::NotFullDimensional { cone: c } => *c == cone,
            _ => false,
        })
    }
}

/// Checks primitivity, distinctness, simpliciality and full dimensionality.
/// Problems are collected, never fatal.
pub fn validate_fan(fan: &Fan) -> FanValidation {
    let mut violations = Vec::new();
    let mut seen: HashMap<&[i64], usize> = HashMap::new();
    for (i, ray) in fan.rays.iter().enumerate() {
        if ray.len() != fan.dim {
            violations.push(FanViolation::RayLength { ray: i, len: ray.len() });
            continue;
        }
        let g = ray.iter().fold(0i64, |acc, &x| acc.gcd(&x));
        if g == 0 {
            violations.push(FanViolation::ZeroRay { ray: i });
        } else if g != 1 {
            violations.push(FanViolation::NonPrimitive { ray: i, gcd: g });
        }
        if let Some(&first) = seen.get(ray.as_slice()) {
            violations.push(FanViolation::DuplicateRay { first, second: i });
        } else {
            seen.insert(ray, i);
        }
    }
    for (c, indices) in fan.max_cones.iter().enumerate() {
        let mut ok = true;
        for (pos, &index) in indices.iter().enumerate() {
            if index >= fan.rays.len() {
                violations.push(FanViolation::RayIndex { cone: c, index });
                ok = false;
            } else if indices[..pos].contains(&index) {
                violations.push(FanViolation::RepeatedIndex { cone: c, index });
                ok = false;
            }
        }
        if indices.len() > fan.dim {
            violations.push(FanViolation::NonSimplicial { cone: c, size: indices.len() });
            continue;
        }
        if !ok {
            continue;
        }
        let full = indices.len() == fan.dim && {
            let columns: Vec<_> = indices
                .iter()
                .map(|&i| fan.rays[i].iter().map(|&x| crate::linalg::rat(x)).collect())
                .collect();
            indices.iter().all(|&i| fan.rays[i].len() == fan.dim)
                && RationalMatrix::from_columns(fan.dim, &columns).map(|m| rank(&m)) == Ok(fan.dim)
        };
        if !full {
            violations.push(FanViolation::NotFullDimensional { cone: c });
        }
    }
    FanValidation { violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p2() -> Fan {
        Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]])
    }

    #[test]
    fn valid_fan() {
        assert!(validate_fan(&p2()).is_valid());
    }

    #[test]
    fn non_primitive_ray() {
        let fan = Fan::new(3, vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![0, 1, 2]]);
        let v = validate_fan(&fan);
        assert_eq!(v.violations, vec![FanViolation::NonPrimitive { ray: 0, gcd: 2 }]);
    }

    #[test]
    fn small_cone_in_dimension_three() {
        let fan = Fan::new(3, vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]], vec![vec![0, 1]]);
        let v = validate_fan(&fan);
        assert_eq!(v.violations, vec![FanViolation::NotFullDimensional { cone: 0 }]);
        assert!(!v.cone_is_usable(0));
    }

    #[test]
    fn shape_problems_are_reported_per_cone() {
        let fan = Fan::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, 0], vec![1, 1]],
            vec![vec![0, 1, 3], vec![0, 7], vec![1, 1], vec![0, 3]],
        );
        let v = validate_fan(&fan);
        assert!(v.violations.contains(&FanViolation::DuplicateRay { first: 0, second: 2 }));
        assert!(v.violations.contains(&FanViolation::NonSimplicial { cone: 0, size: 3 }));
        assert!(v.violations.contains(&FanViolation::RayIndex { cone: 1, index: 7 }));
        assert!(v.violations.contains(&FanViolation::RepeatedIndex { cone: 2, index: 1 }));
        assert!(v.cone_is_usable(3));
    }

    #[test]
    fn cone_accessors() {
        let fan = p2();
        let c = fan.cone(2).unwrap();
        assert_eq!(c.generators(), &[vec![-1, -1], vec![1, 0]]);
        assert!(fan.cone(3).is_err());
        assert!(Cone::new(vec![]).is_err());
        assert!(Cone::new(vec![vec![1], vec![1, 2]]).is_err());
    }
}
