//! Pluri-anticanonical lattice polytopes of complete simplicial fans.
//!
//! The polytope of `-kK` is `{u : ⟨u, v_ρ⟩ ≥ -k for every ray v_ρ}`. For
//! the complete simplicial fans handled here each maximal cone contributes
//! exactly one vertex, the solution of `⟨u, v_i⟩ = -k` over its generators.

use std::collections::{BTreeSet, HashSet};

use num_traits::{Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{dot, positive_kernel_witness, rank, rat, Rational, RationalMatrix};
use crate::toric::{Cone, Fan};

/// A face as sorted indices into [`LatticePolytope::vertices`], with the
/// facet inequalities that are tight on all of it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub facets: Vec<usize>,
}

/// H-representation `⟨u, normal_i⟩ ≥ offset_i` plus derived V-data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    pub dim: usize,
    /// Anticanonical multiple, when built from a fan.
    pub k: Option<u64>,
    pub facet_normals: Vec<Vec<i64>>,
    pub facet_offsets: Vec<i64>,
    /// Exact vertices in lexicographic order.
    pub vertices: Vec<Vec<Rational>>,
    /// `face_lattice[d]` holds the d-dimensional faces.
    face_lattice: Vec<Vec<Face>>,
    /// False when some cone's candidate vertex fell outside the polytope and
    /// the general enumeration had to be used instead.
    pub normal_fan_matches: bool,
}

/// The vertex `u_σ` assigned to each maximal cone, by position in the fan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MomentAssignment {
    pub vertex_of_cone: Vec<usize>,
}

fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn satisfies(normals: &[Vec<i64>], offsets: &[i64], u: &[Rational]) -> bool {
    normals
        .iter()
        .zip(offsets)
        .all(|(n, &b)| dot(u, &to_rational(n)) >= rat(b))
}

fn tight(normal: &[i64], offset: i64, u: &[Rational]) -> bool {
    dot(u, &to_rational(normal)) == rat(offset)
}

/// Affine dimension of a point set (−1 for the empty set is reported as 0 here
/// since empty sets never reach this function).
fn affine_dim(points: &[&Vec<Rational>]) -> usize {
    let Some((first, rest)) = points.split_first() else {
        return 0;
    };
    if rest.is_empty() {
        return 0;
    }
    let diffs: Vec<Vec<Rational>> = rest
        .iter()
        .map(|p| p.iter().zip(first.iter()).map(|(a, b)| a - b).collect())
        .collect();
    rank(&RationalMatrix::from_rows(&diffs).expect("uniform length"))
}

/// All vertices of `{u : ⟨u, n_i⟩ ≥ b_i}` by trying every m-subset of
/// inequalities as equalities. Exponential, but exact and assumption-free.
pub fn enumerate_vertices_general(dim: usize, normals: &[Vec<i64>], offsets: &[i64]) -> Vec<Vec<Rational>> {
    let mut found = BTreeSet::new();
    let n = normals.len();
    let mut subset: Vec<usize> = (0..dim).collect();
    if dim == 0 || dim > n {
        return Vec::new();
    }
    loop {
        let rows: Vec<Vec<Rational>> = subset.iter().map(|&i| to_rational(&normals[i])).collect();
        let system = RationalMatrix::from_rows(&rows).expect("uniform");
        let rhs: Vec<Rational> = subset.iter().map(|&i| rat(offsets[i])).collect();
        if let Ok(u) = system.solve(&rhs) {
            if satisfies(normals, offsets, &u) {
                found.insert(u);
            }
        }
        // next combination
        let mut i = dim;
        loop {
            if i == 0 {
                return found.into_iter().collect();
            }
            i -= 1;
            if subset[i] < n - dim + i {
                subset[i] += 1;
                for j in i + 1..dim {
                    subset[j] = subset[j - 1] + 1;
                }
                break;
            }
        }
    }
}

impl LatticePolytope {
    /// Polytope from an explicit H-representation; vertices come from the
    /// general enumeration.
    pub fn from_inequalities(dim: usize, normals: Vec<Vec<i64>>, offsets: Vec<i64>) -> Result<Self> {
        if normals.len() != offsets.len() || normals.iter().any(|n| n.len() != dim) {
            return Err(Error::Dimension("inequality normals and offsets disagree".into()));
        }
        let vertices = enumerate_vertices_general(dim, &normals, &offsets);
        Self::assemble(dim, None, normals, offsets, vertices, true)
    }

    fn assemble(
        dim: usize,
        k: Option<u64>,
        facet_normals: Vec<Vec<i64>>,
        facet_offsets: Vec<i64>,
        vertices: Vec<Vec<Rational>>,
        normal_fan_matches: bool,
    ) -> Result<Self> {
        if vertices.is_empty() {
            return Err(Error::Empty("polytope vertices"));
        }
        let mut p = Self {
            dim,
            k,
            facet_normals,
            facet_offsets,
            vertices,
            face_lattice: Vec::new(),
            normal_fan_matches,
        };
        p.face_lattice = p.compute_faces();
        Ok(p)
    }

    fn tight_facets(&self, vertex: usize) -> BTreeSet<usize> {
        (0..self.facet_normals.len())
            .filter(|&f| tight(&self.facet_normals[f], self.facet_offsets[f], &self.vertices[vertex]))
            .collect()
    }

    fn compute_faces(&self) -> Vec<Vec<Face>> {
        let nv = self.vertices.len();
        let incidence: Vec<BTreeSet<usize>> = (0..nv).map(|v| self.tight_facets(v)).collect();
        let mut seen: HashSet<Vec<usize>> = HashSet::new();
        let mut frontier: Vec<Vec<usize>> = Vec::new();
        let all: Vec<usize> = (0..nv).collect();
        seen.insert(all.clone());
        for f in 0..self.facet_normals.len() {
            let set: Vec<usize> = (0..nv).filter(|&v| incidence[v].contains(&f)).collect();
            if !set.is_empty() && seen.insert(set.clone()) {
                frontier.push(set);
            }
        }
        let mut faces: Vec<Vec<usize>> = frontier.clone();
        // close under pairwise intersection
        while !frontier.is_empty() {
            let mut next = Vec::new();
            for a in &frontier {
                for b in &faces {
                    let meet: Vec<usize> = a.iter().copied().filter(|x| b.binary_search(x).is_ok()).collect();
                    if !meet.is_empty() && seen.insert(meet.clone()) {
                        next.push(meet);
                    }
                }
            }
            faces.extend(next.iter().cloned());
            frontier = next;
        }
        for v in 0..nv {
            if seen.insert(vec![v]) {
                faces.push(vec![v]);
            }
        }
        faces.push(all);
        let mut lattice = vec![Vec::new(); self.dim + 1];
        for set in faces {
            let pts: Vec<&Vec<Rational>> = set.iter().map(|&v| &self.vertices[v]).collect();
            let d = affine_dim(&pts);
            let common: Vec<usize> = (0..self.facet_normals.len())
                .filter(|f| set.iter().all(|&v| incidence[v].contains(f)))
                .collect();
            if d <= self.dim {
                lattice[d].push(Face { vertices: set, facets: common });
            }
        }
        for level in &mut lattice {
            level.sort();
        }
        lattice
    }

    pub fn faces(&self, d: usize) -> &[Face] {
        self.face_lattice.get(d).map_or(&[], Vec::as_slice)
    }

    /// Face counts by dimension, vertices first.
    pub fn f_vector(&self) -> Vec<usize> {
        (0..=self.dim).map(|d| self.faces(d).len()).collect()
    }

    pub fn face_points(&self, face: &Face) -> Vec<Vec<Rational>> {
        face.vertices.iter().map(|&v| self.vertices[v].clone()).collect()
    }

    pub fn contains(&self, u: &[Rational]) -> bool {
        satisfies(&self.facet_normals, &self.facet_offsets, u)
    }

    pub fn vertex_index(&self, u: &[Rational]) -> Option<usize> {
        self.vertices.binary_search_by(|v| v.as_slice().cmp(u)).ok()
    }

    fn is_full_dimensional(&self) -> bool {
        let pts: Vec<&Vec<Rational>> = self.vertices.iter().collect();
        affine_dim(&pts) == self.dim
    }

    /// Pulling triangulation of a face: cone from its first vertex over the
    /// triangulated subfaces that miss that vertex.
    fn triangulate(&self, d: usize, face: &Face) -> Vec<Vec<usize>> {
        if d == 0 {
            return vec![face.vertices.clone()];
        }
        let apex = face.vertices[0];
        let mut out = Vec::new();
        for sub in self.faces(d - 1) {
            if sub.vertices.contains(&apex) || !sub.vertices.iter().all(|v| face.vertices.contains(v)) {
                continue;
            }
            for mut simplex in self.triangulate(d - 1, sub) {
                simplex.push(apex);
                out.push(simplex);
            }
        }
        out
    }

    /// Full-dimensional simplices covering the polytope, apex at the
    /// lexicographically smallest vertex.
    pub fn triangulation(&self) -> Vec<Vec<usize>> {
        let whole = &self.faces(self.dim)[0];
        self.triangulate(self.dim, whole)
    }
}

/// Builds `P_{-kK}` for a complete simplicial fan.
pub fn anticanonical_polytope(fan: &Fan, k: u64) -> Result<LatticePolytope> {
    if k == 0 {
        return Err(Error::Parameter("anticanonical multiple must be positive".into()));
    }
    let m = fan.dim;
    let ray_columns: Vec<Vec<Rational>> = fan.rays.iter().map(|r| to_rational(r)).collect();
    let ray_matrix = RationalMatrix::from_columns(m, &ray_columns)?;
    // bounded iff the rays positively span R^m
    if rank(&ray_matrix) < m || positive_kernel_witness(&ray_matrix).is_none() {
        return Err(Error::Unbounded);
    }
    let k_i = i64::try_from(k).map_err(|_| Error::Parameter("k too large".into()))?;
    let offsets = vec![-k_i; fan.rays.len()];
    let mut candidates = BTreeSet::new();
    let mut all_feasible = true;
    for cone in fan.cones()? {
        let u = cone_vertex(&cone, k_i)?;
        if satisfies(&fan.rays, &offsets, &u) {
            candidates.insert(u);
        } else {
            all_feasible = false;
        }
    }
    let vertices: Vec<Vec<Rational>> = if all_feasible {
        candidates.into_iter().collect()
    } else {
        enumerate_vertices_general(m, &fan.rays, &offsets)
    };
    let p = LatticePolytope::assemble(m, Some(k), fan.rays.clone(), offsets, vertices, all_feasible)?;
    if !p.is_full_dimensional() {
        return Err(Error::LowerDimensional);
    }
    Ok(p)
}

fn cone_vertex(cone: &Cone, k: i64) -> Result<Vec<Rational>> {
    if !cone.is_full_simplicial() {
        return Err(Error::Dimension("vertex needs a maximal simplicial cone".into()));
    }
    let gt = cone.generator_matrix().to_rational().transpose();
    let rhs = vec![rat(-k); cone.ambient_dim()];
    gt.solve(&rhs).map_err(|e| match e {
        Error::Singular => Error::DegenerateCone,
        other => other,
    })
}

/// The solution of `⟨u, v_i⟩ = -k` over the cone's generators; must lie in `P_{-kK}`.
pub fn vertex_for_cone(fan: &Fan, k: u64, cone: &Cone) -> Result<Vec<Rational>> {
    let k_i = i64::try_from(k).map_err(|_| Error::Parameter("k too large".into()))?;
    let u = cone_vertex(cone, k_i)?;
    let offsets = vec![-k_i; fan.rays.len()];
    if !satisfies(&fan.rays, &offsets, &u) {
        return Err(Error::Invariant("cone vertex lies outside the polytope".into()));
    }
    Ok(u)
}

/// Vertex index for every maximal cone of `fan` in `polytope`.
pub fn moment_assignment(fan: &Fan, polytope: &LatticePolytope) -> Result<MomentAssignment> {
    let k = polytope.k.ok_or_else(|| Error::Missing("anticanonical multiple".into()))?;
    let mut vertex_of_cone = Vec::with_capacity(fan.max_cones.len());
    for cone in fan.cones()? {
        let u = vertex_for_cone(fan, k, &cone)?;
        let idx = polytope
            .vertex_index(&u)
            .ok_or_else(|| Error::Invariant("cone vertex is not a polytope vertex".into()))?;
        vertex_of_cone.push(idx);
    }
    Ok(MomentAssignment { vertex_of_cone })
}

/// Exact volume-weighted centroid.
pub fn polytope_barycenter(p: &LatticePolytope) -> Result<Vec<Rational>> {
    if !p.is_full_dimensional() {
        return Err(Error::LowerDimensional);
    }
    let m = p.dim;
    let mut total = Rational::zero();
    let mut moment = vec![Rational::zero(); m];
    for simplex in p.triangulation() {
        let base = &p.vertices[simplex[0]];
        let edges: Vec<Vec<Rational>> = simplex[1..]
            .iter()
            .map(|&v| p.vertices[v].iter().zip(base).map(|(a, b)| a - b).collect())
            .collect();
        let weight = RationalMatrix::from_rows(&edges)?.determinant()?.abs();
        let count = rat(simplex.len() as i64);
        for (i, slot) in moment.iter_mut().enumerate() {
            let centroid_i: Rational = simplex.iter().map(|&v| p.vertices[v][i].clone()).sum::<Rational>() / &count;
            *slot += &weight * centroid_i;
        }
        total += weight;
    }
    if total.is_zero() {
        return Err(Error::LowerDimensional);
    }
    Ok(moment.into_iter().map(|x| x / &total).collect())
}

/// Arithmetic mean of a nonempty point list.
pub fn subset_barycenter(points: &[Vec<Rational>]) -> Result<Vec<Rational>> {
    let Some(first) = points.first() else {
        return Err(Error::Empty("barycenter of an empty point set"));
    };
    let m = first.len();
    if points.iter().any(|p| p.len() != m) {
        return Err(Error::Dimension("points of different dimensions".into()));
    }
    let n = rat(points.len() as i64);
    Ok((0..m)
        .map(|i| points.iter().map(|p| p[i].clone()).sum::<Rational>() / &n)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{ratio, rat_vec};

    fn p1() -> Fan {
        Fan::new(1, vec![vec![1], vec![-1]], vec![vec![0], vec![1]])
    }

    fn cube() -> LatticePolytope {
        let mut normals = Vec::new();
        let mut offsets = Vec::new();
        for i in 0..3 {
            let mut e = vec![0; 3];
            e[i] = 1;
            normals.push(e.clone());
            offsets.push(0);
            e[i] = -1;
            normals.push(e);
            offsets.push(-1);
        }
        LatticePolytope::from_inequalities(3, normals, offsets).unwrap()
    }

    #[test]
    fn segment_from_p1() {
        let p = anticanonical_polytope(&p1(), 1).unwrap();
        assert_eq!(p.vertices, vec![rat_vec(&[-1]), rat_vec(&[1])]);
        assert_eq!(p.faces(0).len(), 2);
        assert_eq!(polytope_barycenter(&p).unwrap(), rat_vec(&[0]));
    }

    #[test]
    fn unit_cube() {
        let c = cube();
        assert_eq!(c.vertices.len(), 8);
        assert_eq!(c.faces(2).len(), 6);
        assert_eq!(c.faces(1).len(), 12);
        assert_eq!(polytope_barycenter(&c).unwrap(), vec![ratio(1, 2); 3]);
    }

    #[test]
    fn incomplete_fan_is_unbounded() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![0, 1]], vec![vec![0, 1]]);
        assert_eq!(anticanonical_polytope(&fan, 1), Err(Error::Unbounded));
    }

    #[test]
    fn p2_triangle() {
        let fan = Fan::new(2, vec![vec![1, 0], vec![0, 1], vec![-1, -1]], vec![vec![0, 1], vec![1, 2], vec![2, 0]]);
        let p = anticanonical_polytope(&fan, 1).unwrap();
        assert_eq!(p.vertices, vec![rat_vec(&[-1, -1]), rat_vec(&[-1, 2]), rat_vec(&[2, -1])]);
        assert_eq!(polytope_barycenter(&p).unwrap(), rat_vec(&[0, 0]));
        let assignment = moment_assignment(&fan, &p).unwrap();
        assert_eq!(assignment.vertex_of_cone, vec![0, 2, 1]);
        assert_eq!(p.faces(1).len(), 3);
    }

    #[test]
    fn subset_barycenter_cases() {
        assert_eq!(subset_barycenter(&[rat_vec(&[1, 0])]).unwrap(), rat_vec(&[1, 0]));
        assert!(subset_barycenter(&[]).is_err());
        let pts = vec![rat_vec(&[1, 2]), rat_vec(&[2, 2])];
        assert_eq!(subset_barycenter(&pts).unwrap(), vec![ratio(3, 2), rat(2)]);
    }

    #[test]
    fn lower_dimensional_set_is_rejected() {
        // x = 0 forced by two opposite inequalities: a segment in the plane
        let p = LatticePolytope::from_inequalities(
            2,
            vec![vec![1, 0], vec![-1, 0], vec![0, 1], vec![0, -1]],
            vec![0, 0, -1, -1],
        )
        .unwrap();
        assert_eq!(polytope_barycenter(&p), Err(Error::LowerDimensional));
    }
}
