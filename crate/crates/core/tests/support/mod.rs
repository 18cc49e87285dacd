//! Brute-force oracles shared by the property suites and the acceptance suite.
//! Each one avoids the algorithm it checks: determinants by permutation
//! expansion, ranks by minors, cones by extreme rays, groups by closure.
#![allow(dead_code, clippy::needless_range_loop)]

pub mod printed;

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use kcsc_core::linalg::{rank, rat};
use kcsc_core::{Rational, RationalMatrix};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

pub fn to_rows(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    m.row_vectors()
}

pub fn int_rows(rows: &[Vec<i64>]) -> Vec<Vec<Rational>> {
    rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect()
}

fn permutations(n: usize) -> Vec<(Vec<usize>, bool)> {
    if n == 0 {
        return vec![(vec![], true)];
    }
    let mut out = Vec::new();
    for (p, even) in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            // inserting at `pos` costs `len - pos` transpositions
            let flips = p.len() - pos;
            out.push((q, even == (flips % 2 == 0)));
        }
    }
    out
}

/// Leibniz expansion.
pub fn det_leibniz(a: &[Vec<Rational>]) -> Rational {
    let n = a.len();
    let mut total = Rational::zero();
    for (p, even) in permutations(n) {
        let mut term = Rational::one();
        for (i, &j) in p.iter().enumerate() {
            term *= &a[i][j];
            if term.is_zero() {
                break;
            }
        }
        if even {
            total += term;
        } else {
            total -= term;
        }
    }
    total
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

fn minor(a: &[Vec<Rational>], rows: &[usize], cols: &[usize]) -> Rational {
    let sub: Vec<Vec<Rational>> =
        rows.iter().map(|&i| cols.iter().map(|&j| a[i][j].clone()).collect()).collect();
    det_leibniz(&sub)
}

/// Size of the largest nonvanishing minor.
pub fn rank_by_minors(a: &[Vec<Rational>]) -> usize {
    let r = a.len();
    let c = a.first().map_or(0, Vec::len);
    for k in (1..=r.min(c)).rev() {
        for rows in subsets(r, k) {
            for cols in subsets(c, k) {
                if !minor(a, &rows, &cols).is_zero() {
                    return k;
                }
            }
        }
    }
    0
}

/// Generator of the one-dimensional kernel of `a` restricted to `cols`, by
/// cofactors of a maximal independent row set.
fn kernel_ray(a: &[Vec<Rational>], cols: &[usize]) -> Option<Vec<Rational>> {
    let k = cols.len();
    let r = a.len();
    let sub: Vec<Vec<Rational>> = a.iter().map(|row| cols.iter().map(|&j| row[j].clone()).collect()).collect();
    if rank_by_minors(&sub) != k - 1 {
        return None;
    }
    if k == 1 {
        return Some(vec![Rational::one()]);
    }
    let rows = subsets(r, k - 1)
        .into_iter()
        .find(|rows| rank_by_minors(&rows.iter().map(|&i| sub[i].clone()).collect::<Vec<_>>()) == k - 1)?;
    let all: Vec<usize> = (0..k).collect();
    let x: Vec<Rational> = (0..k)
        .map(|j| {
            let others: Vec<usize> = all.iter().copied().filter(|&c| c != j).collect();
            let d = minor(&sub, &rows, &others);
            if j % 2 == 0 {
                d
            } else {
                -d
            }
        })
        .collect();
    Some(x)
}

/// Whether `a·x = 0` has a solution with every `x_j > 0`.
///
/// Extreme rays of `{x ≥ 0, a·x = 0}` are the sign-definite kernel vectors of
/// minimal support; a positive vector exists iff their supports cover every
/// column.
pub fn positive_kernel_exists_brute(a: &[Vec<Rational>], cols: usize) -> bool {
    let mut covered = vec![false; cols];
    for k in 1..=cols {
        for support in subsets(cols, k) {
            if let Some(x) = kernel_ray(a, &support) {
                let pos = x.iter().all(Signed::is_positive);
                let neg = x.iter().all(Signed::is_negative);
                if pos || neg {
                    for &j in &support {
                        covered[j] = true;
                    }
                }
            }
        }
    }
    covered.iter().all(|&c| c)
}

fn frac_mod1(q: &Rational) -> Rational {
    q - q.floor()
}

/// Inverse by cofactors.
pub fn inverse_by_cofactors(a: &[Vec<Rational>]) -> Option<Vec<Vec<Rational>>> {
    let n = a.len();
    let d = det_leibniz(a);
    if d.is_zero() {
        return None;
    }
    let mut inv = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let rows: Vec<usize> = (0..n).filter(|&r| r != j).collect();
            let cols: Vec<usize> = (0..n).filter(|&c| c != i).collect();
            let cof = minor(a, &rows, &cols);
            let signed = if (i + j) % 2 == 0 { cof } else { -cof };
            inv[i][j] = signed / &d;
        }
    }
    Some(inv)
}

/// `Z^m / span(generators)` acting on coordinates by `t = G⁻¹·x mod 1`,
/// as the closure of the images of the standard basis.
pub fn quotient_group_brute(generators: &[Vec<i64>]) -> BTreeSet<Vec<Rational>> {
    let m = generators.len();
    let g: Vec<Vec<Rational>> = (0..m).map(|i| (0..m).map(|j| rat(generators[j][i])).collect()).collect();
    let inv = inverse_by_cofactors(&g).expect("nonsingular cone");
    let gens: Vec<Vec<Rational>> = (0..m).map(|k| (0..m).map(|i| frac_mod1(&inv[i][k])).collect()).collect();
    let zero = vec![Rational::zero(); m];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(e) = queue.pop_front() {
        for g in &gens {
            let next: Vec<Rational> = e.iter().zip(g).map(|(a, b)| frac_mod1(&(a + b))).collect();
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
    }
    seen
}

/// Exponent vectors mod `n` as fractions in `[0, 1)`.
pub fn elements_as_fractions(elements: &[Vec<u64>], n: u64) -> BTreeSet<Vec<Rational>> {
    elements
        .iter()
        .map(|e| e.iter().map(|&x| Rational::new((x as i64).into(), (n as i64).into())).collect())
        .collect()
}

/// Every element has `Σ t_i ∈ Z` (determinant one).
pub fn group_in_su(group: &BTreeSet<Vec<Rational>>) -> bool {
    group.iter().all(|t| t.iter().sum::<Rational>().is_integer())
}

/// No nonidentity element has a coordinate fixed.
pub fn group_acts_freely(group: &BTreeSet<Vec<Rational>>) -> bool {
    group.iter().all(|t| t.iter().all(Zero::is_zero) || t.iter().all(|x| !x.is_zero()))
}

fn compositions(total: u32, parts: usize) -> Vec<Vec<u32>> {
    if parts == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in compositions(total - first, parts - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Monomials `z^α z̄^β` of total degree `j`, grouped by `α − β`.
fn monomials_by_charge(j: u32, m: usize) -> BTreeMap<Vec<i64>, Vec<Vec<u32>>> {
    let mut out: BTreeMap<Vec<i64>, Vec<Vec<u32>>> = BTreeMap::new();
    for exps in compositions(j, 2 * m) {
        let charge: Vec<i64> = (0..m).map(|i| i64::from(exps[i]) - i64::from(exps[m + i])).collect();
        out.entry(charge).or_default().push(exps);
    }
    out
}

/// Diagonal action `z_i ↦ ζ_{d}^{w_i} z_i` per factor `(d, w)`.
pub fn charge_invariant(factors: &[(u64, Vec<u64>)], charge: &[i64]) -> bool {
    factors.iter().all(|(d, w)| {
        let s: i64 = w.iter().zip(charge).map(|(&wi, &c)| wi as i64 * c).sum();
        s.mod_floor(&(*d as i64)) == 0
    })
}

/// Dimension of Γ-invariant harmonic polynomials of degree `j` on `C^m`:
/// invariant monomials span the invariant polynomials, and the invariant
/// harmonics are the kernel of `Σ ∂_{z_i} ∂_{z̄_i}` on them.
pub fn invariant_harmonic_brute(factors: &[(u64, Vec<u64>)], j: u32, m: usize) -> u64 {
    let top = monomials_by_charge(j, m);
    let low = if j >= 2 { monomials_by_charge(j - 2, m) } else { BTreeMap::new() };
    let mut dim = 0u64;
    for (charge, monos) in &top {
        if !charge_invariant(factors, charge) {
            continue;
        }
        let targets = low.get(charge).cloned().unwrap_or_default();
        if targets.is_empty() {
            dim += monos.len() as u64;
            continue;
        }
        let index: BTreeMap<&Vec<u32>, usize> = targets.iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut a = RationalMatrix::zeros(targets.len(), monos.len());
        for (c, mono) in monos.iter().enumerate() {
            for i in 0..m {
                let (p, q) = (mono[i], mono[m + i]);
                if p > 0 && q > 0 {
                    let mut t = mono.clone();
                    t[i] -= 1;
                    t[m + i] -= 1;
                    let r = index[&t];
                    let v = a.get(r, c) + rat(i64::from(p * q));
                    a.set(r, c, v);
                }
            }
        }
        dim += (monos.len() - rank(&a)) as u64;
    }
    dim
}

type Poly = BTreeMap<Vec<u32>, i128>;

fn add_term(p: &mut Poly, e: Vec<u32>, c: i128) {
    if c == 0 {
        return;
    }
    let entry = p.entry(e.clone()).or_insert(0);
    *entry += c;
    if *entry == 0 {
        p.remove(&e);
    }
}

/// `x_i ∂_k − x_k ∂_i`, which is tangent to every sphere.
fn rotation(p: &Poly, i: usize, k: usize) -> Poly {
    let mut out = Poly::new();
    for (e, &c) in p {
        for (mul, diff, sign) in [(i, k, 1i128), (k, i, -1i128)] {
            if e[diff] > 0 {
                let mut f = e.clone();
                let c2 = c * i128::from(f[diff]) * sign;
                f[diff] -= 1;
                f[mul] += 1;
                add_term(&mut out, f, c2);
            }
        }
    }
    out
}

/// Eigenvalue of the sphere Laplacian `Σ_{i<k} L_{ik}²` on the harmonic
/// polynomial `Re (x_1 + i x_2)^j` of `R^{2m}`.
pub fn eigenvalue_oracle(j: u32, m: u32) -> i64 {
    let n = 2 * m as usize;
    let mut p = Poly::new();
    let mut binom: i128 = 1;
    for t in 0..=j {
        if t % 2 == 0 {
            let mut e = vec![0u32; n];
            e[0] = j - t;
            e[1] = t;
            let sign = if (t / 2) % 2 == 0 { 1 } else { -1 };
            add_term(&mut p, e, sign * binom);
        }
        binom = binom * i128::from(j - t) / i128::from(t + 1);
    }
    let mut total = Poly::new();
    for i in 0..n {
        for k in i + 1..n {
            for (e, c) in rotation(&rotation(&p, i, k), i, k) {
                add_term(&mut total, e, c);
            }
        }
    }
    let (e0, c0) = p.iter().next().expect("nonzero polynomial");
    let lambda = total.get(e0).copied().unwrap_or(0) / c0;
    assert!(
        p.iter().all(|(e, c)| total.get(e).copied().unwrap_or(0) == lambda * c)
            && total.keys().all(|e| p.contains_key(e)),
        "not an eigenfunction"
    );
    i64::try_from(lambda).expect("small eigenvalue")
}

/// Random `n × n` unimodular matrix as a product of elementary moves.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..6 {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        if n > 1 {
            while j == i {
                j = rng.gen_range(0..n);
            }
        }
        match rng.gen_range(0..3) {
            0 if i != j => {
                let c = rng.gen_range(-2..=2);
                for r in 0..n {
                    u[r][i] += c * u[r][j];
                }
            }
            1 => {
                for r in 0..n {
                    u[r].swap(i, j);
                }
            }
            _ => {
                for r in 0..n {
                    u[r][i] = -u[r][i];
                }
            }
        }
    }
    u
}

pub fn mat_vec_i64(u: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    u.iter().map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
}

/// Centroid of a convex polygon given in counterclockwise or clockwise order.
pub fn shoelace_centroid(poly: &[Vec<Rational>]) -> Vec<Rational> {
    let n = poly.len();
    let mut area2 = Rational::zero();
    let mut cx = Rational::zero();
    let mut cy = Rational::zero();
    for i in 0..n {
        let (p, q) = (&poly[i], &poly[(i + 1) % n]);
        let cross = &p[0] * &q[1] - &q[0] * &p[1];
        cx += (&p[0] + &q[0]) * &cross;
        cy += (&p[1] + &q[1]) * &cross;
        area2 += cross;
    }
    let six_a = area2 * rat(3);
    vec![cx / &six_a, cy / &six_a]
}

/// Angular order around an interior point, by exact quadrant and cross tests.
pub fn sort_around(points: &mut [Vec<Rational>], center: &[Rational]) {
    let half = |p: &Vec<Rational>| {
        let (x, y) = (&p[0] - &center[0], &p[1] - &center[1]);
        if y.is_positive() || (y.is_zero() && x.is_positive()) {
            0
        } else {
            1
        }
    };
    points.sort_by(|a, b| {
        half(a).cmp(&half(b)).then_with(|| {
            let (ax, ay) = (&a[0] - &center[0], &a[1] - &center[1]);
            let (bx, by) = (&b[0] - &center[0], &b[1] - &center[1]);
            let cross = ax * by - ay * bx;
            Rational::zero().cmp(&cross)
        })
    });
}
