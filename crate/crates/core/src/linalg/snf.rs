use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};
use crate::error::{Error, Result};

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{rows}x{cols} integer matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&x| BigInt::from(x))
            })
            .collect();
        Self { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given integer vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<i64>]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension(format!("every column must have {rows} entries")));
        }
        let cols = columns.len();
        let mut m = Self::zeros(rows, cols);
        for (j, col) in columns.iter().enumerate() {
            for (i, &x) in col.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        Ok(m)
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    fn at(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension("integer matrix product shape".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = a * other.get(k, j);
                    *out.at(i, j) += v;
                }
            }
        }
        Ok(out)
    }

    pub fn to_rational(&self) -> RationalMatrix {
        let data = self.data.iter().cloned().map(Rational::from_integer).collect();
        RationalMatrix::new(self.rows, self.cols, data).expect("shape preserved")
    }

    pub fn determinant(&self) -> Result<BigInt> {
        let det = self.to_rational().determinant()?;
        Ok(det.to_integer())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += c * row[source]
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        for j in 0..self.cols {
            let v = c * self.get(source, j);
            *self.at(target, j) += v;
        }
    }

    /// col[target] += c * col[source]
    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        for i in 0..self.rows {
            let v = c * self.get(i, source);
            *self.at(i, target) += v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            *self.at(i, j) = v;
        }
    }
}

/// `A = u · d · v` with `u`, `v` unimodular and `d` diagonal in Smith form.
///
/// `u_inv` and `v_inv` are carried along so callers never need to invert:
/// `d = u_inv · A · v_inv`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SnfResult {
    pub u: IntMatrix,
    pub d: IntMatrix,
    pub v: IntMatrix,
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
}

impl SnfResult {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.d.rows.min(self.d.cols)).map(|i| self.d.get(i, i).clone()).collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|x| !x.is_zero()).count()
    }
}

struct Reducer {
    a: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Reducer {
    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u_inv.swap_rows(i, j);
        self.u.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v_inv.swap_cols(i, j);
        self.v.swap_rows(i, j);
    }

    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_row(target, source, c);
        self.u_inv.add_row(target, source, c);
        self.u.add_col(source, target, &-c);
    }

    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.a.add_col(target, source, c);
        self.v_inv.add_col(target, source, c);
        self.v.add_row(source, target, &-c);
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        self.u_inv.negate_row(i);
        let n = self.u.rows;
        for r in 0..n {
            let x = -self.u.get(r, i).clone();
            *self.u.at(r, i) = x;
        }
    }

    /// Position of the smallest nonzero |entry| in the trailing block.
    fn min_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.a.rows {
            for j in t..self.a.cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.a.get(bi, bj).abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn reduce_at(&mut self, t: usize) -> bool {
        loop {
            let Some((i, j)) = self.min_entry(t) else {
                return false;
            };
            if i != t {
                self.swap_rows(i, t);
            }
            if j != t {
                self.swap_cols(j, t);
            }
            let mut clean = true;
            for i in t + 1..self.a.rows {
                if self.a.get(i, t).is_zero() {
                    continue;
                }
                let q = self.a.get(i, t).div_floor(self.a.get(t, t));
                self.add_row(i, t, &-q);
                if !self.a.get(i, t).is_zero() {
                    clean = false;
                }
            }
            for j in t + 1..self.a.cols {
                if self.a.get(t, j).is_zero() {
                    continue;
                }
                let q = self.a.get(t, j).div_floor(self.a.get(t, t));
                self.add_col(j, t, &-q);
                if !self.a.get(t, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            let pivot = self.a.get(t, t).clone();
            let offender = (t + 1..self.a.rows).find(|&i| {
                (t + 1..self.a.cols).any(|j| !self.a.get(i, j).is_multiple_of(&pivot))
            });
            match offender {
                Some(i) => self.add_row(t, i, &BigInt::one()),
                None => break,
            }
        }
        if self.a.get(t, t).is_negative() {
            self.negate_row(t);
        }
        true
    }
}

/// Smith normal form of an integer matrix (any shape).
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut r = Reducer {
        a: a.clone(),
        u: IntMatrix::identity(a.rows),
        u_inv: IntMatrix::identity(a.rows),
        v: IntMatrix::identity(a.cols),
        v_inv: IntMatrix::identity(a.cols),
    };
    for t in 0..a.rows.min(a.cols) {
        if !r.reduce_at(t) {
            break;
        }
    }
    SnfResult { u: r.u, d: r.a, v: r.v, u_inv: r.u_inv, v_inv: r.v_inv }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SnfResult {
        let s = smith_normal_form(a);
        assert_eq!(s.u.mul(&s.d).unwrap().mul(&s.v).unwrap(), *a);
        assert_eq!(s.u_inv.mul(a).unwrap().mul(&s.v_inv).unwrap(), s.d);
        assert_eq!(s.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(s.v.determinant().unwrap().abs(), BigInt::one());
        s
    }

    #[test]
    fn diagonal_inputs() {
        let s = check(&IntMatrix::from_i64_rows(&[&[1, 0], &[0, 2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(2)]);
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(2));

        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 2]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::from(2)]);
    }

    #[test]
    fn x1_cone_product_is_three() {
        let s = check(&IntMatrix::from_i64_rows(&[&[-1, 0, -1], &[-1, -3, 1], &[-1, 0, 0]]));
        let product: BigInt = s.diagonal().iter().product();
        assert_eq!(product, BigInt::from(3));
    }

    #[test]
    fn fixes_divisibility() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 0], &[0, 3]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(1), BigInt::from(6)]);
    }

    #[test]
    fn rectangular_and_zero() {
        let s = check(&IntMatrix::from_i64_rows(&[&[2, 4, 6], &[4, 8, 12]]));
        assert_eq!(s.diagonal(), vec![BigInt::from(2), BigInt::zero()]);
        let s = check(&IntMatrix::zeros(2, 3));
        assert_eq!(s.rank(), 0);
    }
}
