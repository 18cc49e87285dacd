use num_traits::{One, Signed, Zero};

use super::{Rational, RationalMatrix};

/// Finds `x` with `M·x = 0` and every `x_j ≥ 1`, or reports that none exists.
///
/// The kernel is a cone, so `x ≥ 1` is as good as `x > 0`. Substituting
/// `x = 1 + y` turns this into the feasibility problem `M·y = −M·1, y ≥ 0`,
/// decided by a phase-one simplex over exact rationals. Bland's rule makes
/// the returned vertex deterministic.
pub fn positive_kernel_witness(m: &RationalMatrix) -> Option<Vec<Rational>> {
    let n = m.cols();
    let ones = vec![Rational::one(); n];
    let rhs: Vec<Rational> = m.mul_vec(&ones).expect("shape").into_iter().map(|x| -x).collect();
    let y = phase_one(m, &rhs)?;
    Some(y.into_iter().map(|v| v + Rational::one()).collect())
}

/// Returns a basic feasible `y ≥ 0` with `A·y = b`, if one exists.
fn phase_one(a: &RationalMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let rows = a.rows();
    let n = a.cols();
    let width = n + rows + 1;
    // tableau rows: [A | I | b] with b made nonnegative
    let mut t: Vec<Vec<Rational>> = (0..rows)
        .map(|i| {
            let flip = b[i].is_negative();
            let mut row = Vec::with_capacity(width);
            for j in 0..n {
                row.push(if flip { -a.get(i, j).clone() } else { a.get(i, j).clone() });
            }
            for k in 0..rows {
                row.push(if k == i { Rational::one() } else { Rational::zero() });
            }
            row.push(b[i].abs());
            row
        })
        .collect();
    let mut basis: Vec<usize> = (n..n + rows).collect();

    // reduced costs for min sum(artificials)
    let mut cost = vec![Rational::zero(); width];
    for row in &t {
        for j in 0..n {
            cost[j] -= &row[j];
        }
        cost[width - 1] -= &row[width - 1];
    }

    while let Some(enter) = (0..n + rows).find(|&j| cost[j].is_negative()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (i, row) in t.iter().enumerate() {
            if !row[enter].is_positive() {
                continue;
            }
            let ratio = &row[width - 1] / &row[enter];
            leave = match leave {
                None => Some((i, ratio)),
                Some((li, lr)) => {
                    if ratio < lr || (ratio == lr && basis[i] < basis[li]) {
                        Some((i, ratio))
                    } else {
                        Some((li, lr))
                    }
                }
            };
        }
        // phase one is bounded below by zero, so some row always qualifies
        let (pivot_row, _) = leave.expect("phase-one objective is bounded");
        pivot(&mut t, &mut cost, pivot_row, enter);
        basis[pivot_row] = enter;
    }

    if !cost[width - 1].is_zero() {
        return None;
    }
    let mut y = vec![Rational::zero(); n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            y[var] = t[i][width - 1].clone();
        }
    }
    Some(y)
}

fn pivot(t: &mut [Vec<Rational>], cost: &mut [Rational], r: usize, c: usize) {
    let inv = t[r][c].recip();
    for x in t[r].iter_mut() {
        *x *= &inv;
    }
    let pivot_row = t[r].clone();
    for (i, row) in t.iter_mut().enumerate() {
        if i == r || row[c].is_zero() {
            continue;
        }
        let f = row[c].clone();
        for (x, p) in row.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
    }
    if !cost[c].is_zero() {
        let f = cost[c].clone();
        for (x, p) in cost.iter_mut().zip(&pivot_row) {
            *x -= &f * p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rat_vec;

    fn assert_witness(m: &RationalMatrix, x: &[Rational]) {
        assert!(m.mul_vec(x).unwrap().iter().all(Zero::is_zero));
        assert!(x.iter().all(|v| *v >= Rational::one()));
    }

    #[test]
    fn surface_examples() {
        let m = RationalMatrix::from_i64_rows(&[&[-1, -1, 1, 1], &[-1, 1, -1, 1]]);
        let x = positive_kernel_witness(&m).unwrap();
        assert_witness(&m, &x);
        assert_eq!(x, rat_vec(&[1, 1, 1, 1]));

        let m = RationalMatrix::from_i64_rows(&[&[1, -1, 0], &[0, -1, 1]]);
        assert_eq!(positive_kernel_witness(&m).unwrap(), rat_vec(&[1, 1, 1]));
    }

    #[test]
    fn all_positive_row_has_no_witness() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        assert_eq!(positive_kernel_witness(&m), None);
    }

    #[test]
    fn needs_pivoting() {
        // x1 = 2 x2 forces a non-unit witness
        let m = RationalMatrix::from_i64_rows(&[&[1, -2]]);
        let x = positive_kernel_witness(&m).unwrap();
        assert_witness(&m, &x);
        assert_eq!(x, rat_vec(&[2, 1]));
    }

    #[test]
    fn redundant_rows_and_empty_shapes() {
        let m = RationalMatrix::from_i64_rows(&[&[1, -1], &[2, -2]]);
        assert_eq!(positive_kernel_witness(&m).unwrap(), rat_vec(&[1, 1]));
        assert_eq!(positive_kernel_witness(&RationalMatrix::zeros(0, 3)).unwrap(), rat_vec(&[1, 1, 1]));
        assert_eq!(positive_kernel_witness(&RationalMatrix::zeros(2, 0)).unwrap(), vec![]);
    }
}
