//! Exact dense linear algebra over the rationals.
//!
//! Elimination uses the first non-zero entry of each column as pivot; with exact
//! entries no numerical pivoting strategy is needed.

use num_traits::{Signed, Zero};

use crate::rational::{int, one, zero, Rational};

pub type Matrix = Vec<Vec<Rational>>;

pub fn from_integers(rows: &[Vec<i64>]) -> Matrix {
    rows.iter()
        .map(|row| row.iter().map(|&v| int(v)).collect())
        .collect()
}

/// Solves `a x = b` for square, non-singular `a`. Returns `None` when singular.
pub fn solve(a: &Matrix, b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    assert_eq!(b.len(), n, "right-hand side has wrong length");
    let mut aug: Matrix = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            assert_eq!(row.len(), n, "matrix is not square");
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, pivot);
        let inv = one() / &aug[col][col];
        for entry in aug[col].iter_mut().skip(col) {
            *entry *= &inv;
        }
        for r in 0..n {
            if r == col || aug[r][col].is_zero() {
                continue;
            }
            let factor = aug[r][col].clone();
            for c in col..=n {
                let delta = &factor * &aug[col][c];
                aug[r][c] -= delta;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let mut columns = Vec::with_capacity(n);
    for j in 0..n {
        let mut e = vec![zero(); n];
        e[j] = one();
        columns.push(solve(a, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| columns[j][i].clone()).collect())
            .collect(),
    )
}

pub fn determinant(a: &Matrix) -> Rational {
    let n = a.len();
    let mut m = a.clone();
    let mut det = one();
    for col in 0..n {
        let Some(pivot) = (col..n).find(|&r| !m[r][col].is_zero()) else {
            return zero();
        };
        if pivot != col {
            m.swap(col, pivot);
            det = -det;
        }
        det *= &m[col][col];
        for r in col + 1..n {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[col][col];
            for c in col..n {
                let delta = &factor * &m[col][c];
                m[r][c] -= delta;
            }
        }
    }
    det
}

/// Determinants of the leading principal `k x k` submatrices, `k = 1..=n`.
pub fn leading_principal_minors(a: &Matrix) -> Vec<Rational> {
    (1..=a.len())
        .map(|k| {
            let sub: Matrix = a[..k].iter().map(|row| row[..k].to_vec()).collect();
            determinant(&sub)
        })
        .collect()
}

/// Sylvester's criterion: negative definite iff `(-1)^k det_k > 0` for all k.
/// Returns the index (1-based size) of the first failing minor.
pub fn first_non_negative_definite_minor(a: &Matrix) -> Option<usize> {
    leading_principal_minors(a)
        .iter()
        .enumerate()
        .find(|(i, minor)| {
            let k = i + 1;
            let signed = if k % 2 == 0 {
                (*minor).clone()
            } else {
                -(*minor).clone()
            };
            !signed.is_positive()
        })
        .map(|(i, _)| i + 1)
}

pub fn rank(a: &Matrix) -> usize {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..cols {
        let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        for r in rank + 1..rows {
            if m[r][col].is_zero() {
                continue;
            }
            let factor = &m[r][col] / &m[rank][col];
            for c in col..cols {
                let delta = &factor * &m[rank][c];
                m[r][c] -= delta;
            }
        }
        rank += 1;
    }
    rank
}

pub fn mat_vec(a: &Matrix, x: &[Rational]) -> Vec<Rational> {
    a.iter()
        .map(|row| row.iter().zip(x).map(|(m, v)| m * v).sum())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    fn cartan_a(n: usize) -> Matrix {
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| match i.abs_diff(j) {
                        0 => int(2),
                        1 => int(-1),
                        _ => zero(),
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn cartan_a4_determinant_and_inverse() {
        let a = cartan_a(4);
        assert_eq!(determinant(&a), int(5));
        let inv = inverse(&a).unwrap();
        // (A_n^{-1})_{ij} = min(i,j) (n + 1 - max(i,j)) / (n + 1), 1-based
        for i in 1..=4i64 {
            for j in 1..=4i64 {
                let expected = frac(i.min(j) * (5 - i.max(j)), 5);
                assert_eq!(inv[(i - 1) as usize][(j - 1) as usize], expected);
            }
        }
    }

    #[test]
    fn solve_needs_row_swap() {
        let a = from_integers(&[vec![0, 1], vec![1, 0]]);
        let x = solve(&a, &[int(3), int(4)]).unwrap();
        assert_eq!(x, vec![int(4), int(3)]);
        assert!(solve(&from_integers(&[vec![1, 2], vec![2, 4]]), &[int(1), int(2)]).is_none());
    }

    #[test]
    fn sylvester_detects_failure() {
        let neg: Matrix = cartan_a(3)
            .into_iter()
            .map(|r| r.into_iter().map(|v| -v).collect())
            .collect();
        assert_eq!(first_non_negative_definite_minor(&neg), None);
        // a cycle of three (-2)-curves is only semidefinite
        let cycle = from_integers(&[vec![-2, 1, 1], vec![1, -2, 1], vec![1, 1, -2]]);
        assert_eq!(first_non_negative_definite_minor(&cycle), Some(3));
        assert_eq!(rank(&cycle), 2);
    }
}
