//! Exact linear algebra over the integers and rationals: fraction-free
//! (Bareiss) elimination for ranks and determinants, and Gauss-Jordan
//! inversion over the rationals.

// indexed loops over both halves of an augmented matrix read better than
// split iterators here
#![allow(clippy::needless_range_loop)]

use num_traits::{One, Zero};

use crate::error::Error;
use crate::exactnum::{BigInt, BigRat};
use crate::Result;

/// Rank of an integer matrix by fraction-free elimination with column
/// pivoting. Intermediate entries stay minors of the input, so every
/// division is exact and coefficient growth is polynomial.
pub fn bareiss_rank(mut m: Vec<Vec<BigInt>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;

    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = (rank..rows).find(|&r| !m[r][col].is_zero());
        let Some(pivot) = pivot else { continue };
        m.swap(rank, pivot);

        for r in rank + 1..rows {
            for c in col + 1..cols {
                let num = &m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c];
                m[r][c] = num / &prev;
            }
            m[r][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    rank
}

/// Determinant of a square integer matrix, Bareiss one-step elimination.
pub fn bareiss_det(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    debug_assert!(m.iter().all(|row| row.len() == n));
    let mut prev = BigInt::one();
    let mut sign = false;

    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            let Some(pivot) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return BigInt::zero();
            };
            m.swap(k, pivot);
            sign = !sign;
        }
        for r in k + 1..n {
            for c in k + 1..n {
                let num = &m[k][k] * &m[r][c] - &m[r][k] * &m[k][c];
                m[r][c] = num / &prev;
            }
            m[r][k] = BigInt::zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if sign {
        -det
    } else {
        det
    }
}

/// Scale each row by the lcm of its denominators, giving an integer matrix
/// with the same row space (and hence the same rank).
pub fn rows_to_integer(m: &[Vec<BigRat>]) -> Vec<Vec<BigInt>> {
    m.iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect()
}

/// Exact inverse of a square rational matrix by Gauss-Jordan elimination.
pub fn invert(m: &[Vec<BigRat>]) -> Result<Vec<Vec<BigRat>>> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::Invalid("matrix is not square".into()));
    }
    let mut work: Vec<Vec<BigRat>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| {
                if i == j {
                    BigRat::one()
                } else {
                    BigRat::zero()
                }
            }));
            r
        })
        .collect();

    for col in 0..n {
        let pivot = (col..n).find(|&r| !work[r][col].is_zero());
        let Some(pivot) = pivot else {
            return Err(Error::SingularMatrix);
        };
        work.swap(col, pivot);
        let inv = work[col][col].recip();
        for c in 0..2 * n {
            work[col][c] = &work[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || work[r][col].is_zero() {
                continue;
            }
            let factor = work[r][col].clone();
            for c in 0..2 * n {
                let delta = &factor * &work[col][c];
                work[r][c] = &work[r][c] - &delta;
            }
        }
    }
    Ok(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant of a rational matrix via row scaling and Bareiss.
pub fn det_rat(m: &[Vec<BigRat>]) -> BigRat {
    let n = m.len();
    if n == 0 {
        return BigRat::one();
    }
    let mut scale = BigRat::one();
    let int_rows: Vec<Vec<BigInt>> = m
        .iter()
        .map(|row| {
            let mut lcm = BigInt::one();
            for x in row {
                lcm = num_integer::lcm(lcm, x.denom().clone());
            }
            scale = &scale * &BigRat::from(lcm.clone());
            row.iter()
                .map(|x| x.numer() * (&lcm / x.denom()))
                .collect()
        })
        .collect();
    BigRat::from(bareiss_det(int_rows)) / scale
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int_matrix(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
            .collect()
    }

    fn rat_matrix(rows: &[&[i64]]) -> Vec<Vec<BigRat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| BigRat::from(BigInt::from(x))).collect())
            .collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let m = int_matrix(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(bareiss_rank(m), 2);
    }

    #[test]
    fn rank_with_zero_leading_column() {
        let m = int_matrix(&[&[0, 1, 0], &[0, 0, 2], &[0, 3, 1]]);
        assert_eq!(bareiss_rank(m), 2);
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let m = int_matrix(&[&[1, 1, 1], &[2, 1, 1], &[1, -1, 1]]);
        assert_eq!(bareiss_det(m), BigInt::from(-2));
    }

    #[test]
    fn det_with_zero_pivot() {
        let m = int_matrix(&[&[0, 1], &[1, 0]]);
        assert_eq!(bareiss_det(m), BigInt::from(-1));
    }

    #[test]
    fn inverse_round_trip() {
        let m = rat_matrix(&[&[1, 1, 1], &[2, 1, 1], &[1, -1, 1]]);
        let inv = invert(&m).unwrap();
        // m * inv = identity
        for i in 0..3 {
            for j in 0..3 {
                let mut acc = BigRat::zero();
                for k in 0..3 {
                    acc = &acc + &(&m[i][k] * &inv[k][j]);
                }
                let expected = if i == j { BigRat::one() } else { BigRat::zero() };
                assert_eq!(acc, expected);
            }
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        let m = rat_matrix(&[&[1, 2], &[2, 4]]);
        assert_eq!(invert(&m), Err(Error::SingularMatrix));
    }
}
