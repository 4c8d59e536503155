//! Small exact-rational matrix helpers shared by the grading and root-system
//! modules. Everything here is dense and tiny (rank at most 8).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

#[cfg(test)]
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn from_int(n: i64) -> BigRational {
    BigRational::from(BigInt::from(n))
}

/// Exact inverse by Gauss-Jordan elimination. Returns `None` for singular
/// input.
pub fn invert(matrix: &[Vec<BigRational>]) -> Option<Vec<Vec<BigRational>>> {
    let n = matrix.len();
    let mut work: Vec<Vec<BigRational>> = matrix
        .iter()
        .enumerate()
        .map(|(i, row)| {
            assert_eq!(row.len(), n, "matrix must be square");
            let mut extended = row.clone();
            extended.extend((0..n).map(|j| {
                if i == j {
                    BigRational::one()
                } else {
                    BigRational::zero()
                }
            }));
            extended
        })
        .collect();

    for col in 0..n {
        let pivot_row = (col..n).find(|&r| !work[r][col].is_zero())?;
        work.swap(col, pivot_row);
        let pivot = work[col][col].clone();
        for entry in work[col].iter_mut() {
            *entry /= pivot.clone();
        }
        for row in 0..n {
            if row != col && !work[row][col].is_zero() {
                let factor = work[row][col].clone();
                for j in 0..2 * n {
                    let delta = &factor * &work[col][j];
                    work[row][j] -= delta;
                }
            }
        }
    }

    Some(work.into_iter().map(|row| row[n..].to_vec()).collect())
}

pub fn mat_vec_i64(matrix: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    matrix
        .iter()
        .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
        .collect()
}
