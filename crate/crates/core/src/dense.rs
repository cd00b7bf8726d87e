//! Exact dense linear algebra over the integers.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Fraction-free elimination; returns the rank and, for square input, the
/// determinant.
fn bareiss(rows: &[Vec<i64>]) -> (usize, Option<BigInt>) {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut m: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
        .collect();
    let mut prev = BigInt::one();
    let mut sign = 1;
    let mut rank = 0;
    for col in 0..ncols {
        if rank == nrows {
            break;
        }
        let Some(p) = (rank..nrows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        for i in rank + 1..nrows {
            for j in col + 1..ncols {
                let v = (&m[rank][col] * &m[i][j] - &m[i][col] * &m[rank][j]) / &prev;
                m[i][j] = v;
            }
            m[i][col] = BigInt::zero();
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    let det = (nrows == ncols).then(|| {
        if rank < nrows {
            BigInt::zero()
        } else if nrows == 0 {
            BigInt::one()
        } else {
            prev * sign
        }
    });
    (rank, det)
}

pub fn rank(rows: &[Vec<i64>]) -> usize {
    bareiss(rows).0
}

pub fn determinant(rows: &[Vec<i64>]) -> Option<BigInt> {
    bareiss(rows).1
}

pub fn is_unimodular(rows: &[Vec<i64>]) -> bool {
    determinant(rows).is_some_and(|d| d.abs().is_one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&[vec![2, 1], vec![1, 1]]), Some(BigInt::from(1)));
        assert_eq!(determinant(&[vec![0, 1], vec![1, 0]]), Some(BigInt::from(-1)));
        assert_eq!(rank(&[vec![1, 2, 3], vec![2, 4, 6]]), 1);
        assert_eq!(
            determinant(&[vec![2, 0, 1], vec![1, 3, 2], vec![1, 1, 1]]),
            Some(BigInt::from(0))
        );
        assert!(!is_unimodular(&[vec![2]]));
    }
}
