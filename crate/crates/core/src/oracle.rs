//! Brute-force holonomy ranks through the enveloping algebra.
//!
//! The enveloping algebra of the holonomy Lie algebra is the tensor algebra on
//! the hyperplanes modulo `x_H s_X - s_X x_H` (`s_X` the sum over a flat).
//! Its graded dimensions are computed by exact rational elimination on all
//! words, and the holonomy ranks are read off the Poincaré–Birkhoff–Witt
//! product. Nothing here shares code with the holonomy module.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::lattice::Arrangement;
use crate::par::Exec;

type Row = Vec<(usize, BigRational)>;

/// Degree-2 relations as `(word index p*n + q, coefficient)` lists.
fn associative_relations(a: &Arrangement) -> Vec<Vec<(usize, i64)>> {
    let n = a.b1();
    let mut out = Vec::new();
    for f in &a.flats {
        let members = if f.members.len() == 2 {
            &f.members[..1]
        } else {
            &f.members[..]
        };
        for &h in members {
            let mut rel: Vec<(usize, i64)> = Vec::new();
            for &g in &f.members {
                if g != h {
                    rel.push((h * n + g, 1));
                    rel.push((g * n + h, -1));
                }
            }
            rel.sort_unstable();
            out.push(rel);
        }
    }
    out
}

fn sub_scaled(row: &Row, pivot: &Row, k: &BigRational) -> Row {
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (0, 0);
    while i < row.len() || j < pivot.len() {
        if j == pivot.len() || (i < row.len() && row[i].0 < pivot[j].0) {
            out.push(row[i].clone());
            i += 1;
        } else if i == row.len() || pivot[j].0 < row[i].0 {
            out.push((pivot[j].0, -(k * &pivot[j].1)));
            j += 1;
        } else {
            let v = &row[i].1 - k * &pivot[j].1;
            if !v.is_zero() {
                out.push((row[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Rank over the rationals by leading-term elimination.
pub fn rational_rank(ncols: usize, rows: Vec<Row>) -> usize {
    let mut pivots: Vec<Option<Row>> = vec![None; ncols];
    let mut rank = 0;
    for mut row in rows {
        while let Some((lead, c)) = row.last().cloned() {
            match &pivots[lead] {
                Some(p) => row = sub_scaled(&row, p, &c),
                None => {
                    let inv = c.recip();
                    for e in row.iter_mut() {
                        e.1 = &e.1 * &inv;
                    }
                    pivots[lead] = Some(row);
                    rank += 1;
                    break;
                }
            }
        }
    }
    rank
}

/// Dimensions `a_0, .., a_{r_max}` of the quadratic algebra.
pub fn quadratic_algebra_dims(a: &Arrangement, r_max: usize, guard: u128) -> Result<Vec<u128>> {
    quadratic_algebra_dims_with(a, r_max, guard, Exec::default())
}

pub fn quadratic_algebra_dims_with(a: &Arrangement, r_max: usize, guard: u128, exec: Exec) -> Result<Vec<u128>> {
    let n = a.b1();
    let mut sizes = vec![1u128];
    for r in 1..=r_max {
        let s = sizes[r - 1].checked_mul(n as u128).ok_or(Error::Overflow)?;
        if s > guard {
            return Err(Error::DegreeCap {
                degree: r,
                dim: s,
                limit: guard,
            });
        }
        sizes.push(s);
    }
    let rels = associative_relations(a);
    let dims: Vec<u128> = exec.map_range(r_max + 1, |r| {
        if r < 2 {
            return sizes[r];
        }
        let total = sizes[r] as usize;
        let mut rows = Vec::new();
        for left in 0..=r - 2 {
            let right = r - 2 - left;
            let (nl, nr) = (sizes[left] as usize, sizes[right] as usize);
            for u in 0..nl {
                for v in 0..nr {
                    for rel in &rels {
                        let row: Row = rel
                            .iter()
                            .map(|&(w, c)| ((u * n * n + w) * nr + v, BigRational::from_integer(BigInt::from(c))))
                            .collect();
                        rows.push(row);
                    }
                }
            }
        }
        sizes[r] - rational_rank(total, rows) as u128
    });
    Ok(dims)
}

/// Reads `h_1, .., h_{r_max}` off `Σ a_r t^r = ∏ (1 - t^r)^{-h_r}`.
pub fn holonomy_dims_from_hilbert(dims: &[u128]) -> Result<Vec<u128>> {
    if dims.first() != Some(&1) {
        return Err(Error::InvalidInput("the series must start with 1".into()));
    }
    let r_max = dims.len() - 1;
    let mut running: Vec<BigInt> = dims.iter().map(|&d| BigInt::from(d)).collect();
    let mut out = Vec::with_capacity(r_max);
    for r in 1..=r_max {
        let h = running[r].clone();
        if h.is_negative() {
            return Err(Error::NegativeExtraction {
                degree: r,
                value: h.to_i128().unwrap_or(i128::MIN),
            });
        }
        // Multiply by (1 - t^r)^h, one factor at a time.
        let times = h.to_u128().ok_or(Error::Overflow)?;
        let mut k = BigInt::one();
        let mut factor = vec![BigInt::zero(); r_max + 1];
        factor[0] = BigInt::one();
        // Binomial expansion of (1 - t^r)^h up to t^{r_max}.
        let mut j = 1u128;
        while (j as usize) * r <= r_max && j <= times {
            k = k * (&h - BigInt::from(j - 1)) / BigInt::from(j);
            factor[j as usize * r] = if j % 2 == 1 { -k.clone() } else { k.clone() };
            j += 1;
        }
        let mut next = vec![BigInt::zero(); r_max + 1];
        for (i, x) in running.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (d, y) in factor.iter().enumerate().take(r_max + 1 - i) {
                if !y.is_zero() {
                    next[i + d] += x * y;
                }
            }
        }
        running = next;
        out.push(times);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freelie::witt_rank;

    #[test]
    fn pencil_of_two_is_polynomial_ring() {
        let a = Arrangement::from_flats(2, &[]).unwrap();
        let dims = quadratic_algebra_dims(&a, 4, 1 << 20).unwrap();
        assert_eq!(dims, vec![1, 2, 3, 4, 5]);
        assert_eq!(holonomy_dims_from_hilbert(&dims).unwrap(), vec![2, 0, 0, 0]);
    }

    #[test]
    fn pencil_of_three() {
        let a = Arrangement::from_flats(3, &[vec![0, 1, 2]]).unwrap();
        let dims = quadratic_algebra_dims(&a, 4, 1 << 20).unwrap();
        assert_eq!(&dims[..4], &[1, 3, 7, 15]);
        assert_eq!(holonomy_dims_from_hilbert(&dims).unwrap(), vec![3, 1, 2, 3]);
    }

    #[test]
    fn free_associative_algebra() {
        for n in 1..4u128 {
            let dims: Vec<u128> = (0..7).map(|r| n.pow(r)).collect();
            let h = holonomy_dims_from_hilbert(&dims).unwrap();
            let expected: Vec<u128> = (1..7).map(|r| witt_rank(n as usize, r)).collect();
            assert_eq!(h, expected);
        }
    }

    #[test]
    fn negative_extraction_is_an_error() {
        assert!(matches!(
            holonomy_dims_from_hilbert(&[1, 1, 0]),
            Err(Error::NegativeExtraction { degree: 2, .. })
        ));
    }
}
