//! The ideal `J` degree by degree inside the free Lie algebra.
//!
//! Slow but independent of the presentation route: every degree is a full
//! Lyndon-coordinate computation. Used to cross-check small cases.

use crate::error::{Error, Result};
use crate::freelie::{witt_rank, FreeLie};
use crate::lattice::Arrangement;
use crate::par::Exec;
use crate::smith;
use crate::sparse::SparseVec;

use super::quadratic_relations;

#[derive(Clone, Debug)]
pub struct IdealQuotient {
    pub degree: usize,
    /// Z-basis of `J_r` in `lyndon_basis(b1, r)` coordinates.
    pub rows: Vec<SparseVec>,
    pub rank_q: usize,
    pub torsion: Vec<u64>,
}

fn guard_check(b1: usize, r: usize, guard: u128) -> Result<usize> {
    let dim = witt_rank(b1, r);
    if dim > guard {
        return Err(Error::DegreeCap {
            degree: r,
            dim,
            limit: guard,
        });
    }
    Ok(dim as usize)
}

/// `L_r / J_r` for `2 <= r <= r_max`, with `J_{r+1} = [L_1, J_r]`.
pub fn ideal_quotients(a: &Arrangement, r_max: usize, guard: u128, exec: Exec) -> Result<Vec<IdealQuotient>> {
    let b1 = a.b1();
    let free = FreeLie::new(b1);
    let mut out = Vec::new();
    let dim2 = guard_check(b1, 2, guard)?;
    let mut rows: Vec<SparseVec> = quadratic_relations(a).iter().map(|e| free.to_sparse(e)).collect();
    let mut dim = dim2;
    for r in 2..=r_max {
        if r > 2 {
            dim = guard_check(b1, r, guard)?;
            let prev: Vec<_> = out.last().map(|q: &IdealQuotient| q.rows.clone()).unwrap_or_default();
            let next: Vec<Result<Vec<SparseVec>>> = exec.map(&prev, |row| {
                let e = free.from_sparse(r - 1, row);
                (0..b1)
                    .map(|c| {
                        free.bracket(&crate::freelie::LieElement::generator(c), &e)
                            .map(|b| free.to_sparse(&b))
                    })
                    .collect()
            });
            rows = Vec::new();
            for chunk in next {
                rows.extend(chunk?);
            }
        }
        let q = smith::quotient(dim, &rows)?;
        out.push(IdealQuotient {
            degree: r,
            rank_q: q.free_rank(),
            torsion: q.torsion(),
            rows: q.basis,
        });
    }
    Ok(out)
}

/// Z-basis of `J_r` in Lyndon coordinates.
pub fn ideal_component(a: &Arrangement, r: usize, guard: u128) -> Result<Vec<SparseVec>> {
    if r < 2 {
        return Err(Error::InvalidInput("the ideal starts in degree 2".into()));
    }
    let mut qs = ideal_quotients(a, r, guard, Exec::default())?;
    Ok(qs.pop().map(|q| q.rows).unwrap_or_default())
}
