//! Graded maps between holonomy algebras induced by maps of generators.

use std::collections::HashMap;

use crate::dense;
use crate::error::{Error, Result};
use crate::lattice::Arrangement;
use crate::par::Exec;
use crate::sparse::{Accumulator, SparseVec};

use super::{Holonomy, Options};

/// Per-degree matrices, stored as the image of each source generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedLinearMap {
    /// `images[r - 1][i]`: image of generator `i` of the source `H_r`.
    pub images: Vec<Vec<SparseVec>>,
    pub source_orders: Vec<Vec<u64>>,
    pub target_orders: Vec<Vec<u64>>,
}

impl GradedLinearMap {
    pub fn max_degree(&self) -> usize {
        self.images.len()
    }

    fn check(&self, r: usize) -> Result<()> {
        if r == 0 || r > self.images.len() {
            return Err(Error::DegreeNotComputed {
                requested: r,
                available: self.images.len(),
            });
        }
        Ok(())
    }

    pub fn images(&self, r: usize) -> Result<&[SparseVec]> {
        self.check(r)?;
        Ok(&self.images[r - 1])
    }

    pub fn source_dim(&self, r: usize) -> Result<usize> {
        self.check(r)?;
        Ok(self.source_orders[r - 1].len())
    }

    pub fn target_dim(&self, r: usize) -> Result<usize> {
        self.check(r)?;
        Ok(self.target_orders[r - 1].len())
    }

    /// Dense matrix with one row per target generator and one column per
    /// source generator.
    pub fn matrix(&self, r: usize) -> Result<Vec<Vec<i64>>> {
        let (rows, cols) = (self.target_dim(r)?, self.source_dim(r)?);
        let mut m = vec![vec![0; cols]; rows];
        for (j, img) in self.images[r - 1].iter().enumerate() {
            for (i, v) in img.iter() {
                m[i][j] = v;
            }
        }
        Ok(m)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GradedLinearMap) -> Result<GradedLinearMap> {
        let top = self.max_degree().min(next.max_degree());
        let mut images = Vec::with_capacity(top);
        for r in 1..=top {
            if self.target_orders[r - 1] != next.source_orders[r - 1] {
                return Err(Error::InvalidInput(format!("maps do not compose in degree {r}")));
            }
            let orders = &next.target_orders[r - 1];
            let mut acc = Accumulator::new(orders.len());
            let mut out = Vec::new();
            for img in &self.images[r - 1] {
                for (l, v) in img.iter() {
                    acc.add_scaled(&next.images[r - 1][l], v)?;
                }
                out.push(acc.take().reduce_mod(orders));
            }
            images.push(out);
        }
        Ok(GradedLinearMap {
            images,
            source_orders: self.source_orders[..top].to_vec(),
            target_orders: next.target_orders[..top].to_vec(),
        })
    }

    pub fn is_identity(&self, r: usize) -> Result<bool> {
        self.check(r)?;
        if self.source_orders[r - 1] != self.target_orders[r - 1] {
            return Ok(false);
        }
        Ok(self.images[r - 1]
            .iter()
            .enumerate()
            .all(|(i, v)| *v == SparseVec::unit(i).reduce_mod(&self.target_orders[r - 1])))
    }

    pub fn is_zero(&self, r: usize) -> Result<bool> {
        Ok(self.images(r)?.iter().all(SparseVec::is_zero))
    }

    pub fn is_square(&self, r: usize) -> Result<bool> {
        Ok(self.source_dim(r)? == self.target_dim(r)?)
    }

    pub fn rank_q(&self, r: usize) -> Result<usize> {
        Ok(dense::rank(&self.matrix(r)?))
    }

    /// Square and of full rank over the rationals.
    pub fn is_invertible_q(&self, r: usize) -> Result<bool> {
        Ok(self.is_square(r)? && self.rank_q(r)? == self.source_dim(r)?)
    }

    /// Square with determinant ±1.
    pub fn is_unimodular(&self, r: usize) -> Result<bool> {
        Ok(self.is_square(r)? && dense::is_unimodular(&self.matrix(r)?))
    }
}

/// The map `H(source) -> H(target)` sending `x_c` to `x_{letters[c]}` (or 0).
///
/// Every relation of the source presentation is checked to map to zero, so a
/// returned map is well defined.
pub fn induced_map(source: &Holonomy, target: &Holonomy, letters: &[Option<usize>]) -> Result<GradedLinearMap> {
    induced_map_with(source, target, letters, Exec::default())
}

pub fn induced_map_with(
    source: &Holonomy,
    target: &Holonomy,
    letters: &[Option<usize>],
    exec: Exec,
) -> Result<GradedLinearMap> {
    if letters.len() != source.b1() {
        return Err(Error::AlphabetMismatch(letters.len(), source.b1()));
    }
    for &l in letters.iter().flatten() {
        if l >= target.b1() {
            return Err(Error::OutOfRange {
                index: l,
                size: target.b1(),
            });
        }
    }
    let top = source.max_degree().min(target.max_degree());
    let first: Vec<SparseVec> = letters
        .iter()
        .map(|l| l.map(SparseVec::unit).unwrap_or_default())
        .collect();
    let mut images = vec![first];
    for n in 2..=top {
        let sp = source.piece(n)?;
        let tp = target.piece(n)?;
        let mprev = source.dim(n - 1)?;
        let prev = &images[n - 2];
        let tensor_images: Vec<Result<SparseVec>> = exec.map_range(source.b1() * mprev, |idx| {
            let (c, k) = (idx / mprev, idx % mprev);
            match letters[c] {
                Some(tc) => target.ad(n, tc, &prev[k]),
                None => Ok(SparseVec::new()),
            }
        });
        let tensor_images = tensor_images.into_iter().collect::<Result<Vec<_>>>()?;
        let apply = |v: &SparseVec| -> Result<SparseVec> {
            let mut acc = Accumulator::new(tp.dim());
            for (idx, x) in v.iter() {
                acc.add_scaled(&tensor_images[idx], x)?;
            }
            Ok(acc.take().reduce_mod(&tp.orders))
        };
        let failures: Vec<Result<bool>> = exec.map(&sp.relations, |row| apply(row).map(|v| !v.is_zero()));
        for (i, f) in failures.into_iter().enumerate() {
            if f? {
                return Err(Error::Certificate {
                    degree: n,
                    reason: format!("relation {i} does not map to zero"),
                });
            }
        }
        let out = sp.defs.iter().map(apply).collect::<Result<Vec<_>>>()?;
        images.push(out);
    }
    Ok(GradedLinearMap {
        images,
        source_orders: (1..=top).map(|r| source.piece(r).map(|p| p.orders.clone())).collect::<Result<_>>()?,
        target_orders: (1..=top).map(|r| target.piece(r).map(|p| p.orders.clone())).collect::<Result<_>>()?,
    })
}

/// `H(π_B)`: keeps the hyperplanes of `ids`, kills the others. `target` must
/// be the holonomy of the restriction to `ids`.
pub fn projection_map(source: &Holonomy, target: &Holonomy, ids: &[usize]) -> Result<GradedLinearMap> {
    let mut keep = ids.to_vec();
    keep.sort_unstable();
    keep.dedup();
    if keep.len() != target.b1() {
        return Err(Error::AlphabetMismatch(keep.len(), target.b1()));
    }
    let mut letters = vec![None; source.b1()];
    for (k, &h) in keep.iter().enumerate() {
        if h >= source.b1() {
            return Err(Error::OutOfRange {
                index: h,
                size: source.b1(),
            });
        }
        letters[h] = Some(k);
    }
    induced_map(source, target, &letters)
}

/// `H(ι_X)`: the localization at a flat with the given members, into the
/// ambient arrangement.
pub fn inclusion_map(local: &Holonomy, ambient: &Holonomy, members: &[usize]) -> Result<GradedLinearMap> {
    let mut m = members.to_vec();
    m.sort_unstable();
    let letters: Vec<Option<usize>> = m.into_iter().map(Some).collect();
    induced_map(local, ambient, &letters)
}

/// Holonomy of the localizations, one per flat, shared by flat size.
pub struct Localizations {
    by_size: HashMap<usize, Holonomy>,
}

impl Localizations {
    pub fn new(a: &Arrangement, opts: &Options) -> Result<Self> {
        let mut by_size = HashMap::new();
        for f in &a.flats {
            let k = f.members.len();
            if let std::collections::hash_map::Entry::Vacant(e) = by_size.entry(k) {
                let pencil = a.localization(f)?;
                e.insert(Holonomy::compute(&pencil, opts)?);
            }
        }
        Ok(Localizations { by_size })
    }

    pub fn get(&self, size: usize) -> Option<&Holonomy> {
        self.by_size.get(&size)
    }
}

/// The projections onto all localizations, stacked in canonical flat order.
pub fn pi_assembled(a: &Arrangement, hol: &Holonomy, locs: &Localizations) -> Result<GradedLinearMap> {
    let top = hol.max_degree();
    let mut images: Vec<Vec<SparseVec>> = (1..=top)
        .map(|r| hol.dim(r).map(|d| vec![SparseVec::new(); d]))
        .collect::<Result<_>>()?;
    let mut target_orders: Vec<Vec<u64>> = vec![Vec::new(); top];
    for f in &a.flats {
        let local = locs
            .get(f.members.len())
            .ok_or_else(|| Error::NotAFlat(f.members.clone()))?;
        let p = projection_map(hol, local, &f.members)?;
        if p.max_degree() < top {
            return Err(Error::DegreeNotComputed {
                requested: top,
                available: p.max_degree(),
            });
        }
        for r in 1..=top {
            let offset = target_orders[r - 1].len();
            for (i, img) in p.images[r - 1].iter().enumerate() {
                images[r - 1][i] = images[r - 1][i].add(&img.shifted(offset))?;
            }
            target_orders[r - 1].extend_from_slice(&p.target_orders[r - 1]);
        }
    }
    Ok(GradedLinearMap {
        images,
        source_orders: (1..=top).map(|r| hol.piece(r).map(|p| p.orders.clone())).collect::<Result<_>>()?,
        target_orders,
    })
}
