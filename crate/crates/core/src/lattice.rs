//! Arrangements through their rank-2 intersection data.

use std::collections::{BTreeSet, HashMap};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Hyperplane {
    pub id: usize,
    /// Primitive, first nonzero entry positive.
    pub normal: Option<Vec<i64>>,
}

/// A codimension-2 flat, given by the hyperplanes containing it.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Rank2Flat {
    pub members: Vec<usize>,
    pub mu: usize,
}

impl Rank2Flat {
    pub fn new(mut members: Vec<usize>) -> Self {
        members.sort_unstable();
        members.dedup();
        let mu = members.len().saturating_sub(1);
        Rank2Flat { members, mu }
    }

    pub fn contains(&self, h: usize) -> bool {
        self.members.binary_search(&h).is_ok()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrangement {
    pub hyperplanes: Vec<Hyperplane>,
    pub flats: Vec<Rank2Flat>,
    pub label: Option<String>,
}

fn canonical_order(flats: &mut [Rank2Flat]) {
    flats.sort_by(|a, b| {
        b.members
            .len()
            .cmp(&a.members.len())
            .then_with(|| a.members.cmp(&b.members))
    });
}

/// Primitive, sign-normalized copy of a normal vector.
pub fn normalize_normal(v: &[i64]) -> Option<Vec<i64>> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g == 0 {
        return None;
    }
    let sign = if v.iter().find(|&&x| x != 0).copied().unwrap_or(1) < 0 { -1 } else { 1 };
    Some(v.iter().map(|&x| sign * x / g).collect())
}

fn primitive(row: &mut [i128]) {
    let g = row.iter().fold(0i128, |g, &x| g.gcd(&x));
    if g > 1 {
        for x in row.iter_mut() {
            *x /= g;
        }
    }
    if row.iter().find(|&&x| x != 0).copied().unwrap_or(0) < 0 {
        for x in row.iter_mut() {
            *x = -*x;
        }
    }
}

fn mul_sub(a: i128, x: i128, b: i128, y: i128) -> Result<i128> {
    a.checked_mul(x)
        .and_then(|p| b.checked_mul(y).and_then(|q| p.checked_sub(q)))
        .ok_or(Error::Overflow)
}

/// Canonical reduced echelon form of the span of two non-proportional vectors,
/// each row primitive with positive pivot.
fn plane_key(a: &[i64], b: &[i64]) -> Result<Vec<i128>> {
    let n = a.len();
    let mut r0: Vec<i128> = a.iter().map(|&x| x as i128).collect();
    let mut r1: Vec<i128> = b.iter().map(|&x| x as i128).collect();
    let p = (0..n).find(|&i| r0[i] != 0 || r1[i] != 0).ok_or(Error::Overflow)?;
    if r0[p] == 0 {
        std::mem::swap(&mut r0, &mut r1);
    }
    let (ap, bp) = (r0[p], r1[p]);
    for i in 0..n {
        r1[i] = mul_sub(ap, r1[i], bp, r0[i])?;
    }
    primitive(&mut r1);
    let q = (0..n).find(|&i| r1[i] != 0).ok_or(Error::Overflow)?;
    let (bq, aq) = (r1[q], r0[q]);
    for i in 0..n {
        r0[i] = mul_sub(bq, r0[i], aq, r1[i])?;
    }
    primitive(&mut r0);
    r0.extend(r1);
    Ok(r0)
}

/// Groups hyperplanes by the rank-2 subspace spanned by pairs of normals.
pub fn compute_rank2_flats(normals: &[Vec<i64>]) -> Result<Vec<Rank2Flat>> {
    let normed = normalize_all(normals)?;
    let n = normed.len();
    let mut groups: HashMap<Vec<i128>, BTreeSet<usize>> = HashMap::new();
    for i in 0..n {
        for j in i + 1..n {
            let key = plane_key(&normed[i], &normed[j])?;
            let members = groups.entry(key).or_default();
            members.insert(i);
            members.insert(j);
        }
    }
    let mut flats: Vec<Rank2Flat> = groups
        .into_values()
        .map(|m| Rank2Flat::new(m.into_iter().collect()))
        .collect();
    canonical_order(&mut flats);
    Ok(flats)
}

fn normalize_all(normals: &[Vec<i64>]) -> Result<Vec<Vec<i64>>> {
    let dim = normals.first().map_or(0, |v| v.len());
    let mut out = Vec::with_capacity(normals.len());
    let mut index: HashMap<Vec<i64>, usize> = HashMap::new();
    for (i, v) in normals.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(i));
        }
        let w = normalize_normal(v).ok_or(Error::ZeroNormal(i))?;
        if let Some(&j) = index.get(&w) {
            return Err(Error::ProportionalNormals(j, i));
        }
        index.insert(w.clone(), i);
        out.push(w);
    }
    Ok(out)
}

impl Arrangement {
    /// Arrangement from integer normals; flats are computed.
    pub fn from_normals(normals: &[Vec<i64>]) -> Result<Self> {
        let flats = compute_rank2_flats(normals)?;
        let normed = normalize_all(normals)?;
        let hyperplanes = normed
            .into_iter()
            .enumerate()
            .map(|(id, v)| Hyperplane { id, normal: Some(v) })
            .collect();
        Ok(Arrangement {
            hyperplanes,
            flats,
            label: None,
        })
    }

    /// Combinatorial arrangement on `n` hyperplanes. Flats of size 2 may be
    /// omitted and are completed.
    pub fn from_flats(n: usize, flats: &[Vec<usize>]) -> Result<Self> {
        let mut covered = vec![vec![false; n]; n];
        let mut out = Vec::new();
        for f in flats {
            let flat = Rank2Flat::new(f.clone());
            if flat.members.len() != f.len() || flat.members.len() < 2 {
                return Err(Error::InvalidInput(format!("bad flat {f:?}")));
            }
            for &h in &flat.members {
                if h >= n {
                    return Err(Error::OutOfRange { index: h, size: n });
                }
            }
            for (a, &x) in flat.members.iter().enumerate() {
                for &y in &flat.members[a + 1..] {
                    if covered[x][y] {
                        return Err(Error::PairCoveredTwice(x, y));
                    }
                    covered[x][y] = true;
                }
            }
            out.push(flat);
        }
        for x in 0..n {
            for y in x + 1..n {
                if !covered[x][y] {
                    out.push(Rank2Flat::new(vec![x, y]));
                }
            }
        }
        canonical_order(&mut out);
        Ok(Arrangement {
            hyperplanes: (0..n).map(|id| Hyperplane { id, normal: None }).collect(),
            flats: out,
            label: None,
        })
    }

    /// Assembles and validates.
    pub fn new(hyperplanes: Vec<Hyperplane>, mut flats: Vec<Rank2Flat>, label: Option<String>) -> Result<Self> {
        canonical_order(&mut flats);
        let a = Arrangement {
            hyperplanes,
            flats,
            label,
        };
        a.validate()?;
        Ok(a)
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn b1(&self) -> usize {
        self.hyperplanes.len()
    }

    pub fn b2(&self) -> usize {
        self.flats.iter().map(|f| f.mu).sum()
    }

    pub fn multi_flats(&self) -> Vec<&Rank2Flat> {
        self.flats.iter().filter(|f| f.members.len() >= 3).collect()
    }

    pub fn normals(&self) -> Option<Vec<Vec<i64>>> {
        self.hyperplanes.iter().map(|h| h.normal.clone()).collect()
    }

    /// Index of the flat containing the pair `{x, y}`.
    pub fn flat_of_pair(&self, x: usize, y: usize) -> Option<usize> {
        self.flats.iter().position(|f| x != y && f.contains(x) && f.contains(y))
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.b1();
        for (i, h) in self.hyperplanes.iter().enumerate() {
            if h.id != i {
                return Err(Error::InvalidInput(format!("hyperplane {i} carries id {}", h.id)));
            }
        }
        let mut covered = vec![vec![false; n]; n];
        for f in &self.flats {
            if f.members.len() < 2 || f.members.windows(2).any(|w| w[0] >= w[1]) {
                return Err(Error::InvalidInput(format!("bad flat {:?}", f.members)));
            }
            if f.mu != f.members.len() - 1 {
                return Err(Error::MuMismatch {
                    members: f.members.clone(),
                    mu: f.mu,
                    expected: f.members.len() - 1,
                });
            }
            for (a, &x) in f.members.iter().enumerate() {
                if x >= n {
                    return Err(Error::OutOfRange { index: x, size: n });
                }
                for &y in &f.members[a + 1..] {
                    if covered[x][y] {
                        return Err(Error::PairCoveredTwice(x, y));
                    }
                    covered[x][y] = true;
                }
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if !covered[x][y] {
                    return Err(Error::PairUncovered(x, y));
                }
            }
        }
        let present = self.hyperplanes.iter().filter(|h| h.normal.is_some()).count();
        if present > 0 {
            let Some(normals) = self.normals() else {
                return Err(Error::InvalidInput("normals given for only some hyperplanes".into()));
            };
            let mut expected = compute_rank2_flats(&normals)?;
            let mut declared = self.flats.clone();
            canonical_order(&mut expected);
            canonical_order(&mut declared);
            if expected != declared {
                return Err(Error::NormalsInconsistent);
            }
        }
        Ok(())
    }

    /// Sub-arrangement on `ids`, reindexed in increasing id order.
    pub fn restrict(&self, ids: &[usize]) -> Result<Arrangement> {
        let n = self.b1();
        let mut keep: Vec<usize> = ids.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if keep.is_empty() {
            return Err(Error::InvalidInput("empty sub-arrangement".into()));
        }
        let mut new_id = vec![usize::MAX; n];
        for (k, &h) in keep.iter().enumerate() {
            if h >= n {
                return Err(Error::OutOfRange { index: h, size: n });
            }
            new_id[h] = k;
        }
        let hyperplanes = keep
            .iter()
            .enumerate()
            .map(|(k, &h)| Hyperplane {
                id: k,
                normal: self.hyperplanes[h].normal.clone(),
            })
            .collect();
        let mut flats: Vec<Rank2Flat> = self
            .flats
            .iter()
            .filter_map(|f| {
                let m: Vec<usize> = f
                    .members
                    .iter()
                    .filter(|&&h| new_id[h] != usize::MAX)
                    .map(|&h| new_id[h])
                    .collect();
                (m.len() >= 2).then(|| Rank2Flat::new(m))
            })
            .collect();
        canonical_order(&mut flats);
        Ok(Arrangement {
            hyperplanes,
            flats,
            label: None,
        })
    }

    /// The pencil of hyperplanes through `x`.
    pub fn localization(&self, x: &Rank2Flat) -> Result<Arrangement> {
        if !self.flats.iter().any(|f| f.members == x.members) {
            return Err(Error::NotAFlat(x.members.clone()));
        }
        self.restrict(&x.members)
    }
}
