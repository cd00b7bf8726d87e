//! Sparse integer vectors with overflow-checked arithmetic.

use crate::error::{Error, Result};

/// Sorted list of `(index, value)` pairs, zeros never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SparseVec {
    entries: Vec<(usize, i64)>,
}

impl SparseVec {
    pub fn new() -> Self {
        SparseVec { entries: Vec::new() }
    }

    pub fn unit(index: usize) -> Self {
        SparseVec {
            entries: vec![(index, 1)],
        }
    }

    /// Builds from arbitrary pairs, summing duplicates.
    pub fn from_pairs(mut pairs: Vec<(usize, i64)>) -> Result<Self> {
        pairs.sort_unstable_by_key(|p| p.0);
        let mut entries: Vec<(usize, i64)> = Vec::with_capacity(pairs.len());
        for (i, v) in pairs {
            match entries.last_mut() {
                Some(last) if last.0 == i => {
                    last.1 = last.1.checked_add(v).ok_or(Error::Overflow)?;
                }
                _ => entries.push((i, v)),
            }
        }
        entries.retain(|e| e.1 != 0);
        Ok(SparseVec { entries })
    }

    /// Trusts the caller: indices strictly increasing, values nonzero.
    pub(crate) fn from_sorted(entries: Vec<(usize, i64)>) -> Self {
        debug_assert!(entries.windows(2).all(|w| w[0].0 < w[1].0));
        debug_assert!(entries.iter().all(|e| e.1 != 0));
        SparseVec { entries }
    }

    pub fn from_dense(values: &[i64]) -> Self {
        SparseVec {
            entries: values
                .iter()
                .enumerate()
                .filter(|(_, &v)| v != 0)
                .map(|(i, &v)| (i, v))
                .collect(),
        }
    }

    pub fn to_dense(&self, len: usize) -> Vec<i64> {
        let mut out = vec![0; len];
        for &(i, v) in &self.entries {
            out[i] = v;
        }
        out
    }

    pub fn entries(&self) -> &[(usize, i64)] {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, i64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, index: usize) -> i64 {
        match self.entries.binary_search_by_key(&index, |e| e.0) {
            Ok(p) => self.entries[p].1,
            Err(_) => 0,
        }
    }

    pub fn leading(&self) -> Option<(usize, i64)> {
        self.entries.last().copied()
    }

    pub fn max_abs(&self) -> i64 {
        self.entries.iter().map(|e| e.1.abs()).max().unwrap_or(0)
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        if k == 0 {
            return Ok(SparseVec::new());
        }
        let mut entries = Vec::with_capacity(self.entries.len());
        for &(i, v) in &self.entries {
            entries.push((i, v.checked_mul(k).ok_or(Error::Overflow)?));
        }
        Ok(SparseVec { entries })
    }

    pub fn neg(&self) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|&(i, v)| (i, -v)).collect(),
        }
    }

    /// `self + k * other`.
    pub fn add_scaled(&self, other: &SparseVec, k: i64) -> Result<Self> {
        if k == 0 || other.is_zero() {
            return Ok(self.clone());
        }
        let (a, b) = (&self.entries, &other.entries);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() || j < b.len() {
            if j == b.len() || (i < a.len() && a[i].0 < b[j].0) {
                out.push(a[i]);
                i += 1;
            } else {
                let kb = b[j].1.checked_mul(k).ok_or(Error::Overflow)?;
                if i == a.len() || b[j].0 < a[i].0 {
                    out.push((b[j].0, kb));
                } else {
                    let s = a[i].1.checked_add(kb).ok_or(Error::Overflow)?;
                    if s != 0 {
                        out.push((a[i].0, s));
                    }
                    i += 1;
                }
                j += 1;
            }
        }
        Ok(SparseVec { entries: out })
    }

    pub fn add(&self, other: &SparseVec) -> Result<Self> {
        self.add_scaled(other, 1)
    }

    /// Reduces each coordinate with a positive modulus into `0..d`.
    /// `orders[i] == 0` means the coordinate is free.
    pub fn reduce_mod(&self, orders: &[u64]) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for &(i, v) in &self.entries {
            let d = orders[i];
            let v = if d > 0 { v.rem_euclid(d as i64) } else { v };
            if v != 0 {
                entries.push((i, v));
            }
        }
        SparseVec { entries }
    }

    /// Shifts every index by `offset`.
    pub fn shifted(&self, offset: usize) -> Self {
        SparseVec {
            entries: self.entries.iter().map(|&(i, v)| (i + offset, v)).collect(),
        }
    }
}

/// Dense scratch accumulator for summing many sparse vectors.
pub struct Accumulator {
    values: Vec<i64>,
    touched: Vec<usize>,
    marked: Vec<bool>,
}

impl Accumulator {
    pub fn new(len: usize) -> Self {
        Accumulator {
            values: vec![0; len],
            touched: Vec::new(),
            marked: vec![false; len],
        }
    }

    pub fn add(&mut self, index: usize, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        if !self.marked[index] {
            self.marked[index] = true;
            self.touched.push(index);
        }
        self.values[index] = self.values[index].checked_add(k).ok_or(Error::Overflow)?;
        Ok(())
    }

    pub fn add_scaled(&mut self, v: &SparseVec, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for &(i, x) in v.entries() {
            self.add(i, x.checked_mul(k).ok_or(Error::Overflow)?)?;
        }
        Ok(())
    }

    /// Drains the accumulator into a sparse vector, leaving it zeroed.
    pub fn take(&mut self) -> SparseVec {
        self.touched.sort_unstable();
        let mut entries = Vec::with_capacity(self.touched.len());
        for &i in &self.touched {
            let v = self.values[i];
            if v != 0 {
                entries.push((i, v));
            }
            self.values[i] = 0;
            self.marked[i] = false;
        }
        self.touched.clear();
        SparseVec::from_sorted(entries)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn add_scaled_cancels() {
        let a = SparseVec::from_dense(&[1, 0, 2, 3]);
        let b = SparseVec::from_dense(&[0, 1, 1, 0]);
        let c = a.add_scaled(&b, -2).unwrap();
        assert_eq!(c.to_dense(4), vec![1, -2, 0, 3]);
        assert_eq!(c.add_scaled(&c, -1).unwrap(), SparseVec::new());
    }

    #[test]
    fn overflow_is_reported() {
        let a = SparseVec::from_dense(&[i64::MAX]);
        assert_eq!(a.add_scaled(&a, 1), Err(Error::Overflow));
    }

    #[test]
    fn reduce_mod_drops_multiples() {
        let a = SparseVec::from_dense(&[4, -1, 7]);
        assert_eq!(a.reduce_mod(&[2, 3, 0]).to_dense(3), vec![0, 2, 7]);
    }

    #[test]
    fn accumulator_roundtrip() {
        let mut acc = Accumulator::new(5);
        acc.add_scaled(&SparseVec::from_dense(&[1, 2, 0, 0, 1]), 3).unwrap();
        acc.add(4, -3).unwrap();
        assert_eq!(acc.take().to_dense(5), vec![3, 6, 0, 0, 0]);
        assert!(acc.take().is_zero());
    }
}
