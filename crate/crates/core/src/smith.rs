//! Finitely presented abelian groups `Z^n / rowspan(R)`.
//!
//! Rows are first echelonized on unit leading coefficients (the common case for
//! holonomy relations), which eliminates most columns cheaply. The leftover
//! rows whose leading coefficient is not a unit are put in integer echelon form
//! and handed to a dense Smith normal form. The result is a cyclic
//! decomposition together with projection and lift maps.

use std::collections::BinaryHeap;

use crate::error::{Error, Result};
use crate::sparse::SparseVec;

/// Cyclic decomposition of `Z^n / L`.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub ncols: usize,
    /// Order of each output coordinate: 0 for a free summand, `d > 1` for `Z/d`.
    pub orders: Vec<u64>,
    /// Image of each input column, reduced modulo `orders`.
    pub proj: Vec<SparseVec>,
    /// For each output coordinate, an input vector projecting onto it.
    pub lifts: Vec<SparseVec>,
    /// A Z-basis of the relation lattice `L`.
    pub basis: Vec<SparseVec>,
}

impl Quotient {
    pub fn free_rank(&self) -> usize {
        self.orders.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<u64> {
        self.orders.iter().copied().filter(|&d| d > 1).collect()
    }

    /// Projects an arbitrary input vector.
    pub fn project(&self, v: &SparseVec) -> Result<SparseVec> {
        let mut acc = crate::sparse::Accumulator::new(self.orders.len());
        for (i, x) in v.iter() {
            acc.add_scaled(&self.proj[i], x)?;
        }
        Ok(acc.take().reduce_mod(&self.orders))
    }
}

struct Echelon {
    pivots: Vec<Option<SparseVec>>,
    values: Vec<i64>,
    in_heap: Vec<bool>,
}

impl Echelon {
    fn new(ncols: usize) -> Self {
        Echelon {
            pivots: vec![None; ncols],
            values: vec![0; ncols],
            in_heap: vec![false; ncols],
        }
    }

    /// Eliminates every pivot column from `row`.
    fn reduce(&mut self, row: &SparseVec) -> Result<SparseVec> {
        let mut heap = BinaryHeap::with_capacity(row.len());
        for (i, v) in row.iter() {
            self.values[i] = v;
            self.in_heap[i] = true;
            heap.push(i);
        }
        let mut rest = Vec::new();
        let mut failed = false;
        while let Some(c) = heap.pop() {
            let val = self.values[c];
            self.values[c] = 0;
            self.in_heap[c] = false;
            if val == 0 || failed {
                continue;
            }
            match &self.pivots[c] {
                Some(p) => {
                    for &(q, a) in p.entries() {
                        if q == c {
                            continue;
                        }
                        let delta = match val.checked_mul(a) {
                            Some(d) => d,
                            None => {
                                failed = true;
                                break;
                            }
                        };
                        match self.values[q].checked_sub(delta) {
                            Some(s) => self.values[q] = s,
                            None => {
                                failed = true;
                                break;
                            }
                        }
                        if !self.in_heap[q] {
                            self.in_heap[q] = true;
                            heap.push(q);
                        }
                    }
                }
                None => rest.push((c, val)),
            }
        }
        if failed {
            return Err(Error::Overflow);
        }
        rest.reverse();
        Ok(SparseVec::from_sorted(rest))
    }

    /// Tries to install `row` (already reduced) as a unit pivot.
    fn try_insert(&mut self, row: SparseVec) -> Option<SparseVec> {
        let (lead, a) = row.leading()?;
        if a == 1 {
            self.pivots[lead] = Some(row);
            None
        } else if a == -1 {
            self.pivots[lead] = Some(row.neg());
            None
        } else {
            Some(row)
        }
    }
}

fn ext_gcd(a: i64, b: i64) -> (i64, i64, i64) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0.div_euclid(r1);
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 < 0 {
        (r0, s0, t0) = (-r0, -s0, -t0);
    }
    (r0 as i64, s0 as i64, t0 as i64)
}

/// Inserts `row` into an integer echelon form keyed by leading column.
fn echelon_insert(rows: &mut Vec<Option<SparseVec>>, mut row: SparseVec) -> Result<()> {
    loop {
        let Some((lead, a)) = row.leading() else {
            return Ok(());
        };
        let Some(existing) = rows[lead].take() else {
            rows[lead] = Some(if a < 0 { row.neg() } else { row });
            return Ok(());
        };
        let b = existing.leading().map(|e| e.1).unwrap_or(1);
        if a % b == 0 {
            row = row.add_scaled(&existing, -(a / b))?;
            rows[lead] = Some(existing);
        } else {
            let (g, u, v) = ext_gcd(a, b);
            let top = row.scaled(u)?.add_scaled(&existing, v)?;
            let bottom = row.scaled(b / g)?.add_scaled(&existing, -(a / g))?;
            rows[lead] = Some(top);
            row = bottom;
        }
    }
}

struct Reduced {
    echelon: Echelon,
    hard: Vec<SparseVec>,
}

fn reduce_rows(ncols: usize, rows: &[SparseVec]) -> Result<Reduced> {
    let mut ech = Echelon::new(ncols);
    let mut hard = Vec::new();
    for row in rows {
        for &(i, _) in row.entries() {
            if i >= ncols {
                return Err(Error::OutOfRange { index: i, size: ncols });
            }
        }
        let r = ech.reduce(row)?;
        if let Some(h) = ech.try_insert(r) {
            hard.push(h);
        }
    }
    loop {
        let mut changed = false;
        let mut next = Vec::with_capacity(hard.len());
        for row in &hard {
            let r = ech.reduce(row)?;
            if r.is_zero() {
                continue;
            }
            match ech.try_insert(r) {
                Some(h) => next.push(h),
                None => changed = true,
            }
        }
        hard = next;
        if !changed {
            break;
        }
    }
    let mut slots = vec![None; ncols];
    for row in hard {
        echelon_insert(&mut slots, row)?;
    }
    let hard = slots.into_iter().flatten().collect();
    Ok(Reduced { echelon: ech, hard })
}

/// Z-basis of the lattice spanned by `rows` inside `Z^ncols`.
pub fn lattice_basis(ncols: usize, rows: &[SparseVec]) -> Result<Vec<SparseVec>> {
    let red = reduce_rows(ncols, rows)?;
    let mut basis: Vec<SparseVec> = red.echelon.pivots.into_iter().flatten().collect();
    basis.extend(red.hard);
    Ok(basis)
}

/// Rank over the rationals of the span of `rows`.
pub fn rank(ncols: usize, rows: &[SparseVec]) -> Result<usize> {
    Ok(lattice_basis(ncols, rows)?.len())
}

/// Computes the cyclic decomposition of `Z^ncols / span(rows)`.
pub fn quotient(ncols: usize, rows: &[SparseVec]) -> Result<Quotient> {
    let red = reduce_rows(ncols, rows)?;
    let ech = red.echelon;
    let hard = red.hard;

    let mut in_hard = vec![usize::MAX; ncols];
    let mut hard_cols = Vec::new();
    for row in &hard {
        for &(c, _) in row.entries() {
            if in_hard[c] == usize::MAX {
                in_hard[c] = 0;
                hard_cols.push(c);
            }
        }
    }
    hard_cols.sort_unstable();
    for (pos, &c) in hard_cols.iter().enumerate() {
        in_hard[c] = pos;
    }

    let h = hard_cols.len();
    let mut dense = vec![vec![0i128; h]; hard.len()];
    for (r, row) in hard.iter().enumerate() {
        for &(c, v) in row.entries() {
            dense[r][in_hard[c]] = v as i128;
        }
    }
    let snf = smith(dense, h)?;

    // Output coordinates: untouched free columns, then SNF free, then torsion.
    let mut orders = Vec::new();
    let mut lifts = Vec::new();
    let mut col_coord = vec![usize::MAX; ncols];
    for c in 0..ncols {
        if ech.pivots[c].is_none() && in_hard[c] == usize::MAX {
            col_coord[c] = orders.len();
            orders.push(0);
            lifts.push(SparseVec::unit(c));
        }
    }
    let mut snf_coord = vec![usize::MAX; h];
    let k = hard.len();
    let vinv_row = |t: usize| -> Result<SparseVec> {
        let mut pairs = Vec::new();
        for (a, &x) in snf.vinv[t].iter().enumerate() {
            if x != 0 {
                pairs.push((hard_cols[a], i64::try_from(x).map_err(|_| Error::Overflow)?));
            }
        }
        Ok(SparseVec::from_sorted(pairs))
    };
    for t in k..h {
        snf_coord[t] = orders.len();
        orders.push(0);
        lifts.push(vinv_row(t)?);
    }
    for t in 0..k {
        let d = snf.diag[t];
        if d > 1 {
            snf_coord[t] = orders.len();
            orders.push(u64::try_from(d).map_err(|_| Error::Overflow)?);
            lifts.push(vinv_row(t)?);
        }
    }

    // Image of a hard column: its row of V, on the kept SNF coordinates.
    let mut hard_image = Vec::with_capacity(h);
    for a in 0..h {
        let mut pairs = Vec::new();
        for t in 0..h {
            let x = snf.v[a][t];
            if x != 0 && snf_coord[t] != usize::MAX {
                pairs.push((snf_coord[t], i64::try_from(x).map_err(|_| Error::Overflow)?));
            }
        }
        hard_image.push(SparseVec::from_pairs(pairs)?.reduce_mod(&orders));
    }

    let mut proj: Vec<SparseVec> = Vec::with_capacity(ncols);
    for c in 0..ncols {
        let img = if let Some(p) = &ech.pivots[c] {
            let mut acc = crate::sparse::Accumulator::new(orders.len());
            for &(q, a) in p.entries() {
                if q != c {
                    acc.add_scaled(&proj[q], -a)?;
                }
            }
            acc.take().reduce_mod(&orders)
        } else if in_hard[c] != usize::MAX {
            hard_image[in_hard[c]].clone()
        } else {
            SparseVec::unit(col_coord[c])
        };
        proj.push(img);
    }

    let mut basis: Vec<SparseVec> = ech.pivots.into_iter().flatten().collect();
    basis.extend(hard);
    Ok(Quotient {
        ncols,
        orders,
        proj,
        lifts,
        basis,
    })
}

/// Dense Smith normal form `M V = U^{-1} D`; only the column transform is kept.
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
    pub vinv: Vec<Vec<i128>>,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or(Error::Overflow)
}

/// Smith normal form of a dense `rows x ncols` matrix.
/// `diag` lists the nonzero invariant factors (positive, each dividing the next).
pub fn smith(mut m: Vec<Vec<i128>>, ncols: usize) -> Result<Smith> {
    let nrows = m.len();
    let ident = |n: usize| -> Vec<Vec<i128>> {
        (0..n)
            .map(|i| (0..n).map(|j| i128::from(i == j)).collect())
            .collect()
    };
    let mut v = ident(ncols);
    let mut vinv = ident(ncols);
    let mut diag = Vec::new();

    // col_b += k * col_a, mirrored on V and V^{-1}.
    fn col_add(
        m: &mut [Vec<i128>],
        v: &mut [Vec<i128>],
        vinv: &mut [Vec<i128>],
        a: usize,
        b: usize,
        k: i128,
    ) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for row in m.iter_mut().chain(v.iter_mut()) {
            row[b] = ck(row[b].checked_add(ck(k.checked_mul(row[a]))?))?;
        }
        let (ra, rb) = if a < b {
            let (lo, hi) = vinv.split_at_mut(b);
            (&mut lo[a], &hi[0])
        } else {
            let (lo, hi) = vinv.split_at_mut(a);
            (&mut hi[0], &lo[b])
        };
        for (x, y) in ra.iter_mut().zip(rb.iter()) {
            *x = ck(x.checked_sub(ck(k.checked_mul(*y))?))?;
        }
        Ok(())
    }

    fn col_swap(m: &mut [Vec<i128>], v: &mut [Vec<i128>], vinv: &mut [Vec<i128>], a: usize, b: usize) {
        if a == b {
            return;
        }
        for row in m.iter_mut().chain(v.iter_mut()) {
            row.swap(a, b);
        }
        vinv.swap(a, b);
    }

    fn row_add(m: &mut [Vec<i128>], a: usize, b: usize, k: i128) -> Result<()> {
        // row_b += k * row_a
        if k == 0 {
            return Ok(());
        }
        let src = m[a].clone();
        for (x, y) in m[b].iter_mut().zip(src.iter()) {
            *x = ck(x.checked_add(ck(k.checked_mul(*y))?))?;
        }
        Ok(())
    }

    let steps = nrows.min(ncols);
    for t in 0..steps {
        loop {
            let mut best: Option<(usize, usize, i128)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, &x) in row.iter().enumerate().skip(t) {
                    if x != 0 && best.map_or(true, |b| x.abs() < b.2) {
                        best = Some((i, j, x.abs()));
                    }
                }
            }
            let Some((bi, bj, _)) = best else {
                return Ok(Smith { diag, v, vinv });
            };
            m.swap(t, bi);
            col_swap(&mut m, &mut v, &mut vinv, t, bj);

            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..nrows {
                if m[i][t] != 0 {
                    let q = m[i][t] / p;
                    row_add(&mut m, t, i, -q)?;
                    if m[i][t] != 0 {
                        clean = false;
                    }
                }
            }
            for j in t + 1..ncols {
                if m[t][j] != 0 {
                    let q = m[t][j] / p;
                    col_add(&mut m, &mut v, &mut vinv, t, j, -q)?;
                    if m[t][j] != 0 {
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            let mut fix = None;
            'outer: for (i, row) in m.iter().enumerate().skip(t + 1) {
                for &x in row.iter().skip(t + 1) {
                    if x % p != 0 {
                        fix = Some(i);
                        break 'outer;
                    }
                }
            }
            match fix {
                Some(i) => row_add(&mut m, i, t, 1)?,
                None => break,
            }
        }
        if m[t][t] < 0 {
            for x in m[t].iter_mut() {
                *x = -*x;
            }
        }
        diag.push(m[t][t]);
    }
    Ok(Smith { diag, v, vinv })
}

/// Nonzero invariant factors of a dense integer matrix.
pub fn invariant_factors(rows: &[Vec<i64>], ncols: usize) -> Result<Vec<u64>> {
    let m = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    smith(m, ncols)?
        .diag
        .into_iter()
        .map(|d| u64::try_from(d).map_err(|_| Error::Overflow))
        .collect()
}
