//! Rank tables and truncated integer power series identities.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freelie::{chen_free_rank, witt_rank};
use crate::holonomy::Holonomy;
use crate::lattice::Arrangement;
use crate::smith;
use crate::sparse::SparseVec;

/// Integer series truncated after `t^{r_max}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigInt>,
}

impl PowerSeries {
    pub fn new(mut coeffs: Vec<BigInt>, r_max: usize) -> Self {
        coeffs.resize(r_max + 1, BigInt::zero());
        PowerSeries { coeffs }
    }

    pub fn from_poly(coeffs: &[i64], r_max: usize) -> Self {
        PowerSeries::new(coeffs.iter().map(|&c| BigInt::from(c)).collect(), r_max)
    }

    pub fn one(r_max: usize) -> Self {
        PowerSeries::from_poly(&[1], r_max)
    }

    pub fn r_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, r: usize) -> &BigInt {
        &self.coeffs[r]
    }

    pub fn coeffs_i64(&self) -> Option<Vec<i64>> {
        self.coeffs.iter().map(|c| c.to_i64()).collect()
    }

    pub fn truncate(&self, r_max: usize) -> Self {
        PowerSeries::new(self.coeffs[..=r_max.min(self.r_max())].to_vec(), r_max)
    }

    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let n = self.r_max().min(other.r_max());
        let mut out = vec![BigInt::zero(); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate().take(n + 1 - i) {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }

    /// Inverse; needs constant term ±1.
    pub fn inverse(&self) -> Result<PowerSeries> {
        let c0 = &self.coeffs[0];
        if !c0.abs().is_one() {
            return Err(Error::NonUnitSeries);
        }
        let n = self.r_max();
        let mut out = vec![BigInt::zero(); n + 1];
        out[0] = c0.clone();
        for k in 1..=n {
            let mut s = BigInt::zero();
            for i in 1..=k {
                s += &self.coeffs[i] * &out[k - i];
            }
            out[k] = -(s * c0);
        }
        Ok(PowerSeries { coeffs: out })
    }

    pub fn div(&self, other: &PowerSeries) -> Result<PowerSeries> {
        Ok(self.mul(&other.inverse()?))
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, e: i64) -> Result<PowerSeries> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = PowerSeries::one(self.r_max());
        let mut sq = base;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&sq);
            }
            sq = sq.mul(&sq);
            k >>= 1;
        }
        Ok(acc)
    }
}

impl fmt::Display for PowerSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `∏_{r>=1} (1 - t^r)^{φ_r}` for `ranks = [φ_1, φ_2, ..]`.
pub fn lcs_product(ranks: &[u128], r_max: usize) -> Result<PowerSeries> {
    let mut acc = PowerSeries::one(r_max);
    for (i, &phi) in ranks.iter().enumerate().take(r_max) {
        let r = i + 1;
        let mut poly = vec![0; r + 1];
        poly[0] = 1;
        poly[r] = -1;
        let e = i64::try_from(phi).map_err(|_| Error::Overflow)?;
        acc = acc.mul(&PowerSeries::from_poly(&poly, r_max).pow(e)?);
    }
    Ok(acc)
}

/// `(1 - t)^{b1 - b2} ∏_X (1 - μ(X) t)`.
pub fn lcs_closed_form(a: &Arrangement, r_max: usize) -> Result<PowerSeries> {
    let e = a.b1() as i64 - a.b2() as i64;
    let mut acc = PowerSeries::from_poly(&[1, -1], r_max).pow(e)?;
    for f in &a.flats {
        acc = acc.mul(&PowerSeries::from_poly(&[1, -(f.mu as i64)], r_max));
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum RankKind {
    Lcs,
    Chen,
    Holonomy,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankTable {
    pub kind: RankKind,
    pub values: BTreeMap<usize, u128>,
}

impl RankTable {
    pub fn get(&self, r: usize) -> Option<u128> {
        self.values.get(&r).copied()
    }

    /// Values for degrees `1..=r_max`, in order.
    pub fn to_vec(&self) -> Vec<u128> {
        self.values.values().copied().collect()
    }
}

/// `φ_1 = b1`, `φ_r = Σ_X φ_r(F_{μ(X)})`.
pub fn lcs_ranks_decomposable(a: &Arrangement, r_max: usize) -> RankTable {
    let mut values = BTreeMap::new();
    values.insert(1, a.b1() as u128);
    for r in 2..=r_max {
        values.insert(r, a.flats.iter().map(|f| witt_rank(f.mu, r)).sum());
    }
    RankTable {
        kind: RankKind::Lcs,
        values,
    }
}

/// Holonomy ranks over the rationals as a table.
pub fn holonomy_table(h: &Holonomy) -> RankTable {
    RankTable {
        kind: RankKind::Holonomy,
        values: h.ranks_q().into_iter().enumerate().map(|(i, v)| (i + 1, v as u128)).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LcsCheck {
    pub holds: bool,
    pub product: PowerSeries,
    pub closed_form: PowerSeries,
}

/// Compares `∏(1 - t^r)^{φ_r}` from the computed ranks with the closed form.
pub fn lcs_product_check(a: &Arrangement, h: &Holonomy, r_max: usize) -> Result<LcsCheck> {
    let r_max = r_max.min(h.max_degree());
    let ranks: Vec<u128> = h.ranks_q().into_iter().take(r_max).map(|v| v as u128).collect();
    let product = lcs_product(&ranks, r_max)?;
    let closed_form = lcs_closed_form(a, r_max)?;
    Ok(LcsCheck {
        holds: product == closed_form,
        product,
        closed_form,
    })
}

/// `θ_r = Σ_X θ_r(F_{μ(X)})` for `r >= 2`, `θ_1 = b1`.
pub fn chen_ranks_decomposable(a: &Arrangement, r_max: usize) -> RankTable {
    let mut values = BTreeMap::new();
    values.insert(1, a.b1() as u128);
    for r in 2..=r_max {
        values.insert(r, chen_lower_bound(a, r));
    }
    RankTable {
        kind: RankKind::Chen,
        values,
    }
}

/// `Σ_X θ_r(F_{μ(X)})`.
pub fn chen_lower_bound(a: &Arrangement, r: usize) -> u128 {
    a.flats.iter().map(|f| chen_free_rank(f.mu, r)).sum()
}

/// Ranks of `H'/H''` by direct computation: `H''_r` is spanned by the brackets
/// `[g_i, g_j]` with `g_i ∈ H_s`, `g_j ∈ H_{r-s}`, `2 <= s <= r - 2`.
pub fn chen_ranks_direct(h: &Holonomy, r_max: usize) -> Result<RankTable> {
    let r_max = r_max.min(h.max_degree());
    let mut values = BTreeMap::new();
    values.insert(1, h.b1() as u128);
    for r in 2..=r_max {
        let piece = h.piece(r)?;
        // Free coordinates only: ranks over the rationals.
        let mut free_index = vec![usize::MAX; piece.dim()];
        let mut nfree = 0;
        for (i, &d) in piece.orders.iter().enumerate() {
            if d == 0 {
                free_index[i] = nfree;
                nfree += 1;
            }
        }
        let mut rows = Vec::new();
        for s in 2..=r.saturating_sub(2) {
            for v in h.bracket_table(s, r - s)? {
                let pairs: Vec<(usize, i64)> = v
                    .iter()
                    .filter(|&(i, _)| free_index[i] != usize::MAX)
                    .map(|(i, x)| (free_index[i], x))
                    .collect();
                if !pairs.is_empty() {
                    rows.push(SparseVec::from_pairs(pairs)?);
                }
            }
        }
        let dd = smith::rank(nfree, &rows)?;
        values.insert(r, (nfree - dd) as u128);
    }
    Ok(RankTable {
        kind: RankKind::Chen,
        values,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HsCheck {
    pub holds: bool,
    pub lhs: PowerSeries,
    pub rhs: PowerSeries,
}

/// `∏ (1 + d_i t)` against `(1 + t)^{b1} ∏_X (1 + μ t) / (1 + t)^μ`.
pub fn hypersolvable_consistency(a: &Arrangement, exponents: &[u64], r_max: usize) -> Result<HsCheck> {
    let n = r_max.max(exponents.len());
    let mut lhs = PowerSeries::one(n);
    for &d in exponents {
        let d = i64::try_from(d).map_err(|_| Error::Overflow)?;
        lhs = lhs.mul(&PowerSeries::from_poly(&[1, d], n));
    }
    let one_plus_t = PowerSeries::from_poly(&[1, 1], n);
    let mut rhs = one_plus_t.pow(a.b1() as i64)?;
    for f in &a.flats {
        let num = PowerSeries::from_poly(&[1, f.mu as i64], n);
        rhs = rhs.mul(&num).div(&one_plus_t.pow(f.mu as i64)?)?;
    }
    Ok(HsCheck {
        holds: lhs == rhs,
        lhs,
        rhs,
    })
}

/// `κ1 - 2κ2 <= 0`, with `κ1 = b1` and `κ2` the number of flats with `μ = 2`.
/// When this fires the arrangement cannot be both decomposable and hypersolvable.
pub fn graphlike_hs_obstruction(a: &Arrangement) -> Result<bool> {
    if let Some(f) = a.flats.iter().find(|f| f.mu > 2) {
        return Err(Error::InvalidInput(format!(
            "flat {:?} has multiplicity {} > 2",
            f.members, f.mu
        )));
    }
    let k1 = a.b1() as i64;
    let k2 = a.flats.iter().filter(|f| f.mu == 2).count() as i64;
    Ok(k1 - 2 * k2 <= 0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(c: &[i64], n: usize) -> PowerSeries {
        PowerSeries::from_poly(c, n)
    }

    #[test]
    fn inverse_and_powers() {
        let s = ps(&[1, -1], 5);
        assert_eq!(s.inverse().unwrap(), ps(&[1, 1, 1, 1, 1, 1], 5));
        assert_eq!(s.pow(-2).unwrap(), ps(&[1, 2, 3, 4, 5, 6], 5));
        assert_eq!(ps(&[1, -2], 3).pow(3).unwrap(), ps(&[1, -6, 12, -8], 3));
        assert_eq!(ps(&[2, 1], 3).inverse(), Err(Error::NonUnitSeries));
    }

    #[test]
    fn witt_product_is_one_minus_nt() {
        for n in 1..4usize {
            let ranks: Vec<u128> = (1..=8).map(|r| witt_rank(n, r)).collect();
            assert_eq!(lcs_product(&ranks, 8).unwrap(), ps(&[1, -(n as i64)], 8));
        }
    }

    #[test]
    fn pencil_identity() {
        let a = Arrangement::from_flats(4, &[vec![0, 1, 2, 3]]).unwrap();
        assert!(hypersolvable_consistency(&a, &[1, 3], 6).unwrap().holds);
        assert!(!graphlike_hs_obstruction(&Arrangement::from_flats(3, &[vec![0, 1, 2]]).unwrap()).unwrap());
        assert!(graphlike_hs_obstruction(&a).is_err());
    }

    #[test]
    fn generic_closed_form() {
        let a = Arrangement::from_flats(4, &[]).unwrap();
        assert_eq!(lcs_closed_form(&a, 6).unwrap(), ps(&[1, -1], 6).pow(4).unwrap());
    }
}
