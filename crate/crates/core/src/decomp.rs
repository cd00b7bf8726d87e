//! Decomposability: does `H_r` attain the lower bound `Σ_X φ_r(F_{μ(X)})`?

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::Result;
use crate::holonomy::{falk_bound_of, Holonomy, Options};
use crate::lattice::Arrangement;

/// A field, up to what matters here: its characteristic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

/// `Σ_X φ_r(F_{μ(X)})`.
pub fn falk_lower_bound(a: &Arrangement, r: usize) -> u128 {
    let mus: Vec<usize> = a.flats.iter().map(|f| f.mu).collect();
    falk_bound_of(&mus, r)
}

pub fn dim_over(h: &Holonomy, r: usize, field: Field) -> Result<usize> {
    match field {
        Field::Rational => h.rank_q(r),
        Field::Prime(p) => h.fp_dim(r, p),
    }
}

/// `dim_k H_r ⊗ k` equals the lower bound.
pub fn is_k_decomposable(h: &Holonomy, r: usize, field: Field) -> Result<bool> {
    Ok(dim_over(h, r, field)? as u128 == h.falk_bound(r))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompReport {
    pub degree: usize,
    pub rank_q: usize,
    pub falk_bound: u128,
    /// Primes where the dimension jumps, with the dimension there.
    pub bad_primes: Vec<(u64, usize)>,
    pub rational: bool,
    /// Verdict for each bad prime; every other prime agrees with `rational`.
    pub at_bad_primes: Vec<(u64, bool)>,
    pub overall: bool,
}

/// Verdict in degree `r` for every field at once.
pub fn report(h: &Holonomy, r: usize) -> Result<DecompReport> {
    let rank_q = h.rank_q(r)?;
    let falk_bound = h.falk_bound(r);
    let mut bad_primes = Vec::new();
    let mut at_bad_primes = Vec::new();
    for p in h.bad_primes(r)? {
        let d = h.fp_dim(r, p)?;
        bad_primes.push((p, d));
        at_bad_primes.push((p, d as u128 == falk_bound));
    }
    let rational = rank_q as u128 == falk_bound;
    Ok(DecompReport {
        degree: r,
        rank_q,
        falk_bound,
        rational,
        overall: rational && bad_primes.is_empty(),
        bad_primes,
        at_bad_primes,
    })
}

/// Degree-3 verdict over every field.
pub fn is_decomposable(a: &Arrangement, opts: &Options) -> Result<DecompReport> {
    let opts = Options {
        max_degree: 3,
        ..*opts
    };
    report(&Holonomy::compute(a, &opts)?, 3)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HeredityOutcome {
    pub checked: Vec<Vec<usize>>,
    pub failures: Vec<Vec<usize>>,
}

/// All single deletions plus `samples` random subsets of size at least 3
/// (uniform among such subsets, seeded). Returns the sub-arrangements that
/// fail to be decomposable.
pub fn heredity_suite(a: &Arrangement, samples: usize, seed: u64, opts: &Options) -> Result<HeredityOutcome> {
    let n = a.b1();
    let mut cases: Vec<Vec<usize>> = Vec::new();
    if n >= 2 {
        for drop in 0..n {
            cases.push((0..n).filter(|&h| h != drop).collect());
        }
    }
    if n >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ids: Vec<usize> = (0..n).collect();
        while cases.len() < n + samples {
            let subset: Vec<usize> = ids.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
            if subset.len() >= 3 {
                cases.push(subset);
            }
        }
    }
    let verdicts: Vec<Result<bool>> = opts.exec.map(&cases, |ids| {
        let b = a.restrict(ids)?;
        let inner = Options {
            exec: crate::par::Exec::Sequential,
            ..*opts
        };
        Ok(is_decomposable(&b, &inner)?.overall)
    });
    let mut failures = Vec::new();
    for (ids, v) in cases.iter().zip(verdicts) {
        if !v? {
            failures.push(ids.clone());
        }
    }
    Ok(HeredityOutcome {
        checked: cases,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pencils_are_decomposable() {
        for m in 2..6 {
            let a = Arrangement::from_flats(m, &[(0..m).collect()]).unwrap();
            let r = is_decomposable(&a, &Options::default()).unwrap();
            assert!(r.overall);
            assert_eq!(r.rank_q as u128, r.falk_bound);
        }
    }

    #[test]
    fn heredity_on_a_small_decomposable_case() {
        let a = Arrangement::from_flats(6, &[vec![0, 1, 2], vec![0, 3, 4], vec![2, 4, 5]]).unwrap();
        let out = heredity_suite(&a, 5, 7, &Options::default()).unwrap();
        assert_eq!(out.checked.len(), 11);
        assert!(out.failures.is_empty());
    }
}
