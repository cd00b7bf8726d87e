//! Graded holonomy Lie algebra of an arrangement, degree by degree.
//!
//! Degree `n` is presented as a quotient of `V ⊗ H_{n-1}` (with `V = H_1`
//! the free abelian group on the hyperplanes), where the tensor `c ⊗ k` stands
//! for the bracket `[x_c, g_k]`. The relations are
//!
//! * antisymmetry: for `h ∈ H_s`, `h' ∈ H_t`, `s + t = n`, the two tensor
//!   expressions of `[h, h']` and `[h', h]` sum to zero, and `[h, h] = 0`;
//! * the defining relations bracketed down to degree `n`:
//!   `[ρ, g_j] = Σ c (x_p ⊗ [x_q, g_j] - x_q ⊗ [x_p, g_j])` for each
//!   quadratic relation `ρ = Σ c [x_p, x_q]` and `g_j ∈ H_{n-2}`;
//! * torsion of `H_{n-1}` tensored up.
//!
//! The tensor expression of `[g_i, g_j]` comes from the lift of `g_i` as a sum
//! of `[x_c, g_k]` and one Jacobi step, recursively. Each quotient is taken
//! over the integers, so torsion is exact.

pub mod ideal;
pub mod maps;

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::freelie::{witt_rank, FreeLie, LieElement, LyndonWord};
use crate::lattice::Arrangement;
use crate::par::Exec;
use crate::smith;
use crate::sparse::{Accumulator, SparseVec};

pub use ideal::{ideal_component, ideal_quotients, IdealQuotient};
pub use maps::{inclusion_map, induced_map, pi_assembled, projection_map, GradedLinearMap};

/// Default degree cap.
pub const DEFAULT_MAX_DEGREE: usize = 6;
/// Default resource guard on the number of generators of a degree.
pub const DEFAULT_GUARD: u128 = 1_000_000;

#[derive(Clone, Copy, Debug)]
pub struct Options {
    pub max_degree: usize,
    pub guard: u128,
    pub exec: Exec,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_degree: DEFAULT_MAX_DEGREE,
            guard: DEFAULT_GUARD,
            exec: Exec::default(),
        }
    }
}

impl Options {
    pub fn degree(max_degree: usize) -> Self {
        Options {
            max_degree,
            ..Options::default()
        }
    }
}

/// A quadratic relation `Σ c [x_p, x_q]` with `p < q`.
pub type Relation = Vec<(i64, usize, usize)>;

/// Relations `[x_H, Σ_{H' ∈ X} x_H']`, one per flat member; size-2 flats give one.
pub fn relation_terms(a: &Arrangement) -> Vec<Relation> {
    let mut out = Vec::new();
    for f in &a.flats {
        let members = if f.members.len() == 2 {
            &f.members[..1]
        } else {
            &f.members[..]
        };
        for &h in members {
            let mut rel = Vec::new();
            for &g in &f.members {
                if g > h {
                    rel.push((1, h, g));
                } else if g < h {
                    rel.push((-1, g, h));
                }
            }
            out.push(rel);
        }
    }
    out
}

/// The defining relations as degree-2 Lie elements in the Lyndon basis.
pub fn quadratic_relations(a: &Arrangement) -> Vec<LieElement> {
    relation_terms(a)
        .into_iter()
        .map(|rel| {
            let mut e = LieElement::zero(2);
            for (c, p, q) in rel {
                e.coeffs.insert(LyndonWord::new(vec![p as u16, q as u16]).unwrap(), c);
            }
            e
        })
        .collect()
}

/// One graded piece `H_r`.
#[derive(Clone, Debug)]
pub struct Piece {
    pub degree: usize,
    /// 0 for a free generator, `d > 1` for a generator of order `d`.
    pub orders: Vec<u64>,
    /// Lift of each generator to `V ⊗ H_{r-1}` (index `c * dim H_{r-1} + k`).
    pub defs: Vec<SparseVec>,
    /// Image of each tensor generator `c ⊗ k`, i.e. `[x_c, g_k]`.
    pub ad: Vec<SparseVec>,
    /// Basis of the relation lattice on the tensor generators.
    pub relations: Vec<SparseVec>,
}

impl Piece {
    pub fn dim(&self) -> usize {
        self.orders.len()
    }

    pub fn rank_q(&self) -> usize {
        self.orders.iter().filter(|&&d| d == 0).count()
    }

    pub fn torsion(&self) -> Vec<u64> {
        self.orders.iter().copied().filter(|&d| d > 1).collect()
    }
}

/// Invariant factors of the ideal component `J_r` inside `L_r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFactors {
    pub ones: u128,
    pub nontrivial: Vec<u64>,
}

impl InvariantFactors {
    pub fn all_one(&self) -> bool {
        self.nontrivial.is_empty()
    }
}

pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The holonomy Lie algebra up to a degree cap.
#[derive(Clone, Debug)]
pub struct Holonomy {
    b1: usize,
    mus: Vec<usize>,
    relations: Vec<Relation>,
    pieces: Vec<Piece>,
    /// `brackets[n][s]`: table of `[g_i, g_j]` for `g_i ∈ H_s`, `g_j ∈ H_{n-s}`,
    /// index `i * dim H_{n-s} + j`.
    brackets: Vec<Vec<Vec<SparseVec>>>,
}

impl Holonomy {
    pub fn compute(a: &Arrangement, opts: &Options) -> Result<Self> {
        let b1 = a.b1();
        let relations = relation_terms(a);
        let first = Piece {
            degree: 1,
            orders: vec![0; b1],
            defs: (0..b1).map(SparseVec::unit).collect(),
            ad: Vec::new(),
            relations: Vec::new(),
        };
        let mut h = Holonomy {
            b1,
            mus: a.flats.iter().map(|f| f.mu).collect(),
            relations,
            pieces: vec![first],
            brackets: vec![Vec::new(), Vec::new()],
        };
        for n in 2..=opts.max_degree.max(1) {
            h.extend(n, opts)?;
        }
        Ok(h)
    }

    pub fn b1(&self) -> usize {
        self.b1
    }

    pub fn max_degree(&self) -> usize {
        self.pieces.len()
    }

    pub fn relations(&self) -> &[Relation] {
        &self.relations
    }

    pub fn flat_mus(&self) -> &[usize] {
        &self.mus
    }

    pub fn piece(&self, r: usize) -> Result<&Piece> {
        if r == 0 || r > self.pieces.len() {
            return Err(Error::DegreeNotComputed {
                requested: r,
                available: self.pieces.len(),
            });
        }
        Ok(&self.pieces[r - 1])
    }

    pub fn dim(&self, r: usize) -> Result<usize> {
        Ok(self.piece(r)?.dim())
    }

    pub fn rank_q(&self, r: usize) -> Result<usize> {
        Ok(self.piece(r)?.rank_q())
    }

    pub fn torsion(&self, r: usize) -> Result<Vec<u64>> {
        Ok(self.piece(r)?.torsion())
    }

    /// Dimension of `H_r ⊗ F_p`.
    pub fn fp_dim(&self, r: usize, p: u64) -> Result<usize> {
        let piece = self.piece(r)?;
        Ok(piece.rank_q() + piece.torsion().iter().filter(|&&d| d % p == 0).count())
    }

    /// Primes at which the dimension over `F_p` exceeds the rank.
    pub fn bad_primes(&self, r: usize) -> Result<Vec<u64>> {
        let mut ps: Vec<u64> = self.torsion(r)?.into_iter().flat_map(prime_factors).collect();
        ps.sort_unstable();
        ps.dedup();
        Ok(ps)
    }

    /// Invariant factors of `J_r` in the Lyndon basis of degree `r`.
    pub fn invariant_factors(&self, r: usize) -> Result<InvariantFactors> {
        let piece = self.piece(r)?;
        let nontrivial = piece.torsion();
        if r == 1 {
            return Ok(InvariantFactors { ones: 0, nontrivial });
        }
        let ones = witt_rank(self.b1, r) - piece.rank_q() as u128 - nontrivial.len() as u128;
        Ok(InvariantFactors { ones, nontrivial })
    }

    pub fn ranks_q(&self) -> Vec<usize> {
        self.pieces.iter().map(|p| p.rank_q()).collect()
    }

    /// `Σ_X φ_r(F_{μ(X)})`.
    pub fn falk_bound(&self, r: usize) -> u128 {
        falk_bound_of(&self.mus, r)
    }

    /// Table of `[g_i, g_j]`, `g_i ∈ H_s`, `g_j ∈ H_t`.
    pub fn bracket_table(&self, s: usize, t: usize) -> Result<&[SparseVec]> {
        let n = s + t;
        if s == 0 || t == 0 || n > self.pieces.len() {
            return Err(Error::DegreeNotComputed {
                requested: n,
                available: self.pieces.len(),
            });
        }
        Ok(&self.brackets[n][s])
    }

    /// `[g_i, g_j]` in `H_{s+t}`.
    pub fn bracket_basis(&self, s: usize, i: usize, t: usize, j: usize) -> Result<&SparseVec> {
        let table = self.bracket_table(s, t)?;
        let mt = self.pieces[t - 1].dim();
        Ok(&table[i * mt + j])
    }

    /// Bracket of two homogeneous elements given in generator coordinates.
    pub fn bracket(&self, s: usize, x: &SparseVec, t: usize, y: &SparseVec) -> Result<SparseVec> {
        let table = self.bracket_table(s, t)?;
        let mt = self.pieces[t - 1].dim();
        let target = &self.pieces[s + t - 1];
        let mut acc = Accumulator::new(target.dim());
        for (i, a) in x.iter() {
            for (j, b) in y.iter() {
                acc.add_scaled(&table[i * mt + j], a.checked_mul(b).ok_or(Error::Overflow)?)?;
            }
        }
        Ok(acc.take().reduce_mod(&target.orders))
    }

    /// `[x_c, y]` for `y ∈ H_{n-1}`.
    pub fn ad(&self, n: usize, c: usize, y: &SparseVec) -> Result<SparseVec> {
        let piece = self.piece(n)?;
        let m = self.pieces[n - 2].dim();
        let mut acc = Accumulator::new(piece.dim());
        for (l, v) in y.iter() {
            acc.add_scaled(&piece.ad[c * m + l], v)?;
        }
        Ok(acc.take().reduce_mod(&piece.orders))
    }

    fn extend(&mut self, n: usize, opts: &Options) -> Result<()> {
        let b1 = self.b1;
        let m = self.pieces[n - 2].dim();
        let ncols = b1 * m;
        if ncols as u128 > opts.guard {
            return Err(Error::DegreeCap {
                degree: n,
                dim: ncols as u128,
                limit: opts.guard,
            });
        }
        let dims: Vec<usize> = self.pieces.iter().map(|p| p.dim()).collect();
        let dim = |r: usize| dims[r - 1];

        // tensors[s]: tensor expression of [g_i, g_j], g_i ∈ H_s, g_j ∈ H_{n-s}.
        let mut tensors: Vec<Vec<SparseVec>> = vec![Vec::new(); n];
        tensors[1] = (0..b1 * m).map(SparseVec::unit).collect();
        for s in 2..n {
            let t = n - s;
            let (ms, mt, mt1, mprev) = (dim(s), dim(t), dim(t + 1), dim(s - 1));
            let defs = &self.pieces[s - 1].defs;
            let lower = &self.brackets[n - 1][s - 1];
            let ad_t = &self.brackets[t + 1][1];
            let prev = &tensors[s - 1];
            let rows: Vec<Result<Vec<SparseVec>>> = opts.exec.map_range(ms, |i| {
                let mut acc = Accumulator::new(ncols);
                let mut out = Vec::with_capacity(mt);
                for j in 0..mt {
                    for (idx, coef) in defs[i].iter() {
                        let (c, k) = (idx / mprev, idx % mprev);
                        for (l, y) in lower[k * mt + j].iter() {
                            acc.add(c * m + l, coef.checked_mul(y).ok_or(Error::Overflow)?)?;
                        }
                        for (l, y) in ad_t[c * mt + j].iter() {
                            acc.add_scaled(&prev[k * mt1 + l], -coef.checked_mul(y).ok_or(Error::Overflow)?)?;
                        }
                    }
                    out.push(acc.take());
                }
                Ok(out)
            });
            let mut table = Vec::with_capacity(ms * mt);
            for r in rows {
                table.extend(r?);
            }
            tensors[s] = table;
        }

        let mut rows: Vec<SparseVec> = Vec::new();
        for s in 1..n {
            let t = n - s;
            if s > t {
                break;
            }
            let (ms, mt) = (dim(s), dim(t));
            for i in 0..ms {
                for j in 0..mt {
                    if s == t && j < i {
                        continue;
                    }
                    let row = if s == t && i == j {
                        tensors[s][i * mt + j].clone()
                    } else {
                        tensors[s][i * mt + j].add(&tensors[t][j * ms + i])?
                    };
                    if !row.is_zero() {
                        rows.push(row);
                    }
                }
            }
        }
        if n == 2 {
            for rel in &self.relations {
                let pairs = rel.iter().map(|&(c, p, q)| (p * b1 + q, c)).collect();
                rows.push(SparseVec::from_pairs(pairs)?);
            }
        } else {
            let mlow = dim(n - 2);
            let ad_low = &self.brackets[n - 1][1];
            let extra: Vec<Result<Vec<SparseVec>>> = opts.exec.map(&self.relations, |rel| {
                let mut acc = Accumulator::new(ncols);
                let mut out = Vec::with_capacity(mlow);
                for j in 0..mlow {
                    for &(coef, p, q) in rel {
                        for (l, y) in ad_low[q * mlow + j].iter() {
                            acc.add(p * m + l, coef.checked_mul(y).ok_or(Error::Overflow)?)?;
                        }
                        for (l, y) in ad_low[p * mlow + j].iter() {
                            acc.add(q * m + l, -coef.checked_mul(y).ok_or(Error::Overflow)?)?;
                        }
                    }
                    let row = acc.take();
                    if !row.is_zero() {
                        out.push(row);
                    }
                }
                Ok(out)
            });
            for r in extra {
                rows.extend(r?);
            }
        }
        for (l, &d) in self.pieces[n - 2].orders.iter().enumerate() {
            if d > 1 {
                for c in 0..b1 {
                    rows.push(SparseVec::from_sorted(vec![(c * m + l, d as i64)]));
                }
            }
        }

        let q = smith::quotient(ncols, &rows)?;
        let piece = Piece {
            degree: n,
            orders: q.orders.clone(),
            defs: q.lifts.clone(),
            ad: q.proj.clone(),
            relations: q.basis.clone(),
        };

        let mut level = vec![Vec::new(); n];
        for s in 1..n {
            let projected: Vec<Result<SparseVec>> = opts.exec.map(&tensors[s], |v| q.project(v));
            level[s] = projected.into_iter().collect::<Result<Vec<_>>>()?;
        }
        self.pieces.push(piece);
        self.brackets.push(level);
        Ok(())
    }

    /// Projection of free Lie elements onto `H`, via standard factorizations.
    pub fn projector(&self) -> Projector<'_> {
        Projector {
            hol: self,
            memo: HashMap::new(),
        }
    }

    /// Each generator of `H_r` as an element of the free Lie algebra.
    pub fn lie_lifts(&self, free: &FreeLie, r: usize) -> Result<Vec<LieElement>> {
        self.piece(r)?;
        let mut lifts: Vec<LieElement> = (0..self.b1).map(LieElement::generator).collect();
        for n in 2..=r {
            let mprev = self.pieces[n - 2].dim();
            let mut next = Vec::new();
            for def in &self.pieces[n - 1].defs {
                let mut e = LieElement::zero(n);
                for (idx, coef) in def.iter() {
                    let (c, k) = (idx / mprev, idx % mprev);
                    let b = free.bracket(&LieElement::generator(c), &lifts[k])?;
                    e.add_scaled(&b, coef)?;
                }
                next.push(e);
            }
            lifts = next;
        }
        Ok(lifts)
    }
}

pub(crate) fn falk_bound_of(mus: &[usize], r: usize) -> u128 {
    mus.iter().map(|&mu| witt_rank(mu, r)).sum()
}

/// Memoized projection `L -> H` on Lyndon words.
pub struct Projector<'a> {
    hol: &'a Holonomy,
    memo: HashMap<LyndonWord, SparseVec>,
}

impl Projector<'_> {
    pub fn word(&mut self, w: &LyndonWord) -> Result<SparseVec> {
        if let Some(v) = self.memo.get(w) {
            return Ok(v.clone());
        }
        let v = match w.standard_factorization() {
            None => {
                let a = w.letters()[0] as usize;
                if a >= self.hol.b1 {
                    return Err(Error::AlphabetMismatch(a + 1, self.hol.b1));
                }
                SparseVec::unit(a)
            }
            Some((u, v)) => {
                let x = self.word(&u)?;
                let y = self.word(&v)?;
                self.hol.bracket(u.degree(), &x, v.degree(), &y)?
            }
        };
        self.memo.insert(w.clone(), v.clone());
        Ok(v)
    }

    pub fn element(&mut self, e: &LieElement) -> Result<SparseVec> {
        let piece = self.hol.piece(e.degree)?;
        let mut acc = Accumulator::new(piece.dim());
        for (w, &c) in &e.coeffs {
            acc.add_scaled(&self.word(w)?, c)?;
        }
        Ok(acc.take().reduce_mod(&piece.orders))
    }
}
