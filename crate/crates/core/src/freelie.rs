//! Free Lie algebra over the integers in the Lyndon basis.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::sparse::SparseVec;

/// A Lyndon word over `{0, .., n-1}`, compared lexicographically.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LyndonWord(Vec<u16>);

impl LyndonWord {
    /// Checks the Lyndon property.
    pub fn new(letters: Vec<u16>) -> Option<Self> {
        if is_lyndon(&letters) {
            Some(LyndonWord(letters))
        } else {
            None
        }
    }

    pub fn letter(a: u16) -> Self {
        LyndonWord(vec![a])
    }

    pub fn letters(&self) -> &[u16] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// `(u, v)` with `v` the longest proper Lyndon suffix. `None` for letters.
    pub fn standard_factorization(&self) -> Option<(LyndonWord, LyndonWord)> {
        standard_split(&self.0).map(|i| (LyndonWord(self.0[..i].to_vec()), LyndonWord(self.0[i..].to_vec())))
    }
}

impl fmt::Debug for LyndonWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 && self.0.iter().any(|&x| x > 9) {
                write!(f, ".")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, "]")
    }
}

/// A word is Lyndon iff it is nonempty and strictly smaller than each proper suffix.
pub fn is_lyndon(w: &[u16]) -> bool {
    !w.is_empty() && (1..w.len()).all(|i| w < &w[i..])
}

fn standard_split(w: &[u16]) -> Option<usize> {
    (1..w.len()).find(|&i| is_lyndon(&w[i..]))
}

/// Lyndon words of length `r` over `n` letters, in lexicographic order.
pub fn lyndon_basis(n: usize, r: usize) -> Vec<LyndonWord> {
    assert!(n <= u16::MAX as usize + 1, "alphabet too large");
    let mut out = Vec::new();
    if n == 0 || r == 0 {
        return out;
    }
    let top = n as i32 - 1;
    let mut w: Vec<i32> = vec![-1];
    while !w.is_empty() {
        *w.last_mut().unwrap() += 1;
        let m = w.len();
        if m == r {
            out.push(LyndonWord(w.iter().map(|&x| x as u16).collect()));
        }
        while w.len() < r {
            w.push(w[w.len() - m]);
        }
        while w.last() == Some(&top) {
            w.pop();
        }
    }
    out
}

fn mobius(mut n: u64) -> i64 {
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            n /= p;
            if n % p == 0 {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Rank of degree `r` of the free Lie algebra on `n` generators.
pub fn witt_rank(n: usize, r: usize) -> u128 {
    assert!(r >= 1);
    let nb = BigInt::from(n);
    let mut total = BigInt::zero();
    for d in 1..=r {
        if r % d == 0 {
            let mu = mobius(d as u64);
            if mu != 0 {
                total += BigInt::from(mu) * num_traits::pow(nb.clone(), r / d);
            }
        }
    }
    (total / BigInt::from(r)).to_u128().unwrap_or(u128::MAX)
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let mut acc = BigInt::one();
    for i in 0..k {
        acc = acc * BigInt::from(n - i) / BigInt::from(i + 1);
    }
    acc.to_u128().unwrap_or(u128::MAX)
}

/// Chen rank of degree `r >= 2` of the free group of rank `n`.
pub fn chen_free_rank(n: usize, r: usize) -> u128 {
    assert!(r >= 2);
    if n + r < 2 {
        return 0;
    }
    (r as u128 - 1) * binomial((n + r - 2) as u64, r as u64)
}

/// Homogeneous element with integer coefficients in the Lyndon basis.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct LieElement {
    pub degree: usize,
    pub coeffs: BTreeMap<LyndonWord, i64>,
}

impl LieElement {
    pub fn zero(degree: usize) -> Self {
        LieElement {
            degree,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn basis(w: LyndonWord) -> Self {
        let degree = w.degree();
        let mut coeffs = BTreeMap::new();
        coeffs.insert(w, 1);
        LieElement { degree, coeffs }
    }

    pub fn generator(a: usize) -> Self {
        LieElement::basis(LyndonWord::letter(a as u16))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_scaled(&mut self, other: &LieElement, k: i64) -> Result<()> {
        if k == 0 {
            return Ok(());
        }
        for (w, &c) in &other.coeffs {
            let e = self.coeffs.entry(w.clone()).or_insert(0);
            *e = e
                .checked_add(c.checked_mul(k).ok_or(Error::Overflow)?)
                .ok_or(Error::Overflow)?;
            if *e == 0 {
                self.coeffs.remove(w);
            }
        }
        Ok(())
    }

    pub fn scaled(&self, k: i64) -> Result<Self> {
        let mut out = LieElement::zero(self.degree);
        out.add_scaled(self, k)?;
        Ok(out)
    }

    fn max_letter(&self) -> Option<u16> {
        self.coeffs.keys().flat_map(|w| w.0.iter().copied()).max()
    }
}

type Basis = Arc<(Vec<LyndonWord>, HashMap<LyndonWord, usize>)>;

/// Free Lie algebra on `n` generators with memoized basis brackets.
/// The caches are safe to share between threads.
pub struct FreeLie {
    n: usize,
    memo: RwLock<HashMap<(LyndonWord, LyndonWord), Arc<LieElement>>>,
    bases: RwLock<HashMap<usize, Basis>>,
}

impl FreeLie {
    pub fn new(n: usize) -> Self {
        FreeLie {
            n,
            memo: RwLock::new(HashMap::new()),
            bases: RwLock::new(HashMap::new()),
        }
    }

    pub fn alphabet(&self) -> usize {
        self.n
    }

    fn basis_data(&self, r: usize) -> Basis {
        if let Some(b) = self.bases.read().unwrap().get(&r) {
            return b.clone();
        }
        let words = lyndon_basis(self.n, r);
        let index = words.iter().cloned().enumerate().map(|(i, w)| (w, i)).collect();
        let b = Arc::new((words, index));
        self.bases.write().unwrap().entry(r).or_insert(b).clone()
    }

    pub fn basis(&self, r: usize) -> Vec<LyndonWord> {
        self.basis_data(r).0.clone()
    }

    pub fn dim(&self, r: usize) -> usize {
        self.basis_data(r).0.len()
    }

    pub fn index_of(&self, w: &LyndonWord) -> Option<usize> {
        self.basis_data(w.degree()).1.get(w).copied()
    }

    /// Coordinates in `lyndon_basis(n, degree)`.
    pub fn to_sparse(&self, e: &LieElement) -> SparseVec {
        let data = self.basis_data(e.degree);
        let pairs = e.coeffs.iter().map(|(w, &c)| (data.1[w], c)).collect();
        SparseVec::from_pairs(pairs).expect("distinct basis words")
    }

    pub fn from_sparse(&self, degree: usize, v: &SparseVec) -> LieElement {
        let data = self.basis_data(degree);
        let mut e = LieElement::zero(degree);
        for (i, c) in v.iter() {
            e.coeffs.insert(data.0[i].clone(), c);
        }
        e
    }

    fn check(&self, e: &LieElement) -> Result<()> {
        match e.max_letter() {
            Some(m) if m as usize >= self.n => Err(Error::AlphabetMismatch(m as usize + 1, self.n)),
            _ => Ok(()),
        }
    }

    /// Lie bracket of two homogeneous elements.
    pub fn bracket(&self, a: &LieElement, b: &LieElement) -> Result<LieElement> {
        self.check(a)?;
        self.check(b)?;
        let mut out = LieElement::zero(a.degree + b.degree);
        for (u, &x) in &a.coeffs {
            for (v, &y) in &b.coeffs {
                let k = x.checked_mul(y).ok_or(Error::Overflow)?;
                out.add_scaled(&*self.bracket_words(u, v)?, k)?;
            }
        }
        Ok(out)
    }

    /// `[P_u, P_v]` for Lyndon words `u`, `v` expanded in the Lyndon basis.
    pub fn bracket_words(&self, u: &LyndonWord, v: &LyndonWord) -> Result<Arc<LieElement>> {
        let degree = u.degree() + v.degree();
        if u == v {
            return Ok(Arc::new(LieElement::zero(degree)));
        }
        let key = (u.clone(), v.clone());
        if let Some(e) = self.memo.read().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let result = if u > v {
            self.bracket_words(v, u)?.scaled(-1)?
        } else {
            match u.standard_factorization() {
                Some((u1, u2)) if u2 < *v => {
                    // [[u1,u2],v] = [u1,[u2,v]] - [u2,[u1,v]]
                    let left = self.bracket(&LieElement::basis(u1.clone()), &*self.bracket_words(&u2, v)?)?;
                    let right = self.bracket(&LieElement::basis(u2), &*self.bracket_words(&u1, v)?)?;
                    let mut e = left;
                    e.add_scaled(&right, -1)?;
                    e
                }
                _ => {
                    let mut w = u.0.clone();
                    w.extend_from_slice(&v.0);
                    LieElement::basis(LyndonWord(w))
                }
            }
        };
        let result = Arc::new(result);
        self.memo.write().unwrap().insert(key, result.clone());
        Ok(result)
    }
}

/// Expansion of a Lie element into the free associative algebra, used to
/// check brackets against commutators.
pub fn to_associative(e: &LieElement) -> BTreeMap<Vec<u16>, i64> {
    fn expand(w: &LyndonWord) -> BTreeMap<Vec<u16>, i64> {
        match w.standard_factorization() {
            None => BTreeMap::from([(w.0.clone(), 1)]),
            Some((u, v)) => commutator(&expand(&u), &expand(&v)),
        }
    }
    let mut out = BTreeMap::new();
    for (w, &c) in &e.coeffs {
        for (word, x) in expand(w) {
            *out.entry(word).or_insert(0) += c * x;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

/// `ab - ba` of associative polynomials.
pub fn commutator(a: &BTreeMap<Vec<u16>, i64>, b: &BTreeMap<Vec<u16>, i64>) -> BTreeMap<Vec<u16>, i64> {
    let mut out = BTreeMap::new();
    for (x, &p) in a {
        for (y, &q) in b {
            let mut xy = x.clone();
            xy.extend_from_slice(y);
            *out.entry(xy).or_insert(0) += p * q;
            let mut yx = y.clone();
            yx.extend_from_slice(x);
            *out.entry(yx).or_insert(0) -= p * q;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lw(s: &[u16]) -> LyndonWord {
        LyndonWord::new(s.to_vec()).unwrap()
    }

    #[test]
    fn small_bases() {
        assert_eq!(lyndon_basis(2, 1), vec![lw(&[0]), lw(&[1])]);
        assert_eq!(lyndon_basis(2, 3), vec![lw(&[0, 0, 1]), lw(&[0, 1, 1])]);
        assert_eq!(lyndon_basis(3, 2), vec![lw(&[0, 1]), lw(&[0, 2]), lw(&[1, 2])]);
        assert!(lyndon_basis(1, 2).is_empty());
    }

    #[test]
    fn witt_values() {
        assert_eq!(witt_rank(2, 2), 1);
        assert_eq!(witt_rank(2, 3), 2);
        assert_eq!(witt_rank(3, 3), 8);
        assert_eq!(witt_rank(1, 5), 0);
        assert_eq!(witt_rank(2, 6), 9);
        assert_eq!(witt_rank(0, 1), 0);
    }

    #[test]
    fn chen_values() {
        assert_eq!(chen_free_rank(2, 2), 1);
        assert_eq!(chen_free_rank(2, 4), 3);
        assert_eq!(chen_free_rank(1, 4), 0);
        assert_eq!(chen_free_rank(3, 3), witt_rank(3, 3));
    }

    #[test]
    fn standard_factorization_picks_longest_suffix() {
        let (u, v) = lw(&[0, 0, 1, 0, 1]).standard_factorization().unwrap();
        assert_eq!((u, v), (lw(&[0, 0, 1]), lw(&[0, 1])));
        let (u, v) = lw(&[0, 1, 1]).standard_factorization().unwrap();
        assert_eq!((u, v), (lw(&[0, 1]), lw(&[1])));
    }

    #[test]
    fn basic_brackets() {
        let f = FreeLie::new(2);
        let x = LieElement::generator(0);
        let y = LieElement::generator(1);
        assert!(f.bracket(&x, &x).unwrap().is_zero());
        assert_eq!(f.bracket(&x, &y).unwrap(), LieElement::basis(lw(&[0, 1])));
        let xy = f.bracket(&x, &y).unwrap();
        assert_eq!(f.bracket(&xy, &x).unwrap(), LieElement::basis(lw(&[0, 0, 1])).scaled(-1).unwrap());
    }

    #[test]
    fn bracket_matches_commutator() {
        let f = FreeLie::new(3);
        for u in lyndon_basis(3, 2) {
            for v in lyndon_basis(3, 3) {
                let b = f.bracket_words(&u, &v).unwrap();
                let lhs = to_associative(&b);
                let rhs = commutator(
                    &to_associative(&LieElement::basis(u.clone())),
                    &to_associative(&LieElement::basis(v.clone())),
                );
                assert_eq!(lhs, rhs, "{u:?} {v:?}");
            }
        }
    }

    #[test]
    fn alphabet_mismatch() {
        let f = FreeLie::new(2);
        let z = LieElement::generator(2);
        assert_eq!(f.bracket(&z, &LieElement::generator(0)), Err(Error::AlphabetMismatch(3, 2)));
    }
}
