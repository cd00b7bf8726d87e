//! Test-side oracles and generators. Nothing here calls into the library
//! code it is used to check.

#![allow(dead_code)]

use holonomy_core::graphic::Graph;
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const DECOMPOSABLE: &[&str] = &[
    "x2", "x3", "braid3", "pencil2", "pencil3", "pencil4", "pencil5", "wheel", "gfam-0", "gfam-1", "gfam-2", "gfam-3",
];

/// Lyndon words of length `r` over `n` letters, counted by brute force:
/// words strictly smaller than every proper rotation.
pub fn brute_lyndon_count(n: usize, r: usize) -> u128 {
    let total = (n as u64).pow(r as u32);
    let mut count = 0;
    let mut w = vec![0usize; r];
    for code in 0..total {
        let mut c = code;
        for x in w.iter_mut().rev() {
            *x = (c % n as u64) as usize;
            c /= n as u64;
        }
        if (1..r).all(|k| {
            let rot: Vec<usize> = w[k..].iter().chain(&w[..k]).copied().collect();
            w < rot
        }) {
            count += 1;
        }
    }
    count
}

/// Free Lie ranks from the necklace recursion `n^r = Σ_{d | r} d φ_d`.
pub fn necklace_ranks(n: u128, r_max: usize) -> Vec<u128> {
    let mut phi = vec![0u128; r_max + 1];
    for r in 1..=r_max {
        let mut rest = n.pow(r as u32);
        for d in 1..r {
            if r % d == 0 {
                rest -= d as u128 * phi[d];
            }
        }
        phi[r] = rest / r as u128;
    }
    phi
}

/// Coefficients of `(1 + a t)^e` through `t^r_max`, by binomial expansion.
pub fn binomial_series(a: i64, e: u32, r_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); r_max + 1];
    let mut c = BigInt::from(1);
    for k in 0..=r_max.min(e as usize) {
        out[k] = c.clone() * BigInt::from(a).pow(k as u32);
        c = c * BigInt::from(e as usize - k) / BigInt::from(k + 1);
    }
    out
}

pub fn poly_mul(a: &[BigInt], b: &[BigInt], r_max: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::from(0); r_max + 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            if i + j <= r_max {
                out[i + j] += x * y;
            }
        }
    }
    out
}

/// `∏ (1 - t^r)^{φ_r}` by repeated multiplication, for non-negative ranks.
pub fn lcs_product_oracle(phi: &[u128], r_max: usize) -> Vec<BigInt> {
    let mut acc = vec![BigInt::from(0); r_max + 1];
    acc[0] = BigInt::from(1);
    for (i, &p) in phi.iter().enumerate() {
        let r = i + 1;
        if r > r_max {
            break;
        }
        for _ in 0..p {
            let mut next = acc.clone();
            for k in r..=r_max {
                next[k] -= &acc[k - r];
            }
            acc = next;
        }
    }
    acc
}

pub fn adjacency(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    adj
}

/// Complete subgraphs on `k` vertices, by checking every `k`-subset.
pub fn brute_cliques(n: usize, edges: &[(usize, usize)], k: usize) -> u64 {
    let adj = adjacency(n, edges);
    let mut count = 0;
    for mask in 0u32..(1 << n) {
        if mask.count_ones() as usize != k {
            continue;
        }
        let vs: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
        if vs.iter().enumerate().all(|(i, &a)| vs[i + 1..].iter().all(|&b| adj[a][b])) {
            count += 1;
        }
    }
    count
}

/// Exponents of a chordal graph from an elimination ordering: repeatedly remove
/// a simplicial vertex and record how many neighbors it still has. `None` if
/// the graph is not chordal.
pub fn peo_exponents(n: usize, edges: &[(usize, usize)]) -> Option<Vec<u64>> {
    let adj = adjacency(n, edges);
    let mut alive = vec![true; n];
    let mut exps = Vec::new();
    for _ in 0..n {
        let v = (0..n).find(|&v| {
            alive[v] && {
                let nb: Vec<usize> = (0..n).filter(|&w| alive[w] && adj[v][w]).collect();
                nb.iter().enumerate().all(|(i, &a)| nb[i + 1..].iter().all(|&b| adj[a][b]))
            }
        })?;
        exps.push((0..n).filter(|&w| alive[w] && adj[v][w]).count() as u64);
        alive[v] = false;
    }
    exps.retain(|&e| e > 0);
    exps.sort_unstable();
    Some(exps)
}

/// All graphs on `n` vertices up to isomorphism, as edge lists, by taking the
/// least edge mask over all vertex permutations.
pub fn graphs_up_to_isomorphism(n: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let mut index = vec![vec![0usize; n]; n];
    for (k, &(i, j)) in pairs.iter().enumerate() {
        index[i][j] = k;
        index[j][i] = k;
    }
    let perms = permutations(n);
    let images: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(i, j)| index[p[i]][p[j]]).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u32..(1 << pairs.len()) {
        let canon = images
            .iter()
            .map(|img| {
                img.iter()
                    .enumerate()
                    .filter(|&(k, _)| mask >> k & 1 == 1)
                    .fold(0u32, |m, (_, &t)| m | 1 << t)
            })
            .min()
            .unwrap();
        seen.insert(canon);
    }
    seen.into_iter()
        .map(|m| pairs.iter().enumerate().filter(|&(k, _)| m >> k & 1 == 1).map(|(_, &e)| e).collect())
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Seeded random graphs on `3..=max_n` vertices with at least one edge and no K4.
pub fn random_k4_free_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let n = rng.gen_range(3..=max_n);
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.5))
            .collect();
        if edges.is_empty() || brute_cliques(n, &edges, 4) > 0 {
            continue;
        }
        out.push(Graph::new(n, &edges).unwrap());
    }
    out
}

/// Seeded random integer normals in dimension 3, entries in `-2..=2`.
pub fn random_normals(rng: &mut ChaCha8Rng, min: usize, max: usize) -> Vec<Vec<i64>> {
    let n = rng.gen_range(min..=max);
    (0..n)
        .map(|_| (0..3).map(|_| rng.gen_range(-2..=2)).collect())
        .collect()
}
