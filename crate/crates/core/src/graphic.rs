//! Graphic arrangements: one hyperplane `z_i - z_j = 0` per edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lattice::{Arrangement, Hyperplane};
use crate::series::PowerSeries;

/// Simple graph on vertices `0..n`, edges stored as sorted pairs `(i, j)`, `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for &(a, b) in edges {
            if a == b {
                return Err(Error::InvalidInput(format!("loop at vertex {a}")));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(Error::OutOfRange { index: v, size: n });
                }
            }
            if !set.insert((a.min(b), a.max(b))) {
                return Err(Error::InvalidInput(format!("repeated edge ({a}, {b})")));
            }
        }
        Ok(Graph {
            n,
            edges: set.into_iter().collect(),
        })
    }

    /// Edges given with vertices numbered from 1.
    pub fn from_one_based(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut shifted = Vec::with_capacity(edges.len());
        for &(a, b) in edges {
            if a == 0 || b == 0 {
                return Err(Error::InvalidInput("vertices are numbered from 1".into()));
            }
            shifted.push((a - 1, b - 1));
        }
        Graph::new(n, &shifted)
    }

    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        Graph { n, edges }
    }

    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::new(n, &edges).expect("cycle on at least 3 vertices")
    }

    pub fn path(n: usize) -> Self {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::new(n, &edges).expect("path")
    }

    /// The wheel: 4-cycle A-B-E-D with hub C, vertices A..E = 0..4.
    pub fn wheel() -> Self {
        let (a, b, c, d, e) = (0, 1, 2, 3, 4);
        Graph::new(5, &[(a, b), (a, c), (a, d), (b, c), (b, e), (c, d), (c, e), (d, e)]).unwrap()
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_index(&self, a: usize, b: usize) -> Option<usize> {
        self.edges.binary_search(&(a.min(b), a.max(b))).ok()
    }

    pub fn adjacency(&self) -> Vec<Vec<bool>> {
        let mut adj = vec![vec![false; self.n]; self.n];
        for &(a, b) in &self.edges {
            adj[a][b] = true;
            adj[b][a] = true;
        }
        adj
    }

    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut nb = vec![Vec::new(); self.n];
        for &(a, b) in &self.edges {
            nb[a].push(b);
            nb[b].push(a);
        }
        nb
    }

    pub fn triangles(&self) -> Vec<[usize; 3]> {
        cliques(self, 3).into_iter().map(|c| [c[0], c[1], c[2]]).collect()
    }
}

/// Degeneracy order: repeatedly remove a vertex of minimum degree.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let nb = g.neighbors();
    let mut deg: Vec<usize> = nb.iter().map(Vec::len).collect();
    let mut removed = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let v = (0..g.n)
            .filter(|&v| !removed[v])
            .min_by_key(|&v| (deg[v], v))
            .unwrap();
        removed[v] = true;
        order.push(v);
        for &w in &nb[v] {
            if !removed[w] {
                deg[w] -= 1;
            }
        }
    }
    order
}

/// All cliques with `k` vertices, each sorted, in lexicographic order.
pub fn cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    let order = degeneracy_order(g);
    let mut pos = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj = g.adjacency();
    // Each clique is found once, from its earliest vertex, by extending only
    // forward in the degeneracy order.
    let forward: Vec<Vec<usize>> = (0..g.n)
        .map(|v| (0..g.n).filter(|&w| adj[v][w] && pos[w] > pos[v]).collect())
        .collect();
    let mut out = Vec::new();
    fn grow(
        current: &mut Vec<usize>,
        candidates: &[usize],
        k: usize,
        adj: &[Vec<bool>],
        forward: &[Vec<usize>],
        out: &mut Vec<Vec<usize>>,
    ) {
        if current.len() == k {
            let mut c = current.clone();
            c.sort_unstable();
            out.push(c);
            return;
        }
        for &w in candidates {
            let next: Vec<usize> = forward[w]
                .iter()
                .copied()
                .filter(|&x| candidates.contains(&x) && adj[w][x])
                .collect();
            current.push(w);
            grow(current, &next, k, adj, forward, out);
            current.pop();
        }
    }
    for v in 0..g.n {
        let mut current = vec![v];
        grow(&mut current, &forward[v], k, &adj, &forward, &mut out);
    }
    out.sort();
    out
}

/// Number of complete subgraphs on `s + 1` vertices.
pub fn kappa(g: &Graph, s: usize) -> u64 {
    match s {
        0 => g.n as u64,
        1 => g.edges.len() as u64,
        _ => cliques(g, s + 1).len() as u64,
    }
}

/// The arrangement of `g`; hyperplane `k` is the `k`-th edge in sorted order.
pub fn graphic_arrangement(g: &Graph) -> Result<Arrangement> {
    if g.edges.is_empty() {
        return Err(Error::InvalidInput("graph has no edges".into()));
    }
    let triples: Vec<Vec<usize>> = g
        .triangles()
        .iter()
        .map(|&[a, b, c]| {
            vec![
                g.edge_index(a, b).unwrap(),
                g.edge_index(a, c).unwrap(),
                g.edge_index(b, c).unwrap(),
            ]
        })
        .collect();
    let mut a = Arrangement::from_flats(g.edges.len(), &triples)?;
    a.hyperplanes = g
        .edges
        .iter()
        .enumerate()
        .map(|(id, &(i, j))| {
            let mut v = vec![0; g.n];
            v[i] = 1;
            v[j] = -1;
            Hyperplane { id, normal: Some(v) }
        })
        .collect();
    Ok(a)
}

/// No `K_4` subgraph.
pub fn is_decomposable_graph(g: &Graph) -> bool {
    kappa(g, 3) == 0
}

/// Adds a vertex joined to both ends of `e`.
pub fn cone_edge(g: &Graph, e: (usize, usize)) -> Result<Graph> {
    if g.edge_index(e.0, e.1).is_none() {
        return Err(Error::InvalidInput(format!("({}, {}) is not an edge", e.0, e.1)));
    }
    let w = g.n;
    let mut edges = g.edges.clone();
    edges.push((e.0, w));
    edges.push((e.1, w));
    Graph::new(g.n + 1, &edges)
}

/// `G^0` is the wheel; `G^i` cones the edge `CD` of `G^{i-1}`, which is the
/// smallest edge of every triangle added along the way.
pub fn family_g_i(i: usize) -> Graph {
    let mut g = Graph::wheel();
    let mut edge = (2, 3);
    for _ in 0..i {
        g = cone_edge(&g, edge).expect("coned edge is present");
        let w = g.n - 1;
        let tri = [(edge.0, edge.1), (edge.0, w), (edge.1, w)];
        edge = *tri.iter().min().unwrap();
    }
    g
}

/// `(1 - t)^{κ1 - 2κ2} (1 - 2t)^{κ2}`, truncated.
pub fn graphic_lcs_series(g: &Graph, r_max: usize) -> Result<PowerSeries> {
    if kappa(g, 3) != 0 {
        return Err(Error::InvalidInput("graph contains K4".into()));
    }
    let (k1, k2) = (kappa(g, 1) as i64, kappa(g, 2) as i64);
    let one_minus_t = PowerSeries::from_poly(&[1, -1], r_max);
    let one_minus_2t = PowerSeries::from_poly(&[1, -2], r_max);
    Ok(one_minus_t.pow(k1 - 2 * k2)?.mul(&one_minus_2t.pow(k2)?))
}

/// `κ1 <= 2κ2` and `κ3 = 0`: decomposable but not hypersolvable.
pub fn nonhypersolvable_cert(g: &Graph) -> bool {
    kappa(g, 1) <= 2 * kappa(g, 2) && kappa(g, 3) == 0
}

/// Maximum cardinality search; the reverse of the visit order is a perfect
/// elimination ordering when the graph is chordal.
pub fn maximum_cardinality_search(g: &Graph) -> Vec<usize> {
    let nb = g.neighbors();
    let mut weight = vec![0usize; g.n];
    let mut done = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let v = (0..g.n)
            .filter(|&v| !done[v])
            .max_by_key(|&v| (weight[v], std::cmp::Reverse(v)))
            .unwrap();
        done[v] = true;
        order.push(v);
        for &w in &nb[v] {
            if !done[w] {
                weight[w] += 1;
            }
        }
    }
    order
}

/// Chordality via maximum cardinality search and a perfect elimination check.
pub fn is_chordal(g: &Graph) -> bool {
    let order = maximum_cardinality_search(g);
    let mut pos = vec![0; g.n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let adj = g.adjacency();
    let nb = g.neighbors();
    // In visit order, the earlier neighbors of each vertex must form a clique;
    // it suffices that they are all adjacent to the latest of them.
    for &v in &order {
        let earlier: Vec<usize> = nb[v].iter().copied().filter(|&w| pos[w] < pos[v]).collect();
        if let Some(&parent) = earlier.iter().max_by_key(|&&w| pos[w]) {
            if earlier.iter().any(|&w| w != parent && !adj[w][parent]) {
                return false;
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn census_of_small_graphs() {
        let k4 = Graph::complete(4);
        assert_eq!((kappa(&k4, 1), kappa(&k4, 2), kappa(&k4, 3)), (6, 4, 1));
        assert_eq!(kappa(&Graph::complete(5), 2), 10);
        let w = Graph::wheel();
        assert_eq!((kappa(&w, 1), kappa(&w, 2), kappa(&w, 3)), (8, 4, 0));
    }

    #[test]
    fn k4_arrangement_matches_normals() {
        let a = graphic_arrangement(&Graph::complete(4)).unwrap();
        a.validate().unwrap();
        let sizes: Vec<usize> = a.flats.iter().map(|f| f.members.len()).collect();
        assert_eq!(sizes, vec![3, 3, 3, 3, 2, 2, 2]);
    }

    #[test]
    fn wheel_arrangement_census() {
        let a = graphic_arrangement(&Graph::wheel()).unwrap();
        let triples = a.flats.iter().filter(|f| f.members.len() == 3).count();
        assert_eq!((a.b1(), triples, a.flats.len() - triples), (8, 4, 16));
    }

    #[test]
    fn coning_updates_census() {
        let g = cone_edge(&Graph::complete(3), (0, 1)).unwrap();
        assert_eq!((g.vertex_count(), kappa(&g, 1), kappa(&g, 2)), (4, 5, 2));
        assert!(cone_edge(&Graph::path(3), (0, 2)).is_err());
    }

    #[test]
    fn family_invariants() {
        for i in 0..4 {
            let g = family_g_i(i);
            assert_eq!(kappa(&g, 1), 8 + 2 * i as u64);
            assert_eq!(kappa(&g, 2), 4 + i as u64);
            assert_eq!(kappa(&g, 3), 0);
            assert!(nonhypersolvable_cert(&g));
        }
    }

    #[test]
    fn chordality() {
        assert!(is_chordal(&Graph::complete(5)));
        assert!(!is_chordal(&Graph::cycle(4)));
        assert!(!is_chordal(&Graph::wheel()));
        assert!(is_chordal(&Graph::path(5)));
        assert!(!nonhypersolvable_cert(&Graph::complete(3)));
        assert!(!nonhypersolvable_cert(&Graph::cycle(4)));
    }
}
