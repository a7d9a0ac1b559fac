//! Labeled undirected graphs and the clique queries used by the reconstructions.

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("label {label} out of range for {n} vertices")]
    LabelOutOfRange { label: usize, n: usize },
    #[error("self-loop at {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("({0}, {1}) is not an edge")]
    NonEdge(usize, usize),
    #[error("mapping is not a bijection on 0..{0}")]
    NotBijective(usize),
    #[error("graphs have different vertex counts ({0} vs {1})")]
    SizeMismatch(usize, usize),
    #[error("brute-force clique enumeration supports at most {limit} vertices, got {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Undirected simple graph on labels `0..n`, stored as sorted adjacency
/// lists plus a bit matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VisGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl VisGraph {
    /// Graph with no edges.
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Self { n, words, bits: vec![0; n * words], adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(GraphError::LabelOutOfRange { label: w, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            if g.has_edge(u, v) {
                return Err(GraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_bit(u, v, true);
            g.set_bit(v, u, true);
            g.m += 1;
        }
        for u in 0..n {
            g.adj[u] = (0..n).filter(|&v| g.has_edge(u, v)).collect();
        }
        Ok(g)
    }

    /// Complete graph on `n` labels.
    pub fn complete(n: usize) -> Self {
        let edges: Vec<_> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    /// Cycle `0 - 1 - ... - (n-1) - 0`.
    pub fn cycle(n: usize) -> Self {
        let edges: Vec<_> = (0..n).map(|u| (u, (u + 1) % n)).collect();
        Self::from_edges(n, &edges).unwrap()
    }

    fn set_bit(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.bits[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    /// Sorted neighbor list of `u`.
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
            .collect()
    }

    /// Sorted degree sequence.
    pub fn degree_multiset(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|u| self.degree(u)).collect();
        d.sort_unstable();
        d
    }

    /// Copy of the graph with the edge `(u, v)` toggled.
    pub fn with_toggled_edge(&self, u: usize, v: usize) -> Result<Self, GraphError> {
        if u >= self.n || v >= self.n {
            return Err(GraphError::LabelOutOfRange { label: u.max(v), n: self.n });
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        let (a, b) = (u.min(v), u.max(v));
        let mut edges = self.edges();
        match edges.binary_search(&(a, b)) {
            Ok(pos) => {
                edges.remove(pos);
            }
            Err(pos) => edges.insert(pos, (a, b)),
        }
        Self::from_edges(self.n, &edges)
    }

    /// Copy with label `u` renamed to `perm[u]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, GraphError> {
        check_bijection(perm, self.n)?;
        let edges: Vec<_> = self.edges().into_iter().map(|(u, v)| (perm[u], perm[v])).collect();
        Self::from_edges(self.n, &edges)
    }

    /// Whether the given labels are pairwise adjacent.
    pub fn is_clique(&self, labels: &[usize]) -> bool {
        labels
            .iter()
            .enumerate()
            .all(|(i, &u)| labels[i + 1..].iter().all(|&v| self.has_edge(u, v)))
    }

    fn require_edge(&self, u: usize, v: usize) -> Result<(), GraphError> {
        if self.has_edge(u, v) {
            Ok(())
        } else {
            Err(GraphError::NonEdge(u, v))
        }
    }
}

fn check_bijection(mapping: &[usize], n: usize) -> Result<(), GraphError> {
    if mapping.len() != n {
        return Err(GraphError::NotBijective(n));
    }
    let mut seen = vec![false; n];
    for &t in mapping {
        if t >= n || std::mem::replace(&mut seen[t], true) {
            return Err(GraphError::NotBijective(n));
        }
    }
    Ok(())
}

/// A 1-simplicial edge together with its unique maximal clique.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EdgeCliqueRecord {
    /// Endpoints with the smaller label first.
    pub edge: (usize, usize),
    /// Sorted labels of the clique.
    pub clique: Vec<usize>,
    pub size: usize,
}

/// `N(u) ∩ N(v)` for an edge `(u, v)`, sorted.
pub fn common_neighborhood(g: &VisGraph, u: usize, v: usize) -> Result<Vec<usize>, GraphError> {
    g.require_edge(u, v)?;
    let mut mark = vec![false; g.n];
    for &w in g.neighbors(u) {
        mark[w] = true;
    }
    Ok(g.neighbors(v).iter().copied().filter(|&w| mark[w]).collect())
}

/// The unique maximal clique of `(u, v)` if the edge is 1-simplicial.
pub fn one_simplicial_clique(g: &VisGraph, u: usize, v: usize) -> Result<Option<EdgeCliqueRecord>, GraphError> {
    let x = common_neighborhood(g, u, v)?;
    if !g.is_clique(&x) {
        return Ok(None);
    }
    let mut clique = x;
    clique.push(u);
    clique.push(v);
    clique.sort_unstable();
    let size = clique.len();
    Ok(Some(EdgeCliqueRecord { edge: (u.min(v), u.max(v)), clique, size }))
}

/// Whether `(u, v)` is 1-simplicial and its clique has exactly `k` vertices.
pub fn is_one_simplicial_in_k_clique(
    g: &VisGraph,
    u: usize,
    v: usize,
    k: usize,
) -> Result<Option<EdgeCliqueRecord>, GraphError> {
    let x = common_neighborhood(g, u, v)?;
    if x.len() + 2 != k {
        return Ok(None);
    }
    one_simplicial_clique(g, u, v)
}

/// All 1-simplicial edges, optionally restricted to a clique size, in
/// lexicographic edge order.
pub fn enumerate_one_simplicial_edges(g: &VisGraph, size_filter: Option<usize>) -> Vec<EdgeCliqueRecord> {
    g.edges()
        .into_iter()
        .filter_map(|(u, v)| match size_filter {
            Some(k) => is_one_simplicial_in_k_clique(g, u, v, k).unwrap(),
            None => one_simplicial_clique(g, u, v).unwrap(),
        })
        .collect()
}

/// Whether `mapping` carries the edge set of `g1` exactly onto that of `g2`.
pub fn labeled_equal(g1: &VisGraph, g2: &VisGraph, mapping: &[usize]) -> Result<bool, GraphError> {
    if g1.n != g2.n {
        return Err(GraphError::SizeMismatch(g1.n, g2.n));
    }
    check_bijection(mapping, g1.n)?;
    if g1.m != g2.m {
        return Ok(false);
    }
    Ok(g1.edges().into_iter().all(|(u, v)| g2.has_edge(mapping[u], mapping[v])))
}

/// Largest graph accepted by [`brute_force_maximal_cliques`].
pub const BRUTE_FORCE_LIMIT: usize = 64;

/// Every maximal clique, by Bron–Kerbosch with pivoting. Cliques are sorted
/// and listed in lexicographic order.
pub fn brute_force_maximal_cliques(g: &VisGraph) -> Result<Vec<Vec<usize>>, GraphError> {
    if g.n > BRUTE_FORCE_LIMIT {
        return Err(GraphError::TooLarge { n: g.n, limit: BRUTE_FORCE_LIMIT });
    }
    let nbr: Vec<u64> = (0..g.n).map(|u| g.bits[u * g.words]).collect();
    let all = if g.n == 64 { u64::MAX } else { (1u64 << g.n) - 1 };
    let mut out = Vec::new();
    bron_kerbosch(&nbr, 0, all, 0, &mut out);
    let mut cliques: Vec<Vec<usize>> = out
        .into_iter()
        .map(|r| (0..g.n).filter(|&i| r >> i & 1 == 1).collect())
        .collect();
    cliques.sort();
    Ok(cliques)
}

fn bron_kerbosch(nbr: &[u64], r: u64, mut p: u64, mut x: u64, out: &mut Vec<u64>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let candidates = p | x;
    let pivot = (0..nbr.len())
        .filter(|&u| candidates >> u & 1 == 1)
        .max_by_key(|&u| (p & nbr[u]).count_ones())
        .unwrap();
    let mut todo = p & !nbr[pivot];
    while todo != 0 {
        let v = todo.trailing_zeros() as usize;
        todo &= todo - 1;
        bron_kerbosch(nbr, r | 1 << v, p & nbr[v], x & nbr[v], out);
        p &= !(1 << v);
        x |= 1 << v;
    }
}

/// A label bijection carrying `g` onto `h`, found by backtracking with degree
/// pruning. Meant for small graphs only.
pub fn find_isomorphism(g: &VisGraph, h: &VisGraph) -> Option<Vec<usize>> {
    if g.n != h.n || g.m != h.m || g.degree_multiset() != h.degree_multiset() {
        return None;
    }
    let mut order: Vec<usize> = (0..g.n).collect();
    order.sort_by_key(|&u| std::cmp::Reverse(g.degree(u)));
    let mut map = vec![usize::MAX; g.n];
    let mut used = vec![false; h.n];
    if extend_isomorphism(g, h, &order, 0, &mut map, &mut used) {
        Some(map)
    } else {
        None
    }
}

fn extend_isomorphism(g: &VisGraph, h: &VisGraph, order: &[usize], k: usize, map: &mut [usize], used: &mut [bool]) -> bool {
    let Some(&u) = order.get(k) else {
        return true;
    };
    for t in 0..h.n {
        if used[t] || h.degree(t) != g.degree(u) {
            continue;
        }
        let consistent = order[..k].iter().all(|&w| g.has_edge(u, w) == h.has_edge(t, map[w]));
        if !consistent {
            continue;
        }
        map[u] = t;
        used[t] = true;
        if extend_isomorphism(g, h, order, k + 1, map, used) {
            return true;
        }
        used[t] = false;
    }
    map[u] = usize::MAX;
    false
}
