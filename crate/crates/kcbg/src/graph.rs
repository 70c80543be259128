//! Simple bipartite graphs of order (n, m). Vertices are bare indices:
//! u_i with i in [0, n) on the larger class U, v_j with j in [0, m) on V.
//! Storage is U-side adjacency; the V-side index is derived lazily. Graphs
//! are immutable once built and positional (no vertex relabeling).

use std::sync::OnceLock;

use crate::error::Error;

#[derive(Debug)]
pub struct BipartiteGraph {
    n: usize,
    m: usize,
    adj_u: Vec<Vec<usize>>,
    edge_count: usize,
    adj_v: OnceLock<Vec<Vec<usize>>>,
}

impl Clone for BipartiteGraph {
    fn clone(&self) -> Self {
        BipartiteGraph {
            n: self.n,
            m: self.m,
            adj_u: self.adj_u.clone(),
            edge_count: self.edge_count,
            adj_v: OnceLock::new(),
        }
    }
}

impl PartialEq for BipartiteGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.m == other.m && self.adj_u == other.adj_u
    }
}

impl Eq for BipartiteGraph {}

/// Min and max degree on each side. Empty sides report (0, 0).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeProfile {
    pub min_u: usize,
    pub max_u: usize,
    pub min_v: usize,
    pub max_v: usize,
}

impl BipartiteGraph {
    /// Builds a graph from an edge list. Duplicate edges collapse; indices
    /// outside [0, n) x [0, m) are an error.
    pub fn build(n: usize, m: usize, edges: &[(usize, usize)]) -> Result<Self, Error> {
        let mut adj_u = vec![Vec::new(); n];
        for &(i, j) in edges {
            if i >= n || j >= m {
                return Err(Error::OutOfRange(format!(
                    "edge (u{i}, v{j}) outside order ({n}, {m})"
                )));
            }
            adj_u[i].push(j);
        }
        let mut edge_count = 0;
        for row in &mut adj_u {
            row.sort_unstable();
            row.dedup();
            edge_count += row.len();
        }
        Ok(BipartiteGraph {
            n,
            m,
            adj_u,
            edge_count,
            adj_v: OnceLock::new(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Edges in ascending (i, j) order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count);
        for (i, row) in self.adj_u.iter().enumerate() {
            for &j in row {
                out.push((i, j));
            }
        }
        out
    }

    /// Neighbors of u_i, ascending.
    pub fn neighbors_u(&self, i: usize) -> &[usize] {
        &self.adj_u[i]
    }

    /// Neighbors of v_j, ascending.
    pub fn neighbors_v(&self, j: usize) -> &[usize] {
        &self.adj_v()[j]
    }

    fn adj_v(&self) -> &Vec<Vec<usize>> {
        self.adj_v.get_or_init(|| {
            let mut adj_v = vec![Vec::new(); self.m];
            for (i, row) in self.adj_u.iter().enumerate() {
                for &j in row {
                    adj_v[j].push(i);
                }
            }
            // Rows come out ascending because i ascends in the outer loop.
            adj_v
        })
    }

    pub fn degree_u(&self, i: usize) -> usize {
        self.adj_u[i].len()
    }

    pub fn degree_v(&self, j: usize) -> usize {
        self.adj_v()[j].len()
    }

    /// N(B) for a set B of V-indices, as ascending U-indices.
    pub fn neighborhood_v(&self, b: &[usize]) -> Result<Vec<usize>, Error> {
        let mut seen = vec![false; self.n];
        for &j in b {
            if j >= self.m {
                return Err(Error::OutOfRange(format!("v{j} outside [0, {})", self.m)));
            }
            for &i in &self.adj_v()[j] {
                seen[i] = true;
            }
        }
        Ok(mark_indices(&seen))
    }

    /// N(S) for a set S of U-indices, as ascending V-indices.
    pub fn neighborhood_u(&self, s: &[usize]) -> Result<Vec<usize>, Error> {
        let mut seen = vec![false; self.m];
        for &i in s {
            if i >= self.n {
                return Err(Error::OutOfRange(format!("u{i} outside [0, {})", self.n)));
            }
            for &j in &self.adj_u[i] {
                seen[j] = true;
            }
        }
        Ok(mark_indices(&seen))
    }

    /// Subgraph induced by a set of U-indices. The kept vertices are
    /// reindexed 0.. in ascending order of their original index; the V side
    /// is untouched.
    pub fn induced_u(&self, u_keep: &[usize]) -> Result<BipartiteGraph, Error> {
        let mut keep = u_keep.to_vec();
        keep.sort_unstable();
        keep.dedup();
        if let Some(&bad) = keep.iter().find(|&&i| i >= self.n) {
            return Err(Error::OutOfRange(format!("u{bad} outside [0, {})", self.n)));
        }
        let adj_u: Vec<Vec<usize>> = keep.iter().map(|&i| self.adj_u[i].clone()).collect();
        let edge_count = adj_u.iter().map(Vec::len).sum();
        Ok(BipartiteGraph {
            n: keep.len(),
            m: self.m,
            adj_u,
            edge_count,
            adj_v: OnceLock::new(),
        })
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let (min_u, max_u) = min_max(self.adj_u.iter().map(Vec::len));
        let (min_v, max_v) = min_max(self.adj_v().iter().map(Vec::len));
        DegreeProfile {
            min_u,
            max_u,
            min_v,
            max_v,
        }
    }

    /// True when every U-degree is a and every V-degree is b.
    pub fn is_biregular(&self, a: usize, b: usize) -> bool {
        self.adj_u.iter().all(|r| r.len() == a) && self.adj_v().iter().all(|r| r.len() == b)
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i < self.n && self.adj_u[i].binary_search(&j).is_ok()
    }
}

fn mark_indices(seen: &[bool]) -> Vec<usize> {
    seen.iter()
        .enumerate()
        .filter_map(|(i, &s)| s.then_some(i))
        .collect()
}

fn min_max(degrees: impl Iterator<Item = usize>) -> (usize, usize) {
    let mut min = usize::MAX;
    let mut max = 0;
    let mut any = false;
    for d in degrees {
        any = true;
        min = min.min(d);
        max = max.max(d);
    }
    if any {
        (min, max)
    } else {
        (0, 0)
    }
}

/// A matching in a host graph: pairwise disjoint (u, v) pairs, each an edge
/// of the host. Pairs are kept sorted by u.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    pairs: Vec<(usize, usize)>,
}

impl Matching {
    /// Validates pairs against the host: every pair an edge, no vertex used
    /// twice on either side.
    pub fn new(host: &BipartiteGraph, pairs: Vec<(usize, usize)>) -> Result<Self, Error> {
        let mut pairs = pairs;
        pairs.sort_unstable();
        let mut used_v = vec![false; host.m()];
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParams(format!(
                    "u{} matched twice",
                    w[0].0
                )));
            }
        }
        for &(i, j) in &pairs {
            if !host.has_edge(i, j) {
                return Err(Error::InvalidParams(format!(
                    "(u{i}, v{j}) is not an edge of the host"
                )));
            }
            if used_v[j] {
                return Err(Error::InvalidParams(format!("v{j} matched twice")));
            }
            used_v[j] = true;
        }
        Ok(Matching { pairs })
    }

    pub(crate) fn from_pairs_unchecked(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        Matching { pairs }
    }

    pub fn size(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    /// True when the matching saturates a V side of the given size.
    pub fn covers_v(&self, m: usize) -> bool {
        self.pairs.len() == m
    }

    pub fn v_of_u(&self, i: usize) -> Option<usize> {
        self.pairs
            .binary_search_by_key(&i, |&(u, _)| u)
            .ok()
            .map(|idx| self.pairs[idx].1)
    }

    pub fn u_of_v(&self, j: usize) -> Option<usize> {
        self.pairs.iter().find(|&&(_, v)| v == j).map(|&(u, _)| u)
    }
}
