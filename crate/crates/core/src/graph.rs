//! Undirected simple graphs on dense vertex ids `0..n`.
//!
//! Adjacency is stored as one bitset per vertex while `n` stays at or below
//! a dense threshold, and as sorted neighbor arrays above it. Both layouts
//! sit behind the same [`Graph`] interface and compare equal whenever they
//! hold the same edge set.

use num_rational::Ratio;
use thiserror::Error;

use crate::bitset::{BitSet, Ones};

/// Vertex count at or below which new graphs use bitset rows.
pub const DEFAULT_DENSE_THRESHOLD: usize = 100_000;

/// Largest supported vertex count (`2^31 - 1`).
pub const MAX_VERTICES: usize = (1 << 31) - 1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },
    #[error("vertex count {0} exceeds the supported maximum of 2^31 - 1")]
    TooManyVertices(usize),
    #[error("operation needs at least one vertex")]
    Empty,
}

#[derive(Clone)]
enum Adjacency {
    Dense(Vec<BitSet>),
    Sparse(Vec<Vec<u32>>),
}

#[derive(Clone)]
pub struct Graph {
    adj: Adjacency,
    degrees: Vec<u32>,
    m: u64,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    ///
    /// Panics if `n` exceeds [`MAX_VERTICES`]; use [`Graph::try_new`] for a
    /// checked variant.
    pub fn new(n: usize) -> Self {
        Self::try_new(n).expect("vertex count exceeds MAX_VERTICES")
    }

    pub fn try_new(n: usize) -> Result<Self, GraphError> {
        Self::with_dense_threshold(n, DEFAULT_DENSE_THRESHOLD)
    }

    /// Edgeless graph on `n` vertices, bitset-backed iff `n <= threshold`.
    pub fn with_dense_threshold(n: usize, threshold: usize) -> Result<Self, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let adj = if n <= threshold {
            Adjacency::Dense(vec![BitSet::new(n); n])
        } else {
            Adjacency::Sparse(vec![Vec::new(); n])
        };
        Ok(Self {
            adj,
            degrees: vec![0; n],
            m: 0,
        })
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Self::try_new(n)?;
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    /// Complete graph `K_n`.
    pub fn complete(n: usize) -> Self {
        Self::new(n).complement()
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    #[inline]
    pub fn edge_count(&self) -> u64 {
        self.m
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.adj, Adjacency::Dense(_))
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.degrees[u] as usize
    }

    pub fn max_degree(&self) -> usize {
        self.degrees.iter().copied().max().unwrap_or(0) as usize
    }

    fn check(&self, u: usize) -> Result<(), GraphError> {
        if u < self.n() {
            Ok(())
        } else {
            Err(GraphError::VertexOutOfRange {
                vertex: u,
                n: self.n(),
            })
        }
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match &self.adj {
            Adjacency::Dense(rows) => rows[u].contains(v),
            Adjacency::Sparse(lists) => lists[u].binary_search(&(v as u32)).is_ok(),
        }
    }

    /// Inserts `{u, v}`. Returns `Ok(false)` if the edge was already present.
    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        if u == v {
            return Err(GraphError::SelfLoop { vertex: u });
        }
        let fresh = match &mut self.adj {
            Adjacency::Dense(rows) => {
                let fresh = rows[u].insert(v);
                rows[v].insert(u);
                fresh
            }
            Adjacency::Sparse(lists) => match lists[u].binary_search(&(v as u32)) {
                Ok(_) => false,
                Err(pos) => {
                    lists[u].insert(pos, v as u32);
                    let pos = lists[v].binary_search(&(u as u32)).unwrap_err();
                    lists[v].insert(pos, u as u32);
                    true
                }
            },
        };
        if fresh {
            self.degrees[u] += 1;
            self.degrees[v] += 1;
            self.m += 1;
        }
        Ok(fresh)
    }

    /// Deletes `{u, v}`. Returns `Ok(false)` if the edge was absent.
    pub fn remove_edge(&mut self, u: usize, v: usize) -> Result<bool, GraphError> {
        self.check(u)?;
        self.check(v)?;
        let present = match &mut self.adj {
            Adjacency::Dense(rows) => {
                let present = rows[u].remove(v);
                rows[v].remove(u);
                present
            }
            Adjacency::Sparse(lists) => match lists[u].binary_search(&(v as u32)) {
                Ok(pos) => {
                    lists[u].remove(pos);
                    let pos = lists[v].binary_search(&(u as u32)).unwrap();
                    lists[v].remove(pos);
                    true
                }
                Err(_) => false,
            },
        };
        if present {
            self.degrees[u] -= 1;
            self.degrees[v] -= 1;
            self.m -= 1;
        }
        Ok(present)
    }

    /// Neighbors of `u` in increasing order.
    pub fn neighbors(&self, u: usize) -> Neighbors<'_> {
        match &self.adj {
            Adjacency::Dense(rows) => Neighbors::Dense(rows[u].iter()),
            Adjacency::Sparse(lists) => Neighbors::Sparse(lists[u].iter()),
        }
    }

    /// The bitset row of `u` when the graph is bitset-backed.
    pub fn row(&self, u: usize) -> Option<&BitSet> {
        match &self.adj {
            Adjacency::Dense(rows) => rows.get(u),
            Adjacency::Sparse(_) => None,
        }
    }

    /// Neighborhood of `u` as a bitset, copied or materialized.
    pub fn neighbor_set(&self, u: usize) -> BitSet {
        match self.row(u) {
            Some(r) => r.clone(),
            None => BitSet::from_iter_with_len(self.n(), self.neighbors(u)),
        }
    }

    /// All edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n()).flat_map(move |u| {
            self.neighbors(u)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    pub fn complement(&self) -> Graph {
        let n = self.n();
        let mut out = Graph::new(n);
        match (&self.adj, &mut out.adj) {
            (Adjacency::Dense(src), Adjacency::Dense(dst)) => {
                for (u, (s, d)) in src.iter().zip(dst.iter_mut()).enumerate() {
                    *d = s.clone();
                    d.complement();
                    d.remove(u);
                }
                out.degrees = self.degrees.iter().map(|&d| (n as u32 - 1) - d).collect();
                out.m = (n as u64) * (n as u64).saturating_sub(1) / 2 - self.m;
            }
            _ => {
                for u in 0..n {
                    for v in u + 1..n {
                        if !self.has_edge(u, v) {
                            out.add_edge(u, v).expect("in range");
                        }
                    }
                }
            }
        }
        out
    }

    /// Subgraph induced by `vertices`, renumbered by increasing original id.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<(Graph, VertexMap), GraphError> {
        let mut to_original = vertices.to_vec();
        to_original.sort_unstable();
        to_original.dedup();
        if let Some(&last) = to_original.last() {
            self.check(last)?;
        }
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in to_original.iter().enumerate() {
            local[v] = i as u32;
        }
        let mut sub = Graph::new(to_original.len());
        for (i, &v) in to_original.iter().enumerate() {
            for w in self.neighbors(v) {
                let j = local[w];
                if j != u32::MAX && (j as usize) > i {
                    sub.add_edge(i, j as usize).expect("in range");
                }
            }
        }
        Ok((sub, VertexMap { to_original }))
    }

    /// Average degree `2m / n` as a reduced fraction.
    pub fn average_degree(&self) -> Result<Ratio<u64>, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::Empty);
        }
        Ok(Ratio::new(2 * self.m, self.n() as u64))
    }

    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && self.has_edge(u, v))
        })
    }

    pub fn is_independent(&self, vertices: &[usize]) -> bool {
        vertices.iter().enumerate().all(|(i, &u)| {
            vertices[i + 1..]
                .iter()
                .all(|&v| u != v && !self.has_edge(u, v))
        })
    }
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.n() == other.n()
            && self.m == other.m
            && self.degrees == other.degrees
            && (0..self.n()).all(|u| self.neighbors(u).eq(other.neighbors(u)))
    }
}

impl Eq for Graph {}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("m", &self.m)
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

pub enum Neighbors<'a> {
    Dense(Ones<'a>),
    Sparse(std::slice::Iter<'a, u32>),
}

impl Iterator for Neighbors<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        match self {
            Neighbors::Dense(it) => it.next(),
            Neighbors::Sparse(it) => it.next().map(|&v| v as usize),
        }
    }
}

/// Id table produced by [`Graph::induced_subgraph`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct VertexMap {
    /// `to_original[new_id]` is the id in the parent graph.
    pub to_original: Vec<usize>,
}

impl VertexMap {
    pub fn original(&self, new_id: usize) -> usize {
        self.to_original[new_id]
    }

    pub fn local(&self, original: usize) -> Option<usize> {
        self.to_original.binary_search(&original).ok()
    }

    pub fn len(&self) -> usize {
        self.to_original.len()
    }

    pub fn is_empty(&self) -> bool {
        self.to_original.is_empty()
    }
}
