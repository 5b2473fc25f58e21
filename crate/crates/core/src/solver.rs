//! Exact maximum clique by bitset branch-and-bound, and the decision
//! pipelines built on top of the compressions.
//!
//! Vertices are renumbered by a smallest-last degeneracy order (the last
//! removed vertex first) and candidates are bounded by greedy coloring. The
//! reported clique is the first maximum clique met in depth-first order,
//! which does not depend on the initial bound. With several threads the
//! root branches are searched twice: once with a shared bound to find the
//! clique number `ω`, then with the bound fixed at `ω - 1` to pick the
//! lowest-indexed branch holding an `ω`-clique. Both runs yield the same
//! witness the sequential search would.

use std::sync::atomic::{AtomicBool, AtomicU64, AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bitset::BitSet;
use crate::compression::{
    compress_any, compress_independent_set, CliqueInstance, CompressionError, TuranCliqueInstance,
    Verdict,
};
use crate::graph::{Graph, GraphError};

pub const DEFAULT_NODE_BUDGET: u64 = 100_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolverError {
    #[error("search node budget of {budget} exceeded")]
    BudgetExceeded { budget: u64 },
    #[error(transparent)]
    Compression(#[from] CompressionError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("witness {witness:?} fails verification against the input graph")]
    InvalidWitness { witness: Vec<usize> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    pub node_budget: u64,
    /// Worker threads for the root branches; `0` means all available cores.
    pub threads: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            threads: 1,
        }
    }
}

impl SolverConfig {
    fn worker_count(&self) -> usize {
        match self.threads {
            0 => std::thread::available_parallelism().map_or(1, |n| n.get()),
            t => t,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MaxClique {
    pub size: usize,
    /// Sorted vertex ids.
    pub clique: Vec<usize>,
    pub nodes: u64,
}

struct Exceeded;

struct Search<'a> {
    adj: &'a [BitSet],
    nodes: &'a AtomicU64,
    budget: u64,
    abort: &'a AtomicBool,
}

impl Search<'_> {
    fn tick(&self) -> Result<(), Exceeded> {
        let seen = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if seen > self.budget || self.abort.load(Ordering::Relaxed) {
            self.abort.store(true, Ordering::Relaxed);
            return Err(Exceeded);
        }
        Ok(())
    }

    /// Greedy sequential coloring; `colors` is non-decreasing along `order`.
    fn color_sort(&self, p: &BitSet) -> (Vec<usize>, Vec<usize>) {
        let mut order = Vec::with_capacity(p.count());
        let mut colors = Vec::with_capacity(order.capacity());
        let mut uncolored = p.clone();
        let mut color = 0;
        while !uncolored.is_empty() {
            color += 1;
            let mut q = uncolored.clone();
            while let Some(v) = q.first() {
                q.remove(v);
                q.difference_with(&self.adj[v]);
                uncolored.remove(v);
                order.push(v);
                colors.push(color);
            }
        }
        (order, colors)
    }

    /// Returns `Ok(true)` once a clique is recorded and `stop_at_first` is set.
    fn expand(
        &self,
        clique: &mut Vec<usize>,
        mut p: BitSet,
        best: &AtomicUsize,
        out: &mut Option<Vec<usize>>,
        stop_at_first: bool,
    ) -> Result<bool, Exceeded> {
        self.tick()?;
        let (order, colors) = self.color_sort(&p);
        for i in (0..order.len()).rev() {
            if clique.len() + colors[i] <= best.load(Ordering::Relaxed) {
                return Ok(false);
            }
            let v = order[i];
            if self.branch(clique, &p, v, best, out, stop_at_first)? {
                return Ok(true);
            }
            p.remove(v);
        }
        Ok(false)
    }

    fn branch(
        &self,
        clique: &mut Vec<usize>,
        p: &BitSet,
        v: usize,
        best: &AtomicUsize,
        out: &mut Option<Vec<usize>>,
        stop_at_first: bool,
    ) -> Result<bool, Exceeded> {
        clique.push(v);
        let mut next = p.clone();
        next.intersect_with(&self.adj[v]);
        let stop = if next.is_empty() {
            if clique.len() > best.load(Ordering::Relaxed) {
                best.fetch_max(clique.len(), Ordering::Relaxed);
                *out = Some(clique.clone());
                stop_at_first
            } else {
                false
            }
        } else {
            self.expand(clique, next, best, out, stop_at_first)?
        };
        clique.pop();
        Ok(stop)
    }

    /// Root branch `i`: vertex `order[i]` with candidates `order[..i]`.
    fn root_branch(
        &self,
        order: &[usize],
        i: usize,
        best: &AtomicUsize,
        out: &mut Option<Vec<usize>>,
        stop_at_first: bool,
    ) -> Result<bool, Exceeded> {
        let p = BitSet::from_iter_with_len(self.adj.len(), order[..=i].iter().copied());
        self.branch(&mut Vec::new(), &p, order[i], best, out, stop_at_first)
    }
}

/// Smallest-last order reversed: position 0 holds the last vertex removed.
fn degeneracy_order(g: &Graph) -> Vec<usize> {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let u = (0..n)
            .filter(|&u| !removed[u])
            .min_by_key(|&u| (degree[u], u))
            .expect("vertices remain");
        removed[u] = true;
        order.push(u);
        for v in g.neighbors(u) {
            if !removed[v] {
                degree[v] -= 1;
            }
        }
    }
    order.reverse();
    order
}

fn greedy_clique(adj: &[BitSet]) -> usize {
    let mut candidates = BitSet::full(adj.len());
    let mut size = 0;
    while let Some(v) = candidates.first() {
        size += 1;
        candidates.intersect_with(&adj[v]);
    }
    size
}

/// Exact maximum clique of `g` under a node budget.
pub fn max_clique_exact(g: &Graph, config: &SolverConfig) -> Result<MaxClique, SolverError> {
    let n = g.n();
    if n == 0 {
        return Ok(MaxClique {
            size: 0,
            clique: Vec::new(),
            nodes: 0,
        });
    }
    let order = degeneracy_order(g);
    let mut position = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        position[v] = i;
    }
    let adj: Vec<BitSet> = order
        .iter()
        .map(|&v| BitSet::from_iter_with_len(n, g.neighbors(v).map(|w| position[w])))
        .collect();

    let nodes = AtomicU64::new(0);
    let abort = AtomicBool::new(false);
    let search = Search {
        adj: &adj,
        nodes: &nodes,
        budget: config.node_budget,
        abort: &abort,
    };
    let exceeded = |_| SolverError::BudgetExceeded {
        budget: config.node_budget,
    };

    search.tick().map_err(exceeded)?;
    let (root_order, root_colors) = search.color_sort(&BitSet::full(n));
    let initial = greedy_clique(&adj) - 1;
    let workers = config.worker_count().min(n);

    let found = if workers <= 1 {
        let best = AtomicUsize::new(initial);
        let mut out = None;
        for i in (0..n).rev() {
            if root_colors[i] <= best.load(Ordering::Relaxed) {
                break;
            }
            search
                .root_branch(&root_order, i, &best, &mut out, false)
                .map_err(exceeded)?;
        }
        out.expect("the bound starts below the clique number")
    } else {
        parallel_search(&search, &root_order, &root_colors, initial, workers).map_err(exceeded)?
    };

    let mut clique: Vec<usize> = found.into_iter().map(|v| order[v]).collect();
    clique.sort_unstable();
    Ok(MaxClique {
        size: clique.len(),
        clique,
        nodes: nodes.load(Ordering::Relaxed),
    })
}

fn parallel_search(
    search: &Search<'_>,
    order: &[usize],
    colors: &[usize],
    initial: usize,
    workers: usize,
) -> Result<Vec<usize>, Exceeded> {
    let n = order.len();
    let failed = AtomicBool::new(false);

    // Clique number with a bound shared by all workers.
    let best = AtomicUsize::new(initial);
    let next = AtomicUsize::new(0);
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| {
                let mut out = None;
                loop {
                    let j = next.fetch_add(1, Ordering::Relaxed);
                    if j >= n || failed.load(Ordering::Relaxed) {
                        break;
                    }
                    let i = n - 1 - j;
                    if colors[i] <= best.load(Ordering::Relaxed) {
                        break;
                    }
                    if search
                        .root_branch(order, i, &best, &mut out, false)
                        .is_err()
                    {
                        failed.store(true, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });
    if failed.load(Ordering::Relaxed) {
        return Err(Exceeded);
    }
    let omega = best.load(Ordering::Relaxed);

    // First branch, in sequential order, that holds an ω-clique.
    let next = AtomicUsize::new(0);
    let lowest = AtomicUsize::new(usize::MAX);
    let hits: Mutex<Vec<(usize, Vec<usize>)>> = Mutex::new(Vec::new());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let j = next.fetch_add(1, Ordering::Relaxed);
                if j >= n || j > lowest.load(Ordering::Relaxed) || failed.load(Ordering::Relaxed) {
                    break;
                }
                let i = n - 1 - j;
                if colors[i] < omega {
                    break;
                }
                let bound = AtomicUsize::new(omega - 1);
                let mut out = None;
                match search.root_branch(order, i, &bound, &mut out, true) {
                    Ok(true) => {
                        lowest.fetch_min(j, Ordering::Relaxed);
                        hits.lock().unwrap().push((j, out.expect("recorded")));
                    }
                    Ok(false) => {}
                    Err(Exceeded) => {
                        failed.store(true, Ordering::Relaxed);
                        break;
                    }
                }
            });
        }
    });
    if failed.load(Ordering::Relaxed) {
        return Err(Exceeded);
    }
    let hits = hits.into_inner().unwrap();
    Ok(hits
        .into_iter()
        .min_by_key(|(j, _)| *j)
        .expect("some branch holds an ω-clique")
        .1)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Answer {
    Yes,
    No,
}

impl Answer {
    pub fn is_yes(self) -> bool {
        self == Answer::Yes
    }
}

impl From<bool> for Answer {
    fn from(yes: bool) -> Self {
        if yes {
            Answer::Yes
        } else {
            Answer::No
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveStats {
    pub nodes: u64,
    pub wall_time_ns: u64,
    /// Vertices of the open kernel handed to the exact solver.
    pub kernel_vertices: Option<usize>,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decision {
    pub answer: Answer,
    /// Sorted ids of the input graph; present iff the answer is yes.
    pub witness: Option<Vec<usize>>,
    pub stats: SolveStats,
}

impl Decision {
    pub fn wall_time(&self) -> Duration {
        Duration::from_nanos(self.stats.wall_time_ns)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Clique,
    IndependentSet,
}

/// Whether `s` (as a set) has at least `ell` vertices and is a clique or an
/// independent set of `g`.
pub fn verify_witness(g: &Graph, s: &[usize], ell: usize, mode: Mode) -> Result<bool, SolverError> {
    if let Some(&vertex) = s.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex, n: g.n() }.into());
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    if set.len() < ell {
        return Ok(false);
    }
    Ok(match mode {
        Mode::Clique => g.is_clique(&set),
        Mode::IndependentSet => g.is_independent(&set),
    })
}

fn decide(
    compressed: &CliqueInstance,
    original: &Graph,
    ell: usize,
    mode: Mode,
    config: &SolverConfig,
    start: Instant,
) -> Result<Decision, SolverError> {
    let mut nodes = 0;
    let witness = match &compressed.verdict {
        Verdict::TriviallyYes { witness } => Some(witness.clone()),
        Verdict::TriviallyNo => None,
        Verdict::Open { graph, ell } => {
            let found = max_clique_exact(graph, config)?;
            nodes = found.nodes;
            (found.size >= *ell).then(|| compressed.lift_clique(&found.clique[..*ell]))
        }
    };
    if let Some(w) = &witness {
        if !verify_witness(original, w, ell, mode)? {
            return Err(SolverError::InvalidWitness { witness: w.clone() });
        }
    }
    Ok(Decision {
        answer: witness.is_some().into(),
        witness,
        stats: SolveStats {
            nodes,
            wall_time_ns: start.elapsed().as_nanos() as u64,
            kernel_vertices: compressed.kernel_vertices(),
            verdict: compressed.verdict.label().to_string(),
        },
    })
}

/// Does the instance graph contain a clique of size `ℓ`?
pub fn solve_turan_clique(
    inst: &TuranCliqueInstance,
    config: &SolverConfig,
) -> Result<Decision, SolverError> {
    let start = Instant::now();
    let compressed = compress_any(inst)?;
    decide(
        &compressed,
        inst.graph(),
        inst.ell(),
        Mode::Clique,
        config,
        start,
    )
}

/// Does `g` contain an independent set of size `ceil(n / (d + 1)) + t`?
pub fn solve_turan_is(g: &Graph, t: usize, config: &SolverConfig) -> Result<Decision, SolverError> {
    let start = Instant::now();
    let compressed = compress_independent_set(g, t)?;
    decide(
        &compressed.instance,
        g,
        compressed.target,
        Mode::IndependentSet,
        config,
        start,
    )
}
