//! Compression of Turán's Clique instances into small Clique instances.
//!
//! For `ℓ <= r + 1` the input graph is partitioned with
//! [`erdos_partition`]; if the pivot clique is already large enough the
//! answer is yes, otherwise two reduction rules shrink the graph to at most
//! `5k` vertices:
//!
//! 1. a part that is independent and has an untouched vertex is deleted and
//!    `ℓ` drops by one (every maximal clique meets such a part exactly once);
//! 2. in every part, all but the lowest-id untouched vertex are deleted
//!    (untouched vertices of one part are twins).
//!
//! Larger `ℓ` is handled by [`shift_parameters`], which trades the gap
//! `t_ℓ(n) - t_r(n)` into the budget `k`.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::partition::{edit_report_with, erdos_partition, EditReport, Partition, PartitionError};
use crate::turan::{edge_surplus_check, turan_gap, EdgeCount, TuranError, TuranParams};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CompressionError {
    #[error("invalid instance: {0}")]
    InvalidInstance(String),
    #[error("edge count is {deficit} below t_r(n) - k")]
    SurplusViolated { deficit: i128 },
    #[error("l = {ell} exceeds r + 1 = {}; shift parameters first", r + 1)]
    TauTooLarge { r: usize, ell: usize },
    #[error("parameter shift needs l > r + 1, got r = {r}, l = {ell}")]
    ShiftNotNeeded { r: usize, ell: usize },
    #[error("t must be at least 1")]
    ZeroTarget,
    #[error("kernel size accounting failed: {0}")]
    BoundViolated(String),
    #[error(transparent)]
    Turan(#[from] TuranError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
}

/// `(G, r, k, ℓ)` with `|E(G)| >= t_r(n) - k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TuranCliqueInstance {
    graph: Graph,
    r: usize,
    k: EdgeCount,
    ell: usize,
}

impl TuranCliqueInstance {
    pub fn new(graph: Graph, r: usize, k: EdgeCount, ell: usize) -> Result<Self, CompressionError> {
        let n = graph.n();
        if r == 0 || r > n {
            return Err(CompressionError::InvalidInstance(format!(
                "need 1 <= r <= n, got r = {r}, n = {n}"
            )));
        }
        if ell == 0 || ell > n {
            return Err(CompressionError::InvalidInstance(format!(
                "need 1 <= l <= n, got l = {ell}, n = {n}"
            )));
        }
        let surplus = edge_surplus_check(&graph, r, k)?;
        if !surplus.valid {
            return Err(CompressionError::SurplusViolated {
                deficit: -surplus.slack,
            });
        }
        Ok(Self { graph, r, k, ell })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn into_graph(self) -> Graph {
        self.graph
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn k(&self) -> EdgeCount {
        self.k
    }

    pub fn ell(&self) -> usize {
        self.ell
    }

    /// `max(ℓ - r, 0)`.
    pub fn tau(&self) -> usize {
        self.ell.saturating_sub(self.r)
    }

    /// `floor(n / r)`.
    pub fn xi(&self) -> usize {
        self.graph.n() / self.r
    }

    pub fn summary(&self) -> InstanceSummary {
        InstanceSummary {
            n: self.graph.n(),
            m: self.graph.edge_count(),
            r: self.r,
            k: self.k,
            ell: self.ell,
            tau: self.tau(),
            xi: self.xi(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceSummary {
    pub n: usize,
    pub m: u64,
    pub r: usize,
    pub k: EdgeCount,
    pub ell: usize,
    pub tau: usize,
    pub xi: usize,
}

/// Result of a compression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// Equivalent to "does `graph` contain a clique of size `ell`".
    Open {
        graph: Graph,
        ell: usize,
    },
    /// Yes, with a clique of the required size in the source graph.
    TriviallyYes {
        witness: Vec<usize>,
    },
    TriviallyNo,
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Open { .. } => "open",
            Verdict::TriviallyYes { .. } => "trivially_yes",
            Verdict::TriviallyNo => "trivially_no",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftRecord {
    pub from_r: usize,
    pub from_k: EdgeCount,
    pub to_r: usize,
    pub to_k: EdgeCount,
}

/// Size accounting `|V(out)| <= |X| + |A| <= 2|R| + |A| <= 5k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Accounting {
    pub kernel_vertices: usize,
    pub touched: usize,
    pub added: usize,
    pub removed: usize,
    pub k: EdgeCount,
}

impl Accounting {
    pub fn holds(&self) -> bool {
        let x = self.touched as u128;
        let a = self.removed as u128;
        let r = self.added as u128;
        (self.kernel_vertices as u128) <= x + a && x + a <= 2 * r + a && 2 * r + a <= 5 * self.k
    }
}

/// Everything needed to audit or replay a compression.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompressionTrace {
    pub source_n: usize,
    /// `(r, k, ℓ)` the compression ran with, after shifting and lifting `k`.
    pub r: usize,
    pub k: EdgeCount,
    pub ell: usize,
    pub shift: Option<ShiftRecord>,
    /// Returned without partitioning (`r < 2` or `n <= 5k`).
    pub trivial: bool,
    pub partition: Option<Partition>,
    pub edits: Option<EditReport>,
    /// Indices of parts deleted by Rule 1, in order.
    pub rule1_parts: Vec<usize>,
    /// One untouched vertex per Rule 1 part; each sees every vertex outside
    /// its part, so these extend any clique of the kernel.
    pub rule1_representatives: Vec<usize>,
    pub rule2_removed: Vec<usize>,
    pub ell_decrements: usize,
    /// `kept[i]` is the source id of kernel vertex `i`.
    pub kept: Vec<usize>,
    pub accounting: Option<Accounting>,
}

impl CompressionTrace {
    /// Rebuilds the kernel graph from the source graph.
    pub fn replay(&self, source: &Graph) -> Graph {
        source
            .induced_subgraph(&self.kept)
            .expect("trace ids come from the source graph")
            .0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliqueInstance {
    pub verdict: Verdict,
    pub trace: CompressionTrace,
}

impl CliqueInstance {
    pub fn kernel_vertices(&self) -> Option<usize> {
        match &self.verdict {
            Verdict::Open { graph, .. } => Some(graph.n()),
            _ => None,
        }
    }

    /// Maps a clique of the open kernel back to a clique of the source graph,
    /// adding one representative per part deleted by Rule 1.
    pub fn lift_clique(&self, kernel_clique: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = kernel_clique
            .iter()
            .map(|&v| self.trace.kept[v])
            .chain(self.trace.rule1_representatives.iter().copied())
            .collect();
        out.sort_unstable();
        out
    }
}

/// `(G, r, k, ℓ) -> (G, ℓ, k + t_ℓ(n) - t_r(n), ℓ)`, an equivalent instance
/// with `τ = 0`.
pub fn shift_parameters(
    inst: &TuranCliqueInstance,
) -> Result<TuranCliqueInstance, CompressionError> {
    let (r, ell) = (inst.r, inst.ell);
    if ell <= r + 1 {
        return Err(CompressionError::ShiftNotNeeded { r, ell });
    }
    let gap = turan_gap(inst.graph.n(), r, ell)?;
    TuranCliqueInstance::new(inst.graph.clone(), ell, inst.k + gap as u128, ell)
}

/// Compresses an instance with `ℓ <= r + 1` into a Clique instance on at most
/// `5k` vertices (`k` lifted to 1 when zero).
pub fn compress_clique(inst: &TuranCliqueInstance) -> Result<CliqueInstance, CompressionError> {
    if inst.ell > inst.r + 1 {
        return Err(CompressionError::TauTooLarge {
            r: inst.r,
            ell: inst.ell,
        });
    }
    compress_validated(&inst.graph, inst.r, inst.k, inst.ell, None)
}

/// Shifts when `τ > 1`, then compresses.
pub fn compress_any(inst: &TuranCliqueInstance) -> Result<CliqueInstance, CompressionError> {
    if inst.ell <= inst.r + 1 {
        return compress_clique(inst);
    }
    let gap = turan_gap(inst.graph.n(), inst.r, inst.ell)? as u128;
    let shift = ShiftRecord {
        from_r: inst.r,
        from_k: inst.k,
        to_r: inst.ell,
        to_k: inst.k + gap,
    };
    compress_validated(&inst.graph, shift.to_r, shift.to_k, inst.ell, Some(shift))
}

fn compress_validated(
    g: &Graph,
    r: usize,
    k: EdgeCount,
    ell: usize,
    shift: Option<ShiftRecord>,
) -> Result<CliqueInstance, CompressionError> {
    let n = g.n();
    let k = k.max(1);
    let mut trace = CompressionTrace {
        source_n: n,
        r,
        k,
        ell,
        shift,
        ..Default::default()
    };

    if r < 2 || n as u128 <= 5 * k {
        trace.trivial = true;
        trace.kept = (0..n).collect();
        return Ok(CliqueInstance {
            verdict: Verdict::Open {
                graph: g.clone(),
                ell,
            },
            trace,
        });
    }

    let partition = erdos_partition(g)?;
    let p = partition.len();
    if p >= ell {
        let mut witness = partition.pivots[..ell].to_vec();
        witness.sort_unstable();
        trace.partition = Some(partition);
        return Ok(CliqueInstance {
            verdict: Verdict::TriviallyYes { witness },
            trace,
        });
    }

    let part_of = partition.part_of(n)?;
    let edits = edit_report_with(g, &part_of);
    let mut reducer = Reducer::new(g, &partition, &edits.touched, ell as i64)?;
    reducer.apply_rule1();
    reducer.apply_rule2();
    let ell_left = reducer.ell;
    trace.rule1_parts = reducer.rule1_parts;
    trace.rule1_representatives = reducer.rule1_representatives;
    trace.rule2_removed = reducer.rule2_removed;
    trace.rule2_removed.sort_unstable();
    trace.ell_decrements = trace.rule1_parts.len();
    trace.kept = (0..n).filter(|&v| !reducer.deleted[v]).collect();

    let accounting = Accounting {
        kernel_vertices: trace.kept.len(),
        touched: edits.touched.len(),
        added: edits.added.len(),
        removed: edits.removed.len(),
        k,
    };
    trace.accounting = Some(accounting);
    trace.partition = Some(partition);
    trace.edits = Some(edits);
    if !accounting.holds() {
        return Err(CompressionError::BoundViolated(format!("{accounting:?}")));
    }

    let verdict = if ell_left <= 0 {
        let mut witness = trace.rule1_representatives.clone();
        witness.sort_unstable();
        Verdict::TriviallyYes { witness }
    } else if ell_left as usize > trace.kept.len() {
        Verdict::TriviallyNo
    } else {
        Verdict::Open {
            graph: trace.replay(g),
            ell: ell_left as usize,
        }
    };
    Ok(CliqueInstance { verdict, trace })
}

/// Working state for the two reduction rules over a fixed partition and
/// touched set `X`. Deletions are recorded, not applied, until
/// [`Reducer::graph`] materializes the reduced graph.
#[derive(Debug, Clone)]
pub struct Reducer<'a> {
    graph: &'a Graph,
    partition: &'a Partition,
    touched: Vec<bool>,
    independent: Vec<bool>,
    deleted: Vec<bool>,
    part_deleted: Vec<bool>,
    /// Remaining clique size sought; may drop to zero or below.
    pub ell: i64,
    pub rule1_parts: Vec<usize>,
    pub rule1_representatives: Vec<usize>,
    pub rule2_removed: Vec<usize>,
}

impl<'a> Reducer<'a> {
    pub fn new(
        graph: &'a Graph,
        partition: &'a Partition,
        touched: &[usize],
        ell: i64,
    ) -> Result<Self, CompressionError> {
        let n = graph.n();
        let part_of = partition.part_of(n)?;
        let mut touched_flag = vec![false; n];
        for &v in touched {
            if v >= n {
                return Err(CompressionError::InvalidInstance(format!(
                    "touched vertex {v} out of range"
                )));
            }
            touched_flag[v] = true;
        }
        let mut independent = vec![true; partition.len()];
        for u in 0..n {
            if graph.neighbors(u).any(|w| part_of[w] == part_of[u]) {
                independent[part_of[u]] = false;
            }
        }
        Ok(Self {
            graph,
            partition,
            touched: touched_flag,
            independent,
            deleted: vec![false; n],
            part_deleted: vec![false; partition.len()],
            ell,
            rule1_parts: Vec::new(),
            rule1_representatives: Vec::new(),
            rule2_removed: Vec::new(),
        })
    }

    /// Rule 1: delete every independent part with an untouched vertex,
    /// decrementing `ℓ` once per part. Returns the number of parts deleted.
    pub fn apply_rule1(&mut self) -> usize {
        let before = self.rule1_parts.len();
        for (i, part) in self.partition.parts.iter().enumerate() {
            if self.part_deleted[i] || !self.independent[i] {
                continue;
            }
            if let Some(&rep) = part.iter().find(|&&v| !self.touched[v] && !self.deleted[v]) {
                for &v in part {
                    self.deleted[v] = true;
                }
                self.part_deleted[i] = true;
                self.rule1_parts.push(i);
                self.rule1_representatives.push(rep);
                self.ell -= 1;
            }
        }
        self.rule1_parts.len() - before
    }

    /// Rule 2: in each remaining part keep only the lowest-id untouched
    /// vertex. Returns the number of vertices deleted.
    pub fn apply_rule2(&mut self) -> usize {
        let before = self.rule2_removed.len();
        for (i, part) in self.partition.parts.iter().enumerate() {
            if self.part_deleted[i] {
                continue;
            }
            let extra: Vec<usize> = part
                .iter()
                .copied()
                .filter(|&v| !self.touched[v] && !self.deleted[v])
                .skip(1)
                .collect();
            for v in extra {
                self.deleted[v] = true;
                self.rule2_removed.push(v);
            }
        }
        self.rule2_removed.len() - before
    }

    pub fn remaining(&self) -> Vec<usize> {
        (0..self.graph.n()).filter(|&v| !self.deleted[v]).collect()
    }

    pub fn graph(&self) -> Graph {
        self.graph
            .induced_subgraph(&self.remaining())
            .expect("ids in range")
            .0
    }
}

/// Applies Rule 1 exhaustively and returns the reduced graph, its id map
/// back to `g`, and the new `ℓ`.
pub fn rule1_remove_untouched_parts(
    g: &Graph,
    partition: &Partition,
    touched: &[usize],
    ell: i64,
) -> Result<(Graph, Vec<usize>, i64), CompressionError> {
    let mut reducer = Reducer::new(g, partition, touched, ell)?;
    reducer.apply_rule1();
    Ok((reducer.graph(), reducer.remaining(), reducer.ell))
}

/// Applies Rule 2 and returns the reduced graph with its id map back to `g`.
pub fn rule2_dedupe_untouched_vertices(
    g: &Graph,
    partition: &Partition,
    touched: &[usize],
) -> Result<(Graph, Vec<usize>), CompressionError> {
    let mut reducer = Reducer::new(g, partition, touched, 0)?;
    reducer.apply_rule2();
    Ok((reducer.graph(), reducer.remaining()))
}

/// Turán's Independent Set compressed into a Clique instance on the
/// complement.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentSetCompression {
    /// `ceil(n / (d + 1)) + t`.
    pub target: usize,
    pub average_degree: Ratio<u64>,
    /// Part count chosen for the complement, before any shift.
    pub r: usize,
    /// The clique instance over the complement; a clique there is an
    /// independent set of the input graph.
    pub instance: CliqueInstance,
}

/// Part count for the complement of a graph with average degree `d`:
/// `floor(n / (ceil(d) + 1))`, lowered until `|E(complement)| >= t_r(n)`.
fn choose_part_count(complement: &Graph, d: Ratio<u64>) -> Result<usize, CompressionError> {
    let n = complement.n();
    let mut r = (n as u64 / (d.ceil().to_integer() + 1)).max(1) as usize;
    loop {
        let xi = (n / r) as u64;
        let guaranteed = Ratio::from_integer(xi) > d;
        if guaranteed || edge_surplus_check(complement, r, 0)?.valid {
            break;
        }
        r -= 1;
    }
    debug_assert!(edge_surplus_check(complement, r, 0)?.valid);
    Ok(r)
}

pub fn compress_independent_set(
    g: &Graph,
    t: usize,
) -> Result<IndependentSetCompression, CompressionError> {
    if t == 0 {
        return Err(CompressionError::ZeroTarget);
    }
    let n = g.n();
    let d = g
        .average_degree()
        .map_err(|_| CompressionError::InvalidInstance("graph has no vertices".into()))?;
    let base = (Ratio::from_integer(n as u64) / (d + 1))
        .ceil()
        .to_integer() as usize;
    let target = base + t;
    let complement = g.complement();
    let r = choose_part_count(&complement, d)?;
    TuranParams::new(n, r)?;

    if target > n {
        return Ok(IndependentSetCompression {
            target,
            average_degree: d,
            r,
            instance: CliqueInstance {
                verdict: Verdict::TriviallyNo,
                trace: CompressionTrace {
                    source_n: n,
                    r,
                    ell: target,
                    ..Default::default()
                },
            },
        });
    }
    let inst = TuranCliqueInstance::new(complement, r, 0, target)?;
    let instance = compress_any(&inst)?;
    Ok(IndependentSetCompression {
        target,
        average_degree: d,
        r,
        instance,
    })
}
