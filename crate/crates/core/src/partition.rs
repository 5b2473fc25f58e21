//! The max-degree pivot partition from Erdős' proof of Turán's theorem, its
//! complete multipartite closure, and a verifier for the stability
//! guarantees it carries on graphs with `m >= t_r(n) - k`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::turan::{edge_surplus_check, EdgeCount, TuranError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Turan(#[from] TuranError),
}

/// Parts `V_1..V_p` with pivots `v_i ∈ V_i` adjacent to every later part.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Partition {
    pub parts: Vec<Vec<usize>>,
    pub pivots: Vec<usize>,
}

impl Partition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Part index of each vertex, after checking that the parts are
    /// nonempty, disjoint, and cover `0..n`.
    pub fn part_of(&self, n: usize) -> Result<Vec<usize>, PartitionError> {
        let bad = |msg: String| Err(PartitionError::InvalidPartition(msg));
        if self.pivots.len() != self.parts.len() {
            return bad(format!(
                "{} parts but {} pivots",
                self.parts.len(),
                self.pivots.len()
            ));
        }
        let mut part_of = vec![usize::MAX; n];
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_empty() {
                return bad(format!("part {i} is empty"));
            }
            for &v in part {
                if v >= n {
                    return bad(format!("vertex {v} out of range"));
                }
                if part_of[v] != usize::MAX {
                    return bad(format!("vertex {v} appears in two parts"));
                }
                part_of[v] = i;
            }
        }
        if let Some(v) = part_of.iter().position(|&p| p == usize::MAX) {
            return bad(format!("vertex {v} is not covered"));
        }
        Ok(part_of)
    }
}

/// Runs the recursive procedure: take a maximum-degree vertex `v_i` of the
/// remaining graph `G_i` (lowest id on ties), cut off `V_i = V(G_i) \ N(v_i)`,
/// and continue on `G_i - V_i` until nothing is left. Parts keep vertices
/// in increasing id order. Runs in `O(n^2)` time.
pub fn erdos_partition(g: &Graph) -> Result<Partition, PartitionError> {
    let n = g.n();
    if n == 0 {
        return Err(PartitionError::EmptyGraph);
    }
    let mut degree: Vec<usize> = (0..n).map(|u| g.degree(u)).collect();
    let mut alive_flag = vec![true; n];
    let mut alive: Vec<usize> = (0..n).collect();
    let mut stamp = vec![0u32; n];
    let mut round = 0u32;
    let mut parts = Vec::new();
    let mut pivots = Vec::new();

    while !alive.is_empty() {
        round += 1;
        let mut pivot = alive[0];
        for &u in &alive[1..] {
            if degree[u] > degree[pivot] {
                pivot = u;
            }
        }
        for w in g.neighbors(pivot) {
            stamp[w] = round;
        }
        let (rest, part): (Vec<usize>, Vec<usize>) =
            alive.iter().partition(|&&u| stamp[u] == round);
        for &u in &part {
            alive_flag[u] = false;
        }
        for &u in &part {
            for w in g.neighbors(u) {
                if alive_flag[w] {
                    degree[w] -= 1;
                }
            }
        }
        parts.push(part);
        pivots.push(pivot);
        alive = rest;
    }
    Ok(Partition { parts, pivots })
}

/// Edge edits turning `G` into the complete multipartite graph `G'` over a
/// partition. All lists are sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct EditReport {
    /// `R = E(G') \ E(G)`: cross-part non-edges.
    pub added: Vec<(usize, usize)>,
    /// `A = E(G) \ E(G')`: edges inside a part.
    pub removed: Vec<(usize, usize)>,
    /// `X`: vertices covered by `R ∪ A`.
    pub touched: Vec<usize>,
}

impl EditReport {
    pub fn symmetric_difference(&self) -> usize {
        self.added.len() + self.removed.len()
    }
}

/// Computes `R`, `A`, and `X` without materializing `G'`.
pub fn edit_report(g: &Graph, partition: &Partition) -> Result<EditReport, PartitionError> {
    let part_of = partition.part_of(g.n())?;
    Ok(edit_report_with(g, &part_of))
}

pub(crate) fn edit_report_with(g: &Graph, part_of: &[usize]) -> EditReport {
    let n = g.n();
    let mut added = Vec::new();
    let mut removed = Vec::new();
    let mut covered = vec![false; n];
    for u in 0..n {
        for v in u + 1..n {
            let cross = part_of[u] != part_of[v];
            let edge = g.has_edge(u, v);
            if cross && !edge {
                added.push((u, v));
            } else if !cross && edge {
                removed.push((u, v));
            } else {
                continue;
            }
            covered[u] = true;
            covered[v] = true;
        }
    }
    let touched = (0..n).filter(|&v| covered[v]).collect();
    EditReport {
        added,
        removed,
        touched,
    }
}

/// The complete multipartite graph on the partition's parts, with the edits
/// separating it from `g`.
pub fn multipartite_closure(
    g: &Graph,
    partition: &Partition,
) -> Result<(Graph, EditReport), PartitionError> {
    let part_of = partition.part_of(g.n())?;
    let mut closure = Graph::new(g.n());
    for u in 0..g.n() {
        for v in u + 1..g.n() {
            if part_of[u] != part_of[v] {
                closure.add_edge(u, v).expect("in range");
            }
        }
    }
    Ok((closure, edit_report_with(g, &part_of)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// `p >= r - k`.
    PartCount,
    /// `N(v_i) ⊇ V_{i+1} ∪ ... ∪ V_p`.
    PivotAdjacency,
    /// `|E(G')| >= |E(G)|`.
    ClosureDominates,
    /// `|E(G) △ E(G')| <= 3k`.
    EditDistance,
    /// `|R| <= 2k`.
    AddedBound,
    /// `|R| >= |A|`.
    AddedDominatesRemoved,
    /// Every vertex covered by `A` is covered by `R`.
    Coverage,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    TooFewParts {
        p: usize,
        lower_bound: i128,
    },
    PivotOutsidePart {
        part: usize,
        pivot: usize,
    },
    NonAdjacentPivot {
        part: usize,
        pivot: usize,
        vertex: usize,
    },
    ClosureLosesEdges {
        closure_edges: u128,
        graph_edges: u64,
    },
    EditDistance {
        symmetric_difference: usize,
        bound: u128,
    },
    AddedTooLarge {
        added: usize,
        bound: u128,
    },
    RemovedExceedsAdded {
        added: usize,
        removed: usize,
    },
    UncoveredVertex {
        vertex: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub property: Property,
    pub passed: bool,
    pub certificate: Option<Certificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub p: usize,
    pub checks: Vec<CheckResult>,
    /// Whether the closure checks ran (they apply only when `p <= r`).
    pub closure_checked: bool,
}

impl VerificationReport {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn check(&self, property: Property) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.property == property)
    }
}

fn outcome(property: Property, failure: Option<Certificate>) -> CheckResult {
    CheckResult {
        property,
        passed: failure.is_none(),
        certificate: failure,
    }
}

/// Pivot adjacency on its own; holds for any graph the procedure ran on.
pub fn check_pivot_adjacency(g: &Graph, partition: &Partition) -> Option<Certificate> {
    for (i, (part, &pivot)) in partition.parts.iter().zip(&partition.pivots).enumerate() {
        if !part.contains(&pivot) {
            return Some(Certificate::PivotOutsidePart { part: i, pivot });
        }
        for later in &partition.parts[i + 1..] {
            if let Some(&vertex) = later.iter().find(|&&w| !g.has_edge(pivot, w)) {
                return Some(Certificate::NonAdjacentPivot {
                    part: i,
                    pivot,
                    vertex,
                });
            }
        }
    }
    None
}

/// Checks the partition against the stability guarantees for an instance
/// with `m >= t_r(n) - k`, `k >= 1`, `r >= 2`.
pub fn verify_partition(
    g: &Graph,
    partition: &Partition,
    r: usize,
    k: EdgeCount,
) -> Result<VerificationReport, PartitionError> {
    if r < 2 {
        return Err(PartitionError::Precondition(format!("r = {r} < 2")));
    }
    if k < 1 {
        return Err(PartitionError::Precondition("k = 0 < 1".into()));
    }
    let surplus = edge_surplus_check(g, r, k)?;
    if !surplus.valid {
        return Err(PartitionError::Precondition(format!(
            "edge count below t_r(n) - k by {}",
            -surplus.slack
        )));
    }
    let part_of = partition.part_of(g.n())?;
    let p = partition.len();
    let mut checks = Vec::new();

    let lower_bound = r as i128 - k as i128;
    checks.push(outcome(
        Property::PartCount,
        ((p as i128) < lower_bound).then_some(Certificate::TooFewParts { p, lower_bound }),
    ));
    checks.push(outcome(
        Property::PivotAdjacency,
        check_pivot_adjacency(g, partition),
    ));

    let closure_checked = p <= r;
    if closure_checked {
        let edits = edit_report_with(g, &part_of);
        let graph_edges = g.edge_count();
        let closure_edges =
            graph_edges as u128 + edits.added.len() as u128 - edits.removed.len() as u128;
        checks.push(outcome(
            Property::ClosureDominates,
            (closure_edges < graph_edges as u128).then_some(Certificate::ClosureLosesEdges {
                closure_edges,
                graph_edges,
            }),
        ));
        let sym = edits.symmetric_difference();
        checks.push(outcome(
            Property::EditDistance,
            (sym as u128 > 3 * k).then_some(Certificate::EditDistance {
                symmetric_difference: sym,
                bound: 3 * k,
            }),
        ));
        checks.push(outcome(
            Property::AddedBound,
            (edits.added.len() as u128 > 2 * k).then_some(Certificate::AddedTooLarge {
                added: edits.added.len(),
                bound: 2 * k,
            }),
        ));
        checks.push(outcome(
            Property::AddedDominatesRemoved,
            (edits.added.len() < edits.removed.len()).then_some(Certificate::RemovedExceedsAdded {
                added: edits.added.len(),
                removed: edits.removed.len(),
            }),
        ));
        let mut covered_by_added = vec![false; g.n()];
        for &(u, v) in &edits.added {
            covered_by_added[u] = true;
            covered_by_added[v] = true;
        }
        let uncovered = edits
            .removed
            .iter()
            .flat_map(|&(u, v)| [u, v])
            .find(|&x| !covered_by_added[x]);
        checks.push(outcome(
            Property::Coverage,
            uncovered.map(|vertex| Certificate::UncoveredVertex { vertex }),
        ));
    }

    Ok(VerificationReport {
        p,
        checks,
        closure_checked,
    })
}
