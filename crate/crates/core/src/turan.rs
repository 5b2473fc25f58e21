//! Exact Turán numbers, Turán graphs, and the `t_ℓ(n) - t_r(n)` gap.
//!
//! All counts are `u128`; for `n < 2^31` every quantity here fits with room
//! to spare, so no arithmetic in this module can overflow.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;

pub type EdgeCount = u128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TuranError {
    #[error("part count must be at least 1")]
    ZeroParts,
    #[error("part count {r} exceeds vertex count {n}")]
    TooManyParts { r: usize, n: usize },
    #[error("need 1 <= r < l <= n, got r = {r}, l = {ell}, n = {n}")]
    BadOrder { r: usize, ell: usize, n: usize },
}

/// `n` split into `r` near-equal parts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuranParams {
    pub n: usize,
    pub r: usize,
    /// `n mod r`: the number of parts of size `xi + 1`.
    pub s: usize,
    /// `floor(n / r)`.
    pub xi: usize,
}

impl TuranParams {
    pub fn new(n: usize, r: usize) -> Result<Self, TuranError> {
        if r == 0 {
            return Err(TuranError::ZeroParts);
        }
        if r > n {
            return Err(TuranError::TooManyParts { r, n });
        }
        Ok(Self {
            n,
            r,
            s: n % r,
            xi: n / r,
        })
    }

    /// Part sizes, larger parts first.
    pub fn part_sizes(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.r).map(move |i| if i < self.s { self.xi + 1 } else { self.xi })
    }

    pub fn edge_count(&self) -> EdgeCount {
        let (s, r, q) = (self.s as u128, self.r as u128, self.xi as u128);
        choose2(self.n as u128) - s * choose2(q + 1) - (r - s) * choose2(q)
    }
}

#[inline]
pub(crate) fn choose2(x: u128) -> u128 {
    x * x.saturating_sub(1) / 2
}

/// `t_r(n)`, the edge count of the Turán graph `T_r(n)`.
pub fn turan_edge_count(n: usize, r: usize) -> Result<EdgeCount, TuranError> {
    Ok(TuranParams::new(n, r)?.edge_count())
}

/// The complete `r`-partite graph `T_r(n)`, numbered part by part with the
/// larger parts first.
pub fn build_turan_graph(n: usize, r: usize) -> Result<Graph, TuranError> {
    let params = TuranParams::new(n, r)?;
    let mut part_of = Vec::with_capacity(n);
    for (i, size) in params.part_sizes().enumerate() {
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                g.add_edge(u, v).expect("in range");
            }
        }
    }
    Ok(g)
}

/// Part index of every vertex of [`build_turan_graph`]`(n, r)`.
pub fn turan_parts(n: usize, r: usize) -> Result<Vec<Vec<usize>>, TuranError> {
    let params = TuranParams::new(n, r)?;
    let mut next = 0;
    Ok(params
        .part_sizes()
        .map(|size| {
            let part = (next..next + size).collect();
            next += size;
            part
        })
        .collect())
}

/// `t_ℓ(n) - t_r(n)` from two exact counts. Requires `1 <= r < ℓ <= n`.
pub fn turan_gap(n: usize, r: usize, ell: usize) -> Result<i128, TuranError> {
    if r == 0 || r >= ell || ell > n {
        return Err(TuranError::BadOrder { r, ell, n });
    }
    Ok(turan_edge_count(n, ell)? as i128 - turan_edge_count(n, r)? as i128)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurplusReport {
    /// `m >= t_r(n) - k`.
    pub valid: bool,
    /// `m - (t_r(n) - k)`.
    pub slack: i128,
}

pub fn edge_surplus_check(g: &Graph, r: usize, k: EdgeCount) -> Result<SurplusReport, TuranError> {
    let t = turan_edge_count(g.n(), r)? as i128;
    let slack = g.edge_count() as i128 - (t - k as i128);
    Ok(SurplusReport {
        valid: slack >= 0,
        slack,
    })
}

/// Relation between `|E(G)| >= t_r(n)` and the average degree of the
/// complement, `d̄ = 2(C(n,2) - m) / n`, against `xi = floor(n / r)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AvgDegreeReport {
    pub xi: usize,
    pub complement_avg_degree: Ratio<u128>,
    /// `|E(G)| >= t_r(n)`.
    pub edges_at_least_turan: bool,
    /// `d̄ <= xi`.
    pub complement_avg_deg_le_xi: bool,
    /// `d̄ <= xi - 1`, which forces `|E(G)| >= t_r(n)`.
    pub surplus_implied: bool,
    /// Both implications hold for this graph.
    pub consistent: bool,
}

pub fn avg_degree_xi_check(g: &Graph, r: usize) -> Result<AvgDegreeReport, TuranError> {
    let params = TuranParams::new(g.n(), r)?;
    let n = g.n() as u128;
    let missing2 = 2 * (choose2(n) - g.edge_count() as u128);
    let xi = params.xi as u128;
    let edges_at_least_turan = g.edge_count() as u128 >= params.edge_count();
    let complement_avg_deg_le_xi = missing2 <= xi * n;
    let surplus_implied = missing2 <= (xi - 1) * n;
    Ok(AvgDegreeReport {
        xi: params.xi,
        complement_avg_degree: Ratio::new(missing2, n),
        edges_at_least_turan,
        complement_avg_deg_le_xi,
        surplus_implied,
        consistent: (!edges_at_least_turan || complement_avg_deg_le_xi)
            && (!surplus_implied || edges_at_least_turan),
    })
}
