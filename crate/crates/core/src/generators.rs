//! Seeded instance families and the hardness reductions from Clique.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::compression::{CompressionError, TuranCliqueInstance};
use crate::graph::Graph;
use crate::rng::Rng;
use crate::turan::{build_turan_graph, turan_edge_count, turan_parts, EdgeCount, TuranError};

/// Upper limit on the part size searched by [`gen_reduction_fixed_tau`].
pub const DEFAULT_PART_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeneratorError {
    #[error("invalid parameters: {0}")]
    Params(String),
    #[error("cannot delete {k} edges from a graph with {available} candidates")]
    TooManyDeletions { k: EdgeCount, available: usize },
    #[error("no part size up to {cap} satisfies the edge bound")]
    NoFeasiblePartSize { cap: usize },
    #[error(transparent)]
    Turan(#[from] TuranError),
    #[error(transparent)]
    Instance(#[from] CompressionError),
}

fn params(msg: String) -> GeneratorError {
    GeneratorError::Params(msg)
}

/// `T_r(n)` minus `k` uniformly chosen edges, as the instance
/// `(G, r, k, r + 1)`.
pub fn gen_perturbed_turan(
    n: usize,
    r: usize,
    k: EdgeCount,
    seed: u64,
) -> Result<TuranCliqueInstance, GeneratorError> {
    if r == 0 || r >= n {
        return Err(params(format!("need 1 <= r < n, got r = {r}, n = {n}")));
    }
    let mut g = build_turan_graph(n, r)?;
    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    if k > edges.len() as u128 {
        return Err(GeneratorError::TooManyDeletions {
            k,
            available: edges.len(),
        });
    }
    let mut rng = Rng::new(seed);
    for &(u, v) in rng.sample(&mut edges, k as usize).iter() {
        g.remove_edge(u, v).expect("edge of T_r(n)");
    }
    Ok(TuranCliqueInstance::new(g, r, k, r + 1)?)
}

/// A yes-instance together with the clique that certifies it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlantedInstance {
    pub instance: TuranCliqueInstance,
    /// Sorted ids of a planted `K_{r+1}`.
    pub witness: Vec<usize>,
}

/// `T_r(n)` plus one edge inside a part, closed into a planted `K_{r+1}`
/// by one vertex from every other part, then `k - 1` cross edges outside the
/// planted clique removed. The instance is `(G, r, k, r + 1)`.
pub fn gen_planted(
    n: usize,
    r: usize,
    k: EdgeCount,
    seed: u64,
) -> Result<PlantedInstance, GeneratorError> {
    if r < 2 || k < 2 || n < r + 1 {
        return Err(params(format!(
            "need r >= 2, k >= 2, n >= r + 1, got n = {n}, r = {r}, k = {k}"
        )));
    }
    let mut rng = Rng::new(seed);
    let parts = turan_parts(n, r)?;
    let mut g = build_turan_graph(n, r)?;

    let wide: Vec<usize> = (0..r).filter(|&i| parts[i].len() >= 2).collect();
    let host = wide[rng.index(wide.len())];
    let mut pair = parts[host].clone();
    let pair = rng.sample(&mut pair, 2);
    let mut witness = vec![pair[0], pair[1]];
    for (i, part) in parts.iter().enumerate() {
        if i != host {
            witness.push(part[rng.index(part.len())]);
        }
    }
    witness.sort_unstable();
    g.add_edge(pair[0], pair[1]).expect("in range");

    let mut in_clique = vec![false; n];
    witness.iter().for_each(|&v| in_clique[v] = true);
    let mut candidates: Vec<(usize, usize)> = g
        .edges()
        .filter(|&(u, v)| !(in_clique[u] && in_clique[v]))
        .collect();
    let remove = (k - 1) as usize;
    if k - 1 > candidates.len() as u128 {
        return Err(GeneratorError::TooManyDeletions {
            k: k - 1,
            available: candidates.len(),
        });
    }
    for &(u, v) in rng.sample(&mut candidates, remove).iter() {
        g.remove_edge(u, v).expect("present");
    }
    debug_assert!(g.is_clique(&witness));
    Ok(PlantedInstance {
        instance: TuranCliqueInstance::new(g, r, k, r + 1)?,
        witness,
    })
}

/// Which parameter the fixed-`ξ` reduction pins besides `ξ`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedXiCase {
    /// `(G', ℓ', C(N, 2), ℓ')`: `τ = 0`.
    ZeroTau,
    /// `(G', 1, 0, ℓ')`: `k = 0`.
    ZeroK,
}

/// Pads `(g, ℓ)` with isolated vertices up to `ξℓ` vertices, then adds
/// universal vertices (raising `ℓ'` each time) until
/// `ξℓ' <= N < (ξ + 1)ℓ'`.
pub fn gen_reduction_fixed_xi(
    g: &Graph,
    ell: usize,
    xi: usize,
    case: FixedXiCase,
) -> Result<TuranCliqueInstance, GeneratorError> {
    if xi == 0 || ell < xi {
        return Err(params(format!(
            "need l >= xi >= 1, got l = {ell}, xi = {xi}"
        )));
    }
    let n = g.n();
    let mut ell_out = ell;
    let mut size = n.max(xi * ell);
    let mut universal = 0;
    while size >= (xi + 1) * ell_out {
        size += 1;
        universal += 1;
        ell_out += 1;
    }
    let mut out = Graph::new(size);
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
    }
    for w in size - universal..size {
        for v in 0..w {
            out.add_edge(v, w).expect("in range");
        }
    }
    debug_assert_eq!(size / ell_out, xi);
    let (r, k) = match case {
        FixedXiCase::ZeroTau => (ell_out, (size as u128) * (size as u128 - 1) / 2),
        FixedXiCase::ZeroK => (1, 0),
    };
    Ok(TuranCliqueInstance::new(out, r, k, ell_out)?)
}

/// Smallest `x >= ceil(n / (ℓ - 1))` with
/// `t_{ℓ-1}(N) - n(ℓ - 2)x >= t_{ℓ-τ}(N)` for `N = (ℓ - 1)x`.
pub fn fixed_tau_part_size(
    n: usize,
    ell: usize,
    tau: usize,
    cap: usize,
) -> Result<usize, GeneratorError> {
    if tau < 2 || ell < 2 * tau {
        return Err(params(format!(
            "need tau >= 2 and l >= 2 tau, got l = {ell}, tau = {tau}"
        )));
    }
    let start = n.div_ceil(ell - 1).max(1);
    for x in start..=cap {
        let big_n = (ell - 1) * x;
        let kept = turan_edge_count(big_n, ell - 1)? as i128 - (n * (ell - 2) * x) as i128;
        if kept >= turan_edge_count(big_n, ell - tau)? as i128 {
            return Ok(x);
        }
    }
    Err(GeneratorError::NoFeasiblePartSize { cap })
}

/// `(g, ℓ)` embedded on the first `n` vertices of a complete
/// `(ℓ - 1)`-partite graph with parts of size `x`, after isolating them;
/// emitted as `(G', ℓ - τ, 0, ℓ)`.
pub fn gen_reduction_fixed_tau(
    g: &Graph,
    ell: usize,
    tau: usize,
) -> Result<TuranCliqueInstance, GeneratorError> {
    gen_reduction_fixed_tau_with_cap(g, ell, tau, DEFAULT_PART_SIZE_CAP)
}

pub fn gen_reduction_fixed_tau_with_cap(
    g: &Graph,
    ell: usize,
    tau: usize,
    cap: usize,
) -> Result<TuranCliqueInstance, GeneratorError> {
    let n = g.n();
    let x = fixed_tau_part_size(n, ell, tau, cap)?;
    let big_n = (ell - 1) * x;
    let mut out = build_turan_graph(big_n, ell - 1)?;
    for u in 0..n {
        let neighbors: Vec<usize> = out.neighbors(u).collect();
        for v in neighbors {
            out.remove_edge(u, v).expect("present");
        }
    }
    for (u, v) in g.edges() {
        out.add_edge(u, v).expect("in range");
    }
    Ok(TuranCliqueInstance::new(out, ell - tau, 0, ell)?)
}
