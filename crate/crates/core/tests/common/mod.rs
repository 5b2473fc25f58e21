#![allow(dead_code)]

use turan_kernel::turan::turan_parts;
use turan_kernel::{
    build_turan_graph, edge_surplus_check, turan_edge_count, EdgeCount, Graph, Rng,
    TuranCliqueInstance,
};

/// `G(n, p)` with `p = num / den`.
pub fn gnp(n: usize, num: u64, den: u64, rng: &mut Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(den) < num {
                g.add_edge(u, v).unwrap();
            }
        }
    }
    g
}

/// `T_r(n)` with `j` random edges added inside parts and `j + k` random
/// cross edges removed.
pub fn noisy_turan(n: usize, r: usize, j: usize, k: usize, rng: &mut Rng) -> Graph {
    let parts = turan_parts(n, r).unwrap();
    let mut part_of = vec![0; n];
    for (i, part) in parts.iter().enumerate() {
        part.iter().for_each(|&v| part_of[v] = i);
    }
    let mut g = build_turan_graph(n, r).unwrap();
    let mut inside: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| part_of[u] == part_of[v])
        .collect();
    let mut cross: Vec<(usize, usize)> = g.edges().collect();
    let j = j.min(inside.len());
    let drop = (j + k).min(cross.len());
    for &(u, v) in rng.sample(&mut inside, j).iter() {
        g.add_edge(u, v).unwrap();
    }
    for &(u, v) in rng.sample(&mut cross, drop).iter() {
        g.remove_edge(u, v).unwrap();
    }
    g
}

/// Smallest `k` making `(g, r, k, ·)` satisfy the edge bound.
pub fn deficit(g: &Graph, r: usize) -> EdgeCount {
    let t = turan_edge_count(g.n(), r).unwrap();
    t.saturating_sub(g.edge_count() as u128)
}

/// A random instance on `g` with random `r`, the tightest `k` plus a small
/// random slack, and `ℓ` anywhere in `[1, n]`.
pub fn random_instance(g: Graph, rng: &mut Rng) -> TuranCliqueInstance {
    let n = g.n();
    let r = 1 + rng.index(n);
    let k = deficit(&g, r) + rng.below(3) as u128;
    let ell = 1 + rng.index(n);
    assert!(edge_surplus_check(&g, r, k).unwrap().valid);
    TuranCliqueInstance::new(g, r, k, ell).unwrap()
}

pub fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap());
    values[values.len() / 2]
}
