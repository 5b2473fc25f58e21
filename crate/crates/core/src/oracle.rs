//! Exhaustive ground truth for small graphs.
//!
//! Nothing here shares code with the branch-and-bound solver: cliques are
//! enumerated one by one with no bounding, and the Turán table is rebuilt by
//! walking every labeled graph on up to seven vertices.

use thiserror::Error;

use crate::graph::Graph;

/// Largest graph accepted by [`brute_force_max_clique`].
pub const MAX_CLIQUE_ORACLE_N: usize = 26;
/// Largest vertex count for exhaustive enumeration of all graphs.
pub const MAX_ENUMERATION_N: usize = 7;
/// Largest vertex count for the isomorphism-based uniqueness check.
pub const MAX_UNIQUENESS_N: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("oracle limited to n <= {cap}, got n = {n}")]
    TooLarge { n: usize, cap: usize },
    #[error("need 1 <= r <= n, got r = {r}, n = {n}")]
    BadParts { r: usize, n: usize },
}

fn cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        Err(OracleError::TooLarge { n, cap })
    } else {
        Ok(())
    }
}

fn clique_enumerate(adj: &[u32], clique: &mut Vec<usize>, candidates: u32, best: &mut Vec<usize>) {
    if clique.len() > best.len() {
        best.clone_from(clique);
    }
    let mut rest = candidates;
    while rest != 0 {
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        clique.push(v);
        clique_enumerate(adj, clique, rest & adj[v], best);
        clique.pop();
    }
}

/// Maximum clique by enumerating every clique of `g` (each exactly once, in
/// increasing-id order). Returns the first maximum clique met.
pub fn brute_force_max_clique(g: &Graph) -> Result<(usize, Vec<usize>), OracleError> {
    cap(g.n(), MAX_CLIQUE_ORACLE_N)?;
    let adj: Vec<u32> = (0..g.n())
        .map(|u| g.neighbors(u).fold(0u32, |acc, v| acc | 1 << v))
        .collect();
    let all = (1u32 << g.n()) - 1;
    let mut best = Vec::new();
    clique_enumerate(&adj, &mut Vec::new(), all, &mut best);
    Ok((best.len(), best))
}

pub fn brute_force_max_independent_set(g: &Graph) -> Result<(usize, Vec<usize>), OracleError> {
    cap(g.n(), MAX_CLIQUE_ORACLE_N)?;
    brute_force_max_clique(&g.complement())
}

/// Vertex pairs of `K_n` in lexicographic order; bit `i` of an edge mask
/// stands for `pairs[i]`.
fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect()
}

fn mask_adjacency(pairs: &[(usize, usize)], mask: u32, adj: &mut [u8]) {
    adj.iter_mut().for_each(|a| *a = 0);
    let mut rest = mask;
    while rest != 0 {
        let e = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        let (u, v) = pairs[e];
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
}

fn clique_number_u8(adj: &[u8], size: usize, candidates: u8) -> usize {
    let mut best = size;
    let mut rest = candidates;
    while rest != 0 {
        if size + rest.count_ones() as usize <= best {
            break;
        }
        let v = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        best = best.max(clique_number_u8(adj, size + 1, rest & adj[v]));
    }
    best
}

/// `table[r]` is the largest edge count of a `K_{r+1}`-free graph on `n`
/// vertices, for `1 <= r <= n` (`table[0]` is unused). One pass over all
/// `2^C(n,2)` labeled graphs.
pub fn clique_free_extremal_table(n: usize) -> Result<Vec<u32>, OracleError> {
    cap(n, MAX_ENUMERATION_N)?;
    let pairs = pairs(n);
    let mut by_omega = vec![0u32; n + 1];
    let mut adj = vec![0u8; n];
    let full = (1u8 << n).wrapping_sub(1);
    for mask in 0u32..(1u32 << pairs.len()) {
        mask_adjacency(&pairs, mask, &mut adj);
        let omega = clique_number_u8(&adj, 0, full);
        let edges = mask.count_ones();
        if edges > by_omega[omega] {
            by_omega[omega] = edges;
        }
    }
    // K_{r+1}-free means clique number at most r.
    let mut table = vec![0u32; n + 1];
    let mut running = 0;
    for r in 0..=n {
        running = running.max(by_omega[r]);
        table[r] = running;
    }
    Ok(table)
}

/// Maximum edge count over all `K_{r+1}`-free graphs on `n <= 7` vertices.
pub fn max_edges_clique_free(n: usize, r: usize) -> Result<u32, OracleError> {
    if r == 0 || r > n {
        return Err(OracleError::BadParts { r, n });
    }
    Ok(clique_free_extremal_table(n)?[r])
}

fn next_permutation(p: &mut [usize]) -> bool {
    let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else {
        return false;
    };
    let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Smallest relabeled edge mask over all `n!` vertex permutations.
fn canonical_form(n: usize, pairs: &[(usize, usize)], pair_index: &[Vec<usize>], mask: u32) -> u32 {
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = u32::MAX;
    loop {
        let mut image = 0u32;
        let mut rest = mask;
        while rest != 0 {
            let e = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            let (u, v) = pairs[e];
            image |= 1 << pair_index[perm[u]][perm[v]];
        }
        best = best.min(image);
        if !next_permutation(&mut perm) {
            return best;
        }
    }
}

/// Outcome of the uniqueness check for one `(n, r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtremalCheck {
    pub max_edges: u32,
    /// Labeled `K_{r+1}`-free graphs attaining `max_edges`.
    pub maximizers: usize,
    /// Distinct isomorphism classes among the maximizers.
    pub classes: usize,
    /// Whether the single class is that of the Turán graph `T_r(n)`.
    pub unique_turan: bool,
}

/// Enumerates every graph on `n <= 6` vertices, collects the edge-maximal
/// `K_{r+1}`-free ones, and compares their canonical forms with `T_r(n)`.
pub fn extremal_uniqueness(n: usize, r: usize) -> Result<ExtremalCheck, OracleError> {
    cap(n, MAX_UNIQUENESS_N)?;
    if r == 0 || r > n {
        return Err(OracleError::BadParts { r, n });
    }
    let pairs = pairs(n);
    let mut pair_index = vec![vec![0usize; n]; n];
    for (i, &(u, v)) in pairs.iter().enumerate() {
        pair_index[u][v] = i;
        pair_index[v][u] = i;
    }
    let full = (1u8 << n).wrapping_sub(1);
    let mut adj = vec![0u8; n];
    let mut max_edges = 0;
    let mut maximizers: Vec<u32> = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        mask_adjacency(&pairs, mask, &mut adj);
        if clique_number_u8(&adj, 0, full) > r {
            continue;
        }
        let edges = mask.count_ones();
        if edges > max_edges {
            max_edges = edges;
            maximizers.clear();
        }
        if edges == max_edges {
            maximizers.push(mask);
        }
    }
    let mut classes: Vec<u32> = maximizers
        .iter()
        .map(|&m| canonical_form(n, &pairs, &pair_index, m))
        .collect();
    classes.sort_unstable();
    classes.dedup();

    // T_r(n) with parts of sizes ceil/floor, numbered part by part.
    let mut part_of = Vec::with_capacity(n);
    for i in 0..r {
        let size = n / r + usize::from(i < n % r);
        part_of.extend(std::iter::repeat_n(i, size));
    }
    let turan_mask = pairs
        .iter()
        .enumerate()
        .filter(|(_, &(u, v))| part_of[u] != part_of[v])
        .fold(0u32, |acc, (i, _)| acc | 1 << i);
    let turan_class = canonical_form(n, &pairs, &pair_index, turan_mask);

    Ok(ExtremalCheck {
        max_edges,
        maximizers: maximizers.len(),
        classes: classes.len(),
        unique_turan: classes == [turan_class],
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::tests::petersen;

    #[test]
    fn clique_examples() {
        assert_eq!(brute_force_max_clique(&Graph::complete(5)).unwrap().0, 5);
        assert_eq!(
            brute_force_max_clique(&Graph::new(4)).unwrap(),
            (1, vec![0])
        );
        assert_eq!(brute_force_max_clique(&Graph::new(0)).unwrap().0, 0);
        assert_eq!(brute_force_max_clique(&petersen()).unwrap().0, 2);
        assert_eq!(brute_force_max_independent_set(&petersen()).unwrap().0, 4);
        let t = crate::turan::build_turan_graph(9, 3).unwrap();
        let (size, witness) = brute_force_max_clique(&t).unwrap();
        assert_eq!(size, 3);
        assert!(t.is_clique(&witness));
    }

    #[test]
    fn oracle_caps() {
        assert_eq!(
            brute_force_max_clique(&Graph::new(27)),
            Err(OracleError::TooLarge { n: 27, cap: 26 })
        );
        assert!(brute_force_max_clique(&Graph::complete(26)).is_ok());
        assert!(matches!(
            max_edges_clique_free(8, 2),
            Err(OracleError::TooLarge { .. })
        ));
        assert!(matches!(
            max_edges_clique_free(4, 5),
            Err(OracleError::BadParts { .. })
        ));
    }

    #[test]
    fn extremal_examples() {
        assert_eq!(max_edges_clique_free(4, 2).unwrap(), 4);
        assert_eq!(max_edges_clique_free(5, 4).unwrap(), 9);
        for n in 1..=6 {
            assert_eq!(
                max_edges_clique_free(n, n).unwrap() as usize,
                n * (n - 1) / 2
            );
        }
    }

    #[test]
    fn uniqueness_small() {
        let c = extremal_uniqueness(4, 2).unwrap();
        assert_eq!(c.max_edges, 4);
        // Three labelings of C_4 on four vertices.
        assert_eq!(c.maximizers, 3);
        assert_eq!(c.classes, 1);
        assert!(c.unique_turan);
    }

    #[test]
    fn permutations_are_exhaustive() {
        let mut p = vec![0, 1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut p) {
            count += 1;
        }
        assert_eq!(count, 24);
    }
}
