mod common;

use proptest::prelude::*;

use common::{deficit, noisy_turan, random_instance};
use turan_kernel::compression::Verdict;
use turan_kernel::io::{to_dimacs, to_edge_list};
use turan_kernel::solver::DEFAULT_NODE_BUDGET;
use turan_kernel::{
    brute_force_max_clique, build_turan_graph, compress_any, compress_clique, edit_report,
    erdos_partition, gen_perturbed_turan, gen_planted, max_clique_exact, parse_str,
    shift_parameters, solve_turan_clique, turan_edge_count, verify_partition, verify_witness,
    Format, Graph, Mode, Rng, SolverConfig, SolverError, TuranCliqueInstance,
};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(
            move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                let edges = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e);
                Graph::from_edges(n, edges).unwrap()
            },
        )
    })
}

/// `(n, r, k, seed)` with `2 <= r <= n/2`, `1 <= k <= 12`, and `k` small
/// enough for both the perturbed and the planted generator.
fn arb_perturbed(max_n: usize) -> impl Strategy<Value = (usize, usize, u128, u64)> {
    (4..=max_n)
        .prop_flat_map(|n| (Just(n), 2..=n / 2, 1..=12u128, any::<u64>()))
        .prop_map(|(n, r, k, seed)| {
            let spare = turan_edge_count(n, r).unwrap() + 2 - (r * (r + 1) / 2) as u128;
            (n, r, k.min(spare), seed)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn complement_is_an_involution(g in arb_graph(30)) {
        let c = g.complement();
        let n = g.n() as u64;
        prop_assert_eq!(c.edge_count() + g.edge_count(), n * n.saturating_sub(1) / 2);
        prop_assert_eq!(c.complement(), g);
    }

    #[test]
    fn induced_edges_map_back(g in arb_graph(25), picks in proptest::collection::vec(0usize..25, 0..25)) {
        let picks: Vec<usize> = picks.into_iter().filter(|&v| v < g.n()).collect();
        let (sub, map) = g.induced_subgraph(&picks).unwrap();
        for (u, v) in sub.edges() {
            prop_assert!(g.has_edge(map.original(u), map.original(v)));
        }
    }

    #[test]
    fn serialization_round_trips(g in arb_graph(30)) {
        prop_assert_eq!(&parse_str(&to_dimacs(&g), Format::Dimacs).unwrap(), &g);
        prop_assert_eq!(&parse_str(&to_edge_list(&g), Format::EdgeList).unwrap(), &g);
    }

    #[test]
    fn turan_counts_are_monotone(n in 2usize..400) {
        for i in 1..n {
            prop_assert!(turan_edge_count(n, i + 1).unwrap() > turan_edge_count(n, i).unwrap());
        }
    }

    #[test]
    fn turan_graph_clique_number(n in 1usize..=16, r in 1usize..=16) {
        prop_assume!(r <= n);
        let g = build_turan_graph(n, r).unwrap();
        prop_assert_eq!(g.edge_count() as u128, turan_edge_count(n, r).unwrap());
        prop_assert_eq!(brute_force_max_clique(&g).unwrap().0, r);
    }

    #[test]
    fn partition_claims_hold_on_any_graph(g in arb_graph(30)) {
        prop_assume!(g.n() > 0);
        let p = erdos_partition(&g).unwrap();
        prop_assert!(g.is_clique(&p.pivots));
        let edits = edit_report(&g, &p).unwrap();
        // |E(G')| - |E(G)| >= sum of edges inside parts.
        prop_assert!(edits.added.len() >= 2 * edits.removed.len());
        let part_of = p.part_of(g.n()).unwrap();
        for (u, &part) in part_of.iter().enumerate() {
            let closure_degree = g.n() - p.parts[part].len();
            prop_assert!(g.degree(u) <= closure_degree);
        }
        let again = erdos_partition(&parse_str(&to_dimacs(&g), Format::Dimacs).unwrap()).unwrap();
        prop_assert_eq!(again, p);
    }

    #[test]
    fn partition_bounds_on_perturbed((n, r, k, seed) in arb_perturbed(120)) {
        let inst = gen_perturbed_turan(n, r, k, seed).unwrap();
        let p = erdos_partition(inst.graph()).unwrap();
        let report = verify_partition(inst.graph(), &p, r, k).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn partition_bounds_on_noisy(n in 8usize..80, j in 0usize..4, extra in 0usize..6, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let r = 2 + rng.index(n / 2 - 1);
        let g = noisy_turan(n, r, j, extra, &mut rng);
        let k = deficit(&g, r).max(1);
        let p = erdos_partition(&g).unwrap();
        let report = verify_partition(&g, &p, r, k).unwrap();
        prop_assert!(report.all_passed(), "{:?}", report.failures().collect::<Vec<_>>());
    }

    #[test]
    fn kernel_size_and_accounting((n, r, k, seed) in arb_perturbed(300), planted in any::<bool>()) {
        let inst = if planted && k >= 2 {
            gen_planted(n, r, k, seed).unwrap().instance
        } else {
            gen_perturbed_turan(n, r, k, seed).unwrap()
        };
        let out = compress_clique(&inst).unwrap();
        if let Some(a) = out.trace.accounting {
            let (x, removed, added) = (a.touched as u128, a.removed as u128, a.added as u128);
            prop_assert!(a.kernel_vertices as u128 <= x + removed);
            prop_assert!(x + removed <= 2 * added + removed);
            prop_assert!(2 * added + removed <= 5 * a.k);
        }
        if let Some(v) = out.kernel_vertices() {
            prop_assert!(v as u128 <= 5 * k);
        }
    }

    #[test]
    fn noisy_kernels_are_bounded_and_idempotent(n in 12usize..60, j in 0usize..3, extra in 0usize..5, seed in any::<u64>()) {
        let mut rng = Rng::new(seed);
        let r = 2 + rng.index(n / 2 - 1);
        let g = noisy_turan(n, r, j, extra, &mut rng);
        let k = deficit(&g, r).max(1);
        let inst = TuranCliqueInstance::new(g, r, k, r + 1).unwrap();
        let out = compress_clique(&inst).unwrap();
        if let Verdict::Open { graph, ell } = &out.verdict {
            prop_assert!(graph.n() as u128 <= 5 * k);
            let r2 = ell.saturating_sub(1).max(1);
            let again = TuranCliqueInstance::new(graph.clone(), r2, deficit(graph, r2), *ell).unwrap();
            let second = compress_any(&again).unwrap();
            if let Some(v) = second.kernel_vertices() {
                prop_assert!(v <= graph.n());
            }
        }
    }

    #[test]
    fn shift_keeps_the_edge_bound(g in arb_graph(22), seed in any::<u64>()) {
        prop_assume!(g.n() >= 3);
        let mut rng = Rng::new(seed);
        let inst = random_instance(g, &mut rng);
        if inst.ell() > inst.r() + 1 {
            let shifted = shift_parameters(&inst).unwrap();
            prop_assert_eq!(shifted.r(), inst.ell());
            prop_assert_eq!(shifted.tau(), 0);
        }
    }

    #[test]
    fn solver_matches_oracle(g in arb_graph(22)) {
        let exact = max_clique_exact(&g, &SolverConfig::default()).unwrap();
        let (size, _) = brute_force_max_clique(&g).unwrap();
        prop_assert_eq!(exact.size, size);
        prop_assert!(g.is_clique(&exact.clique));
    }

    #[test]
    fn witness_is_thread_independent(g in arb_graph(40)) {
        let one = max_clique_exact(&g, &SolverConfig::default()).unwrap();
        for threads in [2, 4] {
            let cfg = SolverConfig { threads, ..Default::default() };
            prop_assert_eq!(&max_clique_exact(&g, &cfg).unwrap().clique, &one.clique);
        }
    }

    #[test]
    fn budgets_never_flip_answers(g in arb_graph(30), budget in 1u64..200) {
        let full = max_clique_exact(&g, &SolverConfig::default()).unwrap();
        let cfg = SolverConfig { node_budget: budget, threads: 1 };
        match max_clique_exact(&g, &cfg) {
            Ok(found) => prop_assert_eq!(found.clique, full.clique),
            Err(e) => prop_assert_eq!(e, SolverError::BudgetExceeded { budget }),
        }
        prop_assert!(full.nodes <= DEFAULT_NODE_BUDGET);
    }

    #[test]
    fn turan_clique_matches_oracle(g in arb_graph(22), seed in any::<u64>()) {
        prop_assume!(g.n() >= 1);
        let mut rng = Rng::new(seed);
        let inst = random_instance(g, &mut rng);
        let expected = brute_force_max_clique(inst.graph()).unwrap().0 >= inst.ell();
        let d = solve_turan_clique(&inst, &SolverConfig::default()).unwrap();
        prop_assert_eq!(d.answer.is_yes(), expected);
        if let Some(w) = &d.witness {
            prop_assert!(verify_witness(inst.graph(), w, inst.ell(), Mode::Clique).unwrap());
        }
    }

    #[test]
    fn planted_witnesses_are_cliques((n, r, k, seed) in arb_perturbed(20)) {
        prop_assume!(k >= 2);
        let p = gen_planted(n, r, k, seed);
        prop_assume!(p.is_ok());
        let p = p.unwrap();
        prop_assert!(verify_witness(p.instance.graph(), &p.witness, r + 1, Mode::Clique).unwrap());
        prop_assert!(brute_force_max_clique(p.instance.graph()).unwrap().0 > r);
    }

    #[test]
    fn generators_are_deterministic((n, r, k, seed) in arb_perturbed(80)) {
        let a = gen_perturbed_turan(n, r, k, seed).unwrap();
        let b = gen_perturbed_turan(n, r, k, seed).unwrap();
        prop_assert_eq!(to_dimacs(a.graph()), to_dimacs(b.graph()));
        if k >= 2 {
            let a = gen_planted(n, r, k, seed).unwrap();
            let b = gen_planted(n, r, k, seed).unwrap();
            prop_assert_eq!(to_dimacs(a.instance.graph()), to_dimacs(b.instance.graph()));
            prop_assert_eq!(a.witness, b.witness);
        }
    }
}
