//! Turán's Clique: compression of near-Turán instances to small Clique
//! instances, an exact maximum-clique solver, brute-force oracles, and
//! seeded instance generators.

pub mod bitset;
pub mod compression;
pub mod generators;
pub mod graph;
pub mod io;
pub mod oracle;
pub mod partition;
pub mod rng;
pub mod solver;
pub mod turan;

pub use compression::{
    compress_any, compress_clique, compress_independent_set, shift_parameters, CliqueInstance,
    CompressionError, CompressionTrace, IndependentSetCompression, TuranCliqueInstance, Verdict,
};
pub use generators::{
    gen_perturbed_turan, gen_planted, gen_reduction_fixed_tau, gen_reduction_fixed_xi, FixedXiCase,
    GeneratorError, PlantedInstance,
};
pub use graph::{Graph, GraphError, VertexMap};
pub use io::{parse_graph, parse_str, serialize, Format, ParseError};
pub use oracle::{
    brute_force_max_clique, brute_force_max_independent_set, max_edges_clique_free, OracleError,
};
pub use partition::{
    edit_report, erdos_partition, multipartite_closure, verify_partition, EditReport, Partition,
    PartitionError, VerificationReport,
};
pub use rng::Rng;
pub use solver::{
    max_clique_exact, solve_turan_clique, solve_turan_is, verify_witness, Answer, Decision,
    MaxClique, Mode, SolverConfig, SolverError,
};
pub use turan::{
    avg_degree_xi_check, build_turan_graph, edge_surplus_check, turan_edge_count, turan_gap,
    EdgeCount, TuranError,
};
