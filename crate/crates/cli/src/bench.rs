use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{bail, Result};
use clap::{Args, ValueEnum};

use turan_kernel::solver::DEFAULT_NODE_BUDGET;
use turan_kernel::{
    compress_any, compress_independent_set, gen_perturbed_turan, gen_planted, solve_turan_clique,
    solve_turan_is, Graph, Rng, SolverConfig, TuranCliqueInstance,
};

use crate::SCHEMA_VERSION;

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum BenchFamily {
    Perturbed,
    Planted,
}

#[derive(Args)]
pub struct BenchArgs {
    #[arg(long, value_delimiter = ',', default_values_t = [100, 200, 400, 800])]
    n: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [4])]
    r: Vec<usize>,
    #[arg(long, value_delimiter = ',', default_values_t = [4])]
    k: Vec<u128>,
    #[arg(long, value_enum, default_value = "perturbed")]
    family: BenchFamily,
    /// Independent-set sweep over G(n, p) graphs with t taken from --t.
    #[arg(long)]
    is_mode: bool,
    #[arg(long, value_delimiter = ',', default_values_t = [1, 2])]
    t: Vec<usize>,
    /// Edge probability for --is-mode, as a percentage.
    #[arg(long, value_delimiter = ',', default_values_t = [10, 20, 30])]
    density: Vec<u64>,
    #[arg(long, default_value_t = 5)]
    repeats: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, env = "TURAN_CLIQUE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    #[arg(long, default_value_t = 1)]
    threads: usize,
}

fn median(samples: &mut [u64]) -> u64 {
    samples.sort_unstable();
    samples[samples.len() / 2]
}

fn time<T>(repeats: usize, mut f: impl FnMut() -> Result<T>) -> Result<(u64, T)> {
    let mut samples = Vec::with_capacity(repeats);
    let mut last = None;
    for _ in 0..repeats {
        let start = Instant::now();
        let out = f()?;
        samples.push(start.elapsed().as_nanos() as u64);
        last = Some(out);
    }
    Ok((median(&mut samples), last.expect("repeats >= 1")))
}

fn gnp(n: usize, percent: u64, rng: &mut Rng) -> Graph {
    let mut g = Graph::new(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.below(100) < percent {
                g.add_edge(u, v).expect("ids are in range");
            }
        }
    }
    g
}

pub fn run(args: &BenchArgs) -> Result<ExitCode> {
    if args.repeats == 0 {
        bail!("--repeats must be at least 1");
    }
    let config = SolverConfig {
        node_budget: args.budget,
        threads: args.threads,
    };
    let mut out = io::stdout().lock();
    writeln!(out, "# schema_version: {SCHEMA_VERSION}")?;
    if args.is_mode {
        writeln!(
            out,
            "n,m,t,d,t_d2,compress_ns,kernel_vertices,solve_ns,density,seed"
        )?;
        for &n in &args.n {
            for &density in &args.density {
                let mut rng = Rng::new(args.seed ^ (n as u64) << 32 ^ density);
                let g = gnp(n, density, &mut rng);
                let d = g.average_degree()?;
                for &t in &args.t {
                    let (compress_ns, c) =
                        time(args.repeats, || Ok(compress_independent_set(&g, t)?))?;
                    let (solve_ns, _) = time(args.repeats, || Ok(solve_turan_is(&g, t, &config)?))?;
                    let d_f = *d.numer() as f64 / *d.denom() as f64;
                    writeln!(
                        out,
                        "{n},{},{t},{d_f:.4},{:.4},{compress_ns},{},{solve_ns},{density},{}",
                        g.edge_count(),
                        t as f64 * d_f * d_f,
                        c.instance.kernel_vertices().unwrap_or(0),
                        args.seed
                    )?;
                }
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    writeln!(out, "n,m,k,compress_ns,kernel_vertices,solve_ns,r,seed")?;
    for &n in &args.n {
        for &r in &args.r {
            for &k in &args.k {
                let inst: TuranCliqueInstance = match args.family {
                    BenchFamily::Perturbed => gen_perturbed_turan(n, r, k, args.seed)?,
                    BenchFamily::Planted => gen_planted(n, r, k, args.seed)?.instance,
                };
                let (compress_ns, c) = time(args.repeats, || Ok(compress_any(&inst)?))?;
                let (solve_ns, _) = time(args.repeats, || Ok(solve_turan_clique(&inst, &config)?))?;
                writeln!(
                    out,
                    "{n},{},{k},{compress_ns},{},{solve_ns},{r},{}",
                    inst.graph().edge_count(),
                    c.kernel_vertices().unwrap_or(0),
                    args.seed
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
