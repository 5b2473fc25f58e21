use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use turan_kernel::compression::{CliqueInstance, CompressionTrace, Verdict};
use turan_kernel::io::{serialize, to_dimacs};
use turan_kernel::oracle::{
    clique_free_extremal_table, extremal_uniqueness, MAX_ENUMERATION_N, MAX_UNIQUENESS_N,
};
use turan_kernel::solver::DEFAULT_NODE_BUDGET;
use turan_kernel::{
    compress_any, compress_independent_set, erdos_partition, gen_perturbed_turan, gen_planted,
    gen_reduction_fixed_tau, gen_reduction_fixed_xi, max_clique_exact, parse_graph,
    solve_turan_clique, solve_turan_is, turan_edge_count, verify_partition, verify_witness,
    CompressionError, Decision, EditReport, FixedXiCase, Format, GeneratorError, Graph, Mode,
    ParseError, Partition, SolverConfig, SolverError, TuranCliqueInstance,
};

mod bench;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "turan-kernel",
    version,
    about = "Turán's Clique compression and exact solving"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide a Turán's Clique or Turán's Independent Set instance.
    Solve(SolveArgs),
    /// Compress an instance and report (or write) the kernel.
    Compress(CompressArgs),
    /// Write a seeded instance as DIMACS plus a JSON sidecar.
    Generate(GenerateArgs),
    /// Run oracle checks.
    Verify(VerifyArgs),
    /// Time compression and solving; CSV on stdout.
    Bench(bench::BenchArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Dimacs,
    EdgeList,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Dimacs => Format::Dimacs,
            FormatArg::EdgeList => Format::EdgeList,
        }
    }
}

#[derive(Args)]
struct GraphArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Defaults to edge-list for `.txt`, `.el`, `.edges`, DIMACS otherwise.
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
}

impl GraphArgs {
    fn format(&self) -> Format {
        match self.format {
            Some(f) => f.into(),
            None => match self.graph.extension().and_then(|e| e.to_str()) {
                Some("txt" | "el" | "edges") => Format::EdgeList,
                _ => Format::Dimacs,
            },
        }
    }

    fn load(&self) -> Result<(Graph, Format)> {
        let format = self.format();
        let file = File::open(&self.graph)
            .with_context(|| format!("cannot open {}", self.graph.display()))?;
        let g = parse_graph(BufReader::new(file), format)
            .with_context(|| format!("in {}", self.graph.display()))?;
        Ok((g, format))
    }
}

#[derive(Args)]
struct InstanceArgs {
    #[arg(long, required_unless_present = "is_mode")]
    r: Option<usize>,
    #[arg(long, required_unless_present = "is_mode")]
    k: Option<u128>,
    #[arg(long, required_unless_present = "is_mode")]
    ell: Option<usize>,
    /// Ask for an independent set of size ceil(n/(d+1)) + t instead.
    #[arg(long, conflicts_with_all = ["r", "k", "ell"], requires = "t")]
    is_mode: bool,
    #[arg(long)]
    t: Option<usize>,
}

impl InstanceArgs {
    fn clique_instance(&self, g: Graph) -> Result<TuranCliqueInstance> {
        let (Some(r), Some(k), Some(ell)) = (self.r, self.k, self.ell) else {
            bail!("--r, --k and --ell are required");
        };
        Ok(TuranCliqueInstance::new(g, r, k, ell)?)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Search-node budget for the exact solver.
    #[arg(long, env = "TURAN_CLIQUE_BUDGET", default_value_t = DEFAULT_NODE_BUDGET)]
    budget: u64,
    /// Solver threads; 0 uses every core.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    #[arg(long)]
    emit_partition: bool,
    #[arg(long)]
    emit_trace: bool,
}

#[derive(Args)]
struct CompressArgs {
    #[command(flatten)]
    graph: GraphArgs,
    #[command(flatten)]
    instance: InstanceArgs,
    /// Write the kernel graph here (input format unless --out-format).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    out_format: Option<FormatArg>,
    #[arg(long)]
    emit_trace: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Family {
    Perturbed,
    Planted,
    FixedXi,
    FixedTau,
}

impl Family {
    fn name(self) -> &'static str {
        match self {
            Family::Perturbed => "perturbed",
            Family::Planted => "planted",
            Family::FixedXi => "fixed-xi",
            Family::FixedTau => "fixed-tau",
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    ZeroTau,
    ZeroK,
}

#[derive(Args)]
struct GenerateArgs {
    #[arg(long, value_enum)]
    family: Family,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<u128>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Source Clique graph for the reduction families.
    #[arg(long)]
    source: Option<PathBuf>,
    #[arg(long, value_enum)]
    source_format: Option<FormatArg>,
    /// Clique size asked of the source graph.
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long)]
    xi: Option<usize>,
    #[arg(long)]
    tau: Option<usize>,
    #[arg(long, value_enum, default_value = "zero-tau")]
    case: CaseArg,
    /// DIMACS output; the sidecar goes to `<out>.json`. Stdout if omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// Compare t_r(n) with exhaustive enumeration for all r <= n <= max-n.
    #[arg(long)]
    turan_table: bool,
    #[arg(long, default_value_t = MAX_ENUMERATION_N)]
    max_n: usize,
    #[arg(long)]
    graph: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<FormatArg>,
    /// Comma-separated vertex ids in input numbering.
    #[arg(long, value_delimiter = ',', requires_all = ["graph", "ell"])]
    witness: Option<Vec<i64>>,
    #[arg(long)]
    ell: Option<usize>,
    #[arg(long, value_enum, default_value = "clique")]
    mode: ModeArg,
    /// Check the partition properties for (graph, r, k).
    #[arg(long, requires_all = ["graph", "r", "k"])]
    partition: bool,
    #[arg(long)]
    r: Option<usize>,
    #[arg(long)]
    k: Option<u128>,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Clique,
    IndependentSet,
}

/// Offset between internal ids and input numbering.
fn id_base(format: Format) -> usize {
    match format {
        Format::Dimacs => 1,
        Format::EdgeList => 0,
    }
}

fn shift(ids: &[usize], base: usize) -> Vec<usize> {
    ids.iter().map(|v| v + base).collect()
}

fn shift_partition(p: &Partition, base: usize) -> Partition {
    Partition {
        parts: p.parts.iter().map(|part| shift(part, base)).collect(),
        pivots: shift(&p.pivots, base),
    }
}

fn shift_trace(t: &CompressionTrace, base: usize) -> CompressionTrace {
    let pairs =
        |edges: &[(usize, usize)]| edges.iter().map(|&(u, v)| (u + base, v + base)).collect();
    CompressionTrace {
        partition: t.partition.as_ref().map(|p| shift_partition(p, base)),
        edits: t.edits.as_ref().map(|e| EditReport {
            added: pairs(&e.added),
            removed: pairs(&e.removed),
            touched: shift(&e.touched, base),
        }),
        rule1_representatives: shift(&t.rule1_representatives, base),
        rule2_removed: shift(&t.rule2_removed, base),
        kept: shift(&t.kept, base),
        ..t.clone()
    }
}

fn print_json(value: &Value) -> Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn decision_json(d: &Decision, base: usize) -> Value {
    json!({
        "answer": d.answer,
        "witness": d.witness.as_ref().map(|w| shift(w, base)),
        "stats": d.stats,
    })
}

fn cmd_solve(args: &SolveArgs) -> Result<ExitCode> {
    let (g, format) = args.graph.load()?;
    let base = id_base(format);
    let config = SolverConfig {
        node_budget: args.budget,
        threads: args.threads,
    };
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": "solve" });

    let (decision, compressed) = if args.instance.is_mode {
        let t = args.instance.t.expect("clap enforces --t");
        let compressed = compress_independent_set(&g, t)?;
        out["mode"] = json!("independent_set");
        out["instance"] = json!({
            "n": g.n(), "m": g.edge_count(), "t": t,
            "target": compressed.target,
            "average_degree": compressed.average_degree.to_string(),
            "r": compressed.r,
        });
        (solve_turan_is(&g, t, &config)?, compressed.instance)
    } else {
        let inst = args.instance.clique_instance(g)?;
        out["mode"] = json!("clique");
        out["instance"] = json!(inst.summary());
        (solve_turan_clique(&inst, &config)?, compress_any(&inst)?)
    };

    if let Value::Object(fields) = decision_json(&decision, base) {
        out.as_object_mut().unwrap().extend(fields);
    }
    if args.emit_partition {
        out["partition"] = json!(compressed
            .trace
            .partition
            .as_ref()
            .map(|p| shift_partition(p, base)));
    }
    if args.emit_trace {
        out["trace"] = json!(shift_trace(&compressed.trace, base));
    }
    print_json(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn verdict_json(c: &CliqueInstance, base: usize) -> Value {
    match &c.verdict {
        Verdict::Open { graph, ell } => json!({
            "verdict": "open",
            "kernel": { "n": graph.n(), "m": graph.edge_count(), "ell": ell },
            "kernel_vertices": graph.n(),
        }),
        Verdict::TriviallyYes { witness } => json!({
            "verdict": "trivially_yes",
            "witness": shift(witness, base),
            "kernel_vertices": null,
        }),
        Verdict::TriviallyNo => json!({ "verdict": "trivially_no", "kernel_vertices": null }),
    }
}

fn cmd_compress(args: &CompressArgs) -> Result<ExitCode> {
    let (g, format) = args.graph.load()?;
    let base = id_base(format);
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": "compress" });
    let compressed = if args.instance.is_mode {
        let t = args.instance.t.expect("clap enforces --t");
        let c = compress_independent_set(&g, t)?;
        out["mode"] = json!("independent_set");
        out["instance"] =
            json!({ "n": g.n(), "m": g.edge_count(), "t": t, "target": c.target, "r": c.r });
        c.instance
    } else {
        let inst = args.instance.clique_instance(g)?;
        out["mode"] = json!("clique");
        out["instance"] = json!(inst.summary());
        compress_any(&inst)?
    };
    if let Value::Object(fields) = verdict_json(&compressed, base) {
        out.as_object_mut().unwrap().extend(fields);
    }
    out["shift"] = json!(compressed.trace.shift);
    out["kept"] = json!(shift(&compressed.trace.kept, base));
    if let (Some(path), Verdict::Open { graph, .. }) = (&args.out, &compressed.verdict) {
        let out_format = args.out_format.map_or(format, Format::from);
        fs::write(path, serialize(graph, out_format))
            .with_context(|| format!("writing {}", path.display()))?;
        out["kernel_path"] = json!(path);
    }
    if args.emit_trace {
        out["trace"] = json!(shift_trace(&compressed.trace, base));
    }
    print_json(&out)?;
    Ok(ExitCode::SUCCESS)
}

fn need<T: Copy>(value: Option<T>, flag: &str, family: Family) -> Result<T> {
    value.with_context(|| format!("--{flag} is required for --family {}", family.name()))
}

fn cmd_generate(args: &GenerateArgs) -> Result<ExitCode> {
    let family = args.family;
    let mut witness = None;
    let (inst, params, known) = match family {
        Family::Perturbed | Family::Planted => {
            let n = need(args.n, "n", family)?;
            let r = need(args.r, "r", family)?;
            let k = need(args.k, "k", family)?;
            let params = json!({ "n": n, "r": r, "k": k });
            if family == Family::Perturbed {
                // T_r(n) minus edges stays r-partite, so it has no K_{r+1}.
                (
                    gen_perturbed_turan(n, r, k, args.seed)?,
                    params,
                    Some(false),
                )
            } else {
                let p = gen_planted(n, r, k, args.seed)?;
                witness = Some(shift(&p.witness, 1));
                (p.instance, params, Some(true))
            }
        }
        Family::FixedXi | Family::FixedTau => {
            let path = args
                .source
                .as_ref()
                .context("--source is required for reduction families")?;
            let source = GraphArgs {
                graph: path.clone(),
                format: args.source_format,
            };
            let (g, _) = source.load()?;
            let ell = need(args.ell, "ell", family)?;
            let answer = max_clique_exact(&g, &SolverConfig::default())?.size >= ell;
            if family == Family::FixedXi {
                let xi = need(args.xi, "xi", family)?;
                let case = match args.case {
                    CaseArg::ZeroTau => FixedXiCase::ZeroTau,
                    CaseArg::ZeroK => FixedXiCase::ZeroK,
                };
                let params = json!({ "source": path, "source_n": g.n(), "ell": ell, "xi": xi, "case": case });
                (
                    gen_reduction_fixed_xi(&g, ell, xi, case)?,
                    params,
                    Some(answer),
                )
            } else {
                let tau = need(args.tau, "tau", family)?;
                let params = json!({ "source": path, "source_n": g.n(), "ell": ell, "tau": tau });
                (gen_reduction_fixed_tau(&g, ell, tau)?, params, Some(answer))
            }
        }
    };

    let dimacs = to_dimacs(inst.graph());
    let sidecar = json!({
        "schema_version": SCHEMA_VERSION,
        "family": family.name(),
        "params": params,
        "seed": args.seed,
        "instance": inst.summary(),
        "known_answer": known.map(|yes| if yes { "yes" } else { "no" }),
        "witness": witness,
    });
    match &args.out {
        Some(path) => {
            fs::write(path, dimacs).with_context(|| format!("writing {}", path.display()))?;
            let side = sidecar_path(path);
            fs::write(&side, serde_json::to_string_pretty(&sidecar)? + "\n")
                .with_context(|| format!("writing {}", side.display()))?;
            eprintln!("wrote {} and {}", path.display(), side.display());
        }
        None => io::stdout().lock().write_all(dimacs.as_bytes())?,
    }
    Ok(ExitCode::SUCCESS)
}

fn sidecar_path(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".json");
    PathBuf::from(name)
}

fn cmd_verify(args: &VerifyArgs) -> Result<ExitCode> {
    let mut out = json!({ "schema_version": SCHEMA_VERSION, "command": "verify" });
    let mut all_passed = true;
    let mut ran = false;

    if args.turan_table {
        ran = true;
        if args.max_n > MAX_ENUMERATION_N {
            bail!("--max-n is limited to {MAX_ENUMERATION_N}");
        }
        let mut rows = Vec::new();
        for n in 1..=args.max_n {
            let table = clique_free_extremal_table(n)?;
            for (r, &exhaustive) in table.iter().enumerate().skip(1) {
                let formula = turan_edge_count(n, r)?;
                let unique = if n <= MAX_UNIQUENESS_N {
                    Some(extremal_uniqueness(n, r)?.unique_turan)
                } else {
                    None
                };
                let pass = exhaustive as u128 == formula && unique != Some(false);
                all_passed &= pass;
                rows.push(json!({
                    "n": n, "r": r, "turan": formula, "exhaustive": exhaustive,
                    "unique_maximizer": unique, "pass": pass,
                }));
            }
        }
        out["turan_table"] = json!(rows);
    }

    if args.witness.is_some() || args.partition {
        ran = true;
        let path = args.graph.clone().expect("clap enforces --graph");
        let (g, format) = GraphArgs {
            graph: path,
            format: args.format,
        }
        .load()?;
        let base = id_base(format) as i64;
        if let Some(ids) = &args.witness {
            let internal: Vec<usize> = ids
                .iter()
                .map(|&v| {
                    usize::try_from(v - base)
                        .map_err(|_| anyhow::anyhow!("vertex {v} out of range"))
                })
                .collect::<Result<_>>()?;
            let mode = match args.mode {
                ModeArg::Clique => Mode::Clique,
                ModeArg::IndependentSet => Mode::IndependentSet,
            };
            let valid =
                verify_witness(&g, &internal, args.ell.expect("clap enforces --ell"), mode)?;
            all_passed &= valid;
            out["witness_valid"] = json!(valid);
        }
        if args.partition {
            let p = erdos_partition(&g)?;
            let report = verify_partition(&g, &p, args.r.unwrap(), args.k.unwrap())?;
            all_passed &= report.all_passed();
            out["partition"] = json!(shift_partition(&p, base as usize));
            out["partition_report"] = json!(report);
        }
    }

    if !ran {
        bail!("nothing to verify: pass --turan-table, --witness or --partition");
    }
    out["all_passed"] = json!(all_passed);
    print_json(&out)?;
    Ok(if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

/// Exit status and JSON error record for a failed command.
fn report_error(err: &anyhow::Error) -> ExitCode {
    let (code, mut detail) = match err.downcast_ref::<SolverError>() {
        Some(SolverError::BudgetExceeded { budget }) => {
            (2, json!({ "kind": "budget_exceeded", "budget": budget }))
        }
        Some(SolverError::Compression(c)) => (1, compression_detail(c)),
        _ => match err.downcast_ref::<CompressionError>() {
            Some(c) => (1, compression_detail(c)),
            None if err.downcast_ref::<ParseError>().is_some() => {
                (1, json!({ "kind": "parse_error" }))
            }
            None if err.downcast_ref::<GeneratorError>().is_some() => {
                (1, json!({ "kind": "invalid_parameters" }))
            }
            None => (1, json!({ "kind": "error" })),
        },
    };
    detail["message"] = json!(format!("{err:#}"));
    eprintln!("error: {err:#}");
    let _ = print_json(&json!({ "schema_version": SCHEMA_VERSION, "error": detail }));
    ExitCode::from(code)
}

fn compression_detail(c: &CompressionError) -> Value {
    match c {
        CompressionError::SurplusViolated { deficit } => {
            json!({ "kind": "invalid_instance", "slack": -deficit })
        }
        _ => json!({ "kind": "invalid_instance" }),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let result = match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Compress(a) => cmd_compress(a),
        Command::Generate(a) => cmd_generate(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Bench(a) => bench::run(a),
    };
    result.unwrap_or_else(|e| report_error(&e))
}
