use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turan-kernel"))
        .args(args)
        .env_remove("TURAN_CLIQUE_BUDGET")
        .output()
        .expect("binary runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}",
            String::from_utf8_lossy(&out.stdout)
        )
    })
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, body: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, body).unwrap();
    p
}

fn generate(
    dir: &TempDir,
    name: &str,
    family: &str,
    n: &str,
    r: &str,
    k: &str,
    seed: &str,
) -> (String, Value) {
    let out_path = path(dir, name);
    let out = run(&[
        "generate", "--family", family, "--n", n, "--r", r, "--k", k, "--seed", seed, "--out",
        &out_path,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let sidecar = fs::read_to_string(format!("{out_path}.json")).unwrap();
    (out_path, serde_json::from_str(&sidecar).unwrap())
}

#[test]
fn planted_instance_solves_yes_with_input_numbering() {
    let dir = TempDir::new().unwrap();
    let (graph, sidecar) = generate(&dir, "p.col", "planted", "40", "4", "3", "7");
    assert_eq!(sidecar["schema_version"], 1);
    assert_eq!(sidecar["known_answer"], "yes");
    for threads in ["1", "3"] {
        let out = run(&[
            "solve",
            "--graph",
            &graph,
            "--r",
            "4",
            "--k",
            "3",
            "--ell",
            "5",
            "--threads",
            threads,
        ]);
        assert!(out.status.success());
        let v = json(&out);
        assert_eq!(v["schema_version"], 1);
        assert_eq!(v["answer"], "yes");
        let witness: Vec<u64> = serde_json::from_value(v["witness"].clone()).unwrap();
        assert_eq!(witness.len(), 5);
        assert!(witness.iter().all(|&w| (1..=40).contains(&w)));
        let ids = witness
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",");
        let check = run(&["verify", "--graph", &graph, "--witness", &ids, "--ell", "5"]);
        assert!(check.status.success());
        assert_eq!(json(&check)["witness_valid"], true);
    }
}

#[test]
fn perturbed_instance_solves_no() {
    let dir = TempDir::new().unwrap();
    let (graph, sidecar) = generate(&dir, "t.col", "perturbed", "60", "5", "4", "1");
    assert_eq!(sidecar["known_answer"], "no");
    let out = run(&[
        "solve",
        "--graph",
        &graph,
        "--r",
        "5",
        "--k",
        "4",
        "--ell",
        "6",
        "--emit-partition",
        "--emit-trace",
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["answer"], "no");
    assert!(v["witness"].is_null());
    let parts = v["partition"]["parts"].as_array().unwrap();
    let mut ids: Vec<u64> = parts
        .iter()
        .flat_map(|p| p.as_array().unwrap())
        .map(|x| x.as_u64().unwrap())
        .collect();
    ids.sort_unstable();
    assert_eq!(ids, (1..=60).collect::<Vec<_>>());
    assert!(v["trace"].is_object());
}

#[test]
fn surplus_violation_reports_slack() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "path.txt", "0 1\n1 2\n");
    let out = run(&[
        "solve", "--graph", &graph, "--r", "3", "--k", "0", "--ell", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "invalid_instance");
    assert_eq!(v["error"]["slack"], -1);
    assert!(!out.stderr.is_empty());
}

#[test]
fn budget_exhaustion_exits_2() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "path.txt", "0 1\n1 2\n");
    let out = run(&[
        "solve", "--graph", &graph, "--r", "1", "--k", "0", "--ell", "2", "--budget", "1",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(json(&out)["error"]["kind"], "budget_exceeded");

    let env = Command::new(env!("CARGO_BIN_EXE_turan-kernel"))
        .args([
            "solve", "--graph", &graph, "--r", "1", "--k", "0", "--ell", "2",
        ])
        .env("TURAN_CLIQUE_BUDGET", "1")
        .output()
        .unwrap();
    assert_eq!(env.status.code(), Some(2));
}

#[test]
fn parse_errors_carry_the_line() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "bad.col", "p edge 3 1\ne 1 5\n");
    let out = run(&[
        "solve", "--graph", &graph, "--r", "1", "--k", "0", "--ell", "2",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"]["kind"], "parse_error");
    assert!(v["error"]["message"].as_str().unwrap().contains("line 2"));
}

#[test]
fn independent_set_mode() {
    let dir = TempDir::new().unwrap();
    // C5: d = 2, target ceil(5/3) + 1 = 3 > alpha = 2.
    let graph = write(&dir, "c5.txt", "0 1\n1 2\n2 3\n3 4\n4 0\n");
    let out = run(&["solve", "--graph", &graph, "--is-mode", "--t", "1"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["mode"], "independent_set");
    assert_eq!(v["instance"]["target"], 3);
    assert_eq!(v["answer"], "no");

    let star = write(&dir, "star.txt", "0 1\n0 2\n0 3\n0 4\n");
    let v = json(&run(&["solve", "--graph", &star, "--is-mode", "--t", "1"]));
    assert_eq!(v["answer"], "yes");
}

#[test]
fn compress_writes_open_kernels() {
    let dir = TempDir::new().unwrap();
    let graph = write(&dir, "path.txt", "0 1\n1 2\n");
    let kernel = path(&dir, "kernel.txt");
    let out = run(&[
        "compress", "--graph", &graph, "--r", "1", "--k", "0", "--ell", "2", "--out", &kernel,
    ]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["verdict"], "open");
    assert_eq!(v["kernel"]["n"], 3);
    let written = fs::read_to_string(&kernel).unwrap();
    let edges = written
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .count();
    assert_eq!(edges, 2);
}

#[test]
fn generation_is_seeded() {
    let dir = TempDir::new().unwrap();
    let (a, _) = generate(&dir, "a.col", "planted", "30", "3", "4", "11");
    let (b, _) = generate(&dir, "b.col", "planted", "30", "3", "4", "11");
    let (c, _) = generate(&dir, "c.col", "planted", "30", "3", "4", "12");
    let read = |p: &str| fs::read_to_string(Path::new(p)).unwrap();
    assert_eq!(read(&a), read(&b));
    assert_ne!(read(&a), read(&c));
}

#[test]
fn reductions_preserve_the_source_answer() {
    let dir = TempDir::new().unwrap();
    // Triangle plus a pendant edge: omega = 3.
    let source = write(&dir, "s.txt", "0 1\n1 2\n0 2\n2 3\n");
    for (ell, expected) in [("3", "yes"), ("4", "no")] {
        let out_path = path(&dir, &format!("xi{ell}.col"));
        let out = run(&[
            "generate", "--family", "fixed-xi", "--source", &source, "--ell", ell, "--xi", "2",
            "--out", &out_path,
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
        let side: Value =
            serde_json::from_str(&fs::read_to_string(format!("{out_path}.json")).unwrap()).unwrap();
        assert_eq!(side["known_answer"], expected);
        let inst = &side["instance"];
        let args = [
            inst["r"].to_string(),
            inst["k"].to_string(),
            inst["ell"].to_string(),
        ];
        let solved = json(&run(&[
            "solve", "--graph", &out_path, "--r", &args[0], "--k", &args[1], "--ell", &args[2],
        ]));
        assert_eq!(solved["answer"], expected);
    }
    let out_path = path(&dir, "tau.col");
    let out = run(&[
        "generate",
        "--family",
        "fixed-tau",
        "--source",
        &source,
        "--ell",
        "4",
        "--tau",
        "2",
        "--out",
        &out_path,
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let side: Value =
        serde_json::from_str(&fs::read_to_string(format!("{out_path}.json")).unwrap()).unwrap();
    assert_eq!(side["known_answer"], "no");
    assert_eq!(side["instance"]["tau"], 2);
}

#[test]
fn verify_turan_table() {
    let out = run(&["verify", "--turan-table", "--max-n", "6"]);
    assert!(out.status.success());
    let v = json(&out);
    assert_eq!(v["all_passed"], true);
    assert_eq!(v["turan_table"].as_array().unwrap().len(), 21);
    assert_eq!(
        run(&["verify", "--turan-table", "--max-n", "9"])
            .status
            .code(),
        Some(1)
    );
}

#[test]
fn verify_partition_on_generated_instance() {
    let dir = TempDir::new().unwrap();
    let (graph, _) = generate(&dir, "t.col", "perturbed", "50", "4", "3", "2");
    let out = run(&[
        "verify",
        "--graph",
        &graph,
        "--partition",
        "--r",
        "4",
        "--k",
        "3",
    ]);
    assert!(out.status.success());
    assert_eq!(json(&out)["all_passed"], true);
}

#[test]
fn bench_emits_csv() {
    let out = run(&[
        "bench",
        "--n",
        "40,80",
        "--r",
        "3",
        "--k",
        "2",
        "--repeats",
        "2",
    ]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "# schema_version: 1");
    assert_eq!(
        lines[1],
        "n,m,k,compress_ns,kernel_vertices,solve_ns,r,seed"
    );
    assert_eq!(lines.len(), 4);
    assert!(lines[2].starts_with("40,"));

    let out = run(&[
        "bench",
        "--is-mode",
        "--n",
        "12",
        "--t",
        "1",
        "--density",
        "20",
        "--repeats",
        "1",
    ]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(
        text.lines().nth(1),
        Some("n,m,t,d,t_d2,compress_ns,kernel_vertices,solve_ns,density,seed")
    );
    assert_eq!(text.lines().count(), 3);
}

#[test]
fn usage_errors_exit_1() {
    assert_eq!(run(&["bogus"]).status.code(), Some(1));
    assert_eq!(run(&["solve", "--graph", "x.col"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}
