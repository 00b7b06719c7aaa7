//! CLI acceptance: every command rerun with an identical configuration must
//! produce byte-identical primary outputs across thread counts 1 and 8, and
//! the documented exit codes must hold. Wall-clock timing is segregated
//! into `.meta.json` sidecars, which are exempt.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

fn binary() -> &'static str {
    env!("CARGO_BIN_EXE_degreebound")
}

struct Workspace {
    root: PathBuf,
}

impl Workspace {
    fn new(tag: &str) -> Workspace {
        let root = std::env::temp_dir().join(format!(
            "degreebound-acceptance-{}-{tag}",
            std::process::id()
        ));
        let _ = std::fs::remove_dir_all(&root);
        std::fs::create_dir_all(&root).expect("workspace dir");
        Workspace { root }
    }

    fn path(&self, name: &str) -> PathBuf {
        self.root.join(name)
    }

    fn cache(&self) -> PathBuf {
        self.root.join("cache")
    }
}

impl Drop for Workspace {
    fn drop(&mut self) {
        let _ = std::fs::remove_dir_all(&self.root);
    }
}

fn run(ws: &Workspace, args: &[&str]) -> (i32, String) {
    let output = Command::new(binary())
        .args(args)
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn CLI");
    let code = output.status.code().unwrap_or(-1);
    (code, String::from_utf8_lossy(&output.stderr).to_string())
}

/// Runs `args` twice, once with 1 thread and once with 8, writing to
/// separate files; returns the two primary outputs.
fn run_both_thread_counts(ws: &Workspace, tag: &str, args: &[&str]) -> (Vec<u8>, Vec<u8>, i32) {
    let out1 = ws.path(&format!("{tag}-t1.out"));
    let out8 = ws.path(&format!("{tag}-t8.out"));
    let mut args1: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    args1.extend(["--threads".into(), "1".into(), "--out".into(), out1.display().to_string()]);
    let mut args8: Vec<String> = args.iter().map(|s| s.to_string()).collect();
    args8.extend(["--threads".into(), "8".into(), "--out".into(), out8.display().to_string()]);
    let run_with = |argv: &[String]| -> i32 {
        Command::new(binary())
            .args(argv)
            .env("DEGREEBOUND_CACHE", ws.cache())
            .output()
            .expect("spawn CLI")
            .status
            .code()
            .unwrap_or(-1)
    };
    let code1 = run_with(&args1);
    let code8 = run_with(&args8);
    assert_eq!(code1, code8, "exit codes diverge for {tag}");
    let bytes1 = std::fs::read(&out1).expect("first output");
    let bytes8 = std::fs::read(&out8).expect("second output");
    // Sidecars must exist and carry the timing.
    assert!(Path::new(&format!("{}.meta.json", out1.display())).exists());
    (bytes1, bytes8, code1)
}

#[test]
fn criterion_9_determinism_across_thread_counts() {
    let started = Instant::now();
    let ws = Workspace::new("determinism");
    let commands: Vec<(&str, Vec<&str>)> = vec![
        ("ex", vec!["ex", "--n", "6", "--s", "2", "--h", "K2,2"]),
        (
            "ex-classical",
            vec!["ex", "--n", "7", "--h", "C4", "--format", "csv"],
        ),
        (
            "detect",
            vec![
                "detect",
                "--g",
                "C9",
                "--h",
                "K2,3",
                "--mode",
                "induced-subdivision",
            ],
        ),
        (
            "pipeline",
            vec![
                "pipeline",
                "--op",
                "kuhn-osthus",
                "--g",
                "gnp(14,0.35)@5",
                "--h",
                "P4",
                "--s",
                "2",
                "--seed",
                "11",
            ],
        ),
        (
            "pipeline-girth5",
            vec![
                "pipeline",
                "--op",
                "girth5",
                "--g",
                "gnp(20,0.2)@9",
                "--seed",
                "3",
            ],
        ),
        ("chi", vec!["chi", "--g", "petersen", "--r", "2", "--t", "3"]),
        (
            "sweep",
            vec![
                "sweep", "--n", "4..7", "--s", "2", "--h", "K2,2", "--format", "csv",
            ],
        ),
    ];
    // Warm the oracle memo so timing fields come from the cache on every
    // compared run.
    for (tag, args) in &commands {
        let warm = ws.path(&format!("{tag}-warm.out"));
        let mut argv: Vec<String> = args.iter().map(|s| s.to_string()).collect();
        argv.extend(["--out".into(), warm.display().to_string()]);
        Command::new(binary())
            .args(&argv)
            .env("DEGREEBOUND_CACHE", ws.cache())
            .output()
            .expect("warm run");
    }
    let mut ok = true;
    for (tag, args) in &commands {
        let (bytes1, bytes8, code) = run_both_thread_counts(&ws, tag, args);
        if bytes1 != bytes8 {
            eprintln!("byte mismatch for {tag}");
            ok = false;
        }
        if !matches!(code, 0 | 2) {
            eprintln!("unexpected exit code {code} for {tag}");
            ok = false;
        }
        // Re-running the exact same invocation reproduces the bytes too.
        let (again1, _, _) = run_both_thread_counts(&ws, tag, args);
        if again1 != bytes1 {
            eprintln!("rerun mismatch for {tag}");
            ok = false;
        }
    }
    println!(
        "{} criterion-9 determinism across thread counts: {:.2?} (budget 600s)",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed()
    );
    assert!(ok);
    assert!(started.elapsed().as_secs() < 600);
}

#[test]
fn config_file_defaults_yield_to_flags() {
    let ws = Workspace::new("config");
    let config = ws.path("run.conf");
    std::fs::write(&config, "seed = 5\nmax-retries = 3\n").unwrap();
    // Flag --seed 7 overrides the config seed; max-retries comes from the
    // file. Both are echoed in the certificate's params block.
    let out = Command::new(binary())
        .args([
            "pipeline",
            "--config",
            config.to_str().unwrap(),
            "--op",
            "girth5",
            "--g",
            "gnp(18,0.2)@2",
            "--seed",
            "7",
        ])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
    assert_eq!(body["params"]["seed"], 7);
    assert_eq!(body["params"]["max_retries"], 3);
}

#[test]
fn exit_codes_and_worked_examples() {
    let ws = Workspace::new("examples");
    // ex: the worked extremal value.
    let out = Command::new(binary())
        .args(["ex", "--n", "5", "--s", "2", "--h", "K2,2"])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value =
        serde_json::from_slice(&out.stdout).expect("record json");
    assert_eq!(body["max_edges"], 6);

    // detect on a cycle: no induced theta, exit 0, "none".
    let out = Command::new(binary())
        .args([
            "detect",
            "--g",
            "C9",
            "--h",
            "K2,3",
            "--mode",
            "induced-subdivision",
        ])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    let body: serde_json::Value = serde_json::from_slice(&out.stdout).expect("json");
    assert_eq!(body["result"], "none");

    // chi writes a report file.
    let report = ws.path("report.json");
    let out = Command::new(binary())
        .args([
            "chi",
            "--g",
            "petersen",
            "--r",
            "2",
            "--t",
            "3",
            "--out",
            report.to_str().unwrap(),
        ])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    assert!(report.exists());

    // Usage error: exit 1.
    let (code, _) = run(&ws, &["ex", "--n", "5", "--s", "2", "--h", "no-such-graph"]);
    assert_eq!(code, 1);

    // Order cap: the oracle refuses n = 11 outright (usage error), while a
    // sweep marks the cell skipped and succeeds.
    let (code, stderr) = run(&ws, &["ex", "--n", "11", "--s", "2", "--h", "K2,2"]);
    assert_eq!(code, 1, "stderr: {stderr}");
    let sweep = ws.path("sweep.csv");
    let out = Command::new(binary())
        .args([
            "sweep",
            "--n",
            "10..11",
            "--s",
            "2",
            "--h",
            "K2,2",
            "--format",
            "csv",
            "--out",
            sweep.to_str().unwrap(),
        ])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&sweep).unwrap();
    assert!(text.contains("skipped: cap"), "sweep output: {text}");

    // Incomplete search: every vertex of K4 sits on a triangle, so the
    // girth-5 stage deletes the whole sample and the extraction reports
    // exit code 2.
    let out = Command::new(binary())
        .args([
            "pipeline",
            "--op",
            "c4free-bipartite",
            "--g",
            "K4",
            "--s",
            "3",
            "--k",
            "5",
        ])
        .env("DEGREEBOUND_CACHE", ws.cache())
        .output()
        .expect("spawn");
    assert_eq!(out.status.code(), Some(2));
}
