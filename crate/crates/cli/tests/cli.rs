//! End-to-end behavior of the `degwhit` binary: exit codes, the coset-table
//! cache, configuration files and the report commands.

use std::path::Path;
use std::process::{Command, Output};

fn degwhit(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_degwhit"));
    cmd.args(args).env_remove("DEGWHIT_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("DEGWHIT_CACHE_DIR", dir);
    }
    cmd.output().expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    degwhit(args, None).status.code().expect("exit code")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn exit_code_contract() {
    assert_eq!(
        code(&["coeff", "--group", "A2", "--node", "1", "--support", "1:m"]),
        0
    );
    // Term 2 of the D5 minimal coefficient carries an uncancelled ξ(1) at s = 5/2.
    assert_eq!(
        code(&[
            "coeff",
            "--group",
            "D5",
            "--node",
            "1",
            "--support",
            "1:2",
            "--s",
            "5/2"
        ]),
        2
    );
    assert_eq!(
        code(&[
            "coeff",
            "--group",
            "E8",
            "--node",
            "8",
            "--support",
            "6,8",
            "--strategy",
            "exhaustive"
        ]),
        3
    );
    assert_eq!(
        code(&[
            "coeff",
            "--group",
            "E7",
            "--node",
            "7",
            "--support",
            "1,7",
            "--strategy",
            "exhaustive"
        ]),
        3
    );
    assert_eq!(
        code(&["coeff", "--group", "E9", "--node", "1", "--support", "1"]),
        4
    );
    assert_eq!(
        code(&["coeff", "--group", "E8", "--node", "9", "--support", "1"]),
        4
    );
    assert_eq!(
        code(&[
            "coeff",
            "--group",
            "E8",
            "--node",
            "8",
            "--support",
            "1",
            "--s",
            "1/0"
        ]),
        4
    );
    assert_eq!(
        code(&[
            "coeff",
            "--group",
            "D5",
            "--node",
            "1",
            "--support",
            "2,3,4"
        ]),
        4
    );
    assert_eq!(code(&["coeff", "--group", "E8", "--node", "8"]), 4);
    assert_eq!(code(&["coeff", "--no-such-flag"]), 4);
    assert_eq!(
        code(&["pair", "--group", "A2", "--s", "1,0", "--phi", "1:1"]),
        4
    );
    assert_eq!(code(&["orbit", "--group", "D5", "--partition", "3111"]), 4);
    assert_eq!(code(&["--help"]), 0);
}

#[test]
fn documented_examples() {
    let o = degwhit(
        &[
            "coeff",
            "--group",
            "E8",
            "--node",
            "8",
            "--support",
            "6:m,8:n",
            "--s",
            "9/2",
        ],
        None,
    );
    let out = stdout(&o);
    assert!(
        out.contains("verdict at s = 9/2: Eulerian (single term)"),
        "{out}"
    );
    assert!(
        out.contains("verdict at generic s: non-Eulerian (12 terms)"),
        "{out}"
    );

    let o = degwhit(
        &[
            "coeff",
            "--group",
            "D5",
            "--node",
            "1",
            "--support",
            "4:m,5:n",
            "--blocks",
            "falling",
        ],
        None,
    );
    assert!(stdout(&o)
        .contains("coefficient: xi(2s-4)^2 / (xi(2s) * xi(2s-3)) * B_m(5/2-s) * B_n(5/2-s)"));

    let o = degwhit(
        &["coeff", "--group", "A2", "--node", "1", "--support", "1:m"],
        None,
    );
    assert!(stdout(&o).contains("coefficient: B_m(s)\n"));

    let o = degwhit(&["orbit", "--group", "D5", "--partition", "31111111"], None);
    assert!(
        stdout(&o).starts_with("(31^7) (2A1)': dim 16, GK dim 8\n"),
        "{}",
        stdout(&o)
    );

    let o = degwhit(&["pair", "--group", "A2", "--neutral", "1:1"], None);
    assert!(stdout(&o).contains("sl2 relations: verified"));
    assert!(stdout(&o).contains("radical of omega equals n_S,phi: true"));
}

#[test]
fn dominance_query_on_a_commuting_shift() {
    // (2A1)' in D5 from the two spinor roots; shifting S along a direction
    // that vanishes on both roots keeps φ and is dominated.
    let o = degwhit(
        &[
            "pair",
            "--group",
            "D5",
            "--neutral",
            "4:1;5:1",
            "--dominates",
            "0,0,-2,2,2",
            "--dominates",
            "1,-1,-2,2,2",
            "--orbit",
            "(2A1)'",
            "--format",
            "json",
        ],
        None,
    );
    assert!(o.status.success(), "{}", stderr(&o));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    for d in v["dominance"].as_array().unwrap() {
        assert_eq!(d["dominated"], true, "{d}");
    }
    assert_eq!(v["isotropic"]["holds"], true);
    assert_eq!(v["isotropic"]["i_max"], 8);
}

#[test]
fn e8_table_replayed_from_cache_matches_fresh_run() {
    let dir = tempfile::tempdir().unwrap();
    let args = [
        "coeff",
        "--group",
        "E8",
        "--node",
        "8",
        "--support",
        "6:m,8:n",
        "--s",
        "9/2",
        "--format",
        "json",
    ];
    let fresh = degwhit(&args, None);
    let first = degwhit(&args, Some(dir.path()));
    let replay = degwhit(&args, Some(dir.path()));
    assert!(stderr(&first).contains("Miss"), "{}", stderr(&first));
    assert!(stderr(&replay).contains("Hit"), "{}", stderr(&replay));
    assert_eq!(stdout(&fresh), stdout(&first));
    assert_eq!(stdout(&fresh), stdout(&replay));

    let entries: Vec<_> = std::fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    assert_eq!(entries.len(), 1, "no stray temporary files: {entries:?}");
    let stored: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&entries[0]).unwrap()).unwrap();
    assert_eq!(stored["group"], "E8");
    assert_eq!(stored["support"], serde_json::json!([6, 8]));

    std::fs::write(&entries[0], "{\"group\": \"E8\", \"support\": [6, 8]").unwrap();
    let repaired = degwhit(&args, Some(dir.path()));
    assert!(
        stderr(&repaired).contains("Replaced"),
        "{}",
        stderr(&repaired)
    );
    assert_eq!(stdout(&fresh), stdout(&repaired));

    // A flag overrides the environment.
    let other = tempfile::tempdir().unwrap();
    let mut with_flag = args.to_vec();
    let p = other.path().to_str().unwrap();
    with_flag.extend(["--cache-dir", p]);
    let o = degwhit(&with_flag, Some(dir.path()));
    assert!(stderr(&o).contains("Miss"));
    assert_eq!(std::fs::read_dir(other.path()).unwrap().count(), 1);
}

#[test]
fn config_file_mirrors_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("job.toml");
    std::fs::write(
        &cfg,
        "group = \"E6\"\nnode = 1\nsupport = \"1:m,4:n\"\nformat = \"latex\"\nblocks = \"falling\"\n\
         [numeric]\ntarget = 1e-9\n",
    )
    .unwrap();
    let from_file = degwhit(&["coeff", "--config", cfg.to_str().unwrap()], None);
    let from_flags = degwhit(
        &[
            "coeff",
            "--group",
            "E6",
            "--node",
            "1",
            "--support",
            "1:m,4:n",
            "--format",
            "latex",
            "--blocks",
            "falling",
        ],
        None,
    );
    assert!(from_file.status.success(), "{}", stderr(&from_file));
    assert_eq!(stdout(&from_file), stdout(&from_flags));

    let overridden = degwhit(
        &[
            "coeff",
            "--config",
            cfg.to_str().unwrap(),
            "--format",
            "text",
        ],
        None,
    );
    assert!(stdout(&overridden).starts_with("group: E6, node 1\n"));

    std::fs::write(&cfg, "group = \"E6\"\nnodes = 1\n").unwrap();
    assert_eq!(code(&["coeff", "--config", cfg.to_str().unwrap()]), 4);
    std::fs::write(
        &cfg,
        "group = \"E6\"\nnode = 1\nsupport = \"1\"\n[numeric]\ntarget = 0.5\n",
    )
    .unwrap();
    assert_eq!(code(&["coeff", "--config", cfg.to_str().unwrap()]), 4);
}

#[test]
fn numeric_value_with_integer_charges() {
    let o = degwhit(
        &[
            "coeff",
            "--group",
            "A3",
            "--node",
            "1",
            "--support",
            "1:1",
            "--s",
            "1",
            "--format",
            "json",
        ],
        None,
    );
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["numeric"]["status"], "value");
    let x: f64 = v["numeric"]["value"].as_str().unwrap().parse().unwrap();
    // B_1(1) = 2/ξ(2) · K_{1/2}(2π) · 1 = (12/π) · e^{−2π}/2.
    let expected = 6.0 / std::f64::consts::PI * (-2.0 * std::f64::consts::PI).exp();
    assert!((x / expected - 1.0).abs() < 1e-10, "{x} vs {expected}");

    let o = degwhit(
        &[
            "coeff",
            "--group",
            "E8",
            "--node",
            "8",
            "--support",
            "7:1,8:1",
            "--s",
            "7/3",
        ],
        None,
    );
    assert!(
        stdout(&o).contains("value: unavailable (no numeric kernel"),
        "{}",
        stdout(&o)
    );

    let o = degwhit(
        &[
            "coeff",
            "--group",
            "A3",
            "--node",
            "1",
            "--support",
            "1:m",
            "--s",
            "1",
        ],
        None,
    );
    assert!(!stdout(&o).contains("value"));
}

#[test]
fn tables_pass() {
    for which in ["realizations", "gkdims"] {
        let o = degwhit(&["table", which], None);
        let out = stdout(&o);
        assert!(o.status.success(), "{out}");
        assert!(!out.contains("FAIL"));
        assert!(out.lines().all(|l| l.starts_with("PASS")));
    }
    let o = degwhit(&["table", "gkdims"], None);
    assert!(stdout(&o).contains("PASS  E6 A1: expected 11, observed 11"));
    assert!(stdout(&o).contains("PASS  E6 2A1: expected 16, observed 16"));
    let o = degwhit(&["table", "realizations"], None);
    assert!(stdout(&o).contains(
        "E8 ntm (node 8), 3A1 [E8, node 8, support [4, 6, 8], s_8 = 9/2]: expected Zero"
    ));
}
