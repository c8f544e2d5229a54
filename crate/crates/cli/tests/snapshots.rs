//! LaTeX snapshots of every published coefficient display, compared byte for
//! byte.  The text rendering of the same run is parsed back and compared
//! symbolically with the formula as printed.
//!
//! Set `DEGWHIT_BLESS=1` to rewrite the stored snapshots.

use std::path::PathBuf;
use std::process::Command;

use degwhit::reduction::CharacterSupport;
use degwhit::symzeta::parse_coeff;

struct Display {
    name: &'static str,
    args: &'static [&'static str],
    /// The formula as printed; `None` where the printed form is not the
    /// engine output (see the block-argument exchange in the E7 case).
    printed: Option<&'static str>,
}

const DISPLAYS: &[Display] = &[
    Display {
        name: "sl3_minimal",
        args: &["--group", "A2", "--node", "1", "--support", "1:m"],
        printed: Some("B_m(s)"),
    },
    Display {
        name: "sl5_minimal",
        args: &["--group", "A4", "--node", "1", "--support", "1:m"],
        printed: Some("B_m(s)"),
    },
    Display {
        name: "sl5_next_to_minimal",
        args: &["--group", "A4", "--node", "2", "--support", "1:m,3:n"],
        printed: Some("xi(2s-1)/xi(2s) B_m(s-1/2) B_n(s-1/2)"),
    },
    Display {
        name: "d5_minimal",
        args: &["--group", "D5", "--node", "1", "--support", "1:m", "--s", "3/2"],
        printed: None,
    },
    Display {
        name: "d5_spinor_pair",
        args: &["--group", "D5", "--node", "1", "--support", "4:m,5:n", "--blocks", "falling"],
        printed: Some("xi(2s-4)^2/(xi(2s) xi(2s-3)) B_m(5/2-s) B_n(5/2-s)"),
    },
    Display {
        name: "d6_spinor_pair",
        args: &["--group", "D6", "--node", "1", "--support", "5:m,6:n", "--blocks", "falling"],
        printed: Some("xi(2s-5)^2/(xi(2s) xi(2s-4)) B_m(3-s) B_n(3-s)"),
    },
    Display {
        name: "d6_node6_three_a1",
        args: &["--group", "D6", "--node", "6", "--support", "1:m,3:n,6:p", "--blocks", "falling", "--s", "2"],
        printed: Some("xi(2s-5)^3/(xi(2s) xi(2s-4) xi(2s-2)) B_m(3-s) B_n(3-s) B_p(3-s)"),
    },
    Display {
        name: "d6_node6_two_a1",
        args: &["--group", "D6", "--node", "6", "--support", "1:m,3:n", "--blocks", "falling", "--s", "2"],
        printed: Some(
            "xi(2s-5)^2/(xi(2s) xi(2s-2)) B_m(3-s) B_n(3-s) \
             + xi(2s-5)^3/(xi(2s) xi(2s-4) xi(2s-2)) B_m(3-s) B_n(3-s)",
        ),
    },
    Display {
        name: "e6_pair",
        args: &["--group", "E6", "--node", "1", "--support", "1:m,4:n", "--blocks", "falling"],
        printed: Some("xi(2s-7)^2/(xi(2s) xi(2s-3)) B_m(4-s) B_n(4-s)"),
    },
    Display {
        name: "e7_pair",
        args: &["--group", "E7", "--node", "7", "--support", "1:m,7:n", "--blocks", "falling", "--s", "4"],
        printed: None,
    },
    Display {
        name: "e8_a2",
        args: &["--group", "E8", "--node", "8", "--support", "7:m,8:n", "--blocks", "falling", "--s", "9/2"],
        printed: Some(
            "xi(2(s-9)) xi(2(s-7)) xi(2s-11) xi(4s-29)/(xi(4(s-7)) xi(2s) xi(2s-9) xi(2s-5)) B_{m,n}(6-s, 19/2-s)",
        ),
    },
    Display {
        name: "e8_three_a1",
        args: &["--group", "E8", "--node", "8", "--support", "4:m,6:n,8:p", "--blocks", "falling", "--s", "9/2"],
        printed: Some(
            "xi(2s-11)^3/(xi(2s) xi(2s-9) xi(2s-5)) B_m(6-s) B_n(6-s) B_p(6-s) \
             + xi(2(s-9))^3 xi(4s-29)/(xi(4(s-7)) xi(2s) xi(2s-9) xi(2s-5)) B_m(19/2-s) B_n(19/2-s) B_p(19/2-s)",
        ),
    },
    Display {
        name: "e8_two_a1",
        args: &[
            "--group", "E8", "--node", "8", "--support", "6:m,8:n", "--blocks", "falling", "--grouped", "--s", "9/2",
        ],
        printed: Some(
            "xi(2s-11)^2/(xi(2s) xi(2s-5)) B_m(6-s) B_n(6-s) \
             + xi(2(s-9)) xi(2(s-7)) xi(2(s-6)) xi(4s-29)/(xi(4(s-7)) xi(2s) xi(2s-9) xi(2s-5)) B_m(13/2-s) B_n(19/2-s) \
             + xi(2s-11)^2 (xi(2s-11) + xi(2s-13) + xi(2(s-6)) + xi(2(s-5)))/(xi(2s) xi(2s-9) xi(2s-5)) B_m(6-s) B_n(6-s) \
             + xi(2(s-9))^2 xi(4s-29) (xi(2s-19) + xi(2s-17) + xi(2s-15) + xi(2(s-9)) + xi(2(s-8)))\
               /(xi(4(s-7)) xi(2s) xi(2s-9) xi(2s-5)) B_m(19/2-s) B_n(19/2-s) \
             + xi(2(s-7)) xi(2s-17) xi(2s-11)/(xi(2s) xi(2s-9) xi(2s-5)) B_m(9-s) B_n(6-s)",
        ),
    },
];

fn run(args: &[&str], format: &str) -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_degwhit"))
        .arg("coeff")
        .args(args)
        .args(["--format", format])
        .env_remove("DEGWHIT_CACHE_DIR")
        .output()
        .expect("binary runs");
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).expect("utf-8 output")
}

fn snapshot_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/snapshots")
        .join(format!("{name}.tex"))
}

fn arg_after<'a>(args: &[&'a str], flag: &str) -> &'a str {
    let i = args.iter().position(|a| *a == flag).expect("flag present");
    args[i + 1]
}

#[test]
fn latex_matches_snapshots() {
    let bless = std::env::var_os("DEGWHIT_BLESS").is_some();
    let mut mismatches = Vec::new();
    for d in DISPLAYS {
        let got = run(d.args, "latex");
        let path = snapshot_path(d.name);
        if bless {
            std::fs::create_dir_all(path.parent().unwrap()).unwrap();
            std::fs::write(&path, &got).unwrap();
            continue;
        }
        let want =
            std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if got != want {
            mismatches.push(format!("{}:\n--- stored\n{want}--- got\n{got}", d.name));
        }
    }
    assert!(mismatches.is_empty(), "{}", mismatches.join("\n"));
}

#[test]
fn text_output_parses_back_to_the_printed_formula() {
    for d in DISPLAYS {
        let Some(printed) = d.printed else { continue };
        let text = run(d.args, "text");
        let line = text
            .lines()
            .find_map(|l| l.strip_prefix("coefficient: "))
            .expect("coefficient line");
        let support: CharacterSupport = arg_after(d.args, "--support").parse().unwrap();
        let names = support.slot_names();
        let slots: Vec<(&str, usize)> = names.iter().map(|(n, k)| (n.as_str(), *k)).collect();
        let engine = parse_coeff(line, &slots).unwrap_or_else(|e| panic!("{}: {e}", d.name));
        let golden = parse_coeff(printed, &slots).unwrap();
        assert!(engine.symbolic_eq(&golden), "{}: {line}", d.name);
    }
}
