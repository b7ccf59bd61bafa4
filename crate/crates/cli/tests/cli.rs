use std::path::PathBuf;
use std::process::{Command, Output};

fn gardner(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gardner")).args(args).output().expect("spawn gardner")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("gardner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn verify_figures() {
    for f in ["figure1", "figure2", "figure3"] {
        let o = gardner(&["verify", "--placement", f]);
        assert_eq!(o.status.code(), Some(0), "{f}: {}", stdout(&o));
    }
}

#[test]
fn verify_json_reports_counts() {
    let o = gardner(&["--json", "verify", "--placement", "figure3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["status"], "ok");
}

#[test]
fn small_table() {
    let o = gardner(&["table", "--max-n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for (n, m) in [(1, 1), (2, 4), (3, 4), (4, 4), (5, 6)] {
        assert!(text.lines().any(|l| {
            let f: Vec<&str> = l.split_whitespace().collect();
            f.len() >= 2 && f[0] == n.to_string() && f[1] == m.to_string()
        }), "row {n} missing:\n{text}");
    }
}

#[test]
fn unsupported_inputs_exit_two() {
    assert_eq!(gardner(&["table", "--max-n", "0"]).status.code(), Some(2));
    assert_eq!(gardner(&["construct", "--n", "5"]).status.code(), Some(2));
}

#[test]
fn solve_seven() {
    let o = gardner(&["--json", "solve", "--n", "7"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["payload"]["m3"], 8);
}

#[test]
fn certify_and_classify_octagon() {
    let o = gardner(&["certify", "--placement", "figure3", "--case", "2"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = gardner(&["classify", "--placement", "figure3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}

#[test]
fn nullspace_k_two() {
    let o = gardner(&["nullspace", "--k", "2"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("-1/2"));
}

#[test]
fn construct_all_for_nine() {
    let o = gardner(&["--json", "construct", "--n", "9", "--all"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let n = v["payload"]["placements"].as_array().map(Vec::len);
    assert_eq!(n, Some(6), "{v}");
}

#[test]
fn cnf_is_reproducible_and_models_round_trip() {
    let a = stdout(&gardner(&["encode-cnf", "--n", "4", "--q", "4"]));
    let b = stdout(&gardner(&["encode-cnf", "--n", "4", "--q", "4"]));
    assert_eq!(a, b);
    let cnf = scratch("n4.cnf");
    assert_eq!(gardner(&["encode-cnf", "--n", "4", "--q", "4", "--out", cnf.to_str().unwrap()]).status.code(), Some(0));

    // a good 4-queen placement on the 4x4 board is the four corners
    let inst = gardner::cnf::encode(4, 4).unwrap();
    let corners = gardner::board::Placement::new(4, [(0, 0), (3, 0), (0, 3), (3, 3)].map(|(c, r)| gardner::board::Square::new(c, r))).unwrap();
    let asg = inst.assignment_for(&corners).unwrap();
    let lits: Vec<String> = (1..=inst.num_vars())
        .map(|v| if asg.get(gardner::cnf::Var(v as u32)) == Some(true) { v.to_string() } else { format!("-{v}") })
        .collect();
    let model = scratch("n4.model");
    std::fs::write(&model, format!("s SATISFIABLE\nv {} 0\n", lits.join(" "))).unwrap();
    let o = gardner(&["check-model", "--cnf", cnf.to_str().unwrap(), "--model", model.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
}
