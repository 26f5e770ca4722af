use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn specs() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_alexandrov"))
        .args(args)
        .current_dir(specs())
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> String {
    std::fs::read_to_string(specs().join("golden").join(name)).unwrap()
}

#[test]
fn etale_render_matches_goldens() {
    for name in ["trivial", "mod2", "mod3", "saturating"] {
        let mset = format!("{name}.json");
        let out = run(&["etale", "render", "--monoid", "nat.json", "--mset", &mset, "--window", "1..9"]);
        assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
        assert_eq!(stdout(&out), golden(&format!("etale_{name}.dot")), "{name}");
    }
}

#[test]
fn pattern_matches_goldens() {
    for (monoid, size, file) in [
        ("nat_2eq5.json", "11", "grid_2eq5.txt"),
        ("nat_1eq2.json", "11", "grid_1eq2.txt"),
        ("nat.json", "3", "grid_diagonal.txt"),
    ] {
        let out = run(&["groupoid", "pattern", "--monoid", monoid, "--size", size]);
        assert_eq!(out.status.code(), Some(0));
        assert_eq!(stdout(&out), golden(file), "{monoid}");
    }
}

#[test]
fn out_flag_writes_the_same_bytes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("grid.txt");
    let out = run(&[
        "groupoid",
        "pattern",
        "--monoid",
        "nat_2eq5.json",
        "--size",
        "11",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert_eq!(std::fs::read_to_string(path).unwrap(), golden("grid_2eq5.txt"));
}

#[test]
fn commands_are_reproducible() {
    let commands: [&[&str]; 4] = [
        &["groupoid", "build", "--monoid", "nat_2eq5.json", "--radius", "6", "--depth", "2", "--seed", "7"],
        &["groupoid", "check", "--monoid", "nat_1eq2.json", "--radius", "6", "--mset", "saturating.json"],
        &["etale", "build", "--monoid", "free2.json", "--mset", "free2_flip.json", "--radius", "2"],
        &["coset-poset", "--monoid", "nat_z2.json", "--radius", "3", "--format", "json"],
    ];
    for args in commands {
        let a = run(args);
        let b = run(args);
        assert_eq!(a.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&a.stderr));
        assert!(!a.stdout.is_empty());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn monoid_info_lists_classes() {
    let out = run(&["monoid", "info", "--monoid", "nat_2eq5.json", "--radius", "10"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("units (0)\n"), "{text}");
    // 3 + 3 = 6 ~ 3
    assert!(text.contains("idempotents (0) (3)\n"), "{text}");
    assert!(text.contains("class (2) (5) (8)\n"), "{text}");
    assert!(text.contains("stable=true"), "{text}");
}

#[test]
fn points_commands() {
    let dir = tempfile::tempdir().unwrap();
    let poset = dir.path().join("three.json");
    std::fs::write(&poset, r#"{"nodes":["1","2","3"],"leq":[],"interior":["1","2","3"]}"#).unwrap();
    let p = poset.to_str().unwrap();
    let out = run(&["points", "finite", "--poset", p, "--perm", "1 0 2", "--perm", "0 2 1"]);
    assert_eq!(stdout(&out), "points 1\norbit 1\n");
    let out = run(&["points", "finite", "--poset", p]);
    assert_eq!(stdout(&out), "points 3\norbit 1\norbit 2\norbit 3\n");

    let tail = |period: &str, prefix: &str| {
        stdout(&run(&["points", "free", "--rank", "2", "--period", period, "--prefix", prefix]))
    };
    assert_eq!(tail("x1", ""), "tail(x1)^inf\n");
    assert_ne!(tail("x1", ""), tail("x2", ""));
    assert_eq!(tail("x1*x2", "x2"), tail("x2*x1*x2*x1", ""));
    let out = run(&["points", "free", "--rank", "1", "--word", "x1*x1"]);
    assert_eq!(stdout(&out), "principal\n");
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["groupoid", "build", "--monoid", "nat.json", "--radius", "2", "--depth", "3"]).status.code(), Some(2));
    assert_eq!(run(&["groupoid", "build", "--monoid", "missing.json"]).status.code(), Some(2));
    assert_eq!(run(&["groupoid", "iso", "--monoid", "nat_2eq5.json", "--radius", "5"]).status.code(), Some(2));
    assert_eq!(run(&["etale", "render", "--monoid", "nat.json", "--mset", "mod2.json", "--format", "svg"]).status.code(), Some(2));
    let out = run(&["points", "finite", "--poset", "nat.json", "--perm", "0 0"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn window_limits_exit_3() {
    let out = run(&["coset-poset", "--monoid", "free2.json", "--radius", "40"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let dir = tempfile::tempdir().unwrap();
    let far = dir.path().join("far.json");
    std::fs::write(&far, r#"{"group":"int:1","submonoid":"nonneg","congruence_pairs":[["(3)","(20)"]]}"#).unwrap();
    let far = far.to_str().unwrap();
    let out = run(&["monoid", "info", "--monoid", far, "--radius", "5"]);
    assert_eq!(out.status.code(), Some(3), "{}", String::from_utf8_lossy(&out.stderr));
    let out = run(&["monoid", "info", "--monoid", far, "--radius", "24"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn verify_exits_1_on_a_broken_golden() {
    let dir = tempfile::tempdir().unwrap();
    for entry in std::fs::read_dir(specs()).unwrap() {
        let entry = entry.unwrap();
        if entry.path().is_file() {
            std::fs::copy(entry.path(), dir.path().join(entry.file_name())).unwrap();
        }
    }
    std::fs::create_dir(dir.path().join("golden")).unwrap();
    for entry in std::fs::read_dir(specs().join("golden")).unwrap() {
        let entry = entry.unwrap();
        std::fs::copy(entry.path(), dir.path().join("golden").join(entry.file_name())).unwrap();
    }
    let grid = dir.path().join("golden/grid_2eq5.txt");
    let text = std::fs::read_to_string(&grid).unwrap().replacen('#', ".", 1);
    std::fs::write(&grid, text).unwrap();
    let out = run(&["verify", "--module", "render", "--specs", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let report = stdout(&out);
    assert!(report.contains("FAIL check=render.grid.2eq5 "), "{report}");
    assert!(report.contains("PASS check=render.grid.1eq2 "), "{report}");
}

#[test]
fn verify_single_module_passes() {
    let out = run(&["verify", "--module", "poset_core", "--specs", "."]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).lines().all(|l| l.starts_with("PASS ") || l.starts_with('#')));
}
