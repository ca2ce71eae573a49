use std::process::{Command, Output};

fn im(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_im"))
        .args(args)
        .env_remove("IM_MODULUS")
        .env_remove("IM_CONFIG")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn dist_prints_value_and_witness() {
    let o = im(&["dist", "# 3 x", "x"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("5 bits"), "{s}");
    assert!(s.contains("StripComment"));

    let o = im(&["--json", "dist", "# 3 x", "x"]);
    let j: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(j["value"], 5);
}

#[test]
fn verify_flip_selector_fails() {
    let o = im(&["verify", "FlipSelector", "--bound", "7"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("1 0 S 1"));
    assert_eq!(im(&["verify", "StripComment", "--bound", "5"]).status.code(), Some(0));
}

#[test]
fn equiv_and_friends() {
    let o = im(&["equiv", "( x + x )", "( 2 * x )"]);
    assert_eq!((o.status.code(), stdout(&o).trim()), (Some(0), "true"));
    assert_eq!(stdout(&im(&["eval", "( x + 1 )", "4"])).trim(), "0");
    assert_eq!(stdout(&im(&["table", "( 2 * x )"])).trim(), "[0,2,4,1,3]");
    assert_eq!(stdout(&im(&["--modulus", "7", "table", "( 2 * x )"])).trim(), "[0,2,4,6,1,3,5]");
    let listed = stdout(&im(&["enumerate", "--max-tokens", "1"]));
    assert_eq!(listed.lines().count(), 6);
    let o = im(&["invert", "StripComment", "# 3 x"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("result: # 3 x"));
}

#[test]
fn exit_codes() {
    assert_eq!(im(&["eval", "( x +", "1"]).status.code(), Some(3));
    assert_eq!(im(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(im(&["--modulus", "40", "table", "x"]).status.code(), Some(2));
    assert_eq!(im(&["verify", "Frobnicate"]).status.code(), Some(3));
    let dir = env!("CARGO_MANIFEST_DIR");
    let o = im(&["catalog", "verify", &format!("{dir}/catalogs/candidates.cat")]);
    assert_eq!(o.status.code(), Some(1));
    let o = im(&["catalog", "show", &format!("{dir}/catalogs/base.cat")]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("InvDovetail (StripComment)"));
}

#[test]
fn config_file_and_environment() {
    let path = std::env::temp_dir().join(format!("im-cli-{}.conf", std::process::id()));
    std::fs::write(&path, "modulus = 3\n").unwrap();
    let p = path.to_str().unwrap();
    assert_eq!(stdout(&im(&["--config", p, "table", "x"])).trim(), "[0,1,2]");
    let o = Command::new(env!("CARGO_BIN_EXE_im"))
        .args(["--config", p, "table", "x"])
        .env("IM_MODULUS", "4")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).trim(), "[0,1,2,3]");
    assert_eq!(stdout(&im(&["--config", p, "--modulus", "2", "table", "x"])).trim(), "[0,1]");
    std::fs::write(&path, "modulus = 3\nbogus\n").unwrap();
    assert_eq!(im(&["--config", p, "table", "x"]).status.code(), Some(2));
    std::fs::remove_file(&path).ok();
}

#[test]
fn small_suites_from_the_command_line() {
    let o = im(&["axioms", "--max-tokens", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let csv = std::env::temp_dir().join(format!("im-sweep-{}.csv", std::process::id()));
    let o = im(&["sweep", "--max-tokens", "3", "--out", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert!(text.starts_with("budget_bits,connected_fraction,unreachable_pairs\n"));
    std::fs::remove_file(&csv).ok();
}
