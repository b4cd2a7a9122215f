use std::io::Write;
use std::process::Command;

use topozeta::cli::{run, RunOutput};

fn fx(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn cli(args: &[&str]) -> RunOutput {
    run(std::iter::once("topozeta").chain(args.iter().copied()))
}

fn ok(args: &[&str]) -> String {
    let out = cli(args);
    assert_eq!(out.code, 0, "{args:?}: {}", out.stderr);
    out.stdout.trim_end().to_string()
}

#[test]
fn documented_examples() {
    assert_eq!(ok(&["top", "--resolution", &fx("fermat_q5.json")]), "(2 - 3*s)/((5*s + 2)*(s + 1))");
    assert_eq!(
        ok(&["suspend-f", "--bundle", &fx("x5y6.json"), "--Q", "10"]),
        "(3*s + 7)/((15*s + 7)*(s + 1))"
    );
    assert_eq!(
        ok(&["suspend-f", "--bundle", &fx("lvp.json"), "--Q", "84", "--twist", "27"]),
        "8/(756*s + 317)"
    );
}

#[test]
fn suspension_commands() {
    let b = fx("x5y6.json");
    assert_eq!(ok(&["suspend-f", "--bundle", &b, "--Q", "10", "--twist", "5"]), "1/(2*(15*s + 7))");
    assert_eq!(
        ok(&["suspend-g", "--bundle", &b, "--Q", "10"]),
        "(3*s + 7)/((15*s + 7)*(s + 1))"
    );
    assert_eq!(
        ok(&["top", "--resolution", &fx("fermat_q3.json"), "--Q", "3"]),
        ok(&["compare-legacy", "--Q", "3"]).lines().next().unwrap().trim_start_matches("theorem: ")
    );
    assert_eq!(
        ok(&["twisted", "--resolution", &fx("x5y6_resolution.json"), "--twist", "5"]),
        "5/(30*s + 11)"
    );
    assert_eq!(
        ok(&["twisted", "--resolution", &fx("x5y6_resolution.json"), "--twist", "3", "--Q", "10"]),
        "6/(15*s + 7)"
    );
    let m = ok(&["matrix", "--Q", "10", "--bundle", &b]);
    assert!(m.contains("-1 -3 -24 -62"));
    assert!(m.ends_with("identity holds: true"));
    let c = ok(&["compare-legacy", "--Q", "10", "--bundle", &b]);
    assert!(c.starts_with("theorem: (3*s + 7)"));
}

#[test]
fn stratum_commands() {
    let parts = ok(&["stratum", "--N", "2", "--nu", "1", "--Q", "2"]);
    assert_eq!(
        parts,
        "sigma+: 1/(2*(s + 1))\nsigma-: 1/(2*(s + 1))\nrho: -1/(s + 1)\nrho*: 1/((s + 1)^2)\ntotal: 1/((s + 1)^2)"
    );
    let m = ok(&["motivic-stratum", "--N", "2", "--nu", "1", "--Q", "2"]);
    assert!(m.lines().next().unwrap().starts_with("sigma+: "));
    let s = ok(&["motivic-stratum", "--N", "2,3", "--nu", "1,1", "--Q", "3", "--p", "1", "--series-bound", "6", "--l-floor", "-4"]);
    assert!(s.contains("O(T^7)"));
    let strict = cli(&["motivic-stratum", "--N", "2", "--nu", "1", "--Q", "2", "--series-bound", "4"]);
    assert_eq!(strict.code, 1);
    assert!(strict.stderr.contains("not T-expandable"), "{}", strict.stderr);
}

#[test]
fn output_modes() {
    let tex = ok(&["--latex", "suspend-f", "--bundle", &fx("x5y6.json"), "--Q", "10"]);
    assert_eq!(tex, "\\frac{3s + 7}{(15 s + 7)(s + 1)}");
    let out = cli(&["--json", "suspend-f", "--bundle", &fx("x5y6.json"), "--Q", "10", "--twist", "7"]);
    assert_eq!(out.code, 0);
    let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(v["result"], "0");
    assert_eq!(v["warnings"].as_array().unwrap().len(), 4);
}

#[test]
fn exit_codes() {
    assert_eq!(cli(&[]).code, 2);
    assert_eq!(cli(&["suspend-f", "--Q", "x", "--bundle", "b.json"]).code, 2);
    assert_eq!(cli(&["stratum", "--N", "1,2", "--nu", "1", "--Q", "2"]).code, 2);
    assert_eq!(cli(&["--help"]).code, 0);
    let missing = cli(&["top", "--resolution", "/nonexistent/file.json"]);
    assert_eq!(missing.code, 1);
    assert_eq!(cli(&["stratum", "--N", "2", "--nu", "0", "--Q", "2"]).code, 1);
}

#[test]
fn bad_input_diagnostics() {
    let dir = tempfile::tempdir().unwrap();
    let write = |name: &str, text: &str| {
        let p = dir.path().join(name);
        std::fs::File::create(&p).unwrap().write_all(text.as_bytes()).unwrap();
        p.to_string_lossy().into_owned()
    };
    let broken = write("broken.json", "{\n  \"divisors\": [\n    {\"id\": \"E\", \"N\": 2,\n");
    let out = cli(&["top", "--resolution", &broken]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 4"), "{}", out.stderr);

    let unknown = write(
        "unknown.json",
        r#"{"divisors": [{"id": "E", "N": 2, "nu": 2}], "strata": [{"divisors": ["E", "F7"], "euler": 1}]}"#,
    );
    let out = cli(&["top", "--resolution", &unknown]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("'F7'"), "{}", out.stderr);

    let nu0 = write("nu0.json", r#"{"divisors": [{"id": "E", "N": 2, "nu": 0}], "strata": []}"#);
    assert!(cli(&["top", "--resolution", &nu0]).stderr.contains("discrepancy must be ≥ 1"));

    let not_res = write("z.json", r#"{"divisors": [{"id": "E", "N": 2, "nu": 1}], "strata": [{"divisors": ["E"], "euler": 3}]}"#);
    let out = cli(&["top", "--resolution", &not_res]);
    assert_eq!(out.code, 0);
    assert!(out.stderr.contains("warning"), "{}", out.stderr);

    let strict = write(
        "strict.json",
        r#"{"variable": "t", "defaultZero": false, "entries": [{"twist": 1, "num": "1", "den": "t + 1"}]}"#,
    );
    let out = cli(&["suspend-f", "--bundle", &strict, "--Q", "4"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("twist order 2"), "{}", out.stderr);
}

#[test]
fn binary_entry_point() {
    let out = Command::new(env!("CARGO_BIN_EXE_topozeta"))
        .args(["suspend-f", "--bundle", &fx("x5y6.json"), "--Q", "10", "--twist", "3"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert_eq!(String::from_utf8(out.stdout).unwrap().trim(), "6/(15*s + 7)");
    let out = Command::new(env!("CARGO_BIN_EXE_topozeta")).arg("verify").output().unwrap();
    assert!(out.status.success());
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(table.lines().filter(|l| l.starts_with("PASS")).count(), 8, "{table}");
}
