use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_gf2m-sipo");

fn run(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("spawn CLI")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

const GF16: [&str; 4] = ["--m", "4", "--poly", "3"];

fn gf16<'a>(rest: &[&'a str]) -> Vec<&'a str> {
    GF16.iter().chain(rest).copied().collect()
}

#[test]
fn mul_every_engine() {
    for engine in ["reference", "serial", "serial-nand", "gate", "all"] {
        assert_eq!(stdout(&gf16(&["mul", "--a", "b", "--b", "c", "--engine", engine])).trim(), "d");
        assert_eq!(stdout(&gf16(&["mul", "--a", "0", "--b", "c", "--engine", engine])).trim(), "0");
    }
    assert_eq!(stdout(&gf16(&["mul", "--a", "0xB", "--b", "C"])).trim(), "d");
}

#[test]
fn mul_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&gf16(&["mul", "--a", "b", "--b", "c", "--format", "json"]))).unwrap();
    assert_eq!(v["product"], "d");
}

#[test]
fn mul_nist_engines_agree() {
    let a = "4".repeat(41);
    let b = "1".repeat(41);
    let reference = stdout(&["--nist", "b163", "mul", "--a", &a, "--b", &b, "--engine", "reference"]);
    assert_eq!(reference.trim().len(), 41);
    assert_eq!(stdout(&["--nist", "B-163", "mul", "--a", &a, "--b", &b, "--engine", "all"]), reference);
}

#[test]
fn trace_worked_example() {
    let text = stdout(&gf16(&["trace", "--a", "b", "--b", "c"]));
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines, ["1 1 0 b", "2 1 5 e", "3 0 f f", "4 0 d d"]);
    assert_eq!(stdout(&gf16(&["trace", "--a", "b", "--b", "c", "--engine", "gate"])), text);
    assert_eq!(stdout(&gf16(&["trace", "--a", "b", "--b", "c", "--engine", "serial-nand"])), text);
}

#[test]
fn trace_zero_b_stays_zero() {
    let text = stdout(&gf16(&["trace", "--a", "f", "--b", "0"]));
    assert_eq!(text.lines().count(), 4);
    assert!(text.lines().all(|l| l.ends_with(" 0")), "{text}");
}

#[test]
fn netlist_census() {
    let text = stdout(&["--nist", "b163", "netlist", "--census"]);
    assert!(text.contains("AND2=326 NAND=1304 (NAND3=326 NAND2=978) DFF=326 XOR/XNOR=0 MUX=0"), "{text}");
    let text = stdout(&gf16(&["netlist", "--census"]));
    assert!(text.contains("AND2=8 NAND=32"), "{text}");
    let csv = stdout(&["--nist", "all", "netlist", "--census", "--format", "csv"]);
    assert_eq!(csv.lines().count(), 6);
    assert!(csv.contains("B-571,571,1142,4568,1142,3426,1142,0,0"), "{csv}");
}

#[test]
fn netlist_export_is_deterministic() {
    let first = run(&["--nist", "b233", "netlist"]);
    let second = run(&["--nist", "b233", "netlist"]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn verify_default_and_flags() {
    let text = stdout(&["verify"]);
    assert!(text.contains("exhaustive-m4: 256/256 pass"), "{text}");
    assert!(text.contains("structural: 5/5 pass"), "{text}");
    let text = stdout(&["--nist", "b283", "verify", "--random", "50", "--seed", "7"]);
    assert!(text.contains("50/50 pass"), "{text}");
}

#[test]
fn verify_check_file() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("good.json");
    stdout(&gf16(&["netlist", "-o", good.to_str().unwrap()]));
    assert!(stdout(&["verify", "--check-file", good.to_str().unwrap()]).contains("1/1 pass"));

    // turn the first G-block AND2 into a NAND2
    let mut doc: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&good).unwrap()).unwrap();
    let gate = doc["gates"].as_array_mut().unwrap().iter_mut().find(|g| g["kind"] == "AND2").unwrap();
    gate["kind"] = "NAND2".into();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, doc.to_string()).unwrap();
    let out = run(&["verify", "--check-file", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", String::from_utf8_lossy(&out.stdout));

    let garbage = dir.path().join("garbage.json");
    std::fs::write(&garbage, "{").unwrap();
    assert_ne!(run(&["verify", "--check-file", garbage.to_str().unwrap()]).status.code(), Some(0));
}

#[test]
fn report_rows() {
    let text = stdout(&["report", "--paper-rows"]);
    let rows = |label: &str| -> Vec<Vec<&str>> {
        text.lines().filter(|l| l.starts_with(label)).map(|l| l.split_whitespace().collect()).collect()
    };
    let proposed = rows("Proposed");
    assert_eq!(proposed[0], ["Proposed", "16952", "24232", "29432", "42536", "59384"]);
    assert_eq!(proposed[1][1..6], ["0.14", "163", "22.82", "16952", "3.8"]);
    assert_eq!(rows("[33]")[1].last(), Some(&"99.93"));
    assert_eq!(rows("[25]")[1][6], "17.46");

    let full = stdout(&["report"]);
    assert!(full.contains("11.53%"), "{full}");
    assert!(full.contains("3375078"), "{full}");

    let csv = stdout(&["report", "--format", "csv", "--archs", "proposed,ref29", "--ms", "163"]);
    assert!(csv.lines().next().unwrap().starts_with("table,arch,source,m,transistors"));
    let strict = stdout(&["report", "--strict-nand3", "--archs", "proposed", "--ms", "163"]);
    assert!(strict.contains("18256"), "{strict}");
}

#[test]
fn report_custom_costs() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("costs.json");
    let mut costs = serde_json::to_value(gf2m_sipo::GateCostTable::default()).unwrap();
    costs["transistors"]["dff"] = 20.into();
    std::fs::write(&path, costs.to_string()).unwrap();
    let text = stdout(&["report", "--archs", "proposed", "--ms", "163", "--costs", path.to_str().unwrap()]);
    // 104m - 2m * (30 - 20)
    assert!(text.contains(&(104 * 163 - 20 * 163).to_string()), "{text}");
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        gf16(&["mul", "--a", "1f", "--b", "1"]),
        gf16(&["mul", "--a", "xyz", "--b", "1"]),
        vec!["--m", "4", "--poly", "2", "mul", "--a", "1", "--b", "1"],
        vec!["--nist", "b999", "mul", "--a", "1", "--b", "1"],
        vec!["mul", "--a", "1", "--b", "1"],
        vec!["--m", "4", "mul", "--a", "1", "--b", "1"],
        vec!["report", "--archs", "nope"],
    ] {
        let out = run(&args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
        assert!(!out.stderr.is_empty());
    }
}
