//! End-to-end runs of the `orbitcode` binary: exit codes, error lines and
//! JSON output.

use std::path::PathBuf;
use std::process::{Command, Output};

use orbitcode::report::OrbitDocument;
use orbitcode::verify::ScanReport;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_orbitcode"))
        .args(args)
        .env_remove("ORBITCODE_CAP")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{e}: {}", stdout(out)))
}

fn temp_file(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("orbitcode-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const EX4: [&str; 6] = [
    "--p",
    "2",
    "--n",
    "10",
    "--modulus",
    "1,1,1,1,0,1,1,0,0,0,1",
];
const EX2: [&str; 6] = [
    "--p",
    "3",
    "--n",
    "12",
    "--modulus",
    "2,0,1,0,1,1,1,0,0,0,0,0,1",
];

#[test]
fn field_info() {
    let out = run(&[&["field-info"][..], &EX4, &["--json", "-"]].concat());
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["group_order"], 1023);
    assert_eq!(
        v["factorization"],
        serde_json::json!([[3, 1], [11, 1], [31, 1]])
    );
    assert_eq!(v["alpha_primitive"], true);

    let out = run(&[&["field-info"][..], &EX2, &["--json", "-"]].concat());
    assert_eq!(json(&out)["group_order"], 531440);

    let table = run(&[&["field-info"][..], &EX4].concat());
    assert!(stdout(&table).contains("1023 = 3·11·31"));
}

#[test]
fn reducible_modulus_is_a_config_error() {
    let out = run(&["field-info", "--p", "2", "--n", "2", "--modulus", "1,0,1"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert_eq!(err.lines().count(), 1);
    assert!(err.starts_with("error: ReducibleModulus"), "{err}");
}

#[test]
fn malformed_specs_are_config_errors() {
    for args in [
        vec![
            "analyze", "--p", "2", "--n", "6", "--gens", "exp:1,2", "--beta", "poly:++a",
        ],
        vec![
            "analyze", "--p", "2", "--n", "6", "--gens", "bogus", "--beta", "exp:1",
        ],
        vec!["scan", "equidistant", "--p", "2", "--n", "6", "--k", "0..9"],
        vec!["field-info", "--p", "4", "--n", "2"],
    ] {
        let out = run(&args);
        assert_eq!(code(&out), 2, "{args:?}: {}", stderr(&out));
        assert_eq!(stderr(&out).lines().count(), 1);
    }
    // clap rejects an out-of-range example id with its own usage error.
    assert_eq!(code(&run(&["reproduce", "9"])), 2);
}

#[test]
fn analyze_example_eight() {
    let out = run(&[
        "analyze",
        "--p",
        "2",
        "--n",
        "12",
        "--modulus",
        "1,1,0,1,0,1,1,1,0,0,0,0,1",
        "--gens",
        "exp:0,470,3607,3621",
        "--beta",
        "exp:15",
        "--json",
        "-",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: OrbitDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc.size, 273);
    assert!(doc.sunflower);
    assert!(doc.center.as_ref().unwrap().is_empty());
    assert!(doc.bounds.as_ref().unwrap().optimal);
    // The document re-serializes to the same bytes.
    assert_eq!(doc.to_json(), stdout(&out).trim_end());
}

#[test]
fn analyze_with_subfield_generator() {
    let out = run(&[
        &["analyze"][..],
        &EX2,
        &[
            "--gens",
            "exp:66430,199290,40880,81760,286540,374556",
            "--beta",
            "subfield:3",
            "--json",
            "-",
        ],
    ]
    .concat());
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let doc: OrbitDocument = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(
        (doc.size, doc.intersection_dim, doc.min_distance),
        (13, Some(3), Some(6))
    );
    assert!(doc.equidistant);
}

#[test]
fn stabilizing_generator_exits_4() {
    let args = [
        &["analyze"][..],
        &EX4,
        &["--gens", "exp:0,13,70,177", "--beta", "exp:0"],
    ]
    .concat();
    let out = run(&args);
    assert_eq!(code(&out), 4);
    assert!(stderr(&out).starts_with("error: GeneratorStabilizes"));
    let forced = run(&[&args[..], &["--allow-degenerate"]].concat());
    assert_eq!(code(&forced), 0);
}

#[test]
fn degenerate_subspace_exits_3() {
    let out = run(&[
        "analyze",
        "--p",
        "2",
        "--n",
        "3",
        "--gens",
        "exp:0,1,2",
        "--beta",
        "exp:1",
    ]);
    assert_eq!(code(&out), 3, "{}", stderr(&out));
    assert!(stderr(&out).starts_with("error: DegenerateSubspace"));
}

#[test]
fn orbit_cap_exits_5() {
    let out = run(&[
        &["analyze"][..],
        &EX4,
        &[
            "--gens",
            "exp:0,13,70,177",
            "--beta",
            "exp:1",
            "--cap",
            "10",
        ],
    ]
    .concat());
    assert_eq!(code(&out), 5);
    assert!(stderr(&out).starts_with("error: EnumerationTooLarge"));
    let out = Command::new(env!("CARGO_BIN_EXE_orbitcode"))
        .args(["scan", "equidistant", "--p", "2", "--n", "6", "--k", "2..4"])
        .env("ORBITCODE_CAP", "10")
        .output()
        .unwrap();
    assert_eq!(code(&out), 5);
    assert!(stderr(&out).starts_with("error: BudgetExceeded"));
}

#[test]
fn reproduce_exit_codes() {
    let out = run(&["reproduce", "3", "--json", "-"]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["ok"] == true));

    let out = run(&["reproduce", "5", "--json", "-"]);
    assert_eq!(code(&out), 0);
    assert_eq!(json(&out)["assumptions"].as_array().unwrap().len(), 1);

    // Recorded example 6's center is a shifted copy of the subfield.
    let out = run(&["reproduce", "6"]);
    assert_eq!(code(&out), 1);
    assert!(stdout(&out).contains("DIFF"));
}

#[test]
fn scan_equidistant_small() {
    let out = run(&[
        "scan",
        "equidistant",
        "--p",
        "2",
        "--n",
        "6",
        "--k",
        "2..4",
        "--json",
        "-",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let report: ScanReport = serde_json::from_slice(&out.stdout).unwrap();
    assert!(report.passed());
    assert!(report
        .hits
        .iter()
        .all(|h| h.trivial_class != orbitcode::TrivialClass::NonTrivial));
    assert_eq!(
        report
            .slices
            .iter()
            .map(|s| s.grassmannian_count)
            .sum::<u128>(),
        651 + 1395 + 651
    );
}

#[test]
fn scan_output_is_independent_of_workers() {
    let base = [
        "scan",
        "sunflowers",
        "--p",
        "2",
        "--n",
        "6",
        "--k",
        "2..4",
        "--json",
        "-",
    ];
    let one = run(&[&base[..], &["--workers", "1"]].concat());
    let four = run(&[&base[..], &["--workers", "4"]].concat());
    assert_eq!(code(&one), 0);
    assert_eq!(one.stdout, four.stdout);
    let again = run(&[&base[..], &["--workers", "1"]].concat());
    assert_eq!(one.stdout, again.stdout);
}

#[test]
fn scan_csv() {
    let dir = std::env::temp_dir().join(format!("orbitcode-csv-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let csv = dir.join("orbits.csv");
    let out = run(&[
        "scan",
        "equidistant",
        "--p",
        "2",
        "--n",
        "4",
        "--k",
        "2",
        "--csv",
        csv.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    assert!(lines
        .next()
        .unwrap()
        .starts_with("k,subgroup_order,t,size,equidistant,c,sunflower,center_dim"));
    // The 35 planes of F_16 split into two full orbits and the 5 shifts of F_4.
    let mut sizes: Vec<u64> = lines
        .map(|l| l.split(',').nth(3).unwrap().parse().unwrap())
        .collect();
    sizes.sort_unstable();
    assert_eq!(sizes, vec![5, 15, 15]);
}

#[test]
fn scan_divisibility_check() {
    let out = run(&[
        "scan",
        "lemma4",
        "--m-max",
        "5",
        "--exp-max",
        "12",
        "--json",
        "-",
    ]);
    assert_eq!(code(&out), 0);
    let v = json(&out);
    assert_eq!(v["violations"].as_array().unwrap().len(), 0);
    assert!(v["tuples_checked"].as_u64().unwrap() > 0);
}

#[test]
fn diffset_verify_file() {
    let path = temp_file("fano.txt", "# Fano plane\nv=7\n1,2,4\n");
    let out = run(&[
        "diffset",
        "verify",
        "--file",
        path.to_str().unwrap(),
        "--json",
        "-",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["ds"]["lambda"], 1);
    assert_eq!(v["counting_identity"], true);

    let bad = temp_file("bad.txt", "v=7\n0,1\n");
    assert_eq!(
        code(&run(&[
            "diffset",
            "verify",
            "--file",
            bad.to_str().unwrap()
        ])),
        1
    );

    let rds = temp_file("rds.txt", "v=9\nn_sub=3\n0,1,2\n");
    assert_eq!(
        code(&run(&[
            "diffset",
            "verify",
            "--file",
            rds.to_str().unwrap()
        ])),
        1
    );

    let garbage = temp_file("garbage.txt", "v=7\nv=8\n1\n");
    let out = run(&["diffset", "verify", "--file", garbage.to_str().unwrap()]);
    assert_eq!(code(&out), 2);

    assert_eq!(
        code(&run(&[
            "diffset",
            "verify",
            "--file",
            "/nonexistent/ds.txt"
        ])),
        2
    );
}

#[test]
fn diffset_from_subspace() {
    let out = run(&[
        "diffset",
        "from-subspace",
        "--p",
        "2",
        "--n",
        "4",
        "--gens",
        "exp:0,1,2",
        "--json",
        "-",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let v = json(&out);
    assert_eq!(v["expected"], serde_json::json!([15, 7, 3, 0, 0]));
    assert_eq!(v["holds"], true);

    // A line is equidistant but 0-intersecting: no difference set.
    let out = run(&[
        "diffset",
        "from-subspace",
        "--p",
        "2",
        "--n",
        "4",
        "--gens",
        "exp:0",
    ]);
    assert_eq!(code(&out), 6);
    assert!(stderr(&out).starts_with("error: ZeroIntersection"));
}

#[test]
fn bounds_and_properties() {
    let out = run(&[
        "bounds", "remark1", "--q", "2", "--n", "6", "--k", "3", "--t", "1", "--json", "-",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert!(json(&out)["comparisons"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["holds"] == true));
    assert_eq!(
        code(&run(&[
            "bounds", "remark1", "--q", "2", "--n", "6", "--k", "3", "--t", "4"
        ])),
        2
    );

    let args = [
        "property",
        "degree-two",
        "--p",
        "2",
        "--n",
        "6",
        "--trials",
        "20",
        "--seed",
        "3",
        "--json",
        "-",
    ];
    let a = run(&args);
    assert_eq!(code(&a), 0);
    assert_eq!(json(&a)["passed"], 20);
    assert_eq!(a.stdout, run(&args).stdout);
    assert_eq!(
        code(&run(&["property", "degree-two", "--p", "2", "--n", "5"])),
        2
    );

    let out = run(&[
        "property",
        "extension",
        "--p",
        "2",
        "--n",
        "6",
        "--t",
        "2",
        "--trials",
        "10",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
}
