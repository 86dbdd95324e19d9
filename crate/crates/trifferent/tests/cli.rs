use std::fs;
use std::path::Path;

use serde_json::Value;
use tempfile::TempDir;

struct Run {
    status: i32,
    out: String,
    err: String,
}

fn triff(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("triff").chain(args.iter().copied());
    let status = trifferent::run(argv, &mut out, &mut err);
    Run { status, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(run: &Run) -> Value {
    serde_json::from_str(&run.out).unwrap_or_else(|e| panic!("{e}: {}", run.out))
}

fn path(dir: &TempDir, name: &str) -> String {
    dir.path().join(name).to_str().unwrap().to_string()
}

fn write(dir: &TempDir, name: &str, contents: &str) -> String {
    let p = path(dir, name);
    fs::write(&p, contents).unwrap();
    p
}

#[test]
fn construct_then_verify() {
    let dir = TempDir::new().unwrap();
    let c = path(&dir, "c.triff");
    let run = triff(&["construct", "one-bounded", "--n", "5", "-o", &c]);
    assert_eq!(run.status, 0, "{}", run.err);
    let doc = json(&run);
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["size"], 10);
    assert_eq!(doc["config"]["command"]["construct"]["one-bounded"]["n"], 5);

    let run = triff(&["verify", &c]);
    assert_eq!(run.status, 0);
    let doc = json(&run);
    assert_eq!(doc["trifferent"], true);
    assert_eq!(doc["size"], 10);
    assert_eq!(doc["r_bound"], 1);
}

#[test]
fn verify_failure_prints_witness() {
    let dir = TempDir::new().unwrap();
    let bad = write(&dir, "bad.triff", "n=2\n00\n01\n10\n");
    let run = triff(&["verify", &bad]);
    assert_eq!(run.status, 1);
    let doc = json(&run);
    assert_eq!(doc["trifferent"], false);
    assert_eq!(doc["witness"]["indices"], serde_json::json!([1, 2, 3]));
    assert_eq!(doc["witness"]["codewords"], serde_json::json!(["00", "01", "10"]));
    assert!(run.err.contains("00, 01, 10"), "{}", run.err);
}

#[test]
fn golden_exit_codes() {
    let dir = TempDir::new().unwrap();
    let good = write(&dir, "good.triff", "n=2\nr=1\n# ok\n02\n12\n20\n21\n");
    let bad = write(&dir, "bad.triff", "n=3\n000\n011\n101\n110\n");
    let malformed = [
        ("chars.triff", "n=2\n01\n0a\n", ":3:"),
        ("length.triff", "n=2\n01\n011\n", ":3:"),
        ("dup.triff", "n=2\n01\n10\n01\n", ":4:"),
        ("newline.triff", "n=2\n01", ":2:"),
        ("header.triff", "2\n01\n", ":1:"),
        ("rline.triff", "n=2\nr=1\n00\n", ":3:"),
    ];
    assert_eq!(triff(&["verify", &good]).status, 0);
    assert_eq!(triff(&["verify", &bad]).status, 1);
    for (name, text, needle) in malformed {
        let p = write(&dir, name, text);
        let run = triff(&["verify", &p]);
        assert_eq!(run.status, 2, "{name}");
        assert!(run.err.contains(&format!("{name}{needle}")), "{name}: {}", run.err);
    }
    let missing = path(&dir, "missing.triff");
    assert_eq!(triff(&["verify", &missing]).status, 2);
    assert_eq!(triff(&["frobnicate"]).status, 2);
    assert_eq!(triff(&[]).status, 2);
    assert_eq!(triff(&["construct", "one-bounded"]).status, 2);
    assert_eq!(triff(&["construct", "one-bounded", "--n", "0"]).status, 2);
    assert_eq!(triff(&["construct", "triple", "--q", "4"]).status, 2);
    assert_eq!(triff(&["search", "max", "--n", "5"]).status, 2);
    assert_eq!(triff(&["search", "max-r", "--n", "3", "--r", "4"]).status, 2);
    assert_eq!(triff(&["bound", "deficit", "--n", "1", "--r", "1", "--tb", "2"]).status, 2);
    assert_eq!(triff(&["bound", "zarankiewicz", "--u", "2", "--v", "4", "--s", "3", "--t", "2"]).status, 2);
    assert_eq!(triff(&["sample-shift", &good, "--r", "1", "--trials", "10"]).status, 2, "seed is required");
    assert_eq!(triff(&["graph", "bipartition", &good, "--trials", "10"]).status, 2, "seed is required");
    assert_eq!(triff(&["project", &good]).status, 2);
    assert_eq!(triff(&["project", &good, "--coordinate", "3"]).status, 2);
    assert_eq!(triff(&["graph", "build", &good]).status, 2, "1-bounded has no derived graph");
    assert_eq!(triff(&["prune", &bad]).status, 1);
    assert_eq!(triff(&["sample-shift", &bad, "--r", "1", "--seed", "1", "--trials", "5"]).status, 1);
    let help = triff(&["--help"]);
    assert_eq!(help.status, 0);
    assert!(help.out.contains("sample-shift"));
}

#[test]
fn construct_output_round_trips() {
    let dir = TempDir::new().unwrap();
    let cases: [&[&str]; 4] = [
        &["construct", "one-bounded", "--n", "7"],
        &["construct", "triple", "--q", "3"],
        &["construct", "triple", "--q", "2", "--sigma-seed", "11"],
        &["construct", "recursive", "--t", "2", "--target", "12"],
    ];
    for args in cases {
        let run = triff(args);
        assert_eq!(run.status, 0, "{args:?}: {}", run.err);
        let text = run.out;
        let parsed = trifferent::parse(&text).unwrap();
        assert_eq!(parsed.to_string(), text, "write -> read -> write is a fixed point");
        let p = write(&dir, "rt.triff", &text);
        let v = triff(&["verify", &p]);
        assert_eq!(v.status, 0, "{args:?}");
        assert!(text.lines().any(|l| l.starts_with("# config: ")));
    }
    let recursive = trifferent::parse(&triff(cases[3]).out).unwrap();
    assert_eq!((recursive.code.block_length(), recursive.r), (27, Some(9)));
}

#[test]
fn identical_argv_gives_identical_bytes() {
    let dir = TempDir::new().unwrap();
    let c = path(&dir, "c.triff");
    assert_eq!(triff(&["construct", "triple", "--q", "2", "-o", &c]).status, 0);
    let runs: [&[&str]; 6] = [
        &["sample-shift", &c, "--r", "3", "--seed", "42", "--trials", "500"],
        &["graph", "bipartition", &c, "--seed", "5", "--trials", "50"],
        &["construct", "triple", "--q", "3", "--sigma-seed", "9"],
        &["search", "max", "--n", "3"],
        &["bound", "report", "--n", "40", "--format", "table"],
        &["verify", &c, "--workers", "4"],
    ];
    for args in runs {
        let a = triff(args);
        let b = triff(args);
        assert_eq!(a.out, b.out, "{args:?}");
        assert_eq!(a.status, b.status);
    }
    // graph bipartition needs a simple graph; the triple code is 3-bounded
    assert_eq!(triff(runs[1]).status, 2);

    let sample = json(&triff(runs[0]));
    assert_eq!(sample["seed"], 42);
    assert_eq!(sample["config"]["command"]["sample-shift"]["seed"], 42);
    let other = json(&triff(&["sample-shift", &c, "--r", "3", "--seed", "43", "--trials", "500"]));
    assert_ne!(sample["mean"], other["mean"]);
}

#[test]
fn verify_workers_do_not_change_witness() {
    let dir = TempDir::new().unwrap();
    let mut text = String::from("n=3\n");
    for x in 0..27u32 {
        let w: String = (0..3).map(|i| char::from(b'0' + (x / 3u32.pow(2 - i) % 3) as u8)).collect();
        text.push_str(&w);
        text.push('\n');
    }
    let all = write(&dir, "all.triff", &text);
    let base = json(&triff(&["verify", &all]));
    for workers in ["2", "3", "8"] {
        let doc = json(&triff(&["verify", &all, "--workers", workers]));
        assert_eq!(doc["witness"], base["witness"]);
    }
    assert_eq!(base["witness"]["codewords"], serde_json::json!(["000", "001", "010"]));
}

#[test]
fn search_table_feeds_bound_report() {
    let dir = TempDir::new().unwrap();
    let table = path(&dir, "results.json");
    for args in [
        vec!["search", "max", "--n", "2", "--oracle"],
        vec!["search", "max-r", "--n", "2", "--r", "0"],
        vec!["search", "max-r", "--n", "2", "--r", "1", "--oracle"],
        vec!["search", "max-r", "--n", "2", "--r", "2"],
    ] {
        let mut args = args;
        args.extend(["--table", &table]);
        let run = triff(&args);
        assert_eq!(run.status, 0, "{}", run.err);
        let doc = json(&run);
        assert_eq!(doc["status"], "optimal");
        assert_eq!(doc["table_updated"], true);
        let code = trifferent::parse(doc["best_code"].as_str().unwrap()).unwrap();
        assert_eq!(code.code.len() as u64, doc["best_size"].as_u64().unwrap());
    }
    let run = triff(&["bound", "report", "--n", "2", "--exact-table", &table]);
    assert_eq!(run.status, 0, "{}", run.err);
    let doc = json(&run);
    let names: Vec<&str> = doc["entries"].as_array().unwrap().iter().map(|e| e["name"].as_str().unwrap()).collect();
    assert_eq!(&names[..3], ["exact-transfer-r0", "exact-transfer-r1", "exact-transfer-r2"]);
    assert!(doc["crossover_N0"].is_u64());
    assert_eq!(doc["schema"], 1);

    let low = triff(&["search", "max", "--n", "4", "--budget", "10", "--table", &table]);
    assert_eq!(low.status, 0);
    assert_eq!(json(&low)["status"], "lower-bound");
    assert_eq!(json(&low)["table_updated"], false);

    let broken = write(&dir, "broken.json", "{ not json");
    assert_eq!(triff(&["bound", "report", "--n", "2", "--exact-table", &broken]).status, 2);
}

#[test]
fn graph_export_and_planted_kst() {
    let dir = TempDir::new().unwrap();
    let code = write(&dir, "s2.triff", "n=4\nr=2\n0022\n1022\n2200\n2201\n");
    let edges = path(&dir, "edges.txt");
    let run = triff(&["graph", "build", &code, "-o", &edges]);
    assert_eq!(run.status, 0, "{}", run.err);
    let doc = json(&run);
    assert_eq!(doc["edges"], 2);
    assert_eq!(doc["multiplicity_histogram"], serde_json::json!([0, 0, 2]));
    assert_eq!(doc["freeness"][0]["free"], true);
    assert_eq!(fs::read_to_string(&edges).unwrap(), "# simple n=4 edges=2\n1 2\n3 4\n");

    let mut planted = String::new();
    for i in 1..=5 {
        for j in 6..=12 {
            planted.push_str(&format!("{i} {j}\n"));
        }
    }
    let p = write(&dir, "k57.txt", &planted);
    let run = triff(&["graph", "kst-check", "--edges", &p, "--s", "5", "--t", "7"]);
    assert_eq!(run.status, 1);
    assert_eq!(json(&run)["witness"]["validated"], true);
    assert!(run.err.contains("K_{5,7}"));
    assert_eq!(triff(&["graph", "kst-check", "--edges", &p, "--s", "6", "--t", "7"]).status, 0);
    let bad = write(&dir, "bad.txt", "1 2\n2 x\n");
    let run = triff(&["graph", "kst-check", "--edges", &bad, "--s", "1", "--t", "1"]);
    assert_eq!(run.status, 2);
    assert!(run.err.contains("bad.txt:2:"), "{}", run.err);
}

#[test]
fn prune_and_project_reports() {
    let dir = TempDir::new().unwrap();
    let three = write(&dir, "three.triff", "n=1\n0\n1\n2\n");
    let doc = json(&triff(&["prune", &three]));
    assert_eq!(doc["sizes"], serde_json::json!([3, 2]));
    assert_eq!(doc["removed_symbols"], serde_json::json!([0]));

    let two = write(&dir, "two.triff", "n=3\n220\n202\n");
    let out = path(&dir, "p.triff");
    let run = triff(&["project", &two, "--coordinate", "1", "-o", &out]);
    assert_eq!(run.status, 0, "{}", run.err);
    let p = trifferent::parse(&fs::read_to_string(Path::new(&out)).unwrap()).unwrap();
    assert_eq!(p.code, trifferent_core::Code::from_strs(&["20", "02"]).unwrap());
    assert_eq!(json(&run)["restricted_sizes"], serde_json::json!([2, 1, 1]));
}
