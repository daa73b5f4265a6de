use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

use graphtopo::json::EmbedderJson;
use graphtopo_core::embedding::{EmbedderKind, EmbedderSpec};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_graphtopo"));
    c.env_remove("TOPO_THREADS");
    c
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = run(args);
    assert_eq!(o.status.code(), Some(0), "{args:?}: {}", stderr(&o));
    stdout(&o)
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

const WORKED: &str = "# A..E\nn 5\n0 3\n1 2\n2 3\n2 4\n3 4\n";
const TRIANGLES: &str = "0 1\n1 2\n0 2\n3 4\n4 5\n3 5\n";
const HEXAGON: &str = "0 1\n1 2\n2 3\n3 4\n4 5\n0 5\n";

fn points(doc: &Value, key: &str) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = doc[key]
        .as_array()
        .unwrap()
        .iter()
        .filter(|p| !p["dummy"].as_bool().unwrap_or(false))
        .map(|p| (p["birth"].to_string(), p["death"].to_string()))
        .collect();
    v.sort();
    v
}

fn pts(list: &[(&str, &str)]) -> Vec<(String, String)> {
    let mut v: Vec<(String, String)> = list.iter().map(|(a, b)| (a.to_string(), b.to_string())).collect();
    v.sort();
    v
}

#[test]
fn ph_worked_example() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "worked.txt", WORKED);
    let doc: Value = serde_json::from_str(&ok(&["ph", s(&g)])).unwrap();
    assert_eq!(
        points(&doc, "dim0"),
        pts(&[("1.0", "\"inf\""), ("1.0", "3.0"), ("2.0", "3.0"), ("3.0", "3.0"), ("3.0", "3.0")])
    );
    assert_eq!(points(&doc, "dim1"), pts(&[("3.0", "\"inf\"")]));
    assert_eq!(doc["dim1"].as_array().unwrap().len(), 5);
    assert_eq!(doc["meta"]["command"], "ph");
    assert_eq!(doc["meta"]["inputs"][0]["sha256"].as_str().unwrap().len(), 64);

    let v = write(dir.path(), "v.json", "[1, 2, 3, 4, 5]");
    let doc: Value =
        serde_json::from_str(&ok(&["ph", s(&g), "--filtration", "values", "--values", s(&v), "--no-dummies"])).unwrap();
    assert_eq!(
        points(&doc, "dim0"),
        pts(&[("1.0", "\"inf\""), ("3.0", "3.0"), ("2.0", "4.0"), ("4.0", "4.0"), ("5.0", "5.0")])
    );
    assert_eq!(points(&doc, "dim1"), pts(&[("5.0", "\"inf\"")]));
    assert_eq!(doc["dim1"].as_array().unwrap().len(), 1);
}

#[test]
fn ph_hexagon_degree() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "hex.txt", HEXAGON);
    let doc: Value = serde_json::from_str(&ok(&["ph", s(&g), "--filtration", "degree"])).unwrap();
    let mut d0 = vec![("2.0", "\"inf\"")];
    d0.extend([("2.0", "2.0"); 5]);
    assert_eq!(points(&doc, "dim0"), pts(&d0));
    assert_eq!(points(&doc, "dim1"), pts(&[("2.0", "\"inf\"")]));
}

#[test]
fn ph_csv_mlp_and_plot() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.txt", "0 1\n1 2\nx 0 0.0\nx 1 1.0\nx 2 2.0\n");
    let mlp = write(
        dir.path(),
        "mlp.json",
        r#"{"d":1,"hidden":1,"k":2,"activation":"identity","W1":[[1.0]],"b1":[0.0],"W2":[[1.0],[-1.0]],"b2":[0.0,0.0]}"#,
    );
    let out = ok(&["ph", s(&g), "--filtration", "mlp", "--mlp", s(&mlp), "--format", "csv"]);
    assert!(out.lines().any(|l| l == "filtration,dim,index,birth,death,creator,destroyer"));
    assert!(out.lines().any(|l| l.starts_with("1,0,2,-2,inf,2,")), "{out}");
    let script = ok(&["ph", s(&g), "--plot", "gnuplot-script"]);
    assert!(script.contains("$data << EOD") && script.contains("plot $data"));
}

#[test]
fn input_errors_exit_2() {
    let dir = TempDir::new().unwrap();
    let o = run(&["ph", s(&dir.path().join("missing.txt"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("missing.txt"));

    let bad = write(dir.path(), "loop.txt", "0 0\n");
    let o = run(&["ph", s(&bad)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 1") && stderr(&o).contains("self-loop"), "{}", stderr(&o));

    let o = run(&["ph", s(&bad), "--filtration", "values"]);
    assert_eq!(o.status.code(), Some(2));
    let o = run(&["nonsense"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn betti_fixtures_graphs_and_complexes() {
    assert!(ok(&["betti", "--fixture", "sphere"]).lines().any(|l| l == "sphere,1,0,1"));
    assert!(ok(&["betti", "--fixture", "torus"]).lines().any(|l| l == "torus,1,2,1"));
    let dir = TempDir::new().unwrap();
    let sphere = write(
        dir.path(),
        "sphere.json",
        &serde_json::to_string(&graphtopo::json::complex_to_json(&graphtopo_core::simplicial::fixtures::sphere()))
            .unwrap(),
    );
    assert!(ok(&["betti", s(&sphere), "--complex"]).lines().any(|l| l == "0,1,0,1"));
    let t = write(dir.path(), "t.txt", TRIANGLES);
    let out = ok(&["betti", s(&t)]);
    assert!(out.lines().any(|l| l == "id,b0,b1") && out.lines().any(|l| l == "0,2,2"), "{out}");
    // Filled triangles have no 1-cycles in the clique complex.
    assert!(ok(&["betti", s(&t), "--max-dim", "2"]).lines().any(|l| l == "0,2,0,0"));
    let empty = write(dir.path(), "empty.txt", "# nothing\n");
    assert_eq!(run(&["betti", s(&empty)]).status.code(), Some(2));
    let warn = run(&["betti", s(&t), "--max-dim", "2", "--simplex-cap", "3"]);
    assert!(stderr(&warn).contains("warning") && stderr(&warn).contains("exceeds"));
}

#[test]
fn wl_reports() {
    let dir = TempDir::new().unwrap();
    let t = write(dir.path(), "t.txt", TRIANGLES);
    let h = write(dir.path(), "h.txt", HEXAGON);
    let doc: Value = serde_json::from_str(&ok(&["wl", s(&t), s(&h)])).unwrap();
    assert!(doc["summary"].as_str().unwrap().starts_with("indistinguishable by WL"));
    assert!(doc["summary"].as_str().unwrap().ends_with("distinguished by PH (betti 2,2 vs 1,1)"));
    assert_eq!(doc["diverged_at"], Value::Null);

    let doc: Value = serde_json::from_str(&ok(&["wl", s(&h), s(&h)])).unwrap();
    assert_eq!(doc["diagrams_equal"], true);
    assert!(doc["summary"].as_str().unwrap().contains("diagrams equal"));

    let p3 = write(dir.path(), "p3.txt", "0 1\n1 2\n");
    let star = write(dir.path(), "star.txt", "0 1\n0 2\n0 3\n");
    let diagrams = dir.path().join("d.json");
    let coloring = dir.path().join("c.csv");
    let doc: Value = serde_json::from_str(&ok(&[
        "wl",
        s(&p3),
        s(&star),
        "--diagrams-out",
        s(&diagrams),
        "--coloring-out",
        s(&coloring),
    ]))
    .unwrap();
    assert_eq!(doc["diverged_at"], 0);
    let d: Value = serde_json::from_str(&fs::read_to_string(&diagrams).unwrap()).unwrap();
    assert_eq!(d["diagrams"].as_array().unwrap().len(), 2);
    assert!(fs::read_to_string(&coloring).unwrap().contains("iteration,vertex,label"));
    let csv = ok(&["wl", s(&p3), s(&star), "--init", "degree", "--format", "csv"]);
    assert!(csv.lines().any(|l| l.starts_with("0,1,0,1,0,")), "{csv}");
}

#[test]
fn regular_counts_and_threads() {
    let dir = TempDir::new().unwrap();
    let one = write(dir.path(), "one.g6", "Bw\n");
    assert!(ok(&["regular", s(&one)]).lines().any(|l| l == "max_plus_one,1,0,0,0.0000"));
    let dup = write(dir.path(), "dup.g6", "Bw\nBw\n");
    assert!(ok(&["regular", s(&dup), "--substitute", "max"]).lines().any(|l| l == "max,2,1,1,1.0000"));

    let data = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/r4-n10.g6");
    let o = bin().args(["regular", s(&data)]).env("TOPO_THREADS", "3").output().unwrap();
    let out = stdout(&o);
    assert!(out.contains("# config.threads: 3"));
    assert!(out.lines().any(|l| l == "max_plus_one,59,1711,229,0.1338"), "{out}");
    let o = bin().args(["regular", s(&data)]).env("TOPO_THREADS", "many").output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let single = ok(&["regular", s(&data), "--threads", "1"]);
    assert_eq!(single.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>(), out.lines().filter(|l| !l.starts_with('#')).collect::<Vec<_>>());
}

#[test]
fn gen_is_deterministic_and_keeps_invariants() {
    let dir = TempDir::new().unwrap();
    let a = dir.path().join("a");
    let b = dir.path().join("b");
    let sa = ok(&["gen", "--dataset", "cycles", "--count", "40", "--seed", "5", "--out", s(&a)]);
    let sb = ok(&["gen", "--dataset", "cycles", "--count", "40", "--seed", "5", "--out", s(&b), "--threads", "3"]);
    let body = |t: &str| t.lines().filter(|l| !l.starts_with('#')).map(str::to_owned).collect::<Vec<_>>();
    assert_eq!(body(&sa), body(&sb));
    for i in 0..40 {
        let name = graphtopo::export::sample_file_name(i);
        assert_eq!(fs::read(a.join(&name)).unwrap(), fs::read(b.join(&name)).unwrap());
    }
    assert_eq!(fs::read_to_string(a.join("labels.csv")).unwrap().lines().count(), 41);
    // id,label,n,m,b0,b1
    for row in body(&sa).iter().skip(1) {
        let f: Vec<usize> = row.split(',').map(|x| x.parse().unwrap()).collect();
        assert_eq!(f[4] > 1, f[1] == 1);
    }
    let n = dir.path().join("n.jsonl");
    let sn = ok(&["gen", "--dataset", "necklaces", "--count", "20", "--out", s(&n), "--layout", "jsonl"]);
    for row in body(&sn).iter().skip(1) {
        assert!(row.ends_with(",1,2"), "{row}");
    }
    assert_eq!(fs::read_to_string(&n).unwrap().lines().count(), 20);
    assert_eq!(run(&["gen", "--dataset", "cycles", "--count", "3", "--out", s(&a)]).status.code(), Some(2));
}

#[test]
fn gradcheck_runs_refuses_ties_and_zero_embedder() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.txt", WORKED);
    let v = write(dir.path(), "v.json", "[0.13, 0.52, 0.31, 0.77, 0.94]");
    let routing = dir.path().join("r.json");
    for kind in ["line", "gaussian", "deepsets"] {
        let doc: Value = serde_json::from_str(&ok(&[
            "gradcheck",
            s(&g),
            "--filtration",
            "values",
            "--values",
            s(&v),
            "--kind",
            kind,
            "--routing-out",
            s(&routing),
        ]))
        .unwrap();
        assert!(doc["max_relative_error"].as_f64().unwrap() < 1e-4, "{kind}: {doc}");
    }
    let r: Value = serde_json::from_str(&fs::read_to_string(&routing).unwrap()).unwrap();
    // Vertex 1 (0.52) merges through edge (1,2), whose value it carries itself.
    assert_eq!(r["dim0"][1], serde_json::json!([1, 1]));

    let o = run(&["gradcheck", s(&g)]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not injective"), "{}", stderr(&o));

    let zero = EmbedderSpec::random(EmbedderKind::RationalHat, 1, 3, 2, (0.0, 1.0), 1).zeroed();
    let e = write(dir.path(), "zero.json", &serde_json::to_string(&EmbedderJson::from_spec(&zero)).unwrap());
    let doc: Value =
        serde_json::from_str(&ok(&["gradcheck", s(&g), "--filtration", "values", "--values", s(&v), "--embedder", s(&e)]))
            .unwrap();
    assert_eq!(doc["max_relative_error"], 0.0);
}

#[test]
fn out_flag_writes_file() {
    let dir = TempDir::new().unwrap();
    let g = write(dir.path(), "g.g6", "Bw\n");
    let out = dir.path().join("o.json");
    assert_eq!(ok(&["ph", s(&g), "--out", s(&out)]), "");
    let doc: Value = serde_json::from_str(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(doc["dim0"].as_array().unwrap().len(), 3);
}
