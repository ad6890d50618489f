use std::path::Path;
use std::process::{Command, Output};

use skeinlab::corpus;
use skeinlab::satellite::double_blackboard;
use skeinlab::verify::{Report, Status};
use skeinlab::Diagram;

const TREFOIL: &str = "X[1,4,2,5]\nX[3,6,4,1]\nX[5,2,6,3]\n";

fn skeinlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_skeinlab"))
        .args(args)
        .env_remove("SKEINLAB_CACHE")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn table(dir: &Path, names: &[&str]) -> String {
    let entries: Vec<_> = names.iter().map(|n| corpus::entry(n).unwrap()).collect();
    write(dir, "table.json", &serde_json::to_string(&entries).unwrap())
}

fn reports(path: &Path) -> Vec<Report> {
    serde_json::from_slice(&std::fs::read(path).unwrap()).unwrap()
}

#[test]
fn invariant_values() {
    let dir = tempfile::tempdir().unwrap();
    let t = write(dir.path(), "t.pd", TREFOIL);
    let o = skeinlab(&["invariant", "homfly", "--pd", &t]);
    assert!(o.status.success());
    assert_eq!(stdout(&o).lines().next(), Some("2*v*z^-1 + v*z - 3*v^3*z^-1 - v^3*z + v^5*z^-1"));

    let empty = write(dir.path(), "empty.pd", "");
    let o = skeinlab(&["invariant", "homfly", "--pd", &empty]);
    assert_eq!(stdout(&o).lines().next(), Some("1"));

    let o = skeinlab(&["invariant", "rudolph", "--entry", "unknot"]);
    assert_eq!(stdout(&o).lines().next(), Some("v^-2*z^-2 - 2*z^-2 - 1 + v^2*z^-2"));

    let o = skeinlab(&["invariant", "F", "--entry", "3_1", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["degrees"]["max_x"], 2);
}

#[test]
fn doubles_round_trip() {
    let o = skeinlab(&["double", "--entry", "unknot", "--framing", "0"]);
    assert_eq!(stdout(&o), "O\nO\n");

    let o = skeinlab(&["double", "--entry", "3_1"]);
    let d = Diagram::parse_pd(&stdout(&o)).unwrap();
    assert_eq!(d.crossing_count(), 12);
    let expected = double_blackboard(&corpus::diagram("3_1")).diagram;
    assert_eq!(d.canonical_code(), expected.canonical_code());

    let o = skeinlab(&["double", "--entry", "3_1", "--whitehead", "0"]);
    let w = Diagram::parse_pd(&stdout(&o)).unwrap();
    assert_eq!((w.crossing_count(), w.component_count()), (20, 1));

    let o = skeinlab(&["double", "--entry", "3_1", "--framing", "-1"]);
    assert!(o.status.success(), "{}", stderr(&o));
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write(dir.path(), "bad.pd", "X[1,2\n");
    assert_eq!(skeinlab(&["invariant", "homfly", "--pd", &bad]).status.code(), Some(2));
    assert_eq!(skeinlab(&["double", "--entry", "hopf", "--whitehead", "0"]).status.code(), Some(2));
    assert_eq!(skeinlab(&["double", "--entry", "hopf", "--framing", "1"]).status.code(), Some(2));
    assert_eq!(skeinlab(&["invariant", "homfly", "--entry", "8_16", "--budget", "10"]).status.code(), Some(3));
    let broken = write(dir.path(), "broken.json", "[{\"name\": ");
    assert_eq!(skeinlab(&["verify", "morton", &broken]).status.code(), Some(2));

    // a two-curl unknot claimed reduced, alternating and prime: Kidwell's
    // equality is then demanded and fails
    let liar = r#"[{"name": "curls", "pd": [[1,2,2,3],[3,4,4,1]],
        "flags": {"alternating": true, "reduced": true, "prime": true}}]"#;
    let liar = write(dir.path(), "liar.json", liar);
    let out = dir.path().join("r.json");
    let o = skeinlab(&["verify", "kidwell", &liar, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("disagree"), "flag mismatch is reported");
    let r = reports(&out);
    assert_eq!(r[0].status, Status::Fail);
    assert!(r[0].lhs.is_some() && r[0].rhs.is_some());
}

#[test]
fn verify_batches() {
    let dir = tempfile::tempdir().unwrap();
    let rational = table(dir.path(), &["3_1", "4_1", "5_1", "5_2", "hopf"]);
    let out = dir.path().join("c2.json");
    let o = skeinlab(&["verify", "conjecture2", &rational, "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", stderr(&o));
    assert!(reports(&out).iter().all(|r| r.status == Status::Pass));

    let out = dir.path().join("kidwell.json");
    let o = skeinlab(&["verify", "kidwell", "--out", out.to_str().unwrap()]);
    assert!(o.status.success());
    for r in reports(&out).iter().filter(|r| r.facts["equality_required"]) {
        assert!(r.facts["equality"], "{}", r.entry);
    }
}

#[test]
fn cache_is_reused_and_audited() {
    let dir = tempfile::tempdir().unwrap();
    let t = table(dir.path(), &["3_1", "hopf", "unknot"]);
    let cache = dir.path().join("cache");
    let c = cache.to_str().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    let cold = skeinlab(&["verify", "all", &t, "--cache-dir", c, "--stats", "--out", a.to_str().unwrap()]);
    assert!(cold.status.success());
    assert!(stderr(&cold).contains("hits=") && std::fs::read_dir(&cache).unwrap().count() > 0);
    let warm = Command::new(env!("CARGO_BIN_EXE_skeinlab"))
        .args(["verify", "all", &t, "--stats", "--verify-cache", "--jobs", "2", "--out", b.to_str().unwrap()])
        .env("SKEINLAB_CACHE", &cache)
        .output()
        .unwrap();
    assert!(warm.status.success(), "{}", stderr(&warm));
    let err = stderr(&warm);
    assert!(err.contains("misses=0"), "{err}");
    assert!(err.contains("0 mismatches"), "{err}");
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}
