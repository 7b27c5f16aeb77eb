use std::path::Path;
use std::process::{Command, Output};

use hexagram_core::pipeline::{PipelineConfig, TrialRecord};

fn hexagram(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hexagram")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_records(path: &Path, triple: &str, counts: &[Option<u32>]) {
    let plan = PipelineConfig::default().trial_plan();
    let mut text = String::new();
    for ((prime, seed), count) in plan.iter().zip(counts) {
        let rec = TrialRecord {
            triple: triple.into(),
            prime: prime.get(),
            seed: *seed,
            lines: [[1, 2, 3], [4, 5, 6], [7, 8, 9]],
            count: *count,
            zero_dim: count.is_some(),
            retries: 0,
            millis: 1,
        };
        text.push_str(&serde_json::to_string(&rec).unwrap());
        text.push('\n');
    }
    std::fs::write(path, text).unwrap();
}

#[test]
fn orbits_listing() {
    let o = hexagram(&["orbits"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 77);
    assert!(text.lines().next().unwrap().contains("(1, 23), (1, 24), (1, 25)"));
    let brown: Vec<&str> = text.lines().filter(|l| l.contains("Z2xZ2")).collect();
    assert_eq!(brown.len(), 1);
    assert!(brown[0].contains("(1, 23), (1, 45), (6, 23)"));
}

#[test]
fn count_small_entry() {
    let o = hexagram(&["count", "(1,23),(4,23),(5,23)"]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).starts_with("(1, 23), (4, 23), (5, 23): 2\n"));
}

#[test]
fn count_records_format() {
    let o = hexagram(&["count", "k(1,23) k(2,13) k(3,12)", "--format", "records", "--trials", "2"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert_eq!(text.lines().count(), 2);
    for line in text.lines() {
        let rec: TrialRecord = serde_json::from_str(line).unwrap();
        assert_eq!(rec.count, Some(0));
    }
}

#[test]
fn cache_resume_and_replay() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().join("c.jsonl");
    let cache = cache.to_str().unwrap();
    let first = hexagram(&["count", "(1,23),(4,23),(5,23)", "--cache", cache, "--format", "records"]);
    assert!(first.status.success());
    let before = std::fs::read_to_string(cache).unwrap();
    assert_eq!(before.lines().count(), 3);
    let second = hexagram(&["count", "(1,23),(4,23),(5,23)", "--cache", cache, "--format", "records"]);
    assert_eq!(stdout(&first), stdout(&second));
    assert_eq!(std::fs::read_to_string(cache).unwrap(), before);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    let cache = path.to_str().unwrap();
    let triple = "(1, 23), (1, 24), (1, 25)";

    write_records(&path, triple, &[Some(22), Some(21), Some(22)]);
    let o = hexagram(&["count", triple, "--cache", cache]);
    assert_eq!(o.status.code(), Some(3), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(stdout(&o).contains("disagreement"));

    write_records(&path, triple, &[None, None, None]);
    assert_eq!(hexagram(&["count", triple, "--cache", cache]).status.code(), Some(4));

    std::fs::write(&path, "{not json}\n").unwrap();
    let o = hexagram(&["count", triple, "--cache", cache]);
    assert_eq!(o.status.code(), Some(5));
    assert!(String::from_utf8_lossy(&o.stderr).contains("corrupt"));

    assert_eq!(hexagram(&["count", "(1,23)"]).status.code(), Some(2));
    assert_eq!(hexagram(&["count", triple, "--primes", "32001"]).status.code(), Some(2));
    assert_eq!(hexagram(&["count", triple, "--trials", "0"]).status.code(), Some(2));
}

#[test]
fn table_reports_mismatch_from_cache() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    write_records(&path, "(1, 23), (1, 24), (1, 25)", &[Some(21), Some(21), Some(21)]);
    let o = hexagram(&["table", "--rows", "1", "--cache", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(6));
    assert!(stdout(&o).contains("MISMATCH"));
}

#[test]
fn example_replays_worked_instance() {
    let o = hexagram(&["example"]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.contains("IN = 8 over F_101"));
    assert!(text.contains("orbit 1: (48, 49, 14, 92, 9, 57) and (92, 9, 57, 48, 49, 14)"));
    assert!(text.contains("b = 29a + 69, c = 58a + 70, d = 4 - a, e = 72a + 84, f = 43a + 100, where a^2 - 4a + 63 = 0"));
    assert!(text.contains("b = 31a + 64, c = 9a + 70, d = 51 - a, e = 70a + 29, f = 92a + 24, where a^2 - 51a + 4 = 0"));
    assert!(text.contains("b = 43a + 18, c = 71a + 8, d = 56 - a, e = 58a + 2, f = 30a + 45, where a^2 - 56a + 4 = 0"));
    assert!(text.contains("four-variable count 8"));
}

#[test]
fn theorems_and_fiber() {
    let o = hexagram(&["theorems", "--hexads", "5", "--primes", "32003"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("100 Steiner and 300 Kirkman points"));
    let o = hexagram(&["fiber", "--pattern", "kirkman", "--primes", "32003", "--letters", "b", "--draws", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("fiber degrees [7]"));
}

#[test]
fn figure_to_file() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("pascal.svg");
    let o = hexagram(&["figure", "k(1,23);ABC/DEF", "--out", out.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = std::fs::read_to_string(out).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("k(1,23)"));
    assert_eq!(hexagram(&["figure", "--params", "1,2,3"]).status.code(), Some(2));
}
