use std::fs;
use std::process::Command;

use polymer_lab::experiments::ExperimentReport;

fn lab(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_polymer-lab")).args(args).output().unwrap();
    (out.status.code().unwrap(), String::from_utf8(out.stdout).unwrap(), String::from_utf8(out.stderr).unwrap())
}

#[test]
fn json_report_on_stdout() {
    let (code, out, err) = lab(&["gibbs", "--replicas", "3000", "--seed", "4"]);
    assert_eq!(code, 0, "{err}");
    let r = ExperimentReport::from_json(&out).unwrap();
    assert_eq!(r.schema_version, 1);
    assert_eq!(r.config.seed, 4);
    assert_eq!(r.config.replicas, 3000);
    assert!(err.contains("[pass]"));
}

#[test]
fn config_file_then_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("walk.cfg");
    fs::write(&cfg, "# small run\nname = walk-max\nsizes = 100, 1000\nreplicas = 50\nseed = 3\nalpha = 0.5\n").unwrap();
    let out = dir.path().join("walk.json");
    let (code, _, err) = lab(&["walk-max", "--config", cfg.to_str().unwrap(), "--replicas", "80", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let r = ExperimentReport::from_json(&fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(r.config.sizes, vec![100, 1000]);
    assert_eq!((r.config.replicas, r.config.seed), (80, 3));
}

#[test]
fn csv_has_one_row_per_replica() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("w.csv");
    let (code, _, err) = lab(&["walk-max", "--sizes", "50,100", "--replicas", "7", "--format", "csv", "--out", out.to_str().unwrap()]);
    assert_eq!(code, 0, "{err}");
    let text = fs::read_to_string(&out).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "size,replica,max_below_x");
    assert_eq!(lines.len(), 1 + 14);
    assert!(lines[8].starts_with("100,0,"));
}

#[test]
fn failing_verdict_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("k.cfg");
    fs::write(&cfg, "exponent_lo = 5\nexponent_hi = 6\n").unwrap();
    let (code, _, err) =
        lab(&["kpz-wandering", "--config", cfg.to_str().unwrap(), "--sizes", "32,64,128", "--replicas", "20"]);
    assert_eq!(code, 1, "{err}");
    assert!(err.contains("[FAIL] wandering exponent in window"));
}

#[test]
fn usage_and_config_errors_exit_two() {
    assert_eq!(lab(&["gibbs", "--bogus"]).0, 2);
    assert_eq!(lab(&["nonsense"]).0, 2);
    assert_eq!(lab(&["gibbs", "--sizes", "3,2"]).0, 2);
    assert_eq!(lab(&["gibbs", "--sizes", "9"]).0, 2);
    assert_eq!(lab(&["gibbs", "--threads", "0"]).0, 2);
    assert_eq!(lab(&["gibbs", "--format", "xml"]).0, 2);
    assert_eq!(lab(&["gibbs", "--config", "/no/such/file"]).0, 2);
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.cfg");
    fs::write(&cfg, "name = burke\n").unwrap();
    assert_eq!(lab(&["gibbs", "--config", cfg.to_str().unwrap()]).0, 2);
    fs::write(&cfg, "replicas = many\n").unwrap();
    assert_eq!(lab(&["gibbs", "--config", cfg.to_str().unwrap()]).0, 2);
}

#[test]
fn all_writes_one_report_per_experiment() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("reports");
    let (code, _, err) = lab(&["all", "--replicas", "30", "--seed", "2", "--out", out.to_str().unwrap()]);
    assert!(code == 0 || code == 1, "{err}");
    for name in ["kpz-wandering", "exit-tail", "crossing-decay", "burke", "gibbs", "walk-max"] {
        let r = ExperimentReport::from_json(&fs::read_to_string(out.join(format!("{name}.json"))).unwrap()).unwrap();
        assert_eq!(r.experiment, name);
        assert_eq!(r.config.replicas, 30);
    }
}
