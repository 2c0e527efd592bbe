use std::process::{Command, Output};

use adsmd::angular::{HalfInt, QuantumNumbers};
use adsmd::radial_exact::{spectrum, ChannelSpec};
use adsmd::spectrum::SpectrumTable;

fn adsmd(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_adsmd")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn jmin_levels_at_unit_mass() {
    let o = adsmd(&["spectrum", "--M", "1", "--k", "0.5", "--j", "0", "--n-max", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let t: SpectrumTable = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(t.energies(), vec![0.5, 2.5, 4.5]);
}

#[test]
fn spectrum_json_round_trips() {
    let o = adsmd(&["spectrum", "--M", "2", "--k", "1/2", "--j", "1", "--n-max", "3"]);
    let parsed: SpectrumTable = serde_json::from_str(&stdout(&o)).unwrap();
    let qn = QuantumNumbers::new(HalfInt::HALF, HalfInt::from_int(1), HalfInt::ZERO, 1, 0).unwrap();
    let expected = spectrum(&ChannelSpec::new(qn, 2.0, None).unwrap(), 3).unwrap();
    assert_eq!(parsed, expected);

    let o = adsmd(&["spectrum", "--M", "2", "--k", "-1/2", "--n-max", "2", "--with-oracle"]);
    let parsed: SpectrumTable = serde_json::from_str(&stdout(&o)).unwrap();
    let again: SpectrumTable = serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
    assert_eq!(parsed, again);
    for l in parsed.levels.iter().filter(|l| l.normalizable) {
        assert!(l.delta.unwrap() < 1e-6, "{l:?}");
    }
}

#[test]
fn output_files_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let runs: [&[&str]; 3] = [
        &["spectrum", "--M", "1", "--k", "1", "--j", "3/2", "--with-oracle"],
        &["wavefunction", "--M", "2", "--k", "1/2", "--n", "2", "--points", "50"],
        &["limit-scan", "--rho", "100,1000"],
    ];
    for (i, args) in runs.iter().enumerate() {
        let mut files = Vec::new();
        for rep in 0..2 {
            let path = dir.path().join(format!("out{i}_{rep}"));
            let mut a: Vec<&str> = args.to_vec();
            let p = path.to_str().unwrap().to_string();
            a.extend(["--output", &p]);
            let o = adsmd(&a);
            assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
            assert!(o.stdout.is_empty());
            files.push(std::fs::read(&path).unwrap());
        }
        assert_eq!(files[0], files[1], "run {i} differs");
    }
}

#[test]
fn thread_count_does_not_change_output() {
    let args = ["spectrum", "--M", "1", "--k", "1/2", "--with-oracle"];
    let one = Command::new(env!("CARGO_BIN_EXE_adsmd")).args(args).env("ADSMD_THREADS", "1").output().unwrap();
    let four = Command::new(env!("CARGO_BIN_EXE_adsmd")).args(args).env("ADSMD_THREADS", "4").output().unwrap();
    assert_eq!(one.stdout, four.stdout);
    let bad = Command::new(env!("CARGO_BIN_EXE_adsmd")).args(args).env("ADSMD_THREADS", "0").output().unwrap();
    assert_eq!(bad.status.code(), Some(1));
}

#[test]
fn csv_schema() {
    let o = adsmd(&["wavefunction", "--M", "1", "--k", "1", "--j", "3/2", "--n", "1", "--points", "20", "--variable", "r"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::Reader::from_reader(text.as_bytes());
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["var", "grid", "re1", "im1", "re2", "im2", "system_tag"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| &r[0] == "r" && &r[6] == "fg_transformed"));
    let grid: Vec<f64> = rows.iter().map(|r| r[1].parse().unwrap()).collect();
    assert!(grid.windows(2).all(|w| w[1] > w[0]));
}

#[test]
fn exit_codes() {
    let bad_j = adsmd(&["spectrum", "--M", "1", "--k", "3/2", "--j", "0"]);
    assert_eq!(bad_j.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad_j.stderr).contains("j must be ≥ |k| − 1/2"));
    assert_eq!(adsmd(&["spectrum", "--M", "1", "--k", "0.3"]).status.code(), Some(1));
    assert_eq!(adsmd(&["spectrum", "--M", "0.4", "--k", "1/2"]).status.code(), Some(1));
    assert_eq!(adsmd(&["limit-scan", "--energy", "0.5"]).status.code(), Some(1));
    assert_eq!(adsmd(&["no-such-command"]).status.code(), Some(1));
    assert_eq!(adsmd(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_all_passes() {
    let o = adsmd(&["verify", "--suite", "all"]);
    let text = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{text}");
    assert!(text.lines().filter(|l| l.starts_with("PASS")).count() >= 20);
    assert!(!text.contains("FAIL"));
}

#[test]
fn field_check_reports() {
    let o = adsmd(&["field-check", "--g", "-1.5"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["maxwell_residual"].as_f64().unwrap() < 1e-12);
    assert!((v["flux"].as_f64().unwrap() - v["flux_expected"].as_f64().unwrap()).abs() < 1e-10);
    let o = adsmd(&["field-check", "--corrupted"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(v["maxwell_residual"].as_f64().unwrap() > 0.1);
}
