use std::fs;
use std::process::{Command, Output};

use dcg_forge::seq_format::parse_sequence;
use dcg_forge::sweep::read_csv;

fn forge(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dcg-forge"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compile_writes_a_parseable_sequence() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("x.seq");
    let o = forge(&[
        "compile",
        "--gate",
        "x:0:0.7",
        "--n-system",
        "2",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let seq = parse_sequence(&fs::read_to_string(&path).unwrap()[..]).unwrap();
    assert_eq!(seq.n_system(), 2);
    assert_eq!(seq.slot_count(), 16);

    let o = forge(&[
        "compile",
        "--gate",
        "cat",
        "--mode",
        "primitive",
        "--n-system",
        "3",
    ]);
    assert!(o.status.success());
    assert!(parse_sequence(&stdout(&o)[..]).is_ok());
}

#[test]
fn compile_reports_bound_violations() {
    let o = forge(&[
        "compile",
        "--gate",
        "x:0:1.2",
        "--mode",
        "primitive",
        "--h-max",
        "0.1",
    ]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!o.stderr.is_empty());
}

#[test]
fn bad_input_exits_with_config_code() {
    let o = forge(&["compile", "--gate", "cnot:0,3", "--n-system", "2"]);
    assert_eq!(o.status.code(), Some(2));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.conf");
    fs::write(&path, "no_such_key=1\n").unwrap();
    let o = forge(&["sweep", "--config", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));

    let o = forge(&[
        "sweep",
        "--config",
        dir.path().join("missing.conf").to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn sweep_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let conf = dir.path().join("small.conf");
    fs::write(&conf, "n_bath=1\na_log10=-1:-2:-1\nepsilon_values=0\n").unwrap();
    let run = |name: &str| {
        let out = dir.path().join(name);
        let o = forge(&[
            "sweep",
            "--config",
            conf.to_str().unwrap(),
            "--out",
            out.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
        fs::read(out).unwrap()
    };
    let a = run("a.csv");
    assert_eq!(a, run("b.csv"));
    let records = read_csv(&a[..]).unwrap();
    assert_eq!(records.len(), 4);
    assert!(records.iter().all(|r| r.fidelity_loss >= 0.0));
}

#[test]
fn epg_writes_one_row_per_tau() {
    let o = forge(&[
        "epg",
        "--gate",
        "x:0:0.5",
        "--mode",
        "primitive",
        "--tau-sweep",
        "0.5:0.05:3",
        "--n-bath",
        "1",
    ]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(rows[0], "tau,epg_exact,epg_first_order,residual");
    assert_eq!(rows.len(), 4);
    for row in &rows[1..] {
        assert!(row.split(',').all(|v| v.parse::<f64>().is_ok()), "{row}");
    }
}

#[test]
fn verify_passes() {
    let o = forge(&["verify", "--seed", "3"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).lines().all(|l| !l.starts_with("FAIL")));
}
