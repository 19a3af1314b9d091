use std::process::Command;

use shellav::{ModelSet, QuadVal};
use shellav_cli::{compute, parse_csv, render_csv, render_svg, CliError, Subcommand};

fn shellav(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_shellav")).args(args).output().unwrap()
}

fn stdout(args: &[&str]) -> String {
    let out = shellav(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn csv_round_trip_is_byte_identical() {
    let commands = [
        Subcommand::Central { mmax: 50 },
        Subcommand::Chain { rmax: 8.0 },
        Subcommand::Penrose { rmax: 3.0 },
        Subcommand::Ammann { rmax: 3.0, order: None },
        Subcommand::Ammann { rmax: 2.0, order: Some(3) },
        Subcommand::AmmannRandom {
            rmax: 2.5,
            order: 3,
            seed: 5,
            flips_per_vertex: 20.0,
            replicas: 2,
        },
    ];
    for c in commands {
        let text = render_csv(&compute(&c).unwrap());
        let again = render_csv(&parse_csv(&text).unwrap());
        assert_eq!(again, text, "{c:?}");
    }
}

#[test]
fn malformed_csv_rejected() {
    assert!(matches!(parse_csv("nope\n"), Err(CliError::Csv { line: 1, .. })));
    let good = render_csv(&compute(&Subcommand::Penrose { rmax: 1.0 }).unwrap());
    let bad = good.replace("penrose,tau", "penrose,pi");
    assert!(matches!(parse_csv(&bad), Err(CliError::Csv { line: 2, .. })));
}

#[test]
fn central_rows() {
    let text = stdout(&["central", "--mmax", "16"]);
    let rows = parse_csv(&text).unwrap();
    let got: Vec<(String, f64)> = rows.iter().map(|r| (r.record.r2.a().to_string(), r.record.sigma_float)).collect();
    let want = [(1, 4), (2, 4), (4, 4), (5, 8), (8, 4), (9, 4), (10, 8), (13, 8), (16, 4)];
    assert_eq!(got.len(), want.len());
    for ((m, s), (wm, ws)) in got.iter().zip(want) {
        assert_eq!((m.as_str(), *s), (wm.to_string().as_str(), ws as f64));
    }
    assert!(text.lines().nth(1).unwrap().starts_with("square,int,1,,1,,4,,4,exact,"));
}

#[test]
fn penrose_fifty_rows() {
    let rmax = QuadVal::from_ints(11, 16, shellav::Basis::GoldenTau).to_f64().sqrt().to_string();
    let text = stdout(&["penrose", "--rmax", &rmax]);
    let rows = parse_csv(&text).unwrap();
    assert_eq!(rows.len(), 51);
    assert_eq!(text.lines().nth(2).unwrap().split(',').take(8).collect::<Vec<_>>(), ["penrose", "tau", "2", "-1", "0.6180339887498949", "1.618033988749895", "4", "-2"]);
    assert!(text.lines().last().unwrap().starts_with("penrose,tau,11,16,"));
}

#[test]
fn random_runs_are_reproducible() {
    let args = ["ammann-random", "--order", "3", "--seed", "9", "--flips-per-vertex", "30", "--rmax", "2.5"];
    let a = stdout(&args);
    assert_eq!(a, stdout(&args));
    let single = Command::new(env!("CARGO_BIN_EXE_shellav"))
        .args(args)
        .env("SHELLAV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(String::from_utf8(single.stdout).unwrap(), a);
    assert!(a.lines().skip(1).all(|l| l.ends_with(",empirical,9")));
    assert_ne!(a, stdout(&["ammann-random", "--order", "3", "--seed", "10", "--flips-per-vertex", "30", "--rmax", "2.5"]));
}

#[test]
fn exit_codes() {
    assert_eq!(shellav(&["penrose", "--rmax", "0"]).status.code(), Some(2));
    assert_eq!(shellav(&["chain"]).status.code(), Some(2));
    assert_eq!(shellav(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(shellav(&["ammann-random", "--replicas", "0"]).status.code(), Some(2));
    assert_eq!(shellav(&["ammann-random", "--order", "2", "--rmax", "5"]).status.code(), Some(2));
    assert_eq!(shellav(&["ammann", "--rmax", "1", "--format", "both"]).status.code(), Some(2));
    let bad_threads = Command::new(env!("CARGO_BIN_EXE_shellav"))
        .args(["chain", "--rmax", "2"])
        .env("SHELLAV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));
}

#[test]
fn both_formats_written() {
    let dir = std::env::temp_dir().join(format!("shellav-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let base = dir.join("ab");
    let out = shellav(&["ammann", "--rmax", "2", "--format", "both", "--out", base.to_str().unwrap()]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(base.with_extension("csv")).unwrap();
    let svg = std::fs::read_to_string(base.with_extension("svg")).unwrap();
    assert_eq!(parse_csv(&csv).unwrap().len(), 7);
    assert_eq!(svg.matches("<circle").count(), 14);
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn svg_single_record() {
    let rows = compute(&Subcommand::Chain { rmax: 0.5 }).unwrap();
    assert_eq!(rows.len(), 1);
    let svg = render_svg(&[rows[0].record.clone()]).unwrap();
    assert_eq!(svg.matches("<circle").count(), 2);
    assert_eq!(svg.matches(r#"<g class="panel">"#).count(), 2);
    assert!(svg.contains(">r<") && svg.contains(">r_int<") && svg.contains(">σ<"));
    assert_eq!(svg, render_svg(&[rows[0].record.clone()]).unwrap());
    assert!(render_svg(&[]).is_err());
}

#[test]
fn internal_radii_stay_inside_circumradius() {
    let records = shellav::averaged_shelling(&ModelSet::ammann_beenker().unwrap(), 6.0).unwrap();
    let max = records.iter().map(|r| r.r_int).fold(0.0, f64::max);
    assert!(max <= (4.0 + 2.0 * 2f64.sqrt()).sqrt() + 1e-12);
    assert!(max > 2.0);
    assert!(render_svg(&records).is_ok());
}
