//! End-to-end runs of the command-line dispatcher.

use cpsehp::cli;
use std::fs;
use tempfile::tempdir;

fn run(args: &[&str]) -> i32 {
    cli::run(args.iter().map(|s| s.to_string()))
}

#[test]
fn usage_error_exits_2() {
    assert_eq!(run(&["no-such-subcommand"]), 2);
    assert_eq!(run(&[]), 2);
    assert_eq!(run(&["spectrum", "--alpha", "not-a-number"]), 2);
}

#[test]
fn help_exits_0() {
    assert_eq!(run(&["--help"]), 0);
}

#[test]
fn invalid_parameters_exit_2() {
    // Hellmann kind forbids v2
    assert_eq!(
        run(&[
            "spectrum", "--kind", "hellmann", "--v1", "0.1", "--v2", "0.3", "--B", "0.2",
            "--alpha", "0.01",
        ]),
        2
    );
    // supercritical channel at l = 0
    assert_eq!(
        run(&[
            "expval", "--v1", "0.1", "--v2", "0.2", "--B", "0.2", "--alpha", "0.01", "--n", "0",
            "--l", "0",
        ]),
        2
    );
}

#[test]
fn spectrum_to_file_both_formats() {
    let dir = tempdir().unwrap();
    let csv = dir.path().join("spec.csv");
    let json = dir.path().join("spec.json");
    let base = [
        "spectrum", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--n-max",
        "5", "--l-max", "2",
    ];
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--format", "csv", "--out", csv.to_str().unwrap()]);
    assert_eq!(run(&args), 0);
    let mut args: Vec<&str> = base.to_vec();
    args.extend(["--format", "json", "--out", json.to_str().unwrap()]);
    assert_eq!(run(&args), 0);

    let csv_text = fs::read_to_string(&csv).unwrap();
    assert_eq!(csv_text.lines().next().unwrap(), "n,l,energy");
    // band edge caps l = 0 at four levels
    let l0_rows = csv_text
        .lines()
        .skip(1)
        .filter(|l| l.split(',').nth(1) == Some("0"))
        .count();
    assert_eq!(l0_rows, 4);

    let parsed: serde_json::Value =
        serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    let records = parsed.as_array().unwrap();
    assert!(!records.is_empty());
    assert!(records[0]["n"].is_i64());
    let first_energy = records[0]["energy"].as_f64().unwrap();
    let first_csv: f64 = csv_text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert_eq!(first_energy.to_bits(), first_csv.to_bits());
}

#[test]
fn identical_invocations_are_byte_identical() {
    let dir = tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        assert_eq!(
            run(&[
                "thermo", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--l",
                "0", "--beta-min=-5", "--beta-max=-0.1", "--steps", "50", "--out",
                path.to_str().unwrap(),
            ]),
            0
        );
    }
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    assert_eq!(fs::read_to_string(&a).unwrap().lines().count(), 51);
}

#[test]
fn thermo_grid_crossing_zero_rejected() {
    assert_eq!(
        run(&[
            "thermo", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--l", "0",
            "--beta-min=-1", "--beta-max=1", "--steps", "3",
        ]),
        2
    );
}

#[test]
fn config_file_and_flag_precedence() {
    let dir = tempdir().unwrap();
    let config = dir.path().join("params.conf");
    fs::write(
        &config,
        "# table parameters\nv1 = 0.1\nv2 = 0.02\nB = 0.2\nalpha = 0.9\n",
    )
    .unwrap();
    let out = dir.path().join("out.csv");
    // the flag overrides the config file's alpha
    assert_eq!(
        run(&[
            "expval",
            "--config",
            config.to_str().unwrap(),
            "--alpha",
            "0.01",
            "--n",
            "0",
            "--l",
            "0",
            "--out",
            out.to_str().unwrap(),
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    let energy: f64 = text
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .nth(2)
        .unwrap()
        .parse()
        .unwrap();
    assert!((energy - (-6.956_598_293_528_626e-3)).abs() < 1e-15);

    // malformed config exits 2
    fs::write(&config, "nonsense line\n").unwrap();
    assert_eq!(
        run(&["expval", "--config", config.to_str().unwrap(), "--n", "0", "--l", "0"]),
        2
    );
}

#[test]
fn config_via_environment_variable() {
    // process-global state: this is the only test touching QSOLVE_CONFIG
    let dir = tempdir().unwrap();
    let config = dir.path().join("env.conf");
    fs::write(&config, "v1 = 0.1\nv2 = 0.02\nB = 0.2\nalpha = 0.01\n").unwrap();
    std::env::set_var("QSOLVE_CONFIG", &config);
    let out = dir.path().join("env_out.csv");
    let code = run(&["expval", "--n", "0", "--l", "0", "--out", out.to_str().unwrap()]);
    std::env::remove_var("QSOLVE_CONFIG");
    assert_eq!(code, 0);
    assert!(fs::read_to_string(&out).unwrap().lines().count() == 2);
}

#[test]
fn density_profile_output() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("density.csv");
    assert_eq!(
        run(&[
            "density", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--n",
            "1", "--l", "0", "--steps", "300", "--out",
            out.to_str().unwrap(),
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    assert_eq!(text.lines().next().unwrap(), "r,density");
    assert_eq!(text.lines().count(), 301);
    // density starts at zero and is non-negative everywhere
    let values: Vec<f64> = text
        .lines()
        .skip(1)
        .map(|l| l.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    assert_eq!(values[0], 0.0);
    assert!(values.iter().all(|&d| d >= 0.0));
}

#[test]
fn tables_report_covers_every_row() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("tables.csv");
    assert_eq!(run(&["tables", "--out", out.to_str().unwrap()]), 0);
    let text = fs::read_to_string(&out).unwrap();
    // version header + column header + 5 tables x 84 rows
    assert_eq!(text.lines().count(), 2 + 5 * 84);
    for id in 1..=5 {
        let rows = text
            .lines()
            .filter(|l| l.starts_with(&format!("{id},")))
            .count();
        assert_eq!(rows, 84, "table {id}");
    }
    // every row carries one of the four flags
    for line in text.lines().skip(2) {
        let flag = line.rsplit(',').next().unwrap();
        assert!(
            ["match", "mismatch", "domain_error", "suspected_misprint"].contains(&flag),
            "unexpected flag {flag}"
        );
    }
    // single-table selection and bad selectors
    assert_eq!(run(&["tables", "--table", "4"]), 0);
    assert_eq!(run(&["tables", "--table", "9"]), 2);
}

#[test]
fn superstat_band_and_semi_infinite() {
    assert_eq!(
        run(&[
            "superstat", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--l",
            "0", "--q", "0.5", "--beta-min=-2", "--beta-max=-0.5", "--steps", "4",
        ]),
        0
    );
    // semi-infinite diverges for beta > 0
    assert_eq!(
        run(&[
            "superstat", "--v1", "0.1", "--v2", "0.02", "--B", "0.2", "--alpha", "0.01", "--l",
            "0", "--q", "0.5", "--beta-min=0.5", "--beta-max=1.0", "--steps", "2", "--mode",
            "semi-infinite",
        ]),
        2
    );
}

#[test]
fn negative_couplings_accepted() {
    // attractive screened term, space-separated negative value
    assert_eq!(
        run(&["validate", "--kind", "yukawa", "--B", "-0.5", "--alpha", "0.02", "--l-max", "1"]),
        0
    );
    assert_eq!(
        run(&["spectrum", "--kind", "yukawa", "--B", "-0.5", "--alpha", "0.02", "--n-max", "2"]),
        0
    );
}

#[test]
fn pekeris_figure_data() {
    let dir = tempdir().unwrap();
    let out = dir.path().join("pekeris.csv");
    assert_eq!(
        run(&[
            "pekeris", "--alpha", "0.01", "--alpha", "0.02", "--alpha", "0.04", "--r-min", "0.5",
            "--r-max", "80", "--steps", "100", "--out",
            out.to_str().unwrap(),
        ]),
        0
    );
    let text = fs::read_to_string(&out).unwrap();
    assert!(text
        .lines()
        .next()
        .unwrap()
        .contains("approx_inv_r_alpha_0.04"));
    assert_eq!(text.lines().count(), 101);
}
