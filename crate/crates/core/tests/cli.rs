use std::process::{Command, Output};

fn allee(args: &[&str], dir: &std::path::Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_allee")).args(args).arg("--out").arg(dir).output().unwrap()
}

#[test]
fn invalid_inputs_exit_nonzero_with_a_message() {
    let dir = tempfile::tempdir().unwrap();
    for args in [
        &["simulate", "--set", "y0=0"][..],
        &["noise-sweep", "--set", "sigmas="],
        &["hopf-scan", "--set", "y_min=0"],
        &["sweep", "--set", "parameter=Q"],
        &["simulate", "--set", "no_such_key=1"],
        &["retrieve", "--set", "rule=nonsense"],
        &["simulate", "--set", "dt=-1"],
    ] {
        let out = allee(args, dir.path());
        assert!(!out.status.success(), "{args:?} should fail");
        assert!(!out.stderr.is_empty(), "{args:?} printed nothing to stderr");
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 0, "failed runs must not leave files");
}

#[test]
fn meta_from_another_command_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    assert!(allee(&["fixed-points"], dir.path()).status.success());
    let meta = dir.path().join("fixed_points.meta");
    let out = allee(&["simulate", "--config", meta.to_str().unwrap()], dir.path());
    assert!(!out.status.success());
}

#[test]
fn plots_flag_writes_svg() {
    let dir = tempfile::tempdir().unwrap();
    assert!(allee(&["simulate", "--plots", "--set", "t_end=1"], dir.path()).status.success());
    let svg = std::fs::read_to_string(dir.path().join("simulate.svg")).unwrap();
    assert!(svg.starts_with("<svg") || svg.starts_with("<?xml"));
}

#[test]
fn fixed_points_csv_has_the_reference_classes() {
    let dir = tempfile::tempdir().unwrap();
    assert!(allee(&["fixed-points"], dir.path()).status.success());
    let csv = std::fs::read_to_string(dir.path().join("fixed_points.csv")).unwrap();
    let mut lines = csv.lines();
    assert_eq!(lines.next().unwrap(), "branch,x,y,eig1_re,eig1_im,eig2_re,eig2_im,stability,stability_case");
    let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
    assert!(rows.iter().any(|r| r[0] == "allee" && r[7] == "stable_node"));
    assert!(rows.iter().any(|r| r[0] == "interaction" && r[7] == "saddle"));
}

#[test]
fn set_overrides_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.cfg");
    std::fs::write(&cfg, "# small run\nt_end = 2\nA = 0.4\n").unwrap();
    let out = dir.path().join("out");
    let o = allee(&["simulate", "--config", cfg.to_str().unwrap(), "--set", "t_end=1"], &out);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let csv = std::fs::read_to_string(out.join("simulate.csv")).unwrap();
    assert_eq!(csv.lines().count(), 1 + 101);
    let meta = std::fs::read_to_string(out.join("simulate.meta")).unwrap();
    assert!(meta.lines().any(|l| l.replace(' ', "") == "t_end=1"));
}
