use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn ccf(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ccf"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn digits_of_three_halves() {
    let o = ccf(&["digits", "--alg", "nearest-integer", "--z", "1.5", "0", "--n", "5"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("digits=[2, 2]"), "{out}");
    // 2 - 1/2 = 3/2.
    assert!(out.contains("p1/q1 = (3)/(2)"), "{out}");
}

#[test]
fn convergents_of_a_digit_string() {
    let o = ccf(&["convergents", "--digits", "2", "-2", "1+i"]);
    assert_eq!(o.status.code(), Some(0));
    // 2 - 1/(-2 - 1/(1+i)) = (7+5i)/(3+2i).
    assert!(stdout(&o).contains("value=(7+5i)/(3+2i)"), "{}", stdout(&o));
}

#[test]
fn disk_building_passes() {
    let o = ccf(&["verify-building", "--alg", "disk"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).ends_with("result=pass\n"));
}

#[test]
fn nearest_even_bijectivity_passes_and_the_control_fails() {
    let o = ccf(&["verify-bijectivity", "--alg", "nearest-even"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let o = ccf(&["verify-bijectivity", "--alg", "nearest-even", "--sets", "perturbed", "--samples", "50000"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("result=FAIL"));
    let o = ccf(&["verify-bijectivity", "--alg", "diamond", "--sets", "printed", "--samples", "50000"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn simulation_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let o = ccf(&["simulate", "--alg", "diamond", "--points", "500", "--seed", "7", "--output", path(p)]);
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    }
    let bytes = fs::read(&a).unwrap();
    assert_eq!(bytes, fs::read(&b).unwrap());
    let o = ccf(&["simulate", "--alg", "diamond", "--points", "500", "--seed", "7"]);
    assert_eq!(o.stdout, bytes);
    let o = ccf(&["simulate", "--alg", "diamond", "--points", "500", "--seed", "8"]);
    assert_ne!(o.stdout, bytes);
}

#[test]
fn render_draws_one_panel_per_piece() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("ne.csv");
    let svg = dir.path().join("ne.svg");
    let o = ccf(&["simulate", "--alg", "nearest-even", "--points", "300", "--output", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let o = ccf(&["render", "--input", path(&csv), "--output", path(&svg), "--overlay"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&svg).unwrap();
    assert!(text.starts_with("<svg"));
    assert_eq!(text.matches("<g id=\"piece-").count(), 8);
    assert!(text.contains("<path"));
}

#[test]
fn render_accepts_an_empty_cloud() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("empty.csv");
    let svg = dir.path().join("empty.svg");
    fs::write(&csv, "# algorithm=disk\npiece,re,im\n").unwrap();
    let o = ccf(&["render", "--input", path(&csv), "--output", path(&svg)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = fs::read_to_string(&svg).unwrap();
    assert_eq!(text.matches("<g id=\"piece-").count(), 5);
    assert!(!text.contains("fill=\"black\""));
}

#[test]
fn render_names_the_malformed_line() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("bad.csv");
    fs::write(&csv, "# algorithm=disk\npiece,re,im\n1,0.1,0.2\n2,zero,0.1\n").unwrap();
    let o = ccf(&["render", "--input", path(&csv), "--output", path(&dir.path().join("x.svg"))]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 4"), "{}", stderr(&o));
}

#[test]
fn refinement_writes_readable_regions() {
    let dir = tempfile::tempdir().unwrap();
    let regions = dir.path().join("ni.txt");
    let o = ccf(&["refine-partition", "--alg", "nearest-integer", "--output", path(&regions)]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("pieces=12"));
    let text = fs::read_to_string(&regions).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("region")).count(), 12);

    let csv = dir.path().join("ni.csv");
    let o = ccf(&["simulate", "--alg", "nearest-integer", "--points", "100", "--output", path(&csv)]);
    assert_eq!(o.status.code(), Some(0));
    let svg = dir.path().join("ni.svg");
    let o = ccf(&["render", "--input", path(&csv), "--output", path(&svg), "--regions", path(&regions)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    let o = ccf(&["refine-partition", "--alg", "nearest-integer", "--stages", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn real_ab_reports_hulls() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("hulls.csv");
    let o = ccf(&["real-ab", "--points", "2000", "--output", path(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert_eq!(stdout(&o).matches("published S(L)").count(), 6);
    let text = fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().count(), 8);
    let o = ccf(&["real-ab", "--a", "-0.5", "--b", "0.1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("invalid parameters"));
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &[][..],
        &["digits", "--alg", "disk"][..],
        &["digits", "--alg", "nearest", "--z", "1", "0"][..],
        &["convergents"][..],
        &["verify-building", "--alg", "disk", "--samples", "0"][..],
        &["verify-bijectivity", "--alg", "nearest-integer", "--samples", "10"][..],
        &["simulate", "--alg", "disk", "--iters", "10", "--burn-in", "20"][..],
        &["render", "--input", "/nonexistent.csv", "--output", "/tmp/x.svg"][..],
        &["real-ab", "--cuts", "0.5", "-0.2"][..],
        &["refine-partition", "--alg", "disk", "--radius", "-1"][..],
    ] {
        let o = ccf(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
        assert!(!stderr(&o).is_empty(), "{args:?}");
    }
    assert_eq!(ccf(&["--help"]).status.code(), Some(0));
}
