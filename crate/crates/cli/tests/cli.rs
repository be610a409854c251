use std::path::Path;
use std::process::{Command, Output};

fn nmkdv(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_nmkdv"))
        .args(args)
        .env("NMKDV_THREADS", "2")
        .output()
        .expect("spawn nmkdv")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn zeros_for_imaginary_pair() {
    let o = nmkdv(&["zeros", "--A", "1", "--B", "0.243", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["case"], "I");
    let zs = v["zeros"].as_array().unwrap();
    assert_eq!(zs.len(), 2);
    let mut ims: Vec<f64> = zs.iter().map(|z| z["im"].as_f64().unwrap()).collect();
    ims.sort_by(f64::total_cmp);
    // Vieta: k1 + k2 = A/2, k1 k2 = B²
    assert!(zs.iter().all(|z| z["re"].as_f64().unwrap() == 0.0));
    assert!((ims[0] + ims[1] - 0.5).abs() < 1e-12);
    assert!((ims[0] * ims[1] - 0.243 * 0.243).abs() < 1e-12);
}

#[test]
fn trace_route_agrees_with_closed_zeros() {
    let json = |src: &str| {
        let o = nmkdv(&["zeros", "--B", "0.26", "--source", src, "--format", "json"]);
        assert_eq!(
            o.status.code(),
            Some(0),
            "{}",
            String::from_utf8_lossy(&o.stderr)
        );
        serde_json::from_slice::<serde_json::Value>(&o.stdout).unwrap()
    };
    let (closed, traced) = (json("closed"), json("trace"));
    assert_eq!(closed["case"], "II");
    assert_eq!(traced["case"], "II");
    for (a, b) in closed["zeros"]
        .as_array()
        .unwrap()
        .iter()
        .zip(traced["zeros"].as_array().unwrap())
    {
        for part in ["re", "im"] {
            let d = a[part].as_f64().unwrap() - b[part].as_f64().unwrap();
            assert!(d.abs() < 1e-8, "{a} {b}");
        }
    }
}

#[test]
fn exit_codes() {
    assert_eq!(
        nmkdv(&["soliton", "--A", "0", "--B", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(nmkdv(&["soliton"]).status.code(), Some(2));
    assert_eq!(
        nmkdv(&["soliton", "--B", "0.243", "--nu1", "1"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nmkdv(&["nonsense"]).status.code(), Some(2));
    assert_eq!(nmkdv(&["verify", "--suite", "99"]).status.code(), Some(2));
    assert_eq!(
        nmkdv(&["figure", "--which", "9", "--out", "x"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(nmkdv(&["--help"]).status.code(), Some(0));
}

#[test]
fn bad_thread_count_is_a_config_error() {
    let o = Command::new(env!("CARGO_BIN_EXE_nmkdv"))
        .args(["zeros", "--B", "0.2"])
        .env("NMKDV_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn verify_reports_each_selected_criterion() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = nmkdv(&["verify", "--suite", "2,4", "--out", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.lines().any(|l| l.starts_with("PASS [ 2]")), "{text}");
    assert!(text.lines().any(|l| l.starts_with("PASS [ 4]")), "{text}");
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["criteria"].as_array().unwrap().len(), 2);
}

fn csv_head(path: &Path) -> (String, String) {
    let text = std::fs::read_to_string(path).unwrap();
    let mut lines = text.lines();
    (
        lines.next().unwrap().to_string(),
        lines.next().unwrap().to_string(),
    )
}

#[test]
fn figure_three_writes_both_normings() {
    let dir = tempfile::tempdir().unwrap();
    let o = nmkdv(&[
        "figure",
        "--which",
        "3",
        "--nx",
        "21",
        "--nt",
        "5",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(
        o.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&o.stderr)
    );
    for name in ["figure3_nu_plus.csv", "figure3_nu_minus.csv"] {
        let path = dir.path().join(name);
        let (comment, header) = csv_head(&path);
        assert!(comment.starts_with("# params: A=1"), "{comment}");
        assert!(comment.contains("case=III~"), "{comment}");
        assert_eq!(header, "x,t,u,masked");
        let rows = std::fs::read_to_string(&path).unwrap().lines().count() - 2;
        assert_eq!(rows, 21 * 5);
    }
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn figure_one_has_four_sign_variants() {
    let dir = tempfile::tempdir().unwrap();
    let o = nmkdv(&[
        "figure",
        "--which",
        "1",
        "--nx",
        "5",
        "--nt",
        "3",
        "--out",
        dir.path().to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 4);
}

#[test]
fn csv_output_is_byte_identical_across_runs() {
    let args = ["soliton", "--B", "0.26", "--nx", "41", "--nt", "11"];
    let first = nmkdv(&args);
    let second = Command::new(env!("CARGO_BIN_EXE_nmkdv"))
        .args(args)
        .env("NMKDV_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let text = stdout(&first);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# params: A=1.0 B=0.26"));
    assert_eq!(lines.next().unwrap(), "x,t,u,masked");
    assert_eq!(lines.count(), 41 * 11);
}

#[test]
fn spectra_marks_branch_points_with_nan() {
    let o = nmkdv(&[
        "spectra", "--B", "0.5", "--kmin", "-0.5", "--kmax", "0.5", "--nk", "3",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().skip(2).collect();
    assert_eq!(rows.len(), 3);
    assert!(rows[0].contains("NaN"), "{}", rows[0]);
    assert!(!rows[1].contains("NaN"), "{}", rows[1]);
}

#[test]
fn blowup_lists_origin_for_singular_double_zero() {
    let o = nmkdv(&["blowup", "--B", "0.25", "--nu1", "1", "--nt", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let roots: Vec<(f64, f64)> = rdr
        .records()
        .map(|r| {
            let r = r.unwrap();
            (r[0].parse().unwrap(), r[3].parse().unwrap())
        })
        .collect();
    assert!(
        roots.iter().any(|&(t, x)| t == 0.0 && x.abs() < 1e-8),
        "{roots:?}"
    );
}

#[test]
fn asymptotics_rejects_nonpositive_time() {
    let o = nmkdv(&["asymptotics", "--B", "0.243", "--tmin", "0", "--tmax", "1"]);
    assert_eq!(o.status.code(), Some(2));
}
