use std::process::{Command, Output};

fn twinrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twinrank")).args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn verify_identities_passes_and_reports_genus_bounds() {
    let o = twinrank(&["verify-identities"]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(!s.contains("FAIL"));
    assert!(s.contains("deg g = 6 -> 2"));
    assert!(s.contains("genus_bound thm51: deg g = 12 -> 5"));
    assert!(s.contains("genus_bound thm53: deg g = 12 -> 5"));
}

#[test]
fn perturbation_fails_only_that_point() {
    let o = twinrank(&["verify-identities", "--family", "thm51", "--perturb", "thm51:P3"]);
    assert_eq!(o.status.code(), Some(1));
    let fails: Vec<String> = stdout(&o).lines().filter(|l| l.starts_with("FAIL")).map(str::to_string).collect();
    assert!(fails.iter().all(|l| l.contains("P3")), "{fails:?}");
    assert!(fails.iter().any(|l| l.contains("P3 on E2^g")));
}

#[test]
fn custom_pipeline_file() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("pipe.toml");
    std::fs::write(
        &p,
        "lambda1 = \"-(α^2+1)^2/(α^2-1)^2\"\nlambda2 = \"(α^2+1)^2/(4*α^2)\"\n\
         h1 = \"(-(α^2+1)^2/(α^2-1)^2)*z/((1-(α^2+1)^2/(α^2-1)^2)*z+(α^2+1)^2/(α^2-1)^2)\"\n\
         h2 = \"((α^2+1)^2/(4*α^2))*z/((1+(α^2+1)^2/(4*α^2))*z-(α^2+1)^2/(4*α^2))\"\n\
         t = \"(α^2-1)*t/(α*(t^2-2))\"\n\
         g = \"(t^4+4)*(t^4*(α^2-1)^2 + 4*t^2*(α^2+1)^2 + 4*(α^2-1)^2)*(α^2*t^4 - (α^2+1)^2*t^2 + 4*α^2)\"\n",
    )
    .unwrap();
    let o = twinrank(&["verify-identities", "--family", "custom", "--pipeline", p.to_str().unwrap()]);
    let s = stdout(&o);
    assert_eq!(o.status.code(), Some(0), "{s}");
    assert!(s.contains("PASS  custom pipeline: f1(z(t)) = g mod squares"));
    assert_eq!(twinrank(&["verify-identities", "--family", "custom"]).status.code(), Some(2));
}

#[test]
fn usage_errors_exit_two() {
    let o = twinrank(&["generate", "--alpha", "1"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("alpha must avoid {0, 1, -1}"));
    assert_eq!(twinrank(&["generate"]).status.code(), Some(2));
    assert_eq!(twinrank(&["generate", "--alpha", "2", "--family", "custom"]).status.code(), Some(2));
    assert_eq!(twinrank(&["bogus"]).status.code(), Some(2));
    assert_eq!(twinrank(&["inspect", "legendre(1)"]).status.code(), Some(2));
    assert_eq!(twinrank(&["inspect", "cubic(1, 2)"]).status.code(), Some(2));
}

#[test]
fn inspect_reports() {
    let s = stdout(&twinrank(&["inspect", "legendre(-25/9)"]));
    assert!(s.contains("legendre orbit: {-25/9, -9/25, 9/34, 25/34, 34/25, 34/9}"), "{s}");
    assert!(s.contains("j-invariant: 51645087424/14630625"));
    let s = stdout(&twinrank(&["inspect", "quartic(4,0,-25,0,16)"]));
    assert!(s.contains("rational point: (0/1, 4/1)"), "{s}");
    assert!(s.contains("weierstrass image"));
    let s = stdout(&twinrank(&["inspect", "weierstrass(-37611, 2266650)"]));
    assert!(s.contains("model: y^2 = x^3 + (-37611)*x + (2266650)"), "{s}");
    let s = stdout(&twinrank(&["inspect", "legendre(-25/9, -7)"]));
    assert!(s.contains("twist d = -7/1, square class -7"), "{s}");
}

#[test]
fn config_file_and_flag_overrides() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "alpha = \"3\"\ncount = 1\nfamily = \"thm53\"\nrelation_bound = 2\n").unwrap();
    let out = dir.path().join("o.jsonl");
    let o = twinrank(&["generate", "--config", cfg.to_str().unwrap(), "--out", out.to_str().unwrap(), "--doublings", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let file = twinrank::output::CertificateFile::read(&out).unwrap();
    assert_eq!(file.header.config.relation_bound, 2);
    assert_eq!(file.header.config.doublings, 3);
    assert_eq!(file.header.alpha, "3/1");
    assert_eq!(file.records.len(), 1);
    assert_eq!(file.records[0].independence[0].relation_scan_bound, 2);
    let csv = std::fs::read_to_string(out.with_extension("csv")).unwrap();
    assert_eq!(csv.lines().count(), 2);
    assert!(csv.starts_with("index,n,m,t,d_squarefree"));
    assert_eq!(twinrank(&["recheck", out.to_str().unwrap()]).status.code(), Some(0));

    std::fs::write(&cfg, "tolerance = 0.0\nalpha = \"3\"\n").unwrap();
    assert_eq!(twinrank(&["generate", "--config", cfg.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn recheck_rejects_garbage() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("junk.jsonl");
    std::fs::write(&p, "{\"not\": \"a header\"}\n").unwrap();
    let o = twinrank(&["recheck", p.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("schema violation"));
}
