use gfq_regular::cli::{run, EXIT_OK, EXIT_SIZE, EXIT_USAGE};
use gfq_regular::format::parse_matrix;

fn tmp(name: &str) -> std::path::PathBuf {
    let dir = std::env::temp_dir().join(format!("gfqreg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn gfqreg(args: &[&str]) -> (i32, String) {
    run(std::iter::once("gfqreg").chain(args.iter().copied()))
}

fn verdict(out: &str) -> &str {
    out.lines().last().unwrap().strip_prefix("VERDICT: ").unwrap()
}

#[test]
fn gen_writes_a_readable_fano_plane() {
    let (code, out) = gfqreg(&["gen", "pg", "3", "2"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(verdict(&out), "OK");
    let f = parse_matrix(&out).unwrap();
    assert_eq!(f.mat.cols(), 7);
    assert_eq!(gfqreg(&["gen", "pg", "3", "2"]).1, out);
}

#[test]
fn decide_obstruction_is_bad() {
    let path = tmp("o.mat");
    let (code, _) = gfqreg(&["gen", "obstruction", "3", "2", "-o", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_OK);
    let (code, out) = gfqreg(&["decide", path.to_str().unwrap(), "--pg", "p1..p7"]);
    assert_eq!(code, EXIT_OK, "{out}");
    assert_eq!(verdict(&out), "BAD");
    assert!(out.contains("certificate verified"));
}

#[test]
fn decide_bar_family() {
    let path = tmp("b.mat");
    gfqreg(&["gen", "bar", "3", "2", "-o", path.to_str().unwrap()]);
    let (code, out) = gfqreg(&["decide", path.to_str().unwrap(), "--pg", "p1..p7"]);
    assert_eq!(code, EXIT_OK);
    assert_eq!(verdict(&out), "BAR");
}

#[test]
fn tangle_and_connectivity_verbs() {
    let path = tmp("pg.mat");
    gfqreg(&["gen", "pg", "4", "2", "-o", path.to_str().unwrap()]);
    let p = path.to_str().unwrap();
    let (code, out) = gfqreg(&["tangle", p, "--order", "4"]);
    assert_eq!((code, verdict(&out)), (EXIT_OK, "TANGLE"));
    assert_eq!(verdict(&gfqreg(&["connectivity", p]).1), "ROUND");
    let (_, out) = gfqreg(&["connectivity", p, "--kappa", "p1,p2", "--with", "p3..p5"]);
    assert!(verdict(&out).starts_with("KAPPA="));
}

#[test]
fn exit_codes() {
    assert_eq!(gfqreg(&["bogus"]).0, EXIT_USAGE);
    assert_eq!(gfqreg(&["decide", "/nonexistent/file", "--pg", "p1"]).0, EXIT_USAGE);
    assert_eq!(gfqreg(&["decide", "x", "--pg", "p3..p1"]).0, EXIT_USAGE);
    let path = tmp("big.mat");
    gfqreg(&["gen", "pg", "5", "2", "-o", path.to_str().unwrap()]);
    let (code, out) = gfqreg(&["representable", path.to_str().unwrap(), "--fields", "2"]);
    assert_eq!(code, EXIT_SIZE, "{out}");
    assert_eq!(verdict(&out), "SIZE_BOUND");
}

#[test]
fn malformed_files_report_the_line() {
    let path = tmp("bad.mat");
    std::fs::write(&path, "field 2 1 1 1\n2 2\n0 1\n1 7\n").unwrap();
    let (code, out) = gfqreg(&["connectivity", path.to_str().unwrap()]);
    assert_eq!(code, EXIT_USAGE);
    assert!(out.contains("line 4"), "{out}");
}
