use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_affmult"));
    c.env_remove("AFFMULT_PRECISION");
    c
}

fn write(name: &str, text: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("affmult-e2e-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn run(args: &[&str], file: &PathBuf) -> Output {
    bin().args(args).arg(file).output().unwrap()
}

fn lines(out: &Output) -> Vec<serde_json::Value> {
    String::from_utf8(out.stdout.clone())
        .unwrap()
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

const F4_JOB: &str = r#"
checks = ["signed_dim_sum", "signed_qdim_sum", "gkrs"]
[ambient]
type = "F4"
[pair]
steps = [4]
[weight]
finite = ["0", "0", "0", "0"]
"#;

#[test]
fn f4_b4_job_verifies() {
    let out = run(&["verify"], &write("f4.toml", F4_JOB));
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let recs = lines(&out);
    let names: Vec<&str> = recs.iter().map(|r| r["check"].as_str().unwrap()).collect();
    assert_eq!(names, ["gkrs", "signed_dim_sum", "signed_qdim_sum"]);
    for r in &recs {
        assert_eq!(r["status"], "verified");
        assert_eq!(r["params"]["pair"], "F4 > B4");
    }
}

#[test]
fn twisted_a1_vsf_residual_zero() {
    let job = "checks = [\"vsf\"]\n[ambient]\ntype = \"A\"\nrank = 1\n[aut]\ns = [1, 1]\n";
    let out = run(&["verify"], &write("a1.toml", job));
    assert_eq!(out.status.code(), Some(0));
    let recs = lines(&out);
    assert_eq!(recs[0]["status"], "verified");
    assert_eq!(recs[0]["residual"], "0");
    assert_eq!(recs[0]["params"]["aut"], "(1,1;1)");
}

#[test]
fn unknown_check_lists_registry() {
    let job = "checks = [\"foo\"]\n[ambient]\ntype = \"A1\"\n";
    let out = run(&["verify"], &write("foo.toml", job));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    for name in ["vsf", "gkrs", "hwk", "asdim", "masterrho"] {
        assert!(err.contains(name), "{err}");
    }
}

#[test]
fn parse_error_has_position() {
    let out = run(&["verify"], &write("broken.toml", "checks = [\"vsf\"\n[ambient]\n"));
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("line"), "{err}");
}

#[test]
fn empty_grid_exits_2() {
    let grid = "checks = [\"vsf\"]\ntypes = [\"G\"]\nranks = [5]\n";
    let out = run(&["sweep"], &write("empty.toml", grid));
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn vsf_sweep_verifies() {
    let grid = "checks = [\"vsf\"]\ntypes = [\"A\", \"B\", \"C\", \"D\", \"F\", \"G\"]\nmax_rank = 4\nmax_order = 6\n";
    let out = run(&["sweep", "--format", "table"], &write("vsf.toml", grid));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("violated  "), "{text}");
    assert!(text.contains("0 violated"), "{text}");
}

#[test]
fn unclosed_exits_3() {
    let job = "checks = [\"affine_multiplet\"]\n[ambient]\ntype = \"A1\"\n[pair]\nkind = \"torus\"\n[weight]\nlevel = \"1\"\n";
    let out = run(&["verify", "--max-length", "3"], &write("torus.toml", job));
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(lines(&out)[0]["status"], "unclosed");
}

#[test]
fn improper_pair_is_inapplicable() {
    let job = "checks = [\"signed_dim_sum\", \"asdim\"]\n[ambient]\ntype = \"A2\"\n[weight]\nlevel = \"1\"\n[cutoffs]\nmax_length = 4\n";
    let out = run(&["verify"], &write("improper.toml", job));
    assert_eq!(out.status.code(), Some(0));
    assert!(lines(&out).iter().all(|r| r["status"] == "inapplicable"));
}

#[test]
fn reports_are_deterministic() {
    let f = write("det.toml", F4_JOB);
    let strip = |out: Output| -> Vec<serde_json::Value> {
        let mut v = lines(&out);
        for r in &mut v {
            r.as_object_mut().unwrap().remove("wall_ms");
        }
        v
    };
    let a = strip(run(&["verify"], &f));
    let b = strip(run(&["verify"], &f));
    assert_eq!(a, b);
}

#[test]
fn precision_from_environment() {
    let job = "checks = [\"asdim\"]\n[ambient]\ntype = \"G2\"\n[pair]\nsteps = [2]\n[weight]\nlevel = \"1\"\n[cutoffs]\nmax_length = 30\n";
    let f = write("prec.toml", job);
    let out = bin()
        .env("AFFMULT_PRECISION", "512")
        .arg("verify")
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(lines(&out)[0]["params"]["precision"], 512);
    let out = bin()
        .env("AFFMULT_PRECISION", "64")
        .arg("verify")
        .arg(&f)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn multiplet_table_lists_members() {
    let job = "checks = [\"gkrs\"]\n[ambient]\ntype = \"G2\"\n[pair]\nsteps = [1]\n";
    let out = run(&["multiplet", "--format", "table"], &write("mult.toml", job));
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 3, "{text}");
}
