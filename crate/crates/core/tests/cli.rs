use std::path::Path;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_monstrous"))
        .args(args)
        .env_remove("MONSTROUS_ORDER")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn expand_2b() {
    let o = run(&["expand", "--class", "2B", "--order", "12"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let mut lines = out.lines();
    assert!(lines.next().unwrap().contains("N=2"));
    assert_eq!(lines.next().unwrap(), "m\tc(m,0)\tc(1,m/N)");
    assert_eq!(lines.next().unwrap(), "1\t24\t4096");
    assert_eq!(lines.next().unwrap(), "2\t0\t98304");
    assert!(lines.next().unwrap().starts_with("3\t24\t"));
    assert_eq!(out.lines().count(), 14);
}

#[test]
fn expand_4d_json() {
    let o = run(&["expand", "--class", "4D", "--order", "12", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["ell"], 2);
    assert_eq!(v["N"], 8);
    assert_eq!(v["prefactor"], "64");
}

#[test]
fn order_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_monstrous"))
        .args(["expand", "--class", "2B"])
        .env("MONSTROUS_ORDER", "5")
        .output()
        .unwrap();
    assert_eq!(stdout(&o).lines().count(), 2 + 5);
}

#[test]
fn bad_inputs_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let empty = write(dir.path(), "empty.toml", "");
    assert_eq!(run(&["expand", "--class-file", &empty]).status.code(), Some(2));
    let nonzero_weight = write(dir.path(), "w.toml", "[[class]]\nlabel = \"w\"\nfactors = [[1, 24]]\n");
    assert_eq!(run(&["expand", "--class-file", &nonzero_weight]).status.code(), Some(2));
    assert_eq!(run(&["expand", "--class", "5A"]).status.code(), Some(2));
    assert_eq!(run(&["expand"]).status.code(), Some(2));
    assert_eq!(run(&["mults", "--class", "2B", "--box", "0", "3"]).status.code(), Some(2));
    assert_eq!(run(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(run(&["freelie-oracle", "--matrix", "0,-1;-1,0"]).status.code(), Some(2));
    assert_eq!(run(&["freelie-oracle", "--matrix", "0,x"]).status.code(), Some(2));
    let missing = dir.path().join("no/such/dir/out.svg");
    let o = run(&["plot", "--class", "2B", "-o", missing.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn perturbed_class_fails_verify() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "perturbed.toml",
        "[[class]]\nlabel = \"2B-perturbed\"\nfactors = [[1, 24], [2, -24]]\ncm0_override = [[1, 25]]\n",
    );
    let o = run(&["verify", "--class-file", &f, "--box", "6", "6"]);
    assert_eq!(o.status.code(), Some(1));
    let out = stdout(&o);
    let line = out.lines().find(|l| l.starts_with("product-vs-structure")).unwrap();
    assert!(line.contains("FAIL") && line.contains("first at (1, 0/2)"), "{line}");
    assert!(out.lines().last().unwrap().starts_with("overall\tFAIL"));
}

#[test]
fn verify_passes_and_is_machine_readable() {
    let o = run(&["verify", "--class", "4D", "--box", "8", "8", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
    assert_eq!(v["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn verify_with_adams_file() {
    let dir = tempfile::tempdir().unwrap();
    let f = write(
        dir.path(),
        "fam.toml",
        "N = 2\nkmax = 4\naxis = [[1, 1, 24, 1], [2, 1, 8, 1], [1, 3, 24, 1]]\ncolumn = [[1, 1, 4096, 1], [2, 1, 0, 1], [1, 2, 1, 3]]\n",
    );
    let o = run(&["verify", "--class", "2B", "--box", "4", "4", "--adams-file", &f]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let f = write(dir.path(), "short.toml", "N = 2\nkmax = 2\n");
    let o = run(&["verify", "--class", "2B", "--box", "4", "4", "--adams-file", &f]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn mults_tables_and_routes() {
    let a = run(&["mults", "--class", "2B", "--box", "4", "3", "--route", "product"]);
    let b = run(&["mults", "--class", "2B", "--box", "4", "3", "--route", "structure"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let out = stdout(&a);
    assert_eq!(out.lines().next().unwrap(), "m\tn\tN\tmultiplicity");
    assert!(out.contains("\n2\t1\t2\t98304\n"));
    let both = run(&["mults", "--class", "2B", "--box", "4", "3", "--route", "both"]);
    assert_eq!(both.status.code(), Some(0));
}

#[test]
fn output_file_and_determinism() {
    let dir = tempfile::tempdir().unwrap();
    let p1 = dir.path().join("a.svg");
    let p2 = dir.path().join("b.svg");
    for p in [&p1, &p2] {
        let o = run(&["plot", "--class", "2B", "--box", "7", "4", "-o", p.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(0));
        assert!(o.stdout.is_empty());
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    let svg = String::from_utf8(a).unwrap();
    assert_eq!(svg.matches("<circle").count(), 32);
}

#[test]
fn cartan_and_fricke_commands() {
    let o = run(&["cartan", "--class", "2B", "--mmax", "3", "--nmax", "3"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("axioms\tPASS"));
    assert!(out.contains("row-relations\tPASS"));
    let o = run(&["fricke", "--class", "2B", "--order", "8"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\n2\t2/2\t98304\t98304\n"));
}

#[test]
fn freelie_oracle_command() {
    let o = run(&["freelie-oracle", "--matrix", "0,-1;-1,-2", "--maxdeg", "5"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("\n(3,2)\t2\t2\n"));
    let o = run(&["freelie-oracle", "--random", "3", "--seed", "4", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["passed"], true);
}

#[test]
fn sample_class_file() {
    let f = concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/classes.toml");
    for label in ["2B", "4D", "2B-sequences"] {
        let o = run(&["verify", "--class-file", f, "--label", label, "--box", "8", "8"]);
        assert_eq!(o.status.code(), Some(0), "{label}: {}", stdout(&o));
    }
    let o = run(&["verify", "--class-file", f, "--label", "2B-perturbed", "--box", "4", "4"]);
    assert_eq!(o.status.code(), Some(1));
    let a = run(&["expand", "--class-file", f, "--label", "2B", "--order", "8"]);
    let b = run(&["expand", "--class-file", f, "--label", "2B-sequences", "--order", "8"]);
    let body = |o: &Output| stdout(o).lines().skip(1).collect::<Vec<_>>().join("\n");
    assert_eq!(body(&a), body(&b));
}
