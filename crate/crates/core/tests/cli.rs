use std::path::{Path, PathBuf};

use widthkc::cli::run;

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("examples/data")
        .join(name)
        .display()
        .to_string()
}

fn scratch(name: &str) -> PathBuf {
    let dir = Path::new(env!("CARGO_TARGET_TMPDIR")).join(name);
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("widthkc").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (
        code,
        String::from_utf8(out).unwrap(),
        String::from_utf8(err).unwrap(),
    )
}

fn json(line: &str) -> serde_json::Value {
    serde_json::from_str(line).unwrap()
}

#[test]
fn count_wmc_enum() {
    let (code, out, _) = call(&["count", &data("scov2.cnf")]);
    assert_eq!((code, out.trim()), (0, "9"));

    let (code, out, _) = call(&["wmc", "--p", "0.5", &data("sint2.dnf")]);
    assert_eq!((code, out.trim()), (0, "0.4375"));

    let (code, out, _) = call(&["enum", &data("scov1.cnf")]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 3);
}

#[test]
fn compile_tree_writes_artifacts_under_the_ceiling() {
    let dir = scratch("cli_tree");
    let d = dir.display().to_string();
    let (code, out, _) = call(&[
        "compile",
        "--mode",
        "tree",
        "--verify",
        "--out",
        &d,
        &data("scov4.cnf"),
    ]);
    assert_eq!(code, 0);
    let r = json(out.lines().next().unwrap());
    let width = r["target_width"].as_u64().unwrap() as u128;
    let ceiling: u128 = r["ceiling"].as_str().unwrap().parse().unwrap();
    assert!(width <= ceiling);
    for ext in ["nnf", "vtree", "rho"] {
        assert!(dir.join(format!("scov4.{ext}")).exists(), "{ext}");
    }

    let nnf = dir.join("scov4.nnf").display().to_string();
    let (code, out, _) = call(&["count", &nnf]);
    assert_eq!((code, out.trim()), (0, "81"));
}

#[test]
fn compile_path_verifies_chain() {
    let d = scratch("cli_path").display().to_string();
    let (code, out, _) = call(&[
        "compile",
        "--mode",
        "path",
        "--verify",
        "--out",
        &d,
        &data("chain.circ"),
    ]);
    assert_eq!(code, 0);
    let r = json(out.lines().next().unwrap());
    assert_eq!(
        r["verification"]["verdict"],
        "equivalent, unambiguous, complete"
    );
    assert_eq!(r["verification"]["passed"], true);
    let bdd = Path::new(&d).join("chain.bdd").display().to_string();
    let (code, out, _) = call(&["count", &bdd]);
    let want = (0u32..32)
        .filter(|m| {
            let b = |i: u32| (m >> i) & 1 == 1;
            ((b(0) && b(1)) || b(2)) && b(3) || !b(4)
        })
        .count();
    assert_eq!((code, out.trim().to_string()), (0, want.to_string()));
}

#[test]
fn analyze_reports_exact_splitwidth() {
    let (code, out, _) = call(&["analyze", &data("scov3.cnf")]);
    assert_eq!(code, 0);
    let r = json(out.lines().next().unwrap());
    assert_eq!(r["psw"], 1);
    assert_eq!(r["vertices"], 6);
}

#[test]
fn lowerbound_places_width_between_floor_and_ceiling() {
    let (code, out, _) = call(&["lowerbound", "--order", "xfirst", &data("scov6.cnf")]);
    assert_eq!(code, 0);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), widthkc::lowerbounds::CSV_HEADER);
    let row: Vec<&str> = lines.next().unwrap().split(',').collect();
    let floor: f64 = row[6].parse().unwrap();
    let observed: f64 = row[7].parse().unwrap();
    let ceiling: f64 = row[8].parse().unwrap();
    assert!(floor <= observed && observed <= ceiling);
    assert_eq!(row[9], "consistent");
}

#[test]
fn gen_writes_seeded_dimacs() {
    let dir = scratch("cli_gen");
    let file = dir.join("s3.cnf").display().to_string();
    let (code, _, _) = call(&["gen", "scov", "3", "--out", &file]);
    assert_eq!(code, 0);
    let text = std::fs::read_to_string(&file).unwrap();
    assert!(text.lines().any(|l| l.starts_with("c seed")));
    let f = widthkc::logic::parse::parse_dimacs(&text).unwrap();
    assert_eq!((f.variables().len(), f.clauses().len()), (6, 3));
}

#[test]
fn exit_codes() {
    let (code, _, err) = call(&["count", "/nonexistent/x.cnf"]);
    assert_eq!(code, 2);
    assert!(!err.is_empty());

    let dir = scratch("cli_exit");
    let bad = dir.join("bad.circ");
    std::fs::write(&bad, "g1 FROB\n").unwrap();
    assert_eq!(call(&["count", &bad.display().to_string()]).0, 2);

    assert_eq!(call(&["frobnicate"]).0, 2);

    let (code, out, _) = call(&[
        "compile",
        "--kcap",
        "0",
        "--out",
        &dir.display().to_string(),
        &data("scov2.cnf"),
    ]);
    assert_eq!(code, 3);
    assert!(out.is_empty());
}

#[test]
fn repeated_runs_are_byte_identical() {
    let a = scratch("cli_rep_a").display().to_string();
    let b = scratch("cli_rep_b").display().to_string();
    let src = data("sint4.dnf");
    let (_, out_a, _) = call(&["compile", "--mode", "tree", "--out", &a, &src]);
    let (_, out_b, _) = call(&["compile", "--mode", "tree", "--out", &b, &src]);
    assert_eq!(out_a.replace(&a, ""), out_b.replace(&b, ""));
    for ext in ["nnf", "vtree", "rho"] {
        let name = format!("sint4.{ext}");
        assert_eq!(
            std::fs::read(Path::new(&a).join(&name)).unwrap(),
            std::fs::read(Path::new(&b).join(&name)).unwrap()
        );
    }
    for args in [
        vec!["analyze", &src],
        vec!["enum", &src],
        vec!["lowerbound", &src],
    ] {
        assert_eq!(call(&args).1, call(&args).1);
    }
}
