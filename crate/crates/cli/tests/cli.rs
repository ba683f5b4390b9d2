use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn permcode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_permcode")).args(args).output().unwrap()
}

fn problem(dir: &Path, name: &str, text: &str) -> String {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

fn rows(matrix: &str) -> Vec<&str> {
    matrix.lines().skip(1).filter(|l| !l.trim().is_empty()).collect()
}

const Z7: &str = "# regular Z7\nq = 2^1\nn = 7\ngen = 1 2 3 4 5 6 0\n";

#[test]
fn construct_transitive_z7() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", Z7);
    let out = dir.path().join("c.txt");
    let o = permcode(&["construct", "--mode", "transitive", "--in", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = fs::read_to_string(&out).unwrap();
    let r = rows(&m);
    assert_eq!(r.len(), 3);
    assert!(m.lines().next().unwrap().starts_with("q=2"));
    let report = fs::read_to_string(dir.path().join("c.txt.report")).unwrap();
    assert!(report.contains("hull_plus_e"));
}

#[test]
fn mode_aliases() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", Z7);
    for (mode, alias) in [("transitive", "theorem3"), ("abelian", "lemma8")] {
        let a = dir.path().join(format!("{mode}.txt"));
        let b = dir.path().join(format!("{alias}.txt"));
        for (m, p) in [(mode, &a), (alias, &b)] {
            let o = permcode(&["construct", "--mode", m, "--in", &input, "--out", p.to_str().unwrap()]);
            assert_eq!(o.status.code(), Some(0), "{m}: {}", String::from_utf8_lossy(&o.stderr));
        }
        assert_eq!(rows(&fs::read_to_string(&a).unwrap()).len(), 3);
        assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    }
}

#[test]
fn selfdual_z3_fails_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z3.txt", "q = 2^1\nn = 3\ngen = 1 2 0\n");
    let out = dir.path().join("c.txt");
    let o = permcode(&["construct", "--mode", "selfdual", "--in", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(!out.exists());
    let report = fs::read_to_string(dir.path().join("c.txt.report")).unwrap();
    assert!(report.contains("multiplicity"), "{report}");
}

#[test]
fn selfdual_two_copies() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z3z3.txt", "q = 2^1\nn = 6\ngen = 1 2 0 4 5 3\n");
    let out = dir.path().join("c.txt");
    let o = permcode(&["construct", "--in", &input, "--out", out.to_str().unwrap(), "--seed", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&fs::read_to_string(&out).unwrap()).len(), 3);
}

#[test]
fn extend_from_code_file_and_problem() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", Z7);
    let c = dir.path().join("c.txt");
    let o = permcode(&["construct", "--mode", "transitive", "--in", &input, "--out", c.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let ext = dir.path().join("ext.txt");
    let o = permcode(&["extend", "--code", c.to_str().unwrap(), "--out", ext.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let m = fs::read_to_string(&ext).unwrap();
    let r = rows(&m);
    assert_eq!(r.len(), 4);
    assert!(r.iter().all(|l| l.split_whitespace().count() == 8 || l.trim().len() == 8));

    let o = permcode(&["verify", "--code", ext.to_str().unwrap(), "--in", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert!(String::from_utf8_lossy(&o.stdout).contains("self_dual"));

    let ext2 = dir.path().join("ext2.txt");
    let o = permcode(&["extend", "--in", &input, "--out", ext2.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read(&ext).unwrap(), fs::read(&ext2).unwrap());
}

#[test]
fn extend_flag_in_problem() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", &format!("{Z7}extend = true\n"));
    let out = dir.path().join("c.txt");
    let o = permcode(&["construct", "--mode", "transitive", "--in", &input, "--out", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(rows(&fs::read_to_string(&out).unwrap()).len(), 4);
}

#[test]
fn extend_without_root_fails() {
    let dir = tempfile::tempdir().unwrap();
    let gen: Vec<String> = (1..=13).map(|i| (i % 13).to_string()).collect();
    let input = problem(dir.path(), "z13.txt", &format!("q = 3^1\nn = 13\ngen = {}\n", gen.join(" ")));
    let o = permcode(&["extend", "--in", &input]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn dual_and_verify() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", Z7);
    let c = dir.path().join("c.txt");
    permcode(&["construct", "--mode", "transitive", "--in", &input, "--out", c.to_str().unwrap()]);
    let d = dir.path().join("d.txt");
    let o = permcode(&["dual", "--code", c.to_str().unwrap(), "--in", &input, "--out", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    assert_eq!(rows(&fs::read_to_string(&d).unwrap()).len(), 4);
    let o = permcode(&["verify", "--code", c.to_str().unwrap(), "--in", &input]);
    assert_eq!(o.status.code(), Some(0));
    // the dual contains the all-ones word, so it is neither
    let o = permcode(&["verify", "--code", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn analyze_and_search() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "z7.txt", Z7);
    let o = permcode(&["analyze", "--in", &input]);
    assert_eq!(o.status.code(), Some(0));
    let text = String::from_utf8_lossy(&o.stdout);
    assert!(text.contains("operation: analyze"));
    assert!(text.contains("multiplicity"));
    let o = permcode(&["search", "--mode", "hull", "--in", &input]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let o = permcode(&["search", "--in", &input]);
    assert_eq!(o.status.code(), Some(1));
    let o = permcode(&["search", "--in", &input, "--budget", "4"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn parse_and_usage_errors() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("q = 2^1\nn = 3\ngen = 0 0 1\n", "bijection"),
        ("q = 3^1\nn = 3\ngen = 1 2 0\n", "gcd(|G|, q) = 1"),
        ("q = 6\nn = 3\n", "line 1"),
        ("n = 3\n", "line 1"),
    ];
    for (i, (text, needle)) in cases.iter().enumerate() {
        let input = problem(dir.path(), &format!("bad{i}.txt"), text);
        let o = permcode(&["construct", "--in", &input]);
        assert_eq!(o.status.code(), Some(2), "{text:?}");
        let err = String::from_utf8_lossy(&o.stderr);
        assert!(err.contains(needle), "{err}");
    }
    assert_eq!(permcode(&["construct"]).status.code(), Some(2));
    assert_eq!(permcode(&["bogus"]).status.code(), Some(2));
    assert_eq!(permcode(&["construct", "--in", "/nonexistent/x"]).status.code(), Some(2));
    assert_eq!(permcode(&["construct", "--mode", "nope", "--in", "x"]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let input = problem(dir.path(), "f21.txt", "q = 2^1\nn = 7\ngen = 1 2 3 4 5 6 0\ngen = 0 2 4 6 1 3 5\n");
    let mut files = Vec::new();
    for run in 0..2 {
        for mode in ["selfdual", "transitive"] {
            let out = dir.path().join(format!("{mode}{run}.txt"));
            let o = permcode(&["construct", "--mode", mode, "--seed", "11", "--in", &input, "--out", out.to_str().unwrap()]);
            files.push((o.status.code(), out));
        }
    }
    for k in 0..2 {
        let (ca, a) = &files[k];
        let (cb, b) = &files[k + 2];
        assert_eq!(ca, cb);
        let ra = fs::read(format!("{}.report", a.display())).unwrap();
        let rb = fs::read(format!("{}.report", b.display())).unwrap();
        assert_eq!(ra, rb);
        if *ca == Some(0) {
            assert_eq!(fs::read(a).unwrap(), fs::read(b).unwrap());
        }
    }
}
