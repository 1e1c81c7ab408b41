use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use cuspcad::classifier::Classification;
use cuspcad::manipulator::constraint_polynomials;
use cuspcad::poly::json::rational_str;
use cuspcad::Rational;
use num_traits::Zero;
use serde_json::Value;
use sha2::{Digest, Sha256};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_cuspcad"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn cuspcad")
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn classify_fixture(name: &str, dir: &Path) -> Output {
    run(&["classify", "--system-file", fixture(name).to_str().unwrap(), "--out-dir", dir.to_str().unwrap()])
}

fn load(dir: &Path) -> (Value, Classification) {
    let text = std::fs::read_to_string(dir.join("classification.json")).unwrap();
    let v: Value = serde_json::from_str(&text).unwrap();
    let c: Classification = serde_json::from_value(v["classification"].clone()).unwrap();
    (v, c)
}

fn r(s: &str) -> Rational {
    rational_str::from_str(s).unwrap()
}

#[test]
fn isolate_lists_sorted_intervals() {
    let o = run(&["isolate", "x^2-2"]);
    assert_eq!(o.status.code(), Some(0));
    let lines: Vec<String> = stdout(&o).lines().map(String::from).collect();
    assert_eq!(lines.len(), 2);
    assert!(lines[0].ends_with("-1.414214") && lines[1].ends_with("1.414214"), "{lines:?}");

    let o = run(&["isolate", "x^2+1"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).is_empty());
}

#[test]
fn isolate_boundary_polynomial_json() {
    let o = run(&["isolate", "--json", "8*b^6-11*b^4+6*b^2-1"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "cuspcad.isolate/1");
    let roots = v["roots"].as_array().unwrap();
    assert_eq!(roots.len(), 2);
    let second = &roots[1];
    let (lo, hi) = (r(second["lower"].as_str().unwrap()), r(second["upper"].as_str().unwrap()));
    assert!(lo <= r("533/1000") + r("1/200") && hi >= r("533/1000") - r("1/200"));
    assert!(second["preview"].as_str().unwrap().starts_with("0.53"));
}

#[test]
fn isolate_rejects_bad_input() {
    let o = run(&["isolate", "x^2+*1"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("column 5"));
    let o = run(&["isolate", "x*y-1"]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn classify_square_root_family() {
    let dir = tempfile::tempdir().unwrap();
    let o = classify_fixture("square_root.json", dir.path());
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let (v, c) = load(dir.path());
    assert_eq!(v["schema"], "cuspcad.classification/1");
    let counts: Vec<Option<usize>> = c.cells.iter().map(|c| c.solution_count).collect();
    assert_eq!(counts, vec![Some(0), Some(2)]);
    // exact round trip
    let again: Classification = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
    assert_eq!(again, c);
}

#[test]
fn classify_is_deterministic_and_manifest_digests_match() {
    let a = tempfile::tempdir().unwrap();
    let b = tempfile::tempdir().unwrap();
    assert_eq!(classify_fixture("monic_quadratic.json", a.path()).status.code(), Some(0));
    assert_eq!(classify_fixture("monic_quadratic.json", b.path()).status.code(), Some(0));
    for f in ["classification.json", "cells.csv", "boundary_table.csv"] {
        let x = std::fs::read(a.path().join(f)).unwrap();
        let y = std::fs::read(b.path().join(f)).unwrap();
        assert_eq!(x, y, "{f} differs between runs");
    }
    let m: Value = serde_json::from_str(&std::fs::read_to_string(a.path().join("manifest.json")).unwrap()).unwrap();
    let m2: Value = serde_json::from_str(&std::fs::read_to_string(b.path().join("manifest.json")).unwrap()).unwrap();
    assert_eq!(m["schema"], "cuspcad.manifest/1");
    assert_eq!(m["input_sha256"], m2["input_sha256"]);
    assert_eq!(m["outputs"], m2["outputs"]);
    let outputs = m["outputs"].as_array().unwrap();
    assert_eq!(outputs.len(), 3);
    for o in outputs {
        let bytes = std::fs::read(a.path().join(o["path"].as_str().unwrap())).unwrap();
        assert_eq!(o["sha256"].as_str().unwrap(), hex::encode(Sha256::digest(&bytes)));
    }
}

/// Real roots of `x^2 + b x + c` from the discriminant sign.
fn quadratic_count(b: &Rational, c: &Rational) -> usize {
    let d = b * b - Rational::from_integer(4.into()) * c;
    if d > Rational::zero() {
        2
    } else {
        0
    }
}

#[test]
fn quadratic_cells_match_grid_oracle() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(classify_fixture("monic_quadratic.json", dir.path()).status.code(), Some(0));
    let (_, c) = load(dir.path());
    assert_eq!(c.discriminant_variety.polynomials().len(), 1);
    assert_eq!(c.discriminant_variety.polynomials()[0].to_string(), "b^2-4*c");
    let mut on_boundary = 0;
    for i in -10..=10 {
        for j in -10..=10 {
            let (b, cc) = (Rational::new(i.into(), 3.into()), Rational::new(j.into(), 4.into()));
            match c.lookup(&[b.clone(), cc.clone()]).unwrap() {
                cuspcad::classifier::Lookup::Cell { index } => {
                    assert_eq!(c.cells[index].solution_count, Some(quadratic_count(&b, &cc)), "at ({b}, {cc})")
                }
                cuspcad::classifier::Lookup::Boundary { .. } => {
                    assert!((&b * &b - Rational::from_integer(4.into()) * &cc).is_zero());
                    on_boundary += 1;
                }
                cuspcad::classifier::Lookup::Excluded => panic!("excluded point"),
            }
        }
    }
    assert!(on_boundary > 0);
}

#[test]
fn lookup_and_mesh_read_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(classify_fixture("monic_quadratic.json", dir.path()).status.code(), Some(0));
    let d = dir.path().to_str().unwrap();

    let o = run(&["lookup", "--from", d, "--point", "1,-3"]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "cuspcad.lookup/1");
    assert_eq!(v["result"]["kind"], "cell");
    assert_eq!(v["count"], 2);

    let o = run(&["lookup", "--from", d, "--point", "2,1"]);
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["result"]["kind"], "boundary");

    let o = run(&["mesh", "--from", d, "--surface", "dv", "--grid", "4", "--range", "-2:2"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let mut rows = csv::Reader::from_reader(text.as_bytes());
    let mut n = 0;
    for rec in rows.records() {
        let rec = rec.unwrap();
        let b: f64 = rec[0].parse().unwrap();
        let c: f64 = rec[1].parse().unwrap();
        assert!((c - b * b / 4.0).abs() < 1e-6, "({b}, {c}) off the parabola");
        n += 1;
    }
    assert_eq!(n, 4);
}

#[test]
fn mesh_of_square_root_family_lies_on_its_line() {
    let dir = tempfile::tempdir().unwrap();
    assert_eq!(classify_fixture("square_root.json", dir.path()).status.code(), Some(0));
    let o = run(&["mesh", "--from", dir.path().to_str().unwrap(), "--surface", "dv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "a\n0.000000000\n");
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(run(&["--help"]).status.code(), Some(0));
    assert_eq!(run(&["solve", "--b", "0", "--L2", "2", "--L3", "3", "--rho1", "2"]).status.code(), Some(2));
    let dir = tempfile::tempdir().unwrap();
    let d = dir.path().join("q");
    let guard = run(&[
        "classify",
        "--system-file",
        fixture("monic_quadratic.json").to_str().unwrap(),
        "--out-dir",
        d.to_str().unwrap(),
        "--max-level-degree",
        "1",
    ]);
    assert_eq!(guard.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&guard.stderr).contains("level 2: degree 2"));
    assert!(!d.exists(), "no artifacts on failure");
    assert_eq!(run(&["lookup", "--from", d.to_str().unwrap(), "--point", "0,0"]).status.code(), Some(4));
    assert_eq!(run(&["mesh", "--from", d.to_str().unwrap()]).status.code(), Some(4));
}

#[test]
fn full_manipulator_classification_bails_on_resource_guard() {
    let dir = tempfile::tempdir().unwrap();
    let o = run(&["classify", "--mode", "L2eqL3", "--out-dir", dir.path().to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(3));
}

#[test]
fn positive_dimensional_singularity_fibre_exits_2() {
    let o = run(&["solve", "--system", "singularity", "--b", "2", "--L2", "2", "--L3", "3", "--rho1", "2"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn direct_kinematics_recovers_forward_evaluated_pose() {
    // pose, joints and inputs chosen on rational points of the unit circles
    let point: Vec<(&str, Rational)> = [
        ("x", "30/17"),
        ("y", "16/17"),
        ("ca", "15/17"),
        ("sa", "-8/17"),
        ("rho2", "26/17"),
        ("rho3", "-16/17"),
        ("c2", "1"),
        ("s2", "0"),
        ("c3", "15/17"),
        ("s3", "8/17"),
        ("b", "2"),
        ("L2", "2"),
        ("L3", "3"),
        ("rho1", "2"),
    ]
    .into_iter()
    .map(|(n, v)| (n, r(v)))
    .collect();
    for f in constraint_polynomials() {
        let vals: Vec<Rational> =
            f.vars().names().iter().map(|n| point.iter().find(|(m, _)| m == n).unwrap().1.clone()).collect();
        assert!(f.eval(&vals).unwrap().is_zero(), "forward evaluation violates {f}");
    }
    let o = run(&[
        "solve",
        "--system",
        "constraints",
        "--b",
        "2",
        "--L2",
        "2",
        "--L3",
        "3",
        "--rho1",
        "2",
        "--theta2",
        "1,0",
        "--theta3",
        "15/17,8/17",
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["schema"], "cuspcad.solve/1");
    let hit = v["boxes"].as_array().unwrap().iter().any(|bx| {
        bx["intervals"].as_array().unwrap().iter().all(|e| {
            let name = e["variable"].as_str().unwrap();
            let want = &point.iter().find(|(m, _)| *m == name).unwrap().1;
            let lo = r(e["interval"]["lower"].as_str().unwrap());
            let hi = r(e["interval"]["upper"].as_str().unwrap());
            lo <= *want && *want <= hi
        })
    });
    assert!(hit, "no box contains the forward-evaluated pose");
}

#[test]
fn reference_instance_has_sixteen_cusps() {
    let inst: Value = serde_json::from_str(&std::fs::read_to_string(fixture("cusp_instance.json")).unwrap()).unwrap();
    let d = &inst["design"];
    let o = run(&[
        "solve",
        "--b",
        d["b"].as_str().unwrap(),
        "--L2",
        d["L2"].as_str().unwrap(),
        "--L3",
        d["L3"].as_str().unwrap(),
        "--rho1",
        d["rho1"].as_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["count"], inst["real_cusp_count"]);
    assert!(String::from_utf8_lossy(&o.stderr).contains("16 real solutions"));
}
