use cuspcad::classifier::{check_covering, classify, count_at, ClassifyOptions, Lookup, Provenance};
use cuspcad::{MultiPoly, PolySystem, Rational, VarList};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn system(eqs: &[&str], positives: &[&str], unknowns: &[&str], params: &[&str]) -> PolySystem {
    let all: Vec<&str> = unknowns.iter().chain(params).copied().collect();
    let v = VarList::new(&all);
    let p = |s: &&str| MultiPoly::parse(s, &v).unwrap();
    PolySystem::new(eqs.iter().map(p).collect(), positives.iter().map(p).collect(), unknowns, params).unwrap()
}

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

#[test]
fn circle_meets_line() {
    let sys = system(&["x^2+y^2-s", "x-y-t"], &[], &["x", "y"], &["s", "t"]);
    let c = classify(&sys, &ClassifyOptions::default()).unwrap();
    let counts: Vec<usize> = c.cells.iter().map(|c| c.solution_count.unwrap()).collect();
    assert!(counts.iter().all(|n| *n == 0 || *n == 2), "{counts:?}");
    assert!(counts.contains(&0) && counts.contains(&2));
    assert!(check_covering(&c.system, &c.stack, &c.cells, 5, 1).unwrap().holds());

    // grid oracle: the line meets the circle twice iff 2s - t^2 > 0
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..500 {
        let s = r(rng.gen_range(-200..=200), rng.gen_range(1..=30));
        let t = r(rng.gen_range(-200..=200), rng.gen_range(1..=30));
        let disc = r(2, 1) * &s - &t * &t;
        match c.lookup(&[s.clone(), t.clone()]).unwrap() {
            Lookup::Cell { index } => {
                let want = if disc > Rational::zero() { 2 } else { 0 };
                assert_eq!(c.cells[index].solution_count, Some(want), "at ({s}, {t})");
            }
            Lookup::Boundary { .. } => assert!(disc.is_zero()),
            Lookup::Excluded => panic!("nothing is excluded without positivity"),
        }
    }
}

#[test]
fn parameter_order_changes_the_stack_not_the_answer() {
    let sys = system(&["x^2+b*x+c"], &[], &["x"], &["b", "c"]);
    let swapped = ClassifyOptions { parameter_order: Some(vec!["c".into(), "b".into()]), ..ClassifyOptions::default() };
    let c = classify(&sys, &swapped).unwrap();
    assert_eq!(c.stack.parameters, vec!["c", "b"]);
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let b = r(rng.gen_range(-60..=60), rng.gen_range(1..=9));
        let cc = r(rng.gen_range(-60..=60), rng.gen_range(1..=9));
        if let Lookup::Cell { index } = c.lookup(&[cc.clone(), b.clone()]).unwrap() {
            assert_eq!(c.cells[index].solution_count.unwrap(), count_at(&sys, &[b, cc]).unwrap());
        }
    }
}

#[test]
fn positivity_constraints_drop_cells() {
    // x^2 = a with a > 0 imposed: only the two-solution side survives
    let sys = system(&["x^2-a"], &["a"], &["x"], &["a"]);
    let c = classify(&sys, &ClassifyOptions::default()).unwrap();
    assert_eq!(c.discarded, 1);
    assert_eq!(c.cells.len(), 1);
    assert_eq!(c.cells[0].solution_count, Some(2));
    assert_eq!(c.lookup(&[r(-1, 1)]).unwrap(), Lookup::Excluded);
    assert!(c
        .discriminant_variety
        .components
        .iter()
        .any(|comp| comp.provenance == Provenance::InequalityBoundary || comp.provenance == Provenance::CriticalLocus));
}

#[test]
fn positive_unknown_constraint_counts_only_positive_roots() {
    let sys = system(&["x^2-a"], &["x"], &["x"], &["a"]);
    let c = classify(&sys, &ClassifyOptions::default()).unwrap();
    let counts: Vec<usize> = c.cells.iter().map(|c| c.solution_count.unwrap()).collect();
    assert_eq!(counts, vec![0, 1]);
}

#[test]
fn degree_guard_trips() {
    let sys = system(&["x^2+b*x+c"], &[], &["x"], &["b", "c"]);
    let opts = ClassifyOptions { degree_guard: Some(1), ..ClassifyOptions::default() };
    let err = classify(&sys, &opts).unwrap_err();
    assert!(matches!(err, cuspcad::Error::DegreeGuard { level: 2, degree: 2, limit: 1 }), "{err}");
}

#[test]
fn boundary_table_groups_by_first_interval() {
    let sys = system(&["x^2+y^2-s", "x-y-t"], &[], &["x", "y"], &["s", "t"]);
    let c = classify(&sys, &ClassifyOptions::default()).unwrap();
    let table = c.boundary_table().unwrap();
    let positive = c.cells.iter().filter(|c| c.solution_count.unwrap() > 0).count();
    assert_eq!(table.entry_count(), positive);
    let mut csv = Vec::new();
    table.write_csv(&mut csv).unwrap();
    let text = String::from_utf8(csv).unwrap();
    assert!(text.starts_with("s_lower,s_upper,cell,count,t_lower,t_upper"));
    assert!(text.contains("Root(P"));
}
