use cuspcad::interval::{eval_multi, Interval};
use cuspcad::manipulator::{
    constraint_polynomials, cusp_system_for, direct_kinematics, singularity_conditions, unit_circles, AngleInput,
    ManipulatorDesign,
};
use cuspcad::poly::Binding;
use cuspcad::solver::{count_real_solutions, solve_zero_dim, SolutionBox, SolveOptions};
use cuspcad::{MultiPoly, PolySystem, Rational};
use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn r(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn design(b: Rational, l2: Rational, l3: Rational, rho1: Rational) -> ManipulatorDesign {
    ManipulatorDesign::numeric(b, l2, l3, Some(rho1))
}

/// Enclosure of `p` over a box, with parameters fixed by `design`.
fn enclose(p: &MultiPoly, bx: &SolutionBox, d: &ManipulatorDesign) -> Interval {
    let fixed = |name: &str| match name {
        "b" => d.b.clone(),
        "L2" => d.l2.clone(),
        "L3" => d.l3.clone(),
        "rho1" => d.rho1.clone(),
        _ => None,
    };
    let ivs: Vec<Interval> = p
        .vars()
        .names()
        .iter()
        .map(|n| bx.get(n).cloned().unwrap_or_else(|| Interval::point(fixed(n).expect("known parameter"))))
        .collect();
    eval_multi(p, &ivs)
}

#[test]
fn cusp_boxes_lie_on_the_singularity_locus_and_the_unit_circles() {
    let d = design(r(2, 1), r(2, 1), r(2, 1), r(2, 1));
    let sys = cusp_system_for(&d).unwrap().sys;
    let boxes = solve_zero_dim(&sys, &SolveOptions::default()).unwrap();
    assert_eq!(boxes.len(), 16);
    let sing = singularity_conditions();
    let circles = unit_circles();
    for bx in &boxes {
        for p in sing.iter().chain(&circles) {
            assert!(enclose(p, bx, &d).contains_zero(), "{p} misses 0 on {bx:?}");
        }
    }
}

/// `(y, sa, s2, s3, rho3) -> -(y, sa, s2, s3, rho3)` maps the model to itself.
fn mirrored(sys: &PolySystem) -> PolySystem {
    let vars = sys.vars();
    let flips: Vec<(&str, Binding)> = ["y", "sa", "s2", "s3", "rho3"]
        .iter()
        .map(|n| (*n, Binding::Poly(-MultiPoly::var(&vars, n).unwrap())))
        .collect();
    let eqs = sys.equations.iter().map(|p| p.substitute(&flips).unwrap()).collect();
    PolySystem::new(eqs, sys.positives.clone(), &sys.unknowns, &sys.parameters).unwrap()
}

#[test]
fn mirror_image_preserves_the_cusp_count() {
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let values = [r(3, 2), r(5, 4), r(7, 4), r(2, 1), r(5, 2), r(9, 4)];
    for _ in 0..3 {
        let mut pick = || values.choose(&mut rng).unwrap().clone();
        let d = design(pick(), pick(), pick(), pick());
        let sys = cusp_system_for(&d).unwrap().sys;
        let image = mirrored(&sys);
        assert_ne!(image.equations, sys.equations, "substitution had no effect");
        assert_eq!(count_real_solutions(&sys), count_real_solutions(&image), "at {d:?}");
    }
}

#[test]
fn direct_kinematics_poses_satisfy_the_constraints() {
    let d = design(r(2, 1), r(2, 1), r(3, 1), r(2, 1));
    let poses = direct_kinematics(&d, &r(2, 1), &AngleInput::Radians(-2.5), &AngleInput::Radians(-0.8)).unwrap();
    assert!(!poses.is_empty());
    let constraints = constraint_polynomials();
    for pose in &poses {
        let mut bx = pose.solution.clone();
        // inputs are fixed values in the direct problem
        let (c2, s2) = AngleInput::Radians(-2.5).pair();
        let (c3, s3) = AngleInput::Radians(-0.8).pair();
        for (name, v) in [("c2", c2), ("s2", s2), ("c3", c3), ("s3", s3)] {
            bx.variables.push(name.into());
            bx.intervals.push(Interval::point(v));
        }
        for f in &constraints {
            assert!(enclose(f, &bx, &d).contains_zero(), "{f} misses 0 at pose {:?}", (pose.x, pose.y, pose.alpha));
        }
        let rho1_sq = pose.x * pose.x + pose.y * pose.y;
        assert!((rho1_sq - 4.0).abs() < 1e-2);
    }
}

#[test]
fn direct_kinematics_recovers_an_exact_rational_pose() {
    // x = 30/17, y = 16/17, alpha with (15/17, -8/17), theta2 = 0, theta3 with (15/17, 8/17)
    let d = design(r(2, 1), r(2, 1), r(3, 1), r(2, 1));
    let poses =
        direct_kinematics(&d, &r(2, 1), &AngleInput::Pair(r(1, 1), r(0, 1)), &AngleInput::Pair(r(15, 17), r(8, 17)))
            .unwrap();
    let want = [
        ("x", r(30, 17)),
        ("y", r(16, 17)),
        ("ca", r(15, 17)),
        ("sa", r(-8, 17)),
        ("rho2", r(26, 17)),
        ("rho3", r(-16, 17)),
    ];
    let hits =
        poses.iter().filter(|p| want.iter().all(|(n, v)| p.solution.get(n).is_some_and(|iv| iv.contains(v)))).count();
    assert_eq!(hits, 1);
    // forward evaluation of the same point is exact
    let point = |name: &str| -> Rational {
        match name {
            "c2" => r(1, 1),
            "s2" => Rational::zero(),
            "c3" => r(15, 17),
            "s3" => r(8, 17),
            "b" | "L2" | "rho1" => r(2, 1),
            "L3" => r(3, 1),
            n => want.iter().find(|(m, _)| *m == n).unwrap().1.clone(),
        }
    };
    for f in constraint_polynomials() {
        let vals: Vec<Rational> = f.vars().names().iter().map(|n| point(n)).collect();
        assert!(f.eval(&vals).unwrap().is_zero());
    }
}
