//! Algebraic model of the RPR-2PRR planar parallel manipulator: constraint,
//! singularity and cusp systems in unit-circle variables, plus instance
//! kinematics.
//!
//! Angles are replaced by `(cos, sin)` pairs tied by `c^2 + s^2 = 1`, so the
//! pose/joint space of dimension 7 (x, y, alpha, rho2, rho3, theta2, theta3)
//! becomes 10 polynomial unknowns.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::groebner::{elimination_ideal, jacobian_minors_with, Derivation};
use crate::poly::{rat, MultiPoly, Rational, VarList};
use crate::solver::{solve_zero_dim, SolutionBox, SolveOptions};
use crate::system::PolySystem;

pub const UNKNOWNS: [&str; 10] = ["x", "y", "ca", "sa", "rho2", "rho3", "c2", "s2", "c3", "s3"];
pub const PARAMETERS: [&str; 4] = ["b", "L2", "L3", "rho1"];

/// `(angle, cos variable, sin variable)`.
pub const ANGLES: [(&str, &str, &str); 3] = [("alpha", "ca", "sa"), ("theta2", "c2", "s2"), ("theta3", "c3", "s3")];

/// Link lengths with `a = 1`; `None` marks a symbolic value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ManipulatorDesign {
    #[serde(with = "opt_rat")]
    pub b: Option<Rational>,
    #[serde(rename = "L2", with = "opt_rat")]
    pub l2: Option<Rational>,
    #[serde(rename = "L3", with = "opt_rat")]
    pub l3: Option<Rational>,
    #[serde(with = "opt_rat", default)]
    pub rho1: Option<Rational>,
}

mod opt_rat {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::poly::json::rational_str;
    use crate::poly::Rational;

    pub fn serialize<S: Serializer>(r: &Option<Rational>, s: S) -> Result<S::Ok, S::Error> {
        match r {
            Some(v) => s.serialize_some(&rational_str::to_string(v)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Rational>, D::Error> {
        let v: Option<String> = Option::deserialize(d)?;
        v.map(|s| rational_str::from_str(&s).ok_or_else(|| serde::de::Error::custom(format!("bad rational {s:?}"))))
            .transpose()
    }
}

impl ManipulatorDesign {
    pub fn symbolic() -> Self {
        ManipulatorDesign { b: None, l2: None, l3: None, rho1: None }
    }

    pub fn numeric(b: Rational, l2: Rational, l3: Rational, rho1: Option<Rational>) -> Self {
        ManipulatorDesign { b: Some(b), l2: Some(l2), l3: Some(l3), rho1 }
    }

    fn value(&self, name: &str) -> Option<&Rational> {
        match name {
            "b" => self.b.as_ref(),
            "L2" => self.l2.as_ref(),
            "L3" => self.l3.as_ref(),
            "rho1" => self.rho1.as_ref(),
            _ => None,
        }
    }

    /// Parameters left symbolic, in the canonical order `b, L2, L3, rho1`.
    pub fn symbolic_parameters(&self) -> Vec<&'static str> {
        PARAMETERS.iter().copied().filter(|p| self.value(p).is_none()).collect()
    }

    pub fn validate(&self) -> Result<()> {
        for p in PARAMETERS {
            if let Some(v) = self.value(p) {
                if *v <= rat(0) {
                    return Err(Error::Domain(format!("{p} must be positive, got {v}")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SystemKind {
    Constraints,
    Singularity,
    Cusp,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DesignMode {
    /// `L3` identified with `L2`; parameters `[b, L2, rho1]`.
    L2EqL3,
    General,
}

#[derive(Clone, Debug)]
pub struct AlgebraizedSystem {
    pub sys: PolySystem,
    pub angle_map: Vec<(String, String, String)>,
    pub origin: SystemKind,
}

fn full_ring() -> VarList {
    let names: Vec<&str> = UNKNOWNS.iter().chain(PARAMETERS.iter()).copied().collect();
    VarList::new(&names)
}

fn parse(s: &str, vars: &VarList) -> MultiPoly {
    MultiPoly::parse(s, vars).expect("built-in model polynomial")
}

/// `f1..f5` over all unknowns and parameters, with `a = 1`.
pub fn constraint_polynomials() -> Vec<MultiPoly> {
    let v = full_ring();
    ["rho1^2-x^2-y^2", "x-rho2-L2*c2+b*ca", "y-L2*s2+b*sa", "x-L3*c3+ca", "y-rho3-L3*s3+sa"]
        .iter()
        .map(|s| parse(s, &v))
        .collect()
}

pub fn unit_circles() -> Vec<MultiPoly> {
    let v = full_ring();
    ANGLES.iter().map(|(_, c, s)| parse(&format!("{c}^2+{s}^2-1"), &v)).collect()
}

/// Columns of the Jacobian along `Y = [x, y, alpha, rho2, rho3]`.
pub fn pose_derivations() -> Vec<Derivation> {
    vec![
        Derivation::partial("x"),
        Derivation::partial("y"),
        Derivation::Circle { cos: "ca".into(), sin: "sa".into() },
        Derivation::partial("rho2"),
        Derivation::partial("rho3"),
    ]
}

/// `J_5(S, Y)`: the five constraints and the Jacobian determinant.
pub fn singularity_conditions() -> Vec<MultiPoly> {
    jacobian_minors_with(&constraint_polynomials(), &pose_derivations(), 5).expect("5x5 Jacobian")
}

/// `J_5(J_5(S, Y), Y)`: twelve polynomials.
pub fn cusp_conditions() -> Vec<MultiPoly> {
    jacobian_minors_with(&singularity_conditions(), &pose_derivations(), 5).expect("6x5 Jacobian")
}

fn assemble(design: &ManipulatorDesign, conditions: Vec<MultiPoly>, origin: SystemKind) -> Result<AlgebraizedSystem> {
    design.validate()?;
    let symbolic = design.symbolic_parameters();
    let assign: Vec<(usize, Rational)> = PARAMETERS
        .iter()
        .enumerate()
        .filter_map(|(i, p)| design.value(p).map(|v| (UNKNOWNS.len() + i, v.clone())))
        .collect();
    let mut equations: Vec<MultiPoly> = conditions.iter().map(|p| p.specialize(&assign)).collect();
    equations.extend(unit_circles());
    let full = full_ring();
    let positives: Vec<MultiPoly> = symbolic.iter().map(|p| MultiPoly::var(&full, p).unwrap()).collect();
    let sys = PolySystem::new(equations, positives, &UNKNOWNS, &symbolic)?;
    Ok(AlgebraizedSystem {
        sys,
        angle_map: ANGLES.iter().map(|(a, c, s)| (a.to_string(), c.to_string(), s.to_string())).collect(),
        origin,
    })
}

pub fn build_constraints(design: &ManipulatorDesign) -> Result<AlgebraizedSystem> {
    assemble(design, constraint_polynomials(), SystemKind::Constraints)
}

pub fn singularity_system(design: &ManipulatorDesign) -> Result<AlgebraizedSystem> {
    assemble(design, singularity_conditions(), SystemKind::Singularity)
}

pub fn cusp_system_for(design: &ManipulatorDesign) -> Result<AlgebraizedSystem> {
    assemble(design, cusp_conditions(), SystemKind::Cusp)
}

/// Fully symbolic cusp system; in `L2EqL3` mode `L3` is replaced by `L2`.
pub fn cusp_system(mode: DesignMode) -> Result<PolySystem> {
    let full = full_ring();
    let conditions = cusp_conditions();
    let mut equations: Vec<MultiPoly> = match mode {
        DesignMode::General => conditions,
        DesignMode::L2EqL3 => {
            let l2 = MultiPoly::var(&full, "L2")?;
            conditions
                .iter()
                .map(|p| p.substitute(&[("L3", crate::poly::Binding::Poly(l2.clone()))]))
                .collect::<Result<_>>()?
        }
    };
    equations.extend(unit_circles());
    let params: Vec<&str> = match mode {
        DesignMode::General => PARAMETERS.to_vec(),
        DesignMode::L2EqL3 => vec!["b", "L2", "rho1"],
    };
    let positives = params.iter().map(|p| MultiPoly::var(&full, p)).collect::<Result<_>>()?;
    PolySystem::new(equations, positives, &UNKNOWNS, &params)
}

/// An input angle: an exact `(cos, sin)` pair or radians approximated to `1e-6`.
#[derive(Clone, Debug)]
pub enum AngleInput {
    Pair(Rational, Rational),
    Radians(f64),
}

impl AngleInput {
    pub fn pair(&self) -> (Rational, Rational) {
        match self {
            AngleInput::Pair(c, s) => (c.clone(), s.clone()),
            AngleInput::Radians(t) => (approx(t.cos()), approx(t.sin())),
        }
    }
}

/// Nearest rational with denominator `10^6`.
pub fn approx(x: f64) -> Rational {
    let n = (x * 1e6).round() as i64;
    Rational::new(n.into(), 1_000_000.into())
}

/// Solution of the direct kinematic problem.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Pose {
    pub solution: SolutionBox,
    pub x: f64,
    pub y: f64,
    pub alpha: f64,
    pub rho2: f64,
    pub rho3: f64,
}

/// All real poses `(x, y, alpha, rho2, rho3)` for fixed inputs.
pub fn direct_kinematics(
    design: &ManipulatorDesign,
    rho1: &Rational,
    theta2: &AngleInput,
    theta3: &AngleInput,
) -> Result<Vec<Pose>> {
    let (Some(b), Some(l2), Some(l3)) = (&design.b, &design.l2, &design.l3) else {
        return Err(Error::Domain("direct kinematics needs a numeric design".into()));
    };
    let d = ManipulatorDesign::numeric(b.clone(), l2.clone(), l3.clone(), Some(rho1.clone()));
    d.validate()?;
    let (c2, s2) = theta2.pair();
    let (c3, s3) = theta3.pair();
    let full = full_ring();
    let mut assign: Vec<(usize, Rational)> = Vec::new();
    for (name, v) in [
        ("c2", c2),
        ("s2", s2),
        ("c3", c3),
        ("s3", s3),
        ("b", b.clone()),
        ("L2", l2.clone()),
        ("L3", l3.clone()),
        ("rho1", rho1.clone()),
    ] {
        assign.push((full.require(name)?, v));
    }
    let mut eqs: Vec<MultiPoly> = constraint_polynomials().iter().map(|p| p.specialize(&assign)).collect();
    eqs.push(parse("ca^2+sa^2-1", &full));
    let unknowns = ["x", "y", "ca", "sa", "rho2", "rho3"];
    let sys = PolySystem::new(eqs, vec![], &unknowns, &[])?;
    let boxes = solve_zero_dim(&sys, &SolveOptions::default())?;
    Ok(boxes
        .into_iter()
        .map(|bx| {
            let m = |v: &str| bx.midpoint_f64(v).unwrap_or(f64::NAN);
            Pose { x: m("x"), y: m("y"), alpha: m("sa").atan2(m("ca")), rho2: m("rho2"), rho3: m("rho3"), solution: bx }
        })
        .collect())
}

/// Eliminates `x, y, rho2, rho3` from the constraints, leaving a relation in
/// the inputs, the parameters and the pose angle's `(ca, sa)` pair.
pub fn eliminate_to_univariate(mode: DesignMode) -> Result<MultiPoly> {
    let mut s = constraint_polynomials();
    if mode == DesignMode::L2EqL3 {
        let l2 = MultiPoly::var(&full_ring(), "L2")?;
        s = s.iter().map(|p| p.substitute(&[("L3", crate::poly::Binding::Poly(l2.clone()))])).collect::<Result<_>>()?;
    }
    let e = elimination_ideal(&s, &["x", "y", "rho2", "rho3"])?;
    let g = e
        .into_iter()
        .min_by_key(|p| (p.total_degree(), p.len()))
        .ok_or_else(|| Error::Configuration("elimination left the zero ideal".into()))?;
    g.with_vars(&full_ring())
}

/// `(g, D g, D^2 g)` with `D = ca d/dsa - sa d/dca`.
pub fn triple_root_conditions(g: &MultiPoly) -> Result<[MultiPoly; 3]> {
    let d = Derivation::Circle { cos: "ca".into(), sin: "sa".into() };
    let g1 = d.apply(g)?;
    let g2 = d.apply(&g1)?;
    Ok([g.clone(), g1, g2])
}
