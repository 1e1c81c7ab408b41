//! Inputs shared by the kernel benchmarks.

use cuspcad::manipulator::ManipulatorDesign;
use cuspcad::{MultiPoly, PolySystem, Rational, VarList};

pub fn parse(text: &str, names: &[&str]) -> MultiPoly {
    MultiPoly::parse(text, &VarList::new(names)).expect("benchmark polynomial")
}

/// Design with the reference cusp instance's link lengths.
pub fn reference_design() -> ManipulatorDesign {
    let two = Rational::from_integer(2.into());
    ManipulatorDesign::numeric(two.clone(), two.clone(), Rational::from_integer(3.into()), Some(two))
}

pub fn circle_line() -> PolySystem {
    let names = ["x", "y", "s", "t"];
    let eqs = vec![parse("x^2+y^2-s", &names), parse("x-y-t", &names)];
    PolySystem::new(eqs, vec![], &["x", "y"], &["s", "t"]).expect("benchmark system")
}

/// Polynomials whose second root bounds the design intervals.
pub const BOUNDARY_POLYNOMIALS: [&str; 8] = [
    "8*b^6-11*b^4+6*b^2-1",
    "4*b^2+b^6-3*b^4-1",
    "b^8+3*b^6+3*b^4+b^2-1",
    "-2*b^4+b^6+3*b^2-1",
    "2*b^2+b^6-3*b^4-1",
    "b^8-b^6-3*b^4-3*b^2-1",
    "-4*b^4+b^6+3*b^2-1",
    "b^6-6*b^4+11*b^2-8",
];
