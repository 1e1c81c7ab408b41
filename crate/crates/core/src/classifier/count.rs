//! Real solution counts per cell and the covering-property check.

use num_traits::Signed;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cad::{interior_points, Cell, ProjectionStack};
use crate::error::{Error, Result};
use crate::poly::json::rational_vec;
use crate::poly::Rational;
use crate::solver::count_real_solutions;
use crate::system::PolySystem;

/// Real solutions of `sys` with its parameters fixed to `point`.
pub fn count_at(sys: &PolySystem, point: &[Rational]) -> Result<usize> {
    let spec = sys.specialize(point)?;
    count_real_solutions(&spec).map_err(|e| match e {
        Error::NotZeroDimensional(m) => Error::NotZeroDimensional(format!(
            "fibre over {} is not finite ({m}); the point lies on the discriminant variety",
            show(point)
        )),
        e => e,
    })
}

pub fn count_per_cell(sys: &PolySystem, cells: &[Cell]) -> Result<Vec<Cell>> {
    cells
        .par_iter()
        .map(|c| {
            let mut c = c.clone();
            c.solution_count = Some(count_at(sys, &c.sample)?);
            Ok(c)
        })
        .collect()
}

/// Keeps the cells whose sample satisfies every parameter-only positivity
/// constraint; returns the kept cells and the number removed.
pub fn retain_positive(sys: &PolySystem, cells: Vec<Cell>) -> Result<(Vec<Cell>, usize)> {
    let n = sys.nunknowns();
    let positives = sys.parameter_positives();
    let before = cells.len();
    let mut kept = Vec::with_capacity(before);
    for c in cells {
        let assign: Vec<(usize, Rational)> = c.sample.iter().cloned().enumerate().map(|(i, v)| (n + i, v)).collect();
        let ok = positives.iter().all(|q| q.specialize(&assign).constant_value().is_some_and(|v| v.is_positive()));
        if ok {
            kept.push(c);
        }
    }
    let removed = before - kept.len();
    Ok((kept, removed))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoveringViolation {
    pub cell: usize,
    #[serde(with = "rational_vec")]
    pub point: Vec<Rational>,
    pub expected: usize,
    pub found: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CoveringReport {
    pub cells: usize,
    pub points: usize,
    pub violations: Vec<CoveringViolation>,
}

impl CoveringReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Counts at `per_cell` random interior points of every counted cell must
/// equal the cell's count. Each cell draws from its own seeded stream.
pub fn check_covering(
    sys: &PolySystem,
    stack: &ProjectionStack,
    cells: &[Cell],
    per_cell: usize,
    seed: u64,
) -> Result<CoveringReport> {
    let per: Vec<(usize, Vec<CoveringViolation>)> = cells
        .par_iter()
        .enumerate()
        .map(|(k, c)| {
            let expected = match c.solution_count {
                Some(n) => n,
                None => count_at(sys, &c.sample)?,
            };
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (k as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
            let points = interior_points(stack, c, per_cell, &mut rng)?;
            let mut bad = Vec::new();
            for p in &points {
                let found = count_at(sys, p)?;
                if found != expected {
                    bad.push(CoveringViolation { cell: k, point: p.clone(), expected, found });
                }
            }
            Ok((points.len(), bad))
        })
        .collect::<Result<_>>()?;
    let mut report = CoveringReport { cells: cells.len(), ..Default::default() };
    for (n, bad) in per {
        report.points += n;
        report.violations.extend(bad);
    }
    Ok(report)
}

fn show(point: &[Rational]) -> String {
    format!("({})", point.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
}
