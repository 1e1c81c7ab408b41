//! Classification of a parametric system over its parameter space: the
//! discriminant variety, an open CAD of its complement, and a real solution
//! count per cell.

mod cad;
mod count;
mod dv;
mod table;

use serde::{Deserialize, Serialize};

pub use cad::{
    cad_lift, cad_project, cad_project_with, cell_lookup, gcd_free_basis, interior_points, mesh_points, sign_at, Bound,
    Cell, Fibre, LevelStep, Lookup, ProjectionStack,
};
pub use count::{check_covering, count_at, count_per_cell, retain_positive, CoveringReport, CoveringViolation};
pub use dv::{discriminant_variety, discriminant_variety_with, Component, DiscriminantVariety, DvOptions, Provenance};
pub use table::{emit_boundary_table, write_cells_csv, write_points_csv, BoundaryTable, Bracket, TableEntry, TableRow};

use crate::error::{Error, Result};
use crate::system::PolySystem;

pub const DEFAULT_DEGREE_GUARD: usize = 150;

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub dv: DvOptions,
    pub degree_guard: Option<usize>,
    /// Projection order of the parameters, innermost (level 1) first;
    /// defaults to the declared order.
    pub parameter_order: Option<Vec<String>>,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { dv: DvOptions::default(), degree_guard: Some(DEFAULT_DEGREE_GUARD), parameter_order: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Classification {
    pub system: PolySystem,
    pub discriminant_variety: DiscriminantVariety,
    pub stack: ProjectionStack,
    pub cells: Vec<Cell>,
    /// Cells dropped because their sample violates a parameter positivity constraint.
    pub discarded: usize,
}

impl Classification {
    pub fn lookup(&self, point: &[crate::poly::Rational]) -> Result<Lookup> {
        cell_lookup(&self.cells, &self.stack, point)
    }

    pub fn boundary_table(&self) -> Result<BoundaryTable> {
        emit_boundary_table(&self.cells, &self.stack)
    }
}

/// Reorders the parameters of `sys`.
pub fn with_parameter_order(sys: &PolySystem, order: &[String]) -> Result<PolySystem> {
    let mut a = order.to_vec();
    let mut b = sys.parameters.clone();
    a.sort();
    b.sort();
    if a != b {
        return Err(Error::Configuration(format!(
            "parameter order {order:?} is not a permutation of {:?}",
            sys.parameters
        )));
    }
    PolySystem::new(sys.equations.clone(), sys.positives.clone(), &sys.unknowns, order)
}

/// The whole pipeline: discriminant variety, projection, lifting, positivity
/// filter and per-cell counts.
pub fn classify(sys: &PolySystem, opts: &ClassifyOptions) -> Result<Classification> {
    let sys = match &opts.parameter_order {
        Some(order) => with_parameter_order(sys, order)?,
        None => sys.clone(),
    };
    let dv = discriminant_variety_with(&sys, &opts.dv)?;
    log::info!("discriminant variety: {} components", dv.components.len());
    let stack = cad_project_with(&dv.polynomials(), &sys.parameters, opts.degree_guard)?;
    log::info!("projection degrees {:?}", stack.degrees());
    let cells = cad_lift(&stack)?;
    let (cells, discarded) = retain_positive(&sys, cells)?;
    let cells = count_per_cell(&sys, &cells)?;
    Ok(Classification { system: sys, discriminant_variety: dv, stack, cells, discarded })
}
