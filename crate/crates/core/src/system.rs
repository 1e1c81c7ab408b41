//! Polynomial systems with strict-positivity side constraints and a split of
//! the variables into unknowns and parameters.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::poly::{MultiPoly, Rational, VarList};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolySystem {
    pub equations: Vec<MultiPoly>,
    pub positives: Vec<MultiPoly>,
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
}

impl PolySystem {
    /// Re-embeds every polynomial over `unknowns ++ parameters` after
    /// checking that no other variable occurs.
    pub fn new<S: AsRef<str>>(
        equations: Vec<MultiPoly>,
        positives: Vec<MultiPoly>,
        unknowns: &[S],
        parameters: &[S],
    ) -> Result<Self> {
        let unknowns: Vec<String> = unknowns.iter().map(|s| s.as_ref().to_string()).collect();
        let parameters: Vec<String> = parameters.iter().map(|s| s.as_ref().to_string()).collect();
        let mut seen = HashSet::new();
        for v in unknowns.iter().chain(&parameters) {
            if !seen.insert(v.as_str()) {
                return Err(Error::Dimension(format!("variable {v} declared twice")));
            }
        }
        let vars = VarList::new(&unknowns.iter().chain(&parameters).collect::<Vec<_>>());
        let embed = |ps: Vec<MultiPoly>| -> Result<Vec<MultiPoly>> { ps.iter().map(|p| p.with_vars(&vars)).collect() };
        Ok(PolySystem { equations: embed(equations)?, positives: embed(positives)?, unknowns, parameters })
    }

    pub fn vars(&self) -> VarList {
        match self.equations.first().or(self.positives.first()) {
            Some(p) => p.vars().clone(),
            None => VarList::new(&self.unknowns.iter().chain(&self.parameters).collect::<Vec<_>>()),
        }
    }

    pub fn nunknowns(&self) -> usize {
        self.unknowns.len()
    }

    /// Fixes every parameter; the result has no parameters and lives over the unknowns.
    pub fn specialize(&self, values: &[Rational]) -> Result<PolySystem> {
        if values.len() != self.parameters.len() {
            return Err(Error::Dimension(format!(
                "{} parameter values for {} parameters",
                values.len(),
                self.parameters.len()
            )));
        }
        let n = self.unknowns.len();
        let assign: Vec<(usize, Rational)> = values.iter().cloned().enumerate().map(|(i, v)| (n + i, v)).collect();
        let uv = VarList::new(&self.unknowns);
        let spec = |p: &MultiPoly| p.specialize(&assign).with_vars(&uv);
        Ok(PolySystem {
            equations: self.equations.iter().map(spec).collect::<Result<_>>()?,
            positives: self.positives.iter().map(spec).collect::<Result<_>>()?,
            unknowns: self.unknowns.clone(),
            parameters: Vec::new(),
        })
    }

    /// Positivity constraints that involve only parameters.
    pub fn parameter_positives(&self) -> Vec<&MultiPoly> {
        let n = self.unknowns.len();
        self.positives.iter().filter(|p| (0..n).all(|i| !p.involves(i))).collect()
    }
}
