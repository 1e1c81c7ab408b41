//! Tabular exports: cells grouped by their first-level interval, and flat CSV.

use std::io::Write;

use serde::{Deserialize, Serialize};

use super::cad::{Bound, Cell, ProjectionStack};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bracket {
    pub lower: Bound,
    pub upper: Bound,
    pub lower_label: String,
    pub upper_label: String,
}

impl Bracket {
    fn new(level: usize, lower: &Bound, upper: &Bound) -> Self {
        Bracket {
            lower: lower.clone(),
            upper: upper.clone(),
            lower_label: lower.label(level),
            upper_label: upper.label(level),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableEntry {
    pub cell: usize,
    pub count: usize,
    /// Brackets for levels 2 and up.
    pub brackets: Vec<Bracket>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableRow {
    pub interval: Bracket,
    pub entries: Vec<TableEntry>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundaryTable {
    pub parameters: Vec<String>,
    /// Factor definitions per level, named `P<level>_<k>` in the brackets.
    pub factors: Vec<Vec<String>>,
    pub rows: Vec<TableRow>,
}

impl BoundaryTable {
    pub fn entry_count(&self) -> usize {
        self.rows.iter().map(|r| r.entries.len()).sum()
    }

    /// One line per entry: the level-1 interval, count, then one
    /// `lower,upper` pair per further level.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut out = csv::Writer::from_writer(w);
        let mut header = vec![
            format!("{}_lower", self.parameters[0]),
            format!("{}_upper", self.parameters[0]),
            "cell".into(),
            "count".into(),
        ];
        for p in &self.parameters[1..] {
            header.push(format!("{p}_lower"));
            header.push(format!("{p}_upper"));
        }
        out.write_record(&header).map_err(io_err)?;
        for row in &self.rows {
            for e in &row.entries {
                let mut rec = vec![
                    row.interval.lower_label.clone(),
                    row.interval.upper_label.clone(),
                    e.cell.to_string(),
                    e.count.to_string(),
                ];
                for b in &e.brackets {
                    rec.push(b.lower_label.clone());
                    rec.push(b.upper_label.clone());
                }
                out.write_record(&rec).map_err(io_err)?;
            }
        }
        out.flush().map_err(|e| Error::Configuration(e.to_string()))
    }
}

fn io_err(e: csv::Error) -> Error {
    Error::Configuration(format!("csv output failed: {e}"))
}

/// Groups cells with a positive count by their first-level interval.
pub fn emit_boundary_table(cells: &[Cell], stack: &ProjectionStack) -> Result<BoundaryTable> {
    let mut rows: Vec<(usize, TableRow)> = Vec::new();
    for (k, c) in cells.iter().enumerate() {
        let count = c.solution_count.ok_or_else(|| Error::Domain(format!("cell {k} has no solution count")))?;
        if count == 0 {
            continue;
        }
        let first = &c.path[0];
        let entry = TableEntry {
            cell: k,
            count,
            brackets: c.path.iter().enumerate().skip(1).map(|(l, s)| Bracket::new(l, &s.lower, &s.upper)).collect(),
        };
        match rows.iter_mut().find(|(i, _)| *i == first.lower_index) {
            Some((_, row)) => row.entries.push(entry),
            None => rows.push((
                first.lower_index,
                TableRow { interval: Bracket::new(0, &first.lower, &first.upper), entries: vec![entry] },
            )),
        }
    }
    rows.sort_by_key(|(i, _)| *i);
    Ok(BoundaryTable {
        parameters: stack.parameters.clone(),
        factors: stack.levels.iter().map(|l| l.iter().map(|p| p.to_string()).collect()).collect(),
        rows: rows.into_iter().map(|(_, r)| r).collect(),
    })
}

/// One CSV line per cell: index, count, exact sample, decimal sample, brackets.
pub fn write_cells_csv<W: Write>(cells: &[Cell], parameters: &[String], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    let mut header: Vec<String> = vec!["cell".into(), "count".into()];
    for p in parameters {
        header.push(format!("{p}_sample"));
    }
    for p in parameters {
        header.push(format!("{p}_approx"));
    }
    for p in parameters {
        header.push(format!("{p}_lower"));
        header.push(format!("{p}_upper"));
    }
    out.write_record(&header).map_err(io_err)?;
    for (k, c) in cells.iter().enumerate() {
        let mut rec = vec![k.to_string(), c.solution_count.map_or(String::new(), |n| n.to_string())];
        rec.extend(c.sample.iter().map(|x| x.to_string()));
        rec.extend(c.sample_f64().iter().map(|x| format!("{x:.6}")));
        for (l, s) in c.path.iter().enumerate() {
            rec.push(s.lower.label(l));
            rec.push(s.upper.label(l));
        }
        out.write_record(&rec).map_err(io_err)?;
    }
    out.flush().map_err(|e| Error::Configuration(e.to_string()))
}

pub fn write_points_csv<W: Write>(points: &[Vec<f64>], parameters: &[String], w: W) -> Result<()> {
    let mut out = csv::Writer::from_writer(w);
    out.write_record(parameters).map_err(io_err)?;
    for p in points {
        out.write_record(p.iter().map(|x| format!("{x:.9}"))).map_err(io_err)?;
    }
    out.flush().map_err(|e| Error::Configuration(e.to_string()))
}
