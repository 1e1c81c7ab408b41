use std::fmt;
use std::io::Write;
use std::path::Path;
use std::time::Instant;

use anyhow::anyhow;
use cuspcad::classifier::{
    self, gcd_free_basis, mesh_points, write_cells_csv, write_points_csv, ClassifyOptions, DvOptions, ProjectionStack,
};
use cuspcad::manipulator::{
    cusp_system, cusp_system_for, direct_kinematics, singularity_system, AngleInput, DesignMode, ManipulatorDesign,
};
use cuspcad::poly::json::rational_str;
use cuspcad::solver::{solve_zero_dim, SolutionBox, SolveOptions};
use cuspcad::univariate::isolate_real_roots;
use cuspcad::{Error, MultiPoly, PolySystem, Rational};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::artifacts::*;
use crate::{ClassifyArgs, MeshArgs, ModeArg, SolveArgs, SurfaceArg, SystemArg};

/// An error with the process exit code it maps to.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

impl Failure {
    pub fn usage(msg: impl fmt::Display) -> Self {
        Failure { code: 1, error: anyhow!("{msg}") }
    }

    fn missing(e: anyhow::Error) -> Self {
        Failure { code: 4, error: e }
    }

    fn io(e: anyhow::Error) -> Self {
        Failure { code: 1, error: e }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::Parse { .. } => 1,
            Error::DegreeGuard { .. } => 3,
            _ => 2,
        };
        Failure { code, error: e.into() }
    }
}

type Outcome = Result<(), Failure>;

fn rational(s: &str) -> Result<Rational, Failure> {
    parse_rational(s).map_err(Failure::usage)
}

fn show(r: &Rational) -> String {
    rational_str::to_string(r)
}

fn preview(r: &Rational) -> String {
    format!("{:.6}", r.to_f64().unwrap_or(f64::NAN))
}

fn emit(bytes: &[u8], out: Option<&Path>) -> Outcome {
    match out {
        Some(p) => std::fs::write(p, bytes).map_err(|e| Failure::io(anyhow!("cannot write {}: {e}", p.display()))),
        None => std::io::stdout().write_all(bytes).map_err(|e| Failure::io(e.into())),
    }
}

#[derive(Serialize)]
struct RootOut {
    index: usize,
    lower: String,
    upper: String,
    preview: String,
}

pub fn isolate(text: &str, json: bool) -> Outcome {
    let p = MultiPoly::parse_infer(text)?;
    let used = p.support();
    if used.len() > 1 {
        let names: Vec<&str> = used.iter().map(|&i| p.vars().names()[i].as_str()).collect();
        return Err(Failure::usage(format!("expected a univariate polynomial, found variables {}", names.join(", "))));
    }
    let roots = isolate_real_roots(&p)?;
    let width = Rational::new(1.into(), (1u64 << 40).into());
    let out: Vec<RootOut> = roots
        .iter()
        .map(|r| {
            let lo = r.interval.lower.clone().unwrap();
            let hi = r.interval.upper.clone().unwrap();
            let fine = r.refined(&width).interval;
            let mid = (fine.lower.unwrap() + fine.upper.unwrap()) / Rational::from_integer(2.into());
            RootOut { index: r.index, lower: show(&lo), upper: show(&hi), preview: preview(&mid) }
        })
        .collect();
    let bytes = if json {
        to_json(&serde_json::json!({ "schema": ISOLATE_SCHEMA, "polynomial": p.to_string(), "roots": out }))
            .map_err(Failure::io)?
    } else {
        out.iter()
            .map(|r| format!("{}: [{}, {}] ~ {}\n", r.index, r.lower, r.upper, r.preview))
            .collect::<String>()
            .into_bytes()
    };
    emit(&bytes, None)
}

fn angle(s: &str) -> Result<AngleInput, Failure> {
    match s.split_once(',') {
        Some((c, sn)) => Ok(AngleInput::Pair(rational(c)?, rational(sn)?)),
        None => {
            s.trim().parse::<f64>().map(AngleInput::Radians).map_err(|_| Failure::usage(format!("bad angle {s:?}")))
        }
    }
}

pub fn solve(a: &SolveArgs) -> Outcome {
    let design =
        ManipulatorDesign::numeric(rational(&a.b)?, rational(&a.l2)?, rational(&a.l3)?, Some(rational(&a.rho1)?));
    design.validate()?;
    let width = rational(&a.width)?;
    let boxes: Vec<SolutionBox> = match a.system {
        SystemArg::Constraints => {
            let (Some(t2), Some(t3)) = (&a.theta2, &a.theta3) else {
                return Err(Failure::usage("--system constraints needs --theta2 and --theta3"));
            };
            let rho1 = design.rho1.clone().unwrap();
            direct_kinematics(&design, &rho1, &angle(t2)?, &angle(t3)?)?.into_iter().map(|p| p.solution).collect()
        }
        SystemArg::Singularity | SystemArg::Cusp => {
            if a.theta2.is_some() || a.theta3.is_some() {
                return Err(Failure::usage("--theta2/--theta3 only apply to --system constraints"));
            }
            let sys = match a.system {
                SystemArg::Singularity => singularity_system(&design)?.sys,
                _ => cusp_system_for(&design)?.sys,
            };
            solve_zero_dim(&sys, &SolveOptions { width, ..SolveOptions::default() })?
        }
    };
    let system = match a.system {
        SystemArg::Constraints => "constraints",
        SystemArg::Singularity => "singularity",
        SystemArg::Cusp => "cusp",
    };
    eprintln!("{} real solutions", boxes.len());
    let doc = serde_json::json!({
        "schema": SOLVE_SCHEMA,
        "design": design,
        "system": system,
        "count": boxes.len(),
        "boxes": boxes,
    });
    emit(&to_json(&doc).map_err(Failure::io)?, a.out.as_deref())
}

fn load_system(a: &ClassifyArgs) -> Result<PolySystem, Failure> {
    match (&a.mode, &a.system_file) {
        (Some(ModeArg::L2EqL3), None) => Ok(cusp_system(DesignMode::L2EqL3)?),
        (Some(ModeArg::General), None) => Ok(cusp_system(DesignMode::General)?),
        (None, Some(path)) => {
            let f = SystemFile::load(path).map_err(Failure::missing)?;
            Ok(f.to_system()?)
        }
        _ => Err(Failure::usage("give exactly one of --mode and --system-file")),
    }
}

pub fn classify(a: &ClassifyArgs) -> Outcome {
    let start = Instant::now();
    let sys = load_system(a)?;
    let order = match &a.param_order {
        Some(s) => {
            let order: Vec<String> = s.split(',').map(|p| p.trim().to_string()).collect();
            let (mut x, mut y) = (order.clone(), sys.parameters.clone());
            x.sort();
            y.sort();
            if x != y {
                return Err(Failure::usage(format!("--param-order must permute {}", sys.parameters.join(","))));
            }
            Some(order)
        }
        None => None,
    };
    let opts = ClassifyOptions {
        dv: DvOptions { seed: a.seed, max_minors: a.max_minors },
        degree_guard: Some(a.max_level_degree),
        parameter_order: order,
    };
    let result = classifier::classify(&sys, &opts).map_err(|e| match e {
        Error::Configuration(_) => Failure { code: 3, error: e.into() },
        e => Failure::from(e),
    })?;
    let table = result.boundary_table()?;
    let params = result.stack.parameters.clone();

    let classification = SavedClassification { schema: CLASSIFICATION_SCHEMA.into(), classification: result };
    let mut cells = Vec::new();
    write_cells_csv(&classification.classification.cells, &params, &mut cells)?;
    let mut table_csv = Vec::new();
    table.write_csv(&mut table_csv)?;
    let files = vec![
        (CLASSIFICATION_FILE.to_string(), to_json(&classification).map_err(Failure::io)?),
        (CELLS_FILE.to_string(), cells),
        (TABLE_FILE.to_string(), table_csv),
    ];
    let tolerances = Tolerances { max_level_degree: a.max_level_degree, max_minors: a.max_minors, seed: a.seed };
    let input = to_json(&serde_json::json!({ "system": sys, "parameter_order": params, "tolerances": tolerances }))
        .map_err(Failure::io)?;
    let manifest = RunManifest {
        schema: MANIFEST_SCHEMA.into(),
        command: std::env::args().skip(1).collect(),
        input_sha256: sha256_hex(&input),
        parameter_order: params,
        tolerances,
        elapsed_ms: start.elapsed().as_millis(),
        outputs: files
            .iter()
            .map(|(name, bytes)| OutputFile { path: name.clone(), sha256: sha256_hex(bytes) })
            .collect(),
    };
    let mut all = files;
    all.push((MANIFEST_FILE.to_string(), to_json(&manifest).map_err(Failure::io)?));
    write_all(&a.out_dir, &all).map_err(Failure::io)?;
    let c = &classification.classification;
    eprintln!(
        "{} discriminant components, level degrees {:?}, {} cells ({} discarded by positivity)",
        c.discriminant_variety.components.len(),
        c.stack.degrees(),
        c.cells.len(),
        c.discarded
    );
    Ok(())
}

fn parse_range(s: &str) -> Result<(Rational, Rational), Failure> {
    let (lo, hi) = s.split_once(':').ok_or_else(|| Failure::usage(format!("range {s:?} is not lo:hi")))?;
    let (lo, hi) = (rational(lo)?, rational(hi)?);
    if lo >= hi {
        return Err(Failure::usage(format!("empty range {s:?}")));
    }
    Ok((lo, hi))
}

/// Stack whose top level holds the discriminant components in the last parameter.
fn dv_stack(c: &classifier::Classification) -> ProjectionStack {
    let params = c.stack.parameters.clone();
    let last = params.len() - 1;
    let vars = c.stack.vars();
    let top: Vec<MultiPoly> = c
        .discriminant_variety
        .polynomials()
        .iter()
        .filter_map(|p| p.with_vars(&vars).ok())
        .filter(|p| p.involves(last))
        .map(|p| cuspcad::poly::squarefree_part(&p))
        .collect();
    let mut levels = vec![Vec::new(); params.len()];
    levels[last] = gcd_free_basis(top).into_iter().filter(|p| p.involves(last)).collect();
    ProjectionStack { parameters: params, levels }
}

pub fn mesh(a: &MeshArgs) -> Outcome {
    let saved = SavedClassification::load(&a.from).map_err(Failure::missing)?;
    let c = &saved.classification;
    let lower = c.stack.depth() - 1;
    let ranges: Vec<(Rational, Rational)> = match a.ranges.len() {
        0 => vec![(Rational::from_integer(0.into()), Rational::from_integer(2.into())); lower],
        n if n == lower => a.ranges.iter().map(|s| parse_range(s)).collect::<Result<_, _>>()?,
        n => return Err(Failure::usage(format!("{n} ranges given, {lower} lower parameters"))),
    };
    if a.grid < 2 && lower > 0 {
        return Err(Failure::usage("--grid needs at least 2 points per axis"));
    }
    let stack = match a.surface {
        SurfaceArg::Dv => dv_stack(c),
        SurfaceArg::Level3 => c.stack.clone(),
    };
    let points = mesh_points(&stack, &ranges, a.grid.saturating_sub(1))?;
    let mut bytes = Vec::new();
    write_points_csv(&points, &stack.parameters, &mut bytes)?;
    emit(&bytes, a.out.as_deref())
}

pub fn lookup(from: &Path, point: &str) -> Outcome {
    let saved = SavedClassification::load(from).map_err(Failure::missing)?;
    let c = &saved.classification;
    let p = parse_point(point).map_err(Failure::usage)?;
    if p.len() != c.stack.depth() {
        return Err(Failure::usage(format!(
            "point has {} coordinates, parameters are {}",
            p.len(),
            c.stack.parameters.join(",")
        )));
    }
    let found = c.lookup(&p)?;
    let count = match &found {
        classifier::Lookup::Cell { index } => c.cells[*index].solution_count,
        _ => None,
    };
    let doc = serde_json::json!({
        "schema": LOOKUP_SCHEMA,
        "parameters": c.stack.parameters,
        "point": p.iter().map(show).collect::<Vec<_>>(),
        "result": found,
        "count": count,
    });
    emit(&to_json(&doc).map_err(Failure::io)?, None)
}
