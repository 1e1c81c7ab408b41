//! On-disk formats. Every JSON file carries a `schema` tag.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context};
use cuspcad::poly::json::rational_str;
use cuspcad::{MultiPoly, PolySystem, Rational, VarList};
use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

pub const SYSTEM_SCHEMA: &str = "cuspcad.system/1";
pub const CLASSIFICATION_SCHEMA: &str = "cuspcad.classification/1";
pub const MANIFEST_SCHEMA: &str = "cuspcad.manifest/1";
pub const SOLVE_SCHEMA: &str = "cuspcad.solve/1";
pub const ISOLATE_SCHEMA: &str = "cuspcad.isolate/1";
pub const LOOKUP_SCHEMA: &str = "cuspcad.lookup/1";

pub const CLASSIFICATION_FILE: &str = "classification.json";
pub const CELLS_FILE: &str = "cells.csv";
pub const TABLE_FILE: &str = "boundary_table.csv";
pub const MANIFEST_FILE: &str = "manifest.json";

/// A parametric system in text form.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    pub schema: String,
    pub unknowns: Vec<String>,
    pub parameters: Vec<String>,
    pub equations: Vec<String>,
    #[serde(default)]
    pub positives: Vec<String>,
}

impl SystemFile {
    pub fn load(path: &Path) -> anyhow::Result<SystemFile> {
        let text = fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
        let f: SystemFile =
            serde_json::from_str(&text).with_context(|| format!("{} is not a system file", path.display()))?;
        if f.schema != SYSTEM_SCHEMA {
            bail!("{}: schema {:?}, expected {SYSTEM_SCHEMA:?}", path.display(), f.schema);
        }
        Ok(f)
    }

    pub fn to_system(&self) -> cuspcad::Result<PolySystem> {
        let names: Vec<&String> = self.unknowns.iter().chain(&self.parameters).collect();
        let vars = VarList::new(&names);
        let parse = |v: &[String]| v.iter().map(|s| MultiPoly::parse(s, &vars)).collect::<cuspcad::Result<Vec<_>>>();
        PolySystem::new(parse(&self.equations)?, parse(&self.positives)?, &self.unknowns, &self.parameters)
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SavedClassification {
    pub schema: String,
    pub classification: cuspcad::classifier::Classification,
}

impl SavedClassification {
    pub fn load(dir: &Path) -> anyhow::Result<SavedClassification> {
        let path = dir.join(CLASSIFICATION_FILE);
        let text = fs::read_to_string(&path).with_context(|| format!("missing classification {}", path.display()))?;
        let s: SavedClassification =
            serde_json::from_str(&text).with_context(|| format!("{} is not a classification", path.display()))?;
        if s.schema != CLASSIFICATION_SCHEMA {
            bail!("{}: schema {:?}, expected {CLASSIFICATION_SCHEMA:?}", path.display(), s.schema);
        }
        Ok(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputFile {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub max_level_degree: usize,
    pub max_minors: usize,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunManifest {
    pub schema: String,
    pub command: Vec<String>,
    pub input_sha256: String,
    pub parameter_order: Vec<String>,
    pub tolerances: Tolerances,
    pub elapsed_ms: u128,
    pub outputs: Vec<OutputFile>,
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

pub fn to_json<T: Serialize>(v: &T) -> anyhow::Result<Vec<u8>> {
    let mut out = serde_json::to_vec_pretty(v)?;
    out.push(b'\n');
    Ok(out)
}

/// Writes all files into `dir` in one pass.
pub fn write_all(dir: &Path, files: &[(String, Vec<u8>)]) -> anyhow::Result<Vec<PathBuf>> {
    fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    files
        .iter()
        .map(|(name, bytes)| {
            let p = dir.join(name);
            fs::write(&p, bytes).with_context(|| format!("cannot write {}", p.display()))?;
            Ok(p)
        })
        .collect()
}

/// `p/q`, integers, or plain decimals such as `0.8` (read exactly as `8/10`).
pub fn parse_rational(s: &str) -> anyhow::Result<Rational> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        if !frac.is_empty() && frac.chars().all(|c| c.is_ascii_digit()) {
            let digits = format!("{int}{frac}");
            let num: BigInt = digits.parse().map_err(|_| anyhow!("bad number {s:?}"))?;
            return Ok(Rational::new(num, BigInt::from(10).pow(frac.len() as u32)));
        }
    }
    rational_str::from_str(t).ok_or_else(|| anyhow!("bad rational {s:?}"))
}

pub fn parse_point(s: &str) -> anyhow::Result<Vec<Rational>> {
    s.split(',').map(parse_rational).collect()
}
