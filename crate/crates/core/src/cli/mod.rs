//! Batch front-end shared by the `morph-equiv` binary and the integration
//! tests.
//!
//! Every run produces one report per input and an exit code: `0` when every
//! verdict holds, `1` when some verdict is false, `2` when an input cannot be
//! read or does not match its schema.

mod render;

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use crate::action::{ActionSpec, DeloopedEquivalence, GroupAction};
use crate::bridge::{check_bridge_file, BridgeFile};
use crate::equiv::{EquivSpec, Partition};
use crate::frame::{check_frame_file, FrameFile, Tolerances};
use crate::kernel::{Category, CategorySpec, Finite2Category, FiniteCategory, TwoCategorySpec};
use crate::preord::{check_file, PreordFile};

pub const SCHEMA_VERSION: u32 = 1;

/// Chain lengths at which `orbit-check` compares delooped equivalence with
/// the orbit relation.
pub const ORBIT_CHECK_LENGTHS: [usize; 3] = [0, 1, 2];

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verb {
    Validate,
    Equiv,
    Classes,
    OrbitCheck,
    PreordCheck,
    Frame,
    Bridge,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, Parser)]
#[command(name = "morph-equiv", version, about = "Check finite 2-categories, morphism equivalence, group orbits, preorder cells, frames and the seminorm bridge")]
pub struct Args {
    /// Instance file; repeat for several.
    #[arg(long, required = true)]
    pub input: Vec<PathBuf>,
    #[arg(long, value_enum)]
    pub verb: Verb,
    /// Relative eigenvalue cutoff for rank decisions.
    #[arg(long, default_value_t = 1e-10)]
    pub tol_rank: f64,
    /// Relative slack for positive semidefiniteness.
    #[arg(long, default_value_t = 1e-9)]
    pub tol_psd: f64,
    /// Seed for every probe set.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub verb: Verb,
    pub inputs: Vec<PathBuf>,
    pub tol: Tolerances,
    pub seed: u64,
    pub format: Format,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(verb: Verb, input: impl Into<PathBuf>) -> Self {
        RunConfig { verb, inputs: vec![input.into()], tol: Tolerances::default(), seed: 0, format: Format::Json, out: None }
    }
}

impl TryFrom<Args> for RunConfig {
    type Error = CliError;

    fn try_from(a: Args) -> Result<Self, CliError> {
        for (name, v) in [("--tol-rank", a.tol_rank), ("--tol-psd", a.tol_psd)] {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(RunConfig {
            verb: a.verb,
            inputs: a.input,
            tol: Tolerances { rank: a.tol_rank, psd: a.tol_psd },
            seed: a.seed,
            format: a.format,
            out: a.out,
        })
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("invalid configuration: {0}")]
    Config(String),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse(_) => "parse",
            CliError::Schema(_) => "schema",
            CliError::Config(_) => "config",
        }
    }
}

fn schema(e: impl std::fmt::Display) -> CliError {
    CliError::Schema(e.to_string())
}

/// The rendered report and exit code of a run.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub exit_code: i32,
    pub report: String,
}

/// A verdict together with its verb-specific body.
struct Verdict {
    holds: bool,
    body: Value,
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Io { path: path.display().to_string(), message: e.to_string() })?;
    serde_json::from_str(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
}

fn typed<T: serde::de::DeserializeOwned>(value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(schema)
}

fn to_value(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

/// A category when the file has no `two_cells`, a 2-category otherwise.
fn validate(value: Value) -> Result<Verdict, CliError> {
    let report = if value.get("two_cells").is_some() {
        let spec: TwoCategorySpec = typed(value)?;
        let d = Finite2Category::from_spec_unchecked(&spec).map_err(schema)?;
        let r = d.validate();
        json!({
            "kind": "two_category",
            "objects": spec.objects.len(),
            "one_cells": spec.one_cells.len(),
            "two_cells": spec.two_cells.len(),
            "lawful": r.is_lawful(),
            "violations": r.violations,
        })
    } else {
        let spec: CategorySpec = typed(value)?;
        let c = FiniteCategory::from_spec_unchecked(&spec).map_err(schema)?;
        let r = c.validate();
        json!({
            "kind": "category",
            "objects": spec.objects.len(),
            "morphisms": spec.morphisms.len(),
            "lawful": r.is_lawful(),
            "violations": r.violations,
        })
    };
    Ok(Verdict { holds: report["lawful"] == json!(true), body: report })
}

/// Replaces string components of an equivalence file by the JSON they
/// point to, relative to the file's directory.
fn resolve_components(mut value: Value, base: &Path) -> Result<(EquivSpec, Option<Vec<[String; 2]>>), CliError> {
    let obj = value.as_object_mut().ok_or_else(|| CliError::Schema("equivalence file must be an object".into()))?;
    let queries = match obj.remove("queries") {
        Some(q) => Some(typed::<Vec<[String; 2]>>(q)?),
        None => None,
    };
    for key in ["c", "d", "sigma", "tau1", "tau2"] {
        if let Some(Value::String(rel)) = obj.get(key) {
            let path = base.join(rel);
            let inner = read_json(&path)?;
            obj.insert(key.to_string(), inner);
        }
    }
    Ok((typed(value)?, queries))
}

fn names(c: &FiniteCategory, p: &Partition<crate::kernel::MorId>) -> Vec<Vec<String>> {
    p.blocks.iter().map(|b| b.iter().map(|&m| c.morphism_name(m)).collect()).collect()
}

fn equiv(value: Value, base: &Path, classes_only: bool) -> Result<Verdict, CliError> {
    let (spec, queries) = resolve_components(value, base)?;
    let data = spec.load().map_err(schema)?;
    let c = data.c();
    if classes_only {
        let p = data.equivalence_classes();
        let blocks = names(c, &p);
        return Ok(Verdict { holds: true, body: json!({ "morphisms": c.len(), "classes": blocks.len(), "blocks": blocks }) });
    }
    let pairs: Vec<[String; 2]> = match queries {
        Some(q) => q,
        None => {
            let all: Vec<String> = c.morphisms().into_iter().map(|m| c.morphism_name(m)).collect();
            all.iter().flat_map(|a| all.iter().map(move |b| [a.clone(), b.clone()])).collect()
        }
    };
    let mut results = Vec::new();
    let mut holds = true;
    for [m, mt] in &pairs {
        let (a, b) = (c.morphism(m).map_err(schema)?, c.morphism(mt).map_err(schema)?);
        let w = data.are_equivalent(a, b);
        holds &= w.is_some();
        results.push(json!({
            "m": m,
            "m_tilde": mt,
            "equivalent": w.is_some(),
            "witness": w.map(|w| to_value(&data.describe(&w))),
        }));
    }
    Ok(Verdict { holds, body: json!({ "queries": results }) })
}

fn orbit_check(value: Value) -> Result<Verdict, CliError> {
    let spec: ActionSpec = typed(value)?;
    let action = GroupAction::from_spec(&spec).map_err(schema)?;
    let n = action.carrier_len();
    let orbits = action.orbits();
    let slices = ORBIT_CHECK_LENGTHS
        .iter()
        .map(|&l| DeloopedEquivalence::new(&action, l).map_err(schema))
        .collect::<Result<Vec<_>, _>>()?;
    let mut agreement = vec![vec![true; n]; n];
    let mut orbit_matrix = vec![vec![false; n]; n];
    for (f, row) in agreement.iter_mut().enumerate() {
        for (ft, cell) in row.iter_mut().enumerate() {
            let orbit = action.orbit_equivalent(f, ft).is_some();
            orbit_matrix[f][ft] = orbit;
            *cell = slices.iter().all(|s| s.equivalent(f, ft).is_some() == orbit);
        }
    }
    let carrier = action.carrier();
    let named = |p: &Partition<usize>| -> Vec<Vec<String>> { p.blocks.iter().map(|b| b.iter().map(|&x| carrier[x].clone()).collect()).collect() };
    let partitions: Vec<Value> = ORBIT_CHECK_LENGTHS
        .iter()
        .zip(&slices)
        .map(|(&l, s)| {
            let p = s.classes();
            json!({ "max_chain_length": l, "matches_orbits": p == orbits, "classes": named(&p) })
        })
        .collect();
    let holds = agreement.iter().flatten().all(|&b| b) && partitions.iter().all(|p| p["matches_orbits"] == json!(true));
    Ok(Verdict {
        holds,
        body: json!({
            "group_order": action.group().order(),
            "carrier": carrier,
            "orbits": named(&orbits),
            "orbit_equivalent": orbit_matrix,
            "agreement": agreement,
            "partitions": partitions,
        }),
    })
}

fn preord_check(value: Value) -> Result<Verdict, CliError> {
    let file: PreordFile = typed(value)?;
    let r = check_file(&file).map_err(schema)?;
    Ok(Verdict { holds: r.ok, body: to_value(&r) })
}

fn frame(value: Value, tol: Tolerances) -> Result<Verdict, CliError> {
    let file: FrameFile = typed(value)?;
    let r = check_frame_file(&file, tol).map_err(schema)?;
    Ok(Verdict { holds: r.ok, body: to_value(&r) })
}

fn bridge(value: Value, tol: Tolerances, seed: u64) -> Result<Verdict, CliError> {
    let file: BridgeFile = typed(value)?;
    let r = check_bridge_file(&file, tol, &mut crate::samples::rng(seed)).map_err(schema)?;
    Ok(Verdict { holds: r.ok, body: to_value(&r) })
}

fn run_one(cfg: &RunConfig, path: &Path) -> Result<Verdict, CliError> {
    let value = read_json(path)?;
    let base = path.parent().unwrap_or_else(|| Path::new("."));
    match cfg.verb {
        Verb::Validate => validate(value),
        Verb::Equiv => equiv(value, base, false),
        Verb::Classes => equiv(value, base, true),
        Verb::OrbitCheck => orbit_check(value),
        Verb::PreordCheck => preord_check(value),
        Verb::Frame => frame(value, cfg.tol),
        Verb::Bridge => bridge(value, cfg.tol, cfg.seed),
    }
}

/// Runs every input and renders the combined report.
pub fn run(cfg: &RunConfig) -> Outcome {
    let mut exit_code = 0;
    let mut reports = Vec::new();
    for path in &cfg.inputs {
        let (code, report) = match run_one(cfg, path) {
            Ok(v) => (
                if v.holds { 0 } else { 1 },
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "verb": cfg.verb,
                    "input": path.display().to_string(),
                    "verdict": v.holds,
                    "report": v.body,
                }),
            ),
            Err(e) => (
                2,
                json!({
                    "schema_version": SCHEMA_VERSION,
                    "verb": cfg.verb,
                    "input": path.display().to_string(),
                    "error": { "kind": e.kind(), "message": e.to_string() },
                }),
            ),
        };
        exit_code = exit_code.max(code);
        reports.push(report);
    }
    let report = match cfg.format {
        Format::Json => {
            let v = if reports.len() == 1 { reports.pop().expect("one report") } else { Value::Array(reports) };
            serde_json::to_string_pretty(&v).expect("serialize") + "\n"
        }
        Format::Text => reports.iter().map(render::text).collect::<Vec<_>>().join("\n"),
    };
    Outcome { exit_code, report }
}

/// Parses arguments, runs, and writes the report. Returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let args = match Args::try_parse_from(args) {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let out = args.out.clone();
    let cfg = match RunConfig::try_from(args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("{e}");
            return 2;
        }
    };
    let outcome = run(&cfg);
    match out {
        Some(path) => {
            if let Err(e) = fs::write(&path, &outcome.report) {
                eprintln!("cannot write {}: {e}", path.display());
                return 2;
            }
        }
        None => print!("{}", outcome.report),
    }
    outcome.exit_code
}
