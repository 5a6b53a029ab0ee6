use serde::{Deserialize, Serialize};

use super::{
    bridge_composite, bridge_composite_staged, bridge_equivalent, def_verdict_for, BridgeData, BridgeError, BridgeSummary, SeminormRep,
};
use crate::frame::linalg::identity;
use crate::frame::{matrix_from_rows, probe_vectors, CMatrix, FamilySpec, MatrixSpec, Tolerances};

/// `{"scale": c, "op": [[...]]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SeminormSpec {
    pub scale: f64,
    pub op: MatrixSpec,
}

impl SeminormSpec {
    /// Builds the seminorm and insists that it is dominated.
    pub fn build(&self) -> Result<SeminormRep, BridgeError> {
        let op = matrix_from_rows(&self.op, "op").map_err(|e| BridgeError::Schema(e.to_string()))?;
        SeminormRep::dominated(self.scale, op)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeInstance {
    pub name: String,
    pub f: FamilySpec,
    pub f_tilde: FamilySpec,
    pub u1: MatrixSpec,
    pub v1: MatrixSpec,
    /// Defaults to the identity when both families have the same length.
    #[serde(default)]
    pub u2: Option<MatrixSpec>,
    #[serde(default)]
    pub v2: Option<MatrixSpec>,
    /// Seminorm on `L²(Ω̃)` fed to the composite; defaults to the norm.
    #[serde(default)]
    pub phi: Option<SeminormSpec>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BridgeFile {
    pub instances: Vec<BridgeInstance>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceReport {
    pub name: String,
    pub verdict: BridgeSummary,
    /// Verdict of the operator-witnessed relation with `u = u₁*`, `ũ = v₁*`.
    pub def_verdict: bool,
    pub agrees: bool,
    /// Largest relative gap between the staged composite and its closed
    /// form on the probes.
    pub composite_defect: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeReport {
    pub instances: Vec<InstanceReport>,
    /// Every instance is equivalent and agrees with the direct verdict.
    pub ok: bool,
}

fn operator(spec: &Option<MatrixSpec>, name: &str, rows: usize, cols: usize) -> Result<CMatrix, BridgeError> {
    match spec {
        Some(m) => matrix_from_rows(m, name).map_err(|e| BridgeError::Schema(e.to_string())),
        None if rows == cols => Ok(identity(rows)),
        None => Err(BridgeError::Schema(format!("{name} is required when the index sets differ in size"))),
    }
}

pub fn check_bridge_file(file: &BridgeFile, tol: Tolerances, rng: &mut impl rand::Rng) -> Result<BridgeReport, BridgeError> {
    let mut instances = Vec::new();
    for inst in &file.instances {
        let schema = |e: crate::frame::FrameError| BridgeError::Schema(format!("{}: {e}", inst.name));
        let f = inst.f.build().map_err(schema)?;
        let ft = inst.f_tilde.build().map_err(schema)?;
        let data = BridgeData {
            u1: matrix_from_rows(&inst.u1, "u1").map_err(schema)?,
            v1: matrix_from_rows(&inst.v1, "v1").map_err(schema)?,
            u2: operator(&inst.u2, "u2", ft.len(), f.len())?,
            v2: operator(&inst.v2, "v2", f.len(), ft.len())?,
        };
        let verdict = bridge_equivalent(&f, &ft, &data, tol)?;
        let def_verdict = def_verdict_for(&f, &ft, &data, tol)?;
        let phi = match &inst.phi {
            Some(s) => s.build()?,
            None => SeminormRep::norm(ft.len()),
        };
        let closed = bridge_composite(&f, &data.u1, &data.u2, &phi)?;
        let staged = bridge_composite_staged(&f, &data.u1, &data.u2, &phi)?;
        let mut composite_defect = 0.0f64;
        for x in probe_vectors(rng, ft.dim(), 32, ft.field()) {
            let (a, b) = (closed.eval(&x)?, staged.eval(&x)?);
            let size = a.max(b);
            if size > 0.0 {
                composite_defect = composite_defect.max((a - b).abs() / size);
            }
        }
        instances.push(InstanceReport {
            name: inst.name.clone(),
            agrees: verdict.equivalent() == def_verdict,
            verdict: verdict.summary(),
            def_verdict,
            composite_defect,
        });
    }
    let ok = instances.iter().all(|i| i.verdict.equivalent && i.agrees);
    Ok(BridgeReport { instances, ok })
}
