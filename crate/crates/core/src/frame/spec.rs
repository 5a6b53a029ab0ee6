use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::family::{is_frame, BesselFamily, Field, FrameBounds};
use super::linalg::{CMatrix, Tolerances};
use super::operator::{OperatorClass, OperatorMatrix};
use super::witness::{def_equivalent_with_witness, onb_witness, DefSummary};
use super::FrameError;

/// A scalar written either as a number or as `[re, im]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl From<Entry> for Complex64 {
    fn from(e: Entry) -> Self {
        match e {
            Entry::Real(x) => Complex64::new(x, 0.0),
            Entry::Complex([re, im]) => Complex64::new(re, im),
        }
    }
}

impl From<Complex64> for Entry {
    fn from(z: Complex64) -> Self {
        if z.im == 0.0 {
            Entry::Real(z.re)
        } else {
            Entry::Complex([z.re, z.im])
        }
    }
}

/// Rows of entries.
pub type MatrixSpec = Vec<Vec<Entry>>;

pub fn matrix_from_rows(rows: &MatrixSpec, what: &str) -> Result<CMatrix, FrameError> {
    let r = rows.len();
    let c = rows.first().map_or(0, Vec::len);
    if r == 0 || c == 0 || rows.iter().any(|row| row.len() != c) {
        return Err(FrameError::Schema(format!("{what}: matrix must be a non-empty list of equal-length rows")));
    }
    Ok(CMatrix::from_row_iterator(r, c, rows.iter().flatten().map(|&e| e.into())))
}

pub fn matrix_to_rows(m: &CMatrix) -> MatrixSpec {
    m.row_iter().map(|row| row.iter().map(|&z| z.into()).collect()).collect()
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilySpec {
    pub field: Field,
    pub dim: usize,
    /// Defaults to unit weights.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    /// One entry list per vector.
    pub vectors: Vec<Vec<Entry>>,
}

impl FamilySpec {
    pub fn build(&self) -> Result<BesselFamily, FrameError> {
        if self.vectors.iter().any(|v| v.len() != self.dim) {
            return Err(FrameError::DimensionMismatch(format!("every vector must have {} entries", self.dim)));
        }
        let m = self.vectors.len();
        let cols = CMatrix::from_fn(self.dim, m, |r, c| self.vectors[c][r].into());
        let weights = self.weights.clone().unwrap_or_else(|| vec![1.0; m]);
        BesselFamily::new(self.field, weights, cols)
    }

    pub fn from_family(f: &BesselFamily) -> Self {
        FamilySpec {
            field: f.field(),
            dim: f.dim(),
            weights: Some(f.weights().to_vec()),
            vectors: f.vectors().column_iter().map(|c| c.iter().map(|&z| z.into()).collect()).collect(),
        }
    }
}

/// An operator as bare rows, or rows with a class to verify.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum OperatorSpec {
    Rows(MatrixSpec),
    Tagged {
        matrix: MatrixSpec,
        #[serde(default)]
        class: OperatorClass,
    },
}

impl OperatorSpec {
    pub fn build(&self, what: &str, tol: Tolerances) -> Result<OperatorMatrix, FrameError> {
        match self {
            OperatorSpec::Rows(rows) => Ok(OperatorMatrix::any(matrix_from_rows(rows, what)?)),
            OperatorSpec::Tagged { matrix, class } => OperatorMatrix::new(matrix_from_rows(matrix, what)?, *class, tol),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameQuery {
    pub f: String,
    pub f_tilde: String,
    pub u: OperatorSpec,
    pub u_tilde: OperatorSpec,
    #[serde(default)]
    pub variant: OperatorClass,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FrameFile {
    pub families: BTreeMap<String, FamilySpec>,
    #[serde(default)]
    pub queries: Vec<FrameQuery>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OnbReport {
    pub u: MatrixSpec,
    pub u_tilde: MatrixSpec,
    pub verdict: DefSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FamilyReport {
    pub dim: usize,
    pub vectors: usize,
    pub field: Field,
    pub bounds: FrameBounds,
    pub onb_witness: Option<OnbReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QueryReport {
    pub f: String,
    pub f_tilde: String,
    pub variant: OperatorClass,
    pub verdict: DefSummary,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FrameReport {
    pub families: BTreeMap<String, FamilyReport>,
    pub queries: Vec<QueryReport>,
    /// Every family is a frame and every query is equivalent.
    pub ok: bool,
}

pub fn check_frame_file(file: &FrameFile, tol: Tolerances) -> Result<FrameReport, FrameError> {
    let mut built = BTreeMap::new();
    let mut families = BTreeMap::new();
    for (name, spec) in &file.families {
        let f = spec.build().map_err(|e| FrameError::Schema(format!("family {name}: {e}")))?;
        let bounds = is_frame(&f, tol);
        let onb = match onb_witness(&f, tol) {
            Ok((u, ut)) => {
                let onb = BesselFamily::standard_basis(f.field(), f.dim());
                let verdict = def_equivalent_with_witness(&f, &onb, &u, &ut, OperatorClass::Any, tol)?;
                Some(OnbReport { u: matrix_to_rows(u.matrix()), u_tilde: matrix_to_rows(ut.matrix()), verdict: verdict.summary() })
            }
            Err(FrameError::NotAFrame) => None,
            Err(e) => return Err(e),
        };
        families.insert(
            name.clone(),
            FamilyReport { dim: f.dim(), vectors: f.len(), field: f.field(), bounds, onb_witness: onb },
        );
        built.insert(name.clone(), f);
    }
    let lookup = |name: &str| built.get(name).ok_or_else(|| FrameError::Schema(format!("unknown family {name}")));
    let mut queries = Vec::new();
    for q in &file.queries {
        let (f, ft) = (lookup(&q.f)?, lookup(&q.f_tilde)?);
        let u = q.u.build("u", tol)?;
        let ut = q.u_tilde.build("u_tilde", tol)?;
        let verdict = def_equivalent_with_witness(f, ft, &u, &ut, q.variant, tol)?;
        queries.push(QueryReport { f: q.f.clone(), f_tilde: q.f_tilde.clone(), variant: q.variant, verdict: verdict.summary() });
    }
    let ok = families.values().all(|r| r.bounds.is_frame) && queries.iter().all(|q| q.verdict.equivalent);
    Ok(FrameReport { families, queries, ok })
}
