//! Seminorms `x ↦ c‖Ax‖` and the three parameter maps into the 2-category of
//! scaled preorders that turn operator-witnessed equivalence of Bessel
//! families into an instance of the general relation.
//!
//! Maps run backwards: an operator `m: H₁ → H₂` sends a seminorm on `H₂` to
//! a seminorm on `H₁`. The space `L²(Ω)` of a family is identified with
//! `𝔽^m` through the coordinates `√μᵢ · cᵢ`, so its norm is Euclidean and the
//! analysis operator is [`BesselFamily::analysis_matrix`].

mod spec;

pub use spec::{check_bridge_file, BridgeFile, BridgeInstance, BridgeReport, InstanceReport, SeminormSpec};

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::frame::linalg::{identity, spectral_norm, spectrum};
use crate::frame::{
    asymp_compare, def_equivalent_with_witness, BesselFamily, CMatrix, CVector, Comparison, ComparisonSummary, FrameError,
    OperatorClass, OperatorMatrix, RhoForm, Tolerances,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum BridgeError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid seminorm: {0}")]
    Invalid(String),
    #[error("seminorm is not dominated: sup is {0}")]
    NotDominated(f64),
    #[error(transparent)]
    Frame(#[from] FrameError),
    #[error("malformed input: {0}")]
    Schema(String),
}

const DOMINATION_SLACK: f64 = 1e-9;
const ORDER_TOL: f64 = 1e-9;

/// `x ↦ scale · ‖op x‖` on `𝔽^{op.ncols()}`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeminormRep {
    scale: f64,
    op: CMatrix,
}

impl SeminormRep {
    pub fn new(scale: f64, op: CMatrix) -> Result<Self, BridgeError> {
        if !(scale.is_finite() && scale >= 0.0) {
            return Err(BridgeError::Invalid(format!("scale {scale}")));
        }
        if op.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(BridgeError::Invalid("operator entries must be finite".into()));
        }
        Ok(SeminormRep { scale, op })
    }

    /// As [`SeminormRep::new`], rejecting seminorms above the carrier norm.
    pub fn dominated(scale: f64, op: CMatrix) -> Result<Self, BridgeError> {
        let s = Self::new(scale, op)?;
        if !s.is_dominated() {
            return Err(BridgeError::NotDominated(s.sup()));
        }
        Ok(s)
    }

    /// The carrier norm.
    pub fn norm(dim: usize) -> Self {
        SeminormRep { scale: 1.0, op: identity(dim) }
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn op(&self) -> &CMatrix {
        &self.op
    }

    pub fn dim(&self) -> usize {
        self.op.ncols()
    }

    /// Supremum over the unit sphere.
    pub fn sup(&self) -> f64 {
        self.scale * spectral_norm(&self.op)
    }

    pub fn is_dominated(&self) -> bool {
        self.sup() <= 1.0 + DOMINATION_SLACK
    }

    pub fn eval(&self, x: &CVector) -> Result<f64, BridgeError> {
        if x.len() != self.dim() {
            return Err(BridgeError::DimensionMismatch(format!("vector of length {} for a seminorm on dimension {}", x.len(), self.dim())));
        }
        Ok(self.scale * (&self.op * x).norm())
    }

    /// `self ≥ other` pointwise: `c_o² B*B ⪯ c_s² A*A`.
    pub fn dominates(&self, other: &SeminormRep) -> Result<bool, BridgeError> {
        if self.dim() != other.dim() {
            return Err(BridgeError::DimensionMismatch(format!("seminorms on dimensions {} and {}", self.dim(), other.dim())));
        }
        let gs = (self.op.adjoint() * &self.op).scale(self.scale * self.scale);
        let go = (other.op.adjoint() * &other.op).scale(other.scale * other.scale);
        let scale = spectrum(&gs).max().max(spectrum(&go).max());
        Ok(spectrum(&(gs - go)).min() >= -ORDER_TOL * scale)
    }
}

/// `t ≤ s` pointwise.
pub fn leq_seminorm(s: &SeminormRep, t: &SeminormRep) -> Result<bool, BridgeError> {
    s.dominates(t)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    Sigma,
    Tau1,
    Tau2,
}

/// The image of `s` (on `m`'s codomain) under the parameter map at `m`.
pub fn apply_param(which: Param, m: &CMatrix, s: &SeminormRep) -> Result<SeminormRep, BridgeError> {
    if s.dim() != m.nrows() {
        return Err(BridgeError::DimensionMismatch(format!(
            "seminorm on dimension {} for an operator into dimension {}",
            s.dim(),
            m.nrows()
        )));
    }
    Ok(match which {
        Param::Sigma => SeminormRep { scale: s.sup(), op: m.clone() },
        Param::Tau1 => SeminormRep { scale: s.scale, op: &s.op * m },
        Param::Tau2 => SeminormRep { scale: s.sup(), op: identity(m.ncols()) },
    })
}

/// `max |σ(m)σ(m̄)(s) - σ(m̄∘m)(s)|` over the probes.
pub fn non_functoriality_gap(m: &CMatrix, m_bar: &CMatrix, s: &SeminormRep, probes: &[CVector]) -> Result<f64, BridgeError> {
    if m_bar.ncols() != m.nrows() {
        return Err(BridgeError::DimensionMismatch("m̄ does not compose after m".into()));
    }
    let staged = apply_param(Param::Sigma, m, &apply_param(Param::Sigma, m_bar, s)?)?;
    let direct = apply_param(Param::Sigma, &(m_bar * m), s)?;
    probes.iter().try_fold(0.0f64, |acc, x| Ok(acc.max((staged.eval(x)? - direct.eval(x)?).abs())))
}

/// Pointwise deviation from `F(m)F(m̄) = F(m̄∘m)` for a functorial parameter
/// map, relative to the size of the values.
pub fn composition_defect(which: Param, m: &CMatrix, m_bar: &CMatrix, s: &SeminormRep, probes: &[CVector]) -> Result<f64, BridgeError> {
    if m_bar.ncols() != m.nrows() {
        return Err(BridgeError::DimensionMismatch("m̄ does not compose after m".into()));
    }
    let staged = apply_param(which, m, &apply_param(which, m_bar, s)?)?;
    let direct = apply_param(which, &(m_bar * m), s)?;
    let (mut gap, mut size) = (0.0f64, 0.0f64);
    for x in probes {
        let (a, b) = (staged.eval(x)?, direct.eval(x)?);
        gap = gap.max((a - b).abs());
        size = size.max(a.abs()).max(b.abs());
    }
    Ok(if size > 0.0 { gap / size } else { gap })
}

/// `τ₁(u₁) ∘ σ(T_f) ∘ τ₂(u₂)` applied to `s`, stage by stage.
pub fn bridge_composite_staged(f: &BesselFamily, u1: &CMatrix, u2: &CMatrix, s: &SeminormRep) -> Result<SeminormRep, BridgeError> {
    check_composable(f, u1, u2)?;
    let t = f.analysis_matrix();
    let on_l2 = apply_param(Param::Tau2, u2, s)?;
    let on_h = apply_param(Param::Sigma, &t, &on_l2)?;
    apply_param(Param::Tau1, u1, &on_h)
}

/// The closed form `(sup s) · ‖T_f u₁ (·)‖`.
pub fn bridge_composite(f: &BesselFamily, u1: &CMatrix, u2: &CMatrix, s: &SeminormRep) -> Result<SeminormRep, BridgeError> {
    check_composable(f, u1, u2)?;
    if s.dim() != u2.nrows() {
        return Err(BridgeError::DimensionMismatch("seminorm does not live on the codomain of u₂".into()));
    }
    Ok(SeminormRep { scale: s.sup(), op: f.analysis_matrix() * u1 })
}

fn check_composable(f: &BesselFamily, u1: &CMatrix, u2: &CMatrix) -> Result<(), BridgeError> {
    if u1.nrows() != f.dim() {
        return Err(BridgeError::DimensionMismatch(format!("u₁ has {} rows, the family lives in dimension {}", u1.nrows(), f.dim())));
    }
    if u2.ncols() != f.len() {
        return Err(BridgeError::DimensionMismatch(format!("u₂ has {} columns, the family has {} vectors", u2.ncols(), f.len())));
    }
    Ok(())
}

/// Scalars of the two cells between a composite `K` and `σ(T)`, where
/// `K ≥ c · σ(T)` and `σ(T) ≥ c̃ · K` at the carrier norm.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CellPair {
    pub c: f64,
    pub c_tilde: f64,
}

fn cells(cmp: &Comparison) -> Option<CellPair> {
    cmp.constants().map(|(k1, k2)| CellPair { c: 1.0 / k2, c_tilde: k1 })
}

/// The two sides of the bridge for `(u₁, u₂)` and `(v₁, v₂)`.
#[derive(Clone, Debug, PartialEq)]
pub struct BridgeVerdict {
    /// `ρ(T_f ∘ u₁)` against `ρ(T_f̃)`.
    pub forward: Comparison,
    /// `ρ(T_f̃ ∘ v₁)` against `ρ(T_f)`.
    pub backward: Comparison,
}

impl BridgeVerdict {
    pub fn equivalent(&self) -> bool {
        self.forward.is_equivalent() && self.backward.is_equivalent()
    }

    /// `c, c̃` on the `u` side.
    pub fn u_cells(&self) -> Option<CellPair> {
        cells(&self.forward)
    }

    /// `d, d̃` on the `v` side.
    pub fn v_cells(&self) -> Option<CellPair> {
        cells(&self.backward)
    }

    pub fn summary(&self) -> BridgeSummary {
        BridgeSummary {
            equivalent: self.equivalent(),
            forward: self.forward.summary(),
            backward: self.backward.summary(),
            u_cells: self.u_cells(),
            v_cells: self.v_cells(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BridgeSummary {
    pub equivalent: bool,
    pub forward: ComparisonSummary,
    pub backward: ComparisonSummary,
    pub u_cells: Option<CellPair>,
    pub v_cells: Option<CellPair>,
}

/// Operators connecting `f` on `H` (with `m` vectors) and `f̃` on `H̃`
/// (with `m̃` vectors).
#[derive(Clone, Debug, PartialEq)]
pub struct BridgeData {
    /// `H̃ → H`.
    pub u1: CMatrix,
    /// `L²(Ω) → L²(Ω̃)`.
    pub u2: CMatrix,
    /// `H → H̃`.
    pub v1: CMatrix,
    /// `L²(Ω̃) → L²(Ω)`.
    pub v2: CMatrix,
}

impl BridgeData {
    pub fn check(&self, f: &BesselFamily, ft: &BesselFamily) -> Result<(), BridgeError> {
        let (n, nt, m, mt) = (f.dim(), ft.dim(), f.len(), ft.len());
        for (name, a, rows, cols) in [("u1", &self.u1, n, nt), ("u2", &self.u2, mt, m), ("v1", &self.v1, nt, n), ("v2", &self.v2, m, mt)] {
            if a.shape() != (rows, cols) {
                return Err(BridgeError::DimensionMismatch(format!("{name} is {}×{}, expected {rows}×{cols}", a.nrows(), a.ncols())));
            }
        }
        Ok(())
    }
}

/// Evaluates both composites at the carrier norm and compares them with
/// `σ(T_f̃)` and `σ(T_f)`.
pub fn bridge_equivalent(f: &BesselFamily, ft: &BesselFamily, data: &BridgeData, tol: Tolerances) -> Result<BridgeVerdict, BridgeError> {
    data.check(f, ft)?;
    let forms = |k: &SeminormRep| -> Result<RhoForm, BridgeError> {
        let g = (k.op().adjoint() * k.op()).scale(k.scale() * k.scale());
        Ok(RhoForm::new(crate::frame::linalg::hermitian_part(&g), tol)?)
    };
    let k_u = bridge_composite(f, &data.u1, &data.u2, &SeminormRep::norm(ft.len()))?;
    let s_ft = apply_param(Param::Sigma, &ft.analysis_matrix(), &SeminormRep::norm(ft.len()))?;
    let forward = asymp_compare(&forms(&k_u)?, &forms(&s_ft)?, tol)?;
    let k_v = bridge_composite(ft, &data.v1, &data.v2, &SeminormRep::norm(f.len()))?;
    let s_f = apply_param(Param::Sigma, &f.analysis_matrix(), &SeminormRep::norm(f.len()))?;
    let backward = asymp_compare(&forms(&k_v)?, &forms(&s_f)?, tol)?;
    Ok(BridgeVerdict { forward, backward })
}

/// The operator-witnessed verdict on the same data, with `u = u₁*` and
/// `ũ = v₁*`.
pub fn def_verdict_for(f: &BesselFamily, ft: &BesselFamily, data: &BridgeData, tol: Tolerances) -> Result<bool, BridgeError> {
    data.check(f, ft)?;
    let u = OperatorMatrix::any(data.u1.adjoint());
    let ut = OperatorMatrix::any(data.v1.adjoint());
    Ok(def_equivalent_with_witness(f, ft, &u, &ut, OperatorClass::Any, tol)?.equivalent())
}

/// Dominated pairs `φ ≤ φ̃` on `𝔽^dim`.
pub fn dominated_pairs(rng: &mut impl Rng, dim: usize, count: usize) -> Vec<(SeminormRep, SeminormRep)> {
    if dim == 0 {
        return vec![(SeminormRep::norm(0), SeminormRep::norm(0)); count];
    }
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let a = CMatrix::from_fn(dim, dim, |_, _| rng.gen_range(-1.0..=1.0f64).into());
        let norm = spectral_norm(&a);
        if norm == 0.0 {
            continue;
        }
        let c = rng.gen_range(0.0..=1.0) / norm;
        let phi = SeminormRep { scale: c, op: a.clone() };
        let phi_tilde = match out.len() % 3 {
            0 => SeminormRep::norm(dim),
            1 => phi.clone(),
            _ => SeminormRep { scale: rng.gen_range(c..=1.0 / norm), op: a },
        };
        out.push((phi, phi_tilde));
    }
    out
}

/// Largest relative violation of the cell inequalities
/// `K(φ̃) ≥ c · σ(T)(φ)` and `σ(T)(φ̃) ≥ c̃ · K(φ)` over pairs and probes,
/// where `K` is the composite through `(u₁, u₂)`. Zero when the cells hold.
pub fn cell_violation(
    f: &BesselFamily,
    ft: &BesselFamily,
    u1: &CMatrix,
    u2: &CMatrix,
    cells: CellPair,
    pairs: &[(SeminormRep, SeminormRep)],
    probes: &[CVector],
) -> Result<f64, BridgeError> {
    let t = ft.analysis_matrix();
    let mut worst = 0.0f64;
    for (phi, phi_tilde) in pairs {
        if !phi_tilde.dominates(phi)? {
            return Err(BridgeError::Invalid("pair is not ordered".into()));
        }
        let k_hi = bridge_composite_staged(f, u1, u2, phi_tilde)?;
        let k_lo = bridge_composite_staged(f, u1, u2, phi)?;
        let s_hi = apply_param(Param::Sigma, &t, phi_tilde)?;
        let s_lo = apply_param(Param::Sigma, &t, phi)?;
        for x in probes {
            let scale = k_hi.eval(x)?.max(s_hi.eval(x)?).max(f64::MIN_POSITIVE);
            worst = worst.max((cells.c * s_lo.eval(x)? - k_hi.eval(x)?) / scale);
            worst = worst.max((cells.c_tilde * k_lo.eval(x)? - s_hi.eval(x)?) / scale);
        }
    }
    Ok(worst.max(0.0))
}
