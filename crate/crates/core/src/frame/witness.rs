use num_complex::Complex64;
use rand::Rng;
use serde::Serialize;

use super::compare::{asymp_compare, Comparison, ComparisonSummary};
use super::family::{is_frame, BesselFamily, Field};
use super::linalg::{is_real, max_abs_diff, spectral_apply, spectrum, CMatrix, CVector, Tolerances};
use super::operator::{OperatorClass, OperatorMatrix};
use super::FrameError;

/// Both comparisons of the operator-witnessed equivalence.
#[derive(Clone, Debug, PartialEq)]
pub struct DefVerdict {
    /// `ρ(u∘f)` against `ρ(f̃)`.
    pub forward: Comparison,
    /// `ρ(ũ∘f̃)` against `ρ(f)`.
    pub backward: Comparison,
}

impl DefVerdict {
    pub fn equivalent(&self) -> bool {
        self.forward.is_equivalent() && self.backward.is_equivalent()
    }

    /// `(K1, K2, L1, L2)` when both sides are equivalent.
    pub fn constants(&self) -> Option<[f64; 4]> {
        let (k1, k2) = self.forward.constants()?;
        let (l1, l2) = self.backward.constants()?;
        Some([k1, k2, l1, l2])
    }

    pub fn summary(&self) -> DefSummary {
        DefSummary {
            equivalent: self.equivalent(),
            forward: self.forward.summary(),
            backward: self.backward.summary(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DefSummary {
    pub equivalent: bool,
    pub forward: ComparisonSummary,
    pub backward: ComparisonSummary,
}

/// Checks `ρ(u∘f) ≍ ρ(f̃)` and `ρ(ũ∘f̃) ≍ ρ(f)` for the given operators,
/// after confirming both belong to `variant`.
pub fn def_equivalent_with_witness(
    f: &BesselFamily,
    ft: &BesselFamily,
    u: &OperatorMatrix,
    ut: &OperatorMatrix,
    variant: OperatorClass,
    tol: Tolerances,
) -> Result<DefVerdict, FrameError> {
    let (n, nt) = (f.dim(), ft.dim());
    if u.cols() != n || u.rows() != nt {
        return Err(FrameError::DimensionMismatch(format!("u is {}×{}, expected {nt}×{n}", u.rows(), u.cols())));
    }
    if ut.cols() != nt || ut.rows() != n {
        return Err(FrameError::DimensionMismatch(format!("ũ is {}×{}, expected {n}×{nt}", ut.rows(), ut.cols())));
    }
    u.require(u.class().max(variant), tol)?;
    ut.require(ut.class().max(variant), tol)?;
    let (pf, pft) = (f.frame_operator(), ft.frame_operator());
    let forward = asymp_compare(&pf.conjugate(u.matrix())?, &pft, tol)?;
    let backward = asymp_compare(&pft.conjugate(ut.matrix())?, &pf, tol)?;
    Ok(DefVerdict { forward, backward })
}

/// `(P^{-1/2}, P^{1/2})` for a frame with frame operator `P`.
pub fn onb_witness(f: &BesselFamily, tol: Tolerances) -> Result<(OperatorMatrix, OperatorMatrix), FrameError> {
    if !is_frame(f, tol).is_frame {
        return Err(FrameError::NotAFrame);
    }
    let s = spectrum(f.frame_operator().matrix());
    let u = spectral_apply(&s, |l| 1.0 / l.sqrt(), |_| true);
    let ut = spectral_apply(&s, f64::sqrt, |_| true);
    let u = OperatorMatrix::new(u, OperatorClass::InjectiveClosedRange, tol)?;
    let ut = OperatorMatrix::new(ut, OperatorClass::InjectiveClosedRange, tol)?;
    Ok((u, ut))
}

/// Pseudo-inverse square root and square root of the frame operator.
/// Unlike [`onb_witness`] this never fails; for non-frames the pair is
/// singular.
pub fn pseudo_onb_witness(f: &BesselFamily, tol: Tolerances) -> (OperatorMatrix, OperatorMatrix) {
    let s = spectrum(f.frame_operator().matrix());
    let cut = tol.rank * s.max().max(0.0);
    let keep = |l: f64| l > cut && l > 0.0;
    let u = spectral_apply(&s, |l| 1.0 / l.sqrt(), keep);
    let ut = spectral_apply(&s, f64::sqrt, keep);
    (OperatorMatrix::any(u), OperatorMatrix::any(ut))
}

/// Unit-free random probes with entries in `[-1, 1]`, real or complex.
pub fn probe_vectors(rng: &mut impl Rng, n: usize, count: usize, field: Field) -> Vec<CVector> {
    (0..count)
        .map(|_| {
            CVector::from_fn(n, |_, _| {
                let re = rng.gen_range(-1.0..=1.0);
                let im = if field == Field::Complex { rng.gen_range(-1.0..=1.0) } else { 0.0 };
                Complex64::new(re, im)
            })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Deviation {
    pub absolute: f64,
    pub relative: f64,
}

/// Compares `T_f ∘ α` with `T_{α*∘f}` on the given probes, each side
/// evaluated on its own.
pub fn adjoint_identity_check(f: &BesselFamily, alpha: &OperatorMatrix, probes: &[CVector]) -> Result<Deviation, FrameError> {
    if alpha.rows() != f.dim() {
        return Err(FrameError::DimensionMismatch(format!("α has {} rows, family lives in dimension {}", alpha.rows(), f.dim())));
    }
    let pulled = f.transported(&alpha.matrix().adjoint())?;
    let (mut absolute, mut scale) = (0.0f64, 0.0f64);
    for z in probes {
        if z.len() != alpha.cols() {
            return Err(FrameError::DimensionMismatch(format!("probe of length {}, α has {} columns", z.len(), alpha.cols())));
        }
        let left = f.analyze(&(alpha.matrix() * z))?;
        let right = pulled.analyze(z)?;
        let weighted = |v: &CVector| v.iter().zip(f.weights()).map(|(c, w)| w * c.norm_sqr()).sum::<f64>().sqrt();
        absolute = absolute.max(weighted(&(&left - &right)));
        scale = scale.max(weighted(&left));
    }
    let relative = if scale > 0.0 { absolute / scale } else { absolute };
    Ok(Deviation { absolute, relative })
}

const PHASE_TOL: f64 = 1e-12;

/// The family `(αᵢ · u fᵢ)ᵢ`.
pub fn phase_unitary_act(f: &BesselFamily, u: &OperatorMatrix, phases: &[Complex64]) -> Result<BesselFamily, FrameError> {
    if !u.is_unitary() || u.rows() != f.dim() {
        return Err(FrameError::NotUnitary);
    }
    if phases.len() != f.len() {
        return Err(FrameError::DimensionMismatch(format!("{} phases for {} vectors", phases.len(), f.len())));
    }
    if let Some(p) = phases.iter().find(|p| (p.norm() - 1.0).abs() > PHASE_TOL) {
        return Err(FrameError::BadPhase(p.norm()));
    }
    let mut v = u.matrix() * f.vectors();
    for (j, p) in phases.iter().enumerate() {
        for z in v.column_mut(j).iter_mut() {
            *z *= p;
        }
    }
    let field = if f.field() == Field::Real && is_real(&v) { Field::Real } else { Field::Complex };
    BesselFamily::new(field, f.weights().to_vec(), v)
}

/// `max |P_{f̃} - u P_f u*|` relative to `max |P_f|`.
pub fn conjugation_defect(f: &BesselFamily, ft: &BesselFamily, u: &CMatrix) -> Result<f64, FrameError> {
    let expected = f.frame_operator().conjugate(u)?;
    let got = ft.frame_operator();
    let scale = super::linalg::max_abs(f.frame_operator().matrix()).max(f64::MIN_POSITIVE);
    Ok(max_abs_diff(got.matrix(), expected.matrix()) / scale)
}
