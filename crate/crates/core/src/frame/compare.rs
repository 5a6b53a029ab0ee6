use serde::Serialize;

use super::family::RhoForm;
use super::linalg::{hermitian_part, quadratic_form, spectrum, CMatrix, CVector, Tolerances};
use super::FrameError;

/// Outcome of comparing `A = √(x* P_a x)` with `B = √(x* P_b x)`.
#[derive(Clone, Debug, PartialEq)]
pub enum Comparison {
    /// `k1 · A ≤ B ≤ k2 · A` with optimal constants. The probes attain the
    /// two bounds and satisfy `A(probe) = 1`.
    Equivalent { k1: f64, k2: f64, lower_probe: CVector, upper_probe: CVector },
    /// The kernels differ; `witness` is a unit vector where one side
    /// vanishes and the other does not.
    KernelMismatch { witness: CVector, a: f64, b: f64 },
}

impl Comparison {
    pub fn is_equivalent(&self) -> bool {
        matches!(self, Comparison::Equivalent { .. })
    }

    pub fn constants(&self) -> Option<(f64, f64)> {
        match self {
            Comparison::Equivalent { k1, k2, .. } => Some((*k1, *k2)),
            Comparison::KernelMismatch { .. } => None,
        }
    }

    pub fn summary(&self) -> ComparisonSummary {
        match self {
            Comparison::Equivalent { k1, k2, .. } => {
                ComparisonSummary { equivalent: true, k1: Some(*k1), k2: Some(*k2), reason: None }
            }
            Comparison::KernelMismatch { .. } => {
                ComparisonSummary { equivalent: false, k1: None, k2: None, reason: Some("kernel mismatch".into()) }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ComparisonSummary {
    pub equivalent: bool,
    pub k1: Option<f64>,
    pub k2: Option<f64>,
    pub reason: Option<String>,
}

fn unit(n: usize, i: usize) -> CVector {
    let mut v = CVector::zeros(n);
    v[i] = 1.0.into();
    v
}

/// Top eigenvector of `Q* P Q`, lifted back through `Q`.
fn dominant_direction(q: &CMatrix, p: &CMatrix) -> CVector {
    let s = spectrum(&(q.adjoint() * p * q));
    let top = s.vectors.column(s.values.len() - 1).into_owned();
    let v = q * top;
    let n = v.norm();
    v.unscale(n)
}

fn mismatch(a: &CMatrix, b: &CMatrix, witness: CVector) -> Comparison {
    let (fa, fb) = (quadratic_form(a, &witness).max(0.0).sqrt(), quadratic_form(b, &witness).max(0.0).sqrt());
    Comparison::KernelMismatch { witness, a: fa, b: fb }
}

/// Decides `A ≍ B` and returns the optimal constants.
pub fn asymp_compare(a: &RhoForm, b: &RhoForm, tol: Tolerances) -> Result<Comparison, FrameError> {
    if a.dim() != b.dim() {
        return Err(FrameError::DimensionMismatch(format!("forms of dimension {} and {}", a.dim(), b.dim())));
    }
    let n = a.dim();
    let (pa, pb) = (a.matrix(), b.matrix());
    let (sa, sb) = (spectrum(pa), spectrum(pb));
    let (ra, rb) = (sa.rank(tol.rank), sb.rank(tol.rank));

    match (ra, rb) {
        (0, 0) => {
            return Ok(Comparison::Equivalent { k1: 1.0, k2: 1.0, lower_probe: unit(n, 0), upper_probe: unit(n, 0) })
        }
        (0, _) => return Ok(mismatch(pa, pb, sb.vectors.column(n - 1).into_owned())),
        (_, 0) => return Ok(mismatch(pa, pb, sa.vectors.column(n - 1).into_owned())),
        _ => {}
    }

    let sum = pa.unscale(sa.max()) + pb.unscale(sb.max());
    let rs = spectrum(&sum).rank(tol.rank);
    if rs > ra {
        return Ok(mismatch(pa, pb, dominant_direction(&sa.kernel_basis(tol.rank), pb)));
    }
    if rs > rb {
        return Ok(mismatch(pa, pb, dominant_direction(&sb.kernel_basis(tol.rank), pa)));
    }

    // Whiten B by A on the common range.
    let (q, lambda) = sa.range(tol.rank);
    let mut w = q.clone();
    for (j, l) in lambda.iter().enumerate() {
        w.column_mut(j).unscale_mut(l.sqrt());
    }
    // A second pass against the computed W*PaW absorbs the error in W.
    let ma = hermitian_part(&(w.adjoint() * pa * &w));
    let s2 = spectrum(&ma);
    let mut w2 = s2.vectors.clone();
    for (j, l) in s2.values.iter().enumerate() {
        w2.column_mut(j).unscale_mut(l.max(f64::MIN_POSITIVE).sqrt());
    }
    let w = &w * &w2;
    let m = hermitian_part(&(w.adjoint() * pb * &w));
    let sm = spectrum(&m);
    let r = sm.values.len();
    let k1 = sm.min().max(0.0).sqrt();
    let k2 = sm.max().max(0.0).sqrt();
    let lower_probe = &w * sm.vectors.column(0);
    let upper_probe = &w * sm.vectors.column(r - 1);
    Ok(Comparison::Equivalent { k1, k2, lower_probe, upper_probe })
}
