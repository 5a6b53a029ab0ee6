use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::linalg::{is_real, max_abs, max_abs_diff, quadratic_form, spectrum, CMatrix, CVector, Tolerances};
use super::FrameError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Field {
    Real,
    Complex,
}

/// A finite weighted family `f₁, …, f_m` in `𝔽ⁿ`, stored as the columns of
/// an `n × m` matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct BesselFamily {
    field: Field,
    weights: Vec<f64>,
    vectors: CMatrix,
}

impl BesselFamily {
    pub fn new(field: Field, weights: Vec<f64>, vectors: CMatrix) -> Result<Self, FrameError> {
        if vectors.nrows() == 0 {
            return Err(FrameError::Invalid("dimension must be at least 1".into()));
        }
        if weights.len() != vectors.ncols() {
            return Err(FrameError::DimensionMismatch(format!(
                "{} weights for {} vectors",
                weights.len(),
                vectors.ncols()
            )));
        }
        if weights.iter().any(|w| !(w.is_finite() && *w > 0.0)) {
            return Err(FrameError::Invalid("weights must be finite and positive".into()));
        }
        if vectors.iter().any(|z| !(z.re.is_finite() && z.im.is_finite())) {
            return Err(FrameError::Invalid("vectors must be finite".into()));
        }
        if field == Field::Real && !is_real(&vectors) {
            return Err(FrameError::Invalid("complex entries in a real family".into()));
        }
        Ok(BesselFamily { field, weights, vectors })
    }

    /// Unit weights.
    pub fn unweighted(field: Field, vectors: CMatrix) -> Result<Self, FrameError> {
        let m = vectors.ncols();
        Self::new(field, vec![1.0; m], vectors)
    }

    /// The standard basis of `𝔽ⁿ` with unit weights.
    pub fn standard_basis(field: Field, n: usize) -> Self {
        Self::unweighted(field, CMatrix::identity(n, n)).expect("standard basis")
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.vectors.nrows()
    }

    pub fn len(&self) -> usize {
        self.vectors.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn vectors(&self) -> &CMatrix {
        &self.vectors
    }

    /// `Σ μᵢ fᵢ fᵢ*`.
    pub fn frame_operator(&self) -> RhoForm {
        let n = self.dim();
        let mut p = CMatrix::zeros(n, n);
        for (i, &w) in self.weights.iter().enumerate() {
            let f = self.vectors.column(i);
            p += (&f * f.adjoint()).scale(w);
        }
        RhoForm { p, factor: Some(self.analysis_matrix()) }
    }

    /// `(⟨x, fᵢ⟩)ᵢ`, unweighted coordinates.
    pub fn analyze(&self, x: &CVector) -> Result<CVector, FrameError> {
        if x.len() != self.dim() {
            return Err(FrameError::DimensionMismatch(format!("vector of length {} in dimension {}", x.len(), self.dim())));
        }
        Ok(self.vectors.adjoint() * x)
    }

    /// `‖T_f x‖` in the weighted coordinate space.
    pub fn analysis_norm(&self, x: &CVector) -> Result<f64, FrameError> {
        let c = self.analyze(x)?;
        Ok(c.iter().zip(&self.weights).map(|(z, w)| w * z.norm_sqr()).sum::<f64>().sqrt())
    }

    /// The analysis operator as an `m × n` matrix into unweighted
    /// coordinates scaled by `√μᵢ`, so that its Euclidean norm is the
    /// weighted norm.
    pub fn analysis_matrix(&self) -> CMatrix {
        let mut t = self.vectors.adjoint();
        for (i, &w) in self.weights.iter().enumerate() {
            t.row_mut(i).scale_mut(w.sqrt());
        }
        t
    }

    /// The family `(u fᵢ)ᵢ` with the same weights.
    pub fn transported(&self, u: &CMatrix) -> Result<BesselFamily, FrameError> {
        if u.ncols() != self.dim() {
            return Err(FrameError::DimensionMismatch(format!(
                "operator with {} columns on dimension {}",
                u.ncols(),
                self.dim()
            )));
        }
        let field = if self.field == Field::Real && is_real(u) { Field::Real } else { Field::Complex };
        BesselFamily::new(field, self.weights.clone(), u * &self.vectors)
    }
}

/// A positive semidefinite form `P`, read as `x ↦ √(x* P x)`.
/// A known factor `T` with `P = T*T` is kept for evaluation.
#[derive(Clone, Debug)]
pub struct RhoForm {
    p: CMatrix,
    factor: Option<CMatrix>,
}

impl PartialEq for RhoForm {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl RhoForm {
    /// Checks that `p` is Hermitian and positive semidefinite.
    pub fn new(p: CMatrix, tol: Tolerances) -> Result<Self, FrameError> {
        if !p.is_square() {
            return Err(FrameError::DimensionMismatch("form must be square".into()));
        }
        let scale = max_abs(&p).max(f64::MIN_POSITIVE);
        if max_abs_diff(&p, &p.adjoint()) > 1e-12 * scale {
            return Err(FrameError::Invalid("form is not Hermitian".into()));
        }
        let s = spectrum(&p);
        if s.min() < -tol.psd * s.max().max(0.0) {
            return Err(FrameError::Invalid(format!("form has eigenvalue {}", s.min())));
        }
        Ok(RhoForm { p, factor: None })
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.p
    }

    pub fn dim(&self) -> usize {
        self.p.nrows()
    }

    /// `u P u*`.
    pub fn conjugate(&self, u: &CMatrix) -> Result<RhoForm, FrameError> {
        if u.ncols() != self.dim() {
            return Err(FrameError::DimensionMismatch(format!(
                "operator with {} columns on dimension {}",
                u.ncols(),
                self.dim()
            )));
        }
        Ok(RhoForm { p: u * &self.p * u.adjoint(), factor: self.factor.as_ref().map(|t| t * u.adjoint()) })
    }

    /// `‖T x‖` when a factor is known, else `√max(x* P x, 0)`.
    pub fn eval(&self, x: &CVector) -> Result<f64, FrameError> {
        if x.len() != self.dim() {
            return Err(FrameError::DimensionMismatch(format!("vector of length {} in dimension {}", x.len(), self.dim())));
        }
        Ok(match &self.factor {
            Some(t) => (t * x).norm(),
            None => quadratic_form(&self.p, x).max(0.0).sqrt(),
        })
    }
}

/// Optimal frame bounds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FrameBounds {
    pub is_frame: bool,
    pub lower: f64,
    pub upper: f64,
    pub tight: bool,
}

/// `λmin(P) > rank · λmax(P)`; bounds are `(λmin, λmax)`.
pub fn is_frame(f: &BesselFamily, tol: Tolerances) -> FrameBounds {
    let s = spectrum(f.frame_operator().matrix());
    let (lower, upper) = (s.min().max(0.0), s.max().max(0.0));
    let is_frame = upper > 0.0 && lower > tol.rank * upper;
    FrameBounds { is_frame, lower, upper, tight: is_frame && (upper - lower) <= 1e-9 * upper }
}

/// Builds a complex vector from real and imaginary parts.
pub fn complex_vector(re: &[f64], im: &[f64]) -> CVector {
    CVector::from_iterator(re.len(), re.iter().zip(im).map(|(&a, &b)| Complex64::new(a, b)))
}
