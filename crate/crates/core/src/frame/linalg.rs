use nalgebra::{DMatrix, DVector, SymmetricEigen};
use num_complex::Complex64;

pub type CMatrix = DMatrix<Complex64>;
pub type CVector = DVector<Complex64>;

/// Numerical thresholds, always passed explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tolerances {
    /// Eigenvalues at most `rank · λmax` count as zero.
    pub rank: f64,
    /// Eigenvalues down to `-psd · λmax` are clamped to zero; below that a
    /// form is rejected.
    pub psd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-10, psd: 1e-9 }
    }
}

/// Eigenvalues in ascending order with matching eigenvector columns.
#[derive(Clone, Debug)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub vectors: CMatrix,
}

impl Spectrum {
    pub fn max(&self) -> f64 {
        self.values.last().copied().unwrap_or(0.0)
    }

    pub fn min(&self) -> f64 {
        self.values.first().copied().unwrap_or(0.0)
    }

    /// Number of eigenvalues above `rel · max(λmax, 0)`.
    pub fn rank(&self, rel: f64) -> usize {
        let cut = rel * self.max().max(0.0);
        self.values.iter().filter(|&&l| l > cut && l > 0.0).count()
    }

    /// Columns for eigenvalues at or below the cut.
    pub fn kernel_basis(&self, rel: f64) -> CMatrix {
        let k = self.values.len() - self.rank(rel);
        self.vectors.columns(0, k).into_owned()
    }

    /// Columns and eigenvalues above the cut.
    pub fn range(&self, rel: f64) -> (CMatrix, Vec<f64>) {
        let n = self.values.len();
        let r = self.rank(rel);
        (self.vectors.columns(n - r, r).into_owned(), self.values[n - r..].to_vec())
    }
}

pub fn hermitian_part(p: &CMatrix) -> CMatrix {
    (p + p.adjoint()).scale(0.5)
}

/// Spectrum of the Hermitian part of `p`.
pub fn spectrum(p: &CMatrix) -> Spectrum {
    let n = p.nrows();
    if n == 0 {
        return Spectrum { values: Vec::new(), vectors: CMatrix::zeros(0, 0) };
    }
    let eig = SymmetricEigen::new(hermitian_part(p));
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(n, n, |r, c| eig.eigenvectors[(r, order[c])]);
    Spectrum { values, vectors }
}

/// `Q f(Λ) Q*` over the eigenvalues kept by `keep`, others sent to zero.
pub fn spectral_apply(s: &Spectrum, f: impl Fn(f64) -> f64, keep: impl Fn(f64) -> bool) -> CMatrix {
    let n = s.values.len();
    let mut out = CMatrix::zeros(n, n);
    for (i, &l) in s.values.iter().enumerate() {
        if keep(l) {
            let v = s.vectors.column(i);
            out += (&v * v.adjoint()).scale(f(l));
        }
    }
    out
}

/// Largest singular value.
pub fn spectral_norm(a: &CMatrix) -> f64 {
    if a.is_empty() {
        return 0.0;
    }
    a.singular_values().max()
}

/// `max |a_ij - b_ij|`.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter().zip(b.iter()).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

pub fn max_abs(a: &CMatrix) -> f64 {
    a.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

pub fn is_real(a: &CMatrix) -> bool {
    a.iter().all(|z| z.im == 0.0)
}

/// `x* P x`, real part.
pub fn quadratic_form(p: &CMatrix, x: &CVector) -> f64 {
    (x.adjoint() * p * x)[(0, 0)].re
}

pub fn real_matrix(rows: usize, cols: usize, data: &[f64]) -> CMatrix {
    CMatrix::from_row_iterator(rows, cols, data.iter().map(|&x| Complex64::new(x, 0.0)))
}

pub fn real_vector(data: &[f64]) -> CVector {
    CVector::from_iterator(data.len(), data.iter().map(|&x| Complex64::new(x, 0.0)))
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}
