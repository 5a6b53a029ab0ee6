use serde::{Deserialize, Serialize};

use super::linalg::{identity, max_abs_diff, spectrum, CMatrix, Tolerances};
use super::FrameError;

/// Morphism classes of finite-dimensional Hilbert spaces.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OperatorClass {
    #[default]
    Any,
    Injective,
    /// Injective with closed range; the same as injective in finite
    /// dimensions.
    InjectiveClosedRange,
    Isometry,
}

const ISOMETRY_TOL: f64 = 1e-10;

impl OperatorClass {
    /// Whether `a` belongs to the class.
    pub fn admits(self, a: &CMatrix, tol: Tolerances) -> bool {
        match self {
            OperatorClass::Any => true,
            OperatorClass::Injective | OperatorClass::InjectiveClosedRange => {
                a.nrows() >= a.ncols() && spectrum(&(a.adjoint() * a)).rank(tol.rank) == a.ncols()
            }
            OperatorClass::Isometry => max_abs_diff(&(a.adjoint() * a), &identity(a.ncols())) <= ISOMETRY_TOL,
        }
    }
}

/// A matrix tagged with a class it was verified to belong to.
#[derive(Clone, Debug, PartialEq)]
pub struct OperatorMatrix {
    matrix: CMatrix,
    class: OperatorClass,
}

impl OperatorMatrix {
    pub fn new(matrix: CMatrix, class: OperatorClass, tol: Tolerances) -> Result<Self, FrameError> {
        if !class.admits(&matrix, tol) {
            return Err(FrameError::ClassViolation(format!("{}×{} matrix is not {class:?}", matrix.nrows(), matrix.ncols())));
        }
        Ok(OperatorMatrix { matrix, class })
    }

    pub fn any(matrix: CMatrix) -> Self {
        OperatorMatrix { matrix, class: OperatorClass::Any }
    }

    pub fn identity(n: usize) -> Self {
        OperatorMatrix { matrix: identity(n), class: OperatorClass::Isometry }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn class(&self) -> OperatorClass {
        self.class
    }

    pub fn rows(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn cols(&self) -> usize {
        self.matrix.ncols()
    }

    /// Re-checks membership in `variant`, whatever the tag says.
    pub fn require(&self, variant: OperatorClass, tol: Tolerances) -> Result<(), FrameError> {
        if variant.admits(&self.matrix, tol) {
            Ok(())
        } else {
            Err(FrameError::ClassViolation(format!("operator is not {variant:?}")))
        }
    }

    pub fn is_unitary(&self) -> bool {
        self.matrix.is_square() && OperatorClass::Isometry.admits(&self.matrix, Tolerances::default())
    }
}
