use thiserror::Error;

use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error(transparent)]
    Scalar(#[from] ScalarError),

    #[error("frame matrix is singular (determinant {0} vanishes)")]
    SingularFrame(String),

    #[error("frame inverse is outside the coefficient grammar: determinant {0} is not a constant or exponential term")]
    FrameInverseUnrepresentable(String),

    #[error("structure constants are not antisymmetric: c[{i}][{j}][{k}] != -c[{j}][{i}][{k}]")]
    StructureNotAntisymmetric { i: usize, j: usize, k: usize },

    #[error("structure constants violate the Jacobi identity (component {0})")]
    JacobiViolated(String),

    #[error("metric is not symmetric at ({0},{1})")]
    MetricNotSymmetric(usize, usize),

    #[error("metric is not positive definite at the base point")]
    MetricNotPositiveDefinite,

    #[error("metric Gram matrix is singular or not invertible in the coefficient grammar")]
    SingularMetric,

    #[error("non-constant scalar {0} cannot be differentiated along a left-invariant frame")]
    NonConstantInLieMode(String),

    #[error("tensor of valence ({upper},{lower}) expects {lower} arguments, got {got}")]
    ArityMismatch { upper: usize, lower: usize, got: usize },

    #[error("valence ({upper},{lower}) exceeds the supported maximum (1,3)")]
    ValenceOverflow { upper: usize, lower: usize },

    #[error("leg e{0} is characteristic (g(phi e, phi e) = 0) for every candidate leg")]
    DegenerateLeg(usize),

    #[error("almost contact structure is invalid: {0}")]
    InvalidContactStructure(String),

    #[error("structure functions are not constant: {0}")]
    NonConstantStructure(String),

    #[error("soliton problem is inconsistent: {0}")]
    ProblemMismatch(String),

    #[error("theorem hypothesis violated: {0}")]
    HypothesisViolated(String),
}

pub type Result<T, E = GeometryError> = std::result::Result<T, E>;
