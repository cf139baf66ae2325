//! Three-dimensional manifolds described by a global frame `e₁, e₂, e₃`.
//!
//! In chart mode the frame is given by coefficient functions on one chart,
//! `eᵢ = Σⱼ aᵢⱼ ∂/∂xⱼ`. In Lie mode it is a left-invariant frame given by
//! rational structure constants `[eᵢ, eⱼ] = Σₖ cᵢⱼᵏ eₖ`; scalars are then
//! constants and every field component must be constant.

mod tensor;

use std::array;
use std::fmt;

use num::Zero;

use crate::error::{GeometryError, Result};
use crate::scalar::{Rational, ScalarExpr, DIM};

pub use tensor::{FrameTensor, Symmetry, TensorValue};

pub type Matrix3 = [[ScalarExpr; DIM]; DIM];
pub type Array3<T> = [[[T; DIM]; DIM]; DIM];

/// 1-based label for a frame multi-index, e.g. `(1,3)`.
pub fn index_label(idx: &[usize]) -> String {
    let parts: Vec<String> = idx.iter().map(|i| (i + 1).to_string()).collect();
    format!("({})", parts.join(","))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Chart,
    Lie,
}

/// A vector field expressed in the frame basis, `X = Σᵢ Xⁱ eᵢ`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct VectorField(pub [ScalarExpr; DIM]);

impl fmt::Debug for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "VectorField({self})")
    }
}

impl fmt::Display for VectorField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl VectorField {
    pub fn new(components: [ScalarExpr; DIM]) -> Self {
        VectorField(components)
    }

    pub fn zero() -> Self {
        VectorField::default()
    }

    /// Frame vector `e_{i+1}`.
    pub fn basis(i: usize) -> Self {
        let mut v = VectorField::zero();
        v.0[i] = ScalarExpr::one();
        v
    }

    pub fn component(&self, i: usize) -> &ScalarExpr {
        &self.0[i]
    }

    pub fn scale(&self, f: &ScalarExpr) -> Self {
        VectorField(array::from_fn(|i| &self.0[i] * f))
    }

    pub fn add(&self, other: &VectorField) -> Self {
        VectorField(array::from_fn(|i| &self.0[i] + &other.0[i]))
    }

    pub fn sub(&self, other: &VectorField) -> Self {
        VectorField(array::from_fn(|i| &self.0[i] - &other.0[i]))
    }

    pub fn neg(&self) -> Self {
        VectorField(array::from_fn(|i| -&self.0[i]))
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(ScalarExpr::is_zero)
    }

    pub fn is_constant(&self) -> bool {
        self.0.iter().all(ScalarExpr::is_constant)
    }

    /// `Σ cᵢ vᵢ` for scalar coefficients `cᵢ`.
    pub fn combination<'a>(
        terms: impl IntoIterator<Item = (&'a ScalarExpr, &'a VectorField)>,
    ) -> Self {
        let mut acc = VectorField::zero();
        for (c, v) in terms {
            acc = acc.add(&v.scale(c));
        }
        acc
    }
}

#[derive(Debug, Clone)]
enum FrameKind {
    Chart { frame: Matrix3, inverse: Matrix3 },
    Lie { constants: Array3<Rational> },
}

/// A 3-manifold with a global frame and a frame metric `g(eᵢ, eⱼ)`.
#[derive(Debug, Clone)]
pub struct FrameManifold {
    kind: FrameKind,
    metric: Matrix3,
    metric_inv: Matrix3,
    structure: Array3<ScalarExpr>,
    base_point: [Rational; DIM],
}

fn identity3() -> Matrix3 {
    array::from_fn(|i| array::from_fn(|j| ScalarExpr::int((i == j) as i64)))
}

fn det3(m: &Matrix3) -> ScalarExpr {
    let minor = |a: usize, b: usize, c: usize, d: usize| &(&m[1][a] * &m[2][b]) - &(&m[1][c] * &m[2][d]);
    &(&(&m[0][0] * &minor(1, 2, 2, 1)) - &(&m[0][1] * &minor(0, 2, 2, 0)))
        + &(&m[0][2] * &minor(0, 1, 1, 0))
}

/// Inverse by adjugate; the determinant must be a constant or exponential term.
fn inverse3(m: &Matrix3) -> std::result::Result<Matrix3, ScalarExpr> {
    let det = det3(m);
    let inv_det = det.try_inv().map_err(|_| det.clone())?;
    let cof = |r: usize, c: usize| {
        let rows: Vec<usize> = (0..DIM).filter(|&k| k != r).collect();
        let cols: Vec<usize> = (0..DIM).filter(|&k| k != c).collect();
        let minor = &(&m[rows[0]][cols[0]] * &m[rows[1]][cols[1]])
            - &(&m[rows[0]][cols[1]] * &m[rows[1]][cols[0]]);
        if (r + c).is_multiple_of(2) {
            minor
        } else {
            -minor
        }
    };
    // inverse[i][j] = cofactor[j][i] / det
    Ok(array::from_fn(|i| array::from_fn(|j| &cof(j, i) * &inv_det)))
}

impl FrameManifold {
    /// Chart-mode manifold with `eᵢ = Σⱼ frame[i][j] ∂/∂xⱼ`.
    pub fn chart(
        frame: Matrix3,
        metric: Option<Matrix3>,
        base_point: [Rational; DIM],
    ) -> Result<Self> {
        let det = det3(&frame);
        if det.is_zero() {
            return Err(GeometryError::SingularFrame(det.to_string()));
        }
        let inverse = inverse3(&frame)
            .map_err(|d| GeometryError::FrameInverseUnrepresentable(d.to_string()))?;

        // [eᵢ,eⱼ] in coordinates: Σₗ (eᵢ(aⱼₗ) − eⱼ(aᵢₗ)) ∂ₗ, pulled back with the inverse.
        let dir = |i: usize, f: &ScalarExpr| -> ScalarExpr {
            (0..DIM).map(|j| &frame[i][j] * &f.diff(j)).sum()
        };
        let structure: Array3<ScalarExpr> = array::from_fn(|i| {
            array::from_fn(|j| {
                let coord: [ScalarExpr; DIM] =
                    array::from_fn(|l| &dir(i, &frame[j][l]) - &dir(j, &frame[i][l]));
                array::from_fn(|k| (0..DIM).map(|l| &coord[l] * &inverse[l][k]).sum())
            })
        });

        let metric = metric.unwrap_or_else(identity3);
        let metric_inv = validate_metric(&metric, &base_point)?;
        Ok(FrameManifold {
            kind: FrameKind::Chart { frame, inverse },
            metric,
            metric_inv,
            structure,
            base_point,
        })
    }

    /// Lie-mode manifold with structure constants `constants[i][j][k] = cᵢⱼᵏ`.
    pub fn lie(constants: Array3<Rational>, metric: Option<Matrix3>) -> Result<Self> {
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    if constants[i][j][k] != -constants[j][i][k].clone() {
                        return Err(GeometryError::StructureNotAntisymmetric { i, j, k });
                    }
                }
            }
        }
        // In dimension 3 the identity only needs checking on (e1, e2, e3).
        let (i, j, k) = (0, 1, 2);
        for m in 0..DIM {
            let mut total = Rational::zero();
            for l in 0..DIM {
                total += &constants[j][k][l] * &constants[i][l][m];
                total += &constants[k][i][l] * &constants[j][l][m];
                total += &constants[i][j][l] * &constants[k][l][m];
            }
            if !total.is_zero() {
                return Err(GeometryError::JacobiViolated(format!("e{}", m + 1)));
            }
        }
        let metric = metric.unwrap_or_else(identity3);
        for row in &metric {
            for g in row {
                if !g.is_constant() {
                    return Err(GeometryError::NonConstantInLieMode(g.to_string()));
                }
            }
        }
        let base_point = array::from_fn(|_| Rational::zero());
        let metric_inv = validate_metric(&metric, &base_point)?;
        let structure = array::from_fn(|i| {
            array::from_fn(|j| array::from_fn(|k| ScalarExpr::constant(constants[i][j][k].clone())))
        });
        Ok(FrameManifold {
            kind: FrameKind::Lie { constants },
            metric,
            metric_inv,
            structure,
            base_point,
        })
    }

    pub fn mode(&self) -> Mode {
        match self.kind {
            FrameKind::Chart { .. } => Mode::Chart,
            FrameKind::Lie { .. } => Mode::Lie,
        }
    }

    /// Frame coefficients `aᵢⱼ` (chart mode only).
    pub fn frame_coefficients(&self) -> Option<&Matrix3> {
        match &self.kind {
            FrameKind::Chart { frame, .. } => Some(frame),
            FrameKind::Lie { .. } => None,
        }
    }

    pub fn structure_constants(&self) -> Option<&Array3<Rational>> {
        match &self.kind {
            FrameKind::Lie { constants } => Some(constants),
            FrameKind::Chart { .. } => None,
        }
    }

    pub fn base_point(&self) -> &[Rational; DIM] {
        &self.base_point
    }

    pub fn metric_components(&self) -> &Matrix3 {
        &self.metric
    }

    pub fn metric_inverse(&self) -> &Matrix3 {
        &self.metric_inv
    }

    /// Structure functions `cᵢⱼᵏ` with `[eᵢ, eⱼ] = Σₖ cᵢⱼᵏ eₖ`.
    pub fn structure_functions(&self) -> &Array3<ScalarExpr> {
        &self.structure
    }

    /// `[eᵢ, eⱼ]` as a vector field.
    pub fn frame_bracket(&self, i: usize, j: usize) -> VectorField {
        VectorField(self.structure[i][j].clone())
    }

    /// Directional derivative `eᵢ(f)`.
    pub fn frame_derivative(&self, i: usize, f: &ScalarExpr) -> Result<ScalarExpr> {
        match &self.kind {
            FrameKind::Chart { frame, .. } => {
                Ok((0..DIM).map(|j| &frame[i][j] * &f.diff(j)).sum())
            }
            FrameKind::Lie { .. } => {
                if f.is_constant() {
                    Ok(ScalarExpr::zero())
                } else {
                    Err(GeometryError::NonConstantInLieMode(f.to_string()))
                }
            }
        }
    }

    /// `X(f) = Σᵢ Xⁱ eᵢ(f)`.
    pub fn apply_field(&self, x: &VectorField, f: &ScalarExpr) -> Result<ScalarExpr> {
        let mut acc = ScalarExpr::zero();
        for i in 0..DIM {
            if x.0[i].is_canonical_zero() {
                continue;
            }
            acc = &acc + &(&x.0[i] * &self.frame_derivative(i, f)?);
        }
        Ok(acc)
    }

    /// Lie bracket `[X, Y]` in the frame basis.
    pub fn lie_bracket(&self, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        match &self.kind {
            FrameKind::Chart { frame, inverse } => {
                let push = |v: &VectorField| -> [ScalarExpr; DIM] {
                    array::from_fn(|l| (0..DIM).map(|i| &v.0[i] * &frame[i][l]).sum())
                };
                let xc = push(x);
                let yc = push(y);
                let coord: [ScalarExpr; DIM] = array::from_fn(|k| {
                    (0..DIM)
                        .map(|j| &(&xc[j] * &yc[k].diff(j)) - &(&yc[j] * &xc[k].diff(j)))
                        .sum()
                });
                Ok(VectorField(array::from_fn(|k| {
                    (0..DIM).map(|l| &coord[l] * &inverse[l][k]).sum()
                })))
            }
            FrameKind::Lie { .. } => {
                let mut out: [ScalarExpr; DIM] = Default::default();
                for i in 0..DIM {
                    for j in 0..DIM {
                        let dy = &x.0[i] * &self.frame_derivative(i, &y.0[j])?;
                        let dx = &y.0[i] * &self.frame_derivative(i, &x.0[j])?;
                        out[j] = &(&out[j] + &dy) - &dx;
                        let xy = &x.0[i] * &y.0[j];
                        if xy.is_canonical_zero() {
                            continue;
                        }
                        for k in 0..DIM {
                            out[k] = &out[k] + &(&xy * &self.structure[i][j][k]);
                        }
                    }
                }
                Ok(VectorField(out))
            }
        }
    }

    /// `g(X, Y)`.
    pub fn g(&self, x: &VectorField, y: &VectorField) -> ScalarExpr {
        let mut acc = ScalarExpr::zero();
        for i in 0..DIM {
            if x.0[i].is_canonical_zero() {
                continue;
            }
            for j in 0..DIM {
                if y.0[j].is_canonical_zero() || self.metric[i][j].is_canonical_zero() {
                    continue;
                }
                acc = &acc + &(&(&x.0[i] * &y.0[j]) * &self.metric[i][j]);
            }
        }
        acc
    }

    /// The metric as a symmetric (0,2) frame tensor.
    pub fn metric_tensor(&self) -> FrameTensor {
        FrameTensor::from_fn(0, 2, |idx| self.metric[idx[0]][idx[1]].clone())
            .with_symmetry(Symmetry::Symmetric(0, 1))
    }

    /// Raises an index: the vector `W` with `g(W, Y) = ω(Y)` for covector components `ω`.
    pub fn raise(&self, covector: &[ScalarExpr; DIM]) -> VectorField {
        VectorField(array::from_fn(|k| {
            (0..DIM).map(|j| &self.metric_inv[k][j] * &covector[j]).sum()
        }))
    }

    /// Gradient `Df` with `g(Df, X) = X(f)`.
    pub fn gradient(&self, f: &ScalarExpr) -> Result<VectorField> {
        let d: [ScalarExpr; DIM] = [
            self.frame_derivative(0, f)?,
            self.frame_derivative(1, f)?,
            self.frame_derivative(2, f)?,
        ];
        Ok(self.raise(&d))
    }
}

fn validate_metric(metric: &Matrix3, base_point: &[Rational; DIM]) -> Result<Matrix3> {
    for i in 0..DIM {
        for j in (i + 1)..DIM {
            if !(&metric[i][j] - &metric[j][i]).is_zero() {
                return Err(GeometryError::MetricNotSymmetric(i + 1, j + 1));
            }
        }
    }
    // Sylvester's criterion at the base point.
    let m: [[f64; DIM]; DIM] =
        array::from_fn(|i| array::from_fn(|j| metric[i][j].eval_rational(base_point)));
    let d1 = m[0][0];
    let d2 = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let d3 = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1])
        - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
    if !(d1 > 0.0 && d2 > 0.0 && d3 > 0.0) {
        return Err(GeometryError::MetricNotPositiveDefinite);
    }
    inverse3(metric).map_err(|_| GeometryError::SingularMetric)
}
