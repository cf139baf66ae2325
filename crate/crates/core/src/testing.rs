//! Hand-built manifolds shared by unit tests.

use std::array;

use crate::manifold::{Array3, FrameManifold, FrameTensor, VectorField};
use crate::scalar::{rat, Rational, ScalarExpr};

pub fn e(s: &str) -> ScalarExpr {
    s.parse().unwrap()
}

pub fn field(c: [&str; 3]) -> VectorField {
    VectorField::new(c.map(e))
}

/// `e₁ = e^{2z}∂x, e₂ = e^{2z}∂y, e₃ = ∂z`, orthonormal.
pub fn example() -> FrameManifold {
    FrameManifold::chart(
        [
            [e("exp(2*z)"), e("0"), e("0")],
            [e("0"), e("exp(2*z)"), e("0")],
            [e("0"), e("0"), e("1")],
        ],
        None,
        array::from_fn(|_| rat(0)),
    )
    .unwrap()
}

/// SU(2) with `[e₁,e₂] = 2e₃` and cyclic.
pub fn s3() -> FrameManifold {
    let mut c: Array3<Rational> = Default::default();
    for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        c[i][j][k] = rat(2);
        c[j][i][k] = rat(-2);
    }
    FrameManifold::lie(c, None).unwrap()
}

pub fn flat() -> FrameManifold {
    FrameManifold::chart(
        array::from_fn(|i| array::from_fn(|j| ScalarExpr::int((i == j) as i64))),
        None,
        array::from_fn(|_| rat(0)),
    )
    .unwrap()
}

/// `φe₁ = e₂, φe₂ = −e₁, φe₃ = 0`.
pub fn standard_phi() -> FrameTensor {
    FrameTensor::from_fn(1, 1, |i| match (i[0], i[1]) {
        (0, 1) => ScalarExpr::int(1),
        (1, 0) => ScalarExpr::int(-1),
        _ => ScalarExpr::zero(),
    })
}
