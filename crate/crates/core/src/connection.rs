//! Levi-Civita connection in a frame, covariant derivatives of frame tensors,
//! and Lie derivatives of the metric, the connection and the curvature.

use std::array;

use crate::error::{GeometryError, Result};
use crate::manifold::{Array3, FrameManifold, FrameTensor, Symmetry, VectorField};
use crate::scalar::{ratio, ScalarExpr, DIM};

/// Connection coefficients `∇_{eᵢ} eⱼ = Σₖ Γᵢⱼᵏ eₖ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Connection {
    gamma: Array3<ScalarExpr>,
}

/// Solves the Koszul formula on frame triples and raises the last index with
/// the inverse Gram matrix.
pub fn levi_civita(m: &FrameManifold) -> Result<Connection> {
    let g = m.metric_components();
    let c = m.structure_functions();
    // g(e_a, [e_b, e_c])
    let g_bracket = |a: usize, b: usize, cc: usize| -> ScalarExpr {
        (0..DIM).map(|l| &c[b][cc][l] * &g[a][l]).sum()
    };
    let mut koszul: Array3<ScalarExpr> = Default::default();
    for i in 0..DIM {
        for j in 0..DIM {
            for k in 0..DIM {
                let derivs = &(&m.frame_derivative(i, &g[j][k])? + &m.frame_derivative(j, &g[k][i])?)
                    - &m.frame_derivative(k, &g[i][j])?;
                let brackets =
                    &(&g_bracket(k, i, j) - &g_bracket(i, j, k)) - &g_bracket(j, i, k);
                koszul[i][j][k] = &derivs + &brackets;
            }
        }
    }
    let ginv = m.metric_inverse();
    let half = ScalarExpr::constant(ratio(1, 2));
    let gamma = array::from_fn(|i| {
        array::from_fn(|j| {
            array::from_fn(|l| {
                let s: ScalarExpr = (0..DIM).map(|k| &ginv[l][k] * &koszul[i][j][k]).sum();
                &s * &half
            })
        })
    });
    Ok(Connection { gamma })
}

impl Connection {
    pub fn from_coefficients(gamma: Array3<ScalarExpr>) -> Self {
        Connection { gamma }
    }

    pub fn coefficients(&self) -> &Array3<ScalarExpr> {
        &self.gamma
    }

    /// `∇_{eᵢ} eⱼ`.
    pub fn nabla_frame(&self, i: usize, j: usize) -> VectorField {
        VectorField(self.gamma[i][j].clone())
    }

    /// `∇_X Y = Σᵢ Xⁱ (eᵢ(Yᵏ) + Yʲ Γᵢⱼᵏ) eₖ`.
    pub fn nabla(&self, m: &FrameManifold, x: &VectorField, y: &VectorField) -> Result<VectorField> {
        let mut out: [ScalarExpr; DIM] = Default::default();
        for i in 0..DIM {
            let xi = x.component(i);
            if xi.is_canonical_zero() {
                continue;
            }
            for k in 0..DIM {
                let mut t = m.frame_derivative(i, y.component(k))?;
                for j in 0..DIM {
                    t = &t + &(y.component(j) * &self.gamma[i][j][k]);
                }
                out[k] = &out[k] + &(xi * &t);
            }
        }
        Ok(VectorField(out))
    }

    /// Frame-direction derivative `∇_{e_dir} T`, same valence as `T`.
    fn derivative_along(&self, m: &FrameManifold, dir: usize, t: &FrameTensor) -> Result<FrameTensor> {
        let (upper, lower) = t.valence();
        let mut err = None;
        let out = FrameTensor::from_fn(upper, lower, |idx| {
            let mut acc = match m.frame_derivative(dir, t.get(idx)) {
                Ok(d) => d,
                Err(e) => {
                    err.get_or_insert(e);
                    return ScalarExpr::zero();
                }
            };
            let mut shifted = idx.to_vec();
            for slot in 0..lower {
                let a = idx[slot];
                for e in 0..DIM {
                    let gam = &self.gamma[dir][a][e];
                    if gam.is_canonical_zero() {
                        continue;
                    }
                    shifted[slot] = e;
                    acc = &acc - &(gam * t.get(&shifted));
                }
                shifted[slot] = a;
            }
            if upper == 1 {
                let d = idx[lower];
                for e in 0..DIM {
                    let gam = &self.gamma[dir][e][d];
                    if gam.is_canonical_zero() {
                        continue;
                    }
                    shifted[lower] = e;
                    acc = &acc + &(gam * t.get(&shifted));
                }
            }
            acc
        });
        match err {
            Some(e) => Err(e),
            None => Ok(t.symmetries().iter().fold(out, |o, s| o.with_symmetry(*s))),
        }
    }

    /// `∇_X T` for a tensor of valence at most (1,3).
    pub fn covariant_derivative(
        &self,
        m: &FrameManifold,
        x: &VectorField,
        t: &FrameTensor,
    ) -> Result<FrameTensor> {
        let (upper, lower) = t.valence();
        if lower > 3 {
            return Err(GeometryError::ValenceOverflow { upper, lower });
        }
        let mut acc = FrameTensor::zero(upper, lower);
        for dir in 0..DIM {
            let c = x.component(dir);
            if c.is_canonical_zero() {
                continue;
            }
            acc = acc.add(&self.derivative_along(m, dir, t)?.scale(c));
        }
        Ok(t.symmetries().iter().fold(acc, |o, s| o.with_symmetry(*s)))
    }

    /// Full covariant derivative `∇T` with the direction as the first argument:
    /// `(∇T)(X, Y₁, …) = (∇_X T)(Y₁, …)`. The result must fit in (1,3).
    pub fn covariant_derivative_full(&self, m: &FrameManifold, t: &FrameTensor) -> Result<FrameTensor> {
        let (upper, lower) = t.valence();
        if lower + 1 > 3 {
            return Err(GeometryError::ValenceOverflow {
                upper,
                lower: lower + 1,
            });
        }
        let along: Vec<FrameTensor> = (0..DIM)
            .map(|dir| self.derivative_along(m, dir, t))
            .collect::<Result<_>>()?;
        let out = FrameTensor::from_fn(upper, lower + 1, |idx| along[idx[0]].get(&idx[1..]).clone());
        Ok(t.symmetries().iter().fold(out, |o, s| {
            o.with_symmetry(match *s {
                Symmetry::Symmetric(a, b) => Symmetry::Symmetric(a + 1, b + 1),
                Symmetry::Antisymmetric(a, b) => Symmetry::Antisymmetric(a + 1, b + 1),
            })
        }))
    }

    /// Nonzero components of `∇_{eᵢ}eⱼ − ∇_{eⱼ}eᵢ − [eᵢ,eⱼ]`.
    pub fn torsion_defects(&self, m: &FrameManifold) -> Vec<(Vec<usize>, ScalarExpr)> {
        let c = m.structure_functions();
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let d = &(&self.gamma[i][j][k] - &self.gamma[j][i][k]) - &c[i][j][k];
                    if !d.is_zero() {
                        out.push((vec![i, j, k], d));
                    }
                }
            }
        }
        out
    }

    /// Nonzero components of `eᵢ g(eⱼ,eₖ) − g(∇_{eᵢ}eⱼ,eₖ) − g(eⱼ,∇_{eᵢ}eₖ)`.
    pub fn metric_compatibility_defects(&self, m: &FrameManifold) -> Result<Vec<(Vec<usize>, ScalarExpr)>> {
        let g = m.metric_components();
        let mut out = Vec::new();
        for i in 0..DIM {
            for j in 0..DIM {
                for k in 0..DIM {
                    let mut d = m.frame_derivative(i, &g[j][k])?;
                    for l in 0..DIM {
                        d = &d - &(&self.gamma[i][j][l] * &g[l][k]);
                        d = &d - &(&self.gamma[i][k][l] * &g[j][l]);
                    }
                    if !d.is_zero() {
                        out.push((vec![i, j, k], d));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// `(L_V g)(X, Y) = g(∇_X V, Y) + g(X, ∇_Y V)`.
pub fn lie_derivative_metric(m: &FrameManifold, c: &Connection, v: &VectorField) -> Result<FrameTensor> {
    let nabla_v: Vec<VectorField> = (0..DIM)
        .map(|i| c.nabla(m, &VectorField::basis(i), v))
        .collect::<Result<_>>()?;
    Ok(FrameTensor::from_fn(0, 2, |idx| {
        let (i, j) = (idx[0], idx[1]);
        &m.g(&nabla_v[i], &VectorField::basis(j)) + &m.g(&VectorField::basis(i), &nabla_v[j])
    })
    .with_symmetry(Symmetry::Symmetric(0, 1)))
}

/// `L_V ∇` from
/// `2g((L_V∇)(X,Y),Z) = (∇_X h)(Y,Z) + (∇_Y h)(Z,X) − (∇_Z h)(X,Y)`, `h = L_V g`.
pub fn lie_derivative_connection(m: &FrameManifold, c: &Connection, v: &VectorField) -> Result<FrameTensor> {
    let h = lie_derivative_metric(m, c, v)?;
    let dh = c.covariant_derivative_full(m, &h)?;
    let half = ScalarExpr::constant(ratio(1, 2));
    let lowered: Array3<ScalarExpr> = array::from_fn(|x| {
        array::from_fn(|y| {
            array::from_fn(|z| {
                let s = &(dh.get(&[x, y, z]) + dh.get(&[y, z, x])) - dh.get(&[z, x, y]);
                &s * &half
            })
        })
    });
    let ginv = m.metric_inverse();
    Ok(FrameTensor::from_fn(1, 2, |idx| {
        let (x, y, d) = (idx[0], idx[1], idx[2]);
        (0..DIM).map(|z| &ginv[d][z] * &lowered[x][y][z]).sum()
    })
    .with_symmetry(Symmetry::Symmetric(0, 1)))
}

/// `(L_V R)(X,Y)Z = (∇_X L_V∇)(Y,Z) − (∇_Y L_V∇)(X,Z)`.
pub fn lie_derivative_curvature(m: &FrameManifold, c: &Connection, v: &VectorField) -> Result<FrameTensor> {
    let lc = lie_derivative_connection(m, c, v)?;
    let d = c.covariant_derivative_full(m, &lc)?;
    Ok(FrameTensor::from_fn(1, 3, |idx| {
        let (x, y, z, w) = (idx[0], idx[1], idx[2], idx[3]);
        d.get(&[x, y, z, w]) - d.get(&[y, x, z, w])
    })
    .with_symmetry(Symmetry::Antisymmetric(0, 1)))
}

/// Defects of `(∇_X L_V g)(Y,Z) = g((L_V∇)(X,Y),Z) + g((L_V∇)(X,Z),Y)` on frame triples.
pub fn commutation_defects(
    m: &FrameManifold,
    c: &Connection,
    v: &VectorField,
) -> Result<Vec<(Vec<usize>, ScalarExpr)>> {
    let h = lie_derivative_metric(m, c, v)?;
    let dh = c.covariant_derivative_full(m, &h)?;
    let lc = lie_derivative_connection(m, c, v)?;
    let mut out = Vec::new();
    for x in 0..DIM {
        for y in 0..DIM {
            for z in 0..DIM {
                let rhs = &m.g(&lc.vector_at(&[x, y]), &VectorField::basis(z))
                    + &m.g(&lc.vector_at(&[x, z]), &VectorField::basis(y));
                let d = dh.get(&[x, y, z]) - &rhs;
                if !d.is_zero() {
                    out.push((vec![x, y, z], d));
                }
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testing::{e, example, field, flat, s3};

    fn vec_of(c: [i64; 3]) -> VectorField {
        VectorField::new(c.map(ScalarExpr::int))
    }

    #[test]
    fn example_connection_table() {
        let m = example();
        let c = levi_civita(&m).unwrap();
        let table = [
            [[0, 0, 2], [0, 0, 0], [-2, 0, 0]],
            [[0, 0, 0], [0, 0, 2], [0, -2, 0]],
            [[0, 0, 0], [0, 0, 0], [0, 0, 0]],
        ];
        for i in 0..DIM {
            for j in 0..DIM {
                assert_eq!(c.nabla_frame(i, j), vec_of(table[i][j]), "nabla e{} e{}", i + 1, j + 1);
            }
        }
        assert!(c.torsion_defects(&m).is_empty());
        assert!(c.metric_compatibility_defects(&m).unwrap().is_empty());
    }

    #[test]
    fn flat_and_sphere_connections() {
        let m = flat();
        let c = levi_civita(&m).unwrap();
        assert!(c.coefficients().iter().flatten().flatten().all(|g| g.is_canonical_zero()));

        let m = s3();
        let c = levi_civita(&m).unwrap();
        assert_eq!(c.nabla_frame(0, 1), vec_of([0, 0, 1]));
        assert_eq!(c.nabla_frame(1, 2), vec_of([1, 0, 0]));
        assert_eq!(c.nabla_frame(2, 0), vec_of([0, 1, 0]));
        assert_eq!(c.nabla_frame(1, 0), vec_of([0, 0, -1]));
        assert!(c.torsion_defects(&m).is_empty());
        assert!(c.metric_compatibility_defects(&m).unwrap().is_empty());
    }

    #[test]
    fn metric_is_parallel() {
        for m in [example(), s3(), flat()] {
            let c = levi_civita(&m).unwrap();
            let x = VectorField::new([ScalarExpr::int(1), ScalarExpr::int(2), ScalarExpr::int(-1)]);
            let dg = c.covariant_derivative(&m, &x, &m.metric_tensor()).unwrap();
            assert!(dg.is_zero());
        }
    }

    #[test]
    fn valence_limit() {
        let m = flat();
        let c = levi_civita(&m).unwrap();
        let t = FrameTensor::zero(1, 3);
        assert_eq!(
            c.covariant_derivative_full(&m, &t).unwrap_err(),
            GeometryError::ValenceOverflow { upper: 1, lower: 4 }
        );
    }

    #[test]
    fn lie_derivative_of_metric() {
        let m = example();
        let c = levi_civita(&m).unwrap();
        let xi = VectorField::basis(2);
        let h = lie_derivative_metric(&m, &c, &xi).unwrap();
        assert_eq!(h.get(&[0, 0]), &e("-4"));
        assert_eq!(h.get(&[1, 1]), &e("-4"));
        assert!(h.get(&[2, 2]).is_canonical_zero());
        assert!(h.get(&[0, 1]).is_canonical_zero());

        let m = s3();
        let c = levi_civita(&m).unwrap();
        assert!(lie_derivative_metric(&m, &c, &VectorField::basis(2)).unwrap().is_zero());
    }

    /// `(L_V∇)(X,Y) = [V,∇_X Y] − ∇_{[V,X]}Y − ∇_X[V,Y]`.
    fn lie_connection_oracle(m: &FrameManifold, c: &Connection, v: &VectorField, x: usize, y: usize) -> VectorField {
        let (ex, ey) = (VectorField::basis(x), VectorField::basis(y));
        let a = m.lie_bracket(v, &c.nabla(m, &ex, &ey).unwrap()).unwrap();
        let b = c.nabla(m, &m.lie_bracket(v, &ex).unwrap(), &ey).unwrap();
        let d = c.nabla(m, &ex, &m.lie_bracket(v, &ey).unwrap()).unwrap();
        a.sub(&b).sub(&d)
    }

    #[test]
    fn lie_derivative_connection_matches_bracket_form() {
        let m = example();
        let c = levi_civita(&m).unwrap();
        for v in [
            field(["x*exp(-2*z)", "y*z", "1 + x"]),
            field(["sin(x)", "0", "exp(2*z)"]),
        ] {
            let lc = lie_derivative_connection(&m, &c, &v).unwrap();
            assert!(lc.symmetry_defects().is_empty());
            for x in 0..DIM {
                for y in 0..DIM {
                    let d = lc.vector_at(&[x, y]).sub(&lie_connection_oracle(&m, &c, &v, x, y));
                    assert!(d.is_zero(), "({x},{y}): {d}");
                }
            }
            assert!(commutation_defects(&m, &c, &v).unwrap().is_empty());
        }
    }

    #[test]
    fn lie_derivatives_vanish_for_killing_and_affine_fields() {
        let m = s3();
        let c = levi_civita(&m).unwrap();
        let xi = VectorField::basis(2);
        assert!(lie_derivative_connection(&m, &c, &xi).unwrap().is_zero());
        assert!(lie_derivative_curvature(&m, &c, &xi).unwrap().is_zero());

        let m = flat();
        let c = levi_civita(&m).unwrap();
        let pos = field(["x", "y", "z"]);
        let h = lie_derivative_metric(&m, &c, &pos).unwrap();
        assert!(h.sub(&m.metric_tensor().scale(&ScalarExpr::int(2))).is_zero());
        assert!(lie_derivative_connection(&m, &c, &pos).unwrap().is_zero());
        assert!(lie_derivative_curvature(&m, &c, &pos.scale(&e("-3"))).unwrap().is_zero());
    }

    #[test]
    fn lie_derivative_curvature_matches_bracket_form() {
        let m = example();
        let c = levi_civita(&m).unwrap();
        let k = crate::curvature::riemann(&m, &c).unwrap();
        let r = |x: &VectorField, y: &VectorField, z: &VectorField| {
            k.eval(&[x.clone(), y.clone(), z.clone()]).unwrap().vector().unwrap()
        };
        let v = field(["x*exp(-2*z)", "y", "z"]);
        let lr = lie_derivative_curvature(&m, &c, &v).unwrap();
        assert!(lr.symmetry_defects().is_empty());
        let br = |a: &VectorField| m.lie_bracket(&v, a).unwrap();
        for a in 0..DIM {
            for b in 0..DIM {
                for cc in 0..DIM {
                    let (x, y, z) = (VectorField::basis(a), VectorField::basis(b), VectorField::basis(cc));
                    let oracle = br(&r(&x, &y, &z))
                        .sub(&r(&br(&x), &y, &z))
                        .sub(&r(&x, &br(&y), &z))
                        .sub(&r(&x, &y, &br(&z)));
                    assert!(lr.vector_at(&[a, b, cc]).sub(&oracle).is_zero());
                }
            }
        }
    }
}
