//! Riemann, Ricci, Ricci operator, scalar curvature and *-Ricci tensor.
//!
//! Sign convention: `R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_{[X,Y]} Z`. With it the
//! round unit sphere has `R(X,Y)Z = g(Y,Z)X − g(X,Z)Y` and, on a trans-Sasakian
//! manifold with constant structure functions, `R(X,Y)ξ = (α²−β²)(η(Y)X − η(X)Y)`.

use crate::connection::Connection;
use crate::error::Result;
use crate::manifold::{FrameManifold, FrameTensor, Symmetry, VectorField};
use crate::scalar::{ratio, ScalarExpr, DIM};

/// Curvature tensor with components `R(eₐ,e_b)e_c = Σ_d R[a,b,c,d] e_d`.
pub fn riemann(m: &FrameManifold, c: &Connection) -> Result<FrameTensor> {
    let gamma = c.coefficients();
    let cs = m.structure_functions();
    let mut err = None;
    let r = FrameTensor::from_fn(1, 3, |idx| {
        let (a, b, cc, d) = (idx[0], idx[1], idx[2], idx[3]);
        let derivs = m
            .frame_derivative(a, &gamma[b][cc][d])
            .and_then(|x| Ok(&x - &m.frame_derivative(b, &gamma[a][cc][d])?));
        let mut acc = match derivs {
            Ok(v) => v,
            Err(e) => {
                err.get_or_insert(e);
                return ScalarExpr::zero();
            }
        };
        for e in 0..DIM {
            acc = &acc + &(&gamma[b][cc][e] * &gamma[a][e][d]);
            acc = &acc - &(&gamma[a][cc][e] * &gamma[b][e][d]);
            acc = &acc - &(&cs[a][b][e] * &gamma[e][cc][d]);
        }
        acc
    });
    match err {
        Some(e) => Err(e),
        None => Ok(r.with_symmetry(Symmetry::Antisymmetric(0, 1))),
    }
}

/// Ricci tensor `S(X,Y) = trace(Z ↦ R(Z,X)Y)`, Ricci operator with
/// `g(QX,Y) = S(X,Y)`, and scalar curvature `r = trace Q`.
pub fn ricci(m: &FrameManifold, riemann: &FrameTensor) -> (FrameTensor, FrameTensor, ScalarExpr) {
    let s = FrameTensor::from_fn(0, 2, |idx| {
        (0..DIM)
            .map(|k| riemann.get(&[k, idx[0], idx[1], k]).clone())
            .sum()
    })
    .with_symmetry(Symmetry::Symmetric(0, 1));
    let ginv = m.metric_inverse();
    // Q(eᵢ) = Σₖ Q[i,k] eₖ with Σₖ Q[i,k] g_kj = S_ij
    let q = FrameTensor::from_fn(1, 1, |idx| {
        (0..DIM)
            .map(|j| s.get(&[idx[0], j]) * &ginv[j][idx[1]])
            .sum()
    });
    let r = (0..DIM).map(|i| q.get(&[i, i]).clone()).sum();
    (s, q, r)
}

/// `S*(X,Y) = ½ trace(Z ↦ φ R(X, φY) Z)`.
pub fn star_ricci(riemann: &FrameTensor, phi: &FrameTensor) -> FrameTensor {
    let half = ScalarExpr::constant(ratio(1, 2));
    FrameTensor::from_fn(0, 2, |idx| {
        let (i, j) = (idx[0], idx[1]);
        let mut acc = ScalarExpr::zero();
        for b in 0..DIM {
            let phi_jb = phi.get(&[j, b]);
            if phi_jb.is_canonical_zero() {
                continue;
            }
            for cc in 0..DIM {
                for d in 0..DIM {
                    let phi_dc = phi.get(&[d, cc]);
                    if phi_dc.is_canonical_zero() {
                        continue;
                    }
                    acc = &acc + &(&(phi_jb * riemann.get(&[i, b, cc, d])) * phi_dc);
                }
            }
        }
        &acc * &half
    })
}

/// All curvature quantities of a frame manifold.
#[derive(Debug, Clone)]
pub struct CurvatureBundle {
    pub riemann: FrameTensor,
    pub ricci: FrameTensor,
    pub ricci_operator: FrameTensor,
    pub scalar: ScalarExpr,
    pub star_ricci: Option<FrameTensor>,
}

impl CurvatureBundle {
    pub fn compute(m: &FrameManifold, c: &Connection, phi: Option<&FrameTensor>) -> Result<Self> {
        let riemann = riemann(m, c)?;
        let (ricci, ricci_operator, scalar) = ricci(m, &riemann);
        let star_ricci = phi.map(|p| star_ricci(&riemann, p));
        Ok(CurvatureBundle {
            riemann,
            ricci,
            ricci_operator,
            scalar,
            star_ricci,
        })
    }

    /// `R(X,Y)Z`.
    pub fn curvature_vector(&self, x: &VectorField, y: &VectorField, z: &VectorField) -> Result<VectorField> {
        Ok(self
            .riemann
            .eval(&[x.clone(), y.clone(), z.clone()])?
            .vector()
            .expect("curvature is vector valued"))
    }

    /// Defects of `R(X,Y)Z = −R(Y,X)Z` on frame triples.
    pub fn skew_defects(&self) -> Vec<(Vec<usize>, ScalarExpr)> {
        self.riemann.symmetry_defects()
    }

    /// Defects of `g(R(X,Y)Z,W) = −g(R(X,Y)W,Z)`.
    pub fn pair_skew_defects(&self, m: &FrameManifold) -> Vec<(Vec<usize>, ScalarExpr)> {
        let g = m.metric_components();
        let lowered = |a: usize, b: usize, c: usize, w: usize| -> ScalarExpr {
            (0..DIM)
                .map(|d| self.riemann.get(&[a, b, c, d]) * &g[d][w])
                .sum()
        };
        let mut out = Vec::new();
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    for w in c..DIM {
                        let d = &lowered(a, b, c, w) + &lowered(a, b, w, c);
                        if !d.is_zero() {
                            out.push((vec![a, b, c, w], d));
                        }
                    }
                }
            }
        }
        out
    }

    /// Defects of `R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0`.
    pub fn bianchi_defects(&self) -> Vec<(Vec<usize>, ScalarExpr)> {
        let r = &self.riemann;
        let mut out = Vec::new();
        for a in 0..DIM {
            for b in 0..DIM {
                for c in 0..DIM {
                    for d in 0..DIM {
                        let s = &(r.get(&[a, b, c, d]) + r.get(&[b, c, a, d])) + r.get(&[c, a, b, d]);
                        if !s.is_zero() {
                            out.push((vec![a, b, c, d], s));
                        }
                    }
                }
            }
        }
        out
    }

    /// Defects of the Ricci relations: `S` symmetric, `g(QX,Y) = S(X,Y)`,
    /// `r = Σᵢ S(eᵢ,eᵢ)` (orthonormal frames) i.e. `r = trace Q`.
    pub fn ricci_defects(&self, m: &FrameManifold) -> Vec<(String, ScalarExpr)> {
        let mut out: Vec<(String, ScalarExpr)> = self
            .ricci
            .symmetry_defects()
            .into_iter()
            .map(|(i, d)| (format!("S symmetric {}", crate::manifold::index_label(&i)), d))
            .collect();
        let g = m.metric_components();
        for i in 0..DIM {
            for j in 0..DIM {
                let gq: ScalarExpr = (0..DIM)
                    .map(|k| self.ricci_operator.get(&[i, k]) * &g[k][j])
                    .sum();
                let d = &gq - self.ricci.get(&[i, j]);
                if !d.is_zero() {
                    out.push((format!("g(Qe{},e{}) - S", i + 1, j + 1), d));
                }
            }
        }
        let ginv = m.metric_inverse();
        let trace: ScalarExpr = (0..DIM)
            .flat_map(|i| (0..DIM).map(move |j| (i, j)))
            .map(|(i, j)| &ginv[i][j] * self.ricci.get(&[i, j]))
            .sum();
        let d = &trace - &self.scalar;
        if !d.is_zero() {
            out.push(("trace S - r".into(), d));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::levi_civita;
    use crate::testing::{example, flat, s3, standard_phi};

    fn bundle(m: &FrameManifold) -> CurvatureBundle {
        let c = levi_civita(m).unwrap();
        CurvatureBundle::compute(m, &c, Some(&standard_phi())).unwrap()
    }

    fn vec_of(c: [i64; 3]) -> VectorField {
        VectorField::new(c.map(ScalarExpr::int))
    }

    fn rv(k: &CurvatureBundle, a: usize, b: usize, c: usize) -> VectorField {
        k.riemann.vector_at(&[a, b, c])
    }

    #[test]
    fn example_curvature() {
        let m = example();
        let k = bundle(&m);
        assert_eq!(rv(&k, 0, 1, 1), vec_of([-4, 0, 0]));
        assert_eq!(rv(&k, 0, 2, 2), vec_of([-4, 0, 0]));
        assert_eq!(rv(&k, 1, 2, 2), vec_of([0, -4, 0]));
        assert_eq!(rv(&k, 0, 1, 0), vec_of([0, 4, 0]));
        assert_eq!(rv(&k, 0, 2, 0), vec_of([0, 0, 4]));
        assert_eq!(rv(&k, 1, 2, 1), vec_of([0, 0, 4]));
        assert!(k.ricci.sub(&m.metric_tensor().scale(&ScalarExpr::int(-8))).is_zero());
        assert_eq!(k.scalar, ScalarExpr::int(-24));
        let s = k.star_ricci.as_ref().unwrap();
        assert_eq!(s.get(&[0, 0]), &ScalarExpr::int(-4));
        assert_eq!(s.get(&[1, 1]), &ScalarExpr::int(-4));
        assert!(s.get(&[2, 2]).is_canonical_zero());
    }

    /// Constant curvature `K`: `R(X,Y)Z = K(g(Y,Z)X − g(X,Z)Y)`.
    fn space_form_defect(k: &CurvatureBundle, curv: i64) -> bool {
        for (idx, c) in k.riemann.components() {
            let (a, b, cc, d) = (idx[0], idx[1], idx[2], idx[3]);
            let expect = curv * (((b == cc) && (a == d)) as i64 - ((a == cc) && (b == d)) as i64);
            if c != &ScalarExpr::int(expect) {
                return true;
            }
        }
        false
    }

    #[test]
    fn space_forms() {
        let k = bundle(&example());
        assert!(!space_form_defect(&k, -4));
        let m = s3();
        let k = bundle(&m);
        assert!(!space_form_defect(&k, 1));
        assert!(k.ricci.sub(&m.metric_tensor().scale(&ScalarExpr::int(2))).is_zero());
        assert_eq!(k.scalar, ScalarExpr::int(6));
        let k = bundle(&flat());
        assert!(k.riemann.is_zero());
    }

    #[test]
    fn sphere_star_ricci_is_transverse_metric() {
        let k = bundle(&s3());
        let s = k.star_ricci.unwrap();
        for (idx, c) in s.components() {
            let expect = (idx[0] == idx[1] && idx[0] != 2) as i64;
            assert_eq!(c, &ScalarExpr::int(expect), "{idx:?}");
        }
    }

    #[test]
    fn first_slot_trace_is_rejected() {
        // ½ Σₖ g(φ R(eₖ, eᵢ)φeⱼ, eₖ) flips the sign on the unit sphere.
        let k = bundle(&s3());
        let phi = standard_phi();
        let alt = FrameTensor::from_fn(0, 2, |idx| {
            let (i, j) = (idx[0], idx[1]);
            let mut acc = ScalarExpr::zero();
            for kk in 0..DIM {
                for b in 0..DIM {
                    for d in 0..DIM {
                        acc = &acc
                            + &(&(phi.get(&[j, b]) * k.riemann.get(&[kk, i, b, d])) * phi.get(&[d, kk]));
                    }
                }
            }
            &acc * &ScalarExpr::constant(ratio(1, 2))
        });
        assert_eq!(alt.get(&[0, 0]), &ScalarExpr::constant(ratio(-1, 2)));
        assert_ne!(&alt, k.star_ricci.as_ref().unwrap());
    }

    #[test]
    fn curvature_invariants() {
        for m in [example(), s3(), flat()] {
            let k = bundle(&m);
            assert!(k.skew_defects().is_empty());
            assert!(k.pair_skew_defects(&m).is_empty());
            assert!(k.bianchi_defects().is_empty());
            assert!(k.ricci_defects(&m).is_empty());
        }
    }
}
