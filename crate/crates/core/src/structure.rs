//! Almost contact metric structures, trans-Sasakian detection and the
//! curvature identities of three-dimensional trans-Sasakian manifolds.

use std::array;

use crate::connection::Connection;
use crate::curvature::CurvatureBundle;
use crate::error::{GeometryError, Result};
use crate::manifold::{index_label, FrameManifold, FrameTensor, VectorField};
use crate::report::{CheckItem, CheckReport, Residuals};
use crate::scalar::{ratio, ScalarExpr, DIM};

/// `(φ, ξ, η)` on a frame manifold. `η` is always `g(·, ξ)`; a separately
/// supplied `η` is only compared against it.
#[derive(Debug, Clone)]
pub struct ContactStructure {
    phi: FrameTensor,
    xi: VectorField,
    eta: [ScalarExpr; DIM],
    supplied_eta: Option<[ScalarExpr; DIM]>,
}

impl ContactStructure {
    /// `phi[i][j]` is the `eⱼ` component of `φeᵢ`.
    pub fn new(
        m: &FrameManifold,
        phi: [[ScalarExpr; DIM]; DIM],
        xi: VectorField,
        supplied_eta: Option<[ScalarExpr; DIM]>,
    ) -> Self {
        let phi = FrameTensor::from_fn(1, 1, |idx| phi[idx[0]][idx[1]].clone());
        let eta = array::from_fn(|i| m.g(&VectorField::basis(i), &xi));
        ContactStructure {
            phi,
            xi,
            eta,
            supplied_eta,
        }
    }

    pub fn phi(&self) -> &FrameTensor {
        &self.phi
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    /// Components `η(eᵢ)`.
    pub fn eta(&self) -> &[ScalarExpr; DIM] {
        &self.eta
    }

    pub fn eta_tensor(&self) -> FrameTensor {
        FrameTensor::from_fn(0, 1, |idx| self.eta[idx[0]].clone())
    }

    pub fn eta_of(&self, x: &VectorField) -> ScalarExpr {
        (0..DIM).map(|i| x.component(i) * &self.eta[i]).sum()
    }

    pub fn phi_frame(&self, i: usize) -> VectorField {
        self.phi.vector_at(&[i])
    }

    pub fn phi_of(&self, x: &VectorField) -> VectorField {
        let rows: Vec<VectorField> = (0..DIM).map(|i| self.phi_frame(i)).collect();
        VectorField::combination((0..DIM).map(|i| (x.component(i), &rows[i])))
    }
}

fn vector_residuals(prefix: &str, idx: &[usize], v: &VectorField) -> Residuals {
    (0..DIM)
        .map(|d| {
            let mut full = idx.to_vec();
            full.push(d);
            (format!("{prefix}{}", index_label(&full)), v.component(d).clone())
        })
        .collect()
}

fn scalar(prefix: &str, idx: &[usize], s: ScalarExpr) -> (String, ScalarExpr) {
    (format!("{prefix}{}", index_label(idx)), s)
}

/// The seven almost contact metric axioms, each as a residual item.
pub fn validate_almost_contact(m: &FrameManifold, cs: &ContactStructure) -> CheckReport {
    let e = VectorField::basis;
    let eta = cs.eta();
    let xi = cs.xi();
    let mut items = Vec::new();

    let mut r = Residuals::new();
    for i in 0..DIM {
        let v = cs.phi_of(&cs.phi_frame(i)).add(&e(i)).sub(&xi.scale(&eta[i]));
        r.extend(vector_residuals("", &[i], &v));
    }
    items.push(CheckItem::from_residuals("phi-squared", "φ²X = −X + η(X)ξ", r));

    items.push(CheckItem::from_residuals(
        "eta-xi",
        "η(ξ) = 1",
        vec![("()".into(), &cs.eta_of(xi) - &ScalarExpr::one())],
    ));

    let mut r = Residuals::new();
    for i in 0..DIM {
        for j in i..DIM {
            let d = &(&m.g(&cs.phi_frame(i), &cs.phi_frame(j)) - &m.metric_components()[i][j])
                + &(&eta[i] * &eta[j]);
            r.push(scalar("", &[i, j], d));
        }
    }
    items.push(CheckItem::from_residuals("phi-metric", "g(φX,φY) = g(X,Y) − η(X)η(Y)", r));

    items.push(CheckItem::from_residuals(
        "phi-xi",
        "φξ = 0",
        vector_residuals("", &[], &cs.phi_of(xi)),
    ));

    let r = (0..DIM)
        .map(|i| scalar("", &[i], cs.eta_of(&cs.phi_frame(i))))
        .collect();
    items.push(CheckItem::from_residuals("eta-phi", "η∘φ = 0", r));

    let mut dual = CheckItem::from_residuals(
        "eta-dual",
        "g(X,ξ) = η(X)",
        match &cs.supplied_eta {
            Some(s) => (0..DIM).map(|i| scalar("", &[i], &eta[i] - &s[i])).collect(),
            None => Vec::new(),
        },
    );
    if cs.supplied_eta.is_none() {
        dual = dual.note("η computed as g(·,ξ)");
    }
    items.push(dual);

    let mut r = Residuals::new();
    for i in 0..DIM {
        for j in i..DIM {
            let d = &m.g(&cs.phi_frame(i), &e(j)) + &m.g(&e(i), &cs.phi_frame(j));
            r.push(scalar("", &[i, j], d));
        }
    }
    items.push(CheckItem::from_residuals("phi-skew", "g(φX,Y) = −g(X,φY)", r));

    CheckReport::new("almost-contact", items)
}

/// Result of recovering `(α, β)` from `∇_X ξ = −αφX + β(X − η(X)ξ)`.
#[derive(Debug, Clone)]
pub struct TransSasakianReport {
    pub alpha: ScalarExpr,
    pub beta: ScalarExpr,
    /// Frame leg (0-based) used for the recovery.
    pub leg: usize,
    pub is_constant_alpha: bool,
    pub is_constant_beta: bool,
    /// Residual of `(∇_Xφ)Y = α[g(X,Y)ξ − η(Y)X] + β[g(φX,Y)ξ − η(Y)φX]`.
    pub defect_phi: Residuals,
    /// Residual of `(∇_Xη)Y = −αg(φX,Y) + βg(φX,φY)`.
    pub defect_eta: Residuals,
}

impl TransSasakianReport {
    pub fn is_trans_sasakian(&self) -> bool {
        self.defect_phi.iter().chain(&self.defect_eta).all(|(_, d)| d.is_zero())
    }

    pub fn is_constant(&self) -> bool {
        self.is_constant_alpha && self.is_constant_beta
    }

    pub fn to_check_report(&self) -> CheckReport {
        let mut detect = CheckItem::from_residuals(
            "type",
            "∇_Xξ = −αφX + β(X − η(X)ξ)",
            Vec::new(),
        )
        .note(format!("alpha = {}, beta = {} (from leg e{})", self.alpha, self.beta, self.leg + 1))
        .note(format!(
            "alpha {}, beta {}",
            if self.is_constant_alpha { "constant" } else { "non-constant" },
            if self.is_constant_beta { "constant" } else { "non-constant" },
        ));
        if !self.is_trans_sasakian() {
            detect = detect.fail_with("structure is not trans-Sasakian");
        }
        CheckReport::new(
            "trans-sasakian",
            vec![
                detect,
                CheckItem::from_residuals(
                    "nabla-phi",
                    "(∇_Xφ)Y = α[g(X,Y)ξ − η(Y)X] + β[g(φX,Y)ξ − η(Y)φX]",
                    self.defect_phi.clone(),
                ),
                CheckItem::from_residuals(
                    "nabla-eta",
                    "(∇_Xη)Y = −αg(φX,Y) + βg(φX,φY)",
                    self.defect_eta.clone(),
                ),
            ],
        )
    }
}

/// `(α, β)` read off one frame leg, or `None` when `g(φeₗ, φeₗ)` vanishes.
pub fn structure_functions_from_leg(
    m: &FrameManifold,
    c: &Connection,
    cs: &ContactStructure,
    leg: usize,
) -> Result<Option<(ScalarExpr, ScalarExpr)>> {
    let el = VectorField::basis(leg);
    let phi_l = cs.phi_frame(leg);
    let norm = m.g(&phi_l, &phi_l);
    if norm.is_zero() {
        return Ok(None);
    }
    let dxi = c.nabla(m, &el, cs.xi())?;
    let horizontal = el.sub(&cs.xi().scale(&cs.eta()[leg]));
    let alpha = (-m.g(&dxi, &phi_l)).try_div(&norm)?;
    let beta = m.g(&dxi, &horizontal).try_div(&norm)?;
    Ok(Some((alpha, beta)))
}

pub fn detect_trans_sasakian(
    m: &FrameManifold,
    c: &Connection,
    cs: &ContactStructure,
) -> Result<TransSasakianReport> {
    let mut found = None;
    for leg in 0..2 {
        if let Some(ab) = structure_functions_from_leg(m, c, cs, leg)? {
            found = Some((leg, ab));
            break;
        }
    }
    let (leg, (alpha, beta)) = found.ok_or(GeometryError::DegenerateLeg(2))?;

    let e = VectorField::basis;
    let g = m.metric_components();
    let eta = cs.eta();
    let xi = cs.xi();

    let dphi = c.covariant_derivative_full(m, cs.phi())?;
    let mut defect_phi = Residuals::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let a_part = xi.scale(&g[i][j]).sub(&e(i).scale(&eta[j]));
            let b_part = xi
                .scale(&m.g(&cs.phi_frame(i), &e(j)))
                .sub(&cs.phi_frame(i).scale(&eta[j]));
            let expect = a_part.scale(&alpha).add(&b_part.scale(&beta));
            let d = dphi.vector_at(&[i, j]).sub(&expect);
            defect_phi.extend(vector_residuals("", &[i, j], &d));
        }
    }

    let deta = c.covariant_derivative_full(m, &cs.eta_tensor())?;
    let mut defect_eta = Residuals::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let expect = &(-(&alpha * &m.g(&cs.phi_frame(i), &e(j))))
                + &(&beta * &m.g(&cs.phi_frame(i), &cs.phi_frame(j)));
            defect_eta.push(scalar("", &[i, j], deta.get(&[i, j]) - &expect));
        }
    }

    let constant = |f: &ScalarExpr| -> Result<bool> {
        for k in 0..DIM {
            if !m.frame_derivative(k, f)?.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    };
    Ok(TransSasakianReport {
        is_constant_alpha: constant(&alpha)?,
        is_constant_beta: constant(&beta)?,
        alpha,
        beta,
        leg,
        defect_phi,
        defect_eta,
    })
}

fn half() -> ScalarExpr {
    ScalarExpr::constant(ratio(1, 2))
}

/// Identities for constant `α, β` with `k = α² − β²`:
/// `R(X,Y)ξ = k(η(Y)X − η(X)Y)`, the η-Einstein forms of `S`, `S(X,ξ)`, `Q`,
/// `S* = ½(r − 4k)(g − η⊗η)` and `ξr = −2rβ + 12kβ`.
pub fn identity_suite_constant(
    m: &FrameManifold,
    cs: &ContactStructure,
    k: &CurvatureBundle,
    alpha: &ScalarExpr,
    beta: &ScalarExpr,
) -> Result<CheckReport> {
    let e = VectorField::basis;
    let g = m.metric_components();
    let eta = cs.eta();
    let xi = cs.xi();
    let kk = &(alpha * alpha) - &(beta * beta);
    let r = &k.scalar;
    let r2 = r * &half();
    let c1 = &r2 - &kk;
    let c3 = &r2 - &(&kk * &ScalarExpr::int(3));
    let mut items = Vec::new();

    let mut res = Residuals::new();
    for i in 0..DIM {
        for j in 0..DIM {
            let lhs = k.curvature_vector(&e(i), &e(j), xi)?;
            let rhs = e(i).scale(&eta[j]).sub(&e(j).scale(&eta[i])).scale(&kk);
            res.extend(vector_residuals("", &[i, j], &lhs.sub(&rhs)));
        }
    }
    items.push(CheckItem::from_residuals("curvature-xi", "R(X,Y)ξ = k(η(Y)X − η(X)Y)", res));

    let mut res = Residuals::new();
    for i in 0..DIM {
        for j in i..DIM {
            let rhs = &(&c1 * &g[i][j]) - &(&c3 * &(&eta[i] * &eta[j]));
            res.push(scalar("", &[i, j], k.ricci.get(&[i, j]) - &rhs));
        }
    }
    items.push(CheckItem::from_residuals(
        "ricci-form",
        "S = (r/2 − k)g − (r/2 − 3k)η⊗η",
        res,
    ));

    let two_k = &kk * &ScalarExpr::int(2);
    let res = (0..DIM)
        .map(|i| {
            let s_xi: ScalarExpr = (0..DIM).map(|j| k.ricci.get(&[i, j]) * xi.component(j)).sum();
            scalar("", &[i], &s_xi - &(&two_k * &eta[i]))
        })
        .collect();
    items.push(CheckItem::from_residuals("ricci-xi", "S(X,ξ) = 2kη(X)", res));

    let mut res = Residuals::new();
    for i in 0..DIM {
        let q = k.ricci_operator.vector_at(&[i]);
        let rhs = e(i).scale(&c1).sub(&xi.scale(&(&c3 * &eta[i])));
        res.extend(vector_residuals("", &[i], &q.sub(&rhs)));
    }
    items.push(CheckItem::from_residuals(
        "ricci-operator",
        "QX = (r/2 − k)X − (r/2 − 3k)η(X)ξ",
        res,
    ));

    match &k.star_ricci {
        Some(star) => {
            let coeff = &(r - &(&kk * &ScalarExpr::int(4))) * &half();
            let mut res = Residuals::new();
            for i in 0..DIM {
                for j in 0..DIM {
                    let rhs = &coeff * &(&g[i][j] - &(&eta[i] * &eta[j]));
                    res.push(scalar("", &[i, j], star.get(&[i, j]) - &rhs));
                }
            }
            items.push(CheckItem::from_residuals(
                "star-ricci-form",
                "S* = ½(r − 4k)(g − η⊗η)",
                res,
            ));
        }
        None => items.push(CheckItem::not_applicable(
            "star-ricci-form",
            "S* = ½(r − 4k)(g − η⊗η)",
            "no φ available",
        )),
    }

    let xi_r = m.apply_field(xi, r)?;
    let rhs = &(&(r * beta) * &ScalarExpr::int(-2)) + &(&(&kk * beta) * &ScalarExpr::int(12));
    items.push(CheckItem::from_residuals(
        "xi-scalar",
        "ξr = −2rβ + 12kβ",
        vec![("()".into(), &xi_r - &rhs)],
    ));

    Ok(CheckReport::new("identities", items))
}

/// The general three-dimensional expansion of `R(X,Y)Z` for trans-Sasakian
/// manifolds, in terms of `r`, `k = α² − β²`, `Dα`, `Dβ`.
pub struct GeneralCurvatureForm {
    /// `R(eₐ,e_b)e_c` predicted, indexed `[a][b][c]`.
    pub curvature: Vec<Vec<Vec<VectorField>>>,
    /// Predicted `S(eₐ,e_b)`.
    pub ricci: [[ScalarExpr; DIM]; DIM],
    /// Predicted `S(eₐ,ξ)`.
    pub ricci_xi: [ScalarExpr; DIM],
}

impl GeneralCurvatureForm {
    pub fn new(
        m: &FrameManifold,
        cs: &ContactStructure,
        r: &ScalarExpr,
        alpha: &ScalarExpr,
        beta: &ScalarExpr,
    ) -> Result<Self> {
        let e = VectorField::basis;
        let g = m.metric_components();
        let eta = cs.eta();
        let xi = cs.xi();
        let kk = &(alpha * alpha) - &(beta * beta);
        let xi_beta = m.apply_field(xi, beta)?;
        let r2 = r * &half();
        let a = &(&r2 + &(&xi_beta * &ScalarExpr::int(2))) - &(&kk * &ScalarExpr::int(2));
        let b = &(&r2 + &xi_beta) - &(&kk * &ScalarExpr::int(3));
        let w = cs.phi_of(&m.gradient(alpha)?).sub(&m.gradient(beta)?);
        // ω(X) = Xβ + (φX)α
        let omega: [ScalarExpr; DIM] = {
            let mut o: [ScalarExpr; DIM] = Default::default();
            for (i, slot) in o.iter_mut().enumerate() {
                *slot = &m.frame_derivative(i, beta)? + &m.apply_field(&cs.phi_frame(i), alpha)?;
            }
            o
        };

        let bracket = |x: usize| -> VectorField {
            xi.scale(&(&(&b * &eta[x]) + &omega[x])).sub(&w.scale(&eta[x]))
        };
        let curvature = (0..DIM)
            .map(|x| {
                (0..DIM)
                    .map(|y| {
                        (0..DIM)
                            .map(|z| {
                                let mut v = e(x).scale(&g[y][z]).sub(&e(y).scale(&g[x][z])).scale(&a);
                                v = v.sub(&bracket(x).scale(&g[y][z]));
                                v = v.add(&bracket(y).scale(&g[x][z]));
                                let cx = &(&(&omega[z] * &eta[y]) + &(&omega[y] * &eta[z]))
                                    + &(&b * &(&eta[y] * &eta[z]));
                                let cy = &(&(&omega[z] * &eta[x]) + &(&omega[x] * &eta[z]))
                                    + &(&b * &(&eta[x] * &eta[z]));
                                v.sub(&e(x).scale(&cx)).add(&e(y).scale(&cy))
                            })
                            .collect()
                    })
                    .collect()
            })
            .collect();

        let c1 = &(&r2 + &xi_beta) - &kk;
        let ricci = array::from_fn(|x| {
            array::from_fn(|y| {
                let t = &(&c1 * &g[x][y]) - &(&b * &(&eta[x] * &eta[y]));
                &(&t - &(&omega[y] * &eta[x])) - &(&omega[x] * &eta[y])
            })
        });
        let c2 = &(&kk * &ScalarExpr::int(2)) - &xi_beta;
        let ricci_xi = array::from_fn(|x| &(&c2 * &eta[x]) - &omega[x]);
        Ok(GeneralCurvatureForm {
            curvature,
            ricci,
            ricci_xi,
        })
    }

    /// Trace of `X ↦ R̂(X,Y)Z` for the predicted curvature `R̂`.
    pub fn contracted(&self) -> [[ScalarExpr; DIM]; DIM] {
        array::from_fn(|y| {
            array::from_fn(|z| (0..DIM).map(|x| self.curvature[x][y][z].component(x).clone()).sum())
        })
    }
}

/// The general identities for possibly non-constant `α, β`: the full
/// curvature expansion, the Ricci form, `S(X,ξ)`, and the contraction of the
/// curvature expansion against the Ricci form.
pub fn identity_suite_general(
    m: &FrameManifold,
    cs: &ContactStructure,
    k: &CurvatureBundle,
    alpha: &ScalarExpr,
    beta: &ScalarExpr,
) -> Result<CheckReport> {
    let form = GeneralCurvatureForm::new(m, cs, &k.scalar, alpha, beta)?;
    let mut items = Vec::new();

    let mut res = Residuals::new();
    for x in 0..DIM {
        for y in 0..DIM {
            for z in 0..DIM {
                let d = k.riemann.vector_at(&[x, y, z]).sub(&form.curvature[x][y][z]);
                res.extend(vector_residuals("", &[x, y, z], &d));
            }
        }
    }
    items.push(CheckItem::from_residuals(
        "curvature-general",
        "R(X,Y)Z in terms of r, ξβ, α² − β², Dα, Dβ",
        res,
    ));

    let mut res = Residuals::new();
    for x in 0..DIM {
        for y in x..DIM {
            res.push(scalar("", &[x, y], k.ricci.get(&[x, y]) - &form.ricci[x][y]));
        }
    }
    items.push(CheckItem::from_residuals(
        "ricci-general",
        "S = (r/2 + ξβ − k)g − (r/2 + ξβ − 3k)η⊗η − ω⊗η − η⊗ω, ω(X) = Xβ + (φX)α",
        res,
    ));

    let xi = cs.xi();
    let res = (0..DIM)
        .map(|x| {
            let s_xi: ScalarExpr = (0..DIM).map(|j| k.ricci.get(&[x, j]) * xi.component(j)).sum();
            scalar("", &[x], &s_xi - &form.ricci_xi[x])
        })
        .collect();
    items.push(CheckItem::from_residuals(
        "ricci-xi-general",
        "S(X,ξ) = (2k − ξβ)η(X) − Xβ − (φX)α",
        res,
    ));

    let contracted = form.contracted();
    let mut res = Residuals::new();
    for y in 0..DIM {
        for z in 0..DIM {
            res.push(scalar("", &[y, z], &contracted[y][z] - &form.ricci[y][z]));
        }
    }
    items.push(CheckItem::from_residuals(
        "contracted-curvature",
        "trace of the general R(X,Y)Z expansion = general Ricci form",
        res,
    ));

    Ok(CheckReport::new("identities", items))
}
