//! Soliton residuals and λ solvers, the Ricci-soliton classification check
//! and the *-conformal scalar-curvature check.
//!
//! Canonical sign convention: `½L_Vg + S + λg = 0` (and the analogous
//! `L_Vg + 2S + [2λ − (p + 2/3)]g = 0` forms). The convention
//! `½L_Vg + S = λ'g` differs by `λ' = −λ`; both are reported where relevant.

use std::fmt;
use std::str::FromStr;

use num::{One, Zero};

use crate::connection::{lie_derivative_metric, Connection};
use crate::curvature::CurvatureBundle;
use crate::error::{GeometryError, Result};
use crate::manifold::{index_label, FrameManifold, FrameTensor, Symmetry, VectorField};
use crate::report::{CheckItem, CheckReport, Residuals};
use crate::scalar::{ratio, Rational, ScalarExpr, DIM};
use crate::structure::{ContactStructure, TransSasakianReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum SolitonKind {
    Ricci,
    ConformalRicci,
    StarRicci,
    StarConformalRicci,
}

impl SolitonKind {
    pub const ALL: [SolitonKind; 4] = [
        SolitonKind::Ricci,
        SolitonKind::ConformalRicci,
        SolitonKind::StarRicci,
        SolitonKind::StarConformalRicci,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolitonKind::Ricci => "ricci",
            SolitonKind::ConformalRicci => "conformal_ricci",
            SolitonKind::StarRicci => "star_ricci",
            SolitonKind::StarConformalRicci => "star_conformal_ricci",
        }
    }

    pub fn is_conformal(self) -> bool {
        matches!(self, SolitonKind::ConformalRicci | SolitonKind::StarConformalRicci)
    }

    pub fn uses_star(self) -> bool {
        matches!(self, SolitonKind::StarRicci | SolitonKind::StarConformalRicci)
    }

    /// Coefficient `c` of `λg` in the residual.
    fn lambda_weight(self) -> i64 {
        match self {
            SolitonKind::Ricci => 1,
            _ => 2,
        }
    }

    pub fn equation(self) -> &'static str {
        match self {
            SolitonKind::Ricci => "½L_Vg + S + λg = 0",
            SolitonKind::ConformalRicci => "L_Vg + 2S + [2λ − (p + 2/3)]g = 0",
            SolitonKind::StarRicci => "L_Vg + 2S* + 2λg = 0",
            SolitonKind::StarConformalRicci => "L_Vg + 2S* + [2λ − (p + 2/3)]g = 0",
        }
    }
}

impl fmt::Display for SolitonKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SolitonKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        SolitonKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| format!("unknown soliton kind `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LambdaSpec {
    Solve,
    Value(Rational),
}

impl fmt::Display for LambdaSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LambdaSpec::Solve => f.write_str("solve"),
            LambdaSpec::Value(v) => write!(f, "{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonProblem {
    pub kind: SolitonKind,
    pub v: VectorField,
    pub p: Option<Rational>,
    pub lambda: LambdaSpec,
}

impl SolitonProblem {
    pub fn new(kind: SolitonKind, v: VectorField, p: Option<Rational>, lambda: LambdaSpec) -> Result<Self> {
        if kind.is_conformal() != p.is_some() {
            return Err(GeometryError::ProblemMismatch(format!(
                "pressure p must be given exactly for conformal kinds ({kind})"
            )));
        }
        Ok(SolitonProblem { kind, v, p, lambda })
    }
}

#[derive(Debug, Clone)]
pub struct SolitonVerdict {
    pub kind: SolitonKind,
    /// Residual at the reported λ.
    pub residual: FrameTensor,
    /// λ used for the residual: the given value or the trace solution.
    pub lambda: ScalarExpr,
    /// λ solving each diagonal frame component, `None` when `g(eᵢ,eᵢ)` is not invertible.
    pub lambda_pointwise: Vec<(String, Option<ScalarExpr>)>,
    pub lambda_trace: ScalarExpr,
    pub is_soliton: bool,
    pub theorem_notes: Vec<String>,
}

impl SolitonVerdict {
    pub fn residuals(&self) -> Residuals {
        self.residual
            .components()
            .filter(|(i, _)| i[0] <= i[1])
            .map(|(i, c)| (index_label(&i), c.clone()))
            .collect()
    }
}

/// `c·g` plus everything in the residual except the λ term.
fn lambda_free_part(
    m: &FrameManifold,
    c: &Connection,
    k: &CurvatureBundle,
    p: &SolitonProblem,
) -> Result<FrameTensor> {
    let h = lie_derivative_metric(m, c, &p.v)?;
    let g = m.metric_tensor();
    let two = ScalarExpr::int(2);
    let base = match p.kind {
        SolitonKind::Ricci => h.scale(&ScalarExpr::constant(ratio(1, 2))).add(&k.ricci),
        SolitonKind::ConformalRicci | SolitonKind::StarRicci | SolitonKind::StarConformalRicci => {
            let s = if p.kind.uses_star() {
                k.star_ricci.as_ref().ok_or_else(|| {
                    GeometryError::ProblemMismatch(format!("{} needs a contact structure", p.kind))
                })?
            } else {
                &k.ricci
            };
            let mut b = h.add(&s.scale(&two));
            if let Some(pr) = &p.p {
                let shift = ScalarExpr::constant(pr + ratio(2, 3));
                b = b.sub(&g.scale(&shift));
            }
            b
        }
    };
    Ok(base.with_symmetry(Symmetry::Symmetric(0, 1)))
}

pub fn soliton_residual(
    m: &FrameManifold,
    c: &Connection,
    k: &CurvatureBundle,
    p: &SolitonProblem,
) -> Result<SolitonVerdict> {
    let base = lambda_free_part(m, c, k, p)?;
    let weight = ScalarExpr::int(p.kind.lambda_weight());
    let g = m.metric_components();
    let ginv = m.metric_inverse();

    let lambda_pointwise = (0..DIM)
        .map(|i| {
            let denom = &weight * &g[i][i];
            let l = (-base.get(&[i, i])).try_div(&denom).ok();
            (index_label(&[i, i]), l)
        })
        .collect();
    let trace: ScalarExpr = (0..DIM)
        .flat_map(|i| (0..DIM).map(move |j| (i, j)))
        .map(|(i, j)| &ginv[i][j] * base.get(&[i, j]))
        .sum();
    let lambda_trace = (-trace).scale(&(Rational::one() / Rational::from_integer((3 * p.kind.lambda_weight()).into())));

    let lambda = match &p.lambda {
        LambdaSpec::Solve => lambda_trace.clone(),
        LambdaSpec::Value(v) => ScalarExpr::constant(v.clone()),
    };
    let residual = base.add(&m.metric_tensor().scale(&(&lambda * &weight)));
    let mut lambda_constant = true;
    for d in 0..DIM {
        if !m.frame_derivative(d, &lambda)?.is_zero() {
            lambda_constant = false;
        }
    }
    let is_soliton = lambda_constant && residual.is_zero();
    let mut theorem_notes = Vec::new();
    if !lambda_constant {
        theorem_notes.push(format!("λ = {lambda} is not constant"));
    }
    if p.kind == SolitonKind::Ricci {
        theorem_notes.push(format!("under ½L_Vg + S = λ'g: λ' = {}", -lambda.clone()));
    }
    Ok(SolitonVerdict {
        kind: p.kind,
        residual,
        lambda,
        lambda_pointwise,
        lambda_trace,
        is_soliton,
        theorem_notes,
    })
}

/// Sign label of `λ` in `½L_Vg + S + λg = 0`: negative is shrinking.
pub fn soliton_type(lambda: &Rational) -> &'static str {
    if lambda.is_zero() {
        "steady"
    } else if *lambda < Rational::zero() {
        "shrinking"
    } else {
        "expanding"
    }
}

/// Label the published classification assigns from `α² − β²`:
/// shrinking for negative, steady for zero, expanding for positive.
pub fn published_soliton_type(k: &Rational) -> &'static str {
    if k.is_zero() {
        "steady"
    } else if *k < Rational::zero() {
        "shrinking"
    } else {
        "expanding"
    }
}

const CLASSIFICATION_REF: &str =
    "constant α, β Ricci soliton: η(∇_ξV) = 0 ⇒ λ' = 2(α² − β²); α² = β² ⇒ ∇_ξV = λ'ξ";

/// Checks the conclusions about Ricci solitons on trans-Sasakian manifolds
/// with constant `α, β`, where `λ' = −λ`:
/// (i) `η(∇_ξV) = 0` forces `λ' = 2(α² − β²)`;
/// (ii) `α² = β²` forces `∇_ξV = λ'ξ`.
pub fn check_soliton_classification(
    m: &FrameManifold,
    c: &Connection,
    cs: &ContactStructure,
    ts: &TransSasakianReport,
    p: &SolitonProblem,
    verdict: &SolitonVerdict,
) -> Result<CheckReport> {
    let suite = "soliton-classification";
    if p.kind != SolitonKind::Ricci {
        return Ok(CheckReport::new(
            suite,
            vec![CheckItem::not_applicable("classification", CLASSIFICATION_REF, "kind is not ricci")],
        ));
    }
    if !ts.is_constant() {
        return Err(GeometryError::NonConstantStructure(format!(
            "alpha = {}, beta = {}",
            ts.alpha, ts.beta
        )));
    }
    if !verdict.is_soliton {
        let mut it = CheckItem::not_applicable("classification", CLASSIFICATION_REF, "V does not define a Ricci soliton");
        it = it.note(format!("trace λ = {}", verdict.lambda_trace));
        for (l, v) in &verdict.lambda_pointwise {
            if let Some(v) = v {
                it = it.note(format!("λ{l} = {v}"));
            }
        }
        return Ok(CheckReport::new(suite, vec![it]));
    }
    let kk = &(&ts.alpha * &ts.alpha) - &(&ts.beta * &ts.beta);
    let lambda_prime = -verdict.lambda.clone();
    let dv = c.nabla(m, cs.xi(), &p.v)?;
    let eta_dv = cs.eta_of(&dv);
    let mut items = Vec::new();

    if eta_dv.is_zero() {
        let expect = &kk * &ScalarExpr::int(2);
        let mut it = CheckItem::from_residuals(
            "case-orthogonal",
            "η(∇_ξV) = 0 ⇒ λ' = 2(α² − β²)",
            vec![("()".into(), &lambda_prime - &expect)],
        )
        .note(format!("λ = {}, λ' = {}", verdict.lambda, lambda_prime));
        if let (Some(l), Some(kv)) = (verdict.lambda.as_constant(), kk.as_constant()) {
            let computed = soliton_type(&l);
            let published = published_soliton_type(&kv);
            it = it.note(format!(
                "sign of λ gives {computed}; published classification from α² − β² = {kv} gives {published}"
            ));
            if computed != published {
                it.conflicts_with_paper = true;
            }
        }
        items.push(it);
    } else {
        items.push(CheckItem::not_applicable(
            "case-orthogonal",
            "η(∇_ξV) = 0 ⇒ λ' = 2(α² − β²)",
            format!("η(∇_ξV) = {eta_dv}"),
        ));
    }

    if kk.is_zero() {
        let d = dv.sub(&cs.xi().scale(&lambda_prime));
        let res = (0..DIM)
            .map(|i| (index_label(&[i]), d.component(i).clone()))
            .collect();
        items.push(
            CheckItem::from_residuals("case-null", "α² = β² ⇒ ∇_ξV = λ'ξ", res)
                .note(format!("∇_ξV = {dv}, λ' = {lambda_prime}")),
        );
    } else {
        items.push(CheckItem::not_applicable(
            "case-null",
            "α² = β² ⇒ ∇_ξV = λ'ξ",
            format!("α² − β² = {kk}"),
        ));
    }
    Ok(CheckReport::new(suite, items))
}

/// `r = (1 − β²/α²)(p/2 + 1/3 − λ + 4α²)`.
pub fn star_conformal_scalar_curvature(
    alpha: &Rational,
    beta: &Rational,
    p: &Rational,
    lambda: &Rational,
) -> Result<Rational> {
    if alpha.is_zero() {
        return Err(GeometryError::HypothesisViolated("alpha = 0".into()));
    }
    let a2 = alpha * alpha;
    let factor = Rational::one() - (beta * beta) / &a2;
    Ok(factor * (p / Rational::from_integer(2.into()) + ratio(1, 3) - lambda + a2 * Rational::from_integer(4.into())))
}

const STAR_CONFORMAL_REF: &str = "L_Vg = (p + 2/3 + 4(α² − β²) − r − 2λ)g + (r − 4(α² − β²))η⊗η";

/// For a *-conformal Ricci soliton with constant `α ≠ 0, β`: checks the
/// restated soliton condition and then the scalar-curvature formula.
pub fn check_star_conformal_curvature(
    m: &FrameManifold,
    c: &Connection,
    k: &CurvatureBundle,
    cs: &ContactStructure,
    ts: &TransSasakianReport,
    p: &SolitonProblem,
) -> Result<CheckReport> {
    if p.kind != SolitonKind::StarConformalRicci {
        return Err(GeometryError::ProblemMismatch(format!(
            "{} problem given where star_conformal_ricci is required",
            p.kind
        )));
    }
    if !ts.is_constant() {
        return Err(GeometryError::NonConstantStructure(format!(
            "alpha = {}, beta = {}",
            ts.alpha, ts.beta
        )));
    }
    if ts.alpha.is_zero() {
        return Err(GeometryError::HypothesisViolated(
            "the scalar-curvature formula needs alpha != 0".into(),
        ));
    }
    let verdict = soliton_residual(m, c, k, p)?;
    let pr = p.p.clone().expect("conformal kind carries p");
    let kk = &(&ts.alpha * &ts.alpha) - &(&ts.beta * &ts.beta);
    let r = &k.scalar;
    let h = lie_derivative_metric(m, c, &p.v)?;
    let g = m.metric_components();
    let eta = cs.eta();
    let four_k = &kk * &ScalarExpr::int(4);
    let cg = &(&(&ScalarExpr::constant(pr.clone() + ratio(2, 3)) + &four_k) - r)
        - &(&verdict.lambda * &ScalarExpr::int(2));
    let ce = r - &four_k;
    let mut res = Residuals::new();
    for i in 0..DIM {
        for j in i..DIM {
            let rhs = &(&cg * &g[i][j]) + &(&ce * &(&eta[i] * &eta[j]));
            res.push((index_label(&[i, j]), h.get(&[i, j]) - &rhs));
        }
    }
    let mut cond = CheckItem::from_residuals("soliton-condition", STAR_CONFORMAL_REF, res)
        .note(format!("λ = {} ({})", verdict.lambda, p.lambda));
    let formula_ref = "r = (1 − β²/α²)(p/2 + 1/3 − λ + 4α²)";
    if cond.status.is_failure() || !verdict.is_soliton {
        cond.status = crate::report::Status::NotApplicable;
        cond = cond.note(format!("no *-conformal soliton with V = {}", p.v));
        let skip = CheckItem::not_applicable("scalar-curvature", formula_ref, "skipped: no *-conformal soliton");
        return Ok(CheckReport::new("star-conformal-curvature", vec![cond, skip]));
    }
    let item = match (
        ts.alpha.as_constant(),
        ts.beta.as_constant(),
        verdict.lambda.as_constant(),
    ) {
        (Some(a), Some(b), Some(l)) => {
            let predicted = star_conformal_scalar_curvature(&a, &b, &pr, &l)?;
            CheckItem::from_residuals(
                "scalar-curvature",
                formula_ref,
                vec![("()".into(), r - &ScalarExpr::constant(predicted.clone()))],
            )
            .note(format!("predicted r = {predicted}, computed r = {r}"))
        }
        _ => CheckItem::not_applicable("scalar-curvature", formula_ref, "λ or structure functions not constant"),
    };
    Ok(CheckReport::new("star-conformal-curvature", vec![cond, item]))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connection::levi_civita;
    use crate::report::Status;
    use crate::scalar::rat;
    use crate::structure::detect_trans_sasakian;
    use crate::testing::{example, field, flat, s3, standard_phi};

    struct Setup {
        m: FrameManifold,
        c: Connection,
        cs: ContactStructure,
        k: CurvatureBundle,
        ts: TransSasakianReport,
    }

    fn setup(m: FrameManifold) -> Setup {
        let c = levi_civita(&m).unwrap();
        let phi = standard_phi();
        let rows = std::array::from_fn(|i| std::array::from_fn(|j| phi.get(&[i, j]).clone()));
        let cs = ContactStructure::new(&m, rows, VectorField::basis(2), None);
        let k = CurvatureBundle::compute(&m, &c, Some(cs.phi())).unwrap();
        let ts = detect_trans_sasakian(&m, &c, &cs).unwrap();
        Setup { m, c, cs, k, ts }
    }

    fn ricci(v: VectorField) -> SolitonProblem {
        SolitonProblem::new(SolitonKind::Ricci, v, None, LambdaSpec::Solve).unwrap()
    }

    #[test]
    fn pressure_must_match_kind() {
        let v = VectorField::zero();
        assert!(SolitonProblem::new(SolitonKind::Ricci, v.clone(), Some(rat(0)), LambdaSpec::Solve).is_err());
        assert!(SolitonProblem::new(SolitonKind::ConformalRicci, v, None, LambdaSpec::Solve).is_err());
        assert_eq!("star_conformal_ricci".parse::<SolitonKind>().unwrap(), SolitonKind::StarConformalRicci);
    }

    #[test]
    fn flat_position_field() {
        let s = setup(flat());
        let v = ricci(field(["x", "y", "z"]));
        let verdict = soliton_residual(&s.m, &s.c, &s.k, &v).unwrap();
        assert!(verdict.is_soliton);
        assert_eq!(verdict.lambda, ScalarExpr::int(-1));
        let rep = check_soliton_classification(&s.m, &s.c, &s.cs, &s.ts, &v, &verdict).unwrap();
        assert_eq!(rep.item("case-null").unwrap().status, Status::Pass);
        assert_eq!(rep.item("case-orthogonal").unwrap().status, Status::NotApplicable);

        // expanding the scaled field -λ₀·position with λ₀ = 1 via a fixed λ
        let v = SolitonProblem::new(
            SolitonKind::Ricci,
            field(["-x", "-y", "-z"]),
            None,
            LambdaSpec::Value(rat(1)),
        )
        .unwrap();
        assert!(soliton_residual(&s.m, &s.c, &s.k, &v).unwrap().is_soliton);
    }

    #[test]
    fn flat_planar_field_is_not_a_soliton() {
        let s = setup(flat());
        let v = ricci(field(["x", "y", "0"]));
        let verdict = soliton_residual(&s.m, &s.c, &s.k, &v).unwrap();
        assert!(!verdict.is_soliton);
        let rep = check_soliton_classification(&s.m, &s.c, &s.cs, &s.ts, &v, &verdict).unwrap();
        assert!(rep.items.iter().all(|i| i.status == Status::NotApplicable));
    }

    #[test]
    fn example_reeb_field() {
        let s = setup(example());
        let v = ricci(VectorField::basis(2));
        let verdict = soliton_residual(&s.m, &s.c, &s.k, &v).unwrap();
        assert!(!verdict.is_soliton);
        assert_eq!(verdict.lambda_trace, ScalarExpr::ratio(28, 3));
        let pw: Vec<ScalarExpr> = verdict.lambda_pointwise.iter().map(|(_, l)| l.clone().unwrap()).collect();
        assert_eq!(pw, vec![ScalarExpr::int(10), ScalarExpr::int(10), ScalarExpr::int(8)]);
        let rep = check_soliton_classification(&s.m, &s.c, &s.cs, &s.ts, &v, &verdict).unwrap();
        assert_eq!(rep.items[0].status, Status::NotApplicable);
    }

    #[test]
    fn sphere_reeb_field() {
        let s = setup(s3());
        let v = ricci(VectorField::basis(2));
        let verdict = soliton_residual(&s.m, &s.c, &s.k, &v).unwrap();
        assert!(verdict.is_soliton);
        assert_eq!(verdict.lambda, ScalarExpr::int(-2));
        let rep = check_soliton_classification(&s.m, &s.c, &s.cs, &s.ts, &v, &verdict).unwrap();
        let it = rep.item("case-orthogonal").unwrap();
        assert_eq!(it.status, Status::Pass);
        assert!(it.conflicts_with_paper);
        assert_eq!(rep.item("case-null").unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn einstein_with_zero_field() {
        for (m, c) in [(s3(), 2), (example(), -8)] {
            let s = setup(m);
            let p = SolitonProblem::new(SolitonKind::Ricci, VectorField::zero(), None, LambdaSpec::Value(rat(-c))).unwrap();
            assert!(soliton_residual(&s.m, &s.c, &s.k, &p).unwrap().is_soliton);
            // a non-Killing perturbation breaks it
            let p = SolitonProblem { v: field(["0", "0", "x"]), ..p };
            let p = if s.m.mode() == crate::manifold::Mode::Lie {
                SolitonProblem { v: VectorField::zero(), lambda: LambdaSpec::Value(rat(-c + 1)), ..p }
            } else {
                p
            };
            assert!(!soliton_residual(&s.m, &s.c, &s.k, &p).unwrap().is_soliton);
        }
    }

    #[test]
    fn star_kinds_need_phi() {
        let m = flat();
        let c = levi_civita(&m).unwrap();
        let k = CurvatureBundle::compute(&m, &c, None).unwrap();
        let p = SolitonProblem::new(SolitonKind::StarRicci, VectorField::zero(), None, LambdaSpec::Solve).unwrap();
        assert!(matches!(soliton_residual(&m, &c, &k, &p), Err(GeometryError::ProblemMismatch(_))));
    }

    #[test]
    fn conformal_kinds() {
        // flat, V = position: L_Vg = 2g, so 2 + 2λ − (p + 2/3) = 0
        let s = setup(flat());
        let p = SolitonProblem::new(SolitonKind::ConformalRicci, field(["x", "y", "z"]), Some(rat(0)), LambdaSpec::Solve).unwrap();
        let v = soliton_residual(&s.m, &s.c, &s.k, &p).unwrap();
        assert!(v.is_soliton);
        assert_eq!(v.lambda, ScalarExpr::ratio(-2, 3));
        // S³: S* = g − η⊗η is not proportional to g
        let s = setup(s3());
        let p = SolitonProblem::new(SolitonKind::StarRicci, VectorField::zero(), None, LambdaSpec::Solve).unwrap();
        assert!(!soliton_residual(&s.m, &s.c, &s.k, &p).unwrap().is_soliton);
    }

    #[test]
    fn scalar_curvature_formula() {
        assert_eq!(
            star_conformal_scalar_curvature(&rat(1), &rat(0), &rat(2), &rat(1)).unwrap(),
            ratio(13, 3)
        );
        assert!(matches!(
            star_conformal_scalar_curvature(&rat(0), &rat(1), &rat(0), &rat(0)),
            Err(GeometryError::HypothesisViolated(_))
        ));
    }

    #[test]
    fn star_conformal_checker() {
        let s = setup(example());
        let p = SolitonProblem::new(SolitonKind::StarConformalRicci, VectorField::basis(2), Some(rat(0)), LambdaSpec::Solve).unwrap();
        assert!(matches!(
            check_star_conformal_curvature(&s.m, &s.c, &s.k, &s.cs, &s.ts, &p),
            Err(GeometryError::HypothesisViolated(_))
        ));

        let s = setup(s3());
        let p = SolitonProblem::new(SolitonKind::StarConformalRicci, VectorField::zero(), Some(rat(0)), LambdaSpec::Solve).unwrap();
        let rep = check_star_conformal_curvature(&s.m, &s.c, &s.k, &s.cs, &s.ts, &p).unwrap();
        let cond = rep.item("soliton-condition").unwrap();
        assert_eq!(cond.status, Status::NotApplicable);
        assert!(cond.notes.iter().any(|n| n.contains("no *-conformal soliton")));
        assert_eq!(rep.item("scalar-curvature").unwrap().status, Status::NotApplicable);
    }

    #[test]
    fn lie_derivative_is_linear_in_the_field() {
        let s = setup(example());
        let v = field(["x*exp(-2*z)", "y", "1"]);
        let w = field(["sin(y)", "z", "exp(2*z)"]);
        let (a, b) = (ScalarExpr::int(3), ScalarExpr::ratio(-1, 2));
        let lhs = lie_derivative_metric(&s.m, &s.c, &v.scale(&a).add(&w.scale(&b))).unwrap();
        let rhs = lie_derivative_metric(&s.m, &s.c, &v)
            .unwrap()
            .scale(&a)
            .add(&lie_derivative_metric(&s.m, &s.c, &w).unwrap().scale(&b));
        assert!(lhs.sub(&rhs).is_zero());
    }
}
