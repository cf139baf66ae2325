//! Suite orchestration: builds the geometry of a manifest once and turns
//! every requested suite into a [`CheckReport`].

use crate::connection::{commutation_defects, levi_civita, lie_derivative_metric, Connection};
use crate::curvature::CurvatureBundle;
use crate::error::GeometryError;
use crate::manifest::{Claim, ClaimValue, Manifest, ManifestError, Quantity, Suite};
use crate::manifold::{index_label, FrameManifold, VectorField};
use crate::oracle::{finite_difference_check, CHRISTOFFEL_TOLERANCE, DEFAULT_POINTS, RIEMANN_TOLERANCE};
use crate::report::{CheckItem, CheckReport, Residuals, RunReport, Status};
use crate::scalar::{ScalarExpr, DIM};
use crate::soliton::{
    check_soliton_classification, check_star_conformal_curvature, soliton_residual, SolitonKind, SolitonVerdict,
};
use crate::structure::{
    detect_trans_sasakian, identity_suite_constant, identity_suite_general, validate_almost_contact,
    ContactStructure, TransSasakianReport,
};

pub const DEFAULT_SEED: u64 = 20240229;

#[derive(Debug, Clone)]
pub struct RunOptions {
    /// Suites to run; empty means the manifest's list, or all suites.
    pub suites: Vec<Suite>,
    pub oracle: bool,
    pub seed: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            suites: Vec::new(),
            oracle: false,
            seed: DEFAULT_SEED,
        }
    }
}

/// Everything computed from a manifest.
pub struct Analysis {
    pub manifold: FrameManifold,
    pub connection: Connection,
    pub curvature: CurvatureBundle,
    pub contact: Option<ContactStructure>,
    pub trans_sasakian: Option<Result<TransSasakianReport, GeometryError>>,
    pub verdicts: Vec<Result<SolitonVerdict, GeometryError>>,
}

impl Analysis {
    pub fn new(manifest: &Manifest) -> Result<Self, ManifestError> {
        let manifold = manifest.manifold()?;
        let connection = levi_civita(&manifold)?;
        let contact = manifest.contact_structure(&manifold);
        let curvature = CurvatureBundle::compute(&manifold, &connection, contact.as_ref().map(|c| c.phi()))?;
        let trans_sasakian = contact
            .as_ref()
            .map(|cs| detect_trans_sasakian(&manifold, &connection, cs));
        let verdicts = manifest
            .solitons
            .iter()
            .map(|s| soliton_residual(&manifold, &connection, &curvature, &s.problem))
            .collect();
        Ok(Analysis {
            manifold,
            connection,
            curvature,
            contact,
            trans_sasakian,
            verdicts,
        })
    }

    /// Detection result when it succeeded and the structure is trans-Sasakian.
    fn trans_sasakian_ok(&self) -> Result<(&ContactStructure, &TransSasakianReport), String> {
        let cs = self.contact.as_ref().ok_or("no almost contact structure (phi, xi) given")?;
        match &self.trans_sasakian {
            Some(Ok(ts)) if ts.is_trans_sasakian() => Ok((cs, ts)),
            Some(Ok(_)) => Err("structure is not trans-Sasakian".into()),
            Some(Err(e)) => Err(format!("trans-Sasakian detection failed: {e}")),
            None => Err("no almost contact structure (phi, xi) given".into()),
        }
    }
}

fn defects_to_residuals(d: Vec<(Vec<usize>, ScalarExpr)>) -> Residuals {
    d.into_iter().map(|(i, v)| (index_label(&i), v)).collect()
}

fn prefixed(prefix: &str, mut rep: CheckReport) -> Vec<CheckItem> {
    for it in &mut rep.items {
        it.id = format!("{prefix}/{}", it.id);
    }
    rep.items
}

/// `a*e1 + b*e2` style rendering of frame components.
pub fn frame_vector(v: &VectorField) -> String {
    let parts: Vec<String> = (0..DIM)
        .filter(|&i| !v.component(i).is_canonical_zero())
        .map(|i| {
            let c = v.component(i);
            if c == &ScalarExpr::one() {
                format!("e{}", i + 1)
            } else if c.num_terms() == 1 {
                format!("{c}*e{}", i + 1)
            } else {
                format!("({c})*e{}", i + 1)
            }
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" + ")
    }
}

fn connection_suite(a: &Analysis, manifest: &Manifest) -> CheckReport {
    let (m, c) = (&a.manifold, &a.connection);
    let mut table = CheckItem::with_status("coefficients", "∇_{eᵢ}eⱼ = Σₖ Γᵢⱼᵏ eₖ", Status::Pass);
    for i in 0..DIM {
        for j in 0..DIM {
            table = table.note(format!("∇_e{} e{} = {}", i + 1, j + 1, frame_vector(&c.nabla_frame(i, j))));
        }
    }
    let mut items = vec![
        table,
        CheckItem::from_residuals(
            "torsion-free",
            "∇_X Y − ∇_Y X − [X,Y] = 0",
            defects_to_residuals(c.torsion_defects(m)),
        ),
    ];
    items.push(match c.metric_compatibility_defects(m) {
        Ok(d) => CheckItem::from_residuals("metric-compatible", "X g(Y,Z) = g(∇_X Y,Z) + g(Y,∇_X Z)", defects_to_residuals(d)),
        Err(e) => CheckItem::with_status("metric-compatible", "", Status::Fail).note(e.to_string()),
    });
    let reference = "(∇_X L_Vg)(Y,Z) = g((L_V∇)(X,Y),Z) + g((L_V∇)(X,Z),Y)";
    for (n, s) in manifest.solitons.iter().enumerate() {
        let id = format!("commutation/problem-{}", n + 1);
        items.push(match commutation_defects(m, c, &s.problem.v) {
            Ok(d) => CheckItem::from_residuals(id, reference, defects_to_residuals(d))
                .note(format!("V = {}", frame_vector(&s.problem.v))),
            Err(e) => CheckItem::with_status(id, reference, Status::Fail).note(e.to_string()),
        });
    }
    CheckReport::new(Suite::Connection.as_str(), items)
}

fn curvature_suite(a: &Analysis) -> CheckReport {
    let (m, k) = (&a.manifold, &a.curvature);
    let mut values = CheckItem::with_status(
        "values",
        "R(X,Y)Z = ∇_X∇_Y Z − ∇_Y∇_X Z − ∇_[X,Y] Z",
        Status::Pass,
    );
    for x in 0..DIM {
        for y in (x + 1)..DIM {
            for z in 0..DIM {
                values = values.note(format!(
                    "R(e{},e{})e{} = {}",
                    x + 1,
                    y + 1,
                    z + 1,
                    frame_vector(&k.riemann.vector_at(&[x, y, z]))
                ));
            }
        }
    }
    for i in 0..DIM {
        for j in i..DIM {
            values = values.note(format!("S(e{},e{}) = {}", i + 1, j + 1, k.ricci.get(&[i, j])));
        }
    }
    values = values.note(format!("r = {}", k.scalar));
    if let Some(s) = &k.star_ricci {
        for i in 0..DIM {
            for j in 0..DIM {
                values = values.note(format!("S*(e{},e{}) = {}", i + 1, j + 1, s.get(&[i, j])));
            }
        }
    }
    let items = vec![
        values,
        CheckItem::from_residuals("skew", "R(X,Y)Z = −R(Y,X)Z", defects_to_residuals(k.skew_defects())),
        CheckItem::from_residuals(
            "pair-skew",
            "g(R(X,Y)Z,W) = −g(R(X,Y)W,Z)",
            defects_to_residuals(k.pair_skew_defects(m)),
        ),
        CheckItem::from_residuals(
            "bianchi",
            "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0",
            defects_to_residuals(k.bianchi_defects()),
        ),
        CheckItem::from_residuals(
            "ricci",
            "S symmetric, g(QX,Y) = S(X,Y), r = trace S",
            k.ricci_defects(m),
        ),
    ];
    CheckReport::new(Suite::Curvature.as_str(), items)
}

fn almost_contact_suite(a: &Analysis) -> CheckReport {
    match &a.contact {
        Some(cs) => validate_almost_contact(&a.manifold, cs),
        None => CheckReport::new(
            Suite::AlmostContact.as_str(),
            vec![CheckItem::with_status("structure", "(φ, ξ, η, g)", Status::Fail).note("no almost contact structure (phi, xi) given")],
        ),
    }
}

fn trans_sasakian_suite(a: &Analysis) -> CheckReport {
    let fail = |why: String| {
        CheckReport::new(
            Suite::TransSasakian.as_str(),
            vec![CheckItem::with_status("type", "∇_Xξ = −αφX + β(X − η(X)ξ)", Status::Fail).note(why)],
        )
    };
    match &a.trans_sasakian {
        Some(Ok(ts)) => ts.to_check_report(),
        Some(Err(e)) => fail(e.to_string()),
        None => fail("no almost contact structure (phi, xi) given".into()),
    }
}

fn identities_suite(a: &Analysis) -> CheckReport {
    let name = Suite::Identities.as_str();
    let (cs, ts) = match a.trans_sasakian_ok() {
        Ok(x) => x,
        Err(why) => {
            return CheckReport::new(
                name,
                vec![CheckItem::with_status("prerequisite", "trans-Sasakian structure", Status::Fail).note(why)],
            )
        }
    };
    let (m, k) = (&a.manifold, &a.curvature);
    let mut items = Vec::new();
    if ts.is_constant() {
        match identity_suite_constant(m, cs, k, &ts.alpha, &ts.beta) {
            Ok(r) => items.extend(r.items),
            Err(e) => items.push(CheckItem::with_status("constant", "", Status::Fail).note(e.to_string())),
        }
    } else {
        items.push(CheckItem::not_applicable(
            "constant",
            "identities for constant α, β",
            format!("alpha = {}, beta = {} are not both constant", ts.alpha, ts.beta),
        ));
    }
    match identity_suite_general(m, cs, k, &ts.alpha, &ts.beta) {
        Ok(r) => items.extend(r.items),
        Err(e) => items.push(CheckItem::with_status("general", "", Status::Fail).note(e.to_string())),
    }
    CheckReport::new(name, items)
}

fn soliton_item(n: usize, manifest: &Manifest, verdict: &Result<SolitonVerdict, GeometryError>) -> CheckItem {
    let spec = &manifest.solitons[n];
    let p = &spec.problem;
    let id = format!("problem-{}", n + 1);
    let v = match verdict {
        Ok(v) => v,
        Err(e) => return CheckItem::with_status(id, p.kind.equation(), Status::Fail).note(e.to_string()),
    };
    let expected = spec.expect_soliton.unwrap_or(true);
    let status = if v.is_soliton == expected { Status::Pass } else { Status::Fail };
    let mut it = CheckItem::with_status(id, p.kind.equation(), status)
        .note(format!("kind = {}, V = {}", p.kind, frame_vector(&p.v)))
        .note(match &p.p {
            Some(pr) => format!("p = {pr}, lambda = {}", p.lambda),
            None => format!("lambda = {}", p.lambda),
        })
        .note(format!("is_soliton = {} (expected {expected})", v.is_soliton))
        .note(format!("lambda = {}, lambda_trace = {}", v.lambda, v.lambda_trace));
    let pw: Vec<String> = v
        .lambda_pointwise
        .iter()
        .map(|(l, x)| format!("{l}: {}", x.as_ref().map_or("undefined".into(), |x| x.to_string())))
        .collect();
    it = it.note(format!("lambda_pointwise = {{{}}}", pw.join(", ")));
    for t in &v.theorem_notes {
        it = it.note(t.clone());
    }
    if !v.is_soliton {
        for (label, r) in v.residuals() {
            if !r.is_zero() {
                it.residual_components.push(crate::report::ResidualComponent {
                    index: label,
                    value: r.to_string(),
                });
            }
        }
    }
    it
}

fn soliton_suite(a: &Analysis, manifest: &Manifest) -> CheckReport {
    let mut items: Vec<CheckItem> = (0..manifest.solitons.len())
        .map(|n| soliton_item(n, manifest, &a.verdicts[n]))
        .collect();
    if items.is_empty() {
        items.push(CheckItem::not_applicable("problems", "soliton equations", "manifest has no [[soliton]] entries"));
    }
    CheckReport::new(Suite::Soliton.as_str(), items)
}

fn classification_suite(a: &Analysis, manifest: &Manifest) -> CheckReport {
    let name = Suite::SolitonClassification.as_str();
    let mut items = Vec::new();
    for (n, s) in manifest.solitons.iter().enumerate() {
        if s.problem.kind != SolitonKind::Ricci {
            continue;
        }
        let prefix = format!("problem-{}", n + 1);
        let verdict = match &a.verdicts[n] {
            Ok(v) => v,
            Err(e) => {
                items.push(CheckItem::not_applicable(prefix, "Ricci soliton", e.to_string()));
                continue;
            }
        };
        match a.trans_sasakian_ok() {
            Ok((cs, ts)) => {
                match check_soliton_classification(&a.manifold, &a.connection, cs, ts, &s.problem, verdict) {
                    Ok(r) => items.extend(prefixed(&prefix, r)),
                    Err(e) => items.push(CheckItem::not_applicable(prefix, "constant α, β", e.to_string())),
                }
            }
            Err(why) => items.push(CheckItem::not_applicable(prefix, "trans-Sasakian structure", why)),
        }
    }
    if items.is_empty() {
        items.push(CheckItem::not_applicable("problems", "Ricci soliton", "no ricci soliton problems"));
    }
    CheckReport::new(name, items)
}

fn star_conformal_suite(a: &Analysis, manifest: &Manifest) -> CheckReport {
    let name = Suite::StarConformalCurvature.as_str();
    let mut items = Vec::new();
    for (n, s) in manifest.solitons.iter().enumerate() {
        if s.problem.kind != SolitonKind::StarConformalRicci {
            continue;
        }
        let prefix = format!("problem-{}", n + 1);
        let reference = "*-conformal Ricci soliton with constant α ≠ 0, β";
        match a.trans_sasakian_ok() {
            Ok((cs, ts)) => match check_star_conformal_curvature(
                &a.manifold,
                &a.connection,
                &a.curvature,
                cs,
                ts,
                &s.problem,
            ) {
                Ok(r) => items.extend(prefixed(&prefix, r)),
                Err(e @ (GeometryError::HypothesisViolated(_) | GeometryError::NonConstantStructure(_))) => {
                    items.push(CheckItem::not_applicable(format!("{prefix}/hypothesis"), reference, e.to_string()))
                }
                Err(e) => items.push(CheckItem::with_status(prefix, reference, Status::Fail).note(e.to_string())),
            },
            Err(why) => items.push(CheckItem::not_applicable(prefix, reference, why)),
        }
    }
    if items.is_empty() {
        items.push(CheckItem::not_applicable(
            "problems",
            "*-conformal Ricci soliton",
            "no star_conformal_ricci problems",
        ));
    }
    CheckReport::new(name, items)
}

/// Computed value of one claim entry and its textual form.
fn claim_entry_value(a: &Analysis, manifest: &Manifest, e: &crate::manifest::ClaimEntry) -> Result<ClaimValue, String> {
    let (m, c, k) = (&a.manifold, &a.connection, &a.curvature);
    let args = &e.args;
    Ok(match e.quantity {
        Quantity::Bracket => ClaimValue::Vector(m.frame_bracket(args[0], args[1])),
        Quantity::Nabla => ClaimValue::Vector(c.nabla_frame(args[0], args[1])),
        Quantity::Curvature => ClaimValue::Vector(k.riemann.vector_at(args)),
        Quantity::Ricci => ClaimValue::Scalar(k.ricci.get(args).clone()),
        Quantity::StarRicci => ClaimValue::Scalar(
            k.star_ricci
                .as_ref()
                .ok_or("no almost contact structure for S*")?
                .get(args)
                .clone(),
        ),
        Quantity::ScalarCurvature => ClaimValue::Scalar(k.scalar.clone()),
        Quantity::LieMetric => {
            let v = &manifest.solitons[e.problem.expect("validated")].problem.v;
            let h = lie_derivative_metric(m, c, v).map_err(|e| e.to_string())?;
            ClaimValue::Scalar(h.get(args).clone())
        }
        Quantity::Lambda => {
            let v = a.verdicts[e.problem.expect("validated")]
                .as_ref()
                .map_err(|e| e.to_string())?;
            ClaimValue::Scalar(v.lambda.clone())
        }
        Quantity::Alpha | Quantity::Beta => {
            let (_, ts) = a.trans_sasakian_ok()?;
            ClaimValue::Scalar(if e.quantity == Quantity::Alpha { ts.alpha.clone() } else { ts.beta.clone() })
        }
    })
}

fn claim_label(e: &crate::manifest::ClaimEntry) -> String {
    let f = |i: &usize| format!("e{}", i + 1);
    let a = &e.args;
    match e.quantity {
        Quantity::Bracket => format!("[{},{}]", f(&a[0]), f(&a[1])),
        Quantity::Nabla => format!("∇_{} {}", f(&a[0]), f(&a[1])),
        Quantity::Curvature => format!("R({},{}){}", f(&a[0]), f(&a[1]), f(&a[2])),
        Quantity::Ricci => format!("S({},{})", f(&a[0]), f(&a[1])),
        Quantity::StarRicci => format!("S*({},{})", f(&a[0]), f(&a[1])),
        Quantity::ScalarCurvature => "r".into(),
        Quantity::LieMetric => format!("(L_Vg)({},{}) [problem {}]", f(&a[0]), f(&a[1]), e.problem.unwrap() + 1),
        Quantity::Lambda => format!("λ [problem {}]", e.problem.unwrap() + 1),
        Quantity::Alpha => "α".into(),
        Quantity::Beta => "β".into(),
    }
}

fn show(v: &ClaimValue) -> String {
    match v {
        ClaimValue::Scalar(s) => s.to_string(),
        ClaimValue::Vector(v) => frame_vector(v),
    }
}

fn claim_item(a: &Analysis, manifest: &Manifest, claim: &Claim) -> CheckItem {
    let mut residuals = Residuals::new();
    let mut notes = Vec::new();
    let mut errors = Vec::new();
    let mut refs = Vec::new();
    for e in &claim.entries {
        let label = claim_label(e);
        refs.push(format!("{label} = {}", show(&e.value)));
        match claim_entry_value(a, manifest, e) {
            Ok(computed) => {
                notes.push(format!("computed {label} = {}", show(&computed)));
                match (&computed, &e.value) {
                    (ClaimValue::Scalar(x), ClaimValue::Scalar(y)) => residuals.push((label, x - y)),
                    (ClaimValue::Vector(x), ClaimValue::Vector(y)) => {
                        let d = x.sub(y);
                        for i in 0..DIM {
                            residuals.push((format!("{label}[e{}]", i + 1), d.component(i).clone()));
                        }
                    }
                    _ => errors.push(format!("{label}: value kind mismatch")),
                }
                if e.quantity == Quantity::Lambda {
                    if let Ok(v) = &a.verdicts[e.problem.unwrap()] {
                        if !v.is_soliton {
                            errors.push(format!(
                                "problem {} is not a soliton (lambda_trace = {})",
                                e.problem.unwrap() + 1,
                                v.lambda_trace
                            ));
                        }
                    }
                }
            }
            Err(why) => errors.push(format!("{label}: {why}")),
        }
    }
    let mut it = CheckItem::from_residuals(claim.id.clone(), refs.join("; "), residuals);
    if let Some(n) = &claim.note {
        it = it.note(n.clone());
    }
    for n in notes {
        it = it.note(n);
    }
    for e in errors {
        it = it.fail_with(e);
    }
    if it.status.is_failure() {
        it.conflicts_with_paper = true;
    }
    it
}

fn published_suite(a: &Analysis, manifest: &Manifest) -> CheckReport {
    let mut items: Vec<CheckItem> = manifest.claims.iter().map(|c| claim_item(a, manifest, c)).collect();
    if items.is_empty() {
        items.push(CheckItem::not_applicable("claims", "published values", "manifest has no [[claim]] entries"));
    }
    CheckReport::new(Suite::Published.as_str(), items)
}

fn oracle_suite(a: &Analysis, seed: u64) -> CheckReport {
    let ch_ref = format!("frame Γ vs finite-difference coordinate Christoffel symbols, tolerance {CHRISTOFFEL_TOLERANCE:e}");
    let r_ref = format!("frame R vs finite-difference coordinate curvature, tolerance {RIEMANN_TOLERANCE:e}");
    let items = match finite_difference_check(&a.manifold, &a.connection, &a.curvature.riemann, seed, DEFAULT_POINTS) {
        None => vec![
            CheckItem::not_applicable("christoffel", ch_ref, "lie mode has no chart"),
            CheckItem::not_applicable("riemann", r_ref, "lie mode has no chart"),
        ],
        Some(rep) => {
            let pts = format!("{} points, seed {seed}", rep.points.len());
            let item = |id: &str, reference: String, ok: bool, err: f64| {
                CheckItem::with_status(id, reference, if ok { Status::Pass } else { Status::Fail })
                    .note(format!("max relative error {err:.3e}"))
                    .note(pts.clone())
            };
            vec![
                item("christoffel", ch_ref, rep.christoffel_ok(), rep.christoffel_max_error),
                item("riemann", r_ref, rep.riemann_ok(), rep.riemann_max_error),
            ]
        }
    };
    CheckReport::new("oracle", items)
}

/// The suites a run will execute, in dependency order.
pub fn selected_suites(manifest: &Manifest, opts: &RunOptions) -> Vec<Suite> {
    let wanted: &[Suite] = if !opts.suites.is_empty() {
        &opts.suites
    } else if !manifest.suites.is_empty() {
        &manifest.suites
    } else {
        &Suite::ORDER
    };
    Suite::ORDER.into_iter().filter(|s| wanted.contains(s)).collect()
}

pub fn run_analysis(a: &Analysis, manifest: &Manifest, label: &str, opts: &RunOptions) -> RunReport {
    let mut reports = Vec::new();
    for s in selected_suites(manifest, opts) {
        reports.push(match s {
            Suite::AlmostContact => almost_contact_suite(a),
            Suite::Connection => connection_suite(a, manifest),
            Suite::Curvature => curvature_suite(a),
            Suite::TransSasakian => trans_sasakian_suite(a),
            Suite::Identities => identities_suite(a),
            Suite::Soliton => soliton_suite(a, manifest),
            Suite::SolitonClassification => classification_suite(a, manifest),
            Suite::StarConformalCurvature => star_conformal_suite(a, manifest),
            Suite::Published => published_suite(a, manifest),
        });
    }
    if opts.oracle {
        reports.push(oracle_suite(a, opts.seed));
    }
    RunReport::new(label, reports)
}

/// Builds the geometry and runs the selected suites.
pub fn run(manifest: &Manifest, label: &str, opts: &RunOptions) -> Result<RunReport, ManifestError> {
    let a = Analysis::new(manifest)?;
    Ok(run_analysis(&a, manifest, label, opts))
}
