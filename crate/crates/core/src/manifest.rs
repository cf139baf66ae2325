//! `.tsm` manifests: TOML documents describing a frame manifold, an optional
//! almost contact structure, soliton problems and published values to audit.

use std::array;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use toml::Spanned;

use crate::error::GeometryError;
use crate::manifold::{Array3, FrameManifold, Matrix3, VectorField};
use crate::scalar::{rat, Rational, ScalarExpr, COORD_NAMES, DIM};
use crate::soliton::{LambdaSpec, SolitonKind, SolitonProblem};
use crate::structure::ContactStructure;

pub const FORMAT_VERSION: i64 = 1;

#[derive(Debug, Error)]
pub enum ManifestError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: `{field}`: {message}")]
    Field {
        field: String,
        line: usize,
        column: usize,
        message: String,
    },
    #[error("missing {0}")]
    Missing(&'static str),
    #[error("{0}")]
    Invalid(String),
    #[error("invalid geometry: {0}")]
    Geometry(#[from] GeometryError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    AlmostContact,
    Connection,
    Curvature,
    TransSasakian,
    Identities,
    Soliton,
    SolitonClassification,
    StarConformalCurvature,
    Published,
}

impl Suite {
    /// Execution order; later suites depend on earlier ones.
    pub const ORDER: [Suite; 9] = [
        Suite::AlmostContact,
        Suite::Connection,
        Suite::Curvature,
        Suite::TransSasakian,
        Suite::Identities,
        Suite::Soliton,
        Suite::SolitonClassification,
        Suite::StarConformalCurvature,
        Suite::Published,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::AlmostContact => "almost-contact",
            Suite::Connection => "connection",
            Suite::Curvature => "curvature",
            Suite::TransSasakian => "trans-sasakian",
            Suite::Identities => "identities",
            Suite::Soliton => "soliton",
            Suite::SolitonClassification => "soliton-classification",
            Suite::StarConformalCurvature => "star-conformal-curvature",
            Suite::Published => "published",
        }
    }

    /// Parses a comma-free suite name; `all` expands to every suite.
    pub fn parse_selection(name: &str) -> Result<Vec<Suite>, String> {
        if name == "all" {
            return Ok(Suite::ORDER.to_vec());
        }
        name.parse().map(|s| vec![s])
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        // Numbered names kept for compatibility with older command lines.
        let s = match s {
            "theorem-3-1" => "soliton-classification",
            "theorem-3-2" => "star-conformal-curvature",
            s => s,
        };
        Suite::ORDER
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = Suite::ORDER.iter().map(|s| s.as_str()).collect();
                format!("unknown suite `{s}` (expected all, {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FrameSpec {
    /// `eᵢ = Σⱼ a[i][j] ∂ⱼ`.
    Chart(Matrix3),
    /// Structure constants `c[i][j][k]`.
    Lie(Array3<Rational>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Quantity {
    Bracket,
    Nabla,
    Curvature,
    Ricci,
    StarRicci,
    ScalarCurvature,
    LieMetric,
    Lambda,
    Alpha,
    Beta,
}

impl Quantity {
    const NAMES: [(&'static str, Quantity); 10] = [
        ("bracket", Quantity::Bracket),
        ("nabla", Quantity::Nabla),
        ("R", Quantity::Curvature),
        ("S", Quantity::Ricci),
        ("S_star", Quantity::StarRicci),
        ("r", Quantity::ScalarCurvature),
        ("LVg", Quantity::LieMetric),
        ("lambda", Quantity::Lambda),
        ("alpha", Quantity::Alpha),
        ("beta", Quantity::Beta),
    ];

    pub fn as_str(self) -> &'static str {
        Quantity::NAMES.iter().find(|(_, q)| *q == self).unwrap().0
    }

    pub fn arity(self) -> usize {
        match self {
            Quantity::Curvature => 3,
            Quantity::Bracket | Quantity::Nabla | Quantity::Ricci | Quantity::StarRicci | Quantity::LieMetric => 2,
            _ => 0,
        }
    }

    pub fn is_vector(self) -> bool {
        matches!(self, Quantity::Bracket | Quantity::Nabla | Quantity::Curvature)
    }

    pub fn needs_problem(self) -> bool {
        matches!(self, Quantity::LieMetric | Quantity::Lambda)
    }
}

impl FromStr for Quantity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Quantity::NAMES
            .iter()
            .find(|(n, _)| *n == s)
            .map(|(_, q)| *q)
            .ok_or_else(|| format!("unknown quantity `{s}`"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClaimValue {
    Scalar(ScalarExpr),
    Vector(VectorField),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClaimEntry {
    pub quantity: Quantity,
    /// 0-based frame indices.
    pub args: Vec<usize>,
    /// 0-based soliton problem index.
    pub problem: Option<usize>,
    pub value: ClaimValue,
}

/// A published value (or group of values) to compare against the computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Claim {
    pub id: String,
    pub note: Option<String>,
    pub entries: Vec<ClaimEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolitonSpec {
    pub problem: SolitonProblem,
    pub expect_soliton: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContactSpec {
    pub phi: [[ScalarExpr; DIM]; DIM],
    pub xi: VectorField,
    pub eta: Option<[ScalarExpr; DIM]>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Manifest {
    pub format_version: i64,
    pub name: Option<String>,
    pub frame: FrameSpec,
    pub metric: Option<Matrix3>,
    pub contact: Option<ContactSpec>,
    pub base_point: [Rational; DIM],
    pub suites: Vec<Suite>,
    pub solitons: Vec<SolitonSpec>,
    pub claims: Vec<Claim>,
}

// Serde mirror of the file; `S` is `Spanned<String>` when reading and
// `String` when writing.
#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct Raw<S> {
    #[serde(skip_serializing_if = "Option::is_none")]
    format_version: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    name: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    coords: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    frame: Option<Vec<Vec<S>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    structure: Option<Vec<RawConstant<S>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    metric: Option<Vec<Vec<S>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<Vec<Vec<S>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    xi: Option<Vec<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    eta: Option<Vec<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    base_point: Option<Vec<S>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    suites: Option<Vec<String>>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    soliton: Vec<RawSoliton<S>>,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    claim: Vec<RawClaim<S>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawConstant<S> {
    i: usize,
    j: usize,
    k: usize,
    c: S,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawSoliton<S> {
    kind: String,
    v: Vec<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    p: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    lambda: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    expect_soliton: Option<bool>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawClaim<S> {
    id: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<String>,
    entries: Vec<RawEntry<S>>,
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct RawEntry<S> {
    quantity: String,
    #[serde(default = "Vec::new", skip_serializing_if = "Vec::is_empty")]
    args: Vec<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    problem: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    value: Option<S>,
    #[serde(skip_serializing_if = "Option::is_none")]
    vector: Option<Vec<S>>,
}

fn line_col(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, column)
}

struct Reader<'a> {
    text: &'a str,
}

impl Reader<'_> {
    fn field_error(&self, field: &str, s: &Spanned<String>, inner_column: usize, message: String) -> ManifestError {
        // the span covers the quoted literal; skip the opening quote
        let (line, column) = line_col(self.text, s.span().start);
        ManifestError::Field {
            field: field.to_string(),
            line,
            column: column + inner_column,
            message,
        }
    }

    fn expr(&self, field: &str, s: &Spanned<String>) -> Result<ScalarExpr, ManifestError> {
        s.get_ref()
            .parse::<ScalarExpr>()
            .map_err(|e| self.field_error(field, s, e.column, e.message.clone()))
    }

    fn rational(&self, field: &str, s: &Spanned<String>) -> Result<Rational, ManifestError> {
        let e = self.expr(field, s)?;
        e.as_constant()
            .ok_or_else(|| self.field_error(field, s, 1, format!("expected a rational number, got `{e}`")))
    }

    fn vector(&self, field: &str, v: &[Spanned<String>]) -> Result<[ScalarExpr; DIM], ManifestError> {
        if v.len() != DIM {
            return Err(ManifestError::Invalid(format!("`{field}` must have {DIM} entries, got {}", v.len())));
        }
        let mut out: [ScalarExpr; DIM] = Default::default();
        for (i, s) in v.iter().enumerate() {
            out[i] = self.expr(&format!("{field}[{}]", i + 1), s)?;
        }
        Ok(out)
    }

    fn matrix(&self, field: &str, m: &[Vec<Spanned<String>>]) -> Result<Matrix3, ManifestError> {
        if m.len() != DIM {
            return Err(ManifestError::Invalid(format!("`{field}` must have {DIM} rows, got {}", m.len())));
        }
        let mut out: Matrix3 = Default::default();
        for (i, row) in m.iter().enumerate() {
            out[i] = self.vector(&format!("{field}[{}]", i + 1), row)?;
        }
        Ok(out)
    }
}

fn frame_index(field: &str, i: usize) -> Result<usize, ManifestError> {
    if (1..=DIM).contains(&i) {
        Ok(i - 1)
    } else {
        Err(ManifestError::Invalid(format!("`{field}`: frame index {i} is outside 1..=3")))
    }
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
        let raw: Raw<Spanned<String>> = toml::from_str(text).map_err(|e| {
            let (line, column) = e.span().map_or((1, 1), |s| line_col(text, s.start));
            ManifestError::Syntax {
                line,
                column,
                message: e.message().trim().to_string(),
            }
        })?;
        let rd = Reader { text };

        let mode = raw.mode.as_deref().ok_or(ManifestError::Missing("mode"))?;
        let format_version = raw.format_version.ok_or(ManifestError::Missing("format_version"))?;
        if format_version != FORMAT_VERSION {
            return Err(ManifestError::Invalid(format!(
                "unsupported format_version {format_version} (expected {FORMAT_VERSION})"
            )));
        }
        if let Some(c) = &raw.coords {
            if c.iter().map(String::as_str).ne(COORD_NAMES.iter().copied()) {
                return Err(ManifestError::Invalid("`coords` must be [\"x\", \"y\", \"z\"]".into()));
            }
        }

        let frame = match mode {
            "chart" => {
                if raw.structure.is_some() {
                    return Err(ManifestError::Invalid("`structure` is only allowed in lie mode".into()));
                }
                let f = raw.frame.as_ref().ok_or(ManifestError::Missing("frame"))?;
                FrameSpec::Chart(rd.matrix("frame", f)?)
            }
            "lie" => {
                if raw.frame.is_some() {
                    return Err(ManifestError::Invalid("`frame` is only allowed in chart mode".into()));
                }
                let list = raw.structure.as_ref().ok_or(ManifestError::Missing("structure"))?;
                let mut c: Array3<Rational> = Default::default();
                for t in list {
                    let (i, j, k) = (
                        frame_index("structure.i", t.i)?,
                        frame_index("structure.j", t.j)?,
                        frame_index("structure.k", t.k)?,
                    );
                    let v = rd.rational("structure.c", &t.c)?;
                    if i == j && !v.is_zero() {
                        return Err(ManifestError::Invalid(format!(
                            "`structure`: c[{}][{}][{}] must vanish",
                            t.i, t.j, t.k
                        )));
                    }
                    c[j][i][k] = -v.clone();
                    c[i][j][k] = v;
                }
                FrameSpec::Lie(c)
            }
            other => {
                return Err(ManifestError::Invalid(format!(
                    "unknown mode `{other}` (expected chart or lie)"
                )))
            }
        };

        let metric = raw.metric.as_ref().map(|m| rd.matrix("metric", m)).transpose()?;
        let contact = match (&raw.phi, &raw.xi) {
            (Some(phi), Some(xi)) => Some(ContactSpec {
                phi: rd.matrix("phi", phi)?,
                xi: VectorField::new(rd.vector("xi", xi)?),
                eta: raw.eta.as_ref().map(|e| rd.vector("eta", e)).transpose()?,
            }),
            (None, None) => {
                if raw.eta.is_some() {
                    return Err(ManifestError::Invalid("`eta` given without `phi` and `xi`".into()));
                }
                None
            }
            (Some(_), None) => return Err(ManifestError::Missing("xi")),
            (None, Some(_)) => return Err(ManifestError::Missing("phi")),
        };
        let base_point = match &raw.base_point {
            Some(b) => {
                if b.len() != DIM {
                    return Err(ManifestError::Invalid("`base_point` must have 3 entries".into()));
                }
                let mut out: [Rational; DIM] = array::from_fn(|_| rat(0));
                for (i, s) in b.iter().enumerate() {
                    out[i] = rd.rational("base_point", s)?;
                }
                out
            }
            None => array::from_fn(|_| rat(0)),
        };
        let mut suites = Vec::new();
        for s in raw.suites.iter().flatten() {
            for x in Suite::parse_selection(s).map_err(ManifestError::Invalid)? {
                if !suites.contains(&x) {
                    suites.push(x);
                }
            }
        }

        let mut solitons = Vec::new();
        for (n, s) in raw.soliton.iter().enumerate() {
            let field = format!("soliton[{}]", n + 1);
            let kind: SolitonKind = s.kind.parse().map_err(|e| ManifestError::Invalid(format!("`{field}`: {e}")))?;
            let v = VectorField::new(rd.vector(&format!("{field}.v"), &s.v)?);
            let p = s.p.as_ref().map(|p| rd.rational(&format!("{field}.p"), p)).transpose()?;
            let lambda = match &s.lambda {
                None => LambdaSpec::Solve,
                Some(l) if l.get_ref().trim() == "solve" => LambdaSpec::Solve,
                Some(l) => LambdaSpec::Value(rd.rational(&format!("{field}.lambda"), l)?),
            };
            let problem = SolitonProblem::new(kind, v, p, lambda)
                .map_err(|e| ManifestError::Invalid(format!("`{field}`: {e}")))?;
            solitons.push(SolitonSpec {
                problem,
                expect_soliton: s.expect_soliton,
            });
        }

        let mut claims = Vec::new();
        for c in &raw.claim {
            let mut entries = Vec::new();
            for (n, e) in c.entries.iter().enumerate() {
                let field = format!("claim {}, entry {}", c.id, n + 1);
                let quantity: Quantity =
                    e.quantity.parse().map_err(|m| ManifestError::Invalid(format!("{field}: {m}")))?;
                if e.args.len() != quantity.arity() {
                    return Err(ManifestError::Invalid(format!(
                        "{field}: `{}` takes {} frame indices, got {}",
                        quantity.as_str(),
                        quantity.arity(),
                        e.args.len()
                    )));
                }
                let args = e
                    .args
                    .iter()
                    .map(|&i| frame_index(&field, i))
                    .collect::<Result<Vec<_>, _>>()?;
                let problem = match (quantity.needs_problem(), e.problem) {
                    (true, Some(p)) if (1..=solitons.len()).contains(&p) => Some(p - 1),
                    (true, _) => {
                        return Err(ManifestError::Invalid(format!(
                            "{field}: `problem` must name one of the {} soliton entries",
                            solitons.len()
                        )))
                    }
                    (false, None) => None,
                    (false, Some(_)) => {
                        return Err(ManifestError::Invalid(format!("{field}: `problem` is not used by this quantity")))
                    }
                };
                let value = match (quantity.is_vector(), &e.value, &e.vector) {
                    (true, None, Some(v)) => ClaimValue::Vector(VectorField::new(rd.vector(&field, v)?)),
                    (false, Some(s), None) => ClaimValue::Scalar(rd.expr(&field, s)?),
                    (true, _, _) => return Err(ManifestError::Invalid(format!("{field}: needs `vector` only"))),
                    (false, _, _) => return Err(ManifestError::Invalid(format!("{field}: needs `value` only"))),
                };
                entries.push(ClaimEntry {
                    quantity,
                    args,
                    problem,
                    value,
                });
            }
            if entries.is_empty() {
                return Err(ManifestError::Invalid(format!("claim {} has no entries", c.id)));
            }
            claims.push(Claim {
                id: c.id.clone(),
                note: c.note.clone(),
                entries,
            });
        }

        Ok(Manifest {
            format_version,
            name: raw.name.clone(),
            frame,
            metric,
            contact,
            base_point,
            suites,
            solitons,
            claims,
        })
    }

    /// Serializes back to `.tsm` text; parsing the result gives an equal manifest.
    pub fn to_toml(&self) -> String {
        let s = |e: &ScalarExpr| e.to_string();
        let vec3 = |v: &[ScalarExpr; DIM]| v.iter().map(s).collect::<Vec<_>>();
        let mat = |m: &Matrix3| m.iter().map(vec3).collect::<Vec<_>>();
        let (mode, frame, structure) = match &self.frame {
            FrameSpec::Chart(f) => ("chart", Some(mat(f)), None),
            FrameSpec::Lie(c) => {
                let mut list = Vec::new();
                for i in 0..DIM {
                    for j in (i + 1)..DIM {
                        for k in 0..DIM {
                            if !c[i][j][k].is_zero() {
                                list.push(RawConstant {
                                    i: i + 1,
                                    j: j + 1,
                                    k: k + 1,
                                    c: c[i][j][k].to_string(),
                                });
                            }
                        }
                    }
                }
                ("lie", None, Some(list))
            }
        };
        let raw = Raw::<String> {
            format_version: Some(self.format_version),
            name: self.name.clone(),
            mode: Some(mode.to_string()),
            coords: None,
            frame,
            structure,
            metric: self.metric.as_ref().map(mat),
            phi: self.contact.as_ref().map(|c| mat(&c.phi)),
            xi: self.contact.as_ref().map(|c| vec3(&c.xi.0)),
            eta: self.contact.as_ref().and_then(|c| c.eta.as_ref().map(vec3)),
            base_point: Some(self.base_point.iter().map(|r| r.to_string()).collect()),
            suites: if self.suites.is_empty() {
                None
            } else {
                Some(self.suites.iter().map(|x| x.to_string()).collect())
            },
            soliton: self
                .solitons
                .iter()
                .map(|sp| RawSoliton {
                    kind: sp.problem.kind.to_string(),
                    v: vec3(&sp.problem.v.0),
                    p: sp.problem.p.as_ref().map(|p| p.to_string()),
                    lambda: Some(sp.problem.lambda.to_string()),
                    expect_soliton: sp.expect_soliton,
                })
                .collect(),
            claim: self
                .claims
                .iter()
                .map(|c| RawClaim {
                    id: c.id.clone(),
                    note: c.note.clone(),
                    entries: c
                        .entries
                        .iter()
                        .map(|e| {
                            let (value, vector) = match &e.value {
                                ClaimValue::Scalar(x) => (Some(s(x)), None),
                                ClaimValue::Vector(v) => (None, Some(vec3(&v.0))),
                            };
                            RawEntry {
                                quantity: e.quantity.as_str().to_string(),
                                args: e.args.iter().map(|i| i + 1).collect(),
                                problem: e.problem.map(|p| p + 1),
                                value,
                                vector,
                            }
                        })
                        .collect(),
                })
                .collect(),
        };
        toml::to_string(&raw).expect("manifest serializes")
    }

    pub fn manifold(&self) -> Result<FrameManifold, GeometryError> {
        match &self.frame {
            FrameSpec::Chart(f) => FrameManifold::chart(f.clone(), self.metric.clone(), self.base_point.clone()),
            FrameSpec::Lie(c) => FrameManifold::lie(c.clone(), self.metric.clone()),
        }
    }

    pub fn contact_structure(&self, m: &FrameManifold) -> Option<ContactStructure> {
        self.contact
            .as_ref()
            .map(|c| ContactStructure::new(m, c.phi.clone(), c.xi.clone(), c.eta.clone()))
    }
}

impl FromStr for Manifest {
    type Err = ManifestError;

    fn from_str(s: &str) -> Result<Self, ManifestError> {
        Manifest::parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const MINIMAL: &str = r#"
format_version = 1
mode = "chart"
frame = [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]
"#;

    #[test]
    fn empty_file_is_missing_mode() {
        let e = Manifest::parse("").unwrap_err();
        assert_eq!(e.to_string(), "missing mode");
    }

    #[test]
    fn minimal_chart_manifest() {
        let m = Manifest::parse(MINIMAL).unwrap();
        assert!(m.contact.is_none());
        assert!(m.manifold().is_ok());
    }

    #[test]
    fn unknown_keys_are_rejected_with_location() {
        let text = format!("{MINIMAL}colour = \"red\"\n");
        match Manifest::parse(&text).unwrap_err() {
            ManifestError::Syntax { line, message, .. } => {
                assert_eq!(line, 5);
                assert!(message.contains("colour"), "{message}");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn expression_errors_carry_line_and_column() {
        let text = "format_version = 1\nmode = \"chart\"\nframe = [[\"1\", \"0\", \"0\"], [\"0\", \"x*\", \"0\"], [\"0\", \"0\", \"1\"]]\n";
        match Manifest::parse(text).unwrap_err() {
            ManifestError::Field { line, column, field, .. } => {
                assert_eq!(line, 3);
                assert_eq!(field, "frame[2][2]");
                // the literal's quote is at column 33; the error is after `x*`
                assert_eq!(column, 33 + 3);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn lie_mode_fills_antisymmetric_constants() {
        let text = r#"
format_version = 1
mode = "lie"
structure = [{ i = 1, j = 2, k = 3, c = "2" }, { i = 2, j = 3, k = 1, c = "2" }, { i = 3, j = 1, k = 2, c = "2" }]
"#;
        let m = Manifest::parse(text).unwrap();
        match &m.frame {
            FrameSpec::Lie(c) => {
                assert_eq!(c[0][1][2], rat(2));
                assert_eq!(c[1][0][2], rat(-2));
            }
            _ => panic!(),
        }
        assert!(m.manifold().is_ok());
        let bad = r#"
format_version = 1
mode = "lie"
structure = [{ i = 1, j = 2, k = 1, c = "1" }, { i = 2, j = 3, k = 2, c = "1" }, { i = 3, j = 1, k = 3, c = "1" }]
"#;
        assert!(matches!(
            Manifest::parse(bad).unwrap().manifold(),
            Err(GeometryError::JacobiViolated(_))
        ));
    }

    #[test]
    fn mode_and_frame_must_agree() {
        let text = MINIMAL.replace("\"chart\"", "\"lie\"");
        assert!(Manifest::parse(&text).is_err());
        assert!(Manifest::parse(&MINIMAL.replace("\"chart\"", "\"polar\"")).is_err());
    }

    #[test]
    fn conformal_problems_need_pressure() {
        let text = format!("{MINIMAL}[[soliton]]\nkind = \"conformal_ricci\"\nv = [\"0\", \"0\", \"0\"]\n");
        assert!(Manifest::parse(&text).is_err());
        let text = format!("{MINIMAL}[[soliton]]\nkind = \"conformal_ricci\"\nv = [\"0\", \"0\", \"0\"]\np = \"1/2\"\n");
        assert!(Manifest::parse(&text).is_ok());
    }

    #[test]
    fn claims_are_validated() {
        let bad_arity = format!("{MINIMAL}[[claim]]\nid = \"a\"\nentries = [{{ quantity = \"R\", args = [1, 2], vector = [\"0\", \"0\", \"0\"] }}]\n");
        assert!(Manifest::parse(&bad_arity).is_err());
        let no_problem = format!("{MINIMAL}[[claim]]\nid = \"a\"\nentries = [{{ quantity = \"lambda\", value = \"4\" }}]\n");
        assert!(Manifest::parse(&no_problem).is_err());
        let ok = format!("{MINIMAL}[[claim]]\nid = \"a\"\nentries = [{{ quantity = \"S\", args = [1, 1], value = \"0\" }}, {{ quantity = \"r\", value = \"-8\" }}]\n");
        let m = Manifest::parse(&ok).unwrap();
        assert_eq!(m.claims[0].entries.len(), 2);
    }

    #[test]
    fn round_trip() {
        let text = format!(
            "{MINIMAL}phi = [[\"0\",\"1\",\"0\"],[\"-1\",\"0\",\"0\"],[\"0\",\"0\",\"0\"]]\nxi = [\"0\",\"0\",\"1\"]\nsuites = [\"identities\"]\n\
             [[soliton]]\nkind = \"ricci\"\nv = [\"x\", \"y\", \"z\"]\nlambda = \"-1\"\nexpect_soliton = true\n\
             [[claim]]\nid = \"a\"\nentries = [{{ quantity = \"lambda\", problem = 1, value = \"-1\" }}]\n"
        );
        let m = Manifest::parse(&text).unwrap();
        let again = Manifest::parse(&m.to_toml()).unwrap();
        assert_eq!(m, again);
    }
}
