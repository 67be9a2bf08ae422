//! JSON query documents.
//!
//! ```json
//! {
//!   "field": "rational",
//!   "dimension": 2,
//!   "form": [["1", "0"], ["0", "1"]],
//!   "points": {"A": ["3", "4"], "B": ["5", "0"], "C": ["-5", "0"]},
//!   "sets": {"S": [{"point": "A", "mass": "1"}, {"point": ["0", "0"], "mass": "-2"}]},
//!   "queries": [
//!     {"op": "reduce", "set": "S"},
//!     {"op": "euler_demo", "triangle": ["A", "B", "C"]}
//!   ]
//! }
//! ```
//!
//! Field elements are strings in the notation of [`Field::parse`]. Points
//! may be given by name or inline. Every key except `queries` is optional;
//! `field` defaults to `rational`, `form` to the dot product.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::affine::{AffineMap, FreeVector, Point};
use crate::demos::{self, Report, Triangle};
use crate::embed::pushforward;
use crate::error::Error;
use crate::field::Field;
use crate::linalg::Matrix;
use crate::mass::{reduce, MassElement};
use crate::quadratic::{canonical_form, BilinearForm};
use crate::svg::{triangle_figure, Figure, TriangleFigure};
use crate::weighted::WeightedSet;

/// Exit code of a run whose verdicts all pass.
pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERDICT_FAILURE: i32 = 1;
pub const EXIT_PARSE: i32 = 2;
pub const EXIT_ALGEBRA: i32 = 3;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("schema error: {0}")]
    Schema(String),

    #[error("query {index}: {source}")]
    Query {
        index: usize,
        #[source]
        source: Error,
    },

    #[error(transparent)]
    Algebra(#[from] Error),
}

impl DocumentError {
    pub fn exit_code(&self) -> i32 {
        let algebra = match self {
            DocumentError::Parse { .. } | DocumentError::Schema(_) => return EXIT_PARSE,
            DocumentError::Query { source, .. } => source,
            DocumentError::Algebra(e) => e,
        };
        match algebra {
            Error::ParseElement { .. } => EXIT_PARSE,
            _ => EXIT_ALGEBRA,
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawDocument {
    #[serde(default)]
    field: Option<String>,
    #[serde(default)]
    dimension: Option<usize>,
    #[serde(default)]
    form: Option<Vec<Vec<String>>>,
    #[serde(default)]
    points: BTreeMap<String, Vec<String>>,
    #[serde(default)]
    sets: BTreeMap<String, Vec<RawEntry>>,
    #[serde(default)]
    queries: Vec<RawQuery>,
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum PointRef {
    Name(String),
    Coords(Vec<String>),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    point: PointRef,
    mass: String,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case", deny_unknown_fields)]
enum RawElement {
    Weighty {
        point: PointRef,
        mass: String,
    },
    Dipole {
        #[serde(default)]
        vector: Option<Vec<String>>,
        #[serde(default)]
        from: Option<PointRef>,
        #[serde(default)]
        to: Option<PointRef>,
    },
    /// The reduction of a declared set.
    Set {
        name: String,
    },
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawMap {
    linear: Vec<Vec<String>>,
    translation: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case", deny_unknown_fields)]
enum RawQuery {
    Reduce {
        set: String,
    },
    Add {
        left: RawElement,
        right: RawElement,
    },
    Scale {
        factor: String,
        element: RawElement,
    },
    Pushforward {
        map: RawMap,
        element: RawElement,
    },
    CanonicalForm {
        set: String,
    },
    MediansDemo {
        triangle: [PointRef; 3],
    },
    OrthocenterDemo {
        triangle: [PointRef; 3],
    },
    EulerDemo {
        triangle: [PointRef; 3],
    },
    CollinearCheck {
        points: [PointRef; 3],
    },
    RatioCheck {
        points: [PointRef; 3],
        ratio: [String; 2],
    },
}

impl RawQuery {
    fn op(&self) -> &'static str {
        match self {
            RawQuery::Reduce { .. } => "reduce",
            RawQuery::Add { .. } => "add",
            RawQuery::Scale { .. } => "scale",
            RawQuery::Pushforward { .. } => "pushforward",
            RawQuery::CanonicalForm { .. } => "canonical_form",
            RawQuery::MediansDemo { .. } => "medians_demo",
            RawQuery::OrthocenterDemo { .. } => "orthocenter_demo",
            RawQuery::EulerDemo { .. } => "euler_demo",
            RawQuery::CollinearCheck { .. } => "collinear_check",
            RawQuery::RatioCheck { .. } => "ratio_check",
        }
    }
}

/// Outcome of one query.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct QueryReport {
    pub index: usize,
    pub op: String,
    pub result: Value,
    /// `None` for pure computations, `Some(pass)` for checks and demos.
    pub verdict: Option<bool>,
}

/// Reports of a whole document, in query order.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunOutput {
    pub field: String,
    pub dimension: usize,
    pub reports: Vec<QueryReport>,
    pub passed: bool,
    #[serde(skip)]
    figure: Option<Figure>,
}

impl RunOutput {
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            EXIT_PASS
        } else {
            EXIT_VERDICT_FAILURE
        }
    }

    /// Figure of the first triangle demo, or of all declared points when
    /// the document has no demo. `None` outside the plane.
    pub fn figure(&self) -> Option<&Figure> {
        self.figure.as_ref()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }
}

impl PartialEq for Figure {
    fn eq(&self, other: &Self) -> bool {
        self.render() == other.render()
    }
}

struct Context {
    field: Field,
    dim: usize,
    form: Option<BilinearForm>,
    points: BTreeMap<String, Point>,
    sets: BTreeMap<String, WeightedSet>,
}

fn schema(msg: impl Into<String>) -> DocumentError {
    DocumentError::Schema(msg.into())
}

impl Context {
    fn coords(&self, raw: &[String]) -> Result<Vec<crate::field::FieldElement>, Error> {
        raw.iter().map(|s| self.field.parse(s)).collect()
    }

    fn point(&self, r: &PointRef) -> Result<Point, DocumentError> {
        match r {
            PointRef::Name(name) => self
                .points
                .get(name)
                .cloned()
                .ok_or_else(|| schema(format!("unknown point {name:?}"))),
            PointRef::Coords(raw) => {
                let p = Point::new(self.field, self.coords(raw)?)?;
                if p.dim() != self.dim {
                    return Err(Error::DimensionMismatch {
                        expected: self.dim,
                        found: p.dim(),
                    }
                    .into());
                }
                Ok(p)
            }
        }
    }

    fn set(&self, name: &str) -> Result<&WeightedSet, DocumentError> {
        self.sets
            .get(name)
            .ok_or_else(|| schema(format!("unknown set {name:?}")))
    }

    fn form(&self) -> Result<BilinearForm, Error> {
        match &self.form {
            Some(f) => Ok(f.clone()),
            None => BilinearForm::standard(self.field, self.dim),
        }
    }

    fn element(&self, raw: &RawElement) -> Result<MassElement, DocumentError> {
        match raw {
            RawElement::Weighty { point, mass } => Ok(MassElement::weighty(
                self.point(point)?,
                self.field.parse(mass)?,
            )?),
            RawElement::Dipole { vector, from, to } => match (vector, from, to) {
                (Some(v), None, None) => {
                    let v = FreeVector::new(self.field, self.coords(v)?)?;
                    if v.dim() != self.dim {
                        return Err(Error::DimensionMismatch {
                            expected: self.dim,
                            found: v.dim(),
                        }
                        .into());
                    }
                    Ok(MassElement::dipole(v))
                }
                (None, Some(a), Some(b)) => Ok(MassElement::dipole_between(
                    &self.point(a)?,
                    &self.point(b)?,
                )?),
                _ => Err(schema(
                    "a dipole needs either `vector` or both `from` and `to`",
                )),
            },
            RawElement::Set { name } => Ok(reduce(self.set(name)?)?),
        }
    }

    fn triangle(&self, refs: &[PointRef; 3]) -> Result<Triangle, DocumentError> {
        if self.dim != 2 {
            return Err(schema("triangle demos need dimension 2"));
        }
        let [a, b, c] = refs;
        Ok(Triangle::new(
            self.point(a)?,
            self.point(b)?,
            self.point(c)?,
        )?)
    }

    fn affine_map(&self, raw: &RawMap) -> Result<AffineMap, DocumentError> {
        let rows = raw
            .linear
            .iter()
            .map(|r| self.coords(r))
            .collect::<Result<Vec<_>, _>>()?;
        let linear = Matrix::from_rows(self.field, self.dim, rows)?;
        let t = FreeVector::new(self.field, self.coords(&raw.translation)?)?;
        Ok(AffineMap::new(linear, t)?)
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("values serialize")
}

fn report_value(r: &Report) -> (Value, Option<bool>) {
    (to_value(r), Some(r.passed()))
}

fn run_query(
    ctx: &Context,
    q: &RawQuery,
    figure: &mut Option<Figure>,
) -> Result<(Value, Option<bool>), DocumentError> {
    Ok(match q {
        RawQuery::Reduce { set } => (to_value(&reduce(ctx.set(set)?)?), None),
        RawQuery::Add { left, right } => {
            let (l, r) = (ctx.element(left)?, ctx.element(right)?);
            (to_value(&l.add(&r)?), None)
        }
        RawQuery::Scale { factor, element } => {
            let mu = ctx.field.parse(factor)?;
            (to_value(&ctx.element(element)?.scale(&mu)?), None)
        }
        RawQuery::Pushforward { map, element } => {
            let f = ctx.affine_map(map)?;
            (to_value(&pushforward(&f, &ctx.element(element)?)?), None)
        }
        RawQuery::CanonicalForm { set } => (
            to_value(&canonical_form(ctx.set(set)?, &ctx.form()?)?),
            None,
        ),
        RawQuery::MediansDemo { triangle } => {
            let t = ctx.triangle(triangle)?;
            let report = demos::medians_demo(&t)?;
            if figure.is_none() {
                *figure = Some(triangle_figure(&t, &ctx.form()?, TriangleFigure::Medians)?);
            }
            report_value(&report)
        }
        RawQuery::OrthocenterDemo { triangle } => {
            let t = ctx.triangle(triangle)?;
            let form = ctx.form()?;
            let report = demos::orthocenter_demo(&t, &form)?;
            if figure.is_none() {
                *figure = Some(triangle_figure(&t, &form, TriangleFigure::Orthocenter)?);
            }
            report_value(&report)
        }
        RawQuery::EulerDemo { triangle } => {
            let t = ctx.triangle(triangle)?;
            let form = ctx.form()?;
            let report = demos::euler_demo(&t, &form)?;
            if figure.is_none() {
                *figure = Some(triangle_figure(&t, &form, TriangleFigure::Euler)?);
            }
            report_value(&report)
        }
        RawQuery::CollinearCheck { points } => {
            let [a, b, c] = points;
            let (a, b, c) = (ctx.point(a)?, ctx.point(b)?, ctx.point(c)?);
            report_value(&demos::collinear_report([&a, &b, &c])?)
        }
        RawQuery::RatioCheck { points, ratio } => {
            let [a, b, c] = points;
            let (a, b, c) = (ctx.point(a)?, ctx.point(b)?, ctx.point(c)?);
            let p = ctx.field.parse(&ratio[0])?;
            let q = ctx.field.parse(&ratio[1])?;
            report_value(&demos::ratio_report([&a, &b, &c], &p, &q)?)
        }
    })
}

fn build_context(
    raw: &RawDocument,
    field_override: Option<Field>,
) -> Result<Context, DocumentError> {
    let field = match (field_override, &raw.field) {
        (Some(f), _) => f,
        (None, Some(spec)) => spec
            .parse::<Field>()
            .map_err(|_| schema(format!("unknown field {spec:?}")))?,
        (None, None) => Field::Rational,
    };
    let dim = match raw.dimension {
        Some(d) => d,
        None => raw
            .points
            .values()
            .next()
            .map(Vec::len)
            .ok_or_else(|| schema("`dimension` is required when no points are declared"))
            .or_else(|e| {
                if raw.queries.is_empty() {
                    Ok(0)
                } else {
                    Err(e)
                }
            })?,
    };
    let mut ctx = Context {
        field,
        dim,
        form: None,
        points: BTreeMap::new(),
        sets: BTreeMap::new(),
    };
    if let Some(rows) = &raw.form {
        let rows = rows
            .iter()
            .map(|r| ctx.coords(r))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(field, dim, rows)?;
        if m.rows() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: m.rows(),
            }
            .into());
        }
        ctx.form = Some(BilinearForm::new(m)?);
    }
    for (name, raw_coords) in &raw.points {
        let p = ctx.point(&PointRef::Coords(raw_coords.clone()))?;
        ctx.points.insert(name.clone(), p);
    }
    for (name, entries) in &raw.sets {
        let mut s = WeightedSet::new(field, dim);
        for e in entries {
            s.insert(ctx.point(&e.point)?, field.parse(&e.mass)?)?;
        }
        ctx.sets.insert(name.clone(), s);
    }
    Ok(ctx)
}

fn points_figure(ctx: &Context) -> Option<Figure> {
    if ctx.dim != 2 || ctx.points.is_empty() {
        return None;
    }
    let mut fig = Figure::new();
    for (name, p) in &ctx.points {
        fig.point(name, p, "black");
    }
    Some(fig)
}

/// Parses and executes a document. `field_override` replaces the document's
/// own `field` entry.
pub fn run_document(text: &str, field_override: Option<Field>) -> Result<RunOutput, DocumentError> {
    let raw: RawDocument = if text.trim().is_empty() {
        RawDocument {
            field: None,
            dimension: None,
            form: None,
            points: BTreeMap::new(),
            sets: BTreeMap::new(),
            queries: Vec::new(),
        }
    } else {
        serde_json::from_str(text).map_err(|e| DocumentError::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?
    };
    let ctx = build_context(&raw, field_override)?;
    let mut figure = None;
    let mut reports = Vec::with_capacity(raw.queries.len());
    for (index, q) in raw.queries.iter().enumerate() {
        let (result, verdict) = run_query(&ctx, q, &mut figure).map_err(|e| match e {
            DocumentError::Algebra(source) => DocumentError::Query { index, source },
            other => other,
        })?;
        reports.push(QueryReport {
            index,
            op: q.op().to_string(),
            result,
            verdict,
        });
    }
    let passed = reports.iter().all(|r| r.verdict != Some(false));
    Ok(RunOutput {
        field: ctx.field.to_string(),
        dimension: ctx.dim,
        figure: figure.or_else(|| points_figure(&ctx)),
        reports,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    const EULER: &str = r#"{
        "field": "rational",
        "dimension": 2,
        "points": {"A": ["3", "4"], "B": ["5", "0"], "C": ["-5", "0"]},
        "queries": [{"op": "euler_demo", "triangle": ["A", "B", "C"]}]
    }"#;

    #[test]
    fn euler_document() {
        let out = run_document(EULER, None).unwrap();
        assert!(out.passed);
        assert_eq!(out.exit_code(), EXIT_PASS);
        let values = &out.reports[0].result["values"];
        assert_eq!(values["orthocenter"], json!(["3", "4"]));
        assert_eq!(values["centroid"], json!(["1", "4/3"]));
        assert_eq!(values["circumcenter"], json!(["0", "0"]));
        assert!(out.figure().is_some());
    }

    #[test]
    fn empty_documents() {
        for text in ["", "{}", r#"{"queries": []}"#] {
            let out = run_document(text, None).unwrap();
            assert!(out.reports.is_empty());
            assert_eq!(out.exit_code(), EXIT_PASS);
        }
    }

    #[test]
    fn malformed_mass_is_a_parse_error() {
        let doc = r#"{"dimension": 1, "sets": {"S": [{"point": ["0"], "mass": "one"}]}}"#;
        let err = run_document(doc, None).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PARSE);
    }

    #[test]
    fn syntax_errors_carry_positions() {
        let err = run_document("{\n  \"queries\": [,]\n}", None).unwrap_err();
        match err {
            DocumentError::Parse { line, column, .. } => {
                assert_eq!(line, 2);
                assert!(column > 0);
            }
            other => panic!("unexpected {other:?}"),
        }
        let err = run_document(r#"{"queries": [{"op": "explode"}]}"#, None).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_PARSE);
    }

    #[test]
    fn unknown_names_are_schema_errors() {
        let doc = r#"{"dimension": 2, "queries": [{"op": "reduce", "set": "nope"}]}"#;
        let err = run_document(doc, None).unwrap_err();
        assert!(matches!(err, DocumentError::Schema(_)));
        assert_eq!(err.exit_code(), EXIT_PARSE);
    }

    #[test]
    fn dimension_errors() {
        let doc = r#"{"dimension": 2, "points": {"A": ["1", "2", "3"]}}"#;
        let err = run_document(doc, None).unwrap_err();
        assert_eq!(err.exit_code(), EXIT_ALGEBRA);
    }

    #[test]
    fn algebra_queries() {
        let doc = r#"{
            "dimension": 2,
            "points": {"A": ["0", "0"], "B": ["6", "0"]},
            "sets": {"S": [{"point": "A", "mass": "1"}, {"point": "B", "mass": "2"}]},
            "queries": [
                {"op": "reduce", "set": "S"},
                {"op": "add",
                 "left": {"type": "weighty", "point": ["1", "1"], "mass": "2"},
                 "right": {"type": "dipole", "vector": ["4", "0"]}},
                {"op": "scale", "factor": "0", "element": {"type": "set", "name": "S"}},
                {"op": "pushforward",
                 "map": {"linear": [["2", "0"], ["0", "2"]], "translation": ["0", "0"]},
                 "element": {"type": "weighty", "point": ["1", "1"], "mass": "3"}},
                {"op": "canonical_form", "set": "S"},
                {"op": "add",
                 "left": {"type": "dipole", "from": "A", "to": "B"},
                 "right": {"type": "dipole", "vector": ["0", "1"]}}
            ]
        }"#;
        let out = run_document(doc, None).unwrap();
        let r: Vec<&Value> = out.reports.iter().map(|r| &r.result).collect();
        assert_eq!(
            *r[0],
            json!({"type": "weighty", "point": ["4", "0"], "mass": "3"})
        );
        assert_eq!(
            *r[1],
            json!({"type": "weighty", "point": ["3", "1"], "mass": "2"})
        );
        assert_eq!(*r[2], json!({"type": "dipole", "vector": ["0", "0"]}));
        assert_eq!(
            *r[3],
            json!({"type": "weighty", "point": ["2", "2"], "mass": "3"})
        );
        assert_eq!(r[4]["kind"], json!("centered"));
        assert_eq!(*r[5], json!({"type": "dipole", "vector": ["6", "1"]}));
        assert!(out.reports.iter().all(|r| r.verdict.is_none()));
    }

    #[test]
    fn failing_verdicts() {
        let doc = r#"{
            "dimension": 2,
            "points": {"P": ["0", "0"], "Q": ["1", "0"], "R": ["0", "1"]},
            "queries": [
                {"op": "collinear_check", "points": ["P", "Q", "R"]},
                {"op": "ratio_check", "points": ["P", ["2", "0"], ["3", "0"]], "ratio": ["2", "1"]}
            ]
        }"#;
        let out = run_document(doc, None).unwrap();
        assert_eq!(out.reports[0].verdict, Some(false));
        assert_eq!(out.reports[1].verdict, Some(true));
        assert_eq!(out.exit_code(), EXIT_VERDICT_FAILURE);
    }

    #[test]
    fn field_override() {
        let doc = r#"{"field": "rational", "dimension": 1,
            "sets": {"S": [{"point": ["0"], "mass": "1"}, {"point": ["1"], "mass": "1"}]},
            "queries": [{"op": "reduce", "set": "S"}]}"#;
        let out = run_document(doc, Some(Field::prime(2).unwrap())).unwrap();
        assert_eq!(out.field, "fp:2");
        assert_eq!(
            out.reports[0].result,
            json!({"type": "dipole", "vector": ["1"]})
        );
    }

    #[test]
    fn deterministic_output() {
        let a = run_document(EULER, None).unwrap().to_json();
        let b = run_document(EULER, None).unwrap().to_json();
        assert_eq!(a, b);
    }
}
