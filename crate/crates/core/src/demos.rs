//! Classical triangle theorems checked with mass-point arithmetic.
//!
//! Every check here is an exact equality of field elements; no tolerance is
//! involved for the rational and prime backends.

use rand::Rng;
use serde::Serialize;
use serde_json::{Map, Value};

use crate::affine::Point;
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{check_dim, Matrix};
use crate::mass::{reduce, MassElement, MassKind};
use crate::quadratic::BilinearForm;
use crate::weighted::WeightedSet;

/// A non-degenerate triangle in the plane.
#[derive(Debug, Clone, PartialEq)]
pub struct Triangle {
    vertices: [Point; 3],
}

impl Triangle {
    pub fn new(a: Point, b: Point, c: Point) -> Result<Self> {
        for p in [&a, &b, &c] {
            check_dim(2, p.dim())?;
        }
        if collinear(&a, &b, &c)? {
            return Err(Error::Degenerate(
                "triangle vertices are collinear".to_string(),
            ));
        }
        Ok(Triangle {
            vertices: [a, b, c],
        })
    }

    pub fn from_i64(field: Field, coords: [[i64; 2]; 3]) -> Result<Self> {
        let [a, b, c] = coords.map(|xy| Point::from_i64(field, &xy));
        Triangle::new(a, b, c)
    }

    pub fn field(&self) -> Field {
        self.vertices[0].field()
    }

    pub fn vertices(&self) -> &[Point; 3] {
        &self.vertices
    }

    /// Vertex `i` together with the two others, in cyclic order.
    fn around(&self, i: usize) -> (&Point, &Point, &Point) {
        (
            &self.vertices[i],
            &self.vertices[(i + 1) % 3],
            &self.vertices[(i + 2) % 3],
        )
    }

    fn unit_masses(&self, points: &[&Point]) -> Result<WeightedSet> {
        let f = self.field();
        WeightedSet::from_entries(f, 2, points.iter().map(|p| ((*p).clone(), f.one())))
    }

    /// Center of unit masses at the vertices.
    pub fn centroid(&self) -> Result<Point> {
        let [a, b, c] = &self.vertices;
        weighty_point(reduce(&self.unit_masses(&[a, b, c])?)?)
    }

    /// Midpoint of the side opposite vertex `i`.
    pub fn opposite_midpoint(&self, i: usize) -> Result<Point> {
        let (_, p, q) = self.around(i);
        weighty_point(reduce(&self.unit_masses(&[p, q])?)?)
    }
}

/// A random triangle with integer vertices in `[-100, 100]²`.
pub fn random_triangle<R: Rng + ?Sized>(field: Field, rng: &mut R) -> Triangle {
    loop {
        let mut coord = || [rng.gen_range(-100..=100), rng.gen_range(-100..=100)];
        let coords = [coord(), coord(), coord()];
        if let Ok(t) = Triangle::from_i64(field, coords) {
            return t;
        }
    }
}

pub const VERTEX_NAMES: [&str; 3] = ["A", "B", "C"];

fn weighty_point(e: MassElement) -> Result<Point> {
    match e.kind() {
        MassKind::Weighty { point, .. } => Ok(point.clone()),
        MassKind::Dipole(_) => Err(Error::NoCenter),
    }
}

/// Whether three points lie on one line: every 2×2 minor of
/// `(q - p, r - p)` vanishes.
pub fn collinear(p: &Point, q: &Point, r: &Point) -> Result<bool> {
    let u = p.vector_to(q)?;
    let v = p.vector_to(r)?;
    let (u, v) = (u.coords(), v.coords());
    for i in 0..u.len() {
        for j in i + 1..u.len() {
            if u[i].mul(&v[j])? != u[j].mul(&v[i])? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Whether `via` divides the segment `from → to` in the ratio `p : q`,
/// i.e. `q·(via - from) = p·(to - via)`.
pub fn ratio_holds(
    from: &Point,
    via: &Point,
    to: &Point,
    p: &FieldElement,
    q: &FieldElement,
) -> Result<bool> {
    Ok(from.vector_to(via)?.scale(q)? == via.vector_to(to)?.scale(p)?)
}

/// The point `O` with `Q_B(O - A) = Q_B(O - B) = Q_B(O - C)`, from the linear
/// system `2B(O, P - A) = Q_B(P) - Q_B(A)` for `P = B, C`.
pub fn circumcenter(t: &Triangle, form: &BilinearForm) -> Result<Point> {
    check_dim(2, form.dim())?;
    let field = t.field();
    let two = field.from_i64(2);
    let [a, b, c] = &t.vertices;
    let qa = form.quadratic(a.coords())?;
    let mut rows = Vec::with_capacity(2);
    let mut rhs = Vec::with_capacity(2);
    for p in [b, c] {
        let d = a.vector_to(p)?;
        rows.push(
            form.lower(d.coords())?
                .iter()
                .map(|x| x.mul(&two))
                .collect::<Result<Vec<_>>>()?,
        );
        rhs.push(form.quadratic(p.coords())?.sub(&qa)?);
    }
    let m = Matrix::from_rows(field, 2, rows)?;
    match m.solve(&rhs) {
        Ok(o) => Point::new(field, o),
        Err(Error::SingularMatrix) => Err(Error::Degenerate(
            "perpendicular bisectors do not meet in a single point".to_string(),
        )),
        Err(e) => Err(e),
    }
}

/// Intersection of the altitudes from `A` and `B`, by a direct linear solve.
pub fn altitude_intersection(t: &Triangle, form: &BilinearForm) -> Result<Point> {
    let field = t.field();
    let [a, b, c] = &t.vertices;
    // B(X - A, C - B) = 0 and B(X - B, C - A) = 0
    let bc = b.vector_to(c)?;
    let ac = a.vector_to(c)?;
    let rows = vec![form.lower(bc.coords())?, form.lower(ac.coords())?];
    let rhs = vec![
        form.apply(a.coords(), bc.coords())?,
        form.apply(b.coords(), ac.coords())?,
    ];
    let m = Matrix::from_rows(field, 2, rows)?;
    match m.solve(&rhs) {
        Ok(x) => Point::new(field, x),
        Err(Error::SingularMatrix) => Err(Error::Degenerate(
            "altitudes do not meet in a single point".to_string(),
        )),
        Err(e) => Err(e),
    }
}

/// Orthocenter as the center of `{(A,1), (B,1), (C,1), (O,-2)}`.
pub fn orthocenter(t: &Triangle, form: &BilinearForm) -> Result<Point> {
    weighty_point(reduce(&orthocenter_set(t, &circumcenter(t, form)?)?)?)
}

fn orthocenter_set(t: &Triangle, o: &Point) -> Result<WeightedSet> {
    let f = t.field();
    let mut s = WeightedSet::new(f, 2);
    for v in &t.vertices {
        s.insert(v.clone(), f.one())?;
    }
    s.insert(o.clone(), f.from_i64(-2))?;
    Ok(s)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
}

/// Result of one demo or query: exact values plus named verdicts.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub kind: String,
    pub values: Map<String, Value>,
    pub checks: Vec<Check>,
}

impl Report {
    pub fn new(kind: &str) -> Self {
        Report {
            kind: kind.to_string(),
            values: Map::new(),
            checks: Vec::new(),
        }
    }

    pub fn value<T: Serialize>(&mut self, name: &str, v: &T) {
        let v = serde_json::to_value(v).expect("values serialize");
        self.values.insert(name.to_string(), v);
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool) {
        self.checks.push(Check {
            name: name.into(),
            pass,
        });
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> Vec<&str> {
        self.checks
            .iter()
            .filter(|c| !c.pass)
            .map(|c| c.name.as_str())
            .collect()
    }
}

fn triangle_values(report: &mut Report, t: &Triangle) {
    for (name, v) in VERTEX_NAMES.iter().zip(&t.vertices) {
        report.value(name, v);
    }
}

/// Three medians meet at the centroid, which divides each in ratio 2:1, and
/// every two-stage grouping of the unit masses gives the same result.
pub fn medians_demo(t: &Triangle) -> Result<Report> {
    let f = t.field();
    let mut report = Report::new("medians_demo");
    triangle_values(&mut report, t);
    let m = t.centroid()?;
    report.value("centroid", &m);

    let two = f.from_i64(2);
    for (i, name) in VERTEX_NAMES.iter().enumerate() {
        let (v, _, _) = t.around(i);
        let mid = t.opposite_midpoint(i)?;
        let lhs = v.vector_to(&m)?;
        let rhs = m.vector_to(&mid)?.scale(&two)?;
        report.check(format!("median_{name}_ratio_2_1"), lhs == rhs);
    }

    // combine the pair opposite vertex i first, then add vertex i
    let unit = |p: &Point| MassElement::weighty(p.clone(), f.one());
    let mut grouped = Vec::with_capacity(3);
    for i in 0..3 {
        let (v, p, q) = t.around(i);
        let pair = unit(p)?.add(&unit(q)?)?;
        grouped.push(pair.add(&unit(v)?)?);
    }
    let expected = MassElement::weighty(m, f.from_i64(3))?;
    report.check(
        "grouping_orders_agree",
        grouped.iter().all(|g| *g == expected),
    );
    Ok(report)
}

/// The altitudes meet at the center `H` of `{(A,1), (B,1), (C,1), (O,-2)}`
/// and `VH = 2·OV'` for each vertex `V` with opposite midpoint `V'`.
pub fn orthocenter_demo(t: &Triangle, form: &BilinearForm) -> Result<Report> {
    let f = t.field();
    let mut report = Report::new("orthocenter_demo");
    triangle_values(&mut report, t);
    let o = circumcenter(t, form)?;
    let set = orthocenter_set(t, &o)?;
    let h = weighty_point(reduce(&set)?)?;
    report.value("circumcenter", &o);
    report.value("orthocenter", &h);

    let two = f.from_i64(2);
    for (i, name) in VERTEX_NAMES.iter().enumerate() {
        let (v, p, q) = t.around(i);
        // the weightless part {P, Q, O} is a dipole; adding V moves it
        let mut rest = WeightedSet::new(f, 2);
        rest.insert(p.clone(), f.one())?;
        rest.insert(q.clone(), f.one())?;
        rest.insert(o.clone(), f.from_i64(-2))?;
        let dipole = reduce(&rest)?;
        let via_split = MassElement::weighty(v.clone(), f.one())?.add(&dipole)?;
        let mid = t.opposite_midpoint(i)?;
        let expected = v.shift(&o.vector_to(&mid)?.scale(&two)?)?;
        report.check(
            format!("vertex_{name}_displacement"),
            via_split.point() == Some(&h) && expected == h,
        );
        let edge = p.vector_to(q)?;
        let perp = form.vectors(&v.vector_to(&h)?, &edge)?.is_zero();
        report.check(format!("altitude_{name}_perpendicular"), perp);
    }

    let oracle = altitude_intersection(t, form)?;
    report.check("altitude_intersection_oracle", oracle == h);
    Ok(report)
}

/// `H`, `M`, `O` are collinear with `HM = 2·MO`.
pub fn euler_demo(t: &Triangle, form: &BilinearForm) -> Result<Report> {
    let f = t.field();
    let mut report = Report::new("euler_demo");
    triangle_values(&mut report, t);
    let o = circumcenter(t, form)?;
    let m = t.centroid()?;
    let h = weighty_point(reduce(&orthocenter_set(t, &o)?)?)?;
    report.value("orthocenter", &h);
    report.value("centroid", &m);
    report.value("circumcenter", &o);

    report.check("collinear", collinear(&h, &m, &o)?);
    let hm = h.vector_to(&m)?;
    let mo = m.vector_to(&o)?;
    report.check("hm_equals_2_mo", hm == mo.scale(&f.from_i64(2))?);
    // 3·MH = -2·HO
    let lhs = m.vector_to(&h)?.scale(&f.from_i64(3))?;
    let rhs = h.vector_to(&o)?.scale(&f.from_i64(-2))?;
    report.check("three_mh_equals_minus_two_ho", lhs == rhs);
    // H from the pair {(M,3), (O,-2)}
    let pair =
        MassElement::weighty(m, f.from_i64(3))?.add(&MassElement::weighty(o, f.from_i64(-2))?)?;
    report.check("pair_center_is_h", pair.point() == Some(&h));
    let oracle = altitude_intersection(t, form)?;
    report.check("altitude_intersection_oracle", oracle == h);
    Ok(report)
}

/// Report of a plain collinearity query.
pub fn collinear_report(points: [&Point; 3]) -> Result<Report> {
    let mut report = Report::new("collinear_check");
    report.value("points", &points);
    report.check("collinear", collinear(points[0], points[1], points[2])?);
    Ok(report)
}

pub fn ratio_report(
    [from, via, to]: [&Point; 3],
    p: &FieldElement,
    q: &FieldElement,
) -> Result<Report> {
    let mut report = Report::new("ratio_check");
    report.value("points", &[from, via, to]);
    report.value("ratio", &[p, q]);
    report.check("ratio", ratio_holds(from, via, to, p, q)?);
    Ok(report)
}
