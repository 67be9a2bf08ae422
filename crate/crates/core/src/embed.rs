//! `k^n` as the hyperplane `{x_{n+1} = 1}` of `k^{n+1}`.
//!
//! The ambient space is identified with the dual of the degree-≤1
//! polynomials on `k^n` through the basis dual to `(x_1, …, x_n, 1)`. In these
//! coordinates the evaluation embedding sends `p` to `(p, 1)`, a weighty point
//! `(O, λ)` lifts to `(λO, λ)` and a dipole `v` to `(v, 0)`.

use serde::{Serialize, Serializer};

use crate::affine::{AffineMap, FreeVector, Point};
use crate::error::{Error, Result};
use crate::field::{Field, FieldElement};
use crate::linalg::{check_dim, check_field, dot, scale_all, zip_with, Matrix};
use crate::mass::{MassElement, MassKind};
use crate::weighted::WeightedSet;

/// A polynomial of degree at most one, `f(x) = c·x + c₀`.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly1 {
    linear: Vec<FieldElement>,
    constant: FieldElement,
}

impl Poly1 {
    pub fn new(linear: Vec<FieldElement>, constant: FieldElement) -> Result<Self> {
        let field = constant.field();
        for c in &linear {
            check_field(field, c)?;
        }
        Ok(Poly1 { linear, constant })
    }

    pub fn from_i64(field: Field, linear: &[i64], constant: i64) -> Self {
        Poly1 {
            linear: linear.iter().map(|&c| field.from_i64(c)).collect(),
            constant: field.from_i64(constant),
        }
    }

    /// The constant polynomial `c` on `k^n`.
    pub fn constant(n: usize, c: FieldElement) -> Self {
        Poly1 {
            linear: vec![c.field().zero(); n],
            constant: c,
        }
    }

    pub fn field(&self) -> Field {
        self.constant.field()
    }

    pub fn dim(&self) -> usize {
        self.linear.len()
    }

    pub fn linear_coeffs(&self) -> &[FieldElement] {
        &self.linear
    }

    pub fn constant_term(&self) -> &FieldElement {
        &self.constant
    }

    pub fn evaluate(&self, p: &Point) -> Result<FieldElement> {
        dot(self.field(), &self.linear, p.coords())?.add(&self.constant)
    }

    /// The linear part applied to a free vector.
    pub fn evaluate_linear(&self, v: &FreeVector) -> Result<FieldElement> {
        dot(self.field(), &self.linear, v.coords())
    }
}

/// A vector of the ambient space `k^{n+1}`; the last coordinate is the
/// value of the characteristic functional.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientVector {
    field: Field,
    coords: Vec<FieldElement>,
}

impl AmbientVector {
    pub fn new(field: Field, coords: Vec<FieldElement>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        }
        for c in &coords {
            check_field(field, c)?;
        }
        Ok(AmbientVector { field, coords })
    }

    pub fn from_i64(field: Field, coords: &[i64]) -> Result<Self> {
        AmbientVector::new(field, coords.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: Field, n: usize) -> Self {
        AmbientVector {
            field,
            coords: vec![field.zero(); n + 1],
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    /// Dimension `n` of the hyperplane; the vector itself has `n + 1` entries.
    pub fn base_dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn coords(&self) -> &[FieldElement] {
        &self.coords
    }

    /// The characteristic functional: the last coordinate.
    pub fn characteristic_value(&self) -> &FieldElement {
        &self.coords[self.base_dim()]
    }

    pub fn spatial(&self) -> &[FieldElement] {
        &self.coords[..self.base_dim()]
    }

    pub fn on_hyperplane(&self) -> bool {
        self.characteristic_value().is_one()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(FieldElement::is_zero)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &AmbientVector) -> Result<AmbientVector> {
        AmbientVector::new(
            self.field,
            zip_with(&self.coords, &other.coords, |a, b| a.add(b))?,
        )
    }

    pub fn scale(&self, s: &FieldElement) -> Result<AmbientVector> {
        check_field(self.field, s)?;
        AmbientVector::new(self.field, scale_all(s, &self.coords)?)
    }

    pub fn transform(&self, m: &Matrix) -> Result<AmbientVector> {
        AmbientVector::new(self.field, m.apply(&self.coords)?)
    }
}

impl Serialize for AmbientVector {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(&self.coords)
    }
}

/// A linear functional on the ambient space.
#[derive(Debug, Clone, PartialEq)]
pub struct AmbientCovector {
    field: Field,
    coeffs: Vec<FieldElement>,
}

impl AmbientCovector {
    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn pair(&self, v: &AmbientVector) -> Result<FieldElement> {
        dot(self.field, &self.coeffs, &v.coords)
    }
}

/// The evaluation embedding `p ↦ (f ↦ f(p))`, i.e. `(p, 1)`.
pub fn kodaira(p: &Point) -> AmbientVector {
    let mut coords = p.coords().to_vec();
    coords.push(p.field().one());
    AmbientVector {
        field: p.field(),
        coords,
    }
}

/// Inverse of [`kodaira`] on the characteristic hyperplane.
pub fn kodaira_inverse(w: &AmbientVector) -> Result<Point> {
    if !w.on_hyperplane() {
        return Err(Error::Degenerate(
            "vector is off the characteristic hyperplane".to_string(),
        ));
    }
    Point::new(w.field, w.spatial().to_vec())
}

/// `(O, λ) ↦ (λO, λ)`, `v ↦ (v, 0)`.
pub fn psi_lift(e: &MassElement) -> Result<AmbientVector> {
    let field = e.field();
    match e.kind() {
        MassKind::Weighty { point, mass } => {
            let mut coords = scale_all(mass, point.coords())?;
            coords.push(mass.clone());
            AmbientVector::new(field, coords)
        }
        MassKind::Dipole(v) => {
            let mut coords = v.coords().to_vec();
            coords.push(field.zero());
            AmbientVector::new(field, coords)
        }
    }
}

/// Inverse of [`psi_lift`].
pub fn psi_drop(w: &AmbientVector) -> Result<MassElement> {
    let lambda = w.characteristic_value();
    if lambda.is_zero() {
        return Ok(MassElement::dipole(FreeVector::new(
            w.field,
            w.spatial().to_vec(),
        )?));
    }
    let inv = lambda.inv()?;
    let point = Point::new(w.field, scale_all(&inv, w.spatial())?)?;
    MassElement::weighty(point, lambda.clone())
}

/// `Σ λ_i · kodaira(A_i)`.
pub fn evaluation_sum(s: &WeightedSet) -> Result<AmbientVector> {
    s.iter()
        .try_fold(AmbientVector::zero(s.field(), s.dim()), |acc, (p, m)| {
            acc.add(&kodaira(p).scale(m)?)
        })
}

/// The unique linear map of `k^{n+1}` that preserves the characteristic
/// hyperplane and restricts to `F` on it: `[[A, b], [0, 1]]`.
pub fn extend_affine_to_linear(f: &AffineMap) -> Result<Matrix> {
    let field = f.field();
    let (m, n) = (f.codomain_dim(), f.domain_dim());
    let mut rows = Vec::with_capacity(m + 1);
    for (i, row) in f.linear_part().row_vecs().into_iter().enumerate() {
        let mut row = row;
        row.push(f.translation().coords()[i].clone());
        rows.push(row);
    }
    let mut last = vec![field.zero(); n];
    last.push(field.one());
    rows.push(last);
    Matrix::from_rows(field, n + 1, rows)
}

/// Recovers `F` from a matrix of the form `[[A, b], [0, 1]]`.
pub fn restrict_linear_to_affine(m: &Matrix) -> Result<AffineMap> {
    let field = m.field();
    if m.rows() == 0 || m.cols() == 0 {
        return Err(Error::DimensionMismatch {
            expected: 1,
            found: 0,
        });
    }
    let (rows, cols) = (m.rows() - 1, m.cols() - 1);
    let last = m.row(rows);
    if !last[..cols].iter().all(FieldElement::is_zero) || !last[cols].is_one() {
        return Err(Error::Degenerate(
            "matrix does not preserve the characteristic hyperplane".to_string(),
        ));
    }
    let linear = Matrix::from_rows(
        field,
        cols,
        (0..rows).map(|i| m.row(i)[..cols].to_vec()).collect(),
    )?;
    let b = FreeVector::new(field, (0..rows).map(|i| m.get(i, cols).clone()).collect())?;
    AffineMap::new(linear, b)
}

/// The linear functional on the ambient space extending `f`:
/// coefficients `(c, c₀)`.
pub fn extend_poly1_to_linear(f: &Poly1) -> AmbientCovector {
    let mut coeffs = f.linear.clone();
    coeffs.push(f.constant.clone());
    AmbientCovector {
        field: f.field(),
        coeffs,
    }
}

/// `F_*`: weighty points go to their images, dipoles to `F̄(v)`.
pub fn pushforward(f: &AffineMap, e: &MassElement) -> Result<MassElement> {
    check_dim(f.domain_dim(), e.dim())?;
    match e.kind() {
        MassKind::Weighty { point, mass } => MassElement::weighty(f.apply(point)?, mass.clone()),
        MassKind::Dipole(v) => Ok(MassElement::dipole(f.apply_linear(v)?)),
    }
}

/// `Σ λ_i f(A_i)`.
pub fn kodaira_pairing(s: &WeightedSet, f: &Poly1) -> Result<FieldElement> {
    check_dim(f.dim(), s.dim())?;
    s.iter().try_fold(s.field().zero(), |acc, (p, m)| {
        acc.add(&m.mul(&f.evaluate(p)?)?)
    })
}

/// Coordinates adapted to an arbitrary affine hyperplane `{φ = 1}` of
/// `k^{n+1}` (with `φ ≠ 0`), moving it onto the characteristic one.
#[derive(Debug, Clone)]
pub struct HyperplaneChart {
    to_standard: Matrix,
    from_standard: Matrix,
}

impl HyperplaneChart {
    pub fn new(functional: &[FieldElement]) -> Result<Self> {
        let Some(first) = functional.first() else {
            return Err(Error::DimensionMismatch {
                expected: 1,
                found: 0,
            });
        };
        let field = first.field();
        let size = functional.len();
        let pivot = functional
            .iter()
            .position(|c| !c.is_zero())
            .ok_or_else(|| Error::Degenerate("zero functional".to_string()))?;
        let mut rows = Vec::with_capacity(size);
        for i in (0..size).filter(|&i| i != pivot) {
            let mut row = vec![field.zero(); size];
            row[i] = field.one();
            rows.push(row);
        }
        rows.push(functional.to_vec());
        let to_standard = Matrix::from_rows(field, size, rows)?;
        let from_standard = to_standard.inverse()?;
        Ok(HyperplaneChart {
            to_standard,
            from_standard,
        })
    }

    /// Sends the hyperplane `{φ = 1}` onto `{x_{n+1} = 1}`.
    pub fn to_standard(&self) -> &Matrix {
        &self.to_standard
    }

    pub fn from_standard(&self) -> &Matrix {
        &self.from_standard
    }

    /// Affine coordinates of a vector lying on `{φ = 1}`.
    pub fn chart(&self, w: &AmbientVector) -> Result<Point> {
        kodaira_inverse(&w.transform(&self.to_standard)?)
    }

    /// The vector on `{φ = 1}` with affine coordinates `p`.
    pub fn embed(&self, p: &Point) -> Result<AmbientVector> {
        kodaira(p).transform(&self.from_standard)
    }
}
